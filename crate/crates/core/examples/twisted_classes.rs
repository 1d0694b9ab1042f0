//! Twisted cohomology of SO(n,1): compares with C₊ for k ≤ n and checks the
//! parity classes f · det₊ · vol for k > n.
//!
//! cargo run --release --example twisted_classes -- 1 2 6

use weilhom::sonone::twisted_invariants_report;

fn main() -> weilhom::Result<()> {
    let a: Vec<u32> = std::env::args().skip(1).map(|x| x.parse().expect("integer argument")).collect();
    let (n, k, d) = match a[..] {
        [n, k, d] => (n as u16, k as u16, d),
        _ => (1, 2, 6),
    };
    let r = twisted_invariants_report(n, k, d)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    Ok(())
}
