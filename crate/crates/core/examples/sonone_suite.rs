//! Runs the SO(n,1) checks: model isomorphisms, the main cohomology theorem
//! and the twisted case.
//!
//! cargo run --release --example sonone_suite -- 3 2 8

use weilhom::sonone::{twisted_invariants_report, verify_model_isos, verify_thm_main, Report};

fn show(r: &Report) {
    println!("{} (n={}, k={}, D={})", r.title, r.n, r.k, r.d_max);
    for c in &r.clauses {
        println!("  [{}] {} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
}

fn main() -> weilhom::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (n, k, d) = match args[..] {
        [n, k, d] => (n as u16, k as u16, d),
        _ => (3, 1, 8),
    };
    if k < n {
        show(&verify_model_isos(n, k, d)?);
    }
    show(&verify_thm_main(n, k, d)?);
    show(&twisted_invariants_report(n, k, d)?);
    Ok(())
}
