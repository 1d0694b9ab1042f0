//! Prints E₀ and E₁ for so(p,q) with k columns, one row per form degree.
//!
//! cargo run --release --example pages_table -- 2 2 1 10

use weilhom::cochain::{Signature, Twist};
use weilhom::spectral::{page_e0_e1_for, PageOptions};

fn main() -> weilhom::Result<()> {
    let a: Vec<u32> = std::env::args().skip(1).map(|x| x.parse().expect("integer argument")).collect();
    let (p, q, k, d) = match a[..] {
        [p, q, k, d] => (p as u16, q as u16, k as u16, d),
        _ => (2, 2, 1, 10),
    };
    let sig = Signature::new(p, q, k)?;
    let (e0, e1) = page_e0_e1_for(sig, Twist::connected(), &PageOptions::new(d))?;
    for (name, t) in [("E0", &e0), ("E1", &e1)] {
        println!("{name} for {sig}, polynomial degree 0..={d}");
        for ell in t.ells() {
            println!("  ℓ={ell}: {:?}", t.row(ell));
        }
    }
    Ok(())
}
