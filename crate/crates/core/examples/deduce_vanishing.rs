//! Runs the deduction rules on E₁ and prints the verdict for each form degree.
//!
//! cargo run --release --example deduce_vanishing -- 3 2 1 8

use weilhom::cochain::{Engine, Signature, Twist};
use weilhom::scalar::Q;
use weilhom::spectral::{deduce_for, PageOptions};

fn main() -> weilhom::Result<()> {
    let a: Vec<u32> = std::env::args().skip(1).map(|x| x.parse().expect("integer argument")).collect();
    let (p, q, k, d) = match a[..] {
        [p, q, k, d] => (p as u16, q as u16, k as u16, d),
        _ => (3, 2, 1, 8),
    };
    let eng: Engine<Q> = Engine::new(Signature::new(p, q, k)?, Twist::connected())?;
    let (_, deductions) = deduce_for(&eng, &PageOptions::new(d))?;
    for x in deductions {
        println!("H^{}: {:?}   E1 {:?}", x.ell, x.verdict, x.e1);
    }
    Ok(())
}
