//! Builds φ_{kq} and checks that it is closed, not exact within the window
//! and nonzero in E₁.
//!
//! cargo run --release --example special_cocycle -- 3 1 2 8

use weilhom::cochain::{Cochain, Engine, Signature, Twist};
use weilhom::scalar::Q;
use weilhom::spectral::check_phi;

fn main() -> weilhom::Result<()> {
    let a: Vec<u32> = std::env::args().skip(1).map(|x| x.parse().expect("integer argument")).collect();
    let (p, q, k, d) = match a[..] {
        [p, q, k, d] => (p as u16, q as u16, k as u16, d),
        _ => (3, 1, 2, 8),
    };
    let sig = Signature::new(p, q, k)?;
    let phi = Cochain::phi_kq(sig);
    println!("φ for {sig} has {} form terms in degree {:?}", phi.terms().count(), phi.degree());
    let eng: Engine<Q> = Engine::new(sig, Twist::connected())?;
    let c = check_phi(&eng, d)?;
    println!("{c:?}  survives: {}", c.survives());
    Ok(())
}
