//! Certifies the quadrics q[α,μ] and the subsequence τ as regular through a
//! window, and shows an irregular sequence with its witness.
//!
//! cargo run --release --example koszul_regularity

use weilhom::cochain::Signature;
use weilhom::koszul::{build_subsequence_tau, is_regular, tau_spec, KoszulSpec};

fn main() -> weilhom::Result<()> {
    for (p, q, k) in [(1, 1, 1), (2, 1, 2), (1, 2, 2)] {
        let sig = Signature::new(p, q, k)?;
        let v = is_regular(&KoszulSpec::q_sequence(&sig), 10)?;
        println!("q-sequence {sig}: {}", v.to_json());
    }
    for (p, q, k) in [(2, 1, 1), (3, 1, 2), (4, 2, 2)] {
        let sig = Signature::new(p, q, k)?;
        println!("tau {sig} = {:?}", build_subsequence_tau(p, q, k)?);
        println!("  {}", is_regular(&tau_spec(&sig)?, 8)?.to_json());
    }
    let irregular = KoszulSpec::parse("var z[1,1] 1\nvar z[2,1] 1\ngen z[1,1]*z[2,1]\ngen z[1,1]^2\n")?;
    println!("z1*z2, z1^2: {}", is_regular(&irregular, 6)?.to_json());
    Ok(())
}
