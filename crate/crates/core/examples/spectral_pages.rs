//! Higher pages E_r with the stabilization and truncation flags.
//!
//! cargo run --release --example spectral_pages -- 2 1 1 6 4

use weilhom::cochain::{Engine, Signature, Twist};
use weilhom::scalar::Q;
use weilhom::spectral::{page_er, PageOptions};

fn main() -> weilhom::Result<()> {
    let a: Vec<u32> = std::env::args().skip(1).map(|x| x.parse().expect("integer argument")).collect();
    let (p, q, k, d, r) = match a[..] {
        [p, q, k, d, r] => (p as u16, q as u16, k as u16, d, r),
        _ => (2, 1, 1, 6, 4),
    };
    let eng: Engine<Q> = Engine::new(Signature::new(p, q, k)?, Twist::connected())?;
    for t in page_er(&eng, &PageOptions { d_max: d, r_max: r, ells: None })? {
        println!("E{}", t.r);
        for e in t.entries.iter().filter(|e| e.dim > 0) {
            println!(
                "  (p'',q'')=({:>3},{:>3})  ℓ={} m={}  dim {}{}{}",
                e.pp, e.qq, e.ell, e.m, e.dim,
                if e.upper_bound { "  upper bound" } else { "" },
                if e.stable { "  stable" } else { "" }
            );
        }
    }
    Ok(())
}
