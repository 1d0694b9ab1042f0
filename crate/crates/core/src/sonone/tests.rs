use super::*;
use crate::exterior::canonicalize;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn j(e: &[u16], k: u16) -> MultiIndexJ {
    MultiIndexJ::new(e.to_vec(), k).unwrap()
}

fn zv(a: u16, i: u16) -> Polynomial {
    Polynomial::var(VarIndex::new(a, i))
}

fn om(n: u16, rows: &[u16]) -> Option<(ExtIndex, i32)> {
    canonicalize(&rows.iter().map(|&a| ExtGen::new(a, n + 1)).collect::<Vec<_>>())
}

/// Ordered injective tuples of length `len` from `1..=n`.
fn tuples(n: u16, len: usize) -> Vec<Vec<u16>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in tuples(n, len - 1) {
        for a in 1..=n {
            if !t.contains(&a) {
                let mut u = t.clone();
                u.push(a);
                out.push(u);
            }
        }
    }
    out
}

#[test]
fn two_by_two_minor() {
    let f = minor_f(&[1, 2], &[1, 2], 2, 3).unwrap();
    assert_eq!(f, zv(1, 1).mul(&zv(2, 2)).sub(&zv(1, 2).mul(&zv(2, 1))));
    assert!(matches!(minor_f(&[1], &[1, 2], 2, 3), Err(Error::ShapeMismatch(_))));
    assert!(matches!(minor_f(&[4], &[1], 2, 3), Err(Error::ShapeMismatch(_))));
}

#[test]
fn minors_are_harmonic() {
    for n in 2..=4u16 {
        for k in 1..=3u16 {
            for len in 1..=k.min(n) as usize {
                for rows in ExtIndex::all_of_degree(n, 1, len) {
                    let rows: Vec<u16> = rows.gens().iter().map(|g| g.alpha).collect();
                    for cols in MultiIndexJ::all(len, k) {
                        let f = minor_f(&rows, cols.entries(), k, n).unwrap();
                        for a in 1..=k {
                            for b in a..=k {
                                assert!(delta_ij(&f, a, b, n).is_zero());
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn phi_is_the_outer_product() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
        for len in 0..=k as usize {
            for jj in MultiIndexJ::all(len, k) {
                assert_eq!(build_phi(n, k, &jj, false).unwrap(), outer_product(n, k, &jj).unwrap());
                assert_eq!(build_phi(n, k, &jj, true).unwrap(), star_phi_ordered(n, k, &jj).unwrap());
            }
        }
    }
}

#[test]
fn phi_requires_small_k() {
    assert!(matches!(build_phi(2, 2, &j(&[1], 2), false), Err(Error::BadRange(_))));
    assert!(MultiIndexJ::new(vec![2, 1], 3).is_err());
    assert!(MultiIndexJ::new(vec![4], 3).is_err());
}

#[test]
fn index_helpers() {
    let jj = j(&[1, 3], 4);
    assert_eq!(jj.below(2), 1);
    assert_eq!(jj.with(2), Some((j(&[1, 2, 3], 4), -1)));
    assert_eq!(jj.with(4), Some((j(&[1, 3, 4], 4), 1)));
    assert_eq!(jj.with(3), None);
    assert_eq!(jj.without(3), Some(j(&[1], 4)));
    assert_eq!(MultiIndexJ::all(2, 3).len(), 3);
}

#[test]
fn phi_bases_are_invariant() {
    for (n, k) in [(3, 1), (3, 2), (4, 2)] {
        for len in 0..=k as usize {
            for jj in MultiIndexJ::all(len, k) {
                assert!(is_invariant(&build_phi(n, k, &jj, false).unwrap(), Twist::c_plus()));
                assert!(is_invariant(&build_phi(n, k, &jj, true).unwrap(), Twist::c_minus()));
            }
        }
    }
}

#[test]
fn d_on_phi_basis() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 3)] {
        for len in 0..=k as usize {
            for jj in MultiIndexJ::all(len, k) {
                assert!(check_d_on_phi(n, k, &jj).unwrap(), "n={n} k={k} J={jj:?}");
            }
        }
    }
}

#[test]
fn d_on_star_phi_basis() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
        for len in 1..=k as usize {
            for jj in MultiIndexJ::all(len, k) {
                let x = d_on_star_phi(n, k, &jj).unwrap();
                assert_eq!(x.terms.len(), len);
                assert!(x.matches_model(), "n={n} k={k} J={jj:?}: {x:?}");
                assert!(x.matches_prediction(), "n={n} k={k} J={jj:?}: {x:?}");
            }
        }
    }
}

#[test]
fn double_star_sign() {
    for n in 1..=6u16 {
        for ell in 0..=n as usize {
            for a in ExtIndex::all_of_degree(n, 1, ell) {
                let (s1, e1) = hodge_star(&a, n, 1).unwrap();
                let (s2, e2) = hodge_star(&s1, n, 1).unwrap();
                assert_eq!(s2, a);
                let expect = if (ell * (n as usize - ell)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(e1 * e2, expect);
            }
        }
    }
}

#[test]
fn wedge_with_star() {
    // ω_α ∧ *(ω_I) = (-1)^{|I|-1} Σ_s (-1)^{s-1} δ_{α,i_s} *(ω_{I - i_s})
    let star = |n: u16, rows: &[u16]| -> Option<(ExtIndex, i32)> {
        let (i, s) = om(n, rows)?;
        let (t, s2) = hodge_star(&i, n, 1).unwrap();
        Some((t, s * s2))
    };
    for n in 1..=5u16 {
        for len in 1..=n as usize {
            for rows in tuples(n, len) {
                let (t, s) = star(n, &rows).unwrap();
                for a in 1..=n {
                    let lhs = wedge(&ExtIndex::single(ExtGen::new(a, n + 1)), &t).map(|(x, e)| (x, e * s));
                    let rhs = rows.iter().position(|&r| r == a).map(|pos| {
                        let rest: Vec<u16> = rows.iter().copied().filter(|&r| r != a).collect();
                        let (x, e) = star(n, &rest).unwrap();
                        let sign = if (len - 1 + pos) % 2 == 0 { 1 } else { -1 };
                        (x, e * sign)
                    });
                    assert_eq!(lhs, rhs, "n={n} I={rows:?} alpha={a}");
                }
            }
        }
    }
}

#[test]
fn sk_ring_series_and_retraction() {
    let r = SkRing::new(1);
    assert_eq!(r.series(4).coefficients, vec![1, 1, 2, 2, 3]);
    let q = hilbert_quotient(r.vars(), &r.cubics(), 4).unwrap();
    assert_eq!(q.coefficients, vec![1, 1, 2, 1, 2]);
    let r2 = SkRing::new(2);
    assert_eq!(r2.r_series(4).coefficients, vec![1, 0, 3, 0, 6]);
    assert!(r2.cubics().iter().all(|c| r2.retract(c).is_zero()));
    // r_12 ↦ Σ_α z[α,1] z[α,2]
    let img = r2.to_z(&r2.r(2, 1), 2);
    assert_eq!(img, zv(1, 1).mul(&zv(1, 2)).add(&zv(2, 1).mul(&zv(2, 2))));
}

/// `Ψ(Λg e_I ⊗ Λg' ε_J)(Z) = Ψ(e_I ⊗ ε_J)(g⁻¹ Z g')` for a signed permutation `g`
/// of the rows and a monomial matrix `g'` on the columns.
fn equivariance_holds(n: u16, k: u16, rng: &mut ChaCha8Rng) -> bool {
    let mut perm: Vec<u16> = (1..=n).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let mut cperm: Vec<u16> = (1..=k).collect();
    for i in (1..cperm.len()).rev() {
        cperm.swap(i, rng.gen_range(0..=i));
    }
    let scal: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    // g e_a = signs[a] e_{perm[a]},  g' ε_c = scal[c] ε_{cperm[c]}
    let len = rng.gen_range(1..=k.min(n)) as usize;
    let rows_i = ExtIndex::all_of_degree(n, 1, len);
    let rows: Vec<u16> = rows_i[rng.gen_range(0..rows_i.len())].gens().iter().map(|g| g.alpha).collect();
    let cols_all = MultiIndexJ::all(len, k);
    let cols = cols_all[rng.gen_range(0..cols_all.len())].entries().to_vec();
    let img = |idx: &[u16], p: &[u16]| -> (Vec<u16>, i64) {
        let v: Vec<u16> = idx.iter().map(|&a| p[a as usize - 1]).collect();
        let (c, s) = canonicalize(&v.iter().map(|&a| ExtGen::new(a, 99)).collect::<Vec<_>>()).unwrap();
        (c.gens().iter().map(|g| g.alpha).collect(), s as i64)
    };
    let (r2, s1) = img(&rows, &perm);
    let (c2, s2) = img(&cols, &cperm);
    let coef = rows.iter().map(|&a| signs[a as usize - 1]).product::<i64>() * cols.iter().map(|&c| scal[c as usize - 1]).product::<i64>() * s1 * s2;
    let lhs = minor_f(&r2, &c2, k, n).unwrap().scale(&Q::from_i64(coef));
    // (g⁻¹ Z g')_{a,c} = signs[a] · scal[c] · Z_{perm[a], cperm[c]}
    let rhs = minor_f(&rows, &cols, k, n).unwrap().substitute(&|v: VarIndex| {
        let (a, c) = (v.slot as usize - 1, v.column as usize - 1);
        zv(perm[a], cperm[c]).scale(&Q::from_i64(signs[a] * scal[c]))
    });
    lhs == rhs
}

#[test]
fn minor_map_is_equivariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        assert!(equivariance_holds(n, k, &mut rng));
    }
}

#[test]
fn model_isos_small() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let r = verify_model_isos(n, k, 5).unwrap();
        assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
    }
}

#[test]
fn main_theorem_small() {
    for (n, k) in [(2, 1), (3, 1), (2, 2)] {
        let r = verify_thm_main(n, k, 6).unwrap();
        assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
    }
    let r = verify_thm_main(3, 1, 4).unwrap();
    assert_eq!(r.tables["E1(C-)"][3], vec![1, 1, 2, 1, 2]);
}

#[test]
fn w_polynomials_inject() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let c = w_injection(n, k, 5).unwrap();
        assert!(c.pass, "{c:?}");
    }
}

#[test]
fn top_split_matches_reflection_parity() {
    // ι' acts on f(w) vol by (-1)^{n + deg f}
    let (minus, plus) = top_eigen_split(3, 1, 6).unwrap();
    let r = verify_thm_main(3, 1, 6).unwrap();
    let total: Vec<usize> = minus.iter().zip(&plus).map(|(a, b)| a + b).collect();
    assert_eq!(total, r.tables["E1(C)"][3]);
    for m in 0..=6 {
        // f(w) vol lies in the (-1)^{n+m} eigenspace
        let side = if (3 + m) % 2 == 0 { &plus } else { &minus };
        assert!(side[m] >= 1);
    }
}

#[test]
fn twisted_small() {
    for (n, k) in [(2, 1), (3, 2)] {
        let r = twisted_invariants_report(n, k, 5).unwrap();
        assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
    }
    let r = twisted_invariants_report(1, 2, 6).unwrap();
    assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
}

#[test]
fn twisted_class_for_one_two() {
    // w_2^a z_11 ω_1 is invariant exactly for odd a
    let sig = Signature::so_n1(1, 2).unwrap();
    for a in 0..4u32 {
        let c = Cochain::single(sig, ExtIndex::vol(1, 1), zv(2, 2).pow(a).mul(&zv(1, 1)));
        assert_eq!(is_invariant(&c, Twist::det_k(2)), a % 2 == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn phi_wedge_rule(n in 2u16..5, seed in 0u64..1000) {
        // φ₁^{(i)} ∧ Φ_J = (-1)^{J(i)} Φ_{J ∪ i}
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..n);
        let len = rng.gen_range(0..k) as usize;
        let all = MultiIndexJ::all(len, k);
        let jj = all[rng.gen_range(0..all.len())].clone();
        let i = rng.gen_range(1..=k);
        let sig = Signature::so_n1(n, k).unwrap();
        let lhs = phi_one(sig, i).wedge(&build_phi(n, k, &jj, false).unwrap());
        let rhs = match jj.with(i) {
            Some((ji, s)) => build_phi(n, k, &ji, false).unwrap().scale(&Q::from_i64(s)),
            None => Cochain::zero(sig),
        };
        prop_assert_eq!(lhs, rhs);
    }
}
