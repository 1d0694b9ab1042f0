use super::*;
use crate::linalg::{nullspace, SVec};
use crate::ring::Monomial;
use proptest::prelude::*;

fn sig(p: u16, q: u16, k: u16) -> Signature {
    Signature::new(p, q, k).unwrap()
}

fn z(s: &Signature, slot: u16, col: u16) -> Polynomial {
    Polynomial::var(s.var(slot, col))
}

#[test]
fn differential_of_constant() {
    let s = sig(1, 1, 1);
    let one = Cochain::single(s, ExtIndex::empty(), Polynomial::one());
    let expect = Cochain::single(s, ExtIndex::single(ExtGen::new(1, 2)), z(&s, 1, 1).mul(&z(&s, 2, 1)).neg());
    assert_eq!(one.d_full(), expect);
}

#[test]
fn top_degree_is_closed() {
    let s = sig(2, 1, 2);
    let f = z(&s, 1, 1).pow(2).add(&z(&s, 3, 2));
    let c = Cochain::single(s, ExtIndex::vol(2, 1), f);
    assert!(c.d_full().is_zero());
}

#[test]
fn phi_one_is_closed() {
    let s = sig(3, 1, 1);
    let mut phi = Cochain::zero(s);
    for a in 1..=3 {
        phi.add_term(ExtIndex::single(ExtGen::new(a, 4)), &z(&s, a, 1));
    }
    assert!(phi.d_full().is_zero());
}

#[test]
fn compact_action_on_negative_variable() {
    let s = sig(2, 2, 1);
    let c = Cochain::single(s, ExtIndex::empty(), z(&s, 4, 1));
    let r = c.kappa_act(KappaElement::CompactMM(3, 4));
    assert_eq!(r, Cochain::single(s, ExtIndex::empty(), z(&s, 3, 1)));
}

#[test]
fn bracket_by_phi_rule() {
    // phi(e1∧e2) e1 = e2 and phi(e1∧e2) e3 = 0, whatever the sign of e3
    for s in [sig(3, 1, 1), sig(2, 2, 1)] {
        let b = bracket(&s, (1, 2), (1, 3));
        assert_eq!(b, Bivector::from([((2, 3), 1)]));
    }
}

#[test]
fn volume_is_invariant() {
    for s in [sig(2, 2, 1), sig(3, 2, 1), sig(3, 1, 2)] {
        let vol = Cochain::single(s, ExtIndex::vol(s.p, s.q), Polynomial::one());
        for x in KappaElement::basis(&s) {
            assert!(vol.kappa_act(x).is_zero(), "{x:?} moves vol for {s}");
        }
    }
}

#[test]
fn kappa_is_a_representation() {
    // [X, Y] acts as the commutator of the actions, on a generic cochain
    let s = sig(3, 2, 1);
    let mut c = Cochain::zero(s);
    c.add_term(
        ExtIndex::from_sorted(vec![ExtGen::new(1, 4), ExtGen::new(2, 5)]),
        &z(&s, 1, 1).mul(&z(&s, 4, 1)).add(&z(&s, 3, 1).pow(2)),
    );
    c.add_term(ExtIndex::from_sorted(vec![ExtGen::new(2, 4), ExtGen::new(3, 4)]), &z(&s, 5, 1).mul(&z(&s, 2, 1)));
    let basis = KappaElement::basis(&s);
    for &x in &basis {
        for &y in &basis {
            let comm = c.kappa_act(y).kappa_act(x).sub(&c.kappa_act(x).kappa_act(y));
            let br = bracket(&s, x.slots(), y.slots());
            let mut expect = Cochain::zero(s);
            for ((a, b), coef) in br {
                let el = if a <= s.p { KappaElement::CompactPP(a, b) } else { KappaElement::CompactMM(a, b) };
                expect = expect.add(&c.kappa_act(el).scale(&Q::from_i64(coef)));
            }
            assert_eq!(comm, expect, "{x:?} {y:?}");
        }
    }
}

fn elem_to_cochain(lay: &Layout, e: &Elem, c: i64) -> Cochain {
    let (i, m) = lay.to_parts(e);
    Cochain::single(lay.sig, i, Polynomial::term(Q::from_i64(c), m))
}

fn all_elems(s: Signature, ell: usize, m: u32) -> Vec<Elem> {
    let lay = Layout::new(s).unwrap();
    GradedBlock::ambient(&s, ell, m).basis.iter().map(|(i, mo)| lay.from_parts(i, mo)).collect()
}

#[test]
fn packed_differentials_match_symbolic() {
    for s in [sig(2, 2, 1), sig(2, 1, 2), sig(3, 1, 1)] {
        let eng: Engine<Q> = Engine::new(s, Twist::connected()).unwrap();
        for ell in 0..=2 {
            for e in all_elems(s, ell, 2) {
                let sym = elem_to_cochain(&eng.lay, &e, 1);
                for (op, expect) in [
                    (Op::DPlus, sym.d_plus2()),
                    (Op::DMinus, sym.d_minus2()),
                    (Op::DPrime, sym.d_prime()),
                    (Op::DFull, sym.d_full()),
                ] {
                    let mut out = Vec::new();
                    eng.apply_elem(op, &e, &mut out);
                    let mut got = Cochain::zero(s);
                    for (f, c) in out {
                        got = got.add(&elem_to_cochain(&eng.lay, &f, c));
                    }
                    assert_eq!(got, expect, "{op:?} on {e:?}");
                }
            }
        }
    }
}

/// Brute-force invariants: joint kernel of every compact basis element and
/// the requested reflections on the full ambient block.
fn oracle_dim(s: Signature, ell: usize, m: u32, twist: Twist) -> usize {
    let block = GradedBlock::ambient(&s, ell, m);
    let reflect = |c: &Cochain, slot: u16| -> Cochain {
        let mut r = Cochain::zero(s);
        for (i, f) in c.terms() {
            let flips = i.gens().iter().filter(|g| g.alpha == slot || g.mu == slot).count();
            let mut g = Polynomial::zero();
            for (mo, x) in f.terms() {
                let e: u32 = (1..=s.k).map(|col| mo.exponent(s.var(slot, col))).sum();
                let sign = if (e as usize + flips) % 2 == 0 { 1 } else { -1 };
                g.add_term(mo.clone(), &x.mul(&Q::from_i64(sign)));
            }
            r.add_term(i.clone(), &g);
        }
        r
    };
    let cols = block.basis.iter().map(|(i, mo)| {
        let c = Cochain::single(s, i.clone(), Polynomial::term(Q::one(), mo.clone()));
        let mut entries: Vec<((usize, ExtIndex, Monomial), Q)> = Vec::new();
        let mut push = |tag: usize, x: Cochain| {
            for (i, f) in x.terms() {
                for (mo, v) in f.terms() {
                    entries.push(((tag, i.clone(), mo.clone()), v.clone()));
                }
            }
        };
        for (t, x) in KappaElement::basis(&s).into_iter().enumerate() {
            push(t, c.kappa_act(x));
        }
        if let Some(e) = twist.plus {
            let chi = if e % 2 == 1 { -1 } else { 1 };
            push(100, reflect(&c, 1).sub(&c.scale(&Q::from_i64(chi))));
        }
        if let Some(e) = twist.minus {
            let chi = if e % 2 == 1 { -1 } else { 1 };
            push(101, reflect(&c, s.p + 1).sub(&c.scale(&Q::from_i64(chi))));
        }
        SVec::from_entries(entries)
    });
    nullspace(cols).len()
}

#[test]
fn engine_dims_match_brute_force() {
    let cases = [
        (sig(1, 1, 1), Twist::connected()),
        (sig(2, 1, 1), Twist::connected()),
        (sig(2, 2, 1), Twist::connected()),
        (sig(3, 1, 1), Twist::connected()),
        (sig(2, 1, 2), Twist::connected()),
        (sig(3, 1, 1), Twist::c_plus()),
        (sig(3, 1, 1), Twist::c_minus()),
        (sig(2, 1, 2), Twist::det_k(2)),
        (sig(2, 1, 1), Twist::det_k(1)),
        (sig(2, 2, 1), Twist { plus: Some(1), minus: Some(1) }),
    ];
    for (s, t) in cases {
        let eng: Engine<Q> = Engine::new(s, t).unwrap();
        for ell in 0..=s.top() {
            for m in 0..=4 {
                assert_eq!(eng.block_dim(ell, m), oracle_dim(s, ell, m, t), "{s} {t:?} ell={ell} m={m}");
            }
        }
    }
}

#[test]
fn invariant_cochains_are_invariant() {
    let s = sig(3, 2, 1);
    for ell in [1, 2, 3] {
        for c in invariant_basis(s, ell, 3, Twist::connected()).unwrap() {
            for x in KappaElement::basis(&s) {
                assert!(c.kappa_act(x).is_zero());
            }
        }
    }
}

#[test]
fn orbit_maps_match_symbolic_maps() {
    let s = sig(2, 2, 1);
    let eng: Engine<Q> = Engine::new(s, Twist::connected()).unwrap();
    for ell in 0..4 {
        for m in 0..4 {
            for (_, vs) in eng.block(ell, m).iter() {
                for v in vs {
                    let c = eng.to_cochain(v);
                    for (op, sym) in [(Op::DPrime, c.d_prime()), (Op::DFull, c.d_full())] {
                        assert_eq!(eng.to_cochain(&eng.apply(op, v)), sym);
                    }
                    assert_eq!(eng.from_cochain(&c), *v);
                }
            }
        }
    }
}

#[test]
fn split_parts_square_to_zero_everywhere() {
    let s = sig(2, 1, 2);
    for e in all_elems(s, 1, 3) {
        let lay = Layout::new(s).unwrap();
        let c = elem_to_cochain(&lay, &e, 1);
        assert!(c.d_plus2().d_plus2().is_zero());
        assert!(c.d_minus2().d_minus2().is_zero());
    }
}

fn random_invariant(eng: &Engine<Q>, ell: usize, seed: &[i64]) -> Cochain {
    let mut out = Cochain::zero(eng.sig());
    let mut i = 0;
    for m in 0..=4 {
        for (_, vs) in eng.block(ell, m).iter() {
            for v in vs {
                let c = seed[i % seed.len()];
                i += 1;
                out = out.add(&eng.to_cochain(v).scale(&Q::from_i64(c)));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn d_squared_vanishes_on_invariants(seed in proptest::collection::vec(-5i64..=5, 1..12), ell in 0usize..3) {
        let eng: Engine<Q> = Engine::new(sig(2, 2, 1), Twist::connected()).unwrap();
        let c = random_invariant(&eng, ell, &seed);
        prop_assert!(c.d_full().d_full().is_zero());
        let anti = c.d_plus2().d_minus2().add(&c.d_minus2().d_plus2());
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn text_pairs_round_trip(a in 0i64..5, b in -3i64..3) {
        let s = sig(2, 1, 1);
        let c = Cochain::single(s, ExtIndex::single(ExtGen::new(2, 3)),
            z(&s, 1, 1).pow(a as u32).scale(&Q::from_i64(b)).add(&z(&s, 3, 1)));
        prop_assert_eq!(Cochain::from_text_pairs(s, &c.to_text_pairs()).unwrap(), c);
    }
}

#[test]
fn ambient_block_dimension() {
    let s = sig(2, 2, 1);
    assert_eq!(GradedBlock::ambient(&s, 2, 3).dim(), 6 * 20);
}
