//! Koszul complexes over graded polynomial rings and regular-sequence checks.
//!
//! The complex is `K^ell = Λ^ell(w_1..w_N) ⊗ R` with `d = Σ f_i w_i ∧ (·)`.
//! Giving `w_i` degree `-d_i` makes `d` degree-preserving. Cohomology is
//! reported by internal degree `c = t + max_{|I| = ell} Σ_{i∈I} d_i`, where
//! `t` is the total degree. For uniform generator degrees, `c` is the
//! polynomial degree of the coefficient.

use crate::cochain::Signature;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SVec, TrackedEchelon};
use crate::ring::{hilbert_quotient, ideal_piece, weight_fn, weighted_piece, HilbertSeries, Monomial, Polynomial, VarIndex};
use crate::scalar::{Field, Q};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_D_MAX: u32 = 12;

/// A graded polynomial ring together with homogeneous generators `f_1..f_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct KoszulSpec {
    vars: Vec<(VarIndex, u32)>,
    gens: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl KoszulSpec {
    pub fn new(vars: Vec<(VarIndex, u32)>, gens: Vec<Polynomial>) -> Result<KoszulSpec> {
        if gens.is_empty() {
            return Err(Error::BadRange("a Koszul complex needs at least one generator".into()));
        }
        if gens.len() > 63 {
            return Err(Error::BadRange(format!("{} generators (at most 63)", gens.len())));
        }
        if let Some(&(v, _)) = vars.iter().find(|x| x.1 == 0) {
            return Err(Error::BadRange(format!("variable {v} has degree 0")));
        }
        for g in &gens {
            for v in g.variables() {
                if !vars.iter().any(|x| x.0 == v) {
                    return Err(Error::BadRange(format!("generator {} uses {v}, which is not in the ring", g.to_text())));
                }
            }
        }
        let mut degrees = Vec::new();
        let w = weight_fn(&vars);
        for g in &gens {
            if g.is_zero() {
                return Err(Error::NonHomogeneousGenerator("0 (the zero polynomial)".into()));
            }
            match g.homogeneous_degree(&w) {
                Some(d) => degrees.push(d),
                None => return Err(Error::NonHomogeneousGenerator(g.to_text())),
            }
        }
        drop(w);
        Ok(KoszulSpec { vars, gens, degrees })
    }

    /// Ring with every variable in degree 1.
    pub fn standard(vars: &[VarIndex], gens: Vec<Polynomial>) -> Result<KoszulSpec> {
        KoszulSpec::new(vars.iter().map(|&v| (v, 1)).collect(), gens)
    }

    /// All `q[alpha,mu]` for the signature, in canonical order, over the full polynomial ring.
    pub fn q_sequence(sig: &Signature) -> KoszulSpec {
        let gens = sig.gens().iter().map(|g| sig.q_poly(g.alpha, g.mu)).collect();
        KoszulSpec::standard(&sig.vars(), gens).expect("q[alpha,mu] are homogeneous quadrics")
    }

    pub fn vars(&self) -> &[(VarIndex, u32)] {
        &self.vars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same ring with the generators reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> KoszulSpec {
        KoszulSpec {
            vars: self.vars.clone(),
            gens: perm.iter().map(|&i| self.gens[i].clone()).collect(),
            degrees: perm.iter().map(|&i| self.degrees[i]).collect(),
        }
    }

    /// Plain text form: `var z[s,c] <degree>` lines, then `gen <polynomial>` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, d) in &self.vars {
            s.push_str(&format!("var {v} {d}\n"));
        }
        for g in &self.gens {
            s.push_str(&format!("gen {}\n", g.to_text()));
        }
        s
    }

    /// Parses the text form. Blank lines and `#` comments are ignored; a
    /// `var` line without a degree means degree 1.
    pub fn parse(text: &str) -> Result<KoszulSpec> {
        let mut vars = Vec::new();
        let mut gens = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: String| Error::BadRange(format!("line {}: {m}", n + 1));
            if let Some(rest) = line.strip_prefix("var ") {
                let mut parts = rest.split_whitespace();
                let name = parts.next().ok_or_else(|| bad("missing variable".into()))?;
                let v = parse_var(name).ok_or_else(|| bad(format!("bad variable {name:?}")))?;
                let d = match parts.next() {
                    Some(x) => x.parse().map_err(|_| bad(format!("bad degree {x:?}")))?,
                    None => 1,
                };
                vars.push((v, d));
            } else if let Some(rest) = line.strip_prefix("gen ") {
                gens.push(Polynomial::parse(rest).map_err(bad)?);
            } else {
                return Err(bad(format!("expected `var` or `gen`, found {line:?}")));
            }
        }
        KoszulSpec::new(vars, gens)
    }

    fn max_exterior_degree(&self, ell: usize) -> u32 {
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d.iter().take(ell).sum()
    }
}

fn parse_var(s: &str) -> Option<VarIndex> {
    let inner = s.strip_prefix("z[")?.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    Some(VarIndex::new(a.trim().parse().ok()?, b.trim().parse().ok()?))
}

type Key = (u64, Monomial);

fn masks_of_size(n: usize, ell: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, left: usize, n: usize, cur: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, left - 1, n, cur | 1 << i, out);
        }
    }
    if ell <= n {
        rec(0, ell, n, 0, &mut out);
    }
    out
}

impl KoszulSpec {
    /// Basis of `K^ell` in total degree `t`.
    fn chain_basis(&self, ell: usize, t: i64) -> Vec<Key> {
        let mut out = Vec::new();
        for mask in masks_of_size(self.len(), ell) {
            let ext: i64 = (0..self.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.degrees[i] as i64).sum();
            let c = t + ext;
            if c < 0 {
                continue;
            }
            for m in weighted_piece(c as u32, &self.vars) {
                out.push((mask, m));
            }
        }
        out
    }

    fn d_on(&self, key: &Key) -> SVec<Key, Q> {
        let (mask, m) = key;
        let mut e = Vec::new();
        for (i, f) in self.gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                continue;
            }
            let sign = if (mask & ((1u64 << i) - 1)).count_ones() % 2 == 0 { Q::one() } else { Q::from_i64(-1) };
            for (fm, c) in f.terms() {
                e.push(((mask | 1 << i, fm.mul(m)), c.mul(&sign)));
            }
        }
        SVec::from_entries(e)
    }

    fn d_rank(&self, ell: usize, t: i64) -> usize {
        if ell >= self.len() {
            return 0;
        }
        let mut e = Echelon::new();
        for k in self.chain_basis(ell, t) {
            e.insert(self.d_on(&k));
        }
        e.rank()
    }

    /// Applies the differential to a cochain given as coefficient per generator subset.
    pub fn differential(&self, c: &[(u64, Polynomial)]) -> Vec<(u64, Polynomial)> {
        let mut out: std::collections::BTreeMap<u64, Polynomial> = Default::default();
        for (mask, g) in c {
            for (i, f) in self.gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let sign = if (mask & ((1u64 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let term = f.mul(g).scale(&Q::from_i64(sign));
                let e = out.entry(mask | 1 << i).or_insert_with(Polynomial::zero);
                *e = e.add(&term);
            }
        }
        out.into_iter().filter(|(_, p)| !p.is_zero()).collect()
    }
}

/// `dim H^ell` of the Koszul complex in internal degrees `0..=d_max`.
pub fn koszul_cohomology_dims(spec: &KoszulSpec, ell: usize, d_max: u32) -> Vec<u64> {
    if ell > spec.len() {
        return vec![0; d_max as usize + 1];
    }
    let shift = spec.max_exterior_degree(ell) as i64;
    (0..=d_max)
        .into_par_iter()
        .map(|c| {
            let t = c as i64 - shift;
            let dim = spec.chain_basis(ell, t).len();
            let out = spec.d_rank(ell, t);
            let inc = if ell == 0 { 0 } else { spec.d_rank(ell - 1, t) };
            (dim - out - inc) as u64
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum RegularityStatus {
    /// Regular through the stated degree.
    Regular { d_max: u32 },
    /// `f_index · witness` lies in the ideal of the earlier generators while
    /// `witness` (of degree `degree`) does not. `index` counts from 1.
    Irregular { index: usize, degree: u32, witness: Polynomial },
    /// The two checks disagree.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityVerdict {
    pub status: RegularityStatus,
    pub d_max: u32,
    pub prefix_injective: bool,
    pub hilbert_agrees: bool,
    pub quotient_series: Vec<u64>,
    pub expected_series: Vec<i64>,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    status: &'a str,
    d_max: u32,
    index: Option<usize>,
    degree: Option<u32>,
    witness: Option<String>,
    prefix_injective: bool,
    hilbert_agrees: bool,
    quotient_series: &'a [u64],
    expected_series: &'a [i64],
}

impl RegularityVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self.status, RegularityStatus::Regular { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (status, index, degree, witness) = match &self.status {
            RegularityStatus::Regular { .. } => ("Regular", None, None, None),
            RegularityStatus::Irregular { index, degree, witness } => {
                ("Irregular", Some(*index), Some(*degree), Some(witness.to_text()))
            }
            RegularityStatus::Inconclusive => ("Inconclusive", None, None, None),
        };
        serde_json::to_value(VerdictJson {
            status,
            d_max: self.d_max,
            index,
            degree,
            witness,
            prefix_injective: self.prefix_injective,
            hilbert_agrees: self.hilbert_agrees,
            quotient_series: &self.quotient_series,
            expected_series: &self.expected_series,
        })
        .expect("verdict serializes")
    }
}

fn in_ideal(spec: &KoszulSpec, upto: usize, g: &Polynomial, deg: u32) -> bool {
    let e = ideal_piece(&spec.vars, &spec.gens[..upto], &spec.degrees[..upto], deg);
    e.contains(&g.to_svec())
}

/// Checks an irregularity witness directly against the ideal membership conditions.
pub fn check_witness(spec: &KoszulSpec, index: usize, degree: u32, witness: &Polynomial) -> bool {
    if index == 0 || index > spec.len() || witness.is_zero() {
        return false;
    }
    let w = weight_fn(&spec.vars);
    if witness.homogeneous_degree(&w) != Some(degree) {
        return false;
    }
    let i = index - 1;
    !in_ideal(spec, i, witness, degree) && in_ideal(spec, i, &spec.gens[i].mul(witness), degree + spec.degrees[i])
}

/// First failure of injectivity of `f_i` on `R/(f_1..f_{i-1})` in degrees up to `d_max`.
fn prefix_witness(spec: &KoszulSpec, d_max: u32) -> Option<(usize, u32, Polynomial)> {
    for i in 0..spec.len() {
        let di = spec.degrees[i];
        if di > d_max {
            continue;
        }
        let found = (0..=d_max - di).into_par_iter().find_map_first(|m| {
            let src = ideal_piece(&spec.vars, &spec.gens[..i], &spec.degrees[..i], m);
            let pivots: std::collections::BTreeSet<&Monomial> = src.pivots().collect();
            let standard: Vec<Monomial> =
                weighted_piece(m, &spec.vars).into_iter().filter(|x| !pivots.contains(x)).collect();
            let tgt = ideal_piece(&spec.vars, &spec.gens[..i], &spec.degrees[..i], m + di);
            let mut t = TrackedEchelon::new();
            let nrows = tgt.rank();
            for r in tgt.rows() {
                t.push(r.clone());
            }
            for s in &standard {
                t.push(spec.gens[i].mul_monomial(s).to_svec());
            }
            let rel = t.kernel().first()?;
            let mut g = Polynomial::zero();
            for (j, c) in rel.entries() {
                if *j >= nrows {
                    g.add_term(standard[j - nrows].clone(), c);
                }
            }
            Some((m, g))
        });
        if let Some((m, g)) = found {
            return Some((i + 1, m, g));
        }
    }
    None
}

/// Certifies regularity through `d_max` by two independent checks: injectivity
/// of each `f_i` modulo the earlier ones, and the Hilbert series of the full
/// quotient against `prod(1 - t^{d_i}) / prod(1 - t^{deg v})`.
pub fn is_regular(spec: &KoszulSpec, d_max: u32) -> Result<RegularityVerdict> {
    let witness = prefix_witness(spec, d_max);
    let quotient = hilbert_quotient(&spec.vars, &spec.gens, d_max)?;
    let vdeg: Vec<u32> = spec.vars.iter().map(|x| x.1).collect();
    let expected = HilbertSeries::free(&vdeg, d_max).times_complete_intersection(&spec.degrees);
    let hilbert_agrees = quotient.coefficients.iter().zip(&expected).all(|(&a, &b)| a as i64 == b);
    let prefix_injective = witness.is_none();
    let status = match witness {
        Some((index, degree, witness)) => RegularityStatus::Irregular { index, degree, witness },
        None if hilbert_agrees => RegularityStatus::Regular { d_max },
        None => RegularityStatus::Inconclusive,
    };
    Ok(RegularityVerdict {
        status,
        d_max,
        prefix_injective,
        hilbert_agrees,
        quotient_series: quotient.coefficients,
        expected_series: expected,
    })
}

/// The subsequence `q[alpha, p + ceil(alpha/k)]` for `alpha = 1..kq`: `k`
/// consecutive positive slots for each negative slot.
pub fn build_subsequence_tau(p: u16, q: u16, k: u16) -> Result<Vec<(u16, u16)>> {
    if p == 0 || q == 0 || k == 0 {
        return Err(Error::BadRange(format!("({p},{q},{k}) must be positive")));
    }
    if (p as u32) < k as u32 * q as u32 {
        return Err(Error::BadHypothesis(format!("p = {p} < kq = {}", k as u32 * q as u32)));
    }
    Ok((1..=k * q).map(|a| (a, p + a.div_ceil(k))).collect())
}

/// The `tau` subsequence as a Koszul spec over the full polynomial ring.
pub fn tau_spec(sig: &Signature) -> Result<KoszulSpec> {
    let tau = build_subsequence_tau(sig.p, sig.q, sig.k)?;
    KoszulSpec::standard(&sig.vars(), tau.iter().map(|&(a, m)| sig.q_poly(a, m)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn v(s: u16) -> VarIndex {
        VarIndex::new(s, 1)
    }

    fn x(s: u16) -> Polynomial {
        Polynomial::var(v(s))
    }

    fn sig(p: u16, q: u16, k: u16) -> Signature {
        Signature::new(p, q, k).unwrap()
    }

    /// Independent cohomology count: explicit matrices over all basis pairs,
    /// nullity by Gaussian elimination on dense rational rows.
    fn dense_cohomology(spec: &KoszulSpec, ell: usize, c: u32) -> u64 {
        let shift = spec.max_exterior_degree(ell) as i64;
        let t = c as i64 - shift;
        let dense_rank = |from: usize| -> usize {
            if from >= spec.len() {
                return 0;
            }
            let src = spec.chain_basis(from, t);
            let tgt = spec.chain_basis(from + 1, t);
            let mut rows: Vec<Vec<Q>> = src
                .iter()
                .map(|k| {
                    let img = spec.d_on(k);
                    tgt.iter().map(|b| img.get(b).cloned().unwrap_or_else(Q::zero)).collect()
                })
                .collect();
            let mut r = 0;
            for col in 0..tgt.len() {
                let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
                rows.swap(r, piv);
                let inv = rows[r][col].inv();
                for i in 0..rows.len() {
                    if i != r && !rows[i][col].is_zero() {
                        let f = rows[i][col].mul(&inv);
                        for j in 0..tgt.len() {
                            let s = rows[r][j].mul(&f);
                            rows[i][j] = rows[i][j].sub(&s);
                        }
                    }
                }
                r += 1;
            }
            r
        };
        let dim = spec.chain_basis(ell, t).len();
        let inc = if ell == 0 { 0 } else { dense_rank(ell - 1) };
        (dim - dense_rank(ell) - inc) as u64
    }

    #[test]
    fn two_variable_regular_sequence() {
        let s = KoszulSpec::standard(&[v(1), v(2)], vec![x(1), x(2)]).unwrap();
        assert_eq!(koszul_cohomology_dims(&s, 0, 6), vec![0; 7]);
        assert_eq!(koszul_cohomology_dims(&s, 1, 6), vec![0; 7]);
        assert_eq!(koszul_cohomology_dims(&s, 2, 6), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn repeated_generator() {
        let s = KoszulSpec::standard(&[v(1)], vec![x(1), x(1)]).unwrap();
        let h1 = koszul_cohomology_dims(&s, 1, 5);
        for c in 0..=5 {
            assert_eq!(h1[c], dense_cohomology(&s, 1, c as u32));
        }
        assert_eq!(h1, vec![1, 0, 0, 0, 0, 0]);
        // the class is w1 + w2
        let cls = vec![(0b01, Polynomial::one()), (0b10, Polynomial::one())];
        assert!(s.differential(&cls).is_empty());
    }

    #[test]
    fn top_cohomology_of_w_sequence() {
        // w1, w2 in a ring that also has a degree-2 variable r: H^2 = C[r]
        let vars = vec![(v(1), 1), (v(2), 1), (v(3), 2)];
        let s = KoszulSpec::new(vars.clone(), vec![x(1), x(2)]).unwrap();
        let h = koszul_cohomology_dims(&s, 2, 6);
        let quotient = hilbert_quotient(&vars, &[x(1), x(2)], 6).unwrap();
        assert_eq!(h, quotient.coefficients);
        assert_eq!(h, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn cohomology_matches_dense_oracle() {
        let s = KoszulSpec::standard(&[v(1), v(2), v(3)], vec![x(1).mul(&x(2)), x(2).mul(&x(3)), x(1).pow(2)]).unwrap();
        for ell in 0..=3 {
            let h = koszul_cohomology_dims(&s, ell, 4);
            for c in 0..=4 {
                assert_eq!(h[c as usize], dense_cohomology(&s, ell, c), "ell={ell} c={c}");
            }
        }
    }

    #[test]
    fn disjoint_products_are_regular() {
        let vars: Vec<VarIndex> = (1..=6).map(v).collect();
        let gens = (0..3).map(|i| x(2 * i + 1).mul(&x(2 * i + 2))).collect();
        let s = KoszulSpec::standard(&vars, gens).unwrap();
        let r = is_regular(&s, 8).unwrap();
        assert!(r.is_regular() && r.prefix_injective && r.hilbert_agrees);
    }

    #[test]
    fn repeated_generator_is_irregular() {
        let s = KoszulSpec::standard(&[v(1)], vec![x(1), x(1)]).unwrap();
        let r = is_regular(&s, 6).unwrap();
        match &r.status {
            RegularityStatus::Irregular { index, degree, witness } => {
                assert_eq!((*index, *degree), (2, 0));
                assert_eq!(witness.to_text(), Polynomial::one().to_text());
                assert!(check_witness(&s, *index, *degree, witness));
            }
            other => panic!("{other:?}"),
        }
        assert!(!r.hilbert_agrees);
    }

    #[test]
    fn q_sequence_regular_when_k_large() {
        let s = KoszulSpec::q_sequence(&sig(2, 1, 2));
        assert!(is_regular(&s, 10).unwrap().is_regular());
    }

    #[test]
    fn q_sequence_irregular_when_k_small() {
        // (2,2,1): four quadrics in four variables cannot be regular
        let s = KoszulSpec::q_sequence(&sig(2, 2, 1));
        let r = is_regular(&s, 6).unwrap();
        let RegularityStatus::Irregular { index, degree, witness } = &r.status else { panic!("{r:?}") };
        assert!(check_witness(&s, *index, *degree, witness));
        assert!(!r.hilbert_agrees);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(build_subsequence_tau(2, 1, 1).unwrap(), vec![(1, 3)]);
        assert_eq!(build_subsequence_tau(2, 1, 2).unwrap(), vec![(1, 3), (2, 3)]);
        assert_eq!(build_subsequence_tau(4, 2, 2).unwrap(), vec![(1, 5), (2, 5), (3, 6), (4, 6)]);
        assert!(matches!(build_subsequence_tau(2, 2, 2), Err(Error::BadHypothesis(_))));
        assert!(is_regular(&tau_spec(&sig(2, 1, 2)).unwrap(), 10).unwrap().is_regular());
    }

    #[test]
    fn tau_blocks_have_k_entries() {
        for (p, q, k) in [(3, 1, 3), (4, 2, 2), (6, 3, 2), (5, 1, 4)] {
            let t = build_subsequence_tau(p, q, k).unwrap();
            assert_eq!(t.len(), (k * q) as usize);
            for mu in p + 1..=p + q {
                assert_eq!(t.iter().filter(|x| x.1 == mu).count(), k as usize);
            }
        }
    }

    #[test]
    fn non_homogeneous_rejected() {
        let e = KoszulSpec::standard(&[v(1), v(2)], vec![x(1).add(&x(2).pow(2))]);
        assert!(matches!(e, Err(Error::NonHomogeneousGenerator(_))));
        let e = KoszulSpec::standard(&[v(1)], vec![Polynomial::zero()]);
        assert!(matches!(e, Err(Error::NonHomogeneousGenerator(_))));
    }

    #[test]
    fn text_round_trip() {
        let s = KoszulSpec::new(vec![(v(1), 1), (v(2), 2)], vec![x(1).pow(2).add(&x(2)), x(2)]).unwrap();
        assert_eq!(KoszulSpec::parse(&s.to_text()).unwrap(), s);
        let t = KoszulSpec::parse("# ring\nvar z[1,1]\nvar z[2,1]\ngen 1 * z[1,1]^1 * z[2,1]^1\n").unwrap();
        assert_eq!(t.degrees(), &[2]);
    }

    fn random_specs() -> Vec<KoszulSpec> {
        let vars: Vec<VarIndex> = (1..=4).map(v).collect();
        vec![
            KoszulSpec::standard(&vars, vec![x(1).mul(&x(2)), x(3).pow(2), x(4), x(1).add(&x(3))]).unwrap(),
            KoszulSpec::standard(&vars, vec![x(1).mul(&x(2)), x(1).mul(&x(3)), x(4).pow(2)]).unwrap(),
            KoszulSpec::q_sequence(&sig(2, 1, 2)),
            KoszulSpec::q_sequence(&sig(1, 1, 2)),
            KoszulSpec::standard(&vars, vec![x(1).pow(2).sub(&x(2).pow(2)), x(1).mul(&x(2)), x(3).mul(&x(4))]).unwrap(),
        ]
    }

    #[test]
    fn verdict_is_permutation_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for s in random_specs() {
            let base = is_regular(&s, 6).unwrap().is_regular();
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..s.len()).collect();
                perm.shuffle(&mut rng);
                let r = is_regular(&s.permuted(&perm), 6).unwrap();
                assert_eq!(r.is_regular(), base);
                if let RegularityStatus::Irregular { index, degree, witness } = &r.status {
                    assert!(check_witness(&s.permuted(&perm), *index, *degree, witness));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn regular_means_koszul_acyclic(a in 0usize..4, b in 0usize..4, c in 0usize..4) {
            let vars: Vec<VarIndex> = (1..=3).map(v).collect();
            let pool = [x(1), x(2).pow(2), x(1).mul(&x(3)), x(3).sub(&x(2))];
            let s = KoszulSpec::standard(&vars, vec![pool[a].clone(), pool[b].clone(), pool[c].clone()]).unwrap();
            let r = is_regular(&s, 5).unwrap();
            prop_assert_eq!(r.prefix_injective, r.hilbert_agrees);
            if r.is_regular() {
                for ell in 0..3 {
                    prop_assert!(koszul_cohomology_dims(&s, ell, 5).iter().all(|&d| d == 0));
                }
                let h = koszul_cohomology_dims(&s, 3, 5);
                prop_assert_eq!(h, r.quotient_series.clone());
            }
        }
    }
}
