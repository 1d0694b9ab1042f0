//! Sparse multivariate polynomials over exact rationals, the differential
//! operators of the Fock model, graded pieces and truncated Hilbert series.

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SVec};
use crate::scalar::{Field, Q};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// The variable `z[slot, column]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct VarIndex {
    pub slot: u16,
    pub column: u16,
}

impl VarIndex {
    pub const fn new(slot: u16, column: u16) -> VarIndex {
        VarIndex { slot, column }
    }

    /// Positive variables are those whose slot is at most `p`.
    pub fn is_positive(&self, p: u16) -> bool {
        self.slot <= p
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z[{},{}]", self.slot, self.column)
    }
}

/// Monomial as a sorted list of (variable, positive exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarIndex, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: VarIndex) -> Monomial {
        Monomial { exps: vec![(v, 1)], degree: 1 }
    }

    pub fn from_exps(mut e: Vec<(VarIndex, u32)>) -> Monomial {
        e.retain(|x| x.1 > 0);
        e.sort();
        let mut out: Vec<(VarIndex, u32)> = Vec::with_capacity(e.len());
        for (v, x) in e {
            match out.last_mut() {
                Some(l) if l.0 == v => l.1 += x,
                _ => out.push((v, x)),
            }
        }
        let degree = out.iter().map(|x| x.1).sum();
        Monomial { exps: out, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree with each variable weighted by `w`.
    pub fn weighted_degree(&self, w: &impl Fn(VarIndex) -> u32) -> u32 {
        self.exps.iter().map(|&(v, e)| w(v) * e).sum()
    }

    pub fn exps(&self) -> &[(VarIndex, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: VarIndex) -> u32 {
        self.exps.binary_search_by(|x| x.0.cmp(&v)).map(|i| self.exps[i].1).unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + o.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < o.exps.len() {
            if j == o.exps.len() || (i < self.exps.len() && self.exps[i].0 < o.exps[j].0) {
                out.push(self.exps[i]);
                i += 1;
            } else if i == self.exps.len() || o.exps[j].0 < self.exps[i].0 {
                out.push(o.exps[j]);
                j += 1;
            } else {
                out.push((self.exps[i].0, self.exps[i].1 + o.exps[j].1));
                i += 1;
                j += 1;
            }
        }
        Monomial { exps: out, degree: self.degree + o.degree }
    }

    /// Multiplies by `v^e` (e may be negative); None if an exponent would go negative.
    pub fn shift(&self, v: VarIndex, e: i32) -> Option<Monomial> {
        let cur = self.exponent(v) as i32;
        if cur + e < 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        match exps.binary_search_by(|x| x.0.cmp(&v)) {
            Ok(i) => {
                if cur + e == 0 {
                    exps.remove(i);
                } else {
                    exps[i].1 = (cur + e) as u32;
                }
            }
            Err(i) => {
                if e > 0 {
                    exps.insert(i, (v, e as u32));
                }
            }
        }
        Some(Monomial { exps, degree: (self.degree as i32 + e) as u32 })
    }

    /// True if `self` divides `o`.
    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| o.exponent(v) >= e)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the larger exponent
    /// of the earliest variable wins.
    fn cmp(&self, o: &Monomial) -> Ordering {
        self.degree.cmp(&o.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(o.exps.iter()) {
                if a.0 != b.0 {
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.exps.len().cmp(&o.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Monomial) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.exps.iter().map(|(v, e)| format!("{v}^{e}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn constant(c: Q) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Q::one())
    }

    pub fn var(v: VarIndex) -> Polynomial {
        Polynomial::term(Q::one(), Monomial::var(v))
    }

    pub fn term(c: Q, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(ts: impl IntoIterator<Item = (Monomial, Q)>) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in ts {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(c);
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Q::from_i64(-1))
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut r = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        r
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn partial(&self, v: VarIndex) -> Polynomial {
        let mut r = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                r.add_term(m.shift(v, -1).unwrap(), &c.mul(&Q::from_i64(e as i64)));
            }
        }
        r
    }

    /// Multiplication by a single variable.
    pub fn times_var(&self, v: VarIndex) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.shift(v, 1).unwrap(), c.clone())).collect() }
    }

    /// Homogeneous degree if every term has the same weighted degree.
    pub fn homogeneous_degree(&self, w: &impl Fn(VarIndex) -> u32) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.weighted_degree(w));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree(&|_| 1).is_some()
    }

    pub fn variables(&self) -> Vec<VarIndex> {
        let mut v: Vec<VarIndex> = self.terms.keys().flat_map(|m| m.exps.iter().map(|x| x.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces every variable by a polynomial.
    pub fn substitute(&self, f: &impl Fn(VarIndex) -> Polynomial) -> Polynomial {
        let mut cache: BTreeMap<VarIndex, Vec<Polynomial>> = BTreeMap::new();
        let mut r = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for &(v, e) in &m.exps {
                let powers = cache.entry(v).or_insert_with(|| vec![Polynomial::one(), f(v)]);
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&powers[1]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            r = r.add(&t);
        }
        r
    }

    /// Coordinates in the monomial basis, for linear algebra.
    pub fn to_svec(&self) -> SVec<Monomial, Q> {
        SVec::from_sorted(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    pub fn from_svec(v: &SVec<Monomial, Q>) -> Polynomial {
        Polynomial::from_terms(v.entries().iter().cloned())
    }

    /// Canonical text form `c * z[s,c]^e * ... + ...`, leading term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| if m.exps.is_empty() { c.to_string() } else { format!("{c} * {m}") })
            .collect();
        parts.join(" + ")
    }

    /// Parses the text form produced by [`Polynomial::to_text`].
    pub fn parse(s: &str) -> std::result::Result<Polynomial, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero());
        }
        let mut p = Polynomial::zero();
        for term in s.split(" + ") {
            let mut c = Q::one();
            let mut exps = Vec::new();
            for (i, factor) in term.split('*').map(str::trim).enumerate() {
                if let Some(rest) = factor.strip_prefix("z[") {
                    let (idx, pow) = rest.split_once(']').ok_or_else(|| format!("bad factor {factor:?}"))?;
                    let (a, b) = idx.split_once(',').ok_or_else(|| format!("bad index {idx:?}"))?;
                    let slot: u16 = a.trim().parse().map_err(|_| format!("bad slot in {factor:?}"))?;
                    let column: u16 = b.trim().parse().map_err(|_| format!("bad column in {factor:?}"))?;
                    let e: u32 = match pow.strip_prefix('^') {
                        Some(e) => e.trim().parse().map_err(|_| format!("bad exponent in {factor:?}"))?,
                        None if pow.trim().is_empty() => 1,
                        None => return Err(format!("bad factor {factor:?}")),
                    };
                    exps.push((VarIndex::new(slot, column), e));
                } else if i == 0 {
                    c = factor.parse()?;
                } else {
                    return Err(format!("bad factor {factor:?}"));
                }
            }
            p.add_term(Monomial::from_exps(exps), &c);
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// The operators appearing in the differential and in the Lie algebra action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffOp {
    /// `d^2 / dz_u dz_v`
    SecondPartial(VarIndex, VarIndex),
    /// multiplication by `z_u z_v`
    Mult(VarIndex, VarIndex),
    /// `z_u d/dz_v - z_v d/dz_u`
    EulerPair(VarIndex, VarIndex),
}

pub fn apply_diff_op(f: &Polynomial, op: DiffOp) -> Polynomial {
    match op {
        DiffOp::SecondPartial(u, v) => f.partial(v).partial(u),
        DiffOp::Mult(u, v) => f.times_var(u).times_var(v),
        DiffOp::EulerPair(u, v) => f.partial(v).times_var(u).sub(&f.partial(u).times_var(v)),
    }
}

/// All monomials of weighted degree `m`, in descending graded-lex order.
pub fn weighted_piece(m: u32, vars: &[(VarIndex, u32)]) -> Vec<Monomial> {
    let mut vs: Vec<(VarIndex, u32)> = vars.to_vec();
    vs.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(i: usize, left: u32, vs: &[(VarIndex, u32)], cur: &mut Vec<(VarIndex, u32)>, out: &mut Vec<Monomial>) {
        if i == vs.len() {
            if left == 0 {
                out.push(Monomial::from_exps(cur.clone()));
            }
            return;
        }
        let (v, w) = vs[i];
        assert!(w > 0, "variables must have positive degree");
        let mut e = left / w;
        loop {
            if e > 0 {
                cur.push((v, e));
            }
            rec(i + 1, left - e * w, vs, cur, out);
            if e > 0 {
                cur.pop();
            }
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    rec(0, m, &vs, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// All monomials of total degree `m` in `vars`, in descending graded-lex order.
pub fn graded_piece(m: u32, vars: &[VarIndex]) -> Vec<Monomial> {
    let w: Vec<(VarIndex, u32)> = vars.iter().map(|&v| (v, 1)).collect();
    weighted_piece(m, &w)
}

/// Truncated Hilbert series: `coefficients[m]` for `m = 0..=d_max`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HilbertSeries {
    pub coefficients: Vec<u64>,
    pub d_max: u32,
}

impl HilbertSeries {
    /// Series of the free ring on variables with the given degrees.
    pub fn free(degrees: &[u32], d_max: u32) -> HilbertSeries {
        let mut c = vec![0u64; d_max as usize + 1];
        c[0] = 1;
        for &d in degrees {
            for m in d as usize..=d_max as usize {
                c[m] += c[m - d as usize];
            }
        }
        HilbertSeries { coefficients: c, d_max }
    }

    /// Multiplies by `prod (1 - t^d_i)`, returning signed coefficients.
    pub fn times_complete_intersection(&self, degrees: &[u32]) -> Vec<i64> {
        let mut c: Vec<i64> = self.coefficients.iter().map(|&x| x as i64).collect();
        for &d in degrees {
            for m in (d as usize..c.len()).rev() {
                c[m] -= c[m - d as usize];
            }
        }
        c
    }

    /// Shifts the series up by `s` degrees, keeping the truncation.
    pub fn shifted(&self, s: u32) -> HilbertSeries {
        let mut c = vec![0u64; self.coefficients.len()];
        for m in s as usize..c.len() {
            c[m] = self.coefficients[m - s as usize];
        }
        HilbertSeries { coefficients: c, d_max: self.d_max }
    }
}

/// Hilbert series of `free ring / (gens)` up to `d_max`, by degree-wise row reduction.
pub fn hilbert_quotient(vars: &[(VarIndex, u32)], gens: &[Polynomial], d_max: u32) -> Result<HilbertSeries> {
    let weight = weight_fn(vars);
    let mut gdeg = Vec::new();
    for g in gens {
        if g.is_zero() {
            return Err(Error::NonHomogeneousGenerator("0 (the zero polynomial)".into()));
        }
        match g.homogeneous_degree(&weight) {
            Some(d) => gdeg.push(d),
            None => return Err(Error::NonHomogeneousGenerator(g.to_text())),
        }
    }
    let mut coefficients = Vec::with_capacity(d_max as usize + 1);
    for m in 0..=d_max {
        let basis = weighted_piece(m, vars);
        let r = ideal_piece(vars, gens, &gdeg, m).rank();
        coefficients.push((basis.len() - r) as u64);
    }
    Ok(HilbertSeries { coefficients, d_max })
}

pub(crate) fn weight_fn(vars: &[(VarIndex, u32)]) -> impl Fn(VarIndex) -> u32 + '_ {
    move |v: VarIndex| {
        vars.iter()
            .find(|x| x.0 == v)
            .map(|x| x.1)
            .unwrap_or_else(|| panic!("variable {v} not in the ring"))
    }
}

/// Echelon basis of the degree-`m` part of the ideal generated by `gens`.
pub(crate) fn ideal_piece(vars: &[(VarIndex, u32)], gens: &[Polynomial], gdeg: &[u32], m: u32) -> Echelon<Monomial, Q> {
    let mut e = Echelon::new();
    for (g, &d) in gens.iter().zip(gdeg) {
        if d > m {
            continue;
        }
        for mono in weighted_piece(m - d, vars) {
            e.insert(g.mul_monomial(&mono).to_svec());
        }
    }
    e
}
