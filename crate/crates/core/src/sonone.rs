//! The SO(n,1) family: the bases `Φ_J` and `*Φ_J`, determinantal minors,
//! the Koszul models of the two eigen-subcomplexes, and checks of the
//! cohomology theorems against the general engine.
//!
//! Here `ω_α = w[α, n+1]`, `w_i = z[n+1, i]`, and the differential of the
//! associated graded is `d' = Σ_α A(ω_α) ⊗ Σ_i z[α,i] w_i`.

use crate::cochain::{Cochain, Engine, KappaElement, Signature, Twist};
use crate::error::{Error, Result};
use crate::exterior::{hodge_star, wedge, ExtGen, ExtIndex};
use crate::koszul::{is_regular, koszul_cohomology_dims, KoszulSpec};
use crate::linalg::{Echelon, SVec, TrackedEchelon};
use crate::ring::{hilbert_quotient, weighted_piece, HilbertSeries, Monomial, Polynomial, VarIndex};
use crate::scalar::{Field, Q};
use crate::spectral::{page_e0_e1, PageOptions};
use serde::Serialize;
use std::collections::BTreeMap;

/// A strictly increasing tuple of column indices from `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultiIndexJ {
    entries: Vec<u16>,
}

impl MultiIndexJ {
    pub fn new(entries: Vec<u16>, k: u16) -> Result<MultiIndexJ> {
        if !entries.windows(2).all(|w| w[0] < w[1]) || entries.iter().any(|&j| j == 0 || j > k) {
            return Err(Error::BadRange(format!("{entries:?} is not strictly increasing in 1..={k}")));
        }
        Ok(MultiIndexJ { entries })
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `J(i)`: the number of entries below `i`.
    pub fn below(&self, i: u16) -> usize {
        self.entries.iter().filter(|&&j| j < i).count()
    }

    /// `{J, i}` with the sign `(-1)^{J(i)}`, or None if `i ∈ J`.
    pub fn with(&self, i: u16) -> Option<(MultiIndexJ, i64)> {
        if self.entries.contains(&i) {
            return None;
        }
        let mut e = self.entries.clone();
        let pos = self.below(i);
        e.insert(pos, i);
        Some((MultiIndexJ { entries: e }, if pos % 2 == 0 { 1 } else { -1 }))
    }

    /// `{J - j}`, or None if `j ∉ J`.
    pub fn without(&self, j: u16) -> Option<MultiIndexJ> {
        self.entries.contains(&j).then(|| MultiIndexJ { entries: self.entries.iter().copied().filter(|&x| x != j).collect() })
    }

    /// All tuples of length `len` from `1..=k`, lexicographically.
    pub fn all(len: usize, k: u16) -> Vec<MultiIndexJ> {
        ExtIndex::all_of_degree(k, 1, len)
            .into_iter()
            .map(|i| MultiIndexJ { entries: i.gens().iter().map(|g| g.alpha).collect() })
            .collect()
    }

    fn as_ext(&self, k: u16) -> ExtIndex {
        ExtIndex::from_sorted(self.entries.iter().map(|&j| ExtGen::new(j, k + 1)).collect())
    }
}

/// The ring `S_k = C[r_ij (i ≤ j), w_i]` with `r` in degree 2 and `w` in degree 1.
/// `r_ij` is stored as `z[i,j]` and `w_i` as `z[0,i]`.
#[derive(Clone, Debug)]
pub struct SkRing {
    pub k: u16,
    vars: Vec<(VarIndex, u32)>,
}

impl SkRing {
    pub fn new(k: u16) -> SkRing {
        let mut vars = Vec::new();
        for i in 1..=k {
            for j in i..=k {
                vars.push((VarIndex::new(i, j), 2));
            }
        }
        for i in 1..=k {
            vars.push((VarIndex::new(0, i), 1));
        }
        SkRing { k, vars }
    }

    pub fn vars(&self) -> &[(VarIndex, u32)] {
        &self.vars
    }

    pub fn r(&self, i: u16, j: u16) -> Polynomial {
        Polynomial::var(VarIndex::new(i.min(j), i.max(j)))
    }

    pub fn w(&self, i: u16) -> Polynomial {
        Polynomial::var(VarIndex::new(0, i))
    }

    /// The cubic `c_j = Σ_i r_ij w_i`.
    pub fn c(&self, j: u16) -> Polynomial {
        (1..=self.k).fold(Polynomial::zero(), |acc, i| acc.add(&self.r(i, j).mul(&self.w(i))))
    }

    pub fn cubics(&self) -> Vec<Polynomial> {
        (1..=self.k).map(|j| self.c(j)).collect()
    }

    pub fn ws(&self) -> Vec<Polynomial> {
        (1..=self.k).map(|i| self.w(i)).collect()
    }

    /// Monomials of degree `m`.
    pub fn piece(&self, m: u32) -> Vec<Monomial> {
        weighted_piece(m, &self.vars)
    }

    pub fn series(&self, d_max: u32) -> HilbertSeries {
        let deg: Vec<u32> = self.vars.iter().map(|x| x.1).collect();
        HilbertSeries::free(&deg, d_max)
    }

    /// Series of `R_k = C[r_ij]`.
    pub fn r_series(&self, d_max: u32) -> HilbertSeries {
        HilbertSeries::free(&vec![2; (self.k * (self.k + 1) / 2) as usize], d_max)
    }

    /// `π`: sends every `r_ij` to zero and keeps the `w_i`.
    pub fn retract(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&|v: VarIndex| if v.slot == 0 { Polynomial::var(v) } else { Polynomial::zero() })
    }

    /// `r_ij ↦ Σ_α z[α,i] z[α,j]`, `w_i ↦ z[n+1,i]`.
    pub fn to_z(&self, f: &Polynomial, n: u16) -> Polynomial {
        f.substitute(&|v: VarIndex| {
            if v.slot == 0 {
                Polynomial::var(VarIndex::new(n + 1, v.column))
            } else {
                (1..=n).fold(Polynomial::zero(), |acc, a| {
                    acc.add(&Polynomial::var(VarIndex::new(a, v.slot)).mul(&Polynomial::var(VarIndex::new(a, v.column))))
                })
            }
        })
    }

    pub fn koszul(&self, gens: Vec<Polynomial>) -> KoszulSpec {
        KoszulSpec::new(self.vars.clone(), gens).expect("generators of S_k are homogeneous")
    }
}

/// Determinant of the minor of the `n × k` matrix `z[α,i]` on `rows` and `cols`.
pub fn minor_f(rows: &[u16], cols: &[u16], k: u16, n: u16) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!("{} rows but {} columns", rows.len(), cols.len())));
    }
    if rows.iter().any(|&r| r == 0 || r > n) || cols.iter().any(|&c| c == 0 || c > k) {
        return Err(Error::ShapeMismatch(format!("minor {rows:?} × {cols:?} outside {n} × {k}")));
    }
    fn det(rows: &[u16], cols: &[u16]) -> Polynomial {
        if rows.is_empty() {
            return Polynomial::one();
        }
        let mut acc = Polynomial::zero();
        for (s, &c) in cols.iter().enumerate() {
            let rest: Vec<u16> = cols.iter().copied().filter(|&x| x != c).collect();
            let t = Polynomial::var(VarIndex::new(rows[0], c)).mul(&det(&rows[1..], &rest));
            acc = if s % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    Ok(det(rows, cols))
}

/// `Δ_ij = Σ_α ∂² / ∂z[α,i] ∂z[α,j]` over the positive rows.
pub fn delta_ij(f: &Polynomial, i: u16, j: u16, n: u16) -> Polynomial {
    (1..=n).fold(Polynomial::zero(), |acc, a| acc.add(&f.partial(VarIndex::new(a, i)).partial(VarIndex::new(a, j))))
}

fn check_family(n: u16, k: u16, j: &MultiIndexJ) -> Result<Signature> {
    if k >= n {
        return Err(Error::BadRange(format!("the Φ_J basis needs k < n (k = {k}, n = {n})")));
    }
    if j.entries.iter().any(|&x| x > k) {
        return Err(Error::BadRange(format!("{:?} has entries above k = {k}", j.entries)));
    }
    Signature::so_n1(n, k)
}

fn omega(n: u16, rows: &[u16]) -> Option<(ExtIndex, i32)> {
    crate::exterior::canonicalize(&rows.iter().map(|&a| ExtGen::new(a, n + 1)).collect::<Vec<_>>())
}

/// `Φ_J = Σ_I f_{I,J} ω_I`, or `*Φ_J = Σ_I f_{I,J} *ω_I` when `star`.
pub fn build_phi(n: u16, k: u16, j: &MultiIndexJ, star: bool) -> Result<Cochain> {
    let sig = check_family(n, k, j)?;
    let mut out = Cochain::zero(sig);
    for i in ExtIndex::all_of_degree(n, 1, j.len()) {
        let rows: Vec<u16> = i.gens().iter().map(|g| g.alpha).collect();
        let f = minor_f(&rows, &j.entries, k, n)?;
        if star {
            let (s, sign) = hodge_star(&i, n, 1)?;
            out.add_term(s, &f.scale(&Q::from_i64(sign as i64)));
        } else {
            out.add_term(i, &f);
        }
    }
    Ok(out)
}

/// `φ₁^{(j)} = Σ_α z[α,j] ω_α`.
pub fn phi_one(sig: Signature, j: u16) -> Cochain {
    let mut out = Cochain::zero(sig);
    for a in 1..=sig.p {
        out.add_term(ExtIndex::single(ExtGen::new(a, sig.p + 1)), &Polynomial::var(sig.var(a, j)));
    }
    out
}

/// `φ₁^{(j_1)} ∧ … ∧ φ₁^{(j_ℓ)}`.
pub fn outer_product(n: u16, k: u16, j: &MultiIndexJ) -> Result<Cochain> {
    let sig = check_family(n, k, j)?;
    Ok(j.entries.iter().fold(Cochain::single(sig, ExtIndex::empty(), Polynomial::one()), |acc, &c| acc.wedge(&phi_one(sig, c))))
}

/// `*Φ_J` summed over ordered row tuples with monomial coefficients `z_{I,J}`.
pub fn star_phi_ordered(n: u16, k: u16, j: &MultiIndexJ) -> Result<Cochain> {
    let sig = check_family(n, k, j)?;
    let mut out = Cochain::zero(sig);
    fn rec(n: u16, j: &[u16], rows: &mut Vec<u16>, sig: Signature, out: &mut Cochain) {
        if rows.len() == j.len() {
            let Some((i, s)) = omega(n, rows) else { return };
            let (st, s2) = hodge_star(&i, n, 1).expect("q = 1");
            let z = rows.iter().zip(j).fold(Polynomial::one(), |acc, (&a, &c)| acc.mul(&Polynomial::var(sig.var(a, c))));
            out.add_term(st, &z.scale(&Q::from_i64((s * s2) as i64)));
            return;
        }
        for a in 1..=n {
            if !rows.contains(&a) {
                rows.push(a);
                rec(n, j, rows, sig, out);
                rows.pop();
            }
        }
    }
    rec(n, &j.entries, &mut Vec::new(), sig, &mut out);
    Ok(out)
}

/// Checks `d'Φ_J = Σ_i w_i Φ_{J,i}` with `Φ_{J,i} = (-1)^{J(i)} Φ_{{J,i}}`.
pub fn check_d_on_phi(n: u16, k: u16, j: &MultiIndexJ) -> Result<bool> {
    let sig = check_family(n, k, j)?;
    let lhs = build_phi(n, k, j, false)?.d_prime();
    let mut rhs = Cochain::zero(sig);
    for i in 1..=k {
        if let Some((ji, s)) = j.with(i) {
            let w = Polynomial::var(sig.var(n + 1, i)).scale(&Q::from_i64(s));
            rhs = rhs.add(&build_phi(n, k, &ji, false)?.mul_poly(&w));
        }
    }
    Ok(lhs == rhs)
}

/// `d'(*Φ_J)` expanded in the `*Φ_{J-j}`.
#[derive(Clone, Debug, Serialize)]
pub struct StarExpansion {
    /// `(J - j, sign)`: the coefficient of `*Φ_{J-j}` is `sign · Σ_i w_i r_ij`.
    pub terms: Vec<(MultiIndexJ, i64)>,
    /// The signs `(-1)^{|J|-1} (-1)^{s-1}`, `s` the position of `j` in `J`.
    pub predicted: Vec<i64>,
    /// Signs with which the Koszul model differential `Σ A(dw_j) c_j` acts on `*dw_J`.
    pub model: Vec<i64>,
}

impl StarExpansion {
    pub fn matches_prediction(&self) -> bool {
        self.terms.iter().map(|t| t.1).eq(self.predicted.iter().copied())
    }

    pub fn matches_model(&self) -> bool {
        self.terms.iter().map(|t| t.1).eq(self.model.iter().copied())
    }
}

type CochainKey = (ExtIndex, Monomial);

fn cochain_vec(c: &Cochain) -> SVec<CochainKey, Q> {
    let mut e = Vec::new();
    for (i, f) in c.terms() {
        for (m, x) in f.terms() {
            e.push(((i.clone(), m.clone()), x.clone()));
        }
    }
    SVec::from_entries(e)
}

/// Signs of `*dw_{J-j}` in `Σ_j dw_j ∧ *dw_J` for the star on `C^k`.
fn model_signs(k: u16, j: &MultiIndexJ) -> Vec<i64> {
    let (sj, s0) = hodge_star(&j.as_ext(k), k, 1).expect("q = 1");
    j.entries
        .iter()
        .map(|&x| {
            let g = ExtIndex::single(ExtGen::new(x, k + 1));
            let (res, s1) = wedge(&g, &sj).expect("x is not in the complement");
            let rest = j.without(x).expect("x ∈ J");
            let (target, s2) = hodge_star(&rest.as_ext(k), k, 1).expect("q = 1");
            assert_eq!(res, target);
            (s0 * s1 * s2) as i64
        })
        .collect()
}

/// Expands `d'(*Φ_J)` by solving against the explicit cochains
/// `(Σ_i w_i r_ij) *Φ_{J-j}`; fails if no such expansion exists.
pub fn d_on_star_phi(n: u16, k: u16, j: &MultiIndexJ) -> Result<StarExpansion> {
    let sig = check_family(n, k, j)?;
    let ring = SkRing::new(k);
    let target = cochain_vec(&build_phi(n, k, j, true)?.d_prime());
    let mut t = TrackedEchelon::new();
    let mut rests = Vec::new();
    for &x in &j.entries {
        let rest = j.without(x).expect("x ∈ J");
        let c = ring.to_z(&ring.c(x), n);
        t.push(cochain_vec(&build_phi(n, k, &rest, true)?.mul_poly(&c)));
        rests.push(rest);
    }
    let sol = t
        .solve(&target)
        .filter(|_| t.kernel().is_empty())
        .ok_or_else(|| Error::ShapeMismatch(format!("d'(*Φ_J) for J = {:?} is not a combination of c_j *Φ_(J-j) in {sig}", j.entries)))?;
    let mut terms = Vec::new();
    for (idx, rest) in rests.into_iter().enumerate() {
        let c = sol.get(&idx).cloned().unwrap_or_else(Q::zero);
        let s = c.to_i64().filter(|x| x.abs() == 1).ok_or_else(|| Error::ShapeMismatch(format!("coefficient {c} is not a sign")))?;
        terms.push((rest, s));
    }
    let base = if j.len() % 2 == 1 { 1 } else { -1 };
    let predicted = (0..j.len()).map(|s| if s % 2 == 0 { base } else { -base }).collect();
    Ok(StarExpansion { terms, predicted, model: model_signs(k, j) })
}

/// One checked statement in a report.
#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Clause {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Clause {
        Clause { name: name.into(), pass, detail: detail.into() }
    }
}

/// Dimension tables (rows indexed by form degree, columns by polynomial degree)
/// and pass/fail clauses.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub n: u16,
    pub k: u16,
    pub d_max: u32,
    pub tables: BTreeMap<String, Vec<Vec<usize>>>,
    pub clauses: Vec<Clause>,
}

impl Report {
    fn new(title: &str, n: u16, k: u16, d_max: u32) -> Report {
        Report { title: title.into(), n, k, d_max, tables: BTreeMap::new(), clauses: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn shifted(series: &HilbertSeries, s: usize, m: u32) -> usize {
    (m as usize).checked_sub(s).map(|d| series.coefficients[d] as usize).unwrap_or(0)
}

fn table(n: u16, d_max: u32, f: impl Fn(usize, u32) -> usize) -> Vec<Vec<usize>> {
    (0..=n as usize).map(|l| (0..=d_max).map(|m| f(l, m)).collect()).collect()
}

fn is_invariant(c: &Cochain, twist: Twist) -> bool {
    let s = c.sig;
    let chi = |e: u8| if e % 2 == 1 { Q::from_i64(-1) } else { Q::one() };
    KappaElement::basis(&s).into_iter().all(|x| c.kappa_act(x).is_zero())
        && twist.plus.is_none_or(|e| c.reflect(1) == c.scale(&chi(e)))
        && twist.minus.is_none_or(|e| c.reflect(s.p + 1) == c.scale(&chi(e)))
}

/// Compares the invariant blocks of `C₊` and `C₋` with the free `S_k`-modules
/// on `Φ_J` and `*Φ_J`, and the differentials with the Koszul models. The
/// explicit bases are rebuilt and ranked through degree `explicit_upto`.
pub fn verify_model_isos_with(n: u16, k: u16, d_max: u32, explicit_upto: u32) -> Result<Report> {
    if k >= n {
        return Err(Error::BadRange(format!("the models need k < n (k = {k}, n = {n})")));
    }
    let sig = Signature::so_n1(n, k)?;
    let ring = SkRing::new(k);
    let sk = ring.series(d_max + n as u32);
    let plus: Engine<Q> = Engine::new(sig, Twist::c_plus())?;
    let minus: Engine<Q> = Engine::new(sig, Twist::c_minus())?;
    let mut rep = Report::new("model isomorphisms", n, k, d_max);
    let nn = n as usize;
    let pred_plus = table(n, d_max, |l, m| binom(k as usize, l) * shifted(&sk, l, m));
    let pred_minus = table(n, d_max, |l, m| if l > nn { 0 } else { binom(k as usize, nn - l) * shifted(&sk, nn - l, m) });
    let obs_plus = table(n, d_max, |l, m| plus.block_dim(l, m));
    let obs_minus = table(n, d_max, |l, m| minus.block_dim(l, m));
    rep.clauses.push(Clause::new("C+ block dims = C(k,ℓ) · dim S_k(m-ℓ)", pred_plus == obs_plus, ""));
    rep.clauses.push(Clause::new("C- block dims = C(k,n-ℓ) · dim S_k(m-n+ℓ)", pred_minus == obs_minus, ""));
    rep.clauses.push(Clause::new(
        "C+ vanishes above k and C- below n-k",
        obs_plus[k as usize + 1..].iter().all(|r| r.iter().all(|&x| x == 0))
            && obs_minus[..nn - k as usize].iter().all(|r| r.iter().all(|&x| x == 0)),
        "",
    ));
    rep.tables.insert("C+ predicted".into(), pred_plus);
    rep.tables.insert("C+ observed".into(), obs_plus);
    rep.tables.insert("C- predicted".into(), pred_minus);
    rep.tables.insert("C- observed".into(), obs_minus);

    // explicit bases: S_k monomials times Φ_J (resp. *Φ_J), invariant and independent
    let mut explicit_ok = true;
    let mut detail = String::new();
    for (star, eng, twist) in [(false, &plus, Twist::c_plus()), (true, &minus, Twist::c_minus())] {
        for len in 0..=k as usize {
            let ell = if star { nn - len } else { len };
            for m in len as u32..=explicit_upto.min(d_max) {
                let mut e = Echelon::new();
                let mut count = 0;
                for j in MultiIndexJ::all(len, k) {
                    let base = build_phi(n, k, &j, star)?;
                    for s in ring.piece(m - len as u32) {
                        let c = base.mul_poly(&ring.to_z(&Polynomial::term(Q::one(), s), n));
                        if !is_invariant(&c, twist) {
                            explicit_ok = false;
                            detail = format!("non-invariant basis element at ℓ={ell}, m={m}");
                        }
                        e.insert(eng.from_cochain(&c));
                        count += 1;
                    }
                }
                if e.rank() != count || count != eng.block_dim(ell, m) {
                    explicit_ok = false;
                    detail = format!("{} basis rank {} of {count}, block {} at ℓ={ell}, m={m}", if star { "C-" } else { "C+" }, e.rank(), eng.block_dim(ell, m));
                }
            }
        }
    }
    rep.clauses.push(Clause::new(&format!("explicit bases span the blocks through degree {}", explicit_upto.min(d_max)), explicit_ok, detail));

    let mut plus_ok = true;
    let mut minus_ok = true;
    let mut minus_pred = true;
    for len in 0..=k as usize {
        for j in MultiIndexJ::all(len, k) {
            plus_ok &= check_d_on_phi(n, k, &j)?;
            if len > 0 {
                let x = d_on_star_phi(n, k, &j)?;
                minus_ok &= x.matches_model();
                minus_pred &= x.matches_prediction();
            } else {
                minus_ok &= build_phi(n, k, &j, true)?.d_prime().is_zero();
            }
        }
    }
    rep.clauses.push(Clause::new("Φ_J ↦ dw_J intertwines d' with Σ A(dw_i) w_i", plus_ok, ""));
    rep.clauses.push(Clause::new("*Φ_J ↦ *dw_J intertwines d' with Σ A(dw_j) c_j", minus_ok, ""));
    rep.clauses.push(Clause::new(
        "d'(*Φ_J) signs (-1)^{|J|-1}(-1)^{s-1}",
        minus_pred,
        "*Φ_{J-j} taken as the unsigned *Φ_{J∖j}",
    ));
    Ok(rep)
}

pub fn verify_model_isos(n: u16, k: u16, d_max: u32) -> Result<Report> {
    verify_model_isos_with(n, k, d_max, 4)
}

fn rows_of(eng: &Engine<Q>, d_max: u32) -> Result<Vec<Vec<usize>>> {
    let (_, e1) = page_e0_e1(eng, &PageOptions::new(d_max))?;
    Ok((0..=eng.sig().top()).map(|l| e1.row(l)).collect())
}

fn concentrated(rows: &[Vec<usize>], ell: usize) -> bool {
    rows.iter().enumerate().all(|(l, r)| l == ell || r.iter().all(|&x| x == 0))
}

/// Checks the cohomology of `C₊`, `C₋` and `C` against `R_k φ_k` and
/// `S_k/(c_1..c_k) vol`, with regularity certificates for `(w_i)` and `(c_j)`.
pub fn verify_thm_main(n: u16, k: u16, d_max: u32) -> Result<Report> {
    if k > n {
        return Err(Error::BadRange(format!("k = {k} > n = {n} is covered by the large-k vanishing theorem")));
    }
    let sig = Signature::so_n1(n, k)?;
    let ring = SkRing::new(k);
    let (nn, kk) = (n as usize, k as usize);
    let mut rep = Report::new("cohomology of SO(n,1)", n, k, d_max);
    let r_series = ring.r_series(d_max);
    let quotient = hilbert_quotient(ring.vars(), &ring.cubics(), d_max)?;
    let pred_plus: Vec<usize> = (0..=d_max).map(|m| shifted(&r_series, kk, m)).collect();
    let pred_minus: Vec<usize> = quotient.coefficients.iter().map(|&x| x as usize).collect();

    let plus = rows_of(&Engine::new(sig, Twist::c_plus())?, d_max)?;
    let minus = rows_of(&Engine::new(sig, Twist::c_minus())?, d_max)?;
    let full = rows_of(&Engine::new(sig, Twist::connected())?, d_max)?;
    rep.clauses.push(Clause::new("E1(C+) vanishes off ℓ = k", concentrated(&plus, kk), ""));
    rep.clauses.push(Clause::new("H^k(C+) = R_k φ_k (series shifted by k)", plus[kk] == pred_plus, format!("{:?}", plus[kk])));
    rep.clauses.push(Clause::new("E1(C-) vanishes off ℓ = n", concentrated(&minus, nn), ""));
    rep.clauses.push(Clause::new("H^n(C-) = S_k/(c_1..c_k) vol", minus[nn] == pred_minus, format!("{:?}", minus[nn])));
    let sum_ok = (0..=nn).all(|l| (0..=d_max as usize).all(|m| full[l][m] == plus[l][m] + minus[l][m]));
    rep.clauses.push(Clause::new("E1(C) = E1(C+) + E1(C-)", sum_ok, ""));
    if k == n {
        let both: Vec<usize> = pred_plus.iter().zip(&pred_minus).map(|(a, b)| a + b).collect();
        rep.clauses.push(Clause::new("H^n(C) = R_n φ_n ⊕ S_n/(c) vol", full[nn] == both, format!("{:?}", full[nn])));
    }
    let reg_c = is_regular(&ring.koszul(ring.cubics()), d_max)?;
    let reg_w = is_regular(&ring.koszul(ring.ws()), d_max)?;
    rep.clauses.push(Clause::new("(c_1..c_k) regular", reg_c.is_regular(), format!("through degree {d_max}")));
    rep.clauses.push(Clause::new("(w_1..w_k) regular", reg_w.is_regular(), format!("through degree {d_max}")));
    let kw = koszul_cohomology_dims(&ring.koszul(ring.ws()), kk, d_max);
    let kw_ok = kw.iter().zip(&r_series.coefficients).all(|(a, b)| a == b);
    rep.clauses.push(Clause::new("H^k(K(w_1..w_k)) = R_k", kw_ok, format!("{kw:?}")));
    rep.tables.insert("E1(C+)".into(), plus);
    rep.tables.insert("E1(C-)".into(), minus);
    rep.tables.insert("E1(C)".into(), full);
    rep.tables.insert("predicted H^k(C+)".into(), vec![pred_plus]);
    rep.tables.insert("predicted H^n(C-)".into(), vec![pred_minus]);
    Ok(rep)
}

/// `f(w) vol` for `f ∈ C[w_1..w_k]` stays independent in `H^n(C₋)`: checked in
/// `S_k/(c)` through `π`, and in the invariant complex modulo all coboundaries
/// of polynomial degree at most `d_max`.
pub fn w_injection(n: u16, k: u16, d_max: u32) -> Result<Clause> {
    let sig = Signature::so_n1(n, k)?;
    let ring = SkRing::new(k);
    let retract_ok = ring.cubics().iter().all(|c| ring.retract(c).is_zero())
        && ring.ws().iter().all(|w| ring.retract(w) == *w);
    let eng: Engine<Q> = Engine::new(sig, Twist::c_minus())?;
    let wvars: Vec<(VarIndex, u32)> = (1..=k).map(|i| (VarIndex::new(0, i), 1)).collect();
    let mut ok = retract_ok;
    let mut detail = String::new();
    for m in 0..=d_max {
        // modulo the cubics in S_k
        let ideal = crate::ring::ideal_piece(ring.vars(), &ring.cubics(), &[3; 64][..k as usize], m);
        let mut e = ideal.clone();
        let monos = weighted_piece(m, &wvars);
        for w in &monos {
            e.insert(Polynomial::term(Q::one(), w.clone()).to_svec());
        }
        // modulo coboundaries in the complex
        let mut span = Echelon::new();
        let mut mp = m % 2;
        while mp <= d_max {
            for (_, imgs) in eng.images(crate::cochain::Op::DFull, n as usize - 1, mp).iter() {
                for x in imgs {
                    span.insert(x.clone());
                }
            }
            mp += 2;
        }
        let before = span.rank();
        for w in &monos {
            let c = Cochain::single(sig, ExtIndex::vol(n, 1), ring.to_z(&Polynomial::term(Q::one(), w.clone()), n));
            span.insert(eng.from_cochain(&c));
        }
        if e.rank() != ideal.rank() + monos.len() || span.rank() != before + monos.len() {
            ok = false;
            detail = format!("dependence in degree {m}");
        }
    }
    Ok(Clause::new("C[w_1..w_k] → H^n(C-), f ↦ [f vol], is injective", ok, detail))
}

/// Dimensions of the `±1` eigenspaces of `ι' ⊗ ι'` (reflection of the negative
/// slot) on `E₁` at `ℓ = n`, as `(minus, plus)`.
pub fn top_eigen_split(n: u16, k: u16, d_max: u32) -> Result<(Vec<usize>, Vec<usize>)> {
    let sig = Signature::so_n1(n, k)?;
    let split = |e: u8| -> Result<Vec<usize>> {
        let eng: Engine<Q> = Engine::new(sig, Twist { plus: None, minus: Some(e) })?;
        let (_, e1) = page_e0_e1(&eng, &PageOptions { d_max, r_max: 1, ells: Some((n as usize - 1, n as usize)) })?;
        Ok(e1.row(n as usize))
    };
    Ok((split(1)?, split(0)?))
}

/// Cohomology with the `det^{k/2}` twist: `O(n) × O(1)` acting with `det_{O(1)}^k`.
pub fn twisted_invariants_report(n: u16, k: u16, d_max: u32) -> Result<Report> {
    let sig = Signature::so_n1(n, k)?;
    let (nn, kk) = (n as usize, k as usize);
    let mut rep = Report::new("twisted cohomology", n, k, d_max);
    let twisted = rows_of(&Engine::new(sig, Twist::det_k(k))?, d_max)?;
    if k <= n {
        let plus = rows_of(&Engine::new(sig, Twist::c_plus())?, d_max)?;
        rep.clauses.push(Clause::new("twisted E1 at ℓ = k equals E1(C+)", twisted[kk] == plus[kk], format!("{:?}", twisted[kk])));
        rep.clauses.push(Clause::new("twisted E1 vanishes off ℓ = k", concentrated(&twisted, kk), ""));
        rep.tables.insert("E1(C+)".into(), plus);
    } else {
        rep.clauses.push(Clause::new("twisted E1 vanishes below ℓ = n", twisted[..nn].iter().all(|r| r.iter().all(|&x| x == 0)), ""));
        let eng: Engine<Q> = Engine::new(sig, Twist::det_k(k))?;
        let det_plus = minor_f(&(1..=n).collect::<Vec<_>>(), &(1..=n).collect::<Vec<_>>(), k, n)?;
        let extra: Vec<VarIndex> = (n + 1..=k).map(|i| sig.var(n + 1, i)).collect();
        let mut ok = true;
        let mut seen = 0;
        for a in 0..=d_max.saturating_sub(n as u32) {
            let invariant_parity = (a as usize + kk + nn) % 2 == 0;
            for mono in crate::ring::graded_piece(a, &extra) {
                let f = Polynomial::term(Q::one(), mono).mul(&det_plus);
                let c = Cochain::single(sig, ExtIndex::vol(n, 1), f);
                let inv = is_invariant(&c, Twist::det_k(k));
                if inv != invariant_parity {
                    ok = false;
                }
                if inv {
                    let m = a + n as u32;
                    let v = eng.from_cochain(&c);
                    let mut span = Echelon::new();
                    if m >= 2 {
                        for (_, imgs) in eng.images(crate::cochain::Op::DPlus, nn - 1, m - 2).iter() {
                            for x in imgs {
                                span.insert(x.clone());
                            }
                        }
                    }
                    ok &= !v.is_zero() && !span.contains(&v);
                    seen += 1;
                }
            }
        }
        rep.clauses.push(Clause::new(
            "f · det₊ · vol is invariant iff deg f + k + n is even, and then nonzero in E1",
            ok && seen > 0,
            format!("{seen} classes checked"),
        ));
    }
    rep.tables.insert("twisted E1".into(), twisted);
    Ok(rep)
}

#[cfg(test)]
mod tests;
