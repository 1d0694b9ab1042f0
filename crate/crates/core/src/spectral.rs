//! The spectral sequence of the polynomial-degree filtration.
//!
//! A cochain of form degree `ℓ` and polynomial degree `m` sits in filtration
//! `pp = 2ℓ - m`. `d₊` preserves `pp` and is the differential of `E₀`; `d₋`
//! raises it by 4. Pages are computed as `E_r = lead(Z_r) / lead(B_r)`, where
//! `lead` projects onto the top polynomial degree `m`:
//!
//! * `Z_r`: `x = Σ x_{m'}`, `m - r < m' ≤ m`, with `(dx)_D = 0` for `D > m + 2 - r`;
//! * `B_r`: `dy` for `y = Σ y_{m'}` of form degree `ℓ - 1`, `m - 2 ≤ m' ≤ m + r - 3`,
//!   with `(dy)_D = 0` for `m < D ≤ m + r - 1`.
//!
//! Blocks are only built through the window `D_max`. When `B_r` would need
//! `y` beyond it, `y` is truncated and the entry is marked as an upper bound.

use crate::cochain::{Cochain, Elem, Engine, GradedBlock, KappaElement, Op, Signature, Twist};
use crate::error::{Error, Result};
use crate::exterior::ExtIndex;
use crate::koszul::KoszulSpec;
use crate::linalg::{Echelon, SVec, TrackedEchelon};
use crate::ring::Monomial;
use crate::scalar::{Field, FromQ, Q};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Regraded position `(p″, q″)` of a bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Bidegree {
    pub pp: i64,
    pub qq: i64,
}

pub fn regrade(ell: usize, m: u32) -> Bidegree {
    Bidegree { pp: 2 * ell as i64 - m as i64, qq: m as i64 - ell as i64 }
}

/// Inverse of [`regrade`]: `(ℓ, m)`, or None outside the first quadrant.
pub fn ungrade(b: Bidegree) -> Option<(usize, u32)> {
    let ell = b.pp + b.qq;
    let m = b.pp + 2 * b.qq;
    (ell >= 0 && m >= 0).then_some((ell as usize, m as u32))
}

/// Page after which the differentials leaving `pp` vanish.
pub fn stable_after(sig: &Signature, pp: i64) -> i64 {
    2 * sig.top() as i64 - pp + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageEntry {
    pub pp: i64,
    pub qq: i64,
    pub ell: usize,
    pub m: u32,
    pub dim: usize,
    /// Incoming differentials were truncated at the window, so `dim` may be too large.
    pub upper_bound: bool,
    /// `r` exceeds the stabilization bound at this bidegree.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageTable {
    pub r: u32,
    pub entries: Vec<PageEntry>,
    pub window: u32,
    pub flags: Vec<String>,
}

impl PageTable {
    pub fn dim(&self, ell: usize, m: u32) -> Option<usize> {
        self.entries.iter().find(|e| e.ell == ell && e.m == m).map(|e| e.dim)
    }

    /// Dimensions at form degree `ℓ` for `m = 0..=window`.
    pub fn row(&self, ell: usize) -> Vec<usize> {
        let mut v = vec![0; self.window as usize + 1];
        for e in self.entries.iter().filter(|e| e.ell == ell) {
            v[e.m as usize] = e.dim;
        }
        v
    }

    pub fn ells(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.entries.iter().map(|e| e.ell).collect();
        v.dedup();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageOptions {
    pub d_max: u32,
    pub r_max: u32,
    /// Inclusive range of form degrees; all of `0..=pq` when None.
    pub ells: Option<(usize, usize)>,
}

impl PageOptions {
    pub fn new(d_max: u32) -> PageOptions {
        PageOptions { d_max, r_max: 1, ells: None }
    }

    fn ell_range(&self, sig: &Signature) -> Result<(usize, usize)> {
        let (lo, hi) = self.ells.unwrap_or((0, sig.top()));
        if lo > hi || hi > sig.top() {
            return Err(Error::BadRange(format!("form degrees {lo}..={hi} outside 0..={}", sig.top())));
        }
        Ok((lo, hi))
    }
}

/// Page computations over one engine.
pub struct Pages<'a, F: Field + FromQ> {
    eng: &'a Engine<F>,
    d_max: u32,
}

fn part<F: Field + FromQ>(map: &BTreeMap<Vec<i8>, Vec<SVec<Elem, F>>>, d: &[i8]) -> Vec<SVec<Elem, F>> {
    map.get(d).cloned().unwrap_or_default()
}

impl<'a, F: Field + FromQ> Pages<'a, F> {
    /// Builds every block and differential image the window needs, serially
    /// per block so that parallel page work only reads finished caches.
    pub fn new(eng: &'a Engine<F>, d_max: u32, ells: (usize, usize)) -> Pages<'a, F> {
        let lo = ells.0.saturating_sub(1);
        for ell in lo..=ells.1 {
            for m in 0..=d_max {
                eng.block(ell, m);
                eng.images(Op::DPlus, ell, m);
                eng.images(Op::DMinus, ell, m);
            }
        }
        Pages { eng, d_max }
    }

    fn block(&self, ell: usize, m: i64, d: &[i8]) -> Vec<SVec<Elem, F>> {
        if m < 0 || m > self.d_max as i64 {
            return vec![];
        }
        part(&self.eng.block(ell, m as u32), d)
    }

    fn img(&self, op: Op, ell: usize, m: i64, d: &[i8]) -> Vec<SVec<Elem, F>> {
        if m < 0 || m > self.d_max as i64 {
            return vec![];
        }
        part(&self.eng.images(op, ell, m as u32), d)
    }

    pub fn e0(&self, ell: usize, m: u32) -> usize {
        self.eng.block_dim(ell, m)
    }

    fn lead_z_rank(&self, ell: usize, m: u32, r: u32, d: &[i8]) -> usize {
        let m = m as i64;
        let r = r as i64;
        let lo_d = m + 2 - r;
        let n_m = self.block(ell, m, d).len();
        if n_m == 0 {
            return 0;
        }
        let mut t = TrackedEchelon::new();
        let mut mp = m;
        while mp > m - r && mp >= 0 {
            let plus = self.img(Op::DPlus, ell, mp, d);
            let minus = self.img(Op::DMinus, ell, mp, d);
            for j in 0..self.block(ell, mp, d).len() {
                let mut v = SVec::new();
                if mp + 2 > lo_d {
                    v = v.add(&plus[j]);
                }
                if mp - 2 > lo_d {
                    v = v.add(&minus[j]);
                }
                t.push(v);
            }
            mp -= 2;
        }
        let mut e: Echelon<usize, F> = Echelon::new();
        for rel in t.kernel() {
            e.insert(rel.filter(|&i| i < n_m));
        }
        e.rank()
    }

    /// Rank of `lead(B_r)` and whether the window truncated it.
    fn lead_b_rank(&self, ell: usize, m: u32, r: u32, d: &[i8]) -> (usize, bool) {
        if ell == 0 {
            return (0, false);
        }
        let (m, r) = (m as i64, r as i64);
        let hi = m + r - 3;
        let truncated = hi > self.d_max as i64;
        let hi = hi.min(self.d_max as i64);
        let mut t = TrackedEchelon::new();
        let mut leads: Vec<SVec<Elem, F>> = Vec::new();
        let mut mp = m - 2;
        while mp <= hi {
            if mp >= 0 {
                let plus = self.img(Op::DPlus, ell - 1, mp, d);
                let minus = self.img(Op::DMinus, ell - 1, mp, d);
                for j in 0..self.block(ell - 1, mp, d).len() {
                    let mut v = SVec::new();
                    let mut lead = SVec::new();
                    for (dd, img) in [(mp + 2, &plus[j]), (mp - 2, &minus[j])] {
                        if dd > m && dd <= m + r - 1 {
                            v = v.add(img);
                        } else if dd == m {
                            lead = lead.add(img);
                        }
                    }
                    t.push(v);
                    leads.push(lead);
                }
            }
            mp += 2;
        }
        let mut e = Echelon::new();
        for rel in t.kernel() {
            let mut v = SVec::new();
            for (j, c) in rel.entries() {
                v = v.add_scaled(c, &leads[*j]);
            }
            e.insert(v);
        }
        (e.rank(), truncated)
    }

    /// `dim E_r` at `(ℓ, m)`, with the upper-bound flag.
    pub fn er(&self, ell: usize, m: u32, r: u32) -> (usize, bool) {
        if r == 0 {
            return (self.e0(ell, m), false);
        }
        let blk = self.eng.block(ell, m);
        let mut dim = 0;
        let mut ub = false;
        for d in blk.keys() {
            let z = self.lead_z_rank(ell, m, r, d);
            let (b, t) = self.lead_b_rank(ell, m, r, d);
            dim += z - b;
            ub |= t && b < z;
        }
        (dim, ub)
    }

    /// `dim E₁ = dim V - rank d₊|V(ℓ,m) - rank d₊|V(ℓ-1,m-2)`, computed directly.
    pub fn e1(&self, ell: usize, m: u32) -> usize {
        let blk = self.eng.block(ell, m);
        let mut dim = 0;
        for (d, vs) in blk.iter() {
            let out = crate::linalg::rank(self.img(Op::DPlus, ell, m as i64, d));
            let inc = if ell == 0 { 0 } else { crate::linalg::rank(self.img(Op::DPlus, ell - 1, m as i64 - 2, d)) };
            dim += vs.len() - out - inc;
        }
        dim
    }

    fn table(&self, sig: &Signature, r: u32, ells: (usize, usize)) -> PageTable {
        let cells: Vec<(usize, u32)> = (ells.0..=ells.1).flat_map(|l| (0..=self.d_max).map(move |m| (l, m))).collect();
        let entries: Vec<PageEntry> = cells
            .par_iter()
            .map(|&(ell, m)| {
                let (dim, upper_bound) = if r == 1 { (self.e1(ell, m), false) } else { self.er(ell, m, r) };
                let b = regrade(ell, m);
                PageEntry {
                    pp: b.pp,
                    qq: b.qq,
                    ell,
                    m,
                    dim,
                    upper_bound,
                    stable: r as i64 > stable_after(sig, b.pp),
                }
            })
            .collect();
        let mut flags = vec![format!("through polynomial degree {}", self.d_max)];
        if entries.iter().any(|e| e.upper_bound) {
            flags.push("WindowTooSmall: entries marked upper_bound miss incoming differentials from beyond the window".into());
        }
        if F::probabilistic() {
            flags.push("probabilistic: ranks computed modulo a prime".into());
        }
        PageTable { r, entries, window: self.d_max, flags }
    }
}

/// `E₀` and `E₁` through the window.
pub fn page_e0_e1<F: Field + FromQ>(eng: &Engine<F>, opts: &PageOptions) -> Result<(PageTable, PageTable)> {
    let sig = eng.sig();
    let ells = opts.ell_range(&sig)?;
    let pages = Pages::new(eng, opts.d_max, ells);
    Ok((pages.table(&sig, 0, ells), pages.table(&sig, 1, ells)))
}

/// Pages `E_0 .. E_{r_max}` through the window.
pub fn page_er<F: Field + FromQ>(eng: &Engine<F>, opts: &PageOptions) -> Result<Vec<PageTable>> {
    if opts.r_max < 1 {
        return Err(Error::BadRange("r_max must be at least 1".into()));
    }
    let sig = eng.sig();
    let ells = opts.ell_range(&sig)?;
    let pages = Pages::new(eng, opts.d_max, ells);
    Ok((0..=opts.r_max).map(|r| pages.table(&sig, r, ells)).collect())
}

/// `E₀` and `E₁` for a signature and twist over the rationals.
pub fn page_e0_e1_for(sig: Signature, twist: Twist, opts: &PageOptions) -> Result<(PageTable, PageTable)> {
    let eng: Engine<Q> = Engine::new(sig, twist)?;
    page_e0_e1(&eng, opts)
}

/// Keys for ambient vectors: a tag separating stacked maps, then the basis element.
type AmbKey = (usize, ExtIndex, Monomial);

fn stack(tag: usize, c: &Cochain, out: &mut Vec<(AmbKey, Q)>) {
    for (i, f) in c.terms() {
        for (mo, x) in f.terms() {
            out.push(((tag, i.clone(), mo.clone()), x.clone()));
        }
    }
}

fn invariance_conditions(sig: &Signature, twist: Twist, c: &Cochain, out: &mut Vec<(AmbKey, Q)>) {
    for (t, x) in KappaElement::basis(sig).into_iter().enumerate() {
        stack(1 + t, &c.kappa_act(x), out);
    }
    let chi = |e: u8| if e % 2 == 1 { Q::from_i64(-1) } else { Q::one() };
    if let Some(e) = twist.plus {
        stack(1000, &c.reflect(1).sub(&c.scale(&chi(e))), out);
    }
    if let Some(e) = twist.minus {
        stack(1001, &c.reflect(sig.p + 1).sub(&c.scale(&chi(e))), out);
    }
}

fn koszul_differential(spec: &KoszulSpec, sig: &Signature, c: &Cochain) -> Cochain {
    let input: Vec<(u64, crate::ring::Polynomial)> =
        c.terms().map(|(i, f)| (i.to_mask(sig.p, sig.q) as u64, f.clone())).collect();
    let mut out = Cochain::zero(*sig);
    for (mask, f) in spec.differential(&input) {
        out.add_term(ExtIndex::from_mask(mask as u32, sig.p, sig.q), &f);
    }
    out
}

/// `dim E₁(ℓ, m)` as the invariants of the cohomology of the ambient Koszul
/// complex of the `q[alpha,mu]`, with invariance imposed by the Lie algebra
/// and reflections on explicit cochains. None when the ambient blocks exceed `limit`.
pub fn e1_by_koszul(sig: Signature, twist: Twist, ell: usize, m: u32, limit: usize) -> Option<usize> {
    let here = GradedBlock::ambient(&sig, ell, m);
    let below = if ell > 0 && m >= 2 { Some(GradedBlock::ambient(&sig, ell - 1, m - 2)) } else { None };
    if here.dim() > limit || below.as_ref().is_some_and(|b| b.dim() > limit) {
        return None;
    }
    let spec = KoszulSpec::q_sequence(&sig);
    let single = |(i, mo): &(ExtIndex, Monomial)| {
        Cochain::single(sig, i.clone(), crate::ring::Polynomial::term(Q::one(), mo.clone()))
    };
    // invariant cocycles
    let cols: Vec<SVec<AmbKey, Q>> = here
        .basis
        .par_iter()
        .map(|b| {
            let c = single(b);
            let mut e = Vec::new();
            stack(0, &koszul_differential(&spec, &sig, &c), &mut e);
            invariance_conditions(&sig, twist, &c, &mut e);
            SVec::from_entries(e)
        })
        .collect();
    let cocycles = crate::linalg::nullspace(cols).len();
    // invariant coboundaries: image, then the invariant part of its span
    let Some(below) = below else { return Some(cocycles) };
    let mut im: Echelon<AmbKey, Q> = Echelon::new();
    let imgs: Vec<SVec<AmbKey, Q>> = below
        .basis
        .par_iter()
        .map(|b| {
            let mut e = Vec::new();
            stack(0, &koszul_differential(&spec, &sig, &single(b)), &mut e);
            SVec::from_entries(e)
        })
        .collect();
    for v in imgs {
        im.insert(v);
    }
    let rows: Vec<SVec<AmbKey, Q>> = im.rows().cloned().collect();
    let cond: Vec<SVec<AmbKey, Q>> = rows
        .par_iter()
        .map(|row| {
            let mut c = Cochain::zero(sig);
            for ((_, i, mo), x) in row.entries() {
                c.add_term(i.clone(), &crate::ring::Polynomial::term(x.clone(), mo.clone()));
            }
            let mut e = Vec::new();
            invariance_conditions(&sig, twist, &c, &mut e);
            SVec::from_entries(e)
        })
        .collect();
    let moved = crate::linalg::rank(cond);
    Some(cocycles - (rows.len() - moved))
}

/// What the pages say about `H^ℓ` of the full complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Zero,
    IsomorphicToE1 { dims: Vec<usize> },
    LowerBound { dim: usize, degree: u32 },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deduction {
    pub ell: usize,
    pub verdict: Verdict,
    pub e1: Vec<usize>,
    pub notes: Vec<String>,
}

/// Outcome of testing the special cocycle `φ_{kq}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCheck {
    pub degree: usize,
    pub closed: bool,
    pub exact_within_window: bool,
    pub nonzero_in_e1: bool,
}

impl PhiCheck {
    pub fn survives(&self) -> bool {
        self.closed && !self.exact_within_window && self.nonzero_in_e1
    }
}

/// Tests `φ_{kq}`: closed, not `d` of any invariant cochain of polynomial
/// degree at most `d_max`, and nonzero in `E₁`.
pub fn check_phi<F: Field + FromQ>(eng: &Engine<F>, d_max: u32) -> Result<PhiCheck> {
    let sig = eng.sig();
    let kq = (sig.k * sig.q) as usize;
    if sig.p < sig.k * sig.q {
        return Err(Error::BadHypothesis(format!("φ_kq vanishes unless p ≥ kq ({sig})")));
    }
    if kq as u32 > d_max {
        return Err(Error::WindowTooSmall(format!("φ_kq has polynomial degree {kq} > D_max = {d_max}")));
    }
    let phi = Cochain::phi_kq(sig);
    let closed = phi.d_full().is_zero();
    let v = eng.from_cochain(&phi);
    let mut span = Echelon::new();
    let mut m = kq as u32 % 2;
    while m <= d_max {
        for (_, imgs) in eng.images(Op::DFull, kq - 1, m).iter() {
            for x in imgs {
                span.insert(x.clone());
            }
        }
        m += 2;
    }
    let exact = span.contains(&v);
    let mut e1 = Echelon::new();
    if kq >= 2 {
        for (_, imgs) in eng.images(Op::DPlus, kq - 1, kq as u32 - 2).iter() {
            for x in imgs {
                e1.insert(x.clone());
            }
        }
    }
    let dplus_closed = eng.apply(Op::DPlus, &v).is_zero();
    Ok(PhiCheck { degree: kq, closed, exact_within_window: exact, nonzero_in_e1: dplus_closed && !e1.contains(&v) })
}

/// Applies the vanishing rules to an `E₁` table. `phi` carries the result of
/// [`check_phi`] when the signature has `p ≥ kq`.
pub fn deduce_h(sig: &Signature, e1: &PageTable, phi: Option<&PhiCheck>) -> Vec<Deduction> {
    let ells = e1.ells();
    let vanishes = |l: i64| -> Option<bool> {
        if l < 0 || l > sig.top() as i64 {
            return Some(true);
        }
        ells.contains(&(l as usize)).then(|| e1.row(l as usize).iter().all(|&d| d == 0))
    };
    let window = format!("through polynomial degree {}", e1.window);
    ells.iter()
        .map(|&ell| {
            let row = e1.row(ell);
            let mut notes = vec![window.clone()];
            let l = ell as i64;
            let verdict = if vanishes(l) == Some(true) {
                Verdict::Zero
            } else if vanishes(l - 1) == Some(true) && vanishes(l + 1) == Some(true) {
                Verdict::IsomorphicToE1 { dims: row.clone() }
            } else if let Some(ph) = phi.filter(|p| p.degree == ell) {
                if ph.survives() {
                    Verdict::LowerBound { dim: 1, degree: ell as u32 }
                } else {
                    notes.push("φ_kq did not survive the window checks".into());
                    Verdict::Unknown
                }
            } else {
                if vanishes(l - 1).is_none() || vanishes(l + 1).is_none() {
                    notes.push("neighbouring form degree not computed".into());
                }
                Verdict::Unknown
            };
            Deduction { ell, verdict, e1: row, notes }
        })
        .collect()
}

/// `E₁` plus deductions for a signature, twist and window.
pub fn deduce_for<F: Field + FromQ>(eng: &Engine<F>, opts: &PageOptions) -> Result<(PageTable, Vec<Deduction>)> {
    let (_, e1) = page_e0_e1(eng, opts)?;
    let sig = eng.sig();
    let phi = if sig.p >= sig.k * sig.q && eng.twist == Twist::connected() {
        match check_phi(eng, opts.d_max) {
            Ok(p) => Some(p),
            Err(Error::WindowTooSmall(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok((e1.clone(), deduce_h(&sig, &e1, phi.as_ref())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(p: u16, q: u16, k: u16) -> Signature {
        Signature::new(p, q, k).unwrap()
    }

    fn eng(p: u16, q: u16, k: u16) -> Engine<Q> {
        Engine::new(sig(p, q, k), Twist::connected()).unwrap()
    }

    #[test]
    fn regrade_examples() {
        assert_eq!(regrade(0, 0), Bidegree { pp: 0, qq: 0 });
        assert_eq!(regrade(1, 2), Bidegree { pp: 0, qq: 1 });
        assert_eq!(regrade(2, 0), Bidegree { pp: 4, qq: -2 });
    }

    proptest! {
        #[test]
        fn regrade_round_trip(ell in 0usize..40, m in 0u32..60) {
            prop_assert_eq!(ungrade(regrade(ell, m)), Some((ell, m)));
        }
    }

    #[test]
    fn smallest_signature() {
        let e = eng(1, 1, 1);
        let (e0, e1) = page_e0_e1(&e, &PageOptions::new(8)).unwrap();
        assert_eq!(e1.row(0), vec![0; 9]);
        assert_eq!(e1.row(1), vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(e0.row(1), (0..=8).map(|m| m + 1).collect::<Vec<_>>());
    }

    #[test]
    fn smallest_signature_stabilizes_at_one() {
        let e = eng(1, 1, 1);
        let opts = PageOptions { d_max: 6, r_max: 8, ells: None };
        let pages = page_er(&e, &opts).unwrap();
        for t in &pages[2..] {
            assert_eq!(t.row(0), pages[1].row(0));
            assert_eq!(t.row(1), pages[1].row(1));
        }
    }

    #[test]
    fn general_page_formula_agrees_with_e1() {
        let e = eng(2, 1, 1);
        let p = Pages::new(&e, 6, (0, 2));
        for ell in 0..=2 {
            for m in 0..=6 {
                assert_eq!(p.er(ell, m, 1).0, p.e1(ell, m));
            }
        }
    }

    #[test]
    fn pages_shrink_with_r() {
        for (p, q, k) in [(2, 1, 1), (2, 2, 1), (3, 1, 1)] {
            let e = eng(p, q, k);
            let pages = page_er(&e, &PageOptions { d_max: 6, r_max: 9, ells: None }).unwrap();
            for w in pages.windows(2) {
                for (a, b) in w[0].entries.iter().zip(&w[1].entries) {
                    assert!(b.dim <= a.dim, "{p},{q},{k} r={} ell={} m={}", w[1].r, b.ell, b.m);
                }
            }
        }
    }

    #[test]
    fn top_degree_never_maps_out() {
        let e = eng(2, 1, 1);
        let p = Pages::new(&e, 6, (0, 2));
        let d: Vec<i8> = vec![0];
        for m in 0..=6 {
            for r in 1..8 {
                assert_eq!(p.lead_z_rank(2, m, r, &d), p.block(2, m as i64, &d).len());
            }
        }
    }

    #[test]
    fn outgoing_part_is_stable_past_bound() {
        let s = sig(2, 1, 1);
        let e = eng(2, 1, 1);
        let p = Pages::new(&e, 8, (0, 2));
        for ell in 0..=2 {
            for m in 0..=6u32 {
                let r0 = stable_after(&s, regrade(ell, m).pp).max(1) as u32 + 1;
                for d in e.block(ell, m).keys() {
                    let z = p.lead_z_rank(ell, m, r0, d);
                    for r in r0..r0 + 4 {
                        assert_eq!(p.lead_z_rank(ell, m, r, d), z);
                    }
                }
            }
        }
    }

    #[test]
    fn route_b_agrees() {
        for (s, t) in [
            (sig(1, 1, 1), Twist::connected()),
            (sig(2, 1, 1), Twist::connected()),
            (sig(2, 2, 1), Twist::connected()),
            (sig(2, 1, 2), Twist::connected()),
            (sig(3, 1, 1), Twist::c_minus()),
            (sig(2, 1, 1), Twist::det_k(1)),
        ] {
            let e: Engine<Q> = Engine::new(s, t).unwrap();
            let p = Pages::new(&e, 4, (0, s.top()));
            for ell in 0..=s.top() {
                for m in 0..=4 {
                    assert_eq!(Some(p.e1(ell, m)), e1_by_koszul(s, t, ell, m, 5000), "{s} {t:?} {ell} {m}");
                }
            }
        }
    }

    #[test]
    fn large_k_vanishes_below_top() {
        let e = eng(1, 1, 2);
        let (_, e1) = page_e0_e1(&e, &PageOptions::new(6)).unwrap();
        assert_eq!(e1.row(0), vec![0; 7]);
        let d = deduce_h(&sig(1, 1, 2), &e1, None);
        assert_eq!(d[0].verdict, Verdict::Zero);
        assert!(matches!(d[1].verdict, Verdict::IsomorphicToE1 { .. }));
    }

    #[test]
    fn phi_survives_when_p_large() {
        let e = eng(2, 1, 1);
        let ph = check_phi(&e, 6).unwrap();
        assert!(ph.survives(), "{ph:?}");
        assert!(matches!(check_phi(&eng(1, 1, 2), 6), Err(Error::BadHypothesis(_))));
        assert!(matches!(check_phi(&e, 0), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn phi_is_invariant() {
        let s = sig(3, 1, 2);
        let phi = Cochain::phi_kq(s);
        assert_eq!(phi.degree(), Some(2));
        for x in KappaElement::basis(&s) {
            assert!(phi.kappa_act(x).is_zero());
        }
    }

    #[test]
    fn json_shape() {
        let (_, e1) = page_e0_e1(&eng(1, 1, 1), &PageOptions::new(2)).unwrap();
        let v = serde_json::to_value(&e1).unwrap();
        assert_eq!(v["r"], 1);
        assert_eq!(v["window"], 2);
        assert!(v["entries"][0].get("pp").is_some() && v["entries"][0].get("dim").is_some());
    }
}
