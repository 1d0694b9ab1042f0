//! Cochains `Λ^ℓ p* ⊗ P_k` for so(p,q): the differential and its graded
//! pieces, the action of the compact subalgebra, and invariant subspaces.

mod engine;
mod orbit;

pub use engine::{BlockKey, Engine, Op, Piece};
pub use orbit::{Elem, Layout, MAX_GENS, MAX_VARS};

use crate::error::{Error, Result};
use crate::exterior::{canonicalize, wedge, ExtGen, ExtIndex};
use crate::ring::{apply_diff_op, graded_piece, DiffOp, Monomial, Polynomial, VarIndex};
use crate::scalar::{Field, Q};
use std::collections::BTreeMap;
use std::fmt;

/// Signature `(p, q)` of the orthogonal space and the number `k` of copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub p: u16,
    pub q: u16,
    pub k: u16,
}

impl Signature {
    pub fn new(p: u16, q: u16, k: u16) -> Result<Signature> {
        if p == 0 || q == 0 || k == 0 {
            return Err(Error::BadRange(format!("signature ({p},{q}) with k={k}: all must be positive")));
        }
        Ok(Signature { p, q, k })
    }

    /// The SO(n,1) family.
    pub fn so_n1(n: u16, k: u16) -> Result<Signature> {
        Signature::new(n, 1, k)
    }

    /// Dimension of the noncompact part, the top cochain degree.
    pub fn top(&self) -> usize {
        (self.p * self.q) as usize
    }

    pub fn var(&self, slot: u16, column: u16) -> VarIndex {
        debug_assert!(slot >= 1 && slot <= self.p + self.q && column >= 1 && column <= self.k);
        VarIndex::new(slot, column)
    }

    pub fn vars(&self) -> Vec<VarIndex> {
        let mut v = Vec::new();
        for s in 1..=self.p + self.q {
            for c in 1..=self.k {
                v.push(VarIndex::new(s, c));
            }
        }
        v
    }

    pub fn gens(&self) -> Vec<ExtGen> {
        ExtIndex::all_gens(self.p, self.q)
    }

    /// Metric sign of the basis vector `e_slot`.
    pub fn metric(&self, slot: u16) -> i64 {
        if slot <= self.p {
            1
        } else {
            -1
        }
    }

    /// `q_{alpha mu} = sum_i z_{alpha i} z_{mu i}`.
    pub fn q_poly(&self, alpha: u16, mu: u16) -> Polynomial {
        let mut f = Polynomial::zero();
        for i in 1..=self.k {
            f = f.add(&Polynomial::var(self.var(alpha, i)).mul(&Polynomial::var(self.var(mu, i))));
        }
        f
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "so({},{}) k={}", self.p, self.q, self.k)
    }
}

/// Sign characters for the disconnected part of the compact group.
///
/// `None` restricts that factor to its identity component; `Some(e)` takes the
/// full orthogonal group acting through `det^e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Twist {
    pub plus: Option<u8>,
    pub minus: Option<u8>,
}

impl Twist {
    /// Invariants of `SO(p) × SO(q)`.
    pub fn connected() -> Twist {
        Twist::default()
    }

    /// The `+1` eigenspace of the reflection `ι`: `O(p)`-invariants.
    pub fn c_plus() -> Twist {
        Twist { plus: Some(0), minus: None }
    }

    /// The `-1` eigenspace of `ι`: `O(p)` acting through `det`.
    pub fn c_minus() -> Twist {
        Twist { plus: Some(1), minus: None }
    }

    /// Full `O(p) × O(q)` with the character `det_{O(q)}^k`.
    pub fn det_k(k: u16) -> Twist {
        Twist { plus: Some(0), minus: Some((k % 2) as u8) }
    }

    pub fn label(&self) -> String {
        let f = |x: Option<u8>| match x {
            None => "SO".to_string(),
            Some(0) => "O".to_string(),
            Some(e) => format!("O,det^{e}"),
        };
        format!("{}x{}", f(self.plus), f(self.minus))
    }
}

/// Basis element `e_x` of the compact subalgebra, acting as `e_x ∧ e_y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaElement {
    /// `e_alpha ∧ e_beta`, `alpha < beta <= p`
    CompactPP(u16, u16),
    /// `e_mu ∧ e_nu`, `p < mu < nu <= p+q`
    CompactMM(u16, u16),
}

impl KappaElement {
    pub fn basis(sig: &Signature) -> Vec<KappaElement> {
        let mut v = Vec::new();
        for a in 1..=sig.p {
            for b in a + 1..=sig.p {
                v.push(KappaElement::CompactPP(a, b));
            }
        }
        for m in sig.p + 1..=sig.p + sig.q {
            for n in m + 1..=sig.p + sig.q {
                v.push(KappaElement::CompactMM(m, n));
            }
        }
        v
    }

    fn slots(&self) -> (u16, u16) {
        match *self {
            KappaElement::CompactPP(a, b) | KappaElement::CompactMM(a, b) => (a, b),
        }
    }
}

/// Element of `Λ^2 V` in the basis `e_a ∧ e_b`, `a < b`.
pub type Bivector = BTreeMap<(u16, u16), i64>;

fn bivector_add(x: &mut Bivector, a: u16, b: u16, c: i64) {
    if a == b || c == 0 {
        return;
    }
    let (key, c) = if a < b { ((a, b), c) } else { ((b, a), -c) };
    let e = x.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        x.remove(&key);
    }
}

/// `phi(e_a ∧ e_b)` applied to `e_c`: `(e_a, e_c) e_b - (e_b, e_c) e_a`.
fn phi_on_vector(sig: &Signature, a: u16, b: u16, c: u16) -> Vec<(u16, i64)> {
    let mut out = Vec::new();
    if a == c {
        out.push((b, sig.metric(a)));
    }
    if b == c {
        out.push((a, -sig.metric(b)));
    }
    out
}

/// The Lie bracket of `so(p,q)` transported to `Λ^2 V` through `phi`.
pub fn bracket(sig: &Signature, x: (u16, u16), y: (u16, u16)) -> Bivector {
    let mut out = Bivector::new();
    let (c, d) = y;
    for (u, s) in phi_on_vector(sig, x.0, x.1, c) {
        bivector_add(&mut out, u, d, s);
    }
    for (u, s) in phi_on_vector(sig, x.0, x.1, d) {
        bivector_add(&mut out, c, u, s);
    }
    out
}

/// Coadjoint action of `x` on the generator `w[alpha, mu]`, derived from the
/// bracket: `(x.w)(e) = -w([x, e])`, with `e_{alpha mu} = -e_alpha ∧ e_mu`.
pub fn coadjoint(sig: &Signature, x: KappaElement, g: ExtGen) -> Vec<(ExtGen, i64)> {
    let mut out = Vec::new();
    for h in sig.gens() {
        let br = bracket(sig, x.slots(), (h.alpha, h.mu));
        // e_{alpha mu} = -e_alpha ∧ e_mu on both sides, so the signs cancel
        let coeff = br.get(&(g.alpha, g.mu)).copied().unwrap_or(0);
        if coeff != 0 {
            out.push((h, -coeff));
        }
    }
    out
}

/// A cochain: finite sum of `w_I ⊗ f_I` with all `I` of the same length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub sig: Signature,
    terms: BTreeMap<ExtIndex, Polynomial>,
}

impl Cochain {
    pub fn zero(sig: Signature) -> Cochain {
        Cochain { sig, terms: BTreeMap::new() }
    }

    pub fn single(sig: Signature, i: ExtIndex, f: Polynomial) -> Cochain {
        let mut c = Cochain::zero(sig);
        c.add_term(i, &f);
        c
    }

    pub fn add_term(&mut self, i: ExtIndex, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        debug_assert!(self.terms.keys().next().map_or(true, |k| k.len() == i.len()), "mixed cochain degrees");
        let e = self.terms.entry(i.clone()).or_default();
        *e = e.add(f);
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Cochain degree, or None for the zero cochain.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|k| k.len())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: &ExtIndex) -> Polynomial {
        self.terms.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut r = self.clone();
        for (i, f) in &o.terms {
            r.add_term(i.clone(), f);
        }
        r
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        self.add(&o.scale(&Q::from_i64(-1)))
    }

    pub fn scale(&self, c: &Q) -> Cochain {
        let mut r = Cochain::zero(self.sig);
        for (i, f) in &self.terms {
            r.add_term(i.clone(), &f.scale(c));
        }
        r
    }

    /// Multiplies every coefficient by the polynomial `g`.
    pub fn mul_poly(&self, g: &Polynomial) -> Cochain {
        let mut r = Cochain::zero(self.sig);
        for (i, f) in &self.terms {
            r.add_term(i.clone(), &f.mul(g));
        }
        r
    }

    /// Left multiplication by `w_J`.
    pub fn wedge_left(&self, j: &ExtIndex) -> Cochain {
        let mut r = Cochain::zero(self.sig);
        for (i, f) in &self.terms {
            if let Some((ix, s)) = wedge(j, i) {
                r.add_term(ix, &f.scale(&Q::from_i64(s as i64)));
            }
        }
        r
    }

    /// Wedge product with polynomial coefficients multiplied.
    pub fn wedge(&self, o: &Cochain) -> Cochain {
        let mut r = Cochain::zero(self.sig);
        for (i, f) in &self.terms {
            for (j, g) in &o.terms {
                if let Some((ix, s)) = wedge(i, j) {
                    r.add_term(ix, &f.mul(g).scale(&Q::from_i64(s as i64)));
                }
            }
        }
        r
    }

    fn apply_each(&self, mut f: impl FnMut(&ExtIndex, &Polynomial, &mut Cochain)) -> Cochain {
        let mut r = Cochain::zero(self.sig);
        for (i, p) in &self.terms {
            f(i, p, &mut r);
        }
        r
    }

    fn d_part(&self, second: bool, mult: Option<i64>) -> Cochain {
        let sig = self.sig;
        self.apply_each(|i, f, r| {
            for g in sig.gens() {
                let Some((ix, s)) = wedge(&ExtIndex::single(g), i) else { continue };
                let mut acc = Polynomial::zero();
                for c in 1..=sig.k {
                    let (u, v) = (sig.var(g.alpha, c), sig.var(g.mu, c));
                    if second {
                        acc = acc.add(&apply_diff_op(f, DiffOp::SecondPartial(u, v)));
                    }
                    if let Some(m) = mult {
                        acc = acc.add(&apply_diff_op(f, DiffOp::Mult(u, v)).scale(&Q::from_i64(m)));
                    }
                }
                r.add_term(ix, &acc.scale(&Q::from_i64(s as i64)));
            }
        })
    }

    /// The full differential: `sum A(w_{alpha mu}) ⊗ (d^2/dz_{alpha i}dz_{mu i} - z_{alpha i} z_{mu i})`.
    pub fn d_full(&self) -> Cochain {
        self.d_part(true, Some(-1))
    }

    /// The degree-raising part `-sum A(w) ⊗ z z`.
    pub fn d_plus2(&self) -> Cochain {
        self.d_part(false, Some(-1))
    }

    /// The degree-lowering part `sum A(w) ⊗ d^2`.
    pub fn d_minus2(&self) -> Cochain {
        self.d_part(true, None)
    }

    /// The associated graded differential `+sum A(w) ⊗ z z`.
    pub fn d_prime(&self) -> Cochain {
        self.d_part(false, Some(1))
    }

    /// Action of a compact basis element: coadjoint on forms, Fock on polynomials.
    pub fn kappa_act(&self, x: KappaElement) -> Cochain {
        let sig = self.sig;
        let poly_op = |f: &Polynomial| {
            let mut acc = Polynomial::zero();
            for c in 1..=sig.k {
                let op = match x {
                    KappaElement::CompactPP(a, b) => DiffOp::EulerPair(sig.var(b, c), sig.var(a, c)),
                    KappaElement::CompactMM(m, n) => DiffOp::EulerPair(sig.var(m, c), sig.var(n, c)),
                };
                acc = acc.add(&apply_diff_op(f, op));
            }
            acc
        };
        self.apply_each(|i, f, r| {
            r.add_term(i.clone(), &poly_op(f));
            for (s, g) in i.gens().iter().enumerate() {
                for (h, c) in coadjoint(&sig, x, *g) {
                    let mut seq = i.gens().to_vec();
                    seq[s] = h;
                    if let Some((ix, sg)) = canonicalize(&seq) {
                        r.add_term(ix, &f.scale(&Q::from_i64(c * sg as i64)));
                    }
                }
            }
        })
    }

    /// The reflection `e_slot ↦ -e_slot`, on variables and forms alike.
    pub fn reflect(&self, slot: u16) -> Cochain {
        let sig = self.sig;
        self.apply_each(|i, f, r| {
            let flips = i.gens().iter().filter(|g| g.alpha == slot || g.mu == slot).count();
            let mut g = Polynomial::zero();
            for (mo, x) in f.terms() {
                let e: u32 = (1..=sig.k).map(|c| mo.exponent(sig.var(slot, c))).sum();
                let s = if (e as usize + flips) % 2 == 0 { x.clone() } else { x.neg() };
                g.add_term(mo.clone(), &s);
            }
            r.add_term(i.clone(), &g);
        })
    }

    /// The special cocycle `φ_{kq}`: the wedge over columns `i` and negative
    /// slots `mu` of `Σ_alpha z[alpha,i] w[alpha,mu]`.
    pub fn phi_kq(sig: Signature) -> Cochain {
        let mut out = Cochain::single(sig, ExtIndex::empty(), Polynomial::one());
        for c in 1..=sig.k {
            for mu in sig.p + 1..=sig.p + sig.q {
                let mut f = Cochain::zero(sig);
                for a in 1..=sig.p {
                    f.add_term(ExtIndex::single(ExtGen::new(a, mu)), &Polynomial::var(sig.var(a, c)));
                }
                out = out.wedge(&f);
            }
        }
        out
    }

    /// Serialises as `(form, polynomial)` text pairs.
    pub fn to_text_pairs(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(i, f)| (i.to_text(), f.to_text())).collect()
    }

    pub fn from_text_pairs(sig: Signature, pairs: &[(String, String)]) -> std::result::Result<Cochain, String> {
        let mut c = Cochain::zero(sig);
        for (i, f) in pairs {
            c.add_term(ExtIndex::parse(i)?, &Polynomial::parse(f)?);
        }
        Ok(c)
    }

    /// Total polynomial degrees occurring.
    pub fn poly_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.values().flat_map(|f| f.terms().map(|(m, _)| m.degree())).collect();
        d.sort();
        d.dedup();
        d
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, p)| format!("({}) {}", p, i)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The bidegree piece `(ℓ, m)` of the full cochain space, before invariance.
#[derive(Clone, Debug)]
pub struct GradedBlock {
    pub ell: usize,
    pub m: u32,
    pub basis: Vec<(ExtIndex, Monomial)>,
}

impl GradedBlock {
    pub fn ambient(sig: &Signature, ell: usize, m: u32) -> GradedBlock {
        let monos = graded_piece(m, &sig.vars());
        let mut basis = Vec::new();
        for i in ExtIndex::all_of_degree(sig.p, sig.q, ell) {
            for mono in &monos {
                basis.push((i.clone(), mono.clone()));
            }
        }
        GradedBlock { ell, m, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Invariant cochains of bidegree `(ℓ, m)`, as explicit cochains.
pub fn invariant_basis(sig: Signature, ell: usize, m: u32, twist: Twist) -> Result<Vec<Cochain>> {
    let eng: Engine<Q> = Engine::new(sig, twist)?;
    Ok(eng
        .block(ell, m)
        .iter()
        .flat_map(|(_, vs)| vs.iter().map(|v| eng.to_cochain(v)))
        .collect())
}

#[cfg(test)]
mod tests;
