//! Invariant cochains in orbit coordinates.
//!
//! A vector fixed (up to the twist character) by the finite signed-permutation
//! group `W` is determined by its values on orbit representatives, so every
//! space and map here is written in those coordinates. Invariance under the
//! identity component is then imposed by the rotation generators.

use super::orbit::{Elem, GroupElem, Layout, MAX_VARS};
use super::{Cochain, Signature, Twist};
use crate::error::Result;
use crate::linalg::{SVec, TrackedEchelon};
use crate::scalar::{Field, Q};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// Linear maps on cochains, all commuting with the compact group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `-sum A(w) ⊗ z z`
    DPlus,
    /// `sum A(w) ⊗ d^2`
    DMinus,
    /// `+sum A(w) ⊗ z z`
    DPrime,
    /// `DPlus + DMinus`
    DFull,
}

/// Column-weight difference `a - b`, preserved by every map in the complex.
pub type BlockKey = Vec<i8>;

/// Invariants of one piece: fixed form degree and fixed positive and
/// negative degree in every column.
#[derive(Clone, Debug)]
pub struct Piece<F> {
    pub reps: Vec<Elem>,
    pub basis: Vec<SVec<Elem, F>>,
}

type Slot<V> = Arc<OnceLock<V>>;

struct Memo<K, V> {
    map: Mutex<HashMap<K, Slot<V>>>,
}

impl<K: Eq + Hash + Clone, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo { map: Mutex::new(HashMap::new()) }
    }

    fn get(&self, k: &K, f: impl FnOnce() -> V) -> V {
        let slot = {
            let mut m = self.map.lock().unwrap();
            m.entry(k.clone()).or_default().clone()
        };
        slot.get_or_init(f).clone()
    }
}

type BlockMap<F> = Arc<BTreeMap<BlockKey, Vec<SVec<Elem, F>>>>;

/// Invariant subspaces and differentials for one signature and twist.
pub struct Engine<F: Field> {
    pub lay: Layout,
    pub twist: Twist,
    group: Vec<GroupElem>,
    core_group: Vec<GroupElem>,
    pieces: Memo<(usize, Vec<u8>, Vec<u8>), Arc<Piece<F>>>,
    blocks: Memo<(usize, u32), BlockMap<F>>,
    images: Memo<(Op, usize, u32), BlockMap<F>>,
}

/// Rotation in the plane of slots `u, v` sending `e_u` to `e_v` and `e_v` to `-e_u`;
/// `role_alpha` says which index of `w[alpha, mu]` the slots refer to.
#[derive(Clone, Copy, Debug)]
struct Rotation {
    u: u16,
    v: u16,
    role_alpha: bool,
}

impl<F: Field + crate::scalar::FromQ> Engine<F> {
    pub fn new(sig: Signature, twist: Twist) -> Result<Engine<F>> {
        let lay = Layout::new(sig)?;
        let group = GroupElem::group(&lay, twist);
        let core_group = GroupElem::group(&lay, Twist { plus: twist.plus, minus: None });
        Ok(Engine {
            lay,
            twist,
            group,
            core_group,
            pieces: Memo::new(),
            blocks: Memo::new(),
            images: Memo::new(),
        })
    }

    pub fn sig(&self) -> Signature {
        self.lay.sig
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    fn rotations(&self) -> Vec<Rotation> {
        let s = self.lay.sig;
        let mut r = Vec::new();
        if s.p >= 2 {
            r.push(Rotation { u: 1, v: 2, role_alpha: true });
        }
        if s.q >= 2 {
            // e_mu ∧ e_nu sends e_nu to e_mu and e_mu to -e_nu
            r.push(Rotation { u: s.p + 2, v: s.p + 1, role_alpha: false });
        }
        r
    }

    fn rotate(&self, rot: Rotation, e: &Elem, out: &mut Vec<(Elem, i64)>) {
        let lay = &self.lay;
        for c in 1..=lay.sig.k {
            let (iu, iv) = (lay.var(rot.u, c), lay.var(rot.v, c));
            let (xu, xv) = (e.exps[iu], e.exps[iv]);
            if xu > 0 {
                let mut f = *e;
                f.exps[iu] -= 1;
                f.exps[iv] += 1;
                out.push((f, xu as i64));
            }
            if xv > 0 {
                let mut f = *e;
                f.exps[iv] -= 1;
                f.exps[iu] += 1;
                out.push((f, -(xv as i64)));
            }
        }
        let mut m = e.ext;
        while m != 0 {
            let g = m.trailing_zeros() as usize;
            m &= m - 1;
            let (a, mu) = lay.gen_slots(g);
            let role = if rot.role_alpha { a } else { mu };
            let (target, coef) = if role == rot.u {
                (rot.v, 1)
            } else if role == rot.v {
                (rot.u, -1)
            } else {
                continue;
            };
            let h = if rot.role_alpha { lay.gen(target, mu) } else { lay.gen(a, target) };
            if let Some((mask, s)) = Layout::replace_gen(e.ext, g, h) {
                out.push((Elem { ext: mask, exps: e.exps }, coef * s));
            }
        }
    }

    /// Applies a differential to one basis element.
    pub fn apply_elem(&self, op: Op, e: &Elem, out: &mut Vec<(Elem, i64)>) {
        let lay = &self.lay;
        for g in 0..lay.ngens {
            if e.ext >> g & 1 == 1 {
                continue;
            }
            let sign = Layout::insert_sign(e.ext, g);
            let mask = e.ext | 1 << g;
            let (a, mu) = lay.gen_slots(g);
            for c in 1..=lay.sig.k {
                let (ia, im) = (lay.var(a, c), lay.var(mu, c));
                if matches!(op, Op::DPlus | Op::DPrime | Op::DFull) {
                    let mut f = *e;
                    f.ext = mask;
                    f.exps[ia] += 1;
                    f.exps[im] += 1;
                    out.push((f, if op == Op::DPrime { sign } else { -sign }));
                }
                if matches!(op, Op::DMinus | Op::DFull) && e.exps[ia] > 0 && e.exps[im] > 0 {
                    let mut f = *e;
                    f.ext = mask;
                    f.exps[ia] -= 1;
                    f.exps[im] -= 1;
                    out.push((f, sign * e.exps[ia] as i64 * e.exps[im] as i64));
                }
            }
        }
    }

    /// Orbit representative of `e` (the minimum of its orbit) and the
    /// coefficient of that representative in the symmetrisation of `e`.
    pub fn canon(&self, e: &Elem) -> (Elem, i64) {
        canon_with(&self.lay, &self.group, e)
    }

    /// Orbit sum normalised to coefficient one at its representative.
    pub fn orbit_sum(&self, rep: &Elem) -> Vec<(Elem, i64)> {
        let mut acc: Vec<(Elem, i64)> = self
            .group
            .iter()
            .map(|g| {
                let (f, s) = g.apply(&self.lay, rep);
                (f, s * g.chi)
            })
            .collect();
        merge(&mut acc);
        let c = acc.iter().find(|x| x.0 == *rep).map(|x| x.1).unwrap_or(0);
        assert!(c != 0, "representative does not support an invariant");
        acc.into_iter().map(|(f, x)| (f, x / c)).collect()
    }

    fn piece_elems(&self, ell: usize, a: &[u8], b: &[u8]) -> Vec<Elem> {
        let lay = &self.lay;
        let s = lay.sig;
        let mut monos = vec![[0u8; MAX_VARS]];
        for c in 1..=s.k {
            let ci = c as usize - 1;
            for (lo, hi, d) in [(1, s.p, a[ci]), (s.p + 1, s.p + s.q, b[ci])] {
                let slots: Vec<usize> = (lo..=hi).map(|sl| lay.var(sl, c)).collect();
                let mut next = Vec::new();
                for base in &monos {
                    distribute(&slots, d, base, &mut next);
                }
                monos = next;
            }
        }
        let mut out = Vec::new();
        for mask in masks(lay.ngens, ell) {
            for m in &monos {
                out.push(Elem { ext: mask, exps: *m });
            }
        }
        out.sort();
        out
    }

    fn compute_piece(&self, ell: usize, a: &[u8], b: &[u8], group: &[GroupElem]) -> Piece<F> {
        let lay = &self.lay;
        let elems = self.piece_elems(ell, a, b);
        let mut visited: HashSet<Elem> = HashSet::with_capacity(elems.len());
        let mut orbits: Vec<Vec<(Elem, i64)>> = Vec::new();
        for e in &elems {
            if visited.contains(e) {
                continue;
            }
            let mut acc: Vec<(Elem, i64)> = group
                .iter()
                .map(|g| {
                    let (f, s) = g.apply(lay, e);
                    (f, s * g.chi)
                })
                .collect();
            for (f, _) in &acc {
                visited.insert(*f);
            }
            merge(&mut acc);
            let Some(&(_, c)) = acc.first() else { continue };
            if c == 0 {
                continue;
            }
            orbits.push(acc.into_iter().filter(|x| x.1 != 0).map(|(f, x)| (f, x / c)).collect());
        }
        let reps: Vec<Elem> = orbits.iter().map(|o| o[0].0).collect();
        let rots = self.rotations();
        let basis = if rots.is_empty() {
            reps.iter().map(|r| SVec::unit(*r)).collect()
        } else {
            let mut te: TrackedEchelon<(u8, Elem), F> = TrackedEchelon::new();
            let mut buf = Vec::new();
            for o in &orbits {
                let mut col: HashMap<(u8, Elem), i64> = HashMap::new();
                for (ri, rot) in rots.iter().enumerate() {
                    for (e, c) in o {
                        buf.clear();
                        self.rotate(*rot, e, &mut buf);
                        for (f, x) in &buf {
                            *col.entry((ri as u8, *f)).or_insert(0) += c * x;
                        }
                    }
                }
                te.push(SVec::from_entries(
                    col.into_iter().filter(|x| x.1 != 0).map(|(k, x)| (k, F::from_i64(x))).collect(),
                ));
            }
            te.into_kernel()
                .into_iter()
                .map(|v| SVec::from_entries(v.entries().iter().map(|(i, c)| (reps[*i], c.clone())).collect()))
                .collect()
        };
        Piece { reps, basis }
    }

    /// Invariants with fixed form degree and column degrees `a` (positive), `b` (negative).
    pub fn piece(&self, ell: usize, a: &[u8], b: &[u8]) -> Arc<Piece<F>> {
        let key = (ell, a.to_vec(), b.to_vec());
        self.pieces.get(&key, || {
            let s = self.lay.sig;
            if s.q == 1 && b.iter().any(|&x| x > 0) {
                // the single negative slot per column is untouched by the identity
                // component, so these invariants are those of b = 0 times w^b
                if let Some(e) = self.twist.minus {
                    let nb: usize = b.iter().map(|&x| x as usize).sum();
                    if (ell + nb + e as usize) % 2 == 1 {
                        return Arc::new(Piece { reps: vec![], basis: vec![] });
                    }
                }
                let zero = vec![0u8; b.len()];
                let core = self.core_piece(ell, a, &zero);
                let lift = |e: &Elem| {
                    let mut f = *e;
                    for c in 1..=s.k {
                        f.exps[self.lay.var(s.p + 1, c)] = b[c as usize - 1];
                    }
                    f
                };
                Arc::new(Piece {
                    reps: core.reps.iter().map(lift).collect(),
                    basis: core.basis.iter().map(|v| v.map_keys(lift)).collect(),
                })
            } else if s.q == 1 {
                let core = self.core_piece(ell, a, b);
                if let Some(e) = self.twist.minus {
                    if (ell + e as usize) % 2 == 1 {
                        return Arc::new(Piece { reps: vec![], basis: vec![] });
                    }
                }
                core
            } else {
                Arc::new(self.compute_piece(ell, a, b, &self.group))
            }
        })
    }

    fn core_piece(&self, ell: usize, a: &[u8], b: &[u8]) -> Arc<Piece<F>> {
        let key = (ell, a.to_vec(), vec![u8::MAX; b.len()]);
        self.pieces.get(&key, || Arc::new(self.compute_piece(ell, a, b, &self.core_group)))
    }

    /// Column degree splits `(a, b)` of total degree `m`, grouped by `a - b`.
    pub fn piece_keys(&self, m: u32) -> BTreeMap<BlockKey, Vec<(Vec<u8>, Vec<u8>)>> {
        let k = self.lay.sig.k as usize;
        let mut out: BTreeMap<BlockKey, Vec<(Vec<u8>, Vec<u8>)>> = BTreeMap::new();
        let mut parts = vec![0u8; 2 * k];
        fn rec(i: usize, left: u32, parts: &mut Vec<u8>, k: usize, out: &mut BTreeMap<BlockKey, Vec<(Vec<u8>, Vec<u8>)>>) {
            if i == 2 * k - 1 {
                parts[i] = left as u8;
                let a = parts[..k].to_vec();
                let b = parts[k..].to_vec();
                let d: Vec<i8> = (0..k).map(|j| a[j] as i8 - b[j] as i8).collect();
                out.entry(d).or_default().push((a, b));
                return;
            }
            for x in 0..=left {
                parts[i] = x as u8;
                rec(i + 1, left - x, parts, k, out);
            }
        }
        rec(0, m, &mut parts, k, &mut out);
        out
    }

    /// Invariant basis of bidegree `(ℓ, m)`, split by the preserved column weights.
    pub fn block(&self, ell: usize, m: u32) -> BlockMap<F> {
        self.blocks.get(&(ell, m), || {
            if ell > self.lay.ngens {
                return Arc::new(BTreeMap::new());
            }
            let keys = self.piece_keys(m);
            let flat: Vec<(BlockKey, Vec<u8>, Vec<u8>)> =
                keys.into_iter().flat_map(|(d, v)| v.into_iter().map(move |(a, b)| (d.clone(), a, b))).collect();
            let pieces: Vec<(BlockKey, Arc<Piece<F>>)> =
                flat.par_iter().map(|(d, a, b)| (d.clone(), self.piece(ell, a, b))).collect();
            let mut out: BTreeMap<BlockKey, Vec<SVec<Elem, F>>> = BTreeMap::new();
            for (d, p) in pieces {
                if !p.basis.is_empty() {
                    out.entry(d).or_default().extend(p.basis.iter().cloned());
                }
            }
            Arc::new(out)
        })
    }

    pub fn block_dim(&self, ell: usize, m: u32) -> usize {
        self.block(ell, m).values().map(|v| v.len()).sum()
    }

    /// `T(O_j)` for an orbit representative, in target orbit coordinates.
    pub fn map_rep(&self, op: Op, rep: &Elem) -> SVec<Elem, F> {
        let (_, c) = self.canon(rep);
        let mut buf = Vec::new();
        self.apply_elem(op, rep, &mut buf);
        let mut acc: Vec<(Elem, i64)> = Vec::with_capacity(buf.len());
        for (e, x) in buf {
            let (t, coef) = self.canon(&e);
            if coef != 0 {
                acc.push((t, x * coef));
            }
        }
        merge(&mut acc);
        let inv = F::from_i64(c).inv();
        SVec::from_sorted(acc.into_iter().filter(|x| x.1 != 0).map(|(t, x)| (t, F::from_i64(x).mul(&inv))).collect())
    }

    /// Applies a map to an invariant vector in orbit coordinates.
    pub fn apply(&self, op: Op, v: &SVec<Elem, F>) -> SVec<Elem, F> {
        let mut out = SVec::new();
        for (r, c) in v.entries() {
            out = out.add_scaled(c, &self.map_rep(op, r));
        }
        out
    }

    /// Images of the block basis under a map, in the same order.
    pub fn images(&self, op: Op, ell: usize, m: u32) -> BlockMap<F> {
        self.images.get(&(op, ell, m), || {
            let blk = self.block(ell, m);
            let mut out = BTreeMap::new();
            for (d, vs) in blk.iter() {
                let reps: Vec<Elem> = {
                    let mut r: Vec<Elem> = vs.iter().flat_map(|v| v.entries().iter().map(|x| x.0)).collect();
                    r.sort();
                    r.dedup();
                    r
                };
                let mapped: HashMap<Elem, SVec<Elem, F>> =
                    reps.par_iter().map(|r| (*r, self.map_rep(op, r))).collect();
                let imgs: Vec<SVec<Elem, F>> = vs
                    .iter()
                    .map(|v| {
                        let mut o = SVec::new();
                        for (r, c) in v.entries() {
                            o = o.add_scaled(c, &mapped[r]);
                        }
                        o
                    })
                    .collect();
                out.insert(d.clone(), imgs);
            }
            Arc::new(out)
        })
    }

    /// Orbit coordinates of an invariant cochain.
    pub fn from_cochain(&self, c: &Cochain) -> SVec<Elem, F> {
        let mut e = Vec::new();
        for (i, f) in c.terms() {
            for (m, x) in f.terms() {
                let el = self.lay.from_parts(i, m);
                if self.canon(&el).0 == el {
                    e.push((el, F::from_q(x)));
                }
            }
        }
        SVec::from_entries(e)
    }

    /// Column weight key of an element.
    pub fn key_of(&self, e: &Elem) -> BlockKey {
        let (a, b) = self.lay.column_degrees(e);
        a.iter().zip(&b).map(|(x, y)| *x as i8 - *y as i8).collect()
    }
}

impl Engine<Q> {
    /// Expands orbit coordinates into an explicit cochain.
    pub fn to_cochain(&self, v: &SVec<Elem, Q>) -> Cochain {
        let mut out = Cochain::zero(self.lay.sig);
        for (r, c) in v.entries() {
            for (e, x) in self.orbit_sum(r) {
                let (i, m) = self.lay.to_parts(&e);
                out.add_term(i, &crate::ring::Polynomial::term(c.mul(&Q::from_i64(x)), m));
            }
        }
        out
    }
}

fn canon_with(lay: &Layout, group: &[GroupElem], e: &Elem) -> (Elem, i64) {
    let mut best = *e;
    let mut acc = 0i64;
    for g in group {
        let (f, s) = g.apply(lay, e);
        if f < best {
            best = f;
            acc = s * g.chi;
        } else if f == best {
            acc += s * g.chi;
        }
    }
    (best, acc)
}

fn merge(v: &mut Vec<(Elem, i64)>) {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Elem, i64)> = Vec::with_capacity(v.len());
    for (e, x) in v.drain(..) {
        match out.last_mut() {
            Some(l) if l.0 == e => l.1 += x,
            _ => out.push((e, x)),
        }
    }
    *v = out;
}

fn distribute(slots: &[usize], d: u8, base: &[u8; MAX_VARS], out: &mut Vec<[u8; MAX_VARS]>) {
    if slots.len() == 1 {
        let mut b = *base;
        b[slots[0]] = d;
        out.push(b);
        return;
    }
    for x in (0..=d).rev() {
        let mut b = *base;
        b[slots[0]] = x;
        distribute(&slots[1..], d - x, &b, out);
    }
}

fn masks(n: usize, ell: usize) -> Vec<u32> {
    fn rec(start: usize, left: usize, n: usize, cur: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..=n.saturating_sub(left) {
            rec(i + 1, left - 1, n, cur | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if ell <= n {
        rec(0, ell, n, 0, &mut out);
    }
    out
}
