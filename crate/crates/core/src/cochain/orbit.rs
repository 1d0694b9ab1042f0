//! Packed basis elements `w_I ⊗ z^e` and the finite signed-permutation
//! subgroup of the compact group acting on them.

use super::{Signature, Twist};
use crate::error::{Error, Result};
use crate::exterior::ExtIndex;
use crate::ring::{Monomial, VarIndex};

pub const MAX_VARS: usize = 24;
pub const MAX_GENS: usize = 32;

/// A basis element of the ambient cochain space: a form mask and an
/// exponent vector over the variables ordered by (slot, column).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub ext: u32,
    pub exps: [u8; MAX_VARS],
}

/// Index arithmetic for a fixed signature.
#[derive(Clone, Debug)]
pub struct Layout {
    pub sig: Signature,
    pub nvars: usize,
    pub ngens: usize,
    gen_alpha: Vec<u16>,
    gen_mu: Vec<u16>,
}

impl Layout {
    pub fn new(sig: Signature) -> Result<Layout> {
        let nvars = ((sig.p + sig.q) * sig.k) as usize;
        let ngens = (sig.p * sig.q) as usize;
        if nvars > MAX_VARS || ngens > MAX_GENS {
            return Err(Error::BadRange(format!("{sig} exceeds the packed layout ({MAX_VARS} variables, {MAX_GENS} generators)")));
        }
        let gens = sig.gens();
        Ok(Layout {
            sig,
            nvars,
            ngens,
            gen_alpha: gens.iter().map(|g| g.alpha).collect(),
            gen_mu: gens.iter().map(|g| g.mu).collect(),
        })
    }

    #[inline]
    pub fn var(&self, slot: u16, col: u16) -> usize {
        (slot as usize - 1) * self.sig.k as usize + col as usize - 1
    }

    #[inline]
    pub fn gen(&self, alpha: u16, mu: u16) -> usize {
        (alpha as usize - 1) * self.sig.q as usize + (mu - self.sig.p - 1) as usize
    }

    pub fn gen_slots(&self, g: usize) -> (u16, u16) {
        (self.gen_alpha[g], self.gen_mu[g])
    }

    pub fn degree(&self, e: &Elem) -> u32 {
        e.exps[..self.nvars].iter().map(|&x| x as u32).sum()
    }

    /// Positive and negative degree in each column.
    pub fn column_degrees(&self, e: &Elem) -> (Vec<u8>, Vec<u8>) {
        let k = self.sig.k as usize;
        let mut a = vec![0u8; k];
        let mut b = vec![0u8; k];
        for slot in 1..=self.sig.p + self.sig.q {
            for c in 1..=self.sig.k {
                let x = e.exps[self.var(slot, c)];
                if slot <= self.sig.p {
                    a[c as usize - 1] += x;
                } else {
                    b[c as usize - 1] += x;
                }
            }
        }
        (a, b)
    }

    pub fn to_parts(&self, e: &Elem) -> (ExtIndex, Monomial) {
        let ext = ExtIndex::from_mask(e.ext, self.sig.p, self.sig.q);
        let mut exps = Vec::new();
        for slot in 1..=self.sig.p + self.sig.q {
            for c in 1..=self.sig.k {
                let x = e.exps[self.var(slot, c)];
                if x > 0 {
                    exps.push((VarIndex::new(slot, c), x as u32));
                }
            }
        }
        (ext, Monomial::from_exps(exps))
    }

    pub fn from_parts(&self, i: &ExtIndex, m: &Monomial) -> Elem {
        let mut exps = [0u8; MAX_VARS];
        for &(v, x) in m.exps() {
            exps[self.var(v.slot, v.column)] = x as u8;
        }
        Elem { ext: i.to_mask(self.sig.p, self.sig.q), exps }
    }

    /// Sign of inserting generator `g` at the front of the form `mask`.
    #[inline]
    pub fn insert_sign(mask: u32, g: usize) -> i64 {
        if (mask & ((1u32 << g) - 1)).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Replaces generator `from` by `to` in `mask`; None if `to` is already present.
    #[inline]
    pub fn replace_gen(mask: u32, from: usize, to: usize) -> Option<(u32, i64)> {
        let rest = mask & !(1u32 << from);
        if rest >> to & 1 == 1 {
            return None;
        }
        let (lo, hi) = if from < to { (from, to) } else { (to, from) };
        let between = rest & ((1u32 << hi) - 1) & !((1u32 << (lo + 1)) - 1);
        let s = if between.count_ones() % 2 == 0 { 1 } else { -1 };
        Some((rest | 1u32 << to, s))
    }
}

/// A signed permutation of the slots, with its character value.
#[derive(Clone, Debug)]
pub struct GroupElem {
    var_map: [u8; MAX_VARS],
    var_flip: [bool; MAX_VARS],
    gen_map: [u8; MAX_GENS],
    gen_flip: [bool; MAX_GENS],
    pub chi: i64,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Signed permutations of `n` coordinates as (perm, signs, det).
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, Vec<bool>, i64)> {
    let mut out = Vec::new();
    for (perm, s) in permutations(n) {
        for bits in 0..1u32 << n {
            let flips: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
            let det = if bits.count_ones() % 2 == 0 { s } else { -s };
            out.push((perm.clone(), flips, det));
        }
    }
    out
}

fn factor(n: usize, twist: Option<u8>) -> Vec<(Vec<usize>, Vec<bool>, i64)> {
    signed_permutations(n)
        .into_iter()
        .filter_map(|(p, f, det)| match twist {
            None if det == 1 => Some((p, f, 1)),
            None => None,
            Some(e) => Some((p, f, if e % 2 == 1 { det } else { 1 })),
        })
        .collect()
}

impl GroupElem {
    /// The finite group of signed permutations in the compact group, with
    /// the character prescribed by the twist.
    pub fn group(lay: &Layout, twist: Twist) -> Vec<GroupElem> {
        let sig = lay.sig;
        let (p, q, k) = (sig.p as usize, sig.q as usize, sig.k);
        let mut out = Vec::new();
        for (pp, pf, pc) in factor(p, twist.plus) {
            for (mp, mf, mc) in factor(q, twist.minus) {
                let slot_map = |s: u16| -> (u16, bool) {
                    let s = s as usize - 1;
                    if s < p {
                        (pp[s] as u16 + 1, pf[s])
                    } else {
                        ((p + mp[s - p]) as u16 + 1, mf[s - p])
                    }
                };
                let mut g = GroupElem {
                    var_map: [0; MAX_VARS],
                    var_flip: [false; MAX_VARS],
                    gen_map: [0; MAX_GENS],
                    gen_flip: [false; MAX_GENS],
                    chi: pc * mc,
                };
                for slot in 1..=sig.p + sig.q {
                    let (t, f) = slot_map(slot);
                    for c in 1..=k {
                        g.var_map[lay.var(slot, c)] = lay.var(t, c) as u8;
                        g.var_flip[lay.var(slot, c)] = f;
                    }
                }
                for gi in 0..lay.ngens {
                    let (a, m) = lay.gen_slots(gi);
                    let (ta, fa) = slot_map(a);
                    let (tm, fm) = slot_map(m);
                    g.gen_map[gi] = lay.gen(ta, tm) as u8;
                    g.gen_flip[gi] = fa != fm;
                }
                out.push(g);
            }
        }
        out
    }

    /// Image of a basis element, with sign.
    #[inline]
    pub fn apply(&self, lay: &Layout, e: &Elem) -> (Elem, i64) {
        let mut out = Elem { ext: 0, exps: [0; MAX_VARS] };
        let mut neg = false;
        for v in 0..lay.nvars {
            let x = e.exps[v];
            if x > 0 {
                out.exps[self.var_map[v] as usize] = x;
                if self.var_flip[v] && x % 2 == 1 {
                    neg = !neg;
                }
            }
        }
        let mut mapped = [0u8; MAX_GENS];
        let mut n = 0;
        let mut m = e.ext;
        while m != 0 {
            let g = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.gen_flip[g] {
                neg = !neg;
            }
            mapped[n] = self.gen_map[g];
            n += 1;
        }
        let mut inv = 0;
        for i in 0..n {
            out.ext |= 1 << mapped[i];
            for j in i + 1..n {
                if mapped[i] > mapped[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 1 {
            neg = !neg;
        }
        (out, if neg { -1 } else { 1 })
    }
}
