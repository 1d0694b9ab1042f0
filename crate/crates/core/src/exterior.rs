//! Exterior algebra on the generators `w[alpha, mu]` dual to the noncompact part.

use crate::error::{Error, Result};
use std::fmt;

/// The generator `w[alpha, mu]` with `alpha <= p < mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct ExtGen {
    pub alpha: u16,
    pub mu: u16,
}

impl ExtGen {
    pub const fn new(alpha: u16, mu: u16) -> ExtGen {
        ExtGen { alpha, mu }
    }

    /// Position in the canonical order (alpha first, then mu), from zero.
    pub fn position(&self, p: u16, q: u16) -> usize {
        (self.alpha as usize - 1) * q as usize + (self.mu - p - 1) as usize
    }

    pub fn from_position(i: usize, p: u16, q: u16) -> ExtGen {
        ExtGen { alpha: (i / q as usize) as u16 + 1, mu: p + 1 + (i % q as usize) as u16 }
    }
}

impl fmt::Display for ExtGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[{},{}]", self.alpha, self.mu)
    }
}

/// A basis element `w_I` of the exterior algebra: strictly increasing generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize, serde::Deserialize)]
pub struct ExtIndex {
    gens: Vec<ExtGen>,
}

/// Sorts a sequence of generators, returning the sign of the sorting
/// permutation, or None if a generator repeats.
pub fn canonicalize(seq: &[ExtGen]) -> Option<(ExtIndex, i32)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((ExtIndex { gens: v }, sign))
}

impl ExtIndex {
    pub fn empty() -> ExtIndex {
        ExtIndex::default()
    }

    /// Builds from generators that must already be strictly increasing.
    pub fn from_sorted(gens: Vec<ExtGen>) -> ExtIndex {
        assert!(gens.windows(2).all(|w| w[0] < w[1]), "generators not strictly increasing");
        ExtIndex { gens }
    }

    pub fn single(g: ExtGen) -> ExtIndex {
        ExtIndex { gens: vec![g] }
    }

    pub fn gens(&self) -> &[ExtGen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: ExtGen) -> bool {
        self.gens.binary_search(&g).is_ok()
    }

    /// Bitmask over canonical generator positions.
    pub fn to_mask(&self, p: u16, q: u16) -> u32 {
        self.gens.iter().fold(0u32, |m, g| m | 1 << g.position(p, q))
    }

    pub fn from_mask(mask: u32, p: u16, q: u16) -> ExtIndex {
        let gens = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| ExtGen::from_position(i, p, q)).collect();
        ExtIndex { gens }
    }

    /// Every generator for the signature, in canonical order.
    pub fn all_gens(p: u16, q: u16) -> Vec<ExtGen> {
        (0..(p * q) as usize).map(|i| ExtGen::from_position(i, p, q)).collect()
    }

    /// `vol`, the wedge of all generators in canonical order.
    pub fn vol(p: u16, q: u16) -> ExtIndex {
        ExtIndex { gens: ExtIndex::all_gens(p, q) }
    }

    /// All basis elements of degree `ell`, in lexicographic order of generators.
    pub fn all_of_degree(p: u16, q: u16, ell: usize) -> Vec<ExtIndex> {
        let all = ExtIndex::all_gens(p, q);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, left: usize, all: &[ExtGen], cur: &mut Vec<ExtGen>, out: &mut Vec<ExtIndex>) {
            if left == 0 {
                out.push(ExtIndex { gens: cur.clone() });
                return;
            }
            for i in start..all.len() {
                if all.len() - i < left {
                    break;
                }
                cur.push(all[i]);
                rec(i + 1, left - 1, all, cur, out);
                cur.pop();
            }
        }
        rec(0, ell, &all, &mut cur, &mut out);
        out
    }

    pub fn to_text(&self) -> String {
        if self.gens.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        parts.join("∧")
    }

    pub fn parse(s: &str) -> std::result::Result<ExtIndex, String> {
        let s = s.trim();
        if s == "1" {
            return Ok(ExtIndex::empty());
        }
        let mut gens = Vec::new();
        for part in s.split('∧') {
            let inner = part
                .trim()
                .strip_prefix("w[")
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| format!("bad generator {part:?}"))?;
            let (a, m) = inner.split_once(',').ok_or_else(|| format!("bad generator {part:?}"))?;
            let alpha = a.trim().parse().map_err(|_| format!("bad generator {part:?}"))?;
            let mu = m.trim().parse().map_err(|_| format!("bad generator {part:?}"))?;
            gens.push(ExtGen { alpha, mu });
        }
        if !gens.windows(2).all(|w| w[0] < w[1]) {
            return Err(format!("generators not in canonical order: {s:?}"));
        }
        Ok(ExtIndex { gens })
    }
}

impl fmt::Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `a ∧ b` as a signed basis element, or None when it vanishes.
pub fn wedge(a: &ExtIndex, b: &ExtIndex) -> Option<(ExtIndex, i32)> {
    let mut seq = a.gens.clone();
    seq.extend_from_slice(&b.gens);
    canonicalize(&seq)
}

/// Contraction with the vector dual to `g`.
pub fn interior(g: ExtGen, a: &ExtIndex) -> Option<(ExtIndex, i32)> {
    let s = a.gens.iter().position(|&x| x == g)?;
    let mut gens = a.gens.clone();
    gens.remove(s);
    Some((ExtIndex { gens }, if s % 2 == 0 { 1 } else { -1 }))
}

/// Hodge star for the SO(n,1) family: `a ∧ *a = vol`.
pub fn hodge_star(a: &ExtIndex, p: u16, q: u16) -> Result<(ExtIndex, i32)> {
    if q != 1 {
        return Err(Error::WrongFamily(format!("hodge star requested for so({p},{q})")));
    }
    let comp: Vec<ExtGen> = ExtIndex::all_gens(p, q).into_iter().filter(|g| !a.contains(*g)).collect();
    let c = ExtIndex { gens: comp };
    let (_, s) = wedge(a, &c).expect("complement is disjoint");
    Ok((c, s))
}
