//! Sparse exact linear algebra: vectors keyed by arbitrary ordered indices,
//! incremental echelon forms, rank, span membership and nullspaces.

use crate::scalar::Field;
use std::collections::BTreeMap;

/// Sparse vector sorted by key, with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SVec<K, F> {
    entries: Vec<(K, F)>,
}

impl<K: Ord + Clone, F: Field> Default for SVec<K, F> {
    fn default() -> Self {
        SVec { entries: Vec::new() }
    }
}

impl<K: Ord + Clone, F: Field> SVec<K, F> {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    /// Builds a vector from unsorted entries, summing duplicates.
    pub fn from_entries(mut e: Vec<(K, F)>) -> Self {
        e.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(K, F)> = Vec::with_capacity(e.len());
        for (k, v) in e {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 = last.1.add(&v),
                _ => out.push((k, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SVec { entries: out }
    }

    /// Wraps entries already sorted by key, without duplicates or zeros.
    pub fn from_sorted(entries: Vec<(K, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SVec { entries }
    }

    pub fn unit(k: K) -> Self {
        SVec { entries: vec![(k, F::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(K, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, F)> {
        self.entries
    }

    pub fn lead(&self) -> Option<&(K, F)> {
        self.entries.first()
    }

    pub fn get(&self, k: &K) -> Option<&F> {
        self.entries.binary_search_by(|e| e.0.cmp(k)).ok().map(|i| &self.entries[i].1)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SVec::new();
        }
        SVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0.clone(), b[j].1.mul(c)));
                j += 1;
            } else {
                let v = a[i].1.add(&b[j].1.mul(c));
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    /// Keeps only entries whose key satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        SVec { entries: self.entries.iter().filter(|(k, _)| keep(k)).cloned().collect() }
    }

    /// Re-keys through an injective map that may reorder keys.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> SVec<K2, F> {
        SVec::from_entries(self.entries.iter().map(|(k, v)| (f(k), v.clone())).collect())
    }
}

/// Linear combination `sum c_i v_i` of sparse vectors.
pub fn combine<K: Ord + Clone, F: Field>(terms: &[(F, &SVec<K, F>)]) -> SVec<K, F> {
    let mut e = Vec::new();
    for (c, v) in terms {
        for (k, x) in v.entries() {
            e.push((k.clone(), x.mul(c)));
        }
    }
    SVec::from_entries(e)
}

/// Rows in echelon form, each normalised to leading coefficient one and
/// indexed by its leading key.
#[derive(Clone, Debug)]
pub struct Echelon<K, F> {
    rows: BTreeMap<K, SVec<K, F>>,
}

impl<K: Ord + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Head-reduces `v` against the stored rows.
    pub fn reduce(&self, mut v: SVec<K, F>) -> SVec<K, F> {
        loop {
            let Some((k, c)) = v.lead().cloned() else { return v };
            match self.rows.get(&k) {
                Some(row) => v = v.add_scaled(&c.neg(), row),
                None => return v,
            }
        }
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SVec<K, F>) -> bool {
        let r = self.reduce(v);
        match r.lead().cloned() {
            None => false,
            Some((k, c)) => {
                let r = r.scale(&c.inv());
                self.rows.insert(k, r);
                true
            }
        }
    }

    pub fn contains(&self, v: &SVec<K, F>) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec<K, F>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone, F: Field>(vs: impl IntoIterator<Item = SVec<K, F>>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// Echelon form that remembers how each row was built from the inputs,
/// so dependencies among the inputs come out as nullspace vectors.
#[derive(Clone, Debug)]
pub struct TrackedEchelon<K, F> {
    rows: BTreeMap<K, (SVec<K, F>, SVec<usize, F>)>,
    kernel: Vec<SVec<usize, F>>,
    count: usize,
}

impl<K: Ord + Clone, F: Field> Default for TrackedEchelon<K, F> {
    fn default() -> Self {
        TrackedEchelon { rows: BTreeMap::new(), kernel: Vec::new(), count: 0 }
    }
}

impl<K: Ord + Clone, F: Field> TrackedEchelon<K, F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the next input vector (its index is the number of earlier pushes).
    pub fn push(&mut self, v: SVec<K, F>) {
        let id = self.count;
        self.count += 1;
        let mut v = v;
        let mut comb: SVec<usize, F> = SVec::unit(id);
        loop {
            let Some((k, c)) = v.lead().cloned() else {
                self.kernel.push(comb);
                return;
            };
            match self.rows.get(&k) {
                Some((row, rc)) => {
                    let nc = c.neg();
                    v = v.add_scaled(&nc, row);
                    comb = comb.add_scaled(&nc, rc);
                }
                None => {
                    let inv = c.inv();
                    self.rows.insert(k, (v.scale(&inv), comb.scale(&inv)));
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Relations `sum c_i input_i = 0`, a basis of the nullspace.
    pub fn kernel(&self) -> &[SVec<usize, F>] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<SVec<usize, F>> {
        self.kernel
    }

    /// Solves `sum c_i input_i = target` if possible.
    pub fn solve(&self, target: &SVec<K, F>) -> Option<SVec<usize, F>> {
        let mut v = target.clone();
        let mut comb: SVec<usize, F> = SVec::new();
        loop {
            let Some((k, c)) = v.lead().cloned() else { return Some(comb) };
            let (row, rc) = self.rows.get(&k)?;
            v = v.add_scaled(&c.neg(), row);
            comb = comb.add_scaled(&c, rc);
        }
    }
}

/// Nullspace of the map sending the `i`-th unit vector to `cols[i]`.
pub fn nullspace<K: Ord + Clone, F: Field>(cols: impl IntoIterator<Item = SVec<K, F>>) -> Vec<SVec<usize, F>> {
    let mut t = TrackedEchelon::new();
    for c in cols {
        t.push(c);
    }
    t.into_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn v(e: &[(u32, i64)]) -> SVec<u32, Q> {
        SVec::from_entries(e.iter().map(|&(k, x)| (k, Q::from_i64(x))).collect())
    }

    #[test]
    fn rank_of_dependent_family() {
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        let c = a.add_scaled(&Q::from_i64(3), &b);
        assert_eq!(rank(vec![a, b, c]), 2);
    }

    #[test]
    fn kernel_relation_is_valid() {
        let cols = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        let ker = nullspace(cols.clone());
        assert_eq!(ker.len(), 1);
        let mut sum: SVec<u32, Q> = SVec::new();
        for (i, c) in ker[0].entries() {
            sum = sum.add_scaled(c, &cols[*i]);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn solve_finds_preimage() {
        let mut t = TrackedEchelon::new();
        t.push(v(&[(0, 2)]));
        t.push(v(&[(0, 1), (1, 1)]));
        let s = t.solve(&v(&[(0, 3), (1, 1)])).unwrap();
        assert_eq!(s, SVec::from_entries(vec![(0, Q::new(1, 1)), (1, Q::new(1, 1))]));
        assert!(t.solve(&v(&[(2, 1)])).is_none());
    }
}
