//! Sparse exact linear algebra: vectors, semi-echelon forms, kernels, preimages, complements.
//!
//! Pivots are always the largest index of a row, with the pivot coefficient normalized to 1.
//! Since coordinates follow deglex order, the pivot of a row is its largest word.

use crate::field::Scalar;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize, one: Scalar) -> Self {
        SparseVec {
            entries: vec![(i, one)],
        }
    }

    /// Build from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    /// Build from pairs already strictly increasing in index.
    pub fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec {
            entries: entries.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize, zero: &Scalar) -> Vec<Scalar> {
        let mut v = vec![zero.clone(); n];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
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

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Entry with the largest index.
    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.last().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, -x)).collect(),
        }
    }

    /// `self + c * o`
    pub fn axpy(&self, c: &Scalar, o: &SparseVec) -> SparseVec {
        if c.is_zero() || o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + o.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < o.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0);
            let ib = o.entries.get(b).map(|e| e.0);
            match (ia, ib) {
                (Some(x), Some(y)) if x == y => {
                    let v = &self.entries[a].1 + &(c * &o.entries[b].1);
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (Some(_), None) => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (_, Some(y)) => {
                    out.push((y, c * &o.entries[b].1));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, o: &SparseVec) -> SparseVec {
        match o.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.axpy(&c.field().one(), o),
        }
    }

    pub fn sub(&self, o: &SparseVec) -> SparseVec {
        match o.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.axpy(&-c.field().one(), o),
        }
    }

    /// Add `off` to every index.
    pub fn shift(&self, off: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (i + off, c.clone()))
                .collect(),
        }
    }

    /// Split into entries with index `< n` and the rest (re-indexed from 0).
    pub fn split_at(&self, n: usize) -> (SparseVec, SparseVec) {
        let k = self.entries.partition_point(|(i, _)| *i < n);
        (
            SparseVec {
                entries: self.entries[..k].to_vec(),
            },
            SparseVec {
                entries: self.entries[k..]
                    .iter()
                    .map(|(i, c)| (i - n, c.clone()))
                    .collect(),
            },
        )
    }

    /// Re-index through `f` (need not be monotone).
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Scale so the leading coefficient is 1.
    pub fn normalized(&self) -> SparseVec {
        match self.leading() {
            None => SparseVec::new(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
        }
    }
}

/// Scratch map for summing many sparse contributions.
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.map.remove(&i);
                }
            }
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            if c.is_one() {
                self.add(i, x);
            } else {
                self.add(i, &(c * x));
            }
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec {
            entries: self.map.into_iter().collect(),
        }
    }
}

/// Rows in semi-echelon form: each row has a distinct pivot (its largest index) with coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_vectors(vs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row.contains_key(&i)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Remainder of `v` after eliminating every pivot position.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, Scalar> = v.entries.iter().cloned().collect();
        let mut cursor = match work.keys().next_back() {
            Some(&k) => k,
            None => return SparseVec::new(),
        };
        loop {
            let key = match work.range(..=cursor).next_back() {
                Some((&k, _)) => k,
                None => break,
            };
            if let Some(&r) = self.pivot_row.get(&key) {
                let c = work.remove(&key).unwrap();
                let row = &self.rows[r];
                for (i, x) in row.entries.iter() {
                    if *i == key {
                        continue;
                    }
                    let t = &c * x;
                    match work.get_mut(i) {
                        Some(y) => {
                            *y = &*y - &t;
                            if y.is_zero() {
                                work.remove(i);
                            }
                        }
                        None => {
                            work.insert(*i, -t);
                        }
                    }
                }
            }
            if key == 0 {
                break;
            }
            cursor = key - 1;
        }
        SparseVec {
            entries: work.into_iter().collect(),
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns its new pivot when `v` is independent of the current rows.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let r = self.reduce(&v);
        let (p, _) = r.leading()?;
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(r.normalized());
        Some(p)
    }

    /// Reduced row echelon basis, sorted by pivot ascending.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].max_index().unwrap());
        let mut done = Echelon::new();
        let mut out = Vec::with_capacity(order.len());
        for r in order {
            let row = &self.rows[r];
            let (p, _) = row.leading().unwrap();
            let (tail, head) = row.split_at(p);
            let reduced = done.reduce(&tail).add(&head.shift(p));
            done.pivot_row.insert(p, done.rows.len());
            done.rows.push(reduced.clone());
            out.push(reduced);
        }
        out
    }
}

/// Extend the span of `sub` by candidates, keeping the reduced remainders of those that are new.
/// The returned vectors are reduced modulo `sub` and all earlier choices, with leading coefficient 1.
pub fn complement(
    sub: &Echelon,
    candidates: impl IntoIterator<Item = SparseVec>,
) -> Vec<SparseVec> {
    let mut e = sub.clone();
    let mut out = Vec::new();
    for c in candidates {
        let r = e.reduce(&c);
        if !r.is_zero() {
            let r = r.normalized();
            e.insert(r.clone());
            out.push(r);
        }
    }
    out
}

/// A linear map given by the images of the domain basis, prepared for kernels and preimages.
#[derive(Clone, Debug)]
pub struct LinearSolve {
    domain_dim: usize,
    ech: Echelon,
}

impl LinearSolve {
    pub fn new(
        domain_dim: usize,
        images: impl IntoIterator<Item = SparseVec>,
        one: &Scalar,
    ) -> Self {
        let mut ech = Echelon::new();
        for (c, img) in images.into_iter().enumerate() {
            debug_assert!(c < domain_dim);
            let aug = img.shift(domain_dim).add(&SparseVec::unit(c, one.clone()));
            ech.insert(aug);
        }
        LinearSolve { domain_dim, ech }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn rank(&self) -> usize {
        self.ech
            .rows()
            .iter()
            .filter(|r| r.max_index().unwrap() >= self.domain_dim)
            .count()
    }

    /// Kernel basis in reduced echelon form.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let k = Echelon::from_vectors(
            self.ech
                .rows()
                .iter()
                .filter(|r| r.max_index().unwrap() < self.domain_dim)
                .cloned(),
        );
        k.rref()
    }

    /// Some `x` with `map(x) = y`, or `None` when `y` is not in the image.
    pub fn preimage(&self, y: &SparseVec) -> Option<SparseVec> {
        let r = self.ech.reduce(&y.shift(self.domain_dim));
        let (x, rest) = r.split_at(self.domain_dim);
        rest.is_zero().then(|| x.neg())
    }
}

/// Coordinates of `v` in a reduced echelon basis (rows sorted by pivot), or `None` if not in the span.
pub fn rref_coordinates(basis: &[SparseVec], v: &SparseVec) -> Option<SparseVec> {
    let mut out = Vec::new();
    let mut rem = v.clone();
    for (k, b) in basis.iter().enumerate().rev() {
        let (p, _) = b.leading().unwrap();
        if let Some(c) = rem.get(p).cloned() {
            rem = rem.axpy(&-&c, b);
            out.push((k, c));
        }
    }
    if !rem.is_zero() {
        return None;
    }
    out.reverse();
    Some(SparseVec::from_sorted(out))
}

/// Combine basis vectors: `Σ coords[k] * basis[k]`.
pub fn combine(basis: &[SparseVec], coords: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (k, c) in coords.iter() {
        acc.add_scaled(c, &basis[k]);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn v(q: &Field, xs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(xs.iter().map(|&(i, c)| (i, q.from_int(c))))
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let q = Field::rationals();
        let mut e = Echelon::new();
        assert_eq!(e.insert(v(&q, &[(0, 1), (1, 1)])), Some(1));
        assert_eq!(e.insert(v(&q, &[(0, 2), (1, 2)])), None);
        assert_eq!(e.insert(v(&q, &[(1, 1)])), Some(0));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&q, &[(0, 5), (1, -3)])));
    }

    #[test]
    fn rref_is_reduced() {
        let q = Field::rationals();
        let e = Echelon::from_vectors([v(&q, &[(0, 1), (1, 1), (2, 1)]), v(&q, &[(0, 1), (1, 2)])]);
        let r = e.rref();
        assert_eq!(r[0], v(&q, &[(0, 1), (1, 2)]).normalized());
        // second row has no entry at pivot 1
        assert!(r[1].get(1).is_none());
        assert_eq!(r[1].max_index(), Some(2));
    }

    #[test]
    fn kernel_and_preimage() {
        let q = Field::rationals();
        // map R^3 -> R^2: e0 -> (1,0), e1 -> (0,1), e2 -> (1,1)
        let imgs = vec![v(&q, &[(0, 1)]), v(&q, &[(1, 1)]), v(&q, &[(0, 1), (1, 1)])];
        let s = LinearSolve::new(3, imgs.clone(), &q.one());
        assert_eq!(s.rank(), 2);
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        let y = v(&q, &[(0, 3), (1, -2)]);
        let x = s.preimage(&y).unwrap();
        assert_eq!(combine(&imgs, &x), y);
        let s2 = LinearSolve::new(1, vec![v(&q, &[(0, 1)])], &q.one());
        assert!(s2.preimage(&v(&q, &[(1, 1)])).is_none());
    }

    #[test]
    fn complement_prefers_early_vectors() {
        let q = Field::rationals();
        let sub = Echelon::from_vectors([v(&q, &[(0, 1), (1, 1)])]);
        let c = complement(&sub, (0..3).map(|i| v(&q, &[(i, 1)])));
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], v(&q, &[(0, 1)]));
        assert_eq!(c[1], v(&q, &[(2, 1)]));
    }

    #[test]
    fn coordinates_in_rref() {
        let q = Field::rationals();
        let basis = Echelon::from_vectors([v(&q, &[(0, 1), (2, 1)]), v(&q, &[(1, 1)])]).rref();
        let t = v(&q, &[(0, 2), (1, 5), (2, 2)]);
        let c = rref_coordinates(&basis, &t).unwrap();
        assert_eq!(combine(&basis, &c), t);
        assert!(rref_coordinates(&basis, &v(&q, &[(2, 1)])).is_none());
    }
}
