use super::presentation::{AlgebraPresentation, NcPolynomial, Word};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Accumulator, Echelon, SparseVec};
use std::collections::HashMap;

pub const DEFAULT_WORD_CAP: usize = 1 << 20;

/// A connected graded algebra known through degree `max_degree`, with a fixed basis in each degree.
pub trait GradedAlgebra: Sync {
    fn field(&self) -> &Field;
    fn max_degree(&self) -> usize;
    fn dim(&self, d: usize) -> usize;
    /// Product of basis element `i` of degree `d1` with basis element `j` of degree `d2`.
    fn mul_basis(&self, d1: usize, i: usize, d2: usize, j: usize) -> SparseVec;
    /// Algebra generators as (degree, coordinates).
    fn algebra_generators(&self) -> Vec<(usize, SparseVec)>;

    fn mul(&self, d1: usize, a: &SparseVec, d2: usize, b: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let p = self.mul_basis(d1, i, d2, j);
                acc.add_scaled(&(x * y), &p);
            }
        }
        acc.finish()
    }

    fn dims(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|d| self.dim(d)).collect()
    }

    fn one(&self) -> SparseVec {
        SparseVec::unit(0, self.field().one())
    }
}

/// Degreewise bases of a finitely presented graded algebra, computed by row reduction of the
/// relation ideal in each degree.
///
/// Words of degree `d` are indexed in deglex order: grouped by first letter, then by the
/// index of the remaining word. Each ideal row pivots on its largest word, so normal words
/// are the non-pivot words and every pivot word rewrites into smaller ones.
#[derive(Debug)]
pub struct BasisTable {
    presentation: AlgebraPresentation,
    degrees: Vec<usize>,
    max_degree: usize,
    counts: Vec<usize>,
    offsets: Vec<Vec<usize>>,
    basis: Vec<Vec<usize>>,
    basis_words: Vec<Vec<Word>>,
    position: Vec<HashMap<usize, usize>>,
    rewrite: Vec<HashMap<usize, SparseVec>>,
    ideal_rank: Vec<usize>,
}

impl BasisTable {
    pub fn build(p: &AlgebraPresentation, n: usize) -> Result<Self> {
        Self::build_with_cap(p, n, DEFAULT_WORD_CAP)
    }

    pub fn build_with_cap(p: &AlgebraPresentation, n: usize, cap: usize) -> Result<Self> {
        let degrees = p.degrees();
        let ng = degrees.len();
        let mut counts = vec![0usize; n + 1];
        let mut offsets = vec![vec![usize::MAX; ng]; n + 1];
        counts[0] = 1;
        for d in 1..=n {
            let mut c = 0usize;
            for (g, &e) in degrees.iter().enumerate() {
                if e <= d {
                    offsets[d][g] = c;
                    c = c.saturating_add(counts[d - e]);
                }
            }
            if c > cap {
                return Err(Error::DegreeOverflow {
                    degree: d,
                    count: c,
                    cap,
                });
            }
            counts[d] = c;
        }
        let mut t = BasisTable {
            presentation: p.clone(),
            degrees,
            max_degree: n,
            counts,
            offsets,
            basis: Vec::with_capacity(n + 1),
            basis_words: Vec::with_capacity(n + 1),
            position: Vec::with_capacity(n + 1),
            rewrite: Vec::with_capacity(n + 1),
            ideal_rank: Vec::with_capacity(n + 1),
        };
        let rel_rows: Vec<(usize, Vec<(Scalar, Vec<u16>)>)> = p
            .relations()
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.terms.is_empty())
            .map(|(i, r)| {
                (
                    p.relation_degree(i).unwrap(),
                    r.terms
                        .iter()
                        .map(|(c, w)| (c.clone(), w.0.clone()))
                        .collect(),
                )
            })
            .collect();
        let mut ideal_rows: Vec<Vec<SparseVec>> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut ech = Echelon::new();
            for (g, &e) in t.degrees.iter().enumerate() {
                if e > d || e == 0 {
                    continue;
                }
                let off = t.offsets[d][g];
                for row in &ideal_rows[d - e] {
                    ech.insert(row.shift(off));
                }
            }
            for (e, terms) in &rel_rows {
                if *e > d {
                    continue;
                }
                let rest = d - e;
                let pre: Vec<(Scalar, usize)> = terms
                    .iter()
                    .map(|(c, w)| (c.clone(), t.prefix_offset(w, d)))
                    .collect();
                for v in 0..t.counts[rest] {
                    let row = SparseVec::from_pairs(pre.iter().map(|(c, o)| (o + v, c.clone())));
                    ech.insert(row);
                }
            }
            let rows = ech.rref();
            let pivots: Vec<usize> = rows.iter().map(|r| r.max_index().unwrap()).collect();
            let mut is_pivot = vec![false; t.counts[d]];
            for &pv in &pivots {
                is_pivot[pv] = true;
            }
            let basis: Vec<usize> = (0..t.counts[d]).filter(|&i| !is_pivot[i]).collect();
            let position: HashMap<usize, usize> =
                basis.iter().enumerate().map(|(k, &w)| (w, k)).collect();
            let mut rewrite = HashMap::with_capacity(rows.len());
            for (row, &pv) in rows.iter().zip(&pivots) {
                let nf = SparseVec::from_pairs(
                    row.iter()
                        .filter(|(i, _)| *i != pv)
                        .map(|(i, c)| (position[&i], -c)),
                );
                rewrite.insert(pv, nf);
            }
            t.basis_words
                .push(basis.iter().map(|&w| t.decode(w, d)).collect());
            t.basis.push(basis);
            t.position.push(position);
            t.rewrite.push(rewrite);
            t.ideal_rank.push(rows.len());
            ideal_rows.push(rows);
        }
        Ok(t)
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn word_count(&self, d: usize) -> usize {
        self.counts[d]
    }

    pub fn ideal_dim(&self, d: usize) -> usize {
        self.ideal_rank[d]
    }

    pub fn basis_words(&self, d: usize) -> &[Word] {
        &self.basis_words[d]
    }

    pub fn names(&self) -> Vec<String> {
        self.presentation.names()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    fn prefix_offset(&self, w: &[u16], d: usize) -> usize {
        let mut off = 0;
        let mut rem = d;
        for &g in w {
            off += self.offsets[rem][g as usize];
            rem -= self.degrees[g as usize];
        }
        off
    }

    /// Deglex index of a word among all words of its degree.
    pub fn word_index(&self, w: &Word) -> Result<(usize, usize)> {
        let d = w.degree(&self.degrees);
        self.check_degree(d)?;
        Ok((d, self.prefix_offset(&w.0, d)))
    }

    fn decode(&self, mut idx: usize, mut d: usize) -> Word {
        let mut out = Vec::new();
        while d > 0 {
            let g = (0..self.degrees.len())
                .rev()
                .find(|&g| self.offsets[d][g] != usize::MAX && self.offsets[d][g] <= idx)
                .unwrap();
            idx -= self.offsets[d][g];
            d -= self.degrees[g];
            out.push(g as u16);
        }
        Word(out)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            Err(Error::TruncationExceeded {
                degree: d,
                max: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    fn nf_index(&self, d: usize, idx: usize) -> SparseVec {
        match self.position[d].get(&idx) {
            Some(&k) => SparseVec::unit(k, self.field().one()),
            None => self.rewrite[d][&idx].clone(),
        }
    }

    pub fn normal_form_word(&self, w: &Word) -> Result<(usize, SparseVec)> {
        let (d, idx) = self.word_index(w)?;
        Ok((d, self.nf_index(d, idx)))
    }

    /// Normal form of a homogeneous polynomial; returns its degree (0 for the zero polynomial).
    pub fn normal_form(&self, e: &NcPolynomial) -> Result<(usize, SparseVec)> {
        let mut acc = Accumulator::new();
        let mut deg = None;
        for (c, w) in &e.terms {
            let (d, v) = self.normal_form_word(w)?;
            if deg.is_some_and(|d0| d0 != d) {
                return Err(Error::InvalidPresentation(
                    "element is not homogeneous".into(),
                ));
            }
            deg = Some(d);
            acc.add_scaled(c, &v);
        }
        Ok((deg.unwrap_or(0), acc.finish()))
    }

    pub fn element(&self, s: &str) -> Result<(usize, SparseVec)> {
        let p = self.presentation.parse_polynomial(s)?;
        self.normal_form(&p)
    }

    pub fn checked_mul(
        &self,
        d1: usize,
        a: &SparseVec,
        d2: usize,
        b: &SparseVec,
    ) -> Result<SparseVec> {
        self.check_degree(d1 + d2)?;
        Ok(self.mul(d1, a, d2, b))
    }

    /// Render an element with its basis words.
    pub fn render(&self, d: usize, v: &SparseVec) -> String {
        let names = self.names();
        let terms: Vec<(Scalar, Word)> = v
            .iter()
            .map(|(k, c)| (c.clone(), self.basis_words[d][k].clone()))
            .collect();
        NcPolynomial::new(terms).render(&names)
    }
}

impl GradedAlgebra for BasisTable {
    fn field(&self) -> &Field {
        self.presentation.field()
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, |b| b.len())
    }

    fn mul_basis(&self, d1: usize, i: usize, d2: usize, j: usize) -> SparseVec {
        let d = d1 + d2;
        assert!(
            d <= self.max_degree,
            "product degree {d} beyond truncation {}",
            self.max_degree
        );
        let idx = self.prefix_offset(&self.basis_words[d1][i].0, d) + self.basis[d2][j];
        self.nf_index(d, idx)
    }

    fn algebra_generators(&self) -> Vec<(usize, SparseVec)> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, &e)| e <= self.max_degree)
            .map(|(g, &e)| (e, self.nf_index(e, self.offsets[e][g])))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(gens: &[(&str, usize)], rels: &[&str], n: usize) -> BasisTable {
        let p = AlgebraPresentation::parse(Field::rationals(), gens, rels).unwrap();
        BasisTable::build(&p, n).unwrap()
    }

    #[test]
    fn skew_plane_dims_and_rewrite() {
        let t = alg(&[("x", 1), ("y", 1)], &["xy + yx"], 3);
        assert_eq!(t.dims(), vec![1, 2, 3, 4]);
        let (_, yx) = t.element("yx").unwrap();
        let (_, xy) = t.element("xy").unwrap();
        assert_eq!(yx, xy.neg());
        assert!(t.element("xy + yx").unwrap().1.is_zero());
        assert_eq!(t.render(2, &xy), "xy");
    }

    #[test]
    fn down_up_dims() {
        let t = alg(&[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"], 4);
        assert_eq!(t.dims(), vec![1, 2, 4, 6, 9]);
        let (_, a) = t.element("yx^2").unwrap();
        let (_, b) = t.element("x^2y").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn free_dims_and_truncation() {
        let t = alg(&[("x", 1), ("y", 1)], &[], 3);
        assert_eq!(t.dims(), vec![1, 2, 4, 8]);
        let p = AlgebraPresentation::parse(Field::rationals(), &[("x", 1), ("y", 1)], &[]).unwrap();
        let q = BasisTable::build(&p.quotient_truncation(3).unwrap(), 5).unwrap();
        assert_eq!(q.dims(), vec![1, 2, 4, 0, 0, 0]);
        let k = AlgebraPresentation::parse(Field::rationals(), &[("x", 1)], &[]).unwrap();
        let dual = BasisTable::build(&k.quotient_truncation(2).unwrap(), 4).unwrap();
        assert_eq!(dual.dims(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn weighted_generators() {
        let t = alg(&[("a", 1), ("b", 2)], &["ab - ba"], 4);
        // k[a,b] with deg b = 2: 1/((1-t)(1-t^2))
        assert_eq!(t.dims(), vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn word_cap_enforced() {
        let p = AlgebraPresentation::parse(Field::rationals(), &[("x", 1), ("y", 1)], &[]).unwrap();
        let e = BasisTable::build_with_cap(&p, 6, 40).unwrap_err();
        assert!(matches!(
            e,
            Error::DegreeOverflow {
                degree: 6,
                count: 64,
                cap: 40
            }
        ));
    }

    #[test]
    fn truncation_error() {
        let t = alg(&[("x", 1)], &[], 2);
        assert!(matches!(
            t.element("x^3"),
            Err(Error::TruncationExceeded { degree: 3, max: 2 })
        ));
    }

    #[test]
    fn unit_multiplication() {
        let t = alg(&[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"], 4);
        for d in 0..=4 {
            for j in 0..t.dim(d) {
                assert_eq!(
                    t.mul_basis(0, 0, d, j),
                    SparseVec::unit(j, Field::rationals().one())
                );
            }
        }
    }
}
