//! Invariant subrings, their minimal generators, Hilbert ideals and saturation degrees.

use crate::algebra::{BasisTable, GradedAlgebra};
use crate::field::Field;
use crate::hopf::DegreeActions;
use crate::linalg::{combine, complement, rref_coordinates, Echelon, SparseVec};
use serde::Serialize;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// How a reported value is backed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certification {
    Certified { by: String },
    Observed { to: usize },
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Certification::Certified { by } => format!("certified ({by})"),
            Certification::Observed { to } => format!("observed to {to}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantGenerator {
    pub degree: usize,
    /// Coordinates in the basis of the ambient `A_d`.
    pub vector: SparseVec,
}

/// The subalgebra of invariants, known degree by degree through the truncation of `A`.
#[derive(Debug)]
pub struct InvariantRing<'a> {
    ambient: &'a BasisTable,
    /// Reduced echelon basis of `(A_d)^H` in ambient coordinates.
    bases: Vec<Vec<SparseVec>>,
    generators: Vec<InvariantGenerator>,
    /// Dimension of the part generated by generators of lower degree, per degree.
    decomposable: Vec<usize>,
    products: Vec<Vec<OnceLock<Vec<Vec<SparseVec>>>>>,
}

impl<'a> InvariantRing<'a> {
    pub fn from_actions(actions: &DegreeActions<'a>) -> Self {
        let n = actions.max_degree();
        let bases = (0..=n).map(|d| actions.invariant_subspace(d)).collect();
        Self::from_bases(actions.table, bases)
    }

    /// Build from degreewise bases of a graded subalgebra (reduced echelon, ambient coordinates).
    pub fn from_bases(ambient: &'a BasisTable, bases: Vec<Vec<SparseVec>>) -> Self {
        let n = bases.len() - 1;
        let mut r = InvariantRing {
            ambient,
            bases,
            generators: Vec::new(),
            decomposable: vec![0; n + 1],
            products: (0..=n)
                .map(|_| (0..=n).map(|_| OnceLock::new()).collect())
                .collect(),
        };
        r.decomposable[0] = 0;
        for d in 1..=n {
            let mut span = Echelon::new();
            for g in &r.generators {
                if g.degree >= d {
                    continue;
                }
                for b in &r.bases[d - g.degree] {
                    span.insert(ambient.mul(g.degree, &g.vector, d - g.degree, b));
                }
            }
            r.decomposable[d] = span.rank();
            let fresh = complement(&span, r.bases[d].iter().cloned());
            for v in fresh {
                r.generators.push(InvariantGenerator {
                    degree: d,
                    vector: v,
                });
            }
        }
        r
    }

    pub fn ambient(&self) -> &BasisTable {
        self.ambient
    }

    pub fn basis(&self, d: usize) -> &[SparseVec] {
        &self.bases[d]
    }

    pub fn generators(&self) -> &[InvariantGenerator] {
        &self.generators
    }

    /// Dimension of the part of degree `d` generated by generators of lower degree.
    pub fn decomposable_dim(&self, d: usize) -> usize {
        self.decomposable[d]
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    /// Number of new generators in each degree.
    pub fn new_generator_counts(&self) -> Vec<usize> {
        (0..=self.max_degree())
            .map(|d| self.generators.iter().filter(|g| g.degree == d).count())
            .collect()
    }

    /// Largest generator degree found through the truncation.
    pub fn beta_observed(&self) -> Option<usize> {
        self.generators.iter().map(|g| g.degree).max()
    }

    pub fn to_ambient(&self, d: usize, coords: &SparseVec) -> SparseVec {
        combine(&self.bases[d], coords)
    }

    pub fn coordinates(&self, d: usize, v: &SparseVec) -> Option<SparseVec> {
        rref_coordinates(&self.bases[d], v)
    }

    pub fn render_generator(&self, g: &InvariantGenerator) -> String {
        self.ambient.render(g.degree, &g.vector)
    }

    fn block(&self, d1: usize, d2: usize) -> &Vec<Vec<SparseVec>> {
        self.products[d1][d2].get_or_init(|| {
            self.bases[d1]
                .iter()
                .map(|a| {
                    self.bases[d2]
                        .iter()
                        .map(|b| {
                            let p = self.ambient.mul(d1, a, d2, b);
                            rref_coordinates(&self.bases[d1 + d2], &p)
                                .expect("invariants are closed under products")
                        })
                        .collect()
                })
                .collect()
        })
    }
}

impl GradedAlgebra for InvariantRing<'_> {
    fn field(&self) -> &Field {
        self.ambient.field()
    }

    fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    fn dim(&self, d: usize) -> usize {
        self.bases.get(d).map_or(0, |b| b.len())
    }

    fn mul_basis(&self, d1: usize, i: usize, d2: usize, j: usize) -> SparseVec {
        self.block(d1, d2)[i][j].clone()
    }

    fn algebra_generators(&self) -> Vec<(usize, SparseVec)> {
        self.generators
            .iter()
            .map(|g| (g.degree, self.coordinates(g.degree, &g.vector).unwrap()))
            .collect()
    }
}

/// The one-sided ideal of `A` generated by `R_{≥1}`, degree by degree.
#[derive(Debug, Clone)]
pub struct HilbertIdeal {
    pub side: Side,
    /// Reduced echelon basis of `J_d` in ambient coordinates.
    pub spans: Vec<Vec<SparseVec>>,
    /// `dim (A/J)_d`.
    pub quotient_dims: Vec<usize>,
    /// Minimal generators of `A` as an `R`-module: complements of `J_d` in `A_d`.
    pub module_generators: Vec<(usize, SparseVec)>,
}

impl HilbertIdeal {
    /// `side = Left` gives `A R_{≥1}`, the ideal whose quotient is `A ⊗_R k` for `A` as a right `R`-module.
    pub fn compute(ring: &InvariantRing<'_>, side: Side) -> Self {
        let a = ring.ambient();
        let n = a.max_degree();
        let one = a.field().one();
        let mut spans = Vec::with_capacity(n + 1);
        let mut quotient_dims = Vec::with_capacity(n + 1);
        let mut module_generators = Vec::new();
        for d in 0..=n {
            let mut ech = Echelon::new();
            for g in ring.generators() {
                if g.degree > d {
                    continue;
                }
                let e = d - g.degree;
                for b in 0..a.dim(e) {
                    let bv = SparseVec::unit(b, one.clone());
                    let p = match side {
                        Side::Left => a.mul(e, &bv, g.degree, &g.vector),
                        Side::Right => a.mul(g.degree, &g.vector, e, &bv),
                    };
                    ech.insert(p);
                }
            }
            let units = (0..a.dim(d)).map(|i| SparseVec::unit(i, one.clone()));
            for v in complement(&ech, units) {
                module_generators.push((d, v));
            }
            quotient_dims.push(a.dim(d) - ech.rank());
            spans.push(ech.rref());
        }
        HilbertIdeal {
            side,
            spans,
            quotient_dims,
            module_generators,
        }
    }

    /// Top degree of `A/J` within the truncation (`None` if `A/J` is zero, which cannot happen for `d = 0`).
    pub fn quotient_degree_observed(&self) -> Option<usize> {
        self.quotient_dims.iter().rposition(|&x| x != 0)
    }

    /// `1 + deg(A/J)`, certified once `A/J` vanishes in `g` consecutive degrees, where `g` is the
    /// largest generator degree of `A`: then every higher piece is spanned by products landing in `J`.
    pub fn tau(&self, ambient: &BasisTable) -> (Option<usize>, Certification) {
        let n = self.quotient_dims.len() - 1;
        let g = ambient.degrees().iter().copied().max().unwrap_or(1).max(1);
        let mut run = 0;
        for d in 0..=n {
            if self.quotient_dims[d] == 0 {
                run += 1;
                if run >= g {
                    let top = self.quotient_dims[..d]
                        .iter()
                        .rposition(|&x| x != 0)
                        .unwrap_or(0);
                    let by = if g == 1 {
                        "quotient by the Hilbert ideal vanishes in one degree; algebra generated in degree 1".to_string()
                    } else {
                        format!("quotient by the Hilbert ideal vanishes in {g} consecutive degrees")
                    };
                    return (Some(top + 1), Certification::Certified { by });
                }
            } else {
                run = 0;
            }
        }
        (None, Certification::Observed { to: n })
    }

    pub fn module_generator_degree(&self) -> Option<usize> {
        self.module_generators.iter().map(|(d, _)| *d).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;
    use crate::hopf::{ActionData, Matrix};

    fn m(rows: &[&[i64]]) -> Matrix {
        let q = Field::rationals();
        rows.iter()
            .map(|r| r.iter().map(|&x| q.from_int(x)).collect())
            .collect()
    }

    fn setup(rels: &[&str], mat: Matrix, n: usize) -> (BasisTable, ActionData) {
        let p =
            AlgebraPresentation::parse(Field::rationals(), &[("x", 1), ("y", 1)], rels).unwrap();
        let t = BasisTable::build(&p, n).unwrap();
        let a = ActionData::from_group(&p, &[mat], 16).unwrap();
        (t, a)
    }

    #[test]
    fn down_up_sign() {
        let (t, a) = setup(&["x^2y - yx^2", "xy^2 - y^2x"], m(&[&[-1, 0], &[0, 1]]), 6);
        let da = DegreeActions::new(&a, &t).unwrap();
        let r = InvariantRing::from_actions(&da);
        assert_eq!((1..=3).map(|d| r.dim(d)).collect::<Vec<_>>(), vec![1, 2, 3]);
        let gens: Vec<String> = r
            .generators()
            .iter()
            .map(|g| r.render_generator(g))
            .collect();
        assert_eq!(gens, vec!["y", "x^2", "xyx"]);
        for side in [Side::Left, Side::Right] {
            let j = HilbertIdeal::compute(&r, side);
            let (tau, c) = j.tau(&t);
            assert_eq!(tau, Some(3));
            assert!(c.is_certified());
            assert_eq!(j.module_generator_degree(), Some(2));
        }
    }

    #[test]
    fn free_algebra_sign() {
        let (t, a) = setup(&[], m(&[&[-1, 0], &[0, 1]]), 6);
        let da = DegreeActions::new(&a, &t).unwrap();
        let r = InvariantRing::from_actions(&da);
        let gens: Vec<String> = r
            .generators()
            .iter()
            .map(|g| r.render_generator(g))
            .collect();
        assert_eq!(gens, vec!["y", "x^2", "xyx", "xy^2x", "xy^3x", "xy^4x"]);
        let j = HilbertIdeal::compute(&r, Side::Left);
        assert!(j.quotient_dims.iter().all(|&x| x > 0));
        let mg: Vec<String> = j
            .module_generators
            .iter()
            .map(|(d, v)| t.render(*d, v))
            .collect();
        assert_eq!(mg, vec!["1", "x", "yx", "y^2x", "y^3x", "y^4x", "y^5x"]);
        assert!(!j.tau(&t).1.is_certified());
    }
}
