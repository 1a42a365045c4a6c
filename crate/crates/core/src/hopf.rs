//! Finite-dimensional Hopf algebras by structure constants, group algebras by closure, and
//! their actions on graded algebras.

use crate::algebra::{AlgebraPresentation, BasisTable, GradedAlgebra, Word};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Accumulator, Echelon, SparseVec};
use std::collections::{BTreeMap, HashMap};

/// Dense matrix; row `i` holds the image of basis vector `i`.
pub type Matrix = Vec<Vec<Scalar>>;

pub const DEFAULT_GROUP_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct HopfData {
    field: Field,
    pub labels: Vec<String>,
    /// `mult[i][j]` = coordinates of `h_i h_j`.
    pub mult: Vec<Vec<SparseVec>>,
    /// `coproduct[i]` = terms `(j, k, c)` of `Δ(h_i) = Σ c h_j ⊗ h_k`.
    pub coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
    pub antipode: Vec<SparseVec>,
    pub unit: SparseVec,
    pub integral: SparseVec,
    group_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

type Tensor2 = BTreeMap<(usize, usize), Scalar>;

fn add_to<K: Ord>(m: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    use std::collections::btree_map::Entry;
    match m.entry(k) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let v = e.get() + &c;
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
    }
}

impl HopfData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<SparseVec>>,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        antipode: Vec<SparseVec>,
        unit: SparseVec,
        integral: SparseVec,
    ) -> Result<Self> {
        let n = labels.len();
        let bad = |m: &str| Err(Error::InvalidHopf(m.to_string()));
        if n == 0 {
            return bad("dimension must be positive");
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return bad("multiplication table must be dim x dim");
        }
        if coproduct.len() != n || counit.len() != n || antipode.len() != n {
            return bad("coproduct, counit and antipode must have one entry per basis element");
        }
        let in_range = |v: &SparseVec| v.max_index().is_none_or(|m| m < n);
        if !mult.iter().flatten().all(in_range)
            || !antipode.iter().all(in_range)
            || !in_range(&unit)
            || !in_range(&integral)
        {
            return bad("coordinate index out of range");
        }
        if coproduct
            .iter()
            .flatten()
            .any(|&(j, k, _)| j >= n || k >= n)
        {
            return bad("coproduct index out of range");
        }
        Ok(HopfData {
            field,
            labels,
            mult,
            coproduct,
            counit,
            antipode,
            unit,
            integral,
            group_order: None,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn group_order(&self) -> Option<usize> {
        self.group_order
    }

    pub fn is_group_algebra(&self) -> bool {
        self.group_order.is_some()
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_scaled(&(x * y), &self.mult[i][j]);
            }
        }
        acc.finish()
    }

    pub fn counit_of(&self, a: &SparseVec) -> Scalar {
        let mut s = self.field.zero();
        for (i, c) in a.iter() {
            s = &s + &(c * &self.counit[i]);
        }
        s
    }

    fn coproduct_of(&self, a: &SparseVec) -> Tensor2 {
        let mut t = Tensor2::new();
        for (i, c) in a.iter() {
            for (j, k, d) in &self.coproduct[i] {
                add_to(&mut t, (*j, *k), c * d);
            }
        }
        t
    }

    fn basis(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.field.one())
    }

    /// Every axiom check with a witness of the first failure.
    pub fn validation_report(&self) -> Vec<AxiomCheck> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut check = |axiom: &'static str, w: Option<Vec<usize>>| {
            out.push(AxiomCheck {
                axiom,
                passed: w.is_none(),
                witness: w,
            })
        };
        let unit_fail = (0..n).find(|&i| {
            let h = self.basis(i);
            self.mul(&self.unit, &h) != h || self.mul(&h, &self.unit) != h
        });
        check("unit", unit_fail.map(|i| vec![i]));
        let mut assoc = None;
        'a: for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let l = self.mul(ij, &self.basis(k));
                    let r = self.mul(&self.basis(i), &self.mult[j][k]);
                    if l != r {
                        assoc = Some(vec![i, j, k]);
                        break 'a;
                    }
                }
            }
        }
        check("associativity", assoc);
        let counit_fail = (0..n).find(|&i| {
            let mut left = Accumulator::new();
            let mut right = Accumulator::new();
            for (j, k, c) in &self.coproduct[i] {
                left.add(*k, &(c * &self.counit[*j]));
                right.add(*j, &(c * &self.counit[*k]));
            }
            let h = self.basis(i);
            left.finish() != h || right.finish() != h
        });
        check("counit", counit_fail.map(|i| vec![i]));
        let coassoc_fail = (0..n).find(|&i| {
            let mut l: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut r: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (j, k, c) in &self.coproduct[i] {
                for (a, b, d) in &self.coproduct[*j] {
                    add_to(&mut l, (*a, *b, *k), c * d);
                }
                for (a, b, d) in &self.coproduct[*k] {
                    add_to(&mut r, (*j, *a, *b), c * d);
                }
            }
            l != r
        });
        check("coassociativity", coassoc_fail.map(|i| vec![i]));
        let mut delta_mult = None;
        'd: for i in 0..n {
            for j in 0..n {
                let lhs = self.coproduct_of(&self.mult[i][j]);
                let mut rhs = Tensor2::new();
                for (a, b, c) in &self.coproduct[i] {
                    for (x, y, d) in &self.coproduct[j] {
                        let cd = c * d;
                        for (p, e) in self.mult[*a][*x].iter() {
                            for (q, f) in self.mult[*b][*y].iter() {
                                add_to(&mut rhs, (p, q), &cd * &(e * f));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    delta_mult = Some(vec![i, j]);
                    break 'd;
                }
            }
        }
        let unit_delta = self.coproduct_of(&self.unit);
        let mut one_one = Tensor2::new();
        for (i, c) in self.unit.iter() {
            for (j, d) in self.unit.iter() {
                add_to(&mut one_one, (i, j), c * d);
            }
        }
        if delta_mult.is_none() && unit_delta != one_one {
            delta_mult = Some(vec![]);
        }
        check("coproduct multiplicative", delta_mult);
        let mut eps_mult = None;
        'e: for i in 0..n {
            for j in 0..n {
                if self.counit_of(&self.mult[i][j]) != &self.counit[i] * &self.counit[j] {
                    eps_mult = Some(vec![i, j]);
                    break 'e;
                }
            }
        }
        if eps_mult.is_none() && !self.counit_of(&self.unit).is_one() {
            eps_mult = Some(vec![]);
        }
        check("counit multiplicative", eps_mult);
        let antipode_fail = (0..n).find(|&i| {
            let mut l = Accumulator::new();
            let mut r = Accumulator::new();
            for (j, k, c) in &self.coproduct[i] {
                l.add_scaled(c, &self.mul(&self.antipode[*j], &self.basis(*k)));
                r.add_scaled(c, &self.mul(&self.basis(*j), &self.antipode[*k]));
            }
            let target = self.unit.scale(&self.counit[i]);
            l.finish() != target || r.finish() != target
        });
        check("antipode", antipode_fail.map(|i| vec![i]));
        let integral_fail = (0..n).find(|&i| {
            let h = self.basis(i);
            let target = self.integral.scale(&self.counit[i]);
            self.mul(&self.integral, &h) != target || self.mul(&h, &self.integral) != target
        });
        check("integral", integral_fail.map(|i| vec![i]));
        let normalized = self.counit_of(&self.integral).is_one();
        check("integral normalization", (!normalized).then(Vec::new));
        out
    }

    /// Fails with the first axiom that does not hold.
    pub fn validate(&self) -> Result<()> {
        let eps = self.counit_of(&self.integral);
        for c in self.validation_report() {
            if c.passed {
                continue;
            }
            if c.axiom == "integral normalization" {
                if eps.is_zero() {
                    return Err(Error::Modular(
                        "the integral has counit 0, so the Hopf algebra is not semisimple".into(),
                    ));
                }
                return Err(Error::HopfAxioms(format!(
                    "integral normalization: counit of integral is {eps}, expected 1"
                )));
            }
            let w = c.witness.unwrap_or_default();
            return Err(Error::HopfAxioms(format!(
                "{} fails at basis indices {:?}",
                c.axiom, w
            )));
        }
        Ok(())
    }
}

fn mat_mul(a: &Matrix, b: &Matrix, f: &Field) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = f.zero();
                    for (k, x) in a[i].iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s = &s + &(x * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn identity(n: usize, f: &Field) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { f.one() } else { f.zero() })
                .collect()
        })
        .collect()
}

fn mat_rank(a: &Matrix) -> usize {
    Echelon::from_vectors(a.iter().map(|r| SparseVec::from_dense(r))).rank()
}

/// A finite matrix group given by generators, closed under multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGroup {
    /// Elements in discovery order, identity first; row convention.
    pub elements: Vec<Matrix>,
    /// `product[a][b]` = index of `g_a g_b`.
    pub product: Vec<Vec<usize>>,
}

impl MatrixGroup {
    /// Rows are images of basis vectors, so `g·h` acts by the matrix product `rep(h)·rep(g)`.
    pub fn close(field: &Field, generators: &[Matrix], n: usize, cap: usize) -> Result<Self> {
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidAction(format!(
                    "group generator {k} must be {n} x {n}"
                )));
            }
            if mat_rank(g) != n {
                return Err(Error::InvalidAction(format!(
                    "group generator {k} is not invertible"
                )));
            }
        }
        let mut elements = vec![identity(n, field)];
        let mut index: HashMap<Matrix, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let p = mat_mul(&elements[i], g, field);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            i += 1;
        }
        let product = (0..elements.len())
            .map(|a| {
                (0..elements.len())
                    .map(|b| index[&mat_mul(&elements[b], &elements[a], field)])
                    .collect()
            })
            .collect();
        Ok(MatrixGroup { elements, product })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.product[a][b] == 0)
            .unwrap()
    }

    /// The group algebra with Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹ and Λ = (1/|G|) Σ g.
    pub fn group_algebra(&self, field: &Field) -> Result<HopfData> {
        let n = self.order();
        let one = field.one();
        let mult = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| SparseVec::unit(self.product[a][b], one.clone()))
                    .collect()
            })
            .collect();
        let coproduct = (0..n).map(|a| vec![(a, a, one.clone())]).collect();
        let counit = vec![one.clone(); n];
        let antipode = (0..n)
            .map(|a| SparseVec::unit(self.inverse(a), one.clone()))
            .collect();
        let w = field.from_ratio(1, n as i64);
        let integral = SparseVec::from_sorted((0..n).map(|a| (a, w.clone())).collect());
        let labels = (0..n).map(|a| format!("g{a}")).collect();
        let mut h = HopfData::new(
            field.clone(),
            labels,
            mult,
            coproduct,
            counit,
            antipode,
            SparseVec::unit(0, one),
            integral,
        )?;
        h.group_order = Some(n);
        Ok(h)
    }
}

/// A Hopf algebra acting on the generating space of a presented algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionData {
    pub hopf: HopfData,
    /// `generator_action[h][g]` = image of generator `g` under basis element `h`, in generator coordinates.
    pub generator_action: Vec<Vec<SparseVec>>,
    pub group: Option<MatrixGroup>,
}

impl ActionData {
    pub fn from_group(p: &AlgebraPresentation, generators: &[Matrix], cap: usize) -> Result<Self> {
        let n = p.generators().len();
        let g = MatrixGroup::close(p.field(), generators, n, cap)?;
        let hopf = g.group_algebra(p.field())?;
        let generator_action = g
            .elements
            .iter()
            .map(|m| m.iter().map(|r| SparseVec::from_dense(r)).collect())
            .collect();
        let a = ActionData {
            hopf,
            generator_action,
            group: Some(g),
        };
        a.check_generator_space(p)?;
        Ok(a)
    }

    pub fn from_hopf(p: &AlgebraPresentation, hopf: HopfData, matrices: &[Matrix]) -> Result<Self> {
        let n = p.generators().len();
        if matrices.len() != hopf.dim() {
            return Err(Error::InvalidAction(format!(
                "expected {} generator-space matrices, one per Hopf basis element",
                hopf.dim()
            )));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidAction(format!(
                    "matrix {k} must be {n} x {n}"
                )));
            }
        }
        let a = ActionData {
            generator_action: matrices
                .iter()
                .map(|m| m.iter().map(|r| SparseVec::from_dense(r)).collect())
                .collect(),
            hopf,
            group: None,
        };
        a.check_generator_space(p)?;
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        self.hopf.field()
    }

    fn act_gen(&self, h: &SparseVec, g: usize) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in h.iter() {
            acc.add_scaled(c, &self.generator_action[i][g]);
        }
        acc.finish()
    }

    /// Degree blocks, unit acting as the identity, and compatibility with multiplication in H.
    fn check_generator_space(&self, p: &AlgebraPresentation) -> Result<()> {
        let degs = p.degrees();
        let n = degs.len();
        for (h, imgs) in self.generator_action.iter().enumerate() {
            for (g, v) in imgs.iter().enumerate() {
                if let Some((j, _)) = v.iter().find(|(j, _)| degs[*j] != degs[g]) {
                    return Err(Error::InvalidAction(format!(
                        "basis element {h} sends generator {g} to generator {j} of a different degree"
                    )));
                }
            }
        }
        for g in 0..n {
            if self.act_gen(&self.hopf.unit, g) != SparseVec::unit(g, self.field().one()) {
                return Err(Error::InvalidAction(
                    "the unit of H does not act as the identity".into(),
                ));
            }
        }
        let d = self.hopf.dim();
        for i in 0..d {
            for j in 0..d {
                for g in 0..n {
                    let lhs = self.act_gen(&self.hopf.mult[i][j], g);
                    let inner = &self.generator_action[j][g];
                    let mut rhs = Accumulator::new();
                    for (k, c) in inner.iter() {
                        rhs.add_scaled(c, &self.generator_action[i][k]);
                    }
                    if lhs != rhs.finish() {
                        return Err(Error::InvalidAction(format!(
                            "not a module: (h{i} h{j}) and h{i}(h{j} -) differ on generator {g}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Action matrices of every Hopf basis element on each graded piece `A_d`, `d ≤ N`.
#[derive(Debug)]
pub struct DegreeActions<'a> {
    pub action: &'a ActionData,
    pub table: &'a BasisTable,
    /// `matrices[d][h][j]` = `h_h · b_j` for the basis `b_j` of `A_d`.
    matrices: Vec<Vec<Vec<SparseVec>>>,
    gen_images: Vec<Vec<(usize, SparseVec)>>,
}

impl<'a> DegreeActions<'a> {
    pub fn new(action: &'a ActionData, table: &'a BasisTable) -> Result<Self> {
        if action.generator_action.first().map_or(0, |r| r.len()) != table.degrees().len() {
            return Err(Error::InvalidAction(
                "action and algebra have different generator counts".into(),
            ));
        }
        let field = table.field().clone();
        let hd = action.hopf.dim();
        let degs = table.degrees().to_vec();
        let gens: Vec<SparseVec> = (0..degs.len())
            .map(|g| {
                if degs[g] <= table.max_degree() {
                    table
                        .normal_form_word(&Word(vec![g as u16]))
                        .map(|x| x.1)
                        .unwrap_or_default()
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let gen_images: Vec<Vec<(usize, SparseVec)>> = (0..hd)
            .map(|h| {
                (0..degs.len())
                    .map(|g| {
                        let mut acc = Accumulator::new();
                        if degs[g] <= table.max_degree() {
                            for (k, c) in action.generator_action[h][g].iter() {
                                acc.add_scaled(c, &gens[k]);
                            }
                        }
                        (degs[g], acc.finish())
                    })
                    .collect()
            })
            .collect();
        let mut da = DegreeActions {
            action,
            table,
            matrices: Vec::new(),
            gen_images,
        };
        let zero_deg: Vec<Vec<SparseVec>> = (0..hd)
            .map(|h| vec![SparseVec::unit(0, field.one()).scale(&action.hopf.counit[h])])
            .collect();
        da.matrices.push(zero_deg);
        for d in 1..=table.max_degree() {
            let words = table.basis_words(d);
            let mut m: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(words.len()); hd];
            for w in words {
                let g = w.0[0] as usize;
                let rest = Word(w.0[1..].to_vec());
                let (rd, rv) = table.normal_form_word(&rest)?;
                let (ri, _) = rv.leading().expect("suffix of a normal word is normal");
                for (h, row) in m.iter_mut().enumerate() {
                    let mut acc = Accumulator::new();
                    for (h1, h2, c) in &action.hopf.coproduct[h] {
                        let (e, a) = &da.gen_images[*h1][g];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &da.matrices[rd][*h2][ri];
                        if b.is_zero() {
                            continue;
                        }
                        acc.add_scaled(c, &table.mul(*e, a, rd, b));
                    }
                    row.push(acc.finish());
                }
            }
            da.matrices.push(m);
        }
        Ok(da)
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    /// Per-basis-element matrices on `A_d` (column `j` = image of basis word `j`).
    pub fn extend_action(&self, d: usize) -> &[Vec<SparseVec>] {
        &self.matrices[d]
    }

    /// Action of a general Hopf element on an element of `A_d`.
    pub fn act(&self, h: &SparseVec, d: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in h.iter() {
            for (j, x) in v.iter() {
                acc.add_scaled(&(c * x), &self.matrices[d][i][j]);
            }
        }
        acc.finish()
    }

    /// Measured action on an arbitrary word, evaluated in the quotient.
    fn act_word(
        &self,
        h: usize,
        w: &[u16],
        memo: &mut HashMap<(usize, Vec<u16>), SparseVec>,
    ) -> Result<SparseVec> {
        if w.is_empty() {
            return Ok(
                SparseVec::unit(0, self.table.field().one()).scale(&self.action.hopf.counit[h])
            );
        }
        if let Some(v) = memo.get(&(h, w.to_vec())) {
            return Ok(v.clone());
        }
        let g = w[0] as usize;
        let rd = Word(w[1..].to_vec()).degree(self.table.degrees());
        let mut acc = Accumulator::new();
        for (h1, h2, c) in &self.action.hopf.coproduct[h] {
            let (e, a) = self.gen_images[*h1][g].clone();
            if a.is_zero() {
                continue;
            }
            let b = self.act_word(*h2, &w[1..], memo)?;
            acc.add_scaled(c, &self.table.checked_mul(e, &a, rd, &b)?);
        }
        let v = acc.finish();
        memo.insert((h, w.to_vec()), v.clone());
        Ok(v)
    }

    /// Checks that each Hopf basis element maps every relation into the relation ideal.
    pub fn validate_action(&self) -> Result<()> {
        let p = self.table.presentation();
        let mut memo = HashMap::new();
        for h in 0..self.action.hopf.dim() {
            for (ri, r) in p.relations().iter().enumerate() {
                let Some(d) = p.relation_degree(ri) else {
                    continue;
                };
                if d > self.table.max_degree() {
                    continue;
                }
                let mut acc = Accumulator::new();
                for (c, w) in &r.terms {
                    acc.add_scaled(c, &self.act_word(h, &w.0, &mut memo)?);
                }
                if !acc.finish().is_zero() {
                    return Err(Error::InvalidAction(format!(
                        "basis element {} does not preserve relation {ri}",
                        self.action.hopf.labels[h]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrix of the integral on `A_d`: column `j` is `Λ · b_j`.
    pub fn reynolds_projector(&self, d: usize) -> Vec<SparseVec> {
        let lam = &self.action.hopf.integral;
        (0..self.table.dim(d))
            .map(|j| {
                let mut acc = Accumulator::new();
                for (i, c) in lam.iter() {
                    acc.add_scaled(c, &self.matrices[d][i][j]);
                }
                acc.finish()
            })
            .collect()
    }

    /// Reduced echelon basis of the invariants in degree `d`.
    pub fn invariant_subspace(&self, d: usize) -> Vec<SparseVec> {
        Echelon::from_vectors(self.reynolds_projector(d)).rref()
    }

    pub fn is_invariant(&self, d: usize, v: &SparseVec) -> bool {
        (0..self.action.hopf.dim()).all(|h| {
            let hv = self.act(&SparseVec::unit(h, self.table.field().one()), d, v);
            hv == v.scale(&self.action.hopf.counit[h])
        })
    }
}

/// Apply a column-convention matrix (given by column images) to a vector.
pub fn apply_columns(cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut acc = Accumulator::new();
    for (j, c) in v.iter() {
        acc.add_scaled(c, &cols[j]);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;

    fn q() -> Field {
        Field::rationals()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| q().from_int(x)).collect())
            .collect()
    }

    #[test]
    fn z2_group_algebra_validates() {
        let g = MatrixGroup::close(&q(), &[m(&[&[-1]])], 1, 10).unwrap();
        assert_eq!(g.order(), 2);
        let h = g.group_algebra(&q()).unwrap();
        h.validate().unwrap();
    }

    #[test]
    fn unnormalized_integral_rejected() {
        let g = MatrixGroup::close(&q(), &[m(&[&[-1]])], 1, 10).unwrap();
        let mut h = g.group_algebra(&q()).unwrap();
        h.integral = SparseVec::from_sorted(vec![(0, q().one()), (1, q().one())]);
        let e = h.validate().unwrap_err();
        assert!(e.to_string().contains("integral normalization"), "{e}");
    }

    #[test]
    fn swap_on_skew_plane() {
        let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["xy + yx"]).unwrap();
        let t = BasisTable::build(&p, 3).unwrap();
        let a = ActionData::from_group(&p, &[m(&[&[0, 1], &[1, 0]])], 10).unwrap();
        let da = DegreeActions::new(&a, &t).unwrap();
        da.validate_action().unwrap();
        let sigma = &da.extend_action(2)[1];
        let (_, xx) = t.element("x^2").unwrap();
        let (_, yy) = t.element("y^2").unwrap();
        let (_, xy) = t.element("xy").unwrap();
        assert_eq!(apply_columns(sigma, &xx), yy);
        assert_eq!(apply_columns(sigma, &xy), xy.neg());
        let r1 = da.invariant_subspace(1);
        assert_eq!(r1.len(), 1);
        assert_eq!(r1[0], t.element("x + y").unwrap().1);
    }

    #[test]
    fn sign_on_polynomial_ring() {
        let p = AlgebraPresentation::parse(q(), &[("x", 1)], &[]).unwrap();
        let t = BasisTable::build(&p, 3).unwrap();
        let a = ActionData::from_group(&p, &[m(&[&[-1]])], 10).unwrap();
        let da = DegreeActions::new(&a, &t).unwrap();
        assert!(da.reynolds_projector(1).iter().all(|v| v.is_zero()));
        assert_eq!(
            da.reynolds_projector(0),
            vec![SparseVec::unit(0, q().one())]
        );
    }

    #[test]
    fn non_invertible_refused() {
        let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["xy - yx"]).unwrap();
        let e = ActionData::from_group(&p, &[m(&[&[1, 0], &[1, 0]])], 10).unwrap_err();
        assert!(matches!(e, Error::InvalidAction(_)));
    }

    #[test]
    fn free_algebra_sign_invariants() {
        let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &[]).unwrap();
        let t = BasisTable::build(&p, 3).unwrap();
        let a = ActionData::from_group(&p, &[m(&[&[-1, 0], &[0, 1]])], 10).unwrap();
        let da = DegreeActions::new(&a, &t).unwrap();
        let inv = da.invariant_subspace(3);
        let got: Vec<String> = inv.iter().map(|v| t.render(3, v)).collect();
        assert_eq!(got, vec!["x^2y", "xyx", "yx^2", "y^3"]);
    }
}
