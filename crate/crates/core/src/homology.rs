//! Graded modules, minimal free resolutions computed degree by degree, Betti tables, and the
//! induced action of an outer algebra on Tor.

use crate::algebra::{AlgebraPresentation, BasisTable, GradedAlgebra};
use crate::bounds::{ExtRat, Val};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::Side;
use crate::linalg::{combine, complement, Accumulator, Echelon, LinearSolve, SparseVec};
use crate::series::HilbertSeries;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A graded module over a graded algebra, known through `max_degree`.
pub trait GradedModule: Sync {
    fn field(&self) -> &Field;
    fn max_degree(&self) -> usize;
    fn dim(&self, d: usize) -> usize;
    /// Ring element `a` of degree `e` acting on `m` of degree `d` (on the module's side).
    fn act(&self, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec;
}

/// The trivial module `k` concentrated in degree 0.
pub struct TrivialModule {
    field: Field,
    max_degree: usize,
}

impl TrivialModule {
    pub fn new(field: Field, max_degree: usize) -> Self {
        TrivialModule { field, max_degree }
    }
}

impl GradedModule for TrivialModule {
    fn field(&self) -> &Field {
        &self.field
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, d: usize) -> usize {
        usize::from(d == 0)
    }

    fn act(&self, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec {
        if e == 0 && d == 0 {
            match a.get(0) {
                Some(c) => m.scale(c),
                None => SparseVec::new(),
            }
        } else {
            SparseVec::new()
        }
    }
}

/// An algebra `B` regarded as a module over `R` through a graded map `R → B`.
pub struct RestrictedModule<'a> {
    target: &'a dyn GradedAlgebra,
    /// `map[d][j]` = image of basis element `j` of `R_d`, in coordinates of `B_d`.
    map: Vec<Vec<SparseVec>>,
    side: Side,
}

impl<'a> RestrictedModule<'a> {
    pub fn new(target: &'a dyn GradedAlgebra, map: Vec<Vec<SparseVec>>, side: Side) -> Self {
        RestrictedModule { target, map, side }
    }

    pub fn target(&self) -> &'a dyn GradedAlgebra {
        self.target
    }
}

impl GradedModule for RestrictedModule<'_> {
    fn field(&self) -> &Field {
        self.target.field()
    }

    fn max_degree(&self) -> usize {
        self.target.max_degree().min(self.map.len() - 1)
    }

    fn dim(&self, d: usize) -> usize {
        self.target.dim(d)
    }

    fn act(&self, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec {
        let fa = combine(&self.map[e], a);
        match self.side {
            Side::Left => self.target.mul(e, &fa, d, m),
            Side::Right => self.target.mul(d, m, e, &fa),
        }
    }
}

/// A free module `⊕ A(−σ_k)`; coordinates in degree `d` are concatenated component blocks.
pub struct FreeModule<'a> {
    ring: &'a dyn GradedAlgebra,
    side: Side,
    shifts: Vec<usize>,
    max_degree: usize,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl<'a> FreeModule<'a> {
    pub fn new(
        ring: &'a dyn GradedAlgebra,
        side: Side,
        shifts: Vec<usize>,
        max_degree: usize,
    ) -> Self {
        let mut offsets = Vec::with_capacity(max_degree + 1);
        let mut dims = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let mut off = Vec::with_capacity(shifts.len());
            let mut c = 0;
            for &s in &shifts {
                off.push(c);
                if s <= d {
                    c += ring.dim(d - s);
                }
            }
            offsets.push(off);
            dims.push(c);
        }
        FreeModule {
            ring,
            side,
            shifts,
            max_degree,
            offsets,
            dims,
        }
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn offset(&self, d: usize, k: usize) -> usize {
        self.offsets[d][k]
    }

    /// Component `k` of `v ∈ F_d`, as an element of `A_{d−σ_k}`.
    pub fn component(&self, d: usize, k: usize, v: &SparseVec) -> SparseVec {
        let lo = self.offsets[d][k];
        let hi = lo + self.ring.dim(d - self.shifts[k]);
        SparseVec::from_sorted(
            v.iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, c)| (i - lo, c.clone()))
                .collect(),
        )
    }

    /// Decompose a basis index of `F_d` into (component, ring basis index).
    pub fn locate(&self, d: usize, idx: usize) -> (usize, usize) {
        let k = self.offsets[d].partition_point(|&o| o <= idx) - 1;
        // skip empty components that share the same offset
        let mut k = k;
        while self.shifts[k] > d || idx - self.offsets[d][k] >= self.ring.dim(d - self.shifts[k]) {
            k -= 1;
        }
        (k, idx - self.offsets[d][k])
    }

    /// Element `Σ c·b` placed in component `k` (ring element of degree `d − σ_k`).
    pub fn embed(&self, d: usize, k: usize, a: &SparseVec) -> SparseVec {
        a.shift(self.offsets[d][k])
    }
}

impl GradedModule for FreeModule<'_> {
    fn field(&self) -> &Field {
        self.ring.field()
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    fn act(&self, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for k in 0..self.shifts.len() {
            let s = self.shifts[k];
            if s > d {
                continue;
            }
            let c = self.component(d, k, m);
            if c.is_zero() {
                continue;
            }
            let p = match self.side {
                Side::Left => self.ring.mul(e, a, d - s, &c),
                Side::Right => self.ring.mul(d - s, &c, e, a),
            };
            acc.add_scaled(&self.ring.field().one(), &p.shift(self.offsets[d + e][k]));
        }
        acc.finish()
    }
}

/// Cokernel of a map of free modules: `F / (submodule generated by relations)`.
pub struct CokernelModule<'a> {
    free: FreeModule<'a>,
    echelons: Vec<Echelon>,
    positions: Vec<BTreeMap<usize, usize>>,
    dims: Vec<usize>,
}

impl<'a> CokernelModule<'a> {
    /// `relations` are `(degree, element of F_degree)`.
    pub fn new(
        ring: &'a dyn GradedAlgebra,
        side: Side,
        shifts: Vec<usize>,
        relations: &[(usize, SparseVec)],
        max_degree: usize,
    ) -> Self {
        let free = FreeModule::new(ring, side, shifts, max_degree);
        let one = ring.field().one();
        let mut echelons = Vec::with_capacity(max_degree + 1);
        let mut positions = Vec::with_capacity(max_degree + 1);
        let mut dims = Vec::with_capacity(max_degree + 1);
        for d in 0..=max_degree {
            let mut ech = Echelon::new();
            for (rd, r) in relations {
                if *rd > d {
                    continue;
                }
                for b in 0..ring.dim(d - rd) {
                    ech.insert(free.act(d - rd, &SparseVec::unit(b, one.clone()), *rd, r));
                }
            }
            let pos: BTreeMap<usize, usize> = (0..free.dim(d))
                .filter(|&i| !ech.is_pivot(i))
                .enumerate()
                .map(|(k, i)| (i, k))
                .collect();
            dims.push(pos.len());
            echelons.push(ech);
            positions.push(pos);
        }
        CokernelModule {
            free,
            echelons,
            positions,
            dims,
        }
    }

    /// Class of a free-module element of degree `d`.
    pub fn project(&self, d: usize, v: &SparseVec) -> SparseVec {
        let r = self.echelons[d].reduce(v);
        SparseVec::from_sorted(
            r.iter()
                .map(|(i, c)| (self.positions[d][&i], c.clone()))
                .collect(),
        )
    }

    fn lift(&self, d: usize, m: &SparseVec) -> SparseVec {
        let inv: Vec<usize> = self.positions[d].keys().copied().collect();
        SparseVec::from_sorted(m.iter().map(|(k, c)| (inv[k], c.clone())).collect())
    }
}

impl GradedModule for CokernelModule<'_> {
    fn field(&self) -> &Field {
        self.free.field()
    }

    fn max_degree(&self) -> usize {
        self.free.max_degree
    }

    fn dim(&self, d: usize) -> usize {
        self.dims.get(d).copied().unwrap_or(0)
    }

    fn act(&self, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec {
        let v = self.free.act(e, a, d, &self.lift(d, m));
        self.project(d + e, &v)
    }
}

/// One homological step `F_i` with its differential into `F_{i−1}` (or the module for `i = 0`).
pub struct Step {
    pub shifts: Vec<usize>,
    /// Image of each free generator, an element of the target in degree `shifts[k]`.
    pub images: Vec<SparseVec>,
    solvers: Vec<LinearSolve>,
    pub kernel_dims: Vec<usize>,
}

/// A minimal graded free resolution, truncated in internal degree and homological index.
pub struct Resolution<'a> {
    pub ring: &'a dyn GradedAlgebra,
    pub module: &'a dyn GradedModule,
    pub side: Side,
    pub max_degree: usize,
    pub steps: Vec<Step>,
    frees: Vec<FreeModule<'a>>,
}

fn minimal_generators(
    m: &dyn GradedModule,
    spaces: &[Vec<SparseVec>],
    gens: &[(usize, SparseVec)],
) -> Vec<(usize, SparseVec)> {
    let mut out = Vec::new();
    for d in 0..spaces.len() {
        let mut span = Echelon::new();
        for (e, x) in gens {
            if *e == 0 || *e > d {
                continue;
            }
            for v in &spaces[d - e] {
                span.insert(m.act(*e, x, d - e, v));
            }
        }
        for v in complement(&span, spaces[d].iter().cloned()) {
            out.push((d, v));
        }
    }
    out
}

impl<'a> Resolution<'a> {
    /// Resolve `module` over `ring` through homological index `p_max` and internal degree
    /// `min(ring, module truncation)`.
    pub fn compute(
        ring: &'a dyn GradedAlgebra,
        module: &'a dyn GradedModule,
        side: Side,
        p_max: usize,
    ) -> Self {
        let n = ring.max_degree().min(module.max_degree());
        let one = ring.field().one();
        let gens = ring.algebra_generators();
        let units: Vec<Vec<SparseVec>> = (0..=n)
            .map(|d| {
                (0..module.dim(d))
                    .map(|i| SparseVec::unit(i, one.clone()))
                    .collect()
            })
            .collect();
        let g0 = minimal_generators(module, &units, &gens);
        let mut res = Resolution {
            ring,
            module,
            side,
            max_degree: n,
            steps: Vec::new(),
            frees: Vec::new(),
        };
        let mut next: Vec<(usize, SparseVec)> = g0;
        for i in 0..=p_max {
            let shifts: Vec<usize> = next.iter().map(|(d, _)| *d).collect();
            let images: Vec<SparseVec> = next.into_iter().map(|(_, v)| v).collect();
            let free = FreeModule::new(ring, side, shifts.clone(), n);
            let mut solvers = Vec::with_capacity(n + 1);
            let mut kernels: Vec<Vec<SparseVec>> = Vec::with_capacity(n + 1);
            for d in 0..=n {
                let mut cols = Vec::with_capacity(free.dim(d));
                for (k, &s) in shifts.iter().enumerate() {
                    if s > d {
                        continue;
                    }
                    for b in 0..ring.dim(d - s) {
                        let bv = SparseVec::unit(b, one.clone());
                        cols.push(res.target_act(i, d - s, &bv, s, &images[k]));
                    }
                }
                let ls = LinearSolve::new(free.dim(d), cols, &one);
                kernels.push(ls.kernel());
                solvers.push(ls);
            }
            next = if i < p_max {
                minimal_generators(&free, &kernels, &gens)
            } else {
                Vec::new()
            };
            res.steps.push(Step {
                shifts,
                images,
                solvers,
                kernel_dims: kernels.iter().map(|k| k.len()).collect(),
            });
            res.frees.push(free);
        }
        res
    }

    fn target_act(&self, i: usize, e: usize, a: &SparseVec, d: usize, m: &SparseVec) -> SparseVec {
        if i == 0 {
            self.module.act(e, a, d, m)
        } else {
            self.frees[i - 1].act(e, a, d, m)
        }
    }

    pub fn free(&self, i: usize) -> &FreeModule<'a> {
        &self.frees[i]
    }

    /// Apply the differential `d_i` to an element of `F_i` of degree `d`.
    pub fn apply(&self, i: usize, d: usize, v: &SparseVec) -> SparseVec {
        let f = &self.frees[i];
        let one = self.ring.field().one();
        let mut acc = Accumulator::new();
        for (idx, c) in v.iter() {
            let (k, b) = f.locate(d, idx);
            let s = f.shifts[k];
            let img = self.target_act(
                i,
                d - s,
                &SparseVec::unit(b, one.clone()),
                s,
                &self.steps[i].images[k],
            );
            acc.add_scaled(c, &img);
        }
        acc.finish()
    }

    /// Checks `d_{i−1} ∘ d_i = 0` on every generator.
    pub fn check_complex(&self) -> bool {
        (1..self.steps.len()).all(|i| {
            self.steps[i]
                .shifts
                .iter()
                .zip(&self.steps[i].images)
                .all(|(&s, v)| self.apply(i - 1, s, v).is_zero())
        })
    }

    /// Every differential entry lies in the augmentation ideal.
    pub fn check_minimal(&self) -> bool {
        (1..self.steps.len()).all(|i| {
            let prev = &self.frees[i - 1];
            self.steps[i]
                .shifts
                .iter()
                .zip(&self.steps[i].images)
                .all(|(&s, v)| {
                    prev.shifts
                        .iter()
                        .enumerate()
                        .filter(|(_, &t)| t == s)
                        .all(|(j, _)| v.get(prev.offset(s, j)).is_none())
                })
        })
    }

    /// `Σ_{i≤p} (−1)^i dim F_{i,d} = dim M_d + (−1)^p dim ker(d_p)_d` in each degree.
    pub fn euler_identity_holds(&self) -> bool {
        let p = self.steps.len() - 1;
        (0..=self.max_degree).all(|d| {
            let mut s: i64 = 0;
            for (i, f) in self.frees.iter().enumerate() {
                let x = f.dim(d) as i64;
                s += if i % 2 == 0 { x } else { -x };
            }
            let k = self.steps[p].kernel_dims[d] as i64;
            s == self.module.dim(d) as i64 + if p.is_multiple_of(2) { k } else { -k }
        })
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable {
            max_degree: self.max_degree,
            rows: self
                .steps
                .iter()
                .map(|s| {
                    let mut m = BTreeMap::new();
                    for &d in &s.shifts {
                        *m.entry(d).or_insert(0usize) += 1;
                    }
                    m
                })
                .collect(),
            syzygies_beyond: self
                .steps
                .last()
                .is_some_and(|s| s.kernel_dims.iter().any(|&k| k > 0)),
        }
    }

    /// Action of an outer algebra on `Tor_i` induced by lifting a module endomorphism to the resolution.
    ///
    /// `outer(g, d, m)` applies outer generator `g` (degree `outer_degrees[g]`) to `m ∈ M_d`; it must
    /// commute with the ring action.
    pub fn tor_action(
        &self,
        outer_degrees: &[usize],
        outer: &dyn Fn(usize, usize, &SparseVec) -> SparseVec,
    ) -> Result<Vec<TorModule>> {
        let n = self.max_degree;
        let mut out: Vec<TorModule> = self
            .steps
            .iter()
            .map(|s| TorModule {
                shifts: s.shifts.clone(),
                generators: outer_degrees
                    .iter()
                    .map(|&e| (e, vec![None; s.shifts.len()]))
                    .collect(),
            })
            .collect();
        for (g, &e) in outer_degrees.iter().enumerate() {
            let mut prev: Vec<Option<SparseVec>> = Vec::new();
            for (i, step) in self.steps.iter().enumerate() {
                let mut cur: Vec<Option<SparseVec>> = Vec::with_capacity(step.shifts.len());
                for (k, &s) in step.shifts.iter().enumerate() {
                    let d = s + e;
                    if d > n {
                        cur.push(None);
                        continue;
                    }
                    let y = if i == 0 {
                        Some(outer(g, s, &step.images[k]))
                    } else {
                        self.lift_image(i, s, &step.images[k], e, &prev)
                    };
                    let x = match y {
                        None => None,
                        Some(y) => Some(step.solvers[d].preimage(&y).ok_or_else(|| {
                            Error::Internal(format!(
                                "chain map does not lift at step {i}, degree {d}"
                            ))
                        })?),
                    };
                    cur.push(x);
                }
                let f = &self.frees[i];
                let mats = &mut out[i].generators[g].1;
                for (k, x) in cur.iter().enumerate() {
                    mats[k] = x.as_ref().map(|x| {
                        let d = step.shifts[k] + e;
                        SparseVec::from_pairs(
                            step.shifts
                                .iter()
                                .enumerate()
                                .filter(|(_, &t)| t == d)
                                .filter_map(|(j, _)| x.get(f.offset(d, j)).map(|c| (j, c.clone()))),
                        )
                    });
                }
                prev = cur;
            }
        }
        Ok(out)
    }

    /// `λ_{i−1}(d_i(e_k))`, using that `λ_{i−1}` commutes with the ring action.
    fn lift_image(
        &self,
        i: usize,
        s: usize,
        image: &SparseVec,
        e: usize,
        prev: &[Option<SparseVec>],
    ) -> Option<SparseVec> {
        let f = &self.frees[i - 1];
        let one = self.ring.field().one();
        let mut acc = Accumulator::new();
        for (idx, c) in image.iter() {
            let (j, b) = f.locate(s, idx);
            let lj = prev[j].as_ref()?;
            let sj = f.shifts[j];
            let moved = f.act(s - sj, &SparseVec::unit(b, one.clone()), sj + e, lj);
            acc.add_scaled(c, &moved);
        }
        Some(acc.finish())
    }
}

/// `Tor_i` as a graded vector space with basis the free generators of `F_i`, together with the
/// action of each outer generator (`None` where the target degree is beyond the truncation).
#[derive(Clone, Debug)]
pub struct TorModule {
    pub shifts: Vec<usize>,
    /// `(degree, images of each basis element)` per outer generator.
    pub generators: Vec<(usize, Vec<Option<SparseVec>>)>,
}

/// Annihilator of a family of Tor modules inside the outer algebra, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Annihilator {
    /// `dim J_e` where known.
    pub ideal_dims: Vec<Option<usize>>,
    pub quotient_dims: Vec<Option<usize>>,
    /// `deg A/J` if every degree was decided; `None` means `A/J = 0`.
    pub quotient_degree: Option<usize>,
    pub complete: bool,
}

impl Annihilator {
    /// Observed `deg A/J` as a bound input; undecided degrees make it unavailable.
    pub fn val(&self) -> Option<Val> {
        self.complete
            .then(|| Val::observed(ExtRat::from_opt(self.quotient_degree)))
    }
}

/// `J = {a : a·t = 0 for all t}` for outer action from `side_of_outer`.
pub fn annihilator(outer: &BasisTable, tors: &[&TorModule], outer_side: Side) -> Annihilator {
    let n = outer.max_degree();
    let one = outer.field().one();
    let mut ideal_dims = Vec::with_capacity(n + 1);
    let mut quotient_dims = Vec::with_capacity(n + 1);
    let mut complete = true;
    for e in 0..=n {
        let words = outer.basis_words(e);
        let mut images: Vec<SparseVec> = Vec::with_capacity(words.len());
        let mut unknown = false;
        for w in words {
            let mut acc: Vec<(usize, crate::field::Scalar)> = Vec::new();
            let mut base = 0usize;
            for tor in tors {
                let tdim = tor.shifts.len();
                for t in 0..tdim {
                    let mut v = Some(SparseVec::unit(t, one.clone()));
                    let letters: Vec<u16> = match outer_side {
                        Side::Left => w.0.iter().rev().copied().collect(),
                        Side::Right => w.0.clone(),
                    };
                    for g in letters {
                        v = v.and_then(|v| {
                            let mats = &tor.generators[g as usize].1;
                            let mut a = Accumulator::new();
                            for (j, c) in v.iter() {
                                match &mats[j] {
                                    Some(img) => a.add_scaled(c, img),
                                    None => return None,
                                }
                            }
                            Some(a.finish())
                        });
                    }
                    match v {
                        Some(v) => {
                            for (j, c) in v.iter() {
                                acc.push((base + t * tdim + j, c.clone()));
                            }
                        }
                        None => unknown = true,
                    }
                }
                base += tdim * tdim;
            }
            images.push(SparseVec::from_pairs(acc));
        }
        if unknown {
            complete = false;
            ideal_dims.push(None);
            quotient_dims.push(None);
            continue;
        }
        let ls = LinearSolve::new(words.len(), images, &one);
        let k = ls.kernel().len();
        ideal_dims.push(Some(k));
        quotient_dims.push(Some(words.len() - k));
    }
    let quotient_degree = quotient_dims.iter().rposition(|q| q.is_none_or(|x| x > 0));
    Annihilator {
        ideal_dims,
        quotient_dims,
        quotient_degree,
        complete,
    }
}

/// Shifts of a minimal resolution: `rows[i]` maps internal degree to multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub max_degree: usize,
    pub rows: Vec<BTreeMap<usize, usize>>,
    /// The last computed kernel is nonzero, so the resolution continues past the last index.
    pub syzygies_beyond: bool,
}

impl BettiTable {
    /// `t_i`: largest shift at step `i`, `None` when `Tor_i` vanishes through the truncation.
    pub fn t(&self, i: usize) -> Option<usize> {
        self.rows.get(i).and_then(|r| r.keys().next_back().copied())
    }

    pub fn ts(&self) -> Vec<Option<usize>> {
        (0..self.rows.len()).map(|i| self.t(i)).collect()
    }

    /// Smallest shift at step `i` (the `ged` of `Tor_i`).
    pub fn ged(&self, i: usize) -> Option<usize> {
        self.rows.get(i).and_then(|r| r.keys().next().copied())
    }

    /// `sup (t_i − i)` over computed steps.
    pub fn torreg(&self) -> Option<i64> {
        (0..self.rows.len())
            .filter_map(|i| self.t(i).map(|t| t as i64 - i as i64))
            .max()
    }

    /// Index of the last nonzero step, when the resolution stops inside the computed range.
    pub fn length(&self) -> Option<usize> {
        if self.syzygies_beyond {
            return None;
        }
        self.rows.iter().rposition(|r| !r.is_empty())
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rows.get(i).map_or(0, |r| r.values().sum())
    }

    /// Plain-text grid: rows are homological indices, columns internal degrees.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let w = 4;
        let _ = write!(s, "{:>w$}", "i\\d");
        for d in 0..=self.max_degree {
            let _ = write!(s, "{d:>w$}");
        }
        s.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(s, "{i:>w$}");
            for d in 0..=self.max_degree {
                match row.get(&d) {
                    Some(c) => {
                        let _ = write!(s, "{c:>w$}");
                    }
                    None => {
                        let _ = write!(s, "{:>w$}", ".");
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Gorenstein symmetry read off a resolution of `k`: `F_n = A(−ℓ)` and
/// `shifts(F_i) = ℓ − shifts(F_{n−i})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AsRegularCertificate {
    pub gldim: usize,
    pub as_index: usize,
}

/// Certificate for an algebra asserted AS regular, with `n` the asserted global dimension
/// or the observed length of the resolution.
pub fn as_regular_certificate(
    b: &BettiTable,
    gldim: Option<usize>,
) -> Option<AsRegularCertificate> {
    let n = gldim.or_else(|| b.length())?;
    if n >= b.rows.len() || b.rank(n) != 1 {
        return None;
    }
    if b.rows[n + 1..].iter().any(|r| !r.is_empty()) {
        return None;
    }
    let l = b.t(n)?;
    let shifts = |i: usize| -> Vec<usize> {
        b.rows[i]
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c))
            .collect()
    };
    for i in 0..=n {
        let mut mirrored: Vec<usize> = shifts(n - i)
            .into_iter()
            .map(|s| l.checked_sub(s))
            .collect::<Option<_>>()?;
        mirrored.sort_unstable();
        if shifts(i) != mirrored {
            return None;
        }
    }
    Some(AsRegularCertificate {
        gldim: n,
        as_index: l,
    })
}

/// `CMreg = gldim + deg_t h_A(t)` for an algebra asserted AS regular.
pub fn cmreg_asregular(
    p: &AlgebraPresentation,
    series: &HilbertSeries,
    gldim: Option<usize>,
) -> Result<i64> {
    if p.assertions.as_regular != Some(true) {
        return Err(Error::NotApplicable(
            "the algebra is not asserted AS regular".into(),
        ));
    }
    let g = gldim
        .or(p.assertions.gldim)
        .ok_or_else(|| Error::NotApplicable("global dimension unknown".into()))?;
    Ok(g as i64 + series.a_invariant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraPresentation;

    fn table(gens: &[(&str, usize)], rels: &[&str], n: usize) -> BasisTable {
        let p = AlgebraPresentation::parse(Field::rationals(), gens, rels).unwrap();
        BasisTable::build(&p, n).unwrap()
    }

    #[test]
    fn polynomial_ring_in_one_variable() {
        let t = table(&[("x", 1)], &[], 5);
        let k = TrivialModule::new(Field::rationals(), 5);
        let r = Resolution::compute(&t, &k, Side::Left, 3);
        let b = r.betti();
        assert_eq!(b.ts(), vec![Some(0), Some(1), None, None]);
        assert!(r.check_complex() && r.check_minimal() && r.euler_identity_holds());
    }

    #[test]
    fn skew_plane_is_koszul() {
        let t = table(&[("x", 1), ("y", 1)], &["xy + yx"], 8);
        let k = TrivialModule::new(Field::rationals(), 8);
        let r = Resolution::compute(&t, &k, Side::Right, 4);
        let b = r.betti();
        assert_eq!(b.ts(), vec![Some(0), Some(1), Some(2), None, None]);
        assert_eq!(b.rank(1), 2);
        assert_eq!(b.torreg(), Some(0));
        assert!(r.check_complex() && r.check_minimal());
    }

    #[test]
    fn down_up_resolution() {
        let t = table(&[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"], 8);
        let k = TrivialModule::new(Field::rationals(), 8);
        let r = Resolution::compute(&t, &k, Side::Left, 4);
        let b = r.betti();
        assert_eq!(b.ts(), vec![Some(0), Some(1), Some(3), Some(4), None]);
        assert_eq!(b.torreg(), Some(1));
        assert!(r.check_complex() && r.check_minimal() && r.euler_identity_holds());
    }

    #[test]
    fn cokernel_module_resolution() {
        // k[x,y]/(x) over k[x,y]: one relation, t_1 = 1
        let t = table(&[("x", 1), ("y", 1)], &["xy - yx"], 6);
        let (_, x) = t.element("x").unwrap();
        let m = CokernelModule::new(&t, Side::Left, vec![0], &[(1, x)], 6);
        assert_eq!((0..=6).map(|d| m.dim(d)).collect::<Vec<_>>(), vec![1; 7]);
        let r = Resolution::compute(&t, &m, Side::Left, 3);
        assert_eq!(r.betti().ts(), vec![Some(0), Some(1), None, None]);
    }
}
