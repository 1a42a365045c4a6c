//! Orchestration: from a compiled fixture to a report of every requested quantity, with
//! certification flags and the bound checker's inputs.

use crate::algebra::phi::phi_n;
use crate::algebra::{AlgebraPresentation, BasisTable, GradedAlgebra, NcPolynomial, Word};
use crate::bounds::{
    check_bounds, BoundInputs, BoundReport, CentralData, ExtRat, Flag, Hypotheses, SideData, TSeq,
    Val,
};
use crate::error::{Error, Result};
use crate::homology::{
    annihilator, as_regular_certificate, Annihilator, AsRegularCertificate, BettiTable,
    CokernelModule, Resolution, RestrictedModule, TorModule, TrivialModule,
};
use crate::hopf::{ActionData, DegreeActions};
use crate::input::{Expectations, MapAssertions};
use crate::invariants::{Certification, HilbertIdeal, InvariantRing, Side};
use crate::linalg::{complement, Echelon, SparseVec};
use crate::series::{product_denominator, ratio_at_one, HilbertSeries, SeriesSummary};
use num_rational::BigRational;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameters {
    pub max_degree: usize,
    pub max_homological: usize,
    pub word_cap: usize,
    pub group_cap: usize,
    pub denominator_hint: Option<Vec<usize>>,
    pub invariant_denominator_hint: Option<Vec<usize>>,
    pub guard: usize,
    pub truncate_at: Option<usize>,
}

/// A second algebra `S` and the images of its generators in `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapData {
    pub source: AlgebraPresentation,
    pub images: Vec<NcPolynomial>,
    pub assertions: MapAssertions,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub presentation: AlgebraPresentation,
    pub action: ActionData,
    pub map: Option<MapData>,
    pub central: Option<CentralData>,
    pub params: Parameters,
    pub commands: Vec<String>,
    pub expect: Expectations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    Basis,
    Invariants,
    Beta,
    Tau,
    HilbertIdeal,
    Annihilators,
    Resolve,
    Betti,
    Torreg,
    Cmreg,
    Series,
    CheckBounds,
}

impl Command {
    pub const ALL: [Command; 13] = [
        Command::Validate,
        Command::Basis,
        Command::Invariants,
        Command::Beta,
        Command::Tau,
        Command::HilbertIdeal,
        Command::Annihilators,
        Command::Resolve,
        Command::Betti,
        Command::Torreg,
        Command::Cmreg,
        Command::Series,
        Command::CheckBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Basis => "basis",
            Command::Invariants => "invariants",
            Command::Beta => "beta",
            Command::Tau => "tau",
            Command::HilbertIdeal => "hilbert-ideal",
            Command::Annihilators => "annihilators",
            Command::Resolve => "resolve",
            Command::Betti => "betti",
            Command::Torreg => "torreg",
            Command::Cmreg => "cmreg",
            Command::Series => "series",
            Command::CheckBounds => "check-bounds",
        }
    }

    pub fn parse(s: &str) -> Result<Command> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::schema("/commands", format!("unknown command '{s}'")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which stages a set of commands and expectations needs.
#[derive(Clone, Copy, Debug, Default)]
struct Needs {
    basis: bool,
    phi: bool,
    invariants: bool,
    series: bool,
    res_t: bool,
    res_r: bool,
    annihilators: bool,
    source: bool,
    truncated: bool,
}

impl Needs {
    fn from(cmds: &BTreeSet<Command>, expect: &Expectations) -> Needs {
        use Command::*;
        let has = |c: Command| cmds.contains(&c);
        let bounds = has(CheckBounds) || expect.rows_hold.is_some();
        let mut n = Needs {
            basis: has(Basis) || expect.algebra_dims.is_some(),
            phi: has(Basis) || expect.phi.is_some(),
            invariants: true,
            series: has(Series) || has(Cmreg) || bounds || expect.hilbert_ratio.is_some(),
            res_t: has(Resolve)
                || has(Betti)
                || has(Torreg)
                || has(Cmreg)
                || bounds
                || expect.tor_degrees.is_some(),
            res_r: has(Resolve) || has(Betti) || has(Torreg) || has(Annihilators) || bounds,
            annihilators: has(Annihilators) || bounds,
            source: bounds,
            truncated: expect.truncated_beta.is_some(),
        };
        if expect.cmreg.is_some() || expect.torreg.is_some() {
            n.res_t = true;
            n.series = true;
        }
        if cmds.iter().all(|c| matches!(c, Validate | Basis)) && !bounds && !n.series && !n.res_t {
            n.invariants = expect.invariant_dims.is_some()
                || expect.generators.is_some()
                || expect.generator_degrees.is_some()
                || expect.beta.is_some()
                || expect.tau.is_some()
                || expect.tau_op.is_some()
                || expect.quotient_dims.is_some()
                || expect.module_generators.is_some()
                || n.truncated;
        }
        n
    }
}

/// A value with its certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub value: Option<usize>,
    #[serde(flatten)]
    pub certification: Certification,
}

impl Quantity {
    fn val(&self) -> Val {
        match self.value {
            Some(v) => Val::int(v as i64, self.certification.is_certified()),
            None => Val::observed(ExtRat::PosInf),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub max_degree: usize,
    pub max_homological: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomRow {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementActionRow {
    pub by: String,
    pub element: String,
    pub image: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub hopf_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub hopf_valid: bool,
    pub hopf_axioms: Vec<AxiomRow>,
    pub action_valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action_error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub element_actions: Vec<ElementActionRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiRow {
    pub n: usize,
    pub dims: Vec<usize>,
    pub first_difference: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub dims: Vec<usize>,
    pub words: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub phi: Vec<PhiRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Element {
    pub degree: usize,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub dims: Vec<usize>,
    pub generators: Vec<Element>,
    pub new_generator_counts: Vec<usize>,
    pub beta: Quantity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertIdealSide {
    pub quotient_dims: Vec<usize>,
    /// Minimal generators of `A` as an `R`-module on the opposite side.
    pub module_generators: Vec<Element>,
    pub tau: Quantity,
    /// `t^R_0` of that module; equals `τ − 1`.
    pub t0: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertIdealReport {
    pub left: HilbertIdealSide,
    pub right: HilbertIdealSide,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub tau: Quantity,
    pub tau_op: Quantity,
    pub equal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesFit {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub algebra: SeriesFit,
    pub invariants: SeriesFit,
    /// `(h_A / h_R)(1)`, compared with `dim H`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_at_one: Option<String>,
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionChecks {
    pub complex: bool,
    pub minimal: bool,
    pub euler: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub name: String,
    pub shifts: Vec<Vec<usize>>,
    pub t: Vec<Option<usize>>,
    pub length: Option<usize>,
    pub certified: bool,
    pub checks: ResolutionChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiEntry {
    pub name: String,
    pub table: BettiTable,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorregEntry {
    pub name: String,
    pub value: Option<i64>,
    pub status: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmregValue {
    pub value: Option<i64>,
    pub certified: bool,
    pub by: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gldim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub as_index: Option<usize>,
    /// `gldim + a(A)` from the fitted series, as a cross-check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_series: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmregReport {
    pub algebra: CmregValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_algebra: Option<CmregValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorRow {
    pub i: usize,
    pub quotient_dims: Vec<Option<usize>>,
    pub quotient_degree: Option<usize>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorReport {
    /// `A/J_{H,i}` for the annihilators of `Tor^R_i(A, k)`.
    pub per_index: Vec<AnnihilatorRow>,
    /// `A/J_∞`, when the resolution of `A_R` stops in range.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinity: Option<AnnihilatorRow>,
    /// `deg A/J_{H,0} = deg A/J_H(A)`.
    pub zero_matches_hilbert_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedReport {
    pub at: usize,
    pub algebra_dims: Vec<usize>,
    pub invariant_dims: Vec<usize>,
    pub generator_degrees: Vec<usize>,
    pub beta: Option<usize>,
    /// The same action on the free algebra, truncated at the same degree.
    pub free_beta: Option<usize>,
    /// Largest degree below the truncation of a minimal generator of the untruncated free invariants.
    pub free_generators_below: Option<usize>,
    pub agrees_with_free_below: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceReport {
    pub dims: Vec<usize>,
    pub image_ranks: Vec<usize>,
    pub surjective_through_truncation: bool,
    pub generator_degrees: Vec<usize>,
    pub resolutions: Vec<ResolutionReport>,
    pub tor_generation: Vec<Option<usize>>,
    pub annihilator_quotients: Vec<Option<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub fixture: String,
    pub field: String,
    pub truncation: Truncation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<TauReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert_ideal: Option<HilbertIdealReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolutions: Option<Vec<ResolutionReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<BettiEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torreg: Option<Vec<TorregEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cmreg: Option<CmregReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilators: Option<AnnihilatorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated: Option<TruncatedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_algebra: Option<SourceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
}

impl Report {
    pub fn certified_violations(&self) -> usize {
        self.bounds
            .as_ref()
            .map_or(0, |b| b.certified_violations().count())
    }
}

/// A golden value that the computation did not reproduce.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

fn fit(dims: &[usize], hint: Option<&[usize]>, guard: usize) -> Result<HilbertSeries> {
    match hint {
        Some(parts) => HilbertSeries::fit(dims, &product_denominator(parts), guard),
        None => HilbertSeries::fit_auto(dims, guard, dims.len()),
    }
}

fn series_fit(r: &Result<HilbertSeries>) -> SeriesFit {
    match r {
        Ok(s) => SeriesFit {
            series: Some(s.summary()),
            error: None,
        },
        Err(e) => SeriesFit {
            series: None,
            error: Some(e.to_string()),
        },
    }
}

fn generator_vectors(table: &BasisTable) -> Result<Vec<(usize, SparseVec)>> {
    (0..table.degrees().len())
        .map(|g| table.normal_form_word(&Word(vec![g as u16])))
        .collect()
}

fn resolution_report(name: &str, r: &Resolution<'_>, certified: bool) -> ResolutionReport {
    let b = r.betti();
    ResolutionReport {
        name: name.to_string(),
        shifts: r.steps.iter().map(|s| s.shifts.clone()).collect(),
        t: b.ts(),
        length: b.length(),
        certified,
        checks: ResolutionChecks {
            complex: r.check_complex(),
            minimal: r.check_minimal(),
            euler: r.euler_identity_holds(),
        },
    }
}

fn observed_seq(b: &BettiTable) -> TSeq {
    b.ts()
        .into_iter()
        .map(|t| Some(Val::observed(ExtRat::from_opt(t))))
        .collect()
}

fn certified_seq(b: &BettiTable, cert: Option<&AsRegularCertificate>) -> TSeq {
    match cert {
        Some(_) => b
            .ts()
            .into_iter()
            .map(|t| Some(Val::certified(ExtRat::from_opt(t))))
            .collect(),
        None => observed_seq(b),
    }
}

/// `n` when the presentation is `k_{−1}[x₁,…,x_n]`: degree-one generators that pairwise
/// anticommute, with the dimensions of the skew polynomial ring.
pub fn skew_polynomial_rank(table: &BasisTable) -> Option<usize> {
    let degs = table.degrees();
    let n = degs.len();
    if n == 0 || degs.iter().any(|&d| d != 1) {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            if table.max_degree() < 2 {
                return None;
            }
            let (_, a) = table
                .normal_form_word(&Word(vec![i as u16, j as u16]))
                .ok()?;
            let (_, b) = table
                .normal_form_word(&Word(vec![j as u16, i as u16]))
                .ok()?;
            if !a.add(&b).is_zero() {
                return None;
            }
        }
    }
    let mut binom = vec![1usize; table.max_degree() + 1];
    for d in 1..binom.len() {
        binom[d] = binom[d - 1] * (n + d - 1) / d;
    }
    (table.dims() == binom).then_some(n)
}

/// `Verified(false)` on a non-commuting pair; `Verified(true)` when every pair was checked and
/// the generating set is complete.
fn commutativity(table: &BasisTable, gens: &[(usize, SparseVec)], complete: bool) -> Flag {
    let n = table.max_degree();
    let mut all = complete;
    for (i, (da, a)) in gens.iter().enumerate() {
        for (db, b) in &gens[i + 1..] {
            if da + db > n {
                all = false;
                continue;
            }
            if table.mul(*da, a, *db, b) != table.mul(*db, b, *da, a) {
                return Flag::Verified(false);
            }
        }
    }
    if all {
        Flag::Verified(true)
    } else {
        Flag::Unknown
    }
}

fn tau_quantity(h: &HilbertIdeal, table: &BasisTable) -> Quantity {
    let (value, certification) = h.tau(table);
    Quantity {
        value,
        certification,
    }
}

fn elements(table: &BasisTable, v: &[(usize, SparseVec)]) -> Vec<Element> {
    v.iter()
        .map(|(d, x)| Element {
            degree: *d,
            element: table.render(*d, x),
        })
        .collect()
}

/// `A` is finite-dimensional if it vanishes in `g` consecutive degrees, `g` the top generator degree.
fn finite_dimensional(table: &BasisTable) -> bool {
    let g = table.degrees().iter().copied().max().unwrap_or(1).max(1);
    let dims = table.dims();
    dims.windows(g).skip(1).any(|w| w.iter().all(|&x| x == 0))
}

fn annihilator_row(i: usize, a: &Annihilator) -> AnnihilatorRow {
    AnnihilatorRow {
        i,
        quotient_dims: a.quotient_dims.clone(),
        quotient_degree: a.quotient_degree,
        complete: a.complete,
    }
}

fn torreg_entry(name: &str, b: &BettiTable, certified: bool) -> TorregEntry {
    TorregEntry {
        name: name.into(),
        value: b.torreg(),
        status: if certified { "certified" } else { "observed" },
    }
}

fn cmreg_value(
    p: &AlgebraPresentation,
    cert: Option<&AsRegularCertificate>,
    series: Option<&HilbertSeries>,
) -> CmregValue {
    let gldim = p.assertions.gldim.or(cert.map(|c| c.gldim));
    let from_series = series.and_then(|s| crate::homology::cmreg_asregular(p, s, gldim).ok());
    match cert {
        Some(c) => CmregValue {
            value: Some(c.gldim as i64 - c.as_index as i64),
            certified: true,
            by: "symmetric resolution of k: gldim minus AS index".into(),
            gldim: Some(c.gldim),
            as_index: Some(c.as_index),
            from_series,
        },
        None => CmregValue {
            value: from_series,
            certified: false,
            by: if from_series.is_some() {
                "gldim plus a-invariant of the fitted series".into()
            } else {
                "not available: needs an AS regular assertion, gldim and a fitted series".into()
            },
            gldim,
            as_index: None,
            from_series,
        },
    }
}

/// Everything computed for one fixture and the commands asked of it.
pub fn analyze(fx: &Fixture, commands: &[Command]) -> Result<Report> {
    let cmds: BTreeSet<Command> = commands.iter().copied().collect();
    let needs = Needs::from(&cmds, &fx.expect);
    let n = fx.params.max_degree;
    let p_max = fx.params.max_homological;
    let guard = fx.params.guard;
    let table = BasisTable::build_with_cap(&fx.presentation, n, fx.params.word_cap)?;
    let field = table.field().clone();
    let actions = DegreeActions::new(&fx.action, &table)?;
    let hopf = &fx.action.hopf;
    let dim_h = hopf.dim();

    let action_check = actions.validate_action();
    let axioms = hopf.validation_report();
    if let Err(e) = &action_check {
        if !cmds.iter().all(|&c| c == Command::Validate) {
            return Err(e.clone());
        }
    }
    let mut element_actions = Vec::new();
    for ea in fx.expect.element_actions.iter().flatten() {
        let h = hopf
            .labels
            .iter()
            .position(|l| *l == ea.by)
            .ok_or_else(|| {
                Error::schema(
                    "/expect/element_actions",
                    format!("unknown Hopf label '{}'", ea.by),
                )
            })?;
        let (d, v) = table.element(&ea.element)?;
        let img = actions.act(&SparseVec::unit(h, field.one()), d, &v);
        let (_, want) = table.element(&ea.image)?;
        element_actions.push(ElementActionRow {
            by: ea.by.clone(),
            element: ea.element.clone(),
            image: table.render(d, &img),
            expected: ea.image.clone(),
            matches: img == want,
        });
    }
    let validation = Validation {
        hopf_dim: dim_h,
        group_order: hopf.group_order(),
        hopf_valid: axioms.iter().all(|a| a.passed),
        hopf_axioms: axioms
            .iter()
            .map(|a| AxiomRow {
                axiom: a.axiom.to_string(),
                passed: a.passed,
                witness: a.witness.clone(),
            })
            .collect(),
        action_valid: action_check.is_ok(),
        action_error: action_check.as_ref().err().map(|e| e.to_string()),
        element_actions,
    };

    let mut report = Report {
        fixture: fx.name.clone(),
        field: field.label(),
        truncation: Truncation {
            max_degree: n,
            max_homological: p_max,
        },
        validation: (cmds.contains(&Command::Validate)
            || fx.expect.hopf_valid.is_some()
            || fx.expect.action_valid.is_some()
            || fx.expect.element_actions.is_some())
        .then(|| validation.clone()),
        basis: None,
        invariants: None,
        beta: None,
        tau: None,
        hilbert_ideal: None,
        series: None,
        resolutions: None,
        betti: None,
        torreg: None,
        cmreg: None,
        annihilators: None,
        truncated: None,
        second_algebra: None,
        bounds: None,
    };
    let dims = table.dims();

    if needs.basis || needs.phi {
        let mut phi = Vec::new();
        if needs.phi {
            let degs: BTreeSet<usize> = (0..fx.presentation.relations().len())
                .filter_map(|i| fx.presentation.relation_degree(i))
                .collect();
            if let Some(&lo) = degs.iter().next() {
                let mut ns: BTreeSet<usize> = degs.clone();
                if lo > 1 {
                    ns.insert(lo - 1);
                }
                for k in ns {
                    if let Ok(c) = phi_n(&fx.presentation, k, &dims, n) {
                        phi.push(PhiRow {
                            n: k,
                            first_difference: c.first_difference(),
                            dims: c.dims,
                        });
                    }
                }
            }
        }
        let names = table.names();
        report.basis = Some(BasisReport {
            dims: dims.clone(),
            words: (0..=n)
                .map(|d| {
                    table
                        .basis_words(d)
                        .iter()
                        .map(|w| w.render(&names))
                        .collect()
                })
                .collect(),
            phi,
        });
    }

    if needs.truncated {
        if let Some(m) = fx.params.truncate_at {
            report.truncated = Some(truncated_chain(fx, &table, m)?);
        }
    }

    if !needs.invariants {
        return Ok(report);
    }

    let ring = InvariantRing::from_actions(&actions);
    let left = HilbertIdeal::compute(&ring, Side::Left);
    let right = HilbertIdeal::compute(&ring, Side::Right);
    let tau = tau_quantity(&left, &table);
    let tau_op = tau_quantity(&right, &table);
    let beta_value = ring.beta_observed();
    let beta_cert = if let Some(t) = tau.value.filter(|_| tau.certification.is_certified()) {
        Certification::Certified {
            by: format!("β ≤ τ = {t} ≤ N"),
        }
    } else if let Some(t) = tau_op.value.filter(|_| tau_op.certification.is_certified()) {
        Certification::Certified {
            by: format!("β ≤ τ^op = {t} ≤ N"),
        }
    } else if finite_dimensional(&table) {
        Certification::Certified {
            by: "finite-dimensional within the truncation".into(),
        }
    } else {
        Certification::Observed { to: n }
    };
    let beta = Quantity {
        value: beta_value,
        certification: beta_cert,
    };
    let beta_certified = beta.certification.is_certified();
    let r_dims: Vec<usize> = (0..=n).map(|d| ring.dim(d)).collect();
    let r_gens: Vec<(usize, SparseVec)> = ring
        .generators()
        .iter()
        .map(|g| (g.degree, g.vector.clone()))
        .collect();

    if cmds.contains(&Command::Invariants)
        || fx.expect.invariant_dims.is_some()
        || fx.expect.generators.is_some()
        || fx.expect.generator_degrees.is_some()
    {
        report.invariants = Some(InvariantsReport {
            dims: r_dims.clone(),
            generators: elements(&table, &r_gens),
            new_generator_counts: ring.new_generator_counts(),
            beta: beta.clone(),
        });
    }
    if cmds.contains(&Command::Beta) || fx.expect.beta.is_some() || fx.expect.certified.is_some() {
        report.beta = Some(beta.clone());
    }
    if cmds.contains(&Command::Tau)
        || fx.expect.tau.is_some()
        || fx.expect.tau_op.is_some()
        || fx.expect.certified.is_some()
    {
        report.tau = Some(TauReport {
            equal: match (tau.value, tau_op.value) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            },
            tau: tau.clone(),
            tau_op: tau_op.clone(),
        });
    }
    if cmds.contains(&Command::HilbertIdeal)
        || fx.expect.quotient_dims.is_some()
        || fx.expect.quotient_dims_op.is_some()
        || fx.expect.module_generators.is_some()
    {
        let side = |h: &HilbertIdeal, q: &Quantity| HilbertIdealSide {
            quotient_dims: h.quotient_dims.clone(),
            module_generators: elements(&table, &h.module_generators),
            tau: q.clone(),
            t0: h.module_generator_degree(),
        };
        report.hilbert_ideal = Some(HilbertIdealReport {
            left: side(&left, &tau),
            right: side(&right, &tau_op),
        });
    }

    let t_series = if needs.series {
        Some(fit(&dims, fx.params.denominator_hint.as_deref(), guard))
    } else {
        None
    };
    let r_series = if needs.series {
        Some(fit(
            &r_dims,
            fx.params.invariant_denominator_hint.as_deref(),
            guard,
        ))
    } else {
        None
    };
    let ratio: Option<BigRational> = match (&t_series, &r_series) {
        (Some(Ok(a)), Some(Ok(b))) => ratio_at_one(a, b).ok(),
        _ => None,
    };
    if cmds.contains(&Command::Series) || fx.expect.hilbert_ratio.is_some() {
        report.series = Some(SeriesReport {
            algebra: series_fit(t_series.as_ref().unwrap()),
            invariants: series_fit(r_series.as_ref().unwrap()),
            ratio_at_one: ratio.as_ref().map(|r| r.to_string()),
            dim_h,
        });
    }

    if !needs.res_t && !needs.res_r {
        return Ok(report);
    }

    let trivial = TrivialModule::new(field.clone(), n);
    let res_kt = Resolution::compute(&table, &trivial, Side::Left, p_max);
    let betti_kt = res_kt.betti();
    let t_cert = if fx.presentation.assertions.as_regular == Some(true) {
        as_regular_certificate(&betti_kt, fx.presentation.assertions.gldim)
    } else {
        None
    };
    let t_cmreg = cmreg_value(
        &fx.presentation,
        t_cert.as_ref(),
        t_series.as_ref().and_then(|s| s.as_ref().ok()),
    );

    let mut resolutions = vec![resolution_report("k over T", &res_kt, t_cert.is_some())];
    let mut bettis: Vec<(String, BettiTable, bool)> =
        vec![("k over T".into(), betti_kt.clone(), t_cert.is_some())];

    let r_map: Vec<Vec<SparseVec>> = (0..=n).map(|d| ring.basis(d).to_vec()).collect();
    let a_over_r = RestrictedModule::new(&table, r_map, Side::Right);
    let gen_vecs = generator_vectors(&table)?;
    let gen_degs: Vec<usize> = gen_vecs.iter().map(|(d, _)| *d).collect();
    let left_mult =
        |g: usize, d: usize, m: &SparseVec| table.mul(gen_vecs[g].0, &gen_vecs[g].1, d, m);

    let mut t_r: TSeq = Vec::new();
    let mut hopf_ann: Vec<Option<Val>> = Vec::new();
    let mut hopf_ann_inf: Option<Val> = None;
    if needs.res_r {
        let res_kr = Resolution::compute(&ring, &trivial, Side::Left, p_max);
        let betti_kr = res_kr.betti();
        t_r = observed_seq(&betti_kr);
        if let Some(x) = t_r.get_mut(0) {
            *x = Some(Val::int(0, true));
        }
        if beta_certified {
            if let Some(x) = t_r.get_mut(1) {
                *x = Some(Val::certified(ExtRat::from_opt(beta.value)));
            }
        }
        resolutions.push(resolution_report("k over R", &res_kr, false));
        bettis.push(("k over R".into(), betti_kr, false));

        let res_ar = Resolution::compute(&ring, &a_over_r, Side::Right, p_max);
        let betti_ar = res_ar.betti();
        resolutions.push(resolution_report("A over R (right)", &res_ar, false));
        bettis.push(("A over R (right)".into(), betti_ar.clone(), false));

        if needs.annihilators {
            let tors = res_ar.tor_action(&gen_degs, &left_mult)?;
            let per: Vec<Annihilator> = tors
                .iter()
                .map(|t| annihilator(&table, &[t], Side::Left))
                .collect();
            hopf_ann = per.iter().map(Annihilator::val).collect();
            let inf = betti_ar.length().map(|len| {
                let all: Vec<&TorModule> = tors[..=len.min(tors.len() - 1)].iter().collect();
                annihilator(&table, &all, Side::Left)
            });
            hopf_ann_inf = inf.as_ref().and_then(Annihilator::val);
            if cmds.contains(&Command::Annihilators) {
                report.annihilators = Some(AnnihilatorReport {
                    per_index: per
                        .iter()
                        .enumerate()
                        .map(|(i, a)| annihilator_row(i, a))
                        .collect(),
                    infinity: inf.as_ref().map(|a| annihilator_row(usize::MAX, a)),
                    zero_matches_hilbert_ideal: per.first().map(|a| a.quotient_degree)
                        == Some(left.quotient_degree_observed()),
                });
            }
        }
    }

    if cmds.contains(&Command::Cmreg) || fx.expect.cmreg.is_some() {
        report.cmreg = Some(CmregReport {
            algebra: t_cmreg.clone(),
            second_algebra: None,
        });
    }

    let mut source_report = None;
    let mut side_data = None;
    let mut hyp_extra = None;
    if needs.source {
        if let Some(map) = &fx.map {
            let out = source_side(
                fx,
                map,
                &table,
                &actions,
                &ring,
                beta_certified,
                &r_gens,
                &gen_degs,
                &left_mult,
            )?;
            for r in &out.resolutions {
                resolutions.push(r.clone());
            }
            bettis.extend(out.bettis.iter().cloned());
            if let Some(c) = report.cmreg.as_mut() {
                c.second_algebra = Some(out.cmreg.clone());
            }
            source_report = Some(out.report);
            side_data = Some(out.side);
            hyp_extra = Some(out.hyp);
        }
    }

    if cmds.contains(&Command::Resolve) || fx.expect.tor_degrees.is_some() {
        report.resolutions = Some(resolutions);
    }
    if cmds.contains(&Command::Betti) {
        report.betti = Some(
            bettis
                .iter()
                .map(|(name, b, _)| BettiEntry {
                    name: name.to_string(),
                    text: b.render(),
                    table: b.clone(),
                })
                .collect(),
        );
    }
    if cmds.contains(&Command::Torreg) || fx.expect.torreg.is_some() {
        report.torreg = Some(
            bettis
                .iter()
                .map(|(name, b, c)| torreg_entry(name, b, *c))
                .collect(),
        );
    }

    if cmds.contains(&Command::CheckBounds) || fx.expect.rows_hold.is_some() {
        let a = &fx.presentation.assertions;
        let t_koszul = match &t_cert {
            Some(c) => Flag::Verified((0..=c.gldim).all(|i| betti_kt.t(i) == Some(i))),
            None => Flag::from_assertion(a.koszul),
        };
        let r_complete = beta_certified;
        let mut hyp = Hypotheses {
            semisimple: Flag::Verified(validation.hopf_valid),
            group_algebra: fx.action.group.is_some(),
            char_zero: true,
            t_as_regular: Flag::from_assertion(a.as_regular),
            t_domain: Flag::from_assertion(a.domain),
            t_noetherian: Flag::from_assertion(a.noetherian),
            t_koszul,
            t_generated_in_degree_one: Flag::Verified(fx.presentation.generated_in_degree_one()),
            smash_product_prime: Flag::from_assertion(a.smash_product_prime),
            r_finite_gldim: Flag::from_assertion(a.invariant_ring_finite_gldim),
            r_commutative: commutativity(&table, &r_gens, r_complete),
            ..Hypotheses::default()
        };
        if let Some(h) = hyp_extra {
            let HypExtra {
                s_as_regular,
                s_noetherian,
                finite_both_sides,
                surjective,
                minimal_generators_match,
                tor1_condition,
                s_commutative,
            } = h;
            hyp.s_as_regular = s_as_regular;
            hyp.s_noetherian = s_noetherian;
            hyp.finite_both_sides = finite_both_sides;
            hyp.surjective = surjective;
            hyp.minimal_generators_match = minimal_generators_match;
            hyp.tor1_condition = match tor1_condition {
                Flag::Unknown => match (hyp.r_commutative, s_commutative) {
                    (Flag::Verified(true), Flag::Verified(true)) => Flag::Verified(true),
                    _ => Flag::Unknown,
                },
                f => f,
            };
        }
        let skew = skew_polynomial_rank(&table);
        let central = fx.central.or(skew.map(|k| CentralData {
            d: 2,
            m: k,
            asserted: false,
        }));
        let inputs = BoundInputs {
            dim_h,
            hyp,
            beta: Some(beta.val()),
            tau: Some(tau.val()),
            tau_op: Some(tau_op.val()),
            t_r,
            t_t: certified_seq(&betti_kt, t_cert.as_ref()),
            gldim_t: a.gldim.or(t_cert.as_ref().map(|c| c.gldim)),
            cmreg_t: t_cmreg.value.map(|v| Val::int(v, t_cmreg.certified)),
            central,
            skew_polynomial_n: skew,
            hopf_annihilator_quotients: hopf_ann,
            hopf_annihilator_infinity: hopf_ann_inf,
            hilbert_ratio: ratio.map(|r| Val::observed(ExtRat::Fin(r))),
            s: side_data,
        };
        report.bounds = Some(check_bounds(&inputs));
        report.second_algebra = source_report;
    }
    Ok(report)
}

/// Hypotheses read off the map `S → R`.
struct HypExtra {
    s_as_regular: Flag,
    s_noetherian: Flag,
    finite_both_sides: Flag,
    surjective: Flag,
    minimal_generators_match: Flag,
    tor1_condition: Flag,
    s_commutative: Flag,
}

struct SourceOut {
    report: SourceReport,
    side: SideData,
    hyp: HypExtra,
    cmreg: CmregValue,
    resolutions: Vec<ResolutionReport>,
    bettis: Vec<(String, BettiTable, bool)>,
}

#[allow(clippy::too_many_arguments)]
fn source_side(
    fx: &Fixture,
    map: &MapData,
    table: &BasisTable,
    actions: &DegreeActions<'_>,
    ring: &InvariantRing<'_>,
    beta_certified: bool,
    r_gens: &[(usize, SparseVec)],
    gen_degs: &[usize],
    left_mult: &dyn Fn(usize, usize, &SparseVec) -> SparseVec,
) -> Result<SourceOut> {
    let n = table.max_degree();
    let p_max = fx.params.max_homological;
    let s = &map.source;
    let s_tab = BasisTable::build_with_cap(s, n, fx.params.word_cap)?;
    let field = table.field().clone();
    let one = field.one();

    let mut imgs = Vec::with_capacity(map.images.len());
    for (k, poly) in map.images.iter().enumerate() {
        let d = s.generators()[k].degree;
        let (_, v) = table.normal_form(poly)?;
        if !actions.is_invariant(d, &v) {
            return Err(Error::InvalidAction(format!(
                "image of '{}' is not invariant",
                s.generators()[k].name
            )));
        }
        imgs.push((d, v));
    }
    let map_t: Vec<Vec<SparseVec>> = (0..=n)
        .map(|d| {
            s_tab
                .basis_words(d)
                .iter()
                .map(|w| {
                    let (mut deg, mut acc) = (0, table.one());
                    for &g in &w.0 {
                        let (e, v) = &imgs[g as usize];
                        acc = table.mul(deg, &acc, *e, v);
                        deg += e;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let map_r: Vec<Vec<SparseVec>> = map_t
        .iter()
        .enumerate()
        .map(|(d, vs)| {
            vs.iter()
                .map(|v| {
                    ring.coordinates(d, v).ok_or_else(|| {
                        Error::Internal(format!("image in degree {d} is not invariant"))
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let image_ranks: Vec<usize> = map_t
        .iter()
        .map(|vs| Echelon::from_vectors(vs.iter().cloned()).rank())
        .collect();
    let surjective_through = (0..=n).all(|d| image_ranks[d] == ring.dim(d));
    let surjective = match (surjective_through, beta_certified) {
        (false, _) => Flag::Verified(false),
        (true, true) => Flag::Verified(true),
        (true, false) => Flag::Unknown,
    };
    let mut s_degs: Vec<usize> = s.degrees();
    s_degs.sort_unstable();
    let mut r_degs: Vec<usize> = r_gens.iter().map(|(d, _)| *d).collect();
    r_degs.sort_unstable();
    let s_low: Vec<usize> = s_degs.iter().copied().filter(|&d| d <= n).collect();
    let minimal_generators_match = if s_low != r_degs {
        Flag::Verified(false)
    } else if beta_certified && s_low.len() == s_degs.len() {
        Flag::Verified(true)
    } else {
        Flag::Unknown
    };
    let s_gens = generator_vectors(&s_tab)?;
    let s_commutative = commutativity(&s_tab, &s_gens, true);

    let trivial = TrivialModule::new(field.clone(), n);
    let res_ks = Resolution::compute(&s_tab, &trivial, Side::Left, p_max);
    let betti_ks = res_ks.betti();
    let s_cert = if s.assertions.as_regular == Some(true) {
        as_regular_certificate(&betti_ks, s.assertions.gldim)
    } else {
        None
    };
    let s_series = fit(&s_tab.dims(), None, fx.params.guard).ok();
    let cmreg = cmreg_value(s, s_cert.as_ref(), s_series.as_ref());

    let r_left = RestrictedModule::new(ring, map_r.clone(), Side::Left);
    let r_right = RestrictedModule::new(ring, map_r, Side::Right);
    let res_rl = Resolution::compute(&s_tab, &r_left, Side::Left, p_max);
    let res_rr = Resolution::compute(&s_tab, &r_right, Side::Right, p_max);
    let t_right = RestrictedModule::new(table, map_t, Side::Right);
    let res_ts = Resolution::compute(&s_tab, &t_right, Side::Right, p_max);
    let betti_ts = res_ts.betti();
    let tors = res_ts.tor_action(gen_degs, left_mult)?;

    let tor_generation: Vec<Option<usize>> = tors
        .iter()
        .map(|tor| {
            let mut ech = Echelon::new();
            for (_, images) in &tor.generators {
                for img in images.iter().flatten() {
                    ech.insert(img.clone());
                }
            }
            let units = (0..tor.shifts.len()).map(|i| SparseVec::unit(i, one.clone()));
            complement(&ech, units)
                .iter()
                .filter_map(|v| v.leading().map(|(i, _)| tor.shifts[i]))
                .max()
        })
        .collect();
    let cumulative: Vec<Annihilator> = (0..tors.len())
        .map(|i| {
            let refs: Vec<&TorModule> = tors[..=i].iter().collect();
            annihilator(table, &refs, Side::Left)
        })
        .collect();
    let length = betti_ts.length();
    let annihilator_infinity = length
        .and_then(|l| cumulative.get(l))
        .and_then(Annihilator::val);

    let quotient = CokernelModule::new(table, Side::Left, vec![0], &imgs, n);
    let res_q = Resolution::compute(table, &quotient, Side::Left, p_max);
    let betti_q = res_q.betti();

    let side = SideData {
        t_k: certified_seq(&betti_ks, s_cert.as_ref()),
        cmreg: cmreg.value.map(|v| Val::int(v, cmreg.certified)),
        t_r_left: observed_seq(&res_rl.betti()),
        t_r_right: observed_seq(&res_rr.betti()),
        t_t_right: observed_seq(&betti_ts),
        tor_generation: tor_generation
            .iter()
            .map(|t| Some(Val::observed(ExtRat::from_opt(*t))))
            .collect(),
        tor_t_of_quotient: observed_seq(&betti_q),
        annihilator_quotients: cumulative.iter().map(Annihilator::val).collect(),
        annihilator_infinity,
        t_over_s_length: length,
        cohen_macaulay_s: map.assertions.cohen_macaulay_s,
    };
    let ma = &map.assertions;
    let hyp = HypExtra {
        s_as_regular: Flag::from_assertion(s.assertions.as_regular),
        s_noetherian: Flag::from_assertion(s.assertions.noetherian),
        finite_both_sides: Flag::from_assertion(ma.finite_both_sides),
        surjective,
        minimal_generators_match,
        tor1_condition: Flag::from_assertion(ma.tor1_condition),
        s_commutative,
    };
    let resolutions = vec![
        resolution_report("k over S", &res_ks, s_cert.is_some()),
        resolution_report("R over S (left)", &res_rl, false),
        resolution_report("R over S (right)", &res_rr, false),
        resolution_report("T over S (right)", &res_ts, false),
        resolution_report("T ⊗_S k over T", &res_q, false),
    ];
    let bettis = vec![
        ("k over S".to_string(), betti_ks, s_cert.is_some()),
        ("R over S (left)".to_string(), res_rl.betti(), false),
        ("R over S (right)".to_string(), res_rr.betti(), false),
        ("T over S (right)".to_string(), betti_ts, false),
        ("T ⊗_S k over T".to_string(), betti_q, false),
    ];
    Ok(SourceOut {
        report: SourceReport {
            dims: s_tab.dims(),
            image_ranks,
            surjective_through_truncation: surjective_through,
            generator_degrees: s.degrees(),
            resolutions: resolutions.clone(),
            tor_generation,
            annihilator_quotients: cumulative.iter().map(|a| a.quotient_degree).collect(),
        },
        side,
        hyp,
        cmreg,
        resolutions,
        bettis,
    })
}

fn truncated_chain(fx: &Fixture, table: &BasisTable, m: usize) -> Result<TruncatedReport> {
    let cap = fx.params.word_cap;
    let p = &fx.presentation;
    let beta_of =
        |q: &AlgebraPresentation, top: usize| -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
            let tab = BasisTable::build_with_cap(q, top, cap)?;
            let acts = DegreeActions::new(&fx.action, &tab)?;
            let ring = InvariantRing::from_actions(&acts);
            let inv: Vec<usize> = (0..=top).map(|d| ring.dim(d)).collect();
            Ok((tab.dims(), inv, ring.generator_degrees()))
        };
    let (algebra_dims, invariant_dims, generator_degrees) = beta_of(&p.quotient_truncation(m)?, m)?;
    let free = AlgebraPresentation::new(
        p.field().clone(),
        p.generators().to_vec(),
        vec![],
        Default::default(),
    )?;
    let (free_dims, _, free_degs) = beta_of(&free.quotient_truncation(m)?, m)?;
    let (_, _, below) = beta_of(&free, m - 1)?;
    let full = table.dims();
    let agrees =
        (0..m.min(full.len())).all(|d| full[d] == free_dims[d]) && algebra_dims == free_dims;
    Ok(TruncatedReport {
        at: m,
        algebra_dims,
        invariant_dims,
        beta: generator_degrees.iter().copied().max(),
        generator_degrees,
        free_beta: free_degs.iter().copied().max(),
        free_generators_below: below.iter().copied().max(),
        agrees_with_free_below: agrees,
    })
}

/// Parse the fixture's own command list.
pub fn fixture_commands(fx: &Fixture) -> Result<Vec<Command>> {
    fx.commands.iter().map(|c| Command::parse(c)).collect()
}

/// Run the fixture's commands and compare against its golden values.
pub fn reproduce(fx: &Fixture) -> Result<(Report, Vec<Mismatch>)> {
    let report = analyze(fx, &fixture_commands(fx)?)?;
    let mismatches = check_expectations(&report, &fx.expect);
    Ok((report, mismatches))
}

fn prefix_eq(expected: &[usize], actual: &[usize]) -> bool {
    actual.len() >= expected.len() && actual[..expected.len()] == *expected
}

pub fn check_expectations(r: &Report, e: &Expectations) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut check = |field: &str, expected: String, actual: Option<String>, ok: bool| {
        if !ok {
            out.push(Mismatch {
                field: field.to_string(),
                expected,
                actual: actual.unwrap_or_else(|| "missing".into()),
            });
        }
    };
    let dbg = |x: &dyn fmt::Debug| format!("{x:?}");
    if let Some(want) = &e.algebra_dims {
        let got = r.basis.as_ref().map(|b| &b.dims);
        check(
            "algebra_dims",
            dbg(want),
            got.map(|g| dbg(g)),
            got.is_some_and(|g| prefix_eq(want, g)),
        );
    }
    let inv = r.invariants.as_ref();
    if let Some(want) = &e.invariant_dims {
        let got = inv.map(|i| &i.dims);
        check(
            "invariant_dims",
            dbg(want),
            got.map(|g| dbg(g)),
            got.is_some_and(|g| prefix_eq(want, g)),
        );
    }
    if let Some(want) = &e.generators {
        let got: Option<Vec<String>> =
            inv.map(|i| i.generators.iter().map(|g| g.element.clone()).collect());
        check(
            "generators",
            dbg(want),
            got.as_ref().map(|g| dbg(g)),
            got.as_ref() == Some(want),
        );
    }
    if let Some(want) = &e.generator_degrees {
        let got: Option<Vec<usize>> = inv.map(|i| i.generators.iter().map(|g| g.degree).collect());
        check(
            "generator_degrees",
            dbg(want),
            got.as_ref().map(|g| dbg(g)),
            got.as_ref() == Some(want),
        );
    }
    if let Some(want) = e.beta {
        let got = r.beta.as_ref().map(|b| b.value);
        check(
            "beta",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    let tau = r.tau.as_ref();
    if let Some(want) = e.tau {
        let got = tau.map(|t| t.tau.value);
        check(
            "tau",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    if let Some(want) = e.tau_op {
        let got = tau.map(|t| t.tau_op.value);
        check(
            "tau_op",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    if let Some(want) = e.certified {
        let got = match (r.beta.as_ref(), tau) {
            (Some(b), Some(t)) => Some(
                b.certification.is_certified()
                    && t.tau.certification.is_certified()
                    && t.tau_op.certification.is_certified(),
            ),
            _ => None,
        };
        check(
            "certified",
            want.to_string(),
            got.map(|g| g.to_string()),
            got == Some(want),
        );
    }
    let hi = r.hilbert_ideal.as_ref();
    if let Some(want) = &e.module_generators {
        let got: Option<Vec<String>> = hi.map(|h| {
            h.left
                .module_generators
                .iter()
                .map(|g| g.element.clone())
                .collect()
        });
        check(
            "module_generators",
            dbg(want),
            got.as_ref().map(|g| dbg(g)),
            got.as_ref() == Some(want),
        );
    }
    if let Some(want) = &e.quotient_dims {
        let got = hi.map(|h| &h.left.quotient_dims);
        check(
            "quotient_dims",
            dbg(want),
            got.map(|g| dbg(g)),
            got.is_some_and(|g| prefix_eq(want, g)),
        );
    }
    if let Some(want) = &e.quotient_dims_op {
        let got = hi.map(|h| &h.right.quotient_dims);
        check(
            "quotient_dims_op",
            dbg(want),
            got.map(|g| dbg(g)),
            got.is_some_and(|g| prefix_eq(want, g)),
        );
    }
    if let Some(want) = &e.tor_degrees {
        let got = r
            .resolutions
            .as_ref()
            .and_then(|rs| rs.iter().find(|x| x.name == "k over T"))
            .map(|x| &x.t);
        let ok = got.is_some_and(|g| g.len() >= want.len() && g[..want.len()] == want[..]);
        check("tor_degrees", dbg(want), got.map(|g| dbg(g)), ok);
    }
    if let Some(want) = e.torreg {
        let got = r
            .torreg
            .as_ref()
            .and_then(|ts| ts.iter().find(|x| x.name == "k over T"))
            .map(|x| x.value);
        check(
            "torreg",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    if let Some(want) = e.cmreg {
        let got = r.cmreg.as_ref().map(|c| c.algebra.value);
        check(
            "cmreg",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    if let Some(want) = &e.hilbert_ratio {
        let want_s = match want {
            crate::input::RationalDoc::Int(k) => k.to_string(),
            crate::input::RationalDoc::Text(t) => {
                crate::field::parse_rational(t).map_or(t.clone(), |q| q.to_string())
            }
        };
        let got = r.series.as_ref().and_then(|s| s.ratio_at_one.clone());
        let ok = got.as_deref() == Some(want_s.as_str());
        check("hilbert_ratio", want_s, got, ok);
    }
    if let Some(want) = e.truncated_beta {
        let got = r.truncated.as_ref().map(|t| t.beta);
        check(
            "truncated_beta",
            want.to_string(),
            got.map(|g| dbg(&g)),
            got == Some(Some(want)),
        );
    }
    let val = r.validation.as_ref();
    if let Some(want) = e.hopf_valid {
        let got = val.map(|v| v.hopf_valid);
        check(
            "hopf_valid",
            want.to_string(),
            got.map(|g| g.to_string()),
            got == Some(want),
        );
    }
    if let Some(want) = e.action_valid {
        let got = val.map(|v| v.action_valid);
        check(
            "action_valid",
            want.to_string(),
            got.map(|g| g.to_string()),
            got == Some(want),
        );
    }
    if let Some(want) = &e.element_actions {
        for (k, ea) in want.iter().enumerate() {
            let got = val.and_then(|v| v.element_actions.get(k));
            check(
                &format!("element_actions/{k}"),
                format!("{} . ({}) = {}", ea.by, ea.element, ea.image),
                got.map(|g| g.image.clone()),
                got.is_some_and(|g| g.matches),
            );
        }
    }
    if let Some(want) = &e.phi {
        for &(k, fd) in want {
            let got = r
                .basis
                .as_ref()
                .and_then(|b| b.phi.iter().find(|p| p.n == k))
                .map(|p| p.first_difference);
            check(
                &format!("phi/{k}"),
                dbg(&fd),
                got.map(|g| dbg(&g)),
                got == Some(fd),
            );
        }
    }
    if let Some(ids) = &e.rows_hold {
        for id in ids {
            let got = r
                .bounds
                .as_ref()
                .and_then(|b| b.row(id))
                .map(|row| row.status);
            check(
                &format!("rows_hold/{id}"),
                "holds".into(),
                got.map(|g| dbg(&g)),
                got == Some(crate::bounds::Status::Holds),
            );
        }
    }
    out
}
