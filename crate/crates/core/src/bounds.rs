//! Degree-bound checker: evaluates each inequality on computed quantities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Integers and rationals extended by ±∞; `deg 0 = −∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRat {
    NegInf,
    Fin(BigRational),
    PosInf,
}

impl ExtRat {
    pub fn int(n: i64) -> Self {
        ExtRat::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_opt(t: Option<usize>) -> Self {
        t.map_or(ExtRat::NegInf, |t| ExtRat::int(t as i64))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Fin(_))
    }

    pub fn add(&self, o: &ExtRat) -> ExtRat {
        use ExtRat::*;
        match (self, o) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Fin(a), Fin(b)) => Fin(a + b),
        }
    }

    /// `self − o` for finite `o`.
    pub fn sub_fin(&self, o: &BigRational) -> ExtRat {
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(a - o),
            x => x.clone(),
        }
    }

    pub fn add_int(&self, k: i64) -> ExtRat {
        self.add(&ExtRat::int(k))
    }

    /// `k · self` for `k ≥ 0`, with `0 · ±∞ = 0`.
    pub fn mul_int(&self, k: i64) -> ExtRat {
        assert!(k >= 0);
        match self {
            _ if k == 0 => ExtRat::int(0),
            ExtRat::Fin(a) => ExtRat::Fin(a * BigInt::from(k)),
            x => x.clone(),
        }
    }

    /// `self / k` for `k > 0`.
    pub fn div_int(&self, k: i64) -> ExtRat {
        assert!(k > 0);
        match self {
            ExtRat::Fin(a) => ExtRat::Fin(a / BigInt::from(k)),
            x => x.clone(),
        }
    }
}

impl Ord for ExtRat {
    fn cmp(&self, o: &Self) -> Ordering {
        use ExtRat::*;
        match (self, o) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "+inf"),
            ExtRat::Fin(a) => write!(f, "{a}"),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtRat::Fin(a) if a.is_integer() => match i64::try_from(a.to_integer()) {
                Ok(n) => s.serialize_i64(n),
                Err(_) => s.serialize_str(&a.to_string()),
            },
            x => s.serialize_str(&x.to_string()),
        }
    }
}

/// A computed quantity with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Val {
    pub value: ExtRat,
    pub certified: bool,
}

impl Val {
    pub fn certified(value: ExtRat) -> Self {
        Val {
            value,
            certified: true,
        }
    }

    pub fn observed(value: ExtRat) -> Self {
        Val {
            value,
            certified: false,
        }
    }

    pub fn int(n: i64, certified: bool) -> Self {
        Val {
            value: ExtRat::int(n),
            certified,
        }
    }

    fn map(&self, f: impl FnOnce(&ExtRat) -> ExtRat) -> Val {
        Val {
            value: f(&self.value),
            certified: self.certified,
        }
    }

    pub fn add(&self, o: &Val) -> Val {
        Val {
            value: self.value.add(&o.value),
            certified: self.certified && o.certified,
        }
    }

    pub fn add_int(&self, k: i64) -> Val {
        self.map(|v| v.add_int(k))
    }

    pub fn mul_int(&self, k: i64) -> Val {
        self.map(|v| v.mul_int(k))
    }

    pub fn div_int(&self, k: i64) -> Val {
        self.map(|v| v.div_int(k))
    }

    /// `self − o`; `o` must be finite.
    pub fn sub(&self, o: &Val) -> Result<Val, String> {
        match &o.value {
            ExtRat::Fin(b) => Ok(Val {
                value: self.value.sub_fin(b),
                certified: self.certified && o.certified,
            }),
            v => Err(format!("cannot subtract {v}")),
        }
    }

    /// Max over a list; the empty max is `−∞` (certified).
    pub fn max_of<'a>(vals: impl IntoIterator<Item = &'a Val>) -> Val {
        let mut out = Val::certified(ExtRat::NegInf);
        for v in vals {
            out.certified &= v.certified;
            if v.value > out.value {
                out.value = v.value.clone();
            }
        }
        out
    }
}

/// Tor degrees `t_i` by homological index; `None` past the computed range.
pub type TSeq = Vec<Option<Val>>;

fn t_at(seq: &TSeq, i: usize, name: &str) -> Result<Val, String> {
    seq.get(i)
        .cloned()
        .flatten()
        .ok_or_else(|| format!("{name}_{i} not computed"))
}

fn finite_part(v: &Val, name: &str) -> Result<BigRational, String> {
    match &v.value {
        ExtRat::Fin(a) => Ok(a.clone()),
        _ => Err(format!("{name} is not finite")),
    }
}

/// Truth of a hypothesis and how it is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Flag {
    Verified(bool),
    Asserted(bool),
    #[default]
    Unknown,
}

impl Flag {
    pub fn from_assertion(a: Option<bool>) -> Flag {
        a.map_or(Flag::Unknown, Flag::Asserted)
    }

    /// Verified truth wins; otherwise fall back to the assertion.
    pub fn or_asserted(self, a: Option<bool>) -> Flag {
        match self {
            Flag::Verified(_) => self,
            _ => Flag::from_assertion(a).max_known(self),
        }
    }

    fn max_known(self, other: Flag) -> Flag {
        if self == Flag::Unknown {
            other
        } else {
            self
        }
    }

    fn holds(self) -> Option<bool> {
        match self {
            Flag::Verified(b) | Flag::Asserted(b) => Some(b),
            Flag::Unknown => None,
        }
    }
}

/// Hypothesis flags for `(T, H)`, the map `S → R` and the fixture shape.
#[derive(Clone, Debug)]
pub struct Hypotheses {
    pub semisimple: Flag,
    pub group_algebra: bool,
    pub char_zero: bool,
    pub t_as_regular: Flag,
    pub t_domain: Flag,
    pub t_noetherian: Flag,
    pub t_koszul: Flag,
    pub t_generated_in_degree_one: Flag,
    pub smash_product_prime: Flag,
    pub r_finite_gldim: Flag,
    pub r_commutative: Flag,
    pub s_as_regular: Flag,
    pub s_noetherian: Flag,
    pub finite_both_sides: Flag,
    pub surjective: Flag,
    pub minimal_generators_match: Flag,
    pub tor1_condition: Flag,
}

impl Default for Hypotheses {
    fn default() -> Self {
        Hypotheses {
            semisimple: Flag::Unknown,
            group_algebra: false,
            char_zero: true,
            t_as_regular: Flag::Unknown,
            t_domain: Flag::Unknown,
            t_noetherian: Flag::Unknown,
            t_koszul: Flag::Unknown,
            t_generated_in_degree_one: Flag::Unknown,
            smash_product_prime: Flag::Unknown,
            r_finite_gldim: Flag::Unknown,
            r_commutative: Flag::Unknown,
            s_as_regular: Flag::Unknown,
            s_noetherian: Flag::Unknown,
            finite_both_sides: Flag::Unknown,
            surjective: Flag::Unknown,
            minimal_generators_match: Flag::Unknown,
            tor1_condition: Flag::Unknown,
        }
    }
}

/// `A` is a finite module over a central `H`-stable subalgebra generated in degree `≤ d`,
/// with module generators in degree `≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CentralData {
    pub d: usize,
    pub m: usize,
    pub asserted: bool,
}

/// Quantities coming from a second AS regular algebra `S` mapping to `R`.
#[derive(Clone, Debug, Default)]
pub struct SideData {
    /// `t^S_i(k)`.
    pub t_k: TSeq,
    pub cmreg: Option<Val>,
    /// `t^S_i(_S R)` and `t^S_i(R_S)`.
    pub t_r_left: TSeq,
    pub t_r_right: TSeq,
    /// `t^S_i(T_S)`.
    pub t_t_right: TSeq,
    /// `deg k ⊗_T Tor^S_i(T, k)`.
    pub tor_generation: TSeq,
    /// `deg Tor^T_i(k, T ⊗_S k)`.
    pub tor_t_of_quotient: TSeq,
    /// `deg T/J_{≤i}` for the annihilators of `Tor^S_i(T, k)`.
    pub annihilator_quotients: Vec<Option<Val>>,
    /// `deg T/J_∞`, when the resolution of `T_S` terminates in range.
    pub annihilator_infinity: Option<Val>,
    /// Homological length of the minimal resolution of `T_S`, when it terminates.
    pub t_over_s_length: Option<usize>,
    /// The `s` in `s`-Cohen–Macaulay for `_S R`, asserted.
    pub cohen_macaulay_s: Option<usize>,
}

/// Everything the checker consumes for one fixture.
#[derive(Clone, Debug, Default)]
pub struct BoundInputs {
    pub dim_h: usize,
    pub hyp: Hypotheses,
    pub beta: Option<Val>,
    pub tau: Option<Val>,
    pub tau_op: Option<Val>,
    /// `t^R_i(k)`.
    pub t_r: TSeq,
    /// `t^T_i(k)`.
    pub t_t: TSeq,
    pub gldim_t: Option<usize>,
    pub cmreg_t: Option<Val>,
    pub central: Option<CentralData>,
    /// `n` when `T = k_{−1}[x₁,…,x_n]`.
    pub skew_polynomial_n: Option<usize>,
    /// `deg A/J_{H,i}` and `deg A/J_∞` for the annihilators of `Tor^R_i(A, k)`.
    pub hopf_annihilator_quotients: Vec<Option<Val>>,
    pub hopf_annihilator_infinity: Option<Val>,
    /// `(h_A/h_R)(1)`.
    pub hilbert_ratio: Option<Val>,
    pub s: Option<SideData>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub id: String,
    pub statement: String,
    pub relation: Relation,
    pub lhs: Option<ExtRat>,
    pub rhs: Option<ExtRat>,
    pub status: Status,
    pub hypotheses: Vec<String>,
    /// `certified` when every input is certified, otherwise `observed`.
    pub inputs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl BoundRow {
    pub fn certified_violation(&self) -> bool {
        self.status == Status::Violated && self.inputs == "certified"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DValues {
    pub i: usize,
    /// From the quotient degree and `t^B` alone.
    pub basic: Option<ExtRat>,
    /// With the `t^A_j/j` terms added.
    pub with_source: Option<ExtRat>,
    /// With the `(t^A_j + t^B_2)/j` terms added as well.
    pub with_relations: Option<ExtRat>,
    pub u: Vec<ExtRat>,
}

/// Raw invariants for experimenting with a bound in terms of `(dim H, gldim T, CMreg T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RawInvariants {
    pub dim_h: usize,
    pub gldim_t: Option<usize>,
    pub cmreg_t: Option<ExtRat>,
    pub beta: Option<ExtRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub delta: Option<ExtRat>,
    pub d_values: Vec<DValues>,
    pub raw: RawInvariants,
}

impl BoundReport {
    pub fn violated(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.status == Status::Violated)
    }

    pub fn certified_violations(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| r.certified_violation())
    }

    pub fn row(&self, id: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let w = self
            .rows
            .iter()
            .map(|r| r.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        s.push_str(&format!(
            "{:<w$}  {:>8} {:>2} {:<8}  {:<20}  {}\n",
            "id", "lhs", "", "rhs", "status", "hypotheses"
        ));
        for r in &self.rows {
            let show = |v: &Option<ExtRat>| v.as_ref().map_or("-".to_string(), |v| v.to_string());
            let rel = match r.relation {
                Relation::Le => "<=",
                Relation::Eq => "=",
            };
            let status = match r.status {
                Status::Holds => "holds",
                Status::Violated => "VIOLATED",
                Status::NotApplicable => "n/a",
            };
            let tail = match &r.reason {
                Some(why) => why.clone(),
                None => r.hypotheses.join("; "),
            };
            s.push_str(&format!(
                "{:<w$}  {:>8} {:>2} {:<8}  {:<20}  {}\n",
                r.id,
                show(&r.lhs),
                rel,
                show(&r.rhs),
                format!("{status} ({})", r.inputs),
                tail
            ));
        }
        s
    }
}

/// `D_i` terms with `B` the target of the map and `A` its source.
///
/// `t_b` and `t_a` are the Tor degrees of `k`; `quotient` is `deg B/J_{≤i}`.
pub fn d_value(
    i: usize,
    quotient: &Val,
    t_b: &TSeq,
    t_a: Option<&TSeq>,
    relation_terms: bool,
) -> Result<Val, String> {
    let tb2 = t_at(t_b, 2, "t^B")?;
    let tb2f = finite_part(&tb2, "t^B_2")?;
    let mut terms = vec![quotient.add(&tb2)];
    for j in 1..i {
        let t = t_at(t_b, j + 2, "t^B")?;
        terms.push(
            Val {
                value: t.value.sub_fin(&tb2f),
                certified: t.certified && tb2.certified,
            }
            .div_int(j as i64),
        );
    }
    for j in 1..=i {
        terms.push(t_at(t_b, j, "t^B")?.div_int(j as i64));
    }
    if let Some(t_a) = t_a {
        for j in 1..=i {
            terms.push(t_at(t_a, j, "t^A")?.div_int(j as i64));
        }
        if relation_terms {
            for j in 2..=i {
                terms.push(t_at(t_a, j, "t^A")?.add(&tb2).div_int(j as i64));
            }
        }
    }
    Ok(Val::max_of(&terms))
}

/// `U^i_j` for `j = 0..=i`: max over compositions `j = Σ i_s` of `Σ (t^B_{i_s+1} + D − t^B_2)`.
/// `U^i_0 = −∞`.
pub fn u_values(i: usize, d: &Val, t_b: &TSeq) -> Result<Vec<Val>, String> {
    let tb2 = t_at(t_b, 2, "t^B")?;
    let tb2f = finite_part(&tb2, "t^B_2")?;
    let mut parts = Vec::with_capacity(i);
    for p in 1..=i {
        let t = t_at(t_b, p + 1, "t^B")?;
        parts.push(Val {
            value: t.value.add(&d.value).sub_fin(&tb2f),
            certified: t.certified && d.certified && tb2.certified,
        });
    }
    let mut best: Vec<Val> = vec![Val::int(0, true)];
    for j in 1..=i {
        let cands: Vec<Val> = (1..=j).map(|p| parts[p - 1].add(&best[j - p])).collect();
        best.push(Val::max_of(&cands));
    }
    best[0] = Val::certified(ExtRat::NegInf);
    Ok(best)
}

type Input = Result<Val, String>;

fn need(v: &Option<Val>, name: &str) -> Input {
    v.clone().ok_or_else(|| format!("{name} unavailable"))
}

struct Builder {
    rows: Vec<BoundRow>,
}

impl Builder {
    fn push(
        &mut self,
        id: String,
        statement: String,
        relation: Relation,
        hyps: &[(&str, Flag)],
        lhs: Input,
        rhs: Input,
    ) {
        let mut used = Vec::new();
        let mut reason = None;
        for (name, f) in hyps {
            match (f, f.holds()) {
                (Flag::Verified(_), Some(true)) => used.push(format!("{name} (verified)")),
                (Flag::Asserted(_), Some(true)) => used.push(format!("{name} (asserted)")),
                (_, Some(false)) => {
                    reason.get_or_insert_with(|| format!("hypothesis fails: {name}"));
                }
                _ => {
                    reason.get_or_insert_with(|| format!("hypothesis not asserted: {name}"));
                }
            }
        }
        let (lhs, rhs) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => (Some(l), Some(r)),
            (Err(e), _) | (_, Err(e)) => {
                reason.get_or_insert(e);
                (None, None)
            }
        };
        let inputs = match (&lhs, &rhs) {
            (Some(l), Some(r)) if l.certified && r.certified => "certified",
            _ => "observed",
        };
        let status = match (&reason, &lhs, &rhs) {
            (None, Some(l), Some(r)) => {
                let ok = match relation {
                    Relation::Le => l.value <= r.value,
                    Relation::Eq => l.value == r.value,
                };
                if ok {
                    Status::Holds
                } else {
                    Status::Violated
                }
            }
            _ => Status::NotApplicable,
        };
        let keep_values = status != Status::NotApplicable;
        self.rows.push(BoundRow {
            id,
            statement,
            relation,
            lhs: lhs.filter(|_| keep_values).map(|v| v.value),
            rhs: rhs.filter(|_| keep_values).map(|v| v.value),
            status,
            hypotheses: used,
            inputs: inputs.to_string(),
            reason: if keep_values { None } else { reason },
        });
    }

    fn le(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        hyps: &[(&str, Flag)],
        lhs: Input,
        rhs: Input,
    ) {
        self.push(id.into(), statement.into(), Relation::Le, hyps, lhs, rhs);
    }
}

fn lift<T>(r: Result<T, String>, f: impl FnOnce(T) -> Input) -> Input {
    r.and_then(f)
}

/// Evaluate every inequality row on the given data.
pub fn check_bounds(inp: &BoundInputs) -> BoundReport {
    let h = &inp.hyp;
    let mut b = Builder { rows: Vec::new() };
    let dim_h = inp.dim_h as i64;
    let semisimple = ("H semisimple", h.semisimple);
    let group = ("H a group algebra", Flag::Verified(h.group_algebra));

    // saturation degree and algebra generators
    b.le(
        "beta_le_tau",
        "β(A^H) ≤ τ_H(A)",
        &[semisimple],
        need(&inp.beta, "β"),
        need(&inp.tau, "τ"),
    );
    b.le(
        "beta_le_tau_op",
        "β(A^H) ≤ τ^op_H(A)",
        &[semisimple],
        need(&inp.beta, "β"),
        need(&inp.tau_op, "τ^op"),
    );

    let regular_hyps = [
        semisimple,
        ("T AS regular", h.t_as_regular),
        ("T noetherian", h.t_noetherian),
        ("T domain", h.t_domain),
        ("T generated in degree 1", h.t_generated_in_degree_one),
        ("T#H prime", h.smash_product_prime),
        ("T^H finite global dimension", h.r_finite_gldim),
    ];
    let dim_val = Ok(Val::int(dim_h, true));
    b.le(
        "beta_le_dim_h",
        "β(T^H) ≤ dim H",
        &regular_hyps,
        need(&inp.beta, "β"),
        dim_val.clone(),
    );
    b.le(
        "tau_le_dim_h",
        "τ_H(T) ≤ dim H",
        &regular_hyps,
        need(&inp.tau, "τ"),
        dim_val.clone(),
    );

    let central_flag = match inp.central {
        Some(c) if c.asserted => Flag::Asserted(true),
        Some(_) => Flag::Verified(true),
        None => Flag::Unknown,
    };
    let field_or_group = Flag::Verified(h.group_algebra || h.char_zero);
    let central_hyps = [
        semisimple,
        ("A domain", h.t_domain),
        ("A finite over a central H-stable subalgebra", central_flag),
        ("group algebra or characteristic 0", field_or_group),
    ];
    let central_rhs = |shift: i64| -> Input {
        inp.central
            .map(|c| Val::int((c.d as i64) * dim_h + c.m as i64 + shift, true))
            .ok_or_else(|| "central subalgebra data unavailable".to_string())
    };
    b.le(
        "beta_le_central_bound",
        "β(A^H) ≤ d·dim H + m",
        &central_hyps,
        need(&inp.beta, "β"),
        central_rhs(0),
    );
    b.le(
        "tau_le_central_bound",
        "τ_H(A) ≤ d·dim H + m",
        &central_hyps,
        need(&inp.tau, "τ"),
        central_rhs(0),
    );
    for (i, q) in inp.hopf_annihilator_quotients.iter().enumerate() {
        b.le(
            format!("annihilator_{i}_le_central_bound"),
            format!("deg A/J_{{H,{i}}} ≤ d·dim H + m − 1"),
            &central_hyps,
            need(q, "deg A/J_{H,i}"),
            central_rhs(-1),
        );
    }
    b.le(
        "annihilator_infinity_le_central_bound",
        "deg A/J_∞ ≤ d·dim H + m − 1",
        &central_hyps,
        need(&inp.hopf_annihilator_infinity, "deg A/J_∞"),
        central_rhs(-1),
    );
    let skew = (
        "T = k_{−1}[x₁,…,x_n]",
        Flag::Verified(inp.skew_polynomial_n.is_some()),
    );
    let skew_rhs = |f: &dyn Fn(i64) -> i64| -> Input {
        inp.skew_polynomial_n
            .map(|n| Val::int(f(n as i64), true))
            .ok_or_else(|| "not a skew polynomial ring".to_string())
    };
    b.le(
        "beta_le_skew_bound",
        "β(k_{−1}[x₁,…,x_n]^G) ≤ 2|G| + n",
        &[group, semisimple, skew],
        need(&inp.beta, "β"),
        skew_rhs(&|n| 2 * dim_h + n),
    );

    b.push(
        "hilbert_ratio_eq_dim_h".into(),
        "(h_A/h_{A^H})(1) = dim H".into(),
        Relation::Eq,
        &[
            semisimple,
            ("A noetherian", h.t_noetherian),
            ("A domain", h.t_domain),
            ("A#H prime", h.smash_product_prime),
        ],
        need(&inp.hilbert_ratio, "Hilbert series ratio"),
        dim_val.clone(),
    );

    // syzygies of R over k, no second algebra needed
    let koszul_group_hyps = [
        group,
        semisimple,
        skew,
        ("T^G commutative", h.r_commutative),
    ];
    b.le(
        "t1_r_le_skew_bound",
        "t^R_1(k) ≤ 2|G| + n",
        &koszul_group_hyps,
        t_at(&inp.t_r, 1, "t^R"),
        skew_rhs(&|n| 2 * dim_h + n),
    );
    for i in 2..inp.t_r.len() {
        b.le(
            format!("t{i}_r_le_skew_bound"),
            format!("t^R_{i}(k) ≤ {i}(2|G| + n + 1) − 2"),
            &koszul_group_hyps,
            t_at(&inp.t_r, i, "t^R"),
            skew_rhs(&|n| i as i64 * (2 * dim_h + n + 1) - 2),
        );
    }
    let hyp_t_regular = [
        semisimple,
        ("T AS regular", h.t_as_regular),
        ("T generated in degree 1", h.t_generated_in_degree_one),
    ];
    let tau_sum = lift(need(&inp.tau, "τ"), |t| {
        lift(need(&inp.tau_op, "τ^op"), |u| {
            lift(need(&inp.cmreg_t, "CMreg T"), |c| t.add(&u).sub(&c))
        })
    });
    b.le(
        "beta2_r_le_tau_sum",
        "β₂(R) ≤ τ_H(T) + τ^op_H(T) − CMreg(T)",
        &hyp_t_regular,
        t_at(&inp.t_r, 2, "t^R"),
        tau_sum.clone(),
    );

    let delta = match (&inp.cmreg_t, inp.s.as_ref().and_then(|s| s.cmreg.clone())) {
        (Some(ct), Some(cs)) => ct.sub(&cs).ok(),
        _ => None,
    };

    if let Some(s) = &inp.s {
        let s_reg = ("S AS regular", h.s_as_regular);
        let s_noeth = ("S noetherian", h.s_noetherian);
        let fin = ("R finite over S on both sides", h.finite_both_sides);
        let t_reg = ("T AS regular", h.t_as_regular);
        let t0 = t_at(&s.t_r_left, 0, "t^S(_S R)");
        let t1 = t_at(&s.t_r_left, 1, "t^S(_S R)");
        let beta_s = t_at(&s.t_k, 1, "t^S");
        let beta2_s = t_at(&s.t_k, 2, "t^S");
        let beta2_r = t_at(&inp.t_r, 2, "t^R");
        let max_in = |xs: Vec<Input>| -> Input {
            let vs: Result<Vec<Val>, String> = xs.into_iter().collect();
            vs.map(|v| Val::max_of(&v))
        };
        b.le(
            "beta_r_le_source_bound",
            "β(R) ≤ max{β(S), t^S_0(_S R)}",
            &[fin],
            need(&inp.beta, "β"),
            max_in(vec![beta_s.clone(), t0.clone()]),
        );
        b.le(
            "beta2_r_le_source_bound",
            "β₂(R) ≤ max{2t^S_0, t^S_0 + β(S), β₂(S), t^S_1}",
            &[fin],
            beta2_r.clone(),
            max_in(vec![
                t0.clone().map(|v| v.mul_int(2)),
                lift(t0.clone(), |v| beta_s.clone().map(|b| v.add(&b))),
                beta2_s.clone(),
                t1.clone(),
            ]),
        );
        let delta_in: Input = delta
            .clone()
            .ok_or_else(|| "δ(T/S) unavailable".to_string());
        let source_hyps = [semisimple, t_reg, s_reg, s_noeth, fin];
        b.le(
            "beta_r_le_delta_bound",
            "β(T^H) ≤ max{β(S), δ(T/S)}",
            &source_hyps,
            need(&inp.beta, "β"),
            max_in(vec![beta_s.clone(), delta_in.clone()]),
        );
        b.le(
            "beta2_r_le_delta_bound",
            "β₂(T^H) ≤ max{2δ, δ + β(S), β₂(S)}",
            &source_hyps,
            beta2_r.clone(),
            max_in(vec![
                delta_in.clone().map(|d| d.mul_int(2)),
                lift(delta_in.clone(), |d| beta_s.clone().map(|b| d.add(&b))),
                beta2_s.clone(),
            ]),
        );

        // Cohen–Macaulay bound, with s asserted or taken as gldim T
        let (s_cm, s_flag) = match (s.cohen_macaulay_s, inp.gldim_t) {
            (Some(v), _) => (Some(v), Flag::Asserted(true)),
            (None, Some(n)) => (Some(n), h.t_as_regular),
            _ => (None, Flag::Unknown),
        };
        let cm_hyps = [
            semisimple,
            t_reg,
            s_reg,
            s_noeth,
            fin,
            ("_S R is s-Cohen–Macaulay", s_flag),
        ];
        for i in 0..s.t_r_left.len() {
            let rhs = match s_cm {
                Some(sv) => lift(need(&inp.cmreg_t, "CMreg T"), |c| {
                    t_at(&s.t_k, i + sv, "t^S").map(|t| t.add(&c).add_int(-(sv as i64)))
                }),
                None => Err("Cohen–Macaulay depth unavailable".into()),
            };
            b.le(
                format!("t{i}_s_r_le_cm_bound"),
                format!("t^S_{i}(_S R) ≤ CMreg(T) − s + t^S_{{{i}+s}}(k)"),
                &cm_hyps,
                t_at(&s.t_r_left, i, "t^S(_S R)"),
                rhs,
            );
        }

        // regularity of T over S
        let reg_pair = [t_reg, s_reg, s_noeth, fin];
        for i in 0..s.t_t_right.len() {
            b.le(
                format!("t{i}_s_t_le_delta_plus_i"),
                format!("t^S_{i}(T_S) ≤ δ(T/S) + {i}"),
                &reg_pair,
                t_at(&s.t_t_right, i, "t^S(T_S)"),
                delta_in.clone().map(|d| d.add_int(i as i64)),
            );
        }
        b.le(
            "tau_le_delta_plus_one",
            "τ_H(T) ≤ δ(T/S) + 1",
            &[
                semisimple,
                t_reg,
                s_reg,
                s_noeth,
                fin,
                ("S → T^H surjective", h.surjective),
            ],
            need(&inp.tau, "τ"),
            delta_in.clone().map(|d| d.add_int(1)),
        );
        b.le(
            "tau_op_le_delta_plus_one",
            "τ^op_H(T) ≤ δ(T/S) + 1",
            &[
                semisimple,
                t_reg,
                s_reg,
                s_noeth,
                fin,
                ("S → T^H surjective", h.surjective),
            ],
            need(&inp.tau_op, "τ^op"),
            delta_in.clone().map(|d| d.add_int(1)),
        );

        // change of rings spectral sequence edges, A = S, B = T
        let ss_hyps = [s_noeth, fin];
        for i in 0..s.tor_t_of_quotient.len() {
            let mut terms: Vec<Input> = (0..i.saturating_sub(1))
                .map(|j| {
                    lift(t_at(&inp.t_t, j, "t^T"), |a| {
                        t_at(&s.t_t_right, i - j - 1, "t^S(T_S)").map(|b| a.add(&b))
                    })
                })
                .collect();
            terms.push(t_at(&s.t_k, i, "t^S"));
            b.le(
                format!("bottom_row_{i}"),
                format!(
                    "deg Tor^T_{i}(k, T ⊗_S k) ≤ max{{t^T_j + t^S_{{{i}−j−1}}(T_S), t^S_{i}(k)}}"
                ),
                &ss_hyps,
                t_at(&s.tor_t_of_quotient, i, "deg Tor^T(k, T ⊗_S k)"),
                max_in(terms),
            );
        }
        for i in 0..s.tor_generation.len() {
            let mut terms: Vec<Input> = (0..i)
                .map(|j| {
                    lift(t_at(&s.t_t_right, j, "t^S(T_S)"), |a| {
                        t_at(&inp.t_t, i - j + 1, "t^T").map(|b| a.add(&b))
                    })
                })
                .collect();
            terms.push(t_at(&s.t_k, i, "t^S"));
            b.le(
                format!("first_column_{i}"),
                format!(
                    "deg k ⊗_T Tor^S_{i}(T, k) ≤ max{{t^S_j(T_S) + t^T_{{{i}−j+1}}, t^S_{i}(k)}}"
                ),
                &ss_hyps,
                t_at(&s.tor_generation, i, "deg k ⊗_T Tor^S(T, k)"),
                max_in(terms),
            );
        }

        // D_i and U^i_j, with B = T and A = S
        let tb2 = t_at(&inp.t_t, 2, "t^T");
        for (i, q) in s.annihilator_quotients.iter().enumerate().skip(1) {
            let q = need(q, "deg T/J_{≤i}");
            let d_target = lift(q.clone(), |q| d_value(i, &q, &inp.t_t, None, false));
            let u = lift(d_target.clone(), |d| u_values(i, &d, &inp.t_t).map(|_| d));
            let us = d_target.clone().and_then(|d| u_values(i, &d, &inp.t_t));
            for j in 0..=i {
                let rhs = lift(us.clone(), |us| {
                    lift(u.clone(), |d| {
                        lift(tb2.clone(), |tb2| {
                            let mut terms = vec![us[j].clone()];
                            for k in 0..=j {
                                terms.push(t_at(&s.t_k, k, "t^S")?.add(&d.mul_int((j - k) as i64)));
                            }
                            Val::max_of(&terms).add(&d).sub(&tb2)
                        })
                    })
                });
                b.le(
                    format!("syzygy_{i}_{j}_le_u_bound"),
                    format!(
                        "t^S_{j}(T_S) ≤ max{{U^{i}_{j}, t^S_k(k) + ({j}−k)D_{i}}} + D_{i} − t^T_2"
                    ),
                    &[s_noeth, fin],
                    t_at(&s.t_t_right, j, "t^S(T_S)"),
                    rhs,
                );
            }
            let d_both = lift(q.clone(), |q| d_value(i, &q, &inp.t_t, Some(&s.t_k), false));
            for j in 1..=i {
                b.le(
                    format!("syzygy_{i}_{j}_le_linear_bound"),
                    format!("t^S_{j}(T_S) ≤ ({j}+1)D_{i} − t^T_2"),
                    &[s_noeth, fin],
                    t_at(&s.t_t_right, j, "t^S(T_S)"),
                    lift(d_both.clone(), |d| {
                        tb2.clone().and_then(|t| d.mul_int(j as i64 + 1).sub(&t))
                    }),
                );
            }
            let d_relations = lift(q.clone(), |q| d_value(i, &q, &inp.t_t, Some(&s.t_k), true));
            let image_hyps = [
                s_noeth,
                fin,
                semisimple,
                ("T generated in degree 1", h.t_generated_in_degree_one),
                ("S → T^H surjective", h.surjective),
            ];
            b.le(
                format!("t1_r_le_image_bound_{i}"),
                format!("t^R_1(k) ≤ D_{i} − t^T_2 + 1"),
                &image_hyps,
                t_at(&inp.t_r, 1, "t^R"),
                lift(d_relations.clone(), |d| {
                    tb2.clone().and_then(|t| d.sub(&t)).map(|v| v.add_int(1))
                }),
            );
            for j in 2..=i {
                b.le(
                    format!("t{j}_r_le_image_bound_{i}"),
                    format!("t^R_{j}(k) ≤ {j}D_{i} − t^T_2"),
                    &image_hyps,
                    t_at(&inp.t_r, j, "t^R"),
                    lift(d_relations.clone(), |d| {
                        tb2.clone().and_then(|t| d.mul_int(j as i64).sub(&t))
                    }),
                );
            }
        }

        // Koszul T, bounds through deg T/J_∞
        let jinf = need(&s.annihilator_infinity, "deg T/J_∞");
        let koszul = ("T Koszul", h.t_koszul);
        let s_grows = {
            let ok = lift(jinf.clone(), |q| {
                let mut fine = true;
                let mut cert = q.certified;
                for j in 0..s.t_k.len() {
                    let t = t_at(&s.t_k, j, "t^S")?;
                    cert &= t.certified;
                    fine &= t.value <= q.add_int(2).mul_int(j as i64).value;
                }
                Ok(Val {
                    value: ExtRat::int(fine as i64),
                    certified: cert,
                })
            });
            match ok {
                Ok(v) if v.value == ExtRat::int(1) => Flag::Verified(true),
                Ok(_) => Flag::Verified(false),
                Err(_) => Flag::Unknown,
            }
        };
        let koszul_hyps = [
            semisimple,
            t_reg,
            koszul,
            s_reg,
            s_noeth,
            fin,
            ("S → T^H surjective", h.surjective),
            ("t^S_j(k) ≤ j(deg T/J_∞ + 2)", s_grows),
        ];
        for i in 0..s.t_r_right.len() {
            b.le(
                format!("t{i}_s_r_le_koszul_bound"),
                format!("t^S_{i}(R_S) ≤ {i}(deg T/J_∞ + 2) + deg T/J_∞"),
                &koszul_hyps,
                t_at(&s.t_r_right, i, "t^S(R_S)"),
                jinf.clone().map(|q| q.add_int(2).mul_int(i as i64).add(&q)),
            );
        }
        let max_j = inp.t_r.len().min(s.t_k.len()).saturating_sub(1);
        let tor1_cond = jinf
            .clone()
            .and_then(|q| -> Result<Flag, String> {
                let mut terms = Vec::new();
                for j in 2..=max_j {
                    terms.push(
                        t_at(&s.t_k, j, "t^S")?
                            .add(&tb2.clone()?)
                            .div_int(j as i64)
                            .add_int(-2),
                    );
                }
                let m = Val::max_of(&terms);
                Ok(if q.value >= m.value {
                    Flag::Verified(true)
                } else {
                    Flag::Verified(false)
                })
            })
            .unwrap_or(Flag::Unknown);
        let mut koszul_r_hyps = koszul_hyps.to_vec();
        koszul_r_hyps.push(("deg T/J_∞ ≥ max (t^S_j + t^T_2)/j − 2", tor1_cond));
        b.le(
            "t1_r_le_koszul_bound",
            "t^R_1(k) ≤ deg T/J_∞ + 1",
            &koszul_r_hyps,
            t_at(&inp.t_r, 1, "t^R"),
            jinf.clone().map(|q| q.add_int(1)),
        );
        for j in 2..=max_j {
            b.le(
                format!("t{j}_r_le_koszul_bound"),
                format!("t^R_{j}(k) ≤ {j}(deg T/J_∞ + 2) − 2"),
                &koszul_r_hyps,
                t_at(&inp.t_r, j, "t^R"),
                jinf.clone()
                    .map(|q| q.add_int(2).mul_int(j as i64).add_int(-2)),
            );
        }

        // relations of R through the saturation degrees
        let mut t511 = hyp_t_regular.to_vec();
        t511.extend([
            s_reg,
            s_noeth,
            ("S → R surjective", h.surjective),
            (
                "minimal generating spaces of S and R agree",
                h.minimal_generators_match,
            ),
        ]);
        let delta_form = lift(need(&s.cmreg, "CMreg S"), |cs| {
            need(&inp.cmreg_t, "CMreg T").map(|ct| ct.add(&cs.mul_int(2).neg()).add_int(2))
        });
        b.le(
            "tau_sum_le_regularity_bound",
            "τ_H(T) + τ^op_H(T) − CMreg(T) ≤ 2 − 2CMreg(S) + CMreg(T)",
            &t511,
            tau_sum.clone(),
            delta_form,
        );
        let mut t511b = t511.clone();
        t511b.push(("Tor^S_1(k, R) ⊗_R k ≅ Tor^S_1(k, R)", h.tor1_condition));
        b.le(
            "t1_s_r_le_tau_sum",
            "t^S_1(_S R) ≤ τ_H(T) + τ^op_H(T) − CMreg(T)",
            &t511b,
            t1,
            tau_sum.clone(),
        );
    }

    let d_values = match &inp.s {
        Some(s) => s
            .annihilator_quotients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, q)| {
                let calc = |src: bool, rel: bool| {
                    q.as_ref()
                        .and_then(|q| d_value(i, q, &inp.t_t, src.then_some(&s.t_k), rel).ok())
                };
                let basic = calc(false, false);
                let u = basic
                    .as_ref()
                    .and_then(|d| u_values(i, d, &inp.t_t).ok())
                    .map(|us| us.into_iter().map(|v| v.value).collect())
                    .unwrap_or_default();
                DValues {
                    i,
                    basic: basic.map(|v| v.value),
                    with_source: calc(true, false).map(|v| v.value),
                    with_relations: calc(true, true).map(|v| v.value),
                    u,
                }
            })
            .collect(),
        None => Vec::new(),
    };

    BoundReport {
        rows: b.rows,
        delta: delta.map(|d| d.value),
        d_values,
        raw: RawInvariants {
            dim_h: inp.dim_h,
            gldim_t: inp.gldim_t,
            cmreg_t: inp.cmreg_t.as_ref().map(|v| v.value.clone()),
            beta: inp.beta.as_ref().map(|v| v.value.clone()),
        },
    }
}

impl Val {
    /// Negation for finite values.
    pub fn neg(&self) -> Val {
        self.map(|v| match v {
            ExtRat::Fin(a) => ExtRat::Fin(-a.clone()),
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
        })
    }
}

impl ExtRat {
    pub fn is_negative(&self) -> bool {
        match self {
            ExtRat::Fin(a) => a.is_negative(),
            ExtRat::NegInf => true,
            ExtRat::PosInf => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Fin(a) if a.is_zero())
    }
}
