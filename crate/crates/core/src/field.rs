//! Exact scalars: ℚ and simple extensions ℚ[a]/(p(a)).

use crate::error::{Error, Result};
use crate::upoly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

#[derive(Debug, PartialEq, Eq)]
pub struct FieldSpec {
    minpoly: Vec<BigInt>,
    label: String,
    modulus: QPoly,
}

impl FieldSpec {
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }
}

/// Shared handle to a field. Degree-one fields are all identified with ℚ.
#[derive(Clone, Debug)]
pub struct Field(Option<Arc<FieldSpec>>);

impl PartialEq for Field {
    fn eq(&self, o: &Field) -> bool {
        match (&self.0, &o.0) {
            (None, None) => true,
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.modulus == b.modulus,
            _ => false,
        }
    }
}
impl Eq for Field {}

impl Field {
    pub fn rationals() -> Field {
        Field(None)
    }

    /// Build ℚ[a]/(p) from integer coefficients of `p`, lowest degree first.
    pub fn new(minpoly: Vec<BigInt>, label: impl Into<String>) -> Result<Field> {
        let p = QPoly::from_bigints(&minpoly);
        let deg = p
            .degree()
            .ok_or_else(|| Error::InvalidField("minimal polynomial is zero".into()))?;
        if deg == 0 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if deg == 1 {
            return Ok(Field::rationals());
        }
        if deg <= 6 {
            if let Some(f) = find_factor(&minpoly) {
                return Err(Error::InvalidField(format!(
                    "minimal polynomial {} is reducible (factor {})",
                    p.render("a"),
                    f.render("a")
                )));
            }
        }
        Ok(Field(Some(Arc::new(FieldSpec {
            minpoly,
            label: label.into(),
            modulus: p.monic(),
        }))))
    }

    pub fn from_i64s(minpoly: &[i64], label: &str) -> Result<Field> {
        Field::new(minpoly.iter().map(|&c| BigInt::from(c)).collect(), label)
    }

    /// ℚ(ω) for a primitive m-th root of unity ω, via the m-th cyclotomic polynomial.
    pub fn cyclotomic(m: usize) -> Result<Field> {
        if m == 0 {
            return Err(Error::InvalidField("m must be positive".into()));
        }
        let p = cyclotomic_poly(m);
        Field::new(p.to_integers().unwrap(), format!("Q(zeta_{m})"))
    }

    pub fn spec(&self) -> Option<&FieldSpec> {
        self.0.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.0.as_ref().map_or(1, |s| s.degree())
    }

    pub fn is_rationals(&self) -> bool {
        self.0.is_none()
    }

    pub fn label(&self) -> String {
        self.0
            .as_ref()
            .map_or_else(|| "Q".into(), |s| s.label.clone())
    }

    /// Minimal polynomial as integers, lowest degree first (`[0, 1]` for ℚ).
    pub fn minpoly(&self) -> Vec<BigInt> {
        self.0.as_ref().map_or_else(
            || vec![BigInt::zero(), BigInt::one()],
            |s| s.minpoly.clone(),
        )
    }

    pub fn zero(&self) -> Scalar {
        self.from_rational(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Scalar {
        self.from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(&self, c: BigRational) -> Scalar {
        match &self.0 {
            None => Scalar::Q(c),
            Some(s) => {
                let mut v = vec![BigRational::zero(); s.degree()];
                v[0] = c;
                Scalar::Ext(s.clone(), v.into_boxed_slice())
            }
        }
    }

    /// The generator `a` of the extension (for ℚ, the root of the linear minimal polynomial).
    pub fn generator(&self) -> Scalar {
        match &self.0 {
            None => Scalar::Q(BigRational::zero()),
            Some(_) => self.from_coeffs(vec![BigRational::zero(), BigRational::one()]),
        }
    }

    /// Scalar from coordinates on 1, a, a², …; longer inputs are reduced modulo the minimal polynomial.
    pub fn from_coeffs(&self, coeffs: Vec<BigRational>) -> Scalar {
        match &self.0 {
            None => Scalar::Q(coeffs.into_iter().next().unwrap_or_else(BigRational::zero)),
            Some(s) => {
                let n = s.degree();
                let r = reduce(&s.modulus, coeffs);
                let mut v = r.coeffs().to_vec();
                v.resize(n, BigRational::zero());
                Scalar::Ext(s.clone(), v.into_boxed_slice())
            }
        }
    }
}

fn reduce(modulus: &QPoly, coeffs: Vec<BigRational>) -> QPoly {
    QPoly::new(coeffs).rem(modulus)
}

/// Φ_m(t) with integer coefficients.
pub fn cyclotomic_poly(m: usize) -> QPoly {
    // t^m - 1 = Π_{d | m} Φ_d(t)
    let mut p = QPoly::monomial(BigRational::one(), m).sub(&QPoly::one());
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    p
}

/// Search for a proper factor of an integer polynomial (degree ≤ 6) by interpolation
/// through integer points and divisor enumeration.
fn find_factor(minpoly: &[BigInt]) -> Option<QPoly> {
    let f = QPoly::from_bigints(minpoly);
    let n = f.degree()?;
    let fv = |x: i64| -> BigInt { f.eval(&BigRational::from_integer(x.into())).to_integer() };
    for k in 1..=n / 2 {
        // Choose k+1 integer points with small nonzero |f(x)|.
        let mut pts: Vec<(i64, BigInt)> = (-12..=12).map(|x| (x, fv(x))).collect();
        if let Some((x, _)) = pts.iter().find(|(_, v)| v.is_zero()) {
            return Some(QPoly::from_ints([-x, 1]));
        }
        pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
        pts.truncate(k + 1);
        let divisors: Vec<Vec<BigInt>> = pts.iter().map(|(_, v)| signed_divisors(v)).collect();
        let total: usize = divisors.iter().map(|d| d.len()).product();
        if total > 2_000_000 {
            continue;
        }
        let mut idx = vec![0usize; k + 1];
        loop {
            let vals: Vec<(BigRational, BigRational)> = (0..=k)
                .map(|i| {
                    (
                        BigRational::from_integer(pts[i].0.into()),
                        BigRational::from_integer(divisors[i][idx[i]].clone()),
                    )
                })
                .collect();
            let g = interpolate(&vals);
            if g.degree() == Some(k) && g.is_integral() && f.rem(&g).is_zero() {
                return Some(g);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos > k {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divisors[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > k {
                break;
            }
        }
    }
    None
}

fn signed_divisors(v: &BigInt) -> Vec<BigInt> {
    let a = v.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= a {
        if a.is_multiple_of(&d) {
            let e = &a / &d;
            out.push(d.clone());
            out.push(-d.clone());
            if e != d {
                out.push(e.clone());
                out.push(-e);
            }
        }
        d += 1;
    }
    out
}

fn interpolate(pts: &[(BigRational, BigRational)]) -> QPoly {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut term = QPoly::constant(yi.clone());
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i != j {
                let lin = QPoly::new(vec![-xj.clone(), BigRational::one()]);
                term = term.mul(&lin).scale(&(xi - xj).recip());
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// An element of a [`Field`]. Immutable; cheap to share across threads.
#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Ext(Arc<FieldSpec>, Box<[BigRational]>),
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => a == b,
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) => {
                (Arc::ptr_eq(f, g) || f.modulus == g.modulus) && a == b
            }
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Q(a) => a.hash(state),
            Scalar::Ext(_, c) => {
                let n = c.iter().rposition(|x| !x.is_zero()).map_or(0, |k| k + 1);
                if n <= 1 {
                    c[0].hash(state)
                } else {
                    c[..n].hash(state)
                }
            }
        }
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field(None),
            Scalar::Ext(s, _) => Field(Some(s.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_zero(),
            Scalar::Ext(_, c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(a) => a.is_one(),
            Scalar::Ext(_, c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// Coordinates on 1, a, a², ….
    pub fn coeffs(&self) -> Vec<BigRational> {
        match self {
            Scalar::Q(a) => vec![a.clone()],
            Scalar::Ext(_, c) => c.to_vec(),
        }
    }

    /// The rational value when the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(a) => Some(a.clone()),
            Scalar::Ext(_, c) => c[1..].iter().all(|x| x.is_zero()).then(|| c[0].clone()),
        }
    }

    fn mismatch(&self, o: &Scalar) -> Error {
        Error::FieldMismatch(self.field().label(), o.field().label())
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a + b)),
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) if same(f, g) => Ok(Scalar::Ext(
                f.clone(),
                a.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
            )),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a - b)),
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) if same(f, g) => Ok(Scalar::Ext(
                f.clone(),
                a.iter().zip(b.iter()).map(|(x, y)| x - y).collect(),
            )),
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(a * b)),
            (Scalar::Ext(f, a), Scalar::Ext(g, b)) if same(f, g) => {
                let n = a.len();
                let mut prod = vec![BigRational::zero(); 2 * n - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                // reduce with the monic modulus from the top down
                let m = f.modulus.coeffs();
                for k in (n..2 * n - 1).rev() {
                    if prod[k].is_zero() {
                        continue;
                    }
                    let c = std::mem::take(&mut prod[k]);
                    for (i, mi) in m.iter().enumerate().take(n) {
                        if !mi.is_zero() {
                            prod[k - n + i] -= &c * mi;
                        }
                    }
                }
                prod.truncate(n);
                Ok(Scalar::Ext(f.clone(), prod.into_boxed_slice()))
            }
            _ => Err(self.mismatch(o)),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Scalar::Q(a) => Ok(Scalar::Q(a.recip())),
            Scalar::Ext(f, c) => {
                let a = QPoly::new(c.to_vec());
                let (g, s, _) = a.ext_gcd(&f.modulus);
                if g.degree() != Some(0) {
                    return Err(Error::InvalidField(
                        "minimal polynomial is reducible: a nonzero element has no inverse".into(),
                    ));
                }
                Ok(Field(Some(f.clone())).from_coeffs(s.coeffs().to_vec()))
            }
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_mul(&o.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Compact textual form: `3/2`, or `[c0, c1, …]` over an extension.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Q(a) => a.to_string(),
            Scalar::Ext(_, c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }

    /// Serializable form: a rational string over ℚ, an array of rational strings otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Q(a) => rational_json(a),
            Scalar::Ext(_, c) => serde_json::Value::Array(c.iter().map(rational_json).collect()),
        }
    }
}

pub fn rational_json(a: &BigRational) -> serde_json::Value {
    if a.is_integer() {
        if let Ok(v) = i64::try_from(a.to_integer()) {
            return serde_json::Value::from(v);
        }
    }
    serde_json::Value::String(a.to_string())
}

fn same(f: &Arc<FieldSpec>, g: &Arc<FieldSpec>) -> bool {
    Arc::ptr_eq(f, g) || f.modulus == g.modulus
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(a) => write!(f, "{a}"),
            Scalar::Ext(_, c) => write!(f, "({})", QPoly::new(c.to_vec()).render("a")),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics when the operands live in different fields.
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect("field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$checked(&o).expect("field mismatch")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Ext(f, c) => Scalar::Ext(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

static QQ_ZERO: OnceLock<Scalar> = OnceLock::new();

/// Shared rational zero, handy for defaults.
pub fn rational_zero() -> &'static Scalar {
    QQ_ZERO.get_or_init(|| Scalar::Q(BigRational::zero()))
}

/// Parse a rational from `"a/b"`, `"a"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition() {
        let q = Field::rationals();
        assert_eq!(
            &q.from_ratio(1, 2) + &q.from_ratio(1, 3),
            q.from_ratio(5, 6)
        );
    }

    #[test]
    fn gaussian_square() {
        let k = Field::from_i64s(&[1, 0, 1], "Q(i)").unwrap();
        let a = k.generator();
        assert_eq!(&a * &a, k.from_int(-1));
        assert_eq!(a.inverse().unwrap(), -&a);
    }

    #[test]
    fn cube_roots() {
        let k = Field::from_i64s(&[1, 1, 1], "Q(w)").unwrap();
        let w = k.generator();
        let w2 = &w * &w;
        assert!((&w * &w2).is_one());
        let one_plus_w = &k.one() + &w;
        assert_eq!(one_plus_w.inverse().unwrap(), -&w);
    }

    #[test]
    fn rational_inverse() {
        let q = Field::rationals();
        assert_eq!(q.from_ratio(2, 3).inverse().unwrap(), q.from_ratio(3, 2));
        assert_eq!(q.zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields() {
        let k = Field::from_i64s(&[1, 0, 1], "Q(i)").unwrap();
        let q = Field::rationals();
        assert!(matches!(
            k.one().checked_add(&q.one()),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn reducible_rejected() {
        assert!(Field::from_i64s(&[-1, 0, 1], "bad").is_err());
        assert!(Field::from_i64s(&[4, 0, 0, 0, 1], "bad").is_err()); // (t²+2t+2)(t²-2t+2)
        assert!(Field::from_i64s(&[1, 0, 0, 0, 1], "ok").is_ok());
        assert!(Field::from_i64s(&[3], "const").is_err());
    }

    #[test]
    fn cyclotomic_fields() {
        assert_eq!(cyclotomic_poly(5), QPoly::from_ints([1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), QPoly::from_ints([1, 0, 1]));
        let k = Field::cyclotomic(5).unwrap();
        assert!(k.generator().pow(5).is_one());
        assert!(!k.generator().pow(1).is_one());
        assert!(Field::cyclotomic(2).unwrap().is_rationals());
    }

    #[test]
    fn reduce_is_idempotent() {
        let k = Field::from_i64s(&[1, 1, 1], "Q(w)").unwrap();
        let long: Vec<BigRational> = (1..7)
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        let once = k.from_coeffs(long);
        let twice = k.from_coeffs(once.coeffs());
        assert_eq!(once, twice);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(
            parse_rational("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            parse_rational("7"),
            Some(BigRational::from_integer(7.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
    }
}
