//! Hilbert series as rational functions fitted to observed dimensions.

use crate::error::{Error, Result};
use crate::upoly::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;

pub const DEFAULT_GUARD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub num: QPoly,
    pub den: QPoly,
    /// Expansion agrees with observed dimensions through this degree.
    pub verified_to: usize,
}

/// `Π (1 − t^{a_i})`.
pub fn product_denominator(parts: &[usize]) -> QPoly {
    parts.iter().fold(QPoly::one(), |acc, &a| {
        let mut c = vec![0i64; a + 1];
        c[0] = 1;
        c[a] -= 1;
        acc.mul(&QPoly::from_ints(c))
    })
}

impl HilbertSeries {
    /// Numerator from `dims · hint`, accepted when the top `guard` coefficients vanish.
    pub fn fit(dims: &[usize], hint: &QPoly, guard: usize) -> Result<Self> {
        let n = dims
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::NoFit("no dimensions".into()))?;
        let dd = hint
            .degree()
            .ok_or_else(|| Error::NoFit("zero denominator".into()))?;
        if hint.coeff(0).is_zero() {
            return Err(Error::NoFit("denominator vanishes at 0".into()));
        }
        if dd + guard > n {
            return Err(Error::NoFit(format!(
                "denominator degree {dd} needs dimensions through {} (have {n})",
                dd + guard
            )));
        }
        let series = QPoly::from_ints(dims.iter().map(|&x| x as i64));
        let prod = series.mul(hint);
        let cut = n - guard;
        if (cut + 1..=n).any(|k| !prod.coeff(k).is_zero()) {
            return Err(Error::NoFit(format!(
                "denominator {hint} leaves a numerator of degree above {cut}"
            )));
        }
        let num = QPoly::new((0..=cut).map(|k| prod.coeff(k)).collect());
        let g = num.gcd(hint);
        let (mut num, mut den) = (num.div_rem(&g).0, hint.div_rem(&g).0);
        let c0 = den.coeff(0);
        if !c0.is_one() {
            let inv = c0.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let s = HilbertSeries {
            num,
            den,
            verified_to: n,
        };
        debug_assert!(s.matches(dims));
        Ok(s)
    }

    /// Try denominators `Π(1 − t^a)` with parts `a ≤ max_part`, smallest total degree first.
    pub fn fit_auto(dims: &[usize], guard: usize, max_part: usize) -> Result<Self> {
        let n = dims.len().saturating_sub(1);
        let budget = n.saturating_sub(guard);
        for total in 0..=budget {
            let mut found = None;
            partitions(total, max_part, &mut |parts| {
                if found.is_none() {
                    if let Ok(s) = HilbertSeries::fit(dims, &product_denominator(parts), guard) {
                        found = Some(s);
                    }
                }
            });
            if let Some(s) = found {
                return Ok(s);
            }
        }
        Err(Error::NoFit(format!(
            "no denominator of degree at most {budget} fits"
        )))
    }

    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        self.num.series_div(&self.den, n)
    }

    pub fn matches(&self, dims: &[usize]) -> bool {
        let e = self.expand(dims.len().saturating_sub(1));
        e.iter()
            .zip(dims)
            .all(|(a, &b)| *a == BigRational::from_integer(BigInt::from(b)))
    }

    /// `deg num − deg den`, the a-invariant.
    pub fn a_invariant(&self) -> i64 {
        self.num.degree().map_or(i64::MIN, |d| d as i64) - self.den.degree().unwrap_or(0) as i64
    }

    /// Order of the pole at `t = 1`, the GK dimension for the supported algebras.
    pub fn pole_order(&self) -> i64 {
        self.den.root_multiplicity_at_one() as i64 - self.num.root_multiplicity_at_one() as i64
    }

    pub fn numerator_ints(&self) -> Option<Vec<BigInt>> {
        self.num.to_integers()
    }

    pub fn denominator_ints(&self) -> Option<Vec<BigInt>> {
        self.den.to_integers()
    }

    pub fn summary(&self) -> SeriesSummary {
        SeriesSummary {
            numerator: self.num.to_string(),
            denominator: self.den.to_string(),
            verified_to: self.verified_to,
            a_invariant: self.a_invariant(),
            pole_order: self.pole_order(),
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSummary {
    pub numerator: String,
    pub denominator: String,
    pub verified_to: usize,
    pub a_invariant: i64,
    pub pole_order: i64,
}

fn partitions(total: usize, max_part: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if rem == 0 {
            f(cur);
            return;
        }
        for a in (1..=max.min(rem)).rev() {
            cur.push(a);
            go(rem - a, a, cur, f);
            cur.pop();
        }
    }
    go(total, max_part, &mut Vec::new(), f);
}

/// `(p/q)(1)` after cancelling powers of `(1 − t)`.
pub fn ratio_at_one(p: &HilbertSeries, q: &HilbertSeries) -> Result<BigRational> {
    if q.num.is_zero() {
        return Err(Error::NoFit("second series is zero".into()));
    }
    let rn = p.num.mul(&q.den);
    let rd = p.den.mul(&q.num);
    let kn = rn.root_multiplicity_at_one();
    let kd = rd.root_multiplicity_at_one();
    if kd > kn {
        return Err(Error::ResidualPole { num: kn, den: kd });
    }
    if kn > kd {
        return Ok(BigRational::zero());
    }
    let one = BigRational::one();
    Ok(rn.divide_by_t_minus_one(kn).eval(&one) / rd.divide_by_t_minus_one(kd).eval(&one))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn skew_plane_fit() {
        let dims: Vec<usize> = (1..=9).collect();
        let s = HilbertSeries::fit(&dims, &product_denominator(&[1, 1]), 3).unwrap();
        assert_eq!(s.num, QPoly::one());
        assert_eq!(s.a_invariant(), -2);
        assert_eq!(s.pole_order(), 2);
    }

    #[test]
    fn down_up_fit() {
        let dims = [1, 2, 4, 6, 9, 12, 16, 20, 25];
        let s = HilbertSeries::fit(&dims, &product_denominator(&[1, 1, 2]), 3).unwrap();
        assert_eq!(s.num, QPoly::one());
        assert_eq!(s.a_invariant(), -4);
    }

    #[test]
    fn swap_invariants_series() {
        let dims = [1, 1, 1, 2, 3, 3, 3, 4, 5];
        assert!(HilbertSeries::fit(&dims, &product_denominator(&[1, 3]), 3).is_err());
        let den = product_denominator(&[1, 1]).mul(&QPoly::from_ints([1, 0, 1]));
        let s = HilbertSeries::fit(&dims, &den, 3).unwrap();
        assert_eq!(s.num, QPoly::from_ints([1, -1, 1]));
        let auto = HilbertSeries::fit_auto(&dims, 3, 4).unwrap();
        assert!(auto.matches(&dims));
        let a = HilbertSeries::fit(
            &(1..=9).collect::<Vec<_>>(),
            &product_denominator(&[1, 1]),
            3,
        )
        .unwrap();
        assert_eq!(ratio_at_one(&a, &s).unwrap(), q(2));
    }

    #[test]
    fn ratio_for_sign_action() {
        let a = HilbertSeries::fit(&[1; 8], &product_denominator(&[1]), 3).unwrap();
        let r =
            HilbertSeries::fit(&[1, 0, 1, 0, 1, 0, 1, 0], &product_denominator(&[2]), 3).unwrap();
        assert_eq!(ratio_at_one(&a, &r).unwrap(), q(2));
        assert_eq!(ratio_at_one(&a, &a).unwrap(), q(1));
        let poly2 = HilbertSeries::fit(
            &(1..=8).collect::<Vec<_>>(),
            &product_denominator(&[1, 1]),
            3,
        )
        .unwrap();
        assert!(matches!(
            ratio_at_one(&poly2, &a),
            Err(Error::ResidualPole { .. })
        ));
    }

    #[test]
    fn finite_dimensional_a_invariant() {
        let s = HilbertSeries::fit(&[1, 2, 1, 0, 0, 0, 0], &QPoly::one(), 3).unwrap();
        assert_eq!(s.a_invariant(), 2);
    }
}
