use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar. Reduced to lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() || d.is_negative() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// A point of Qⁿ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPoint(pub Vec<Rational>);

/// A direction in Qⁿ. Not normalized to unit length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector(pub Vec<Rational>);

impl RPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RPoint(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn from_pairs(coords: &[(i64, i64)]) -> Self {
        RPoint(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn origin(n: usize) -> Self {
        RPoint(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn in_unit_cube(&self) -> bool {
        self.0
            .iter()
            .all(|c| !c.is_negative() && *c <= Rational::one())
    }

    /// `self + t·v`
    pub fn offset(&self, v: &RVector, t: &Rational) -> RPoint {
        RPoint(
            self.0
                .iter()
                .zip(&v.0)
                .map(|(a, b)| a + b * t)
                .collect(),
        )
    }

    pub fn dist2(&self, other: &RPoint) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn from_pairs(coords: &[(i64, i64)]) -> Self {
        RVector(coords.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, t: &Rational) -> RVector {
        RVector(self.0.iter().map(|c| c * t).collect())
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|c| -c).collect())
    }

    /// Positive rescaling to coprime integer coordinates. Orientation is kept.
    pub fn primitive(&self) -> RVector {
        let ints = crate::geometry::linalg::integerize(&self.0);
        RVector(ints.into_iter().map(Rational::from_integer).collect())
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl Sub for &RPoint {
    type Output = RVector;
    fn sub(self, rhs: &RPoint) -> RVector {
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add<&RVector> for &RPoint {
    type Output = RPoint;
    fn add(self, rhs: &RVector) -> RPoint {
        RPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Index<usize> for RPoint {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

fn fmt_tuple(f: &mut fmt::Formatter<'_>, coords: &[Rational]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", format_rational(c))?;
    }
    write!(f, ")")
}

impl fmt::Display for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl fmt::Debug for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "1", "-3/4", "7/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn primitive_keeps_orientation() {
        let v = RVector::from_pairs(&[(-1, 2), (0, 1), (3, 4)]);
        assert_eq!(v.primitive(), RVector::from_ints(&[-2, 0, 3]));
    }
}
