use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::geometry::{Halfspace, RPoint, RVector, Rational};

/// `x ↦ coeffs · x + constant` with integer data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap {
    pub coeffs: Vec<BigInt>,
    pub constant: BigInt,
}

impl AffineMap {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt) -> Self {
        AffineMap { coeffs, constant }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        AffineMap {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            constant: BigInt::from(constant),
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        AffineMap {
            coeffs: vec![BigInt::zero(); n],
            constant: BigInt::from(c),
        }
    }

    pub fn projection(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i] = BigInt::one();
        AffineMap {
            coeffs,
            constant: BigInt::zero(),
        }
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, p: &RPoint) -> Rational {
        let mut acc = Rational::from_integer(self.constant.clone());
        for (a, x) in self.coeffs.iter().zip(p.coords()) {
            if !a.is_zero() {
                acc += x * a;
            }
        }
        acc
    }

    /// Linear part applied to a direction.
    pub fn slope(&self, u: &RVector) -> Rational {
        self.coeffs
            .iter()
            .zip(u.coords())
            .fold(Rational::zero(), |acc, (a, x)| acc + x * a)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    pub fn add(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    pub fn sub(&self, other: &AffineMap) -> AffineMap {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> AffineMap {
        AffineMap {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn shift(&self, c: i64) -> AffineMap {
        AffineMap {
            coeffs: self.coeffs.clone(),
            constant: &self.constant + BigInt::from(c),
        }
    }

    /// `1 − self`
    pub fn complement(&self) -> AffineMap {
        self.scale(&BigInt::from(-1)).shift(1)
    }

    /// The halfspace `self ≥ 0`.
    pub fn nonneg_halfspace(&self) -> Halfspace {
        let normal: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        Halfspace::new(&normal, &Rational::from_integer(self.constant.clone()))
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            write!(f, "{c} ")?;
        }
        write!(f, "| {}", self.constant)
    }
}
