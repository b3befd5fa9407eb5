use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::{format_rational, Rational};

/// `a + b√d` with `d > 0` not a perfect square (all values in one
/// computation share `d`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

impl QuadSurd {
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        QuadSurd { a, b, d }
    }

    pub fn rational(a: Rational, d: &BigInt) -> Self {
        QuadSurd::new(a, Rational::zero(), d.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadSurd::new(self.a.clone(), -&self.b, self.d.clone())
    }

    /// `a² − d b²`
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        let c = self.conj();
        QuadSurd::new(c.a / &n, c.b / &n, self.d.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadSurd::rational(Rational::one(), &self.d);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with d b²
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl Add for &QuadSurd {
    type Output = QuadSurd;
    fn add(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.a + &o.a, &self.b + &o.b, self.d.clone())
    }
}

impl Sub for &QuadSurd {
    type Output = QuadSurd;
    fn sub(self, o: &QuadSurd) -> QuadSurd {
        QuadSurd::new(&self.a - &o.a, &self.b - &o.b, self.d.clone())
    }
}

impl Mul for &QuadSurd {
    type Output = QuadSurd;
    fn mul(self, o: &QuadSurd) -> QuadSurd {
        let d = Rational::from_integer(self.d.clone());
        QuadSurd::new(
            &self.a * &o.a + &self.b * &o.b * d,
            &self.a * &o.b + &self.b * &o.a,
            self.d.clone(),
        )
    }
}

impl Neg for &QuadSurd {
    type Output = QuadSurd;
    fn neg(self) -> QuadSurd {
        QuadSurd::new(-&self.a, -&self.b, self.d.clone())
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let root = format!("√{}", self.d);
        let b = if self.b.abs().is_one() {
            root
        } else {
            format!("{}{}", format_rational(&self.b.abs()), root)
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{b}"),
            (true, true) => write!(f, "-{b}"),
            (false, neg) => write!(
                f,
                "{}{}{}",
                format_rational(&self.a),
                if neg { "-" } else { "+" },
                b
            ),
        }
    }
}
