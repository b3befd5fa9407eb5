//! Dense univariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geometry::Rational;

/// `coeffs[k]` is the coefficient of `t^k`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// `t`
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Sign of `p(t)` for all sufficiently large `t`.
    pub fn sign_at_infinity(&self) -> Ordering {
        self.leading().cmp(&BigInt::zero())
    }

    /// Every real root has absolute value at most this integer.
    pub fn root_bound(&self) -> BigInt {
        let lead = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::one() + m.div_ceil(&lead.max(BigInt::one()))
    }

    /// Integer points in `[lo, hi]` splitting the interval into pieces on
    /// which `p` is monotone, except pieces of length one.
    fn monotone_breaks(&self, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
        let mut out = vec![lo.clone(), hi.clone()];
        if self.degree().unwrap_or(0) >= 2 {
            let d = self.derivative();
            let inner = d.monotone_breaks(lo, hi);
            for w in inner.windows(2) {
                let (a, b) = (&w[0], &w[1]);
                let (sa, sb) = (d.eval(a).sign(), d.eval(b).sign());
                if sa == num_bigint::Sign::NoSign {
                    out.push(a.clone());
                }
                if sb == num_bigint::Sign::NoSign {
                    out.push(b.clone());
                }
                if sa != sb && sa != num_bigint::Sign::NoSign && sb != num_bigint::Sign::NoSign {
                    // d is monotone on [a, b]: locate the crossing
                    let (mut l, mut r) = (a.clone(), b.clone());
                    while &r - &l > BigInt::one() {
                        let m: BigInt = (&l + &r) >> 1;
                        let sm = d.eval(&m).sign();
                        if sm == num_bigint::Sign::NoSign {
                            l = m.clone();
                            r = m;
                            break;
                        }
                        if sm == sa {
                            l = m;
                        } else {
                            r = m;
                        }
                    }
                    out.push(l);
                    out.push(r);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// All integer roots in `[lo, hi]`, sorted.
    pub fn integer_roots_between(&self, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
        if lo > hi || self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let breaks = self.monotone_breaks(lo, hi);
        for w in breaks.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (va, vb) = (self.eval(a), self.eval(b));
            if va.is_zero() {
                roots.push(a.clone());
            }
            if vb.is_zero() {
                roots.push(b.clone());
            }
            if va.sign() != vb.sign() && !va.is_zero() && !vb.is_zero() {
                let sa = va.sign();
                let (mut l, mut r) = (a.clone(), b.clone());
                while &r - &l > BigInt::one() {
                    let m: BigInt = (&l + &r) >> 1;
                    let vm = self.eval(&m);
                    if vm.is_zero() {
                        roots.push(m);
                        break;
                    }
                    if vm.sign() == sa {
                        l = m;
                    } else {
                        r = m;
                    }
                }
            }
        }
        if breaks.len() == 1 && self.eval(lo).is_zero() {
            roots.push(lo.clone());
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// All integer roots `≥ lo`.
    pub fn integer_roots_from(&self, lo: &BigInt) -> Vec<BigInt> {
        let hi = self.root_bound().max(lo.clone());
        self.integer_roots_between(lo, &hi)
    }

    /// `p(i) ≥ 0` for every integer `i ≥ lo`.
    pub fn nonneg_from(&self, lo: &BigInt) -> bool {
        self.min_sign_from(lo) != Ordering::Less
    }

    /// `p(i) > 0` for every integer `i ≥ lo`.
    pub fn positive_from(&self, lo: &BigInt) -> bool {
        self.min_sign_from(lo) == Ordering::Greater
    }

    /// Smallest sign taken by `p` on the integers `≥ lo`.
    fn min_sign_from(&self, lo: &BigInt) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let hi = self.root_bound().max(lo.clone());
        let mut worst = self.sign_at_infinity();
        for b in self.monotone_breaks(lo, &hi) {
            worst = worst.min(self.eval(&b).cmp(&BigInt::zero()));
        }
        worst
    }

    /// `{i ≥ lo : p(i) ≥ 0}` as a union of integer intervals.
    pub fn nonneg_set_from(&self, lo: &BigInt) -> IntSet {
        if self.is_zero() {
            return IntSet::from_interval(lo.clone(), None);
        }
        let hi = self.root_bound().max(lo.clone());
        let ok = |t: &BigInt| !self.eval(t).is_negative();
        let mut parts = Vec::new();
        let breaks = self.monotone_breaks(lo, &hi);
        if breaks.len() == 1 && ok(lo) {
            parts.push((lo.clone(), Some(lo.clone())));
        }
        for w in breaks.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            match (ok(a), ok(b)) {
                (true, true) => parts.push((a.clone(), Some(b.clone()))),
                (false, false) => {}
                (true, false) => {
                    let (mut l, mut r) = (a.clone(), b.clone());
                    while &r - &l > BigInt::one() {
                        let m: BigInt = (&l + &r) >> 1;
                        if ok(&m) {
                            l = m;
                        } else {
                            r = m;
                        }
                    }
                    parts.push((a.clone(), Some(l)));
                }
                (false, true) => {
                    let (mut l, mut r) = (a.clone(), b.clone());
                    while &r - &l > BigInt::one() {
                        let m: BigInt = (&l + &r) >> 1;
                        if ok(&m) {
                            r = m;
                        } else {
                            l = m;
                        }
                    }
                    parts.push((r, Some(b.clone())));
                }
            }
        }
        if self.sign_at_infinity().is_gt() {
            parts.push((&hi + 1, None));
        }
        IntSet::new(parts)
    }

    /// Rational roots by the rational-root test, with the tested candidates.
    pub fn rational_roots(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut roots = Vec::new();
        let Some(v) = self.valuation() else {
            return (roots, Vec::new());
        };
        if v > 0 {
            roots.push(Rational::zero());
        }
        let a0 = self.coeffs[v].abs();
        let an = self.leading().abs();
        let mut candidates = Vec::new();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for s in [1, -1] {
                    let c = Rational::new(&p * BigInt::from(s), q.clone());
                    if !candidates.contains(&c) {
                        candidates.push(c);
                    }
                }
            }
        }
        candidates.sort();
        for c in &candidates {
            if self.eval_rational(c).is_zero() {
                roots.push(c.clone());
            }
        }
        roots.sort();
        (roots, candidates)
    }

    /// Real roots of a quadratic or lower: the discriminant, when nonnegative.
    pub fn discriminant2(&self) -> Option<BigInt> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - BigInt::from(4) * a * c)
    }
}

/// A finite union of closed integer intervals; `None` as upper end means
/// unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSet {
    parts: Vec<(BigInt, Option<BigInt>)>,
}

impl IntSet {
    pub fn new(mut parts: Vec<(BigInt, Option<BigInt>)>) -> Self {
        parts.retain(|(a, b)| b.as_ref().map_or(true, |b| a <= b));
        parts.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(BigInt, Option<BigInt>)> = Vec::new();
        for (a, b) in parts {
            if let Some((_, last)) = out.last_mut() {
                match last {
                    None => continue,
                    Some(e) if a <= &*e + 1 => {
                        *last = match b {
                            None => None,
                            Some(b) => Some(b.max(e.clone())),
                        };
                        continue;
                    }
                    _ => {}
                }
            }
            out.push((a, b));
        }
        IntSet { parts: out }
    }

    pub fn from_interval(a: BigInt, b: Option<BigInt>) -> Self {
        Self::new(vec![(a, b)])
    }

    pub fn parts(&self) -> &[(BigInt, Option<BigInt>)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        self.parts.last().is_some_and(|(_, b)| b.is_none())
    }

    /// Number of elements, `None` when infinite.
    pub fn count(&self) -> Option<BigInt> {
        if self.is_infinite() {
            return None;
        }
        Some(
            self.parts
                .iter()
                .map(|(a, b)| b.as_ref().unwrap() - a + 1)
                .sum(),
        )
    }

    pub fn min(&self) -> Option<&BigInt> {
        self.parts.first().map(|(a, _)| a)
    }

    pub fn intersect(&self, other: &IntSet) -> IntSet {
        let mut out = Vec::new();
        for (a, b) in &self.parts {
            for (c, d) in &other.parts {
                let lo = a.max(c).clone();
                let hi = match (b, d) {
                    (None, None) => None,
                    (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                    (Some(x), Some(y)) => Some(x.min(y).clone()),
                };
                out.push((lo, hi));
            }
        }
        IntSet::new(out)
    }

    /// Elements in increasing order, at most `limit` of them.
    pub fn elements(&self, limit: usize) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (a, b) in &self.parts {
            let mut i = a.clone();
            while b.as_ref().map_or(true, |b| &i <= b) {
                if out.len() >= limit {
                    return out;
                }
                out.push(i.clone());
                i += 1;
            }
        }
        out
    }
}

/// Positive divisors of `n` by trial division (`n = 0` gives `[]`).
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for Poly {
    /// Pretty form in the variable `λ`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("λ"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("i"))
    }
}

impl Poly {
    /// Inverse of [`Poly::render`]; accepts spaces, `*` and outer parentheses.
    pub fn parse(text: &str, var: &str) -> Option<Poly> {
        let mut t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        while t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for c in t.chars() {
            if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(c);
        }
        terms.push(cur);
        let mut acc = Poly::zero();
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coeff, power) = match body.find(var) {
                None => (body, 0u32),
                Some(at) => {
                    let c = body[..at].trim_end_matches('*');
                    let rest = &body[at + var.len()..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')?.parse().ok()?
                    };
                    (c, e)
                }
            };
            let mut c: BigInt = if coeff.is_empty() {
                BigInt::one()
            } else {
                coeff.parse().ok()?
            };
            if neg {
                c = -c;
            }
            acc = acc.add(&Poly::constant(c).mul(&Poly::var().pow(power)));
        }
        Some(acc)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                s.push_str(&a.to_string());
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{k}")),
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[1, 1]);
        assert_eq!(p.pow(2), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p.derivative(), Poly::one());
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(Poly::from_ints(&[-1, -2, 1]).to_string(), "λ^2-2λ-1");
    }

    #[test]
    fn integer_roots() {
        // (i - 5)(i - 7)(i + 3)
        let p = Poly::from_ints(&[-5, 1])
            .mul(&Poly::from_ints(&[-7, 1]))
            .mul(&Poly::from_ints(&[3, 1]));
        assert_eq!(p.integer_roots_from(&big(2)), vec![big(5), big(7)]);
        assert_eq!(p.integer_roots_from(&big(-10)), vec![big(-3), big(5), big(7)]);
        assert!(Poly::from_ints(&[-2, 0, 1]).integer_roots_from(&big(0)).is_empty());
    }

    #[test]
    fn signs_on_integers() {
        // (i - 3)^2 touches zero at 3
        let p = Poly::from_ints(&[9, -6, 1]);
        assert!(p.nonneg_from(&big(0)));
        assert!(!p.positive_from(&big(0)));
        assert!(p.positive_from(&big(4)));
        assert!(!Poly::from_ints(&[-5, 1]).nonneg_from(&big(2)));
    }

    #[test]
    fn rational_root_test() {
        let (roots, cands) = Poly::from_ints(&[-1, -2, 1]).rational_roots();
        assert!(roots.is_empty());
        assert_eq!(cands.len(), 2);
        let (roots, _) = Poly::from_ints(&[-1, 0, 4]).rational_roots();
        assert_eq!(roots, vec![rat(-1, 2), rat(1, 2)]);
    }

    proptest! {
        #[test]
        fn parse_inverts_render(cs in proptest::collection::vec(-50i64..50, 0..6)) {
            let p = Poly::from_ints(&cs);
            prop_assert_eq!(Poly::parse(&p.render("i"), "i"), Some(p.clone()));
            prop_assert_eq!(Poly::parse(&format!("({})", p.render("λ")), "λ"), Some(p));
        }
    }

    proptest! {
        #[test]
        fn nonneg_set_matches_scan(cs in prop::collection::vec(-20i64..20, 1..5), lo in -10i64..10) {
            let p = Poly::from_ints(&cs);
            let set = p.nonneg_set_from(&big(lo));
            let bound: i64 = 60;
            let scan: Vec<BigInt> = (lo..=bound).map(big).filter(|t| !p.eval(t).is_negative()).collect();
            let got: Vec<BigInt> = set.elements(10_000).into_iter().filter(|t| *t <= big(bound)).collect();
            prop_assert_eq!(got, scan);
            prop_assert_eq!(set.is_infinite(), p.is_zero() || p.sign_at_infinity().is_gt());
        }

        #[test]
        fn finds_planted_roots(rs in prop::collection::vec(-40i64..40, 1..4), k in 1i64..4) {
            let mut p = Poly::constant(big(k));
            for &r in &rs {
                p = p.mul(&Poly::from_ints(&[-r, 1]));
            }
            let mut want: Vec<BigInt> = rs.iter().map(|&r| big(r)).collect();
            want.sort();
            want.dedup();
            prop_assert_eq!(p.integer_roots_from(&big(-100)), want);
        }

        #[test]
        fn roots_match_scan(cs in prop::collection::vec(-30i64..30, 1..5)) {
            let p = Poly::from_ints(&cs);
            prop_assume!(!p.is_zero());
            let scan: Vec<BigInt> = (-60i64..=60).map(big).filter(|t| p.eval(t).is_zero()).collect();
            prop_assert_eq!(p.integer_roots_between(&big(-60), &big(60)), scan);
        }
    }
}
