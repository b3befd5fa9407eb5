use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{RPoint, Rational};
use crate::geometry::Halfspace;
use crate::poly::{IntSet, Poly};

/// `num(i) / den(i)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Self {
        RatFn { num, den }
    }

    pub fn eval(&self, i: &BigInt) -> Option<Rational> {
        let d = self.den.eval(i);
        (!d.is_zero()).then(|| Rational::new(self.num.eval(i), d))
    }
}

/// `scale · Π sₖ(i)^e / Π sₖ(i)^f` over the base sequences of a recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub scale: Rational,
    pub num: Vec<(usize, u32)>,
    pub den: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn eval(&self, values: &[BigInt]) -> Option<Rational> {
        let prod = |fs: &[(usize, u32)]| {
            fs.iter()
                .fold(BigInt::one(), |acc, &(k, e)| acc * values[k].pow(e))
        };
        let d = prod(&self.den);
        (!d.is_zero()).then(|| &self.scale * Rational::new(prod(&self.num), d))
    }

    /// Total degree of numerator minus denominator.
    pub fn degree(&self) -> i64 {
        let s = |fs: &[(usize, u32)]| fs.iter().map(|&(_, e)| e as i64).sum::<i64>();
        s(&self.num) - s(&self.den)
    }
}

/// Integer sequences sharing `s(i) = c₁ s(i−1) + … + c_r s(i−r)`; `initial[k]`
/// holds `s_k(0), …, s_k(r−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSchema {
    pub coeffs: Vec<BigInt>,
    pub names: Vec<String>,
    pub initial: Vec<Vec<BigInt>>,
    pub coords: Vec<Monomial>,
}

impl RecurrenceSchema {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `λ^r − c₁λ^{r−1} − … − c_r`
    pub fn characteristic(&self) -> Poly {
        let r = self.order();
        let mut c = vec![BigInt::zero(); r + 1];
        c[r] = BigInt::one();
        for (k, ck) in self.coeffs.iter().enumerate() {
            c[r - 1 - k] = -ck;
        }
        Poly::new(c)
    }

    /// Values of all base sequences at indices `0, 1, 2, …`.
    pub fn values(&self) -> RecurrenceIter<'_> {
        RecurrenceIter {
            schema: self,
            window: self.initial.clone(),
            index: 0,
        }
    }
}

pub struct RecurrenceIter<'a> {
    schema: &'a RecurrenceSchema,
    window: Vec<Vec<BigInt>>,
    index: usize,
}

impl Iterator for RecurrenceIter<'_> {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let r = self.schema.order();
        let out: Vec<BigInt> = self.window.iter().map(|w| w[0].clone()).collect();
        for w in &mut self.window {
            let next: BigInt = self
                .schema
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * &w[r - 1 - k])
                .sum();
            w.remove(0);
            w.push(next);
        }
        self.index += 1;
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schema {
    /// Coordinate differences `dⱼ(i) = pⱼ(i)/qⱼ(i)`.
    Rational(Vec<RatFn>),
    Recurrence(RecurrenceSchema),
}

/// Three-valued answer for questions that may need an unbounded scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

/// Scan limits for recurrence sequences.
#[derive(Clone, Copy, Debug)]
pub struct Horizon {
    pub indices: u64,
    /// Stop once base sequence values exceed this many bits.
    pub bits: u64,
}

impl Default for Horizon {
    fn default() -> Self {
        Horizon {
            indices: 1_000_000,
            bits: 4096,
        }
    }
}

/// `coeffs · w + constant ≥ 0`, or `> 0` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCond {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl AffineCond {
    pub fn from_halfspace(h: &Halfspace) -> Self {
        AffineCond {
            coeffs: h.normal_vector().coords().to_vec(),
            constant: h.offset_rational(),
            strict: false,
        }
    }

    pub fn holds(&self, w: &RPoint) -> bool {
        let v: Rational = self
            .coeffs
            .iter()
            .zip(w.coords())
            .map(|(a, x)| a * x)
            .sum::<Rational>()
            + &self.constant;
        if self.strict {
            v > Rational::zero()
        } else {
            v >= Rational::zero()
        }
    }
}

/// Result of a search along a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hit {
    Found(u64),
    Never,
    /// Scan exhausted on a recurrence sequence.
    Unknown,
}

/// `w_i = limit + d(i)` for `i ≥ start`, converging to `limit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSequence {
    pub limit: RPoint,
    pub start: u64,
    pub schema: Schema,
}

/// Number of leading recurrence terms checked when validating.
const PREFIX_CHECK: u64 = 64;

impl ProbeSequence {
    pub fn new(limit: RPoint, start: u64, schema: Schema) -> Result<Self> {
        let s = ProbeSequence {
            limit,
            start,
            schema,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.limit.dim()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if !self.limit.in_unit_cube() {
            return Err(Error::OutsideCube);
        }
        let i0 = BigInt::from(self.start);
        match &self.schema {
            Schema::Rational(fs) => {
                if fs.len() != n {
                    return Err(Error::Arity {
                        expected: n,
                        found: fs.len(),
                    });
                }
                for (j, f) in fs.iter().enumerate() {
                    if f.den.is_zero() || !f.den.integer_roots_from(&i0).is_empty() {
                        return Err(Error::Invalid(format!(
                            "denominator of coordinate {} vanishes",
                            j + 1
                        )));
                    }
                    if !f.num.is_zero() && f.num.degree() >= f.den.degree() {
                        return Err(Error::Invalid(format!(
                            "coordinate {} does not converge",
                            j + 1
                        )));
                    }
                    // x_j + p/q ∈ [0,1]  ⇔  (a q + b p) q ≥ 0 and ((b − a) q − b p) q ≥ 0
                    let x = &self.limit.coords()[j];
                    let (a, b) = (Poly::constant(x.numer().clone()), Poly::constant(x.denom().clone()));
                    let low = a.mul(&f.den).add(&b.mul(&f.num)).mul(&f.den);
                    let high = b.sub(&a).mul(&f.den).sub(&b.mul(&f.num)).mul(&f.den);
                    if !low.nonneg_from(&i0) || !high.nonneg_from(&i0) {
                        return Err(Error::OutsideCube);
                    }
                }
                let nonzero: Vec<&Poly> =
                    fs.iter().map(|f| &f.num).filter(|p| !p.is_zero()).collect();
                let Some(first) = nonzero.first() else {
                    return Err(Error::Invalid("sequence is constant at its limit".into()));
                };
                for r in first.integer_roots_from(&i0) {
                    if nonzero.iter().all(|p| p.eval(&r).is_zero()) {
                        return Err(Error::Invalid(format!("term {r} equals the limit")));
                    }
                }
            }
            Schema::Recurrence(rs) => {
                if rs.coords.len() != n {
                    return Err(Error::Arity {
                        expected: n,
                        found: rs.coords.len(),
                    });
                }
                if rs.order() == 0 || rs.initial.iter().any(|v| v.len() != rs.order()) {
                    return Err(Error::Invalid("initial terms must match the recurrence order".into()));
                }
                if rs.names.len() != rs.initial.len()
                    || rs
                        .coords
                        .iter()
                        .flat_map(|m| m.num.iter().chain(&m.den))
                        .any(|&(k, _)| k >= rs.initial.len())
                {
                    return Err(Error::Invalid("unknown base sequence".into()));
                }
                for (i, w) in self.terms().take(PREFIX_CHECK as usize) {
                    match w {
                        None => return Err(Error::Invalid(format!("term {i} is undefined"))),
                        Some(w) if !w.in_unit_cube() => return Err(Error::OutsideCube),
                        Some(w) if w == self.limit => {
                            return Err(Error::Invalid(format!("term {i} equals the limit")))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_rational_schema(&self) -> bool {
        matches!(self.schema, Schema::Rational(_))
    }

    /// `w_i`, or `None` where a denominator vanishes.
    pub fn term(&self, i: u64) -> Option<RPoint> {
        self.terms_from(i).next().and_then(|(_, w)| w)
    }

    fn offset(&self, d: Vec<Rational>) -> RPoint {
        RPoint(
            self.limit
                .coords()
                .iter()
                .zip(d)
                .map(|(x, d)| x + d)
                .collect(),
        )
    }

    /// `(i, w_i)` for `i = start, start+1, …`.
    pub fn terms(&self) -> Box<dyn Iterator<Item = (u64, Option<RPoint>)> + '_> {
        self.terms_from(self.start)
    }

    pub fn terms_from(&self, from: u64) -> Box<dyn Iterator<Item = (u64, Option<RPoint>)> + '_> {
        match &self.schema {
            Schema::Rational(fs) => Box::new((from..).map(move |i| {
                let bi = BigInt::from(i);
                let d: Option<Vec<Rational>> = fs.iter().map(|f| f.eval(&bi)).collect();
                (i, d.map(|d| self.offset(d)))
            })),
            Schema::Recurrence(rs) => Box::new(
                rs.values()
                    .enumerate()
                    .skip(from as usize)
                    .map(move |(i, vals)| {
                        let d: Option<Vec<Rational>> =
                            rs.coords.iter().map(|m| m.eval(&vals)).collect();
                        (i as u64, d.map(|d| self.offset(d)))
                    }),
            ),
        }
    }

    /// Whether `p = w_i` for some `i ≥ start`, with the index when found.
    pub fn locate(&self, p: &RPoint, horizon: Horizon) -> (Membership, Option<u64>) {
        if p.dim() != self.dim() {
            return (Membership::No, None);
        }
        match &self.schema {
            Schema::Rational(fs) => {
                let i0 = BigInt::from(self.start);
                let mut candidates: Option<Vec<BigInt>> = None;
                for (j, f) in fs.iter().enumerate() {
                    let t = &p.coords()[j] - &self.limit.coords()[j];
                    let eq = f
                        .num
                        .scale(t.denom())
                        .sub(&f.den.scale(t.numer()));
                    if !eq.is_zero() {
                        candidates = Some(eq.integer_roots_from(&i0));
                        break;
                    }
                }
                let candidates = candidates.unwrap_or_else(|| vec![i0.clone()]);
                for c in candidates {
                    let Ok(i) = u64::try_from(&c) else { continue };
                    if self.term(i).as_ref() == Some(p) {
                        return (Membership::Yes, Some(i));
                    }
                }
                (Membership::No, None)
            }
            Schema::Recurrence(rs) => {
                for (i, vals) in rs.values().enumerate() {
                    let i = i as u64;
                    if i >= horizon.indices + self.start
                        || vals.iter().any(|v| v.bits() > horizon.bits)
                    {
                        return (Membership::Unknown, None);
                    }
                    if i < self.start {
                        continue;
                    }
                    let d: Option<Vec<Rational>> = rs.coords.iter().map(|m| m.eval(&vals)).collect();
                    if let Some(d) = d {
                        if &self.offset(d) == p {
                            return (Membership::Yes, Some(i));
                        }
                    }
                }
                unreachable!("recurrence iterator is infinite")
            }
        }
    }

    /// For the rational schema: `d(i) = N(i)/D(i)` over a common denominator.
    pub fn common_form(&self) -> Option<(Vec<Poly>, Poly)> {
        let Schema::Rational(fs) = &self.schema else {
            return None;
        };
        let den = fs.iter().fold(Poly::one(), |acc, f| acc.mul(&f.den));
        let nums: Vec<Poly> = fs
            .iter()
            .enumerate()
            .map(|(j, f)| {
                fs.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .fold(f.num.clone(), |acc, (_, g)| acc.mul(&g.den))
            })
            .collect();
        // keep D positive on the tail
        if den.sign_at_infinity().is_lt() {
            let nums: Vec<Poly> = nums.iter().map(Poly::neg).collect();
            return Some((nums, den.neg()));
        }
        Some((nums, den))
    }

    /// Integer polynomial `P` with `sign P(i) = sign(a · w_i + c)` for every
    /// `i ≥ start` (rational schema only).
    pub fn affine_sign_poly(&self, a: &[Rational], c: &Rational) -> Option<Poly> {
        let (nums, den) = self.common_form()?;
        // a·(y + N/D) + c = (a·N + (a·y + c) D) / D
        let mut scale = c.denom().clone();
        for (ai, yi) in a.iter().zip(self.limit.coords()) {
            scale = num_integer::Integer::lcm(&scale, ai.denom());
            scale = num_integer::Integer::lcm(&scale, (ai * yi).denom());
        }
        let sq = Rational::from_integer(scale.clone());
        let mut acc = Poly::zero();
        let mut constant = c * &sq;
        for ((ai, yi), n) in a.iter().zip(self.limit.coords()).zip(&nums) {
            let k = (ai * &sq).to_integer();
            acc = acc.add(&n.scale(&k));
            constant += ai * yi * &sq;
        }
        acc = acc.add(&den.scale(&constant.to_integer()));
        Some(acc.mul(&den))
    }

    /// Indices `i ≥ start` whose terms satisfy every condition
    /// `a · w_i + c ≥ 0` (or `> 0` when flagged strict).
    pub fn indices_where(&self, conds: &[AffineCond]) -> Option<IntSet> {
        let i0 = BigInt::from(self.start);
        let mut set = IntSet::from_interval(i0.clone(), None);
        for cnd in conds {
            let mut p = self.affine_sign_poly(&cnd.coeffs, &cnd.constant)?;
            if cnd.strict {
                p = p.sub(&Poly::one());
            }
            set = set.intersect(&p.nonneg_set_from(&i0));
            if set.is_empty() {
                break;
            }
        }
        Some(set)
    }

    /// Least index whose term satisfies all conditions: exact for the
    /// rational schema, a scan of `scan` terms otherwise.
    pub fn first_where(&self, conds: &[AffineCond], scan: u64) -> Hit {
        if let Some(set) = self.indices_where(conds) {
            return match set.min() {
                Some(i) => Hit::Found(u64::try_from(i).expect("index fits in u64")),
                None => Hit::Never,
            };
        }
        for (i, w) in self.terms().take(scan as usize) {
            if let Some(w) = w {
                if conds.iter().all(|c| c.holds(&w)) {
                    return Hit::Found(i);
                }
            }
        }
        Hit::Unknown
    }

    /// `‖w_i − x‖²` over the first `count` terms strictly decreasing from
    /// the returned index on; `None` if not decreasing at the end.
    pub fn decreasing_from(&self, count: usize) -> Option<u64> {
        let d: Vec<(u64, Rational)> = self
            .terms()
            .take(count)
            .filter_map(|(i, w)| w.map(|w| (i, w.dist2(&self.limit))))
            .collect();
        let mut from = d.last()?.0;
        for w in d.windows(2).rev() {
            if w[0].1 > w[1].1 {
                from = w[0].0;
            } else {
                break;
            }
        }
        Some(from)
    }
}
