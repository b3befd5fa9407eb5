//! Local multiplier certificates on the unit interval.
//!
//! Every point `x ∈ X` gets an open neighbourhood and an integer `m` with
//! `m·g ≥ f` on the neighbourhood's part of `X`; finitely many of them cover
//! `X`, so `f ≤ m·g` on `X` for the largest `m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::calculus::PLFunction;
use crate::closed_set::{AffineCond, ClosedSetDesc};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, rat_int, RPoint, Rational};
use crate::poly::IntSet;

use super::along::{zero_inclusion_violation, SetCheck};

const ENUM_LIMIT: usize = 1_000_000;

/// A real interval with optionally closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn point(t: Rational) -> Self {
        Interval::closed(t.clone(), t)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = if self.lo_closed { t >= &self.lo } else { t > &self.lo };
        let below = if self.hi_closed { t <= &self.hi } else { t < &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }

    fn conds(&self) -> Vec<AffineCond> {
        vec![
            AffineCond {
                coeffs: vec![rat_int(1)],
                constant: -self.lo.clone(),
                strict: !self.lo_closed,
            },
            AffineCond {
                coeffs: vec![rat_int(-1)],
                constant: self.hi.clone(),
                strict: !self.hi_closed,
            },
        ]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            format_rational(&self.lo),
            format_rational(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

fn pt(t: &Rational) -> RPoint {
    RPoint::new(vec![t.clone()])
}

fn widen(acc: &mut Option<(Rational, Rational)>, t: &Rational) {
    match acc {
        None => *acc = Some((t.clone(), t.clone())),
        Some((lo, hi)) => {
            if t < lo {
                *lo = t.clone();
            }
            if t > hi {
                *hi = t.clone();
            }
        }
    }
}

/// Closure hull of `X ∩ iv` for `X ⊆ [0,1]`.
pub fn hull_1d(xs: &ClosedSetDesc, iv: &Interval) -> Result<Option<(Rational, Rational)>> {
    if iv.is_empty() {
        return Ok(None);
    }
    let mut acc = None;
    for p in xs.polyparts() {
        let vs: Vec<&Rational> = p.vertices().iter().map(|v| &v.coords()[0]).collect();
        let c = (*vs.iter().min().expect("nonempty polytope")).clone();
        let d = (*vs.iter().max().expect("nonempty polytope")).clone();
        let j = iv.intersect(&Interval::closed(c, d));
        if !j.is_empty() {
            widen(&mut acc, &j.lo);
            widen(&mut acc, &j.hi);
        }
    }
    let conds = iv.conds();
    for s in xs.sequences() {
        let y = &s.limit.coords()[0];
        if iv.contains(y) {
            widen(&mut acc, y);
        }
        let set = s
            .indices_where(&conds)
            .ok_or_else(|| Error::Invalid("recurrence sequences are not supported on the interval".into()))?;
        if set.is_empty() {
            continue;
        }
        // past `b` the term is monotone in `i`
        let (nums, den) = s.common_form().expect("rational schema");
        let q = nums[0].derivative().mul(&den).sub(&nums[0].mul(&den.derivative()));
        let start = BigInt::from(s.start);
        let b = [nums[0].root_bound(), den.root_bound(), q.root_bound(), start.clone()]
            .into_iter()
            .max()
            .expect("nonempty")
            + 1;
        let head = set.intersect(&IntSet::from_interval(start, Some(&b - 1)));
        let tail = set.intersect(&IntSet::from_interval(b, None));
        let mut idx = enumerate(&head)?;
        if let Some(e) = tail.min() {
            if tail.is_infinite() {
                idx.push(e.clone());
                widen(&mut acc, y);
            } else {
                idx.extend(enumerate(&tail)?);
            }
        }
        for i in idx {
            let w = s.term(i.to_u64().expect("index fits in u64")).expect("term inside the cube");
            widen(&mut acc, &w.coords()[0]);
        }
    }
    Ok(acc)
}

fn enumerate(set: &IntSet) -> Result<Vec<BigInt>> {
    match set.count() {
        Some(c) if c <= BigInt::from(ENUM_LIMIT) => Ok(set.elements(ENUM_LIMIT)),
        _ => Err(Error::Invalid("too many terms before the sequence settles".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `g(x) > 0`
    Case1,
    /// `x` inside a cell on which `g` vanishes
    Sub2_1,
    /// vertex `x`; `f` and `g` both vanish at the far end `y`
    Sub2_2_1,
    /// vertex `x`; `g(y) > 0`
    Sub2_2_2,
    /// vertex `x`; `g(y) = 0 < f(y)`, so `X` meets the cell only at `x`
    Sub2_2_3,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Sub2_1 => "Sub2.1",
            CaseTag::Sub2_2_1 => "Sub2.2.1",
            CaseTag::Sub2_2_2 => "Sub2.2.2",
            CaseTag::Sub2_2_3 => "Sub2.2.3",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [CaseTag::Case1, CaseTag::Sub2_1, CaseTag::Sub2_2_1, CaseTag::Sub2_2_2, CaseTag::Sub2_2_3]
            .into_iter()
            .find(|t| t.name() == s)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEntry {
    pub x: Rational,
    pub neighborhood: Interval,
    pub multiplier: BigInt,
    /// One tag, or one per side (left first) at a vertex where `g` vanishes.
    pub tags: Vec<CaseTag>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate1D {
    pub entries: Vec<CoverEntry>,
    pub m: BigInt,
}

fn ceil_ratio(a: &Rational, b: &Rational) -> BigInt {
    (a / b).ceil().to_integer()
}

/// Breakpoints of `f` and `g` together with the ends of the interval.
fn vertices(f: &PLFunction, g: &PLFunction) -> Vec<Rational> {
    let mut v: Vec<Rational> = f
        .breakpoints()
        .into_iter()
        .chain(g.breakpoints())
        .map(|p| p.coords()[0].clone())
        .chain([rat_int(0), rat_int(1)])
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Least `m ≥ 0` with `m·g ≥ f` on `X ∩ region`; `region` must sit inside
/// one cell where both are linear. `None` if no such `m` exists.
fn least_multiplier(f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc, region: &Interval) -> Result<Option<BigInt>> {
    let Some((a, b)) = hull_1d(xs, region)? else {
        return Ok(Some(BigInt::zero()));
    };
    let mut m = BigInt::zero();
    for t in [a, b] {
        let (fv, gv) = (f.eval(&pt(&t))?, g.eval(&pt(&t))?);
        if gv.is_zero() {
            if fv.is_positive() {
                return Ok(None);
            }
        } else {
            m = m.max(ceil_ratio(&fv, &gv));
        }
    }
    Ok(Some(m))
}

fn between(a: &Rational, b: &Rational) -> Interval {
    if a <= b {
        Interval::closed(a.clone(), b.clone())
    } else {
        Interval::closed(b.clone(), a.clone())
    }
}

fn member(xs: &ClosedSetDesc, t: &Rational) -> Result<bool> {
    Ok(hull_1d(xs, &Interval::point(t.clone()))?.is_some())
}

/// Entry at a vertex `v ∈ X` of the common subdivision.
fn vertex_entry(f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc, verts: &[Rational], a: usize) -> Result<CoverEntry> {
    let v = &verts[a];
    let gv = g.eval(&pt(v))?;
    let mut ends: [Option<Rational>; 2] = [None, None];
    let mut m = BigInt::zero();
    let mut tags = Vec::new();
    let sides = [a.checked_sub(1).map(|i| &verts[i]), verts.get(a + 1)];
    for (side, y) in sides.into_iter().enumerate() {
        let Some(y) = y else { continue };
        let (fy, gy) = (f.eval(&pt(y))?, g.eval(&pt(y))?);
        let toward_open = |far: &Rational| {
            let mut iv = between(v, far);
            if side == 0 {
                iv.lo_closed = false;
            } else {
                iv.hi_closed = false;
            }
            iv
        };
        if gv.is_positive() {
            let mut end = y.clone();
            if gy.is_zero() && fy.is_positive() {
                // y ∉ X, so X stays away from it on this side
                let (lo, hi) = hull_1d(xs, &toward_open(y))?.expect("v itself is in X");
                let h = if side == 0 { lo } else { hi };
                end = (h + y) / rat_int(2);
            }
            let r = least_multiplier(f, g, xs, &between(v, &end))?
                .ok_or_else(|| Error::Invalid("no local multiplier".into()))?;
            m = m.max(r);
            if tags.is_empty() {
                tags.push(CaseTag::Case1);
            }
            ends[side] = Some(end);
        } else {
            let (tag, r) = if gy.is_positive() {
                (CaseTag::Sub2_2_2, ceil_ratio(&fy, &gy))
            } else if fy.is_zero() {
                (CaseTag::Sub2_2_1, BigInt::one())
            } else {
                let mut iv = between(v, y);
                if side == 0 {
                    iv.hi_closed = false;
                } else {
                    iv.lo_closed = false;
                }
                if let Some((lo, hi)) = hull_1d(xs, &iv)? {
                    let p = if side == 0 { lo } else { hi };
                    let value = format_rational(&f.eval(&pt(&p))?);
                    return Err(Error::Hypothesis { point: pt(&p), value });
                }
                (CaseTag::Sub2_2_3, BigInt::one())
            };
            m = m.max(r);
            tags.push(tag);
            ends[side] = Some(y.clone());
        }
    }
    let [lo, hi] = ends;
    let neighborhood = Interval {
        lo_closed: lo.is_none(),
        hi_closed: hi.is_none(),
        lo: lo.unwrap_or_else(|| v.clone()),
        hi: hi.unwrap_or_else(|| v.clone()),
    };
    Ok(CoverEntry {
        x: v.clone(),
        neighborhood,
        multiplier: m,
        tags,
    })
}

/// Does the union of the neighbourhoods contain `X`?
fn covers(entries: &[CoverEntry], xs: &ClosedSetDesc) -> Result<bool> {
    let mut cuts: Vec<Rational> = vec![rat_int(0), rat_int(1)];
    for e in entries {
        for t in [&e.neighborhood.lo, &e.neighborhood.hi] {
            if t >= &rat_int(0) && t <= &rat_int(1) {
                cuts.push(t.clone());
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let inside = |t: &Rational| entries.iter().any(|e| e.neighborhood.contains(t));
    for c in &cuts {
        if !inside(c) && member(xs, c)? {
            return Ok(false);
        }
    }
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / rat_int(2);
        if !inside(&mid) && hull_1d(xs, &Interval::open(w[0].clone(), w[1].clone()))?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_arity(f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc) -> Result<()> {
    for n in [xs.ambient_dim(), f.arity(), g.arity()] {
        if n != 1 {
            return Err(Error::Arity { expected: 1, found: n });
        }
    }
    Ok(())
}

/// Build a certificate that `f` lies in the ideal of `g` on `X ⊆ [0,1]`.
pub fn cover_certificate_1d(f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc) -> Result<CoverCertificate1D> {
    check_arity(f, g, xs)?;
    match zero_inclusion_violation(f, g, xs, 0) {
        SetCheck::Holds => {}
        SetCheck::Violated(p) => {
            let value = format_rational(&f.eval(&p.point)?);
            return Err(Error::Hypothesis { point: p.point, value });
        }
        SetCheck::Unknown(why) => return Err(Error::Invalid(why)),
    }
    let verts = vertices(f, g);
    let mut at_vertex: Vec<Option<CoverEntry>> = Vec::new();
    for a in 0..verts.len() {
        at_vertex.push(if member(xs, &verts[a])? {
            Some(vertex_entry(f, g, xs, &verts, a)?)
        } else {
            None
        });
    }
    let mut entries: Vec<CoverEntry> = Vec::new();
    for a in 0..verts.len() - 1 {
        let (p, q) = (&verts[a], &verts[a + 1]);
        let left = at_vertex[a].as_ref().map(|e| e.neighborhood.hi.clone());
        let right = at_vertex[a + 1].as_ref().map(|e| e.neighborhood.lo.clone());
        let rest = Interval {
            lo_closed: left.is_some(),
            hi_closed: right.is_some(),
            lo: left.unwrap_or_else(|| p.clone()),
            hi: right.unwrap_or_else(|| q.clone()),
        }
        .intersect(&Interval::open(p.clone(), q.clone()));
        let Some((lo, hi)) = hull_1d(xs, &rest)? else { continue };
        let (gp, gq) = (g.eval(&pt(p))?, g.eval(&pt(q))?);
        if gp.is_zero() && gq.is_zero() {
            entries.push(CoverEntry {
                x: lo,
                neighborhood: Interval::open(p.clone(), q.clone()),
                multiplier: BigInt::one(),
                tags: vec![CaseTag::Sub2_1],
            });
        } else {
            let delta = (&lo - p).min(q - &hi) / rat_int(2);
            let nb = Interval::open(&lo - &delta, &hi + &delta);
            let m = least_multiplier(f, g, xs, &Interval::closed(nb.lo.clone(), nb.hi.clone()))?
                .ok_or_else(|| Error::Invalid("no local multiplier".into()))?;
            entries.push(CoverEntry {
                x: lo,
                neighborhood: nb,
                multiplier: m,
                tags: vec![CaseTag::Case1],
            });
        }
    }
    entries.extend(at_vertex.into_iter().flatten());
    entries.sort_by(|a, b| (&a.neighborhood.lo, &a.x).cmp(&(&b.neighborhood.lo, &b.x)));
    // greedy left-to-right pruning
    let mut i = 0;
    while i < entries.len() {
        let e = entries.remove(i);
        if !covers(&entries, xs)? {
            entries.insert(i, e);
            i += 1;
        }
    }
    let m = entries.iter().map(|e| e.multiplier.clone()).max().unwrap_or_default();
    let cert = CoverCertificate1D { entries, m };
    if !cert.verify(f, g, xs)? {
        return Err(Error::Invalid("certificate failed its own check".into()));
    }
    Ok(cert)
}

impl CoverCertificate1D {
    /// Re-check coverage, every local inequality, and the case tags.
    pub fn verify(&self, f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc) -> Result<bool> {
        check_arity(f, g, xs)?;
        if !covers(&self.entries, xs)? {
            return Ok(false);
        }
        let verts = vertices(f, g);
        for e in &self.entries {
            if !e.neighborhood.contains(&e.x) || !member(xs, &e.x)? || e.tags.is_empty() {
                return Ok(false);
            }
            let gx = g.eval(&pt(&e.x))?;
            let tag_ok = e.tags.iter().all(|t| (*t == CaseTag::Case1) == gx.is_positive());
            if !tag_ok {
                return Ok(false);
            }
            for w in verts.windows(2) {
                let region = e.neighborhood.intersect(&Interval::closed(w[0].clone(), w[1].clone()));
                if region.is_empty() {
                    continue;
                }
                match least_multiplier(f, g, xs, &region)? {
                    Some(r) if r <= e.multiplier => {}
                    _ => return Ok(false),
                }
            }
        }
        let m = self.entries.iter().map(|e| e.multiplier.clone()).max().unwrap_or_default();
        Ok(m == self.m)
    }

    /// The global multiplier as a machine integer, if it fits.
    pub fn m_u64(&self) -> Option<u64> {
        self.m.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::compile;
    use crate::closed_set::{ProbeSequence, RatFn, Schema};
    use crate::formula::parse;
    use crate::geometry::{rat, RPolytope};
    use crate::poly::Poly;

    fn f1(s: &str) -> PLFunction {
        compile(&parse(s, Some(1)).unwrap(), 1).unwrap()
    }

    /// `{0} ∪ {1/i : i ≥ 1}`
    fn harmonic() -> ClosedSetDesc {
        let s = ProbeSequence::new(
            RPoint::new(vec![rat_int(0)]),
            1,
            Schema::Rational(vec![RatFn::new(Poly::one(), Poly::var())]),
        )
        .unwrap();
        ClosedSetDesc::new(1, vec![], vec![s]).unwrap()
    }

    fn brute_ok(cert: &CoverCertificate1D, f: &PLFunction, g: &PLFunction, xs: &ClosedSetDesc) {
        for p in xs.enumerate_points(500).into_iter().map(|p| p.point).chain(xs.limits()) {
            let t = &p.coords()[0];
            let es: Vec<&CoverEntry> = cert.entries.iter().filter(|e| e.neighborhood.contains(t)).collect();
            assert!(!es.is_empty(), "{t} uncovered");
            for e in es {
                let lhs = Rational::from_integer(e.multiplier.clone()) * g.eval(&p).unwrap();
                assert!(lhs >= f.eval(&p).unwrap(), "at {t}");
            }
        }
    }

    #[test]
    fn harmonic_double() {
        let (f, g, xs) = (f1("(x1 + x1)"), f1("x1"), harmonic());
        let cert = cover_certificate_1d(&f, &g, &xs).unwrap();
        assert_eq!(cert.m, BigInt::from(2));
        let at0 = cert.entries.iter().find(|e| e.x.is_zero()).unwrap();
        assert_eq!(at0.tags, vec![CaseTag::Sub2_2_2]);
        assert!(cert.entries.iter().any(|e| e.tags == vec![CaseTag::Case1]));
        assert!(cert.verify(&f, &g, &xs).unwrap());
        brute_ok(&cert, &f, &g, &xs);
    }

    #[test]
    fn equal_functions() {
        for s in ["x1", "(x1 + x1)", "(x1 & !x1)", "!x1"] {
            let f = f1(s);
            for xs in [harmonic(), ClosedSetDesc::polyhedral(1, vec![RPolytope::unit_cube(1)]).unwrap()] {
                let cert = cover_certificate_1d(&f, &f, &xs).unwrap();
                assert!(cert.entries.iter().all(|e| e.multiplier == BigInt::one()), "{s}: {cert:?}");
                brute_ok(&cert, &f, &f, &xs);
            }
        }
    }

    #[test]
    fn away_from_zeros() {
        let xs = ClosedSetDesc::polyhedral(
            1,
            vec![RPolytope::from_vertices(1, &[RPoint::new(vec![rat(1, 4)]), RPoint::new(vec![rat(3, 4)])])],
        )
        .unwrap();
        let (f, g) = (PLFunction::one(1), f1("x1"));
        let cert = cover_certificate_1d(&f, &g, &xs).unwrap();
        assert!(cert.entries.iter().all(|e| e.tags == vec![CaseTag::Case1]));
        // 1 / min g on the hull
        assert_eq!(cert.m, BigInt::from(4));
    }

    #[test]
    fn isolated_zero_of_g() {
        // g = |2x − 1| near 1/2, f = x ∧ ¬x vanishes only at the ends
        let g = f1("((x1 -> !x1) & (!x1 -> x1))").neg();
        let f = f1("(x1 & !x1)");
        let xs = ClosedSetDesc::polyhedral(1, vec![RPolytope::unit_cube(1)]).unwrap();
        assert!(matches!(cover_certificate_1d(&f, &g, &xs), Err(Error::Hypothesis { .. })));
        // X avoiding the bad zero is fine
        let xs = harmonic();
        let bad = cover_certificate_1d(&f, &g, &xs);
        assert!(matches!(bad, Err(Error::Hypothesis { .. })), "{bad:?}");
    }

    #[test]
    fn sub_case_three() {
        // g vanishes on [0, 1/2], f vanishes only at 0; X meets [0,1/2] only at 0
        let g = f1("(x1 * x1)");
        let f = f1("x1");
        let xs = ClosedSetDesc::polyhedral(
            1,
            vec![
                RPolytope::from_vertices(1, &[RPoint::new(vec![rat_int(0)])]),
                RPolytope::from_vertices(1, &[RPoint::new(vec![rat(3, 4)]), RPoint::new(vec![rat_int(1)])]),
            ],
        )
        .unwrap();
        let cert = cover_certificate_1d(&f, &g, &xs).unwrap();
        let at0 = cert.entries.iter().find(|e| e.x.is_zero()).unwrap();
        assert_eq!(at0.tags, vec![CaseTag::Sub2_2_3]);
        // x / (2x − 1) peaks at 3/4 with 3/2
        assert_eq!(cert.m, BigInt::from(2));
        brute_ok(&cert, &f, &g, &xs);
    }

    #[test]
    fn rejects_broken_certificates() {
        let (f, g, xs) = (f1("(x1 + x1)"), f1("x1"), harmonic());
        let mut cert = cover_certificate_1d(&f, &g, &xs).unwrap();
        cert.entries[0].multiplier = BigInt::one();
        cert.m = cert.entries.iter().map(|e| e.multiplier.clone()).max().unwrap();
        assert!(!cert.verify(&f, &g, &xs).unwrap());
        let mut cert = cover_certificate_1d(&f, &g, &xs).unwrap();
        cert.entries.pop();
        assert!(!cert.verify(&f, &g, &xs).unwrap());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn generated_pairs_certify(
            gf in crate::formula::tests::arb_formula(1, 3),
            hf in crate::formula::tests::arb_formula(1, 3),
            pick in 0usize..3,
            k in 1u64..4,
            seq in proptest::bool::ANY,
        ) {
            let g = compile(&gf, 1).unwrap();
            let h = compile(&hf, 1).unwrap();
            let f = match pick {
                0 => g.oplus(&g).unwrap(),
                1 => g.min(&h).unwrap(),
                _ => g.truncated_multiple(k).min(&h).unwrap(),
            };
            let xs = if seq {
                harmonic()
            } else {
                ClosedSetDesc::polyhedral(1, vec![RPolytope::unit_cube(1)]).unwrap()
            };
            let cert = cover_certificate_1d(&f, &g, &xs).unwrap();
            proptest::prop_assert!(cert.verify(&f, &g, &xs).unwrap());
            brute_ok(&cert, &f, &g, &xs);
        }
    }
}
