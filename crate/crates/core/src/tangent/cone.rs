use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::direction::surd_direction;
use super::surd::QuadSurd;
use crate::closed_set::{ClosedSetDesc, ProbeSequence, Schema};
use crate::error::{Error, Result};
use crate::geometry::{linalg, polytope_combinations, RPoint, RPolytope, RVector, Rational};
use crate::poly::{exact_sqrt, IntSet, Poly};

/// `{p : ‖p − x‖ ≤ ε, ⟨p − x, u⟩ ≥ cos δ · ‖p − x‖ · ‖u‖}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: RPoint,
    pub axis: RVector,
    pub height: Rational,
    pub cos_half_angle: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeCount {
    AtLeast(usize),
    Exactly(usize),
    /// A recurrence tail or a polytope face could not be decided.
    Undetermined(String),
}

impl Cone {
    pub fn new(apex: RPoint, axis: RVector, height: Rational, cos_half_angle: Rational) -> Result<Self> {
        if axis.dim() != apex.dim() {
            return Err(Error::Arity {
                expected: apex.dim(),
                found: axis.dim(),
            });
        }
        if axis.is_zero() {
            return Err(Error::Degenerate("zero cone axis".into()));
        }
        if !height.is_positive() {
            return Err(Error::Invalid("cone height must be positive".into()));
        }
        if !cos_half_angle.is_positive() || cos_half_angle > Rational::one() {
            return Err(Error::Invalid("cosine of the half angle must lie in (0,1]".into()));
        }
        Ok(Cone {
            apex,
            axis,
            height,
            cos_half_angle,
        })
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        let v = p - &self.apex;
        let r2 = v.norm2();
        if r2.is_zero() {
            return true;
        }
        if r2 > &self.height * &self.height {
            return false;
        }
        let dot = v.dot(&self.axis);
        if dot.is_negative() {
            return false;
        }
        let c2 = &self.cos_half_angle * &self.cos_half_angle;
        &dot * &dot >= c2 * r2 * self.axis.norm2()
    }

    /// Strict angular position of a direction: `Greater` inside the open
    /// cone, `Less` outside the closed one, `Equal` on its boundary.
    fn angle_side(&self, v: &[QuadSurd]) -> Ordering {
        let d = v[0].d.clone();
        let r = |x: &Rational| QuadSurd::rational(x.clone(), &d);
        let dot = v
            .iter()
            .zip(self.axis.coords())
            .fold(r(&Rational::zero()), |acc, (a, b)| &acc + &(a * &r(b)));
        let n2 = v.iter().fold(r(&Rational::zero()), |acc, a| &acc + &(a * a));
        match dot.signum() {
            Ordering::Less => return Ordering::Less,
            Ordering::Equal => return Ordering::Less,
            Ordering::Greater => {}
        }
        let c2 = &self.cos_half_angle * &self.cos_half_angle * self.axis.norm2();
        (&(&dot * &dot) - &(&n2 * &r(&c2))).signum()
    }
}

pub fn cone_contains(c: &Cone, p: &RPoint) -> bool {
    c.contains(p)
}

enum Part {
    Finite(Vec<RPoint>),
    Infinite,
    Unknown(String),
}

/// Points of `X \ {apex}` inside the cone.
pub fn count_in_cone(x: &ClosedSetDesc, c: &Cone, min_count: usize) -> ConeCount {
    let mut points: BTreeSet<RPoint> = BTreeSet::new();
    let mut unknown: Option<String> = None;
    let mut add = |part: Part, points: &mut BTreeSet<RPoint>| -> bool {
        match part {
            Part::Infinite => return true,
            Part::Finite(ps) => points.extend(ps.into_iter().filter(|p| p != &c.apex)),
            Part::Unknown(why) => {
                unknown.get_or_insert(why);
            }
        }
        false
    };
    for p in x.polyparts() {
        if add(polytope_part(p, c), &mut points) {
            return ConeCount::AtLeast(min_count);
        }
    }
    for s in x.sequences() {
        if s.limit != c.apex && c.contains(&s.limit) {
            points.insert(s.limit.clone());
        }
        if add(sequence_part(s, c), &mut points) {
            return ConeCount::AtLeast(min_count);
        }
    }
    match unknown {
        Some(why) => ConeCount::Undetermined(why),
        None => ConeCount::Exactly(points.len()),
    }
}

fn polytope_part(p: &RPolytope, c: &Cone) -> Part {
    if p.vertices().len() == 1 {
        let v = &p.vertices()[0];
        return Part::Finite(if v != &c.apex && c.contains(v) { vec![v.clone()] } else { vec![] });
    }
    match polytope_meets_cone(p, c) {
        Some(true) => Part::Infinite,
        Some(false) => Part::Finite(vec![]),
        None => Part::Unknown("cone may meet the interior of a 2-face".into()),
    }
}

/// Whether `P` has a point other than the apex inside the cone; `None`
/// when only a 2-face interior could witness it (dimension ≥ 3).
pub fn polytope_meets_cone(p: &RPolytope, c: &Cone) -> Option<bool> {
    if p.is_empty() {
        return Some(false);
    }
    if p.contains(&c.apex) {
        return Some(tangent_cone_meets(p, c));
    }
    if p.vertices().iter().any(|v| c.contains(v)) {
        return Some(true);
    }
    for (i, j) in p.edges() {
        if segment_meets_cone(&p.vertices()[i], &p.vertices()[j], c) {
            return Some(true);
        }
    }
    if p.dim() >= 2 && p.ambient_dim() >= 3 {
        return None;
    }
    Some(false)
}

/// Apex inside `P`: some feasible direction of `P` at the apex lies in
/// the cone. Uses the projection of the axis onto the generated cone.
fn tangent_cone_meets(p: &RPolytope, c: &Cone) -> bool {
    let gens: Vec<RVector> = p
        .vertices()
        .iter()
        .filter(|v| *v != &c.apex)
        .map(|v| v - &c.apex)
        .collect();
    if gens.is_empty() {
        return false;
    }
    let u = &c.axis;
    let n = u.dim();
    let mut best = Rational::zero();
    for k in 1..=n.min(gens.len()) {
        for subset in polytope_combinations(gens.len(), k) {
            let cols: Vec<&RVector> = subset.iter().map(|&i| &gens[i]).collect();
            let rows: Vec<Vec<Rational>> = cols.iter().map(|g| g.coords().to_vec()).collect();
            if linalg::rank(&rows) < k {
                continue;
            }
            let gram: Vec<Vec<Rational>> = cols
                .iter()
                .map(|a| cols.iter().map(|b| a.dot(b)).collect())
                .collect();
            let rhs: Vec<Rational> = cols.iter().map(|a| a.dot(u)).collect();
            let Some(lam) = linalg::solve(&gram, &rhs) else { continue };
            if lam.iter().any(Signed::is_negative) {
                continue;
            }
            // ‖proj‖² = proj · u = λ · rhs
            let m2: Rational = lam.iter().zip(&rhs).map(|(a, b)| a * b).sum();
            if m2 > best {
                best = m2;
            }
        }
    }
    best.is_positive() && best >= &c.cos_half_angle * &c.cos_half_angle * u.norm2()
}

/// Quadratic `q[0] + q[1] t + q[2] t²` evaluated at a surd.
fn eval_quad(q: &[Rational; 3], t: &QuadSurd) -> QuadSurd {
    let r = |x: &Rational| QuadSurd::rational(x.clone(), &t.d);
    &(&r(&q[0]) + &(&r(&q[1]) * t)) + &(&(&r(&q[2]) * t) * t)
}

fn quad_roots(q: &[Rational; 3]) -> Vec<QuadSurd> {
    let two = BigInt::from(2);
    if q[2].is_zero() {
        if q[1].is_zero() {
            return vec![];
        }
        return vec![QuadSurd::rational(-&q[0] / &q[1], &two)];
    }
    let disc = &q[1] * &q[1] - Rational::from_integer(4.into()) * &q[2] * &q[0];
    if disc.is_negative() {
        return vec![];
    }
    // √(a/b) = √(ab)/b
    let ab = disc.numer() * disc.denom();
    let den = Rational::from_integer(disc.denom().clone());
    let inv2a = Rational::one() / (Rational::from_integer(2.into()) * &q[2]);
    let base = -&q[1] * &inv2a;
    match exact_sqrt(&ab) {
        Some(s) => {
            let s = Rational::from_integer(s) / &den * &inv2a;
            vec![QuadSurd::rational(&base + &s, &two), QuadSurd::rational(&base - &s, &two)]
        }
        None => {
            let b = &inv2a / &den;
            vec![
                QuadSurd::new(base.clone(), b.clone(), ab.clone()),
                QuadSurd::new(base, -b, ab),
            ]
        }
    }
}

/// Exact test of `[a, b] ∩ cone ≠ ∅` for a segment avoiding the apex.
fn segment_meets_cone(a: &RPoint, b: &RPoint, c: &Cone) -> bool {
    let av = a - &c.apex;
    let bv = b - a;
    let u = &c.axis;
    let lin = [av.dot(u), bv.dot(u), Rational::zero()];
    let n2 = [av.norm2(), Rational::from_integer(2.into()) * av.dot(&bv), bv.norm2()];
    let k = &c.cos_half_angle * &c.cos_half_angle * u.norm2();
    let ang = [
        &lin[0] * &lin[0] - &k * &n2[0],
        Rational::from_integer(2.into()) * &lin[0] * &lin[1] - &k * &n2[1],
        &lin[1] * &lin[1] - &k * &n2[2],
    ];
    let ball = [&c.height * &c.height - &n2[0], -&n2[1], -&n2[2]];
    let two = BigInt::from(2);
    let mut cands = vec![
        QuadSurd::rational(Rational::zero(), &two),
        QuadSurd::rational(Rational::one(), &two),
    ];
    for q in [&lin, &ang, &ball] {
        cands.extend(quad_roots(q));
    }
    cands.into_iter().any(|t| {
        let one = QuadSurd::rational(Rational::one(), &t.d);
        t.signum() != Ordering::Less
            && (&one - &t).signum() != Ordering::Less
            && [&lin, &ang, &ball]
                .iter()
                .all(|q| eval_quad(q, &t).signum() != Ordering::Less)
    })
}

/// Cap on explicitly listed finite sequence contributions.
const LIST_LIMIT: usize = 100_000;

fn sequence_part(s: &ProbeSequence, c: &Cone) -> Part {
    match &s.schema {
        Schema::Rational(_) => rational_sequence_part(s, c),
        Schema::Recurrence(_) => {
            let Some(dir) = surd_direction(s) else {
                return Part::Unknown("recurrence direction undetermined".into());
            };
            if s.limit == c.apex {
                if c.angle_side(&dir) == Ordering::Greater {
                    return Part::Infinite;
                }
            } else {
                let v = &s.limit - &c.apex;
                let d = BigInt::from(2);
                let sv: Vec<QuadSurd> =
                    v.coords().iter().map(|x| QuadSurd::rational(x.clone(), &d)).collect();
                let inside_ball = v.norm2() < &c.height * &c.height;
                if inside_ball && c.angle_side(&sv) == Ordering::Greater {
                    return Part::Infinite;
                }
            }
            Part::Unknown("finite recurrence contribution has no certified count".into())
        }
    }
}

fn int_poly_sum_sq(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::zero(), |acc, p| acc.add(&p.mul(p)))
}

fn rational_sequence_part(s: &ProbeSequence, c: &Cone) -> Part {
    let (nums, den) = s.common_form().expect("rational schema");
    // v(i) = M(i)/D'(i) with integer data
    let shift: Vec<Rational> = s
        .limit
        .coords()
        .iter()
        .zip(c.apex.coords())
        .map(|(y, x)| y - x)
        .collect();
    let l = shift
        .iter()
        .fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
    let lq = Rational::from_integer(l.clone());
    let m: Vec<Poly> = nums
        .iter()
        .zip(&shift)
        .map(|(p, sh)| p.scale(&l).add(&den.scale(&(sh * &lq).to_integer())))
        .collect();
    let d = den.scale(&l);
    let u = c.axis.primitive();
    let ui: Vec<BigInt> = u.coords().iter().map(|x| x.to_integer()).collect();
    let dot = m
        .iter()
        .zip(&ui)
        .fold(Poly::zero(), |acc, (p, k)| acc.add(&p.scale(k)));
    let m2 = int_poly_sum_sq(&m);
    let u2: BigInt = ui.iter().map(|k| k * k).sum();
    let (cn, cd) = (c.cos_half_angle.numer().clone(), c.cos_half_angle.denom().clone());
    let (en, ed) = (c.height.numer().clone(), c.height.denom().clone());
    let h = dot.mul(&d);
    let g = dot.mul(&dot).scale(&(&cd * &cd)).sub(&m2.scale(&(&cn * &cn * &u2)));
    let r = d.mul(&d).scale(&(&en * &en)).sub(&m2.scale(&(&ed * &ed)));
    let i0 = BigInt::from(s.start);
    let set = h
        .nonneg_set_from(&i0)
        .intersect(&g.nonneg_set_from(&i0))
        .intersect(&r.nonneg_set_from(&i0));
    if set.is_infinite() {
        return Part::Infinite;
    }
    finite_terms(s, &set)
}

fn finite_terms(s: &ProbeSequence, set: &IntSet) -> Part {
    let count = set.count().unwrap();
    if count > BigInt::from(LIST_LIMIT) {
        return Part::Unknown("finite contribution too large to list".into());
    }
    Part::Finite(
        set.elements(LIST_LIMIT)
            .iter()
            .filter_map(|i| u64::try_from(i).ok().and_then(|i| s.term(i)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::examples::{cusp, cusp_sequence};
    use crate::geometry::rat;

    fn cone(axis: &[i64], eps: Rational, cos: Rational) -> Cone {
        Cone::new(RPoint::from_ints(&[0, 0]), RVector::from_ints(axis), eps, cos).unwrap()
    }

    #[test]
    fn contains_examples() {
        let c = cone(&[1, 0], rat(1, 2), rat(9, 10));
        assert!(c.contains(&RPoint::from_ints(&[0, 0])));
        assert!(!c.contains(&RPoint::from_pairs(&[(0, 1), (1, 4)])));
        assert!(c.contains(&RPoint::from_pairs(&[(1, 4), (1, 100)])));
        // oracle: (1/16) ≥ (81/100)(1/16 + 1/10000) and 1/16 + 1/10000 ≤ 1/4
        let lhs = rat(1, 16);
        let rhs = rat(81, 100) * (rat(1, 16) + rat(1, 10000));
        assert!(lhs >= rhs && rat(1, 16) + rat(1, 10000) <= rat(1, 4));
        let scaled = cone(&[7, 0], rat(1, 2), rat(9, 10));
        assert!(scaled.contains(&RPoint::from_pairs(&[(1, 4), (1, 100)])));
    }

    #[test]
    fn apex_alone_counts_zero() {
        let x = ClosedSetDesc::polyhedral(2, vec![RPolytope::from_vertices(2, &[RPoint::from_ints(&[0, 0])])]).unwrap();
        assert_eq!(count_in_cone(&x, &cone(&[1, 1], rat(1, 2), rat(1, 2)), 5), ConeCount::Exactly(0));
    }

    #[test]
    fn cusp_tail_certificate() {
        let x = cusp(2);
        for eps in [rat(1, 2), rat(1, 4), rat(1, 8)] {
            for cos in [rat(1, 2), rat(9, 10), rat(99, 100)] {
                let c = cone(&[1, 0], eps.clone(), cos.clone());
                assert_eq!(count_in_cone(&x, &c, 100), ConeCount::AtLeast(100));
                // numeric confirmation: the first 10³ terms eventually enter
                let s = cusp_sequence(2);
                let late = s.terms().take(1000).filter(|(_, w)| c.contains(w.as_ref().unwrap())).count();
                assert!(late > 0);
            }
        }
    }

    #[test]
    fn cusp_off_axis_is_finite() {
        let c = cone(&[0, 1], rat(1, 2), rat(99, 100));
        let ConeCount::Exactly(k) = count_in_cone(&cusp(2), &c, 10) else {
            panic!("expected a finite count")
        };
        // oracle: scan terms directly
        let s = cusp_sequence(2);
        let scan = s.terms().take(5000).filter(|(_, w)| c.contains(w.as_ref().unwrap())).count();
        assert_eq!(k, scan);
        let wide = cone(&[1, 1], rat(1, 1), rat(9, 10));
        let ConeCount::Exactly(k) = count_in_cone(&cusp(2), &wide, 10) else { panic!() };
        let scan = s.terms().take(5000).filter(|(_, w)| wide.contains(w.as_ref().unwrap())).count();
        assert_eq!(k, scan);
        assert!(k > 0);
    }

    #[test]
    fn polytopes_against_cones() {
        let tri = RPolytope::from_vertices(
            2,
            &[RPoint::from_pairs(&[(1, 4), (0, 1)]), RPoint::from_pairs(&[(1, 2), (0, 1)]), RPoint::from_pairs(&[(1, 2), (1, 4)])],
        );
        // apex outside, only an edge interior meets the cone
        let c = Cone::new(
            RPoint::from_pairs(&[(3, 8), (1, 4)]),
            RVector::from_ints(&[0, -1]),
            rat(1, 2),
            rat(99, 100),
        )
        .unwrap();
        assert!(!tri.vertices().iter().any(|v| c.contains(v)));
        assert_eq!(polytope_meets_cone(&tri, &c), Some(true));
        let away = Cone::new(c.apex.clone(), RVector::from_ints(&[0, 1]), rat(1, 2), rat(1, 2)).unwrap();
        assert_eq!(polytope_meets_cone(&tri, &away), Some(false));
        // apex at a vertex: tangent cone test
        let sq = RPolytope::unit_cube(2);
        let at0 = cone(&[1, 1], rat(1, 8), rat(99, 100));
        assert_eq!(polytope_meets_cone(&sq, &at0), Some(true));
        let out = cone(&[-1, 1], rat(1, 8), rat(9, 10));
        assert_eq!(polytope_meets_cone(&sq, &out), Some(false));
        let edge = cone(&[-1, 1], rat(1, 8), rat(1, 2));
        assert_eq!(polytope_meets_cone(&sq, &edge), Some(true));
    }

    #[test]
    fn short_cone_misses_far_edge() {
        let seg = RPolytope::from_vertices(2, &[RPoint::from_ints(&[1, 0]), RPoint::from_ints(&[1, 1])]);
        assert_eq!(polytope_meets_cone(&seg, &cone(&[1, 0], rat(1, 2), rat(1, 2))), Some(false));
        assert_eq!(polytope_meets_cone(&seg, &cone(&[1, 0], rat(3, 2), rat(1, 2))), Some(true));
        // feasible parameters lie between two irrational roots, about [0.7505, 0.8307]
        assert_eq!(polytope_meets_cone(&seg, &cone(&[1, 1], rat(13, 10), rat(99, 100))), Some(true));
        // the ball now stops at t = 3/4, just short of the angular root
        assert_eq!(polytope_meets_cone(&seg, &cone(&[1, 1], rat(5, 4), rat(99, 100))), Some(false));
    }
}
