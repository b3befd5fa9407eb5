use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::direction::{limit_direction, DirectionVerdict};
use crate::closed_set::{ClosedSetDesc, ProbeSequence, Schema};
use crate::geometry::{rat, segment_parameter_range, RPoint, RVector, Rational};
use crate::poly::Poly;

/// What stops a segment from leaving `X` cleanly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Polytope(usize),
    /// The direction points out of the cube at `x`.
    CubeBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outgoing {
    /// `conv(x, x + λu)` meets `X` only at `x`.
    Yes(Rational),
    No(Obstruction),
    /// Infinitely many terms of this sequence lie on the ray itself.
    AllAligned { sequence: usize },
    Undetermined(String),
    /// Not attempted: the direction has no rational representative.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentWitness {
    pub x: RPoint,
    pub direction: DirectionVerdict,
    pub outgoing: Outgoing,
    pub sequence_index: usize,
}

pub fn default_lambda_max() -> Rational {
    rat(1, 2)
}

/// Largest `t ≥ 0` with `x + t u` in the cube.
fn cube_exit(x: &RPoint, u: &RVector) -> Rational {
    let mut t: Option<Rational> = None;
    for (xi, ui) in x.coords().iter().zip(u.coords()) {
        let bound = if ui.is_positive() {
            (Rational::one() - xi) / ui
        } else if ui.is_negative() {
            -xi / ui
        } else {
            continue;
        };
        if t.as_ref().map_or(true, |cur| &bound < cur) {
            t = Some(bound);
        }
    }
    t.unwrap_or_else(Rational::zero)
}

/// Parameter `t` with `p = x + t u`, if `p` lies on that line.
fn line_parameter(x: &RPoint, u: &RVector, p: &RPoint) -> Option<Rational> {
    let v = p - x;
    let t = v.dot(u) / u.norm2();
    (u.scale(&t) == v).then_some(t)
}

pub fn is_outgoing(x_set: &ClosedSetDesc, x: &RPoint, u: &RVector, lambda_max: &Rational) -> Outgoing {
    if u.is_zero() {
        return Outgoing::Undetermined("zero direction".into());
    }
    let u = u.primitive();
    let mut lambda = cube_exit(x, &u).min(lambda_max.clone());
    if !lambda.is_positive() {
        return Outgoing::No(Obstruction::CubeBoundary);
    }
    for (k, p) in x_set.polyparts().iter().enumerate() {
        let end = x.offset(&u, &lambda);
        if let Some((t0, t1)) = segment_parameter_range(x, &end, p) {
            if t0.is_zero() {
                if t1.is_positive() {
                    return Outgoing::No(Obstruction::Polytope(k));
                }
            } else {
                lambda = &lambda * t0 / Rational::from_integer(2.into());
            }
        }
    }
    for (k, s) in x_set.sequences().iter().enumerate() {
        if s.limit != *x {
            if let Some(t) = line_parameter(x, &u, &s.limit) {
                if t.is_positive() && t <= lambda {
                    lambda = t / Rational::from_integer(2.into());
                }
            }
        }
        match &s.schema {
            Schema::Rational(_) => match aligned_terms(s, x, &u, &lambda) {
                Aligned::Infinite => return Outgoing::AllAligned { sequence: k },
                Aligned::Closest(Some(t)) => lambda = t / Rational::from_integer(2.into()),
                Aligned::Closest(None) => {}
            },
            Schema::Recurrence(_) => {
                return Outgoing::Undetermined(format!(
                    "recurrence sequence {} can only be scanned to a finite horizon",
                    k + 1
                ))
            }
        }
    }
    Outgoing::Yes(lambda)
}

enum Aligned {
    Infinite,
    /// Smallest parameter in `(0, λ]` of a term on the segment.
    Closest(Option<Rational>),
}

fn aligned_terms(s: &ProbeSequence, x: &RPoint, u: &RVector, lambda: &Rational) -> Aligned {
    let (nums, den) = s.common_form().expect("rational schema");
    let shift: Vec<Rational> = s
        .limit
        .coords()
        .iter()
        .zip(x.coords())
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
    let ui: Vec<BigInt> = u.coords().iter().map(|c| c.to_integer()).collect();
    let n = ui.len();
    let mut minors = Vec::new();
    for j in 0..n {
        for k in j + 1..n {
            minors.push(m[k].scale(&ui[j]).sub(&m[j].scale(&ui[k])));
        }
    }
    let i0 = BigInt::from(s.start);
    let candidates: Vec<BigInt> = match minors.iter().find(|p| !p.is_zero()) {
        Some(p) => p.integer_roots_from(&i0),
        None => {
            // every term lies on the line: 0 < t(i) ≤ λ as polynomial inequalities
            let dot = m
                .iter()
                .zip(&ui)
                .fold(Poly::zero(), |acc, (p, k)| acc.add(&p.scale(k)));
            let u2: BigInt = ui.iter().map(|k| k * k).sum();
            let pos = dot.mul(&d).sub(&Poly::one());
            let (ln, ld) = (lambda.numer().clone(), lambda.denom().clone());
            let within = d.mul(&d).scale(&(&ln * &u2)).sub(&dot.mul(&d).scale(&ld));
            let set = pos.nonneg_set_from(&i0).intersect(&within.nonneg_set_from(&i0));
            if set.is_infinite() {
                return Aligned::Infinite;
            }
            set.elements(usize::MAX)
        }
    };
    let mut best: Option<Rational> = None;
    for c in candidates {
        let Ok(i) = u64::try_from(&c) else { continue };
        let Some(w) = s.term(i) else { continue };
        if let Some(t) = line_parameter(x, u, &w) {
            if t.is_positive() && &t <= lambda && best.as_ref().map_or(true, |b| &t < b) {
                best = Some(t);
            }
        }
    }
    Aligned::Closest(best)
}

/// One witness per probe sequence.
pub fn tangent_report(x_set: &ClosedSetDesc, lambda_max: &Rational) -> Vec<TangentWitness> {
    x_set
        .sequences()
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let direction = limit_direction(s);
            let outgoing = match &direction {
                DirectionVerdict::Rational(u) => is_outgoing(x_set, &s.limit, u, lambda_max),
                _ => Outgoing::Skipped,
            };
            TangentWitness {
                x: s.limit.clone(),
                direction,
                outgoing,
                sequence_index: k,
            }
        })
        .collect()
}
