//! Witnesses of failure of strong semisimplicity built from a rational
//! outgoing tangent, and an exact checker for the facts they rest on.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::calculus::{point_zero_function, segment_zero_function, PLFunction};
use crate::closed_set::{AffineCond, ClosedSetDesc, Hit, PointOfSet, ProbeSequence, Provenance};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, rat, RPoint, RPolytope, RVector, Rational};
use crate::tangent::{count_in_cone, is_outgoing, Cone, ConeCount, Outgoing, TangentWitness};

use super::along::first_excess;
use super::ideal::{scan_bound, DominanceRow, DominanceTable};

pub const DEFAULT_KMAX: u64 = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct NotSssWitness {
    pub x: RPoint,
    pub u: RVector,
    pub lambda: Rational,
    /// Vanishes exactly on `conv(x, x + λu)`.
    pub g: PLFunction,
    /// Vanishes exactly at `x`.
    pub j: PLFunction,
    pub sequence_index: usize,
    pub dominance: DominanceTable,
}

impl NotSssWitness {
    pub fn endpoint(&self) -> RPoint {
        self.x.offset(&self.u, &self.lambda)
    }
}

fn point_list(p: &RPoint) -> String {
    let c: Vec<String> = p.coords().iter().map(format_rational).collect();
    format!("({})", c.join(","))
}

/// First term of `s` on `conv(x, y)` other than `x` itself.
fn term_on_segment(s: &ProbeSequence, x: &RPoint, y: &RPoint, scan: u64) -> Hit {
    let seg = RPolytope::from_vertices(x.dim(), &[x.clone(), y.clone()]);
    let mut conds: Vec<AffineCond> = seg.constraints().iter().map(AffineCond::from_halfspace).collect();
    let u = y - x;
    conds.push(AffineCond {
        coeffs: u.coords().to_vec(),
        constant: -u.dot(&(x - &RPoint::origin(x.dim()))),
        strict: true,
    });
    s.first_where(&conds, scan)
}

/// `X ∩ conv(x, y) = {x}`, or a description of what breaks it.
fn segment_meets_only_at_x(xs: &ClosedSetDesc, x: &RPoint, y: &RPoint) -> std::result::Result<(), String> {
    let seg = RPolytope::from_vertices(x.dim(), &[x.clone(), y.clone()]);
    for (k, p) in xs.polyparts().iter().enumerate() {
        let q = p.intersect(&seg);
        if let Some(v) = q.vertices().iter().find(|v| *v != x) {
            return Err(format!("polytope {k} meets the segment at {}", point_list(v)));
        }
    }
    for (k, s) in xs.sequences().iter().enumerate() {
        if s.limit != *x && seg.contains(&s.limit) {
            return Err(format!("limit of sequence {k} lies on the segment"));
        }
        match term_on_segment(s, x, y, scan_bound(0)) {
            Hit::Never => {}
            Hit::Found(i) => return Err(format!("term {i} of sequence {k} lies on the segment")),
            Hit::Unknown => return Err(format!("sequence {k} could not be decided")),
        }
    }
    Ok(())
}

/// Build `g`, `j` and the dominance table from a rational outgoing tangent.
pub fn not_sss_witness(
    xs: &ClosedSetDesc,
    t: &TangentWitness,
    kmax: u64,
    lambda_max: &Rational,
) -> Result<NotSssWitness> {
    let u = t
        .direction
        .rational()
        .ok_or_else(|| Error::Invalid("tangent direction is not rational".into()))?
        .primitive();
    let Outgoing::Yes(l0) = &t.outgoing else {
        return Err(Error::Invalid("tangent is not outgoing".into()));
    };
    let mut lambda = l0.clone().min(lambda_max.clone());
    match is_outgoing(xs, &t.x, &u, &lambda) {
        Outgoing::Yes(l) => lambda = l,
        other => return Err(Error::Invalid(format!("outgoing re-check failed: {other:?}"))),
    }
    let y = t.x.offset(&u, &lambda);
    segment_meets_only_at_x(xs, &t.x, &y).map_err(Error::ZerosetCheck)?;
    let g = segment_zero_function(&t.x, &y)?;
    let j = point_zero_function(&t.x)?;
    let s = &xs.sequences()[t.sequence_index];
    let mut dominance = DominanceTable::default();
    for k in 1..=kmax {
        if let Hit::Found(i) = first_excess(&j, &g, k, s, scan_bound(k)) {
            let at = PointOfSet {
                point: s.term(i).expect("term inside the cube"),
                provenance: Provenance::Sequence {
                    sequence: t.sequence_index,
                    index: i,
                },
            };
            dominance.rows.push(DominanceRow::new(k, at, &j, &g));
        }
    }
    Ok(NotSssWitness {
        x: t.x.clone(),
        u,
        lambda,
        g,
        j,
        sequence_index: t.sequence_index,
        dominance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    /// `g(x) = 0`
    GVanishes,
    /// `j(x) = 0`
    JVanishes,
    /// `∂g(x)/∂u = 0`
    GFlatAlongU,
    /// no tail term of the sequence lies on `conv(x, x + λu)`
    Nonaligned,
    /// `∂g(x + εu)/∂u⊥ > 0` toward the side holding the tail (plane only)
    GRisesAcross,
    /// `∂j(x)/∂u > 0`
    JRisesAlongU,
    /// `conv(x, x + λu)` meets `X` only at `x`
    Outgoing,
    /// `x` and `u` rational
    RationalData,
    /// `j = 0` on the zeros of `g` in `X`
    JZeroOnZg,
    /// every dominance row re-verifies
    Dominance,
    /// the tail of the sequence sits in a cone around `u`
    TailInCone,
}

impl Fact {
    pub const ALL: [Fact; 11] = [
        Fact::GVanishes,
        Fact::JVanishes,
        Fact::GFlatAlongU,
        Fact::Nonaligned,
        Fact::GRisesAcross,
        Fact::JRisesAlongU,
        Fact::Outgoing,
        Fact::RationalData,
        Fact::JZeroOnZg,
        Fact::Dominance,
        Fact::TailInCone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fact::GVanishes => "g-vanishes-at-x",
            Fact::JVanishes => "j-vanishes-at-x",
            Fact::GFlatAlongU => "g-flat-along-u",
            Fact::Nonaligned => "nonaligned",
            Fact::GRisesAcross => "g-rises-across",
            Fact::JRisesAlongU => "j-rises-along-u",
            Fact::Outgoing => "outgoing",
            Fact::RationalData => "rational-data",
            Fact::JZeroOnZg => "j-zero-on-zg",
            Fact::Dominance => "dominance",
            Fact::TailInCone => "tail-in-cone",
        }
    }

    /// Identities checked on data rather than pointwise facts.
    pub fn is_equation(self) -> bool {
        matches!(self, Fact::JZeroOnZg | Fact::Dominance | Fact::TailInCone)
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactCheck {
    pub fact: Fact,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub checks: Vec<FactCheck>,
}

impl FactReport {
    pub fn status(&self, fact: Fact) -> Status {
        self.checks
            .iter()
            .find(|c| c.fact == fact)
            .map_or(Status::NotApplicable, |c| c.status)
    }

    pub fn failing(&self) -> Vec<Fact> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.fact)
            .collect()
    }

    /// Failing pointwise facts, equations excluded.
    pub fn failing_facts(&self) -> Vec<Fact> {
        self.failing().into_iter().filter(|f| !f.is_equation()).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.failing().is_empty()
    }
}

fn check(fact: Fact, ok: bool, detail: String) -> FactCheck {
    FactCheck {
        fact,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn derivative_check(fact: Fact, h: &PLFunction, at: &RPoint, dir: &RVector, want: Ordering) -> FactCheck {
    match h.directional_derivative(at, dir) {
        Ok(d) => {
            let ok = d.cmp(&Rational::zero()) == want;
            check(fact, ok, format!("derivative {}", format_rational(&d)))
        }
        Err(e) => check(fact, false, e.to_string()),
    }
}

/// Side of the line `x + ℝu` holding the tail of `s`, as a normal pointing
/// toward it. Plane only.
fn tail_side(s: &ProbeSequence, x: &RPoint, u: &RVector) -> Option<RVector> {
    let (u1, u2) = (&u.coords()[0], &u.coords()[1]);
    let normal = RVector::new(vec![-u2.clone(), u1.clone()]);
    let c = -(normal.dot(&(x - &RPoint::origin(2))));
    let sign = match s.affine_sign_poly(normal.coords(), &c) {
        Some(p) => p.sign_at_infinity(),
        None => {
            // recurrence: read the sign off a late term
            let (_, w) = s.terms_from(s.start + 4096).next()?;
            let w = w?;
            (normal.dot(&(&w - &RPoint::origin(2))) + &c).cmp(&Rational::zero())
        }
    };
    match sign {
        Ordering::Greater => Some(normal),
        Ordering::Less => Some(normal.neg()),
        Ordering::Equal => None,
    }
}

/// Check every fact the witness relies on, exactly.
pub fn verify_fact_chain(w: &NotSssWitness, xs: &ClosedSetDesc) -> FactReport {
    let mut checks = Vec::new();
    let zero = Rational::zero();
    let gx = w.g.eval(&w.x);
    let jx = w.j.eval(&w.x);
    let fmt_val = |v: &Result<Rational>| match v {
        Ok(v) => format_rational(v),
        Err(e) => e.to_string(),
    };
    checks.push(check(Fact::GVanishes, gx.as_ref() == Ok(&zero), format!("g(x) = {}", fmt_val(&gx))));
    checks.push(check(Fact::JVanishes, jx.as_ref() == Ok(&zero), format!("j(x) = {}", fmt_val(&jx))));
    checks.push(derivative_check(Fact::GFlatAlongU, &w.g, &w.x, &w.u, Ordering::Equal));

    let y = w.endpoint();
    let s = xs.sequences().get(w.sequence_index);
    checks.push(match s.map(|s| term_on_segment(s, &w.x, &y, scan_bound(0))) {
        Some(Hit::Never) => check(Fact::Nonaligned, true, "no term on the segment".into()),
        Some(Hit::Found(i)) => check(Fact::Nonaligned, false, format!("term {i} on the segment")),
        Some(Hit::Unknown) => check(Fact::Nonaligned, false, "undetermined".into()),
        None => check(Fact::Nonaligned, false, "no such sequence".into()),
    });

    if w.x.dim() == 2 {
        let eps = &w.lambda / Rational::from_integer(2.into());
        let at = w.x.offset(&w.u, &eps);
        checks.push(match s.and_then(|s| tail_side(s, &w.x, &w.u)) {
            Some(perp) => {
                let mut c = derivative_check(Fact::GRisesAcross, &w.g, &at, &perp, Ordering::Greater);
                c.detail = format!("{} along {} at {}", c.detail, point_list(&(&RPoint::origin(2) + &perp)), point_list(&at));
                c
            }
            None => check(Fact::GRisesAcross, false, "tail does not pick a side".into()),
        });
    } else {
        checks.push(FactCheck {
            fact: Fact::GRisesAcross,
            status: Status::NotApplicable,
            detail: "plane only".into(),
        });
    }

    checks.push(derivative_check(Fact::JRisesAlongU, &w.j, &w.x, &w.u, Ordering::Greater));
    checks.push(match segment_meets_only_at_x(xs, &w.x, &y) {
        Ok(()) => check(
            Fact::Outgoing,
            true,
            format!("segment to {} meets X only at x", point_list(&y)),
        ),
        Err(e) => check(Fact::Outgoing, false, e),
    });
    let rational_ok = !w.u.is_zero() && w.u.primitive() == w.u && w.lambda.is_positive();
    checks.push(check(
        Fact::RationalData,
        rational_ok,
        format!("x = {}, u = {}", point_list(&w.x), point_list(&(&RPoint::origin(w.u.dim()) + &w.u))),
    ));

    let mut bad = None;
    let mut pts: Vec<RPoint> = xs.enumerate_points(1000).into_iter().map(|p| p.point).collect();
    pts.extend(xs.limits());
    for p in &pts {
        if w.g.eval(p).map(|v| v.is_zero()).unwrap_or(false) && !w.j.eval(p).map(|v| v.is_zero()).unwrap_or(false) {
            bad = Some(p.clone());
            break;
        }
    }
    checks.push(match bad {
        None => check(Fact::JZeroOnZg, true, format!("{} points checked", pts.len())),
        Some(p) => check(Fact::JZeroOnZg, false, format!("j ≠ 0 at {}", point_list(&p))),
    });

    let rows_ok = !w.dominance.rows.is_empty() && w.dominance.recheck(&w.j, &w.g);
    checks.push(check(
        Fact::Dominance,
        rows_ok,
        format!("{} rows", w.dominance.rows.len()),
    ));

    checks.push(match Cone::new(w.x.clone(), w.u.clone(), w.lambda.clone(), rat(9, 10)) {
        Ok(cone) => match count_in_cone(xs, &cone, 100) {
            ConeCount::AtLeast(c) => check(Fact::TailInCone, true, format!("at least {c} points")),
            other => check(Fact::TailInCone, false, format!("{other:?}")),
        },
        Err(e) => check(Fact::TailInCone, false, e.to_string()),
    });
    FactReport { checks }
}
