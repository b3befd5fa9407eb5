//! Strong semisimplicity verdicts for `M(X)`.

use crate::closed_set::ClosedSetDesc;
use crate::geometry::Rational;
use crate::tangent::{default_lambda_max, tangent_report, DirectionVerdict, Outgoing, TangentWitness};

use super::witness::{not_sss_witness, NotSssWitness, DEFAULT_KMAX};

#[derive(Clone, Debug, PartialEq)]
pub enum SssReason {
    /// Finitely many rational polytopes: finitely presented algebra.
    PolyhedralHW,
    NoRationalOutgoingTangent(Vec<TangentWitness>),
    Dim1,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SssVerdict {
    StronglySemisimple(SssReason),
    NotStronglySemisimple(Box<NotSssWitness>),
    Unknown(Vec<String>),
}

impl SssVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SssVerdict::StronglySemisimple(_) => "SSS",
            SssVerdict::NotStronglySemisimple(_) => "NOT-SSS",
            SssVerdict::Unknown(_) => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionConfig {
    pub lambda_max: Rational,
    pub kmax: u64,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        DecisionConfig {
            lambda_max: default_lambda_max(),
            kmax: DEFAULT_KMAX,
        }
    }
}

pub fn decide_sss_dim1(_x: &ClosedSetDesc) -> SssVerdict {
    SssVerdict::StronglySemisimple(SssReason::Dim1)
}

/// Scan the tangent report: a witness if some rational tangent is outgoing,
/// otherwise the list of undecided items.
fn scan(x: &ClosedSetDesc, cfg: &DecisionConfig) -> (Vec<TangentWitness>, Option<SssVerdict>, Vec<String>) {
    let report = tangent_report(x, &cfg.lambda_max);
    let mut blockers = Vec::new();
    for t in &report {
        let k = t.sequence_index;
        match (&t.direction, &t.outgoing) {
            (DirectionVerdict::Rational(_), Outgoing::Yes(_)) => match not_sss_witness(x, t, cfg.kmax, &cfg.lambda_max) {
                Ok(w) => return (report.clone(), Some(SssVerdict::NotStronglySemisimple(Box::new(w))), blockers),
                Err(e) => blockers.push(format!("sequence {k}: witness construction failed: {e}")),
            },
            (DirectionVerdict::Undetermined(why), _) => blockers.push(format!("sequence {k}: direction undetermined: {why}")),
            (_, Outgoing::Undetermined(why)) => blockers.push(format!("sequence {k}: outgoing test undetermined: {why}")),
            _ => {}
        }
    }
    (report, None, blockers)
}

pub fn decide_sss_dim2(x: &ClosedSetDesc, cfg: &DecisionConfig) -> SssVerdict {
    if x.is_polyhedral() {
        return SssVerdict::StronglySemisimple(SssReason::PolyhedralHW);
    }
    let (report, found, blockers) = scan(x, cfg);
    if let Some(v) = found {
        return v;
    }
    if blockers.is_empty() {
        SssVerdict::StronglySemisimple(SssReason::NoRationalOutgoingTangent(report))
    } else {
        SssVerdict::Unknown(blockers)
    }
}

pub fn decide_sss(x: &ClosedSetDesc, cfg: &DecisionConfig) -> SssVerdict {
    match x.ambient_dim() {
        1 => decide_sss_dim1(x),
        2 => decide_sss_dim2(x, cfg),
        _ => {
            if x.is_polyhedral() {
                return SssVerdict::StronglySemisimple(SssReason::PolyhedralHW);
            }
            let (report, found, mut blockers) = scan(x, cfg);
            if let Some(v) = found {
                return v;
            }
            for t in &report {
                if let Outgoing::AllAligned { sequence } = t.outgoing {
                    blockers.push(format!("sequence {sequence}: aligned with its tangent"));
                }
            }
            blockers.push("no rational outgoing tangent; no converse above dimension two".into());
            SssVerdict::Unknown(blockers)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::examples::{cusp, pell_sequence};
    use crate::closed_set::{ProbeSequence, RatFn, Schema};
    use crate::geometry::{RPoint, RPolytope};
    use crate::poly::Poly;

    fn cfg() -> DecisionConfig {
        DecisionConfig::default()
    }

    fn triangle() -> ClosedSetDesc {
        ClosedSetDesc::polyhedral(
            2,
            vec![RPolytope::from_vertices(2, &[RPoint::from_ints(&[0, 0]), RPoint::from_ints(&[1, 0]), RPoint::from_ints(&[0, 1])])],
        )
        .unwrap()
    }

    fn seq3(second: Poly, third_den: Poly) -> ProbeSequence {
        ProbeSequence::new(
            RPoint::from_ints(&[0, 0, 0]),
            2,
            Schema::Rational(vec![
                RatFn::new(Poly::one(), Poly::var()),
                RatFn::new(Poly::one(), second),
                RatFn::new(Poly::zero(), third_den),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional() {
        let x = ClosedSetDesc::polyhedral(1, vec![RPolytope::unit_cube(1)]).unwrap();
        assert_eq!(decide_sss(&x, &cfg()), SssVerdict::StronglySemisimple(SssReason::Dim1));
    }

    #[test]
    fn plane_cases() {
        assert_eq!(decide_sss(&triangle(), &cfg()).label(), "SSS");
        let v = decide_sss(&cusp(2), &cfg());
        assert_eq!(v.label(), "NOT-SSS");
        let pell = ClosedSetDesc::new(2, vec![], vec![pell_sequence()]).unwrap();
        assert!(matches!(
            decide_sss(&pell, &cfg()),
            SssVerdict::StronglySemisimple(SssReason::NoRationalOutgoingTangent(_))
        ));
    }

    #[test]
    fn segment_flips_cusp() {
        let x = cusp(2).with_polypart(RPolytope::from_vertices(
            2,
            &[RPoint::from_ints(&[0, 0]), RPoint::from_pairs(&[(1, 2), (0, 1)])],
        ));
        assert_eq!(decide_sss(&x.unwrap(), &cfg()).label(), "SSS");
    }

    #[test]
    fn space_cases() {
        let x = ClosedSetDesc::new(3, vec![], vec![seq3(Poly::var().pow(2), Poly::one())]).unwrap();
        assert_eq!(decide_sss(&x, &cfg()).label(), "NOT-SSS");
        let cube = ClosedSetDesc::polyhedral(3, vec![RPolytope::unit_cube(3)]).unwrap();
        assert_eq!(decide_sss(&cube, &cfg()), SssVerdict::StronglySemisimple(SssReason::PolyhedralHW));
        let aligned = ClosedSetDesc::new(3, vec![], vec![seq3(Poly::zero().add(&Poly::var()), Poly::one())]).unwrap();
        assert_eq!(decide_sss(&aligned, &cfg()).label(), "UNKNOWN");
    }
}
