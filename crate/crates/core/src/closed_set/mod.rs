//! Finite descriptions of closed subsets of the unit cube: rational
//! polytopes plus convergent probe sequences together with their limits.

mod sequence;

pub use sequence::{
    AffineCond, Hit, Horizon, Membership, Monomial, ProbeSequence, RatFn, RecurrenceSchema, Schema,
};

use crate::calculus::{PLFunction, ZeroLocus};
use crate::error::{Error, Result};
use crate::geometry::{RPoint, RPolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Polytope(usize),
    Sequence { sequence: usize, index: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointOfSet {
    pub point: RPoint,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSetDesc {
    n: usize,
    polyparts: Vec<RPolytope>,
    sequences: Vec<ProbeSequence>,
}

impl ClosedSetDesc {
    pub fn new(n: usize, polyparts: Vec<RPolytope>, sequences: Vec<ProbeSequence>) -> Result<Self> {
        let polyparts: Vec<RPolytope> = polyparts.into_iter().filter(|p| !p.is_empty()).collect();
        if polyparts.is_empty() && sequences.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in &polyparts {
            if p.ambient_dim() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: p.ambient_dim(),
                });
            }
            if !p.vertices().iter().all(RPoint::in_unit_cube) {
                return Err(Error::OutsideCube);
            }
        }
        for s in &sequences {
            if s.dim() != n {
                return Err(Error::Arity {
                    expected: n,
                    found: s.dim(),
                });
            }
        }
        Ok(ClosedSetDesc {
            n,
            polyparts,
            sequences,
        })
    }

    pub fn polyhedral(n: usize, polyparts: Vec<RPolytope>) -> Result<Self> {
        Self::new(n, polyparts, Vec::new())
    }

    pub fn from_zero_locus(z: &ZeroLocus) -> Result<Self> {
        Self::polyhedral(z.ambient_dim(), z.pieces().to_vec())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn polyparts(&self) -> &[RPolytope] {
        &self.polyparts
    }

    pub fn sequences(&self) -> &[ProbeSequence] {
        &self.sequences
    }

    pub fn is_polyhedral(&self) -> bool {
        self.sequences.is_empty()
    }

    /// A copy with one more polytope.
    pub fn with_polypart(&self, p: RPolytope) -> Result<Self> {
        let mut parts = self.polyparts.clone();
        parts.push(p);
        Self::new(self.n, parts, self.sequences.clone())
    }

    pub fn membership(&self, p: &RPoint, horizon: Horizon) -> Result<Membership> {
        if p.dim() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: p.dim(),
            });
        }
        if self.polyparts.iter().any(|q| q.contains(p))
            || self.sequences.iter().any(|s| &s.limit == p)
        {
            return Ok(Membership::Yes);
        }
        let mut unknown = false;
        for s in &self.sequences {
            match s.locate(p, horizon).0 {
                Membership::Yes => return Ok(Membership::Yes),
                Membership::Unknown => unknown = true,
                Membership::No => {}
            }
        }
        Ok(if unknown {
            Membership::Unknown
        } else {
            Membership::No
        })
    }

    /// Polytope vertices, then the first `budget` terms of each sequence.
    pub fn enumerate_points(&self, budget: usize) -> Vec<PointOfSet> {
        let mut out = Vec::new();
        for (k, p) in self.polyparts.iter().enumerate() {
            for v in p.vertices() {
                out.push(PointOfSet {
                    point: v.clone(),
                    provenance: Provenance::Polytope(k),
                });
            }
        }
        for (k, s) in self.sequences.iter().enumerate() {
            for (i, w) in s.terms().take(budget) {
                if let Some(w) = w {
                    out.push(PointOfSet {
                        point: w,
                        provenance: Provenance::Sequence {
                            sequence: k,
                            index: i,
                        },
                    });
                }
            }
        }
        out
    }

    /// Sequence limits, deduplicated, in declaration order.
    pub fn limits(&self) -> Vec<RPoint> {
        let mut out: Vec<RPoint> = Vec::new();
        for s in &self.sequences {
            if !out.contains(&s.limit) {
                out.push(s.limit.clone());
            }
        }
        out
    }
}

/// `⋂ Z f` over a nonempty basis.
pub fn zero_locus_of_basis(fs: &[PLFunction]) -> Result<ZeroLocus> {
    let first = fs
        .first()
        .ok_or_else(|| Error::Invalid("empty basis".into()))?;
    let n = first.arity();
    let mut acc: Vec<RPolytope> = first.zeroset().pieces().to_vec();
    for f in &fs[1..] {
        if f.arity() != n {
            return Err(Error::Arity {
                expected: n,
                found: f.arity(),
            });
        }
        let z = f.zeroset();
        let mut next = Vec::new();
        for a in &acc {
            for b in z.pieces() {
                if a.boxes_overlap(b) {
                    let c = a.intersect(b);
                    if !c.is_empty() {
                        next.push(c);
                    }
                }
            }
        }
        acc = next;
    }
    Ok(ZeroLocus::new(n, acc))
}

#[cfg(test)]
pub(crate) mod examples {
    use super::*;
    use crate::poly::Poly;
    use num_bigint::BigInt;

    pub fn cusp_sequence(exp: u32) -> ProbeSequence {
        ProbeSequence::new(
            RPoint::from_ints(&[0, 0]),
            2,
            Schema::Rational(vec![
                RatFn::new(Poly::one(), Poly::var()),
                RatFn::new(Poly::one(), Poly::var().pow(exp)),
            ]),
        )
        .unwrap()
    }

    pub fn cusp(exp: u32) -> ClosedSetDesc {
        let origin = RPolytope::from_vertices(2, &[RPoint::from_ints(&[0, 0])]);
        ClosedSetDesc::new(2, vec![origin], vec![cusp_sequence(exp)]).unwrap()
    }

    pub fn pell_sequence() -> ProbeSequence {
        let b = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        ProbeSequence::new(
            RPoint::from_ints(&[0, 0]),
            0,
            Schema::Recurrence(RecurrenceSchema {
                coeffs: b(&[2, 1]),
                names: vec!["p".into(), "q".into()],
                initial: vec![b(&[1, 3]), b(&[1, 2])],
                coords: vec![
                    Monomial {
                        scale: crate::geometry::rat_int(1),
                        num: vec![],
                        den: vec![(1, 1)],
                    },
                    Monomial {
                        scale: crate::geometry::rat_int(1),
                        num: vec![(0, 1)],
                        den: vec![(1, 2)],
                    },
                ],
            }),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::calculus::{compile, segment_zero_function};
    use crate::formula::parse;
    use crate::poly::Poly;

    #[test]
    fn cusp_membership() {
        let x = cusp(2);
        let h = Horizon::default();
        assert_eq!(x.membership(&RPoint::from_ints(&[0, 0]), h).unwrap(), Membership::Yes);
        let p = RPoint::from_pairs(&[(1, 5), (1, 25)]);
        assert_eq!(x.membership(&p, h).unwrap(), Membership::Yes);
        assert_eq!(x.sequences()[0].locate(&p, h), (Membership::Yes, Some(5)));
        let q = RPoint::from_pairs(&[(1, 2), (1, 3)]);
        assert_eq!(x.membership(&q, h).unwrap(), Membership::No);
        assert!(x.membership(&RPoint::from_ints(&[0]), h).is_err());
    }

    #[test]
    fn limit_is_member_without_polypart() {
        let x = ClosedSetDesc::new(2, vec![], vec![cusp_sequence(2)]).unwrap();
        assert_eq!(
            x.membership(&RPoint::from_ints(&[0, 0]), Horizon::default()).unwrap(),
            Membership::Yes
        );
    }

    #[test]
    fn pell_membership_and_enumeration() {
        let s = pell_sequence();
        let x = ClosedSetDesc::new(2, vec![], vec![s.clone()]).unwrap();
        let pts = x.enumerate_points(2);
        assert_eq!(pts.len(), 2);
        // oracle: unroll p = 1,3,7 and q = 1,2,5 by hand
        assert_eq!(pts[0].point, RPoint::from_ints(&[1, 1]));
        assert_eq!(pts[1].point, RPoint::from_pairs(&[(1, 2), (3, 4)]));
        let w3 = s.term(3).unwrap();
        assert_eq!(w3, RPoint::from_pairs(&[(1, 12), (17, 144)]));
        let h = Horizon::default();
        assert_eq!(x.membership(&w3, h).unwrap(), Membership::Yes);
        let small = Horizon { indices: 50, bits: 4096 };
        assert_eq!(
            x.membership(&RPoint::from_pairs(&[(1, 3), (1, 3)]), small).unwrap(),
            Membership::Unknown
        );
    }

    #[test]
    fn enumerate_examples() {
        let sq = RPolytope::unit_cube(2);
        let x = ClosedSetDesc::polyhedral(2, vec![sq]).unwrap();
        assert_eq!(x.enumerate_points(7).len(), 4);
        let pts: Vec<RPoint> = cusp(2).enumerate_points(3).into_iter().map(|p| p.point).collect();
        assert_eq!(
            pts,
            vec![
                RPoint::from_ints(&[0, 0]),
                RPoint::from_pairs(&[(1, 2), (1, 4)]),
                RPoint::from_pairs(&[(1, 3), (1, 9)]),
                RPoint::from_pairs(&[(1, 4), (1, 16)]),
            ]
        );
    }

    #[test]
    fn enumerated_points_are_members() {
        for x in [cusp(2), cusp(3)] {
            for p in x.enumerate_points(40) {
                assert_eq!(x.membership(&p.point, Horizon::default()).unwrap(), Membership::Yes);
            }
        }
        let x = ClosedSetDesc::new(2, vec![], vec![pell_sequence()]).unwrap();
        for p in x.enumerate_points(20) {
            assert_eq!(x.membership(&p.point, Horizon::default()).unwrap(), Membership::Yes);
        }
    }

    #[test]
    fn distances_decrease() {
        assert_eq!(cusp_sequence(2).decreasing_from(200), Some(2));
        assert_eq!(pell_sequence().decreasing_from(30), Some(0));
    }

    #[test]
    fn affine_queries_match_scan() {
        let s = cusp_sequence(2);
        // 3 x1 − 20 x2 > 0  ⇔  3/i > 20/i²  ⇔  i > 20/3
        let c = AffineCond {
            coeffs: vec![crate::geometry::rat_int(3), crate::geometry::rat_int(-20)],
            constant: crate::geometry::rat_int(0),
            strict: true,
        };
        assert_eq!(s.first_where(&[c.clone()], 0), Hit::Found(7));
        let scan = s.terms().take(200).find(|(_, w)| c.holds(w.as_ref().unwrap())).unwrap().0;
        assert_eq!(scan, 7);
        let never = AffineCond {
            coeffs: vec![crate::geometry::rat_int(0), crate::geometry::rat_int(-1)],
            constant: crate::geometry::rat_int(0),
            strict: true,
        };
        assert_eq!(s.first_where(&[never.clone()], 0), Hit::Never);
        assert_eq!(pell_sequence().first_where(&[never], 50), Hit::Unknown);
        assert!(s.indices_where(&[c]).unwrap().is_infinite());
    }

    #[test]
    fn rejects_bad_sequences() {
        let o = RPoint::from_ints(&[0, 0]);
        let diverging = Schema::Rational(vec![
            RatFn::new(Poly::var(), Poly::var()),
            RatFn::new(Poly::one(), Poly::var()),
        ]);
        assert!(ProbeSequence::new(o.clone(), 2, diverging).is_err());
        let outside = Schema::Rational(vec![
            RatFn::new(Poly::from_ints(&[-1]), Poly::var()),
            RatFn::new(Poly::one(), Poly::var()),
        ]);
        assert_eq!(ProbeSequence::new(o.clone(), 2, outside).unwrap_err(), Error::OutsideCube);
        let pole = Schema::Rational(vec![
            RatFn::new(Poly::one(), Poly::from_ints(&[-3, 1])),
            RatFn::new(Poly::one(), Poly::var().pow(2)),
        ]);
        assert!(ProbeSequence::new(o.clone(), 2, pole).is_err());
        assert_eq!(ClosedSetDesc::new(2, vec![], vec![]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn basis_zero_loci() {
        let zero = PLFunction::zero(2);
        let z = zero_locus_of_basis(&[zero.clone()]).unwrap();
        assert!(z.equals(&[RPolytope::unit_cube(2)]));
        let x1 = compile(&parse("x1", None).unwrap(), 2).unwrap();
        let x2 = compile(&parse("x2", None).unwrap(), 2).unwrap();
        let origin = [RPolytope::from_vertices(2, &[RPoint::from_ints(&[0, 0])])];
        assert!(zero_locus_of_basis(&[x1, x2]).unwrap().equals(&origin));
        let j = compile(&parse("(x1 + x2)", None).unwrap(), 2).unwrap();
        let g = segment_zero_function(
            &RPoint::from_ints(&[0, 0]),
            &RPoint::from_pairs(&[(1, 2), (0, 1)]),
        )
        .unwrap();
        let z = zero_locus_of_basis(&[j.clone(), g]).unwrap();
        assert!(z.equals(&origin));
        let single = zero_locus_of_basis(&[j.clone()]).unwrap();
        assert!(single.equals(j.zeroset().pieces()));
    }
}
