//! Membership of `f` in the principal ideal generated by `g` on `X`.

use crate::calculus::PLFunction;
use crate::closed_set::{ClosedSetDesc, PointOfSet};
use crate::error::{Error, Result};
use crate::geometry::Rational;

use super::along::{leq_on_set, value_pair, zero_inclusion_violation, SetCheck};

pub const DEFAULT_CAP: u64 = 1 << 20;

/// Scan length for recurrence sequences when testing multiplier `k`.
pub fn scan_bound(k: u64) -> u64 {
    k.saturating_mul(100).saturating_add(1000)
}

/// One exact inequality `lhs > rhs` at a point of `X`, observed for `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceRow {
    pub k: u64,
    pub at: PointOfSet,
    /// `f(w)` (or `j(w)`).
    pub lhs: Rational,
    /// `min(1, k·g(w))`.
    pub rhs: Rational,
}

impl DominanceRow {
    pub fn new(k: u64, at: PointOfSet, f: &PLFunction, g: &PLFunction) -> Self {
        let (a, b) = value_pair(f, g, &at.point);
        let rhs = (b * Rational::from_integer(k.into())).min(Rational::from_integer(1.into()));
        DominanceRow { k, at, lhs: a, rhs }
    }

    /// Recompute both sides from scratch.
    pub fn recheck(&self, f: &PLFunction, g: &PLFunction) -> bool {
        let fresh = DominanceRow::new(self.k, self.at.clone(), f, g);
        fresh == *self && self.lhs > self.rhs
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominanceTable {
    pub rows: Vec<DominanceRow>,
}

impl DominanceTable {
    pub fn row_for(&self, k: u64) -> Option<&DominanceRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    pub fn recheck(&self, f: &PLFunction, g: &PLFunction) -> bool {
        self.rows.iter().all(|r| r.recheck(f, g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealMembership {
    /// `f ≤ min(1, k·g)` on `X`, with `k` minimal; `below` shows `k − 1` fails.
    Member { k: u64, below: Option<DominanceRow> },
    NotMember {
        /// Present when `g` vanishes at a point of `X` where `f` does not.
        zero_witness: Option<PointOfSet>,
        dominance: DominanceTable,
    },
    Unknown { cap: u64, reason: String, dominance: DominanceTable },
}

enum Probe {
    Holds,
    Fails(DominanceRow),
    Unknown(String),
}

fn probe(f: &PLFunction, g: &PLFunction, x: &ClosedSetDesc, k: u64) -> Probe {
    let kg = g.truncated_multiple(k);
    match leq_on_set(f, &kg, x, scan_bound(k)) {
        SetCheck::Holds => Probe::Holds,
        SetCheck::Violated(p) => Probe::Fails(DominanceRow::new(k, p, f, g)),
        SetCheck::Unknown(why) => Probe::Unknown(why),
    }
}

/// Decide `f ∈ ⟨g⟩` on `X` by searching the multiplier `k ≤ cap`.
pub fn ideal_membership(
    f: &PLFunction,
    g: &PLFunction,
    x: &ClosedSetDesc,
    cap: u64,
) -> Result<IdealMembership> {
    let n = x.ambient_dim();
    for h in [f, g] {
        if h.arity() != n {
            return Err(Error::Arity {
                expected: n,
                found: h.arity(),
            });
        }
    }
    let mut table = DominanceTable::default();
    let first = match probe(f, g, x, 0) {
        Probe::Holds => return Ok(IdealMembership::Member { k: 0, below: None }),
        Probe::Fails(r) => Some(r),
        Probe::Unknown(_) => None,
    };
    if let SetCheck::Violated(p) = zero_inclusion_violation(f, g, x, scan_bound(cap)) {
        return Ok(IdealMembership::NotMember {
            zero_witness: Some(p),
            dominance: table,
        });
    }
    let mut last_fail = first;
    let mut k = 1u64;
    while k <= cap {
        match probe(f, g, x, k) {
            Probe::Holds => {
                let (mut lo, mut hi) = (last_fail.as_ref().map_or(0, |r| r.k), k);
                let mut below = last_fail;
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    match probe(f, g, x, mid) {
                        Probe::Holds => hi = mid,
                        Probe::Fails(r) => {
                            lo = mid;
                            below = Some(r);
                        }
                        Probe::Unknown(why) => {
                            return Ok(IdealMembership::Unknown {
                                cap,
                                reason: why,
                                dominance: table,
                            })
                        }
                    }
                }
                return Ok(IdealMembership::Member { k: hi, below });
            }
            Probe::Fails(r) => {
                table.rows.push(r.clone());
                last_fail = Some(r);
            }
            Probe::Unknown(why) => {
                return Ok(IdealMembership::Unknown {
                    cap,
                    reason: why,
                    dominance: table,
                })
            }
        }
        k = match k.checked_mul(2) {
            Some(k2) => k2,
            None => break,
        };
    }
    if x.is_polyhedral() {
        // membership is guaranteed for polyhedral sets, just not below the cap
        return Ok(IdealMembership::Unknown {
            cap,
            reason: format!("no multiplier up to {cap}"),
            dominance: table,
        });
    }
    Ok(IdealMembership::NotMember {
        zero_witness: None,
        dominance: table,
    })
}
