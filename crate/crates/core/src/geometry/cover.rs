//! Exact containment tests between finite unions of polytopes.

use num_traits::Signed;

use super::point::RPoint;
use super::polytope::{Halfspace, RPolytope};

/// A relatively open remainder: points of `closed` where every `strict`
/// halfspace is satisfied with strict inequality.
struct Piece {
    closed: RPolytope,
    strict: Vec<Halfspace>,
}

impl Piece {
    /// The barycenter lies in the relative interior of `closed`, so it
    /// satisfies all strict constraints iff the piece is nonempty.
    fn witness(&self) -> Option<RPoint> {
        if self.closed.is_empty() {
            return None;
        }
        let b = self.closed.barycenter();
        self.strict
            .iter()
            .all(|h| h.eval(&b).is_positive())
            .then_some(b)
    }
}

/// A point of `p` not covered by the union of `cover`, or `None` when
/// `p ⊆ ⋃ cover`.
pub fn uncovered_point(p: &RPolytope, cover: &[RPolytope]) -> Option<RPoint> {
    if p.is_empty() {
        return None;
    }
    let mut pieces = vec![Piece {
        closed: p.clone(),
        strict: Vec::new(),
    }];
    for q in cover {
        if q.is_empty() {
            continue;
        }
        let mut next = Vec::new();
        for piece in pieces {
            if !piece.closed.boxes_overlap(q) {
                next.push(piece);
                continue;
            }
            // piece \ q = ⋃_k piece ∩ {q_k < 0} ∩ {q_l ≥ 0, l < k}
            let mut base = piece.closed.clone();
            for h in q.constraints() {
                let neg = h.flipped();
                let closed = base.cut(&neg);
                if !closed.is_empty() {
                    let mut strict = piece.strict.clone();
                    strict.push(neg);
                    let cand = Piece { closed, strict };
                    if cand.witness().is_some() {
                        next.push(cand);
                    }
                }
                base = base.cut(h);
                if base.is_empty() {
                    break;
                }
            }
        }
        pieces = next;
        if pieces.is_empty() {
            return None;
        }
    }
    pieces.iter().find_map(Piece::witness)
}

/// `⋃ inner ⊆ ⋃ outer`.
pub fn union_contains(outer: &[RPolytope], inner: &[RPolytope]) -> bool {
    inner.iter().all(|p| uncovered_point(p, outer).is_none())
}

pub fn union_equals(a: &[RPolytope], b: &[RPolytope]) -> bool {
    union_contains(a, b) && union_contains(b, a)
}
