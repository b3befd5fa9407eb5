use crate::geometry::{union_contains, union_equals, RPoint, RPolytope};

use super::function::{convex_union, PLFunction};

/// `Z f = {x : f(x) = 0}` as a finite union of closed convex polytopes.
#[derive(Clone, Debug)]
pub struct ZeroLocus {
    n: usize,
    pieces: Vec<RPolytope>,
}

impl ZeroLocus {
    pub fn new(n: usize, pieces: Vec<RPolytope>) -> Self {
        let mut pieces: Vec<RPolytope> = pieces.into_iter().filter(|p| !p.is_empty()).collect();
        // drop pieces contained in another one
        let mut i = 0;
        while i < pieces.len() {
            let redundant = (0..pieces.len())
                .any(|j| j != i && pieces[j].contains_polytope(&pieces[i]) && (j < i || !pieces[i].contains_polytope(&pieces[j])));
            if redundant {
                pieces.remove(i);
            } else {
                i += 1;
            }
        }
        'outer: loop {
            for i in 0..pieces.len() {
                for j in i + 1..pieces.len() {
                    if let Some(u) = convex_union(&pieces[i], &pieces[j]) {
                        pieces.remove(j);
                        pieces[i] = u;
                        continue 'outer;
                    }
                }
            }
            break;
        }
        pieces.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        ZeroLocus { n, pieces }
    }

    pub fn of(f: &PLFunction) -> Self {
        let n = f.arity();
        let pieces = f
            .pieces()
            .iter()
            .map(|p| p.cell.cut(&p.map.scale(&(-1).into()).nonneg_halfspace()))
            .collect();
        Self::new(n, pieces)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[RPolytope] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.pieces.iter().any(|q| q.contains(p))
    }

    pub fn contains_set(&self, other: &[RPolytope]) -> bool {
        union_contains(&self.pieces, other)
    }

    pub fn equals(&self, other: &[RPolytope]) -> bool {
        union_equals(&self.pieces, other)
    }

    /// Largest dimension among the pieces, `-1` when empty.
    pub fn dim(&self) -> isize {
        self.pieces.iter().map(RPolytope::dim).max().unwrap_or(-1)
    }
}

impl PLFunction {
    pub fn zeroset(&self) -> ZeroLocus {
        ZeroLocus::of(self)
    }
}
