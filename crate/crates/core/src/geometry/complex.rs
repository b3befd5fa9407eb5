use num_traits::Zero;

use super::cover::union_equals;
use super::linalg::affine_dim;
use super::point::{RPoint, Rational};
use super::polytope::{simplex_volume, Halfspace, RPolytope};
use crate::error::{Error, Result};

/// A simplex given by affinely independent vertices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSimplex {
    vertices: Vec<RPoint>,
}

impl RSimplex {
    pub fn new(mut vertices: Vec<RPoint>) -> Result<Self> {
        vertices.sort();
        vertices.dedup();
        let refs: Vec<&[Rational]> = vertices.iter().map(|p| p.coords()).collect();
        if vertices.is_empty() || affine_dim(&refs) != vertices.len() as isize - 1 {
            return Err(Error::Degenerate(
                "simplex vertices are not affinely independent".into(),
            ));
        }
        Ok(RSimplex { vertices })
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn to_polytope(&self) -> RPolytope {
        RPolytope::from_vertices(self.vertices[0].dim(), &self.vertices)
    }

    pub fn volume(&self) -> Rational {
        if self.dim() != self.vertices[0].dim() {
            return Rational::zero();
        }
        simplex_volume(&self.vertices)
    }
}

/// A finite simplicial complex of top-dimensional cells in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    n: usize,
    cells: Vec<RSimplex>,
}

impl Complex {
    pub fn new(n: usize, mut cells: Vec<RSimplex>) -> Self {
        cells.sort();
        cells.dedup();
        Complex { n, cells }
    }

    /// Pulling triangulation of the unit cube.
    pub fn unit_cube(n: usize) -> Self {
        Self::from_polytopes(n, &[RPolytope::unit_cube(n)])
    }

    /// Triangulates each polytope by pulling from its lexicographically
    /// smallest vertex. With a global vertex order this is consistent on
    /// shared faces of a face-to-face subdivision.
    pub fn from_polytopes(n: usize, polys: &[RPolytope]) -> Self {
        let cells = polys
            .iter()
            .filter(|p| !p.is_empty())
            .flat_map(|p| p.pulling_triangulation())
            .map(|vs| RSimplex::new(vs).expect("pulling triangulation yields simplices"))
            .collect();
        Complex::new(n, cells)
    }

    /// `[0,1]` subdivided at the given interior breakpoints.
    pub fn interval(breaks: &[Rational]) -> Self {
        let mut pts: Vec<Rational> = vec![Rational::zero(), num_traits::One::one()];
        pts.extend(breaks.iter().cloned());
        pts.sort();
        pts.dedup();
        let cells = pts
            .windows(2)
            .map(|w| {
                RSimplex::new(vec![RPoint(vec![w[0].clone()]), RPoint(vec![w[1].clone()])])
                    .unwrap()
            })
            .collect();
        Complex::new(1, cells)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[RSimplex] {
        &self.cells
    }

    pub fn polytopes(&self) -> Vec<RPolytope> {
        self.cells.iter().map(RSimplex::to_polytope).collect()
    }

    pub fn volume(&self) -> Rational {
        self.cells
            .iter()
            .map(RSimplex::volume)
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.cells.iter().any(|c| c.to_polytope().contains(p))
    }

    /// Common refinement: every output cell lies in one cell of each input.
    pub fn common_refinement(&self, other: &Complex) -> Result<Complex> {
        if self.n != other.n {
            return Err(Error::Arity {
                expected: self.n,
                found: other.n,
            });
        }
        let a = self.polytopes();
        let b = other.polytopes();
        if !union_equals(&a, &b) {
            return Err(Error::RegionMismatch);
        }
        let mut pieces = Vec::new();
        for p in &a {
            for q in &b {
                if !p.boxes_overlap(q) {
                    continue;
                }
                let r = p.intersect(q);
                if r.dim() == self.n as isize {
                    pieces.push(r);
                }
            }
        }
        Ok(Complex::from_polytopes(self.n, &pieces))
    }

    /// Splits cells crossing `normal · x + offset = 0`. Cells lying in the
    /// hyperplane's closed halfspaces are kept whole.
    pub fn split_by_hyperplane(&self, h: &Halfspace) -> Complex {
        let mut pieces = Vec::new();
        for p in self.polytopes() {
            let (pos, neg) = p.split(h);
            if pos.is_full_dim() && neg.is_full_dim() {
                pieces.push(pos);
                pieces.push(neg);
            } else {
                pieces.push(p);
            }
        }
        Complex::from_polytopes(self.n, &pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, rat_int};

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> RSimplex {
        RSimplex::new(vec![
            RPoint::from_ints(&[a.0, a.1]),
            RPoint::from_ints(&[b.0, b.1]),
            RPoint::from_ints(&[c.0, c.1]),
        ])
        .unwrap()
    }

    #[test]
    fn refinement_with_itself_is_identity() {
        let c = Complex::unit_cube(2);
        assert_eq!(c.common_refinement(&c).unwrap(), c);
    }

    #[test]
    fn one_dimensional_breakpoint_merge() {
        let a = Complex::interval(&[rat(1, 2)]);
        let b = Complex::interval(&[rat(1, 3)]);
        let r = a.common_refinement(&b).unwrap();
        assert_eq!(r, Complex::interval(&[rat(1, 3), rat(1, 2)]));
    }

    #[test]
    fn crossing_diagonals_give_four_triangles() {
        let a = Complex::new(2, vec![tri((0, 0), (1, 0), (1, 1)), tri((0, 0), (0, 1), (1, 1))]);
        let b = Complex::new(2, vec![tri((0, 0), (1, 0), (0, 1)), tri((1, 0), (1, 1), (0, 1))]);
        let r = a.common_refinement(&b).unwrap();
        assert_eq!(r.cells().len(), 4);
        let center = RPoint::from_pairs(&[(1, 2), (1, 2)]);
        assert!(r.cells().iter().all(|c| c.vertices().contains(&center)));
        assert_eq!(r.volume(), rat_int(1));
    }

    #[test]
    fn region_mismatch_is_reported() {
        let a = Complex::new(2, vec![tri((0, 0), (1, 0), (1, 1))]);
        let b = Complex::unit_cube(2);
        assert_eq!(a.common_refinement(&b), Err(Error::RegionMismatch));
    }

    #[test]
    fn split_examples() {
        let unit = Complex::interval(&[]);
        let far = Halfspace::from_ints(&[1], -3);
        assert_eq!(unit.split_by_hyperplane(&far), unit);
        let mid = Halfspace::new(&[rat_int(1)], &rat(-1, 2));
        assert_eq!(unit.split_by_hyperplane(&mid).cells().len(), 2);
    }
}
