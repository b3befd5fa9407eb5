use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::{self, affine_dim, integerize};
use super::point::{RPoint, RVector, Rational};

/// Closed halfspace `normal · x + offset ≥ 0` with coprime integer data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Halfspace {
    pub fn new(normal: &[Rational], offset: &Rational) -> Self {
        let mut all: Vec<Rational> = normal.to_vec();
        all.push(offset.clone());
        let mut ints = integerize(&all);
        let offset = ints.pop().unwrap();
        Halfspace {
            normal: ints,
            offset,
        }
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        let n: Vec<Rational> = normal.iter().map(|&c| super::rat_int(c)).collect();
        Self::new(&n, &super::rat_int(offset))
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn eval(&self, p: &RPoint) -> Rational {
        let mut acc = Rational::from_integer(self.offset.clone());
        for (a, x) in self.normal.iter().zip(p.coords()) {
            if !a.is_zero() {
                acc += x * a;
            }
        }
        acc
    }

    pub fn sign_at(&self, p: &RPoint) -> Ordering {
        self.eval(p).cmp(&Rational::zero())
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        self.sign_at(p) != Ordering::Less
    }

    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.iter().map(|c| -c).collect(),
            offset: -&self.offset,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    pub fn normal_vector(&self) -> RVector {
        RVector(
            self.normal
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn offset_rational(&self) -> Rational {
        Rational::from_integer(self.offset.clone())
    }
}

type Mask = u128;
const MAX_CONSTRAINTS: usize = 128;

/// A convex polytope with both a vertex list and an irredundant halfspace
/// description. Vertices are kept in lexicographic order.
#[derive(Clone, Debug)]
pub struct RPolytope {
    n: usize,
    dim: isize,
    vertices: Vec<RPoint>,
    constraints: Vec<Halfspace>,
    incidence: Vec<Mask>,
}

impl PartialEq for RPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices == other.vertices
    }
}

impl Eq for RPolytope {}

impl RPolytope {
    pub fn empty(n: usize) -> Self {
        RPolytope {
            n,
            dim: -1,
            vertices: Vec::new(),
            constraints: Vec::new(),
            incidence: Vec::new(),
        }
    }

    pub fn unit_cube(n: usize) -> Self {
        let mut constraints = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            constraints.push(Halfspace::from_ints(&e, 0));
            e[i] = -1;
            constraints.push(Halfspace::from_ints(&e, 1));
        }
        let vertices = (0..1u64 << n)
            .map(|bits| {
                RPoint::from_ints(&(0..n).map(|i| ((bits >> i) & 1) as i64).collect::<Vec<_>>())
            })
            .collect();
        Self::assemble(n, vertices, constraints)
    }

    /// Convex hull of a finite point set.
    pub fn from_vertices(n: usize, points: &[RPoint]) -> Self {
        let pts: Vec<RPoint> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if pts.is_empty() {
            return Self::empty(n);
        }
        let refs: Vec<&[Rational]> = pts.iter().map(|p| p.coords()).collect();
        let d = affine_dim(&refs);
        let p0 = &pts[0];
        let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| (p - p0).0).collect();
        let mut constraints = equalities_through(p0, &diffs, n);
        if d >= 1 {
            // basis of the direction space
            let mut m = diffs.clone();
            let piv = linalg::rref(&mut m);
            let basis: Vec<Vec<Rational>> = m.into_iter().take(piv.len()).collect();
            let d = d as usize;
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for subset in combinations(pts.len(), d) {
                let base = &pts[subset[0]];
                // coefficients c with sum_j c_j basis_j orthogonal to the subset's span
                let rows: Vec<Vec<Rational>> = subset[1..]
                    .iter()
                    .map(|&k| {
                        let diff = &pts[k] - base;
                        basis.iter().map(|b| super::point::dot(b, &diff.0)).collect()
                    })
                    .collect();
                let ns = linalg::nullspace(&rows, d);
                if ns.len() != 1 {
                    continue;
                }
                let normal: Vec<Rational> = (0..n)
                    .map(|i| {
                        basis
                            .iter()
                            .zip(&ns[0])
                            .fold(Rational::zero(), |acc, (b, c)| acc + &b[i] * c)
                    })
                    .collect();
                let offset = -super::point::dot(&normal, base.coords());
                let mut h = Halfspace::new(&normal, &offset);
                let signs: Vec<Ordering> = pts.iter().map(|p| h.sign_at(p)).collect();
                let pos = signs.iter().any(|s| *s == Ordering::Greater);
                let neg = signs.iter().any(|s| *s == Ordering::Less);
                if pos && neg {
                    continue;
                }
                if neg {
                    h = h.flipped();
                }
                let tight: Vec<usize> = (0..pts.len())
                    .filter(|&i| signs[i] == Ordering::Equal)
                    .collect();
                if seen.insert(tight) {
                    constraints.push(h);
                }
            }
        }
        // keep only extreme points
        let eq_count = 2 * (n - d.max(0) as usize);
        let verts: Vec<RPoint> = pts
            .iter()
            .filter(|p| {
                let mut rows: Vec<Vec<Rational>> = constraints[..eq_count]
                    .iter()
                    .step_by(2)
                    .map(|h| h.normal_vector().0)
                    .collect();
                rows.extend(
                    constraints[eq_count..]
                        .iter()
                        .filter(|h| h.eval(p).is_zero())
                        .map(|h| h.normal_vector().0),
                );
                linalg::rank(&rows) == n
            })
            .cloned()
            .collect();
        Self::assemble(n, verts, constraints)
    }

    /// Polytope `{x : h(x) ≥ 0 for all h}` intersected with the unit cube.
    pub fn from_constraints_in_cube(n: usize, hs: &[Halfspace]) -> Self {
        let mut p = Self::unit_cube(n);
        for h in hs {
            p = p.cut(h);
            if p.is_empty() {
                break;
            }
        }
        p
    }

    fn assemble(n: usize, vertices: Vec<RPoint>, constraints: Vec<Halfspace>) -> Self {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let refs: Vec<&[Rational]> = vertices.iter().map(|p| p.coords()).collect();
        let dim = affine_dim(&refs);
        assert!(
            constraints.len() <= MAX_CONSTRAINTS,
            "polytope has too many constraints"
        );
        let incidence = vertices
            .iter()
            .map(|v| {
                constraints.iter().enumerate().fold(0 as Mask, |m, (i, h)| {
                    if h.eval(v).is_zero() {
                        m | (1 << i)
                    } else {
                        m
                    }
                })
            })
            .collect();
        RPolytope {
            n,
            dim,
            vertices,
            constraints,
            incidence,
        }
    }

    /// Rebuilds an irredundant description from vertices known to be exactly
    /// the vertex set of `{x : hs}`.
    fn rebuild(n: usize, vertices: Vec<RPoint>, hs: Vec<Halfspace>) -> Self {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Self::empty(n);
        }
        let refs: Vec<&[Rational]> = vertices.iter().map(|p| p.coords()).collect();
        let d = affine_dim(&refs);
        let p0 = vertices[0].clone();
        let diffs: Vec<Vec<Rational>> = vertices[1..].iter().map(|p| (p - &p0).0).collect();
        let mut constraints = equalities_through(&p0, &diffs, n);
        if d >= 1 {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for h in hs {
                let tight: Vec<usize> = (0..vertices.len())
                    .filter(|&i| h.eval(&vertices[i]).is_zero())
                    .collect();
                if tight.len() == vertices.len() || tight.len() < d as usize {
                    continue;
                }
                let trefs: Vec<&[Rational]> =
                    tight.iter().map(|&i| vertices[i].coords()).collect();
                if affine_dim(&trefs) == d - 1 && seen.insert(tight) {
                    constraints.push(h);
                }
            }
        }
        Self::assemble(n, vertices, constraints)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Affine dimension; `-1` when empty.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dim(&self) -> bool {
        self.dim == self.n as isize
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn constraints(&self) -> &[Halfspace] {
        &self.constraints
    }

    pub fn contains(&self, p: &RPoint) -> bool {
        !self.is_empty() && self.constraints.iter().all(|h| h.contains(p))
    }

    pub fn contains_polytope(&self, other: &RPolytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Mean of the vertices; lies in the relative interior.
    pub fn barycenter(&self) -> RPoint {
        let k = Rational::from_integer(BigInt::from(self.vertices.len()));
        RPoint(
            (0..self.n)
                .map(|i| {
                    self.vertices
                        .iter()
                        .fold(Rational::zero(), |acc, v| acc + &v[i])
                        / &k
                })
                .collect(),
        )
    }

    pub fn bounding_box(&self) -> Vec<(Rational, Rational)> {
        (0..self.n)
            .map(|i| {
                let mut lo = self.vertices[0][i].clone();
                let mut hi = lo.clone();
                for v in &self.vertices[1..] {
                    if v[i] < lo {
                        lo = v[i].clone();
                    }
                    if v[i] > hi {
                        hi = v[i].clone();
                    }
                }
                (lo, hi)
            })
            .collect()
    }

    pub fn boxes_overlap(&self, other: &RPolytope) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let a = self.bounding_box();
        let b = other.bounding_box();
        a.iter()
            .zip(&b)
            .all(|((alo, ahi), (blo, bhi))| alo <= bhi && blo <= ahi)
    }

    /// Pairs of vertex indices spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let common = self.incidence[i] & self.incidence[j];
        (0..self.vertices.len())
            .all(|k| k == i || k == j || self.incidence[k] & common != common)
    }

    /// `self ∩ {h ≥ 0}`.
    pub fn cut(&self, h: &Halfspace) -> RPolytope {
        if self.is_empty() {
            return self.clone();
        }
        let vals: Vec<Rational> = self.vertices.iter().map(|v| h.eval(v)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            return self.clone();
        }
        let mut keep: Vec<RPoint> = self
            .vertices
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(p, _)| p.clone())
            .collect();
        for i in 0..self.vertices.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..self.vertices.len() {
                if !vals[j].is_negative() || !self.adjacent(i, j) {
                    continue;
                }
                let t = &vals[i] / (&vals[i] - &vals[j]);
                let dir = &self.vertices[j] - &self.vertices[i];
                keep.push(self.vertices[i].offset(&dir, &t));
            }
        }
        let mut hs = self.constraints.clone();
        hs.push(h.clone());
        Self::rebuild(self.n, keep, hs)
    }

    /// Splits along `h = 0` into the parts where `h ≥ 0` and `h ≤ 0`.
    pub fn split(&self, h: &Halfspace) -> (RPolytope, RPolytope) {
        (self.cut(h), self.cut(&h.flipped()))
    }

    pub fn intersect(&self, other: &RPolytope) -> RPolytope {
        let mut p = self.clone();
        for h in &other.constraints {
            p = p.cut(h);
            if p.is_empty() {
                break;
            }
        }
        p
    }

    /// Vertex-index sets of the facets of the face spanned by `face`
    /// (a set of vertex indices of dimension `d`).
    fn facets_of(&self, face: &[usize], d: isize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        if d <= 0 {
            return Vec::new();
        }
        for (ci, _) in self.constraints.iter().enumerate() {
            let bit: Mask = 1 << ci;
            let sub: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&v| self.incidence[v] & bit != 0)
                .collect();
            if sub.len() == face.len() || sub.len() < d as usize {
                continue;
            }
            let refs: Vec<&[Rational]> = sub.iter().map(|&i| self.vertices[i].coords()).collect();
            if affine_dim(&refs) == d - 1 {
                out.insert(sub);
            }
        }
        out.into_iter().collect()
    }

    fn pull(&self, face: Vec<usize>, d: isize, out: &mut Vec<Vec<usize>>) {
        if face.len() as isize == d + 1 {
            out.push(face);
            return;
        }
        // vertices are sorted, so the smallest index is the lexicographic minimum
        let apex = *face.iter().min().unwrap();
        for facet in self.facets_of(&face, d) {
            if facet.contains(&apex) {
                continue;
            }
            let mut sub = Vec::new();
            self.pull(facet, d - 1, &mut sub);
            for mut s in sub {
                s.push(apex);
                s.sort();
                out.push(s);
            }
        }
    }

    /// Pulling triangulation from the lexicographically smallest vertex,
    /// applied recursively to faces. Returns vertex lists of simplices of
    /// dimension `self.dim()`.
    pub fn pulling_triangulation(&self) -> Vec<Vec<RPoint>> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        self.pull((0..self.vertices.len()).collect(), self.dim, &mut out);
        out.sort();
        out.into_iter()
            .map(|s| s.into_iter().map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    /// n-dimensional volume (zero unless full-dimensional).
    pub fn volume(&self) -> Rational {
        if !self.is_full_dim() {
            return Rational::zero();
        }
        self.pulling_triangulation()
            .iter()
            .map(|s| simplex_volume(s))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Volume measured inside the affine hull, up to a positive factor that
    /// depends only on the hull. Used to compare pieces sharing a hull.
    pub fn relative_volume(&self) -> Rational {
        if self.dim <= 0 {
            return Rational::zero();
        }
        let d = self.dim as usize;
        // pick coordinates on which the hull projects bijectively
        let p0 = &self.vertices[0];
        let diffs: Vec<Vec<Rational>> = self.vertices[1..].iter().map(|p| (p - p0).0).collect();
        let cols = coordinate_chart(&diffs, self.n, d);
        self.pulling_triangulation()
            .iter()
            .map(|s| {
                let rows: Vec<Vec<Rational>> = s[1..]
                    .iter()
                    .map(|p| cols.iter().map(|&c| &p[c] - &s[0][c]).collect())
                    .collect();
                linalg::det(&rows).abs()
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Coordinates on which a `d`-dimensional direction space projects bijectively.
fn coordinate_chart(diffs: &[Vec<Rational>], n: usize, d: usize) -> Vec<usize> {
    for cols in combinations(n, d) {
        let proj: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        if linalg::rank(&proj) == d {
            return cols;
        }
    }
    (0..d).collect()
}

pub(crate) fn simplex_volume(s: &[RPoint]) -> Rational {
    let n = s.len() - 1;
    let rows: Vec<Vec<Rational>> = s[1..].iter().map(|p| (p - &s[0]).0).collect();
    let fact: BigInt = (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    linalg::det(&rows).abs() / Rational::from_integer(fact)
}

/// Equality constraints (as opposite halfspace pairs) of the affine hull of
/// `p0 + span(diffs)`.
fn equalities_through(p0: &RPoint, diffs: &[Vec<Rational>], n: usize) -> Vec<Halfspace> {
    let ns = if diffs.is_empty() {
        (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect()
    } else {
        linalg::nullspace(diffs, n)
    };
    let mut out = Vec::with_capacity(2 * ns.len());
    for a in ns {
        let off = -super::point::dot(&a, p0.coords());
        let h = Halfspace::new(&a, &off);
        out.push(h.flipped());
        out.push(h);
    }
    out
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Result of clipping a segment by a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    Empty,
    Point(RPoint),
    Segment(RPoint, RPoint),
}

/// Exact `conv(a, b) ∩ p`, parametrized along `a + t(b − a)`.
pub fn segment_polytope_intersection(a: &RPoint, b: &RPoint, p: &RPolytope) -> SegmentHit {
    match segment_parameter_range(a, b, p) {
        None => SegmentHit::Empty,
        Some((lo, hi)) => {
            let dir = b - a;
            if lo == hi {
                SegmentHit::Point(a.offset(&dir, &lo))
            } else {
                SegmentHit::Segment(a.offset(&dir, &lo), a.offset(&dir, &hi))
            }
        }
    }
}

/// The closed parameter interval `{t ∈ [0,1] : a + t(b−a) ∈ p}`.
pub fn segment_parameter_range(
    a: &RPoint,
    b: &RPoint,
    p: &RPolytope,
) -> Option<(Rational, Rational)> {
    if p.is_empty() {
        return None;
    }
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    for h in p.constraints() {
        let ha = h.eval(a);
        let slope = h.eval(b) - &ha;
        // ha + t*slope >= 0
        match slope.cmp(&Rational::zero()) {
            Ordering::Equal => {
                if ha.is_negative() {
                    return None;
                }
            }
            Ordering::Greater => {
                let t = -&ha / &slope;
                if t > lo {
                    lo = t;
                }
            }
            Ordering::Less => {
                let t = -&ha / &slope;
                if t < hi {
                    hi = t;
                }
            }
        }
        if lo > hi {
            return None;
        }
    }
    Some((lo, hi))
}
