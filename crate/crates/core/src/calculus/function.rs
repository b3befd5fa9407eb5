use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::affine::AffineMap;
use crate::error::{Error, Result};
use crate::formula::{BinOp, Formula};
use crate::geometry::{uncovered_point, Halfspace, RPoint, RPolytope, RVector, Rational};

/// One linearity cell of a McNaughton function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub cell: RPolytope,
    pub map: AffineMap,
}

/// A McNaughton function on `[0,1]ⁿ`: full-dimensional convex cells with
/// pairwise disjoint interiors covering the cube, one integer affine map per
/// cell. Pieces are kept in canonical (lexicographic vertex) order.
#[derive(Clone, Debug)]
pub struct PLFunction {
    n: usize,
    pieces: Vec<Piece>,
}

#[derive(Clone, Copy)]
enum Pick {
    Min,
    Max,
}

impl PLFunction {
    /// Builds a function from explicit pieces and checks the McNaughton
    /// invariants (cover, continuity, range).
    pub fn from_pieces(n: usize, pieces: Vec<Piece>) -> Result<Self> {
        let f = Self::raw(n, pieces);
        f.validate()?;
        Ok(f)
    }

    fn raw(n: usize, mut pieces: Vec<Piece>) -> Self {
        pieces.sort_by(|a, b| {
            a.cell
                .vertices()
                .cmp(b.cell.vertices())
                .then_with(|| a.map.cmp(&b.map))
        });
        PLFunction { n, pieces }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        Self::raw(
            n,
            vec![Piece {
                cell: RPolytope::unit_cube(n),
                map: AffineMap::constant(n, value as i64),
            }],
        )
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, false)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, true)
    }

    /// The `i`-th coordinate projection (0-based).
    pub fn projection(n: usize, i: usize) -> Self {
        Self::raw(
            n,
            vec![Piece {
                cell: RPolytope::unit_cube(n),
                map: AffineMap::projection(n, i),
            }],
        )
    }

    /// `max(0, min(1, map))`
    pub fn clamped(map: &AffineMap) -> Self {
        let n = map.arity();
        let mut tmp = Vec::new();
        Self::choose(
            &RPolytope::unit_cube(n),
            map.clone(),
            AffineMap::constant(n, 1),
            Pick::Min,
            &mut tmp,
        );
        let mut out = Vec::new();
        for p in tmp {
            Self::choose(&p.cell, p.map, AffineMap::constant(n, 0), Pick::Max, &mut out);
        }
        Self::raw(n, out).merged()
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn validate(&self) -> Result<()> {
        let cube = RPolytope::unit_cube(self.n);
        let mut maps_ok = true;
        for p in &self.pieces {
            if p.map.arity() != self.n || p.cell.ambient_dim() != self.n || !p.cell.is_full_dim() {
                return Err(Error::Invalid("cell or map has wrong dimension".into()));
            }
            for v in p.cell.vertices() {
                let val = p.map.eval(v);
                if val.is_negative() || val > Rational::one() {
                    maps_ok = false;
                }
                if !v.in_unit_cube() {
                    return Err(Error::OutsideCube);
                }
            }
        }
        if !maps_ok {
            return Err(Error::Invalid("values outside [0,1]".into()));
        }
        let cells: Vec<RPolytope> = self.pieces.iter().map(|p| p.cell.clone()).collect();
        if uncovered_point(&cube, &cells).is_some() {
            return Err(Error::Invalid("cells do not cover the cube".into()));
        }
        let total = cells
            .iter()
            .map(RPolytope::volume)
            .fold(Rational::zero(), |a, b| a + b);
        if total != Rational::one() {
            return Err(Error::Invalid("cells overlap".into()));
        }
        for (i, p) in self.pieces.iter().enumerate() {
            for q in &self.pieces[i + 1..] {
                for v in p.cell.vertices() {
                    if q.cell.contains(v) && p.map.eval(v) != q.map.eval(v) {
                        return Err(Error::Invalid(format!("discontinuity at {v}")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_point(&self, p: &RPoint) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: p.dim(),
            });
        }
        if !p.in_unit_cube() {
            return Err(Error::OutsideCube);
        }
        Ok(())
    }

    pub fn piece_at(&self, p: &RPoint) -> Option<&Piece> {
        self.pieces.iter().find(|pc| pc.cell.contains(p))
    }

    pub fn eval(&self, p: &RPoint) -> Result<Rational> {
        self.check_point(p)?;
        Ok(self
            .piece_at(p)
            .expect("cells cover the cube")
            .map
            .eval(p))
    }

    fn same_arity(&self, other: &PLFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Arity {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Splits `cell` along `a = b` and keeps the chosen map on each side.
    fn choose(cell: &RPolytope, a: AffineMap, b: AffineMap, pick: Pick, out: &mut Vec<Piece>) {
        let diff = a.sub(&b);
        if diff.is_zero() {
            out.push(Piece {
                cell: cell.clone(),
                map: a,
            });
            return;
        }
        let h = diff.nonneg_halfspace();
        let (ge, le) = cell.split(&h);
        // on `ge` a ≥ b
        let (on_ge, on_le) = match pick {
            Pick::Min => (b, a),
            Pick::Max => (a, b),
        };
        let ge_full = ge.is_full_dim();
        let le_full = le.is_full_dim();
        match (ge_full, le_full) {
            (true, true) => {
                out.push(Piece {
                    cell: ge,
                    map: on_ge,
                });
                out.push(Piece {
                    cell: le,
                    map: on_le,
                });
            }
            (true, false) => out.push(Piece {
                cell: cell.clone(),
                map: on_ge,
            }),
            (false, true) => out.push(Piece {
                cell: cell.clone(),
                map: on_le,
            }),
            (false, false) => unreachable!("a full cell splits into at least one full side"),
        }
    }

    /// Applies a cellwise min/max of two affine candidates derived from the
    /// maps of `self` and `other` on their common refinement.
    fn combine<F>(&self, other: &PLFunction, candidates: F) -> Result<PLFunction>
    where
        F: Fn(&AffineMap, &AffineMap) -> (AffineMap, AffineMap, Pick),
    {
        self.same_arity(other)?;
        let mut out = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                if !p.cell.boxes_overlap(&q.cell) {
                    continue;
                }
                let cell = p.cell.intersect(&q.cell);
                if !cell.is_full_dim() {
                    continue;
                }
                let (a, b, pick) = candidates(&p.map, &q.map);
                Self::choose(&cell, a, b, pick, &mut out);
            }
        }
        Ok(Self::raw(self.n, out).merged())
    }

    fn unary<F>(&self, candidates: F) -> PLFunction
    where
        F: Fn(&AffineMap) -> (AffineMap, AffineMap, Pick),
    {
        let mut out = Vec::new();
        for p in &self.pieces {
            let (a, b, pick) = candidates(&p.map);
            Self::choose(&p.cell, a, b, pick, &mut out);
        }
        Self::raw(self.n, out).merged()
    }

    /// `1 − f`
    pub fn neg(&self) -> PLFunction {
        Self::raw(
            self.n,
            self.pieces
                .iter()
                .map(|p| Piece {
                    cell: p.cell.clone(),
                    map: p.map.complement(),
                })
                .collect(),
        )
    }

    /// `min(1, f + g)`
    pub fn oplus(&self, other: &PLFunction) -> Result<PLFunction> {
        let n = self.n;
        self.combine(other, |a, b| (a.add(b), AffineMap::constant(n, 1), Pick::Min))
    }

    /// `max(0, f + g − 1)`
    pub fn otimes(&self, other: &PLFunction) -> Result<PLFunction> {
        let n = self.n;
        self.combine(other, |a, b| {
            (a.add(b).shift(-1), AffineMap::constant(n, 0), Pick::Max)
        })
    }

    pub fn min(&self, other: &PLFunction) -> Result<PLFunction> {
        self.combine(other, |a, b| (a.clone(), b.clone(), Pick::Min))
    }

    pub fn max(&self, other: &PLFunction) -> Result<PLFunction> {
        self.combine(other, |a, b| (a.clone(), b.clone(), Pick::Max))
    }

    /// `min(1, 1 − f + g)`
    pub fn implies(&self, other: &PLFunction) -> Result<PLFunction> {
        let n = self.n;
        self.combine(other, |a, b| {
            (a.complement().add(b), AffineMap::constant(n, 1), Pick::Min)
        })
    }

    /// `k·f = min(1, k f)`; `0·f` is the constant 0.
    pub fn truncated_multiple(&self, k: u64) -> PLFunction {
        if k == 0 {
            return Self::zero(self.n);
        }
        let n = self.n;
        let k = BigInt::from(k);
        self.unary(|a| (a.scale(&k), AffineMap::constant(n, 1), Pick::Min))
    }

    /// Merges cells carrying identical maps whose union is convex, greedily
    /// in canonical order, until no merge applies.
    pub fn merged(self) -> PLFunction {
        let n = self.n;
        let mut pieces = self.pieces;
        'outer: loop {
            for i in 0..pieces.len() {
                for j in i + 1..pieces.len() {
                    if pieces[i].map != pieces[j].map {
                        continue;
                    }
                    if let Some(u) = convex_union(&pieces[i].cell, &pieces[j].cell) {
                        let map = pieces[i].map.clone();
                        pieces.remove(j);
                        pieces[i] = Piece { cell: u, map };
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Self::raw(n, pieces)
    }

    /// Semantic equality: agreement at every vertex of the common refinement.
    pub fn equals(&self, other: &PLFunction) -> bool {
        self.n == other.n
            && self.pieces.iter().all(|p| {
                other.pieces.iter().all(|q| {
                    if !p.cell.boxes_overlap(&q.cell) {
                        return true;
                    }
                    let c = p.cell.intersect(&q.cell);
                    c.vertices().iter().all(|v| p.map.eval(v) == q.map.eval(v))
                })
            })
    }

    /// A point of `region` where `self > other`, if any.
    pub fn leq_violation(&self, other: &PLFunction, region: &[RPolytope]) -> Option<RPoint> {
        for r in region {
            for p in &self.pieces {
                if !p.cell.boxes_overlap(r) {
                    continue;
                }
                let pr = p.cell.intersect(r);
                if pr.is_empty() {
                    continue;
                }
                for q in &other.pieces {
                    if !q.cell.boxes_overlap(&pr) {
                        continue;
                    }
                    let c = pr.intersect(&q.cell);
                    if let Some(v) = c.vertices().iter().find(|v| p.map.eval(v) > q.map.eval(v)) {
                        return Some(v.clone());
                    }
                }
            }
        }
        None
    }

    /// `self ≤ other` everywhere on the union of `region`.
    pub fn leq_on(&self, other: &PLFunction, region: &[RPolytope]) -> Result<bool> {
        self.same_arity(other)?;
        Ok(self.leq_violation(other, region).is_none())
    }

    /// One-sided derivative `lim_{t→0⁺} (f(x+tu) − f(x))/t` together with the
    /// exit parameter `t₀ > 0` up to which the incremental ratio is constant.
    pub fn directional_derivative_with_exit(
        &self,
        x: &RPoint,
        u: &RVector,
    ) -> Result<(Rational, Rational)> {
        self.check_point(x)?;
        if u.dim() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                found: u.dim(),
            });
        }
        if u.is_zero() {
            return Err(Error::Degenerate("zero direction".into()));
        }
        let mut best: Option<(Rational, Rational)> = None;
        for p in &self.pieces {
            if let Some(t1) = ray_exit(&p.cell, x, u) {
                let d = p.map.slope(u);
                match &best {
                    Some((_, t)) if *t >= t1 => {}
                    _ => best = Some((d, t1)),
                }
            }
        }
        best.ok_or(Error::DirectionLeavesCube)
    }

    pub fn directional_derivative(&self, x: &RPoint, u: &RVector) -> Result<Rational> {
        Ok(self.directional_derivative_with_exit(x, u)?.0)
    }

    /// Vertices of all cells, deduplicated and sorted.
    pub fn breakpoints(&self) -> Vec<RPoint> {
        let mut v: Vec<RPoint> = self
            .pieces
            .iter()
            .flat_map(|p| p.cell.vertices().iter().cloned())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Largest `t₁ > 0` with `x + [0, t₁]u ⊆ cell`, if such exists.
fn ray_exit(cell: &RPolytope, x: &RPoint, u: &RVector) -> Option<Rational> {
    let mut t1: Option<Rational> = None;
    for h in cell.constraints() {
        let hx = h.eval(x);
        let slope = h.normal_vector().dot(u);
        if hx.is_negative() {
            return None;
        }
        if slope.is_negative() {
            if hx.is_zero() {
                return None;
            }
            let t = -&hx / &slope;
            if t1.as_ref().map_or(true, |cur| t < *cur) {
                t1 = Some(t);
            }
        }
    }
    t1
}

/// The union of two convex cells when it is itself convex.
pub(crate) fn convex_union(a: &RPolytope, b: &RPolytope) -> Option<RPolytope> {
    if a.dim() != b.dim() || !a.boxes_overlap(b) {
        return None;
    }
    if a.contains_polytope(b) {
        return Some(a.clone());
    }
    if b.contains_polytope(a) {
        return Some(b.clone());
    }
    // full-dimensional neighbours must share a facet hyperplane
    if a.is_full_dim() {
        let shared = a
            .constraints()
            .iter()
            .any(|h| b.constraints().contains(&h.flipped()));
        if !shared {
            return None;
        }
    }
    let mut hs: Vec<Halfspace> = a
        .constraints()
        .iter()
        .filter(|h| b.vertices().iter().all(|v| h.contains(v)))
        .cloned()
        .collect();
    hs.extend(
        b.constraints()
            .iter()
            .filter(|h| a.vertices().iter().all(|v| h.contains(v)))
            .cloned(),
    );
    let mut q = RPolytope::unit_cube(a.ambient_dim());
    for h in &hs {
        q = q.cut(h);
    }
    if uncovered_point(&q, &[a.clone(), b.clone()]).is_some() {
        return None;
    }
    Some(q)
}

/// Compiles a term to its McNaughton function on `[0,1]ⁿ`.
pub fn compile(f: &Formula, n: usize) -> Result<PLFunction> {
    if f.max_var() > n {
        return Err(Error::Arity {
            expected: n,
            found: f.max_var(),
        });
    }
    compile_rec(f, n)
}

fn compile_rec(f: &Formula, n: usize) -> Result<PLFunction> {
    Ok(match f {
        Formula::Var(i) => PLFunction::projection(n, i - 1),
        Formula::Zero => PLFunction::zero(n),
        Formula::One => PLFunction::one(n),
        Formula::Neg(g) => compile_rec(g, n)?.neg(),
        other => {
            let (op, l, r) = other.as_binary().unwrap();
            let a = compile_rec(l, n)?;
            let b = compile_rec(r, n)?;
            match op {
                BinOp::OPlus => a.oplus(&b)?,
                BinOp::OTimes => a.otimes(&b)?,
                BinOp::Min => a.min(&b)?,
                BinOp::Max => a.max(&b)?,
                BinOp::Implies => a.implies(&b)?,
            }
        }
    })
}

impl PartialEq for PLFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
