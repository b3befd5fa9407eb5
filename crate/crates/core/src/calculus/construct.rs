use num_bigint::BigInt;
use num_traits::Zero;

use super::affine::AffineMap;
use super::function::PLFunction;
use crate::error::{Error, Result};
use crate::geometry::{linalg, Halfspace, RPoint, RPolytope, Rational};

/// `max(0, min(1, L))` for an integer affine `L`.
pub fn clamped_affine(l: &AffineMap) -> PLFunction {
    PLFunction::clamped(l)
}

/// Vanishes exactly where `L = 0`.
fn abs_clamp(l: &AffineMap) -> PLFunction {
    let neg = l.scale(&BigInt::from(-1));
    clamped_affine(l)
        .oplus(&clamped_affine(&neg))
        .expect("same arity")
}

/// Integer affine map proportional to `normal · z + offset`.
fn integer_form(normal: &[Rational], offset: &Rational) -> AffineMap {
    let h = Halfspace::new(normal, offset);
    let coeffs: Vec<BigInt> = h
        .normal_vector()
        .coords()
        .iter()
        .map(|c| c.to_integer())
        .collect();
    AffineMap::new(coeffs, h.offset_rational().to_integer())
}

fn check_in_cube(p: &RPoint) -> Result<()> {
    if p.in_unit_cube() {
        Ok(())
    } else {
        Err(Error::OutsideCube)
    }
}

fn fold_oplus(n: usize, parts: Vec<PLFunction>) -> PLFunction {
    parts
        .into_iter()
        .fold(PLFunction::zero(n), |acc, f| acc.oplus(&f).expect("same arity"))
}

/// A McNaughton function whose zeroset is exactly `{x}`.
pub fn point_zero_function(x: &RPoint) -> Result<PLFunction> {
    check_in_cube(x)?;
    let n = x.dim();
    let parts = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::from_integer(1.into());
            abs_clamp(&integer_form(&e, &-&x.coords()[i]))
        })
        .collect();
    let f = fold_oplus(n, parts);
    verify(&f, &[RPolytope::from_vertices(n, &[x.clone()])])?;
    Ok(f)
}

/// A McNaughton function whose zeroset is exactly the segment `[x, y]`.
pub fn segment_zero_function(x: &RPoint, y: &RPoint) -> Result<PLFunction> {
    check_in_cube(x)?;
    check_in_cube(y)?;
    if x.dim() != y.dim() {
        return Err(Error::Arity {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    if x == y {
        return point_zero_function(x);
    }
    let n = x.dim();
    let d = y - x;
    let mut parts: Vec<PLFunction> = linalg::nullspace(&[d.coords().to_vec()], n)
        .into_iter()
        .map(|w| {
            let off = -linalg_dot(&w, x.coords());
            abs_clamp(&integer_form(&w, &off))
        })
        .collect();
    let neg_d: Vec<Rational> = d.coords().iter().map(|c| -c).collect();
    let dx = linalg_dot(d.coords(), x.coords());
    let dy = linalg_dot(d.coords(), y.coords());
    parts.push(clamped_affine(&integer_form(&neg_d, &dx)));
    parts.push(clamped_affine(&integer_form(d.coords(), &-dy)));
    let f = fold_oplus(n, parts);
    verify(&f, &[RPolytope::from_vertices(n, &[x.clone(), y.clone()])])?;
    Ok(f)
}

fn linalg_dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn verify(f: &PLFunction, target: &[RPolytope]) -> Result<()> {
    if f.zeroset().equals(target) {
        Ok(())
    } else {
        Err(Error::ZerosetCheck(format!(
            "zeroset has {} pieces, expected the target set",
            f.zeroset().pieces().len()
        )))
    }
}
