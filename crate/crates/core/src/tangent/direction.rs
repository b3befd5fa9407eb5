use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::surd::QuadSurd;
use crate::closed_set::{ProbeSequence, RecurrenceSchema, Schema};
use crate::geometry::{linalg, RVector, Rational};
use crate::poly::{exact_sqrt, Poly};

/// Evidence that a limit direction has no rational representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalCertificate {
    /// Minimal polynomial of the dominant characteristic root.
    pub polynomial: Poly,
    /// Candidates of the rational-root test, none of which is a root.
    pub tested: Vec<Rational>,
    /// Exact direction, scaled so its first nonzero entry is `±1`.
    pub direction: Vec<QuadSurd>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionVerdict {
    /// Primitive integer representative, orientation preserved.
    Rational(RVector),
    Irrational(IrrationalCertificate),
    Undetermined(String),
}

impl DirectionVerdict {
    pub fn rational(&self) -> Option<&RVector> {
        match self {
            DirectionVerdict::Rational(u) => Some(u),
            _ => None,
        }
    }
}

/// `lim (w_i − x)/‖w_i − x‖`, up to a positive factor.
pub fn limit_direction(s: &ProbeSequence) -> DirectionVerdict {
    match &s.schema {
        Schema::Rational(fs) => {
            // d_j ~ (lc p_j / lc q_j) i^{-(deg q_j - deg p_j)}
            let mut best: Option<usize> = None;
            let mut weights = vec![Rational::zero(); fs.len()];
            for (j, f) in fs.iter().enumerate() {
                let Some(dp) = f.num.degree() else { continue };
                let e = f.den.degree().unwrap() - dp;
                weights[j] = Rational::new(f.num.leading(), f.den.leading());
                best = Some(best.map_or(e, |b: usize| b.min(e)));
            }
            let Some(best) = best else {
                return DirectionVerdict::Undetermined("sequence equals its limit".into());
            };
            let u: Vec<Rational> = fs
                .iter()
                .zip(weights)
                .map(|(f, w)| match f.num.degree() {
                    Some(dp) if f.den.degree().unwrap() - dp == best => w,
                    _ => Rational::zero(),
                })
                .collect();
            DirectionVerdict::Rational(RVector(u).primitive())
        }
        Schema::Recurrence(rs) => recurrence_direction(rs),
    }
}

/// Direction as exact surds (rational directions use `b = 0`), for cone
/// comparisons.
pub fn surd_direction(s: &ProbeSequence) -> Option<Vec<QuadSurd>> {
    match limit_direction(s) {
        DirectionVerdict::Rational(u) => Some(
            u.coords()
                .iter()
                .map(|c| QuadSurd::rational(c.clone(), &BigInt::from(2)))
                .collect(),
        ),
        DirectionVerdict::Irrational(c) => Some(c.direction),
        DirectionVerdict::Undetermined(_) => None,
    }
}

/// `d = f²·d'` with `d'` squarefree; returns `(f, d')`.
fn squarefree(d: &BigInt) -> (BigInt, BigInt) {
    let mut f = BigInt::one();
    let mut rest = d.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            f *= &p;
        }
        p += 1;
    }
    (f, rest)
}

fn recurrence_direction(rs: &RecurrenceSchema) -> DirectionVerdict {
    let chi = rs.characteristic();
    let r = rs.order();
    let (roots, tested) = chi.rational_roots();
    if roots.len() == r {
        return rational_root_direction(rs, &roots);
    }
    if r != 2 {
        return DirectionVerdict::Undetermined(format!(
            "characteristic polynomial {chi} of order {r} has irrational or repeated roots"
        ));
    }
    let c1 = Rational::from_integer(rs.coeffs[0].clone());
    let disc = chi.discriminant2().unwrap();
    if disc.is_negative() || exact_sqrt(&disc).is_some() {
        return DirectionVerdict::Undetermined(format!(
            "characteristic polynomial {chi} has no simple dominant real root"
        ));
    }
    if !c1.is_positive() {
        return DirectionVerdict::Undetermined(format!(
            "dominant root of {chi} is not positive"
        ));
    }
    // ρ = (c1 + f√d)/2, σ = c1 − ρ
    let (f, d) = squarefree(&disc);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rho = QuadSurd::new(&c1 * &half, Rational::from_integer(f) * &half, d.clone());
    let sigma = &QuadSurd::rational(c1.clone(), &d) - &rho;
    let gap = &rho - &sigma;
    let amp: Vec<QuadSurd> = rs
        .initial
        .iter()
        .map(|v| {
            let s0 = QuadSurd::rational(Rational::from_integer(v[0].clone()), &d);
            let s1 = QuadSurd::rational(Rational::from_integer(v[1].clone()), &d);
            (&s1 - &(&sigma * &s0)).div(&gap)
        })
        .collect();
    if amp.iter().any(QuadSurd::is_zero) {
        return DirectionVerdict::Undetermined("a base sequence vanishes identically".into());
    }
    let one = QuadSurd::rational(Rational::one(), &d);
    let growing = (&rho - &one).signum() == Ordering::Greater;
    let degs: Vec<i64> = rs.coords.iter().map(|m| m.degree()).collect();
    if degs
        .iter()
        .any(|&e| e == 0 || (e > 0) == growing)
    {
        return DirectionVerdict::Undetermined("a coordinate does not converge".into());
    }
    let lead = if growing { *degs.iter().max().unwrap() } else { *degs.iter().min().unwrap() };
    let coeffs: Vec<QuadSurd> = rs
        .coords
        .iter()
        .zip(&degs)
        .map(|(m, &e)| {
            if e != lead || m.scale.is_zero() {
                return QuadSurd::rational(Rational::zero(), &d);
            }
            let mut c = QuadSurd::rational(m.scale.clone(), &d);
            for &(k, p) in &m.num {
                c = &c * &amp[k].pow(p);
            }
            for &(k, p) in &m.den {
                c = c.div(&amp[k].pow(p));
            }
            c
        })
        .collect();
    let Some(pivot) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
        return DirectionVerdict::Undetermined("leading coefficients vanish".into());
    };
    let scale = if pivot.signum() == Ordering::Less { -&pivot } else { pivot };
    let dir: Vec<QuadSurd> = coeffs.iter().map(|c| c.div(&scale)).collect();
    if dir.iter().all(QuadSurd::is_rational) {
        let u: Vec<Rational> = dir.into_iter().map(|c| c.a).collect();
        return DirectionVerdict::Rational(RVector(u).primitive());
    }
    DirectionVerdict::Irrational(IrrationalCertificate {
        polynomial: chi,
        tested,
        direction: dir,
    })
}

fn rational_root_direction(rs: &RecurrenceSchema, roots: &[Rational]) -> DirectionVerdict {
    let r = roots.len();
    // Vandermonde system Σ_ρ A_ρ ρ^t = s(t)
    let rows: Vec<Vec<Rational>> = (0..r)
        .map(|t| roots.iter().map(|rho| pow_rat(rho, t as u32)).collect())
        .collect();
    let mut dominant: Vec<(Rational, Rational)> = Vec::new();
    for init in &rs.initial {
        let b: Vec<Rational> = init.iter().map(|v| Rational::from_integer(v.clone())).collect();
        let Some(a) = linalg::solve(&rows, &b) else {
            return DirectionVerdict::Undetermined("singular recurrence system".into());
        };
        let mut best: Option<(Rational, Rational)> = None;
        for (rho, amp) in roots.iter().zip(a) {
            if amp.is_zero() {
                continue;
            }
            match &best {
                Some((b, _)) if b.abs() > rho.abs() => {}
                Some((b, _)) if b.abs() == rho.abs() => {
                    return DirectionVerdict::Undetermined("two dominant roots of equal modulus".into())
                }
                _ => best = Some((rho.clone(), amp)),
            }
        }
        dominant.push(best.unwrap_or((Rational::zero(), Rational::zero())));
    }
    let mut terms: Vec<Option<(Rational, Rational)>> = Vec::new();
    for m in &rs.coords {
        let mut rate = Rational::one();
        let mut c = m.scale.clone();
        let mut zero = c.is_zero();
        for &(k, p) in &m.num {
            let (rho, amp) = &dominant[k];
            if amp.is_zero() {
                zero = true;
                break;
            }
            rate *= pow_rat(rho, p);
            c *= pow_rat(amp, p);
        }
        if zero {
            terms.push(None);
            continue;
        }
        for &(k, p) in &m.den {
            let (rho, amp) = &dominant[k];
            if rho.is_zero() || amp.is_zero() {
                return DirectionVerdict::Undetermined("a denominator sequence vanishes".into());
            }
            rate /= pow_rat(rho, p);
            c /= pow_rat(amp, p);
        }
        if rate.abs() >= Rational::one() {
            return DirectionVerdict::Undetermined("a coordinate does not converge".into());
        }
        terms.push(Some((rate, c)));
    }
    let Some(top) = terms.iter().flatten().map(|(r, _)| r.abs()).max() else {
        return DirectionVerdict::Undetermined("sequence equals its limit".into());
    };
    let lead: Vec<&(Rational, Rational)> = terms.iter().flatten().filter(|(r, _)| r.abs() == top).collect();
    if lead.iter().any(|(r, _)| r.is_negative()) {
        return DirectionVerdict::Undetermined("leading terms alternate in sign".into());
    }
    let u: Vec<Rational> = terms
        .iter()
        .map(|t| match t {
            Some((r, c)) if r.abs() == top => c.clone(),
            _ => Rational::zero(),
        })
        .collect();
    DirectionVerdict::Rational(RVector(u).primitive())
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::examples::{cusp_sequence, pell_sequence};
    use crate::closed_set::{Monomial, RatFn};
    use crate::geometry::{rat_int, RPoint};

    #[test]
    fn axis_sequence() {
        let s = ProbeSequence::new(
            RPoint::from_ints(&[0, 0]),
            1,
            Schema::Rational(vec![
                RatFn::new(Poly::one(), Poly::var()),
                RatFn::new(Poly::zero(), Poly::one()),
            ]),
        )
        .unwrap();
        assert_eq!(limit_direction(&s), DirectionVerdict::Rational(RVector::from_ints(&[1, 0])));
    }

    #[test]
    fn cusp_direction_with_numeric_oracle() {
        let s = cusp_sequence(2);
        assert_eq!(limit_direction(&s), DirectionVerdict::Rational(RVector::from_ints(&[1, 0])));
        let w = s.term(1_000_000).unwrap().to_f64();
        let norm = (w[0] * w[0] + w[1] * w[1]).sqrt();
        assert!((w[0] / norm - 1.0).abs() < 1e-6 && (w[1] / norm).abs() < 1e-6);
    }

    #[test]
    fn weighted_leading_terms() {
        // d = (2/(i+1), -3/(2i)) → direction (4, -3)
        let s = ProbeSequence::new(
            RPoint::from_pairs(&[(0, 1), (1, 1)]),
            2,
            Schema::Rational(vec![
                RatFn::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, 1])),
                RatFn::new(Poly::from_ints(&[-3]), Poly::from_ints(&[0, 2])),
            ]),
        )
        .unwrap();
        assert_eq!(limit_direction(&s), DirectionVerdict::Rational(RVector::from_ints(&[4, -3])));
    }

    #[test]
    fn pell_is_irrational() {
        let DirectionVerdict::Irrational(cert) = limit_direction(&pell_sequence()) else {
            panic!("expected an irrational direction");
        };
        assert_eq!(cert.polynomial.to_string(), "λ^2-2λ-1");
        assert_eq!(cert.tested, vec![rat_int(-1), rat_int(1)]);
        assert_eq!(cert.direction[0].to_string(), "1");
        assert_eq!(cert.direction[1].to_string(), "√2");
        // numeric oracle: p_i/q_i over i ≤ 50
        let w = pell_sequence().term(50).unwrap().to_f64();
        assert!((w[1] / w[0] - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rational_roots_recurrence() {
        // s(i) = 3 s(i-1) - 2 s(i-2): s = 2^i, t = 2^i + 1
        let b = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        let rs = RecurrenceSchema {
            coeffs: b(&[3, -2]),
            names: vec!["s".into(), "t".into()],
            initial: vec![b(&[1, 2]), b(&[2, 3])],
            coords: vec![
                Monomial { scale: rat_int(1), num: vec![], den: vec![(0, 1)] },
                Monomial { scale: rat_int(3), num: vec![], den: vec![(1, 1)] },
            ],
        };
        let s = ProbeSequence::new(RPoint::from_ints(&[0, 0]), 2, Schema::Recurrence(rs)).unwrap();
        assert_eq!(limit_direction(&s), DirectionVerdict::Rational(RVector::from_ints(&[1, 3])));
    }
}
