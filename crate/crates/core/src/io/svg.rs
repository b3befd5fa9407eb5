//! SVG pictures of planar sets, tangents and cones.

use std::fmt::Write;

use crate::closed_set::ClosedSetDesc;
use crate::error::{Error, Result};
use crate::geometry::{RPoint, Rational};
use crate::tangent::{Cone, DirectionVerdict, TangentWitness};

const SIZE: f64 = 400.0;
const PAD: f64 = 20.0;

fn xy(p: &[f64]) -> (f64, f64) {
    (PAD + p[0] * SIZE, PAD + (1.0 - p[1]) * SIZE)
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Polytopes, the first 50 terms of each sequence, tangent rays and one
/// cone per rational witness.
pub fn render_svg(x: &ClosedSetDesc, witnesses: &[TangentWitness], cones: &[Cone]) -> Result<String> {
    if x.ambient_dim() != 2 {
        return Err(Error::Arity {
            expected: 2,
            found: x.ambient_dim(),
        });
    }
    let full = SIZE + 2.0 * PAD;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="{PAD}" y="{PAD}" width="{SIZE}" height="{SIZE}" fill="none" stroke="#888"/>"##
    );
    for p in x.polyparts() {
        let mut vs: Vec<Vec<f64>> = p.vertices().iter().map(RPoint::to_f64).collect();
        if vs.len() == 1 {
            let (a, b) = xy(&vs[0]);
            let _ = writeln!(s, r##"<circle cx="{a:.3}" cy="{b:.3}" r="4" fill="#36c"/>"##);
            continue;
        }
        if vs.len() > 2 {
            let c = [
                vs.iter().map(|v| v[0]).sum::<f64>() / vs.len() as f64,
                vs.iter().map(|v| v[1]).sum::<f64>() / vs.len() as f64,
            ];
            vs.sort_by(|a, b| {
                let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
                let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
                ta.total_cmp(&tb)
            });
        }
        let pts: Vec<String> = vs
            .iter()
            .map(|v| {
                let (a, b) = xy(v);
                format!("{a:.3},{b:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#9cf" fill-opacity="0.5" stroke="#36c" stroke-width="2"/>"##,
            pts.join(" ")
        );
    }
    for q in x.sequences() {
        for (_, w) in q.terms().take(50) {
            if let Some(w) = w {
                let (a, b) = xy(&w.to_f64());
                let _ = writeln!(s, r##"<circle cx="{a:.3}" cy="{b:.3}" r="2" fill="#c33"/>"##);
            }
        }
        let (a, b) = xy(&q.limit.to_f64());
        let _ = writeln!(s, r##"<circle cx="{a:.3}" cy="{b:.3}" r="3" fill="#000"/>"##);
    }
    for t in witnesses {
        let dir: Option<Vec<f64>> = match &t.direction {
            DirectionVerdict::Rational(u) => Some(u.coords().iter().map(to_f64).collect()),
            DirectionVerdict::Irrational(c) => Some(c.direction.iter().map(|d| d.to_f64()).collect()),
            DirectionVerdict::Undetermined(_) => None,
        };
        if let Some(d) = dir {
            let norm = (d[0] * d[0] + d[1] * d[1]).sqrt();
            let x0 = t.x.to_f64();
            let end = [x0[0] + 0.5 * d[0] / norm, x0[1] + 0.5 * d[1] / norm];
            let (a, b) = xy(&x0);
            let (c, e) = xy(&end);
            let _ = writeln!(
                s,
                r##"<line x1="{a:.3}" y1="{b:.3}" x2="{c:.3}" y2="{e:.3}" stroke="#090" stroke-width="2"/>"##
            );
        }
    }
    for c in cones {
        // isosceles triangle: apex and the two far corners
        let apex = c.apex.to_f64();
        let u: Vec<f64> = c.axis.coords().iter().map(to_f64).collect();
        let un = (u[0] * u[0] + u[1] * u[1]).sqrt();
        let (ux, uy) = (u[0] / un, u[1] / un);
        let cos = to_f64(&c.cos_half_angle);
        let tan = (1.0 - cos * cos).sqrt() / cos;
        let h = to_f64(&c.height);
        let mid = [apex[0] + h * ux, apex[1] + h * uy];
        let off = [-uy * h * tan, ux * h * tan];
        let corners = [apex, vec![mid[0] + off[0], mid[1] + off[1]], vec![mid[0] - off[0], mid[1] - off[1]]];
        let pts: Vec<String> = corners
            .iter()
            .map(|v| {
                let (a, b) = xy(v);
                format!("{a:.3},{b:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#fc6" fill-opacity="0.3" stroke="#c90"/>"##,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
