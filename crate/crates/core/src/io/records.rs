//! Conversions between core values and workbench records.

use num_bigint::BigInt;
use num_traits::One;

use crate::calculus::{AffineMap, PLFunction, Piece};
use crate::closed_set::{
    ClosedSetDesc, Monomial, PointOfSet, ProbeSequence, Provenance, RatFn, RecurrenceSchema, Schema,
};
use crate::decision::{
    CaseTag, CoverCertificate1D, CoverEntry, DominanceRow, DominanceTable, IdealMembership, Interval,
    NotSssWitness, SssReason, SssVerdict,
};
use crate::error::{Error, Result};
use crate::formula::{parse, Formula};
use crate::geometry::{format_rational, parse_rational, RPoint, RPolytope, RVector, Rational};
use crate::poly::Poly;
use crate::tangent::Cone;

use super::document::{Document, Record, RecordKind};

fn invalid(what: &str, s: &str) -> Error {
    Error::Invalid(format!("bad {what}: {s:?}"))
}

pub fn fmt_coords(c: &[Rational]) -> String {
    let v: Vec<String> = c.iter().map(format_rational).collect();
    format!("({})", v.join(","))
}

pub fn parse_coords(s: &str) -> Result<Vec<Rational>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| invalid("point", s))?;
    inner.split(',').map(parse_rational).collect()
}

pub fn fmt_point(p: &RPoint) -> String {
    fmt_coords(p.coords())
}

pub fn parse_point(s: &str, n: usize) -> Result<RPoint> {
    let c = parse_coords(s)?;
    if c.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: c.len(),
        });
    }
    Ok(RPoint::new(c))
}

pub fn parse_vector(s: &str, n: usize) -> Result<RVector> {
    Ok(RVector::new(parse_point(s, n)?.coords().to_vec()))
}

fn parse_int<T: std::str::FromStr>(rec: &Record, key: &str) -> Result<T> {
    let v = rec.require(key)?;
    v.parse().map_err(|_| rec.error(format!("`{key}` is not an integer: {v:?}")))
}

fn arity_of(rec: &Record) -> Result<usize> {
    let n: usize = parse_int(rec, "arity")?;
    if n == 0 {
        return Err(rec.error("arity must be positive"));
    }
    Ok(n)
}

// formula

pub fn formula_record(name: &str, f: &Formula, arity: usize) -> Record {
    let mut r = Record::new(RecordKind::Formula, name);
    r.push("arity", arity.to_string()).push("text", f.to_string());
    r
}

pub fn formula_from_record(rec: &Record) -> Result<(Formula, usize)> {
    let n = arity_of(rec)?;
    let f = parse(rec.require("text")?, Some(n))?;
    Ok((f, n))
}

// plfunction

fn fmt_map(m: &AffineMap) -> String {
    let c: Vec<String> = m.coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}] {}", c.join(","), m.constant)
}

pub fn plfunction_record(name: &str, f: &PLFunction) -> Record {
    let mut r = Record::new(RecordKind::PlFunction, name);
    r.push("arity", f.arity().to_string());
    for p in f.pieces() {
        let vs: Vec<String> = p.cell.vertices().iter().map(fmt_point).collect();
        r.push("cell", format!("{} => {}", vs.join(" "), fmt_map(&p.map)));
    }
    r
}

pub fn plfunction_from_record(rec: &Record) -> Result<PLFunction> {
    let n = arity_of(rec)?;
    let mut pieces = Vec::new();
    for line in rec.all("cell") {
        let bad = || rec.error(format!("bad cell: {line:?}"));
        let (vs, map) = line.split_once("=>").ok_or_else(bad)?;
        let verts = vs
            .split_whitespace()
            .map(|v| parse_point(v, n))
            .collect::<Result<Vec<_>>>()?;
        let map = map.trim();
        let (coeffs, constant) = map
            .strip_prefix('[')
            .and_then(|m| m.split_once(']'))
            .ok_or_else(bad)?;
        let coeffs = coeffs
            .split(',')
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != n {
            return Err(bad());
        }
        let constant: BigInt = constant.trim().parse().map_err(|_| bad())?;
        pieces.push(Piece {
            cell: RPolytope::from_vertices(n, &verts),
            map: AffineMap::new(coeffs, constant),
        });
    }
    PLFunction::from_pieces(n, pieces)
}

// sequences and closed sets

fn fmt_poly(p: &Poly) -> String {
    let s = p.render("i");
    if s.contains(['+', '-']) && !(s.starts_with('-') && !s[1..].contains(['+', '-'])) {
        format!("({s})")
    } else {
        s
    }
}

fn fmt_factors(fs: &[(usize, u32)], names: &[String]) -> String {
    let v: Vec<String> = fs
        .iter()
        .map(|&(k, e)| if e == 1 { names[k].clone() } else { format!("{}^{e}", names[k]) })
        .collect();
    v.join("*")
}

fn fmt_monomial(m: &Monomial, names: &[String]) -> String {
    let mut s = String::new();
    if !m.scale.is_one() {
        s.push_str(&format!("[{}]", format_rational(&m.scale)));
    }
    if m.num.is_empty() {
        s.push('1');
    } else {
        s.push_str(&fmt_factors(&m.num, names));
    }
    if !m.den.is_empty() {
        s.push('/');
        s.push_str(&fmt_factors(&m.den, names));
    }
    s
}

fn parse_factors(s: &str, names: &[String]) -> Option<Vec<(usize, u32)>> {
    if s == "1" {
        return Some(vec![]);
    }
    s.split('*')
        .map(|f| {
            let (name, e) = match f.split_once('^') {
                Some((n, e)) => (n, e.parse().ok()?),
                None => (f, 1),
            };
            Some((names.iter().position(|n| n == name)?, e))
        })
        .collect()
}

fn parse_monomial(s: &str, names: &[String]) -> Option<Monomial> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (scale, rest) = match s.strip_prefix('[') {
        Some(t) => {
            let (sc, rest) = t.split_once(']')?;
            (parse_rational(sc).ok()?, rest.to_string())
        }
        None => (Rational::one(), s),
    };
    let (num, den) = match rest.split_once('/') {
        Some((n, d)) => (n.to_string(), Some(d.to_string())),
        None => (rest, None),
    };
    Some(Monomial {
        scale,
        num: parse_factors(&num, names)?,
        den: match den {
            Some(d) => parse_factors(&d, names)?,
            None => vec![],
        },
    })
}

fn join_ints(v: &[BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_ints(s: &str) -> Option<Vec<BigInt>> {
    s.split(',').map(|c| c.trim().parse().ok()).collect()
}

pub fn fmt_sequence(s: &ProbeSequence) -> String {
    let head = format!("{} {}", fmt_point(&s.limit), s.start);
    match &s.schema {
        Schema::Rational(fs) => {
            let cs: Vec<String> = fs
                .iter()
                .map(|f| format!("{}/{}", fmt_poly(&f.num), fmt_poly(&f.den)))
                .collect();
            format!("rational {head} | {}", cs.join(" ; "))
        }
        Schema::Recurrence(r) => {
            let bases: Vec<String> = r
                .names
                .iter()
                .zip(&r.initial)
                .map(|(n, v)| format!("{n}={}", join_ints(v)))
                .collect();
            let cs: Vec<String> = r.coords.iter().map(|m| fmt_monomial(m, &r.names)).collect();
            format!(
                "recurrence {head} | {} | {} | {}",
                join_ints(&r.coeffs),
                bases.join(" ; "),
                cs.join(" ; ")
            )
        }
    }
}

pub fn parse_sequence(text: &str, n: usize) -> Result<ProbeSequence> {
    let bad = || invalid("sequence", text);
    let parts: Vec<&str> = text.split('|').map(str::trim).collect();
    let mut head = parts[0].split_whitespace();
    let kind = head.next().ok_or_else(bad)?;
    let limit = parse_point(head.next().ok_or_else(bad)?, n)?;
    let start: u64 = head.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let schema = match (kind, parts.len()) {
        ("rational", 2) => {
            let fs = parts[1]
                .split(';')
                .map(|c| {
                    let (a, b) = c.split_once('/')?;
                    Some(RatFn::new(Poly::parse(a, "i")?, Poly::parse(b, "i")?))
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            Schema::Rational(fs)
        }
        ("recurrence", 4) => {
            let coeffs = parse_ints(parts[1]).ok_or_else(bad)?;
            let mut names = Vec::new();
            let mut initial = Vec::new();
            for b in parts[2].split(';') {
                let (name, vals) = b.trim().split_once('=').ok_or_else(bad)?;
                names.push(name.trim().to_string());
                initial.push(parse_ints(vals).ok_or_else(bad)?);
            }
            let coords = parts[3]
                .split(';')
                .map(|m| parse_monomial(m, &names))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(bad)?;
            Schema::Recurrence(RecurrenceSchema {
                coeffs,
                names,
                initial,
                coords,
            })
        }
        _ => return Err(bad()),
    };
    ProbeSequence::new(limit, start, schema)
}

pub fn closedset_record(name: &str, x: &ClosedSetDesc) -> Record {
    let mut r = Record::new(RecordKind::ClosedSet, name);
    r.push("arity", x.ambient_dim().to_string());
    for p in x.polyparts() {
        let vs: Vec<String> = p.vertices().iter().map(fmt_point).collect();
        r.push("polytope", vs.join(" "));
    }
    for s in x.sequences() {
        r.push("sequence", fmt_sequence(s));
    }
    r
}

pub fn closedset_from_record(rec: &Record) -> Result<ClosedSetDesc> {
    let n = arity_of(rec)?;
    let mut polys = Vec::new();
    for line in rec.all("polytope") {
        let vs = line
            .split_whitespace()
            .map(|v| parse_point(v, n))
            .collect::<Result<Vec<_>>>()?;
        polys.push(RPolytope::from_vertices(n, &vs));
    }
    let seqs = rec
        .all("sequence")
        .map(|s| parse_sequence(s, n))
        .collect::<Result<Vec<_>>>()?;
    ClosedSetDesc::new(n, polys, seqs)
}

// cone

pub fn cone_record(name: &str, c: &Cone) -> Record {
    let mut r = Record::new(RecordKind::Cone, name);
    r.push("apex", fmt_point(&c.apex))
        .push("axis", fmt_coords(c.axis.coords()))
        .push("height", format_rational(&c.height))
        .push("cos", format_rational(&c.cos_half_angle));
    r
}

pub fn cone_from_record(rec: &Record) -> Result<Cone> {
    let apex = RPoint::new(parse_coords(rec.require("apex")?)?);
    let n = apex.dim();
    Cone::new(
        apex,
        parse_vector(rec.require("axis")?, n)?,
        parse_rational(rec.require("height")?)?,
        parse_rational(rec.require("cos")?)?,
    )
}

// points of sets and dominance rows

pub fn fmt_provenance(p: &Provenance) -> String {
    match p {
        Provenance::Polytope(k) => format!("poly:{k}"),
        Provenance::Sequence { sequence, index: u64::MAX } => format!("limit:{sequence}"),
        Provenance::Sequence { sequence, index } => format!("seq:{sequence}:{index}"),
    }
}

pub fn parse_provenance(s: &str) -> Result<Provenance> {
    let bad = || invalid("provenance", s);
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
    match parts.as_slice() {
        ["poly", k] => Ok(Provenance::Polytope(num(k)? as usize)),
        ["limit", k] => Ok(Provenance::Sequence {
            sequence: num(k)? as usize,
            index: u64::MAX,
        }),
        ["seq", k, i] => Ok(Provenance::Sequence {
            sequence: num(k)? as usize,
            index: num(i)?,
        }),
        _ => Err(bad()),
    }
}

fn key_values(s: &str) -> Vec<(&str, &str)> {
    s.split_whitespace().filter_map(|t| t.split_once('=')).collect()
}

fn lookup<'a>(kv: &[(&str, &'a str)], key: &str, whole: &str) -> Result<&'a str> {
    kv.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| invalid(&format!("`{key}` in"), whole))
}

pub fn fmt_point_of_set(p: &PointOfSet) -> String {
    format!("at={} w={}", fmt_provenance(&p.provenance), fmt_point(&p.point))
}

fn parse_point_of_set(kv: &[(&str, &str)], whole: &str) -> Result<PointOfSet> {
    Ok(PointOfSet {
        point: RPoint::new(parse_coords(lookup(kv, "w", whole)?)?),
        provenance: parse_provenance(lookup(kv, "at", whole)?)?,
    })
}

pub fn fmt_row(r: &DominanceRow) -> String {
    format!(
        "k={} {} lhs={} rhs={}",
        r.k,
        fmt_point_of_set(&r.at),
        format_rational(&r.lhs),
        format_rational(&r.rhs)
    )
}

pub fn parse_row(s: &str) -> Result<DominanceRow> {
    let kv = key_values(s);
    Ok(DominanceRow {
        k: lookup(&kv, "k", s)?.parse().map_err(|_| invalid("row", s))?,
        at: parse_point_of_set(&kv, s)?,
        lhs: parse_rational(lookup(&kv, "lhs", s)?)?,
        rhs: parse_rational(lookup(&kv, "rhs", s)?)?,
    })
}

fn rows_from(rec: &Record) -> Result<DominanceTable> {
    Ok(DominanceTable {
        rows: rec.all("row").map(parse_row).collect::<Result<Vec<_>>>()?,
    })
}

// verdicts

pub fn verdict_record(name: &str, v: &SssVerdict, witness: Option<&str>) -> Record {
    let mut r = Record::new(RecordKind::Verdict, name);
    r.push("value", v.label());
    match v {
        SssVerdict::StronglySemisimple(reason) => {
            r.push(
                "reason",
                match reason {
                    SssReason::PolyhedralHW => "polyhedral",
                    SssReason::NoRationalOutgoingTangent(_) => "no-rational-outgoing-tangent",
                    SssReason::Dim1 => "dimension-one",
                },
            );
        }
        SssVerdict::NotStronglySemisimple(_) => {
            r.push("reason", "rational-outgoing-tangent");
        }
        SssVerdict::Unknown(bs) => {
            for b in bs {
                r.push("blocker", b.clone());
            }
        }
    }
    if let Some(w) = witness {
        r.push("witness", w);
    }
    r
}

// certificates

/// Closed set, `g`, `j` and the witness itself.
pub fn witness_document(x: &ClosedSetDesc, w: &NotSssWitness) -> Document {
    let mut c = Record::new(RecordKind::Certificate, "witness");
    c.push("kind", "not-sss")
        .push("set", "X")
        .push("g", "g")
        .push("j", "j")
        .push("x", fmt_point(&w.x))
        .push("u", fmt_coords(w.u.coords()))
        .push("lambda", format_rational(&w.lambda))
        .push("sequence", w.sequence_index.to_string());
    for r in &w.dominance.rows {
        c.push("row", fmt_row(r));
    }
    Document {
        records: vec![
            closedset_record("X", x),
            plfunction_record("g", &w.g),
            plfunction_record("j", &w.j),
            c,
        ],
    }
}

fn referenced<'a>(doc: &'a Document, c: &Record, key: &str, kind: RecordKind) -> Result<&'a Record> {
    let name = c.require(key)?;
    doc.named(kind, name)
        .ok_or_else(|| c.error(format!("no {kind} named `{name}`")))
}

pub fn witness_from_record(doc: &Document, c: &Record) -> Result<(ClosedSetDesc, NotSssWitness)> {
    let x = closedset_from_record(referenced(doc, c, "set", RecordKind::ClosedSet)?)?;
    let n = x.ambient_dim();
    let w = NotSssWitness {
        x: parse_point(c.require("x")?, n)?,
        u: parse_vector(c.require("u")?, n)?,
        lambda: parse_rational(c.require("lambda")?)?,
        g: plfunction_from_record(referenced(doc, c, "g", RecordKind::PlFunction)?)?,
        j: plfunction_from_record(referenced(doc, c, "j", RecordKind::PlFunction)?)?,
        sequence_index: parse_int(c, "sequence")?,
        dominance: rows_from(c)?,
    };
    Ok((x, w))
}

/// Certificate for `f ∈ ⟨g⟩` (or not) on `X`, with `f`, `g`, `X` inlined.
pub fn membership_document(
    f: &PLFunction,
    g: &PLFunction,
    x: &ClosedSetDesc,
    m: &IdealMembership,
    cover: Option<&CoverCertificate1D>,
) -> Document {
    let mut c = Record::new(RecordKind::Certificate, "membership");
    c.push("f", "f").push("g", "g").push("set", "X");
    match m {
        IdealMembership::Member { k, below } => {
            c.push("kind", "member").push("k", k.to_string());
            if let Some(r) = below {
                c.push("below", fmt_row(r));
            }
        }
        IdealMembership::NotMember { zero_witness, dominance } => {
            c.push("kind", "not-member");
            if let Some(p) = zero_witness {
                c.push("zero", fmt_point_of_set(p));
            }
            for r in &dominance.rows {
                c.push("row", fmt_row(r));
            }
        }
        IdealMembership::Unknown { cap, reason, dominance } => {
            c.push("kind", "unknown").push("cap", cap.to_string()).push("reason", reason.clone());
            for r in &dominance.rows {
                c.push("row", fmt_row(r));
            }
        }
    }
    let mut doc = Document {
        records: vec![
            plfunction_record("f", f),
            plfunction_record("g", g),
            closedset_record("X", x),
            c,
        ],
    };
    if let Some(cc) = cover {
        doc.push(cover_record("cover", cc));
    }
    doc
}

pub fn membership_from_record(
    doc: &Document,
    c: &Record,
) -> Result<(PLFunction, PLFunction, ClosedSetDesc, IdealMembership)> {
    let f = plfunction_from_record(referenced(doc, c, "f", RecordKind::PlFunction)?)?;
    let g = plfunction_from_record(referenced(doc, c, "g", RecordKind::PlFunction)?)?;
    let x = closedset_from_record(referenced(doc, c, "set", RecordKind::ClosedSet)?)?;
    let m = match c.require("kind")? {
        "member" => IdealMembership::Member {
            k: parse_int(c, "k")?,
            below: c.get("below").map(parse_row).transpose()?,
        },
        "not-member" => IdealMembership::NotMember {
            zero_witness: match c.get("zero") {
                Some(z) => Some(parse_point_of_set(&key_values(z), z)?),
                None => None,
            },
            dominance: rows_from(c)?,
        },
        "unknown" => IdealMembership::Unknown {
            cap: parse_int(c, "cap")?,
            reason: c.require("reason")?.to_string(),
            dominance: rows_from(c)?,
        },
        other => return Err(c.error(format!("unknown membership kind `{other}`"))),
    };
    Ok((f, g, x, m))
}

fn parse_interval(s: &str) -> Result<Interval> {
    let bad = || invalid("interval", s);
    let s = s.trim();
    let lo_closed = match s.chars().next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match s.chars().last() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    let (a, b) = s[1..s.len() - 1].split_once(',').ok_or_else(bad)?;
    Ok(Interval {
        lo: parse_rational(a)?,
        hi: parse_rational(b)?,
        lo_closed,
        hi_closed,
    })
}

pub fn cover_record(name: &str, cc: &CoverCertificate1D) -> Record {
    let mut r = Record::new(RecordKind::Certificate, name);
    r.push("kind", "cover-1d")
        .push("f", "f")
        .push("g", "g")
        .push("set", "X")
        .push("m", cc.m.to_string());
    for e in &cc.entries {
        let tags: Vec<&str> = e.tags.iter().map(|t| t.name()).collect();
        r.push(
            "entry",
            format!(
                "x={} n={} m={} tags={}",
                format_rational(&e.x),
                e.neighborhood,
                e.multiplier,
                tags.join(",")
            ),
        );
    }
    r
}

pub fn cover_from_record(rec: &Record) -> Result<CoverCertificate1D> {
    let m: BigInt = parse_int(rec, "m")?;
    let mut entries = Vec::new();
    for e in rec.all("entry") {
        let kv = key_values(e);
        let tags = lookup(&kv, "tags", e)?
            .split(',')
            .map(|t| CaseTag::from_name(t).ok_or_else(|| invalid("case tag", t)))
            .collect::<Result<Vec<_>>>()?;
        entries.push(CoverEntry {
            x: parse_rational(lookup(&kv, "x", e)?)?,
            neighborhood: parse_interval(lookup(&kv, "n", e)?)?,
            multiplier: lookup(&kv, "m", e)?.parse().map_err(|_| invalid("entry", e))?,
            tags,
        });
    }
    Ok(CoverCertificate1D { entries, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::compile;
    use crate::closed_set::examples::{cusp, pell_sequence};
    use crate::decision::{cover_certificate_1d, ideal_membership, not_sss_witness};
    use crate::geometry::rat;
    use crate::tangent::{default_lambda_max, tangent_report};
    use proptest::prelude::*;

    fn reparse(doc: &Document) -> Document {
        let text = doc.to_string();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.to_string(), text);
        back
    }

    #[test]
    fn closed_sets_round_trip() {
        let pell = ClosedSetDesc::new(2, vec![], vec![pell_sequence()]).unwrap();
        let tri = ClosedSetDesc::polyhedral(
            2,
            vec![RPolytope::from_vertices(2, &[RPoint::from_ints(&[0, 0]), RPoint::from_pairs(&[(1, 3), (0, 1)]), RPoint::from_ints(&[0, 1])])],
        )
        .unwrap();
        for x in [cusp(2), cusp(3), pell, tri] {
            let doc = reparse(&Document { records: vec![closedset_record("X", &x)] });
            assert_eq!(closedset_from_record(&doc.records[0]).unwrap(), x);
        }
        let r = closedset_record("X", &cusp(2));
        assert_eq!(r.get("sequence"), Some("rational (0,0) 2 | 1/i ; 1/i^2"));
    }

    #[test]
    fn sequence_text() {
        let s = parse_sequence("rational (0) 2 | (i-1)/(i^3+1)", 1).unwrap();
        assert_eq!(fmt_sequence(&s), "rational (0) 2 | (i-1)/(i^3+1)");
        let p = fmt_sequence(&pell_sequence());
        assert_eq!(p, "recurrence (0,0) 0 | 2,1 | p=1,3 ; q=1,2 | 1/q ; p/q^2");
        assert!(parse_sequence("rational (0,0) 2 | 1/i", 2).is_err());
    }

    #[test]
    fn cone_round_trip() {
        let c = Cone::new(RPoint::from_ints(&[0, 0]), RVector::from_ints(&[1, 0]), rat(1, 2), rat(9, 10)).unwrap();
        let r = cone_record("c", &c);
        assert_eq!(cone_from_record(&r).unwrap(), c);
    }

    #[test]
    fn witness_round_trip() {
        let x = cusp(2);
        let t = tangent_report(&x, &default_lambda_max()).remove(0);
        let w = not_sss_witness(&x, &t, 5, &default_lambda_max()).unwrap();
        let doc = reparse(&witness_document(&x, &w));
        let c = doc.first(RecordKind::Certificate).unwrap();
        let (x2, w2) = witness_from_record(&doc, c).unwrap();
        assert_eq!(x2, x);
        assert!(w2.g.equals(&w.g) && w2.j.equals(&w.j));
        assert_eq!(w2.dominance, w.dominance);
        assert_eq!((w2.x, w2.u, w2.lambda), (w.x, w.u, w.lambda));
    }

    #[test]
    fn membership_round_trip() {
        let f = compile(&parse("(x1 + x1)", Some(1)).unwrap(), 1).unwrap();
        let g = compile(&parse("x1", Some(1)).unwrap(), 1).unwrap();
        let x = ClosedSetDesc::polyhedral(1, vec![RPolytope::unit_cube(1)]).unwrap();
        let m = ideal_membership(&f, &g, &x, 64).unwrap();
        let cc = cover_certificate_1d(&f, &g, &x).unwrap();
        let doc = reparse(&membership_document(&f, &g, &x, &m, Some(&cc)));
        let c = doc.named(RecordKind::Certificate, "membership").unwrap();
        let (_, _, x2, m2) = membership_from_record(&doc, c).unwrap();
        assert_eq!((x2, m2), (x, m));
        let cc2 = cover_from_record(doc.named(RecordKind::Certificate, "cover").unwrap()).unwrap();
        assert_eq!(cc2, cc);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn plfunctions_round_trip_exactly(f in crate::formula::tests::arb_formula(2, 4)) {
            let h = compile(&f, 2).unwrap();
            let doc = reparse(&Document { records: vec![plfunction_record("h", &h)] });
            let back = plfunction_from_record(&doc.records[0]).unwrap();
            prop_assert_eq!(plfunction_record("h", &back), plfunction_record("h", &h));
            prop_assert!(back.equals(&h));
            let fr = formula_record("f", &f, 2);
            prop_assert_eq!(formula_from_record(&fr).unwrap(), (f, 2));
        }
    }
}
