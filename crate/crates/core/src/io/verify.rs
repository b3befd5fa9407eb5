//! Re-run the exact checks behind every certificate in a document.

use num_traits::{Signed, Zero};

use crate::closed_set::{Horizon, Membership};
use crate::decision::{leq_on_set, scan_bound, verify_fact_chain, IdealMembership, SetCheck};
use crate::error::Result;
use crate::geometry::RPolytope;

use super::document::{Document, RecordKind};
use super::records::{
    closedset_from_record, cover_from_record, membership_from_record, plfunction_from_record,
    witness_from_record,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub certificate: String,
    pub ok: bool,
    pub detail: String,
}

fn outcome(name: &str, ok: bool, detail: impl Into<String>) -> Verification {
    Verification {
        certificate: name.to_string(),
        ok,
        detail: detail.into(),
    }
}

/// One entry per certificate record; no searching, only re-checks.
pub fn verify_document(doc: &Document) -> Result<Vec<Verification>> {
    let mut out = Vec::new();
    for c in doc.records.iter().filter(|r| r.kind == RecordKind::Certificate) {
        let name = c.name.as_str();
        match c.require("kind")? {
            "not-sss" => {
                let (x, w) = witness_from_record(doc, c)?;
                let seg = RPolytope::from_vertices(x.ambient_dim(), &[w.x.clone(), w.endpoint()]);
                let point = RPolytope::from_vertices(x.ambient_dim(), &[w.x.clone()]);
                if !w.g.zeroset().equals(&[seg]) {
                    out.push(outcome(name, false, "zeroset of g is not the segment"));
                    continue;
                }
                if !w.j.zeroset().equals(&[point]) {
                    out.push(outcome(name, false, "zeroset of j is not the point"));
                    continue;
                }
                let rep = verify_fact_chain(&w, &x);
                let failing: Vec<&str> = rep.failing().iter().map(|f| f.name()).collect();
                out.push(if failing.is_empty() {
                    outcome(name, true, format!("{} checks, {} dominance rows", rep.checks.len(), w.dominance.rows.len()))
                } else {
                    outcome(name, false, format!("failing: {}", failing.join(", ")))
                });
            }
            "member" | "not-member" | "unknown" => {
                let (f, g, x, m) = membership_from_record(doc, c)?;
                let v = match m {
                    IdealMembership::Member { k, below } => {
                        let holds = leq_on_set(&f, &g.truncated_multiple(k), &x, scan_bound(k));
                        let below_ok = below.map_or(k == 0, |r| r.k + 1 == k && r.recheck(&f, &g));
                        match holds {
                            SetCheck::Holds if below_ok => outcome(name, true, format!("f <= {k}g on X, minimal")),
                            SetCheck::Holds => outcome(name, false, "minimality evidence does not re-check"),
                            other => outcome(name, false, format!("f <= {k}g fails: {other:?}")),
                        }
                    }
                    IdealMembership::NotMember { zero_witness, dominance } => {
                        let zero_ok = zero_witness.as_ref().map_or(true, |p| {
                            let inside = x.membership(&p.point, Horizon::default());
                            matches!(inside, Ok(Membership::Yes))
                                && g.eval(&p.point).map(|v| v.is_zero()).unwrap_or(false)
                                && f.eval(&p.point).map(|v| v.is_positive()).unwrap_or(false)
                        });
                        let rows_ok = dominance.recheck(&f, &g);
                        let some = zero_witness.is_some() || !dominance.rows.is_empty();
                        outcome(
                            name,
                            zero_ok && rows_ok && some,
                            format!("{} rows", dominance.rows.len()),
                        )
                    }
                    IdealMembership::Unknown { dominance, .. } => outcome(
                        name,
                        dominance.recheck(&f, &g),
                        format!("{} rows", dominance.rows.len()),
                    ),
                };
                out.push(v);
            }
            "cover-1d" => {
                let find = |key: &str, kind| -> Result<_> {
                    let n = c.require(key)?;
                    doc.named(kind, n).ok_or_else(|| c.error(format!("no record `{n}`")))
                };
                let f = plfunction_from_record(find("f", RecordKind::PlFunction)?)?;
                let g = plfunction_from_record(find("g", RecordKind::PlFunction)?)?;
                let x = closedset_from_record(find("set", RecordKind::ClosedSet)?)?;
                let cc = cover_from_record(c)?;
                let ok = cc.verify(&f, &g, &x)?;
                out.push(outcome(name, ok, format!("{} entries, m = {}", cc.entries.len(), cc.m)));
            }
            other => return Err(c.error(format!("unknown certificate kind `{other}`"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_set::examples::cusp;
    use crate::decision::not_sss_witness;
    use crate::io::records::witness_document;
    use crate::tangent::{default_lambda_max, tangent_report};

    #[test]
    fn witness_verifies_and_tampering_is_caught() {
        let x = cusp(2);
        let t = tangent_report(&x, &default_lambda_max()).remove(0);
        let w = not_sss_witness(&x, &t, 10, &default_lambda_max()).unwrap();
        let doc = witness_document(&x, &w);
        let v = verify_document(&doc).unwrap();
        assert!(v.iter().all(|v| v.ok), "{v:?}");
        let text = doc.to_string().replace("lhs=3/4", "lhs=1");
        let bad = verify_document(&Document::parse(&text).unwrap()).unwrap();
        assert!(!bad[0].ok);
    }
}
