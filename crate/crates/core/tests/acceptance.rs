//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. `WORKBENCH_SEED` overrides the fixed seed of the random parts.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcnaughton::calculus::{compile, PLFunction};
use mcnaughton::closed_set::{ClosedSetDesc, Provenance};
use mcnaughton::decision::{
    decide_sss, ideal_membership, leq_on_set, scan_bound, verify_fact_chain, DecisionConfig, Fact, IdealMembership,
    NotSssWitness, SetCheck, SssReason, SssVerdict,
};
use mcnaughton::formula::{BinOp, Formula};
use mcnaughton::geometry::{rat, RPoint, RPolytope, RVector, Rational};
use mcnaughton::io::{closedset_from_record, Document, RecordKind};
use mcnaughton::tangent::{count_in_cone, tangent_report, Cone, ConeCount, DirectionVerdict, Outgoing};

const DEFAULT_SEED: u64 = 0x4d63_4e61_7567;

fn seed() -> u64 {
    std::env::var("WORKBENCH_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn set(text: &str) -> ClosedSetDesc {
    let doc = Document::parse(text).unwrap();
    closedset_from_record(doc.first(RecordKind::ClosedSet).unwrap()).unwrap()
}

const CUSP2: &str = "closedset cusp2 {\n  arity: 2\n  polytope: (0,0)\n  sequence: rational (0,0) 2 | 1/i ; 1/i^2\n}\n";
const CUSP3: &str = "closedset cusp3 {\n  arity: 2\n  polytope: (0,0)\n  sequence: rational (0,0) 2 | 1/i ; 1/i^3\n}\n";
const PELL: &str =
    "closedset pell {\n  arity: 2\n  polytope: (0,0)\n  sequence: recurrence (0,0) 0 | 2,1 | p=1,3 ; q=1,2 | 1/q ; p/q^2\n}\n";
const ALIGNED: &str = "closedset aligned {\n  arity: 2\n  polytope: (0,0)\n  sequence: rational (0,0) 1 | 1/i ; 0/1\n}\n";
const TWO_POLYTOPES: &str =
    "closedset two {\n  arity: 2\n  polytope: (0,0) (1/2,0) (0,1/2)\n  polytope: (1,1/3) (1,1) (2/3,1)\n}\n";

fn cfg() -> DecisionConfig {
    DecisionConfig::default()
}

fn witness_of(x: &ClosedSetDesc) -> NotSssWitness {
    match decide_sss(x, &cfg()) {
        SssVerdict::NotStronglySemisimple(w) => *w,
        other => panic!("expected NOT-SSS, got {}", other.label()),
    }
}

// random formulas and points

fn random_formula(r: &mut ChaCha8Rng, n: usize, depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..20) {
            0 => Formula::Zero,
            1 => Formula::One,
            _ => Formula::var(r.gen_range(1..=n)),
        };
    }
    if r.gen_bool(0.15) {
        return Formula::neg(random_formula(r, n, depth - 1));
    }
    let op = [BinOp::OPlus, BinOp::OTimes, BinOp::Min, BinOp::Max, BinOp::Implies][r.gen_range(0..5)];
    Formula::binary(op, random_formula(r, n, depth - 1), random_formula(r, n, depth - 1))
}

fn random_rational(r: &mut ChaCha8Rng) -> Rational {
    let q = *[1i64, 2, 3, 4, 5, 6, 8, 12, 16, 30, 64, 97, 360].get(r.gen_range(0..13)).unwrap();
    rat(r.gen_range(0..=q), q)
}

fn random_point(r: &mut ChaCha8Rng, n: usize) -> RPoint {
    RPoint::new((0..n).map(|_| random_rational(r)).collect())
}

// criteria

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Cusp: NOT-SSS with the exact zerosets and a full dominance table.
fn criterion_1() -> Outcome {
    let x = set(CUSP2);
    let w = witness_of(&x);
    let o = RPoint::from_ints(&[0, 0]);
    let seg = RPolytope::from_vertices(2, &[o.clone(), RPoint::from_pairs(&[(1, 2), (0, 1)])]);
    ensure(w.g.zeroset().equals(&[seg]), || "zeroset(g) is not conv((0,0),(1/2,0))".into())?;
    ensure(w.j.zeroset().equals(&[RPolytope::from_vertices(2, &[o])]), || "zeroset(j) is not {(0,0)}".into())?;
    let seq = &x.sequences()[0];
    for k in 1..=100u64 {
        let row = w.dominance.row_for(k).ok_or_else(|| format!("no row for k={k}"))?;
        let Provenance::Sequence { index, .. } = row.at.provenance else {
            return Err(format!("row k={k} is not on the sequence"));
        };
        ensure(index <= 10 * k + 10, || format!("k={k}: index {index} > 10k+10"))?;
        let p = seq.term(index).ok_or("missing term")?;
        ensure(p == row.at.point, || format!("k={k}: point is not term {index}"))?;
        // independent: recompute both sides from the functions
        let j = w.j.eval(&p).map_err(|e| e.to_string())?;
        let kg = (w.g.eval(&p).map_err(|e| e.to_string())? * Rational::from_integer(k.into())).min(Rational::one());
        ensure(j > kg && j == row.lhs && kg == row.rhs, || format!("k={k}: j={j} kg={kg}"))?;
    }
    Ok(format!("u={} λ={} 100 rows", w.u, w.lambda))
}

fn criterion_2() -> Outcome {
    let cases: [(&str, &str, &str); 5] = [
        ("two polytopes", TWO_POLYTOPES, "SSS"),
        ("cusp 1/i^2", CUSP2, "NOT-SSS"),
        ("cusp 1/i^3", CUSP3, "NOT-SSS"),
        ("pell", PELL, "SSS"),
        ("aligned", ALIGNED, "SSS"),
    ];
    let mut bad = Vec::new();
    for (name, text, want) in cases {
        let v = decide_sss(&set(text), &cfg());
        if v.label() != want {
            bad.push(format!("{name}: {} (want {want})", v.label()));
        }
        if name == "aligned" {
            let ok = matches!(&v, SssVerdict::StronglySemisimple(SssReason::NoRationalOutgoingTangent(ts))
                if ts.iter().any(|t| matches!(t.outgoing, Outgoing::AllAligned { .. })));
            if !ok {
                bad.push("aligned: tangent not reported as aligned".into());
            }
        }
        if name == "pell" {
            let ts = tangent_report(&set(text), &cfg().lambda_max);
            if !matches!(ts[0].direction, DirectionVerdict::Irrational(_)) {
                bad.push("pell: direction not irrational".into());
            }
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("5 sets, 0 mismatches".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for text in [CUSP2, CUSP3] {
        let x = set(text);
        let w = witness_of(&x);
        let rep = verify_fact_chain(&w, &x);
        ensure(rep.all_pass(), || format!("failing: {:?}", rep.failing()))?;
        checked += 1;

        let mut no_rise = w.clone();
        no_rise.j = PLFunction::zero(2);
        let f = verify_fact_chain(&no_rise, &x).failing_facts();
        ensure(f == vec![Fact::JRisesAlongU], || format!("j = 0 sabotage failed {f:?}"))?;

        // 1 - clamp(8 x1 - 1) is positive near x: g no longer vanishes there
        let mut lifted = w.clone();
        let bump = PLFunction::clamped(&mcnaughton::calculus::AffineMap::from_ints(&[8, 0], -1)).neg();
        lifted.g = w.g.oplus(&bump).map_err(|e| e.to_string())?;
        let f = verify_fact_chain(&lifted, &x).failing_facts();
        ensure(f == vec![Fact::GVanishes], || format!("g sabotage failed {f:?}"))?;
    }
    Ok(format!("{checked} witnesses pass, 2 sabotages each caught"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut cells = 0;
    for case in 0..50 {
        let n = r.gen_range(1..=3);
        let depth = r.gen_range(1..=6);
        let f = random_formula(&mut r, n, depth);
        let pl = compile(&f, n).map_err(|e| format!("{f}: {e}"))?;
        cells += pl.pieces().len();
        for _ in 0..10_000 {
            let p = random_point(&mut r, n);
            let a = f.evaluate(&p).map_err(|e| e.to_string())?;
            let b = pl.eval(&p).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("formula {case} `{f}` at {p}: {a} vs {b}"))?;
        }
    }
    Ok(format!("50 formulas x 10^4 points, {cells} cells total"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut done = 0;
    while done < 200 {
        let n = r.gen_range(1..=3);
        let depth = r.gen_range(1..=5);
        let f = compile(&random_formula(&mut r, n, depth), n).map_err(|e| e.to_string())?;
        let x = random_point(&mut r, n);
        let u = RVector::new((0..n).map(|_| Rational::from_integer(r.gen_range(-3i64..=3).into())).collect());
        if u.is_zero() {
            continue;
        }
        let Ok((d, exit)) = f.directional_derivative_with_exit(&x, &u) else {
            continue;
        };
        let fx = f.eval(&x).map_err(|e| e.to_string())?;
        for m in 1..=5 {
            let t = &exit * rat(m, 6);
            let ratio = (f.eval(&x.offset(&u, &t)).map_err(|e| e.to_string())? - &fx) / &t;
            ensure(ratio == d, || format!("x={x} u={u} t={t}: ratio {ratio} vs {d}"))?;
        }
        done += 1;
    }
    Ok("200 triples x 5 t".into())
}

fn criterion_6() -> Outcome {
    let eps = [rat(1, 2), rat(1, 4), rat(1, 8)];
    let cos = [rat(1, 2), rat(9, 10), rat(99, 100)];
    let mut witnesses = 0;
    for text in [CUSP2, CUSP3, ALIGNED] {
        let x = set(text);
        for t in tangent_report(&x, &cfg().lambda_max) {
            let DirectionVerdict::Rational(u) = &t.direction else { continue };
            witnesses += 1;
            for e in &eps {
                for c in &cos {
                    let cone = Cone::new(t.x.clone(), u.clone(), e.clone(), c.clone()).map_err(|e| e.to_string())?;
                    let got = count_in_cone(&x, &cone, 100);
                    ensure(got == ConeCount::AtLeast(100), || format!("{} ε={e} cos={c}: {got:?}", t.x))?;
                }
            }
            let c = u.coords();
            let rotated = RVector::new(vec![-c[1].clone(), c[0].clone()]);
            let control = Cone::new(t.x.clone(), rotated, rat(1, 2), rat(99, 100)).map_err(|e| e.to_string())?;
            let ConeCount::Exactly(k) = count_in_cone(&x, &control, 100) else {
                return Err(format!("{}: control cone not finite", t.x));
            };
            // oracle: direct scan of enumerated points
            let scan = x
                .enumerate_points(5000)
                .iter()
                .filter(|p| p.point != t.x && control.contains(&p.point))
                .count();
            ensure(k == scan, || format!("control count {k} vs scan {scan}"))?;
        }
    }
    ensure(witnesses == 3, || format!("{witnesses} rational witnesses, expected 3"))?;
    Ok("3 witnesses x 9 cones AtLeast(100), controls finite".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let x = set("closedset sq {\n  arity: 2\n  polytope: (0,0) (1,0) (0,1) (1,1)\n  polytope: (0,0) (1/2,1)\n}\n");
    let mut ks = Vec::new();
    for case in 0..20 {
        // g must not vanish on all of X, otherwise every pair is trivial
        let g = loop {
            let g = compile(&random_formula(&mut r, 2, 4), 2).map_err(|e| e.to_string())?;
            if leq_on_set(&g, &PLFunction::zero(2), &x, 0) != SetCheck::Holds {
                break g;
            }
        };
        let h = compile(&random_formula(&mut r, 2, 4), 2).map_err(|e| e.to_string())?;
        let (f, bound) = match case % 3 {
            0 => (g.oplus(&g).map_err(|e| e.to_string())?, 2),
            1 => (g.min(&h).map_err(|e| e.to_string())?, 1),
            _ => {
                let k = r.gen_range(2..=6u64);
                (g.truncated_multiple(k).min(&h).map_err(|e| e.to_string())?, k)
            }
        };
        let m = ideal_membership(&f, &g, &x, 1 << 12).map_err(|e| e.to_string())?;
        let IdealMembership::Member { k, .. } = m else {
            return Err(format!("pair {case}: {m:?}"));
        };
        ensure(k <= bound, || format!("pair {case}: k={k} above construction bound {bound}"))?;
        ensure(
            leq_on_set(&f, &g.truncated_multiple(k), &x, scan_bound(k)) == SetCheck::Holds,
            || format!("pair {case}: f <= {k}g does not re-check"),
        )?;
        if k > 0 {
            let below = leq_on_set(&f, &g.truncated_multiple(k - 1), &x, scan_bound(k - 1));
            ensure(matches!(below, SetCheck::Violated(_)), || format!("pair {case}: k={k} not minimal"))?;
        }
        ks.push(k);
    }
    Ok(format!("20 pairs, k = {ks:?}"))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    for case in 0..30 {
        let n = r.gen_range(1..=3);
        let f = compile(&random_formula(&mut r, n, 4), n).map_err(|e| e.to_string())?;
        let g = compile(&random_formula(&mut r, n, 4), n).map_err(|e| e.to_string())?;
        let e = |a: Result<PLFunction, _>| a.map_err(|e: mcnaughton::Error| e.to_string());
        let fg = e(f.oplus(&g))?;
        ensure(fg.equals(&e(g.oplus(&f))?), || format!("pair {case}: commutativity"))?;
        let left = e(fg.oplus(&g.neg()))?;
        let right = e(f.oplus(&e(g.oplus(&g.neg()))?))?;
        ensure(left.equals(&right), || format!("pair {case}: associativity"))?;
        ensure(f.neg().neg().equals(&f), || format!("pair {case}: double negation"))?;
        let a = e(e(f.neg().oplus(&g))?.neg().oplus(&g))?;
        let b = e(e(g.neg().oplus(&f))?.neg().oplus(&f))?;
        ensure(a.equals(&b), || format!("pair {case}: max axiom"))?;
        // pointwise oracle for the last identity: both sides are max(f, g)
        for _ in 0..50 {
            let p = random_point(&mut r, n);
            let m = f.eval(&p).unwrap().max(g.eval(&p).unwrap());
            ensure(a.eval(&p).unwrap() == m, || format!("pair {case}: max oracle at {p}"))?;
        }
    }
    Ok("30 pairs, 4 identities each".into())
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 8] = [
        (1, "cusp witness and dominance table", Duration::from_secs(30), criterion_1),
        (2, "planar decision suite", Duration::from_secs(60), criterion_2),
        (3, "fact chain and sabotage", Duration::from_secs(10), criterion_3),
        (4, "compile vs evaluate", Duration::from_secs(60), criterion_4),
        (5, "derivative vs incremental ratio", Duration::from_secs(30), criterion_5),
        (6, "cone counts", Duration::from_secs(30), criterion_6),
        (7, "principal ideal membership", Duration::from_secs(60), criterion_7),
        (8, "MV identities", Duration::from_secs(60), criterion_8),
    ];
    println!("acceptance seed {}", seed());
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let took = start.elapsed();
        let out = match out {
            Ok(_) if took > budget => Err(format!("over budget ({:.1}s > {}s)", took.as_secs_f64(), budget.as_secs())),
            o => o,
        };
        match out {
            Ok(detail) => println!("criterion {n} PASS {name}: {detail} ({:.2}s)", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL {name}: {why} ({:.2}s)", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
