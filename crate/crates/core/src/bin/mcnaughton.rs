use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mcnaughton::calculus::{compile, PLFunction};
use mcnaughton::closed_set::ClosedSetDesc;
use mcnaughton::decision::{
    cover_certificate_1d, decide_sss, ideal_membership, verify_fact_chain, DecisionConfig, IdealMembership, SssReason,
    SssVerdict, DEFAULT_CAP, DEFAULT_KMAX,
};
use mcnaughton::formula::parse;
use mcnaughton::geometry::{format_rational, rat};
use mcnaughton::io::{
    closedset_from_record, fmt_point_of_set, fmt_row, formula_from_record, membership_document, plfunction_from_record,
    plfunction_record, render_svg, verdict_record, verify_document, witness_document, Document, RecordKind,
};
use mcnaughton::tangent::{default_lambda_max, tangent_report, Cone, DirectionVerdict, Obstruction, Outgoing, TangentWitness};
use mcnaughton::Error;

const EXIT_NOT: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ARITY: u8 = 3;
const EXIT_UNKNOWN: u8 = 4;
const EXIT_EMPTY: u8 = 5;
const EXIT_SVG: u8 = 6;
const EXIT_INTERNAL: u8 = 7;

#[derive(Parser)]
#[command(name = "mcnaughton", version, about = "McNaughton functions and strong semisimplicity of M(X)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a formula into a piecewise-linear function record.
    Compile {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether M(X) is strongly semisimple.
    CheckSss {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u64,
        /// Also search j in <g> up to this multiplier.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide f in <g> on X.
    IdealMember {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// One line per probe sequence: limit, direction and outgoing test.
    TangentScan {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Re-run the exact checks of every certificate in a document.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::Invalid(_) => EXIT_PARSE,
            Error::Arity { .. } | Error::ZeroVariable => EXIT_ARITY,
            Error::EmptySet => EXIT_EMPTY,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Out = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: format!("{}: {e}", path.display()),
    })
}

/// Raw formula text unless the file holds `{`-blocks.
fn is_document(text: &str) -> bool {
    text.contains('{')
}

/// `file#name` picks a record by name, plain `file` the first of its type.
fn split_selector(path: &Path) -> (PathBuf, Option<String>) {
    let s = path.to_string_lossy();
    match s.rsplit_once('#') {
        Some((file, name)) if !name.is_empty() && !name.contains('/') => (PathBuf::from(file), Some(name.to_string())),
        _ => (path.to_path_buf(), None),
    }
}

fn pick<'a>(doc: &'a Document, kind: RecordKind, name: Option<&str>) -> Option<&'a mcnaughton::io::Record> {
    match name {
        Some(n) => doc.named(kind, n),
        None => doc.first(kind),
    }
}

fn load_set(path: &Path) -> Result<ClosedSetDesc, Failure> {
    let (file, name) = split_selector(path);
    let doc = Document::parse(&read(&file)?)?;
    let rec = pick(&doc, RecordKind::ClosedSet, name.as_deref()).ok_or_else(|| Failure {
        code: EXIT_PARSE,
        message: format!("{}: no closedset record", path.display()),
    })?;
    Ok(closedset_from_record(rec)?)
}

fn load_function(path: &Path, n: usize) -> Result<PLFunction, Failure> {
    let (file, name) = split_selector(path);
    let text = read(&file)?;
    if !is_document(&text) {
        return Ok(compile(&parse(text.trim(), Some(n))?, n)?);
    }
    let doc = Document::parse(&text)?;
    let name = name.as_deref();
    let f = if let Some(r) = pick(&doc, RecordKind::PlFunction, name) {
        plfunction_from_record(r)?
    } else if let Some(r) = pick(&doc, RecordKind::Formula, name) {
        let (f, arity) = formula_from_record(r)?;
        compile(&f, arity)?
    } else {
        return Err(Failure {
            code: EXIT_PARSE,
            message: format!("{}: no plfunction or formula record", path.display()),
        });
    };
    if f.arity() != n {
        return Err(Error::Arity {
            expected: n,
            found: f.arity(),
        }
        .into());
    }
    Ok(f)
}

fn tangent_line(t: &TangentWitness) -> String {
    let x = t.x.to_string();
    match &t.direction {
        DirectionVerdict::Rational(u) => {
            let out = match &t.outgoing {
                Outgoing::Yes(l) => format!("OUTGOING λ={}", format_rational(l)),
                Outgoing::No(Obstruction::Polytope(k)) => format!("NOT OUTGOING (polytope {k})"),
                Outgoing::No(Obstruction::CubeBoundary) => "NOT OUTGOING (cube boundary)".to_string(),
                Outgoing::AllAligned { sequence } => format!("NOT OUTGOING (sequence {sequence} on the ray)"),
                Outgoing::Undetermined(why) => format!("UNDETERMINED ({why})"),
                Outgoing::Skipped => "SKIPPED".to_string(),
            };
            format!("x={x} u={u} RATIONAL {out}")
        }
        DirectionVerdict::Irrational(c) => {
            let u: Vec<String> = c.direction.iter().map(|d| d.to_string()).collect();
            format!(
                "x={x} u=({}) IRRATIONAL (minimal poly {})",
                u.join(","),
                c.polynomial.render("λ")
            )
        }
        DirectionVerdict::Undetermined(why) => format!("x={x} UNDETERMINED ({why})"),
    }
}

fn illustrative_cones(ts: &[TangentWitness]) -> Vec<Cone> {
    ts.iter()
        .filter_map(|t| match (&t.direction, &t.outgoing) {
            (DirectionVerdict::Rational(u), Outgoing::Yes(l)) => {
                Cone::new(t.x.clone(), u.clone(), l.clone(), rat(9, 10)).ok()
            }
            _ => None,
        })
        .take(1)
        .collect()
}

fn emit_svg(path: &Path, x: &ClosedSetDesc, ts: &[TangentWitness]) -> Result<(), Failure> {
    if x.ambient_dim() != 2 {
        return Err(Failure {
            code: EXIT_SVG,
            message: format!("SVG output needs a planar set, got dimension {}", x.ambient_dim()),
        });
    }
    write(path, &render_svg(x, ts, &illustrative_cones(ts))?)
}

fn cmd_compile(formula: &Path, arity: usize, out: Option<&Path>) -> Out {
    let text = read(formula)?;
    let (f, n) = if is_document(&text) {
        let doc = Document::parse(&text)?;
        let rec = doc.first(RecordKind::Formula).ok_or_else(|| Failure {
            code: EXIT_PARSE,
            message: format!("{}: no formula record", formula.display()),
        })?;
        let (f, n) = formula_from_record(rec)?;
        if n != arity {
            return Err(Error::Arity {
                expected: arity,
                found: n,
            }
            .into());
        }
        (f, n)
    } else {
        (parse(text.trim(), Some(arity))?, arity)
    };
    let pl = compile(&f, n)?;
    let doc = Document {
        records: vec![plfunction_record("f", &pl)],
    };
    match out {
        Some(p) => {
            write(p, &doc.to_string())?;
            println!("compiled {} cells to {}", pl.pieces().len(), p.display());
        }
        None => print!("{doc}"),
    }
    Ok(0)
}

fn cmd_check_sss(set: &Path, kmax: u64, cap: Option<u64>, emit: Option<&Path>, svg: Option<&Path>) -> Out {
    let x = load_set(set)?;
    let cfg = DecisionConfig {
        kmax,
        ..DecisionConfig::default()
    };
    let v = decide_sss(&x, &cfg);
    if let Some(p) = svg {
        emit_svg(p, &x, &tangent_report(&x, &cfg.lambda_max))?;
    }
    println!("{}", v.label());
    match &v {
        SssVerdict::StronglySemisimple(reason) => {
            match reason {
                SssReason::PolyhedralHW => println!("reason: finitely many rational polytopes"),
                SssReason::Dim1 => println!("reason: dimension one"),
                SssReason::NoRationalOutgoingTangent(ts) => {
                    println!("reason: no rational outgoing tangent");
                    for t in ts {
                        println!("  {}", tangent_line(t));
                    }
                }
            }
            Ok(0)
        }
        SssVerdict::NotStronglySemisimple(w) => {
            println!(
                "witness: x={} u={} λ={} sequence={}",
                w.x,
                w.u,
                format_rational(&w.lambda),
                w.sequence_index
            );
            let rep = verify_fact_chain(w, &x);
            let failing = rep.failing();
            if failing.is_empty() {
                println!("facts: all {} checks pass", rep.checks.len());
            } else {
                let names: Vec<&str> = failing.iter().map(|f| f.name()).collect();
                println!("facts: failing {}", names.join(", "));
            }
            let rows = &w.dominance.rows;
            println!("dominance: j > min(1, k g) somewhere on X for k=1..{}", rows.len());
            if let Some(r) = rows.last() {
                println!("  {}", fmt_row(r));
            }
            if let Some(c) = cap {
                let m = ideal_membership(&w.j, &w.g, &x, c)?;
                println!("j in <g> up to k={c}: {}", membership_label(&m));
            }
            if let Some(p) = emit {
                let mut doc = witness_document(&x, w);
                doc.push(verdict_record("verdict", &v, Some("witness")));
                write(p, &doc.to_string())?;
                println!("witness written to {}", p.display());
            }
            Ok(EXIT_NOT)
        }
        SssVerdict::Unknown(blockers) => {
            for b in blockers {
                println!("blocker: {b}");
            }
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn membership_label(m: &IdealMembership) -> String {
    match m {
        IdealMembership::Member { k, .. } => format!("MEMBER k={k}"),
        IdealMembership::NotMember { .. } => "NOT-MEMBER".to_string(),
        IdealMembership::Unknown { .. } => "UNKNOWN".to_string(),
    }
}

fn cmd_ideal_member(f: &Path, g: &Path, set: &Path, cap: u64, cert: Option<&Path>) -> Out {
    let x = load_set(set)?;
    let n = x.ambient_dim();
    let f = load_function(f, n)?;
    let g = load_function(g, n)?;
    let m = ideal_membership(&f, &g, &x, cap)?;
    println!("{}", membership_label(&m));
    let code = match &m {
        IdealMembership::Member { below, .. } => {
            if let Some(r) = below {
                println!("below: {}", fmt_row(r));
            }
            0
        }
        IdealMembership::NotMember { zero_witness, dominance } => {
            if let Some(p) = zero_witness {
                println!("g vanishes, f does not: {}", fmt_point_of_set(p));
            }
            for r in &dominance.rows {
                println!("  {}", fmt_row(r));
            }
            EXIT_NOT
        }
        IdealMembership::Unknown { cap, reason, .. } => {
            println!("cap {cap}: {reason}");
            EXIT_UNKNOWN
        }
    };
    let cover = if n == 1 && matches!(m, IdealMembership::Member { .. }) {
        match cover_certificate_1d(&f, &g, &x) {
            Ok(c) => {
                println!("cover: {} entries, m={}", c.entries.len(), c.m);
                Some(c)
            }
            Err(e) => {
                println!("cover: unavailable ({e})");
                None
            }
        }
    } else {
        None
    };
    if let Some(p) = cert {
        write(p, &membership_document(&f, &g, &x, &m, cover.as_ref()).to_string())?;
        println!("certificate: {}", p.display());
    }
    Ok(code)
}

fn cmd_tangent_scan(set: &Path, svg: Option<&Path>) -> Out {
    let x = load_set(set)?;
    let ts = tangent_report(&x, &default_lambda_max());
    if let Some(p) = svg {
        emit_svg(p, &x, &ts)?;
    }
    if ts.is_empty() {
        println!("no sequence witnesses");
    }
    for t in &ts {
        println!("{}", tangent_line(t));
    }
    Ok(0)
}

fn cmd_verify(cert: &Path) -> Out {
    let doc = Document::parse(&read(cert)?)?;
    let results = verify_document(&doc)?;
    if results.is_empty() {
        println!("FAIL");
        println!("no certificate records");
        return Ok(EXIT_NOT);
    }
    let ok = results.iter().all(|r| r.ok);
    println!("{}", if ok { "OK" } else { "FAIL" });
    for r in &results {
        println!("{}: {} ({})", r.certificate, if r.ok { "ok" } else { "FAIL" }, r.detail);
    }
    Ok(if ok { 0 } else { EXIT_NOT })
}

fn configure_threads() {
    if let Some(n) = std::env::var("WORKBENCH_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let r = match &cli.command {
        Command::Compile { formula, arity, out } => cmd_compile(formula, *arity, out.as_deref()),
        Command::CheckSss {
            set,
            kmax,
            cap,
            emit_witness,
            svg,
        } => cmd_check_sss(set, *kmax, *cap, emit_witness.as_deref(), svg.as_deref()),
        Command::IdealMember { f, g, set, cap, cert } => cmd_ideal_member(f, g, set, *cap, cert.as_deref()),
        Command::TangentScan { set, svg } => cmd_tangent_scan(set, svg.as_deref()),
        Command::Verify { cert } => cmd_verify(cert),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
