mod report;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use orbivol::cusp_slopes::{census_manifold, enumerate_candidates, load_census, CensusManifold};
use orbivol::hk_cone::{torsion_inverse_norms, HkCone};
use orbivol::symmetry::{volume_bound, IndexKind, Setting, SymmetryQuery};
use orbivol::tube_drill::{table1, tube_record};
use orbivol::{Error, Interval, Settings};
use serde_json::json;

use report::{cells, show, Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "orbivol",
    version,
    about = "Certified volume bounds for hyperbolic link orbifolds"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 60)]
    precision: u32,
    /// Target width of quadrature enclosures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    quad_tol: f64,
    /// Target width of inverse-function enclosures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    invert_tol: f64,
    /// Maximum bisection depth for sign certificates.
    #[arg(long, global = true, default_value_t = 40)]
    sign_depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report settings and timing on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tube radius and drilling ratio for torsion order n.
    Tube { n: u32 },
    /// Table of orbifold volume lower bounds.
    Table1 {
        #[arg(long, default_value_t = 4)]
        from: u32,
        #[arg(long, default_value_t = 11)]
        to: u32,
    },
    /// Candidate filling slopes on a census manifold.
    Slopes {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        bound: String,
        /// Census CSV to read instead of the embedded records.
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Certified bracket on the volume change for an inverse norm.
    #[command(group(ArgGroup::new("norm").required(true).args(["a", "n"])))]
    HkBracket {
        #[arg(long = "A")]
        a: Option<String>,
        /// Use the inverse norm of the (n, 0) slope on m004.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Certify that (n, 0) on m004 gives the smallest torsion-n filling.
    VerifyMinimizer {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        to: Option<u32>,
    },
    /// Run the sign certificates behind the volume-change argument.
    VerifyLemmas,
    /// Volume lower bound for a manifold with a symmetry group.
    #[command(group(ArgGroup::new("index").required(true).args(["n", "p"])))]
    Symmetry {
        #[arg(long)]
        order: u64,
        /// Smallest order of a nontrivial element with a fixed point.
        #[arg(long)]
        n: Option<u64>,
        /// Smallest prime dividing the group order.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, conflicts_with = "single_cusp")]
        cusped: bool,
        #[arg(long)]
        single_cusp: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Tube { .. } => "tube",
            Command::Table1 { .. } => "table1",
            Command::Slopes { .. } => "slopes",
            Command::HkBracket { .. } => "hk-bracket",
            Command::VerifyMinimizer { .. } => "verify-minimizer",
            Command::VerifyLemmas => "verify-lemmas",
            Command::Symmetry { .. } => "symmetry",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconclusive(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let settings = Settings {
        precision_bits: g.precision,
        quad_tol: g.quad_tol,
        invert_tol: g.invert_tol,
        sign_depth: g.sign_depth,
    };
    if let Err(e) = settings.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if g.verbose {
        eprintln!("settings: {settings:?}");
    }
    let started = Instant::now();
    let report = match run(&cli.command, &settings) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if g.verbose {
        eprintln!(
            "{} finished in {:.2?}",
            cli.command.name(),
            started.elapsed()
        );
    }
    let config = json!({ "settings": settings, "format": g.format });
    match report.emit(g.format, &config, &mut io::stdout().lock()) {
        Ok(()) => {}
        // a closed downstream pipe is not an error of ours
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(command: &Command, settings: &Settings) -> orbivol::Result<Report> {
    let prec = settings.prec();
    match command {
        Command::Tube { n } => tube(*n, prec),
        Command::Table1 { from, to } => table(*from, *to, prec),
        Command::Slopes {
            manifold,
            n,
            bound,
            census,
        } => slopes(manifold, *n, bound, census.as_ref(), prec),
        Command::HkBracket { a, n } => hk_bracket(a.as_deref(), *n, settings),
        Command::VerifyMinimizer { n, to } => verify_minimizer(*n, to.unwrap_or(*n), settings),
        Command::VerifyLemmas => verify_lemmas(settings),
        Command::Symmetry {
            order,
            n,
            p,
            cusped,
            single_cusp,
        } => symmetry(*order, *n, *p, *cusped, *single_cusp, prec),
    }
}

fn tube(n: u32, prec: u32) -> orbivol::Result<Report> {
    let rec = tube_record(n, prec)?;
    let mut r = Report::new("tube", vec!["n", "quantity", "lo", "hi"]);
    for (name, x) in [
        ("x_n", &rec.x_n),
        ("cosh_b", &rec.cosh_b),
        ("r_n", &rec.r_n),
        ("drill_ratio", &rec.drill_ratio),
    ] {
        let [lo, hi] = cells(x);
        r.row(vec![n.to_string(), name.into(), lo, hi]);
        r.line(format!("{name:<12} {}", show(x)));
    }
    r.result(&rec);
    Ok(r)
}

fn table(from: u32, to: u32, prec: u32) -> orbivol::Result<Report> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty range {from}..={to}")));
    }
    let rows = table1(from..=to, prec)?;
    let mut r = Report::new(
        "table1",
        vec![
            "n",
            "vol_2.568",
            "vol_2.848",
            "vol_V8",
            "vol_3.6638",
            "vol_2.56",
            "vol_P_n",
        ],
    );
    r.line(format!(
        "{:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "n", "2.568", "2.848", "V8", "3.6638", "2.56", "P_n"
    ));
    for row in &rows {
        let reference = row
            .vol_pn_reference
            .map(|d| d.to_string())
            .unwrap_or_default();
        r.row(vec![
            row.n.to_string(),
            row.bound_2568.to_string(),
            row.bound_2848.to_string(),
            row.bound_v8.to_string(),
            row.bound_36638.to_string(),
            row.bound_256.to_string(),
            reference.clone(),
        ]);
        r.line(format!(
            "{:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
            row.n,
            row.bound_2568,
            row.bound_2848,
            row.bound_v8,
            row.bound_36638,
            row.bound_256,
            reference
        ));
        r.result(row);
    }
    Ok(r)
}

fn find_manifold(
    name: &str,
    census: Option<&PathBuf>,
    prec: u32,
) -> orbivol::Result<CensusManifold> {
    if let Some(path) = census {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        if let Some(m) = load_census(&text, prec)?
            .into_iter()
            .find(|m| m.name == name)
        {
            return Ok(m);
        }
    }
    census_manifold(name, prec)
}

fn slopes(
    name: &str,
    n: u32,
    bound: &str,
    census: Option<&PathBuf>,
    prec: u32,
) -> orbivol::Result<Report> {
    let m = find_manifold(name, census, prec)?;
    let bound = Interval::parse(bound, prec)?;
    let candidates = enumerate_candidates(&m, n, &bound)?;
    let mut r = Report::new(
        "slopes",
        vec![
            "a",
            "b",
            "length_lo",
            "length_hi",
            "inverse_norm_lo",
            "inverse_norm_hi",
            "fkp_lo",
            "unresolved",
        ],
    );
    r.line(format!(
        "{name}, n = {n}: {} candidate slopes",
        candidates.len()
    ));
    for c in &candidates {
        let [llo, lhi] = cells(&c.length);
        let [alo, ahi] = cells(&c.inverse_norm);
        let fkp = c
            .fkp_lower_bound
            .as_ref()
            .map(|b| b.lo_decimal(b.decimal_digits()))
            .unwrap_or_default();
        r.row(vec![
            c.slope.a.to_string(),
            c.slope.b.to_string(),
            llo,
            lhi,
            alo,
            ahi,
            fkp,
            c.unresolved.to_string(),
        ]);
        r.line(format!(
            "({}, {})  length {}  A {}{}",
            c.slope.a,
            c.slope.b,
            show(&c.length),
            show(&c.inverse_norm),
            if c.unresolved { "  (unresolved)" } else { "" }
        ));
        r.result(c);
    }
    Ok(r)
}

fn hk_bracket(a: Option<&str>, n: Option<u32>, settings: &Settings) -> orbivol::Result<Report> {
    let prec = settings.prec();
    let a = match (a, n) {
        (Some(text), _) => Interval::parse(text, prec)?,
        (None, Some(n)) => torsion_inverse_norms(n, prec)?.0,
        (None, None) => unreachable!("clap requires one of --A and --n"),
    };
    let cone = HkCone::new(settings)?;
    let b = cone.delta_v_bracket(&a)?;
    let nz = b.neumann_zagier();
    let mut r = Report::new("hk-bracket", vec!["quantity", "lo", "hi"]);
    let quantities = [
        ("A", &b.inverse_norm),
        ("z_hat", &b.z_hat),
        ("z_tilde", &b.z_tilde),
        ("lower", &b.lower),
        ("upper", &b.upper),
        ("quarter_A", &nz.quarter_a),
    ];
    for (name, x) in quantities {
        let [lo, hi] = cells(x);
        r.row(vec![name.into(), lo, hi]);
        r.line(format!("{name:<10} {}", show(x)));
    }
    r.line(format!(
        "certified  {} <= dV <= {}",
        b.lower.lo_decimal(12),
        b.upper.hi_decimal(12)
    ));
    let mut result = serde_json::to_value(&b).expect("bracket serializes");
    result["neumann_zagier"] = serde_json::to_value(&nz).expect("diagnostic serializes");
    if let Some(n) = n {
        match cone.pn_volume_bracket(n) {
            Ok(v) => {
                let [lo, hi] = cells(&v);
                r.row(vec!["vol_P_n".into(), lo, hi]);
                r.line(format!("{:<10} {}", "vol_P_n", show(&v)));
                result["vol_pn"] = serde_json::to_value(&v).expect("interval serializes");
            }
            Err(Error::NotApplicable(_)) => {}
            Err(e) => return Err(e),
        }
    }
    r.results.push(result);
    Ok(r)
}

fn verify_minimizer(from: u32, to: u32, settings: &Settings) -> orbivol::Result<Report> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty range {from}..={to}")));
    }
    let cone = HkCone::new(settings)?;
    let mut r = Report::new(
        "verify-minimizer",
        vec!["n", "verified", "competitor_upper", "filling_lower"],
    );
    for n in from..=to {
        match cone.verify_minimizer(n) {
            Ok(c) => {
                r.row(vec![
                    n.to_string(),
                    c.verified.to_string(),
                    c.competitor_upper.hi_decimal(12),
                    c.filling_lower.lo_decimal(12),
                ]);
                r.line(format!(
                    "n = {n}: verified ({} < {})",
                    c.competitor_upper.hi_decimal(9),
                    c.filling_lower.lo_decimal(9)
                ));
                r.certificate(&c);
            }
            Err(Error::Inconclusive(msg)) => {
                r.failed = true;
                r.row(vec![
                    n.to_string(),
                    "false".into(),
                    String::new(),
                    String::new(),
                ]);
                r.line(format!("n = {n}: not verified: {msg}"));
                r.certificate(&json!({ "n": n, "verified": false, "reason": msg }));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(r)
}

fn verify_lemmas(settings: &Settings) -> orbivol::Result<Report> {
    let cone = HkCone::new(settings)?;
    let report = cone.verify_lemma_suite();
    let mut r = Report::new(
        "verify-lemmas",
        vec![
            "id",
            "statement",
            "domain_lo",
            "domain_hi",
            "expected",
            "sign",
            "depth",
            "subintervals",
        ],
    );
    for c in &report.checks {
        let [lo, hi] = cells(&c.domain);
        r.row(vec![
            c.id.clone(),
            c.statement.clone(),
            lo,
            hi,
            format!("{:?}", c.expected),
            format!("{:?}", c.certificate.sign),
            c.certificate.depth_used.to_string(),
            c.certificate.subinterval_count.to_string(),
        ]);
        r.line(format!(
            "{:<6} {:<20} on {:<40} {:?} ({})",
            c.id,
            c.statement,
            format!("{:.6}", c.domain),
            c.certificate.sign,
            if c.passed() { "ok" } else { "FAILED" }
        ));
        r.certificate(&json!({
            "id": c.id,
            "statement": c.statement,
            "domain": c.domain,
            "expected": c.expected,
            "sign": c.certificate.sign,
            "depth": c.certificate.depth_used,
            "subintervals": c.certificate.subinterval_count,
            "passed": c.passed(),
        }));
    }
    for v in &report.values {
        r.line(format!("{:<10} {}", v.label, show(&v.enclosure)));
        r.result(v);
    }
    r.failed = !report.all_passed();
    Ok(r)
}

fn symmetry(
    order: u64,
    n: Option<u64>,
    p: Option<u64>,
    cusped: bool,
    single_cusp: bool,
    prec: u32,
) -> orbivol::Result<Report> {
    let (index, kind) = match (n, p) {
        (Some(n), _) => (n, IndexKind::Torsion),
        (None, Some(p)) => (p, IndexKind::Prime),
        (None, None) => unreachable!("clap requires one of --n and --p"),
    };
    let setting = if single_cusp {
        Setting::SingleCusp
    } else if cusped {
        Setting::Cusped
    } else {
        Setting::Closed
    };
    let q = SymmetryQuery::new(order, index, kind, setting)?;
    let b = volume_bound(&q, prec);
    let mut r = Report::new(
        "symmetry",
        vec!["order", "index", "kind", "setting", "bound_lo", "bound_hi"],
    );
    let [lo, hi] = cells(&b.bound);
    r.row(vec![
        order.to_string(),
        index.to_string(),
        format!("{kind:?}"),
        format!("{setting:?}"),
        lo,
        hi,
    ]);
    r.line(format!("vol(M) >= {}", b.bound.lo_decimal(9)));
    r.result(&b);
    Ok(r)
}
