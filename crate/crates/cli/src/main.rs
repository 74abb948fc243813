//! `howe`: verify the bundled parameter tables, decompose parameter sets, count points
//! and search for new curves.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage, configuration and input errors.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use howe_core::{
    decomposition_report, enumerate, parse_rows, verify_row, zeta_lift, CountMethod, Error,
    HoweParams, HyperellipticModel, LegendreCurve, ParamsRecord, Pins, PointCounter, PrimeModulus,
    ReportOptions, ReportRecord, SearchConfig, Table, Target, CSV_HEADER,
};
use howe_core::{CurveCounter, DecompositionReport};

#[derive(Parser)]
#[command(
    name = "howe",
    version,
    about = "Genus-5 twisted generalised Howe curves over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every row of a parameter table against its bound.
    VerifyTables(VerifyArgs),
    /// Print the five elliptic factors, point counts and verdicts.
    Decompose(DecomposeArgs),
    /// Count points on one curve over F_{p^j}.
    Count(CountArgs),
    /// Enumerate parameter sets reaching a bound.
    Search(SearchArgs),
    /// Run a short set of built-in checks.
    Selftest,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which table: 1 (Serre bound over F_p), 2 (maximal over F_{p^2}),
    /// 3 (Serre bound over F_{p^3}).
    #[arg(value_parser = ["1", "2", "3"])]
    table: String,

    /// CSV file with columns p,alpha1,alpha2,a1..a6,b5,b6 instead of the
    /// bundled table.
    #[arg(long)]
    data: Option<PathBuf>,

    /// Count point by point over fields up to this size; zeta-lift above.
    #[arg(long, default_value_t = 1_000_000)]
    direct_limit: u64,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long, required_unless_present = "from_json")]
    p: Option<u64>,

    #[arg(long, required_unless_present = "from_json")]
    alpha1: Option<u64>,

    #[arg(long, required_unless_present = "from_json")]
    alpha2: Option<u64>,

    /// a1,a2,a3,a4,a5,a6
    #[arg(long, value_delimiter = ',', required_unless_present = "from_json")]
    a: Vec<u64>,

    /// b5,b6
    #[arg(long, value_delimiter = ',', required_unless_present = "from_json")]
    b: Vec<u64>,

    /// Read parameters from a JSON object with fields p, alpha1, alpha2, a, b
    /// (such as the output of --json); `-` reads standard input.
    #[arg(long, conflicts_with_all = ["p", "alpha1", "alpha2", "a", "b"])]
    from_json: Option<PathBuf>,

    #[arg(long)]
    json: bool,

    /// Extension degrees to count over.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = clap::value_parser!(u32).range(1..=3))]
    ext: Vec<u32>,

    /// Count point by point over fields up to this size; zeta-lift above.
    #[arg(long, default_value_t = 1_000_000)]
    direct_limit: u64,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    p: u64,

    /// Twist of the Legendre curve theta y^2 = x(x - 1)(x - lambda).
    #[arg(long, requires = "lambda", conflicts_with_all = ["alpha", "roots"])]
    theta: Option<i64>,

    #[arg(long, requires = "theta")]
    lambda: Option<i64>,

    /// Leading coefficient of y^2 = alpha (x - r1)...(x - rd).
    #[arg(long, requires = "roots")]
    alpha: Option<i64>,

    /// Distinct roots r1,...,rd with 3 <= d <= 6.
    #[arg(long, value_delimiter = ',', requires = "alpha")]
    roots: Vec<i64>,

    /// Extension degree j.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=3))]
    ext: u32,

    /// Count over F_p and lift to F_{p^j}; elliptic curves only.
    #[arg(long)]
    zeta: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    SerreFp,
    MaximalFp2,
    SerreFp3,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::SerreFp => Target::SerreFp,
            TargetArg::MaximalFp2 => Target::MaximalFp2,
            TargetArg::SerreFp3 => Target::SerreFp3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum)]
    target: TargetArg,

    #[arg(long)]
    p_min: u64,

    #[arg(long)]
    p_max: u64,

    /// Frames (a1, a2, a3, a4, a5, b5) examined per prime.
    #[arg(long)]
    max_candidates: Option<u64>,

    #[arg(long)]
    max_hits: Option<usize>,

    /// Seconds; checked between batches of work.
    #[arg(long)]
    time_budget: Option<f64>,

    /// Shuffle the enumeration order deterministically.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long, env = "HOWE_THREADS")]
    threads: Option<usize>,

    /// Fix a1 = 0 and a2 = 1 unless pinned otherwise.
    #[arg(long)]
    normalize: bool,

    #[arg(long)]
    pin_alpha1: Option<u64>,
    #[arg(long)]
    pin_alpha2: Option<u64>,
    #[arg(long)]
    pin_a1: Option<u64>,
    #[arg(long)]
    pin_a2: Option<u64>,
    #[arg(long)]
    pin_a3: Option<u64>,
    #[arg(long)]
    pin_a4: Option<u64>,
    #[arg(long)]
    pin_a5: Option<u64>,
    #[arg(long)]
    pin_b5: Option<u64>,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Write hits here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Why a command did not succeed.
enum Failure {
    /// A mathematical check failed (exit 1).
    Check(anyhow::Error),
    /// Bad usage, configuration or input (exit 2).
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyTables(args) => verify_tables(args),
        Command::Decompose(args) => decompose(args),
        Command::Count(args) => count(args),
        Command::Search(args) => search(args),
        Command::Selftest => selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn verify_tables(args: VerifyArgs) -> CmdResult {
    let table: Table = args.table.parse()?;
    let rows = match &args.data {
        Some(path) => {
            parse_rows(&read_input(path)?).with_context(|| format!("{}", path.display()))?
        }
        None => table.rows(),
    };
    let mut failed = 0;
    for params in &rows {
        let check = verify_row(params, table.target(), args.direct_limit);
        failed += usize::from(!check.passed());
        println!("{check}");
    }
    println!(
        "table {table}: {} of {} rows pass",
        rows.len() - failed,
        rows.len()
    );
    if failed > 0 {
        return Err(Failure::Check(anyhow!("{failed} row(s) failed")));
    }
    Ok(())
}

fn decompose(args: DecomposeArgs) -> CmdResult {
    let params = match &args.from_json {
        Some(path) => {
            let record: ParamsRecord =
                serde_json::from_str(&read_input(path)?).context("invalid JSON parameters")?;
            record.to_params()?
        }
        None => {
            let (p, alpha1, alpha2) = (args.p.unwrap(), args.alpha1.unwrap(), args.alpha2.unwrap());
            let (a, b) = (&args.a, &args.b);
            if a.len() != 6 || b.len() != 2 {
                return Err(anyhow!("--a takes 6 comma-separated values and --b takes 2").into());
            }
            HoweParams::from_row([
                p, alpha1, alpha2, a[0], a[1], a[2], a[3], a[4], a[5], b[0], b[1],
            ])?
        }
    };
    let mut degrees = args.ext.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let options = ReportOptions {
        degrees,
        direct_limit: args.direct_limit,
    };
    let report = match decomposition_report(&params, &options) {
        Ok(r) => r,
        Err(e @ (Error::Validation(_) | Error::DecompositionMismatch { .. })) => {
            return Err(Failure::Check(e.into()))
        }
        Err(e) => return Err(e.into()),
    };
    if args.json {
        let record = ReportRecord::from(&report);
        println!("{}", serde_json::to_string_pretty(&record)?);
    } else {
        print_report(&report);
    }
    Ok(())
}

fn method_name(method: CountMethod) -> &'static str {
    match method {
        CountMethod::BruteForce => "brute force",
        CountMethod::ZetaLift => "zeta lift",
        CountMethod::Decomposition => "decomposition",
    }
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a (p below threshold)",
    }
}

fn print_report(report: &DecompositionReport) {
    let d = &report.decomposition;
    let params = d.params();
    let s = d.split();
    let [a1, a2, a3, a4, a5, a6] = params.a();
    let [b5, b6] = params.b();
    println!(
        "p = {}, alpha1 = {}, alpha2 = {}",
        params.p(),
        params.alpha1(),
        params.alpha2()
    );
    println!("a = ({a1}, {a2}, {a3}, {a4}, {a5}, {a6}), b = ({b5}, {b6})");
    println!("cross-ratios: a = {}, b = {}, c = {}", s.a, s.b, s.c);
    for (i, e) in d.factors().iter().enumerate() {
        println!("E{}: theta = {}, lambda = {}", i + 1, e.theta(), e.lambda());
    }
    for c in &report.counts {
        let factors = c.factors.map(|n| n.to_string()).join(", ");
        print!(
            "#C(F_{}) = {} [{}]; #E_i = {factors}",
            c.q,
            c.curve,
            method_name(c.method)
        );
        if let Some([n1, n2, n3]) = c.quotients {
            print!("; #C1, #C2, #C3 = {n1}, {n2}, {n3}");
        }
        println!();
    }
    let v = &report.verdicts;
    println!("Serre bound over F_p: {}", yes_no(v.serre_fp));
    println!("maximal over F_p^2: {}", yes_no(Some(v.maximal_fp2)));
    println!("Serre bound over F_p^3: {}", yes_no(v.serre_fp3));
    println!(
        "#C = 0 mod 4 over F_p, F_p^2, F_p^3: {}",
        yes_no(Some(v.count_mod4))
    );
    if d.squareness().second_forms_disagree() {
        println!("note: the two forms of the second squareness condition disagree here");
    }
}

fn count(args: CountArgs) -> CmdResult {
    let modulus = PrimeModulus::new(args.p)?;
    let j = args.ext;
    let q = modulus.power(j);
    let (model, elliptic) = match (args.theta, args.lambda) {
        (Some(theta), Some(lambda)) => {
            let curve = LegendreCurve::from_ints(args.p, theta, lambda)?;
            (HyperellipticModel::from(curve), true)
        }
        _ => match args.alpha {
            Some(alpha) => (
                HyperellipticModel::from_ints(args.p, alpha, &args.roots)?,
                false,
            ),
            None => {
                return Err(
                    anyhow!("give either --theta and --lambda, or --alpha and --roots").into(),
                )
            }
        },
    };
    let (n, method) = if args.zeta {
        if !elliptic {
            return Err(
                anyhow!("--zeta applies to elliptic curves given by --theta and --lambda").into(),
            );
        }
        let n1 = PointCounter::new(modulus, 1)?.count(&model).count();
        let n = zeta_lift(n1, args.p, j).map_err(|e| Failure::Check(e.into()))?;
        (n, CountMethod::ZetaLift)
    } else {
        let counter = match PointCounter::new(modulus, j) {
            Ok(c) => c,
            Err(e @ Error::CapExceeded { .. }) if elliptic => {
                return Err(anyhow!(e)
                    .context("rerun with --zeta to lift the count from F_p")
                    .into())
            }
            Err(e) => return Err(e.into()),
        };
        (counter.count(&model).count(), CountMethod::BruteForce)
    };
    let trace = q as i64 + 1 - n as i64;
    println!("#C(F_{q}) = {n}");
    println!("trace = {trace}");
    println!("genus = {}", model.genus());
    println!("method = {}", method_name(method));
    Ok(())
}

fn search(args: SearchArgs) -> CmdResult {
    let mut config = SearchConfig::new(args.target.into(), args.p_min, args.p_max);
    config.max_candidates_per_prime = args.max_candidates;
    config.max_hits = args.max_hits;
    config.time_budget = match args.time_budget {
        Some(secs) if !(secs.is_finite() && secs >= 0.0) => {
            return Err(anyhow!("--time-budget must be a nonnegative number").into())
        }
        Some(secs) => Some(Duration::from_secs_f64(secs)),
        None => None,
    };
    config.seed = args.seed;
    config.threads = args.threads;
    config.normalize = args.normalize;
    config.pins = Pins {
        alpha1: args.pin_alpha1,
        alpha2: args.pin_alpha2,
        a1: args.pin_a1,
        a2: args.pin_a2,
        a3: args.pin_a3,
        a4: args.pin_a4,
        a5: args.pin_a5,
        b5: args.pin_b5,
    };
    config.validate()?;

    let sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    if let Format::Csv = args.format {
        writeln!(out, "{}", CSV_HEADER.join(","))?;
    }
    let mut write_error = None;
    let stats = enumerate(&config, |hit| {
        let line = match args.format {
            Format::Csv => hit.csv_row(),
            Format::Jsonl => hit.json_line(),
        };
        if write_error.is_none() {
            write_error = writeln!(out, "{line}").err();
        }
    })?;
    if let Some(e) = write_error {
        return Err(anyhow!(e).context("cannot write hits").into());
    }
    out.flush()?;
    eprintln!("{stats}");
    if stats.disagreements > 0 {
        return Err(Failure::Check(anyhow!(
            "{} candidate(s) passed the congruence screen but failed confirmation",
            stats.disagreements
        )));
    }
    Ok(())
}

type Row = [u64; 11];
type Factors = [(u64, u64); 5];

fn selftest() -> CmdResult {
    let mut failed = 0;
    let mut check = |name: &str, ok: anyhow::Result<bool>| {
        let passed = matches!(ok, Ok(true));
        failed += usize::from(!passed);
        match ok {
            Ok(_) => println!("{} {name}", if passed { "PASS" } else { "FAIL" }),
            Err(e) => println!("FAIL {name}: {e:#}"),
        }
    };

    check(
        "maximal Legendre curve over F_121",
        (|| {
            let e = LegendreCurve::from_ints(11, 8, 6)?;
            Ok(PointCounter::new(e.modulus(), 2)?
                .count_legendre(&e)
                .count()
                == 144)
        })(),
    );
    let examples: [(Row, Factors); 3] = [
        (
            [499, 47, 436, 2, 1, 10, 55, 92, 84, 36, 275],
            [(31, 438), (31, 198), (95, 62), (95, 302), (342, 198)],
        ),
        (
            [11, 4, 6, 5, 3, 10, 7, 6, 8, 9, 2],
            [(8, 6), (8, 2), (8, 2), (8, 10), (3, 10)],
        ),
        (
            [37, 17, 6, 0, 1, 3, 31, 34, 13, 29, 30],
            [(26, 26), (26, 4), (4, 12), (4, 34), (30, 10)],
        ),
    ];
    for (row, expected) in examples {
        check(
            &format!("decomposition of the p = {} example", row[0]),
            (|| {
                let d = howe_core::decompose_genus5(&HoweParams::from_row(row)?)?;
                let mut got: Vec<_> = d
                    .factors()
                    .iter()
                    .map(|e| (e.theta().value(), e.lambda().value()))
                    .collect();
                let mut want = expected.to_vec();
                got.sort_unstable();
                want.sort_unstable();
                Ok(got == want)
            })(),
        );
    }
    for table in Table::ALL {
        let row = table.rows()[0];
        check(
            &format!("table {table}, first row"),
            Ok(verify_row(&row, table.target(), 100_000).passed()),
        );
    }
    check(
        "no maximal curves at p = 13",
        (|| {
            let mut hits = 0;
            enumerate(&SearchConfig::new(Target::MaximalFp2, 13, 13), |_| {
                hits += 1
            })?;
            Ok(hits == 0)
        })(),
    );

    if failed > 0 {
        return Err(Failure::Check(anyhow!("{failed} self-test(s) failed")));
    }
    Ok(())
}
