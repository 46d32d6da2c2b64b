use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use std::sync::Mutex;

use biharmonic_core::classify::Flags;
use biharmonic_core::search::{ProgressHook, RecordWriter, ScanConfig};
use biharmonic_core::theorems::{self, TheoremId, VerifyBounds};
use biharmonic_core::{
    census_report, search, CensusReport, Error, MeanKind, NumberProfile, OutputFormat, Predicate,
    PredicateSpec, SearchOptions, SearchQuery, SearchRecord, SearchSummary, ShapePattern,
};
use clap::{ArgAction, Args, Parser, Subcommand};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

const MAX_EVAL: u64 = (1 << 63) - 1;

#[derive(Parser, Debug)]
#[command(
    name = "biharmonic",
    version,
    about = "Harmonic, unitary harmonic and bi-unitary harmonic numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full profile of each integer: factorization, divisor functions, means, flags.
    Eval {
        #[arg(required = true)]
        n: Vec<String>,
        #[arg(long, default_value = "table")]
        format: OutputFormat,
    },
    /// Which classes each integer belongs to.
    Classify {
        #[arg(required = true)]
        n: Vec<String>,
        /// Only answer these predicates (e.g. harmonic, not-h2).
        #[arg(long = "pred")]
        preds: Vec<PredicateSpec>,
        #[arg(long, default_value = "table")]
        format: OutputFormat,
    },
    /// Scan a range for integers satisfying every given predicate.
    Search(SearchArgs),
    /// Bounded checks of the structural theorems.
    Verify(VerifyArgs),
    /// Census of bi-unitary harmonic numbers up to a bound.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct Jobs {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, short = 'j', env = "BIHARMONIC_JOBS")]
    jobs: Option<usize>,
    #[arg(long, hide = true)]
    segment_size: Option<u64>,
}

impl Jobs {
    fn config(&self) -> ScanConfig {
        let mut cfg = ScanConfig::default();
        if let Some(j) = self.jobs {
            cfg.workers = j.max(1);
        }
        if let Some(s) = self.segment_size {
            cfg.segment_size = s.max(1);
        }
        cfg
    }
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 1)]
    min: u64,
    #[arg(long)]
    max: u64,
    #[arg(long = "pred")]
    preds: Vec<PredicateSpec>,
    /// Exponent multiset such as "2,2,1".
    #[arg(long)]
    shape: Option<ShapePattern>,
    #[command(flatten)]
    jobs: Jobs,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    #[arg(long, default_value = "jsonl")]
    format: OutputFormat,
    /// Whether n = 1 may be reported.
    #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = ArgAction::Set)]
    include_one: bool,
    /// Write records here instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Stop once the segment holding this integer has been merged.
    #[arg(long, hide = true)]
    halt_after: Option<u64>,
    /// Print progress to standard error.
    #[arg(long)]
    progress: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    /// 1 to 7, or "classical"; repeatable.
    #[arg(long, short = 't')]
    theorem: Vec<TheoremId>,
    #[arg(long, default_value_t = 1_000_000)]
    bound: u64,
    /// Largest prime in the two-prime shape enumeration.
    #[arg(long, default_value_t = theorems::DEFAULT_PRIME_BOUND)]
    prime_bound: u64,
    #[arg(long, default_value_t = theorems::DEFAULT_KMAX)]
    kmax: u32,
    #[arg(long, default_value = "table")]
    format: OutputFormat,
    #[command(flatten)]
    jobs: Jobs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, default_value_t = 1_000_000)]
    max: u64,
    #[arg(long, default_value = "table")]
    format: OutputFormat,
    #[command(flatten)]
    jobs: Jobs,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long, requires = "checkpoint")]
    resume: bool,
    #[arg(long)]
    progress: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroInput
            | Error::InvalidRange { .. }
            | Error::InvalidQuery(_)
            | Error::InvalidFactorization(_)
            | Error::Parse(_)
            | Error::SegmentTooLarge { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Eval { n, format } => cmd_eval(&n, format),
        Command::Classify { n, preds, format } => cmd_classify(&n, &preds, format),
        Command::Search(a) => cmd_search(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}

fn parse_n(s: &str) -> Result<u64, Failure> {
    let n: u64 = s
        .trim()
        .replace('_', "")
        .parse()
        .map_err(|_| Failure::Usage(format!("not a positive integer: {s:?}")))?;
    if n == 0 || n > MAX_EVAL {
        return Err(Failure::Usage(format!("{n} is outside 1..=2^63-1")));
    }
    Ok(n)
}

const PROFILE_PREDICATES: [Predicate; 19] = [
    Predicate::Harmonic,
    Predicate::UnitaryHarmonic,
    Predicate::BiunitaryHarmonic,
    Predicate::HNumber(1),
    Predicate::HNumber(2),
    Predicate::HNumber(3),
    Predicate::HNumber(4),
    Predicate::HNumber(5),
    Predicate::HNumber(6),
    Predicate::Perfect,
    Predicate::MultiPerfect,
    Predicate::UnitaryPerfect,
    Predicate::BiunitaryPerfect,
    Predicate::BiunitaryMultiPerfect,
    Predicate::Balanced,
    Predicate::Friendly,
    Predicate::Powerful,
    Predicate::PerfectSquare,
    Predicate::Squarefree,
];

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_profile(out: &mut impl Write, p: &NumberProfile) -> io::Result<()> {
    let f = &p.functions;
    writeln!(out, "n              {}", p.n)?;
    writeln!(out, "factorization  {}", p.factorization)?;
    writeln!(out, "d              {}", f.d)?;
    writeln!(out, "d*             {}", f.d_star)?;
    writeln!(out, "d**            {}", f.d_bistar)?;
    writeln!(out, "sigma          {}", f.sigma)?;
    writeln!(out, "sigma*         {}", f.sigma_star)?;
    writeln!(out, "sigma**        {}", f.sigma_bistar)?;
    for kind in MeanKind::ALL {
        writeln!(out, "{:<14} {}", kind.label(), p.mean(kind))?;
    }
    for pred in PROFILE_PREDICATES {
        let v = p.flags.get(pred).unwrap_or(false);
        writeln!(out, "{:<22} {}", pred.name(), yes_no(v))?;
    }
    if let Some(k) = p.flags.k_perfect_level {
        writeln!(out, "{:<22} {k}", "k-perfect level")?;
    }
    if let Some(k) = p.flags.biunitary_k_perfect_level {
        writeln!(out, "{:<22} {k}", "biunitary level")?;
    }
    Ok(())
}

fn cmd_eval(ns: &[String], format: OutputFormat) -> CmdResult {
    let ns = ns
        .iter()
        .map(|s| parse_n(s))
        .collect::<Result<Vec<_>, _>>()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        OutputFormat::Table => {
            for (i, &n) in ns.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                render_profile(&mut out, &NumberProfile::of(n)?)?;
            }
            out.flush()?;
        }
        _ => {
            let mut w = RecordWriter::new(format, out);
            for &n in &ns {
                w.write(&SearchRecord::from_profile(&NumberProfile::of(n)?))?;
            }
            w.finish()?;
        }
    }
    Ok(0)
}

fn class_answers(
    flags: &Flags,
    p: &NumberProfile,
    preds: &[PredicateSpec],
) -> Result<Vec<(String, bool)>, Failure> {
    if preds.is_empty() {
        return Ok(flags.active().into_iter().map(|c| (c, true)).collect());
    }
    let factors = p.factorization.factors();
    preds
        .iter()
        .map(|s| Ok((s.to_string(), s.eval(p.n, factors, &p.functions)?)))
        .collect()
}

fn cmd_classify(ns: &[String], preds: &[PredicateSpec], format: OutputFormat) -> CmdResult {
    let ns = ns
        .iter()
        .map(|s| parse_n(s))
        .collect::<Result<Vec<_>, _>>()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if format == OutputFormat::Csv {
        writeln!(out, "n,class,holds")?;
    }
    for n in ns {
        let p = NumberProfile::of(n)?;
        let answers = class_answers(&p.flags, &p, preds)?;
        match format {
            OutputFormat::Table => {
                let shown: Vec<String> = if preds.is_empty() {
                    answers.into_iter().map(|(c, _)| c).collect()
                } else {
                    answers
                        .into_iter()
                        .map(|(c, v)| format!("{c}={}", yes_no(v)))
                        .collect()
                };
                let shown = if shown.is_empty() {
                    "-".to_string()
                } else {
                    shown.join(", ")
                };
                writeln!(out, "{n}: {shown}")?;
            }
            OutputFormat::Jsonl => {
                let map: serde_json::Map<String, serde_json::Value> =
                    answers.into_iter().map(|(c, v)| (c, v.into())).collect();
                writeln!(out, "{}", serde_json::json!({ "n": n, "classes": map }))?;
            }
            OutputFormat::Csv => {
                for (c, v) in answers {
                    writeln!(out, "{n},{c},{v}")?;
                }
            }
        }
    }
    out.flush()?;
    Ok(0)
}

/// Stderr progress printer, throttled to one line every few seconds.
fn progress_hook(lo: u64, hi: u64) -> ProgressHook {
    let start = Instant::now();
    let last = Mutex::new(Instant::now());
    ProgressHook::new(move |s: &SearchSummary| {
        let mut last = last.lock().unwrap();
        if last.elapsed() < Duration::from_secs(5) && !s.is_complete() {
            return;
        }
        *last = Instant::now();
        let done = s.next_unscanned.saturating_sub(lo);
        let span = hi - lo + 1;
        eprintln!(
            "progress: {}/{} ({:.1}%), {} records, {:.0}s",
            done,
            span,
            100.0 * done as f64 / span as f64,
            s.records,
            start.elapsed().as_secs_f64()
        );
    })
}

fn print_summary(s: &SearchSummary, completed: bool) {
    eprintln!("range        [{}, {}]", s.lo, s.hi);
    eprintln!(
        "records      {} ({} excluding 1)",
        s.records, s.records_excluding_one
    );
    for (p, c) in &s.predicate_counts {
        eprintln!("  {p:<24} {c}");
    }
    if !completed {
        eprintln!("stopped at   {} (resume with --resume)", s.next_unscanned);
    }
    eprintln!("digest       {}", s.digest);
}

fn cmd_search(a: SearchArgs) -> CmdResult {
    let mut query = SearchQuery::new(a.min, a.max).include_one(a.include_one);
    for p in a.preds {
        query = query.with_predicate(p);
    }
    if let Some(shape) = a.shape {
        query = query.with_shape(shape);
    }
    query.validate()?;
    let opts = SearchOptions {
        scan: a.jobs.config(),
        checkpoint: a.checkpoint,
        resume: a.resume,
        halt_after: a.halt_after,
        progress: a.progress.then(|| progress_hook(a.min, a.max)),
    };
    let sink: Box<dyn Write> = match &a.output {
        Some(path) => {
            Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Failure::Runtime(format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut writer = RecordWriter::new(a.format, sink);
    let outcome = search(&query, &opts, |r| writer.write(r))?;
    writer.finish()?;
    print_summary(&outcome.summary, outcome.completed);
    Ok(0)
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let ids: Vec<TheoremId> = if a.all || a.theorem.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        a.theorem.clone()
    };
    let bounds = VerifyBounds {
        bound: a.bound,
        prime_bound: a.prime_bound,
        kmax: a.kmax,
    };
    let cfg = a.jobs.config();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut all_passed = true;
    for id in ids {
        let outcome = theorems::run(id, &bounds, &cfg)?;
        all_passed &= outcome.passed;
        match a.format {
            OutputFormat::Jsonl => writeln!(
                out,
                "{}",
                serde_json::to_string(&outcome).expect("serializes")
            )?,
            _ => writeln!(out, "{outcome}")?,
        }
        out.flush()?;
    }
    Ok(if all_passed { 0 } else { EXIT_VERIFY_FAILED })
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn render_report(out: &mut impl Write, r: &CensusReport) -> io::Result<()> {
    writeln!(out, "bound                      {}", r.bound)?;
    writeln!(out, "count (including 1)        {}", r.count_including_one)?;
    writeln!(out, "count (excluding 1)        {}", r.count_excluding_one)?;
    match r.first_exceptional {
        Some(n) => writeln!(
            out,
            "first neither H nor H*     {n} (preceded by {} members)",
            r.members_before_exceptional
        )?,
        None => writeln!(out, "first neither H nor H*     none")?,
    }
    writeln!(out, "powerful (above 1)         {}", list(&r.powerful))?;
    writeln!(
        out,
        "perfect squares (above 1)  {}",
        list(&r.perfect_squares)
    )?;
    writeln!(out, "shapes")?;
    for s in &r.shapes {
        writeln!(
            out,
            "  {{{}}}{:<w$} {}",
            s.shape,
            "",
            list(&s.members),
            w = 12usize.saturating_sub(s.shape.to_string().len())
        )?;
    }
    writeln!(out, "members                    {}", list(&r.members))?;
    Ok(())
}

fn cmd_report(a: ReportArgs) -> CmdResult {
    let opts = SearchOptions {
        scan: a.jobs.config(),
        checkpoint: a.checkpoint,
        resume: a.resume,
        halt_after: None,
        progress: a.progress.then(|| progress_hook(1, a.max)),
    };
    let report = census_report(a.max, &opts)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        OutputFormat::Jsonl => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("serializes")
        )?,
        OutputFormat::Csv => {
            writeln!(out, "n")?;
            for n in &report.members {
                writeln!(out, "{n}")?;
            }
        }
        OutputFormat::Table => render_report(&mut out, &report)?,
    }
    out.flush()?;
    Ok(0)
}
