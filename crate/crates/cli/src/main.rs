mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use hyperrefl::battery::{index_statement, run_battery, sidecar_path, BatteryOptions, Relation, DATA_DIR_ENV};
use hyperrefl::exec::Execution;
use hyperrefl::fpgroups::{
    abelianization, load_presentation, normal_closure_quotient, todd_coxeter_with_progress, EnumOutcome, EnumResult,
    EnumStats, EnumerationLimits, NameMap, ParseOptions, ParsedPresentation, Strategy, DEFAULT_MAX_COSETS,
};
use hyperrefl::hermitian::{builtin, AnyMatrix, Domain};
use hyperrefl::reflections::{certify, classify_isometry, order_mod_scalars};
use hyperrefl::rings::RingSpec;

use report::{
    AbelianResult, CertifyResult, Failure, FileInfo, IndexResult, JobSpec, OrderResult, Report,
};

/// Largest power tried when computing the order of an isometry modulo scalars.
const MAX_ORDER: u32 = 120;

#[derive(Parser)]
#[command(name = "hyperrefl", version, about = "Certify reflections in complex and quaternionic hyperbolic lattices and compute normal-closure indices")]
struct Cli {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a matrix is a complex or quaternionic reflection.
    Certify(CertifyArgs),
    /// Order of a finitely presented group.
    Order(GroupArgs),
    /// Index of the normal closure of some elements.
    Index(IndexArgs),
    /// Invariant factors of the abelianization.
    Abelian(GroupArgs),
    /// Run every certificate and index computation against the published table.
    VerifyPaper(VerifyArgs),
}

#[derive(Args, Clone)]
#[group(id = "domain", required = false, multiple = false)]
struct DomainArgs {
    /// Work over the ring of integers of Q(sqrt(-d)).
    #[arg(long, group = "domain")]
    d: Option<u64>,
    /// Work over the Hurwitz quaternions.
    #[arg(long, group = "domain")]
    quaternion: bool,
}

impl DomainArgs {
    fn domain(&self) -> Result<Option<Domain>, Failure> {
        if self.quaternion {
            return Ok(Some(Domain::Quaternionic));
        }
        match self.d {
            Some(d) => Ok(Some(Domain::Complex(RingSpec::new(d).map_err(Failure::input)?))),
            None => Ok(None),
        }
    }
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// One of the lattice generators: I0, R (complex) or I0, Ri, Rsigma (quaternionic).
    #[arg(long, conflicts_with = "matrix")]
    builtin: Option<String>,
    /// A matrix literal such as "[0,0,1; 0,-1,0; 1,0,0]".
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args, Clone)]
struct EnumArgs {
    #[arg(long, default_value_t = Strategy::Hlt, value_parser = parse_strategy)]
    strategy: Strategy,
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    /// Report progress to standard error at most this often, in seconds.
    #[arg(long)]
    progress: Option<f64>,
}

#[derive(Args)]
struct GroupArgs {
    /// Presentation file (native or computer-algebra format).
    file: PathBuf,
    /// Keep only the first k relators.
    #[arg(long)]
    truncate: Option<usize>,
    #[command(flatten)]
    enumeration: EnumArgs,
}

#[derive(Args)]
struct IndexArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Name or word to add as a relator; repeatable.
    #[arg(long = "relator", required = true)]
    relators: Vec<String>,
    /// Sidecar binding names to generators; defaults to FILE with a .map extension when present.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Treat the presentation as partial, so the result only bounds the index.
    #[arg(long)]
    partial: bool,
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory holding the presentation files.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Parallel jobs; 0 uses every core and 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Skip the three long enumerations.
    #[arg(long)]
    skip_slow: bool,
    #[command(flatten)]
    enumeration: EnumArgs,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, code) = match run(&cli.command) {
        Ok(out) => out,
        Err(f) => {
            eprintln!("error: {}", f.message);
            let code = f.code;
            (report::to_json(&Report::new(cli.command_name(), JobSpec::default(), f)), code)
        }
    };
    if let Err(e) = emit(&json, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

impl Cli {
    fn command_name(&self) -> &'static str {
        self.command.name()
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Certify(_) => "certify",
            Command::Order(_) => "order",
            Command::Index(_) => "index",
            Command::Abelian(_) => "abelian",
            Command::VerifyPaper(_) => "verify-paper",
        }
    }
}

fn emit(json: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, format!("{json}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}").and_then(|_| out.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}

fn run(cmd: &Command) -> Result<(String, u8), Failure> {
    let name = cmd.name();
    match cmd {
        Command::Certify(a) => {
            let (job, result) = cmd_certify(a)?;
            Ok((report::to_json(&Report::new(name, job, result)), 0))
        }
        Command::Order(a) => {
            let (job, result) = cmd_order(a)?;
            let code = limit_code(&result.enumeration);
            Ok((report::to_json(&Report::new(name, job, result)), code))
        }
        Command::Index(a) => {
            let (job, result) = cmd_index(a)?;
            let code = limit_code(&result.enumeration);
            Ok((report::to_json(&Report::new(name, job, result)), code))
        }
        Command::Abelian(a) => {
            let (job, result) = cmd_abelian(a)?;
            Ok((report::to_json(&Report::new(name, job, result)), 0))
        }
        Command::VerifyPaper(a) => {
            let (job, result) = cmd_verify(a);
            let code = result.summary.exit_code as u8;
            Ok((report::to_json(&Report::new(name, job, result)), code))
        }
    }
}

fn limit_code(r: &EnumResult) -> u8 {
    match r.outcome {
        EnumOutcome::Complete { .. } => 0,
        EnumOutcome::LimitExceeded { .. } => 3,
    }
}

fn cmd_certify(a: &CertifyArgs) -> Result<(JobSpec, CertifyResult), Failure> {
    let domain = a.domain.domain()?.ok_or_else(|| Failure::input("choose a domain with --d or --quaternion"))?;
    let matrix: AnyMatrix = match (&a.builtin, &a.matrix) {
        (Some(name), None) => builtin(name, domain)
            .ok_or_else(|| Failure::input(format!("no built-in matrix `{name}` for {domain}")))?,
        (None, Some(text)) => domain.parse_matrix(text).map_err(Failure::input)?,
        _ => return Err(Failure::input("give exactly one of --builtin or --matrix")),
    };
    let certificate = certify(&matrix).map_err(Failure::input)?;
    let (isometry_type, order) = match &matrix {
        AnyMatrix::Complex(m) => (classify_isometry(m).ok(), order_mod_scalars(m, MAX_ORDER)),
        AnyMatrix::Quaternionic(m) => (None, order_mod_scalars(m, MAX_ORDER)),
    };
    let job = JobSpec {
        domain: Some(domain.to_string()),
        builtin: a.builtin.clone(),
        matrix: a.matrix.clone(),
        ..JobSpec::default()
    };
    let result = CertifyResult {
        matrix: matrix.to_string(),
        is_reflection: certificate.is_reflection(),
        mirror_multiplicity: certificate.mirror_multiplicity(),
        isometry_type,
        order_modulo_scalars: order,
        certificate,
    };
    Ok((job, result))
}

fn load(args: &GroupArgs) -> Result<ParsedPresentation, Failure> {
    if args.truncate == Some(0) {
        return Err(Failure::input("--truncate must be at least 1"));
    }
    load_presentation(&args.file, &ParseOptions { max_relators: args.truncate }).map_err(Failure::input)
}

fn limits(e: &EnumArgs) -> EnumerationLimits {
    EnumerationLimits { max_cosets: e.max_cosets, strategy: e.strategy }
}

/// Stderr progress printer throttled to one line per interval.
struct Progress {
    interval: Option<Duration>,
    last: Mutex<Option<Instant>>,
}

impl Progress {
    fn new(seconds: Option<f64>) -> Self {
        let interval = seconds.filter(|s| *s >= 0.0).map(Duration::from_secs_f64);
        Progress { interval, last: Mutex::new(None) }
    }

    fn report(&self, job: &str, s: &EnumStats) {
        let Some(interval) = self.interval else { return };
        let mut last = self.last.lock().unwrap_or_else(|e| e.into_inner());
        if last.is_some_and(|t| t.elapsed() < interval) {
            return;
        }
        *last = Some(Instant::now());
        eprintln!(
            "[{job}] defined {} live {} max {} coincidences {} ({:.1}s)",
            s.cosets_defined, s.live, s.max_live, s.coincidences, s.elapsed_seconds
        );
    }
}

fn group_job(args: &GroupArgs) -> JobSpec {
    JobSpec {
        input: Some(args.file.display().to_string()),
        truncate: args.truncate,
        strategy: Some(args.enumeration.strategy),
        max_cosets: Some(args.enumeration.max_cosets),
        ..JobSpec::default()
    }
}

fn cmd_order(a: &GroupArgs) -> Result<(JobSpec, OrderResult), Failure> {
    let parsed = load(a)?;
    let progress = Progress::new(a.enumeration.progress);
    let res = todd_coxeter_with_progress(&parsed.presentation, &limits(&a.enumeration), &mut |s| progress.report("order", s));
    let statement = res.index().map(|n| {
        if parsed.truncated {
            format!("order divides {n}")
        } else {
            format!("order = {n}")
        }
    });
    Ok((group_job(a), OrderResult { file: FileInfo::from(&parsed), order: res.index(), statement, enumeration: res }))
}

fn cmd_index(a: &IndexArgs) -> Result<(JobSpec, IndexResult), Failure> {
    let parsed = load(&a.group)?;
    let p = &parsed.presentation;
    let map_path = a.map.clone().or_else(|| Some(sidecar_path(&a.group.file)).filter(|p| p.is_file()));
    let map = match &map_path {
        Some(path) => NameMap::load(path).map_err(Failure::input)?,
        None => NameMap::default(),
    };
    let domain = a.domain.domain()?.or(map.domain);
    let bindings = match (map_path.is_some(), domain) {
        (true, Some(d)) => {
            let checks = map.validate(p, d).map_err(Failure::input)?;
            if let Some(bad) = checks.iter().find(|c| c.is_reflection == Some(false)) {
                return Err(Failure::input(format!("`{}` is bound to a matrix that is not a reflection", bad.name)));
            }
            checks
        }
        _ => Vec::new(),
    };
    let mut words = Vec::new();
    for name in &a.relators {
        words.push(map.resolve(name, p).map_err(|e| Failure::input(format!("relator `{name}`: {e}")))?);
    }
    let q = normal_closure_quotient(p, &words).map_err(Failure::input)?;
    let progress = Progress::new(a.group.enumeration.progress);
    let res = todd_coxeter_with_progress(&q, &limits(&a.group.enumeration), &mut |s| progress.report("index", s));
    let relation = if a.partial || parsed.truncated { Relation::Divides } else { Relation::Equals };
    let mut job = group_job(&a.group);
    job.relators = a.relators.clone();
    job.map = map_path.map(|p| p.display().to_string());
    job.domain = domain.map(|d| d.to_string());
    let result = IndexResult {
        file: FileInfo::from(&parsed),
        added_relators: words.iter().map(|w| p.display_word(w)).collect(),
        bindings,
        relation,
        index: res.index(),
        statement: res.index().map(|n| index_statement(n as u64, relation)),
        enumeration: res,
    };
    Ok((job, result))
}

fn cmd_abelian(a: &GroupArgs) -> Result<(JobSpec, AbelianResult), Failure> {
    let parsed = load(a)?;
    let inv = abelianization(&parsed.presentation);
    let mut job = group_job(a);
    job.strategy = None;
    job.max_cosets = None;
    let result = AbelianResult {
        file: FileInfo::from(&parsed),
        free_rank: inv.free_rank(),
        order: inv.order().map(|n| n.to_string()),
        invariants: inv,
    };
    Ok((job, result))
}

fn cmd_verify(a: &VerifyArgs) -> (JobSpec, hyperrefl::battery::BatteryReport) {
    let data_dir = a
        .data_dir
        .clone()
        .or_else(|| std::env::var_os(DATA_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("data/paper"));
    let opts = BatteryOptions {
        data_dir: data_dir.clone(),
        limits: limits(&a.enumeration),
        execution: Execution::from_jobs(a.jobs),
        skip_slow: a.skip_slow,
    };
    let progress = Progress::new(a.enumeration.progress);
    let sink = |job: &str, s: &EnumStats| progress.report(job, s);
    let report = run_battery(&opts, Some(&sink));
    for f in report.files.iter().filter(|f| f.status != hyperrefl::battery::Status::Pass) {
        match &f.error {
            Some(e) => eprintln!("{}: {e}", f.dataset),
            None => eprintln!("{}: missing (looked for {})", f.dataset, f.searched.join(", ")),
        }
    }
    let job = JobSpec {
        data_dir: Some(data_dir.display().to_string()),
        jobs: Some(a.jobs),
        skip_slow: Some(a.skip_slow),
        strategy: Some(a.enumeration.strategy),
        max_cosets: Some(a.enumeration.max_cosets),
        ..JobSpec::default()
    };
    (job, report)
}
