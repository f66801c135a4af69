//! Batch front end: family files, measurements, invariant verification,
//! example reproduction, sweeps and export.
//!
//! Every command produces a [`Report`]; [`run`] parses arguments, executes
//! the command and renders the output without touching the process, so the
//! binary and the tests share one code path.

pub mod error;
pub mod file;
pub mod quantity;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mnc_core::certificates::Corruption;
use mnc_core::checks::{axiom_checks, certificate_checks, certificate_inputs, sandwich_checks, InvariantCheck};
use mnc_core::digest::short_digest;
use mnc_core::examples::{generate, reproduce, ExampleSpec, Scale, EXAMPLES};
use mnc_core::family::FunctionFamily;
use mnc_core::random::{campaign, FamilyLimits};
use mnc_core::{Error as CoreError, Mode, SolverConfig, Tolerance};

pub use error::{CliError, CliResult};
use quantity::{BudgetRange, BudgetRequest, Context, Measure, FAMILY_POOL, IMAGE_CENTERS};
pub use report::{Environment, Report, Row, Tally};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mnc", version, about = "Budgeted measures of noncompactness for finite function families")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Largest point count handled by the exact partition solver.
    #[arg(long, global = true, env = "MNC_EXACT_CAP")]
    pub exact_cap: Option<usize>,
    /// exact, heuristic or auto.
    #[arg(long, global = true, env = "MNC_MODE", default_value = "exact")]
    pub mode: Mode,
    /// Relative tolerance.
    #[arg(long, global = true, env = "MNC_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, env = "MNC_SEED")]
    pub seed: Option<u64>,
    /// Output format; sweeps default to csv, everything else to json.
    #[arg(long, global = true, env = "MNC_FORMAT")]
    pub format: Option<Format>,
    /// Size of the solver thread pool.
    #[arg(long, global = true, env = "MNC_THREADS")]
    pub threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute characteristics of a family file.
    Measure(MeasureArgs),
    /// Run sandwich, axiom and certificate checks on a file or a random campaign.
    Verify(VerifyArgs),
    /// Evaluate an example's expected-value table.
    Reproduce(ReproduceArgs),
    /// Long-format trend data over budgets or an example scale parameter.
    Sweep(SweepArgs),
    /// Write an example as a family file.
    Export(ExportArgs),
    /// List the example generators.
    List,
}

#[derive(Debug, Clone, Args)]
pub struct Selection {
    /// Quantities to compute (comma separated); defaults to all applicable.
    #[arg(long = "quantity", short = 'q', value_delimiter = ',')]
    pub quantities: Vec<Measure>,
    /// Single budget for k and n.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Number of correction functions for omega-ext.
    #[arg(long)]
    pub budget_m: Option<usize>,
    /// Budget range such as `n=1..5`, `k=2` or `1..4` (k and n).
    #[arg(long = "sweep")]
    pub sweeps: Vec<BudgetRange>,
    /// Correction / center pool: a named pool, `family`, or a function name.
    #[arg(long, default_value = FAMILY_POOL)]
    pub pool: String,
    /// Center set for sigma-gamma: a named set or `image`.
    #[arg(long, default_value = IMAGE_CENTERS)]
    pub centers: String,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub select: Selection,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Family file; omit with `--random`.
    #[arg(required_unless_present = "random")]
    pub file: Option<PathBuf>,
    /// Number of seeded random families to check.
    #[arg(long, conflicts_with = "file")]
    pub random: Option<usize>,
    /// Run the certificate constructions on corrupted witnesses.
    #[arg(long)]
    pub corrupt: Option<Corruption>,
    #[arg(long, default_value_t = FamilyLimits::default().max_domain)]
    pub max_domain: usize,
    #[arg(long, default_value_t = FamilyLimits::default().max_functions)]
    pub max_functions: usize,
    #[arg(long, default_value_t = FamilyLimits::default().max_dim)]
    pub max_dim: usize,
}

/// Example scale parameters. The global `--seed` doubles as the example seed.
#[derive(Debug, Clone, Default, Args)]
pub struct ScaleArgs {
    #[arg(long = "K")]
    pub k: Option<u64>,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub balls: Option<u64>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub antipodal: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub grid: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Any scale parameter as `key=value`.
    #[arg(long = "scale", value_parser = parse_key_val)]
    pub extra: Vec<(String, u64)>,
}

fn parse_key_val(s: &str) -> Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?))
}

impl ScaleArgs {
    pub fn to_scale(&self, seed: Option<u64>) -> Scale {
        let named = [
            ("K", self.k),
            ("N", self.n),
            ("d", self.d),
            ("balls", self.balls),
            ("samples", self.samples),
            ("antipodal", self.antipodal),
            ("t", self.t),
            ("n_max", self.n_max),
            ("grid", self.grid),
            ("p", self.p),
            ("seed", seed),
        ];
        let mut s = Scale::new();
        for (k, v) in named {
            if let Some(v) = v {
                s = s.with(k, v);
            }
        }
        for (k, v) in &self.extra {
            s = s.with(k, *v);
        }
        s
    }
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    pub name: String,
    #[command(flatten)]
    pub scale: ScaleArgs,
}

/// A scale parameter swept over `lo..hi` or a comma list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRange {
    pub key: String,
    pub values: Vec<u64>,
}

impl std::str::FromStr for ParamRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (key, r) = s.split_once('=').ok_or_else(|| format!("expected key=range, got `{s}`"))?;
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}`: {e}"));
        let values = match r.split_once("..") {
            Some((a, b)) => (num(a)?..=num(b.trim_start_matches('='))?).collect(),
            None => r.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        };
        if values.is_empty() {
            return Err(format!("empty range `{s}`"));
        }
        Ok(ParamRange {
            key: key.trim().to_string(),
            values,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Example generator to sweep.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    pub example: Option<String>,
    /// Family file to sweep over budgets.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Example scale parameter range such as `K=2..6` or `samples=4,8,16`.
    #[arg(long, requires = "example")]
    pub param: Option<ParamRange>,
    #[command(flatten)]
    pub scale: ScaleArgs,
    #[command(flatten)]
    pub select: Selection,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    pub name: String,
    #[command(flatten)]
    pub scale: ScaleArgs,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl GlobalArgs {
    pub fn config(&self) -> CliResult<SolverConfig> {
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(CliError::input("--tol must be a nonnegative number"));
        }
        let mut cfg = SolverConfig {
            tol: Tolerance(self.tol),
            ..SolverConfig::default()
        };
        if let Some(c) = self.exact_cap {
            cfg.caps.alpha_points = c;
        }
        Ok(cfg)
    }

    fn environment(&self, cfg: &SolverConfig) -> Environment {
        Environment {
            seed: self.seed.unwrap_or(0),
            mode: self.mode,
            caps: cfg.caps,
            tolerance: cfg.tol.0,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
        }
    }
}

fn read_family_file(path: &PathBuf) -> CliResult<ExampleSpec> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    file::parse(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn example(name: &str, scale: &Scale) -> CliResult<ExampleSpec> {
    if !EXAMPLES.iter().any(|(n, _)| *n == name) {
        let names: Vec<&str> = EXAMPLES.iter().map(|(n, _)| *n).collect();
        return Err(CliError::input(format!("unknown example `{name}` (available: {})", names.join(", "))));
    }
    Ok(generate(name, scale)?)
}

fn scale_label(scale: &Scale) -> String {
    scale.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

fn selected(select: &Selection, ex: &ExampleSpec) -> Vec<Measure> {
    if !select.quantities.is_empty() {
        return select.quantities.clone();
    }
    let mut qs = Measure::FAMILY.to_vec();
    if ex.ck.is_some() {
        qs.extend(Measure::CK);
    }
    qs
}

pub fn cmd_measure(g: &GlobalArgs, a: &MeasureArgs) -> CliResult<Report> {
    let cfg = g.config()?;
    let ex = read_family_file(&a.file)?;
    let qs = selected(&a.select, &ex);
    let req = BudgetRequest::new(a.select.budget, a.select.budget_m, &a.select.sweeps)?;
    let mut report = Report::new("measure", ex.name.clone(), short_digest(&(&ex.family, &ex.ck)), g.environment(&cfg));
    let ctx = Context::new(ex, &a.select.pool, &a.select.centers, g.mode, cfg)?;
    for q in qs {
        report.rows.extend(ctx.rows(q, &req)?);
    }
    Ok(report.seal())
}

fn suite(report: &mut Report, name: &str, prefix: &str, checks: Vec<InvariantCheck>, keep_all: bool) {
    let tally = report.summary.entry(name.to_string()).or_default();
    for mut c in checks {
        tally.total += 1;
        if !c.pass {
            tally.failed += 1;
            report.pass = false;
            if !keep_all {
                c.name = format!("{prefix}{}", c.name);
                report.failures.push(c);
                continue;
            }
        }
        if keep_all {
            if !c.pass {
                report.failures.push(c.clone());
            }
            report.checks.push(c);
        }
    }
}

/// Runs the corrupted certificate inputs as if they were genuine; every
/// rejection is reported as a failed check with the violated constraint.
pub fn corrupted_checks(m: &FunctionFamily, mode: Corruption, cfg: &SolverConfig) -> CliResult<Vec<InvariantCheck>> {
    let mut out = Vec::new();
    for input in certificate_inputs(m, cfg)? {
        let name = format!("certificate {} ({mode})", input.construction());
        match input.corrupt(m, mode).run(m, cfg) {
            Ok(r) => out.push(InvariantCheck {
                name,
                budget: String::new(),
                lhs: r.measured,
                rhs: r.claimed,
                pass: r.pass,
                detail: None,
            }),
            Err(e @ CoreError::Rejected { .. }) => out.push(InvariantCheck {
                name,
                budget: String::new(),
                lhs: f64::NAN,
                rhs: f64::NAN,
                pass: false,
                detail: Some(e.to_string()),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn verify_family(
    report: &mut Report,
    m: &FunctionFamily,
    prefix: &str,
    corrupt: Option<Corruption>,
    cfg: &SolverConfig,
    keep_all: bool,
) -> CliResult<()> {
    suite(report, "sandwich", prefix, sandwich_checks(m, cfg)?, keep_all);
    suite(report, "axioms", prefix, axiom_checks(m, cfg)?, keep_all);
    let certs = match corrupt {
        None => certificate_checks(m, cfg)?,
        Some(mode) => corrupted_checks(m, mode, cfg)?,
    };
    suite(report, "certificates", prefix, certs, keep_all);
    Ok(())
}

pub fn cmd_verify(g: &GlobalArgs, a: &VerifyArgs) -> CliResult<Report> {
    let cfg = g.config()?;
    let env = g.environment(&cfg);
    if let Some(count) = a.random {
        let limits = FamilyLimits {
            max_domain: a.max_domain,
            max_functions: a.max_functions,
            max_dim: a.max_dim,
        };
        if limits.max_domain == 0 || limits.max_functions == 0 || limits.max_dim == 0 {
            return Err(CliError::input("family limits must be positive"));
        }
        let seed = g.seed.unwrap_or(0);
        let families = campaign(seed, count, limits)?;
        let digests: Vec<String> = families.iter().map(short_digest).collect();
        let mut report = Report::new(
            "verify",
            format!("random(count={count},seed={seed})"),
            short_digest(&digests),
            env,
        );
        for (i, m) in families.iter().enumerate() {
            verify_family(&mut report, m, &format!("family {i} [{}]: ", digests[i]), a.corrupt, &cfg, false)?;
        }
        return Ok(report.seal());
    }
    let path = a.file.as_ref().ok_or_else(|| CliError::input("a family file or --random is required"))?;
    let ex = read_family_file(path)?;
    let mut report = Report::new("verify", ex.name.clone(), short_digest(&ex.family), env);
    verify_family(&mut report, &ex.family, "", a.corrupt, &cfg, true)?;
    Ok(report.seal())
}

pub fn cmd_reproduce(g: &GlobalArgs, a: &ReproduceArgs) -> CliResult<Report> {
    let cfg = g.config()?;
    let scale = a.scale.to_scale(g.seed);
    let ex = example(&a.name, &scale)?;
    let mut report = Report::new(
        "reproduce",
        format!("{}({})", a.name, scale_label(&scale)),
        short_digest(&(&ex.family, &ex.ck)),
        g.environment(&cfg),
    );
    report.reproduction = reproduce(&ex, g.mode, &cfg)?;
    report.pass = report.reproduction.iter().all(|r| r.pass);
    Ok(report.seal())
}

pub fn cmd_sweep(g: &GlobalArgs, a: &SweepArgs) -> CliResult<Report> {
    let cfg = g.config()?;
    let req = BudgetRequest::new(a.select.budget, a.select.budget_m, &a.select.sweeps)?;
    let env = g.environment(&cfg);
    let mut runs: Vec<(String, ExampleSpec)> = Vec::new();
    let subject = match (&a.example, &a.file) {
        (Some(name), _) => {
            let base = a.scale.to_scale(g.seed);
            match &a.param {
                Some(p) => {
                    for &v in &p.values {
                        let scale = base.clone().with(&p.key, v);
                        runs.push((format!("{}={v}", p.key), example(name, &scale)?));
                    }
                    format!("{name}({})", scale_label(&base))
                }
                None => {
                    runs.push((scale_label(&base), example(name, &base)?));
                    format!("{name}({})", scale_label(&base))
                }
            }
        }
        (None, Some(path)) => {
            let ex = read_family_file(path)?;
            let name = ex.name.clone();
            runs.push((name.clone(), ex));
            name
        }
        (None, None) => return Err(CliError::input("--example or --file is required")),
    };
    let digests: Vec<String> = runs.iter().map(|(_, ex)| short_digest(&(&ex.family, &ex.ck))).collect();
    let mut report = Report::new("sweep", subject, short_digest(&digests), env);
    for (label, ex) in runs {
        let mut cfg = cfg;
        cfg.caps.alpha_points = cfg.caps.alpha_points.max(ex.alpha_cap);
        let qs = selected(&a.select, &ex);
        let ctx = Context::new(ex, &a.select.pool, &a.select.centers, g.mode, cfg)?;
        for q in qs {
            for mut row in ctx.rows(q, &req)? {
                row.scale = Some(label.clone());
                report.rows.push(row);
            }
        }
    }
    Ok(report.seal())
}

fn render(g: &GlobalArgs, report: &Report, default: Format) -> String {
    match g.format.unwrap_or(default) {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn execute(cli: &Cli) -> CliResult<(String, Option<Report>, i32)> {
    let g = &cli.global;
    let finish = |r: Report, default: Format| {
        let code = if r.pass { EXIT_OK } else { EXIT_INVARIANT };
        let text = render(g, &r, default);
        Ok((text, Some(r), code))
    };
    match &cli.command {
        Command::Measure(a) => finish(cmd_measure(g, a)?, Format::Json),
        Command::Verify(a) => finish(cmd_verify(g, a)?, Format::Json),
        Command::Reproduce(a) => finish(cmd_reproduce(g, a)?, Format::Json),
        Command::Sweep(a) => finish(cmd_sweep(g, a)?, Format::Csv),
        Command::Export(a) => {
            let ex = example(&a.name, &a.scale.to_scale(g.seed))?;
            Ok((file::to_json(&file::export(&ex)), None, EXIT_OK))
        }
        Command::List => {
            let mut s = String::new();
            for (name, about) in EXAMPLES {
                s.push_str(&format!("{name:16} {about}\n"));
            }
            Ok((s, None, EXIT_OK))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new(), report: None }
            } else {
                Outcome { code, stdout: String::new(), stderr: text, report: None }
            };
        }
    };
    let result = match cli.global.threads {
        Some(0) => Err(CliError::input("--threads must be positive")),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::input(format!("cannot build thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok((text, report, code)) => match &cli.global.output {
            Some(path) => match std::fs::write(path, &text) {
                Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new(), report },
                Err(e) => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: format!("cannot write {}: {e}\n", path.display()),
                    report,
                },
            },
            None => Outcome { code, stdout: text, stderr: String::new(), report },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            report: None,
        },
    }
}

/// Per-check-name totals, used to summarize campaign reports.
pub fn tally_by_name(checks: &[InvariantCheck]) -> BTreeMap<String, Tally> {
    let mut out: BTreeMap<String, Tally> = BTreeMap::new();
    for c in checks {
        let t = out.entry(c.name.clone()).or_default();
        t.total += 1;
        t.failed += usize::from(!c.pass);
    }
    out
}
