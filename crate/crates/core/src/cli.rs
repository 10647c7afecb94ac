//! Command-line front end: single-point detection analysis, the three
//! optimizers, Monte Carlo simulation, and figure-style parameter sweeps.
//!
//! Configuration comes from an optional file (flat `key=value` lines or a
//! JSON object) plus `--set key=value` overrides. Any power key may be
//! given in decibels via a `_db` suffix; it is converted to linear at
//! parse time. Output is CSV with a `#`-prefixed comment header carrying
//! the fully resolved configuration, or a JSON mirror via `--format
//! json`. All outputs are deterministic for identical configurations.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::covertness::Infeasible;
use crate::types::{Interval, ParamValue, SystemParams};
use crate::{detection, optimize, oracle, simulate, throughput};

/// Exit code 0 is success; these are the failure codes.
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, message: message.into() }
    }
}

impl From<crate::types::Error> for CliError {
    fn from(e: crate::types::Error) -> Self {
        CliError { code: EXIT_DOMAIN, message: e.to_string() }
    }
}

impl From<Infeasible> for CliError {
    fn from(e: Infeasible) -> Self {
        CliError { code: EXIT_INFEASIBLE, message: e.to_string() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "covertjam", version, about = "Covert communication with a probabilistic jammer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Warden detection analysis: minimum total error and optimal thresholds
    Detect(CommonArgs),
    /// Closed-form throughput-maximizing design
    Optimize {
        /// Whose parameters are being designed
        #[arg(long, value_enum)]
        view: View,
        /// Cross-check the closed form against a brute-force grid oracle
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Maximum-throughput curves versus a swept system parameter
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo validation of detection and outage closed forms
    Simulate(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Configuration file: flat key=value lines or a JSON object
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override or supply a single key, e.g. --set pa=0.5 or --set pm_db=10
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum View {
    Jammer,
    Alice,
    Global,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Axis {
    Epsilon,
    PmOverSigma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Csv,
    Json,
}

/// Key-value configuration with `_db` conversion and a record of every
/// resolved value (defaults included) for the output header.
struct Config {
    raw: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Config {
    fn load(args: &CommonArgs) -> Result<Self, CliError> {
        let mut raw = BTreeMap::new();
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
            if text.trim_start().starts_with('{') {
                let map: serde_json::Map<String, serde_json::Value> = serde_json::from_str(&text)
                    .map_err(|e| CliError::config(format!("invalid JSON config: {e}")))?;
                for (k, v) in map {
                    let s = match v {
                        serde_json::Value::String(s) => s,
                        other => other.to_string(),
                    };
                    raw.insert(k, s);
                }
            } else {
                for (lineno, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let (k, v) = line.split_once('=').ok_or_else(|| {
                        CliError::config(format!("line {}: expected key=value", lineno + 1))
                    })?;
                    raw.insert(k.trim().to_string(), v.trim().to_string());
                }
            }
        }
        for kv in &args.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::config(format!("--set {kv}: expected key=value")))?;
            raw.insert(k.trim().to_string(), v.trim().to_string());
        }
        // decibel inputs: key_db -> key, converted to linear
        let db_keys: Vec<String> = raw.keys().filter(|k| k.ends_with("_db")).cloned().collect();
        for k in db_keys {
            let v = raw.remove(&k).expect("key just listed");
            let db: f64 = v
                .parse()
                .map_err(|_| CliError::config(format!("{k}: invalid number '{v}'")))?;
            let base = k.trim_end_matches("_db").to_string();
            raw.insert(base, format!("{}", 10.0f64.powf(db / 10.0)));
        }
        Ok(Config { raw, resolved: BTreeMap::new() })
    }

    fn require_f64(&mut self, key: &str) -> Result<f64, CliError> {
        match self.raw.get(key) {
            None => Err(CliError::config(format!("missing required key: {key}"))),
            Some(v) => {
                let x: f64 = v
                    .parse()
                    .map_err(|_| CliError::config(format!("{key}: invalid number '{v}'")))?;
                self.resolved.insert(key.to_string(), v.clone());
                Ok(x)
            }
        }
    }

    fn f64_or(&mut self, key: &str, default: f64) -> Result<f64, CliError> {
        if self.raw.contains_key(key) {
            self.require_f64(key)
        } else {
            self.resolved.insert(key.to_string(), format!("{default}"));
            Ok(default)
        }
    }

    fn u64_or(&mut self, key: &str, default: u64) -> Result<u64, CliError> {
        match self.raw.get(key) {
            None => {
                self.resolved.insert(key.to_string(), format!("{default}"));
                Ok(default)
            }
            Some(v) => {
                let x: u64 = v
                    .parse()
                    .map_err(|_| CliError::config(format!("{key}: invalid integer '{v}'")))?;
                self.resolved.insert(key.to_string(), v.clone());
                Ok(x)
            }
        }
    }

    fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.resolved.insert(key.to_string(), value.to_string());
    }
}

/// A tabular report: ordered columns, preformatted cells, and the
/// resolved configuration for the header.
struct Report {
    config: BTreeMap<String, String>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (k, v) in &self.config {
                    let _ = writeln!(out, "# {k}={v}");
                }
                let _ = writeln!(out, "{}", self.columns.join(","));
                for row in &self.rows {
                    let _ = writeln!(out, "{}", row.join(","));
                }
                out
            }
            Format::Json => {
                let mut root = serde_json::Map::new();
                let config: serde_json::Map<String, serde_json::Value> = self
                    .config
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                root.insert("config".into(), config.into());
                root.insert(
                    "columns".into(),
                    self.columns.iter().map(|c| serde_json::Value::from(*c)).collect(),
                );
                let records: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let rec: serde_json::Map<String, serde_json::Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), serde_json::Value::from(v.clone())))
                            .collect();
                        rec.into()
                    })
                    .collect();
                root.insert("records".into(), records.into());
                let mut s = serde_json::to_string_pretty(&serde_json::Value::from(root))
                    .expect("string-valued JSON tree");
                s.push('\n');
                s
            }
        }
    }
}

fn fmt_interval(iv: &Interval) -> String {
    if iv.is_point() {
        return format!("{{{}}}", iv.lo);
    }
    let l = if iv.lo_open { '(' } else { '[' };
    let r = if iv.hi_open { ')' } else { ']' };
    format!("{l}{}..{}{r}", iv.lo, iv.hi)
}

fn fmt_value(v: &ParamValue) -> String {
    match v {
        ParamValue::Point(x) => format!("{x}"),
        ParamValue::Range(iv) => fmt_interval(iv),
    }
}

fn detect_params(cfg: &mut Config) -> Result<SystemParams, CliError> {
    // epsilon/pm/rate do not influence the detection analysis; benign
    // defaults keep the parameter set valid
    Ok(SystemParams {
        pa: cfg.require_f64("pa")?,
        pmin: cfg.require_f64("pmin")?,
        pmax: cfg.require_f64("pmax")?,
        pj: cfg.require_f64("pj")?,
        sigma_w2: cfg.f64_or("sigma_w2", 1.0)?,
        sigma_b2: cfg.f64_or("sigma_b2", 1.0)?,
        epsilon: 0.25,
        pm: 1.0,
        rate: 0.0,
    }
    .validated()?)
}

fn cmd_detect(cfg: &mut Config) -> Result<Report, CliError> {
    let params = detect_params(cfg)?;
    let result = detection::min_detection_error(&params);
    let gamma = result
        .gamma_star
        .iter()
        .map(fmt_interval)
        .collect::<Vec<_>>()
        .join("|");
    Ok(Report {
        config: cfg.resolved.clone(),
        columns: vec!["xi_star", "gamma_star", "gamma_representative", "case"],
        rows: vec![vec![
            format!("{}", result.xi_star),
            gamma,
            format!("{}", result.gamma_representative()),
            result.case.label().to_string(),
        ]],
    })
}

fn solution_cell(sol: &crate::types::DesignSolution, name: &str) -> String {
    sol.assignments
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| fmt_value(v))
        .or_else(|| sol.representative_value(name).map(|x| format!("{x}")))
        .unwrap_or_default()
}

fn cmd_optimize(cfg: &mut Config, view: View, verify: bool) -> Result<Report, CliError> {
    let sigma_b2 = cfg.f64_or("sigma_b2", 1.0)?;
    let epsilon = cfg.require_f64("epsilon")?;
    let pm = cfg.require_f64("pm")?;
    let (sol, oracle_omega) = match view {
        View::Jammer => {
            let pa = cfg.require_f64("pa")?;
            let rate = cfg.require_f64("rate")?;
            let sol = optimize::optimize_jammer(pa, rate, epsilon, pm, sigma_b2)?;
            let oracle = verify
                .then(|| oracle::max_omega_jammer(pa, rate, epsilon, pm, sigma_b2, 30, 3))
                .flatten();
            (sol, oracle)
        }
        View::Alice => {
            let pj = cfg.require_f64("pj")?;
            let pmin = cfg.require_f64("pmin")?;
            let pmax = cfg.require_f64("pmax")?;
            let sol = optimize::optimize_alice(pj, pmin, pmax, epsilon, pm, sigma_b2)?;
            let oracle = verify.then(|| {
                let pa = oracle::max_covert_pa(pj, pmin, pmax, epsilon);
                let c_f = (1.0 + pa / sigma_b2).log2();
                (1..=4000)
                    .map(|i| {
                        let p = SystemParams {
                            pa,
                            pmin,
                            pmax,
                            pj,
                            sigma_w2: 1.0,
                            sigma_b2,
                            epsilon,
                            pm,
                            rate: c_f * i as f64 / 4000.0,
                        };
                        throughput::covert_throughput(&p)
                    })
                    .fold(f64::NEG_INFINITY, f64::max)
            });
            (sol, oracle)
        }
        View::Global => {
            let sol = optimize::optimize_global(epsilon, pm, sigma_b2);
            let oracle = verify
                .then(|| oracle::max_omega_global(epsilon, pm, sigma_b2, 16, 4))
                .flatten();
            (sol, oracle)
        }
    };

    let mut columns = vec![
        "view", "case", "omega_star", "pa", "pj", "pmin", "pmax", "rate",
    ];
    let mut row = vec![
        format!("{:?}", view).to_lowercase(),
        sol.case.label().to_string(),
        format!("{}", sol.omega_star),
        solution_cell(&sol, "pa"),
        solution_cell(&sol, "pj"),
        solution_cell(&sol, "pmin"),
        solution_cell(&sol, "pmax"),
        solution_cell(&sol, "rate"),
    ];
    if verify {
        let oracle_omega = oracle_omega.unwrap_or(f64::NEG_INFINITY);
        let gap = (sol.omega_star - oracle_omega).abs() / sol.omega_star.abs().max(1e-12);
        columns.extend(["oracle_omega", "oracle_gap"]);
        row.push(format!("{oracle_omega}"));
        row.push(format!("{gap}"));
    }
    Ok(Report { config: cfg.resolved.clone(), columns, rows: vec![row] })
}

fn cmd_sweep(cfg: &mut Config, axis: Axis) -> Result<Report, CliError> {
    let sigma_b2 = cfg.f64_or("sigma_b2", 1.0)?;
    let (start, stop, step) = match axis {
        Axis::Epsilon => (
            cfg.f64_or("sweep_start", 0.05)?,
            cfg.f64_or("sweep_stop", 0.45)?,
            cfg.f64_or("sweep_step", 0.05)?,
        ),
        // decibel axis, matching the usual presentation of power ratios
        Axis::PmOverSigma => (
            cfg.f64_or("sweep_start", -10.0)?,
            cfg.f64_or("sweep_stop", 30.0)?,
            cfg.f64_or("sweep_step", 2.0)?,
        ),
    };
    if !(step > 0.0 && stop >= start) {
        return Err(CliError::config(format!(
            "invalid sweep range: start={start} stop={stop} step={step}"
        )));
    }
    let fixed = match axis {
        Axis::Epsilon => {
            cfg.note("axis", "epsilon");
            cfg.require_f64("pm")?
        }
        Axis::PmOverSigma => {
            cfg.note("axis", "pm_over_sigma_db");
            cfg.require_f64("epsilon")?
        }
    };

    let mut rows = Vec::new();
    let mut i = 0u64;
    loop {
        let x = start + i as f64 * step;
        if x > stop + 1e-9 * step {
            break;
        }
        i += 1;
        let (epsilon, pm) = match axis {
            Axis::Epsilon => (x, fixed),
            Axis::PmOverSigma => (fixed, 10.0f64.powf(x / 10.0) * sigma_b2),
        };
        if !(epsilon > 0.0 && epsilon < 0.5 && pm > 0.0) {
            rows.push(vec![format!("{x}"), "infeasible".into(), "infeasible".into(),
                String::new(), String::new(), String::new(), String::new(), String::new(),
                String::new()]);
            continue;
        }
        let sol = optimize::optimize_global(epsilon, pm, sigma_b2);
        let base = optimize::continuous_baseline(epsilon, pm, sigma_b2);
        let rate = sol.representative_value("rate").expect("rate in representative");
        let pa = sol.representative_value("pa").expect("pa in representative");
        let choice = if pm / sigma_b2 >= optimize::rho_star(epsilon) { "Cf" } else { "Cn" };
        rows.push(vec![
            format!("{x}"),
            format!("{}", sol.omega_star),
            format!("{}", base.omega_star),
            format!("{rate}"),
            format!("{pa}"),
            format!("{}", sol.representative_value("pj").expect("pj")),
            format!("{}", sol.representative_value("pmin").expect("pmin")),
            format!("{}", sol.representative_value("pmax").expect("pmax")),
            choice.to_string(),
        ]);
    }
    Ok(Report {
        config: cfg.resolved.clone(),
        columns: vec![
            "axis", "omega_p", "omega_c", "rate", "pa", "pj", "pmin", "pmax", "rate_choice",
        ],
        rows,
    })
}

fn cmd_simulate(cfg: &mut Config) -> Result<Report, CliError> {
    let mut params = detect_params(cfg)?;
    params.rate = cfg.require_f64("rate")?;
    let sim_cfg = simulate::SimConfig {
        symbols_per_slot: cfg.u64_or("symbols_per_slot", 100_000)?,
        trials: cfg.u64_or("trials", 10_000)?,
        seed: cfg.u64_or("seed", 0)?,
        hypothesis_mix: cfg.f64_or("hypothesis_mix", 0.5)?,
    };
    if sim_cfg.symbols_per_slot == 0 || sim_cfg.trials == 0 {
        return Err(CliError {
            code: EXIT_DOMAIN,
            message: "symbols_per_slot and trials must be positive".into(),
        });
    }
    let analytic = detection::min_detection_error(&params);
    let gamma = cfg.f64_or("gamma", analytic.gamma_representative())?;
    let det = simulate::simulate_detection(&params, gamma, &sim_cfg);
    let lambda = throughput::outage(&params);
    let out = simulate::simulate_outage(&params, &sim_cfg);
    Ok(Report {
        config: cfg.resolved.clone(),
        columns: vec![
            "gamma", "xi_star", "xi_hat", "xi_se", "pfa_hat", "pmd_hat", "lambda", "lambda_hat",
            "lambda_se", "omega", "omega_hat", "omega_se",
        ],
        rows: vec![vec![
            format!("{gamma}"),
            format!("{}", analytic.xi_star),
            format!("{}", det.xi.value),
            format!("{}", det.xi.std_err),
            format!("{}", det.p_fa.value),
            format!("{}", det.p_md.value),
            format!("{lambda}"),
            format!("{}", out.lambda.value),
            format!("{}", out.lambda.std_err),
            format!("{}", throughput::covert_throughput(&params)),
            format!("{}", out.omega.value),
            format!("{}", out.omega.std_err),
        ]],
    })
}

/// Run a full command line (without the program name) and return the
/// rendered report text. Also writes it to `--output` when given.
pub fn execute<I, S>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("covertjam"))
        .chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            CliError { code: 0, message: e.to_string() }
        }
        _ => CliError::config(e.to_string()),
    })?;
    let (common, report) = match &cli.command {
        Command::Detect(common) => {
            let mut cfg = Config::load(common)?;
            (common, cmd_detect(&mut cfg)?)
        }
        Command::Optimize { view, verify, common } => {
            let mut cfg = Config::load(common)?;
            (common, cmd_optimize(&mut cfg, *view, *verify)?)
        }
        Command::Sweep { axis, common } => {
            let mut cfg = Config::load(common)?;
            (common, cmd_sweep(&mut cfg, *axis)?)
        }
        Command::Simulate(common) => {
            let mut cfg = Config::load(common)?;
            (common, cmd_simulate(&mut cfg)?)
        }
    };
    let text = report.render(common.format);
    if let Some(path) = &common.output {
        std::fs::write(path, &text)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Process entry point: prints the report (or the error) and returns the
/// process exit code.
pub fn run() -> i32 {
    match execute(std::env::args().skip(1)) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) if e.code == 0 => {
            // help or version text
            println!("{}", e.message);
            0
        }
        Err(e) => {
            eprintln!("{}", e.message);
            e.code
        }
    }
}
