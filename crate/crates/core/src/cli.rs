//! Command-line front end: flag parsing, the per-command runners and table output.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rug::Float;
use serde_json::{Map, Value};

use crate::asymptotic::{constants, estimate, AsymConstants};
use crate::error::{Error, Result};
use crate::exact::{exact_counts, pentagonal_counts, BigCountTable};
use crate::models::{l_data, parse_spec, LambdaSpec};
use crate::saddle::{
    cauchy_log_count_ctx, default_quad_points, solve_saddle, verify_arc_bound, verify_phi_expansion,
};
use crate::Precision;

/// Beyond this `n`, `compare` leaves `log_cauchy` empty unless `--quad-points` is given.
pub const COMPARE_CAUCHY_LIMIT: u64 = 5000;

/// Smallest `n_max` accepted by `fit`.
pub const FIT_MIN_NMAX: u64 = 2000;

const FIT_SAMPLES: u64 = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    /// Small-σ expansion of Φ.
    Phi,
    /// Decay of |F| away from the positive axis.
    Arc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Exact,
    Estimate,
    Cauchy,
    Compare,
    Fit,
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "partition-saddle", version, about = "Exact counts, saddle-point numerics and asymptotics of restricted partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Part set, e.g. `classical`, `powers(2)`, `ap(3,4,1)`, `poly(1,0,1)`, `unionap(1,2;2,3)`, `kpow1(2,1)`.
    #[arg(long)]
    pub spec: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS, value_parser = clap::value_parser!(u32).range(10..=1000))]
    pub digits: u32,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// Exact counts p(0..=nmax).
    Exact {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        nmax: u64,
    },
    /// Closed-form asymptotic estimate at one n.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        order: u8,
    },
    /// Cauchy-integral evaluation at one n.
    Cauchy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        quad_points: Option<usize>,
    },
    /// Exact counts against the estimates on a 1-2-5 ladder up to nmax.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
        order: u8,
        #[arg(long)]
        quad_points: Option<usize>,
    },
    /// Least-squares fit of the first correction coefficient.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        nmax: u64,
    },
    /// Numerical checks of the Φ expansion or the arc decay.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        check: Check,
        /// Include the σ^j correction terms (phi check).
        #[arg(long)]
        strong: bool,
        /// n for the arc check.
        #[arg(long, default_value_t = 500)]
        n: u64,
        /// Grid points for the arc check.
        #[arg(long, default_value_t = 4000)]
        grid: usize,
    },
}

/// Fully validated settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: LambdaSpec,
    /// `n` for single-point commands, `n_max` for ranges.
    pub n: u64,
    pub order: u8,
    pub format: Format,
    pub precision_digits: u32,
    pub quad_points: Option<usize>,
    pub check: Check,
    pub strong: bool,
    pub grid: usize,
}

impl RunConfig {
    pub fn new(command: CommandKind, spec: LambdaSpec, n: u64) -> Self {
        RunConfig {
            command,
            spec,
            n,
            order: 1,
            format: Format::Csv,
            precision_digits: Precision::DEFAULT_DIGITS,
            quad_points: None,
            check: Check::Phi,
            strong: false,
            grid: 4000,
        }
    }

    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (kind, common, n) = match &cli.command {
            Commands::Exact { common, nmax } => (CommandKind::Exact, common, *nmax),
            Commands::Estimate { common, n, .. } => (CommandKind::Estimate, common, *n),
            Commands::Cauchy { common, n, .. } => (CommandKind::Cauchy, common, *n),
            Commands::Compare { common, nmax, .. } => (CommandKind::Compare, common, *nmax),
            Commands::Fit { common, nmax } => (CommandKind::Fit, common, *nmax),
            Commands::Verify { common, n, .. } => (CommandKind::Verify, common, *n),
        };
        let mut cfg = RunConfig::new(kind, parse_spec(&common.spec)?, n);
        cfg.format = common.format;
        cfg.precision_digits = common.digits;
        match cli.command {
            Commands::Estimate { order, .. } => cfg.order = order,
            Commands::Cauchy { quad_points, .. } => cfg.quad_points = quad_points,
            Commands::Compare { order, quad_points, .. } => {
                cfg.order = order;
                cfg.quad_points = quad_points;
            }
            Commands::Verify { check, strong, grid, .. } => {
                cfg.check = check;
                cfg.strong = strong;
                cfg.grid = grid;
            }
            _ => {}
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.quad_points.is_some() && !matches!(self.command, CommandKind::Cauchy | CommandKind::Compare) {
            return Err(Error::Argument("--quad-points only applies to cauchy and compare".into()));
        }
        if self.order > 1 {
            return Err(Error::Argument(format!("order must be 0 or 1, got {}", self.order)));
        }
        if !(10..=1000).contains(&self.precision_digits) {
            return Err(Error::Argument(format!("digits must be in 10..=1000, got {}", self.precision_digits)));
        }
        if self.command != CommandKind::Exact && self.n < 1 {
            return Err(Error::Argument("n must be at least 1".into()));
        }
        Ok(())
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.precision_digits)
    }
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) if !v.is_finite() => String::new(),
            Cell::Real(v) if *v == 0.0 || (1e-4..1e15).contains(&v.abs()) => v.to_string(),
            Cell::Real(v) => format!("{v:e}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rows with a fixed header; diagnostics go to `notes`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

fn real_or_empty(v: Option<f64>) -> Cell {
    v.filter(|x| x.is_finite()).map_or(Cell::Empty, Cell::Real)
}

fn decimal(x: &Float) -> String {
    format!("{x:.30}")
}

/// Exact table for `Λ`, through the pentagonal recurrence for the classical set.
pub fn counts_for(spec: &LambdaSpec, n_max: u64) -> Result<BigCountTable> {
    let n_max = i64::try_from(n_max).map_err(|_| Error::Argument("n_max is too large".into()))?;
    match spec {
        LambdaSpec::Classical => pentagonal_counts(n_max),
        _ => exact_counts(&spec.parts_up_to(n_max as u64), n_max),
    }
}

/// `1, 2, 5, 10, 20, 50, …` up to `n_max`, ending at `n_max`.
pub fn ladder(n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let Some(v) = decade.checked_mul(m) else { break 'outer };
            if v > n_max {
                break 'outer;
            }
            out.push(v);
        }
        match decade.checked_mul(10) {
            Some(d) => decade = d,
            None => break,
        }
    }
    if out.last() != Some(&n_max) && n_max >= 1 {
        out.push(n_max);
    }
    out
}

fn asym_constants(cfg: &RunConfig) -> Result<AsymConstants> {
    constants(&l_data(&cfg.spec, cfg.precision())?)
}

fn degraded_note(spec: &LambdaSpec) -> String {
    format!("warning: L(−1) is unavailable for {spec}; order 1 applied the γ₁₀ correction only")
}

pub fn run_exact(cfg: &RunConfig) -> Result<Table> {
    let table = counts_for(&cfg.spec, cfg.n)?;
    let mut out = Table::new(&["n", "count"]);
    for (n, c) in table.counts().iter().enumerate() {
        out.rows.push(vec![Cell::Int(n as u64), Cell::Text(c.to_string())]);
    }
    Ok(out)
}

pub fn run_estimate(cfg: &RunConfig) -> Result<Table> {
    let ac = asym_constants(cfg)?;
    let e = estimate(&ac, cfg.n, cfg.order)?;
    let mut out = Table::new(&["n", "order", "log_estimate", "estimate", "degraded"]);
    out.rows.push(vec![
        Cell::Int(cfg.n),
        Cell::Int(u64::from(cfg.order)),
        Cell::Real(e.log_value.to_f64()),
        Cell::Text(decimal(&e.value)),
        Cell::Bool(e.degraded),
    ]);
    if e.degraded {
        out.notes.push(degraded_note(&cfg.spec));
    }
    Ok(out)
}

pub fn run_cauchy(cfg: &RunConfig) -> Result<Table> {
    let q = cfg.quad_points.unwrap_or_else(|| default_quad_points(&cfg.spec, cfg.n));
    let ctx = solve_saddle(&cfg.spec, cfg.n)?;
    let log_value = cauchy_log_count_ctx(&ctx, q)?;
    let mut out = Table::new(&["n", "quad_points", "rho", "log_cauchy", "cauchy"]);
    let value = if log_value == f64::NEG_INFINITY { 0.0 } else { log_value.exp() };
    out.rows.push(vec![
        Cell::Int(cfg.n),
        Cell::Int(q as u64),
        Cell::Real(ctx.rho),
        real_or_empty(Some(log_value)),
        Cell::Real(value),
    ]);
    Ok(out)
}

pub fn run_compare(cfg: &RunConfig) -> Result<Table> {
    let ac = asym_constants(cfg)?;
    let table = counts_for(&cfg.spec, cfg.n)?;
    let bits = cfg.precision().bits();
    let ns = ladder(cfg.n);
    let rows: Vec<Result<(Vec<Cell>, Vec<String>)>> = ns
        .par_iter()
        .map(|&n| {
            let mut notes = Vec::new();
            let exact = table.get(n as usize).expect("within table");
            let log_exact = table.ln(n as usize, bits);
            let mut logs = Vec::new();
            for order in [0u8, 1] {
                match estimate(&ac, n, order) {
                    Ok(e) => {
                        if e.degraded && order == cfg.order {
                            notes.push(format!("n = {n}: {}", degraded_note(&cfg.spec)));
                        }
                        logs.push(Some(e.log_value));
                    }
                    Err(Error::Domain(msg)) => {
                        notes.push(format!("n = {n}: {msg}"));
                        logs.push(None);
                    }
                    Err(e) => return Err(e),
                }
            }
            let log_cauchy = if cfg.quad_points.is_some() || n <= COMPARE_CAUCHY_LIMIT {
                let q = cfg.quad_points.unwrap_or_else(|| default_quad_points(&cfg.spec, n));
                Some(cauchy_log_count_ctx(&solve_saddle(&cfg.spec, n)?, q)?)
            } else {
                None
            };
            let ratio = match (&log_exact, &logs[cfg.order as usize]) {
                (Some(le), Some(lest)) => Cell::Text(decimal(&Float::with_val(bits, le - lest).exp())),
                (None, Some(_)) => Cell::Text("0".into()),
                _ => Cell::Empty,
            };
            let row = vec![
                Cell::Int(n),
                Cell::Text(exact.to_string()),
                real_or_empty(log_exact.as_ref().map(Float::to_f64)),
                real_or_empty(logs[0].as_ref().map(Float::to_f64)),
                real_or_empty(logs[1].as_ref().map(Float::to_f64)),
                real_or_empty(log_cauchy),
                ratio,
            ];
            Ok((row, notes))
        })
        .collect();
    let mut out = Table::new(&[
        "n",
        "exact",
        "log_exact",
        "log_estimate_order0",
        "log_estimate_order1",
        "log_cauchy",
        "ratio",
    ]);
    for r in rows {
        let (row, notes) = r?;
        out.rows.push(row);
        out.notes.extend(notes);
    }
    Ok(out)
}

/// Least-squares estimate of the first correction coefficient.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FitResult {
    pub c1_hat: f64,
    pub stderr: f64,
    /// `γ₁₀ + γ₀₁` for α = 1, `γ₁₀` for α < 1.
    pub c1_closed: Option<f64>,
    /// Exponent `e` of the regressor `n^{−e}`.
    pub exponent: f64,
    pub n_min: u64,
    pub n_max: u64,
    pub points: usize,
}

/// Solves the normal equations of a small dense least-squares problem.
fn least_squares(design: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let p = design[0].len();
    let mut a = vec![vec![0.0; 2 * p]; p];
    let mut b = vec![0.0; p];
    for (row, &yi) in design.iter().zip(y) {
        for i in 0..p {
            b[i] += row[i] * yi;
            for j in 0..p {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[p + i] = 1.0;
    }
    // Gauss–Jordan on [XᵀX | I], keeping the inverse for the standard errors.
    for col in 0..p {
        let pivot = (col..p).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs())).expect("non-empty");
        if a[pivot][col].abs() < 1e-300 {
            return Err(Error::Fit("singular design matrix".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let d = a[col][col];
        for v in a[col].iter_mut() {
            *v /= d;
        }
        b[col] /= d;
        for r in 0..p {
            if r != col {
                let f = a[r][col];
                if f != 0.0 {
                    let pivot_row = a[col].clone();
                    for (v, pv) in a[r].iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                    b[r] -= f * b[col];
                }
            }
        }
    }
    let m = y.len();
    let rss: f64 = design
        .iter()
        .zip(y)
        .map(|(row, &yi)| {
            let fit: f64 = row.iter().zip(&b).map(|(x, c)| x * c).sum();
            (yi - fit).powi(2)
        })
        .sum();
    let var = if m > p { rss / (m - p) as f64 } else { 0.0 };
    let se = (0..p).map(|i| (var * a[i][p + i]).max(0.0).sqrt()).collect();
    Ok((b, se))
}

/// Regresses `p(n)/main(n) − 1` on `x, x², x³` with `x = n^{−min(α,1)/(α+1)}`.
pub fn fit_c1(spec: &LambdaSpec, n_max: u64, prec: Precision) -> Result<FitResult> {
    if n_max < FIT_MIN_NMAX {
        return Err(Error::Fit(format!("fit needs n_max ≥ {FIT_MIN_NMAX}, got {n_max}")));
    }
    let ac = constants(&l_data(spec, prec)?)?;
    let table = counts_for(spec, n_max)?;
    let alpha = ac.alpha.to_f64();
    let exponent = alpha.min(1.0) / (alpha + 1.0);
    let n_min = (n_max / 10).max(50);
    let step = ((n_max - n_min) / FIT_SAMPLES).max(1);
    let bits = prec.bits();
    let mut design = Vec::new();
    let mut y = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        if let Some(lp) = table.ln(n as usize, bits) {
            let main = estimate(&ac, n, 0)?.log_value;
            let r = Float::with_val(bits, lp - main).to_f64().exp_m1();
            let x = (n as f64).powf(-exponent);
            design.push(vec![x, x * x, x * x * x]);
            y.push(r);
        }
        n += step;
    }
    if design.len() < 10 {
        return Err(Error::Fit(format!("only {} usable points in [{n_min}, {n_max}]", design.len())));
    }
    let (coef, se) = least_squares(&design, &y)?;
    let c1_closed = if (alpha - 1.0).abs() < 1e-12 { ac.c1().map(|c| c.to_f64()) } else { Some(ac.gamma10.to_f64()) };
    Ok(FitResult { c1_hat: coef[0], stderr: se[0], c1_closed, exponent, n_min, n_max, points: y.len() })
}

pub fn run_fit(cfg: &RunConfig) -> Result<Table> {
    let f = fit_c1(&cfg.spec, cfg.n, cfg.precision())?;
    let mut out = Table::new(&["c1_hat", "stderr", "c1_closed", "rel_diff", "exponent", "n_min", "n_max", "points"]);
    let rel = f.c1_closed.map(|c| (f.c1_hat - c) / c.abs());
    out.rows.push(vec![
        Cell::Real(f.c1_hat),
        Cell::Real(f.stderr),
        real_or_empty(f.c1_closed),
        real_or_empty(rel),
        Cell::Real(f.exponent),
        Cell::Int(f.n_min),
        Cell::Int(f.n_max),
        Cell::Int(f.points as u64),
    ]);
    if f.c1_closed.is_none() {
        out.notes.push(degraded_note(&cfg.spec));
    }
    Ok(out)
}

/// `σ = 2^{−3}, …, 2^{−10}`.
pub fn dyadic_sigmas() -> Vec<f64> {
    (3..=10).map(|j| 2f64.powi(-j)).collect()
}

pub fn run_verify(cfg: &RunConfig) -> Result<Table> {
    match cfg.check {
        Check::Phi => {
            let r = verify_phi_expansion(&cfg.spec, &dyadic_sigmas(), cfg.strong)?;
            let mut out = Table::new(&["sigma", "direct", "expansion", "residual", "scaled", "at_noise_floor"]);
            for row in &r.rows {
                out.rows.push(vec![
                    Cell::Real(row.sigma),
                    Cell::Real(row.direct),
                    Cell::Real(row.expansion),
                    Cell::Real(row.residual),
                    Cell::Real(row.scaled),
                    Cell::Bool(row.at_noise_floor),
                ]);
            }
            let slope = r.slope.map_or("unavailable (noise floor)".to_string(), |s| format!("{s:.4}"));
            out.notes.push(format!(
                "{} expansion: slope {slope}, required {}, {}",
                if r.strong { "strong" } else { "weak" },
                r.required_order,
                if r.passed { "passed" } else { "FAILED" }
            ));
            Ok(out)
        }
        Check::Arc => {
            let r = verify_arc_bound(&cfg.spec, cfg.n, cfg.grid)?;
            let mut out = Table::new(&[
                "n",
                "rho",
                "beta",
                "t_min",
                "grid",
                "max_ratio",
                "t_at_max",
                "integral",
                "scaled_integral",
            ]);
            out.rows.push(vec![
                Cell::Int(r.n),
                Cell::Real(r.rho),
                Cell::Real(r.beta),
                Cell::Real(r.t_min),
                Cell::Int(r.grid as u64),
                Cell::Real(r.max_ratio),
                Cell::Real(r.t_at_max),
                Cell::Real(r.integral),
                Cell::Real(r.scaled_integral),
            ]);
            Ok(out)
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    match cfg.command {
        CommandKind::Exact => run_exact(cfg),
        CommandKind::Estimate => run_estimate(cfg),
        CommandKind::Cauchy => run_cauchy(cfg),
        CommandKind::Compare => run_compare(cfg),
        CommandKind::Fit => run_fit(cfg),
        CommandKind::Verify => run_verify(cfg),
    }
}

/// Parses `args`, runs the command and writes to the given streams. Returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg).map(|t| (cfg.format, t)));
    match result {
        Ok((format, table)) => {
            for note in &table.notes {
                let _ = writeln!(stderr, "{note}");
            }
            if write!(stdout, "{}", table.render(format)).is_err() {
                return 4;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
