//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or singularity error, 2 usage or config
//! error, 3 validation failure in validated mode.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::algebra::{validate_model, InvariantVector, ReductiveModel};
use crate::catalog;
use crate::config::{MetricConfig, SpaceConfig};
use crate::curvature::{
    mean_berwald, random_unit, s_curvature, s_curvature_via_tensors, Path,
    VALIDATION_SHEN_SAMPLES,
};
use crate::error::FinslerError;
use crate::metrics::{shen_check, EvalMode, MetricSpec, PhiFamily};
use crate::volume::{volume_coefficient_with, VolumeForm, PANEL_NODES};

/// Environment variable that overrides the mode given in a config file.
pub const MODE_ENV: &str = "FINSLER_MODE";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "homfinsler",
    version,
    about = "S-curvature and mean Berwald curvature of homogeneous (α,β)-metrics"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Evaluation mode; overrides FINSLER_MODE and the config file.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Formal,
    Validated,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Formal => EvalMode::Formal,
            ModeArg::Validated => EvalMode::Validated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Bh,
    Ht,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the algebraic checks, plus the Shen check when a metric is known.
    Validate {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// S-curvature at one tangent vector by every available path.
    #[command(name = "s-curv")]
    SCurv {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        y: YArgs,
    },
    /// Mean Berwald curvature by the closed-form and finite-difference paths.
    Berwald {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        y: YArgs,
    },
    /// Volume coefficient f(b).
    Volume {
        /// Space supplying b and n; optional when both --b and --n are given.
        #[arg(long)]
        space: Option<String>,
        /// φ family name, or custom:c0,c1,... for a polynomial φ.
        #[arg(long)]
        metric: Option<String>,
        /// Volume form; both when omitted.
        #[arg(long, value_enum)]
        form: Option<FormArg>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        /// Gauss–Legendre nodes per panel.
        #[arg(long, default_value_t = PANEL_NODES)]
        nodes: usize,
    },
    /// S over random unit directions, closed form against generic.
    Scan {
        #[command(flatten)]
        space: SpaceArgs,
        /// Number of directions.
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List the built-in spaces.
    Catalog,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// catalog:<name> or a path to a TOML space file.
    #[arg(long)]
    space: String,
    /// φ family name, or custom:c0,c1,... for a polynomial φ.
    #[arg(long)]
    metric: Option<String>,
}

#[derive(Debug, Args)]
struct YArgs {
    /// Tangent vector, comma separated, in m-coordinates.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    /// Read --y in the orthonormal frame instead of m-coordinates.
    #[arg(long)]
    frame: bool,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<FinslerError> for Failure {
    fn from(e: FinslerError) -> Self {
        let code = match e {
            FinslerError::Domain(_)
            | FinslerError::Singularity { .. }
            | FinslerError::Quadrature { .. }
            | FinslerError::NoClosedForm(_) => 1,
            FinslerError::Config(_) | FinslerError::UnknownEntry { .. } | FinslerError::Structural(_) => 2,
            FinslerError::Validation(_) => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn render(&self, null: &str) -> String {
        match self {
            // shortest round-trip digits, exponent form for tiny or huge values
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => null.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Null => Value::Null,
        }
    }
}

fn opt(x: Option<f64>) -> Cell {
    x.map_or(Cell::Null, Cell::Num)
}

struct Table {
    title: String,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => {
                writeln!(out, "{}", self.title)?;
                let cells: Vec<Vec<String>> =
                    self.rows.iter().map(|r| r.iter().map(|c| c.render("n/a")).collect()).collect();
                let widths: Vec<usize> = (0..self.columns.len())
                    .map(|i| {
                        cells
                            .iter()
                            .map(|r| r[i].chars().count())
                            .chain([self.columns[i].chars().count()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |items: &[String]| -> String {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(out, "{}", line(&self.columns))?;
                for r in &cells {
                    writeln!(out, "{}", line(r))?;
                }
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for r in &self.rows {
                    let items: Vec<String> = r.iter().map(|c| csv_field(&c.render(""))).collect();
                    writeln!(out, "{}", items.join(","))?;
                }
            }
            Format::Jsonl => {
                for r in &self.rows {
                    let mut obj = Map::new();
                    for (k, c) in self.columns.iter().zip(r) {
                        obj.insert(k.clone(), c.json());
                    }
                    writeln!(out, "{}", Value::Object(obj))?;
                }
            }
        }
        Ok(())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A resolved `--space` argument.
struct Space {
    label: String,
    model: ReductiveModel,
    v: InvariantVector,
    metric: Option<MetricConfig>,
    mode: Option<EvalMode>,
}

fn load_space(arg: &str) -> CliResult<Space> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        let e = catalog::get(name)?;
        return Ok(Space {
            label: arg.to_string(),
            model: e.model,
            v: e.v,
            metric: None,
            mode: None,
        });
    }
    let cfg = SpaceConfig::load(arg)?;
    let (model, v) = cfg.build()?;
    Ok(Space {
        label: arg.to_string(),
        model,
        v,
        metric: cfg.metric,
        mode: cfg.mode,
    })
}

fn parse_metric(flag: Option<&str>, config: Option<&MetricConfig>) -> CliResult<Option<PhiFamily>> {
    match flag {
        Some(text) => {
            if let Some(rest) = text.strip_prefix("custom:") {
                let coeffs = parse_list(rest).map_err(|e| usage(format!("--metric: {e}")))?;
                return Ok(Some(PhiFamily::polynomial(&coeffs)));
            }
            Ok(Some(PhiFamily::from_name(text)?))
        }
        None => Ok(config.map(MetricConfig::phi).transpose()?),
    }
}

fn parse_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    let items: std::result::Result<Vec<f64>, _> =
        text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    match items {
        Ok(v) if !v.is_empty() && v.iter().all(|x| x.is_finite()) => Ok(v),
        Ok(_) => Err(format!("`{text}` must be a list of finite numbers")),
        Err(e) => Err(format!("`{text}`: {e}")),
    }
}

struct Context<'a> {
    format: Format,
    mode_flag: Option<EvalMode>,
    env_mode: Option<String>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Context<'_> {
    /// config < environment < flag
    fn mode(&self, config: Option<EvalMode>) -> CliResult<EvalMode> {
        if let Some(m) = self.mode_flag {
            return Ok(m);
        }
        if let Some(env) = self.env_mode.as_deref().filter(|s| !s.is_empty()) {
            return EvalMode::parse(env).map_err(|e| usage(format!("{MODE_ENV}: {e}")));
        }
        Ok(config.unwrap_or_default())
    }

    fn emit(&mut self, table: &Table) -> CliResult<()> {
        table
            .write(self.format, self.out)
            .map_err(|e| Failure { code: 1, message: format!("write failed: {e}") })
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }

    /// Warns when formal mode evaluates a metric that fails the Shen check.
    fn formal_warning(&mut self, spec: &MetricSpec) -> CliResult<()> {
        if spec.mode == EvalMode::Formal {
            let shen = shen_check(spec, VALIDATION_SHEN_SAMPLES)?;
            if !shen.holds {
                self.warn(&format!(
                    "{} with b = {} fails the Shen positivity check (minimum {} at s = {}); evaluating formally",
                    spec.phi.name(),
                    spec.b,
                    shen.min_value,
                    shen.argmin_s
                ));
            }
        }
        Ok(())
    }
}

fn metric_spec(ctx: &Context<'_>, space: &Space, flag: Option<&str>) -> CliResult<MetricSpec> {
    let phi = parse_metric(flag, space.metric.as_ref())?
        .ok_or_else(|| usage("no metric given; pass --metric or set [metric] in the space file"))?;
    Ok(MetricSpec::new(phi, space.v.b)?.with_mode(ctx.mode(space.mode)?))
}

fn parse_y(space: &Space, y: &YArgs) -> CliResult<DVector<f64>> {
    let vals = parse_list(&y.y).map_err(|e| usage(format!("--y: {e}")))?;
    let n = space.model.m_dim();
    if vals.len() != n {
        return Err(usage(format!("--y has {} components, expected {n}", vals.len())));
    }
    let v = DVector::from_vec(vals);
    Ok(if y.frame { v } else { space.model.to_frame(&v) })
}

fn cmd_validate(ctx: &mut Context<'_>, args: &SpaceArgs) -> CliResult<()> {
    let space = load_space(&args.space)?;
    let mode = ctx.mode(space.mode)?;
    let report = validate_model(&space.model, &space.v)?;
    let mut t = Table::new(
        format!("validate {} (mode {})", space.label, mode.as_str()),
        &["check", "passed", "residual", "tolerance"],
    );
    for c in &report.checks {
        t.rows.push(vec![
            Cell::Text(c.name.to_string()),
            Cell::Bool(c.passed),
            Cell::Num(c.residual),
            Cell::Num(c.tolerance),
        ]);
    }
    let phi = parse_metric(args.metric.as_deref(), space.metric.as_ref())?;
    let mut failure = report.failed().next().map(|c| format!("model check `{}` failed", c.name));
    if let Some(phi) = phi {
        let spec = MetricSpec::new(phi, space.v.b)?;
        let shen = shen_check(&spec, VALIDATION_SHEN_SAMPLES)?;
        t.rows.push(vec![
            Cell::Text(format!("shen_{}", spec.phi.name())),
            Cell::Bool(shen.holds),
            Cell::Num(shen.min_value),
            Cell::Num(0.0),
        ]);
        let b_ok = spec.b < 1.0;
        t.rows.push(vec![
            Cell::Text("b_below_one".into()),
            Cell::Bool(b_ok),
            Cell::Num(spec.b),
            Cell::Num(1.0),
        ]);
        if failure.is_none() && !shen.holds {
            failure = Some(format!(
                "Shen positivity fails for {}: minimum {} at s = {}",
                spec.phi.name(),
                shen.min_value,
                shen.argmin_s
            ));
        }
        if failure.is_none() && !b_ok {
            failure = Some(format!("b = {} is not below 1", spec.b));
        }
    }
    ctx.emit(&t)?;
    match failure {
        Some(msg) if mode == EvalMode::Validated => Err(FinslerError::Validation(msg).into()),
        Some(msg) => {
            ctx.warn(&msg);
            Ok(())
        }
        None => Ok(()),
    }
}

fn cmd_s_curv(ctx: &mut Context<'_>, args: &SpaceArgs, y: &YArgs) -> CliResult<()> {
    let space = load_space(&args.space)?;
    let spec = metric_spec(ctx, &space, args.metric.as_deref())?;
    let y = parse_y(&space, y)?;
    ctx.formal_warning(&spec)?;
    let (m, v) = (&space.model, &space.v);

    let closed = match s_curvature(m, v, &spec, &y, Path::ClosedForm) {
        Ok(x) => Some(x),
        Err(FinslerError::NoClosedForm(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let generic = s_curvature(m, v, &spec, &y, Path::Generic)?;
    let tensors = s_curvature_via_tensors(m, v, &spec, &y)?;
    let s = v.frame_coords(m).dot(&y) / y.norm();

    let mut t = Table::new(
        format!(
            "s-curv {} metric {} mode {} (b = {}, n = {})",
            space.label,
            spec.phi.name(),
            spec.mode.as_str(),
            spec.b,
            m.m_dim()
        ),
        &["path", "s", "S", "abs_diff"],
    );
    for (name, val) in [("closed_form", closed), ("generic", Some(generic)), ("tensors", Some(tensors))] {
        t.rows.push(vec![
            Cell::Text(name.into()),
            Cell::Num(s),
            opt(val),
            opt(val.map(|x| (x - generic).abs())),
        ]);
    }
    ctx.emit(&t)
}

fn cmd_berwald(ctx: &mut Context<'_>, args: &SpaceArgs, y: &YArgs) -> CliResult<()> {
    let space = load_space(&args.space)?;
    let spec = metric_spec(ctx, &space, args.metric.as_deref())?;
    let y = parse_y(&space, y)?;
    ctx.formal_warning(&spec)?;
    let (m, v) = (&space.model, &space.v);
    let n = m.m_dim();

    let closed = match mean_berwald(m, v, &spec, &y, Path::ClosedForm) {
        Ok(e) => Some(e),
        Err(FinslerError::NoClosedForm(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let fd = mean_berwald(m, v, &spec, &y, Path::FiniteDifference)?;

    let mut t = Table::new(
        format!(
            "berwald {} metric {} mode {} (frame coordinates, b = {}, n = {n})",
            space.label,
            spec.phi.name(),
            spec.mode.as_str(),
            spec.b
        ),
        &["i", "j", "closed_form", "finite_difference", "abs_diff"],
    );
    let mut max_dev: Option<f64> = closed.as_ref().map(|_| 0.0);
    for i in 0..n {
        for j in 0..n {
            let c = closed.as_ref().map(|e| e[(i, j)]);
            let d = c.map(|c| (c - fd[(i, j)]).abs());
            if let (Some(d), Some(mx)) = (d, max_dev.as_mut()) {
                *mx = mx.max(d);
            }
            t.rows.push(vec![
                Cell::Int(i as i64 + 1),
                Cell::Int(j as i64 + 1),
                opt(c),
                Cell::Num(fd[(i, j)]),
                opt(d),
            ]);
        }
    }
    t.rows.push(vec![
        Cell::Text("max".into()),
        Cell::Null,
        Cell::Null,
        Cell::Null,
        opt(max_dev),
    ]);
    ctx.emit(&t)
}

#[allow(clippy::too_many_arguments)]
fn cmd_volume(
    ctx: &mut Context<'_>,
    space: Option<&str>,
    metric: Option<&str>,
    form: Option<FormArg>,
    b: Option<f64>,
    n: Option<usize>,
    nodes: usize,
) -> CliResult<()> {
    let loaded = space.map(load_space).transpose()?;
    let phi = parse_metric(metric, loaded.as_ref().and_then(|s| s.metric.as_ref()))?
        .ok_or_else(|| usage("no metric given; pass --metric"))?;
    let b = b
        .or(loaded.as_ref().map(|s| s.v.b))
        .ok_or_else(|| usage("volume needs --b or --space"))?;
    let n = n
        .or(loaded.as_ref().map(|s| s.model.m_dim()))
        .ok_or_else(|| usage("volume needs --n or --space"))?;
    let mode = ctx.mode(loaded.as_ref().and_then(|s| s.mode))?;
    let spec = MetricSpec::new(phi, b)?.with_mode(mode);
    if mode == EvalMode::Validated {
        let shen = shen_check(&spec, VALIDATION_SHEN_SAMPLES)?;
        if !shen.holds || b >= 1.0 {
            return Err(FinslerError::Validation(format!(
                "{} with b = {b} is not a valid metric (Shen minimum {} at s = {})",
                spec.phi.name(),
                shen.min_value,
                shen.argmin_s
            ))
            .into());
        }
    } else {
        ctx.formal_warning(&spec)?;
    }
    let forms = match form {
        Some(FormArg::Bh) => vec![VolumeForm::BusemannHausdorff],
        Some(FormArg::Ht) => vec![VolumeForm::HolmesThompson],
        None => vec![VolumeForm::BusemannHausdorff, VolumeForm::HolmesThompson],
    };
    let mut t = Table::new(
        format!("volume metric {} mode {}", spec.phi.name(), mode.as_str()),
        &["form", "n", "b", "f", "evaluations"],
    );
    for f in forms {
        let (value, evals) = volume_coefficient_with(&spec.phi, b, n, f, nodes)?;
        t.rows.push(vec![
            Cell::Text(f.as_str().into()),
            Cell::Int(n as i64),
            Cell::Num(b),
            Cell::Num(value),
            Cell::Int(evals as i64),
        ]);
    }
    ctx.emit(&t)
}

fn cmd_scan(ctx: &mut Context<'_>, args: &SpaceArgs, grid: usize, seed: u64) -> CliResult<()> {
    let space = load_space(&args.space)?;
    let spec = metric_spec(ctx, &space, args.metric.as_deref())?;
    ctx.formal_warning(&spec)?;
    let (m, v) = (&space.model, &space.v);
    let n = m.m_dim();
    // fail fast on validated-mode refusals that do not depend on y
    if spec.mode == EvalMode::Validated {
        let probe = random_unit(&mut ChaCha8Rng::seed_from_u64(seed), n);
        if let Err(e @ FinslerError::Validation(_)) = s_curvature(m, v, &spec, &probe, Path::Generic) {
            return Err(e.into());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ys: Vec<DVector<f64>> = (0..grid).map(|_| random_unit(&mut rng, n)).collect();
    let rows: Vec<Vec<Cell>> = ys
        .par_iter()
        .enumerate()
        .map(|(idx, y)| {
            let s = v.frame_coords(m).dot(y) / y.norm();
            let closed = s_curvature(m, v, &spec, y, Path::ClosedForm);
            let generic = s_curvature(m, v, &spec, y, Path::Generic);
            let status = match (&closed, &generic) {
                (Ok(_), Ok(_)) | (Err(FinslerError::NoClosedForm(_)), Ok(_)) => "ok".to_string(),
                (Err(e), _) | (_, Err(e)) => e.to_string(),
            };
            let c = closed.ok();
            let g = generic.ok();
            let diff = c.zip(g).map(|(a, b)| (a - b).abs());
            let ym = m.from_frame(y);
            let mut row = vec![Cell::Int(idx as i64)];
            row.extend(ym.iter().map(|&x| Cell::Num(x)));
            row.extend([Cell::Num(s), opt(c), opt(g), opt(diff), Cell::Text(status)]);
            row
        })
        .collect();

    let mut columns: Vec<String> = vec!["index".into()];
    columns.extend((1..=n).map(|i| format!("y{i}")));
    columns.extend(["s", "s_closed", "s_generic", "abs_diff", "status"].map(String::from));
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new(
        format!(
            "scan {} metric {} mode {} ({grid} directions, seed {seed})",
            space.label,
            spec.phi.name(),
            spec.mode.as_str()
        ),
        &cols,
    );
    t.rows = rows;
    ctx.emit(&t)
}

fn cmd_catalog(ctx: &mut Context<'_>) -> CliResult<()> {
    let mut t = Table::new("catalog", &["name", "dim_g", "n", "c", "notes"]);
    for e in catalog::all() {
        t.rows.push(vec![
            Cell::Text(e.name.into()),
            Cell::Int(e.model.dim_g() as i64),
            Cell::Int(e.model.m_dim() as i64),
            Cell::Num(e.v.c),
            Cell::Text(e.notes.into()),
        ]);
    }
    ctx.emit(&t)
}

/// Runs the CLI on `args` (program name first). `env_mode` stands in for
/// the FINSLER_MODE variable. Returns the exit code.
pub fn run_with<I, T>(args: I, env_mode: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let mut ctx = Context {
        format: cli.format,
        mode_flag: cli.mode.map(EvalMode::from),
        env_mode,
        out,
        err,
    };
    let result = match &cli.command {
        Command::Validate { space } => cmd_validate(&mut ctx, space),
        Command::SCurv { space, y } => cmd_s_curv(&mut ctx, space, y),
        Command::Berwald { space, y } => cmd_berwald(&mut ctx, space, y),
        Command::Volume {
            space,
            metric,
            form,
            b,
            n,
            nodes,
        } => cmd_volume(&mut ctx, space.as_deref(), metric.as_deref(), *form, *b, *n, *nodes),
        Command::Scan { space, grid, seed } => cmd_scan(&mut ctx, space, *grid, *seed),
        Command::Catalog => cmd_catalog(&mut ctx),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs the CLI against the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_mode = std::env::var(MODE_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run_with(args, env_mode, &mut out, &mut err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("homfinsler").chain(args.iter().copied());
        let code = run_with(argv, env.map(String::from), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn catalog_lists_five() {
        let (code, out, _) = call(&["catalog", "--format", "csv"], None);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
    }

    #[test]
    fn mode_precedence() {
        let args = ["s-curv", "--space", "catalog:solvable2", "--metric", "infinite_series", "--y", "1,0.3"];
        assert_eq!(call(&args, None).0, 0);
        assert_eq!(call(&args, Some("validated")).0, 3);
        let mut with_flag = args.to_vec();
        with_flag.extend(["--mode", "formal"]);
        assert_eq!(call(&with_flag, Some("validated")).0, 0);
        assert_eq!(call(&args, Some("bogus")).0, 2);
    }

    #[test]
    fn singular_y_exit_one() {
        let (code, _, err) = call(
            &["s-curv", "--space", "catalog:solvable2", "--metric", "infinite_series", "--y", "1,0"],
            None,
        );
        assert_eq!(code, 1);
        assert!(err.contains("s = 0 (infinite series Q)"), "{err}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["s-curv", "--space", "catalog:nope", "--metric", "exponential", "--y", "1"], None).0, 2);
        assert_eq!(call(&["s-curv", "--space", "catalog:abelian3", "--metric", "exponential", "--y", "1,x,1"], None).0, 2);
        assert_eq!(call(&["s-curv", "--space", "catalog:abelian3", "--y", "1,1,1"], None).0, 2);
        assert_eq!(call(&["frobnicate"], None).0, 2);
        assert_eq!(call(&["--help"], None).0, 0);
    }

    #[test]
    fn csv_fields_are_quoted() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
