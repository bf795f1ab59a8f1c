//! The `riccati` command-line frontend.
//!
//! Subcommands: `solve` (numeric integration by either or both methods),
//! `closed-form` (evaluate a solution family on a grid, optionally fitting
//! its constants), `verify` (cross-method and residual checks), and
//! `families-list`.
//!
//! Exit codes: 0 success; 1 usage or expression error; 2 verification
//! checks failed (artifacts still emitted); 3 solver abort (zero of `a`
//! inside the interval, step-size underflow, unsupported routing).

use crate::expr::{parse, Expr};
use crate::families::{
    self, fit_constants, ClosedForm, FamilyError,
};
use crate::integrate::{
    integrate_direct, solve_linearized, Event, IntegrateError, SampleFlag, SolveConfig,
    Trajectory,
};
use crate::output::{self, Json, OutputRow};
use crate::transform::RiccatiProblem;
use crate::verify::{cross_method_report, VerifyTolerances};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "riccati",
    version,
    about = "Solve dz/dx + a(x) z^2 = f(x) via its linear second-order form, \
             with pole continuation and closed-form families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrate the equation numerically (linearized, direct, or both)
    Solve(SolveArgs),
    /// Evaluate a closed-form family on a grid
    #[command(name = "closed-form")]
    ClosedForm(ClosedFormArgs),
    /// Run the verification checks and emit a report
    Verify(VerifyArgs),
    /// List the closed-form families and their parameters
    #[command(name = "families-list")]
    FamiliesList(FamiliesListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Linearized,
    Direct,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Coefficient a(x) of the quadratic term
    #[arg(long)]
    pub a: String,
    /// Right-hand side f(x)
    #[arg(long)]
    pub f: String,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub z0: f64,
    #[arg(long = "x-end", allow_negative_numbers = true)]
    pub x_end: f64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the artifact here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Args, Debug, Default)]
pub struct ConfigArgs {
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub h_init: Option<f64>,
    #[arg(long)]
    pub h_min: Option<f64>,
    #[arg(long)]
    pub h_max: Option<f64>,
    #[arg(long)]
    pub blowup_threshold: Option<f64>,
    #[arg(long)]
    pub pole_refine_tol: Option<f64>,
    #[arg(long)]
    pub output_step: Option<f64>,
}

impl ConfigArgs {
    pub fn apply(&self, base: SolveConfig) -> SolveConfig {
        SolveConfig {
            rel_tol: self.rel_tol.unwrap_or(base.rel_tol),
            abs_tol: self.abs_tol.unwrap_or(base.abs_tol),
            h_init: self.h_init.unwrap_or(base.h_init),
            h_min: self.h_min.unwrap_or(base.h_min),
            h_max: self.h_max.unwrap_or(base.h_max),
            blowup_threshold: self.blowup_threshold.unwrap_or(base.blowup_threshold),
            pole_refine_tol: self.pole_refine_tol.unwrap_or(base.pole_refine_tol),
            output_step: self.output_step.unwrap_or(base.output_step),
        }
    }
}

#[derive(Args, Debug)]
pub struct ClosedFormArgs {
    /// Family tag: note-f-zero | example1 | corollary3 | corollary4
    #[arg(long)]
    pub family: String,
    /// Constant coefficient c (corollary3, corollary4)
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Power n of f = x^n (corollary3)
    #[arg(long, allow_negative_numbers = true)]
    pub n: Option<f64>,
    /// Constant K (note-f-zero)
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k2: Option<f64>,
    /// Grid start (also the fit abscissa when --fit-z0 is given)
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long = "x-end", allow_negative_numbers = true)]
    pub x_end: f64,
    /// Fit the free constants so that z(x0) equals this value
    #[arg(long = "fit-z0", allow_negative_numbers = true)]
    pub fit_z0: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0.01)]
    pub output_step: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub f: String,
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub z0: f64,
    #[arg(long = "x-end", allow_negative_numbers = true)]
    pub x_end: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Max accepted |z' + a z^2 - f| on the sample grid
    #[arg(long, default_value_t = 1e-6)]
    pub residual_tol: f64,
    /// Max accepted |z_linearized - z_direct|
    #[arg(long, default_value_t = 1e-6)]
    pub comparison_tol: f64,
    /// Max accepted |pole - blow-up| pairing gap
    #[arg(long, default_value_t = 1e-3)]
    pub pole_gap_tol: f64,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Args, Debug)]
pub struct FamiliesListArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Parses argv and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn usage_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

fn solver_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 3,
        message: message.into(),
    }
}

fn parse_expr_flag(flag: &str, source: &str) -> Result<Expr, CliError> {
    parse(source).map_err(|e| {
        usage_error(format!(
            "--{flag} \"{source}\": {} at byte {} (span \"{}\")",
            e.message,
            e.offset,
            &source[e.offset.min(source.len())..source.len().min(e.offset + 8)]
        ))
    })
}

fn emit(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| usage_error(format!("cannot write {}: {e}", p.display()))),
        None => {
            // a closed pipe (e.g. piping into `head`) is not an error
            match std::io::stdout().write_all(content.as_bytes()) {
                Ok(()) | Err(_) => Ok(()),
            }
        }
    }
}

/// Executes one parsed command.
pub fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Solve(args) => run_solve(args),
        Command::ClosedForm(args) => run_closed_form(args),
        Command::Verify(args) => run_verify(args),
        Command::FamiliesList(args) => run_families_list(args),
    }
}

fn map_integrate_err(e: IntegrateError) -> CliError {
    match e {
        IntegrateError::BadConfig | IntegrateError::EmptyInterval => usage_error(e.to_string()),
        other => solver_error(other.to_string()),
    }
}

fn has_abort(traj: &Trajectory) -> bool {
    traj.events
        .iter()
        .any(|e| matches!(e, Event::StepFailure { .. }))
}

fn merge_rows(lin: Option<&Trajectory>, dir: Option<&Trajectory>) -> Vec<OutputRow> {
    let n = lin
        .map(|t| t.samples.len())
        .or_else(|| dir.map(|t| t.samples.len()))
        .unwrap_or(0);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let ls = lin.map(|t| &t.samples[i]);
        let ds = dir.map(|t| &t.samples[i]);
        let x = ls.map(|s| s.x).or_else(|| ds.map(|s| s.x)).unwrap_or(0.0);
        let flag = [ls, ds]
            .iter()
            .flatten()
            .map(|s| s.flag)
            .max_by_key(|f| match f {
                SampleFlag::Ok => 0,
                SampleFlag::NotComputed => 1,
                SampleFlag::PoleGuard => 2,
                SampleFlag::Blowup => 3,
            })
            .unwrap_or(SampleFlag::NotComputed);
        rows.push(OutputRow {
            x,
            z_linearized: ls.and_then(|s| s.z),
            z_direct: ds.and_then(|s| s.z),
            q: ls.and_then(|s| s.q),
            p: ls.and_then(|s| s.p),
            flag,
        });
    }
    rows
}

fn spec_json(fields: Vec<(String, Json)>, cfg: Option<&SolveConfig>) -> Json {
    let mut all = fields;
    if let Some(c) = cfg {
        all.push((
            "config".into(),
            Json::Obj(vec![
                ("rel_tol".into(), Json::Num(c.rel_tol)),
                ("abs_tol".into(), Json::Num(c.abs_tol)),
                ("h_init".into(), Json::Num(c.h_init)),
                ("h_min".into(), Json::Num(c.h_min)),
                ("h_max".into(), Json::Num(c.h_max)),
                ("blowup_threshold".into(), Json::Num(c.blowup_threshold)),
                ("pole_refine_tol".into(), Json::Num(c.pole_refine_tol)),
                ("output_step".into(), Json::Num(c.output_step)),
            ]),
        ));
    }
    Json::Obj(all)
}

fn report_json(
    spec: Json,
    rows: &[OutputRow],
    poles: &[f64],
    verification: Option<Json>,
) -> String {
    let doc = Json::Obj(vec![
        ("spec".into(), spec),
        (
            "trajectory".into(),
            Json::Arr(rows.iter().map(output::row_json).collect()),
        ),
        (
            "poles".into(),
            Json::Arr(poles.iter().map(|&p| Json::Num(p)).collect()),
        ),
        (
            "verification".into(),
            verification.unwrap_or(Json::Null),
        ),
        ("version".into(), Json::Str(VERSION.into())),
    ]);
    let mut s = doc.render();
    s.push('\n');
    s
}

fn run_solve(args: SolveArgs) -> Result<i32, CliError> {
    let a = parse_expr_flag("a", &args.a)?;
    let f = parse_expr_flag("f", &args.f)?;
    if args.x_end == args.x0 {
        return Err(usage_error("--x-end must differ from --x0"));
    }
    let cfg = args.config.apply(SolveConfig::default());
    cfg.validate().map_err(map_integrate_err)?;
    let prob = RiccatiProblem::new(a, f);

    if prob.a_identically_zero_on(args.x0, args.x_end) {
        return Err(solver_error(
            "a(x) is identically zero on the interval (sampled): not a quadratic equation",
        ));
    }

    // f identically zero routes to the closed form z = 1/(x - K)
    if prob.f_identically_zero_on(args.x0, args.x_end) {
        return run_solve_f_zero(&args, &prob, &cfg);
    }

    let want_lin = matches!(args.method, Method::Linearized | Method::Both);
    let want_dir = matches!(args.method, Method::Direct | Method::Both);
    let lin = if want_lin {
        Some(solve_linearized(&prob, args.x0, args.z0, args.x_end, &cfg).map_err(map_integrate_err)?)
    } else {
        None
    };
    let dir = if want_dir {
        Some(integrate_direct(&prob, args.x0, args.z0, args.x_end, &cfg).map_err(map_integrate_err)?)
    } else {
        None
    };

    let rows = merge_rows(lin.as_ref(), dir.as_ref());
    let poles = lin.as_ref().map(|t| t.poles.clone()).unwrap_or_default();
    let spec = spec_json(
        vec![
            ("subcommand".into(), Json::Str("solve".into())),
            ("a".into(), Json::Str(args.a.clone())),
            ("f".into(), Json::Str(args.f.clone())),
            ("x0".into(), Json::Num(args.x0)),
            ("z0".into(), Json::Num(args.z0)),
            ("x_end".into(), Json::Num(args.x_end)),
            (
                "method".into(),
                Json::Str(format!("{:?}", args.method).to_lowercase()),
            ),
        ],
        Some(&cfg),
    );
    let content = match args.format {
        Format::Csv => output::write_csv(&rows),
        Format::Json => report_json(spec, &rows, &poles, None),
    };
    emit(&args.output, &content)?;

    let aborted =
        lin.as_ref().map_or(false, has_abort) || dir.as_ref().map_or(false, has_abort);
    Ok(if aborted { 3 } else { 0 })
}

/// The f ≡ 0 route: defined for a ≡ 1, where z = 1/(x - K) (or z ≡ 0).
fn run_solve_f_zero(
    args: &SolveArgs,
    prob: &RiccatiProblem,
    cfg: &SolveConfig,
) -> Result<i32, CliError> {
    let unit_a = {
        let n = 16;
        (0..=n).all(|i| {
            let x = args.x0 + (args.x_end - args.x0) * i as f64 / n as f64;
            prob.a_at(x).map_or(false, |v| (v - 1.0).abs() <= 1e-12)
        })
    };
    if !unit_a {
        return Err(solver_error(
            "f is identically zero but a is not 1: no supported closed form \
             (the linearization path requires f not identically zero)",
        ));
    }
    let form = if args.z0 == 0.0 {
        None // z ≡ 0 is the remaining solution
    } else {
        Some(
            fit_constants(&families::note_f_zero(0.0), args.x0, args.z0)
                .map_err(|e| solver_error(e.to_string()))?,
        )
    };
    match &form {
        Some(ClosedForm::NoteFZero { k }) => eprintln!(
            "note: f is identically zero on the interval; using the closed form \
             z = 1/(x - K) with K = {k}"
        ),
        _ => eprintln!("note: f is identically zero and z0 = 0; the solution is z = 0"),
    }

    let want_dir = matches!(args.method, Method::Direct | Method::Both);
    let dir = if want_dir {
        Some(
            integrate_direct(prob, args.x0, args.z0, args.x_end, cfg)
                .map_err(map_integrate_err)?,
        )
    } else {
        None
    };

    let guard = cfg.pole_guard();
    let pole = form.as_ref().and_then(|f| match f {
        ClosedForm::NoteFZero { k }
            if (args.x0.min(args.x_end)..=args.x0.max(args.x_end)).contains(k) =>
        {
            Some(*k)
        }
        _ => None,
    });
    let mut rows = Vec::new();
    let n_dir = dir.as_ref().map(|t| t.samples.len());
    let grid: Vec<f64> = match &dir {
        Some(t) => t.samples.iter().map(|s| s.x).collect(),
        None => {
            // same grid construction as the solvers use
            let span = (args.x_end - args.x0).abs();
            let dirn = (args.x_end - args.x0).signum();
            let n = (span / cfg.output_step).floor() as usize;
            let mut xs: Vec<f64> = (0..=n)
                .map(|i| args.x0 + dirn * cfg.output_step * i as f64)
                .collect();
            if (xs.last().copied().unwrap() - args.x_end).abs() > 1e-9 * span.max(1.0) {
                xs.push(args.x_end);
            } else {
                *xs.last_mut().unwrap() = args.x_end;
            }
            if args.x_end < args.x0 {
                xs.reverse();
            }
            xs
        }
    };
    for (i, &x) in grid.iter().enumerate() {
        let z_cf = match &form {
            None => Some(0.0),
            Some(f) => match pole {
                Some(k) if (x - k).abs() < guard => None,
                _ => f.eval(x).ok(),
            },
        };
        let ds = dir.as_ref().and_then(|t| {
            debug_assert_eq!(n_dir, Some(t.samples.len()));
            t.samples.get(i)
        });
        let z_dir = ds.and_then(|s| s.z);
        let flag = if z_cf.is_none() && pole.is_some() {
            SampleFlag::PoleGuard
        } else if ds.map_or(false, |s| s.flag == SampleFlag::Blowup) {
            SampleFlag::Blowup
        } else if z_cf.is_none() || (want_dir && z_dir.is_none()) {
            SampleFlag::NotComputed
        } else {
            SampleFlag::Ok
        };
        rows.push(OutputRow {
            x,
            z_linearized: z_cf,
            z_direct: z_dir,
            q: None,
            p: None,
            flag,
        });
    }
    let poles: Vec<f64> = pole.into_iter().collect();
    let spec = spec_json(
        vec![
            ("subcommand".into(), Json::Str("solve".into())),
            ("a".into(), Json::Str(args.a.clone())),
            ("f".into(), Json::Str(args.f.clone())),
            ("x0".into(), Json::Num(args.x0)),
            ("z0".into(), Json::Num(args.z0)),
            ("x_end".into(), Json::Num(args.x_end)),
            ("method".into(), Json::Str("closed-form (f = 0)".into())),
        ],
        Some(cfg),
    );
    let content = match args.format {
        Format::Csv => output::write_csv(&rows),
        Format::Json => report_json(spec, &rows, &poles, None),
    };
    emit(&args.output, &content)?;
    Ok(0)
}

fn build_family(args: &ClosedFormArgs) -> Result<ClosedForm, CliError> {
    let need = |opt: Option<f64>, flag: &str| {
        opt.ok_or_else(|| {
            usage_error(format!("--{flag} is required for family {}", args.family))
        })
    };
    let form = match args.family.as_str() {
        "note-f-zero" | "note_f_zero" => families::note_f_zero(need(args.k, "k")?),
        "example1" => families::example1(
            args.k1.unwrap_or(0.0),
            args.k2.unwrap_or(1.0),
        ),
        "corollary3" => families::corollary3(
            need(args.c, "c")?,
            need(args.n, "n")?,
            args.k1.unwrap_or(1.0),
            args.k2.unwrap_or(0.0),
        )
        .map_err(|e| usage_error(e.to_string()))?,
        "corollary4" => families::corollary4(
            need(args.c, "c")?,
            args.k1.unwrap_or(1.0),
            args.k2.unwrap_or(0.0),
        )
        .map_err(|e| usage_error(e.to_string()))?,
        other => {
            return Err(usage_error(format!(
                "--family \"{other}\" is not one of note-f-zero, example1, corollary3, corollary4 \
                 (corollary1/corollary2 are linear-system specializations with no closed form; \
                 use `solve`)"
            )))
        }
    };
    Ok(form)
}

fn run_closed_form(args: ClosedFormArgs) -> Result<i32, CliError> {
    if args.x_end == args.x0 {
        return Err(usage_error("--x-end must differ from --x0"));
    }
    if args.output_step <= 0.0 {
        return Err(usage_error("--output-step must be positive"));
    }
    let mut form = build_family(&args)?;
    if let Some(z0) = args.fit_z0 {
        form = fit_constants(&form, args.x0, z0).map_err(|e| usage_error(e.to_string()))?;
    }

    let span = (args.x_end - args.x0).abs();
    let dirn = (args.x_end - args.x0).signum();
    let n = (span / args.output_step).floor() as usize;
    let mut xs: Vec<f64> = (0..=n)
        .map(|i| args.x0 + dirn * args.output_step * i as f64)
        .collect();
    if (xs.last().copied().unwrap() - args.x_end).abs() > 1e-9 * span.max(1.0) {
        xs.push(args.x_end);
    } else {
        *xs.last_mut().unwrap() = args.x_end;
    }
    if args.x_end < args.x0 {
        xs.reverse();
    }

    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let (z, flag) = match form.eval(x) {
            Ok(z) => (Some(z), SampleFlag::Ok),
            Err(FamilyError::Pole { .. }) => (None, SampleFlag::PoleGuard),
            Err(_) => (None, SampleFlag::NotComputed),
        };
        rows.push(OutputRow {
            x,
            z_linearized: z,
            z_direct: None,
            q: None,
            p: None,
            flag,
        });
    }

    let (k1, k2) = form.constants();
    let mut params = vec![("family".into(), Json::Str(args.family.clone()))];
    if let Some(c) = args.c {
        params.push(("c".into(), Json::Num(c)));
    }
    if let Some(nn) = args.n {
        params.push(("n".into(), Json::Num(nn)));
    }
    match k2 {
        Some(k2) => {
            params.push(("k1".into(), Json::Num(k1)));
            params.push(("k2".into(), Json::Num(k2)));
        }
        None => params.push(("k".into(), Json::Num(k1))),
    }
    params.push(("x0".into(), Json::Num(args.x0)));
    params.push(("x_end".into(), Json::Num(args.x_end)));
    params.push(("description".into(), Json::Str(form.describe())));
    let spec = spec_json(
        vec![
            ("subcommand".into(), Json::Str("closed-form".into())),
            ("parameters".into(), Json::Obj(params)),
        ],
        None,
    );
    let content = match args.format {
        Format::Csv => output::write_csv(&rows),
        Format::Json => report_json(spec, &rows, &[], None),
    };
    emit(&args.output, &content)?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let a = parse_expr_flag("a", &args.a)?;
    let f = parse_expr_flag("f", &args.f)?;
    if args.x_end == args.x0 {
        return Err(usage_error("--x-end must differ from --x0"));
    }
    let cfg = args.config.apply(SolveConfig::default());
    cfg.validate().map_err(map_integrate_err)?;
    let tol = VerifyTolerances {
        residual: args.residual_tol,
        comparison: args.comparison_tol,
        pole_gap: args.pole_gap_tol,
        ..VerifyTolerances::default()
    };
    let prob = RiccatiProblem::new(a, f);
    let report = cross_method_report(&prob, args.x0, args.z0, args.x_end, &cfg, &tol)
        .map_err(|e| solver_error(e.to_string()))?;

    let lin = solve_linearized(&prob, args.x0, args.z0, args.x_end, &cfg)
        .map_err(map_integrate_err)?;
    let dir = integrate_direct(&prob, args.x0, args.z0, args.x_end, &cfg)
        .map_err(map_integrate_err)?;
    let rows = merge_rows(Some(&lin), Some(&dir));

    let spec = spec_json(
        vec![
            ("subcommand".into(), Json::Str("verify".into())),
            ("a".into(), Json::Str(args.a.clone())),
            ("f".into(), Json::Str(args.f.clone())),
            ("x0".into(), Json::Num(args.x0)),
            ("z0".into(), Json::Num(args.z0)),
            ("x_end".into(), Json::Num(args.x_end)),
            ("residual_tol".into(), Json::Num(args.residual_tol)),
            ("comparison_tol".into(), Json::Num(args.comparison_tol)),
            ("pole_gap_tol".into(), Json::Num(args.pole_gap_tol)),
        ],
        Some(&cfg),
    );
    let content = match args.format {
        Format::Csv => {
            let mut summary = String::new();
            let _ = writeln!(
                summary,
                "verify: max_residual = {:?}, comparison_max_gap = {:?}, pass = {}",
                report.max_residual, report.comparison_max_gap, report.pass
            );
            eprint!("{summary}");
            output::write_csv(&rows)
        }
        Format::Json => report_json(
            spec,
            &rows,
            &lin.poles,
            Some(output::verification_json(&report)),
        ),
    };
    emit(&args.output, &content)?;
    Ok(if report.pass { 0 } else { 2 })
}

fn run_families_list(args: FamiliesListArgs) -> Result<i32, CliError> {
    struct Entry {
        tag: &'static str,
        equation: &'static str,
        parameters: &'static str,
        formula: &'static str,
    }
    let entries = [
        Entry {
            tag: "note-f-zero",
            equation: "z' + z^2 = 0",
            parameters: "--k",
            formula: "z = 1/(x - K)",
        },
        Entry {
            tag: "example1",
            equation: "z' + z^2 = exp(x)",
            parameters: "--k1 --k2",
            formula: "z = e^(x/2) (K1 BesselK(1,t) + K2 BesselI(1,t)) / \
                      (-K1 BesselK(0,t) + K2 BesselI(0,t)), t = 2 e^(x/2)",
        },
        Entry {
            tag: "corollary1",
            equation: "z' + c z^2 = f(x)",
            parameters: "(no closed form; linear-system specialization F = c f, z = p/(c q))",
            formula: "use `solve --a <c> --f <f>`",
        },
        Entry {
            tag: "corollary2",
            equation: "z' + c x^n z^2 = f(x)",
            parameters: "(no closed form; F = c x^n f + n(n+2)/(4x^2), z = p/(c x^n q) + n/(2c x^(n+1)))",
            formula: "use `solve --a \"<c>*x^<n>\" --f <f>`",
        },
        Entry {
            tag: "corollary3",
            equation: "z' + c z^2 = x^n  (c < 0, n > -2)",
            parameters: "--c --n --k1 --k2",
            formula: "z = -(1/sqrt(-c)) x^(n/2) (K1 J_nu1(u) + K2 Y_nu1(u)) / \
                      (K1 J_nu2(u) + K2 Y_nu2(u)), u = 2 sqrt(-c)/(n+2) x^(n/2+1)",
        },
        Entry {
            tag: "corollary4",
            equation: "z' + c z^2 = x^-2  (c >= -1/4, c != 0)",
            parameters: "--c --k1 --k2",
            formula: "z = -(2/x) (K1 x^s + K2) / (K1 (1-s) x^s + K2 (1+s)), s = sqrt(1+4c)",
        },
    ];
    let content = match args.format {
        Format::Json => {
            let arr = Json::Arr(
                entries
                    .iter()
                    .map(|e| {
                        Json::Obj(vec![
                            ("tag".into(), Json::Str(e.tag.into())),
                            ("equation".into(), Json::Str(e.equation.into())),
                            ("parameters".into(), Json::Str(e.parameters.into())),
                            ("formula".into(), Json::Str(e.formula.into())),
                        ])
                    })
                    .collect(),
            );
            let doc = Json::Obj(vec![
                ("families".into(), arr),
                ("version".into(), Json::Str(VERSION.into())),
            ]);
            let mut s = doc.render();
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for e in &entries {
                let _ = writeln!(
                    s,
                    "{}\n  equation:   {}\n  parameters: {}\n  solution:   {}\n",
                    e.tag, e.equation, e.parameters, e.formula
                );
            }
            s
        }
    };
    emit(&None, &content)?;
    Ok(0)
}

// keep clap's derive checked even in lib builds
#[allow(dead_code)]
fn assert_cli() {
    Cli::command().debug_assert();
}
