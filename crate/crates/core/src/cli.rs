//! Command-line front end. Every table goes out as CSV with full-precision
//! numbers; infinite energies are written as `inf`.

use std::ffi::OsString;
use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{e_ni, e_ub_molecular, g_func, j_func};
use crate::error::{Error, Result};
use crate::groundstate::{e_electronic_many, fh_derivative, ground_state, GridSpec, DEFAULT_BOX, DEFAULT_H};
use crate::molecule::{asymptotics, find_equilibrium, AsymptoticsReport, EquilibriumReport};
use crate::one_electron::{alpha0, e_ub};
use crate::params::ModelParams;
use crate::units::convert_units;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_NO_BINDING: i32 = 4;

pub const DEFAULT_ACCURACY: f64 = 5e-3;

pub const CURVE_HEADER: [&str; 10] = [
    "a",
    "j",
    "g",
    "e_ub",
    "e_ni",
    "e_exact",
    "E_ub",
    "E_ni",
    "E_exact",
    "one_electron",
];

#[derive(Debug, Parser)]
#[command(name = "h2delta", version, about = "Delta-potential model of H2 in a strong magnetic field")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate bound functions and energy curves over a range of a.
    Curve(CurveArgs),
    /// Locate the equilibrium half-distance and report it in physical units.
    Equilibrium(EquilibriumArgs),
    /// Sweep epsilon and fit a_eq ~ c sqrt(epsilon).
    Asymptotics(AsymptoticsArgs),
    /// Solve the two-electron problem on a single mesh.
    Groundstate(GroundstateArgs),
    /// Convert the field specification (and optionally a, E) to physical units.
    Units(UnitsArgs),
}

/// Exactly one of `--L`, `--B`, `--epsilon`.
#[derive(Debug, Args, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct FieldArgs {
    /// Logarithmic field parameter L.
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Field strength in atomic units.
    #[arg(long = "B")]
    pub b: Option<f64>,
    /// Scaled nuclear repulsion epsilon = Z / L.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = 0.0)]
    pub a_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a_max: f64,
    /// Number of points, a_min and a_max included.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_ACCURACY)]
    pub accuracy: f64,
    /// Also solve the two-electron problem at every point.
    #[arg(long)]
    pub with_exact: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EquilibriumArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value_t = DEFAULT_ACCURACY)]
    pub accuracy: f64,
    /// Append a CSV record of the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub eps_min: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub eps_max: f64,
    /// Number of log-spaced epsilon values.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_ACCURACY)]
    pub accuracy: f64,
    /// Skip the two-electron solver and fit the upper bound only.
    #[arg(long)]
    pub ub_only: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroundstateArgs {
    /// Nuclear charge; `inf` switches the electron repulsion off.
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[arg(long)]
    pub a: f64,
    /// Core mesh spacing.
    #[arg(long, default_value_t = DEFAULT_H)]
    pub h: f64,
    /// Half-width of the square domain.
    #[arg(long = "box", default_value_t = DEFAULT_BOX)]
    pub box_half_width: f64,
    /// Write the eigenfunction as CSV to this file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UnitsArgs {
    #[arg(long = "Z", default_value_t = 1.0)]
    pub z: f64,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Scaled half-distance to convert.
    #[arg(long)]
    pub a: Option<f64>,
    /// Scaled energy to convert.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
}

impl FieldArgs {
    pub fn params(&self, z: f64) -> Result<ModelParams> {
        match (self.l, self.b, self.epsilon) {
            (Some(l), None, None) => ModelParams::from_l(z, l),
            (None, Some(b), None) => ModelParams::from_field(z, b),
            (None, None, Some(e)) => ModelParams::from_epsilon(z, e),
            _ => Err(Error::Domain("give exactly one of --L, --B, --epsilon".into())),
        }
    }
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::InvalidGrid(_) | Error::Io(_) => EXIT_CONFIG,
        Error::NoBinding { .. } => EXIT_NO_BINDING,
        Error::NoEquilibrium { .. }
        | Error::PreconditionFailed(_)
        | Error::NonConvergence { .. }
        | Error::AccuracyNotReached { .. } => EXIT_SOLVER,
    }
}

/// Full-precision decimal, `inf` for infinities, empty for missing values.
pub fn format_number(x: Option<f64>) -> String {
    match x {
        None => String::new(),
        Some(v) if v == f64::INFINITY => "inf".into(),
        Some(v) if v == f64::NEG_INFINITY => "-inf".into(),
        Some(v) => format!("{v:.16e}"),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(io::Error::other(e))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Curve(args) => cmd_curve(args),
        Command::Equilibrium(args) => cmd_equilibrium(args),
        Command::Asymptotics(args) => cmd_asymptotics(args),
        Command::Groundstate(args) => cmd_groundstate(args),
        Command::Units(args) => cmd_units(args),
    }
}

/// One row of the curve table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub a: f64,
    pub j: f64,
    pub g: f64,
    pub e_ub: f64,
    pub e_ni: f64,
    pub e_exact: Option<f64>,
    pub big_e_ub: f64,
    pub big_e_ni: f64,
    pub big_e_exact: Option<f64>,
    pub one_electron: f64,
}

impl CurveRow {
    fn record(&self) -> Vec<String> {
        vec![
            format_number(Some(self.a)),
            format_number(Some(self.j)),
            format_number(Some(self.g)),
            format_number(Some(self.e_ub)),
            format_number(Some(self.e_ni)),
            format_number(self.e_exact),
            format_number(Some(self.big_e_ub)),
            format_number(Some(self.big_e_ni)),
            format_number(self.big_e_exact),
            format_number(Some(self.one_electron)),
        ]
    }
}

pub fn curve_rows(args: &CurveArgs) -> Result<Vec<CurveRow>> {
    let params = args.field.params(args.z)?;
    if args.n < 2 {
        return Err(Error::Domain(format!("--n must be >= 2, got {}", args.n)));
    }
    if !(args.a_min >= 0.0) || !(args.a_max > args.a_min) {
        return Err(Error::Domain(format!(
            "need 0 <= a_min < a_max, got [{}, {}]",
            args.a_min, args.a_max
        )));
    }
    let step = (args.a_max - args.a_min) / (args.n - 1) as f64;
    let a: Vec<f64> = (0..args.n)
        .map(|k| if k + 1 == args.n { args.a_max } else { args.a_min + k as f64 * step })
        .collect();
    let exact: Vec<Option<f64>> = if args.with_exact {
        e_electronic_many(&a, args.z, args.accuracy)?
            .into_iter()
            .map(|e| Some(e.value))
            .collect()
    } else {
        vec![None; a.len()]
    };
    let eps = params.epsilon;
    let coulomb = |x: f64| {
        if eps == 0.0 {
            0.0
        } else if x == 0.0 {
            f64::INFINITY
        } else {
            eps / (2.0 * x)
        }
    };
    a.iter()
        .zip(exact)
        .map(|(&x, ex)| {
            let al = alpha0(x)?;
            Ok(CurveRow {
                a: x,
                j: j_func(x, args.z)?,
                g: g_func(x, args.z)?,
                e_ub: e_ub(x, args.z)?,
                e_ni: -al * al,
                e_exact: ex,
                big_e_ub: e_ub_molecular(x, &params)?,
                big_e_ni: e_ni(x, eps)?,
                big_e_exact: ex.map(|v| v + coulomb(x)),
                one_electron: -0.5 * al * al,
            })
        })
        .collect()
}

pub fn cmd_curve(args: &CurveArgs) -> Result<()> {
    let rows = curve_rows(args)?;
    let mut w = csv::Writer::from_writer(output(args.out.as_deref())?);
    w.write_record(CURVE_HEADER).map_err(csv_error)?;
    for r in &rows {
        w.write_record(r.record()).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub const EQUILIBRIUM_HEADER: [&str; 12] = [
    "Z",
    "epsilon",
    "L",
    "a_eq",
    "E_eq",
    "a_lo",
    "a_hi",
    "e_prime_at_eq",
    "R_angstrom",
    "E_hartree",
    "E_eV",
    "B_tesla",
];

fn equilibrium_record(r: &EquilibriumReport, l: f64) -> Vec<String> {
    [
        r.z,
        r.epsilon,
        l,
        r.a_eq,
        r.e_eq,
        r.a_bracket.0,
        r.a_bracket.1,
        r.e_prime_at_eq,
        r.physical.r_angstrom,
        r.physical.e_hartree,
        r.physical.e_ev,
        r.physical.b_tesla,
    ]
    .iter()
    .map(|&v| format_number(Some(v)))
    .collect()
}

pub fn cmd_equilibrium(args: &EquilibriumArgs) -> Result<()> {
    let params = args.field.params(args.z)?;
    let report = find_equilibrium(&params, args.accuracy)?;
    let l = params.field_l();
    let p = &report.physical;
    println!("Z          = {}", report.z);
    println!("epsilon    = {}", report.epsilon);
    println!("L          = {l}");
    println!("a_eq       = {:.6}  (bracket [{:.6}, {:.6}])", report.a_eq, report.a_bracket.0, report.a_bracket.1);
    println!("E_eq       = {:.6}  (error estimate {:.1e})", report.e_eq, report.error_estimate);
    println!("e'(a_eq)   = {:.6}  (eps / 2a^2 = {:.6})", report.e_prime_at_eq, report.epsilon / (2.0 * report.a_eq * report.a_eq));
    println!("R_eq       = {:.4e} Angstrom", p.r_angstrom);
    println!("E_eq       = {:.4} Hartree = {:.3} eV", p.e_hartree, p.e_ev);
    println!("B          = {:.4e} a.u. = {:.4e} T", p.b_au, p.b_tesla);
    if let Some(path) = &args.out {
        let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut w = csv::Writer::from_writer(file);
        if fresh {
            w.write_record(EQUILIBRIUM_HEADER).map_err(csv_error)?;
        }
        w.write_record(equilibrium_record(&report, l)).map_err(csv_error)?;
        w.flush()?;
    }
    Ok(())
}

pub const ASYMPTOTICS_HEADER: [&str; 5] = ["epsilon", "a_eq_ub", "a_eq", "ratio_ub", "ratio"];

/// Upper-bound-only sweep: the full-solver columns are left empty.
fn ub_only_report(z: f64, eps: &[f64]) -> Result<AsymptoticsReport> {
    use crate::bounds::equilibrium_ub;
    use crate::molecule::{c_ub_closed_form, fit_log_slope, fit_sqrt_coefficient, AsymptoticsRow};
    let rows: Vec<AsymptoticsRow> = eps
        .iter()
        .map(|&e| {
            Ok(AsymptoticsRow {
                epsilon: e,
                a_eq_ub: equilibrium_ub(&ModelParams::from_epsilon(z, e)?)?.location,
                a_eq: f64::NAN,
            })
        })
        .collect::<Result<_>>()?;
    let a_ub: Vec<f64> = rows.iter().map(|r| r.a_eq_ub).collect();
    Ok(AsymptoticsReport {
        z,
        c_ub: fit_sqrt_coefficient(eps, &a_ub),
        c: f64::NAN,
        slope: f64::NAN,
        slope_ub: fit_log_slope(eps, &a_ub),
        c_ub_closed_form: c_ub_closed_form(z),
        rows,
    })
}

pub fn asymptotics_report(args: &AsymptoticsArgs) -> Result<AsymptoticsReport> {
    if args.n < 2 {
        return Err(Error::Domain(format!("--n must be >= 2, got {}", args.n)));
    }
    if !(args.eps_min > 0.0) || !(args.eps_max > args.eps_min) {
        return Err(Error::Domain(format!(
            "need 0 < eps_min < eps_max, got [{}, {}]",
            args.eps_min, args.eps_max
        )));
    }
    let eps = crate::numeric::logspace(args.eps_min, args.eps_max, args.n);
    if args.ub_only {
        ub_only_report(args.z, &eps)
    } else {
        asymptotics(args.z, &eps, args.accuracy)
    }
}

pub fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<()> {
    let report = asymptotics_report(args)?;
    let mut w = csv::Writer::from_writer(output(args.out.as_deref())?);
    w.write_record(ASYMPTOTICS_HEADER).map_err(csv_error)?;
    let opt = |v: f64| if v.is_nan() { None } else { Some(v) };
    for r in &report.rows {
        let s = r.epsilon.sqrt();
        w.write_record([
            format_number(Some(r.epsilon)),
            format_number(Some(r.a_eq_ub)),
            format_number(opt(r.a_eq)),
            format_number(Some(r.a_eq_ub / s)),
            format_number(opt(r.a_eq / s)),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    drop(w);
    eprintln!("c_ub (fit)          = {:.6}", report.c_ub);
    eprintln!("c_ub (closed form)  = {:.6}", report.c_ub_closed_form);
    eprintln!("slope_ub            = {:.4}", report.slope_ub);
    if !args.ub_only {
        eprintln!("c (fit)             = {:.6}", report.c);
        eprintln!("slope               = {:.4}", report.slope);
    }
    Ok(())
}

pub fn cmd_groundstate(args: &GroundstateArgs) -> Result<()> {
    let grid = GridSpec::new(args.a, args.h, args.box_half_width)?;
    let state = ground_state(args.a, args.z, &grid)?;
    println!("a          = {}", args.a);
    println!("Z          = {}", args.z);
    println!("h, box     = {}, {}", grid.h(), grid.box_half_width);
    println!("points     = {}^2", state.points_per_axis());
    println!("energy     = {:.12}", state.energy);
    println!("residual   = {:.3e}", state.residual);
    println!("iterations = {}", state.iterations);
    if args.a > 0.0 {
        println!("e'(a) FH   = {:.8}", fh_derivative(&state)?);
    }
    if let Some(path) = &args.dump {
        state.write_csv(io::BufWriter::new(File::create(path)?))?;
    }
    Ok(())
}

pub fn cmd_units(args: &UnitsArgs) -> Result<()> {
    let params = args.field.params(args.z)?;
    let b = params.field_b()?;
    println!("Z        = {}", params.z);
    println!("epsilon  = {}", params.epsilon);
    println!("L        = {}", params.field_l());
    println!("B        = {:.6e} a.u. = {:.6e} T", b, b * crate::units::UnitSystem::ATOMIC.b0_tesla);
    if let (Some(a), Some(e)) = (args.a, args.energy) {
        let p = convert_units(a, e, &params)?;
        println!("R        = {:.6e} Angstrom", p.r_angstrom);
        println!("E        = {:.6} Hartree = {:.4} eV", p.e_hartree, p.e_ev);
    } else if let Some(a) = args.a {
        let p = convert_units(a, 0.0, &params)?;
        println!("R        = {:.6e} Angstrom", p.r_angstrom);
    } else if let Some(e) = args.energy {
        let p = convert_units(1.0, e, &params)?;
        println!("E        = {:.6} Hartree = {:.4} eV", p.e_hartree, p.e_ev);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(Some(f64::INFINITY)), "inf");
        assert_eq!(format_number(None), "");
        assert_eq!(format_number(Some(0.1)), "1.0000000000000001e-1");
        let x: f64 = format_number(Some(std::f64::consts::PI)).parse().unwrap();
        assert_eq!(x, std::f64::consts::PI);
    }

    #[test]
    fn field_group_is_exclusive() {
        assert!(Cli::try_parse_from(["h2delta", "units", "--L", "10", "--epsilon", "0.1"]).is_err());
        assert!(Cli::try_parse_from(["h2delta", "units"]).is_err());
        assert!(Cli::try_parse_from(["h2delta", "units", "--B", "1e6"]).is_ok());
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Domain(String::new())), EXIT_CONFIG);
        assert_eq!(
            exit_code(&Error::NoBinding {
                min_energy: -0.9,
                a_at_min: 0.5
            }),
            EXIT_NO_BINDING
        );
        assert_eq!(
            exit_code(&Error::NonConvergence {
                iterations: 1,
                residual: 1.0
            }),
            EXIT_SOLVER
        );
    }

    #[test]
    fn curve_rows_reject_empty_range() {
        let cli = Cli::try_parse_from([
            "h2delta", "curve", "--epsilon", "0.1", "--a-min", "0.5", "--a-max", "0.5",
        ])
        .unwrap();
        let Command::Curve(args) = cli.command else { panic!() };
        assert!(matches!(curve_rows(&args), Err(Error::Domain(_))));
    }
}
