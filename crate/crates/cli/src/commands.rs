//! Command implementations.

use heinz_core::ballharmonic::{MC_GUARD_RADIUS, MIN_SAMPLES};
use heinz_core::heinz::{
    check_coefficient_split, check_monotone_v, check_positivity_2f1, closed_form_oracle,
    heinz_constant, u_profile, v_profile, Which,
};
use heinz_core::specfun::{check_kummer_quadratic, check_transform_3f2_to_4f3};
use heinz_core::verify::{ratio_suite, schwarz_suite, sharpness_sweep, NamedReport};
use heinz_core::{Error, VerificationReport64};

use crate::args::{Check, Format, Grid, VerifyArgs};
use crate::output::{Cell, CheckReport, Table, VerifyOutput};

#[derive(Debug)]
pub enum CliError {
    /// Rejected input; exit code 3.
    Usage(String),
    /// Failure inside a computation; exit code 2.
    Compute(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "invalid arguments: {s}"),
            CliError::Compute(e) => write!(f, "computation failed: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

/// Rendered output and whether every check passed.
pub struct Rendered {
    pub text: String,
    pub pass: bool,
}

pub fn constants(dims: &[usize], tol: f64, format: Format) -> Result<Rendered, CliError> {
    let mut rows = Vec::with_capacity(dims.len());
    for &n in dims {
        let c = heinz_constant(n, tol)?;
        let (reference, discrepancy) = match closed_form_oracle(n, Which::V, 1.0) {
            Ok(r) => (Cell::Num(r), Cell::Num((c.value - r).abs())),
            Err(_) => (Cell::Empty, Cell::Empty),
        };
        rows.push(vec![Cell::Int(n), Cell::Num(c.value), Cell::Num(c.error_bound), reference, discrepancy]);
    }
    let table = Table {
        headers: vec!["n", "C_n", "error_bound", "reference", "discrepancy"],
        rows,
    };
    Ok(Rendered {
        text: table.render(format),
        pass: true,
    })
}

pub fn profile(n: usize, which: Which, grid: &Grid, tol: f64, format: Format) -> Result<Rendered, CliError> {
    if let Some(r) = grid.0.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(CliError::Usage(format!("radius {r} outside [0, 1]")));
    }
    let mut rows = Vec::with_capacity(grid.0.len());
    for &r in &grid.0 {
        let v = match which {
            Which::U => u_profile(n, r, tol)?,
            Which::V => v_profile(n, r, tol)?,
        };
        let (reference, discrepancy) = match closed_form_oracle(n, which, r) {
            Ok(o) => (Cell::Num(o), Cell::Num((v.value - o).abs())),
            Err(_) => (Cell::Empty, Cell::Empty),
        };
        rows.push(vec![
            Cell::Int(n),
            Cell::Text(which.to_string()),
            Cell::Num(r),
            Cell::Num(v.value),
            Cell::Num(v.error_bound),
            reference,
            discrepancy,
        ]);
    }
    let table = Table {
        headers: vec!["n", "which", "r", "value", "error_bound", "reference", "discrepancy"],
        rows,
    };
    Ok(Rendered {
        text: table.render(format),
        pass: true,
    })
}

fn check(name: &str, n: usize, map: Option<usize>, report: VerificationReport64) -> CheckReport {
    NamedReport::new(name, n, map, report)
}

fn radii(args: &VerifyArgs, default: &[f64]) -> Vec<f64> {
    args.r.as_ref().map_or_else(|| default.to_vec(), |g| g.0.clone())
}

fn dims(args: &VerifyArgs, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    args.n.as_ref().map_or_else(|| default.collect(), |d| d.0.clone())
}

fn need_samples(args: &VerifyArgs) -> Result<(), CliError> {
    if args.samples < MIN_SAMPLES {
        return Err(CliError::Usage(format!("--samples must be at least {MIN_SAMPLES}")));
    }
    if args.maps == 0 {
        return Err(CliError::Usage("--maps must be positive".into()));
    }
    Ok(())
}

fn check_radii(r: &[f64], lo: f64, hi: f64, strict_hi: bool) -> Result<(), CliError> {
    for &v in r {
        let above = if strict_hi { v >= hi } else { v > hi };
        if v < lo || above {
            return Err(CliError::Usage(format!("radius {v} outside the allowed range")));
        }
    }
    Ok(())
}

fn schwarz(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    need_samples(args)?;
    let radii = radii(args, &[0.2, 0.5, 0.8, 0.95]);
    check_radii(&radii, 0.0, MC_GUARD_RADIUS, false)?;
    let mut out = Vec::new();
    for n in dims(args, 2..=4) {
        out.extend(schwarz_suite(n, args.maps, args.samples, args.seed, &radii)?);
    }
    Ok(out)
}

fn ratio(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    need_samples(args)?;
    let radii = radii(args, &[0.2, 0.5, 0.8, 0.95]);
    check_radii(&radii, 0.0, MC_GUARD_RADIUS, false)?;
    let mut out = Vec::new();
    for n in dims(args, 2..=4) {
        out.extend(ratio_suite(n, args.maps, args.samples, args.seed, &radii)?);
    }
    Ok(out)
}

fn monotone(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let grid = args.grid.as_ref().map_or_else(|| (0..=100).map(|i| i as f64 / 100.0).collect(), |g| g.0.clone());
    check_radii(&grid, 0.0, 1.0, false)?;
    let tol = args.tol.unwrap_or(1e-12);
    let mut out = Vec::new();
    for n in dims(args, 2..=12) {
        out.push(check("monotone", n, None, check_monotone_v(n, &grid, tol)?));
        out.push(check("positivity", n, None, check_positivity_2f1(n, &grid)?));
    }
    Ok(out)
}

fn sharpness(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let radii = radii(args, &[0.9, 0.99, 0.999]);
    check_radii(&radii, 0.0, 1.0, true)?;
    let m = args.m.clone().unwrap_or_else(|| vec![2, 5, 20, 100]);
    if m.iter().any(|&m| m < 2) {
        return Err(CliError::Usage("sequence members need m >= 2".into()));
    }
    let tol = args.tol.unwrap_or(1e-10);
    dims(args, 2..=3)
        .into_iter()
        .map(|n| Ok(check("sharpness", n, None, sharpness_sweep(n, &m, &radii, tol)?.report())))
        .collect()
}

fn identities(args: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let radii = radii(args, &[0.1, 0.5, 0.9]);
    for &r in &radii {
        if !(r > 0.0 && r < 1.0) {
            return Err(CliError::Usage(format!("radius {r} outside (0, 1)")));
        }
    }
    if args.k_max == 0 {
        return Err(CliError::Usage("--k-max must be positive".into()));
    }
    let tol = args.tol.unwrap_or(1e-12);
    let mut out = Vec::new();
    for n in dims(args, 2..=10) {
        let transform = radii
            .iter()
            .map(|&r| Ok(check_transform_3f2_to_4f3(n, r, tol)?.to_point(vec![r])))
            .collect::<Result<Vec<_>, Error>>()?;
        let kummer = radii
            .iter()
            .map(|&r| Ok(check_kummer_quadratic(n, r, tol)?.to_point(vec![r])))
            .collect::<Result<Vec<_>, Error>>()?;
        out.push(check("transform", n, None, VerificationReport64::from_points(transform)));
        out.push(check("kummer", n, None, VerificationReport64::from_points(kummer)));
        out.push(check("coefficient-split", n, None, check_coefficient_split(n, args.k_max)?));
    }
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> Result<Rendered, CliError> {
    let checks = match args.check {
        Check::Schwarz => schwarz(args)?,
        Check::Ratio => ratio(args)?,
        Check::Monotone => monotone(args)?,
        Check::Sharpness => sharpness(args)?,
        Check::Identities => identities(args)?,
    };
    let output = VerifyOutput::new(checks);
    Ok(Rendered {
        text: output.render(args.output.format.unwrap_or(Format::Json)),
        pass: output.pass,
    })
}

