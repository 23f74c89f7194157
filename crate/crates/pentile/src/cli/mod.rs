//! Command-line frontend. `main` only forwards `std::env::args` to [`run`].

pub mod goldens;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use nalgebra::Vector3;
use serde_json::json;

use crate::angle::{default_tol, parse_angle};
use crate::atlas::{build, solve_family, Family, PpVariant};
use crate::combmap::{counting_report, extract_avc, verify_tiling, CombinatorialTiling, TilingJson};
use crate::pentagon::{existence_residuals, rotation_closure_residual, simplicity_check, PentagonSpec};
use crate::realize::{realize_with_tol, render, total_area, ExportFormat, ExportOptions, Exportable, CLOSURE_TOL};
use crate::vertex::{balance_check, enumerate_vertices, AngleAssignment, Avc, LabelMode};

#[derive(Parser, Debug)]
#[command(name = "pentile", version, about = "Spherical tilings by congruent a⁴b pentagons")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct FamilyArgs {
    /// e1, f1e1, f2e1, e2, re2, f1e2, f2e2, f2e2-prime, f2e2-doubleprime, pp8, pp20, s16
    #[arg(long)]
    pub family: String,
    /// Number of tiles.
    #[arg(long)]
    pub f: usize,
    /// Subdivision labeling: alpha3 or gamma3.
    #[arg(long)]
    pub variant: Option<PpVariant>,
    /// Patch shift for f2e2-prime.
    #[arg(long)]
    pub shift: Option<usize>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        let mut fam: Family = self.family.parse().map_err(|e: String| anyhow!(e))?;
        match (&mut fam, self.variant, self.shift) {
            (Family::PP8(v) | Family::PP20(v), Some(w), None) => *v = w,
            (Family::F2E2Prime { shift }, None, Some(s)) => *shift = s,
            (_, None, None) => {}
            _ => bail!("--variant applies to pp8/pp20 and --shift to f2e2-prime"),
        }
        Ok(fam)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve the prototile of a family.
    Solve {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Edge length a for the one-parameter E2 family ("p/q pi" or radians).
        #[arg(long)]
        a: Option<String>,
        /// Write the pentagon JSON here as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the combinatorial tiling of a family.
    Build {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a tiling file.
    Verify { tiling: PathBuf },
    /// Place a tiling on the sphere and write it as obj, svg or json.
    Realize {
        tiling: PathBuf,
        #[arg(long)]
        pentagon: PathBuf,
        /// Output file; the extension picks the format.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        export: ExportArgs,
    },
    /// Write a tiling in another format, realizing it first when a pentagon is given.
    Export {
        tiling: PathBuf,
        #[arg(long)]
        format: Option<ExportFormat>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        pentagon: Option<PathBuf>,
        #[command(flatten)]
        export: ExportArgs,
    },
    /// List the vertex types whose angles sum to 2π.
    Enumerate {
        /// Five angles α,β,γ,δ,ε, comma separated ("2/3 pi" or radians).
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Tile count, to check the pentagon angle sum.
        #[arg(long)]
        f: Option<i64>,
    },
    /// Check the reference values, one row per acceptance criterion.
    Goldens,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ExportArgs {
    /// Geodesic samples per edge.
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
    /// Stereographic pole for svg as "x,y,z".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pole: Option<Vec<f64>>,
    /// Closure tolerance (defaults to PENTILE_TOL, then 1e-8).
    #[arg(long)]
    pub tol: Option<f64>,
}

impl ExportArgs {
    fn options(&self) -> Result<ExportOptions> {
        let mut o = ExportOptions { arc_samples: self.samples.max(1), ..Default::default() };
        match self.pole.as_deref() {
            None => {}
            Some([x, y, z]) if x.hypot(*y).hypot(*z) > 0.0 => o.pole = Vector3::new(*x, *y, *z),
            Some(_) => bail!("--pole needs three coordinates, not all zero"),
        }
        Ok(o)
    }

    fn tol(&self) -> f64 {
        self.tol.unwrap_or_else(|| if std::env::var_os("PENTILE_TOL").is_some() { default_tol() } else { CLOSURE_TOL })
    }
}

/// Parses `argv` (program name first) and runs it, writing to `out`.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json = cli.json;
    match dispatch(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            1
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Solve { fam, a, out: path } => solve(&fam, a.as_deref(), path.as_deref(), json, out),
        Command::Build { fam, out: path } => {
            let family = fam.family()?;
            let t = build(family, fam.f)?;
            std::fs::write(&path, t.to_json()).with_context(|| format!("writing {}", path.display()))?;
            if json {
                writeln!(out, "{}", json!({ "family": family.to_string(), "f": fam.f, "out": path }))?;
            } else {
                writeln!(out, "{family} f={} written to {}", fam.f, path.display())?;
            }
            Ok(true)
        }
        Command::Verify { tiling } => verify(&read_tiling(&tiling)?, json, out),
        Command::Realize { tiling, pentagon, out: path, export } => {
            let format = ExportFormat::from_path(&path).ok_or_else(|| anyhow!("cannot tell the format of {}", path.display()))?;
            realize_to(&read_tiling(&tiling)?, &read_pentagon(&pentagon)?, format, &path, &export, json, out)
        }
        Command::Export { tiling, format, out: path, pentagon, export } => {
            let format = format
                .or_else(|| ExportFormat::from_path(&path))
                .ok_or_else(|| anyhow!("give --format or an output extension"))?;
            let t = read_tiling(&tiling)?;
            match pentagon {
                Some(p) => realize_to(&t, &read_pentagon(&p)?, format, &path, &export, json, out),
                None => {
                    let s = render(Exportable::Bare(&t), format, &export.options()?)?;
                    std::fs::write(&path, s)?;
                    writeln!(out, "written to {}", path.display())?;
                    Ok(true)
                }
            }
        }
        Command::Enumerate { angles, max_degree, f } => enumerate(&angles, max_degree, f, json, out),
        Command::Goldens => {
            let rows = goldens::run_goldens();
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                for r in &rows {
                    writeln!(out, "{:>2} {} {}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name)?;
                    for d in r.details.iter().filter(|d| d.starts_with("FAIL")) {
                        writeln!(out, "     {d}")?;
                    }
                }
            }
            Ok(rows.iter().all(|r| r.passed))
        }
    }
}

fn read_tiling(p: &Path) -> Result<CombinatorialTiling> {
    let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    let j: TilingJson = serde_json::from_str(&s).with_context(|| format!("parsing {}", p.display()))?;
    Ok(j.to_tiling()?)
}

fn read_pentagon(p: &Path) -> Result<PentagonSpec> {
    let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&s).with_context(|| format!("parsing {}", p.display()))
}

fn solve(fam: &FamilyArgs, a: Option<&str>, path: Option<&Path>, json: bool, out: &mut dyn Write) -> Result<bool> {
    let family = fam.family()?;
    let a = a.map(|s| parse_angle(s).map(|v| v.radians())).transpose()?;
    let p = solve_family(family, fam.f, a)?;
    let res = existence_residuals(p.angles(), p.a);
    let closure = rotation_closure_residual(&p);
    let simple = simplicity_check(&p).is_simple();
    let tol = default_tol().max(1e-9);
    let ok = res.max_abs() < tol && closure < tol && simple;
    if let Some(path) = path {
        std::fs::write(path, serde_json::to_string_pretty(&p)?)?;
    }
    if json {
        let v = json!({
            "family": family.to_string(), "f": fam.f, "pentagon": p,
            "residuals": res, "closure_residual": closure, "simple": simple, "pass": ok,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        writeln!(out, "{family} f={}", fam.f)?;
        write!(out, "{p}")?;
        writeln!(out, "area = {:.12} (4π/f = {:.12})", p.area(), 4.0 * PI / fam.f as f64)?;
        writeln!(out, "identity residuals: {:.2e} {:.2e} {:.2e}", res.r1, res.r2, res.r3)?;
        writeln!(out, "rotation closure residual: {closure:.2e}")?;
        writeln!(out, "simple: {simple}")?;
    }
    Ok(ok)
}

fn verify(t: &CombinatorialTiling, json: bool, out: &mut dyn Write) -> Result<bool> {
    let rep = verify_tiling(t);
    let structural = rep.checks.iter().take(3).all(|c| c.passed);
    let avc = if structural { extract_avc(t) } else { BTreeMap::new() };
    let balance = balance_check(&Avc(avc.keys().copied().collect()));
    let counting = structural && counting_report(t, LabelMode::Distinct).pass();
    let ok = rep.pass() && balance && counting;
    if json {
        let avc_j: BTreeMap<String, usize> = avc.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let v = json!({ "report": rep, "avc": avc_j, "balance": balance, "counting": counting, "pass": ok });
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        return Ok(ok);
    }
    writeln!(out, "{rep}")?;
    writeln!(out, "  [{}] balance", if balance { "pass" } else { "FAIL" })?;
    writeln!(out, "  [{}] counting", if counting { "pass" } else { "FAIL" })?;
    if structural {
        writeln!(out, "AVC:")?;
        for (v, n) in &avc {
            writeln!(out, "  {v}: {n}")?;
        }
    }
    writeln!(out, "{}", if ok { "pass" } else { "FAIL" })?;
    Ok(ok)
}

fn realize_to(
    t: &CombinatorialTiling,
    p: &PentagonSpec,
    format: ExportFormat,
    path: &Path,
    export: &ExportArgs,
    json: bool,
    out: &mut dyn Write,
) -> Result<bool> {
    let r = realize_with_tol(t, p, export.tol())?;
    let s = render(Exportable::Realized(&r), format, &export.options()?)?;
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    let area = total_area(&r);
    let bad = r.non_simple_tiles();
    if json {
        let v = json!({
            "out": path, "closure_residual": r.closure_residual, "total_area": area,
            "non_simple_tiles": bad, "pass": bad.is_empty(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "closure residual: {:.2e}", r.closure_residual)?;
        writeln!(out, "total area: {area:.12} (4π = {:.12})", 4.0 * PI)?;
        writeln!(out, "non-simple tiles: {bad:?}")?;
        writeln!(out, "written to {}", path.display())?;
    }
    Ok(bad.is_empty())
}

fn enumerate(angles: &[String], max_degree: usize, f: Option<i64>, json: bool, out: &mut dyn Write) -> Result<bool> {
    let vals: Vec<_> = angles.iter().map(|s| parse_angle(s)).collect::<Result<_, _>>()?;
    let vals: [_; 5] = vals.try_into().map_err(|_| anyhow!("need exactly five angles"))?;
    let a = AngleAssignment::new(vals, f)?;
    let avc = enumerate_vertices(&a, max_degree, default_tol())?;
    if json {
        let types: Vec<String> = avc.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", json!({ "avc": types }))?;
    } else {
        for v in avc.iter() {
            writeln!(out, "{v}")?;
        }
    }
    Ok(true)
}
