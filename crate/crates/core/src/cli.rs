//! Command-line front end. Every command prints a [`ReportEnvelope`] as JSON
//! (or a markdown table with `--markdown`).
//!
//! Exit codes: 0 all pass, 1 verification failure, 2 usage or input error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::GeoError;
use crate::legendre::{self, ModelFile, PotentialModel};
use crate::report::{ClaimResult, ReportEnvelope};
use crate::suites::{self, Space};
use crate::tps::Tps;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tpsgeo", version, about = "Exact geometry of the thermodynamical phase space")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Render the report as a markdown table.
    #[arg(long, global = true)]
    pub markdown: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpaceArg {
    Tps,
    Sympl,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::Tps => Space::Tps,
            SpaceArg::Sympl => Space::Sympl,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Christoffel, Ricci, scalar and sectional curvature suites.
    Curvature {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        n: usize,
    },
    /// Polynomial Killing fields: kernel dimension, catalog span, brackets.
    Killing {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Analyse a potential on a list of base points or a grid.
    Potential {
        /// JSON model file: {name, convention, partition, parameters, model}.
        #[arg(long)]
        model: PathBuf,
        /// JSON list of base points.
        #[arg(long, conflicts_with = "grid")]
        points: Option<PathBuf>,
        /// Per-axis `lo:hi:steps`, comma separated, e.g. `0.5:2:10,1.5:3:10`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Every verification suite, aggregated.
    VerifyAll {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Restrict to these groups (tps, sympl, heisenberg, legendre, projective, negative-control).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Self-test: run the curvature suites on G with one sign flipped.
        #[arg(long)]
        tamper: bool,
    },
}

struct Usage(String);

impl From<GeoError> for Usage {
    fn from(e: GeoError) -> Self {
        Usage(e.to_string())
    }
}

fn check_n(space: Space, n: usize) -> Result<(), Usage> {
    if n == 0 || n > space.max_n() {
        return Err(Usage(format!("--n must be in 1..={} for this space", space.max_n())));
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<(f64, f64, usize)>, Usage> {
    spec.split(',')
        .map(|axis| {
            let parts: Vec<&str> = axis.split(':').collect();
            if parts.len() != 3 {
                return Err(Usage(format!("grid axis '{axis}': expected lo:hi:steps")));
            }
            let lo = parts[0].trim().parse::<f64>().map_err(|e| Usage(format!("grid axis '{axis}': {e}")))?;
            let hi = parts[1].trim().parse::<f64>().map_err(|e| Usage(format!("grid axis '{axis}': {e}")))?;
            let steps = parts[2].trim().parse::<usize>().map_err(|e| Usage(format!("grid axis '{axis}': {e}")))?;
            if steps == 0 {
                return Err(Usage(format!("grid axis '{axis}': steps must be positive")));
            }
            Ok((lo, hi, steps))
        })
        .collect()
}

fn read_points(path: &PathBuf) -> Result<Vec<Vec<f64>>, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let list = v.get("points").cloned().unwrap_or(v);
    serde_json::from_value(list).map_err(|e| Usage(format!("{}: expected a list of points: {e}", path.display())))
}

fn curvature(space: Space, n: usize) -> Result<Vec<ClaimResult>, Usage> {
    check_n(space, n)?;
    Ok(suites::curvature_suite(space, n)?)
}

fn potential(model: &PathBuf, points: &Option<PathBuf>, grid: &Option<String>) -> Result<Vec<ClaimResult>, Usage> {
    let text = std::fs::read_to_string(model).map_err(|e| Usage(format!("{}: {e}", model.display())))?;
    let m: PotentialModel = ModelFile::parse(&text)
        .and_then(|f| f.build())
        .map_err(|e| Usage(format!("{}: {e}", model.display())))?;
    let pts = match (points, grid) {
        (Some(p), _) => read_points(p)?,
        (None, Some(g)) => legendre::grid(&parse_grid(g)?),
        (None, None) => return Err(Usage("one of --points or --grid is required".into())),
    };
    if let Some(bad) = pts.iter().find(|p| p.len() != m.nvars) {
        return Err(Usage(format!("point {bad:?} has {} coordinates, model needs {}", bad.len(), m.nvars)));
    }
    let mut out = Vec::with_capacity(pts.len() + 1);
    for (i, (p, r)) in pts.iter().zip(legendre::analyze_points(&m, &pts)).enumerate() {
        let claim = format!("point {i}: surface residuals");
        out.push(match r {
            Ok(a) => {
                let ok = a.theta_residual < 1e-12 && a.metric_route_diff < 1e-10 * (1.0 + a.metric.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs())));
                ClaimResult::numeric(claim, "legendre/analysis", ok, serde_json::to_value(&a).expect("record serializes"))
            }
            Err(e) => ClaimResult::numeric(claim, "legendre/analysis", false, json!({"point": p, "error": e.to_string()})),
        });
    }
    if m.homogeneous_degree.is_some() {
        let ok_pts: Vec<Vec<f64>> = pts.iter().filter(|p| legendre::surface_point(&m, p).is_ok()).cloned().collect();
        match legendre::homogeneity_check(&m, &ok_pts) {
            Ok(h) => {
                let ok = h.scaling_residual < 1e-12
                    && h.constitutive_residual.is_none_or(|c| c < 1e-12)
                    && h.gibbs_duhem_residual.is_none_or(|c| c < 1e-12);
                out.push(ClaimResult::numeric(
                    "homogeneity of the declared degree",
                    "legendre/homogeneity",
                    ok,
                    serde_json::to_value(&h).expect("report serializes"),
                ));
            }
            Err(e) => out.push(ClaimResult::numeric("homogeneity of the declared degree", "legendre/homogeneity", false, json!(e.to_string()))),
        }
    } else {
        out.push(ClaimResult::not_applicable(
            "homogeneity of the declared degree",
            "legendre/homogeneity",
            "model declares no homogeneity degree",
        ));
    }
    Ok(out)
}

fn tamper_run(n_max: usize) -> Result<Vec<ClaimResult>, Usage> {
    let mut out = Vec::new();
    for n in 1..=n_max.clamp(1, 3) {
        let t = Tps::new(n)?;
        out.extend(suites::tps_curvature_with(&t, &suites::tampered_metric(&t)?)?);
    }
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<(String, Value, Vec<ClaimResult>), Usage> {
    Ok(match &cli.command {
        Command::Curvature { space, n } => (
            "curvature".into(),
            json!({"space": format!("{space:?}").to_lowercase(), "n": n}),
            curvature((*space).into(), *n)?,
        ),
        Command::Killing { space, n, degree } => {
            let sp: Space = (*space).into();
            check_n(sp, *n)?;
            if *degree == 0 {
                return Err(Usage("--degree must be at least 1".into()));
            }
            let r = suites::killing_report(sp, *n, *degree)?;
            (
                "killing".into(),
                json!({"space": format!("{space:?}").to_lowercase(), "n": n, "degree": degree}),
                r.results,
            )
        }
        Command::Potential { model, points, grid } => (
            "potential".into(),
            json!({"model": model.display().to_string(), "points": points.as_ref().map(|p| p.display().to_string()), "grid": grid}),
            potential(model, points, grid)?,
        ),
        Command::VerifyAll { n_max, only, tamper } => {
            if *n_max == 0 {
                return Err(Usage("--n-max must be positive".into()));
            }
            if let Some(bad) = only.iter().find(|o| !suites::GROUPS.contains(&o.as_str())) {
                return Err(Usage(format!("--only: unknown suite '{bad}'")));
            }
            let results = if *tamper { tamper_run(*n_max)? } else { suites::verify_all(*n_max, only) };
            ("verify-all".into(), json!({"n_max": n_max, "only": only, "tamper": tamper}), results)
        }
    })
}

fn init_threads() -> Result<(), Usage> {
    if let Ok(v) = std::env::var("TPSGEO_THREADS") {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Usage(format!("TPSGEO_THREADS='{v}' is not a positive integer")))?;
        // a second initialisation (tests calling run twice) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command, writes the
/// report, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Err(Usage(msg)) = init_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let (command, inputs, results) = match dispatch(&cli) {
        Ok(x) => x,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let env = ReportEnvelope::new(&command, inputs, results, start.elapsed().as_secs_f64());
    let text = if cli.markdown { env.to_markdown() } else { env.to_json_pretty() + "\n" };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    if env.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        assert_eq!(parse_grid("0.5:2:10,1.5:3:4").ok().unwrap(), vec![(0.5, 2.0, 10), (1.5, 3.0, 4)]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }

    #[test]
    fn out_of_range_n_is_usage() {
        assert_eq!(run(["tpsgeo", "curvature", "--space", "tps", "--n", "0"]), EXIT_USAGE);
        assert_eq!(run(["tpsgeo", "curvature", "--space", "sympl", "--n", "4"]), EXIT_USAGE);
        assert_eq!(run(["tpsgeo", "bogus"]), EXIT_USAGE);
    }
}
