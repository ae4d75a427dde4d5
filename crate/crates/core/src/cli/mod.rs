//! Command-line front end: parameter sweeps written as CSV or JSON, and the
//! verification suite.
//!
//! Exit codes: 0 on success, 1 for usage and I/O errors, 2 when a numerical
//! routine misses its accuracy target or a cross-check fails.

mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::domain::{EdgePoint, Grid, StarGraphConfig, TabulatedSweep};
use crate::error::{Error, Result};
use crate::kernels::{cylinder_kernel, heat_kernel, quantum_kernel, QUANTUM_TOL};
use crate::spectral::{global_density_regular, local_spectral_density, spectral_projection_kernel, staircase_increment};
use crate::vacuum::{energy_density, energy_density_closed, EnergyRoute};
use crate::verify::{self, Tier};
use crate::wavesolve::{evolve_fd_oracle, exact_snapshot, FieldSnapshot, InitialData, SmoothBump};

pub use output::{format_g17, write_csv, write_json, write_table, OutputFormat};

/// Caps the number of worker threads used for sweeps.
pub const THREADS_ENV: &str = "VERTEXKERNELS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ACCURACY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "vertexkernels", version, about = "Kernels, spectral densities and vacuum energy on a star graph with a delta vertex")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local density sigma(omega, x, x), the kernel sigma(omega, x, y), or
    /// (without --x) the vertex's global density.
    Density(DensityArgs),
    /// Vertex contribution to the eigenvalue counting function.
    Staircase(StaircaseArgs),
    /// Heat, cylinder or quantum kernel on the star.
    Kernel(KernelArgs),
    /// Vacuum energy density T00(x): closed form and a numerical route.
    EnergyDensity(EnergyArgs),
    /// Evolve a smooth bump under the wave equation (zero initial velocity).
    WaveEvolve(WaveArgs),
    /// Run the cross-check suite and print a PASS/FAIL table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Number of edges N.
    #[arg(long)]
    edges: usize,
    /// Vertex strength alpha >= 0 (0 is Kirchhoff).
    #[arg(long, default_value_t = 0.0, conflicts_with = "dirichlet", allow_negative_numbers = true)]
    alpha: f64,
    /// Dirichlet vertex instead of the delta condition.
    #[arg(long)]
    dirichlet: bool,
}

impl GraphArgs {
    fn graph(&self) -> Result<StarGraphConfig> {
        if self.dirichlet {
            StarGraphConfig::dirichlet(self.edges)
        } else {
            StarGraphConfig::new(self.edges, self.alpha)
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Output file; standard output when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `lo:hi:count` or a single value.
#[derive(Debug, Clone)]
struct Points(Vec<f64>);

impl FromStr for Points {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains(':') {
            return Ok(Points(s.parse::<Grid>()?.points()));
        }
        s.trim()
            .parse::<f64>()
            .map(|v| Points(vec![v]))
            .map_err(|_| Error::Usage(format!("expected a number or lo:hi:count, got '{s}'")))
    }
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, allow_negative_numbers = true)]
    omega: Points,
    /// Target coordinates; selects the local density.
    #[arg(long, allow_negative_numbers = true)]
    x: Option<Points>,
    /// Source coordinates; selects the off-diagonal kernel (needs --x).
    #[arg(long, requires = "x", allow_negative_numbers = true)]
    y: Option<Points>,
    #[arg(long, default_value_t = 1)]
    edge: usize,
    #[arg(long, default_value_t = 1)]
    source_edge: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct StaircaseArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, allow_negative_numbers = true)]
    omega: Points,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelKind {
    Heat,
    Cylinder,
    Quantum,
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    kind: KernelKind,
    #[arg(long, allow_negative_numbers = true)]
    t: Points,
    #[arg(long, allow_negative_numbers = true)]
    x: Points,
    #[arg(long, allow_negative_numbers = true)]
    y: Points,
    #[arg(long, default_value_t = 1)]
    edge: usize,
    #[arg(long, default_value_t = 1)]
    source_edge: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NumericRoute {
    Extraction,
    Density,
}

#[derive(Debug, Args)]
struct EnergyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, allow_negative_numbers = true)]
    x: Points,
    #[arg(long, default_value_t = 1)]
    edge: usize,
    /// Route for the T00_numeric column.
    #[arg(long, value_enum, default_value_t = NumericRoute::Extraction)]
    route: NumericRoute,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WaveMethod {
    Exact,
    Fd,
}

#[derive(Debug, Args)]
struct WaveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = 3.0)]
    center: f64,
    #[arg(long, default_value_t = 1.0)]
    half_width: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    amplitude: f64,
    /// Comma-separated amplitude per edge (default 1 on every edge).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    weights: Option<Vec<f64>>,
    /// Output times; the finite-difference method takes a single time.
    #[arg(long, allow_negative_numbers = true)]
    t: Points,
    /// Spatial grid `lo:hi:count`, shared by every edge.
    #[arg(long)]
    x: Grid,
    #[arg(long, value_enum, default_value_t = WaveMethod::Exact)]
    method: WaveMethod,
    #[arg(long, default_value_t = 0.5)]
    cfl: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Reduced grids, a few seconds (default).
    #[arg(long, conflicts_with = "full")]
    quick: bool,
    /// The complete grids.
    #[arg(long)]
    full: bool,
    /// Run only the named check.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::check_names()))]
    only: Option<String>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return report(&e),
    };
    let result = match &pool {
        Some(pool) => pool.install(|| dispatch(&cli.command)),
        None => dispatch(&cli.command),
    };
    match result {
        Ok(code) => code,
        Err(e) => report(&e),
    }
}

fn report(e: &Error) -> i32 {
    eprintln!("vertexkernels: {e}");
    exit_code(e)
}

/// Exit code for an error: accuracy and consistency failures are 2,
/// everything caused by the arguments or the file system is 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. } | Error::Consistency(_) | Error::Range(_) => EXIT_ACCURACY,
        Error::Domain(_) | Error::Contract(_) | Error::Usage(_) | Error::Io(_) => EXIT_USAGE,
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Error::Usage(format!("cannot start {n} worker threads: {e}")))
}

fn dispatch(command: &Command) -> Result<i32> {
    match command {
        Command::Density(a) => emit(&density_table(a)?, &a.output),
        Command::Staircase(a) => emit(&staircase_table(a)?, &a.output),
        Command::Kernel(a) => emit(&kernel_table(a)?, &a.output),
        Command::EnergyDensity(a) => emit(&energy_table(a)?, &a.output),
        Command::WaveEvolve(a) => emit(&wave_table(a)?, &a.output),
        Command::Verify(a) => Ok(run_verify(a)),
    }
}

fn emit(table: &TabulatedSweep, out: &OutputArgs) -> Result<i32> {
    match out.out.as_deref() {
        Some(path) if path.as_os_str() != "-" => {
            let file = File::create(path).map_err(|e| {
                Error::Io(io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display())))
            })?;
            write_table(table, out.format, BufWriter::new(file))?;
        }
        _ => write_table(table, out.format, io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}

/// Evaluates `f` on every row concurrently and keeps grid order.
fn rows<P: Sync, F>(points: &[P], f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(&P) -> Result<Vec<f64>> + Sync + Send,
{
    points.par_iter().map(f).collect()
}

fn table_from(columns: &[&str], rows: Vec<Vec<f64>>) -> Result<TabulatedSweep> {
    let mut t = TabulatedSweep::new(columns.iter().copied());
    for r in rows {
        t.push_row(r)?;
    }
    Ok(t)
}

fn push_graph_metadata(t: &mut TabulatedSweep, g: &StarGraphConfig) {
    t.push_metadata("edges", g.n_edges() as f64);
    match g.alpha() {
        Some(a) => t.push_metadata("alpha", a),
        None => t.push_metadata("dirichlet", 1.0),
    }
}

fn density_table(a: &DensityArgs) -> Result<TabulatedSweep> {
    let g = a.graph.graph()?;
    let omegas = &a.omega.0;
    let mut table = match (&a.x, &a.y) {
        (None, _) => {
            let rho = global_density_regular(&g);
            let r = rows(omegas, |&w| Ok(vec![w, rho.regular_at(w)]))?;
            let mut t = table_from(&["omega", "rho_regular"], r)?;
            t.push_metadata("delta_weight_at_zero", rho.delta_weight_at_zero());
            t
        }
        (Some(xs), None) => {
            let pts: Vec<(f64, f64)> = omegas.iter().flat_map(|&w| xs.0.iter().map(move |&x| (w, x))).collect();
            let r = rows(&pts, |&(w, x)| Ok(vec![w, x, local_spectral_density(&g, w, EdgePoint::new(a.edge, x)?)?]))?;
            table_from(&["omega", "x", "sigma"], r)?
        }
        (Some(xs), Some(ys)) => {
            let mut pts = Vec::new();
            for &w in omegas {
                for &x in &xs.0 {
                    for &y in &ys.0 {
                        pts.push((w, x, y));
                    }
                }
            }
            let r = rows(&pts, |&(w, x, y)| {
                let s = spectral_projection_kernel(&g, w, EdgePoint::new(a.edge, x)?, EdgePoint::new(a.source_edge, y)?)?;
                Ok(vec![w, x, y, s])
            })?;
            table_from(&["omega", "x", "y", "sigma"], r)?
        }
    };
    push_graph_metadata(&mut table, &g);
    Ok(table)
}

fn staircase_table(a: &StaircaseArgs) -> Result<TabulatedSweep> {
    let g = a.graph.graph()?;
    let r = rows(&a.omega.0, |&w| Ok(vec![w, staircase_increment(&g, w)]))?;
    let mut t = table_from(&["omega", "delta_N"], r)?;
    push_graph_metadata(&mut t, &g);
    Ok(t)
}

fn kernel_table(a: &KernelArgs) -> Result<TabulatedSweep> {
    let g = a.graph.graph()?;
    let mut pts = Vec::new();
    for &t in &a.t.0 {
        for &x in &a.x.0 {
            for &y in &a.y.0 {
                pts.push((t, x, y));
            }
        }
    }
    let r = rows(&pts, |&(t, x, y)| {
        let p = EdgePoint::new(a.edge, x)?;
        let q = EdgePoint::new(a.source_edge, y)?;
        Ok(match a.kind {
            KernelKind::Heat => vec![t, x, y, heat_kernel(&g, t, p, q)?],
            KernelKind::Cylinder => vec![t, x, y, cylinder_kernel(&g, t, p, q)?],
            KernelKind::Quantum => {
                let k = quantum_kernel(&g, t, p, q, QUANTUM_TOL)?;
                vec![t, x, y, k.re, k.im]
            }
        })
    })?;
    let columns: &[&str] = match a.kind {
        KernelKind::Quantum => &["t", "x", "y", "K_re", "K_im"],
        _ => &["t", "x", "y", "K"],
    };
    let mut t = table_from(columns, r)?;
    push_graph_metadata(&mut t, &g);
    Ok(t)
}

fn energy_table(a: &EnergyArgs) -> Result<TabulatedSweep> {
    let g = a.graph.graph()?;
    let route = match a.route {
        NumericRoute::Extraction => EnergyRoute::SmallTExtraction,
        NumericRoute::Density => EnergyRoute::SubtractedDensity,
    };
    let r = rows(&a.x.0, |&x| {
        Ok(vec![x, energy_density_closed(&g, x)?, energy_density(&g, a.edge, x, route)?.value])
    })?;
    let mut t = table_from(&["x", "T00_closed", "T00_numeric"], r)?;
    push_graph_metadata(&mut t, &g);
    Ok(t)
}

fn wave_table(a: &WaveArgs) -> Result<TabulatedSweep> {
    let g = a.graph.graph()?;
    let weights = match &a.weights {
        Some(w) if w.len() != g.n_edges() => {
            return Err(Error::Usage(format!(
                "--weights has {} entries for {} edges",
                w.len(),
                g.n_edges()
            )))
        }
        Some(w) => w.clone(),
        None => vec![1.0; g.n_edges()],
    };
    let bump = SmoothBump::new(a.center, a.half_width, a.amplitude)?;
    let data = InitialData::new(bump.on_edges(&weights)?);
    let snapshots: Vec<FieldSnapshot> = match a.method {
        WaveMethod::Exact => a
            .t
            .0
            .par_iter()
            .map(|&t| exact_snapshot(&g, &data, t, a.x))
            .collect::<Result<_>>()?,
        WaveMethod::Fd => {
            let [t] = a.t.0[..] else {
                return Err(Error::Usage("the finite-difference method takes a single --t".into()));
            };
            vec![evolve_fd_oracle(&g, &data, t, a.x, a.cfl)?]
        }
    };
    let mut t = TabulatedSweep::new(["t", "edge", "x", "u", "u_t", "u_x"]);
    for snap in &snapshots {
        for (j, e) in snap.edges.iter().enumerate() {
            for (i, x) in snap.grid.points().into_iter().enumerate() {
                t.push_row(vec![snap.time, (j + 1) as f64, x, e.u[i], e.u_t[i], e.u_x[i]])?;
            }
        }
    }
    push_graph_metadata(&mut t, &g);
    Ok(t)
}

fn run_verify(a: &VerifyArgs) -> i32 {
    let tier = if a.full { Tier::Full } else { Tier::Quick };
    let outcomes = match &a.only {
        Some(name) => verify::run_check(name, tier).into_iter().collect(),
        None => verify::run_suite(tier),
    };
    print!("{}", verify::format_table(&outcomes));
    let _ = io::stdout().flush();
    if outcomes.iter().all(|o| o.passed) {
        EXIT_OK
    } else {
        EXIT_ACCURACY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse_single_values_and_grids() {
        assert_eq!("2.5".parse::<Points>().unwrap().0, vec![2.5]);
        assert_eq!("0:1:3".parse::<Points>().unwrap().0, vec![0.0, 0.5, 1.0]);
        assert!("abc".parse::<Points>().is_err());
        assert!("0:1".parse::<Points>().is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["vertexkernels", "staircase", "--edges", "2", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["vertexkernels", "staircase", "--edges", "2", "--omega", "1:0:5"]), EXIT_USAGE);
        assert_eq!(run(["vertexkernels", "staircase", "--edges", "2", "--alpha", "-1", "--omega", "0:1:5"]), EXIT_USAGE);
        assert_eq!(run(["vertexkernels", "--help"]), EXIT_OK);
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(exit_code(&Error::accuracy("x", 0.0)), EXIT_ACCURACY);
        assert_eq!(exit_code(&Error::Consistency("x".into())), EXIT_ACCURACY);
        assert_eq!(exit_code(&Error::domain("x")), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Io(io::Error::other("x"))), EXIT_USAGE);
    }
}
