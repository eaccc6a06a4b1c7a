//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse error, 3 infeasible construction, 4 size
//! cap, 1 anything else. `SUBTOUR_GAP_THREADS` sets the worker-pool size
//! used by `sweep` and multi-seed `localsearch`.

pub mod format;
pub mod plot;
pub mod report;
pub mod tsplib;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::ellipse::{ellipse_construct, DEFAULT_EPS};
use crate::error::{Error, Result};
use crate::exact::{held_karp, integrality_ratio, HELD_KARP_MAX};
use crate::families::{
    benchmark_prism, best_partition, closed_form_ratio_i2, closed_form_ratio_metric, fractional_xijk, gen_hexagon,
    gen_i2, gen_i3, gen_subdivided, gen_tetrahedron, hexagon_spec, ijk_from_labels, lambda_certificate, pseudo_tour,
    shortcut_tour, tetrahedron_spec, tjoin_ratio_bound, Family, Ijk, PseudoTourTag, SubdividedGraphSpec,
};
use crate::geometry::Instance;
use crate::localsearch::{local_search, local_search_seeds, tours_within, ENUMERATION_MAX, TourPool};
use crate::localsearch::{improvement_lp, grouped_improvement_lp, LocalSearchParams, LocalSearchResult};
use crate::lp::solve_subtour_lp;

use format::{read_instance, write_atomic, write_instance};
use plot::{render_svg, PlotOptions};
use report::{ratio_report, InstanceSummary, RunReport};

pub const THREADS_ENV: &str = "SUBTOUR_GAP_THREADS";

#[derive(Debug, Parser)]
#[command(name = "subtour-gap", version, about = "Integrality-gap instances for the subtour LP")]
pub struct Cli {
    /// Report wall time as zero so reports are byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Optimal tour, subtour LP and their ratio for an instance file.
    Ratio(RatioArgs),
    /// Best ratios per n for the closed-form families and the ellipse construction.
    Sweep(SweepArgs),
    /// Coordinate ascent on the integrality ratio from random instances.
    Localsearch(LocalSearchArgs),
    /// Build one ellipse construction.
    Ellipse(EllipseArgs),
    /// Check a certificate.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Draw an instance as SVG.
    Plot(PlotArgs),
    /// Convert an instance file to TSPLIB.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    I2,
    I3,
    Tetrahedron,
    Hexagon,
    Subdivided,
    Ellipse,
    /// The prism instance used for solver benchmarks, chosen by `--n`.
    Benchmark,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: GenFamily,
    #[arg(long, default_value_t = 0)]
    pub i: usize,
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    /// Third line length, or subdivisions per edge for hexagon grids.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Subdivisions of the outer tetrahedron edges.
    #[arg(long, default_value_t = 0)]
    pub a: usize,
    /// Subdivisions of the inner tetrahedron edges.
    #[arg(long, default_value_t = 0)]
    pub b: usize,
    #[arg(long, default_value_t = 1)]
    pub rows: usize,
    #[arg(long, default_value_t = 1)]
    pub cols: usize,
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON graph description for the subdivided family.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Instance file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write TSPLIB; defaults to `<name>.tsp`.
    #[arg(long, num_args = 0..=1)]
    pub export_tsplib: Option<Option<PathBuf>>,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Rectilinear,
    Metric,
    Ellipse,
    All,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepFamily::All)]
    pub family: SweepFamily,
    #[arg(long, default_value_t = 6)]
    pub from: usize,
    #[arg(long, default_value_t = 12)]
    pub to: usize,
    /// Also solve each best instance exactly (n up to the Held-Karp cap).
    #[arg(long)]
    pub certify: bool,
    /// Write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LocalSearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent runs with seeds `seed..seed+seeds`; the best is kept.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon0: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon1: f64,
    #[arg(long, default_value_t = 1e-7)]
    pub epsilon2: f64,
    /// Near-optimal window relative to the optimum.
    #[arg(long, default_value_t = 1e-4)]
    pub epsilon3: f64,
    #[arg(long, default_value_t = 0)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0.02)]
    pub perturbation: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_seed_attempts: usize,
    /// Final instance file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Iteration trace, one `iteration ratio delta eta` line per iteration.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EllipseArgs {
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CertifyCommand {
    /// Convex combination of pseudo-tours equal to a multiple of x_{i,j,k}.
    Lambda {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Limit ratio bound from a minimum T-join.
    Tjoin {
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        tetrahedron: Option<Vec<usize>>,
        #[arg(long, num_args = 3, value_names = ["ROWS", "COLS", "K"])]
        hexagon: Option<Vec<usize>>,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// First-order local optimality of an instance's integrality ratio.
    Local {
        instance: PathBuf,
        #[arg(long, default_value_t = 1e-6)]
        epsilon1: f64,
        #[arg(long, default_value_t = 1e-4)]
        epsilon3: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Tour file (vertex indices).
    #[arg(long)]
    pub tour: Option<PathBuf>,
    /// Shortcut of a family pseudo-tour, e.g. `up1`, `left`.
    #[arg(long, conflicts_with_all = ["tour", "optimal"])]
    pub pseudo: Option<String>,
    /// Overlay an optimal tour.
    #[arg(long)]
    pub optimal: bool,
    /// Fractional tour file (`n`, then `u v weight` lines).
    #[arg(long)]
    pub fractional: Option<PathBuf>,
    /// Overlay x_{i,j,k} of a labelled family instance.
    #[arg(long, conflicts_with_all = ["fractional", "lp"])]
    pub xijk: bool,
    /// Overlay the subtour LP optimum.
    #[arg(long, conflicts_with = "fractional")]
    pub lp: bool,
    #[arg(long)]
    pub labels: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub tsplib: PathBuf,
    /// Problem name; defaults to the family name or the file stem.
    #[arg(long)]
    pub name: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::InfeasibleConstruction(_) => 3,
        Error::SizeCap { .. } | Error::OddVertexCap { .. } => 4,
        _ => 1,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(k) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let echo = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match run(cli, echo) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cli: Cli, echo: Vec<String>) -> Result<()> {
    let ctx = Ctx { echo, no_timing: cli.no_timing };
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Ratio(a) => cmd_ratio(&ctx, &a),
        Command::Sweep(a) => cmd_sweep(&ctx, &a),
        Command::Localsearch(a) => cmd_localsearch(&ctx, &a),
        Command::Ellipse(a) => cmd_ellipse(&ctx, &a),
        Command::Certify(c) => cmd_certify(&ctx, c),
        Command::Plot(a) => cmd_plot(&a),
        Command::Export(a) => cmd_export(&a),
    }
}

struct Ctx {
    echo: Vec<String>,
    no_timing: bool,
}

impl Ctx {
    fn report(&self) -> RunReport {
        RunReport::new(self.echo.clone())
    }

    /// Writes the report to `path`, or to standard output.
    fn emit(&self, mut rep: RunReport, start: Instant, path: Option<&Path>) -> Result<()> {
        rep.wall_time_s = if self.no_timing { 0.0 } else { start.elapsed().as_secs_f64() };
        emit_text(path, &rep.to_json())
    }
}

fn emit_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Builds the requested family instance and a file-name stem for it.
pub fn generate(a: &GenArgs) -> Result<(Instance, String)> {
    let ijk = Ijk::new(a.i, a.j, a.k);
    Ok(match a.family {
        GenFamily::I2 => (gen_i2(ijk), format!("i2_{}_{}_{}", a.i, a.j, a.k)),
        GenFamily::I3 => (gen_i3(ijk), format!("i3_{}_{}_{}", a.i, a.j, a.k)),
        GenFamily::Tetrahedron => (gen_tetrahedron(a.a, a.b), format!("tetrahedron_{}_{}", a.a, a.b)),
        GenFamily::Hexagon => (gen_hexagon(a.rows, a.cols, a.k)?, format!("hexagon_{}_{}_{}", a.rows, a.cols, a.k)),
        GenFamily::Subdivided => {
            let path = a.spec.as_ref().ok_or_else(|| Error::InvalidGraph("--spec is required".into()))?;
            let spec: SubdividedGraphSpec = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
            (gen_subdivided(&spec)?, "subdivided".to_string())
        }
        GenFamily::Ellipse => (ellipse_construct(a.i, a.j, a.eps)?.instance, format!("ellipse_{}_{}", a.i, a.j)),
        GenFamily::Benchmark => {
            let n = a.n.ok_or_else(|| Error::InvalidInstance("--n is required".into()))?;
            let p = benchmark_prism(n)?;
            (gen_i3(p), format!("i3_{}_{}_{}", p.i, p.j, p.k))
        }
    })
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let (inst, name) = generate(a)?;
    emit_text(a.out.as_deref(), &write_instance(&inst))?;
    if let Some(target) = &a.export_tsplib {
        let path = target.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.tsp")));
        write_atomic(&path, tsplib::write_tsplib(&inst, &name).as_bytes())?;
    }
    Ok(())
}

fn cmd_ratio(ctx: &Ctx, a: &RatioArgs) -> Result<()> {
    let start = Instant::now();
    let inst = read_instance(&a.instance)?;
    let rep = ratio_report(&inst, ctx.echo.clone())?;
    ctx.emit(rep, start, a.report.as_deref())
}

#[derive(Debug, Clone, serde::Serialize)]
struct SweepRow {
    n: usize,
    rectilinear: Option<(Ijk, f64)>,
    metric: Option<(Ijk, f64)>,
    ellipse: Option<(usize, usize, f64)>,
    rectilinear_certified: Option<f64>,
    metric_certified: Option<f64>,
}

fn sweep_row(n: usize, family: SweepFamily, certify: bool) -> Result<SweepRow> {
    let want = |f: SweepFamily| family == f || family == SweepFamily::All;
    let mut row = SweepRow { n, rectilinear: None, metric: None, ellipse: None, rectilinear_certified: None, metric_certified: None };
    if want(SweepFamily::Rectilinear) {
        let p = best_partition(n, Family::Rectilinear)?;
        row.rectilinear = Some((p, closed_form_ratio_i2(p)));
        if certify && n <= HELD_KARP_MAX {
            row.rectilinear_certified = Some(integrality_ratio(&gen_i2(p))?);
        }
    }
    if want(SweepFamily::Metric) {
        let p = best_partition(n, Family::Metric)?;
        row.metric = Some((p, closed_form_ratio_metric(p)));
        if certify && n <= HELD_KARP_MAX {
            row.metric_certified = Some(integrality_ratio(&gen_i3(p))?);
        }
    }
    if want(SweepFamily::Ellipse) {
        row.ellipse = (0..=(n - 6) / 2)
            .filter_map(|i| ellipse_construct(i, n - 6 - 2 * i, DEFAULT_EPS).ok())
            .map(|c| (c.i, c.j, c.ratio))
            .fold(None, |best: Option<(usize, usize, f64)>, c| match best {
                Some(b) if b.2 >= c.2 => Some(b),
                _ => Some(c),
            });
    }
    Ok(row)
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "n,rect_i,rect_j,rect_k,rect_ratio,rect_certified,metric_i,metric_j,metric_k,metric_ratio,metric_certified,ellipse_i,ellipse_j,ellipse_ratio\n",
    );
    let num = |v: Option<f64>| v.map(|r| format!("{r:.12}")).unwrap_or_default();
    let idx = |v: Option<usize>| v.map(|i| i.to_string()).unwrap_or_default();
    let triple = |t: Option<(Ijk, f64)>| {
        let p = t.map(|t| t.0);
        format!("{},{},{},{}", idx(p.map(|p| p.i)), idx(p.map(|p| p.j)), idx(p.map(|p| p.k)), num(t.map(|t| t.1)))
    };
    for r in rows {
        let e = r.ellipse;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n,
            triple(r.rectilinear),
            num(r.rectilinear_certified),
            triple(r.metric),
            num(r.metric_certified),
            idx(e.map(|e| e.0)),
            idx(e.map(|e| e.1)),
            num(e.map(|e| e.2))
        ));
    }
    out
}

fn cmd_sweep(ctx: &Ctx, a: &SweepArgs) -> Result<()> {
    let start = Instant::now();
    if a.from < 6 || a.from > a.to {
        return Err(Error::InvalidInstance(format!("sweep range {}..{} must satisfy 6 <= from <= to", a.from, a.to)));
    }
    let rows = (a.from..=a.to)
        .into_par_iter()
        .map(|n| sweep_row(n, a.family, a.certify))
        .collect::<Result<Vec<_>>>()?;
    let csv = sweep_csv(&rows);
    match (&a.csv, &a.report) {
        (None, None) => print!("{csv}"),
        (csv_path, report_path) => {
            if let Some(p) = csv_path {
                write_atomic(p, csv.as_bytes())?;
            }
            if let Some(p) = report_path {
                let mut rep = ctx.report();
                rep.details = json!({ "rows": rows });
                ctx.emit(rep, start, Some(p))?;
            }
        }
    }
    Ok(())
}

fn trace_text(res: &LocalSearchResult) -> String {
    let mut out = String::from("# iteration ratio delta eta\n");
    for r in &res.trace {
        out.push_str(&format!("{} {:?} {:?} {:?}\n", r.iteration, r.ratio, r.delta, r.eta));
    }
    out
}

fn cmd_localsearch(ctx: &Ctx, a: &LocalSearchArgs) -> Result<()> {
    let start = Instant::now();
    let params = LocalSearchParams {
        epsilon0: a.epsilon0,
        epsilon1: a.epsilon1,
        epsilon2: a.epsilon2,
        epsilon3: a.epsilon3,
        p: a.p,
        dim: a.dim,
        max_iters: a.max_iters,
        rng_seed: a.seed,
        max_seed_attempts: a.max_seed_attempts,
        restarts: a.restarts,
        perturbation: a.perturbation,
    };
    let (res, per_seed) = if a.seeds <= 1 {
        let r = local_search(a.n, &params)?;
        let ratios = vec![(a.seed, r.ratio)];
        (r, ratios)
    } else {
        let seeds: Vec<u64> = (a.seed..a.seed + a.seeds).collect();
        let runs = local_search_seeds(a.n, &params, &seeds).into_iter().collect::<Result<Vec<_>>>()?;
        let ratios: Vec<(u64, f64)> = seeds.iter().copied().zip(runs.iter().map(|r| r.ratio)).collect();
        let best = runs.into_iter().fold(None, |b: Option<LocalSearchResult>, r| match b {
            Some(b) if b.ratio >= r.ratio => Some(b),
            _ => Some(r),
        });
        (best.expect("at least two seeds"), ratios)
    };
    if let Some(p) = &a.out {
        write_atomic(p, write_instance(&res.instance).as_bytes())?;
    }
    if let Some(p) = &a.trace {
        write_atomic(p, trace_text(&res).as_bytes())?;
    }
    let mut rep = ctx.report();
    rep.instance = Some(InstanceSummary::of(&res.instance));
    rep.opt_length = Some(res.tour.length(&res.instance)?);
    rep.lp_cost = Some(res.x.cost(&res.instance)?);
    rep.opt_method = Some("held_karp".into());
    rep.ratio = Some(res.ratio);
    rep.residuals.insert("final_delta".into(), res.delta);
    rep.details = json!({
        "certified": res.certified,
        "stalled": res.stalled,
        "flagged": res.flagged,
        "iterations": res.trace.len(),
        "accepted_steps": res.trace.iter().filter(|t| t.eta > 0.0).count(),
        "seed_attempts": res.seed_attempts,
        "pool_size": res.pool.len(),
        "climb_ratios": res.climb_ratios,
        "seed_ratios": per_seed,
        "params": params,
    });
    ctx.emit(rep, start, a.report.as_deref())
}

fn cmd_ellipse(ctx: &Ctx, a: &EllipseArgs) -> Result<()> {
    let start = Instant::now();
    let c = ellipse_construct(a.i, a.j, a.eps)?;
    if let Some(p) = &a.out {
        write_atomic(p, write_instance(&c.instance).as_bytes())?;
    }
    let mut rep = ctx.report();
    rep.instance = Some(InstanceSummary::of(&c.instance));
    rep.opt_length = Some(c.tour_length);
    rep.opt_method = Some("shortcut".into());
    rep.opt_is_bound = true;
    rep.lp_cost = Some(c.fractional_cost);
    rep.ratio = Some(c.ratio);
    rep.residuals.insert("inner".into(), c.inner_residual);
    rep.residuals.insert("outer".into(), c.outer_residual);
    if c.instance.n() <= HELD_KARP_MAX {
        let opt = held_karp(&c.instance)?.length;
        let lp = solve_subtour_lp(&c.instance)?.cost;
        rep.opt_length = Some(opt);
        rep.opt_method = Some("held_karp".into());
        rep.opt_is_bound = false;
        rep.lp_cost = Some(lp);
        rep.ratio = Some(opt / lp);
        rep.residuals.insert("shortcut_minus_opt".into(), c.tour_length - opt);
        rep.residuals.insert("xijk_cost_minus_lp".into(), c.fractional_cost - lp);
    }
    rep.details = json!({ "params": c.params, "layout": c.layout, "construction_ratio": c.ratio });
    ctx.emit(rep, start, a.report.as_deref())
}

fn cmd_certify(ctx: &Ctx, c: CertifyCommand) -> Result<()> {
    let start = Instant::now();
    let mut rep = ctx.report();
    match c {
        CertifyCommand::Lambda { i, j, k, report } => {
            let cert = lambda_certificate(Ijk::new(i, j, k))?;
            rep.ratio = Some(cert.multiplier);
            rep.residuals.insert("lambda_sum_minus_one".into(), cert.lambda_sum - 1.0);
            rep.residuals.insert("combination".into(), cert.max_residual);
            let coeffs: Vec<(String, f64)> = cert.coefficients.iter().map(|(t, l)| (t.name(), *l)).collect();
            rep.details = json!({ "ijk": cert.ijk, "multiplier": cert.multiplier, "coefficients": coeffs });
            ctx.emit(rep, start, report.as_deref())
        }
        CertifyCommand::Tjoin { tetrahedron, hexagon, spec, report } => {
            let graph = match (tetrahedron, hexagon, spec) {
                (Some(t), None, None) => tetrahedron_spec(t[0], t[1]),
                (None, Some(h), None) => hexagon_spec(h[0], h[1], h[2])?,
                (None, None, Some(p)) => serde_json::from_str(&std::fs::read_to_string(p)?)
                    .map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?,
                _ => return Err(Error::InvalidGraph("give exactly one of --tetrahedron, --hexagon, --spec".into())),
            };
            let b = tjoin_ratio_bound(&graph)?;
            rep.ratio = Some(b.bound);
            rep.details = json!(b);
            ctx.emit(rep, start, report.as_deref())
        }
        CertifyCommand::Local { instance, epsilon1, epsilon3, report } => {
            let inst = read_instance(&instance)?;
            inst.check_size("local certificate", 4, HELD_KARP_MAX)?;
            let hk = held_karp(&inst)?;
            let lp = solve_subtour_lp(&inst)?;
            let mut pool = TourPool::new(hk.tour.clone(), hk.length);
            if inst.n() <= ENUMERATION_MAX {
                for t in tours_within(&inst, hk.length * (1.0 + epsilon3))? {
                    pool.insert(t);
                }
            }
            let r = hk.length / lp.cost;
            let (_, delta) = if inst.norm().is_rectilinear() {
                grouped_improvement_lp(&inst, &pool, &lp.x, r)?
            } else {
                improvement_lp(&inst, &pool, &lp.x, r)?
            };
            rep.instance = Some(InstanceSummary::of(&inst));
            rep.opt_length = Some(hk.length);
            rep.opt_method = Some("held_karp".into());
            rep.lp_cost = Some(lp.cost);
            rep.ratio = Some(r);
            rep.residuals.insert("delta".into(), delta);
            rep.details = json!({
                "locally_optimal": delta <= epsilon1,
                "advisory_only": inst.norm().is_rectilinear(),
                "pool_size": pool.len(),
            });
            ctx.emit(rep, start, report.as_deref())
        }
    }
}

fn cmd_plot(a: &PlotArgs) -> Result<()> {
    let inst = read_instance(&a.instance)?;
    let family = || {
        ijk_from_labels(&inst).ok_or_else(|| Error::InvalidInstance("instance labels do not follow the X/Y/Z scheme".into()))
    };
    let mut opts = PlotOptions { labels: a.labels, ..Default::default() };
    if let Some(p) = &a.tour {
        opts.tour = Some(format::parse_tour(&std::fs::read_to_string(p)?)?);
    } else if let Some(name) = &a.pseudo {
        let tag = PseudoTourTag::parse(name)
            .ok_or_else(|| Error::Parse { line: 1, message: format!("unknown pseudo-tour `{name}`") })?;
        opts.tour = Some(shortcut_tour(&pseudo_tour(family()?, tag)?, &inst)?);
    } else if a.optimal {
        opts.tour = Some(held_karp(&inst)?.tour);
    }
    if let Some(p) = &a.fractional {
        opts.fractional = Some(format::parse_fractional(&std::fs::read_to_string(p)?)?);
    } else if a.xijk {
        opts.fractional = Some(fractional_xijk(family()?));
    } else if a.lp {
        opts.fractional = Some(solve_subtour_lp(&inst)?.x);
    }
    write_atomic(&a.out, render_svg(&inst, &opts).as_bytes())
}

fn cmd_export(a: &ExportArgs) -> Result<()> {
    let inst = read_instance(&a.instance)?;
    // Family instances get the same name `gen` gives them.
    let family = ijk_from_labels(&inst).filter(|_| inst.norm().is_rectilinear()).and_then(|p| match inst.dim() {
        2 => Some(format!("i2_{}_{}_{}", p.i, p.j, p.k)),
        3 => Some(format!("i3_{}_{}_{}", p.i, p.j, p.k)),
        _ => None,
    });
    let name = a.name.clone().or(family).unwrap_or_else(|| {
        a.instance.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into())
    });
    write_atomic(&a.tsplib, tsplib::write_tsplib(&inst, &name).as_bytes())
}
