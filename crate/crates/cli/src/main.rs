//! `illposed`: stable differentiation, spectral extrapolation, limited-angle
//! tomography, and density/blow-up experiments from the command line.
//!
//! Exit codes: 0 success, 1 validation/usage error, 2 numerical
//! infeasibility (including failed `repro` criteria).

mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use illposed::io;
use illposed::noise::{synth_noise, NoisePattern};
use illposed::propc::{approximate_by_products, blowup_study, DomainQuadrature};
use illposed::radon::{
    cone_kernel_config, fill_spectral_cone, radon_transform, AngularSector, Disc, LineRule,
    Phantom,
};
use illposed::specext::{
    delta_sequence_check, extrapolate, DeltaKernel, DeltaSeqConfig, EvalGrid, Mollifier, Region,
    SpectralWindow, SpectrumMethod, WindowShape,
};
use illposed::stablediff::{differentiate, lower_bound_sweep, SmoothnessClass};
use illposed::{Error, Result};

use manifest::Manifest;

#[derive(Parser)]
#[command(
    name = "illposed",
    version,
    about = "Numerical procedures for ill-posed approximation problems",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Differentiate a noisy periodic signal with the optimal stepsize
    Diff(DiffArgs),
    /// Evaluate the minimax lower bound for derivative estimation
    Lowerbound(LowerboundArgs),
    /// Spectral-window kernels and band-limited inversion
    #[command(subcommand)]
    Specext(SpecextCmd),
    /// Limited-angle tomography
    #[command(subcommand)]
    Radon(RadonCmd),
    /// Density of harmonic products and plane-wave blow-up studies
    #[command(subcommand)]
    Propc(PropcCmd),
    /// Run the acceptance experiments
    Repro(ReproArgs),
}

#[derive(Args)]
struct DiffArgs {
    /// Input signal file (`# x0 dx period delta` header)
    #[arg(long = "in")]
    input: PathBuf,
    /// Sup-norm noise bound delta
    #[arg(long)]
    delta: f64,
    /// Second-derivative bound (smoothness order j = 2)
    #[arg(long, conflicts_with_all = ["j", "mj"])]
    m2: Option<f64>,
    /// Smoothness order in (1, 2]
    #[arg(long, requires = "mj")]
    j: Option<f64>,
    /// Norm bound for the chosen order
    #[arg(long, requires = "j")]
    mj: Option<f64>,
    /// Synthesize noise of level `delta` onto the signal before
    /// differentiating
    #[arg(long)]
    add_noise: bool,
    /// Noise pattern: uniform | alternating
    #[arg(long, default_value = "uniform")]
    noise_pattern: String,
    /// RNG seed for synthesized noise
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output derivative file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LowerboundArgs {
    /// Curvature bound m
    #[arg(long)]
    m: f64,
    /// Noise level delta
    #[arg(long)]
    delta: f64,
    /// Number of random estimator values to test
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Optional output table
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SpecextCmd {
    /// Invert spectral samples to a spatial field
    Extrapolate(ExtrapolateArgs),
    /// Ladder check of the delta-type kernel property
    CheckDelta(CheckDeltaArgs),
}

#[derive(Args)]
struct ExtrapolateArgs {
    /// Input spectral sample file (window header + node rows)
    #[arg(long = "in")]
    input: PathBuf,
    /// Kernel order
    #[arg(long)]
    j: u32,
    /// Support radius of the reconstructed function
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Damping scale a1 (> a); defaults to 1.25 a
    #[arg(long)]
    a1: Option<f64>,
    /// Mollifier center, `x` or `x,y`
    #[arg(long, default_value = "0")]
    moll_center: String,
    /// Mollifier support radius
    #[arg(long, default_value_t = 0.8)]
    moll_radius: f64,
    /// Place a symmetric mollifier pair at +-center
    #[arg(long)]
    moll_pair: bool,
    /// Kernel-spectrum method: quadrature | moment-expansion
    #[arg(long, default_value = "quadrature")]
    method: String,
    /// Evaluation grid points per axis over [-a, a]
    #[arg(long, default_value_t = 81)]
    grid: usize,
    /// Expected window `lo:hi` (validated against the input file)
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckDeltaArgs {
    /// Kernel orders, e.g. `4,8,16,32,64`
    #[arg(long, default_value = "4,8,16,32,64")]
    j_ladder: String,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    a1: Option<f64>,
    #[arg(long, default_value_t = 0.8)]
    moll_radius: f64,
    /// 1D spectral window `lo:hi`
    #[arg(long, default_value = "-16:16")]
    window: String,
    /// Integration region `lo:hi`; may repeat (defaults: -0.5:0.5 and 2:3)
    #[arg(long = "region")]
    regions: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RadonCmd {
    /// Project a disc phantom onto a limited-angle sinogram
    Simulate(SimulateArgs),
    /// Reconstruct from a sinogram through the spectral cone
    Reconstruct(ReconstructArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Phantom: `disc:cx,cy,r,w` joined by `;`
    #[arg(long)]
    phantom: String,
    /// Support radius a
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Angular sector in degrees, `lo:hi`
    #[arg(long, default_value = "30:150")]
    sector: String,
    #[arg(long, default_value_t = 60)]
    n_alpha: usize,
    #[arg(long, default_value_t = 801)]
    n_p: usize,
    /// Line-integral rule: closed-form | quadrature
    #[arg(long, default_value = "closed-form")]
    rule: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Input sinogram file
    #[arg(long = "in")]
    input: PathBuf,
    /// Kernel order
    #[arg(long)]
    j: u32,
    /// Spectral cone radius (must not exceed the sinogram band limit)
    #[arg(long = "T", default_value_t = 8.0)]
    t_max: f64,
    /// Support radius a of the phantom
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Reconstruction raster size per axis over [-a, a]
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum PropcCmd {
    /// Approximate f by products of harmonic polynomials
    Products(ProductsArgs),
    /// Coefficient-norm blow-up when matching growing special solutions
    Blowup(BlowupArgs),
}

#[derive(Args)]
struct ProductsArgs {
    /// Target function: builtin:exp-cos | builtin:harmonic | builtin:abs2
    #[arg(long = "f", default_value = "builtin:exp-cos")]
    function: String,
    /// Basis degrees, e.g. `2,4,6,8`
    #[arg(long = "N", default_value = "2,4,6,8")]
    degrees: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlowupArgs {
    /// Direction parameters t, e.g. `0,0.5,1`
    #[arg(long = "t", default_value = "0,0.5,1")]
    t_values: String,
    /// Residual targets, decreasing, e.g. `1e-1,3e-2,1e-2,3e-3`
    #[arg(long, default_value = "1e-1,3e-2,1e-2,3e-3")]
    eps: String,
    #[arg(long, default_value_t = 64)]
    n_alpha: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// `all`, `list`, or a criterion id 1..9
    what: String,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints usage; map every parse problem to exit 1 except
            // --help/--version which are successes
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli, &argv[1..]) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Infeasible(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

/// Resolves an output path against `ILLPOSED_OUT_DIR` when relative.
fn resolve_out(path: &PathBuf) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("ILLPOSED_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.clone()
}

fn run(cli: Cli, argv: &[String]) -> Result<ExitCode> {
    let manifest = Manifest::start(argv);
    match cli.cmd {
        Cmd::Diff(args) => cmd_diff(args, manifest),
        Cmd::Lowerbound(args) => cmd_lowerbound(args, manifest),
        Cmd::Specext(SpecextCmd::Extrapolate(args)) => cmd_extrapolate(args, manifest),
        Cmd::Specext(SpecextCmd::CheckDelta(args)) => cmd_check_delta(args, manifest),
        Cmd::Radon(RadonCmd::Simulate(args)) => cmd_simulate(args, manifest),
        Cmd::Radon(RadonCmd::Reconstruct(args)) => cmd_reconstruct(args, manifest),
        Cmd::Propc(PropcCmd::Products(args)) => cmd_products(args, manifest),
        Cmd::Propc(PropcCmd::Blowup(args)) => cmd_blowup(args, manifest),
        Cmd::Repro(args) => cmd_repro(args),
    }
}

// -------------------------------------------------------------- parsing

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidParameter(format!("bad {what} entry '{tok}'")))
        })
        .collect()
}

fn parse_range(s: &str, what: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParameter(format!("{what} must be 'lo:hi', got '{s}'")));
    }
    let lo = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad {what} lower bound '{}'", parts[0])))?;
    let hi = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad {what} upper bound '{}'", parts[1])))?;
    Ok((lo, hi))
}

fn parse_point(s: &str) -> Result<[f64; 2]> {
    let vals: Vec<f64> = parse_list(s, "point")?;
    match vals.len() {
        1 => Ok([vals[0], 0.0]),
        2 => Ok([vals[0], vals[1]]),
        n => Err(Error::InvalidParameter(format!("point needs 1 or 2 coordinates, got {n}"))),
    }
}

fn parse_phantom(spec: &str, a: f64) -> Result<Phantom> {
    let mut discs = Vec::new();
    for part in spec.split(';') {
        let part = part.trim();
        let Some(rest) = part.strip_prefix("disc:") else {
            return Err(Error::InvalidParameter(format!(
                "phantom component '{part}' (expected disc:cx,cy,r,w)"
            )));
        };
        let vals: Vec<f64> = parse_list(rest, "disc")?;
        if vals.len() != 4 {
            return Err(Error::InvalidParameter(format!(
                "disc needs cx,cy,r,w (got {} values)",
                vals.len()
            )));
        }
        discs.push(Disc { center: [vals[0], vals[1]], radius: vals[2], weight: vals[3] });
    }
    Phantom::new(discs, a)
}

// ------------------------------------------------------------- commands

fn cmd_diff(args: DiffArgs, manifest: Manifest) -> Result<ExitCode> {
    let cls = match (args.m2, args.j, args.mj) {
        (Some(m2), None, None) => SmoothnessClass::second_derivative(m2)?,
        (None, Some(j), Some(mj)) => SmoothnessClass::new(j, mj)?,
        (None, None, None) => {
            return Err(Error::InvalidParameter(
                "specify --m2, or --j together with --mj".into(),
            ))
        }
        _ => unreachable!("clap enforces the conflicts"),
    };
    let text = io::read_file(&args.input)?;
    let mut signal = io::signal_from_str(&text)?;
    if args.add_noise {
        let pattern: NoisePattern =
            args.noise_pattern.parse().map_err(Error::InvalidParameter)?;
        signal = synth_noise(&signal, args.delta, args.seed, pattern);
    } else {
        signal = signal.with_delta(args.delta);
    }
    let report = differentiate(&signal, &cls)?;
    let out = resolve_out(&args.out);
    io::write_file(&out, &io::diff_report_to_string(&signal, &report))?;
    println!(
        "differentiated {} samples: h_used={} bound={}",
        signal.len(),
        report.h_used,
        report.bound
    );
    manifest.with_seed(args.seed).write(&[out])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_lowerbound(args: LowerboundArgs, manifest: Manifest) -> Result<ExitCode> {
    let gamma = (2.0 * args.delta * args.m).sqrt();
    let (min_val, argmin) = lower_bound_sweep(args.m, args.delta, args.samples, args.seed)?;
    println!("minimax floor sqrt(2 delta m) = {gamma}");
    println!(
        "best of {} random estimates: {min_val} at b = {argmin} (ratio {})",
        args.samples,
        min_val / gamma
    );
    if let Some(out) = args.out {
        let out = resolve_out(&out);
        let rows = vec![vec![args.m, args.delta, gamma, min_val, min_val / gamma]];
        io::write_file(
            &out,
            &io::table_to_string(&["m", "delta", "floor", "best_found", "ratio"], &rows),
        )?;
        manifest.with_seed(args.seed).write(&[out])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_extrapolate(args: ExtrapolateArgs, manifest: Manifest) -> Result<ExitCode> {
    let text = io::read_file(&args.input)?;
    let samples = io::samples_from_str(&text)?;
    let window = samples.window();
    if let Some(expect) = &args.window {
        let (lo, hi) = parse_range(expect, "window")?;
        match window.shape() {
            WindowShape::Interval { lo: flo, hi: fhi }
                if (flo - lo).abs() < 1e-12 && (fhi - hi).abs() < 1e-12 => {}
            other => {
                return Err(Error::Config(format!(
                    "input window {other:?} does not match requested [{lo}, {hi}]"
                )))
            }
        }
    }
    let a1 = args.a1.unwrap_or(1.25 * args.a);
    let center = parse_point(&args.moll_center)?;
    let mollifier = if args.moll_pair {
        Mollifier::symmetric_pair(window, center, args.moll_radius)?
    } else {
        Mollifier::new(window, center, args.moll_radius)?
    };
    let method = match args.method.as_str() {
        "quadrature" => SpectrumMethod::Quadrature,
        // the expansion evaluates iterated-Laplacian moments of the
        // mollifier, hence the alias
        "moment-expansion" | "laplacian-expansion" => SpectrumMethod::MomentExpansion,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown spectrum method '{other}'"
            )))
        }
    };
    let cfg = DeltaSeqConfig::new(args.j, args.a, a1, mollifier)?
        .with_spectrum_method(method)?;
    let kernel = DeltaKernel::for_window(&cfg, window)?;
    let grid = if window.dim() == 1 {
        EvalGrid::line(-args.a, args.a, args.grid)
    } else {
        EvalGrid::raster([-args.a, -args.a], [args.a, args.a], args.grid)
    };
    let field = extrapolate(&samples, &kernel, &grid)?;
    let out = resolve_out(&args.out);
    io::write_file(&out, &io::field_to_string(&field))?;
    println!(
        "extrapolated {} spectral nodes onto {} grid points (max imag {:.3e})",
        window.len(),
        grid.len(),
        field.max_imag()
    );
    manifest.write(&[out])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_delta(args: CheckDeltaArgs, manifest: Manifest) -> Result<ExitCode> {
    let ladder: Vec<u32> = parse_list(&args.j_ladder, "j ladder")?;
    let (lo, hi) = parse_range(&args.window, "window")?;
    let window = SpectralWindow::interval(lo, hi, (((hi - lo) * 5.0) as usize).max(16), 10)?;
    let mollifier = Mollifier::new(&window, [0.0, 0.0], args.moll_radius)?;
    let a1 = args.a1.unwrap_or(1.25 * args.a);
    let base = DeltaSeqConfig::new(ladder[0], args.a, a1, mollifier)?;
    let regions: Vec<Region> = if args.regions.is_empty() {
        vec![
            Region::Interval { lo: -0.5, hi: 0.5 },
            Region::Interval { lo: 2.0, hi: 3.0 },
        ]
    } else {
        args.regions
            .iter()
            .map(|s| parse_range(s, "region").map(|(lo, hi)| Region::Interval { lo, hi }))
            .collect::<Result<_>>()?
    };
    let report = delta_sequence_check(&base, &ladder, &regions)?;
    let mut columns = vec!["j".to_string()];
    for r in &report.regions {
        if let Region::Interval { lo, hi } = r {
            columns.push(format!("I[{lo},{hi}]"));
        }
    }
    let col_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let rows: Vec<Vec<f64>> = report
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.j as f64];
            row.extend_from_slice(&r.integrals);
            row
        })
        .collect();
    let table = io::table_to_string(&col_refs, &rows);
    print!("{table}");
    println!("# uniform bound {} ; max imag {:.2e}", report.uniform_bound, report.max_imag);
    if let Some(out) = &args.out {
        let out = resolve_out(out);
        io::write_file(&out, &table)?;
        manifest.write(&[out])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs, manifest: Manifest) -> Result<ExitCode> {
    let phantom = parse_phantom(&args.phantom, args.a)?;
    let (lo_deg, hi_deg) = parse_range(&args.sector, "sector")?;
    let sector = AngularSector::new(
        lo_deg.to_radians(),
        hi_deg.to_radians(),
        args.n_alpha,
    )?;
    let rule = match args.rule.as_str() {
        "closed-form" => LineRule::ClosedForm,
        "quadrature" => LineRule::Quadrature { panels: 256, nodes: 4 },
        other => {
            return Err(Error::InvalidParameter(format!("unknown line rule '{other}'")))
        }
    };
    let sino = radon_transform(&phantom, sector, args.n_p, rule)?;
    let out = resolve_out(&args.out);
    io::write_file(&out, &io::sinogram_to_string(&sino))?;
    println!(
        "simulated {} directions x {} offsets; mass {:.6}",
        sector.count(),
        args.n_p,
        sino.row_mass(0)
    );
    manifest.write(&[out])?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_reconstruct(args: ReconstructArgs, manifest: Manifest) -> Result<ExitCode> {
    let text = io::read_file(&args.input)?;
    let sino = io::sinogram_from_str(&text)?;
    let samples = fill_spectral_cone(&sino, args.t_max, 16, 10)?;
    let cfg = cone_kernel_config(args.j, args.a, sino.sector(), args.t_max, samples.window())?;
    let kernel = DeltaKernel::for_window(&cfg, samples.window())?;
    let grid = EvalGrid::raster([-args.a, -args.a], [args.a, args.a], args.grid);
    let field = extrapolate(&samples, &kernel, &grid)?;
    let out = resolve_out(&args.out);
    io::write_file(&out, &io::field_to_string(&field))?;
    println!(
        "reconstructed {}x{} raster from {} directions (j = {}, max imag {:.3e})",
        args.grid,
        args.grid,
        sino.sector().count(),
        args.j,
        field.max_imag()
    );
    manifest.write(&[out])?;
    Ok(ExitCode::SUCCESS)
}

fn builtin_function(name: &str) -> Result<Box<dyn Fn([f64; 2]) -> f64>> {
    match name {
        "builtin:exp-cos" => Ok(Box::new(|p| p[0].exp() * (3.0 * p[1]).cos())),
        "builtin:harmonic" => Ok(Box::new(|p| p[0])),
        "builtin:abs2" => Ok(Box::new(|p| p[0] * p[0] + p[1] * p[1])),
        other => Err(Error::InvalidParameter(format!(
            "unknown function '{other}' (builtin:exp-cos | builtin:harmonic | builtin:abs2)"
        ))),
    }
}

fn cmd_products(args: ProductsArgs, manifest: Manifest) -> Result<ExitCode> {
    let degrees: Vec<usize> = parse_list(&args.degrees, "degree ladder")?;
    let f = builtin_function(&args.function)?;
    let quad = DomainQuadrature::disc(1.0, 8, 40)?;
    let rows = approximate_by_products(f, &quad, &degrees)?;
    let table_rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.degree as f64,
                r.residual,
                r.effective_rank as f64,
                r.dictionary_size as f64,
            ]
        })
        .collect();
    let table = io::table_to_string(&["N", "residual", "rank", "dictionary"], &table_rows);
    print!("{table}");
    if let Some(out) = &args.out {
        let out = resolve_out(out);
        io::write_file(&out, &table)?;
        manifest.write(&[out])?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_blowup(args: BlowupArgs, manifest: Manifest) -> Result<ExitCode> {
    let ts: Vec<f64> = parse_list(&args.t_values, "t list")?;
    let eps: Vec<f64> = parse_list(&args.eps, "eps ladder")?;
    let quad = DomainQuadrature::disc(1.0, 12, 48)?;
    let rows = blowup_study(&ts, &eps, args.n_alpha, &quad)?;
    let table_rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.t,
                r.target,
                r.residual,
                r.coeff_norm,
                if r.feasible { 1.0 } else { 0.0 },
            ]
        })
        .collect();
    let table = io::table_to_string(&["t", "eps", "residual", "coeff_norm", "feasible"], &table_rows);
    print!("{table}");
    let infeasible = rows.iter().any(|r| !r.feasible);
    if let Some(out) = &args.out {
        let out = resolve_out(out);
        io::write_file(&out, &table)?;
        manifest.write(&[out])?;
    }
    if infeasible {
        eprintln!("note: some residual targets were unreachable at this discretization");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_repro(args: ReproArgs) -> Result<ExitCode> {
    match args.what.as_str() {
        "list" => {
            for (id, name) in illposed::repro::CRITERIA {
                println!("{id}  {name}");
            }
            Ok(ExitCode::SUCCESS)
        }
        "all" => {
            let reports = illposed::repro::run_all();
            let mut all_pass = true;
            for r in &reports {
                println!("{}", r.summary_line());
                all_pass &= r.passed;
            }
            if all_pass {
                println!("all {} criteria passed", reports.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        other => {
            let id: usize = other.parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "expected 'all', 'list', or a criterion id, got '{other}'"
                ))
            })?;
            let report = illposed::repro::run(id).ok_or_else(|| {
                Error::InvalidParameter(format!("no criterion with id {id} (valid: 1..9)"))
            })?;
            println!("{}", report.summary_line());
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}
