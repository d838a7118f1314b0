//! Command-line front end: compute, verify, and plot persistence
//! landscapes of self-similar point clouds.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid
//! input (bad flags, malformed config, or a system the exact machinery
//! does not cover).

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fractalscape::{
    commutation_report, convergence_report, h0_diagram, AffineIfs, DeltaProfile, IfsConfig,
    Landscape, LandscapeOperator, Preset, DEFAULT_POINT_CAP,
};

#[derive(Parser)]
#[command(
    name = "fractalscape",
    version,
    about = "Persistence landscapes of self-similar fractals: exact fixed points, \
             empirical pipelines, and cross-verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a system: maps, fixed points, separation, resolutions.
    Info(InfoArgs),
    /// Exact landscape of the attractor, as CSV.
    Landscape(LandscapeArgs),
    /// Landscape computed from an actual point cloud, as CSV.
    Empirical(EmpiricalArgs),
    /// Cross-check the exact landscape against iterated clouds.
    Verify(VerifyArgs),
    /// Render the landscape (optionally with a point cloud) as SVG.
    Plot(PlotArgs),
}

/// Which system to operate on: a bundled preset or a JSON config file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Bundled system name (run `info --preset help` to list them).
    #[arg(long)]
    preset: Option<String>,
    /// Path to a JSON file {"dim": d, "c": ratio, "offsets": [[..], ..]}.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct InfoArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Point budget for estimated separation checks.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    max_points: usize,
}

#[derive(Args)]
struct LandscapeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of landscape levels to emit.
    #[arg(long, default_value_t = 32)]
    levels: usize,
    /// closed: evaluate the fixed point directly; iterate: apply the
    /// operator from zero until successive landscapes agree.
    #[arg(long, value_enum, default_value_t = Mode::Closed)]
    mode: Mode,
    /// Write CSV here instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    Closed,
    Iterate,
}

#[derive(Args)]
struct EmpiricalArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// How many times to apply the system to its seed.
    #[arg(long, default_value_t = 4)]
    iters: usize,
    /// Keep only the first LEVELS landscape levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Refuse to materialize clouds larger than this.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    max_points: usize,
    /// Write landscape CSV here (a .diagram.csv sibling holds the
    /// persistence diagram); stdout gets the landscape otherwise.
    #[arg(short, long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Deepest iterate to check.
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Landscape levels compared at each step.
    #[arg(long, default_value_t = 32)]
    levels: usize,
    /// Refuse to materialize clouds larger than this.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    max_points: usize,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Number of landscape levels to draw.
    #[arg(long, default_value_t = 16)]
    levels: usize,
    /// Overlay the n-th iterate of the system as a point layer.
    #[arg(long, value_name = "N")]
    with_cloud: Option<usize>,
    /// Refuse to materialize clouds larger than this.
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    max_points: usize,
    /// Output SVG path.
    #[arg(short, long, value_name = "PATH")]
    output: PathBuf,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn check_failed(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    /// Stop the command early with a clean exit and nothing on stderr, e.g.
    /// when the consumer closes stdout (`fractalscape ... | head`) or after
    /// answering `--preset help`.
    fn quiet_exit() -> Self {
        Self {
            code: 0,
            message: String::new(),
        }
    }
}

impl From<fractalscape::Error> for Failure {
    fn from(e: fractalscape::Error) -> Self {
        if let fractalscape::Error::Io(io) = &e {
            if io.kind() == std::io::ErrorKind::BrokenPipe {
                return Failure::quiet_exit();
            }
        }
        Failure::invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::quiet_exit();
        }
        Failure::invalid(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info(args) => info(args),
        Command::Landscape(args) => landscape(args),
        Command::Empirical(args) => empirical(args),
        Command::Verify(args) => verify(args),
        Command::Plot(args) => plot(args),
    }
}

/// The system named by `--preset` or described by `--config`.
fn load_source(source: &SourceArgs) -> Result<(AffineIfs<f64>, Option<Preset>), Failure> {
    if let Some(name) = &source.preset {
        if name == "help" || name == "list" {
            for p in Preset::ALL {
                println!("{:<12} {}", p.name(), p.description());
            }
            return Err(Failure::quiet_exit());
        }
        let preset = Preset::from_name(name)?;
        Ok((preset.ifs::<f64>(), Some(preset)))
    } else {
        let path = source
            .config
            .as_ref()
            .expect("clap enforces the source group");
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
        let config = IfsConfig::from_json(&text)?;
        Ok((config.build::<f64>()?, None))
    }
}

fn preset_names() -> String {
    Preset::ALL
        .iter()
        .map(|p| p.name())
        .collect::<Vec<_>>()
        .join(", ")
}

/// How the exact operator for a custom system was obtained, when it
/// could be obtained at all.
enum OperatorClaim {
    /// Resolutions follow from well-separated geometry; the operator is exact.
    Exact(LandscapeOperator<f64>),
    /// Images overlap, so the resolutions are only candidate values read
    /// off the first-iterate gaps. Worth verifying, not worth trusting.
    Candidate(LandscapeOperator<f64>),
}

/// Exact operator for systems that support one; `Err` explains why not.
fn exact_operator(
    ifs: &AffineIfs<f64>,
    preset: Option<Preset>,
) -> Result<LandscapeOperator<f64>, Failure> {
    if let Some(p) = preset {
        return Ok(p.operator::<f64>());
    }
    if ifs.dim() != 1 {
        return Err(Failure::invalid(format!(
            "exact landscapes for custom systems are limited to dimension 1; \
             the bundled presets ({}) cover the planar cases",
            preset_names()
        )));
    }
    if !ifs.is_well_separated_1d()? {
        return Err(Failure::invalid(format!(
            "the map images overlap or touch, so no exact resolution profile \
             exists for this system; try `verify` to test a candidate \
             profile, or one of the presets: {}",
            preset_names()
        )));
    }
    let profile = DeltaProfile::exact_1d(ifs.deltas_1d()?)?;
    Ok(LandscapeOperator::wsi(
        ifs.map_count(),
        ifs.ratio(),
        &profile,
    )?)
}

/// Like [`exact_operator`], but a non-well-separated 1-d system still
/// yields a candidate operator built from first-iterate gaps, so `verify`
/// can put the claim on trial instead of refusing outright.
fn operator_claim(ifs: &AffineIfs<f64>, preset: Option<Preset>) -> Result<OperatorClaim, Failure> {
    match exact_operator(ifs, preset) {
        Ok(op) => Ok(OperatorClaim::Exact(op)),
        Err(_) if preset.is_none() && ifs.dim() == 1 && !ifs.is_well_separated_1d()? => {
            let candidates = ifs.resolution_candidates_1d();
            let profile = DeltaProfile::exact_1d(candidates).map_err(|_| {
                Failure::invalid(
                    "the map images overlap so heavily that not even candidate \
                     resolutions can be read off; nothing to verify",
                )
            })?;
            let op = LandscapeOperator::wsi(ifs.map_count(), ifs.ratio(), &profile)?;
            Ok(OperatorClaim::Candidate(op))
        }
        Err(e) => Err(e),
    }
}

fn info(args: InfoArgs) -> Result<(), Failure> {
    let (ifs, preset) = load_source(&args.source)?;
    let mut out = String::new();

    if let Some(p) = preset {
        out.push_str(&format!("preset: {} — {}\n", p.name(), p.description()));
    }
    out.push_str(&format!("dimension: {}\n", ifs.dim()));
    out.push_str(&format!("maps: {}\n", ifs.map_count()));
    out.push_str(&format!("contraction ratio: {}\n", ifs.ratio()));

    let fixed = ifs.fixed_points();
    out.push_str(&format!("fixed points: {}\n", format_cloud(&fixed)));
    let seed = ifs.seed_points();
    out.push_str(&format!("iteration seed: {}\n", format_cloud(&seed)));

    if ifs.dim() == 1 {
        let separated = ifs.is_well_separated_1d()?;
        if separated {
            out.push_str("well-separated images: true\n");
        } else {
            out.push_str("well-separated images: false (map images overlap or touch)\n");
        }
        match (preset, separated) {
            // A bundled operator carries the authoritative resolution
            // profile even when the separation condition fails.
            (Some(p), _) => {
                let op = p.operator::<f64>();
                out.push_str(&format!("resolutions: {}\n", format_scalars(op.head())));
            }
            (None, true) => {
                let deltas = ifs.deltas_1d()?;
                out.push_str(&format!("resolutions: {}\n", format_scalars(&deltas)));
            }
            (None, false) => {
                let candidates = ifs.resolution_candidates_1d();
                out.push_str(&format!(
                    "resolution candidates (unverified, read off first-iterate gaps): {}\n",
                    format_scalars(&candidates)
                ));
            }
        }
    } else {
        let check = ifs.separation_check(4, args.max_points)?;
        out.push_str(&format!(
            "well-separated images (estimated from iterate 4): {} \
             (margin {:.6}, sampling error < {:.6})\n",
            check.separated, check.margin, check.error_bound
        ));
        if let Some(p) = preset {
            let op = p.operator::<f64>();
            out.push_str(&format!("resolutions: {}\n", format_scalars(op.head())));
        } else {
            out.push_str("resolutions: not derivable for custom planar systems\n");
        }
    }

    print!("{out}");
    Ok(())
}

fn landscape(args: LandscapeArgs) -> Result<(), Failure> {
    let (ifs, preset) = load_source(&args.source)?;
    let op = exact_operator(&ifs, preset)?;
    let landscape = match args.mode {
        Mode::Closed => op.fixed_point(args.levels)?,
        Mode::Iterate => {
            let run = op.iterate(&Landscape::zero(), 1e-12, args.levels)?;
            eprintln!("converged after {} operator applications", run.iterations);
            run.landscape
        }
    };
    write_landscape(&landscape, args.output.as_deref())
}

fn empirical(args: EmpiricalArgs) -> Result<(), Failure> {
    let (ifs, _) = load_source(&args.source)?;
    let cloud = ifs.iterate(&ifs.seed_points(), args.iters, args.max_points)?;
    let diagram = h0_diagram(&cloud)?;
    let mut landscape = Landscape::from_diagram(&diagram);
    if let Some(levels) = args.levels {
        landscape = landscape.truncate(levels);
    }
    if let Some(path) = &args.output {
        let diagram_path = path.with_extension("diagram.csv");
        let mut file = fs::File::create(&diagram_path)?;
        diagram.write_csv(&mut file)?;
        eprintln!("diagram written to {}", diagram_path.display());
    }
    write_landscape(&landscape, args.output.as_deref())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let (ifs, preset) = load_source(&args.source)?;
    let (op, caveat) = match operator_claim(&ifs, preset)? {
        OperatorClaim::Exact(op) => (op, None),
        OperatorClaim::Candidate(op) => (
            op,
            Some(
                "note: map images overlap, so the resolution profile under test \
                 is only a candidate read off first-iterate gaps\n",
            ),
        ),
    };
    if let Some(text) = caveat {
        print!("{text}");
    }
    let commutation = commutation_report(&ifs, &op, args.n_max, args.levels, args.max_points)?;
    let convergence = convergence_report(&ifs, &op, args.n_max, args.levels, args.max_points)?;
    print!("{}", commutation.render_text());
    println!();
    print!("{}", convergence.render_text());
    if commutation.pass() && convergence.pass() {
        Ok(())
    } else {
        Err(Failure::check_failed("verification failed"))
    }
}

fn plot(args: PlotArgs) -> Result<(), Failure> {
    if args.levels == 0 {
        return Err(Failure::invalid("--levels must be at least 1 for a plot"));
    }
    let (ifs, preset) = load_source(&args.source)?;
    let op = exact_operator(&ifs, preset)?;
    let landscape = op.fixed_point(args.levels)?;

    let cloud = match args.with_cloud {
        Some(n) => {
            if ifs.dim() > 2 {
                return Err(Failure::invalid(
                    "--with-cloud draws only 1- and 2-dimensional clouds",
                ));
            }
            Some(ifs.iterate(&ifs.seed_points(), n, args.max_points)?)
        }
        None => None,
    };

    let title = match (preset, args.with_cloud) {
        (Some(p), Some(n)) => format!("{} landscape with iterate {n}", p.name()),
        (Some(p), None) => format!("{} landscape", p.name()),
        (None, Some(n)) => format!("custom system landscape with iterate {n}"),
        (None, None) => "custom system landscape".to_string(),
    };

    let rendered = svg::render(&svg::PlotSpec {
        landscape: &landscape,
        delta_1: op.head()[0],
        title: &title,
        cloud: cloud.as_ref(),
    });
    fs::write(&args.output, rendered)?;
    eprintln!("plot written to {}", args.output.display());
    Ok(())
}

fn write_landscape(landscape: &Landscape<f64>, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            let mut file = fs::File::create(path)?;
            landscape.write_csv(&mut file)?;
            file.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            landscape.write_csv(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn format_cloud(cloud: &fractalscape::PointCloud<f64>) -> String {
    let parts: Vec<String> = cloud
        .iter_points()
        .map(|p| {
            if p.len() == 1 {
                format!("{}", p[0])
            } else {
                let inner: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
                format!("({})", inner.join(", "))
            }
        })
        .collect();
    parts.join(", ")
}

fn format_scalars(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}
