use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gtspline::classify::{
    classify, column_reduction, is_dual_compatible, is_vmcr, is_weakly_dc, refine_example4, Report,
};
use gtspline::independence::{build_refinement_matrix, gram_rank_oracle, is_full_rank, Flavor, RANK_TOL, ZERO_TOL};
use gtspline::surface::{reproduce_reference, to_csv, to_obj, ControlNet, GTSurface, ReferenceShape, SampleGrid};
use gtspline::tmesh::{random_knots, random_mesh, Classification};
use gtspline::{Error, ParametricTMesh, SectionCore};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Generalized T-spline meshes: classification, refinement matrices and surfaces.
#[derive(Debug, Parser)]
#[command(name = "gtspline", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file (mesh JSON, or a shape/net JSON where noted).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file or directory; stdout when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FlavorArg::Gb)]
    flavor: FlavorArg,
    /// Relative singular-value tolerance for rank decisions.
    #[arg(long, global = true, default_value_t = RANK_TOL)]
    rank_tol: f64,
    /// Magnitude below which a matrix entry counts as zero.
    #[arg(long, global = true, default_value_t = ZERO_TOL)]
    zero_tol: f64,
    /// Samples per direction for surface export.
    #[arg(long, global = true, default_value_t = 101)]
    resolution: usize,
    /// Refinement steps.
    #[arg(long, global = true, default_value_t = 4)]
    steps: usize,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Gb,
    Poly,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Gb => Flavor::Gb,
            FlavorArg::Poly => Flavor::Poly,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a mesh and write the JSON report.
    Check,
    /// Dump the refinement matrix as CSV and print its verdicts.
    Matrix,
    /// Write the meshes of the bottom-right refinement sequence into a directory.
    Refine,
    /// Evaluate a surface and export OBJ (by `.obj` extension) or CSV.
    Surface {
        /// Control net JSON with `points` and optional `weights`.
        #[arg(long, conflicts_with = "shape")]
        net: Option<PathBuf>,
        /// Reference shape JSON; the surface is fitted to it and the max error reported.
        #[arg(long)]
        shape: Option<PathBuf>,
    },
    /// Check the classifier implication chain on seeded random admissible-plus meshes.
    Chain {
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
}

/// Validated settings shared by all commands.
#[derive(Debug, Clone)]
struct RunConfig {
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    flavor: Flavor,
    rank_tol: f64,
    zero_tol: f64,
    resolution: usize,
    steps: usize,
    seed: u64,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        if !(cli.rank_tol > 0.0 && cli.zero_tol > 0.0) {
            bail!(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if cli.resolution < 2 {
            bail!(Error::InvalidParameter("resolution must be at least 2".into()));
        }
        Ok(Self {
            input: cli.input.clone(),
            output: cli.output.clone(),
            flavor: cli.flavor.into(),
            rank_tol: cli.rank_tol,
            zero_tol: cli.zero_tol,
            resolution: cli.resolution,
            steps: cli.steps,
            seed: cli.seed,
        })
    }

    fn input(&self) -> Result<&Path> {
        self.input.as_deref().context("--input is required")
    }

    fn mesh(&self) -> Result<ParametricTMesh> {
        let path = self.input()?;
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ParametricTMesh::from_json(&text).with_context(|| format!("loading {}", path.display()))
    }

    /// Writes to `--output`, or stdout.
    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => Ok(std::io::stdout().write_all(text.as_bytes())?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetFile {
    points: Vec<[f64; 3]>,
    weights: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct ChainSummary {
    seed: u64,
    meshes: u64,
    dual_compatible: u64,
    weakly_dc: u64,
    vmcr: u64,
    full_rank: u64,
    counterexamples: Vec<String>,
}

fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn cmd_check(cfg: &RunConfig) -> Result<()> {
    let report = classify(&cfg.mesh()?)?;
    cfg.emit(&report_json(&report))
}

fn cmd_matrix(cfg: &RunConfig) -> Result<()> {
    let pm = cfg.mesh()?;
    pm.mesh().require_admissible()?;
    let c = build_refinement_matrix(&pm, cfg.flavor)?;
    let full = is_full_rank(&c, cfg.rank_tol);
    let void = column_reduction(&c.pattern(cfg.zero_tol).transpose()).is_void();
    let summary = format!(
        "n = {}\nn_hat = {}\nrank = {}\nfull_rank = {full}\npattern_void = {void}\n",
        c.nrows(),
        c.ncols(),
        c.rank(cfg.rank_tol)
    );
    // verdicts go to stdout only when the CSV has its own file
    match &cfg.output {
        Some(_) => {
            cfg.emit(&c.to_csv())?;
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            cfg.emit(&c.to_csv())?;
        }
    }
    Ok(())
}

fn cmd_refine(cfg: &RunConfig) -> Result<()> {
    let dir = cfg.output.as_deref().context("--output directory is required")?;
    let seq = refine_example4(cfg.steps)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (k, pm) in seq.iter().enumerate() {
        let path = dir.join(format!("step_{k}.json"));
        fs::write(&path, pm.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
        let r = classify(pm)?;
        println!(
            "{}: vmcr={} dual_compatible={} weakly_dc_types={:?}",
            path.display(),
            r.vmcr,
            r.dual_compatible.map_or("n/a".to_string(), |b| b.to_string()),
            r.weakly_dc_types
        );
    }
    Ok(())
}

fn export(cfg: &RunConfig, grid: &SampleGrid) -> Result<()> {
    let obj = cfg.output.as_deref().and_then(Path::extension).is_some_and(|e| e.eq_ignore_ascii_case("obj"));
    cfg.emit(&if obj { to_obj(grid) } else { to_csv(grid) })
}

fn cmd_surface(cfg: &RunConfig, net: Option<&Path>, shape: Option<&Path>) -> Result<()> {
    match (net, shape) {
        (Some(net), _) => {
            let pm = cfg.mesh()?;
            let text = fs::read_to_string(net).with_context(|| format!("reading {}", net.display()))?;
            let file: NetFile = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(e.to_string()))
                .with_context(|| format!("loading {}", net.display()))?;
            let n = file.points.len();
            let net = ControlNet::new(file.points, file.weights.unwrap_or_else(|| vec![1.0; n]))?;
            let surface = GTSurface::new(pm, net)?;
            export(cfg, &surface.sample_uniform(cfg.resolution)?)
        }
        (None, Some(shape)) => {
            let text = fs::read_to_string(shape).with_context(|| format!("reading {}", shape.display()))?;
            let shape: ReferenceShape =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string())).context("loading shape")?;
            let pm = match cfg.input {
                Some(_) => cfg.mesh()?,
                None => shape.fit_mesh(cfg.flavor == Flavor::Poly)?,
            };
            let fit = reproduce_reference(&shape, &pm, cfg.resolution)?;
            let (s0, s1, t0, t1) = shape.domain();
            let grid = fit.surface.sample(
                &gtspline::surface::linspace(s0, s1, cfg.resolution),
                &gtspline::surface::linspace(t0, t1, cfg.resolution),
            )?;
            export(cfg, &grid)?;
            eprintln!("max error = {:e}", fit.max_error);
            Ok(())
        }
        (None, None) => bail!("surface needs --net or --shape"),
    }
}

fn cmd_chain(cfg: &RunConfig, count: u64) -> Result<()> {
    const CORE: SectionCore = SectionCore::Trigonometric { omega: 1.0 };
    let mut sum = ChainSummary {
        seed: cfg.seed,
        meshes: count,
        dual_compatible: 0,
        weakly_dc: 0,
        vmcr: 0,
        full_rank: 0,
        counterexamples: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..count {
        let (mu, nu) = (rng.random_range(4..=8), rng.random_range(4..=8));
        let mesh = random_mesh(&mut rng, 4, 4, mu, nu, 30, Classification::AdmissiblePlus);
        let (ilo, ihi, jlo, jhi) = mesh.domain();
        let ks = random_knots(&mut rng, (ihi - ilo + 1) as usize, 0.2, 0.6);
        let kt = random_knots(&mut rng, (jhi - jlo + 1) as usize, 0.2, 0.6);
        let pm = ParametricTMesh::with_uniform_cores(mesh, ks, CORE, kt, CORE)?;
        let dc = is_dual_compatible(pm.mesh())?;
        let wdc = !is_weakly_dc(&pm)?.is_empty();
        let vmcr = is_vmcr(&pm)?;
        let full = is_full_rank(&build_refinement_matrix(&pm, cfg.flavor)?, cfg.rank_tol);
        let oracle = gram_rank_oracle(&pm, cfg.flavor, cfg.rank_tol)?;
        sum.dual_compatible += dc as u64;
        sum.weakly_dc += wdc as u64;
        sum.vmcr += vmcr as u64;
        sum.full_rank += full as u64;
        let checks = [
            (dc && !wdc, "DC without WDC"),
            (wdc && !vmcr, "WDC without VMCR"),
            (vmcr && !full, "VMCR without full rank"),
            (oracle != full, "oracle disagrees"),
        ];
        for (bad, what) in checks {
            if bad {
                sum.counterexamples.push(format!("mesh {k}: {what}"));
            }
        }
    }
    cfg.emit(&(serde_json::to_string_pretty(&sum)? + "\n"))?;
    if !sum.counterexamples.is_empty() {
        bail!("{} counterexamples", sum.counterexamples.len());
    }
    Ok(())
}

/// 2 for unreadable or malformed meshes, 3 for non-admissible ones, 1 otherwise.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NotAdmissible(_)) => 3,
        Some(
            Error::Parse(_)
            | Error::MalformedPartition(_)
            | Error::InvalidKnots(_)
            | Error::InvalidCore(_)
            | Error::CoreCountMismatch { .. }
            | Error::MultiplicityTooHigh { .. }
            | Error::ChebyshevViolation { .. }
            | Error::DegenerateSpan { .. },
        ) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Check => cmd_check(&cfg),
        Command::Matrix => cmd_matrix(&cfg),
        Command::Refine => cmd_refine(&cfg),
        Command::Surface { net, shape } => cmd_surface(&cfg, net.as_deref(), shape.as_deref()),
        Command::Chain { count } => cmd_chain(&cfg, *count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
