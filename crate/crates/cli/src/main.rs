//! `betti`: point clouds → persistence diagrams → Betti sequences, plus
//! diagram distances and the scripted experiments.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use betti_core::diagram::{truncate_essential, FiltrationGrid};
use betti_core::experiments::{cloud_diagrams, write_run, ExperimentRegistry};
use betti_core::filtration::build_rips;
use betti_core::io::{self, fmt_significant, VectorRow};
use betti_core::metrics::{bottleneck, wasserstein};
use betti_core::pointcloud::{pairwise_distances, CloudParams, GeneratorRegistry};
use betti_core::vectorize::{
    normalize_sup, cumulative, GammaRule, NewExtended, NormExponent, StableGaussian, Vectorizer, VectorizerRegistry,
};
use betti_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "betti", version, about = "Persistent homology and Betti-sequence vectorizations of 2-D point clouds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a point cloud and write it as `x,y` CSV.
    Generate(GenerateArgs),
    /// Compute persistence diagrams of a point-cloud CSV.
    Diagram(DiagramArgs),
    /// Turn a diagram CSV into Betti sequences.
    Vectorize(VectorizeArgs),
    /// Distance between two diagram CSVs.
    Distance(DistanceArgs),
    /// Run a named experiment (ratio-curve, theorem-2-5-demo, instability-sweep, batch).
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator: lattice, uniform, sierpinski, hole.
    #[arg(long)]
    kind: String,
    /// Number of points (a perfect square for the lattice).
    #[arg(long, default_value_t = 225)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Square side (uniform) or unstretched lattice extent.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Lattice stretch: extent is `(1 + epsilon) * scale`.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    epsilon: f64,
    /// Lattice jitter bound per coordinate.
    #[arg(long, default_value_t = 0.0)]
    perturb: f64,
    /// Chaos-game iterates discarded before sampling.
    #[arg(long, default_value_t = 20)]
    burn_in: usize,
    #[arg(long, default_value_t = 0.15)]
    hole_lo: f64,
    #[arg(long, default_value_t = 0.85)]
    hole_hi: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct DiagramArgs {
    /// Point-cloud CSV (`x,y`).
    #[arg(long = "in")]
    input: PathBuf,
    /// Rips threshold; bars beyond it are essential.
    #[arg(long, default_value_t = 1.0)]
    tau_max: f64,
    /// Homology dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    /// Also write the filtered complex, one simplex per line.
    #[arg(long)]
    dump_complex: Option<PathBuf>,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct VectorizeArgs {
    /// Diagram CSV (`dim,birth,death`).
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    tau_max: f64,
    /// Number of bins N.
    #[arg(long, default_value_t = 20)]
    bins: usize,
    /// Vectorizers: grid-sample, interval, stable-gaussian, new-extended.
    #[arg(long, value_delimiter = ',', default_value = "interval")]
    method: Vec<String>,
    /// Constant γ for new-extended instead of (N - i + 1)/10.
    #[arg(long)]
    gamma: Option<f64>,
    /// Use the un-squared norm in the stable-gaussian exponent.
    #[arg(long)]
    unsquared: bool,
    /// Apply the running sum.
    #[arg(long)]
    cumulative: bool,
    /// Divide by the sup-norm (after --cumulative when both are given).
    #[arg(long)]
    normalize: bool,
    /// Value of the `seed` column.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct DistanceArgs {
    a: PathBuf,
    b: PathBuf,
    /// Wasserstein order p >= 1.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Bottleneck distance instead of Wasserstein.
    #[arg(long)]
    bottleneck: bool,
    /// Homology dimension to compare.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Essential classes are clamped to this value.
    #[arg(long, default_value_t = 1.0)]
    tau_max: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    name: String,
    /// Flat `key = value` config file applied over the defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` overrides, applied last.
    #[arg(long = "set")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// A `.csv` file for single-table experiments, else a directory.
    #[arg(short, long)]
    output: PathBuf,
}

enum Failure {
    Param(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parameter_error() {
            Failure::Param(e.to_string())
        } else {
            Failure::Io(e.to_string())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn print_seed(seed: u64) {
    eprintln!("seed: {seed}");
}

fn generate(a: GenerateArgs) -> Result<(), Failure> {
    print_seed(a.seed);
    let registry = GeneratorRegistry::default();
    let params = CloudParams {
        n: a.n,
        seed: a.seed,
        scale: a.scale,
        epsilon: a.epsilon,
        perturb: a.perturb,
        burn_in: a.burn_in,
        hole_lo: a.hole_lo,
        hole_hi: a.hole_hi,
    };
    let pc = registry.get(&a.kind)?.generate(&params)?;
    write(&a.output, &io::write_points(&pc))
}

fn diagram(a: DiagramArgs) -> Result<(), Failure> {
    print_seed(0);
    if a.dims.is_empty() || a.dims.iter().any(|&d| d > 1) {
        return Err(Failure::Param("--dims must be a subset of {0,1}".into()));
    }
    let pc = io::read_points(&read(&a.input)?)?;
    if let Some(dump) = &a.dump_complex {
        let fc = build_rips(&pairwise_distances(&pc), a.tau_max, 2)?;
        write(dump, &fc.debug_dump())?;
    }
    let mut dims = a.dims.clone();
    dims.sort_unstable();
    dims.dedup();
    let diagrams = cloud_diagrams(&pc, a.tau_max, &dims)?;
    write(&a.output, &io::write_diagrams(&diagrams))
}

fn vectorize(a: VectorizeArgs) -> Result<(), Failure> {
    print_seed(a.seed);
    let grid = FiltrationGrid::new(a.tau_max, a.bins)?;
    let mut registry = VectorizerRegistry::default();
    if let Some(g) = a.gamma {
        GammaRule::Constant(g).gammas(a.bins)?;
        registry.register(Box::new(NewExtended {
            gamma: GammaRule::Constant(g),
        }));
    }
    if a.unsquared {
        registry.register(Box::new(StableGaussian {
            exponent: NormExponent::Unsquared,
        }));
    }
    let diagrams = io::read_diagrams(&read(&a.input)?)?;
    let mut rows = Vec::new();
    for name in &a.method {
        let v: &dyn Vectorizer = registry.get(name)?;
        for pd in &diagrams {
            let mut out = v.vectorize(pd, &grid)?;
            let mut label = name.clone();
            if a.cumulative {
                out = cumulative(&out);
                label.push_str("+cumulative");
            }
            if a.normalize {
                out = normalize_sup(&out);
                label.push_str("+normalized");
            }
            rows.push(VectorRow {
                variant: label,
                dim: pd.dim,
                seed: a.seed,
                values: out.values,
            });
        }
    }
    write(&a.output, &io::write_vectors(&rows, a.bins))
}

fn distance(a: DistanceArgs) -> Result<(), Failure> {
    print_seed(0);
    let pick = |path: &Path| -> Result<_, Failure> {
        let all = io::read_diagrams(&read(path)?)?;
        let pd = all.into_iter().find(|d| d.dim == a.dim).unwrap_or_else(|| {
            betti_core::homology::PersistenceDiagram::new(a.dim, Vec::new())
        });
        Ok(truncate_essential(&pd, a.tau_max))
    };
    let (x, y) = (pick(&a.a)?, pick(&a.b)?);
    let value = if a.bottleneck {
        bottleneck(&x, &y)?
    } else {
        wasserstein(&x, &y, a.p)?
    };
    println!("{}", fmt_significant(value, 15));
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<(), Failure> {
    let registry = ExperimentRegistry::default();
    let exp = registry.get(&a.name)?;
    let mut cfg = exp.default_config();
    if let Some(path) = &a.config {
        cfg.apply_text(&read(path)?)?;
    }
    for kv in &a.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Failure::Param(format!("--set expects key=value, got `{kv}`")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    print_seed(cfg.seed);
    let out = exp.run(&cfg)?;
    for p in write_run(&out, &cfg, &a.output)? {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Diagram(a) => diagram(a),
        Command::Vectorize(a) => vectorize(a),
        Command::Distance(a) => distance(a),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Param(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
