//! Command-line front end: thin argument parsing around the library.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use gwalk::bridge::BridgeSampler;
use gwalk::cnk::{CnkCounts, CnkSampler};
use gwalk::enumerate::enumerate;
use gwalk::experiment::{ExperimentId, ExperimentSpec};
use gwalk::graph::GeneratorSpec;
use gwalk::report::Report;

#[derive(Parser)]
#[command(
    name = "gwalk",
    version,
    about = "Graph-indexed random walks: exact counting, uniform sampling, and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form homomorphism counts of the layered cycle as `ell,count` rows
    Count(CountArgs),
    /// Exact uniform draws from the layered cycle as `range_size,nc_count` rows
    Sample(SampleArgs),
    /// Uniform walk bridges as `index,position` rows
    Bridge(BridgeArgs),
    /// Heat-bath chain on a bipartite graph as `draw,range_size,min,max` rows
    Mcmc(McmcArgs),
    /// Closed-form counts against the brute-force enumerator
    Verify(VerifyArgs),
    /// Threshold and range experiments
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CountArgs {
    /// Number of layers (even)
    #[arg(long)]
    n: usize,
    /// Vertices per layer
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of layers (even)
    #[arg(long)]
    n: usize,
    /// Vertices per layer
    #[arg(long)]
    k: usize,
    /// Sample from the constant-0-layer subset instead of the full set
    #[arg(long)]
    h0: bool,
    #[arg(long, default_value_t = 1)]
    draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the sampled homomorphism as `index value` lines (single draw)
    #[arg(long)]
    emit_hom: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BridgeArgs {
    /// Bridge length (even)
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McmcArgs {
    /// Generator spec (`cnk:4:3`, `torus:4`, ...) or edge-list file path
    #[arg(long)]
    graph: String,
    #[arg(long, default_value_t = 1000)]
    burnin: u64,
    #[arg(long, default_value_t = 10)]
    thin: u64,
    #[arg(long, default_value_t = 100)]
    draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest layer count to check (even)
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Largest layer width to check
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// threshold-upper | threshold-lower | theorem1 | bridge-range | torus
    id: String,
    /// Layer counts, bridge lengths, or torus sides, comma separated
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Offsets from the 2 log n threshold, comma separated
    #[arg(long, value_delimiter = ',')]
    psi: Vec<f64>,
    /// Tail width (defaults to 2^(psi/2)/8 per grid point)
    #[arg(long)]
    beta: Option<f64>,
    /// Margin for the width-one degeneration (at most 1/8)
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Range scales, comma separated
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Ball radii, comma separated
    #[arg(long, value_delimiter = ',')]
    r: Vec<usize>,
    /// Ball-size constant in the hypothesis V(r) <= c log |G|
    #[arg(long)]
    c: Option<f64>,
    /// Generator specs for theorem1, comma separated
    #[arg(long, value_delimiter = ',')]
    graphs: Vec<String>,
    /// Width-one degeneration of threshold-lower
    #[arg(long)]
    k1: bool,
    #[arg(long)]
    draws: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::Count(args) => count(args),
        Command::Sample(args) => sample(args),
        Command::Bridge(args) => bridge(args),
        Command::Mcmc(args) => mcmc(args),
        Command::Verify(args) => verify(args),
        Command::Experiment(args) => experiment(args),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn count(args: CountArgs) -> Result<bool> {
    let counts = CnkCounts::new(args.n, args.k)?;
    let text = match args.format {
        Format::Csv => {
            let mut text = String::from("ell,count\n");
            for (l, c) in counts.h0_by_layers.iter().enumerate() {
                writeln!(text, "{l},{c}")?;
            }
            text
        }
        Format::Json => {
            let value = serde_json::json!({
                "n": counts.n,
                "k": counts.k,
                "h0_by_layers": counts.h0_by_layers.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "h0_total": counts.h0_total.to_string(),
                "total": counts.total.to_string(),
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
    };
    emit(args.out.as_ref(), &text)?;
    eprintln!(
        "cnk({}, {}): h0_total = {}, total = {}",
        counts.n, counts.k, counts.h0_total, counts.total
    );
    Ok(true)
}

fn sample(args: SampleArgs) -> Result<bool> {
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let mut sampler = CnkSampler::new(args.n, args.k)?;
    if args.emit_hom {
        if args.draws != 1 {
            bail!("--emit-hom prints a single homomorphism; use --draws 1");
        }
        let hom = if args.h0 {
            sampler.sample_h0(&mut rng)
        } else {
            sampler.sample_h(&mut rng)?
        };
        let spec = GeneratorSpec::Cnk {
            n: args.n,
            k: args.k,
        };
        let text = hom.to_homomorphism(&spec.build()?)?.to_text();
        return emit(args.out.as_ref(), &text).map(|()| true);
    }
    let mut text = String::from("range_size,nc_count\n");
    for _ in 0..args.draws {
        let hom = if args.h0 {
            sampler.sample_h0(&mut rng)
        } else {
            sampler.sample_h(&mut rng)?
        };
        writeln!(
            text,
            "{},{}",
            hom.range_stats().range_size,
            hom.nonconstant_layers().len()
        )?;
    }
    emit(args.out.as_ref(), &text)?;
    Ok(true)
}

fn bridge(args: BridgeArgs) -> Result<bool> {
    let sampler = BridgeSampler::new(args.n)?;
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let mut text = String::new();
    if args.draws == 1 {
        text.push_str("index,position\n");
        for (i, p) in sampler.sample(&mut rng).positions().iter().enumerate() {
            writeln!(text, "{i},{p}")?;
        }
    } else {
        text.push_str("draw,index,position\n");
        for d in 0..args.draws {
            for (i, p) in sampler.sample(&mut rng).positions().iter().enumerate() {
                writeln!(text, "{d},{i},{p}")?;
            }
        }
    }
    emit(args.out.as_ref(), &text)?;
    Ok(true)
}

fn mcmc(args: McmcArgs) -> Result<bool> {
    let graph = GeneratorSpec::graph_from_arg(&args.graph)?;
    let rng = ChaCha12Rng::seed_from_u64(args.seed);
    let stats = gwalk::mcmc::run(&graph, args.burnin, args.thin, args.draws, rng)?;
    let mut text = String::from("draw,range_size,min,max\n");
    for (d, s) in stats.iter().enumerate() {
        writeln!(text, "{d},{},{},{}", s.range_size, s.min, s.max)?;
    }
    emit(args.out.as_ref(), &text)?;
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    if args.nmax < 2 || !args.nmax.is_multiple_of(2) || args.kmax < 1 {
        bail!("verify needs an even --nmax >= 2 and --kmax >= 1");
    }
    let mut report = Report::new(
        "verify",
        0,
        &["n", "k", "set", "closed_form", "enumerated", "match"],
    );
    let mut all_match = true;
    for n in (2..=args.nmax).step_by(2) {
        for k in 1..=args.kmax {
            let counts = CnkCounts::new(n, k)?;
            let graph = GeneratorSpec::Cnk { n, k }.build()?;
            let result = enumerate(&graph, 10_000_000);
            let items = result
                .items
                .as_ref()
                .context("enumeration exceeded the materialization cap")?;
            let enumerated_h0 = items
                .iter()
                .filter(|h| (0..k).all(|s| h.value(s) == 0))
                .count();
            for (set, closed, seen) in [
                ("h0", counts.h0_total.to_string(), enumerated_h0.to_string()),
                ("full", counts.total.to_string(), result.count.to_string()),
            ] {
                let matches = closed == seen;
                all_match &= matches;
                report.push_row(vec![
                    n.to_string(),
                    k.to_string(),
                    set.into(),
                    closed,
                    seen,
                    matches.to_string(),
                ]);
            }
        }
    }
    report.all_pass = all_match;
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => format!("{}\n", report.to_json()),
    };
    emit(args.out.as_ref(), &text)?;
    Ok(all_match)
}

fn experiment(args: ExperimentArgs) -> Result<bool> {
    let id: ExperimentId = args.id.parse()?;
    let mut spec = ExperimentSpec::defaults(id);
    spec.seed = args.seed;
    spec.k1_mode = args.k1;
    spec.beta = args.beta;
    spec.eps = args.eps;
    let n_given = !args.n.is_empty();
    if n_given {
        spec.n_values = args.n;
    }
    if !args.psi.is_empty() {
        spec.psi_values = args.psi;
    }
    if !args.alpha.is_empty() {
        spec.alpha_values = args.alpha;
    }
    if !args.r.is_empty() {
        spec.radii = args.r;
    }
    if !args.graphs.is_empty() {
        spec.graphs = args.graphs;
    }
    if let Some(c) = args.c {
        spec.c = c;
    }
    if let Some(draws) = args.draws {
        spec.draws = draws;
    }
    if spec.k1_mode && !n_given {
        // the degeneration regime wants a bridge-scale grid, not huge n
        spec.n_values = vec![400];
        if args.draws.is_none() {
            spec.draws = 2000;
        }
    }
    let report = gwalk::experiment::run(&spec)?;
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => format!("{}\n", report.to_json()),
    };
    emit(args.out.as_ref(), &text)?;
    Ok(report.all_pass)
}
