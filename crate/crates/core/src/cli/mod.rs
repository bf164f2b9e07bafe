//! Subcommands of the `shortcut-forge` binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use shortcut_forge::bench;
use shortcut_forge::chain_decomp::decompose;
use shortcut_forge::generators::{generate, subdivide, Family, GenSpec, Generated};
use shortcut_forge::graph::transitive_closure;
use shortcut_forge::hopset::{run_hopset_mode, HopsetMode};
use shortcut_forge::io::{self, Loaded};
use shortcut_forge::oracles::{verify_hopset_edges, verify_shortcut_edges, VerificationReport};
use shortcut_forge::shortcut::{run_mode, Mode};
use shortcut_forge::{Error, Ratio, Result};

/// Exit code for a failed verification.
pub const EXIT_VERIFY: u8 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "shortcut-forge", version, about = "Shortcut sets and hopsets for directed graphs")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Build a shortcut set.
    Shortcut(ShortcutArgs),
    /// Build a (β, ε)-hopset.
    Hopset(HopsetArgs),
    /// Check a shortcut or hopset file against its graph.
    Verify(VerifyArgs),
    /// Print a chain/antichain decomposition.
    Decomp(DecompArgs),
    /// Run a benchmark config and emit CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge probability.
    #[arg(long, conflicts_with = "density")]
    p: Option<f64>,
    /// Expected out-degree.
    #[arg(long)]
    density: Option<f64>,
    /// Maximum weight; makes the instance weighted.
    #[arg(long = "W")]
    max_weight: Option<u64>,
    /// Layer width for the layered family.
    #[arg(long)]
    width: Option<usize>,
    /// Replace every vertex by a path of this many edges.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ShortcutArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    diameter: usize,
    #[arg(long = "const", default_value_t = 3.0)]
    c: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_mode)]
    mode: Mode,
    /// Verify the result and exit 1 on failure.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct HopsetArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    beta: usize,
    /// Rational `p/q` or decimal in (0, 1).
    #[arg(long, value_parser = parse_ratio)]
    eps: Ratio,
    #[arg(long = "const", default_value_t = 3.0)]
    c: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_hopset_mode)]
    mode: HopsetMode,
    /// Verify the result and exit 1 on failure.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum VerifyMode {
    Shortcut,
    Hopset,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    edges: PathBuf,
    #[arg(long, value_enum)]
    mode: VerifyMode,
    #[arg(long, required_if_eq("mode", "shortcut"))]
    diameter: Option<usize>,
    #[arg(long, required_if_eq("mode", "hopset"))]
    beta: Option<usize>,
    #[arg(long, required_if_eq("mode", "hopset"), value_parser = parse_ratio)]
    eps: Option<Ratio>,
    /// Write the full report as JSON to this file (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecompArgs {
    #[arg(long)]
    input: PathBuf,
    /// Chain budget ℓ.
    #[arg(long)]
    ell: usize,
    /// Decompose the transitive closure instead of the graph.
    #[arg(long)]
    closure: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report zero wall time, for byte-stable output.
    #[arg(long)]
    no_timing: bool,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_hopset_mode(s: &str) -> std::result::Result<HopsetMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ratio(s: &str) -> std::result::Result<Ratio, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Cap the rayon pool from `SHORTCUT_FORGE_THREADS`.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SHORTCUT_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidParameter(format!("SHORTCUT_FORGE_THREADS={v:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

pub fn run(cli: Cli) -> ExitCode {
    let outcome = configure_threads().and_then(|()| match cli.command {
        Command::Gen(a) => gen(a),
        Command::Shortcut(a) => shortcut(a),
        Command::Hopset(a) => hopset(a),
        Command::Verify(a) => verify(a),
        Command::Decomp(a) => decomp(a),
        Command::Bench(a) => bench_cmd(a),
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load(path: &Path) -> Result<Loaded> {
    let l = io::read_graph(path)?;
    let r = &l.report;
    if r.self_loops + r.duplicates > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges",
            r.self_loops, r.duplicates
        );
    }
    Ok(l)
}

fn gen(a: GenArgs) -> Result<bool> {
    let mut spec = GenSpec::new(a.family, a.n, a.seed);
    if let Some(p) = a.p {
        spec = spec.with_p(p);
    }
    if let Some(d) = a.density {
        spec = spec.with_density(d);
    }
    if let Some(w) = a.max_weight {
        spec = spec.with_max_weight(w);
    }
    if let Some(w) = a.width {
        spec = spec.with_width(w);
    }
    let mut g = generate(&spec)?;
    if let Some(k) = a.k {
        let Generated::Unweighted(base) = &g else {
            return Err(Error::InvalidParameter(
                "--k applies to unweighted instances only".into(),
            ));
        };
        g = Generated::Unweighted(subdivide(base, k)?.graph);
    }
    fs::write(&a.out, io::format_generated(&g))?;
    Ok(true)
}

fn summary(counts: impl IntoIterator<Item = (String, usize)>) -> String {
    let mut s = String::new();
    for (t, c) in counts {
        let _ = write!(s, " {t}={c}");
    }
    s
}

fn shortcut(a: ShortcutArgs) -> Result<bool> {
    let l = load(&a.input)?;
    let g = l.unweighted();
    let h = run_mode(&g, a.mode, a.diameter, a.c, a.seed)?;
    io::write_output(&a.out, &io::format_shortcuts(g.n(), &h, l.ids.as_ref()), l.ids.as_ref())?;
    println!(
        "|H|={}{}",
        h.len(),
        summary(h.counts().into_iter().map(|(t, c)| (t.name().to_string(), c)))
    );
    if a.verify {
        let edges: Vec<_> = h.edges().collect();
        return report(&verify_shortcut_edges(&g, &edges, a.diameter), None);
    }
    Ok(true)
}

fn hopset(a: HopsetArgs) -> Result<bool> {
    let l = load(&a.input)?;
    let g = l.weighted()?;
    let h = run_hopset_mode(&g, a.mode, a.beta, a.eps, a.c, a.seed)?;
    io::write_output(&a.out, &io::format_hopset(g.n(), &h, l.ids.as_ref()), l.ids.as_ref())?;
    println!(
        "|H|={}{}",
        h.len(),
        summary(h.counts().into_iter().map(|(t, c)| (t.name().to_string(), c)))
    );
    if a.verify {
        let edges: Vec<_> = h.weighted_edges().collect();
        return report(&verify_hopset_edges(&g, &edges, a.beta, a.eps), None);
    }
    Ok(true)
}

fn report(r: &VerificationReport, json: Option<&PathBuf>) -> Result<bool> {
    for c in &r.checks {
        let status = format!("{:?}", c.status).to_lowercase();
        match &c.witness {
            Some(w) => println!("{status:7} {} ({w})", c.name),
            None => println!("{status:7} {}", c.name),
        }
    }
    if let Some(d) = r.achieved_diameter {
        println!("achieved diameter {d}");
    }
    if let Some(s) = r.achieved_stretch {
        println!("achieved stretch {s:.4}");
    }
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(r).expect("report serializes") + "\n";
        if path.as_os_str() == "-" {
            print!("{text}");
        } else {
            fs::write(path, text)?;
        }
    }
    Ok(r.passed())
}

fn verify(a: VerifyArgs) -> Result<bool> {
    let l = load(&a.graph)?;
    let file = io::read_edges(&a.edges, &l)?;
    let r = match a.mode {
        VerifyMode::Shortcut => {
            let d = a.diameter.expect("required by clap");
            verify_shortcut_edges(&l.unweighted(), &file.pairs(), d)
        }
        VerifyMode::Hopset => {
            if !file.weighted {
                return Err(Error::InvalidParameter(
                    "hopset files carry weights (header `n m W`)".into(),
                ));
            }
            let beta = a.beta.expect("required by clap");
            let eps = a.eps.expect("required by clap");
            verify_hopset_edges(&l.weighted()?, &file.edges, beta, eps)
        }
    };
    report(&r, a.json.as_ref())
}

fn decomp(a: DecompArgs) -> Result<bool> {
    let l = load(&a.input)?;
    let mut g = l.unweighted();
    if a.closure {
        g = transitive_closure(&g).to_digraph();
    }
    let d = decompose(&g, a.ell)?;
    let name = |v: usize| l.ids.as_ref().map_or(v as u64, |m| m.original(v));
    let mut out = String::new();
    for (kind, sets) in [("chain", &d.chains), ("antichain", &d.antichains)] {
        for s in sets {
            out.push_str(kind);
            for &v in s {
                let _ = write!(out, " {}", name(v));
            }
            out.push('\n');
        }
    }
    print!("{out}");
    Ok(true)
}

fn bench_cmd(a: BenchArgs) -> Result<bool> {
    let mut cfg = bench::parse_config(&fs::read_to_string(&a.config)?)?;
    if a.no_timing {
        cfg.timing = false;
    }
    let rows = bench::run(&cfg)?;
    let csv = bench::to_csv(&rows);
    match &a.out {
        Some(p) => fs::write(p, csv)?,
        None => print!("{csv}"),
    }
    Ok(true)
}
