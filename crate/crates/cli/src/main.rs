use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use mincodes::codes::CodeCf;
use mincodes::parallel::with_workers;
use mincodes::report::{self, Report, RunConfig, Runtime};
use mincodes::search::{self, SearchStatus};
use mincodes::sets::file::{render, SetFile};
use mincodes::sets::{self, PointSet};
use mincodes::{Error, Point, Space};

#[derive(Parser)]
#[command(name = "mincodes", version, about = "Minimal linear codes from point sets over finite fields")]
struct Cli {
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Write the machine-readable report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Print the machine-readable report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Set file: a `q n` header line, then one point per line.
    #[arg(long)]
    input: PathBuf,
    /// Expected field order; checked against the file header.
    #[arg(long)]
    q: Option<usize>,
    /// Expected dimension; checked against the file header.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the three geometric conditions on a point set.
    CheckSet(InputArgs),
    /// Code parameters and weight distribution of C_f.
    BuildCode(InputArgs),
    /// Decide minimality of C_f by support comparison.
    Minimality(InputArgs),
    /// Test the Ashikhmin-Barg condition w_max(q-1) < w_min q.
    Ab(InputArgs),
    /// Walsh spectrum summary, bent test and spectrum criterion (q = 2).
    Walsh(InputArgs),
    /// Build a point set and write it as a set file.
    #[command(subcommand)]
    Construct(Construction),
    /// Smallest set satisfying all three conditions.
    SearchMin {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// Write the witness set here when one is found.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Smallest set meeting every affine hyperplane, up to a size cap.
    SearchBlocking {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Conditions, minimality and the AB test with a single verdict.
    VerifyTheorem(InputArgs),
}

#[derive(Subcommand)]
enum Construction {
    /// n(q-1)+1 points: the multiples of the basis vectors and an anchor.
    Tight {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated coordinates, e.g. 1,1,1,1.
        #[arg(long)]
        anchor: String,
        #[arg(long)]
        output: PathBuf,
    },
    /// Union of s subspaces from a spread of F_2^n.
    Spread {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Nonzero points of F_2^n of Hamming weight at most k.
    Ball {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn load(args: &InputArgs, config: &mut RunConfig) -> anyhow::Result<PointSet> {
    config.input = Some(display(&args.input));
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let file = SetFile::parse(&text)?;
    for (flag, want, got) in [("q", args.q, file.q), ("n", args.n, file.n)] {
        if let Some(w) = want {
            if w != got {
                bail!("--{flag} {w} does not match the file header ({flag} = {got})");
            }
        }
    }
    config.q = Some(file.q);
    config.n = Some(file.n);
    Ok(file.into_point_set(false)?)
}

fn write_set(path: &Path, set: &PointSet, comment: &str) -> anyhow::Result<()> {
    fs::write(path, render(set, &[comment])).with_context(|| format!("writing {}", path.display()))
}

fn config_for(command: &str) -> RunConfig {
    RunConfig { command: command.into(), ..RunConfig::default() }
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn run(command: &Command) -> anyhow::Result<Report> {
    Ok(match command {
        Command::CheckSet(a) => {
            let mut c = config_for("check-set");
            let set = load(a, &mut c)?;
            report::check_set(c, &set)?
        }
        Command::BuildCode(a) => {
            let mut c = config_for("build-code");
            let code = CodeCf::new(load(a, &mut c)?)?;
            report::build_code(c, &code)
        }
        Command::Minimality(a) => {
            let mut c = config_for("minimality");
            let code = CodeCf::new(load(a, &mut c)?)?;
            report::minimality(c, &code)
        }
        Command::Ab(a) => {
            let mut c = config_for("ab");
            let code = CodeCf::new(load(a, &mut c)?)?;
            report::ab(c, &code)?
        }
        Command::Walsh(a) => {
            let mut c = config_for("walsh");
            let code = CodeCf::new(load(a, &mut c)?)?;
            report::walsh(c, &code)?
        }
        Command::VerifyTheorem(a) => {
            let mut c = config_for("verify-theorem");
            let set = load(a, &mut c)?;
            report::verify_theorem(c, &set)?
        }
        Command::Construct(kind) => construct(kind)?,
        Command::SearchMin { q, n, output } => {
            let mut c = config_for("search-min");
            c.q = Some(*q);
            c.n = Some(*n);
            c.output = output.as_deref().map(display);
            let r = search::min_theorem_set_search(*q, *n)?;
            if let (Some(path), Some(w)) = (output, &r.witness) {
                write_set(path, w, "smallest set satisfying all three conditions")?;
            }
            report::search(c, &r)
        }
        Command::SearchBlocking { q, n, cap, output } => {
            let mut c = config_for("search-blocking");
            c.q = Some(*q);
            c.n = Some(*n);
            c.output = output.as_deref().map(display);
            c.params = params([("cap", cap.to_string())]);
            match search::min_blocking_search(*q, *n, *cap) {
                Ok(r) => {
                    if let (Some(path), Some(w)) = (output, &r.witness) {
                        write_set(path, w, "smallest affine blocking set")?;
                    }
                    debug_assert_eq!(r.status, SearchStatus::Found);
                    report::search(c, &r)
                }
                Err(Error::CapTooSmall(cap)) => report::search_cap_reached(c, cap),
                Err(e) => return Err(e.into()),
            }
        }
    })
}

fn construct(kind: &Construction) -> anyhow::Result<Report> {
    let mut c = config_for("construct");
    let (set, spread, output) = match kind {
        Construction::Tight { q, n, anchor, output } => {
            let point: Point = anchor.parse().map_err(|e: String| anyhow::anyhow!("--anchor {anchor}: {e}"))?;
            c.q = Some(*q);
            c.n = Some(*n);
            c.params = params([("kind", "tight".into()), ("anchor", anchor.clone())]);
            let space = Arc::new(Space::new(*q, *n)?);
            (sets::construct_tight(space, &point)?, None, output)
        }
        Construction::Spread { n, s, output } => {
            c.q = Some(2);
            c.n = Some(*n);
            c.params = params([("kind", "spread".into()), ("s", s.to_string())]);
            let u = sets::construct_spread_union(*n, *s)?;
            (u.set.clone(), Some(u), output)
        }
        Construction::Ball { n, k, output } => {
            c.q = Some(2);
            c.n = Some(*n);
            c.params = params([("kind", "ball".into()), ("k", k.to_string())]);
            (sets::construct_hamming_ball(*n, *k)?, None, output)
        }
    };
    c.output = Some(display(output));
    let comment = format!("construct {}", c.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "));
    write_set(output, &set, &comment)?;
    Ok(report::construct(c, &set, spread.as_ref()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = with_workers(cli.workers, || run(&cli.command)).map_err(anyhow::Error::from).and_then(|r| r);
    let report = match outcome {
        Ok(r) => r.with_runtime(Runtime::new(cli.workers.max(1), started.elapsed())),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.report {
        if let Err(e) = fs::write(path, report.to_json() + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        for line in &report.summary {
            println!("{line}");
        }
        println!("verdict: {}", serde_json::to_value(report.verdict).expect("serializes").as_str().unwrap_or("?"));
    }
    ExitCode::from(report.exit_code() as u8)
}
