//! `dcjperm`: DCJ distances, sorting scenarios and genome spaces from the
//! command line.
//!
//! Exit codes: 0 ok, 2 unreadable or malformed input, 3 oracle
//! disagreement, 4 genomes of different sizes, 5 a size guard refused the
//! request.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcjperm::dcj::{self, DcjError, Scenario};
use dcjperm::genome::{self, GenomeError, GenomeSpec};
use dcjperm::oracle::{self, OracleError, BFS_REGION_LIMIT};
use dcjperm::perm::Permutation;
use dcjperm::report::{self, Record};
use dcjperm::{Execution, Genome};

/// Largest genome accepted from files or on the command line.
const MAX_REGIONS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "dcjperm",
    version,
    about = "DCJ genome distance through involutions in the symmetric group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Cross-check distances against the BFS and adjacency-graph oracles.
    #[arg(long, global = true)]
    oracle: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Lift the size guards on exhaustive searches.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Maximum number of scenarios to list.
    #[arg(long, global = true)]
    limit: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the genomic permutation of a genome file.
    Encode { file: PathBuf },
    /// Print the chromosomes of a genomic permutation given in cycle notation.
    Decode {
        permutation: String,
        /// Number of regions; defaults to the smallest that fits.
        #[arg(long)]
        regions: Option<usize>,
    },
    /// DCJ distance with its breakdown.
    Distance { a: PathBuf, b: PathBuf },
    /// One optimal sorting scenario from A to B.
    Sort { a: PathBuf, b: PathBuf },
    /// Count or list optimal sorting scenarios.
    Scenarios {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, conflicts_with = "enumerate")]
        count_only: bool,
        #[arg(long)]
        enumerate: bool,
    },
    /// Count or list all genomes on N regions.
    Enumerate {
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// A uniformly random genome on N regions.
    Random { n: usize },
    /// Closed form, adjacency-graph and BFS distances side by side.
    OracleDistance { a: PathBuf, b: PathBuf },
    /// Cycle and path counts of the adjacency graph.
    AgStats {
        a: PathBuf,
        b: PathBuf,
        /// Also list every edge.
        #[arg(long)]
        edges: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
    /// Printed to stdout before the error, e.g. the values that disagreed.
    output: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            output: String::new(),
        }
    }

    fn oracle(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
            output: String::new(),
        }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
            output: String::new(),
        }
    }

    fn guard(message: impl Into<String>) -> Self {
        Failure {
            code: 5,
            message: message.into(),
            output: String::new(),
        }
    }
}

impl From<DcjError> for Failure {
    fn from(e: DcjError) -> Self {
        match e {
            DcjError::SizeMismatch(..) => Failure::mismatch(e.to_string()),
            DcjError::TooLarge { .. } => Failure::guard(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::SizeMismatch(..) => Failure::mismatch(e.to_string()),
            OracleError::TooLarge { .. } => Failure::guard(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<GenomeError> for Failure {
    fn from(e: GenomeError) -> Self {
        match e {
            GenomeError::TooLarge { .. } => Failure::guard(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

fn check_regions(n: usize) -> Result<(), Failure> {
    if n > MAX_REGIONS {
        return Err(Failure::guard(format!(
            "{n} regions exceeds the input cap of {MAX_REGIONS}"
        )));
    }
    Ok(())
}

// A genome file holds chromosome lines (`L ...` / `C ...`), or a single
// cycle-notation line optionally prefixed by `n=N`, as printed by `encode`.
fn load_genome(path: &Path) -> Result<Genome, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    parse_genome_text(&text).map_err(|f| Failure {
        message: format!("{}: {}", path.display(), f.message),
        ..f
    })
}

fn parse_genome_text(text: &str) -> Result<Genome, Failure> {
    let first = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .find(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some((line, l)) if l.starts_with('(') || l.starts_with("n=") => {
            let (regions, cycles) = match l.strip_prefix("n=") {
                Some(rest) => {
                    let (n, cycles) = rest.split_once(char::is_whitespace).unwrap_or((rest, "()"));
                    let n: usize = n.parse().map_err(|_| {
                        Failure::parse(format!("line {line}: bad region count {n:?}"))
                    })?;
                    (Some(n), cycles.trim())
                }
                None => (None, l),
            };
            parse_permutation(cycles, regions).map_err(|f| Failure {
                message: format!("line {line}: {}", f.message),
                ..f
            })
        }
        _ => {
            let spec = GenomeSpec::parse(text).map_err(|e| Failure::parse(e.to_string()))?;
            check_regions(spec.n_regions())?;
            Ok(genome::encode(&spec))
        }
    }
}

fn parse_permutation(text: &str, regions: Option<usize>) -> Result<Genome, Failure> {
    let cycles = dcjperm::perm::parse_cycles(text).map_err(|e| Failure::parse(e.to_string()))?;
    let max_point = cycles
        .iter()
        .flat_map(|c| c.points().iter().copied())
        .max()
        .unwrap_or(0);
    let n = regions.unwrap_or(max_point.div_ceil(2));
    check_regions(n)?;
    let p = Permutation::from_cycles(2 * n, &cycles).map_err(|e| Failure::parse(e.to_string()))?;
    Ok(genome::validate(p)?)
}

fn load_pair(a: &Path, b: &Path) -> Result<(Genome, Genome), Failure> {
    let (ga, gb) = (load_genome(a)?, load_genome(b)?);
    if ga.n() != gb.n() {
        return Err(Failure::mismatch(format!(
            "{} has {} regions but {} has {}",
            a.display(),
            ga.n(),
            b.display(),
            gb.n()
        )));
    }
    Ok((ga, gb))
}

struct OracleValues {
    adjacency: usize,
    bfs: Option<usize>,
}

// Runs the two oracles side by side; BFS only within its guard.
fn run_oracles(a: &Genome, b: &Genome, allow_large: bool) -> Result<OracleValues, Failure> {
    let bfs_allowed = a.n() <= BFS_REGION_LIMIT || allow_large;
    let (adjacency, bfs) = std::thread::scope(|s| {
        let bfs = s.spawn(|| {
            bfs_allowed.then(|| oracle::bfs_distance_with(a, b, allow_large, Execution::default()))
        });
        let adjacency = oracle::adjacency_distance(a, b);
        (adjacency, bfs.join().expect("bfs thread"))
    });
    Ok(OracleValues {
        adjacency: adjacency?,
        bfs: bfs.transpose()?,
    })
}

fn check_agreement(closed: usize, values: &OracleValues) -> Result<(), Failure> {
    let mut disagreements = Vec::new();
    if values.adjacency != closed {
        disagreements.push(format!("adjacency graph gives {}", values.adjacency));
    }
    if let Some(bfs) = values.bfs.filter(|&d| d != closed) {
        disagreements.push(format!("bfs gives {bfs}"));
    }
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(Failure::oracle(format!(
            "closed form gives {closed} but {}",
            disagreements.join(", ")
        )))
    }
}

fn push_oracles(rec: &mut Record, values: &OracleValues) {
    rec.push("oracle.adjacency", values.adjacency);
    match values.bfs {
        Some(d) => rec.push("oracle.bfs", d),
        None => rec.push("oracle.bfs", "skipped"),
    };
}

fn human_oracles(out: &mut String, values: &OracleValues, n: usize) {
    writeln!(out, "adjacency graph {}", values.adjacency).unwrap();
    match values.bfs {
        Some(d) => writeln!(out, "bfs {d}").unwrap(),
        None => writeln!(out, "bfs skipped ({n} regions > {BFS_REGION_LIMIT})").unwrap(),
    }
}

fn scenario_lines(out: &mut String, s: &Scenario) {
    if s.is_empty() {
        out.push_str("0 steps\n");
    }
    for step in s.steps() {
        writeln!(out, "{} -> {}", step.op, step.genome).unwrap();
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    let structured = g.format == Format::Structured;
    let mut out = String::new();
    match cli.command {
        Command::Encode { file } => {
            let genome = load_genome(&file)?;
            if structured {
                let mut rec = Record::new("encode");
                rec.push("n", genome.n()).push("genome", &genome);
                out = rec.to_string();
            } else {
                writeln!(out, "n={} {}", genome.n(), genome).unwrap();
            }
        }
        Command::Decode {
            permutation,
            regions,
        } => {
            let genome = parse_permutation(&permutation, regions)?;
            let spec = genome::decode(&genome);
            if structured {
                let mut rec = Record::new("decode");
                rec.push("n", spec.n_regions())
                    .push("chromosomes.len", spec.chromosomes().len());
                for (k, line) in spec.to_string().lines().enumerate() {
                    rec.push(format!("chromosomes[{k}]"), line);
                }
                out = rec.to_string();
            } else {
                out = spec.to_string();
            }
        }
        Command::Distance { a, b } => {
            let (ga, gb) = load_pair(&a, &b)?;
            let r = dcj::distance(&ga, &gb)?;
            let oracles = if g.oracle {
                Some(run_oracles(&ga, &gb, g.allow_large)?)
            } else {
                None
            };
            if structured {
                let mut rec = report::distance_record(&r);
                if let Some(v) = &oracles {
                    push_oracles(&mut rec, v);
                }
                out = rec.to_string();
            } else {
                writeln!(out, "total {}\nlt {}\nnc {}", r.total, r.lt, r.nc).unwrap();
                for c in r.nontrivial() {
                    writeln!(
                        out,
                        "component {}: min {}, size {}, {}, distance {}",
                        c.id, c.min_point, c.size, c.kind, c.distance
                    )
                    .unwrap();
                }
                let trivial = r.components.len() - r.nontrivial().count();
                writeln!(out, "{trivial} trivial components").unwrap();
                if let Some(v) = &oracles {
                    human_oracles(&mut out, v, ga.n());
                }
            }
            if let Some(v) = &oracles {
                check_agreement(r.total, v).map_err(|f| Failure {
                    output: out.clone(),
                    ..f
                })?;
            }
        }
        Command::Sort { a, b } => {
            let (ga, gb) = load_pair(&a, &b)?;
            let s = dcj::optimal_scenario(&ga, &gb)?;
            if g.oracle {
                let values = run_oracles(&ga, &gb, g.allow_large)?;
                check_agreement(s.len(), &values)?;
            }
            if structured {
                out = report::scenario_record(&s).to_string();
            } else {
                scenario_lines(&mut out, &s);
            }
        }
        Command::Scenarios {
            a,
            b,
            count_only: _,
            enumerate,
        } => {
            let (ga, gb) = load_pair(&a, &b)?;
            if enumerate {
                let e = dcj::enumerate_scenarios(&ga, &gb, g.limit, g.allow_large)?;
                if structured {
                    let mut rec = Record::new("scenarios");
                    rec.push("scenarios.len", e.scenarios.len())
                        .push("truncated", e.truncated);
                    for (k, s) in e.scenarios.iter().enumerate() {
                        for (key, value) in report::scenario_record(s).entries().iter().skip(2) {
                            rec.push(format!("scenarios[{k}].{key}"), value);
                        }
                    }
                    out = rec.to_string();
                } else {
                    for (k, s) in e.scenarios.iter().enumerate() {
                        writeln!(out, "scenario {}", k + 1).unwrap();
                        scenario_lines(&mut out, s);
                    }
                    if e.truncated {
                        writeln!(out, "truncated after {} scenarios", e.scenarios.len()).unwrap();
                    }
                }
            } else {
                let d = dcj::dcj_distance(&ga, &gb)?;
                let (count, method) = match dcj::count_optimal_scenarios(&ga, &gb) {
                    Ok(c) if d == 0 => (c, "trivial"),
                    Ok(c) => (c, "closed form"),
                    Err(DcjError::NoClosedForm(_)) => (
                        dcj::count_scenarios_exhaustive(
                            &ga,
                            &gb,
                            g.allow_large,
                            Execution::default(),
                        )?,
                        "exhaustive",
                    ),
                    Err(e) => return Err(e.into()),
                };
                if structured {
                    let mut rec = Record::new("scenario_count");
                    rec.push("distance", d)
                        .push("count", &count)
                        .push("method", method.replace(' ', "_"));
                    out = rec.to_string();
                } else if method == "trivial" {
                    writeln!(out, "{count}").unwrap();
                } else {
                    writeln!(out, "{count} ({method})").unwrap();
                }
            }
        }
        Command::Enumerate { n, count_only } => {
            if count_only {
                let count = genome::count_genomes(n);
                if structured {
                    let mut rec = Record::new("genome_count");
                    rec.push("n", n).push("count", count);
                    out = rec.to_string();
                } else {
                    writeln!(out, "{count}").unwrap();
                }
            } else {
                let all = genome::enumerate_genomes(n, g.allow_large)?;
                if structured {
                    let all: Vec<Genome> = all.collect();
                    let mut rec = Record::new("genomes");
                    rec.push("n", n).push("genomes.len", all.len());
                    for (k, x) in all.iter().enumerate() {
                        rec.push(format!("genomes[{k}]"), x);
                    }
                    out = rec.to_string();
                } else {
                    for x in all {
                        writeln!(out, "{x}").unwrap();
                    }
                }
            }
        }
        Command::Random { n } => {
            check_regions(n)?;
            let x = genome::random_genome(n, g.seed);
            if structured {
                let mut rec = Record::new("random");
                rec.push("n", n).push("seed", g.seed).push("genome", &x);
                out = rec.to_string();
            } else {
                out = genome::decode(&x).to_string();
            }
        }
        Command::OracleDistance { a, b } => {
            let (ga, gb) = load_pair(&a, &b)?;
            let closed = dcj::dcj_distance(&ga, &gb)?;
            let values = run_oracles(&ga, &gb, g.allow_large)?;
            if structured {
                let mut rec = Record::new("oracle_distance");
                rec.push("closed_form", closed);
                push_oracles(&mut rec, &values);
                out = rec.to_string();
            } else {
                writeln!(out, "closed form {closed}").unwrap();
                human_oracles(&mut out, &values, ga.n());
            }
            check_agreement(closed, &values).map_err(|f| Failure {
                output: out.clone(),
                ..f
            })?;
        }
        Command::AgStats { a, b, edges } => {
            let (ga, gb) = load_pair(&a, &b)?;
            let ag = oracle::adjacency_graph(&ga, &gb)?;
            let stats = ag.stats();
            let d = stats.distance(ag.n);
            if structured {
                let mut rec = Record::new("ag_stats");
                rec.push("n", ag.n)
                    .push("cycles", stats.cycles)
                    .push("odd_paths", stats.odd_paths)
                    .push("even_paths", stats.even_paths)
                    .push("distance", d);
                out = rec.to_string();
            } else {
                writeln!(
                    out,
                    "cycles {}\nodd_paths {}\neven_paths {}\ndistance {d}",
                    stats.cycles, stats.odd_paths, stats.even_paths
                )
                .unwrap();
                if edges {
                    out.push_str(&ag.to_string());
                }
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", f.output);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
