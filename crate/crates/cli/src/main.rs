use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use repdeg::equalizer::{extract_with, ExtractError, ExtractOptions, Extraction};
use repdeg::graph::{gen_random, gen_star_union, read_edge_list, write_edge_list};
use repdeg::oracle::{exact_near_max_limited, OracleResult, DEFAULT_MAX_VERTICES};
use repdeg::{DeletionCertificate, Graph};

/// Deletes few vertices so that k of the rest share a near-maximum degree.
#[derive(Debug, Parser)]
#[command(name = "repdeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the extraction pipeline on an edge-list file.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Directory receiving `graph.txt` and `certificate.json`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Initial sub-cover cap used while trimming.
        #[arg(long, default_value_t = 1)]
        cap: u64,
    },
    /// Write a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        spec: GenSpec,
        /// Output file; standard output when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate against its input graph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Exact minimum number of deletions, by exhaustive search.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Allowed distance of the common degree below the maximum.
        #[arg(long, default_value_t = 0)]
        slack: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Run the pipeline over a seeded G(n, p) ensemble and write a CSV.
    Bench {
        /// `n,p,count`
        #[arg(long)]
        ensemble: Ensemble,
        #[arg(long)]
        k: usize,
        /// Instance `i` uses seed `seed + i`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        cap: u64,
        /// CSV file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenSpec {
    /// Disjoint union of stars of sizes i·√Δ for 1 <= i <= √Δ, k/2 copies.
    StarUnion { k: usize, delta: usize },
    /// G(n, p) with a seeded ChaCha generator.
    Gnp { n: usize, p: f64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
struct Ensemble {
    n: usize,
    p: f64,
    count: usize,
}

impl FromStr for Ensemble {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [n, p, count] = parts.as_slice() else {
            return Err(format!("expected n,p,count, got {s:?}"));
        };
        Ok(Ensemble {
            n: n.parse().map_err(|_| format!("invalid n {n:?}"))?,
            p: p.parse().map_err(|_| format!("invalid p {p:?}"))?,
            count: count.parse().map_err(|_| format!("invalid count {count:?}"))?,
        })
    }
}

/// Exit status of a command that did not fail outright.
enum Outcome {
    Ok,
    Vacuous,
    Rejected,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Rejected) => ExitCode::from(1),
        Ok(Outcome::Vacuous) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Extract { input, k, out, cap } => cmd_extract(&input, k, out.as_deref(), cap),
        Command::Gen { spec, out } => cmd_gen(spec, out.as_deref()),
        Command::Verify { input, certificate } => cmd_verify(&input, &certificate),
        Command::Oracle { input, k, slack, max_vertices } => cmd_oracle(&input, k, slack, max_vertices),
        Command::Bench { ensemble, k, seed, cap, out } => cmd_bench(ensemble, k, seed, cap, out.as_deref()),
    }
}

fn load(path: &Path) -> Result<Graph> {
    read_edge_list(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn summary(e: &Extraction) -> String {
    let cert = &e.certificate;
    format!("deleted={} sqrtDelta={} ratio={:.4} g2_obs={}", cert.total_deleted, e.sqrt_delta, e.c_obs, cert.g2_obs)
}

fn cmd_extract(input: &Path, k: usize, out: Option<&Path>, cap: u64) -> Result<Outcome> {
    if k < 2 {
        bail!("--k must be at least 2");
    }
    let g = load(input)?;
    let extraction = match extract_with(&g, k, ExtractOptions { cover_cap: cap }) {
        Ok(e) => e,
        Err(e) if e.is_vacuous() => {
            eprintln!("{e}");
            return Ok(Outcome::Vacuous);
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        emit(Some(&dir.join("graph.txt")), &write_edge_list(&extraction.graph))?;
        emit(Some(&dir.join("certificate.json")), &(extraction.certificate.to_json() + "\n"))?;
    }
    println!("{}", summary(&extraction));
    Ok(Outcome::Ok)
}

fn cmd_gen(spec: GenSpec, out: Option<&Path>) -> Result<Outcome> {
    let g = match spec {
        GenSpec::StarUnion { k, delta } => gen_star_union(k, delta)?,
        GenSpec::Gnp { n, p, seed } => gen_random(n, p, seed)?,
    };
    emit(out, &write_edge_list(&g))?;
    Ok(Outcome::Ok)
}

fn cmd_verify(input: &Path, certificate: &Path) -> Result<Outcome> {
    let g = load(input)?;
    let text = fs::read_to_string(certificate).with_context(|| format!("reading {}", certificate.display()))?;
    let cert = DeletionCertificate::from_json(&text)?;
    let issues = cert.audit(&g)?;
    if issues.is_empty() {
        println!("ok");
        return Ok(Outcome::Ok);
    }
    for issue in issues {
        eprintln!("{issue}");
    }
    Ok(Outcome::Rejected)
}

fn cmd_oracle(input: &Path, k: usize, slack: usize, max_vertices: usize) -> Result<Outcome> {
    let g = load(input)?;
    match exact_near_max_limited(&g, k, slack, max_vertices)? {
        OracleResult::Feasible(w) => println!("{}", w.deleted.len()),
        OracleResult::Infeasible => println!("infeasible"),
    }
    Ok(Outcome::Ok)
}

fn cmd_bench(ensemble: Ensemble, k: usize, seed: u64, cap: u64, out: Option<&Path>) -> Result<Outcome> {
    if k < 2 {
        bail!("--k must be at least 2");
    }
    let Ensemble { n, p, count } = ensemble;
    let rows: Vec<Result<BenchRow>> = (0..count as u64)
        .into_par_iter()
        .map(|i| -> Result<BenchRow> {
            let g = gen_random(n, p, seed.wrapping_add(i))?;
            let delta = g.max_degree();
            match extract_with(&g, k, ExtractOptions { cover_cap: cap }) {
                Ok(e) => Ok(BenchRow {
                    n,
                    delta,
                    k,
                    deleted: Some(e.certificate.total_deleted),
                    sqrt_delta: e.sqrt_delta,
                    ratio: Some(format!("{:.4}", e.c_obs)),
                    g2_obs: Some(e.certificate.g2_obs),
                }),
                Err(ExtractError::TrivialInstance { .. } | ExtractError::NotFound { .. }) => Ok(BenchRow {
                    n,
                    delta,
                    k,
                    deleted: None,
                    sqrt_delta: repdeg::graph::ceil_sqrt(delta),
                    ratio: None,
                    g2_obs: None,
                }),
                Err(e) => Err(e.into()),
            }
        })
        .collect();

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["n", "delta", "k", "deleted", "sqrt_delta", "ratio", "g2_obs"])?;
    for row in rows {
        let row = row?;
        let opt = |v: Option<String>| v.unwrap_or_default();
        writer.write_record([
            row.n.to_string(),
            row.delta.to_string(),
            row.k.to_string(),
            opt(row.deleted.map(|d| d.to_string())),
            row.sqrt_delta.to_string(),
            opt(row.ratio),
            opt(row.g2_obs.map(|g| g.to_string())),
        ])?;
    }
    let bytes = writer.into_inner().context("flushing CSV")?;
    emit(out, &String::from_utf8(bytes)?)?;
    Ok(Outcome::Ok)
}

struct BenchRow {
    n: usize,
    delta: usize,
    k: usize,
    deleted: Option<usize>,
    sqrt_delta: usize,
    ratio: Option<String>,
    g2_obs: Option<usize>,
}
