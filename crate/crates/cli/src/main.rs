use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qindex::certificate::{tally, Certificate, Status, Tolerances};
use qindex::enumerate::{
    default_max_n, enumerate_cached, enumerate_graphs, search_over, Filter, MAX_M,
};
use qindex::graph6::encode_graph6;
use qindex::suites::{run_suite, Suite, SuiteParams};
use qindex::{build_family, q_index, Error, FamilyId};

/// Largest `k` accepted by `verify`.
const MAX_K: i64 = 1000;

#[derive(Parser)]
#[command(
    name = "qindex",
    version,
    about = "Signless Laplacian spectral radius verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance and print its graph6 code.
    Family {
        /// Family name, e.g. "K1v(kP2+P1)" or "L2".
        id: String,
        #[arg(long)]
        k: i64,
        /// Print the Q-index to 12 digits.
        #[arg(long)]
        q: bool,
        /// Print only the graph6 line (the default output).
        #[arg(long)]
        graph6: bool,
        /// Print a DOT rendering.
        #[arg(long)]
        dot: bool,
    },
    /// Run a verification suite and write a certificate array.
    Verify {
        /// lemmas, polynomials, theorem12, delta-bound or all.
        suite: String,
        #[arg(long, default_value_t = 3)]
        k_min: i64,
        #[arg(long, default_value_t = 40)]
        k_max: i64,
        #[arg(long, default_value_t = 9)]
        m_max: usize,
        /// Vertex bound for enumerations (default min(m+1, 12)).
        #[arg(long)]
        max_n: Option<usize>,
        /// Output file; certificates go to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        seed: u64,
        #[arg(long)]
        tol_root: Option<f64>,
        #[arg(long)]
        tol_gap: Option<f64>,
        #[arg(long)]
        tol_residual: Option<f64>,
        #[arg(long)]
        tol_cross: Option<f64>,
    },
    /// Exhaustive Q-index maximization over graphs with m edges.
    Search {
        m: usize,
        #[arg(long, default_value = "two-leaves-free")]
        filter: String,
        #[arg(long)]
        max_n: Option<usize>,
        /// Write the search result as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for the JSON-lines enumeration cache.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn write_out(path: &Path, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|source| {
        Failure::Run(Error::Io {
            path: path.display().to_string(),
            source,
        })
    })
}

fn family(id: &str, k: i64, q: bool, dot: bool) -> Result<bool, Failure> {
    let id: FamilyId = id.parse().map_err(|e: qindex::FamilyError| usage(e))?;
    let inst = build_family(id, k).map_err(Error::from)?;
    println!(
        "graph6 {}",
        encode_graph6(&inst.graph).map_err(Error::from)?
    );
    if q {
        let r = q_index(&inst.graph, qindex::spectral::DEFAULT_TOL).map_err(Error::from)?;
        println!("q {:.12}", r.q);
    }
    if dot {
        print!("{}", inst.graph.to_dot());
    }
    Ok(true)
}

fn verify(suite: &str, params: SuiteParams, out: Option<&Path>) -> Result<bool, Failure> {
    let suite: Suite = suite.parse().map_err(usage)?;
    if params.k_min < 1 || params.k_min > params.k_max || params.k_max > MAX_K {
        return Err(usage(format!(
            "k range {}..{} must satisfy 1 <= k-min <= k-max <= {MAX_K}",
            params.k_min, params.k_max
        )));
    }
    if params.m_max > MAX_M {
        return Err(usage(format!(
            "m-max {} exceeds the cap {MAX_M}",
            params.m_max
        )));
    }
    let certs: Vec<Certificate> = run_suite(suite, &params)?;
    let body = serde_json::to_string_pretty(&certs).map_err(Error::from)?;
    match out {
        Some(path) => {
            write_out(path, &(body + "\n"))?;
            for c in &certs {
                println!("{:<9} {}", status_word(c.status), c.claim_id);
            }
        }
        None => println!("{body}"),
    }
    let (pass, fail, reported) = tally(&certs);
    eprintln!("{suite}: {pass} pass, {fail} fail, {reported} reported");
    Ok(fail == 0)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Reported => "REPORTED",
    }
}

fn search(
    m: usize,
    filter: &str,
    max_n: Option<usize>,
    out: Option<&Path>,
    cache: Option<&Path>,
) -> Result<bool, Failure> {
    let filter: Filter = filter.parse().map_err(usage)?;
    let max_n = max_n.unwrap_or_else(|| default_max_n(m));
    let graphs = match cache {
        Some(dir) => enumerate_cached(m, max_n, filter, dir)?,
        None => enumerate_graphs(m, max_n, filter).map_err(Error::from)?,
    };
    let res = search_over(m, max_n, filter, &graphs).map_err(Error::from)?;
    for g6 in &res.argmax {
        println!("argmax {g6}");
    }
    println!("max_q {:.12}", res.max_q);
    if let Some(path) = out {
        let body = serde_json::to_string_pretty(&res).map_err(Error::from)?;
        write_out(path, &(body + "\n"))?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Family {
            id,
            k,
            q,
            graph6: _,
            dot,
        } => family(&id, k, q, dot),
        Command::Verify {
            suite,
            k_min,
            k_max,
            m_max,
            max_n,
            out,
            seed,
            tol_root,
            tol_gap,
            tol_residual,
            tol_cross,
        } => {
            let d = Tolerances::default();
            let tol = Tolerances {
                root: tol_root.unwrap_or(d.root),
                gap: tol_gap.unwrap_or(d.gap),
                residual: tol_residual.unwrap_or(d.residual),
                cross: tol_cross.unwrap_or(d.cross),
            };
            let params = SuiteParams {
                k_min,
                k_max,
                m_max,
                max_n,
                tol,
                seed,
            };
            verify(&suite, params, out.as_deref())
        }
        Command::Search {
            m,
            filter,
            max_n,
            out,
            cache_dir,
        } => search(m, &filter, max_n, out.as_deref(), cache_dir.as_deref()),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 3 })
        }
    }
}
