//! Command-line surface. One command per process, JSON on stdout,
//! diagnostics on stderr, exit codes by error class: 0 success, 2 parse,
//! 3 unsupported input, 4 inconclusive (always for hard Inconclusive
//! errors, and for any non-exact reported value under --strict).

use crate::endo::mueller_check;
use crate::error::{Error, Result};
use crate::homology::{ext_dim, nodes_and_rho, profile, rigidity_degree, Dim, ProjResolution};
use crate::io::{parse_algebra_file, parse_module_file, write_modules, LoadedAlgebra};
use crate::rep::Rep;
use crate::rigidity::{
    enumerate_indecomposables, max_orthogonal_on_list, rigidity_dimension, IndecList,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "rigidim",
    version,
    about = "Exact homological invariants of finite-dimensional quiver algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// resolution cutoff; overrides the algebra file's [options]
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// seed for randomized isomorphism certificates
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// exit 4 if any reported value is a bound rather than exact
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Global, dominant and injective dimensions; nodes when self-injective
    Invariants { algebra: PathBuf },
    /// Rigidity dimension report
    Cf {
        algebra: PathBuf,
        /// catalog of indecomposables to search over (written by `indecs`)
        #[arg(long)]
        indecs: Option<PathBuf>,
    },
    /// Rigidity degree of a module: largest n with Ext^{1..n}(M,M) = 0
    Evd {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// dim Ext^degree(from, to)
    Ext {
        algebra: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Rigidity degree + 2 against the dominant dimension of End(module)
    Mueller {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Is the module maximal n-orthogonal against the catalog?
    Maxortho {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        n: usize,
        /// catalog file; defaults to automatic enumeration
        #[arg(long)]
        indecs: Option<PathBuf>,
    },
    /// Enumerate indecomposables into a catalog file
    Indecs {
        algebra: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

pub fn cli_main() -> i32 {
    let cli = Cli::parse();
    let strict = cli.strict;
    match run(cli) {
        Ok(json) => {
            println!("{json}");
            if strict && has_inexact(&serde_json::from_str(&json).expect("own output")) {
                eprintln!("inexact value under --strict");
                4
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    let algebra_path = match &cli.command {
        Command::Invariants { algebra }
        | Command::Cf { algebra, .. }
        | Command::Evd { algebra, .. }
        | Command::Ext { algebra, .. }
        | Command::Mueller { algebra, .. }
        | Command::Maxortho { algebra, .. }
        | Command::Indecs { algebra, .. } => algebra.clone(),
    };
    let LoadedAlgebra { algebra: alg, options } = parse_algebra_file(&algebra_path)?;
    let cutoff = cli.cutoff.or(options.cutoff).unwrap_or(30);
    let seed = cli.seed.or(options.seed).unwrap_or(0);

    let value = match cli.command {
        Command::Invariants { .. } => {
            let p = profile(&alg, cutoff, seed);
            let nodes = if p.selfinjective { Some(nodes_and_rho(&alg)?) } else { None };
            #[derive(Serialize)]
            struct Out {
                gldim: Dim,
                domdim: Dim,
                idim_left: Dim,
                idim_right: Dim,
                selfinjective: bool,
                nakayama: bool,
                semisimple: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                nodes: Option<Vec<String>>,
                #[serde(skip_serializing_if = "Option::is_none")]
                rho: Option<Option<usize>>,
            }
            serde_json::to_value(Out {
                gldim: p.gldim,
                domdim: p.domdim,
                idim_left: p.idim_left,
                idim_right: p.idim_right,
                selfinjective: p.selfinjective,
                nakayama: p.nakayama,
                semisimple: p.semisimple,
                rho: nodes.as_ref().map(|n| n.rho),
                nodes: nodes.map(|n| n.nodes),
            })
        }
        Command::Cf { indecs, .. } => {
            let list = indecs.map(|p| load_catalog(&alg, &p)).transpose()?;
            let report = rigidity_dimension(&alg, list.as_ref(), cutoff, seed)?;
            serde_json::to_value(report)
        }
        Command::Evd { module, .. } => {
            let m = parse_module_file(&alg, &module)?.direct_sum(&alg);
            if m.is_zero() {
                return Err(Error::Parse("module is zero".into()));
            }
            #[derive(Serialize)]
            struct Out {
                total_dim: usize,
                evd: Dim,
            }
            serde_json::to_value(Out {
                total_dim: m.total_dim(),
                evd: rigidity_degree(&m, cutoff, seed),
            })
        }
        Command::Ext { from, to, degree, .. } => {
            let m = parse_module_file(&alg, &from)?.direct_sum(&alg);
            let n = parse_module_file(&alg, &to)?.direct_sum(&alg);
            if m.is_zero() {
                return Err(Error::Parse("source module is zero".into()));
            }
            let mut res = ProjResolution::new(m, seed);
            #[derive(Serialize)]
            struct Out {
                degree: usize,
                ext_dim: usize,
            }
            serde_json::to_value(Out { degree, ext_dim: ext_dim(&mut res, &n, degree) })
        }
        Command::Mueller { module, .. } => {
            let loaded = parse_module_file(&alg, &module)?;
            serde_json::to_value(mueller_check(&loaded.summands, cutoff, seed)?)
        }
        Command::Maxortho { module, n, indecs, .. } => {
            let loaded = parse_module_file(&alg, &module)?;
            let list = match indecs {
                Some(p) => load_catalog(&alg, &p)?,
                None => enumerate_indecomposables(&alg),
            };
            serde_json::to_value(max_orthogonal_on_list(&loaded.summands, n, &list, seed)?)
        }
        Command::Indecs { output, .. } => {
            let list = enumerate_indecomposables(&alg);
            let labelled: Vec<(String, &Rep)> = list
                .labels
                .iter()
                .cloned()
                .zip(list.reps.iter())
                .collect();
            std::fs::write(&output, write_modules(&labelled, list.complete))?;
            #[derive(Serialize)]
            struct Out {
                count: usize,
                complete: bool,
                labels: Vec<String>,
            }
            serde_json::to_value(Out {
                count: list.reps.len(),
                complete: list.complete,
                labels: list.labels,
            })
        }
    };
    Ok(value.expect("reports serialize").to_string())
}

fn load_catalog(alg: &std::sync::Arc<crate::algebra::Algebra>, path: &PathBuf) -> Result<IndecList> {
    let loaded = parse_module_file(alg, path)?;
    Ok(IndecList { labels: loaded.labels, reps: loaded.summands, complete: loaded.complete })
}

/// Any {"status": "at_least"} or {"completeness": "lower_bound_only"}
/// anywhere in the report means the run did not fully resolve.
fn has_inexact(v: &Value) -> bool {
    match v {
        Value::Object(map) => map.iter().any(|(k, val)| {
            (k == "status" && val == "at_least")
                || (k == "completeness" && val == "lower_bound_only")
                || has_inexact(val)
        }),
        Value::Array(items) => items.iter().any(has_inexact),
        _ => false,
    }
}
