mod commands;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "cocyclic", version, about = "Exact group cocycles, Nichols algebras and braided doubles")]
struct Cli {
    /// Print a JSON report with a run manifest instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Schur multiplier / H²(G, C_p) as elementary divisors.
    Schur {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// Check a cocycle given by class or read from a JSON file.
    Cocycle {
        #[arg(long)]
        group: Option<String>,
        /// One of 11, z1, 1z, zz.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        show_table: bool,
    },
    /// The spin cocycle of S_n and its cover invariants.
    SpinCocycle {
        #[arg(long)]
        n: usize,
    },
    /// Twist a group algebra by a cocycle (or build a Clifford algebra).
    TwistAlgebra {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        clifford: Option<usize>,
        /// Include the structure constants in the JSON report.
        #[arg(long)]
        dump: bool,
    },
    /// YD axioms, braid equation and dual pairing of a module.
    YdCheck {
        #[arg(long)]
        module: String,
    },
    /// Hilbert series prefix of a truncated Nichols algebra.
    NicholsHilbert {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Bound on n!·r^n for each symmetrizer.
        #[arg(long, default_value_t = commands::default_budget())]
        budget: usize,
        #[serde(skip)]
        #[arg(long, env = "COCYCLIC_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
    /// Quadratic relations of B(RX_n, q_z) against ker [2]!.
    Relations {
        #[arg(long)]
        n: usize,
    },
    /// Commutation of Dunkl elements in degree 2.
    Dunkl {
        /// theta, alpha or theta-tilde.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Heisenberg, Weyl, covariance and shift checks on the Fock module.
    HeisenbergCheck {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// (Covering) rational Cherednik relations on the Fock module of (X_n, q1).
    CherednikCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        c: String,
        #[arg(long, default_value = "0")]
        t: String,
        /// 11 (trivial) or 1z (spin).
        #[arg(long, default_value = "1z")]
        cocycle: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
}

impl Command {
    fn name(&self) -> String {
        let v = serde_json::to_value(self).unwrap_or(Value::Null);
        match v {
            Value::Object(m) => m.keys().next().cloned().unwrap_or_default(),
            Value::String(s) => s,
            _ => String::new(),
        }
    }

    fn parameters(&self) -> Value {
        match serde_json::to_value(self).unwrap_or(Value::Null) {
            Value::Object(m) => m.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
            _ => Value::Null,
        }
    }

    fn run(&self) -> Result<Outcome, String> {
        match self {
            Command::Schur { group, p } => commands::schur(group, *p),
            Command::Cocycle { group, class, input, show_table } => {
                commands::cocycle(group.as_deref(), class.as_deref(), input.as_ref(), *show_table)
            }
            Command::SpinCocycle { n } => commands::spin(*n),
            Command::TwistAlgebra { group, class, clifford, dump } => {
                commands::twist_algebra(group.as_deref(), class.as_deref(), *clifford, *dump)
            }
            Command::YdCheck { module } => commands::yd_check(module),
            Command::NicholsHilbert { module, max_degree, budget, cache_dir } => {
                commands::nichols_hilbert(module, *max_degree, *budget, cache_dir.as_ref())
            }
            Command::Relations { n } => commands::relations(*n),
            Command::Dunkl { family, n } => commands::dunkl(family, *n),
            Command::HeisenbergCheck { module, max_degree } => commands::heisenberg(module, *max_degree),
            Command::CherednikCheck { n, c, t, cocycle, max_degree } => commands::cherednik(*n, c, t, cocycle, *max_degree),
        }
    }
}

/// What was run and a digest of what came out.
#[derive(Serialize)]
struct RunManifest {
    command: String,
    parameters: Value,
    version: &'static str,
    cache_hits: usize,
    wall_time_ms: u128,
    result_digest: String,
}

fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(v.to_string().as_bytes()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.command.run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        let manifest = RunManifest {
            command: cli.command.name(),
            parameters: cli.command.parameters(),
            version: env!("CARGO_PKG_VERSION"),
            cache_hits: outcome.cache_hits,
            wall_time_ms: start.elapsed().as_millis(),
            result_digest: digest(&outcome.result),
        };
        let report = json!({"manifest": manifest, "passed": outcome.passed, "result": outcome.result});
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    } else {
        println!("{}", outcome.text);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
