//! `gfe`: command-line front end for gfe-core with stable JSON output.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gfe_core::verify::Level;
use num_bigint::BigInt;
use serde_json::json;

use commands::{Failure, Status};

#[derive(Parser)]
#[command(name = "gfe", version, about = "Local computations for x^2 + y^3 = z^p")]
struct Cli {
    /// Print the result as JSON (sorted keys) instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// 2-adic and 3-adic classification of the Frey curve of (a, b).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        a: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        b: BigInt,
    },
    /// Primitive solutions of a^2 + b^3 = c^p with max(|a|, |b|) <= bound.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        bound: u64,
    },
    /// Check the listed identities a^2 + b^3 = c^n exactly.
    VerifyKnown,
    /// Twists of X(p) left after the local criteria.
    Twistplan {
        #[arg(long)]
        p: u64,
        /// Show the plan derived from the rules, with provenance.
        #[arg(long)]
        derived: bool,
    },
    /// Normalizer data of the quaternion or dicyclic subgroup of GL2(F_p).
    Glgroup {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "h8")]
        group: String,
    },
    /// Symplectic type of the Tate-module intertwiner for v(q_i) = e_i.
    TateModule {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        e1: i64,
        #[arg(long, allow_negative_numbers = true)]
        e2: i64,
    },
    /// The modular curve X0(11).
    X011 {
        #[command(subcommand)]
        action: X011Action,
    },
    /// Small points on the twists of the non-split Cartan curve at 11.
    XnsSearch {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, default_value_t = 1000)]
        height: u64,
    },
    /// Whether y^2 = f(x) has a Q_ell-point.
    Localsolve {
        /// Ascending integer coefficients, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
        /// One of the eight level-13 twist sextics instead of --coeffs.
        #[arg(long)]
        twist_row: Option<usize>,
        #[arg(long)]
        ell: u64,
        /// Cross-check with the finite-modulus scan.
        #[arg(long)]
        oracle: bool,
    },
    /// j-invariant at a point of X0(13) (`inf` for the cusp).
    #[command(name = "x013-j")]
    X013J {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Run every acceptance check and report one line per criterion.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
}

#[derive(Subcommand)]
enum X011Action {
    /// Rational points, their j-invariants and the built-in identities.
    Points,
    /// Whether F(x, j) = 0 (`inf` allowed for either coordinate).
    Fj {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
    },
    /// 2-adic elliptic logarithm of the kernel point with parameter t = -x/y.
    Log {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// 2-adic digits; defaults to GFE_PRECISION or 64.
        #[arg(long)]
        prec: Option<u32>,
    },
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Search { .. } => "search",
        Command::VerifyKnown => "verify-known",
        Command::Twistplan { .. } => "twistplan",
        Command::Glgroup { .. } => "glgroup",
        Command::TateModule { .. } => "tate-module",
        Command::X011 { .. } => "x011",
        Command::XnsSearch { .. } => "xns-search",
        Command::Localsolve { .. } => "localsolve",
        Command::X013J { .. } => "x013-j",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn run(c: &Command) -> commands::Res {
    match c {
        Command::Classify { a, b } => commands::classify_cmd(a, b),
        Command::Search { p, bound } => commands::search_cmd(*p, *bound),
        Command::VerifyKnown => commands::verify_known_cmd(),
        Command::Twistplan { p, derived } => commands::twistplan_cmd(*p, *derived),
        Command::Glgroup { p, group } => commands::glgroup_cmd(*p, group),
        Command::TateModule { ell, p, e1, e2 } => commands::tate_module_cmd(*ell, *p, *e1, *e2),
        Command::X011 { action } => match action {
            X011Action::Points => commands::x011_points_cmd(),
            X011Action::Fj { x, j } => commands::x011_fj_cmd(x, j),
            X011Action::Log { t, prec } => commands::x011_log_cmd(t, *prec),
        },
        Command::XnsSearch { d, height } => commands::xns_cmd(*d, *height),
        Command::Localsolve { coeffs, twist_row, ell, oracle } => {
            commands::localsolve_cmd(coeffs.as_deref(), *twist_row, *ell, *oracle)
        }
        Command::X013J { v } => commands::x013_cmd(v),
        Command::VerifyPaper { level } => commands::verify_paper_cmd(match level {
            LevelArg::Fast => Level::Fast,
            LevelArg::Full => Level::Full,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: --threads must be a positive integer");
            return ExitCode::from(2);
        }
    }
    let command = name(&cli.command);
    let (status, payload, citations, code) = match run(&cli.command) {
        Ok(o) => {
            let (s, code) = match o.status {
                Status::Ok => ("Ok", 0),
                Status::Violation => ("Violation", 1),
            };
            (s, o.payload, o.citations, code)
        }
        Err(Failure::Usage(u)) => {
            eprintln!("error: {}", u.0);
            return ExitCode::from(2);
        }
        Err(Failure::Compute(e)) => ("Error", json!({ "error": e.to_string() }), Vec::new(), 1),
    };
    let result = json!({ "command": command, "status": status, "payload": payload, "citations": citations });
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&result).expect("JSON values serialize"));
    } else {
        let mut lines = Vec::new();
        render::human(&result, "", &mut lines);
        for l in lines {
            println!("{l}");
        }
    }
    ExitCode::from(code)
}
