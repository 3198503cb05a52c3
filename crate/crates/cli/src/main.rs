mod output;
mod pattern;

use clap::{Parser, Subcommand};
use knotkit::families::{FamilyDescriptor, Templates};
use knotkit::verify;
use knotkit::PlanarDiagram;
use output::{row_json, verify_json, Invariants};
use rayon::prelude::*;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "knotkit", version, about = "Exact knot invariants and annulus-twist families")]
struct Cli {
    /// Worker threads for sweeps and suites.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory holding j_left.band, j_right.band, k.band and r.band.
    #[arg(long, global = true)]
    templates: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of a PD code, a braid `BR(n; ...)` or a family member such as `K[1,0]`.
    Inv {
        input: String,
        /// Also report H_1 of the N-fold cyclic branched cover (repeatable).
        #[arg(long = "branched", value_name = "N")]
        branched: Vec<u64>,
    },
    /// One row per parameter tuple, e.g. `family K n=1..2 m=0..1`.
    Family {
        pattern: String,
        /// Parameter ranges `name=a..b` or `name=a`.
        ranges: Vec<String>,
        #[arg(long = "branched", value_name = "N")]
        branched: Vec<u64>,
    },
    /// Runs a verification suite, or `all`.
    Verify { suite: String },
}

const USAGE: u8 = 2;
const COMPUTE: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

enum Input {
    Diagram(PlanarDiagram),
    Family(FamilyDescriptor),
}

fn parse_input(s: &str) -> Result<Input, String> {
    let t = s.trim();
    if t == "U" || t.starts_with('X') || t.starts_with("BR(") || t.starts_with("PD[") {
        return t.parse().map(Input::Diagram).map_err(|e: knotkit::DiagramError| e.to_string());
    }
    t.parse().map(Input::Family).map_err(|e: knotkit::families::FamilyError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            return fail(USAGE, e);
        }
    }
    let owned;
    let templates: &Templates = match &cli.templates {
        Some(dir) => match Templates::load_dir(dir) {
            Ok(t) => {
                owned = t;
                &owned
            }
            Err(e) => return fail(USAGE, format!("{}: {e}", dir.display())),
        },
        None => Templates::builtin(),
    };
    match &cli.command {
        Command::Inv { input, branched } => inv(input, branched, templates, cli.json),
        Command::Family { pattern, ranges, branched } => family(pattern, ranges, branched, templates, cli.json),
        Command::Verify { suite } => run_verify(suite, templates, cli.json),
    }
}

fn check_covers(covers: &[u64]) -> Result<(), String> {
    match covers.iter().find(|&&n| n < 2) {
        Some(n) => Err(format!("--branched {n}: the cover degree must be at least 2")),
        None => Ok(()),
    }
}

fn inv(input: &str, covers: &[u64], t: &Templates, json: bool) -> ExitCode {
    if let Err(e) = check_covers(covers) {
        return fail(USAGE, e);
    }
    let (diagram, descriptor) = match parse_input(input) {
        Ok(Input::Diagram(d)) => (d, None),
        Ok(Input::Family(f)) => match f.diagram(t) {
            Ok(d) => (d, Some(f)),
            Err(e) => return fail(COMPUTE, e),
        },
        Err(e) => return fail(USAGE, e),
    };
    match Invariants::compute(&diagram, covers, descriptor.as_ref()) {
        Ok(inv) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&inv.to_json(input.trim())).expect("json"));
            } else {
                print!("{}", inv.to_text(input.trim()));
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(COMPUTE, e),
    }
}

fn family(pat: &str, ranges: &[String], covers: &[u64], t: &Templates, json: bool) -> ExitCode {
    if let Err(e) = check_covers(covers) {
        return fail(USAGE, e);
    }
    let rows = match pattern::expand(pat, ranges) {
        Ok(r) => r,
        Err(e) => return fail(USAGE, e),
    };
    let results: Vec<Result<Invariants, String>> = rows
        .par_iter()
        .map(|r| {
            let d = r.descriptor.diagram(t).map_err(|e| e.to_string())?;
            Invariants::compute(&d, covers, Some(&r.descriptor)).map_err(|e| e.to_string())
        })
        .collect();
    let mut failed = false;
    if json {
        let rows: Vec<serde_json::Value> = rows.iter().zip(&results).map(|(r, res)| row_json(r, res)).collect();
        let doc = serde_json::json!({ "schema_version": output::SCHEMA_VERSION, "pattern": pat, "rows": rows });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        failed = results.iter().any(|r| r.is_err());
    } else {
        let mut table = output::Table::new(covers);
        for (r, res) in rows.iter().zip(&results) {
            match res {
                Ok(inv) => table.push(&r.descriptor.to_string(), inv),
                Err(e) => {
                    failed = true;
                    table.push_error(&r.descriptor.to_string(), e);
                }
            }
        }
        print!("{table}");
    }
    if failed {
        return fail(COMPUTE, "some rows could not be computed");
    }
    ExitCode::SUCCESS
}

fn run_verify(suite: &str, t: &Templates, json: bool) -> ExitCode {
    if suite != "all" && !verify::SUITES.contains(&suite) {
        return fail(USAGE, format!("unknown suite {suite:?}; expected one of {}, all", verify::SUITES.join(", ")));
    }
    let reports = match verify::run(suite, t) {
        Ok(r) => r,
        Err(e) => return fail(COMPUTE, e),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&verify_json(&reports)).expect("json"));
    } else {
        for r in &reports {
            print!("{}", output::report_text(r));
        }
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
