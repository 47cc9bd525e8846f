//! The `paso` command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::ground::{check_safety, ground, GroundProgram};
use crate::interp::PInterpretation;
use crate::oracle::{brute_answer_sets, classical_rank, ClassicalProgram};
use crate::output::{answer_set_docs, emit, ranking_docs, satisfaction_docs, set_id, Format, OutputDocument};
use crate::parser::parse_program;
use crate::prefs::{pref_rule_index, rank, relations};
use crate::solver::{answer_sets, CandidateLattice, SolveError, SolverConfig, DEFAULT_MAX_CANDIDATES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_NO_ANSWER_SETS: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "paso", version, about = "Solve and rank probability answer set optimization programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Program file (.paso)
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print the ground program before the results
    #[arg(long)]
    dump_ground: bool,
    /// Largest candidate space to search (falls back to PASO_MAX_CANDIDATES)
    #[arg(long)]
    max_candidates: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse the program and report safety diagnostics
    Check(Common),
    /// Print the answer sets
    Solve(Common),
    /// Print the answer sets and rank them
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "maximal")]
        mode: String,
    },
    /// Print the satisfaction index of every answer set for every preference rule
    Explain(Common),
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        classical: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn load(common: &Common) -> Result<GroundProgram, Failure> {
    let path = common.file.display();
    let text = std::fs::read_to_string(&common.file).map_err(|e| fail(EXIT_USAGE, format!("{path}: {e}")))?;
    let program = parse_program(&text).map_err(|e| fail(EXIT_PARSE, format!("{path}:{e}")))?;
    ground(&program).map_err(|e| fail(EXIT_SEMANTIC, format!("{path}: {e}")))
}

fn max_candidates(common: &Common) -> Result<u64, Failure> {
    if let Some(n) = common.max_candidates {
        return Ok(n);
    }
    match std::env::var("PASO_MAX_CANDIDATES") {
        Ok(v) => v.trim().parse().map_err(|_| fail(EXIT_USAGE, format!("PASO_MAX_CANDIDATES: not a count: {v}"))),
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
    }
}

struct Solved {
    g: GroundProgram,
    sets: Vec<PInterpretation>,
    doc: OutputDocument,
}

fn solve(common: &Common, err: &mut dyn Write) -> Result<Solved, Failure> {
    let g = load(common)?;
    let cap = max_candidates(common)?;
    let config = SolverConfig { max_candidates: cap, ..SolverConfig::default() };
    if CandidateLattice::build(&g, cap).is_ok_and(|l| l.interval_width) {
        let _ = writeln!(
            err,
            "warning: interval annotations with lower < upper; atoms only take composed head values"
        );
    }
    let sets = answer_sets(&g, &config).map_err(|e| match e {
        SolveError::ResourceLimit { .. } => fail(EXIT_RESOURCE, e.to_string()),
    })?;
    let doc = OutputDocument {
        ground: common.dump_ground.then(|| g.to_program().to_string()),
        answer_sets: answer_set_docs(&sets),
        ..OutputDocument::default()
    };
    Ok(Solved { g, sets, doc })
}

fn finish(doc: &OutputDocument, format: Format, empty: bool, out: &mut dyn Write) -> i32 {
    let _ = out.write_all(emit(doc, format).as_bytes());
    if empty {
        EXIT_NO_ANSWER_SETS
    } else {
        EXIT_OK
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Check(common) => {
            let path = common.file.display().to_string();
            let text = std::fs::read_to_string(&common.file).map_err(|e| fail(EXIT_USAGE, format!("{path}: {e}")))?;
            let program = parse_program(&text).map_err(|e| fail(EXIT_PARSE, format!("{path}:{e}")))?;
            let diagnostics = check_safety(&program);
            if !diagnostics.is_empty() {
                let lines: Vec<String> = diagnostics.iter().map(|d| format!("{path}: {d}")).collect();
                return Err(fail(EXIT_SEMANTIC, lines.join("\n")));
            }
            let g = ground(&program).map_err(|e| fail(EXIT_SEMANTIC, format!("{path}: {e}")))?;
            if common.dump_ground {
                let _ = write!(out, "{}", g.to_program());
            }
            let _ = writeln!(
                out,
                "ok: {} ground generator rules, {} ground preference rules, {} atoms",
                g.rules.len(),
                g.pref_rules.len(),
                g.atoms.len()
            );
            Ok(EXIT_OK)
        }
        Command::Solve(common) => {
            let s = solve(&common, err)?;
            Ok(finish(&s.doc, common.format, s.sets.is_empty(), out))
        }
        Command::Explain(common) => {
            let mut s = solve(&common, err)?;
            let table: Vec<Vec<_>> =
                s.sets.iter().map(|h| s.g.pref_rules.iter().map(|r| pref_rule_index(h, r)).collect()).collect();
            s.doc.satisfaction = Some(satisfaction_docs(&table));
            Ok(finish(&s.doc, common.format, s.sets.is_empty(), out))
        }
        Command::Rank { common, mode } => {
            let relation = relations().get(&mode).ok_or_else(|| {
                let known: Vec<&str> = relations().names().collect();
                fail(EXIT_USAGE, format!("unknown mode `{mode}` (expected one of: {})", known.join(", ")))
            })?;
            let mut s = solve(&common, err)?;
            if !s.sets.is_empty() {
                let result = rank(&s.sets, &s.g.pref_rules, relation.as_ref());
                let (ranking, pairs) = ranking_docs(&mode, &result);
                s.doc.ranking = Some(ranking);
                s.doc.incomparable_pairs = Some(pairs);
            }
            Ok(finish(&s.doc, common.format, s.sets.is_empty(), out))
        }
        Command::Oracle { common, classical } => {
            let g = load(&common)?;
            if classical {
                let p = ClassicalProgram::from_ground(&g).map_err(|e| fail(EXIT_SEMANTIC, e.to_string()))?;
                let r = classical_rank(&p).map_err(|e| fail(EXIT_RESOURCE, e.to_string()))?;
                for (i, m) in r.answer_sets.iter().enumerate() {
                    let atoms: Vec<String> = m.iter().map(|l| l.to_string()).collect();
                    let _ = writeln!(out, "{} = {{{}}}", set_id(i), atoms.join(", "));
                }
                for (i, row) in r.relation.iter().enumerate() {
                    let cells: Vec<&str> = row.iter().map(|o| o.symbol()).collect();
                    let _ = writeln!(out, "{} {}", set_id(i), cells.join(" "));
                }
                return Ok(if r.answer_sets.is_empty() { EXIT_NO_ANSWER_SETS } else { EXIT_OK });
            }
            let sets = brute_answer_sets(&g).map_err(|e| fail(EXIT_RESOURCE, e.to_string()))?;
            let doc = OutputDocument { answer_sets: answer_set_docs(&sets), ..OutputDocument::default() };
            Ok(finish(&doc, common.format, sets.is_empty(), out))
        }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn fixture(name: &str) -> String {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
    }

    fn temp(name: &str, text: &str) -> String {
        let path = std::env::temp_dir().join(format!("paso-cli-{}-{name}", std::process::id()));
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("paso").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_intro() {
        let (code, out, _) = call(&["solve", &fixture("intro.paso")]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().filter(|l| l.starts_with('h')).count(), 2);
    }

    #[test]
    fn exit_codes() {
        let bad = temp("bad.paso", "a :- .\nb(:- c.");
        let (code, _, err) = call(&["check", &bad]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("2:"), "{err}");

        let unsafe_rule = temp("unsafe.paso", "p(X) :- not q(X).");
        assert_eq!(call(&["check", &unsafe_rule]).0, EXIT_SEMANTIC);
        assert_eq!(call(&["solve", &fixture("unsat.paso")]).0, EXIT_NO_ANSWER_SETS);
        assert_eq!(call(&["solve", &fixture("nurse_example2.paso"), "--max-candidates", "10"]).0, EXIT_RESOURCE);
        assert_eq!(call(&["rank", &fixture("intro.paso"), "--mode", "lexicographic"]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "/nonexistent/file.paso"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn maximal_ranking_of_weekend_instance() {
        let (code, out, _) = call(&["rank", &fixture("nurse_example2.paso"), "--mode", "maximal"]);
        assert_eq!(code, EXIT_OK);
        let strata: Vec<&str> = out.lines().filter(|l| l.starts_with("stratum")).collect();
        assert_eq!(strata.len(), 4);
        assert!(strata[3].ends_with(": h1"), "{out}");
    }

    #[test]
    fn pareto_reports_incomparable_pairs() {
        let (code, out, _) = call(&["rank", &fixture("nurse_example2.paso"), "--mode", "pareto", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(doc["ranking"].get("strata").is_none());
        assert!(!doc["incomparable_pairs"].as_array().unwrap().is_empty());
    }

    #[test]
    fn output_is_deterministic() {
        for format in ["text", "json"] {
            let args = ["explain", &fixture("nurse_example2.paso"), "--format", format];
            assert_eq!(call(&args).1, call(&args).1);
        }
    }
}
