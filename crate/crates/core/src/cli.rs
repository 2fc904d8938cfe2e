//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 when the computation has
//! no answer sets, 3 when its only answer set is the set of all literals.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::postulates::{check_postulate, fuzz_postulates, GeneratorConfig, Postulate};
use crate::revision::{remainders, revise_sequence, Remainders, TraceRecord};
use crate::semantics::{answer_sets, equivalent, reduct, strongly_equivalent, AnswerSets};
use crate::syntax::{
    format_literal_set, parse_literal_set, parse_program, render_program, Program,
};
use crate::threeval::{min_reduct, three_valued_answer_sets, ThreeValued, ThreeValuedAnswerSets};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_ANSWER_SETS: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lprev",
    version,
    about = "Answer sets and revision of extended logic programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the answer sets of a program.
    Solve {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the 3-valued answer sets of a program as `(plus ; minus)`.
    Three {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduct of a program relative to a set of literals.
    Reduct {
        file: PathBuf,
        /// Comma-separated literals, e.g. `a,-b`.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Print the min-reduct of a program relative to `(plus ; minus)`.
    Minreduct {
        file: PathBuf,
        #[arg(long, default_value = "")]
        plus: String,
        #[arg(long, default_value = "")]
        minus: String,
    },
    /// Print Rem(P1, P2).
    Remainder {
        p1: PathBuf,
        p2: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Revise P1 by P2 by ... by Pn. Files are given lowest priority first.
    Revise {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        trace: bool,
    },
    /// Decide strong (and weak) equivalence of two programs.
    SeEq {
        p: PathBuf,
        q: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check postulates: on the given files, or by fuzzing when none are
    /// given.
    Check {
        files: Vec<PathBuf>,
        /// Comma-separated postulate names; all of them by default.
        #[arg(long, value_delimiter = ',')]
        postulates: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 5)]
        max_atoms: usize,
        #[arg(long, default_value_t = 6)]
        max_rules: usize,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

/// JSON form of an answer-set result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSetsRecord {
    /// `sets`, `inconsistent` or `none`.
    pub status: String,
    pub answer_sets: Vec<Vec<String>>,
}

impl From<&AnswerSets> for AnswerSetsRecord {
    fn from(value: &AnswerSets) -> Self {
        let status = match value {
            AnswerSets::Sets(_) => "sets",
            AnswerSets::Inconsistent => "inconsistent",
            AnswerSets::NoAnswerSets => "none",
        };
        AnswerSetsRecord {
            status: status.to_owned(),
            answer_sets: value
                .sets()
                .map(|s| s.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RevisionRecord {
    #[serde(flatten)]
    pub result: AnswerSetsRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub traces: Option<Vec<TraceRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpretationRecord {
    pub plus: Vec<String>,
    pub minus: Vec<String>,
}

impl From<&ThreeValued> for InterpretationRecord {
    fn from(x: &ThreeValued) -> Self {
        InterpretationRecord {
            plus: x.plus().iter().map(ToString::to_string).collect(),
            minus: x.minus().iter().map(ToString::to_string).collect(),
        }
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output::ok(rendered)
                }
                _ => Output::usage(rendered),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(output) => output,
        Err(message) => Output::usage(message),
    }
}

fn load(path: &Path) -> Result<Program, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("error: cannot read {}: {e}", path.display()))?;
    parse_program(&text).map_err(|e| format!("error: {}:{e}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn status_code(result: &AnswerSets) -> i32 {
    match result {
        AnswerSets::Sets(_) => EXIT_OK,
        AnswerSets::NoAnswerSets => EXIT_NO_ANSWER_SETS,
        AnswerSets::Inconsistent => EXIT_INCONSISTENT,
    }
}

fn answer_set_lines(result: &AnswerSets) -> String {
    result
        .sets()
        .map(|s| format!("{}\n", format_literal_set(s)))
        .collect()
}

fn with_status(result: &AnswerSets, stdout: String) -> Output {
    let stderr = match result {
        AnswerSets::Sets(_) => String::new(),
        AnswerSets::NoAnswerSets => "no answer sets\n".to_owned(),
        AnswerSets::Inconsistent => "inconsistent: the only answer set is Lit\n".to_owned(),
    };
    Output {
        code: status_code(result),
        stdout,
        stderr,
    }
}

fn dispatch(command: Command) -> Result<Output, String> {
    let parse_set = |s: &str| parse_literal_set(s).map_err(|e| format!("error: {e}"));
    match command {
        Command::Solve { file, json } => {
            let result = answer_sets(&load(&file)?);
            let stdout = if json {
                to_json(&AnswerSetsRecord::from(&result))
            } else {
                answer_set_lines(&result)
            };
            Ok(with_status(&result, stdout))
        }
        Command::Three { file, json } => {
            let result = three_valued_answer_sets(&load(&file)?);
            let records: Vec<InterpretationRecord> =
                result.interpretations().map(Into::into).collect();
            let stdout = if json {
                to_json(&records)
            } else {
                result.interpretations().map(|x| format!("{x}\n")).collect()
            };
            let status = match result {
                ThreeValuedAnswerSets::Sets(_) => AnswerSets::Sets(BTreeSet::new()),
                ThreeValuedAnswerSets::Inconsistent => AnswerSets::Inconsistent,
                ThreeValuedAnswerSets::NoAnswerSets => AnswerSets::NoAnswerSets,
            };
            Ok(with_status(&status, stdout))
        }
        Command::Reduct { file, set } => {
            let p = load(&file)?;
            Ok(Output::ok(program_text(&reduct(&p, &parse_set(&set)?))))
        }
        Command::Minreduct { file, plus, minus } => {
            let p = load(&file)?;
            let x = ThreeValued::new(parse_set(&plus)?, parse_set(&minus)?)
                .map_err(|e| format!("error: {e}"))?;
            Ok(Output::ok(program_text(&min_reduct(&p, &x))))
        }
        Command::Remainder { p1, p2, json } => {
            let (p1, p2) = (load(&p1)?, load(&p2)?);
            match remainders(&p1, &p2).map_err(|e| format!("error: {e}"))? {
                Remainders::Programs(ps) => {
                    let stdout = if json {
                        to_json(&ps.iter().map(render_program).collect::<Vec<_>>())
                    } else {
                        ps.iter()
                            .enumerate()
                            .map(|(i, p)| format!("% remainder {}\n{}", i + 1, program_text(p)))
                            .collect()
                    };
                    Ok(Output::ok(stdout))
                }
                Remainders::Lattice => {
                    let stdout = if json {
                        "\"Lit\"\n".to_owned()
                    } else {
                        String::new()
                    };
                    Ok(with_status(&answer_sets(&p2), stdout))
                }
            }
        }
        Command::Revise { files, json, trace } => {
            let programs = files
                .iter()
                .map(|f| load(f))
                .collect::<Result<Vec<_>, _>>()?;
            let outcome = revise_sequence(&programs).map_err(|e| format!("error: {e}"))?;
            let stdout = if json {
                to_json(&RevisionRecord {
                    result: AnswerSetsRecord::from(&outcome.answer_sets),
                    traces: trace.then(|| outcome.traces.iter().map(Into::into).collect()),
                })
            } else {
                let mut out = answer_set_lines(&outcome.answer_sets);
                if trace {
                    for (i, t) in outcome.traces.iter().enumerate() {
                        let _ = writeln!(out, "% trace {}", i + 1);
                        for step in t.steps() {
                            let _ = writeln!(
                                out,
                                "%   step {}: {} committed-false {}",
                                step.index,
                                step.interpretation,
                                format_literal_set(&t.cumulative_minus(step.index))
                            );
                            for line in render_program(&step.program).lines() {
                                let _ = writeln!(out, "%     {line}");
                            }
                        }
                    }
                }
                out
            };
            Ok(with_status(&outcome.answer_sets, stdout))
        }
        Command::SeEq { p, q, json } => {
            let (p, q) = (load(&p)?, load(&q)?);
            let strong = strongly_equivalent(&p, &q);
            let weak = equivalent(&p, &q);
            let stdout = if json {
                to_json(&serde_json::json!({ "strongly_equivalent": strong, "equivalent": weak }))
            } else {
                format!("strongly equivalent: {strong}\nequivalent: {weak}\n")
            };
            Ok(Output::ok(stdout))
        }
        Command::Check {
            files,
            postulates,
            seed,
            iters,
            max_atoms,
            max_rules,
            max_body,
            json,
        } => {
            let selected = if postulates.is_empty() {
                Postulate::ALL.to_vec()
            } else {
                postulates
                    .iter()
                    .map(|s| s.parse::<Postulate>().map_err(|e| format!("error: {e}")))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if files.is_empty() {
                if max_atoms == 0 || iters == 0 {
                    return Err("error: --max-atoms and --iters must be at least 1".into());
                }
                let cfg = GeneratorConfig {
                    seed,
                    max_atoms,
                    max_rules,
                    max_body,
                    ..GeneratorConfig::default()
                };
                let summary =
                    fuzz_postulates(&cfg, iters, &selected).map_err(|e| format!("error: {e}"))?;
                let stdout = if json {
                    to_json(&summary)
                } else {
                    summary
                        .iter()
                        .map(|s| {
                            format!(
                                "{}: {} passed, {} failed, {} skipped\n",
                                s.postulate, s.passes, s.failures, s.skipped
                            )
                        })
                        .collect()
                };
                return Ok(Output::ok(stdout));
            }
            let [postulate] = selected[..] else {
                return Err("error: checking files needs exactly one --postulates name".into());
            };
            let programs = files
                .iter()
                .map(|f| load(f))
                .collect::<Result<Vec<_>, _>>()?;
            let report =
                check_postulate(postulate, &programs).map_err(|e| format!("error: {e}"))?;
            let verdict = if !report.precondition_met {
                "precondition unmet".to_owned()
            } else if report.holds {
                "holds".to_owned()
            } else {
                let w = report.witness.as_ref().expect("failures carry witnesses");
                format!("fails: lhs {} rhs {}", w.lhs, w.rhs)
            };
            let stdout = if json {
                to_json(&serde_json::json!({
                    "postulate": postulate,
                    "holds": report.holds,
                    "precondition_met": report.precondition_met,
                    "witness": report.witness,
                }))
            } else {
                format!("{postulate}: {verdict}\n")
            };
            Ok(Output::ok(stdout))
        }
    }
}

fn program_text(p: &Program) -> String {
    let mut text = render_program(p);
    if !text.is_empty() {
        text.push('\n');
    }
    text
}
