//! Command-line front end.
//!
//! Exit status: `0` for an affirmative answer, `1` for a definite negative one
//! (a counterexample, a non-synchronizing automaton, no isomorphism, …), `2`
//! for usage and input errors. Standard output is written only when the
//! command produced an answer; diagnostics go to standard error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::construction::{construct_sc, family_a, family_b, AssociatedPair, ConstructionTrace};
use crate::dfa::Dfa;
use crate::document;
use crate::error::{Error, Result};
use crate::ideal::minimal_ideal_dfa;
use crate::search::{self, SearchConfig};
use crate::subset::{
    languages_equal, pair_automaton, power_automaton, shortest_sync_word, Equivalence, SubsetDfa,
};
use crate::syntactic::{
    inner_factor_count, staircase_sigma_formula, staircase_word, syntactic_complexity, SigmaReport,
};
use crate::word::{letters_to_string, Word};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    A,
    B,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "synideal",
    version,
    about = "Synchronizing automata for principal ideals Σ*wΣ* over {a, b}"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Maximum number of subset states in a power automaton.
    #[arg(long, global = true, env = "SYNIDEAL_SUBSET_LIMIT", value_parser = positive,
          default_value_t = crate::subset::DEFAULT_SUBSET_LIMIT)]
    subset_limit: usize,

    /// Maximum number of elements in a transition semigroup.
    #[arg(long, global = true, env = "SYNIDEAL_CLOSURE_LIMIT", value_parser = positive,
          default_value_t = crate::syntactic::DEFAULT_CLOSURE_LIMIT)]
    closure_limit: usize,

    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, value_parser = positive, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal automaton of Σ*wΣ*.
    MinDfa { word: String },
    /// Strongly connected synchronizing automaton with Syn = Σ*wΣ*.
    Construct {
        word: String,
        /// Also print the step-by-step pair association.
        #[arg(long)]
        trace: bool,
    },
    /// Check that an automaton synchronizes exactly Σ*wΣ*.
    Verify {
        word: String,
        /// Automaton document to check instead of the constructed one.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
    /// Syntactic complexity of Σ*wΣ*, predicted and computed.
    Sigma {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Number of distinct inner factors of w.
    InnerFactors { word: String },
    /// Shortest reset word of an automaton document.
    ShortestSync { file: PathBuf },
    /// Power automaton (subsets reachable from Q, singletons merged).
    Power { file: PathBuf },
    /// Pair automaton (2-element subsets and the sink).
    Pairs { file: PathBuf },
    /// The two families of presenters for Σ*a^(n-1)bΣ*.
    Family {
        #[arg(value_enum, ignore_case = true)]
        which: Family,
        #[arg(long)]
        n: usize,
    },
    /// Staircase word a b² a³ … b^k and its syntactic complexity.
    Staircase {
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive reset-complexity search.
    Rc {
        word: String,
        #[arg(long, value_parser = positive)]
        max_states: usize,
        #[arg(long)]
        strongly_connected: bool,
    },
    /// Isomorphism test for two automaton documents.
    Isomorphic { first: PathBuf, second: PathBuf },
}

/// Settings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliConfig {
    pub subset_limit: usize,
    pub closure_limit: usize,
    pub output_format: Option<OutputFormat>,
    pub jobs: usize,
}

impl CliConfig {
    fn limits(&self) -> Limits {
        Limits {
            subset_limit: self.subset_limit,
            closure_limit: self.closure_limit,
        }
    }

    fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.output_format.unwrap_or(default)
    }
}

enum Outcome {
    Affirm(String),
    Deny(String),
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    let config = CliConfig {
        subset_limit: cli.subset_limit,
        closure_limit: cli.closure_limit,
        output_format: cli.format,
        jobs: cli.jobs,
    };
    match execute(cli.command, &config, err) {
        Ok(Outcome::Affirm(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Outcome::Deny(text)) => {
            let _ = out.write_all(text.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.to_string().replace('\n', " | "));
            2
        }
    }
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse()
}

fn read_automaton(path: &Path) -> Result<Dfa> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    document::from_json(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> Error {
    Error::Domain(format!("dot output is not available for `{command}`"))
}

/// Fixed-column transition table; `→` marks the initial state, `*` finals.
fn automaton_table(d: &Dfa, label: &dyn Fn(usize) -> String) -> String {
    let labels: Vec<String> = (0..d.state_count()).map(label).collect();
    let width = labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(1)
        .max(5);
    let mut out = format!("     {:<width$}  {:<width$}  b\n", "state", "a");
    for q in 0..d.state_count() {
        let initial = if d.initial() == Some(q) { "→" } else { " " };
        let fin = if d.finals().is_some_and(|f| f.contains(&q)) {
            "*"
        } else {
            " "
        };
        let [ta, tb] = d.rows()[q];
        let _ = writeln!(
            out,
            "{initial} {fin}  {:<width$}  {:<width$}  {}",
            labels[q], labels[ta], labels[tb]
        );
    }
    out
}

fn render_automaton(d: &Dfa, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => document::to_json(d),
        OutputFormat::Dot => d.to_dot(),
        OutputFormat::Table => automaton_table(d, &|q| q.to_string()),
    }
}

fn render_subsets(p: &SubsetDfa, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => document::to_json(&p.to_dfa()),
        OutputFormat::Dot => p.to_dot(),
        OutputFormat::Table => automaton_table(&p.to_dfa(), &|id| p.label(id)),
    }
}

fn trace_json(trace: &ConstructionTrace) -> serde_json::Value {
    let steps: Vec<serde_json::Value> = trace
        .steps
        .iter()
        .map(|s| {
            let (p, q) = match s.pair {
                AssociatedPair::Pair { p, q } => (json!(p), json!(q)),
                AssociatedPair::Sink => (json!("s"), json!("s")),
            };
            json!({
                "i": s.index,
                "prefix": trace.word[..s.index].iter().map(|l| l.as_char()).collect::<String>(),
                "p": p,
                "q": q,
                "j": s.complement_target,
                "fixed": s.fixed.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "word": trace.word.to_string(),
        "letters_swapped": trace.letters_swapped,
        "method": format!("{:?}", trace.method),
        "steps": steps,
    })
}

fn execute(command: Command, config: &CliConfig, err: &mut dyn Write) -> Result<Outcome> {
    let limits = config.limits();
    match command {
        Command::MinDfa { word } => {
            let w = parse_word(&word)?;
            let d = minimal_ideal_dfa(&w);
            Ok(Outcome::Affirm(render_automaton(
                &d,
                config.format_or(OutputFormat::Json),
            )))
        }
        Command::Construct { word, trace } => {
            let w = parse_word(&word)?;
            let (d, tr) = construct_sc(&w)?;
            let default = if trace {
                OutputFormat::Table
            } else {
                OutputFormat::Json
            };
            let format = config.format_or(default);
            let text = match (format, trace) {
                (OutputFormat::Json, true) => json_text(&json!({
                    "automaton": document::to_value(&d),
                    "trace": trace_json(&tr),
                })),
                (_, true) => format!("{}\n{}", render_automaton(&d, format), tr.to_table()),
                (_, false) => render_automaton(&d, format),
            };
            Ok(Outcome::Affirm(text))
        }
        Command::Verify { word, automaton } => {
            let w = parse_word(&word)?;
            let d = match automaton {
                Some(path) => read_automaton(&path)?,
                None => construct_sc(&w)?.0,
            };
            let syn = crate::subset::syn_acceptor(&d, limits.subset_limit)?;
            let verdict = languages_equal(&syn, &minimal_ideal_dfa(&w))?;
            let format = config.format_or(OutputFormat::Table);
            if format == OutputFormat::Dot {
                return Err(no_dot("verify"));
            }
            Ok(match verdict {
                Equivalence::Equal => Outcome::Affirm(match format {
                    OutputFormat::Json => json_text(&json!({ "equal": true })),
                    _ => "EQUAL\n".to_string(),
                }),
                Equivalence::Distinct {
                    witness,
                    accepted_by_first,
                } => {
                    let shown = letters_to_string(&witness);
                    Outcome::Deny(match format {
                        OutputFormat::Json => json_text(&json!({
                            "equal": false,
                            "counterexample": shown,
                            "synchronizes_automaton": accepted_by_first,
                        })),
                        _ => {
                            let side = if accepted_by_first {
                                format!("synchronizes the automaton but is not in Σ*{w}Σ*")
                            } else {
                                format!("is in Σ*{w}Σ* but does not synchronize the automaton")
                            };
                            format!("DIFFERENT {shown} ({side})\n")
                        }
                    })
                }
            })
        }
        Command::Sigma { word, json } => {
            let w = parse_word(&word)?;
            let report = SigmaReport::compute(&w, limits.closure_limit)?;
            let format = if json {
                OutputFormat::Json
            } else {
                config.format_or(OutputFormat::Table)
            };
            let text = match format {
                OutputFormat::Json => json_text(&report.to_json()),
                OutputFormat::Table => report.to_table(),
                OutputFormat::Dot => return Err(no_dot("sigma")),
            };
            Ok(if report.matches() == Some(false) {
                Outcome::Deny(text)
            } else {
                Outcome::Affirm(text)
            })
        }
        Command::InnerFactors { word } => {
            let w = parse_word(&word)?;
            let count = inner_factor_count(&w);
            Ok(Outcome::Affirm(
                match config.format_or(OutputFormat::Table) {
                    OutputFormat::Json => json_text(&json!({
                        "word": w.to_string(),
                        "inner_factors": count,
                    })),
                    OutputFormat::Table => format!("{count}\n"),
                    OutputFormat::Dot => return Err(no_dot("inner-factors")),
                },
            ))
        }
        Command::ShortestSync { file } => {
            let d = read_automaton(&file)?;
            let found = shortest_sync_word(&d, limits.subset_limit)?;
            let format = config.format_or(OutputFormat::Table);
            let text = match (format, &found) {
                (OutputFormat::Dot, _) => return Err(no_dot("shortest-sync")),
                (OutputFormat::Json, Some(word)) => json_text(&json!({
                    "synchronizing": true,
                    "word": word.iter().map(|l| l.as_char()).collect::<String>(),
                    "length": word.len(),
                })),
                (OutputFormat::Json, None) => json_text(&json!({ "synchronizing": false })),
                (OutputFormat::Table, Some(word)) => format!("{}\n", letters_to_string(word)),
                (OutputFormat::Table, None) => "NOT SYNCHRONIZING\n".to_string(),
            };
            Ok(if found.is_some() {
                Outcome::Affirm(text)
            } else {
                Outcome::Deny(text)
            })
        }
        Command::Power { file } => {
            let d = read_automaton(&file)?;
            let p = power_automaton(&d, limits.subset_limit)?;
            Ok(Outcome::Affirm(render_subsets(
                &p,
                config.format_or(OutputFormat::Table),
            )))
        }
        Command::Pairs { file } => {
            let d = read_automaton(&file)?;
            let p = pair_automaton(&d);
            Ok(Outcome::Affirm(render_subsets(
                &p,
                config.format_or(OutputFormat::Table),
            )))
        }
        Command::Family { which, n } => {
            let d = match which {
                Family::A => family_a(n)?,
                Family::B => family_b(n)?,
            };
            Ok(Outcome::Affirm(render_automaton(
                &d,
                config.format_or(OutputFormat::Json),
            )))
        }
        Command::Staircase { k } => {
            let w = staircase_word(k)?;
            let formula = staircase_sigma_formula(k)?;
            let inner = inner_factor_count(&w);
            let n = w.len();
            let computed = syntactic_complexity(&w, limits.closure_limit)?;
            let agree = formula == computed && n * n + 1 + inner == computed;
            let text = match config.format_or(OutputFormat::Table) {
                OutputFormat::Json => json_text(&json!({
                    "k": k,
                    "word": w.to_string(),
                    "n": n,
                    "inner_factors": inner,
                    "sigma_formula": formula,
                    "sigma_from_factors": n * n + 1 + inner,
                    "sigma_computed": computed,
                    "match": agree,
                })),
                OutputFormat::Table => format!(
                    "k               {k}\nword            {w}\nn               {n}\n\
                     inner_factors   {inner}\nsigma_formula   {formula}\n\
                     sigma_factors   {}\nsigma_computed  {computed}\nmatch           {agree}\n",
                    n * n + 1 + inner
                ),
                OutputFormat::Dot => return Err(no_dot("staircase")),
            };
            Ok(if agree {
                Outcome::Affirm(text)
            } else {
                Outcome::Deny(text)
            })
        }
        Command::Rc {
            word,
            max_states,
            strongly_connected,
        } => {
            let w = parse_word(&word)?;
            if max_states > search::DEFAULT_MAX_STATES && max_states <= search::HARD_MAX_STATES {
                let _ = writeln!(
                    err,
                    "warning: {max_states}-state sweep examines {} candidates",
                    search::candidate_count(max_states)
                );
            }
            let search_config = SearchConfig {
                max_states: search::HARD_MAX_STATES,
                jobs: config.jobs,
                limits,
            };
            let report =
                search::reset_complexity(&w, max_states, strongly_connected, &search_config)?;
            let text = match config.format_or(OutputFormat::Table) {
                OutputFormat::Json => json_text(&report.to_json()),
                OutputFormat::Table => report.to_table(),
                OutputFormat::Dot => return Err(no_dot("rc")),
            };
            if report.cerny_bound_respected() == Some(false) {
                let _ = writeln!(
                    err,
                    "warning: rc below ⌈√|w|⌉ + 1; this contradicts the Černý bound"
                );
            }
            Ok(if report.rc_established.is_some() {
                Outcome::Affirm(text)
            } else {
                Outcome::Deny(text)
            })
        }
        Command::Isomorphic { first, second } => {
            let d1 = read_automaton(&first)?;
            let d2 = read_automaton(&second)?;
            let phi = d1.isomorphism_to(&d2);
            let text = match (config.format_or(OutputFormat::Table), &phi) {
                (OutputFormat::Dot, _) => return Err(no_dot("isomorphic")),
                (OutputFormat::Json, _) => json_text(&json!({
                    "isomorphic": phi.is_some(),
                    "bijection": phi,
                })),
                (OutputFormat::Table, Some(map)) => {
                    let pairs: Vec<String> = map
                        .iter()
                        .enumerate()
                        .map(|(q, t)| format!("{q}->{t}"))
                        .collect();
                    format!("ISOMORPHIC {}\n", pairs.join(" "))
                }
                (OutputFormat::Table, None) => "NOT ISOMORPHIC\n".to_string(),
            };
            Ok(if phi.is_some() {
                Outcome::Affirm(text)
            } else {
                Outcome::Deny(text)
            })
        }
    }
}
