//! Command-line front end. [`dispatch`] is pure: it returns the exit code and
//! both output streams so the binary and the tests share one code path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::classify::{leavitt_algebra_graph, wlpa_classify, ClassifyError};
use crate::element::Element;
use crate::expr::{parse_expression, ExprError};
use crate::format::{parse_graph, write_graph, FormatError};
use crate::grading::{degree, homogeneous_components, local_valuation, GradingError, MultiDegree};
use crate::graph::WeightedGraph;
use crate::rewrite::{AmbiguityKind, ReductionSystem};
use crate::ring::Ring;
use crate::testkit::run_confluence_suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Domain(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wlpa",
    version,
    about = "Weighted Leavitt path algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an expression
    Nf {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Normal form of a product
    Mul {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Local valuation (largest path length in the normal form)
    Valuation {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Multi-degree of a path, or of each homogeneous component
    Degree {
        graph: PathBuf,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Normal generalised paths up to a length
    Basis {
        graph: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Overlap and inclusion ambiguities of the reduction system
    Ambiguities {
        graph: PathBuf,
        #[arg(long)]
        check: bool,
    },
    /// Structural verdicts and witnesses
    Classify {
        graph: PathBuf,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        #[arg(long)]
        json: bool,
    },
    /// Non-simplicity and zero-divisor witnesses
    Witness {
        graph: PathBuf,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Random reduction sequences against the normal form
    Confluence {
        graph: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graph file of the Leavitt algebra L(n, n+k)
    Leavitt { n: u32, k: u32 },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match run(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(path: &Path) -> Result<Arc<WeightedGraph>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_graph(&text)
        .map(Arc::new)
        .map_err(|source| CliError::Graph {
            path: path.to_path_buf(),
            source,
        })
}

fn system(path: &Path, ring: Ring) -> Result<ReductionSystem, CliError> {
    Ok(ReductionSystem::new(load(path)?, ring))
}

fn parse(rs: &ReductionSystem, s: &str) -> Result<Element, CliError> {
    Ok(parse_expression(rs.graph(), rs.ring(), s)?)
}

fn run(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Nf { graph, expr, ring } => {
            let rs = system(&graph, ring)?;
            let nf = rs.normal_form(&parse(&rs, &expr)?);
            Ok(format!("{}\n", nf.display(rs.graph())))
        }
        Command::Mul {
            graph,
            left,
            right,
            ring,
        } => {
            let rs = system(&graph, ring)?;
            let p = rs.multiply(&parse(&rs, &left)?, &parse(&rs, &right)?);
            Ok(format!("{}\n", p.display(rs.graph())))
        }
        Command::Valuation { graph, expr, ring } => {
            let rs = system(&graph, ring)?;
            Ok(format!("{}\n", local_valuation(&rs, &parse(&rs, &expr)?)))
        }
        Command::Degree { graph, expr, ring } => degree_command(&system(&graph, ring)?, &expr),
        Command::Basis { graph, max_len } => {
            let rs = system(&graph, Ring::Integers)?;
            let mut out = String::new();
            for w in rs.enumerate_normal_words(max_len) {
                writeln!(out, "{}", rs.graph().display_word(&w)).unwrap();
            }
            Ok(out)
        }
        Command::Ambiguities { graph, check } => {
            ambiguities_command(&system(&graph, Ring::Integers)?, check)
        }
        Command::Classify { graph, ring, json } => {
            let report = wlpa_classify(&load(&graph)?, ring);
            Ok(if json {
                report.to_json()
            } else {
                report.to_text()
            })
        }
        Command::Witness { graph, ring } => {
            let report = wlpa_classify(&load(&graph)?, ring);
            let text = report.to_text();
            let lines: Vec<&str> = text
                .lines()
                .filter(|l| {
                    l.starts_with("lr_normal_witness:")
                        || l.starts_with("quotient_witness:")
                        || l.starts_with("zero_divisor:")
                })
                .collect();
            Ok(lines.join("\n") + "\n")
        }
        Command::Confluence {
            graph,
            trials,
            seed,
        } => {
            let rs = system(&graph, Ring::Integers)?;
            let report = run_confluence_suite(&rs, trials, seed);
            match report.divergence {
                None => Ok(format!(
                    "confluence: {trials} trials passed (seed {seed})\n"
                )),
                Some(d) => {
                    let g = rs.graph();
                    Err(CliError::Internal(format!(
                        "trial {} on {}: normal form {} but random reduction reached {}",
                        d.trial,
                        g.display_word(&d.word),
                        d.normal_form.display(g),
                        d.random.display(g)
                    )))
                }
            }
        }
        Command::Leavitt { n, k } => Ok(write_graph(&leavitt_algebra_graph(n, k)?)),
    }
}

fn degree_command(rs: &ReductionSystem, expr: &str) -> Result<String, CliError> {
    let g = rs.graph();
    let raw = parse(rs, expr)?;
    let degrees = raw
        .words()
        .map(|w| degree(g, w))
        .collect::<Result<Vec<MultiDegree>, _>>()?;
    if let Some(first) = degrees.first() {
        if degrees.iter().all(|d| d == first) {
            return Ok(format!("{first}\n"));
        }
    }
    let nf = rs.normal_form(&raw);
    if nf.is_zero() {
        return Err(CliError::Domain("the zero element has no degree".into()));
    }
    let mut out = String::new();
    for (d, part) in homogeneous_components(g, &nf)? {
        writeln!(out, "{d}: {}", part.display(g)).unwrap();
    }
    Ok(out)
}

fn ambiguities_command(rs: &ReductionSystem, check: bool) -> Result<String, CliError> {
    let g = rs.graph();
    let mut out = String::new();
    let (mut overlaps, mut inclusions, mut unresolved) = (0, 0, Vec::new());
    for amb in rs.enumerate_ambiguities() {
        let kind = match amb.kind {
            AmbiguityKind::Overlap => {
                overlaps += 1;
                "overlap"
            }
            AmbiguityKind::Inclusion => {
                inclusions += 1;
                "inclusion"
            }
        };
        let word = amb.word();
        write!(
            out,
            "{kind} {}/{} {}",
            rs.rule(amb.sigma).family,
            rs.rule(amb.tau).family,
            g.display_word(&word)
        )
        .unwrap();
        if check {
            let ok = rs.check_ambiguity_resolvable(&amb);
            out.push_str(if ok { ": resolvable" } else { ": UNRESOLVED" });
            if !ok {
                unresolved.push(g.display_word(&word).to_string());
            }
        }
        out.push('\n');
    }
    writeln!(out, "{overlaps} overlaps, {inclusions} inclusions").unwrap();
    if !unresolved.is_empty() {
        return Err(CliError::Internal(format!(
            "unresolvable ambiguities: {}",
            unresolved.join(", ")
        )));
    }
    Ok(out)
}
