//! Front end for `gmsplit`: reads spec documents, runs the core operations
//! and renders reports. JSON reports are the primary output; the text
//! format is rendered from the same values.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use heegaard_core::assembly::{
    amalgamate, cut_edge, enumerate_standard, weak_reduction_pipeline, Bounds, CandidateSplitting,
    GeneralizedSplitting, VertexChoice,
};
use heegaard_core::model::{validate, GraphManifoldSpec};
use heegaard_core::Error;
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Enumerate,
    /// Minimal genus; with thin edges, via weak reduction along them.
    Genus {
        thin: Vec<String>,
    },
    Cut {
        edge: String,
    },
    Amalgamate,
    /// χ ledger of the candidate at this rank.
    Explain {
        candidate: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub input: PathBuf,
    /// File for the report, or the directory for `cut` output.
    pub output: Option<PathBuf>,
    pub bounds: Bounds,
    pub json: bool,
}

impl CliConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            output: None,
            bounds: Bounds::default(),
            json: false,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

/// What a run produced: the exit code and the text for each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownFormat(_) | Error::MalformedSplitting(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

pub fn run(cfg: &CliConfig) -> Outcome {
    if cfg.bounds.n_max == 0 || cfg.bounds.max_arcs == 0 || cfg.bounds.coeff_max < 0 {
        return Outcome::fail(EXIT_INVALID, "bounds must be positive");
    }
    let text = match fs::read_to_string(&cfg.input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_IO, format!("{}: {e}", cfg.input.display())),
    };
    let result = match &cfg.command {
        Command::Amalgamate => run_amalgamate(&text, cfg.json),
        cmd => match GraphManifoldSpec::from_json(&text) {
            Ok(spec) => run_spec(cmd, &spec, cfg),
            Err(e) => Err(e),
        },
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => return Outcome::fail(exit_code(&e), e),
    };
    if matches!(cfg.command, Command::Cut { .. }) || out.stdout.is_empty() {
        return out;
    }
    match &cfg.output {
        Some(path) => match fs::write(path, &out.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..out
            },
            Err(e) => Outcome::fail(EXIT_IO, format!("{}: {e}", path.display())),
        },
        None => out,
    }
}

fn run_amalgamate(text: &str, as_json: bool) -> heegaard_core::Result<Outcome> {
    let gs = GeneralizedSplitting::from_json(text.trim())?;
    let (chi, genus) = amalgamate(&gs)?;
    Ok(Outcome::ok(if as_json {
        format!("{}\n", json!({ "chi": chi, "genus": genus }))
    } else {
        format!("chi: {chi}, genus: {genus}\n")
    }))
}

fn run_spec(
    cmd: &Command,
    spec: &GraphManifoldSpec,
    cfg: &CliConfig,
) -> heegaard_core::Result<Outcome> {
    let report = validate(spec);
    if let Command::Validate = cmd {
        let out = if cfg.json {
            format!(
                "{}\n",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )
        } else if report.is_valid() {
            "valid\n".to_string()
        } else {
            report
                .violations
                .iter()
                .map(|v| format!("{} at {}: {}\n", v.code, v.path, v.message))
                .collect()
        };
        let code = if report.is_valid() {
            EXIT_OK
        } else {
            EXIT_INVALID
        };
        return Ok(Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        });
    }
    if !report.is_valid() {
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        return Err(Error::InvalidSpec(codes.join(", ")));
    }
    match cmd {
        Command::Validate => unreachable!("handled above"),
        Command::Enumerate => {
            let all = enumerate_standard(spec, &cfg.bounds)?;
            Ok(Outcome::ok(if cfg.json {
                pretty(&all)
            } else {
                render_list(&all)
            }))
        }
        Command::Genus { thin } if thin.is_empty() => {
            let all = enumerate_standard(spec, &cfg.bounds)?;
            let Some(best) = all.first() else {
                return Ok(Outcome::fail(
                    EXIT_INVALID,
                    "no candidate assembles within bounds",
                ));
            };
            Ok(Outcome::ok(if cfg.json {
                pretty(&json!({ "genus": best.genus, "witness": best }))
            } else {
                format!("genus: {}\nwitness: {}\n", best.genus, summary(best))
            }))
        }
        Command::Genus { thin } => {
            let thin: BTreeSet<String> = thin.iter().cloned().collect();
            let r = weak_reduction_pipeline(spec, &thin, &cfg.bounds)?;
            Ok(Outcome::ok(if cfg.json {
                pretty(&r)
            } else {
                let mut s = format!(
                    "genus: {}\nchi: {}\nsplitting: {}\n",
                    r.genus,
                    r.chi,
                    r.splitting.to_json()
                );
                for (piece, c) in &r.pieces {
                    let _ = writeln!(
                        s,
                        "piece {}: genus {} chi {}: {}",
                        piece.name,
                        c.genus,
                        c.chi,
                        summary(c)
                    );
                }
                s
            }))
        }
        Command::Cut { edge } => {
            let parts = cut_edge(spec, edge)?;
            match &cfg.output {
                Some(dir) => write_parts(dir, &parts),
                None => Ok(Outcome::ok(
                    parts.iter().map(|p| p.to_canonical_json() + "\n").collect(),
                )),
            }
        }
        Command::Explain { candidate } => {
            let all = enumerate_standard(spec, &cfg.bounds)?;
            let Some(c) = all.get(*candidate) else {
                return Ok(Outcome::fail(
                    EXIT_INVALID,
                    format!(
                        "candidate {candidate} out of range ({} candidates)",
                        all.len()
                    ),
                ));
            };
            Ok(Outcome::ok(if cfg.json {
                pretty(&ledger_json(c))
            } else {
                ledger_text(c)
            }))
        }
        Command::Amalgamate => unreachable!("handled by the caller"),
    }
}

fn write_parts(dir: &Path, parts: &[GraphManifoldSpec]) -> heegaard_core::Result<Outcome> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut listing = String::new();
    for p in parts {
        let path = dir.join(format!("{}.json", p.name));
        let body = serde_json::to_string_pretty(p).expect("spec serializes") + "\n";
        fs::write(&path, body).map_err(io)?;
        let _ = writeln!(listing, "{}", path.display());
    }
    Ok(Outcome::ok(listing))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn choice_name(c: &VertexChoice) -> String {
    match c {
        VertexChoice::Band(b) if b.is_empty() => "empty".into(),
        VertexChoice::Band(b) if b.torus => "vertical torus".into(),
        VertexChoice::Band(b) => format!("vertical annuli through {:?}", b.visits),
        VertexChoice::Horizontal { degree, coeffs } => {
            format!("horizontal n={degree} c={coeffs:?}")
        }
        VertexChoice::Pseudohorizontal {
            fiber,
            degree,
            coeffs,
        } => {
            format!("pseudohorizontal {fiber:?} n={degree} c={coeffs:?}")
        }
        VertexChoice::ProductHorizontal { copies } => format!("product horizontal x{copies}"),
        VertexChoice::VerticalSplitting {
            fibers_in_v,
            boundaries_in_v,
        } => {
            format!("vertical splitting fibers {fibers_in_v:?} boundaries {boundaries_in_v:?}")
        }
        VertexChoice::ProductTimesCircle => "product x circle".into(),
    }
}

/// One-line description of a candidate.
fn summary(c: &CandidateSplitting) -> String {
    let mut parts: Vec<String> = c
        .vertices
        .iter()
        .map(|(id, r)| format!("{id}: {} ({})", tag(&r.piece.tag), choice_name(&r.choice)))
        .collect();
    parts.extend(
        c.edges
            .iter()
            .map(|(id, p)| format!("{id}: {}", tag(&p.kind))),
    );
    parts.join("; ")
}

fn tag<T: serde::Serialize>(t: &T) -> String {
    serde_json::to_value(t)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn render_list(all: &[CandidateSplitting]) -> String {
    if all.is_empty() {
        return "no candidate assembles within bounds\n".into();
    }
    let mut s = String::new();
    for (i, c) in all.iter().enumerate() {
        let _ = writeln!(
            s,
            "#{i} genus {} chi {} tubes {}: {}",
            c.genus,
            c.chi,
            c.tubes,
            summary(c)
        );
    }
    s
}

fn ledger_json(c: &CandidateSplitting) -> serde_json::Value {
    let vertices: serde_json::Map<String, serde_json::Value> = c
        .vertices
        .iter()
        .map(|(id, r)| {
            (
                id.clone(),
                json!({ "tag": r.piece.tag, "chi": r.piece.chi, "choice": r.choice }),
            )
        })
        .collect();
    let edges: serde_json::Map<String, serde_json::Value> = c
        .edges
        .iter()
        .map(|(id, p)| (id.clone(), json!({ "kind": p.kind, "chi": p.chi })))
        .collect();
    json!({ "vertices": vertices, "edges": edges, "chi": c.chi, "genus": c.genus, "tubes": c.tubes })
}

fn ledger_text(c: &CandidateSplitting) -> String {
    let mut s = String::new();
    for (id, r) in &c.vertices {
        let _ = writeln!(
            s,
            "vertex {id:<8} {:<18} chi {:>4}  {}",
            tag(&r.piece.tag),
            r.piece.chi,
            choice_name(&r.choice)
        );
    }
    for (id, p) in &c.edges {
        let _ = writeln!(s, "edge   {id:<8} {:<18} chi {:>4}", tag(&p.kind), p.chi);
    }
    let _ = writeln!(
        s,
        "total  chi {}  genus {}  tubes {}",
        c.chi, c.genus, c.tubes
    );
    s
}
