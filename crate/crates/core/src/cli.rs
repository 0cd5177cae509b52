//! The `capfree` command line: argument parsing and dispatch.
//!
//! Every command writes one JSON document to stdout and a short human
//! summary to stderr. Exit codes: 0 success, 1 a negative answer (rejected,
//! not colourable, failed self-test), 2 bad usage or input, 3 undecided or
//! unsupported at the current budget.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::construct::{generate_instance, GeneratorParams};
use crate::decomposition::clique_cutset_tree;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::named::Named;
use crate::oracles::{
    brute_chromatic, brute_clique_cutset, brute_max_clique, brute_mwss, find_forbidden_induced,
    holes_bounded, odd_signable_signing, Certificate, ForbiddenKind,
};
use crate::recognition::{recognize, GraphClass, Verdict};
use crate::selftest;
use crate::skeleton::{extract_skeleton, SkeletonOutcome, SkeletonReject};
use crate::solvers::{chromatic_number, clique_number, greedy_color, mwss, q_color};
use crate::treewidth::tree_decomposition;

#[derive(Parser, Debug)]
#[command(
    name = "capfree",
    version,
    about = "Recognition, decomposition, colouring and stable sets for cap-free graph classes"
)]
pub struct Cli {
    /// Sets every brute-force and oracle vertex guard to this many vertices.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Graph file in the `p`/`e`/`w` text format, `-` for stdin, or a named
    /// construction such as `hole:5`, `blown:1`, `gnp:12:0.4:7`.
    pub graph: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide membership in a class, with a certificate either way.
    Recognize {
        #[arg(long, default_value = "cap-even-hole-free")]
        class: GraphClass,
        #[command(flatten)]
        input: Input,
    },
    /// Clique cutset decomposition tree.
    Decompose {
        /// Print Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Universal clique, twin classes and skeleton of every atom.
    Skeleton {
        #[command(flatten)]
        input: Input,
    },
    /// A tree decomposition through the atoms and their skeletons.
    Treewidth {
        #[command(flatten)]
        input: Input,
    },
    CliqueNumber {
        #[command(flatten)]
        input: Input,
    },
    /// Greedy colouring along a min-degree elimination order.
    GreedyColor {
        #[command(flatten)]
        input: Input,
    },
    /// A colouring with at most `q` colours, if one exists.
    Color {
        #[arg(short)]
        q: usize,
        #[command(flatten)]
        input: Input,
    },
    Chromatic {
        #[command(flatten)]
        input: Input,
    },
    /// Maximum weight stable set using the weights in the file.
    Mwss {
        #[command(flatten)]
        input: Input,
    },
    /// A random member of a class with its construction record.
    Generate(GenerateArgs),
    /// Run one of the exhaustive reference routines.
    Oracle {
        /// chromatic, mwss, clique, clique-cutset, odd-signing, holes, or a
        /// forbidden structure: even-hole, 4-hole, cap, theta, prism, even-wheel, triangle.
        what: String,
        #[command(flatten)]
        input: Input,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Run only this check.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub ears: usize,
    #[arg(long, default_value_t = 7)]
    pub max_ear_len: usize,
    #[arg(long, default_value_t = 2)]
    pub max_blowup: usize,
    #[arg(long, default_value_t = 1)]
    pub max_universal: usize,
    #[arg(long, default_value_t = 1)]
    pub glue: usize,
    #[arg(long, default_value = "cap-even-hole-free")]
    pub class: GraphClass,
    #[arg(long, default_value_t = 5)]
    pub min_base: usize,
    #[arg(long, default_value_t = 8)]
    pub max_base: usize,
    /// Number of instances, with seeds counting up from `--seed`.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Write the graph here and the construction record next to it as
    /// `<out>.provenance.json`; with `--count`, the seed is appended to the stem.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn json(code: i32, value: Value, summary: impl Into<String>) -> Self {
        CommandResult {
            exit_code: code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&value).unwrap()),
            stderr: summary.into(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if e.is_undecided() { 3 } else { 2 };
        let kind = if e.is_undecided() {
            "undecided"
        } else {
            "error"
        };
        CommandResult::json(code, json!({ kind: e.to_string() }), format!("{kind}: {e}"))
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn execute<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return CommandResult {
                exit_code: e.exit_code(),
                stdout: String::new(),
                stderr: e.render().to_string(),
            };
        }
    };
    let limits = cli.budget.map(Limits::uniform).unwrap_or_default();
    match run(&cli.command, &limits) {
        Ok(r) => r,
        Err(e) => CommandResult::error(&e),
    }
}

/// Reads a graph from a file, stdin, or a named construction.
pub fn load_graph(source: &str) -> Result<Graph> {
    if source == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| Error::InvalidParameter(format!("stdin: {e}")))?;
        return Graph::parse(&text);
    }
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{source}: {e}")))?;
        return Graph::parse(&text);
    }
    match source.parse::<Named>() {
        Ok(named) => named.build(),
        Err(_) => Err(Error::InvalidParameter(format!(
            "{source}: no such file or named construction"
        ))),
    }
}

fn ids(s: &[usize]) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn run(command: &Command, limits: &Limits) -> Result<CommandResult> {
    Ok(match command {
        Command::Recognize { class, input } => {
            let g = load_graph(&input.graph)?;
            let v = recognize(&g, *class, limits)?;
            let (code, word) = match v.verdict {
                Verdict::Accepted(_) => (0, "accepted"),
                Verdict::Rejected(_) => (1, "rejected"),
                Verdict::Undecided { .. } => (3, "undecided"),
            };
            CommandResult::json(code, v.to_json(), format!("{word} as {class}"))
        }
        Command::Decompose { dot, input } => {
            let g = load_graph(&input.graph)?;
            let tree = clique_cutset_tree(&g);
            let summary = format!("{} atoms", tree.leaf_count());
            if *dot {
                CommandResult {
                    exit_code: 0,
                    stdout: tree.to_dot(),
                    stderr: summary,
                }
            } else {
                CommandResult::json(0, tree.to_json(), summary)
            }
        }
        Command::Skeleton { input } => {
            let g = load_graph(&input.graph)?;
            let tree = clique_cutset_tree(&g);
            let mut atoms = Vec::new();
            for atom in tree.atoms() {
                let (sub, map) = g.induced_subgraph(atom)?;
                let lift = |s: &[usize]| s.iter().map(|&i| map[i] + 1).collect::<Vec<_>>();
                atoms.push(match extract_skeleton(&sub) {
                    SkeletonOutcome::Complete => json!({ "atom": ids(atom), "complete": true }),
                    SkeletonOutcome::Skeleton(sd) => {
                        let mut j = sd.to_json();
                        j["cliques"] =
                            json!(sd.cliques.iter().map(|c| lift(c)).collect::<Vec<_>>());
                        j["universal"] = json!(lift(&sd.universal));
                        json!({ "atom": ids(atom), "skeleton": j })
                    }
                    SkeletonOutcome::Reject(SkeletonReject::Triangle(t)) => {
                        json!({ "atom": ids(atom), "reject": { "triangle": lift(&t) } })
                    }
                    SkeletonOutcome::Reject(SkeletonReject::CliqueCutset(k)) => {
                        json!({ "atom": ids(atom), "reject": { "clique_cutset": lift(&k) } })
                    }
                });
            }
            let summary = format!("{} atoms", atoms.len());
            CommandResult::json(0, json!({ "atoms": atoms }), summary)
        }
        Command::Treewidth { input } => {
            let g = load_graph(&input.graph)?;
            let td = tree_decomposition(&g, limits)?;
            CommandResult::json(
                0,
                td.to_json(),
                format!("width {} with {} bags", td.width(), td.bags.len()),
            )
        }
        Command::CliqueNumber { input } => {
            let g = load_graph(&input.graph)?;
            let (k, c) = clique_number(&g, limits)?;
            CommandResult::json(
                0,
                json!({ "value": k, "witness": ids(&c) }),
                format!("clique number {k}"),
            )
        }
        Command::GreedyColor { input } => {
            let g = load_graph(&input.graph)?;
            let c = greedy_color(&g);
            let k = c.num_colors();
            CommandResult::json(
                0,
                json!({ "value": k, "witness": c.to_json() }),
                format!("{k} colours"),
            )
        }
        Command::Color { q, input } => {
            let g = load_graph(&input.graph)?;
            let td = tree_decomposition(&g, limits)?;
            match q_color(&g, &td, *q)? {
                Some(c) => CommandResult::json(
                    0,
                    json!({ "colorable": true, "q": q, "witness": c.to_json() }),
                    format!("{q}-colourable"),
                ),
                None => CommandResult::json(
                    1,
                    json!({ "colorable": false, "q": q }),
                    format!("not {q}-colourable"),
                ),
            }
        }
        Command::Chromatic { input } => {
            let g = load_graph(&input.graph)?;
            let (chi, c) = chromatic_number(&g, limits)?;
            CommandResult::json(
                0,
                json!({ "chi": chi, "witness": c.to_json() }),
                format!("chromatic number {chi}"),
            )
        }
        Command::Mwss { input } => {
            let g = load_graph(&input.graph)?;
            let r = mwss(&g, limits)?;
            CommandResult::json(
                0,
                json!({ "value": r.weight, "witness": ids(&r.set) }),
                format!("stable set of weight {}", r.weight),
            )
        }
        Command::Generate(args) => generate(args)?,
        Command::Oracle { what, input } => {
            let g = load_graph(&input.graph)?;
            oracle(what, &g, limits)?
        }
        Command::Selftest { only } => {
            let reports = match only {
                Some(id) if (1..=selftest::CHECKS).contains(id) => vec![selftest::run(*id)],
                Some(id) => {
                    return Err(Error::InvalidParameter(format!(
                        "no check {id}; checks are 1..={}",
                        selftest::CHECKS
                    )))
                }
                None => selftest::run_all(),
            };
            let lines: Vec<String> = reports
                .iter()
                .map(|r| {
                    format!(
                        "[{}] {:>2}. {}: {}",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.id,
                        r.title,
                        r.detail
                    )
                })
                .collect();
            let all = reports.iter().all(|r| r.passed);
            let value: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail }))
                .collect();
            CommandResult::json(if all { 0 } else { 1 }, json!(value), lines.join("\n"))
        }
    })
}

fn generate(args: &GenerateArgs) -> Result<CommandResult> {
    let mut docs = Vec::new();
    for i in 0..args.count.max(1) {
        let params = GeneratorParams {
            seed: args.seed + i as u64,
            ears: args.ears,
            max_ear_len: args.max_ear_len,
            max_blowup: args.max_blowup,
            max_universal: args.max_universal,
            glue: args.glue,
            class: args.class,
            min_base: args.min_base,
            max_base: args.max_base,
        };
        let inst = generate_instance(&params)?;
        let provenance = inst.provenance.to_json();
        match &args.out {
            Some(out) => {
                let path = if args.count > 1 {
                    let stem = out
                        .file_stem()
                        .and_then(|s| s.to_str())
                        .unwrap_or("instance");
                    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("graph");
                    out.with_file_name(format!("{stem}-{}.{ext}", params.seed))
                } else {
                    out.clone()
                };
                let write = |p: &Path, text: String| {
                    std::fs::write(p, text)
                        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display())))
                };
                write(&path, inst.graph.to_text())?;
                let mut side = path.clone().into_os_string();
                side.push(".provenance.json");
                write(
                    Path::new(&side),
                    serde_json::to_string_pretty(&provenance).unwrap(),
                )?;
                docs.push(json!({ "file": path.display().to_string(), "provenance": provenance }));
            }
            None => docs.push(json!({ "graph": inst.graph.to_text(), "provenance": provenance })),
        }
    }
    let summary = format!("{} instance(s)", docs.len());
    let value = if docs.len() == 1 {
        docs.pop().unwrap()
    } else {
        json!(docs)
    };
    Ok(CommandResult::json(0, value, summary))
}

fn oracle(what: &str, g: &Graph, limits: &Limits) -> Result<CommandResult> {
    let value = match what {
        "chromatic" => match brute_chromatic(g, limits)? {
            Certificate::Coloring { k, colors } => json!({ "chi": k, "witness": ids(&colors) }),
            _ => unreachable!(),
        },
        "mwss" => match brute_mwss(g, limits)? {
            Certificate::StableSet { weight, vertices } => {
                json!({ "value": weight, "witness": ids(&vertices) })
            }
            _ => unreachable!(),
        },
        "clique" => match brute_max_clique(g, limits)? {
            Certificate::Clique { vertices } => {
                json!({ "value": vertices.len(), "witness": ids(&vertices) })
            }
            _ => unreachable!(),
        },
        "clique-cutset" => match brute_clique_cutset(g, limits)? {
            Certificate::CliqueCutset(c) => json!({ "cutset": c.map(|c| ids(&c)) }),
            _ => unreachable!(),
        },
        "odd-signing" => match odd_signable_signing(g, limits)? {
            Some(s) => {
                json!({ "odd_signable": true, "signing": s.iter().map(|(u, v, x)| json!([u + 1, v + 1, x])).collect::<Vec<_>>() })
            }
            None => json!({ "odd_signable": false }),
        },
        "holes" => {
            let holes = holes_bounded(g, limits.cycle_budget)?;
            json!({ "count": holes.len(), "holes": holes.iter().map(|h| ids(h)).collect::<Vec<_>>() })
        }
        other => {
            let kind: ForbiddenKind = other.parse()?;
            match find_forbidden_induced(g, kind, limits)? {
                Some(w) => {
                    json!({ "kind": kind.name(), "found": true, "vertices": ids(&w.vertices) })
                }
                None => json!({ "kind": kind.name(), "found": false }),
            }
        }
    };
    Ok(CommandResult::json(0, value, format!("oracle {what} done")))
}
