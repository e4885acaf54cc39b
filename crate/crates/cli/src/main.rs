use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graphbraid::complex::{enumerate, CubeComplex};
use graphbraid::engine::{present_with, PresentOptions};
use graphbraid::graph::{
    check_subdivision, light_decompose, subdivide_for, LightOutcome, Violation, ViolationKind,
    DEFAULT_CYCLE_LIMIT,
};
use graphbraid::oracle::{h1, pi1_presentation};
use graphbraid::planner::plan;
use graphbraid::{EdgeId, Error, Graph, VertexId};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "graphbraid",
    version,
    about = "Graph braid groups, configuration spaces and motion planning"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Reserved for randomised harnesses; no subcommand is random.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the graph is subdivided enough for N robots.
    Check {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
        /// The loop and multiple-edge check for two robots.
        #[arg(long)]
        strengthened: bool,
    },
    /// Print the graph with every edge split into N + 1 edges.
    Subdivide {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
    },
    /// Summarise the discrete configuration space.
    Cspace {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
        #[arg(long)]
        ordered: bool,
    },
    /// Plan a motion between two configurations.
    Plan {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
        #[arg(long, value_delimiter = ',')]
        from: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        to: Vec<String>,
    },
    /// Compute a presentation of the braid group.
    Present {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
        #[arg(long)]
        simplify: bool,
        /// Also print the build steps as JSON lines.
        #[arg(long)]
        trace: bool,
        /// Subdivide first when the check fails instead of exiting with 3.
        #[arg(long)]
        auto_subdivide: bool,
    },
    /// Brute-force presentation and first homology of the base component.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        robots: usize,
        #[arg(long)]
        ordered: bool,
    },
    /// Light decomposition, or the cycle where it gets stuck.
    Light { graph: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) => 2,
            Error::Precondition(_)
            | Error::CycleLimit(_)
            | Error::UnknownComponent(_)
            | Error::MissingWitness(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<Graph, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: Error| fail(1, format!("{}: {e}", path.display())))
}

fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn config(graph: &Graph, names: &[String]) -> Result<Vec<VertexId>, Failure> {
    names
        .iter()
        .map(|n| {
            graph
                .vertex_by_name(n.trim())
                .ok_or_else(|| fail(1, format!("unknown vertex `{n}`")))
        })
        .collect()
}

fn edge_names(graph: &Graph, edges: &[EdgeId]) -> Vec<String> {
    edges
        .iter()
        .map(|&e| {
            let (a, b) = graph.endpoints(e);
            format!("{}-{}", graph.name(a), graph.name(b))
        })
        .collect()
}

fn violation_text(g: &Graph, v: &Violation) -> String {
    let kind = match v.kind {
        ViolationKind::EssentialPath => "essential path",
        ViolationKind::EssentialCycle => "essential cycle",
        ViolationKind::Loop => "loop",
        ViolationKind::MultiEdge => "multiple edge",
    };
    let names: Vec<&str> = v.vertices.iter().map(|&x| g.name(x)).collect();
    format!("{kind} of length {}: {}", v.length, names.join(" "))
}

fn graph_json(graph: &Graph) -> Value {
    let edges: Vec<[&str; 2]> = graph
        .edges()
        .map(|e| {
            let (a, b) = graph.endpoints(e);
            [graph.name(a), graph.name(b)]
        })
        .collect();
    json!({
        "schema": "graphbraid.graph/1",
        "vertices": graph.vertices().map(|v| graph.name(v)).collect::<Vec<_>>(),
        "edges": edges,
    })
}

fn surface_line(c: &CubeComplex) -> String {
    let s = c.surface_check();
    match (s.is_closed_surface, s.orientable, s.genus) {
        (true, Some(true), Some(g)) => format!("closed orientable surface of genus {g}"),
        (true, Some(false), Some(g)) => format!("closed non-orientable surface of genus {g}"),
        _ => "not a closed surface".to_string(),
    }
}

fn cspace_summary(c: &CubeComplex) -> (String, Value) {
    let (f0, f1, f2) = c.f_vector();
    let components = c.components().len();
    let text = format!(
        "f = ({f0}, {f1}, {f2}), χ = {}, components = {components}\n{}\n",
        c.euler_characteristic(),
        surface_line(c)
    );
    let value = json!({
        "schema": "graphbraid.cspace/1",
        "ordered": c.ordered,
        "robots": c.robots,
        "f_vector": [f0, f1, f2],
        "full_f_vector": c.full_f_vector,
        "euler_characteristic": c.euler_characteristic(),
        "components": components,
        "surface": c.surface_check(),
    });
    (text, value)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json_out = cli.format == Format::Json;
    let emit = |text: String, value: Value| if json_out { format!("{value}\n") } else { text };
    match cli.command {
        Command::Check {
            graph,
            robots,
            strengthened,
        } => {
            let g = load(&graph)?;
            let report = check_subdivision(&g, robots, strengthened)?;
            let mut text = format!(
                "{}\n",
                if report.ok {
                    "ok"
                } else {
                    "not subdivided enough"
                }
            );
            for v in &report.violations {
                text.push_str(&violation_text(&g, v));
                text.push('\n');
            }
            let mut value = serde_json::to_value(&report).expect("serialisable");
            value["schema"] = json!("graphbraid.subdivision/1");
            Ok(emit(text, value))
        }
        Command::Subdivide { graph, robots } => {
            let (s, _) = subdivide_for(&load(&graph)?, robots);
            Ok(emit(s.to_text(), graph_json(&s)))
        }
        Command::Cspace {
            graph,
            robots,
            ordered,
        } => {
            let g = load(&graph)?;
            let (text, value) = cspace_summary(&enumerate(&g, robots, ordered));
            Ok(emit(text, value))
        }
        Command::Plan {
            graph,
            robots,
            from,
            to,
        } => {
            let g = load(&graph)?;
            let (start, goal) = (config(&g, &from)?, config(&g, &to)?);
            if start.len() != robots || goal.len() != robots {
                return Err(fail(
                    1,
                    format!("--from and --to need {robots} vertices each"),
                ));
            }
            if !g.is_connected() {
                return Err(fail(3, "the graph must be connected"));
            }
            let (motion, stats) = plan(&g, &start, &goal)?;
            let mut text = String::new();
            for f in &motion.frames {
                text.push_str(&f.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" "));
                text.push('\n');
            }
            text.push_str(&format!(
                "moves = {}, elementary_ops = {}\n",
                stats.moves, stats.elementary_ops
            ));
            let value = json!({
                "schema": "graphbraid.plan/1",
                "motion": motion.to_json(&g, &graph_name(&graph)),
                "stats": stats,
            });
            Ok(emit(text, value))
        }
        Command::Present {
            graph,
            robots,
            simplify,
            trace,
            auto_subdivide,
        } => {
            let mut g = load(&graph)?;
            let report = check_subdivision(&g, robots, false)?;
            let mut subdivided = false;
            if !report.ok {
                if !auto_subdivide {
                    let detail: Vec<String> = report
                        .violations
                        .iter()
                        .map(|v| violation_text(&g, v))
                        .collect();
                    return Err(fail(
                        3,
                        format!(
                            "graph is not subdivided enough for {robots} robots\n{}",
                            detail.join("\n")
                        ),
                    ));
                }
                g = subdivide_for(&g, robots).0;
                subdivided = true;
            }
            let p = present_with(
                &g,
                robots,
                PresentOptions {
                    simplify,
                    ..PresentOptions::default()
                },
            )?;
            let mut text = String::new();
            if subdivided {
                text.push_str(&format!(
                    "# subdivided to {} vertices and {} edges, as printed by `subdivide`\n",
                    g.vertex_count(),
                    g.edge_count()
                ));
            }
            text.push_str(&p.presentation.to_text());
            let mut value = p.presentation.to_json(Some(&g));
            value["schema"] = json!("graphbraid.present/1");
            value["abelianization"] = json!(p.presentation.abelianization().to_string());
            if subdivided {
                value["graph"] = graph_json(&g);
            }
            if let Some(dict) = &p.dictionary {
                let new_names = p.presentation.names();
                let entries: serde_json::Map<String, Value> = p
                    .raw
                    .names()
                    .into_iter()
                    .zip(dict)
                    .map(|(old, w)| (old, json!(w.display(&new_names).to_string())))
                    .collect();
                value["dictionary"] = Value::Object(entries);
            }
            let mut out = emit(text, value);
            if trace {
                out.push_str(&p.trace.to_json_lines(&g));
            }
            Ok(out)
        }
        Command::Oracle {
            graph,
            robots,
            ordered,
        } => {
            let g = load(&graph)?;
            let c = enumerate(&g, robots, ordered);
            if c.zero_cells.is_empty() {
                return Err(fail(2, format!("no configuration of {robots} robots fits")));
            }
            let o = pi1_presentation(&c, 0)?;
            let homology = h1(&c, 0)?;
            let (summary, mut value) = cspace_summary(&c);
            let base: Vec<String> = c.zero_cells[o.base]
                .cells
                .iter()
                .map(|x| cell_name(&g, *x))
                .collect();
            let text = format!(
                "{summary}base = ({})\nH1 = {homology}\n{}",
                base.join(", "),
                o.presentation.to_text()
            );
            value["schema"] = json!("graphbraid.oracle/1");
            value["base"] = json!(base);
            value["h1"] = json!({ "rank": homology.rank, "torsion": homology.torsion, "text": homology.to_string() });
            value["presentation"] = o.presentation.to_json(Some(&g));
            Ok(emit(text, value))
        }
        Command::Light { graph } => {
            let g = load(&graph)?;
            let outcome = light_decompose(&g, DEFAULT_CYCLE_LIMIT)?;
            let (text, value) = match &outcome {
                LightOutcome::Light(d) => {
                    let mut text = format!("light: {} cycle edges removed\n", d.removed.len());
                    for (h, c) in &d.removed {
                        text.push_str(&format!(
                            "{} on {}\n",
                            edge_names(&g, &[*h])[0],
                            edge_names(&g, c).join(" ")
                        ));
                    }
                    text.push_str(&format!(
                        "tree {}\n",
                        edge_names(&g, &d.tree_edges).join(" ")
                    ));
                    let removed: Vec<Value> = d
                        .removed
                        .iter()
                        .map(|(h, c)| json!({ "edge": edge_names(&g, &[*h])[0], "cycle": edge_names(&g, c) }))
                        .collect();
                    (
                        text,
                        json!({ "light": true, "removed": removed, "tree": edge_names(&g, &d.tree_edges) }),
                    )
                }
                LightOutcome::NotConstructible {
                    witness_cycle,
                    removed_so_far,
                } => {
                    let text = format!(
                        "not light: no removable edge on {} after {} removals\n",
                        edge_names(&g, witness_cycle).join(" "),
                        removed_so_far.len()
                    );
                    let removed: Vec<String> = removed_so_far
                        .iter()
                        .map(|(h, _)| edge_names(&g, &[*h])[0].clone())
                        .collect();
                    (
                        text,
                        json!({ "light": false, "witness_cycle": edge_names(&g, witness_cycle), "removed": removed }),
                    )
                }
            };
            let mut value = value;
            value["schema"] = json!("graphbraid.light/1");
            Ok(emit(text, value))
        }
    }
}

fn cell_name(g: &Graph, c: graphbraid::CellRef) -> String {
    match c {
        graphbraid::CellRef::Vertex(v) => g.name(v).to_string(),
        graphbraid::CellRef::Edge(e) => edge_names(g, &[e])[0].clone(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
