//! Command-line front end. Output is deterministic: vertices by id, fixed
//! key order.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::assemblage::{assemble_divide, AssemblageCertificate};
use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::fiber::FiberComplex;
use crate::framing::{CurveExpr, Framing};
use crate::generators::{generate, FamilySpec, Generated};
use crate::intersection_graph::AugmentedIntersectionGraph;
use crate::invariants::record_from_divide;
use crate::toggle::{Graph, OrientedIntersectionGraph, ToggleScript};

#[derive(Debug, Parser)]
#[command(name = "dividekit", version, about = "Divides of plane curve singularities")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a divide for the properties of divides of singularities.
    Validate { file: PathBuf },
    /// Print mu, delta, regions, branches and genus.
    Invariants { file: PathBuf },
    /// Print the augmented intersection graph.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Print the combinatorial Milnor fiber, or a subsurface of it.
    Fiber {
        file: PathBuf,
        /// Comma-separated bounded vertex ids.
        #[arg(long)]
        subsurface: Option<String>,
    },
    /// Winding number and homology class of a curve.
    Winding {
        file: PathBuf,
        /// A distinguished cycle, `v<i>`.
        #[arg(long, conflicts_with = "expr")]
        curve: Option<String>,
        /// A curve expression such as `T(v3)^-1(v5)`.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Emit an assemblage certificate as JSON.
    Assemble {
        file: PathBuf,
        /// Triangle moves to search through when the divide has no core.
        #[arg(long, default_value_t = 2)]
        max_moves: usize,
    },
    /// Apply a toggle script to a graph JSON file.
    Toggle {
        file: PathBuf,
        #[arg(long)]
        script: String,
    },
    /// Generate a divide, diagram or fixture, e.g. `generate chebyshev 3 7`.
    Generate {
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

/// Graph file read by `toggle`: labels and edges, with optional arrows
/// `[a, b]` meaning `<a, b> = 1`. A vertex labeled `inf` is dropped.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub labels: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tripod: Option<String>,
}

enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: Io: {m}");
            1
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_divide(path: &Path) -> std::result::Result<Divide, Failure> {
    Ok(Divide::parse(&read(path)?)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn execute(command: Command) -> std::result::Result<String, Failure> {
    let mut s = String::new();
    match command {
        Command::Validate { file } => {
            let d = read_divide(&file)?;
            let report = d.validate();
            if let Some(first) = report.violations.first() {
                return Err(first.to_error().into());
            }
            writeln!(s, "valid").unwrap();
            writeln!(s, "circles: {}", report.circles).unwrap();
        }
        Command::Invariants { file } => {
            let r = record_from_divide(&read_divide(&file)?)?;
            writeln!(s, "mu: {}", r.mu).unwrap();
            writeln!(s, "delta: {}", r.delta).unwrap();
            writeln!(s, "regions: {}", r.r).unwrap();
            writeln!(s, "branches: {}", r.b).unwrap();
            writeln!(s, "genus: {}", r.genus).unwrap();
        }
        Command::Graph { file, format } => {
            let g = AugmentedIntersectionGraph::build(&read_divide(&file)?)?;
            s = match format {
                GraphFormat::Json => json(&graph_file(&g)),
                GraphFormat::Dot => dot(&g),
            };
        }
        Command::Fiber { file, subsurface } => {
            let f = FiberComplex::build(&read_divide(&file)?)?;
            match subsurface {
                None => {
                    writeln!(s, "genus: {}", f.genus()).unwrap();
                    writeln!(s, "boundary: {}", f.boundary_count()).unwrap();
                    writeln!(s, "chi: {}", f.chi()).unwrap();
                    writeln!(s, "polygons: {}", f.polygon_count()).unwrap();
                }
                Some(list) => {
                    let vs = parse_ids(&list, f.mu())?;
                    let sub = f.subsurface(&vs);
                    let ids: Vec<String> = sub.vertices.iter().map(|v| v.to_string()).collect();
                    writeln!(s, "vertices: {}", ids.join(",")).unwrap();
                    writeln!(s, "genus: {}", sub.genus).unwrap();
                    writeln!(s, "boundary: {}", sub.boundary_count).unwrap();
                    writeln!(s, "chi: {}", sub.chi).unwrap();
                    writeln!(s, "components: {}", sub.components).unwrap();
                }
            }
        }
        Command::Winding { file, curve, expr } => {
            let text = curve.or(expr).ok_or_else(|| Error::BadParams("give --curve or --expr".into()))?;
            let e: CurveExpr = text.parse()?;
            let f = FiberComplex::build(&read_divide(&file)?)?;
            let value = Framing::new(&f).evaluate(&e)?;
            let class: Vec<String> = value.coords.iter().map(|x| x.to_string()).collect();
            writeln!(s, "curve: {e}").unwrap();
            writeln!(s, "winding: {}", value.winding).unwrap();
            writeln!(s, "class: {}", class.join(" ")).unwrap();
            writeln!(s, "admissible: {}", value.is_admissible()).unwrap();
        }
        Command::Assemble { file, max_moves } => {
            let cert: AssemblageCertificate = assemble_divide(&read_divide(&file)?, max_moves)?;
            s = json(&cert);
        }
        Command::Toggle { file, script } => {
            let input: GraphFile = serde_json::from_str(&read(&file)?)
                .map_err(|e| Error::BadParams(format!("{}: {e}", file.display())))?;
            s = json(&toggle_file(input, &script)?);
        }
        Command::Generate { family, out } => {
            let spec: FamilySpec = family.join(" ").parse()?;
            s = match generate(&spec)? {
                Generated::Divide(d) => d.to_text(),
                Generated::Diagram(g) => json(&GraphFile {
                    labels: (0..g.len()).map(|i| format!("c{i}")).collect(),
                    edges: g.edges(),
                    arrows: None,
                    rotations: None,
                    tripod: None,
                }),
                Generated::Fixture(f) => json(&f),
            };
            if let Some(path) = out {
                std::fs::write(&path, &s).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                s = String::new();
            }
        }
    }
    Ok(s)
}

fn parse_ids(list: &str, bound: usize) -> Result<Vec<usize>> {
    let mut ids = Vec::new();
    for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| Error::BadParams(format!("'{part}' is not a vertex id")))?;
        if v >= bound {
            return Err(Error::BadParams(format!("vertex {v} is not bounded")));
        }
        ids.push(v);
    }
    Ok(ids)
}

fn graph_file(g: &AugmentedIntersectionGraph) -> GraphFile {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let map = g.map();
    GraphFile {
        labels: (0..n).map(|v| g.label(v)).collect(),
        edges: (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect(),
        arrows: None,
        rotations: Some((0..n).map(|v| g.rotation(v).iter().map(|&h| map.dest(h)).collect()).collect()),
        tripod: None,
    }
}

fn dot(g: &AugmentedIntersectionGraph) -> String {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut s = String::from("graph lambda {\n");
    for v in 0..n {
        writeln!(s, "  {v} [label=\"{}\"];", g.label(v)).unwrap();
    }
    for a in 0..n {
        for &b in adj[a].iter().filter(|&&b| a < b) {
            writeln!(s, "  {a} -- {b};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// Drops an `inf` vertex, runs the script (oriented when arrows are given)
/// and classifies the result.
pub fn toggle_file(input: GraphFile, script: &str) -> Result<GraphFile> {
    let keep: Vec<usize> = (0..input.labels.len()).filter(|&v| input.labels[v] != "inf").collect();
    let index = |v: usize| keep.iter().position(|&k| k == v);
    let remap = |pairs: &[(usize, usize)]| -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for &(a, b) in pairs {
            if a >= input.labels.len() || b >= input.labels.len() {
                return Err(Error::BadParams(format!("edge ({a}, {b}) is out of range")));
            }
            if let (Some(x), Some(y)) = (index(a), index(b)) {
                out.push((x, y));
            }
        }
        Ok(out)
    };
    let labels: Vec<String> = keep.iter().map(|&v| input.labels[v].clone()).collect();
    let steps = script.parse::<ToggleScript>()?.resolve(&labels)?;
    let (edges, arrows) = match &input.arrows {
        Some(arrows) => {
            let mut g = OrientedIntersectionGraph::from_arrows(labels.clone(), &remap(arrows)?)?;
            for &(a, b) in &steps {
                g = g.toggle(a, b)?;
            }
            (g.graph().edges(), Some(g.arrows()))
        }
        None => {
            let mut g = Graph::from_edges(labels.len(), &remap(&input.edges)?)?;
            for &(a, b) in &steps {
                g = g.toggle(a, b)?;
            }
            (g.edges(), None)
        }
    };
    let g = Graph::from_edges(labels.len(), &edges)?;
    Ok(GraphFile {
        labels,
        edges,
        arrows,
        rotations: None,
        tripod: g.tripod_type().map(|t| t.to_string()),
    })
}
