use std::fmt::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::json;
use tropmod::complex::report::{cell_reports, LinkReport, OracleReport, PosetReport};
use tropmod::complex::{
    barycentric_oracle, build_strata_poset_with, cells_of, chain_complex_of, ComplexError,
};
use tropmod::graph::io::{graph_to_dot, GraphJson};
use tropmod::graph::{enumerate_stable_graphs_with, EnumerationLimits, GraphError};
use tropmod::marked::io::{marked_from_json, marked_to_dot, MarkingJson};
use tropmod::marked::{
    blowups, equivalent_markings, project_to_link, stabilizer, MarkedError, MarkedGraph,
};
use tropmod::trop::{cgp_lambda, CurveSystem, Epsilon, TropError};

use crate::{Cli, Command, Format, MarkedOp, ReportKind};

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            message: message.to_string(),
            code: 2,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let code = if matches!(e, GraphError::ResourceBound(_)) { 3 } else { 2 };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Graph(g) => g.into(),
            ComplexError::ResourceBound(_) => Failure {
                message: e.to_string(),
                code: 3,
            },
            other => Failure::input(other),
        }
    }
}

impl From<MarkedError> for Failure {
    fn from(e: MarkedError) -> Self {
        match e {
            MarkedError::Graph(g) => g.into(),
            other => Failure::input(other),
        }
    }
}

impl From<TropError> for Failure {
    fn from(e: TropError) -> Self {
        Failure::input(e)
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, code: 0 })
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn no_dot(what: &str) -> Failure {
    Failure::input(format!("no DOT output for {what}"))
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

pub fn run(cli: &Cli) -> Result<Output> {
    let limits = EnumerationLimits {
        max_classes: cli.max_cells,
    };
    match &cli.command {
        Command::Enumerate { g, n, pure } => enumerate(cli.format, *g, *n, *pure, limits),
        Command::Report { kind, g, n } => report(cli, *kind, *g, *n, limits),
        Command::Marked { op } => marked(cli.format, op),
        Command::Lambda { file, eps } => lambda(cli, file, eps),
    }
}

fn enumerate(format: Format, g: u32, n: u32, pure: bool, limits: EnumerationLimits) -> Result<Output> {
    let mut graphs = enumerate_stable_graphs_with(g, n, pure, limits)?;
    graphs.sort_by_key(|c| c.hash_value());
    match format {
        Format::Json => {
            let list: Vec<_> = graphs
                .iter()
                .map(|c| json!({"hash": c.hash_hex(), "graph": GraphJson::from_graph(c.graph(), None)}))
                .collect();
            ok(to_json(&json!({"g": g, "n": n, "count": graphs.len(), "graphs": list})))
        }
        Format::Dot => ok(graphs
            .iter()
            .map(|c| graph_to_dot(c.graph(), &format!("g_{}", c.hash_hex()), &|_| None))
            .collect()),
        Format::Text => {
            let mut out = plural(graphs.len(), "class", "classes") + "\n";
            for c in &graphs {
                writeln!(
                    out,
                    "{} edges={} weights={:?}",
                    c.hash_hex(),
                    c.num_edges(),
                    c.weights()
                )
                .unwrap();
            }
            ok(out)
        }
    }
}

fn report(cli: &Cli, kind: ReportKind, g: u32, n: u32, limits: EnumerationLimits) -> Result<Output> {
    let poset = build_strata_poset_with(g, n, limits)?;
    match kind {
        ReportKind::Poset => {
            let r = PosetReport::new(&poset);
            match cli.format {
                Format::Json => ok(to_json(&r)),
                Format::Dot => ok(poset.to_dot()),
                Format::Text => {
                    let mut out = format!(
                        "{}, {}\n",
                        plural(r.nodes.len(), "node", "nodes"),
                        plural(r.covers.len(), "cover", "covers")
                    );
                    for node in &r.nodes {
                        writeln!(out, "{} edges={}", node.hash, node.edges).unwrap();
                    }
                    for [a, b] in &r.covers {
                        writeln!(out, "{a} -> {b}").unwrap();
                    }
                    ok(out)
                }
            }
        }
        ReportKind::Link => {
            let cells = cells_of(&poset);
            let r = LinkReport {
                g,
                n,
                cells: cell_reports(&cells),
            };
            match cli.format {
                Format::Json => ok(to_json(&r)),
                Format::Dot => {
                    let mut sorted = cells.clone();
                    sorted.sort_by_key(|c| c.graph.hash_value());
                    ok(sorted
                        .iter()
                        .map(|c| graph_to_dot(c.graph.graph(), &format!("g_{}", c.graph.hash_hex()), &|_| None))
                        .collect())
                }
                Format::Text => {
                    let mut out = plural(r.cells.len(), "cell", "cells") + "\n";
                    for c in &r.cells {
                        writeln!(out, "{} dim={}", c.hash, c.dim).unwrap();
                    }
                    ok(out)
                }
            }
        }
        ReportKind::Homology => {
            let cx = chain_complex_of(&poset);
            let mut r = cx.report();
            r.oracle_agrees = match barycentric_oracle(g, n, cli.max_cells) {
                Ok(o) => Some(o.betti_rational() == r.betti && o.euler() == r.euler),
                Err(ComplexError::ResourceBound(_)) => None,
                Err(e) => return Err(e.into()),
            };
            match cli.format {
                Format::Json => ok(to_json(&r)),
                Format::Dot => Err(no_dot("homology")),
                Format::Text => {
                    let mut out = String::new();
                    if r.empty {
                        out.push_str("empty complex\n");
                    }
                    writeln!(out, "betti {:?}", r.betti).unwrap();
                    writeln!(out, "euler {}", r.euler).unwrap();
                    let status = match r.oracle_agrees {
                        Some(true) => "agrees",
                        Some(false) => "DISAGREES",
                        None => "skipped (resource bound)",
                    };
                    writeln!(out, "oracle {status}").unwrap();
                    ok(out)
                }
            }
        }
        ReportKind::Oracle => {
            let o = barycentric_oracle(g, n, cli.max_cells)?;
            let r = OracleReport::new(&o);
            match cli.format {
                Format::Json => ok(to_json(&r)),
                Format::Dot => Err(no_dot("the oracle")),
                Format::Text => ok(format!(
                    "simplices {:?}\nbetti {:?}\neuler {}\n",
                    r.simplex_counts, r.betti, r.euler
                )),
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_marked(path: &Path) -> Result<MarkedGraph> {
    marked_from_json(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn marked(format: Format, op: &MarkedOp) -> Result<Output> {
    match op {
        MarkedOp::Star { file } => {
            let m = read_marked(file)?;
            let mut star = blowups(&m)?;
            star.sort_by_key(|b| {
                (
                    tropmod::graph::canonical_form(b.graph()).0.hash_value(),
                    serde_json::to_string(&MarkingJson::from_marked(b)).unwrap(),
                )
            });
            match format {
                Format::Json => {
                    let list: Vec<MarkingJson> = star.iter().map(MarkingJson::from_marked).collect();
                    ok(to_json(&json!({"count": star.len(), "blowups": list})))
                }
                Format::Dot => ok(star
                    .iter()
                    .enumerate()
                    .map(|(i, b)| marked_to_dot(b, &format!("blowup_{i}")))
                    .collect()),
                Format::Text => {
                    let mut out = plural(star.len(), "blow-up", "blow-ups") + "\n";
                    for b in &star {
                        let words: Vec<String> = b.loop_words().iter().map(|w| w.to_string()).collect();
                        writeln!(
                            out,
                            "{} vertices={} loops=[{}]",
                            tropmod::graph::canonical_form(b.graph()).0.hash_hex(),
                            b.graph().num_vertices(),
                            words.join(", ")
                        )
                        .unwrap();
                    }
                    ok(out)
                }
            }
        }
        MarkedOp::Stabilizer { file } => {
            let m = read_marked(file)?;
            let s = stabilizer(&m);
            match format {
                Format::Json => {
                    let elements: Vec<_> = s
                        .elements
                        .iter()
                        .map(|e| {
                            json!({
                                "map": e.iso.as_slice(),
                                "images": e.images.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let generators: Vec<_> = s.generators.iter().map(|g| g.as_slice()).collect();
                    ok(to_json(&json!({"order": s.order(), "generators": generators, "elements": elements})))
                }
                Format::Dot => Err(no_dot("stabilizers")),
                Format::Text => {
                    let mut out = format!("order {}\n", s.order());
                    for e in &s.elements {
                        let images: Vec<String> = e.images.iter().map(|w| w.to_string()).collect();
                        writeln!(out, "{} : [{}]", e.iso, images.join(", ")).unwrap();
                    }
                    ok(out)
                }
            }
        }
        MarkedOp::Project { file } => {
            let m = read_marked(file)?;
            let p = project_to_link(&m)?;
            let c = p.graph();
            match format {
                Format::Json => ok(to_json(&json!({
                    "hash": c.hash_hex(),
                    "pure": p.is_pure(),
                    "graph": GraphJson::from_graph(c.graph(), None),
                }))),
                Format::Dot => ok(graph_to_dot(c.graph(), "point", &|_| None)),
                Format::Text => ok(format!(
                    "{} pure={} edges={} weights={:?}\n",
                    c.hash_hex(),
                    p.is_pure(),
                    c.num_edges(),
                    c.weights()
                )),
            }
        }
        MarkedOp::Equiv { first, second } => {
            let a = read_marked(first)?;
            let b = read_marked(second)?;
            let iso = equivalent_markings(&a, &b)?;
            let code = if iso.is_some() { 0 } else { 1 };
            let text = match format {
                Format::Json => to_json(&json!({
                    "equivalent": iso.is_some(),
                    "iso": iso.as_ref().map(|i| i.as_slice().to_vec()),
                })),
                Format::Dot => return Err(no_dot("equivalence")),
                Format::Text => match &iso {
                    Some(i) => format!("equivalent via {i}\n"),
                    None => "not equivalent\n".to_string(),
                },
            };
            Ok(Output { text, code })
        }
    }
}

fn lambda(cli: &Cli, file: &Path, eps: &str) -> Result<Output> {
    let cs = CurveSystem::from_json(&read(file)?)?;
    let eps: Epsilon = eps.parse()?;
    let p = cgp_lambda(&cs, &eps, cli.precision)?;
    let c = p.graph();
    match cli.format {
        Format::Json => ok(to_json(&json!({
            "hash": c.hash_hex(),
            "pure": p.is_pure(),
            "graph": GraphJson::from_graph(c.graph(), None),
        }))),
        Format::Dot => ok(graph_to_dot(c.graph(), "lambda", &|_| None)),
        Format::Text => {
            let mut out = format!("{} edges={} weights={:?}\n", c.hash_hex(), c.num_edges(), c.weights());
            for (e, l) in c.lengths().into_iter().flatten() {
                writeln!(out, "{e} {l}").unwrap();
            }
            ok(out)
        }
    }
}
