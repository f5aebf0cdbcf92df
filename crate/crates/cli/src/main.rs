//! Command-line driver: face listings, surface parameters, width
//! certificates, ΔY-class pipelines, minor certificates and the property
//! suites, all as deterministic plain-text or JSON reports.
//!
//! Exit codes: 0 success, 1 property failure, 2 input or gate error,
//! 3 search budget exhaustion.

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::process::ExitCode;
use surfgraph::curves::{exhaustive_width_oracle, face_width, nonseparating_face_width, Width, WidthClass};
use surfgraph::dyclass::{enumerate_class, seed_gate, verify_projective_theorem};
use surfgraph::embed::{surface, trace_facial_walks, EmbeddedGraph};
use surfgraph::graph::{from_graph6, to_graph6, SimpleGraph};
use surfgraph::minors::{has_minor, SearchOutcome, DEFAULT_BUDGET};
use surfgraph::radial::radial_graph;
use surfgraph::{suites, Error};

#[derive(Parser)]
#[command(name = "surfgraph", about = "graphs embedded on surfaces: widths, surgery, minors")]
struct Cli {
    /// emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the facial walks of an embedding
    Faces { path: String },
    /// Euler genus and orientability
    Genus {
        path: String,
        /// report disconnected input per component instead of failing
        #[arg(long)]
        per_component: bool,
    },
    /// Face-width or non-separating face-width with a chain certificate
    Width {
        path: String,
        #[arg(long, value_enum, default_value_t = WidthKind::Fw)]
        class: WidthKind,
        /// cross-check with the exhaustive cycle oracle (size-capped)
        #[arg(long)]
        oracle: bool,
    },
    /// Enumerate the ΔY/YΔ class of a gate-checked seed
    Dyw {
        seed_path: String,
        #[arg(long)]
        expect_count: Option<usize>,
        /// count triangle-free members
        #[arg(long)]
        triangle_free: bool,
        /// find a verified K6 minor certificate for every member
        #[arg(long)]
        certify_k6: bool,
        /// export members as graph6 plus the provenance edges
        #[arg(long)]
        export: bool,
    },
    /// Search for a minor with a branch-set certificate
    Minor {
        path: String,
        /// k6, k5, k4, or g6:<graph6-string>
        #[arg(long, default_value = "k6")]
        target: String,
    },
    /// Run a named property suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// replay one cylinder instance from an .emb file plus its cyl sidecar
        #[arg(long, num_args = 2, value_names = ["EMB", "CYL"])]
        replay: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WidthKind {
    Fw,
    Nsfw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pp,
    Cylinder,
    Cutwidth,
    Threepath,
    Menger,
}

struct Report {
    command: String,
    results: BTreeMap<String, String>,
    certificates: Vec<String>,
}

impl Report {
    fn new(command: String) -> Self {
        Report { command, results: BTreeMap::new(), certificates: Vec::new() }
    }

    fn put(&mut self, key: &str, value: impl ToString) {
        self.results.insert(key.to_string(), value.to_string());
    }

    fn render(&self, json: bool, inputs: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.command.as_bytes());
        hasher.update(inputs.as_bytes());
        let hash = hex(&hasher.finalize());
        if json {
            let mut obj = serde_json::Map::new();
            obj.insert("command".into(), self.command.clone().into());
            obj.insert("config_hash".into(), hash.into());
            let mut results = serde_json::Map::new();
            for (k, v) in &self.results {
                results.insert(k.clone(), v.clone().into());
            }
            obj.insert("results".into(), serde_json::Value::Object(results));
            obj.insert(
                "certificates".into(),
                serde_json::Value::Array(
                    self.certificates.iter().map(|c| c.clone().into()).collect(),
                ),
            );
            serde_json::to_string_pretty(&serde_json::Value::Object(obj)).unwrap()
        } else {
            let mut out = format!("command: {}\nconfig-hash: {hash}\n", self.command);
            for (k, v) in &self.results {
                out.push_str(&format!("{k}: {v}\n"));
            }
            for c in &self.certificates {
                out.push_str(c);
                if !c.ends_with('\n') {
                    out.push('\n');
                }
            }
            out
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn budget() -> u64 {
    std::env::var("SURFGRAPH_NODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn read_embedding(path: &str) -> Result<(EmbeddedGraph, String), (String, u8)> {
    let text = std::fs::read_to_string(path).map_err(|e| (format!("cannot read {path}: {e}"), 2))?;
    let emb = surfgraph::emb_io::from_emb(&text).map_err(|e| (format!("{e}"), 2))?;
    Ok((emb, text))
}

fn read_graph(path: &str) -> Result<(SimpleGraph, String), (String, u8)> {
    let text = std::fs::read_to_string(path).map_err(|e| (format!("cannot read {path}: {e}"), 2))?;
    if text.trim_start().starts_with("emb") {
        let emb = surfgraph::emb_io::from_emb(&text).map_err(|e| (format!("{e}"), 2))?;
        Ok((emb.to_simple_graph(), text))
    } else {
        let g = from_graph6(text.trim()).map_err(|e| (format!("{e}"), 2))?;
        Ok((g, text))
    }
}

fn width_to_string(w: Width) -> String {
    match w {
        Width::Finite(v) => v.to_string(),
        Width::Unbounded => "unbounded".into(),
    }
}

fn run(cli: &Cli) -> Result<(Report, String), (String, u8)> {
    match &cli.command {
        Command::Faces { path } => {
            let (emb, input) = read_embedding(path)?;
            let faces = trace_facial_walks(&emb);
            let mut report = Report::new(format!("faces {path}"));
            report.put("faces", faces.count());
            report.put("vertices", emb.vertex_count());
            report.put("edges", emb.edge_count());
            for (f, walk) in faces.walks.iter().enumerate() {
                let verts: Vec<String> =
                    walk.vertices(&emb).map(|v| v.to_string()).collect();
                report.certificates.push(format!("face {f}: {}", verts.join(" ")));
            }
            Ok((report, input))
        }
        Command::Genus { path, per_component } => {
            let (emb, input) = read_embedding(path)?;
            let mut report = Report::new(format!("genus {path}"));
            if emb.is_connected() {
                let s = surface(&emb).map_err(|e| (format!("{e}"), 2))?;
                report.put("euler-genus", s.euler_genus);
                report.put("orientable", s.orientable);
                report.put("components", 1);
            } else if *per_component {
                let comps = emb.split_components();
                report.put("components", comps.len());
                for (i, (c, _)) in comps.iter().enumerate() {
                    let s = surface(c).map_err(|e| (format!("{e}"), 2))?;
                    report.put(&format!("component-{i}-euler-genus"), s.euler_genus);
                    report.put(&format!("component-{i}-orientable"), s.orientable);
                }
            } else {
                return Err(("embedding is disconnected (use --per-component)".into(), 2));
            }
            Ok((report, input))
        }
        Command::Width { path, class, oracle } => {
            let (emb, input) = read_embedding(path)?;
            if !emb.is_connected() {
                return Err(("embedding is disconnected".into(), 2));
            }
            let which = match class {
                WidthKind::Fw => WidthClass::NonContractible,
                WidthKind::Nsfw => WidthClass::NonSeparating,
            };
            let cert = match class {
                WidthKind::Fw => face_width(&emb),
                WidthKind::Nsfw => nonseparating_face_width(&emb),
            }
            .map_err(|e| (format!("{e}"), 2))?;
            let mut report = Report::new(format!("width {path}"));
            report.put("class", match class {
                WidthKind::Fw => "fw",
                WidthKind::Nsfw => "nsfw",
            });
            report.put("width", width_to_string(cert.value));
            if let Some(w) = &cert.witness {
                report.certificates.push(w.chain.to_line());
            }
            if *oracle {
                let r = radial_graph(&emb);
                if r.node_count() <= 60 {
                    let cap = match cert.value {
                        Width::Finite(v) => 2 * v,
                        Width::Unbounded => 2,
                    };
                    let oracle_width =
                        exhaustive_width_oracle(&r, which, cap).map_err(|e| (format!("{e}"), 2))?;
                    report.put("oracle-width", width_to_string(oracle_width));
                    if oracle_width != cert.value {
                        return Err(("oracle disagrees with the search".into(), 1));
                    }
                } else {
                    report.put("oracle-width", "skipped (size cap)");
                }
            }
            Ok((report, input))
        }
        Command::Dyw { seed_path, expect_count, triangle_free, certify_k6, export } => {
            let (emb, input) = read_embedding(seed_path)?;
            let gate = seed_gate(&emb).map_err(|e| (format!("gate failure: {e}"), 2))?;
            let mut report = Report::new(format!("dyw {seed_path}"));
            report.put("gate-fw", width_to_string(gate.fw));
            report.put("gate-euler-genus", gate.euler_genus);
            let class = enumerate_class(&emb.to_simple_graph(), 2000).map_err(|e| match e {
                Error::BudgetExceeded => ("class budget exhausted".to_string(), 3u8),
                e => (format!("{e}"), 2),
            })?;
            report.put("class-size", class.len());
            if let Some(expected) = expect_count {
                report.put("expected", expected);
                if class.len() != *expected {
                    return Err((format!("class has {} members, expected {expected}", class.len()), 1));
                }
            }
            if *triangle_free {
                report.put("triangle-free", class.triangle_free_members().len());
            }
            if *certify_k6 {
                let cert = verify_projective_theorem(&class, budget()).map_err(|e| match e {
                    Error::BudgetExceeded => ("certification budget exhausted".to_string(), 3u8),
                    e => (format!("{e}"), 1),
                })?;
                report.put("certified", format!("{}/{}", cert.certified.len(), class.len()));
            }
            if *export {
                for m in &class.members {
                    report.certificates.push(to_graph6(&m.graph));
                }
                for &(i, mv, j) in &class.provenance {
                    report.certificates.push(format!("provenance {i} {mv:?} {j}"));
                }
            }
            Ok((report, input))
        }
        Command::Minor { path, target } => {
            let (g, input) = read_graph(path)?;
            let h = match target.as_str() {
                "k6" => SimpleGraph::complete(6),
                "k5" => SimpleGraph::complete(5),
                "k4" => SimpleGraph::complete(4),
                other => match other.strip_prefix("g6:") {
                    Some(code) => from_graph6(code).map_err(|e| (format!("{e}"), 2))?,
                    None => return Err((format!("unknown target {other}"), 2)),
                },
            };
            let mut report = Report::new(format!("minor {path} target {target}"));
            match has_minor(&g, &h, budget()) {
                SearchOutcome::Found(model) => {
                    report.put("result", "found");
                    report.certificates.push(model.serialize());
                }
                SearchOutcome::Absent => report.put("result", "none"),
                SearchOutcome::Unknown => {
                    return Err(("unknown (budget exhausted)".into(), 3));
                }
            }
            Ok((report, input))
        }
        Command::Verify { suite, seed, trials, replay } => {
            if let Some(paths) = replay {
                if !matches!(suite, Suite::Cylinder) {
                    return Err(("--replay only applies to the cylinder suite".into(), 2));
                }
                let emb_text = std::fs::read_to_string(&paths[0])
                    .map_err(|e| (format!("cannot read {}: {e}", paths[0]), 2))?;
                let cyl_text = std::fs::read_to_string(&paths[1])
                    .map_err(|e| (format!("cannot read {}: {e}", paths[1]), 2))?;
                let inst = surfgraph::linkage::CylinderGridInstance::from_sidecar(&emb_text, &cyl_text)
                    .map_err(|e| (format!("{e}"), 2))?;
                let case = if inst.chords.len() == 3 {
                    surfgraph::linkage::TheoremCase::II
                } else {
                    surfgraph::linkage::TheoremCase::I
                };
                let out = surfgraph::linkage::build_k6_on_cylinder(&inst, case, budget())
                    .map_err(|e| (format!("{e}"), 1))?;
                let mut report = Report::new(format!("verify cylinder replay {} {}", paths[0], paths[1]));
                report.put("branch", &out.branch);
                report.put("verified", true);
                report.certificates.push(out.model.serialize());
                return Ok((report, format!("{emb_text}{cyl_text}")));
            }
            let seed_input = format!("seed={seed} trials={trials}");
            let mut report = Report::new(format!("verify {}", match suite {
                Suite::Pp => "pp",
                Suite::Cylinder => "cylinder",
                Suite::Cutwidth => "cutwidth",
                Suite::Threepath => "threepath",
                Suite::Menger => "menger",
            }));
            report.put("seed", seed);
            match suite {
                Suite::Pp => {
                    let rep = suites::pp_suite(budget()).map_err(|e| match e {
                        Error::BudgetExceeded => ("budget exhausted".to_string(), 3u8),
                        e => (format!("{e}"), 1),
                    })?;
                    report.put("class-size", rep.class_size);
                    report.put("triangle-free", rep.triangle_free);
                    report.put("certified", format!("{}/{}", rep.certified, rep.class_size));
                    if rep.certified != rep.class_size {
                        return Err(("certification incomplete".into(), 1));
                    }
                }
                Suite::Cylinder => {
                    let rep = suites::cylinder_suite(*trials, *seed, budget())
                        .map_err(|e| (format!("{e}"), 1))?;
                    report.put("trials", rep.trials);
                    report.put("verified", rep.verified);
                    for (branch, count) in &rep.case_coverage {
                        report.put(&format!("case-{branch}"), count);
                    }
                    if rep.verified != rep.trials {
                        return Err(("sweep failures".into(), 1));
                    }
                }
                Suite::Cutwidth => {
                    let rep =
                        suites::cutwidth_suite(*trials, *seed).map_err(|e| (format!("{e}"), 1))?;
                    report.put("fixtures", rep.fixtures_checked);
                    report.put("violations", rep.violations);
                    if rep.violations > 0 {
                        return Err(("width inequality violated".into(), 1));
                    }
                }
                Suite::Threepath => {
                    let rep =
                        suites::threepath_suite(*trials, *seed).map_err(|e| (format!("{e}"), 1))?;
                    report.put("thetas", rep.thetas_checked);
                    report.put("violations", rep.violations);
                    if rep.violations > 0 {
                        return Err(("parity law violated".into(), 1));
                    }
                }
                Suite::Menger => {
                    let rep =
                        suites::menger_suite(*trials, *seed).map_err(|e| (format!("{e}"), 1))?;
                    report.put("instances", rep.instances);
                    report.put("duality-violations", rep.duality_violations);
                    report.put("separator-misses", rep.separator_misses);
                    report.put("torus-checks", rep.torus_checks);
                    report.put("torus-violations", rep.torus_violations);
                    if rep.duality_violations + rep.separator_misses + rep.torus_violations > 0 {
                        return Err(("menger property violated".into(), 1));
                    }
                }
            }
            Ok((report, seed_input))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, inputs)) => {
            print!("{}", report.render(cli.json, &inputs));
            ExitCode::SUCCESS
        }
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
