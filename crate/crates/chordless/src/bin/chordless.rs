use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chordless::audit::{run_audit, AuditConfig};
use chordless::edge_coloring::ColoringRoute;
use chordless::graph::{generate, load_edge_list, GeneratorSpec, Graph};
use chordless::strong_coloring::{
    exact_chi_s, strong_color_chordless, tightness_audit, verify_strong, ColorPair, OracleOutcome,
    StrongColoringError, StrongEdgeColoring, StrongVerifyError, DEFAULT_ORACLE_EDGE_CAP,
};
use chordless::structure::{blocks, is_chordless, is_minimally_2connected};
use chordless::{EdgePair, DEFAULT_BUDGET_NODES};

const EXIT_FALSE: u8 = 1;
const EXIT_REFUSED: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "chordless",
    version,
    about = "Strong edge coloring of chordless graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file; "-" reads stdin
    #[arg(long, conflicts_with = "family")]
    input: Option<String>,
    /// Built-in generator family instead of a file
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Maximum degree, for --family tightness
    #[arg(long)]
    delta: Option<usize>,
    /// Size parameter, for sized families
    #[arg(long)]
    n: Option<usize>,
    /// Seed for randomized families
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Star,
    Tightness,
    RandomTree,
    RandomChordless,
    TreeEars,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the input is chordless; report block structure
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Strong-color a chordless input with at most 3*max-degree colors
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Node budget for the exact edge-coloring search
        #[arg(long, env = "CHORDLESS_BUDGET_NODES", default_value_t = DEFAULT_BUDGET_NODES)]
        budget_nodes: u64,
    },
    /// Check a coloring file against a graph
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Coloring JSON as produced by `color` or `oracle`
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact strong chromatic index by branch and bound
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, env = "CHORDLESS_BUDGET_NODES", default_value_t = DEFAULT_BUDGET_NODES)]
        budget_nodes: u64,
        /// Refuse graphs with more edges than this
        #[arg(long, default_value_t = DEFAULT_ORACLE_EDGE_CAP)]
        oracle_cap: usize,
    },
    /// Run the structural check suites over a seeded corpus
    Audit {
        /// Corpus size; 0 yields a trivially passing report
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, env = "CHORDLESS_BUDGET_NODES", default_value_t = DEFAULT_BUDGET_NODES)]
        budget_nodes: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_EDGE_CAP)]
        oracle_cap: usize,
        /// Audit the tightness family at this degree instead of the corpus
        #[arg(long)]
        delta: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit a generated graph as an edge list
    Generate {
        #[command(flatten)]
        input: InputArgs,
        /// Write the edge list here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Recognize { input, out } => {
            let g = resolve_input(&input)?;
            cmd_recognize(&g, &out)
        }
        Command::Color {
            input,
            out,
            budget_nodes,
        } => {
            let g = resolve_input(&input)?;
            cmd_color(&g, budget_nodes, &out)
        }
        Command::Verify {
            input,
            coloring,
            out,
        } => {
            let g = resolve_input(&input)?;
            let text = std::fs::read_to_string(&coloring)
                .map_err(|e| format!("reading {}: {e}", coloring.display()))?;
            cmd_verify(&g, &text, &out)
        }
        Command::Oracle {
            input,
            out,
            budget_nodes,
            oracle_cap,
        } => {
            let g = resolve_input(&input)?;
            cmd_oracle(&g, oracle_cap, budget_nodes, &out)
        }
        Command::Audit {
            count,
            seed,
            budget_nodes,
            oracle_cap,
            delta,
            out,
        } => cmd_audit(count, seed, budget_nodes, oracle_cap, delta, &out),
        Command::Generate { input, output } => {
            let g = resolve_input(&input)?;
            let text = g.to_edge_list();
            emit_raw(&text, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn resolve_input(input: &InputArgs) -> Result<Graph, String> {
    match (&input.input, input.family) {
        (Some(path), None) => {
            let text = if path == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| format!("reading stdin: {e}"))?;
                s
            } else {
                std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
            };
            let loaded = load_edge_list(&text).map_err(|e| e.to_string())?;
            Ok(loaded.graph.into_unlabelled())
        }
        (None, Some(family)) => {
            let need_n = || {
                input
                    .n
                    .ok_or_else(|| "--n is required for this family".to_string())
            };
            let spec = match family {
                Family::Path => GeneratorSpec::Path { n: need_n()? },
                Family::Cycle => GeneratorSpec::Cycle { n: need_n()? },
                Family::Star => GeneratorSpec::Star { leaves: need_n()? },
                Family::Tightness => GeneratorSpec::Tightness {
                    delta: input
                        .delta
                        .ok_or_else(|| "--delta is required for tightness".to_string())?,
                },
                Family::RandomTree => GeneratorSpec::RandomTree {
                    n: need_n()?,
                    seed: input.seed,
                },
                Family::RandomChordless => {
                    let n = need_n()?;
                    return Ok(chordless::corpus::random_chordless(n, 2 * n, input.seed));
                }
                Family::TreeEars => {
                    let n = need_n()?;
                    return Ok(chordless::corpus::tree_with_ears(n, 2, input.seed));
                }
            };
            generate(&spec).map_err(|e| e.to_string())
        }
        (None, None) => Err("provide --input FILE or --family NAME".into()),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    }
}

fn emit_raw(text: &str, output: Option<&std::path::Path>) -> Result<(), String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit(json: &serde_json::Value, text: String, out: &OutputArgs) -> Result<(), String> {
    let rendered = match out.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(json).expect("serializable")
        ),
        Format::Text => {
            if text.ends_with('\n') {
                text
            } else {
                format!("{text}\n")
            }
        }
    };
    emit_raw(&rendered, out.output.as_deref())
}

fn cmd_recognize(g: &Graph, out: &OutputArgs) -> Result<ExitCode, String> {
    let verdict = is_chordless(g);
    let d = blocks(g);
    let min2c = is_minimally_2connected(g);
    let json = serde_json::json!({
        "chordless": verdict.is_ok(),
        "witness": verdict.as_ref().err(),
        "n": g.n(),
        "m": g.m(),
        "max_degree": g.max_degree(),
        "blocks": d.blocks.len(),
        "cutvertices": d.cutvertices.len(),
        "minimally_2connected": min2c,
    });
    let text = match &verdict {
        Ok(()) => format!(
            "chordless: true, Δ={}, blocks={}, cutvertices={}, minimally-2-connected: {}",
            g.max_degree(),
            d.blocks.len(),
            d.cutvertices.len(),
            min2c
        ),
        Err(w) => format!(
            "chordless: false, chord {}-{} of cycle {:?}",
            w.chord.u(),
            w.chord.v(),
            w.cycle
        ),
    };
    emit(&json, text, out)?;
    Ok(if verdict.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FALSE)
    })
}

fn route_name(route: Option<ColoringRoute>) -> &'static str {
    match route {
        None => "paths-cycles",
        Some(ColoringRoute::ExactDelta) => "exact-delta",
        Some(ColoringRoute::VizingInfeasible) => "vizing-infeasible",
        Some(ColoringRoute::VizingBudget) => "vizing-budget",
    }
}

fn coloring_json(c: &StrongEdgeColoring, bound_claimed: usize, path: &str) -> serde_json::Value {
    serde_json::json!({
        "edges": c
            .entries()
            .map(|(e, cp)| serde_json::json!([e.u(), e.v(), [cp.class, cp.shade], cp.flat]))
            .collect::<Vec<_>>(),
        "colors_used": c.colors_used(),
        "bound_claimed": bound_claimed,
        "edge_coloring_path": path,
    })
}

fn cmd_color(g: &Graph, budget_nodes: u64, out: &OutputArgs) -> Result<ExitCode, String> {
    match strong_color_chordless(g, budget_nodes) {
        Ok(result) => {
            let path = route_name(result.report.edge_coloring_route);
            let mut json = coloring_json(&result.coloring, result.report.bound_claimed, path);
            json["report"] = serde_json::to_value(&result.report).expect("serializable");
            let text = format!(
                "colors used: {} (bound {}), edge-coloring path: {}, Δ={}",
                result.report.colors_used, result.report.bound_claimed, path, result.report.delta
            );
            emit(&json, text, out)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(StrongColoringError::NotChordless { chord, witness }) => {
            let json = serde_json::json!({
                "refused": "not chordless",
                "chord": [chord.u(), chord.v()],
                "cycle": witness.cycle,
            });
            let text = format!(
                "refused: graph has chord {}-{} of cycle {:?}",
                chord.u(),
                chord.v(),
                witness.cycle
            );
            emit(&json, text, out)?;
            Ok(ExitCode::from(EXIT_REFUSED))
        }
        Err(StrongColoringError::NoEdges) => {
            emit(
                &serde_json::json!({"refused": "no edges"}),
                "refused: graph has no edges".into(),
                out,
            )?;
            Ok(ExitCode::from(EXIT_REFUSED))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn parse_coloring(text: &str) -> Result<StrongEdgeColoring, String> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("coloring is not JSON: {e}"))?;
    let edges = v
        .get("edges")
        .and_then(|e| e.as_array())
        .ok_or("coloring JSON needs an \"edges\" array")?;
    let mut colors = BTreeMap::new();
    for entry in edges {
        let row = entry.as_array().ok_or("edge entry must be an array")?;
        if row.len() != 4 {
            return Err("edge entry must be [u, v, [class, shade], flat]".into());
        }
        let num =
            |v: &serde_json::Value| v.as_u64().map(|x| x as usize).ok_or("expected an integer");
        let (u, v_) = (num(&row[0])?, num(&row[1])?);
        let pair = row[2]
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or("color pair must be [class, shade]")?;
        if u == v_ {
            return Err(format!("self-loop {u}-{v_} in coloring"));
        }
        colors.insert(
            EdgePair::new(u, v_),
            ColorPair {
                class: num(&pair[0])?,
                shade: num(&pair[1])?,
                flat: num(&row[3])?,
            },
        );
    }
    Ok(StrongEdgeColoring::new(colors))
}

fn cmd_verify(g: &Graph, coloring_text: &str, out: &OutputArgs) -> Result<ExitCode, String> {
    let coloring = parse_coloring(coloring_text)?;
    match verify_strong(g, &coloring) {
        Ok(()) => {
            emit(
                &serde_json::json!({"valid": true, "colors_used": coloring.colors_used()}),
                format!("valid: {} colors", coloring.colors_used()),
                out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Err(StrongVerifyError::UncoloredEdge(e)) => {
            emit(
                &serde_json::json!({"valid": false, "uncolored_edge": [e.u(), e.v()]}),
                format!("coverage gap: edge {}-{} is uncolored", e.u(), e.v()),
                out,
            )?;
            Ok(ExitCode::from(EXIT_ERROR))
        }
        Err(StrongVerifyError::Violation { e1, e2, kind }) => {
            emit(
                &serde_json::json!({"valid": false, "e1": [e1.u(), e1.v()],
                    "e2": [e2.u(), e2.v()], "kind": kind}),
                format!(
                    "violation: edges {}-{} and {}-{} share a color but conflict ({kind:?})",
                    e1.u(),
                    e1.v(),
                    e2.u(),
                    e2.v()
                ),
                out,
            )?;
            Ok(ExitCode::from(EXIT_FALSE))
        }
    }
}

fn cmd_oracle(
    g: &Graph,
    cap: usize,
    budget_nodes: u64,
    out: &OutputArgs,
) -> Result<ExitCode, String> {
    match exact_chi_s(g, cap, budget_nodes) {
        OracleOutcome::Exact(r) => {
            let mut json = coloring_json(&r.coloring, r.chi_s, "oracle");
            json["chi_s"] = serde_json::json!(r.chi_s);
            json["nodes"] = serde_json::json!(r.nodes);
            emit(
                &json,
                format!(
                    "strong chromatic index: {} ({} search nodes)",
                    r.chi_s, r.nodes
                ),
                out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        OracleOutcome::Bounds {
            lower,
            upper,
            reason,
        } => {
            emit(
                &serde_json::json!({"refused": reason, "lower": lower, "upper": upper}),
                format!("refused: {reason}; certified bounds {lower} <= chi_s <= {upper}"),
                out,
            )?;
            Ok(ExitCode::from(EXIT_REFUSED))
        }
    }
}

fn cmd_audit(
    count: usize,
    seed: u64,
    budget_nodes: u64,
    oracle_cap: usize,
    delta: Option<usize>,
    out: &OutputArgs,
) -> Result<ExitCode, String> {
    if let Some(delta) = delta {
        if delta < 2 {
            return Err("tightness audit needs --delta >= 2".into());
        }
        let audit = tightness_audit(delta, oracle_cap, budget_nodes);
        let text = format!(
            "tightness Δ={}: conflict graph complete: {}, oracle: {:?}, consistent: {}",
            audit.delta, audit.conflict_complete, audit.oracle_chi_s, audit.consistent
        );
        let ok = audit.consistent;
        emit(
            &serde_json::to_value(&audit).expect("serializable"),
            text,
            out,
        )?;
        return Ok(if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_FALSE)
        });
    }
    let report = run_audit(AuditConfig {
        count,
        seed,
        budget_nodes,
        oracle_cap,
    });
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!(
            "{}: {} ({} checks)\n",
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.checked
        ));
    }
    text.push_str(&format!(
        "audit over {} graphs: {}",
        report.corpus_graphs,
        if report.all_pass {
            "all pass"
        } else {
            "FAILED"
        }
    ));
    emit(
        &serde_json::to_value(&report).expect("serializable"),
        text,
        out,
    )?;
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FALSE)
    })
}
