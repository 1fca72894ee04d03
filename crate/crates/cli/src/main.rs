use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use cohomorder::cohom::{find_cohomomorphism, SearchOptions};
use cohomorder::graph::{
    max_independent_set, strong_product, to_graph6, EdgeListJson, Graph, SearchBudget, DEFAULT_NODE_BUDGET,
};
use cohomorder::lines::{build_line_table, verify_line_table, LineSeeds};
use cohomorder::lp::{fractional_clique_cover, DEFAULT_CLIQUE_BUDGET};
use cohomorder::pipeline::{
    demo_antichain, demo_counterexample, dyadic_approach, embed_preorder, verify_report, xif_derivation, EmbeddingReport,
    PipelineConfig, DEFAULT_ELEMENT_CAP,
};
use cohomorder::spectral::{materialize, GraphExpr};
use cohomorder::words::{FinitePreorder, PreorderJson};
use cohomorder::{Error, Rational};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "cohomorder", version, about = "Exact certificates for the asymptotic cohomomorphism order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a finite preorder and write the certified report
    Construct {
        /// Preorder JSON: {"elements": [..], "leq": [["x", "y"], ..]}
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
        /// Elements allowed in the input
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        element_cap: usize,
        /// Confirm negative pairs on tiny materializations by exhaustive search
        #[arg(long)]
        confirm_negative: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every certificate of a report
    Verify { report: PathBuf },
    /// Build and check a line table
    Table {
        #[command(flatten)]
        build: BuildArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph utilities on expressions such as 'F(5/2)^3' or 'F(3) * g | F(2)'
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
    /// Fixed constructions
    Demo {
        #[command(subcommand)]
        demo: DemoCmd,
        /// Print JSON instead of text
        #[arg(long, global = true)]
        json: bool,
        /// Also write the JSON document here
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Interval endpoints s t
    #[arg(long, num_args = 2, value_names = ["S", "T"])]
    interval: Option<Vec<String>>,
    /// Seed line and witness: a b r
    #[arg(long, num_args = 3, value_names = ["A", "B", "R"])]
    seeds: Option<Vec<String>>,
    #[arg(long)]
    depth: Option<usize>,
    /// Materialization cap in vertices
    #[arg(long, default_value_t = 5000)]
    cap: u64,
    /// Search node budget
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Generator expression (without g)
    #[arg(long, default_value = "F(5/2)")]
    generator: String,
}

#[derive(Args)]
struct GraphOpts {
    /// Generator substituted for g
    #[arg(long, default_value = "F(5/2)")]
    generator: String,
    #[arg(long, default_value_t = 5000)]
    cap: u64,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum GraphOp {
    /// Strong product of two expressions
    Product {
        left: String,
        right: String,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Independence number
    Alpha {
        expr: String,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Fractional clique covering number
    Cliquecover {
        expr: String,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// A cohomomorphism from the first graph to the second, or "none"
    Cohom {
        source: String,
        target: String,
        #[command(flatten)]
        opts: GraphOpts,
    },
    /// Write the materialized graph
    Export {
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: GraphOpts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Three incomparable graphs with comparable joins
    Counterexample,
    /// n pairwise incomparable graphs
    Antichain { n: usize },
    /// Derivation tree for 2^n / q
    Xif { p: u64, q: u64 },
    /// Dyadic approximation of p/q from below within eps
    Dyadic { p: u64, q: u64, eps: String },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BudgetExhausted { .. } => EXIT_BUDGET,
            Error::Invariant(_) | Error::Infeasible | Error::Unbounded => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct {
            input,
            build,
            element_cap,
            confirm_negative,
            out,
        } => construct(&input, &build, element_cap, confirm_negative, out.as_deref()),
        Command::Verify { report } => verify(&report),
        Command::Table { build, out } => table(&build, out.as_deref()),
        Command::Graph { op } => graph(op),
        Command::Demo { demo, json, out } => run_demo(demo, json, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| input_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn rational(s: &str) -> Result<Rational, Failure> {
    s.parse().map_err(|e: Error| input_error(format!("{s:?}: {e}")))
}

fn expression(s: &str) -> Result<GraphExpr, Failure> {
    s.parse().map_err(|e: Error| input_error(format!("{s:?}: {e}")))
}

fn generator_graph(s: &str, cap: u64) -> Result<Graph, Failure> {
    let e = expression(s)?;
    if e.uses_generator() {
        return Err(input_error("the generator expression cannot refer to g"));
    }
    Ok(materialize(&e, &Graph::empty(1), cap)?)
}

fn seeds(build: &BuildArgs) -> Result<LineSeeds, Failure> {
    let mut seeds = LineSeeds::default();
    if let Some(iv) = &build.interval {
        seeds.s = rational(&iv[0])?;
        seeds.t = rational(&iv[1])?;
    }
    if let Some(sd) = &build.seeds {
        seeds.a = rational(&sd[0])?;
        seeds.b = rational(&sd[1])?;
        seeds.r = rational(&sd[2])?;
    }
    seeds.validate()?;
    Ok(seeds)
}

fn construct(input: &Path, build: &BuildArgs, element_cap: usize, confirm_negative: bool, out: Option<&Path>) -> Outcome {
    let text = read(input)?;
    let json: PreorderJson =
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", input.display())))?;
    let preorder = FinitePreorder::from_json(&json)?;
    let generator = generator_graph(&build.generator, build.cap)?;
    let circulant = generator.is_rotation_invariant();
    let cfg = PipelineConfig {
        seeds: seeds(build)?,
        depth: build.depth,
        element_cap,
        materialize_cap: build.cap,
        budget: build.budget,
        confirm_negative,
        generator,
        ..PipelineConfig::default()
    };
    let report = embed_preorder(&preorder, &cfg)?;
    write_or_print(&report.to_json(), out)?;
    eprintln!(
        "{} elements, {} positive and {} negative certificates, table depth {}",
        preorder.len(),
        report.positive_count(),
        report.negative_count(),
        report.config.depth
    );
    if !circulant {
        eprintln!("note: generator is not circulant; negative certificates are model-only");
    }
    Ok(())
}

fn verify(path: &Path) -> Outcome {
    let text = read(path)?;
    let report = EmbeddingReport::from_json(&text)?;
    let outcome = verify_report(&report);
    if outcome.is_ok() {
        println!(
            "ok: {} pairs ({} positive, {} negative); {} fraction maps checked, {} relied on the floor rule; {} materialized maps checked",
            outcome.pairs_checked,
            outcome.positive,
            outcome.negative,
            outcome.steps_checked,
            outcome.steps_unchecked,
            outcome.materialized_checked
        );
        return Ok(());
    }
    for f in &outcome.failures {
        match &f.pair {
            Some([x, y]) => println!("FAIL ({x}, {y}): {}", f.reason),
            None => println!("FAIL report: {}", f.reason),
        }
    }
    Err(Failure {
        code: EXIT_VERIFY,
        message: format!("{} certificate checks failed", outcome.failures.len()),
    })
}

fn table(build: &BuildArgs, out: Option<&Path>) -> Outcome {
    let depth = build.depth.unwrap_or(3);
    let tbl = build_line_table(depth, &seeds(build)?)?;
    let report = verify_line_table(&tbl);
    write_or_print(&to_json(&tbl), out)?;
    eprintln!(
        "{} words, {} ordered pairs checked, {} violations, largest denominator {} bits",
        report.entries,
        report.pairs_checked,
        report.violations.len(),
        report.max_denominator_bits
    );
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: "line table violates its invariants".into(),
        })
    }
}

fn graph_of(expr: &str, opts: &GraphOpts) -> Result<Graph, Failure> {
    let generator = generator_graph(&opts.generator, opts.cap)?;
    Ok(materialize(&expression(expr)?, &generator, opts.cap)?)
}

fn graph(op: GraphOp) -> Outcome {
    match op {
        GraphOp::Product { left, right, opts } => {
            let (g, h) = (graph_of(&left, &opts)?, graph_of(&right, &opts)?);
            let order = g.order() as u64 * h.order() as u64;
            if order > opts.cap {
                return Err(Error::CapExceeded {
                    what: "product",
                    size: order as u128,
                    cap: opts.cap,
                }
                .into());
            }
            let p = strong_product(&g, &h);
            println!("order {}", p.order());
            println!("edges {}", p.edge_count());
            println!("{}", to_graph6(&p));
        }
        GraphOp::Alpha { expr, opts } => {
            let g = graph_of(&expr, &opts)?;
            println!("{}", max_independent_set(&g, SearchBudget::new(opts.budget))?.size());
        }
        GraphOp::Cliquecover { expr, opts } => {
            let g = graph_of(&expr, &opts)?;
            println!("{}", fractional_clique_cover(&g, DEFAULT_CLIQUE_BUDGET)?.value);
        }
        GraphOp::Cohom { source, target, opts } => {
            let (g, h) = (graph_of(&source, &opts)?, graph_of(&target, &opts)?);
            let search = SearchOptions {
                budget: opts.budget,
                materialize_cap: opts.cap,
            };
            match find_cohomomorphism(&g, &h, &search)? {
                Some(m) => println!("{}", serde_json::to_string(&m.to_json(&g, &h)).expect("serializable")),
                None => println!("none"),
            }
        }
        GraphOp::Export { expr, format, out, opts } => {
            let g = graph_of(&expr, &opts)?;
            let text = match format {
                Format::Graph6 => to_graph6(&g),
                Format::Json => serde_json::to_string(&EdgeListJson::from(&g)).expect("serializable"),
            };
            write_or_print(&text, out.as_deref())?;
        }
    }
    Ok(())
}

fn emit<T: Serialize>(text: String, value: &T, json: bool, out: Option<&Path>) -> Outcome {
    let doc = to_json(value);
    if json {
        println!("{doc}");
    } else {
        print!("{text}");
    }
    if let Some(path) = out {
        write_or_print(&doc, Some(path))?;
    }
    Ok(())
}

fn run_demo(demo: DemoCmd, json: bool, out: Option<&Path>) -> Outcome {
    use std::fmt::Write;
    let mut text = String::new();
    match demo {
        DemoCmd::Counterexample => {
            let d = demo_counterexample()?;
            for (name, (e, l)) in d.names.iter().zip(d.expressions.iter().zip(&d.lines)) {
                writeln!(text, "{name} = {e}    line {l}").unwrap();
            }
            writeln!(text, "H1 and H2 lines cross at x = {} with value {}", d.crossing, d.crossing_value).unwrap();
            for w in &d.witnesses {
                writeln!(text, "{} not below {}: at r = {}, {} > {}", w.x, w.y, w.r, w.lhs, w.rhs).unwrap();
            }
            let verdict = |v: &cohomorder::spectral::EnvelopeVerdict| match v {
                cohomorder::spectral::EnvelopeVerdict::Dominated => "dominated".to_string(),
                cohomorder::spectral::EnvelopeVerdict::Counterexample { r, lhs, rhs } => {
                    format!("fails at r = {r} ({lhs} > {rhs})")
                }
            };
            writeln!(
                text,
                "on [{}, {}]: {} vs {}: {}",
                d.interval[0],
                d.interval[1],
                d.left_join,
                d.right_join,
                verdict(&d.dominance)
            )
            .unwrap();
            writeln!(text, "reverse comparison: {}", verdict(&d.reverse)).unwrap();
            writeln!(text, "certified: {}", d.is_certified()).unwrap();
            emit(text, &d, json, out)?;
            if !d.is_certified() {
                return Err(Failure {
                    code: EXIT_VERIFY,
                    message: "demo claims did not re-verify".into(),
                });
            }
        }
        DemoCmd::Antichain { n } => {
            let d = demo_antichain(n)?;
            for (name, e) in d.names.iter().zip(&d.expressions) {
                writeln!(text, "{name} = {e}").unwrap();
            }
            writeln!(text, "all lines pass through ({}, {})", d.crossing, d.crossing_value).unwrap();
            for w in &d.witnesses {
                writeln!(text, "{} not below {}: at r = {}, {} > {}", w.x, w.y, w.r, w.lhs, w.rhs).unwrap();
            }
            writeln!(text, "certified: {}", d.is_certified()).unwrap();
            emit(text, &d, json, out)?;
        }
        DemoCmd::Xif { p, q } => {
            let t = xif_derivation(p, q)?;
            write!(text, "{t}").unwrap();
            emit(text, &t, json, out)?;
        }
        DemoCmd::Dyadic { p, q, eps } => {
            let eps = rational(&eps)?;
            let (n, qp) = dyadic_approach(p, q, &eps)?;
            let value = Rational::from(BigInt::from(1) << n) / Rational::from(qp.clone());
            writeln!(text, "({n}, {qp})").unwrap();
            writeln!(text, "2^{n}/{qp} = {value}").unwrap();
            #[derive(Serialize)]
            struct Dyadic {
                n: u32,
                q: String,
                value: Rational,
            }
            emit(
                text,
                &Dyadic {
                    n,
                    q: qp.to_string(),
                    value,
                },
                json,
                out,
            )?;
        }
    }
    Ok(())
}

