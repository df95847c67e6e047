use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use khovhoch::complex::nonzero;
use khovhoch::graph::{graph_cohomology_with, Graph, Variant};
use khovhoch::hochschild::{hochschild_homology_with, poincare_polynomial, HochschildOptions};
use khovhoch::khovanov::{khovanov_homology_sigma, khovanov_homology_with};
use khovhoch::verify::{run_suite, VerificationReport, SUITES};
use khovhoch::{AlgebraSpec, BigradedHomology, Error, Execution, ModuleSpec, SignedPlaneGraph};

#[derive(Parser)]
#[command(name = "khovhoch", version, about = "Hochschild, graph and Khovanov homology over the integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology HH_n(A, M) for 0 <= n <= n-max.
    Hochschild {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n_max: usize,
        /// Use the complex with unit letters removed.
        #[arg(long)]
        normalized: bool,
    },
    /// Graph cohomology of a polygon, a line or a graph read from JSON.
    Graph {
        #[command(flatten)]
        shape: Shape,
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Phi)]
        variant: VariantArg,
        /// Orient a generated polygon or line from its base vertex.
        #[arg(long)]
        directed: bool,
    },
    /// Khovanov homology of the link diagram of a signed plane graph.
    Khovanov {
        /// Signed plane graph JSON; signs default to negative.
        #[arg(long, conflicts_with = "torus")]
        graph: Option<PathBuf>,
        /// Torus link T(p, n); only p = 2.
        #[arg(long, num_args = 2, value_names = ["P", "N"], allow_negative_numbers = true)]
        torus: Option<Vec<i64>>,
        #[arg(long, default_value = "truncated:2")]
        algebra: String,
    },
    /// Run a verification suite; `list` prints the suites.
    Verify { suite: String },
}

#[derive(Args)]
struct AlgebraArgs {
    /// JSON or shorthand such as `truncated:2` or `poly_quotient:[0,0,0,1]`.
    #[arg(long)]
    algebra: String,
    /// `regular` (default), `ideal:[[0,1]]` or JSON.
    #[arg(long)]
    module: Option<String>,
    /// Degree bound; required for polynomial rings and tensor algebras.
    #[arg(long)]
    q_max: Option<i64>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Shape {
    #[arg(long)]
    polygon: Option<usize>,
    #[arg(long)]
    line: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Phi,
    Hat,
}

/// Failure modes mapped to exit codes 1 and 2.
enum Failure {
    Verification,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let out = match cli.command {
        Command::Hochschild { algebra, n_max, normalized } => hochschild(&algebra, n_max, normalized, cli.format, exec),
        Command::Graph { shape, algebra, variant, directed } => graph(&shape, &algebra, variant, directed, cli.format, exec),
        Command::Khovanov { graph, torus, algebra } => khovanov(graph, torus, &algebra, cli.format, exec),
        Command::Verify { suite } => verify(&suite, cli.format, exec),
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err((text, Failure::Verification)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err((_, Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type Outcome = Result<String, (String, Failure)>;

fn input<T>(r: Result<T, Error>) -> Result<T, (String, Failure)> {
    r.map_err(|e| (String::new(), e.into()))
}

fn build(args: &AlgebraArgs) -> Result<(khovhoch::Algebra, khovhoch::Bimodule), Error> {
    let a = AlgebraSpec::parse_with_q_max(&args.algebra, args.q_max)?.build()?;
    let m = match &args.module {
        Some(s) => s.parse::<ModuleSpec>()?.build(&a)?,
        None => khovhoch::Bimodule::regular(&a),
    };
    Ok((a, m))
}

#[derive(Serialize)]
struct Row {
    #[serde(flatten)]
    key: serde_json::Map<String, Value>,
    free_rank: usize,
    torsion: Vec<khovhoch::Integer>,
}

fn rows(h: &BigradedHomology, names: [&str; 2]) -> Vec<Row> {
    nonzero(h)
        .into_iter()
        .map(|((x, y), s)| {
            let mut key = serde_json::Map::new();
            key.insert(names[0].into(), x.into());
            key.insert(names[1].into(), y.into());
            Row { key, free_rank: s.free_rank, torsion: s.torsion }
        })
        .collect()
}

fn text_table(h: &BigradedHomology, names: [&str; 2]) -> String {
    let h = nonzero(h);
    let mut out = format!("{:>5} {:>5}  group\n", names[0], names[1]);
    for ((x, y), s) in &h {
        let _ = writeln!(out, "{x:>5} {y:>5}  {s}");
    }
    if h.is_empty() {
        out.push_str("(all groups vanish)\n");
    }
    out
}

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn bounded(h: BigradedHomology, q_max: Option<i64>) -> BigradedHomology {
    h.into_iter().filter(|((_, q), _)| q_max.is_none_or(|b| *q <= b)).collect()
}

fn hochschild(args: &AlgebraArgs, n_max: usize, normalized: bool, format: Format, exec: Execution) -> Outcome {
    let (a, m) = input(build(args))?;
    let opts = HochschildOptions { normalized, execution: exec };
    let h = input(hochschild_homology_with(&a, &m, n_max + 1, opts))?;
    let h = bounded(h.into_iter().filter(|((n, _), _)| *n <= n_max as i64).collect(), args.q_max);
    let poincare = poincare_polynomial(&h).to_string();
    Ok(match format {
        Format::Json => pretty(&json!({
            "algebra": a.name(),
            "module": m.name(),
            "homology": rows(&h, ["n", "q"]),
            "poincare": poincare,
        })),
        Format::Text => {
            format!("HH_n({}, {}) for n <= {n_max}\n{}Poincare polynomial: {poincare}\n", a.name(), m.name(), text_table(&h, ["n", "q"]))
        }
    })
}

fn load_graph(shape: &Shape, directed: bool) -> Result<Graph, Error> {
    let g = match (shape.polygon, shape.line, &shape.graph) {
        (Some(n), _, _) => Graph::polygon(n).with_base(0),
        (_, Some(n), _) => Graph::line(n).with_base(0),
        (_, _, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return Graph::from_json(&text);
        }
        _ => unreachable!("clap requires one shape"),
    };
    Ok(if directed { g.into_directed() } else { g })
}

fn graph(shape: &Shape, args: &AlgebraArgs, variant: VariantArg, directed: bool, format: Format, exec: Execution) -> Outcome {
    let g = input(load_graph(shape, directed))?;
    let (a, m) = input(build(args))?;
    let variant = match variant {
        VariantArg::Phi => Variant::Phi,
        VariantArg::Hat => Variant::PhiHat,
    };
    let h = bounded(input(graph_cohomology_with(&g, &a, &m, variant, exec))?, args.q_max);
    let poincare = poincare_polynomial(&h).to_string();
    Ok(match format {
        Format::Json => pretty(&json!({
            "graph": g,
            "algebra": a.name(),
            "module": m.name(),
            "variant": variant,
            "homology": rows(&h, ["i", "j"]),
            "poincare": poincare,
        })),
        Format::Text => format!(
            "H^(i,j) of a graph on {} vertices and {} edges over {}, {}\n{}Poincare polynomial: {poincare}\n",
            g.vertices,
            g.edge_count(),
            a.name(),
            m.name(),
            text_table(&h, ["i", "j"])
        ),
    })
}

fn khovanov(path: Option<PathBuf>, torus: Option<Vec<i64>>, algebra: &str, format: Format, exec: Execution) -> Outcome {
    let g = input(match (path, torus) {
        (Some(p), _) => std::fs::read_to_string(&p)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
            .and_then(|t| SignedPlaneGraph::from_json(&t)),
        (_, Some(pn)) => SignedPlaneGraph::torus(pn[0], pn[1]),
        _ => Err(Error::Parse("give --graph or --torus".into())),
    })?;
    let a = input(AlgebraSpec::parse_with_q_max(algebra, None).and_then(|s| s.build()))?;
    let (h, names) = if a.is_khovanov_algebra() {
        (input(khovanov_homology_with(&g, &a, exec))?, ["a", "b"])
    } else {
        (input(khovanov_homology_sigma(&g, &a, exec))?, ["sigma", "q"])
    };
    Ok(match format {
        Format::Json => pretty(&rows(&h, names)),
        Format::Text => format!("Khovanov homology over {}\n{}", a.name(), text_table(&h, names)),
    })
}

fn verify(suite: &str, format: Format, exec: Execution) -> Outcome {
    if suite == "list" {
        let mut out = String::new();
        for (name, about) in SUITES {
            let _ = writeln!(out, "{name:<20} {about}");
        }
        return Ok(out);
    }
    let reports = input(run_suite(suite, exec))?;
    let all = reports.iter().all(VerificationReport::passed);
    let text = match format {
        Format::Json => pretty(&json!({ "suite": suite, "passed": all, "reports": reports })),
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} {} ({} ms)", r.claim, r.wall_time.as_millis());
                if !r.passed() {
                    let _ = writeln!(out, "  expected: {}\n  computed: {}", r.expected, r.computed);
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            let _ = writeln!(out, "{passed}/{} claims passed", reports.len());
            out
        }
    };
    if all {
        Ok(text)
    } else {
        Err((text, Failure::Verification))
    }
}
