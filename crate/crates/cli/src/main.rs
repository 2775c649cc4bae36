use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netctrl::controllability::controllability_report;
use netctrl::designer::{build_design, random_design, QcdDesignSpec};
use netctrl::destructive::{
    all_dcd_pairs, all_tcd_triples, derive_qcd_catalog, qcd_quads_5, QcdCatalog,
};
use netctrl::graph::{
    enumerate_connected_graphs, parse_edge_list, write_edge_list, Graph, LeaderSet,
};
use netctrl::report::{
    controllability_text, design_text, detection_text, to_dot, Detection, DotAnnotations,
};
use netctrl::verifier::{
    verify_fact1_sampled, verify_prop1_sampled, verify_theorem1, verify_theorem2, verify_theorem4,
    VerificationRun, DEFAULT_SEED, FACT1_SAMPLES, PROP1_SAMPLES,
};
use netctrl::Error;

const EXIT_UNCONTROLLABLE: u8 = 10;
const EXIT_INPUT: u8 = 2;
const EXIT_COUNTEREXAMPLES: u8 = 1;
const SHOWN_COUNTEREXAMPLES: usize = 20;

/// Controllability of leader-follower networks on undirected graphs.
#[derive(Parser)]
#[command(name = "netctrl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Controllability report for a graph and leader set.
    Analyze {
        #[command(flatten)]
        io: Io,
        /// 1-based leader vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        leaders: Vec<usize>,
    },
    /// List destructive pairs, triples and quadruples.
    Detect {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
        /// Catalog file; the bundled one is used otherwise.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Build a graph from a design spec, or a random valid one.
    Design {
        /// TOML spec.
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Edge list of the designed graph.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Vertex count and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        random: Option<Vec<u64>>,
        /// Write the spec that was built as TOML.
        #[arg(long)]
        emit_spec: Option<PathBuf>,
        /// Write the design report here instead of stdout.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run a verification suite: prop1, t1, t2, fact1, t4 or all.
    Verify {
        #[arg(conflicts_with = "suite")]
        suite_name: Option<String>,
        #[arg(long)]
        suite: Option<String>,
        /// Largest vertex count.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Full run output including every counterexample.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Derive the five-vertex quadruple catalog.
    Catalog {
        #[arg(long)]
        output: Option<PathBuf>,
        /// Compare against a catalog file; exit 1 on difference.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Count or list connected labeled graphs.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print every graph as one edge line.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Graphviz export.
    Dot {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_delimiter = ',')]
        leaders: Vec<usize>,
        /// Shade and label the first certificate of this kind.
        #[arg(long, value_enum)]
        certificate: Option<Kind>,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Io {
    /// Edge-list file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Dcd,
    Tcd,
    Qcd,
    All,
}

enum Failure {
    Input(String),
    Code(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Code(code)) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Analyze { io, leaders } => analyze(&io, &leaders),
        Command::Detect { io, kind, catalog } => detect(&io, kind, catalog.as_deref()),
        Command::Design {
            input,
            output,
            random,
            emit_spec,
            certificate,
        } => design(
            input.as_deref(),
            output.as_deref(),
            random.as_deref(),
            emit_spec.as_deref(),
            certificate.as_deref(),
        ),
        Command::Verify {
            suite_name,
            suite,
            n,
            seed,
            output,
        } => {
            let name = suite_name.or(suite).unwrap_or_else(|| "all".into());
            verify(&name, n, seed, output.as_deref())
        }
        Command::Catalog { output, check } => catalog(output.as_deref(), check.as_deref()),
        Command::Enumerate { n, list, output } => enumerate(n, list, output.as_deref()),
        Command::Dot {
            io,
            leaders,
            certificate,
            catalog,
        } => dot(&io, &leaders, certificate, catalog.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_edge_list(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_catalog(path: Option<&Path>) -> Result<QcdCatalog, Failure> {
    match path {
        Some(p) => Ok(QcdCatalog::from_text(&read(p)?)?),
        None => Ok(QcdCatalog::bundled()),
    }
}

fn analyze(io: &Io, leaders: &[usize]) -> CmdResult {
    let g = read_graph(&io.input)?;
    let leaders = LeaderSet::new(g.n(), leaders)?;
    let report = controllability_report(&g, &leaders)?;
    emit(io.output.as_deref(), &controllability_text(&report))?;
    Ok(if report.controllable() {
        0
    } else {
        EXIT_UNCONTROLLABLE
    })
}

fn detection(g: &Graph, kind: Kind, catalog: Option<&Path>) -> Result<Detection, Failure> {
    let want = |k: Kind| kind == k || kind == Kind::All;
    let mut d = Detection::default();
    if want(Kind::Dcd) {
        d.dcd = Some(all_dcd_pairs(g)?);
    }
    if want(Kind::Tcd) {
        d.tcd = Some(all_tcd_triples(g)?);
    }
    // quadruples are only characterized on five vertices; `all` skips them elsewhere
    if kind == Kind::Qcd || (kind == Kind::All && g.n() == 5) {
        d.qcd = Some(qcd_quads_5(g, &load_catalog(catalog)?)?);
    }
    Ok(d)
}

fn detect(io: &Io, kind: Kind, catalog: Option<&Path>) -> CmdResult {
    let g = read_graph(&io.input)?;
    let d = detection(&g, kind, catalog)?;
    emit(io.output.as_deref(), &detection_text(&g, &d))?;
    Ok(0)
}

fn design(
    input: Option<&Path>,
    output: Option<&Path>,
    random: Option<&[u64]>,
    emit_spec: Option<&Path>,
    certificate: Option<&Path>,
) -> CmdResult {
    let spec = match (input, random) {
        (Some(p), _) => QcdDesignSpec::from_toml(&read(p)?)?,
        (None, Some([n, seed])) => random_design(*n as usize, *seed)?,
        _ => {
            return Err(Failure::Input(
                "design needs --input SPEC or --random N SEED".into(),
            ))
        }
    };
    let out = match build_design(&spec) {
        Ok(out) => out,
        Err(Error::InvalidSpec(violations)) => {
            eprintln!("invalid design spec:");
            for v in violations {
                eprintln!("  {v}");
            }
            return Err(Failure::Code(EXIT_INPUT));
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = emit_spec {
        emit(Some(p), &spec.to_toml())?;
    }
    if let Some(p) = output {
        emit(Some(p), &write_edge_list(&out.graph))?;
    }
    emit(certificate, &design_text(&spec, &out))?;
    Ok(0)
}

fn run_suite(name: &str, n: Option<usize>, seed: u64) -> Result<VerificationRun, Failure> {
    Ok(match name {
        "prop1" => verify_prop1_sampled(n.unwrap_or(5), PROP1_SAMPLES, seed)?,
        "t1" => verify_theorem1(n.unwrap_or(5))?,
        "t2" => verify_theorem2(n.unwrap_or(5))?,
        "fact1" => verify_fact1_sampled(n.unwrap_or(6), FACT1_SAMPLES, seed)?,
        "t4" => verify_theorem4(&QcdCatalog::bundled())?,
        other => return Err(Error::UnknownSuite(other.to_string()).into()),
    })
}

fn verify(name: &str, n: Option<usize>, seed: u64, output: Option<&Path>) -> CmdResult {
    let names: Vec<&str> = if name == "all" {
        vec!["prop1", "t1", "t2", "fact1", "t4"]
    } else {
        vec![name]
    };
    let mut full = String::new();
    let mut failed = false;
    for s in names {
        let run = run_suite(s, n, seed)?;
        eprintln!("{s}: {:.2?}", run.elapsed);
        let text = run.to_text();
        full.push_str(&text);
        failed |= !run.passed();
        let mut lines = text.lines();
        let mut shown = 0;
        for line in lines.by_ref() {
            if line.starts_with("counterexample: ") {
                shown += 1;
                if shown > SHOWN_COUNTEREXAMPLES {
                    println!(
                        "... {} more",
                        run.counterexamples.len() - SHOWN_COUNTEREXAMPLES
                    );
                    break;
                }
            }
            println!("{line}");
        }
    }
    if let Some(p) = output {
        emit(Some(p), &full)?;
    }
    Ok(if failed { EXIT_COUNTEREXAMPLES } else { 0 })
}

fn catalog(output: Option<&Path>, check: Option<&Path>) -> CmdResult {
    let cat = derive_qcd_catalog();
    eprintln!("{}", cat.count_report());
    for d in cat.discrepancies() {
        eprintln!("discrepancy: {d}");
    }
    let text = cat.to_text();
    if let Some(p) = check {
        if read(p)? != text {
            eprintln!("derived catalog differs from {}", p.display());
            return Err(Failure::Code(EXIT_COUNTEREXAMPLES));
        }
        eprintln!("derived catalog matches {}", p.display());
    }
    emit(output, &text)?;
    Ok(0)
}

fn enumerate(n: usize, list: bool, output: Option<&Path>) -> CmdResult {
    let graphs: Vec<Graph> = enumerate_connected_graphs(n)?.collect();
    let mut text = format!(
        "connected labeled graphs on {n} vertices: {}\n",
        graphs.len()
    );
    if list {
        for g in &graphs {
            let e: Vec<String> = g
                .edges()
                .iter()
                .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
                .collect();
            text.push_str(&e.join(" "));
            text.push('\n');
        }
    }
    emit(output, &text)?;
    Ok(0)
}

fn dot(io: &Io, leaders: &[usize], certificate: Option<Kind>, catalog: Option<&Path>) -> CmdResult {
    let g = read_graph(&io.input)?;
    let mut notes = DotAnnotations::default();
    if !leaders.is_empty() {
        notes.leaders = LeaderSet::new(g.n(), leaders)?.indices().to_vec();
    }
    let ints = |v: &[i64]| Some(v.iter().map(i64::to_string).collect());
    match certificate {
        None => {}
        Some(Kind::Dcd) => {
            if let Some(c) = all_dcd_pairs(&g)?.first() {
                notes.shaded = vec![c.p, c.q];
                notes.values = ints(&c.vector);
            }
        }
        Some(Kind::Tcd) => {
            if let Some(c) = all_tcd_triples(&g)?.first() {
                notes.shaded = c.vertices.to_vec();
                notes.values = ints(&c.vector);
            }
        }
        Some(Kind::Qcd) | Some(Kind::All) => {
            if let Some(c) = qcd_quads_5(&g, &load_catalog(catalog)?)?.first() {
                notes.shaded = c.quad.to_vec();
                if notes.leaders.is_empty() {
                    notes.leaders = vec![c.k];
                }
                notes.values = Some(c.pair.vector_strings());
            }
        }
    }
    emit(io.output.as_deref(), &to_dot(&g, &notes))?;
    Ok(0)
}
