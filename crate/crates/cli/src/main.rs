//! `homoglab` command-line front end.
//!
//! Every command prints one JSON report on stdout:
//! `{"tool", "version", "command", "payload"}`.
//!
//! Exit codes: 0 computed, 1 suite failure or unmet `--expect`, 2 invalid
//! input, 3 budget exhausted.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use homoglab::analysis::AnalysisReport;
use homoglab::homogeneity::{kk_okk, DECIDE_LIMIT};
use homoglab::io::{detect_format, read_graph, write_graph, Format};
use homoglab::presentation::{classify_mb, extension_witness, spanning_rado, WitnessOutcome};
use homoglab::verify::{
    cross_validate_hh, find_triangle_dom2, verify_alpha_bound_family, verify_directory_lemmas,
    verify_directory_lemmas_random, verify_neighbor_richness, SuiteReport, DEFAULT_SEED,
};
use homoglab::{analyze, decide_hh_conditions, decide_xy, AgePartition, Error, Family, Graph, MorphismKind, Presentation, VertexSet};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "homoglab", version, about = "Homomorphism-homogeneity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural quantities of a finite graph, plus its age partition.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Decide XY-homogeneity of a finite graph.
    Check {
        file: PathBuf,
        #[arg(long)]
        format: Option<FormatArg>,
        #[arg(long, default_value = "H")]
        x: MorphismKind,
        #[arg(long, default_value = "H")]
        y: MorphismKind,
        #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
        method: MethodArg,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Write a truncation of a countable family.
    Generate {
        family: String,
        #[arg(long)]
        truncate: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Graph6)]
        format: FormatArg,
    },
    /// Least vertex adjacent to every cone member and no co-cone member.
    Witness {
        family: String,
        #[arg(long, value_delimiter = ',')]
        cone: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        cocone: Vec<usize>,
        #[arg(long, default_value_t = 1 << 16)]
        budget: usize,
    },
    /// Greedy Rado spanning subgraph over core vertices `0..n`.
    RadoSpan {
        family: String,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 1 << 16)]
        budget: usize,
    },
    /// Bounded evidence towards a bimorphism class.
    Classify {
        family: String,
        #[arg(long, default_value_t = 512)]
        budget: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Graph to check (directory-lemmas, richness). Without it
        /// directory-lemmas samples random graphs.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 40)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Richness threshold.
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Clique-part sizes used by alpha-bound and rs-lemmas.
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3])]
        parts: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 6)]
        to: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Edges,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Edges => Format::EdgeList,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Conditions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expect {
    Yes,
    No,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    DirectoryLemmas,
    AlphaBound,
    CrossHh,
    Richness,
    RsLemmas,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a [String],
    payload: T,
}

#[derive(Serialize)]
struct Analysis {
    report: AnalysisReport,
    /// Omitted above the decision limit.
    age_partition: Option<AgePartition>,
}

#[derive(Serialize)]
struct Generated {
    family: String,
    order: usize,
    edges: usize,
    format: &'static str,
    output: Option<String>,
    /// Inline graph when no output file was given.
    graph: Option<String>,
}

#[derive(Serialize)]
struct Witness {
    family: String,
    cone: Vec<usize>,
    cocone: Vec<usize>,
    budget: usize,
    outcome: WitnessOutcome,
}

#[derive(Serialize)]
struct BudgetFailure {
    family: String,
    error: String,
    cone: Vec<usize>,
    cocone: Vec<usize>,
    budget: usize,
    proven_absent: bool,
}

#[derive(Serialize)]
struct Suites {
    reports: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    extra: Vec<serde_json::Value>,
}

/// Failure classes that map to exit codes.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Budget,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.into())
    }
}

struct Out<'a> {
    argv: &'a [String],
}

impl Out<'_> {
    fn emit<T: Serialize>(&self, payload: T) -> anyhow::Result<()> {
        let report = Report {
            tool: "homoglab",
            version: env!("CARGO_PKG_VERSION"),
            command: self.argv,
            payload,
        };
        let text = serde_json::to_string_pretty(&report)?;
        match writeln!(std::io::stdout().lock(), "{text}") {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        }
    }
}

fn load(path: &Path, format: Option<FormatArg>) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.map(Format::from).unwrap_or_else(|| detect_format(&text));
    read_graph(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn presentation(name: &str) -> anyhow::Result<Presentation> {
    Presentation::parse(name).with_context(|| format!("family {name:?}"))
}

/// Independent dominating set to run the directory suites against: the
/// lexicographically first directory.
fn base_of(g: &Graph) -> anyhow::Result<VertexSet> {
    match analyze(g).directories.into_iter().next() {
        Some(d) => Ok(d),
        None => bail!("graph has no edges, so no directory"),
    }
}

fn run(cli: Cli, out: &Out) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { file, format } => {
            let g = load(&file, format)?;
            let age_partition = if g.order() <= DECIDE_LIMIT { Some(kk_okk(&g, g.order())?) } else { None };
            out.emit(Analysis {
                report: analyze(&g),
                age_partition,
            })?;
            Ok(0)
        }
        Command::Check {
            file,
            format,
            x,
            y,
            method,
            expect,
        } => {
            if method == MethodArg::Conditions && (x, y) != (MorphismKind::H, MorphismKind::H) {
                return Err(Failure::Input(anyhow::anyhow!("--method conditions needs --x H --y H")));
            }
            let g = load(&file, format)?;
            let report = match method {
                MethodArg::Direct => decide_xy(&g, x, y)?,
                MethodArg::Conditions => decide_hh_conditions(&g, g.order())?,
            };
            let verdict = report.verdict;
            out.emit(report)?;
            Ok(match expect {
                Some(Expect::Yes) if !verdict => 1,
                Some(Expect::No) if verdict => 1,
                _ => 0,
            })
        }
        Command::Generate {
            family,
            truncate,
            output,
            format,
        } => {
            let p = presentation(&family)?;
            let g = p.truncate(truncate);
            let text = write_graph(&g, format.into());
            if let Some(path) = &output {
                std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            out.emit(Generated {
                family: p.name(),
                order: g.order(),
                edges: g.edge_count(),
                format: match format {
                    FormatArg::Graph6 => "graph6",
                    FormatArg::Edges => "edges",
                },
                output: output.as_ref().map(|p| p.display().to_string()),
                graph: output.is_none().then_some(text),
            })?;
            Ok(0)
        }
        Command::Witness {
            family,
            cone,
            cocone,
            budget,
        } => {
            let p = presentation(&family)?;
            let outcome = extension_witness(&p, &cone, &cocone, budget)?;
            let code = if matches!(outcome, WitnessOutcome::Exhausted { .. }) { 3 } else { 0 };
            out.emit(Witness {
                family: p.name(),
                cone,
                cocone,
                budget,
                outcome,
            })?;
            Ok(code)
        }
        Command::RadoSpan { family, n, budget } => {
            let p = presentation(&family)?;
            match spanning_rado(&p, n, budget) {
                Ok(c) => {
                    out.emit(c)?;
                    Ok(0)
                }
                Err(e @ Error::BudgetExhausted { .. }) => {
                    let Error::BudgetExhausted {
                        ref cone,
                        ref cocone,
                        budget,
                        proven_absent,
                    } = e
                    else {
                        unreachable!()
                    };
                    out.emit(BudgetFailure {
                        family: p.name(),
                        error: e.to_string(),
                        cone: cone.clone(),
                        cocone: cocone.clone(),
                        budget,
                        proven_absent,
                    })?;
                    Err(Failure::Budget)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Classify { family, budget } => {
            let p = presentation(&family)?;
            out.emit(classify_mb(&p, budget)?)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            input,
            count,
            max_order,
            seed,
            t,
            parts,
            from,
            to,
        } => {
            let mut extra = Vec::new();
            let reports = match suite {
                Suite::DirectoryLemmas => match &input {
                    Some(path) => {
                        let g = load(path, None)?;
                        vec![verify_directory_lemmas(&g, &base_of(&g)?)?]
                    }
                    None => vec![verify_directory_lemmas_random(count, max_order, seed)],
                },
                Suite::AlphaBound => {
                    let [m0, m1] = parts[..] else {
                        return Err(Failure::Input(anyhow::anyhow!("--parts takes exactly two sizes")));
                    };
                    let (rep, rows) = verify_alpha_bound_family(from..=to, [m0, m1])?;
                    extra.extend(rows.iter().map(|r| serde_json::to_value(r).expect("plain struct")));
                    vec![rep]
                }
                Suite::CrossHh => {
                    let (rep, counts) = cross_validate_hh(max_order)?;
                    extra.extend(counts.iter().map(|c| serde_json::to_value(c).expect("plain struct")));
                    vec![rep]
                }
                Suite::Richness => {
                    let Some(path) = &input else {
                        return Err(Failure::Input(anyhow::anyhow!("richness needs --input")));
                    };
                    let g = load(path, None)?;
                    vec![verify_neighbor_richness(&g, &base_of(&g)?, t)?]
                }
                Suite::RsLemmas => {
                    let rs3 = Presentation::new(Family::Rs(3))?;
                    let mut reps = Vec::new();
                    for &m in &parts {
                        let g = rs3.truncate(3 + 3 * m);
                        let a3 = VertexSet::from_indices(g.order(), 0..3);
                        reps.push(verify_directory_lemmas(&g, &a3)?);
                        reps.push(verify_neighbor_richness(&g, &a3, t)?);
                        extra.push(serde_json::to_value(find_triangle_dom2(&g, &a3)?).expect("plain enum"));
                    }
                    reps
                }
            };
            let ok = reports.iter().all(SuiteReport::passed);
            out.emit(Suites { reports, extra })?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("HOMOGLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = Out { argv: &argv[1..] };
    match run(cli, &out) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Budget) => ExitCode::from(3),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_field_order_is_fixed() {
        let argv = vec!["classify".to_string(), "null".to_string()];
        let r = Report {
            tool: "homoglab",
            version: "0",
            command: &argv,
            payload: 7,
        };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"tool":"homoglab","version":"0","command":["classify","null"],"payload":7}"#);
    }

    #[test]
    fn conditions_method_requires_hh() {
        let cli = Cli::try_parse_from(["homoglab", "check", "x.g6", "--x", "I", "--y", "I", "--method", "conditions"]).unwrap();
        let argv = Vec::new();
        // Rejected before the file is read.
        match run(cli, &Out { argv: &argv }) {
            Err(Failure::Input(e)) => assert!(e.to_string().contains("--method conditions")),
            _ => panic!("expected an input error"),
        }
    }
}
