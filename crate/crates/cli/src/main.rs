mod input;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cpg::{catalog, certify, coloring, recognition, reduction, CpgError, GridPoint};
use serde::Serialize;
use serde_json::json;

use input::InputError;

/// Contact graphs of paths on a grid.
///
/// Exit status: 0 on pass or found, 1 on fail or unsat, 2 on input errors
/// and exhausted budgets.
#[derive(Parser)]
#[command(name = "cpg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a representation against every grid invariant.
    Validate { rep: PathBuf },
    /// Contact graph of a representation.
    Extract { rep: PathBuf },
    /// Classify one grid point, or every occupied point.
    Classify {
        rep: PathBuf,
        /// Point as `row,col`.
        #[arg(long, value_parser = parse_point)]
        point: Option<GridPoint>,
    },
    /// Endpoint weights (doubled) of every path.
    Weights { rep: PathBuf },
    /// Full weight audit: sum, edge count, equality and multi-touch pairs.
    Audit { rep: PathBuf },
    /// 4-coloring of a representation without bends.
    Color4 { rep: PathBuf },
    /// 6-coloring of a graph consistent with being a contact graph.
    Color6 { graph: PathBuf },
    /// Exact k-colorability.
    Kcolor {
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Maximum clique.
    Clique { graph: PathBuf },
    /// Produce a certificate for one of the structural claims.
    Certify {
        #[arg(value_enum)]
        claim: ClaimArg,
        /// Graph, representation or catalog entry, as the claim requires.
        input: Option<PathBuf>,
        /// Face count for the degree-3 bound; defaults to Euler's formula.
        #[arg(long)]
        faces: Option<i64>,
        /// Assert maximal planarity for the degree-3 bound.
        #[arg(long)]
        maximally_planar: bool,
    },
    /// Reduce planar 3-colorability to a 0-bend representation.
    Reduce3col {
        embedding: PathBuf,
        /// Initial scale factor (even, at least 8); doubled while too small.
        #[arg(long, default_value_t = reduction::DEFAULT_SCALE)]
        scale: u32,
    },
    /// Bounded exhaustive search for a representation.
    Recognize {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        bends: usize,
        #[arg(long, default_value_t = recognition::DEFAULT_BUDGET)]
        budget: u64,
        /// Lines per axis; defaults to 3n without bends and (k+2)n otherwise.
        #[arg(long)]
        grid_bound: Option<usize>,
    },
    /// Line graph of a graph.
    Linegraph { graph: PathBuf },
    /// Representation of the line graph of a rectilinear drawing.
    Rect2rep { drawing: PathBuf },
    /// Rectilinear drawing recovered from a 0-bend representation.
    Rep2rect { rep: PathBuf },
    /// Fixture catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// SVG of a representation, embedding or drawing.
    Render { input: PathBuf },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names and descriptions of all fixtures.
    List,
    /// JSON of one fixture, or of one of its parts.
    Emit {
        name: String,
        #[arg(long, value_enum, default_value_t = Part::Entry)]
        part: Part,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    Entry,
    Rep,
    Graph,
    Embedding,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    Degree,
    B1Degree,
    K7,
    Deg3Bound,
    TriangleFree,
    K33,
    FourRegularSeven,
    Gadgets,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] CpgError),
    #[error("{0}")]
    Usage(String),
}

/// Text for standard output and the exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn json<T: Serialize>(value: &T, pass: bool) -> Self {
        // Going through `Value` sorts every object's keys.
        let v = serde_json::to_value(value).expect("outputs serialize");
        Output { text: serde_json::to_string_pretty(&v).expect("values serialize") + "\n", code: if pass { 0 } else { 1 } }
    }
}

fn parse_point(s: &str) -> Result<GridPoint, String> {
    let (r, c) = s.split_once(',').ok_or("expected `row,col`")?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| e.to_string());
    Ok(GridPoint::new(parse(r)?, parse(c)?))
}

fn valid_rep(path: &Path) -> Result<cpg::CpgRepresentation, CliError> {
    let rep = input::rep(path)?;
    let report = rep.validate();
    if !report.ok {
        let first = &report.violations[0];
        return Err(CliError::Usage(format!("invalid representation: {:?} ({} violations)", first.kind, report.violations.len())));
    }
    Ok(rep)
}

fn run(cli: Cli) -> Result<Output, CliError> {
    Ok(match cli.command {
        Command::Validate { rep } => {
            let report = input::rep(&rep)?.validate();
            Output::json(&report, report.ok)
        }
        Command::Extract { rep } => Output::json(&cpg::contact_graph(&valid_rep(&rep)?), true),
        Command::Classify { rep, point } => {
            let rep = valid_rep(&rep)?;
            let index = cpg::contact::ContactIndex::new(&rep);
            match point {
                Some(p) => Output::json(&index.classify(p), true),
                None => Output::json(&index.occupied_points().map(|p| index.classify(p)).collect::<Vec<_>>(), true),
            }
        }
        Command::Weights { rep } => {
            let report = cpg::weight_audit(&valid_rep(&rep)?);
            Output::json(&json!({ "weights_doubled": report.weights_doubled, "sum_doubled": report.sum_doubled }), true)
        }
        Command::Audit { rep } => {
            let report = cpg::weight_audit(&valid_rep(&rep)?);
            Output::json(&report, report.consistent())
        }
        Command::Color4 { rep } => Output::json(&coloring::color_b0(&valid_rep(&rep)?)?, true),
        Command::Color6 { graph } => Output::json(&coloring::color_cpg(&input::graph(&graph)?)?, true),
        Command::Kcolor { graph, k } => match coloring::is_k_colorable(&input::graph(&graph)?, k)? {
            Some(c) => Output::json(&json!({ "colorable": true, "coloring": c }), true),
            None => Output::json(&json!({ "colorable": false }), false),
        },
        Command::Clique { graph } => {
            let clique = certify::maximum_clique(&input::graph(&graph)?)?;
            Output::json(&json!({ "clique_number": clique.len(), "clique": clique }), true)
        }
        Command::Certify { claim, input: path, faces, maximally_planar } => {
            let need = || path.clone().ok_or_else(|| CliError::Usage("this claim needs an input file".into()));
            let cert = match claim {
                ClaimArg::Degree => certify::degree_certificate(&input::graph(&need()?)?),
                ClaimArg::B1Degree => certify::b1_degree_certificate(&valid_rep(&need()?)?)?,
                ClaimArg::K7 => certify::k7_check(&input::graph(&need()?)?)?,
                ClaimArg::Deg3Bound => certify::maxplanar_deg3_bound(&input::graph(&need()?)?, faces, maximally_planar)?,
                ClaimArg::TriangleFree => certify::trianglefree_hypothesis(&valid_rep(&need()?)?),
                ClaimArg::K33 => certify::k33_certificate(&input::graph(&need()?)?)?,
                ClaimArg::FourRegularSeven => certify::check_4regular_7_lemma(),
                ClaimArg::Gadgets => reduction::verify_gadget_claims(),
            };
            Output::json(&cert, cert.passed())
        }
        Command::Reduce3col { embedding, scale } => {
            Output::json(&reduction::reduce_3col_from(&input::embedding(&embedding)?, scale)?, true)
        }
        Command::Recognize { graph, bends, budget, grid_bound } => {
            let g = input::graph(&graph)?;
            let report = recognition::recognize(&g, &recognition::SearchOptions { bends, budget, grid_bound })?;
            let mut out = Output::json(&report, report.found().is_some());
            if matches!(report.outcome, recognition::SearchOutcome::BudgetExceeded { .. }) {
                out.code = 2;
            }
            out
        }
        Command::Linegraph { graph } => Output::json(&cpg::line_graph(&input::graph(&graph)?), true),
        Command::Rect2rep { drawing } => Output::json(&cpg::rep_from_rectilinear(&input::drawing(&drawing)?)?, true),
        Command::Rep2rect { rep } => Output::json(&cpg::rectilinear_from_rep(&input::rep(&rep)?)?, true),
        Command::Catalog { action: CatalogAction::List } => {
            let list: Vec<_> = catalog::fixtures().into_iter().map(|e| json!({ "name": e.name, "description": e.description })).collect();
            Output::json(&list, true)
        }
        Command::Catalog { action: CatalogAction::Emit { name, part } } => {
            let e = catalog::fixture(&name).ok_or_else(|| CliError::Usage(format!("no fixture named `{name}`")))?;
            let missing = |what: &str| CliError::Usage(format!("fixture `{name}` has no {what}"));
            match part {
                Part::Entry => Output::json(&e, true),
                Part::Rep => Output::json(&e.rep.clone().ok_or_else(|| missing("representation"))?, true),
                Part::Graph => Output::json(&e.subject_graph().ok_or_else(|| missing("graph"))?, true),
                Part::Embedding => Output::json(&e.embedding.clone().ok_or_else(|| missing("embedding"))?, true),
            }
        }
        Command::Render { input: path } => {
            let svg = match input::drawable(&path)? {
                input::Drawable::Rep(rep) => render::rep_svg(&rep),
                input::Drawable::Embedding(emb) => render::embedding_svg(&emb),
            };
            Output { text: svg, code: 0 }
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
