//! Command-line front end of curvetop: polynomial parsing, configuration
//! and graph serialization.

pub mod emit;
pub mod parse;

use std::path::PathBuf;

use curvetop::pipeline::{analyze, AnalysisConfig, AnalysisReport, CurveGraph};
use curvetop::CurveError;

pub use emit::{BoundingBox, Format};
pub use parse::{parse_polynomial, ParseError};

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Text(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliConfig {
    pub input: InputSource,
    pub format: Format,
    /// Output precision in bits, at least 1.
    pub precision: u64,
    /// Precision stages for the numerical filter; 0 lifts every event completely.
    pub fastlift_budget: u32,
    pub force_lift: bool,
    pub make_squarefree: bool,
    pub bbox: Option<BoundingBox>,
    pub seed: u64,
    pub report: bool,
}

impl CliConfig {
    pub fn analysis(&self) -> AnalysisConfig {
        AnalysisConfig {
            precision: self.precision,
            fastlift_budget: self.fastlift_budget,
            force_lift: self.force_lift || self.fastlift_budget == 0,
            make_squarefree: self.make_squarefree,
            seed: self.seed,
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Analysis(#[from] CurveError),
}

impl CliError {
    /// 2 for violated preconditions, 3 for unreadable or malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 3,
            CliError::Analysis(
                CurveError::ZeroPolynomial(_)
                | CurveError::NotSquarefree(_)
                | CurveError::ConstantPolynomial
                | CurveError::CommonComponent(_)
                | CurveError::Precondition(_),
            ) => 2,
            CliError::Analysis(_) => 1,
        }
    }
}

/// Serialized graph plus the analysis report.
pub struct Output {
    pub text: String,
    pub graph: CurveGraph,
    pub report: AnalysisReport,
}

pub fn run(config: &CliConfig) -> Result<Output, CliError> {
    let text = match &config.input {
        InputSource::Text(t) => t.clone(),
        InputSource::File(path) => {
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?
        }
    };
    let f = parse_polynomial(&text)?;
    let (graph, report) = analyze(&f, &config.analysis())?;
    let text = match config.format {
        Format::Json => emit::to_json(&graph),
        Format::Dot => emit::to_dot(&graph),
        Format::Svg => emit::to_svg(&graph, &config.bbox.unwrap_or_else(|| emit::default_bbox(&graph))),
    };
    Ok(Output { text, graph, report })
}

/// Human-readable summary of an analysis, for `--report`.
pub fn format_report(graph: &CurveGraph, r: &AnalysisReport) -> String {
    let (seps, events, lines) = emit::column_summary(graph);
    let t = &r.timings;
    let mut s = String::new();
    s.push_str(&format!("events: {}  separators: {seps}  event columns: {events}  vertical lines: {lines}\n", r.events));
    s.push_str(&format!(
        "fibers: {} intermediate, {} fastlift, {} lift  (fastlift failures: {})\n",
        r.intermediate_fibers, r.fastlift_fibers, r.lift_fibers, r.fastlift_failures
    ));
    s.push_str(&format!("connections: {} counting rule, {} separators\n", r.generic_connections, r.nongeneric_connections));
    s.push_str(&format!("teissier bound sharp at {} of {} events\n", r.teissier_sharp(), r.teissier.len()));
    for (i, e) in r.teissier.iter().enumerate() {
        s.push_str(&format!(
            "  event {i}: m* = {}, distinct complex = {}, real points = {}{}\n",
            e.m_star,
            e.distinct_complex,
            e.real_points,
            if e.asymptote { ", asymptote" } else { "" }
        ));
    }
    s.push_str(&format!(
        "graph: {} vertices, {} edges, {} components, cycle rank {}\n",
        graph.vertices.len(),
        graph.edges.len(),
        graph.component_count(),
        graph.cycle_rank()
    ));
    s.push_str(&format!(
        "time: preprocessing {:?}, projection {:?}, lifting {:?}, connection {:?}, assembly {:?}, merge {:?}, total {:?}\n",
        t.preprocessing,
        t.projection,
        t.lifting,
        t.connection,
        t.assembly,
        t.merge,
        t.total()
    ));
    s
}
