//! End-to-end pipeline from a diagram to the full report.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{verify_all, BoundsError, VerificationReport, VerifyInput};
use crate::bracket::{
    bracket, extract_coefficients, BracketError, BracketOptions, BracketResult, CoefficientReport,
};
use crate::diagram::{
    analyze_surface, check_reduced, checkerboard_coloring, DiagramError, FaceSet, SurfaceDiagram,
};
use crate::homology::{build_homology, HomologyModel};
use crate::stategraph::{
    build_state_graphs, graph_census, long_short_census, predict_coefficients, GraphCensus,
    LongShortCensus, StateGraphError,
};
use crate::states::{homological_adequacy, StateError};
use crate::twist::{twist_regions, TwistDecomposition, TwistError};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    StateGraph(#[from] StateGraphError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

impl AnalysisError {
    /// CLI exit status: 1 failed check, 2 invalid input, 3 guard exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::State(StateError::GuardExceeded { .. })
            | AnalysisError::Bracket(BracketError::State(StateError::GuardExceeded { .. })) => 3,
            AnalysisError::Bounds(BoundsError::StarMismatch { .. }) => 1,
            _ => 2,
        }
    }
}

/// Structural facts that need no state sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub name: String,
    pub crossings: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    pub euler_characteristic: i64,
    pub alternating: bool,
    pub reduced: bool,
    pub checkerboard_colorable: bool,
    pub homologically_adequate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub writhe: Option<i64>,
}

pub struct Structure {
    pub faces: FaceSet,
    pub model: HomologyModel,
    pub summary: DiagramSummary,
}

pub fn structure(d: &SurfaceDiagram) -> Structure {
    let faces = analyze_surface(d);
    let model = build_homology(d, &faces);
    let summary = DiagramSummary {
        name: d.name().to_string(),
        crossings: d.crossing_count(),
        edges: d.edge_count(),
        faces: faces.face_count(),
        genus: faces.genus,
        euler_characteristic: faces.euler_characteristic,
        alternating: d.check_alternating(),
        reduced: check_reduced(d, &faces, &model),
        checkerboard_colorable: checkerboard_coloring(d, &faces).is_some(),
        homologically_adequate: homological_adequacy(d, &model),
        writhe: d.writhe().ok(),
    };
    Structure {
        faces,
        model,
        summary,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Coefficients {
    pub bracket: CoefficientReport,
    pub graph: CoefficientReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Censuses {
    pub a: GraphCensus,
    pub b: GraphCensus,
    pub long_short: LongShortCensus,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub diagram: DiagramSummary,
    pub bracket: BracketResult,
    pub coefficients: Coefficients,
    pub censuses: Censuses,
    pub twist: TwistDecomposition,
    pub verification: VerificationReport,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn graph_side(
    d: &SurfaceDiagram,
    s: &Structure,
) -> Result<(Censuses, TwistDecomposition), AnalysisError> {
    let (ga, gb) = build_state_graphs(d, &s.model)?;
    let a = graph_census(&ga, &s.model);
    let b = graph_census(&gb, &s.model);
    let twist = twist_regions(d, &s.faces)?;
    let long_short = long_short_census(&s.faces, (&ga, &gb), (&a, &b), &twist)?;
    Ok((Censuses { a, b, long_short }, twist))
}

pub fn analyze(d: &SurfaceDiagram, opts: BracketOptions) -> Result<Report, AnalysisError> {
    let s = structure(d);
    let result = bracket(d, &s.model, opts)?;
    let from_bracket = extract_coefficients(&result)?;
    let (censuses, twist) = graph_side(d, &s)?;
    let from_graph = predict_coefficients(&censuses.a, &censuses.b);
    let verification = verify_all(&VerifyInput {
        bracket_side: &from_bracket,
        graph_side: &from_graph,
        census_a: &censuses.a,
        census_b: &censuses.b,
        long_short: &censuses.long_short,
        twist: &twist,
        crossings: d.crossing_count(),
        genus: s.summary.genus,
        euler_characteristic: s.summary.euler_characteristic,
        reduced_alternating: s.summary.reduced && s.summary.alternating,
    })?;
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        diagram: s.summary,
        bracket: result,
        coefficients: Coefficients {
            bracket: from_bracket,
            graph: from_graph,
        },
        censuses,
        twist,
        verification,
    })
}
