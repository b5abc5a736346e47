//! Homological Kauffman brackets of link diagrams on closed orientable
//! surfaces, state graph censuses, twist numbers and the inequalities tying
//! them together.

pub mod analysis;
pub mod bounds;
pub mod bracket;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod homology;
pub mod polynomial;
pub mod stategraph;
pub mod states;
pub mod twist;

pub use analysis::{analyze, AnalysisError, Report};
pub use bracket::BracketOptions;
pub use diagram::{parse_diagram, SurfaceDiagram};
