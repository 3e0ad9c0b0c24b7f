//! Contact graphs of paths on a grid: representations, contact extraction,
//! structural certificates, colorings, the 3-colorability reduction, the
//! line-graph bridge, bounded recognition search and a fixture catalog.

pub mod catalog;
pub mod certify;
pub mod coloring;
pub mod contact;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod grid;
pub mod linegraph;
pub mod recognition;
pub mod reduction;

pub use certify::{Certificate, Claim, K33Model, Verdict, Witness};
pub use coloring::{color_b0, color_cpg, is_k_colorable, verify_coloring, Coloring};
pub use contact::{classify_point, contact_graph, endpoint_weight, tau, weight_audit, HalfInt, PointClass, PointTag, WeightReport};
pub use embedding::{Direction, EmbeddedEdge, OrthogonalEmbedding, Point2};
pub use error::{CpgError, Result};
pub use graph::{IndexedGraph, SimpleGraph};
pub use grid::{CpgRepresentation, GridPath, GridPoint, ValidationReport, Violation, ViolationKind};
pub use linegraph::{edge_label, is_claw_free, line_graph, rectilinear_from_rep, rep_from_rectilinear, DrawnEdge, RectilinearDrawing};
pub use recognition::{recognize, recognize_b0, recognize_bk, GridBounds, SearchOptions, SearchOutcome, SearchReport, SearchStats};
pub use reduction::{reduce_3col, restrict_coloring, extend_coloring, GadgetKind, Origin, ReductionOutput};
pub use catalog::{fixture, fixtures, six_regular_family, CatalogEntry, Expected};
