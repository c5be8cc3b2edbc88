//! Flows with values in dihedral groups on graphs embedded in orientable surfaces.

pub mod coloring;
pub mod corpus;
pub mod dihedral;
pub mod existence;
pub mod flow;
pub mod graph;
pub mod text;

pub use coloring::{ColoringError, ColoringKind, EdgeColoring};
pub use dihedral::{AlgebraError, DihedralElement, GroupContext, Sign};
pub use flow::{FlowAssignment, FlowError};
pub use graph::{EmbeddedGraph, GraphError, Multigraph};
