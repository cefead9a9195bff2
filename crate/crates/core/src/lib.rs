//! Safe kernelization rules for treewidth parameterized by a vertex cover or
//! a feedback vertex set, exact subset-DP oracles to check them against, and
//! generators for the lower-bound compositions.
//!
//! Graphs are immutable values; every rule returns a new [`Instance`] and a
//! [`TraceStep`] whose edge delta can be replayed.

pub mod exact;
pub mod fvs_kernel;
pub mod graph;
pub mod io;
pub mod lowerbound;
pub mod modulators;
pub mod random;
pub mod reduction;
pub mod suites;
pub mod vc_kernel;

pub use exact::{OracleError, TreeDecomposition};
pub use graph::{Edge, Graph, GraphError, Vertex, VertexSet, WeightedGraph};
pub use modulators::{Instance, ModulatorClass};
pub use reduction::{ReductionOutcome, Rule, TraceStep, Verdict};
