//! Maximum independent sets in (S(1,1,3), K(p,p))-free graphs by augmenting
//! graphs, together with the enumeration and verification machinery for the
//! structural facts the algorithm relies on.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod finders;
pub mod graph;
pub mod instances;
pub mod io;
pub mod irreducible;
pub mod patterns;
pub mod solver;
pub mod verify;

pub use error::{Error, GraphError, Result};
pub use graph::{Graph, InducedSubgraph, VertexSet};
pub use patterns::{Pattern, PatternKind};
