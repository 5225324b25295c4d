//! Incremental measurement of one- and two-dimensional structural entropy on
//! dynamic graphs.
//!
//! A graph `G0` receives an incremental sequence of edges `xi`. Instead of
//! recomputing entropy on `G0 ⊕ xi` from scratch, the measurement keeps a few
//! aggregate statistics of `G0` (its structural expressions) and updates them
//! from the local changes that `xi` induces.
//!
//! ```
//! use incse::{incre_1dse, rfs_1d, Graph, IncrementalSequence};
//!
//! let g0 = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
//! let xi = IncrementalSequence::from_edges(vec![(3, 4), (4, 0)]).unwrap();
//! let fast = incre_1dse(&g0, &xi).unwrap();
//! let slow = rfs_1d(&g0, &xi).unwrap();
//! assert!((fast - slow).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod louvain;
pub mod measure;
pub mod partition;
pub mod rfs;
pub mod tree;

pub use bounds::{bounds_1d, bounds_2d, Bounds};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, IncrementalSequence, NodeId, SequenceViolation, ViolationRule};
pub use louvain::{louvain, Louvain};
pub use measure::{
    incre_1dse, incre_2dse, IncrementalData, Measurement, StructuralState1D, StructuralState2D,
};
pub use partition::{modularity, CommunityId, Partition};
pub use rfs::{rfs_1d, rfs_2d, rfs_2d_with_partition};
pub use tree::{
    adjust_one_dim_tree, adjust_two_dim_tree, build_one_dim_tree, build_two_dim_tree,
    node_strategy_condition, structural_entropy, CommunityStats, EncodingTree, OneDimTree,
    TwoDimTree,
};
