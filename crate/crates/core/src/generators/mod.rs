//! Original-graph and incremental-sequence generators.
//!
//! Every generator draws from one seeded ChaCha stream, so a fixed
//! configuration reproduces the same sequence byte for byte. Sequences are
//! legal with respect to the graph they were generated on.

mod dataset;
mod embedding;
mod hawkes;
mod partition_graph;
mod pbp;
mod triad;

pub use dataset::{
    build_dataset, generate_dataset, Dataset, DatasetConfig, Manifest, Process, Snapshot,
};
pub use embedding::{embed_nodes, NodeEmbedding};
pub use hawkes::hawkes_sequence;
pub use partition_graph::{expected_edge_count, random_partition_graph, scaled_sizes};
pub use pbp::pbp_sequence;
pub use triad::triad_sequence;

use rand::Rng;

use crate::graph::{Graph, IncrementalSequence, NodeId};

/// SplitMix64 finalizer, used to derive independent sub-seeds.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut x = master;
    for &p in parts {
        x ^= p
            .wrapping_add(0x9e37_79b9_7f4a_7c15)
            .wrapping_add(x << 6)
            .wrapping_add(x >> 2);
        x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^= x >> 31;
    }
    x
}

/// A graph growing edge by edge while the sequence is recorded.
struct Growing {
    graph: Graph,
    /// Every current node, for uniform sampling.
    nodes: Vec<NodeId>,
    next_id: NodeId,
    xi: IncrementalSequence,
}

impl Growing {
    fn new(g: &Graph) -> Self {
        Self {
            graph: g.clone(),
            nodes: g.nodes().collect(),
            next_id: g.max_node_id().map_or(0, |v| v + 1),
            xi: IncrementalSequence::new(),
        }
    }

    fn random_node(&self, rng: &mut impl Rng) -> NodeId {
        self.nodes[rng.random_range(0..self.nodes.len())]
    }

    fn random_neighbor(&self, v: NodeId, rng: &mut impl Rng) -> Option<NodeId> {
        let set = self.graph.neighbor_set(v)?;
        if set.is_empty() {
            return None;
        }
        set.iter().nth(rng.random_range(0..set.len())).copied()
    }

    /// Records the edge `(existing, fresh)` where `fresh` is a new node id.
    fn attach_new(&mut self, existing: NodeId) -> NodeId {
        let fresh = self.next_id;
        self.next_id += 1;
        self.graph.insert_edge(existing, fresh);
        self.nodes.push(fresh);
        self.xi.push_unchecked((existing, fresh));
        fresh
    }

    /// Records an edge between two present nodes. Returns false if it exists.
    fn connect(&mut self, u: NodeId, v: NodeId) -> bool {
        debug_assert!(self.graph.contains_node(u) && self.graph.contains_node(v));
        if u == v || !self.graph.insert_edge(u, v) {
            return false;
        }
        self.xi.push_unchecked((u, v));
        true
    }
}

fn check_probability(name: &str, p: f64) -> crate::Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(crate::Error::Config(format!(
            "{name} = {p} is not in [0, 1]"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(7, &[1, 2]);
        assert_eq!(a, derive_seed(7, &[1, 2]));
        assert_ne!(a, derive_seed(7, &[2, 1]));
        assert_ne!(a, derive_seed(8, &[1, 2]));
    }
}
