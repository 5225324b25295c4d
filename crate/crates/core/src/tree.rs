//! Encoding trees of height one and two, the structural entropy definition
//! formula, and the dynamic adjustment strategies.
//!
//! A height-one tree has every graph node as a leaf directly under the root,
//! so it is fully determined by the node set. A height-two tree groups the
//! leaves into communities (the 1-height tree nodes); each community caches
//! its volume `V` (degree sum) and cut `g` (edges leaving it).
//!
//! Adjustment under an incremental sequence never moves an existing node.
//! A new node joins the community of the neighbor through which it first
//! enters the sequence.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, IncrementalSequence, NodeId};
use crate::partition::{CommunityId, Partition};

/// Volume and cut of one community.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CommunityStats {
    pub volume: u64,
    pub cut: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDimTree {
    leaves: BTreeSet<NodeId>,
}

impl OneDimTree {
    pub fn leaves(&self) -> &BTreeSet<NodeId> {
        &self.leaves
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDimTree {
    assignment: BTreeMap<NodeId, CommunityId>,
    communities: Vec<CommunityStats>,
}

impl TwoDimTree {
    pub fn community_of(&self, v: NodeId) -> Option<CommunityId> {
        self.assignment.get(&v).copied()
    }

    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    pub fn stats(&self, c: CommunityId) -> CommunityStats {
        self.communities[c as usize]
    }

    /// Per-community stats indexed by community id.
    pub fn communities(&self) -> &[CommunityStats] {
        &self.communities
    }

    pub fn assignment(&self) -> impl Iterator<Item = (NodeId, CommunityId)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    /// The leaf partition, canonically relabeled.
    pub fn partition(&self) -> Partition {
        Partition::new(self.assignment())
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }
}

/// Encoding tree of height `K` in {1, 2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncodingTree {
    OneDim(OneDimTree),
    TwoDim(TwoDimTree),
}

impl EncodingTree {
    pub fn height(&self) -> u8 {
        match self {
            EncodingTree::OneDim(_) => 1,
            EncodingTree::TwoDim(_) => 2,
        }
    }

    pub fn as_two_dim(&self) -> Result<&TwoDimTree> {
        match self {
            EncodingTree::TwoDim(t) => Ok(t),
            EncodingTree::OneDim(_) => Err(Error::WrongHeight {
                expected: 2,
                actual: 1,
            }),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            EncodingTree::OneDim(t) => t.leaves.len(),
            EncodingTree::TwoDim(t) => t.assignment.len(),
        }
    }

    fn covers_exactly(&self, g: &Graph) -> bool {
        if self.node_count() != g.node_count() {
            return false;
        }
        match self {
            EncodingTree::OneDim(t) => t.leaves.iter().copied().eq(g.nodes()),
            EncodingTree::TwoDim(t) => t.assignment.keys().copied().eq(g.nodes()),
        }
    }
}

/// The unique height-one tree of `g`.
pub fn build_one_dim_tree(g: &Graph) -> Result<EncodingTree> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(EncodingTree::OneDim(OneDimTree {
        leaves: g.nodes().collect(),
    }))
}

/// Height-two tree whose communities are the blocks of `partition`, which
/// must cover the node set of `g` exactly.
pub fn build_two_dim_tree(g: &Graph, partition: &Partition) -> Result<EncodingTree> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if partition.len() != g.node_count() {
        return Err(Error::PartitionMismatch(format!(
            "{} nodes assigned, graph has {}",
            partition.len(),
            g.node_count()
        )));
    }
    if let Some(v) = g.nodes().find(|&v| partition.community_of(v).is_none()) {
        return Err(Error::PartitionMismatch(format!("node {v} unassigned")));
    }
    let assignment = partition.assignment().clone();
    let communities = community_stats(g, &assignment, partition.community_count());
    Ok(EncodingTree::TwoDim(TwoDimTree {
        assignment,
        communities,
    }))
}

pub(crate) fn community_stats(
    g: &Graph,
    assignment: &BTreeMap<NodeId, CommunityId>,
    count: usize,
) -> Vec<CommunityStats> {
    let mut stats = vec![CommunityStats::default(); count];
    for (v, d) in g.degrees() {
        stats[assignment[&v] as usize].volume += d;
    }
    for (u, v) in g.edges() {
        let (a, b) = (assignment[&u], assignment[&v]);
        if a != b {
            stats[a as usize].cut += 1;
            stats[b as usize].cut += 1;
        }
    }
    stats
}

/// `-x log2 x` with `0 log 0 = 0`.
pub(crate) fn plogp_neg(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        -(num / den) * (num / den).log2()
    }
}

/// Structural entropy of `g` under `tree`, evaluated from the definition:
/// the sum over non-root tree nodes of `-(g_a / 2m) log2(V_a / V_parent)`.
///
/// Volumes and cuts are recounted from `g`; only the tree's node-to-community
/// map is used. Community terms are summed in ascending community id, then
/// leaf terms in ascending node id.
pub fn structural_entropy(g: &Graph, tree: &EncodingTree) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !tree.covers_exactly(g) {
        return Err(Error::TreeMismatch(format!(
            "tree has {} leaves, graph has {} nodes",
            tree.node_count(),
            g.node_count()
        )));
    }
    let two_m = 2.0 * g.edge_count() as f64;
    match tree {
        EncodingTree::OneDim(_) => Ok(g.degrees().map(|(_, d)| plogp_neg(d as f64, two_m)).sum()),
        EncodingTree::TwoDim(t) => {
            let stats = community_stats(g, &t.assignment, t.communities.len());
            let mut h = 0.0;
            for s in &stats {
                if s.cut > 0 {
                    h -= (s.cut as f64 / two_m) * (s.volume as f64 / two_m).log2();
                }
            }
            for (v, d) in g.degrees() {
                let vol = stats[t.assignment[&v] as usize].volume as f64;
                h -= (d as f64 / two_m) * (d as f64 / vol).log2();
            }
            Ok(h)
        }
    }
}

/// Adds one leaf under the root for every node of `xi` not yet in the tree.
pub fn adjust_one_dim_tree(tree: &EncodingTree, xi: &IncrementalSequence) -> Result<EncodingTree> {
    let EncodingTree::OneDim(t) = tree else {
        return Err(Error::WrongHeight {
            expected: 1,
            actual: tree.height(),
        });
    };
    let mut leaves = t.leaves.clone();
    leaves.extend(xi.iter().flat_map(|(u, v)| [u, v]));
    Ok(EncodingTree::OneDim(OneDimTree { leaves }))
}

/// Communities of the two endpoints of an incremental edge, assigning a new
/// endpoint to its partner's community. `known` answers for nodes of the
/// original tree; `fresh` accumulates assignments of new nodes in the order
/// they first appear.
pub(crate) fn resolve_endpoints(
    known: impl Fn(NodeId) -> Option<CommunityId>,
    fresh: &mut IndexMap<NodeId, CommunityId>,
    u: NodeId,
    v: NodeId,
) -> Result<(CommunityId, CommunityId)> {
    let lookup = |x: NodeId, fresh: &IndexMap<NodeId, CommunityId>| {
        known(x).or_else(|| fresh.get(&x).copied())
    };
    match (lookup(u, fresh), lookup(v, fresh)) {
        (Some(a), Some(b)) => Ok((a, b)),
        (None, Some(b)) => {
            fresh.insert(u, b);
            Ok((b, b))
        }
        (Some(a), None) => {
            fresh.insert(v, a);
            Ok((a, a))
        }
        (None, None) => Err(Error::UnassignedEdge { u, v }),
    }
}

/// Applies the edge and node strategies for `xi` to a height-two tree over
/// `g`: existing nodes keep their communities, new nodes join the community
/// of the neighbor that introduces them, and volumes and cuts are updated.
pub fn adjust_two_dim_tree(
    tree: &EncodingTree,
    g: &Graph,
    xi: &IncrementalSequence,
) -> Result<EncodingTree> {
    let t = tree.as_two_dim()?;
    g.validate_sequence(xi)?;
    let mut fresh = IndexMap::new();
    let mut communities = t.communities.clone();
    for (u, v) in xi.iter() {
        let (a, b) = resolve_endpoints(|x| t.community_of(x), &mut fresh, u, v)?;
        if a == b {
            communities[a as usize].volume += 2;
        } else {
            for c in [a, b] {
                communities[c as usize].volume += 1;
                communities[c as usize].cut += 1;
            }
        }
    }
    let mut assignment = t.assignment.clone();
    assignment.extend(fresh);
    Ok(EncodingTree::TwoDim(TwoDimTree {
        assignment,
        communities,
    }))
}

/// Sufficient condition under which attaching a new node to a neighbor's
/// community `alpha` strictly minimizes the updated entropy over all
/// community choices: `(2m + 2) / (V_alpha + 2) >= e`.
///
/// Diagnostic only; the adjustment strategy applies the neighbor rule
/// regardless.
pub fn node_strategy_condition(m: u64, v_alpha: u64) -> bool {
    (2 * m + 2) as f64 / (v_alpha + 2) as f64 >= std::f64::consts::E
}
