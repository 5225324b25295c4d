use std::collections::{BTreeMap, HashMap};

use crate::graph::{Graph, NodeId};

pub type CommunityId = u32;

/// A hard partition of a node set into communities `0..r`.
///
/// Community ids are canonical: communities are numbered in ascending order
/// of their smallest member, so two equal partitions compare equal no matter
/// how they were labeled on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: BTreeMap<NodeId, CommunityId>,
    count: u32,
}

impl Partition {
    /// Relabels an arbitrary assignment into canonical form.
    pub fn new<L: Copy + Eq + std::hash::Hash>(
        assignment: impl IntoIterator<Item = (NodeId, L)>,
    ) -> Self {
        let raw: BTreeMap<NodeId, L> = assignment.into_iter().collect();
        let mut relabel: HashMap<L, CommunityId> = HashMap::new();
        let mut out = BTreeMap::new();
        for (v, label) in raw {
            let next = relabel.len() as CommunityId;
            let c = *relabel.entry(label).or_insert(next);
            out.insert(v, c);
        }
        Partition {
            count: relabel.len() as u32,
            assignment: out,
        }
    }

    /// All nodes of `g` in one community.
    pub fn whole(g: &Graph) -> Self {
        Partition::new(g.nodes().map(|v| (v, 0u32)))
    }

    /// Every node of `g` in its own community.
    pub fn singletons(g: &Graph) -> Self {
        Partition::new(g.nodes().map(|v| (v, v)))
    }

    pub fn community_of(&self, v: NodeId) -> Option<CommunityId> {
        self.assignment.get(&v).copied()
    }

    /// Number of communities `r`.
    pub fn community_count(&self) -> usize {
        self.count as usize
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `(node, community)` in ascending node order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, CommunityId)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.community_count()];
        for (v, c) in self.iter() {
            out[c as usize].push(v);
        }
        out
    }

    pub(crate) fn assignment(&self) -> &BTreeMap<NodeId, CommunityId> {
        &self.assignment
    }
}

/// Newman modularity of `p` on `g` at the given resolution.
pub fn modularity(g: &Graph, p: &Partition, resolution: f64) -> f64 {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let r = p.community_count();
    let mut internal = vec![0.0f64; r];
    let mut volume = vec![0.0f64; r];
    for (v, d) in g.degrees() {
        if let Some(c) = p.community_of(v) {
            volume[c as usize] += d as f64;
        }
    }
    for (u, v) in g.edges() {
        match (p.community_of(u), p.community_of(v)) {
            (Some(a), Some(b)) if a == b => internal[a as usize] += 1.0,
            _ => {}
        }
    }
    internal
        .iter()
        .zip(&volume)
        .map(|(&l, &vol)| l / m - resolution * (vol / (2.0 * m)).powi(2))
        .sum()
}
