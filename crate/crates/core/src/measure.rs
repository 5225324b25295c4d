//! Incremental measurement of updated structural entropy.
//!
//! Measurement has two stages. Initialization records the Structural Data of
//! the original graph (degrees, community volumes and cuts, `m`) and folds it
//! into three sums, the Structural Expressions:
//!
//! ```text
//! S_N = sum_i d_i log d_i
//! S_C = sum_a (g_a - V_a) log V_a          (two-dimensional only)
//! S_G = -2m  (one-dimensional)   or   -sum_a g_a  (two-dimensional)
//! ```
//!
//! For a sequence of `n` edges, the Global Invariant
//! `-(S_N + S_C + S_G log(2m + 2n)) / (2m + 2n)` depends on `n` alone, and the
//! Local Difference corrects it using only the nodes and communities the
//! sequence touches. Their sum is exactly the entropy of the updated graph
//! under the adjusted encoding tree.
//!
//! A state is immutable once built and can measure any number of sequences
//! against the same original graph.

use std::collections::HashMap;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, IncrementalSequence, NodeId, SequenceViolation, ViolationRule};
use crate::partition::CommunityId;
use crate::tree::{self, resolve_endpoints, CommunityStats, EncodingTree};

/// `x log2 x` with `0 log 0 = 0`.
fn xlogx(x: u64) -> f64 {
    if x == 0 {
        0.0
    } else {
        let x = x as f64;
        x * x.log2()
    }
}

/// Structural Data and Expressions of an original graph for the
/// one-dimensional tree.
#[derive(Debug, Clone)]
pub struct StructuralState1D {
    edge_count: u64,
    s_n: f64,
    s_g: f64,
    degrees: HashMap<NodeId, u64>,
}

/// Structural Data and Expressions for a two-dimensional tree.
#[derive(Debug, Clone)]
pub struct StructuralState2D {
    edge_count: u64,
    s_n: f64,
    s_c: f64,
    s_g: f64,
    degrees: HashMap<NodeId, u64>,
    assignment: HashMap<NodeId, CommunityId>,
    communities: Vec<CommunityStats>,
}

/// Volume and cut increments of one community.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CommunityDelta {
    pub volume: u64,
    pub cut: u64,
}

/// Per-sequence deltas: degree increments of touched nodes and, for
/// two-dimensional trees, volume and cut increments of touched communities
/// plus the communities chosen for new nodes. Maps iterate in first-touch
/// order.
#[derive(Debug, Clone, Default)]
pub struct IncrementalData {
    n: usize,
    degree_delta: IndexMap<NodeId, u64>,
    community_delta: IndexMap<CommunityId, CommunityDelta>,
    new_assignments: IndexMap<NodeId, CommunityId>,
}

impl IncrementalData {
    /// Incremental size `n`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Degree increment of `v` (0 when untouched).
    pub fn degree_delta(&self, v: NodeId) -> u64 {
        self.degree_delta.get(&v).copied().unwrap_or(0)
    }

    /// The degree-changed node set, in first-touch order.
    pub fn changed_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.degree_delta.keys().copied()
    }

    pub fn community_delta(&self, c: CommunityId) -> CommunityDelta {
        self.community_delta.get(&c).copied().unwrap_or_default()
    }

    /// Communities whose volume or cut changed, in first-touch order.
    pub fn changed_communities(&self) -> impl Iterator<Item = CommunityId> + '_ {
        self.community_delta.keys().copied()
    }

    /// Communities assigned to new nodes by the node strategy.
    pub fn new_assignments(&self) -> &IndexMap<NodeId, CommunityId> {
        &self.new_assignments
    }

    fn bump_degrees(&mut self, u: NodeId, v: NodeId) {
        *self.degree_delta.entry(u).or_insert(0) += 1;
        *self.degree_delta.entry(v).or_insert(0) += 1;
    }
}

/// Global Invariant plus Local Difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub global_invariant: f64,
    pub local_difference: f64,
}

impl Measurement {
    /// Updated structural entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.global_invariant + self.local_difference
    }
}

fn total_volume(m: u64, n: usize) -> f64 {
    (2 * m + 2 * n as u64) as f64
}

fn degree_term(degrees: &HashMap<NodeId, u64>, inc: &IncrementalData) -> f64 {
    inc.degree_delta
        .iter()
        .map(|(v, &delta)| {
            let d = degrees.get(v).copied().unwrap_or(0);
            xlogx(d + delta) - xlogx(d)
        })
        .sum()
}

fn disconnected(index: usize, u: NodeId, v: NodeId) -> Error {
    Error::IllegalSequence(SequenceViolation {
        index,
        edge: (u, v),
        rule: ViolationRule::Disconnected,
    })
}

fn self_loop(index: usize, u: NodeId) -> Error {
    Error::IllegalSequence(SequenceViolation {
        index,
        edge: (u, u),
        rule: ViolationRule::SelfLoop,
    })
}

impl StructuralState1D {
    /// Records degrees and `m` of `g` and computes `S_N` and `S_G`.
    pub fn new(g: &Graph) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let degrees: HashMap<_, _> = g.degrees().collect();
        let s_n = g.degrees().map(|(_, d)| xlogx(d)).sum();
        Ok(Self {
            edge_count: g.edge_count(),
            s_n,
            s_g: -2.0 * g.edge_count() as f64,
            degrees,
        })
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// `S_N = sum d log2 d`.
    pub fn s_n(&self) -> f64 {
        self.s_n
    }

    /// `S_G = -2m`.
    pub fn s_g(&self) -> f64 {
        self.s_g
    }

    pub fn degree(&self, v: NodeId) -> u64 {
        self.degrees.get(&v).copied().unwrap_or(0)
    }

    /// Single in-order pass over `xi` collecting degree increments.
    ///
    /// Only the connectivity rule is checked here; repeated edges are
    /// detected by [`Graph::validate_sequence`], which needs the full edge
    /// set.
    pub fn extract(&self, xi: &IncrementalSequence) -> Result<IncrementalData> {
        let mut inc = IncrementalData {
            n: xi.len(),
            degree_delta: IndexMap::with_capacity(xi.len()),
            ..Default::default()
        };
        for (i, (u, v)) in xi.iter().enumerate() {
            if u == v {
                return Err(self_loop(i, u));
            }
            let known = |x| self.degrees.contains_key(&x) || inc.degree_delta.contains_key(&x);
            if !known(u) && !known(v) {
                return Err(disconnected(i, u, v));
            }
            inc.bump_degrees(u, v);
        }
        Ok(inc)
    }

    /// `H_GI(G, n) = -(S_N + S_G log2(2m + 2n)) / (2m + 2n)`; constant time.
    pub fn global_invariant(&self, n: usize) -> f64 {
        let total = total_volume(self.edge_count, n);
        -(self.s_n + self.s_g * total.log2()) / total
    }

    /// `dL1 = -(dS_N + dS_G) / (2m + 2n)` over the degree-changed nodes.
    pub fn local_difference(&self, inc: &IncrementalData) -> f64 {
        if inc.n == 0 {
            return 0.0;
        }
        let total = total_volume(self.edge_count, inc.n);
        let ds_n = degree_term(&self.degrees, inc);
        let ds_g = -2.0 * inc.n as f64 * total.log2();
        -(ds_n + ds_g) / total
    }

    /// Measurement stage: extraction, Global Invariant and Local Difference.
    pub fn measure(&self, xi: &IncrementalSequence) -> Result<Measurement> {
        let inc = self.extract(xi)?;
        Ok(Measurement {
            global_invariant: self.global_invariant(inc.n),
            local_difference: self.local_difference(&inc),
        })
    }
}

impl StructuralState2D {
    /// Records degrees, community volumes and cuts, and `m`; computes `S_N`,
    /// `S_C` and `S_G`. Volumes and cuts are recounted from `g`.
    pub fn new(g: &Graph, tree: &EncodingTree) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let t = tree.as_two_dim()?;
        if t.node_count() != g.node_count() || !t.assignment().map(|(v, _)| v).eq(g.nodes()) {
            return Err(Error::TreeMismatch(format!(
                "tree has {} leaves, graph has {} nodes",
                t.node_count(),
                g.node_count()
            )));
        }
        let ordered: std::collections::BTreeMap<_, _> = t.assignment().collect();
        let communities = tree::community_stats(g, &ordered, t.community_count());
        let s_n = g.degrees().map(|(_, d)| xlogx(d)).sum();
        let s_c = communities
            .iter()
            .map(|s| (s.cut as f64 - s.volume as f64) * (s.volume as f64).log2())
            .sum();
        let s_g = -(communities.iter().map(|s| s.cut).sum::<u64>() as f64);
        Ok(Self {
            edge_count: g.edge_count(),
            s_n,
            s_c,
            s_g,
            degrees: g.degrees().collect(),
            assignment: t.assignment().collect(),
            communities,
        })
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn s_n(&self) -> f64 {
        self.s_n
    }

    /// `S_C = sum (g_a - V_a) log2 V_a`.
    pub fn s_c(&self) -> f64 {
        self.s_c
    }

    /// `S_G = -sum g_a`.
    pub fn s_g(&self) -> f64 {
        self.s_g
    }

    pub fn community_stats(&self) -> &[CommunityStats] {
        &self.communities
    }

    pub fn community_of(&self, v: NodeId) -> Option<CommunityId> {
        self.assignment.get(&v).copied()
    }

    /// Single in-order pass over `xi` collecting degree, volume and cut
    /// increments while assigning new nodes to their neighbor's community.
    pub fn extract(&self, xi: &IncrementalSequence) -> Result<IncrementalData> {
        let mut inc = IncrementalData {
            n: xi.len(),
            degree_delta: IndexMap::with_capacity(xi.len()),
            ..Default::default()
        };
        for (i, (u, v)) in xi.iter().enumerate() {
            if u == v {
                return Err(self_loop(i, u));
            }
            let (a, b) = resolve_endpoints(
                |x| self.assignment.get(&x).copied(),
                &mut inc.new_assignments,
                u,
                v,
            )
            .map_err(|_| disconnected(i, u, v))?;
            inc.bump_degrees(u, v);
            if a == b {
                inc.community_delta.entry(a).or_default().volume += 2;
            } else {
                for c in [a, b] {
                    let d = inc.community_delta.entry(c).or_default();
                    d.volume += 1;
                    d.cut += 1;
                }
            }
        }
        Ok(inc)
    }

    /// `H_GI(G, n) = -(S_N + S_C + S_G log2(2m + 2n)) / (2m + 2n)`.
    pub fn global_invariant(&self, n: usize) -> f64 {
        let total = total_volume(self.edge_count, n);
        -(self.s_n + self.s_c + self.s_g * total.log2()) / total
    }

    /// `dL2 = -(dS_N + dS_C + dS_G) / (2m + 2n)` over the degree-changed
    /// nodes and changed communities.
    pub fn local_difference(&self, inc: &IncrementalData) -> f64 {
        if inc.n == 0 {
            return 0.0;
        }
        let total = total_volume(self.edge_count, inc.n);
        let ds_n = degree_term(&self.degrees, inc);
        let mut ds_c = 0.0;
        let mut cut_delta = 0u64;
        for (&c, delta) in &inc.community_delta {
            let s = self.communities[c as usize];
            let (g, vol) = (s.cut as f64, s.volume as f64);
            let (dg, dv) = (delta.cut as f64, delta.volume as f64);
            ds_c += (g + dg - vol - dv) * (vol + dv).log2() - (g - vol) * vol.log2();
            cut_delta += delta.cut;
        }
        let ds_g = -(cut_delta as f64) * total.log2();
        -(ds_n + ds_c + ds_g) / total
    }

    pub fn measure(&self, xi: &IncrementalSequence) -> Result<Measurement> {
        let inc = self.extract(xi)?;
        Ok(Measurement {
            global_invariant: self.global_invariant(inc.n),
            local_difference: self.local_difference(&inc),
        })
    }
}

/// Updated one-dimensional structural entropy of `CMB(g0, xi)`.
pub fn incre_1dse(g0: &Graph, xi: &IncrementalSequence) -> Result<f64> {
    g0.validate_sequence(xi)?;
    Ok(StructuralState1D::new(g0)?.measure(xi)?.entropy())
}

/// Updated two-dimensional structural entropy of `CMB(g0, xi)` under the
/// adjusted encoding tree.
pub fn incre_2dse(g0: &Graph, t0: &EncodingTree, xi: &IncrementalSequence) -> Result<f64> {
    g0.validate_sequence(xi)?;
    Ok(StructuralState2D::new(g0, t0)?.measure(xi)?.entropy())
}
