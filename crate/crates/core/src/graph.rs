//! Simple undirected graphs and ordered edge-insertion sequences.
//!
//! A dynamic graph is an original snapshot `G0` plus incremental sequences of
//! edges. An edge may introduce at most one node that is not yet present, and
//! may not repeat an existing edge; [`Graph::validate_sequence`] checks both
//! rules edge by edge in sequence order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Node identifier. Ids are arbitrary non-negative integers and need not be
/// contiguous.
pub type NodeId = u64;

pub type Edge = (NodeId, NodeId);

fn canonical((u, v): Edge) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph with cached degrees (the neighbor set sizes).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: BTreeMap<NodeId, BTreeSet<NodeId>>,
    edge_count: u64,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list. Self-loops and repeated edges are
    /// rejected; the node set is exactly the set of endpoints.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop {
                    node: u,
                    line: None,
                });
            }
            if !g.insert_edge(u, v) {
                return Err(Error::DuplicateEdge { u, v, line: None });
            }
        }
        Ok(g)
    }

    /// Inserts `(u, v)` without the connectivity rule. Returns `false` when
    /// the edge already exists. Callers must reject self-loops first.
    pub(crate) fn insert_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        debug_assert_ne!(u, v);
        if !self.adjacency.entry(u).or_default().insert(v) {
            return false;
        }
        self.adjacency.entry(v).or_default().insert(u);
        self.edge_count += 1;
        true
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges `m`.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Degree of `v`, 0 for absent nodes.
    pub fn degree(&self, v: NodeId) -> u64 {
        self.adjacency.get(&v).map_or(0, |n| n.len() as u64)
    }

    pub fn max_degree(&self) -> u64 {
        self.adjacency
            .values()
            .map(|n| n.len() as u64)
            .max()
            .unwrap_or(0)
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency.keys().copied()
    }

    /// `(node, degree)` pairs in ascending id order.
    pub fn degrees(&self) -> impl Iterator<Item = (NodeId, u64)> + '_ {
        self.adjacency.iter().map(|(&v, n)| (v, n.len() as u64))
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency.get(&v).into_iter().flatten().copied()
    }

    pub(crate) fn neighbor_set(&self, v: NodeId) -> Option<&BTreeSet<NodeId>> {
        self.adjacency.get(&v)
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn max_node_id(&self) -> Option<NodeId> {
        self.adjacency.keys().next_back().copied()
    }

    /// Checks that `xi` is a legal incremental sequence for this graph: every
    /// edge has an endpoint that is already present (in the graph or earlier
    /// in `xi`), and no edge repeats one in the graph or earlier in `xi`.
    ///
    /// Reports the first offending edge. Never modifies the graph.
    pub fn validate_sequence(&self, xi: &IncrementalSequence) -> Result<(), SequenceViolation> {
        let mut appeared: HashSet<NodeId> = HashSet::new();
        let mut seen: HashSet<Edge> = HashSet::with_capacity(xi.len());
        for (index, &(u, v)) in xi.edges().iter().enumerate() {
            let violation = |rule| SequenceViolation {
                index,
                edge: (u, v),
                rule,
            };
            if u == v {
                return Err(violation(ViolationRule::SelfLoop));
            }
            let known = |x: NodeId| self.contains_node(x) || appeared.contains(&x);
            if !known(u) && !known(v) {
                return Err(violation(ViolationRule::Disconnected));
            }
            if self.contains_edge(u, v) || !seen.insert(canonical((u, v))) {
                return Err(violation(ViolationRule::Duplicate));
            }
            appeared.insert(u);
            appeared.insert(v);
        }
        Ok(())
    }

    /// `CMB(G, xi)`: the graph obtained by inserting the edges of `xi` in
    /// order. `self` is left untouched.
    pub fn combine(&self, xi: &IncrementalSequence) -> Result<Graph> {
        let mut g = self.clone();
        g.extend_with(xi)?;
        Ok(g)
    }

    /// In-place form of [`Graph::combine`]. On error the graph holds the
    /// prefix of `xi` before the offending edge.
    pub(crate) fn extend_with(&mut self, xi: &IncrementalSequence) -> Result<()> {
        for (index, &(u, v)) in xi.edges().iter().enumerate() {
            let violation = |rule| SequenceViolation {
                index,
                edge: (u, v),
                rule,
            };
            if u == v {
                return Err(violation(ViolationRule::SelfLoop).into());
            }
            if !self.contains_node(u) && !self.contains_node(v) {
                return Err(violation(ViolationRule::Disconnected).into());
            }
            if !self.insert_edge(u, v) {
                return Err(violation(ViolationRule::Duplicate).into());
            }
        }
        Ok(())
    }

    /// True when every node is reachable from the smallest node.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.adjacency.keys().next().copied() else {
            return true;
        };
        let mut seen = HashSet::with_capacity(self.node_count());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.node_count()
    }
}

/// Which legality rule an incremental edge broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationRule {
    /// Neither endpoint is in the graph or appeared earlier in the sequence.
    Disconnected,
    /// The edge is already in the graph or earlier in the sequence.
    Duplicate,
    SelfLoop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceViolation {
    pub index: usize,
    pub edge: Edge,
    pub rule: ViolationRule,
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.rule {
            ViolationRule::Disconnected => "neither endpoint is present",
            ViolationRule::Duplicate => "edge already present",
            ViolationRule::SelfLoop => "self-loop",
        };
        write!(
            f,
            "edge {} ({}, {}): {what}",
            self.index, self.edge.0, self.edge.1
        )
    }
}

impl std::error::Error for SequenceViolation {}

/// An ordered list of edge insertions. Order is significant.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IncrementalSequence {
    edges: Vec<Edge>,
}

impl IncrementalSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub const fn empty() -> Self {
        Self { edges: Vec::new() }
    }

    /// Wraps an edge list, rejecting self-loops. Legality against a graph is
    /// checked separately by [`Graph::validate_sequence`].
    pub fn from_edges(edges: Vec<Edge>) -> Result<Self> {
        if let Some(&(u, _)) = edges.iter().find(|(u, v)| u == v) {
            return Err(Error::SelfLoop {
                node: u,
                line: None,
            });
        }
        Ok(Self { edges })
    }

    pub(crate) fn push_unchecked(&mut self, e: Edge) {
        debug_assert_ne!(e.0, e.1);
        self.edges.push(e);
    }

    /// Incremental size `n`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    /// The `=>` operator: `self` followed by `other`.
    pub fn concat(&self, other: &IncrementalSequence) -> IncrementalSequence {
        let mut edges = Vec::with_capacity(self.len() + other.len());
        edges.extend_from_slice(&self.edges);
        edges.extend_from_slice(&other.edges);
        IncrementalSequence { edges }
    }

    /// First `k` edges (all of them if `k` exceeds the length).
    pub fn prefix(&self, k: usize) -> IncrementalSequence {
        IncrementalSequence {
            edges: self.edges[..k.min(self.len())].to_vec(),
        }
    }

    /// `chi(xi)`: every node that appears as an endpoint.
    pub fn appeared_nodes(&self) -> BTreeSet<NodeId> {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }
}

impl<'a> IntoIterator for &'a IncrementalSequence {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}
