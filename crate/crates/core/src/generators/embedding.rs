use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::graph::{Graph, NodeId};

const SMOOTHING_ROUNDS: usize = 3;

/// Node vectors stored densely in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeEmbedding {
    dim: usize,
    ids: Vec<NodeId>,
    index: HashMap<NodeId, usize>,
    data: Vec<f64>,
}

impl NodeEmbedding {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, v: NodeId) -> Option<&[f64]> {
        self.index.get(&v).map(|&i| self.row(i))
    }

    pub(crate) fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub(crate) fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub(crate) fn position(&self, v: NodeId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Gives `fresh` a copy of `from`'s vector.
    pub fn copy_to(&mut self, from: NodeId, fresh: NodeId) {
        let i = self.index[&from];
        self.data
            .extend_from_within(i * self.dim..(i + 1) * self.dim);
        self.index.insert(fresh, self.ids.len());
        self.ids.push(fresh);
    }

    pub fn cosine(&self, a: NodeId, b: NodeId) -> f64 {
        cosine(self.get(a).unwrap(), self.get(b).unwrap())
    }
}

pub(crate) fn cosine(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 {
        0.0
    } else {
        dot / (nx * ny)
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|a| *a /= norm);
    }
}

/// Deterministic stand-in for a learned embedding. Each node starts from a
/// unit vector drawn from the stream `(seed, node id)`, then three rounds
/// replace every vector by the mean over itself and its neighbors. Vectors
/// are unit length on return.
pub fn embed_nodes(g: &Graph, dim: usize, seed: u64) -> NodeEmbedding {
    let ids: Vec<NodeId> = g.nodes().collect();
    let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut data = Vec::with_capacity(ids.len() * dim);
    for &v in &ids {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(v);
        let start = data.len();
        data.extend((0..dim).map(|_| -> f64 { StandardNormal.sample(&mut rng) }));
        normalize(&mut data[start..]);
    }

    let neighbors: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| g.neighbors(v).map(|w| index[&w]).collect())
        .collect();
    for _ in 0..SMOOTHING_ROUNDS {
        let mut next = data.clone();
        for (i, nbrs) in neighbors.iter().enumerate() {
            let row = &mut next[i * dim..(i + 1) * dim];
            for &j in nbrs {
                for (a, b) in row.iter_mut().zip(&data[j * dim..(j + 1) * dim]) {
                    *a += b;
                }
            }
            let k = (nbrs.len() + 1) as f64;
            row.iter_mut().for_each(|a| *a /= k);
        }
        data = next;
    }
    for i in 0..ids.len() {
        normalize(&mut data[i * dim..(i + 1) * dim]);
    }
    NodeEmbedding {
        dim,
        ids,
        index,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cliques() -> Graph {
        let mut edges = Vec::new();
        for base in [0u64, 8] {
            for i in 0..8 {
                for j in i + 1..8 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((7, 8));
        Graph::from_edges(edges).unwrap()
    }

    #[test]
    fn deterministic_and_unit_length() {
        let g = two_cliques();
        let a = embed_nodes(&g, 16, 3);
        assert_eq!(a, embed_nodes(&g, 16, 3));
        assert_ne!(a, embed_nodes(&g, 16, 4));
        for v in g.nodes() {
            let x = a.get(v).unwrap();
            assert_eq!(x.len(), 16);
            let norm: f64 = x.iter().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn adjacent_nodes_are_more_similar() {
        let g = two_cliques();
        let e = embed_nodes(&g, 16, 11);
        let (mut adj, mut adj_n, mut other, mut other_n) = (0.0, 0, 0.0, 0);
        for u in g.nodes() {
            for v in g.nodes().filter(|&v| v > u) {
                let c = e.cosine(u, v);
                if g.contains_edge(u, v) {
                    adj += c;
                    adj_n += 1;
                } else {
                    other += c;
                    other_n += 1;
                }
            }
        }
        assert!(adj / adj_n as f64 > other / other_n as f64);
    }

    #[test]
    fn new_node_copies_vector() {
        let g = two_cliques();
        let mut e = embed_nodes(&g, 4, 0);
        e.copy_to(3, 100);
        assert_eq!(e.get(3), e.get(100));
        assert_eq!(e.len(), 17);
    }
}
