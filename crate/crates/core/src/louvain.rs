//! Louvain modularity optimization.
//!
//! Alternates a local-move phase (each node joins the neighboring community
//! with the largest modularity gain) with aggregation of communities into
//! super-nodes, until a level produces no move. Node visit order in each
//! sweep is a seeded shuffle of ascending ids, and equal gains resolve to
//! the lowest community id, so a fixed seed gives a fixed result.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Louvain {
    seed: u64,
    resolution: f64,
    max_sweeps: usize,
    max_levels: usize,
}

impl Louvain {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            resolution: 1.0,
            max_sweeps: 100,
            max_levels: 32,
        }
    }

    /// Modularity resolution `gamma` (default 1).
    pub fn resolution(mut self, gamma: f64) -> Self {
        self.resolution = gamma;
        self
    }

    pub fn max_sweeps(mut self, sweeps: usize) -> Self {
        self.max_sweeps = sweeps;
        self
    }

    pub fn run(&self, g: &Graph) -> Result<Partition> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let ids: Vec<_> = g.nodes().collect();
        let mut level = WeightedGraph::from_graph(g, &ids);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        // membership[i] = super-node holding original node i
        let mut membership: Vec<usize> = (0..ids.len()).collect();

        for _ in 0..self.max_levels {
            let (community, moved) = self.local_moves(&level, &mut rng);
            if !moved {
                break;
            }
            let (next, relabel) = level.aggregate(&community);
            for m in membership.iter_mut() {
                *m = relabel[community[*m]];
            }
            level = next;
        }
        Ok(Partition::new(
            ids.iter().zip(&membership).map(|(&v, &c)| (v, c)),
        ))
    }

    fn local_moves(&self, g: &WeightedGraph, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = g.len();
        let two_m = g.total_weight;
        let mut community: Vec<usize> = (0..n).collect();
        let mut tot: Vec<f64> = g.strength.clone();
        let mut link = vec![0.0f64; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut moved_any = false;

        for _ in 0..self.max_sweeps {
            order.shuffle(rng);
            let mut moved = false;
            for &i in &order {
                let ci = community[i];
                let ki = g.strength[i];
                for &(j, w) in &g.adj[i] {
                    let c = community[j];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                tot[ci] -= ki;
                let gain = |c: usize, link_c: f64, tot: &[f64]| {
                    link_c - self.resolution * tot[c] * ki / two_m
                };
                let stay = gain(ci, link[ci], &tot);
                let mut best = ci;
                let mut best_gain = stay;
                for &c in &touched {
                    if c == ci {
                        continue;
                    }
                    let gc = gain(c, link[c], &tot);
                    let better = gc > best_gain + GAIN_EPS
                        || (best != ci && (gc - best_gain).abs() <= GAIN_EPS && c < best);
                    if better && gc > stay + GAIN_EPS {
                        best = c;
                        best_gain = gc;
                    }
                }
                tot[best] += ki;
                if best != ci {
                    community[i] = best;
                    moved = true;
                }
                for c in touched.drain(..) {
                    link[c] = 0.0;
                }
            }
            if !moved {
                break;
            }
            moved_any = true;
        }
        (community, moved_any)
    }
}

/// Convenience wrapper: resolution 1, the given seed.
pub fn louvain(g: &Graph, seed: u64) -> Result<Partition> {
    Louvain::new(seed).run(g)
}

struct WeightedGraph {
    adj: Vec<Vec<(usize, f64)>>,
    strength: Vec<f64>,
    total_weight: f64,
}

impl WeightedGraph {
    fn from_graph(g: &Graph, ids: &[u64]) -> Self {
        let index: std::collections::HashMap<u64, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<(usize, f64)>> = ids
            .iter()
            .map(|&v| g.neighbors(v).map(|w| (index[&w], 1.0)).collect())
            .collect();
        let strength: Vec<f64> = adj.iter().map(|a| a.len() as f64).collect();
        let total_weight = strength.iter().sum();
        Self {
            adj,
            strength,
            total_weight,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Collapses communities into super-nodes. Intra-community weight becomes
    /// a self-loop, which only shows up in the node strength. Returns the new
    /// graph and the dense relabeling of community ids.
    fn aggregate(&self, community: &[usize]) -> (WeightedGraph, Vec<usize>) {
        let mut relabel = vec![usize::MAX; self.len()];
        let mut count = 0;
        for &c in community {
            if relabel[c] == usize::MAX {
                relabel[c] = count;
                count += 1;
            }
        }
        let mut strength = vec![0.0; count];
        let mut maps: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
        for i in 0..self.len() {
            let a = relabel[community[i]];
            strength[a] += self.strength[i];
            for &(j, w) in &self.adj[i] {
                let b = relabel[community[j]];
                if a != b {
                    *maps[a].entry(b).or_insert(0.0) += w;
                }
            }
        }
        let adj = maps.into_iter().map(|m| m.into_iter().collect()).collect();
        (
            WeightedGraph {
                adj,
                strength,
                total_weight: self.total_weight,
            },
            relabel,
        )
    }
}
