//! Recalculate-from-scratch baselines: combine, rebuild the encoding tree,
//! and evaluate the definition formula on the updated graph.

use crate::error::Result;
use crate::graph::{Graph, IncrementalSequence};
use crate::louvain::louvain;
use crate::partition::Partition;
use crate::tree::{build_one_dim_tree, build_two_dim_tree, structural_entropy};

pub fn rfs_1d(g0: &Graph, xi: &IncrementalSequence) -> Result<f64> {
    let gt = g0.combine(xi)?;
    structural_entropy(&gt, &build_one_dim_tree(&gt)?)
}

/// Two-dimensional baseline with the tree rebuilt by Louvain on the updated
/// graph. Returns the entropy and the partition used.
pub fn rfs_2d(g0: &Graph, xi: &IncrementalSequence, seed: u64) -> Result<(f64, Partition)> {
    let gt = g0.combine(xi)?;
    let partition = louvain(&gt, seed)?;
    let h = structural_entropy(&gt, &build_two_dim_tree(&gt, &partition)?)?;
    Ok((h, partition))
}

/// Two-dimensional baseline with an injected partition of the updated graph
/// in place of Louvain.
pub fn rfs_2d_with_partition(
    g0: &Graph,
    xi: &IncrementalSequence,
    partition: &Partition,
) -> Result<f64> {
    let gt = g0.combine(xi)?;
    structural_entropy(&gt, &build_two_dim_tree(&gt, partition)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{incre_1dse, incre_2dse};
    use crate::tree::adjust_two_dim_tree;

    fn seq(edges: &[(u64, u64)]) -> IncrementalSequence {
        IncrementalSequence::from_edges(edges.to_vec()).unwrap()
    }

    #[test]
    fn path_is_one_and_a_half_bits() {
        let g = Graph::from_edges([(0, 1)]).unwrap();
        assert!((rfs_1d(&g, &seq(&[(1, 2)])).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(rfs_1d(&g, &IncrementalSequence::new()).unwrap(), 1.0);
    }

    #[test]
    fn two_cliques_baseline_uses_clique_partition() {
        let mut edges = Vec::new();
        for base in [0u64, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        edges.push((4, 5));
        let g = Graph::from_edges(edges).unwrap();
        let (h, p) = rfs_2d(&g, &IncrementalSequence::new(), 3).unwrap();
        assert_eq!(p.community_count(), 2);
        // 2m = 42; each clique: V = 21, g = 1; degrees 4 x4 and 5 x1
        let community = -(1.0 / 42.0) * (21.0f64 / 42.0).log2();
        let leaf = |d: f64| -(d / 42.0) * (d / 21.0).log2();
        let expected = 2.0 * (community + 4.0 * leaf(4.0) + leaf(5.0));
        assert!((h - expected).abs() < 1e-13);
    }

    #[test]
    fn injected_partition_matches_incremental() {
        let g =
            Graph::from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = Partition::new([(0, 0u32), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1)]);
        let t = build_two_dim_tree(&g, &p).unwrap();
        let xi = seq(&[(5, 6), (6, 0), (1, 4)]);
        let adjusted = adjust_two_dim_tree(&t, &g, &xi).unwrap();
        let h_rfs =
            rfs_2d_with_partition(&g, &xi, &adjusted.as_two_dim().unwrap().partition()).unwrap();
        let h_inc = incre_2dse(&g, &t, &xi).unwrap();
        assert!((h_rfs - h_inc).abs() <= 1e-12 * h_rfs);
        assert!((rfs_1d(&g, &xi).unwrap() - incre_1dse(&g, &xi).unwrap()).abs() < 1e-12);
    }
}
