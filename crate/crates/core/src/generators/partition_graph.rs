use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::check_probability;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

const MAX_ATTEMPTS: u64 = 10;

/// Planted-partition graph: nodes `0..sum(sizes)` in consecutive blocks,
/// each in-block pair joined with probability `p_in` and each cross pair with
/// `p_ac`. A disconnected draw is retried with seed + 1, up to 10 attempts.
pub fn random_partition_graph(
    sizes: &[usize],
    p_in: f64,
    p_ac: f64,
    seed: u64,
) -> Result<(Graph, Partition)> {
    check_probability("p_in", p_in)?;
    check_probability("p_ac", p_ac)?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::Config(format!(
            "community sizes must be non-empty and positive, got {sizes:?}"
        )));
    }
    let block: Vec<u32> = sizes
        .iter()
        .enumerate()
        .flat_map(|(c, &s)| std::iter::repeat_n(c as u32, s))
        .collect();
    let total = block.len();

    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut edges = Vec::new();
        for u in 0..total {
            for v in u + 1..total {
                let p = if block[u] == block[v] { p_in } else { p_ac };
                if rng.random_bool(p) {
                    edges.push((u as u64, v as u64));
                }
            }
        }
        let g = Graph::from_edges(edges)?;
        if g.node_count() == total && g.is_connected() {
            let partition = Partition::new(block.iter().enumerate().map(|(v, &c)| (v as u64, c)));
            return Ok((g, partition));
        }
    }
    Err(Error::Generation(format!(
        "no connected graph for sizes {sizes:?} after {MAX_ATTEMPTS} attempts from seed {seed}"
    )))
}

pub fn expected_edge_count(sizes: &[usize], p_in: f64, p_ac: f64) -> f64 {
    let pairs = |s: f64| s * (s - 1.0) / 2.0;
    let total: f64 = sizes.iter().map(|&s| s as f64).sum();
    let inner: f64 = sizes.iter().map(|&s| pairs(s as f64)).sum();
    p_in * inner + p_ac * (pairs(total) - inner)
}

/// Scales `base` by a common factor so the expected edge count is as close as
/// rounding allows to `target_m`.
pub fn scaled_sizes(base: &[usize], p_in: f64, p_ac: f64, target_m: f64) -> Vec<usize> {
    let scale = |k: f64| -> Vec<usize> {
        base.iter()
            .map(|&s| ((s as f64 * k).round() as usize).max(1))
            .collect()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while expected_edge_count(&scale(hi), p_in, p_ac) < target_m {
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if expected_edge_count(&scale(mid), p_in, p_ac) < target_m {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (scale(lo), scale(hi));
    let err = |s: &[usize]| (expected_edge_count(s, p_in, p_ac) - target_m).abs();
    if err(&a) < err(&b) {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_graphs() {
        let (g, p) = random_partition_graph(&[3], 1.0, 0.0, 0).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.community_count(), 1);
        let (g, p) = random_partition_graph(&[2, 2], 1.0, 1.0, 0).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(p.members(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn disconnected_configuration_fails() {
        assert!(matches!(
            random_partition_graph(&[3, 3], 1.0, 0.0, 0),
            Err(Error::Generation(_))
        ));
    }

    #[test]
    fn reference_configuration_expectation() {
        let e = expected_edge_count(&[200, 300, 400, 500, 600], 0.3, 0.01);
        assert!((e - 150187.0).abs() / 150187.0 < 0.02, "{e}");
    }

    #[test]
    fn scaling_hits_target() {
        let base = [200, 300, 400, 500, 600];
        for target in [480.0, 3000.0, 24000.0] {
            let s = scaled_sizes(&base, 0.3, 0.01, target);
            let e = expected_edge_count(&s, 0.3, 0.01);
            assert!((e - target).abs() / target < 0.05, "{target}: {s:?} -> {e}");
        }
    }
}
