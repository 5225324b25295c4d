use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embedding::embed_nodes;
use super::{check_probability, derive_seed, Growing};
use crate::error::{Error, Result};
use crate::graph::{Graph, IncrementalSequence};

/// Embedding-driven point process. Each step picks a uniform target `x`.
/// With probability `p_hn` a new node attaches to `x` and inherits its
/// vector; otherwise a non-neighbor `y` is drawn with probability
/// proportional to `exp(-|emb(x) - emb(y)|^2)`. Targets without a non-neighbor
/// are redrawn; on a complete graph the whole step is redrawn.
pub fn hawkes_sequence(
    g: &Graph,
    count: usize,
    p_hn: f64,
    dim: usize,
    seed: u64,
) -> Result<IncrementalSequence> {
    check_probability("p_hn", p_hn)?;
    let mut emb = embed_nodes(g, dim, derive_seed(seed, &[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[1]));
    let mut grow = Growing::new(g);
    let mut blocked: Vec<bool> = vec![false; emb.len()];
    let mut cumulative: Vec<f64> = Vec::with_capacity(emb.len());

    while grow.xi.len() < count {
        let x = grow.random_node(&mut rng);
        if rng.random_bool(p_hn) {
            let fresh = grow.attach_new(x);
            emb.copy_to(x, fresh);
            blocked.push(false);
            continue;
        }

        let k = grow.nodes.len() as u64;
        if grow.graph.edge_count() == k * (k - 1) / 2 {
            // complete graph: only a new node can extend it
            if p_hn == 0.0 {
                return Err(Error::Generation(
                    "graph is complete, no non-adjacent pair remains".into(),
                ));
            }
            continue;
        }
        let mut x = x;
        while grow.graph.degree(x) + 1 >= k {
            x = grow.random_node(&mut rng);
        }

        let xi_pos = emb.position(x).expect("every node has a vector");
        let nbr_pos: Vec<usize> = grow
            .graph
            .neighbors(x)
            .map(|w| emb.position(w).expect("every node has a vector"))
            .collect();
        blocked[xi_pos] = true;
        nbr_pos.iter().for_each(|&j| blocked[j] = true);

        let ex = emb.row(xi_pos).to_vec();
        cumulative.clear();
        let mut total = 0.0;
        for (j, &b) in blocked.iter().enumerate() {
            if !b {
                let d2: f64 = ex
                    .iter()
                    .zip(emb.row(j))
                    .map(|(a, c)| (a - c) * (a - c))
                    .sum();
                total += (-d2).exp();
            }
            cumulative.push(total);
        }
        let r = rng.random::<f64>() * total;
        let mut j = cumulative
            .partition_point(|&c| c <= r)
            .min(cumulative.len() - 1);
        // guard against landing on a zero-width (blocked) slot at the end
        while blocked[j] {
            j -= 1;
        }
        let y = emb.ids()[j];

        blocked[xi_pos] = false;
        nbr_pos.iter().for_each(|&j| blocked[j] = false);
        let added = grow.connect(x, y);
        debug_assert!(added);
    }
    Ok(grow.xi)
}
