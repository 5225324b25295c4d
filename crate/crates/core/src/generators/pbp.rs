use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_probability, Growing};
use crate::error::{Error, Result};
use crate::graph::{Graph, IncrementalSequence, NodeId};
use crate::partition::Partition;

const MAX_CROSS_TRIES: usize = 100;
const MAX_CATEGORY_RESAMPLES: usize = 10_000;

/// Partitioning-based process. Each step adds an edge inside a uniform
/// community (probability `p_pin`), between two distinct uniform communities
/// (`p_pac`), or from a new node to a uniform existing node (the rest); the
/// new node joins its neighbor's community. Draws hitting an existing edge
/// are redrawn, and a category that cannot produce an edge is redrawn.
pub fn pbp_sequence(
    g: &Graph,
    partition: &Partition,
    count: usize,
    p_pin: f64,
    p_pac: f64,
    seed: u64,
) -> Result<IncrementalSequence> {
    check_probability("p_pin", p_pin)?;
    check_probability("p_pac", p_pac)?;
    if p_pin + p_pac > 1.0 + 1e-12 {
        return Err(Error::Config(format!(
            "p_pin + p_pac = {} exceeds 1",
            p_pin + p_pac
        )));
    }
    if partition.len() != g.node_count() || g.nodes().any(|v| partition.community_of(v).is_none()) {
        return Err(Error::PartitionMismatch(
            "partition does not cover the graph".into(),
        ));
    }

    let mut members: Vec<Vec<NodeId>> = partition.members();
    let mut community: std::collections::HashMap<NodeId, usize> =
        partition.iter().map(|(v, c)| (v, c as usize)).collect();
    let mut intra = vec![0u64; members.len()];
    for (u, v) in g.edges() {
        if community[&u] == community[&v] {
            intra[community[&u]] += 1;
        }
    }
    let saturated = |members: &[Vec<NodeId>], intra: &[u64], c: usize| {
        let s = members[c].len() as u64;
        intra[c] >= s * (s.saturating_sub(1)) / 2
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grow = Growing::new(g);
    let r = members.len();

    while grow.xi.len() < count {
        let mut resamples = 0;
        loop {
            resamples += 1;
            if resamples > MAX_CATEGORY_RESAMPLES {
                return Err(Error::Generation(
                    "no category can produce a new edge".into(),
                ));
            }
            let draw: f64 = rng.random();
            if draw < p_pin {
                let c = rng.random_range(0..r);
                if saturated(&members, &intra, c) {
                    continue;
                }
                let m = &members[c];
                loop {
                    let u = m[rng.random_range(0..m.len())];
                    let v = m[rng.random_range(0..m.len())];
                    if grow.connect(u, v) {
                        break;
                    }
                }
                intra[c] += 1;
                break;
            } else if draw < p_pin + p_pac {
                if r < 2 {
                    continue;
                }
                let a = rng.random_range(0..r);
                let b = (a + rng.random_range(1..r)) % r;
                let added = (0..MAX_CROSS_TRIES).any(|_| {
                    let u = members[a][rng.random_range(0..members[a].len())];
                    let v = members[b][rng.random_range(0..members[b].len())];
                    grow.connect(u, v)
                });
                if added {
                    break;
                }
            } else {
                let x = grow.random_node(&mut rng);
                let fresh = grow.attach_new(x);
                let c = community[&x];
                community.insert(fresh, c);
                members[c].push(fresh);
                intra[c] += 1;
                break;
            }
        }
    }
    Ok(grow.xi)
}
