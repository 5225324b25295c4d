use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::embedding::{cosine, embed_nodes};
use super::{check_probability, derive_seed, Growing};
use crate::error::Result;
use crate::graph::{Graph, IncrementalSequence, NodeId};

const MAX_REJECTIONS: usize = 100;
/// Common-neighbor count at which the closure probability stops growing.
const SATURATING_COMMON: f64 = 5.0;

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Triadic closure. With probability `p_tn` a new node attaches to a uniform
/// existing node. Otherwise open wedges `v - w - u` are drawn and closed with
/// probability `p_c = sigmoid(mean_w cos(v,w) cos(u,w)) * min(1, |N|/5)` over
/// the common neighbors `N`. After 100 rejections the last open wedge drawn
/// is closed unconditionally, or a new node attaches if no wedge was open.
pub fn triad_sequence(
    g: &Graph,
    count: usize,
    p_tn: f64,
    dim: usize,
    seed: u64,
) -> Result<IncrementalSequence> {
    check_probability("p_tn", p_tn)?;
    let mut emb = embed_nodes(g, dim, derive_seed(seed, &[0]));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[1]));
    let mut grow = Growing::new(g);

    while grow.xi.len() < count {
        if rng.random_bool(p_tn) {
            let x = grow.random_node(&mut rng);
            let fresh = grow.attach_new(x);
            emb.copy_to(x, fresh);
            continue;
        }
        let mut last_open: Option<(NodeId, NodeId)> = None;
        let mut closed = false;
        for _ in 0..MAX_REJECTIONS {
            let Some((v, u)) = open_wedge(&grow, &mut rng) else {
                continue;
            };
            last_open = Some((v, u));
            let nv = grow.graph.neighbor_set(v).expect("present");
            let nu = grow.graph.neighbor_set(u).expect("present");
            let (ev, eu) = (emb.get(v).unwrap(), emb.get(u).unwrap());
            let mut sum = 0.0;
            let mut common = 0usize;
            for &w in nv.intersection(nu) {
                let ew = emb.get(w).unwrap();
                sum += cosine(ev, ew) * cosine(eu, ew);
                common += 1;
            }
            let p_c = sigmoid(sum / common as f64) * (common as f64 / SATURATING_COMMON).min(1.0);
            if rng.random_bool(p_c.clamp(0.0, 1.0)) {
                grow.connect(v, u);
                closed = true;
                break;
            }
        }
        if !closed {
            match last_open {
                Some((v, u)) => {
                    grow.connect(v, u);
                }
                None => {
                    let x = grow.random_node(&mut rng);
                    let fresh = grow.attach_new(x);
                    emb.copy_to(x, fresh);
                }
            }
        }
    }
    Ok(grow.xi)
}

/// Uniform node `v`, uniform neighbor `w`, uniform neighbor `u` of `w`;
/// `Some` when `u != v` and `u`, `v` are not adjacent.
fn open_wedge(grow: &Growing, rng: &mut impl Rng) -> Option<(NodeId, NodeId)> {
    let v = grow.random_node(rng);
    let w = grow.random_neighbor(v, rng)?;
    let u = grow.random_neighbor(w, rng)?;
    (u != v && !grow.graph.contains_edge(v, u)).then_some((v, u))
}
