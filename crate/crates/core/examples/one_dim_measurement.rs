//! One-dimensional entropy of a growing graph, measured incrementally and
//! checked against a full recomputation.
//!
//!     cargo run --example one_dim_measurement

use incse::{rfs_1d, Graph, IncrementalSequence, StructuralState1D};

fn main() -> incse::Result<()> {
    // two triangles joined by a bridge
    let g0 = Graph::from_edges([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])?;
    let state = StructuralState1D::new(&g0)?;
    println!("G0: {} nodes, {} edges", g0.node_count(), g0.edge_count());
    println!("S_N = {:.6}, S_G = {:.6}", state.s_n(), state.s_g());

    // a new node 6 hangs off node 5, then a chord closes a square
    let xi = IncrementalSequence::from_edges(vec![(5, 6), (0, 4), (6, 1)])?;
    for k in 0..=xi.len() {
        let prefix = xi.prefix(k);
        let m = state.measure(&prefix)?;
        let full = rfs_1d(&g0, &prefix)?;
        println!(
            "after {k} edges: GI = {:.6}  LD = {:+.6}  H = {:.9}  recomputed = {:.9}",
            m.global_invariant,
            m.local_difference,
            m.entropy(),
            full
        );
    }
    Ok(())
}
