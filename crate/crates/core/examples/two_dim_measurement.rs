//! Two-dimensional entropy under a community partition. The state is built
//! once from `G0` and its encoding tree, then reused for every sequence.
//!
//!     cargo run --example two_dim_measurement

use incse::generators::{random_partition_graph, triad_sequence};
use incse::{
    adjust_two_dim_tree, build_two_dim_tree, louvain, structural_entropy, StructuralState2D,
};

fn main() -> incse::Result<()> {
    let (g0, _planted) = random_partition_graph(&[40, 60, 80], 0.25, 0.01, 7)?;
    let partition = louvain(&g0, 1)?;
    let t0 = build_two_dim_tree(&g0, &partition)?;
    let state = StructuralState2D::new(&g0, &t0)?;
    println!(
        "G0: {} nodes, {} edges, {} communities",
        g0.node_count(),
        g0.edge_count(),
        partition.community_count()
    );

    let xi = triad_sequence(&g0, 500, 0.1, 16, 3)?;
    for k in [0, 100, 250, 500] {
        let prefix = xi.prefix(k);
        let inc = state.extract(&prefix)?;
        let m = state.measure(&prefix)?;

        // the same number by definition, on the explicitly adjusted tree
        let gt = g0.combine(&prefix)?;
        let tree = adjust_two_dim_tree(&t0, &g0, &prefix)?;
        let by_definition = structural_entropy(&gt, &tree)?;
        println!(
            "n = {k:>3}: {} nodes touched, {} communities touched, H = {:.9} (definition {:.9})",
            inc.changed_nodes().count(),
            inc.changed_communities().count(),
            m.entropy(),
            by_definition
        );
    }
    Ok(())
}
