//! How the encoding tree follows the graph: new nodes pick a community by the
//! node strategy, existing nodes stay put.
//!
//!     cargo run --example tree_adjustment

use incse::{
    adjust_two_dim_tree, build_two_dim_tree, node_strategy_condition, Graph, IncrementalSequence,
    Partition,
};

fn main() -> incse::Result<()> {
    // cliques on 0..5, 5..9 and 9..13, chained by two bridges
    let mut edges = Vec::new();
    for (lo, hi) in [(0, 5), (5, 9), (9, 13)] {
        for u in lo..hi {
            for v in u + 1..hi {
                edges.push((u, v));
            }
        }
    }
    edges.extend([(4, 5), (8, 9)]);
    let g0 = Graph::from_edges(edges)?;
    let partition = Partition::new(g0.nodes().map(|v| (v, (v >= 5) as u8 + (v >= 9) as u8)));
    let t0 = build_two_dim_tree(&g0, &partition)?;

    let before = t0.as_two_dim()?;
    for (c, s) in before.communities().iter().enumerate() {
        let attach_here = node_strategy_condition(g0.edge_count(), s.volume);
        println!(
            "community {c}: volume {}, cut {}, strategy condition holds: {attach_here}",
            s.volume, s.cut
        );
    }

    // 13 attaches to the big clique, 14 to a small one, then 14 reaches across
    let xi = IncrementalSequence::from_edges(vec![(13, 0), (14, 6), (14, 1)])?;
    let t1 = adjust_two_dim_tree(&t0, &g0, &xi)?;
    let after = t1.as_two_dim()?;
    for v in [13, 14] {
        println!("new node {v} joined community {:?}", after.community_of(v));
    }
    for (c, s) in after.communities().iter().enumerate() {
        println!("community {c} now: volume {}, cut {}", s.volume, s.cut);
    }
    Ok(())
}
