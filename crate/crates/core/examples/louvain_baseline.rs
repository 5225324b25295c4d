//! The recompute-from-scratch baseline: combine, rerun Louvain, evaluate.
//!
//!     cargo run --release --example louvain_baseline

use std::time::Instant;

use incse::generators::{pbp_sequence, random_partition_graph};
use incse::{build_two_dim_tree, incre_2dse, modularity, rfs_2d, Louvain};

fn main() -> incse::Result<()> {
    let (g0, planted) = random_partition_graph(&[100, 150, 200], 0.2, 0.005, 11)?;
    let found = Louvain::new(5).resolution(1.0).run(&g0)?;
    println!(
        "planted modularity {:.4}, Louvain {:.4} with {} communities",
        modularity(&g0, &planted, 1.0),
        modularity(&g0, &found, 1.0),
        found.community_count()
    );

    let xi = pbp_sequence(&g0, &found, 2000, 0.7, 0.05, 2)?;
    let t0 = build_two_dim_tree(&g0, &found)?;

    let start = Instant::now();
    let fast = incre_2dse(&g0, &t0, &xi)?;
    let c_m = start.elapsed();
    let start = Instant::now();
    let (slow, repartition) = rfs_2d(&g0, &xi, 5)?;
    let c_r = start.elapsed();

    println!("incremental: {fast:.9} bits in {c_m:?}");
    println!(
        "from scratch: {slow:.9} bits in {c_r:?} ({} communities)",
        repartition.community_count()
    );
    println!("relative difference {:.3e}", (fast - slow).abs() / slow);
    Ok(())
}
