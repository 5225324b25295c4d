//! Closed-form bounds on the local difference, next to observed values.
//!
//!     cargo run --release --example bounds

use incse::generators::{pbp_sequence, random_partition_graph};
use incse::{
    bounds_1d, bounds_2d, build_two_dim_tree, louvain, StructuralState1D, StructuralState2D,
};

fn main() -> incse::Result<()> {
    println!(
        "{:>7} {:>4} {:>11} {:>11} {:>11} {:>11}",
        "m", "n", "dL1", "UB1", "dL2", "UB2"
    );
    for (i, scale) in [1usize, 2, 4, 8].into_iter().enumerate() {
        let sizes: Vec<usize> = [20, 30, 40].iter().map(|s| s * scale).collect();
        let (g0, _) = random_partition_graph(&sizes, 0.3, 0.01, i as u64)?;
        let partition = louvain(&g0, 0)?;
        let t0 = build_two_dim_tree(&g0, &partition)?;
        let s1 = StructuralState1D::new(&g0)?;
        let s2 = StructuralState2D::new(&g0, &t0)?;

        let n = 50;
        let xi = pbp_sequence(&g0, &partition, n, 0.6, 0.05, 9)?;
        let dl1 = s1.local_difference(&s1.extract(&xi)?);
        let dl2 = s2.local_difference(&s2.extract(&xi)?);

        let (m, d_m) = (g0.edge_count(), g0.max_degree());
        let v_min = s2
            .community_stats()
            .iter()
            .map(|c| c.volume)
            .min()
            .unwrap_or(0);
        let b1 = bounds_1d(m, d_m, n as u64);
        let b2 = bounds_2d(m, d_m, v_min, n as u64);
        assert!(b1.contains(dl1, 1e-12) && b2.contains(dl2, 1e-12));
        println!(
            "{m:>7} {n:>4} {dl1:>11.3e} {:>11.3e} {dl2:>11.3e} {:>11.3e}",
            b1.ub, b2.ub
        );
    }
    Ok(())
}
