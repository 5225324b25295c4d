//! The local difference shrinks as the original graph grows while the
//! sequence length stays fixed. A reduced sweep; the `incse convergence`
//! command runs the full one.
//!
//!     cargo run --release --example convergence

use incse::experiment::{convergence_experiment, geometric_edge_counts, ConvergenceConfig};

fn main() -> incse::Result<()> {
    let cfg = ConvergenceConfig {
        edge_counts: geometric_edge_counts(480, 6000, 5),
        trials_per_size: 10,
        ..Default::default()
    };
    let report = convergence_experiment(&cfg)?;
    println!(
        "{:>7} {:>12} {:>12} {:>12} {:>12}",
        "m", "mean|dL1|", "mean UB1", "mean|dL2|", "mean UB2"
    );
    for s in &report.sizes {
        println!(
            "{:>7} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
            s.m, s.mean_abs_dl1, s.mean_ub1, s.mean_abs_dl2, s.mean_ub2
        );
    }
    if let Some((r1, r2)) = report.decay_ratios() {
        println!("last/first: {r1:.3} (1d), {r2:.3} (2d)");
    }
    println!(
        "{} trials outside their bounds",
        report.trials.iter().filter(|t| !t.within_bounds()).count()
    );
    Ok(())
}
