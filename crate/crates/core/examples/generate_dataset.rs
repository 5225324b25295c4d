//! Build a dynamic graph dataset and write it to disk in the same layout the
//! `incse generate` command uses.
//!
//!     cargo run --release --example generate_dataset -- [hawkes|triad|pbp] [OUT_DIR]

use incse::generators::{generate_dataset, Dataset, DatasetConfig, Process};

fn main() -> incse::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "pbp".into());
    let out = args
        .next()
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("incse-{name}")));

    let process = Process::reference(&name)
        .ok_or_else(|| incse::Error::Config(format!("unknown process {name}")))?;
    // a smaller cousin of the reference configuration
    let config = DatasetConfig {
        sizes: vec![40, 60, 80, 100, 120],
        steps: 10,
        ..DatasetConfig::reference(process, 42)
    };
    let ds = generate_dataset(&config)?;
    ds.save(&out)?;

    println!("wrote {}", out.display());
    for s in &ds.manifest.snapshots {
        println!(
            "  t={:>2}: |xi| = {:>5}, {:>4} nodes, {:>5} edges",
            s.t, s.n, s.nodes, s.edges
        );
    }

    let back = Dataset::load(&out)?;
    assert_eq!(back.cumulative, ds.cumulative);
    println!("reloaded {} snapshots", back.steps());
    Ok(())
}
