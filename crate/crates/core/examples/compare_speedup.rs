//! Incremental measurement against the baseline over every snapshot of a
//! dataset: entropy error, both costs and the speedup.
//!
//!     cargo run --release --example compare_speedup -- [hawkes|triad|pbp] [1|2]

use incse::experiment::{csv_string, run_compare, Dim};
use incse::generators::{generate_dataset, DatasetConfig, Process};

fn main() -> incse::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "triad".into());
    let dim: u8 = args.next().and_then(|d| d.parse().ok()).unwrap_or(2);
    let dim = Dim::try_from(dim)?;

    let process = Process::reference(&name)
        .ok_or_else(|| incse::Error::Config(format!("unknown process {name}")))?;
    let config = DatasetConfig {
        sizes: vec![50, 75, 100, 125, 150],
        steps: 10,
        ..DatasetConfig::reference(process, 7)
    };
    let ds = generate_dataset(&config)?;
    let report = run_compare(&ds, dim, 7, 3)?;

    print!("{}", csv_string(&report.records));
    let s = &report.summary;
    println!(
        "speedup min {:.1} mean {:.1} max {:.1}, worst |rel err| {:.3e}%",
        s.sp_min, s.sp_mean, s.sp_max, s.max_abs_rel_err_pct
    );
    for f in &report.failures {
        println!("failed check {}: {}", f.check, f.detail);
    }
    Ok(())
}
