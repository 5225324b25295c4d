//! Experiment drivers behind the command-line tool: per-step measurement,
//! recalculate-from-scratch baselines, timing comparisons and the
//! convergence sweep. Everything returns plain records; CSV rendering is at
//! the bottom.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bounds_1d, bounds_2d};
use crate::error::{Error, Result};
use crate::generators::{derive_seed, pbp_sequence, random_partition_graph, scaled_sizes, Dataset};
use crate::graph::{Graph, IncrementalSequence};
use crate::louvain::louvain;
use crate::measure::{StructuralState1D, StructuralState2D};
use crate::rfs::{rfs_1d, rfs_2d};
use crate::tree::{build_one_dim_tree, build_two_dim_tree, structural_entropy};

pub const DEFAULT_REPETITIONS: usize = 5;

/// Options shared by the measure, baseline and compare commands. Each field
/// mirrors a command-line flag of the same name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: Option<PathBuf>,
    pub dim: Option<u8>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub repetitions: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Two,
}

impl Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(match self {
            Dim::One => 1,
            Dim::Two => 2,
        })
    }
}

impl TryFrom<u8> for Dim {
    type Error = Error;

    fn try_from(d: u8) -> Result<Dim> {
        match d {
            1 => Ok(Dim::One),
            2 => Ok(Dim::Two),
            _ => Err(Error::Config(format!("dimension must be 1 or 2, got {d}"))),
        }
    }
}

/// A violated run-time check, reported in the failure summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

/// Runs `f` once untimed, then `repetitions` timed runs, and returns the
/// last result with the median wall time in seconds.
pub fn time_median<T>(repetitions: usize, mut f: impl FnMut() -> Result<T>) -> Result<(T, f64)> {
    let mut out = f()?;
    let mut times = Vec::with_capacity(repetitions.max(1));
    for _ in 0..repetitions.max(1) {
        let start = Instant::now();
        out = f()?;
        times.push(start.elapsed().as_secs_f64());
    }
    Ok((out, median(&mut times)))
}

/// [`time_median`] over `count` jobs at once: one untimed pass, then
/// `repetitions` rounds that each time every job once. Interleaving spreads a
/// burst of machine noise over many jobs instead of one job's runs.
pub fn time_median_interleaved<T>(
    count: usize,
    repetitions: usize,
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<Vec<(T, f64)>> {
    let mut out = (0..count).map(&mut f).collect::<Result<Vec<T>>>()?;
    let mut times = vec![Vec::with_capacity(repetitions.max(1)); count];
    for _ in 0..repetitions.max(1) {
        for (i, slot) in out.iter_mut().enumerate() {
            let start = Instant::now();
            *slot = f(i)?;
            times[i].push(start.elapsed().as_secs_f64());
        }
    }
    Ok(out
        .into_iter()
        .zip(times.iter_mut())
        .map(|(o, t)| (o, median(t)))
        .collect())
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[k]
    } else {
        0.5 * (xs[k - 1] + xs[k])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub t: usize,
    pub n: usize,
    pub h_bits: f64,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub dim: Dim,
    /// Structural data and expressions of the original graph.
    pub init_seconds: f64,
    /// Row `t = 0` measures the empty sequence.
    pub rows: Vec<ResultRow>,
}

fn sequences(ds: &Dataset) -> impl Iterator<Item = (usize, &IncrementalSequence)> {
    static EMPTY: IncrementalSequence = IncrementalSequence::empty();
    std::iter::once((0, &EMPTY)).chain(ds.cumulative.iter().enumerate().map(|(i, x)| (i + 1, x)))
}

fn check_legal(ds: &Dataset) -> Result<()> {
    if let Some(last) = ds.cumulative.last() {
        ds.original.validate_sequence(last)?;
        for w in ds.cumulative.windows(2) {
            if w[1].edges().get(..w[0].len()) != Some(w[0].edges()) {
                return Err(Error::Config("cumulative sequences are not nested".into()));
            }
        }
    }
    Ok(())
}

/// Incremental measurement of every step. Legality of the sequences is
/// checked once up front, outside the timed regions.
pub fn run_measure(ds: &Dataset, dim: Dim, repetitions: usize) -> Result<MeasureReport> {
    check_legal(ds)?;
    let g0 = &ds.original;
    let seqs: Vec<_> = sequences(ds).collect();
    let mut rows = Vec::with_capacity(seqs.len());
    let init_seconds = match dim {
        Dim::One => {
            let (state, init) = time_median(repetitions, || StructuralState1D::new(g0))?;
            let timed = time_median_interleaved(seqs.len(), repetitions, |i| {
                state.measure(seqs[i].1).map(|m| m.entropy())
            })?;
            rows.extend(
                seqs.iter()
                    .zip(timed)
                    .map(|(&(t, xi), (h, wall))| ResultRow {
                        t,
                        n: xi.len(),
                        h_bits: h,
                        wall_seconds: wall,
                    }),
            );
            init
        }
        Dim::Two => {
            let (state, init) = time_median(repetitions, || {
                StructuralState2D::new(g0, &build_two_dim_tree(g0, &ds.partition)?)
            })?;
            let timed = time_median_interleaved(seqs.len(), repetitions, |i| {
                state.measure(seqs[i].1).map(|m| m.entropy())
            })?;
            rows.extend(
                seqs.iter()
                    .zip(timed)
                    .map(|(&(t, xi), (h, wall))| ResultRow {
                        t,
                        n: xi.len(),
                        h_bits: h,
                        wall_seconds: wall,
                    }),
            );
            init
        }
    };
    Ok(MeasureReport {
        dim,
        init_seconds,
        rows,
    })
}

/// Recalculate-from-scratch entropy of every step. In two dimensions the
/// timed region includes Louvain on the updated graph; `t = 0` uses the
/// stored original partition.
pub fn run_baseline(
    ds: &Dataset,
    dim: Dim,
    seed: u64,
    repetitions: usize,
) -> Result<Vec<ResultRow>> {
    check_legal(ds)?;
    let g0 = &ds.original;
    let seqs: Vec<_> = sequences(ds).collect();
    let timed = time_median_interleaved(seqs.len(), repetitions, |i| {
        let (t, xi) = seqs[i];
        match (dim, t) {
            (Dim::One, _) => rfs_1d(g0, xi),
            (Dim::Two, 0) => structural_entropy(g0, &build_two_dim_tree(g0, &ds.partition)?),
            (Dim::Two, _) => rfs_2d(g0, xi, seed).map(|(h, _)| h),
        }
    })?;
    Ok(seqs
        .iter()
        .zip(timed)
        .map(|(&(t, xi), (h, wall))| ResultRow {
            t,
            n: xi.len(),
            h_bits: h,
            wall_seconds: wall,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRecord {
    pub t: usize,
    pub n: usize,
    pub h_incre: f64,
    pub h_rfs: f64,
    /// Signed `(h_incre - h_rfs) / h_rfs` in percent.
    pub rel_err_pct: f64,
    pub c_m: f64,
    pub c_r: f64,
    /// `c_r / c_m`.
    pub sp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareSummary {
    pub dim: Dim,
    pub init_seconds: f64,
    pub sp_min: f64,
    pub sp_mean: f64,
    pub sp_max: f64,
    pub max_abs_rel_err_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub records: Vec<TimingRecord>,
    pub summary: CompareSummary,
    pub failures: Vec<Failure>,
}

/// Joins measurement and baseline runs for `t = 1..=T`.
pub fn run_compare(ds: &Dataset, dim: Dim, seed: u64, repetitions: usize) -> Result<CompareReport> {
    let measured = run_measure(ds, dim, repetitions)?;
    let baseline = run_baseline(ds, dim, seed, repetitions)?;
    let mut failures = Vec::new();
    let records: Vec<TimingRecord> = measured
        .rows
        .iter()
        .zip(&baseline)
        .filter(|(m, _)| m.t > 0)
        .map(|(m, b)| TimingRecord {
            t: m.t,
            n: m.n,
            h_incre: m.h_bits,
            h_rfs: b.h_bits,
            rel_err_pct: 100.0 * (m.h_bits - b.h_bits) / b.h_bits,
            c_m: m.wall_seconds,
            c_r: b.wall_seconds,
            sp: b.wall_seconds / m.wall_seconds,
        })
        .collect();

    let (m0, b0) = (&measured.rows[0], &baseline[0]);
    if (m0.h_bits - b0.h_bits).abs() > 1e-10 * b0.h_bits {
        failures.push(Failure {
            check: "original entropy".into(),
            detail: format!("incremental {} vs definition {}", m0.h_bits, b0.h_bits),
        });
    }
    for r in &records {
        if !r.rel_err_pct.is_finite() || r.sp.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
        {
            failures.push(Failure {
                check: "finite output".into(),
                detail: format!("t={}: rel_err_pct={} sp={}", r.t, r.rel_err_pct, r.sp),
            });
        }
        if dim == Dim::One && r.rel_err_pct.abs() > 1e-8 {
            failures.push(Failure {
                check: "one-dimensional equivalence".into(),
                detail: format!("t={}: relative error {}%", r.t, r.rel_err_pct),
            });
        }
    }

    let sps: Vec<f64> = records.iter().map(|r| r.sp).collect();
    let summary = CompareSummary {
        dim,
        init_seconds: measured.init_seconds,
        sp_min: sps.iter().copied().fold(f64::INFINITY, f64::min),
        sp_mean: sps.iter().sum::<f64>() / sps.len().max(1) as f64,
        sp_max: sps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        max_abs_rel_err_pct: records
            .iter()
            .map(|r| r.rel_err_pct.abs())
            .fold(0.0, f64::max),
    };
    Ok(CompareReport {
        records,
        summary,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergenceConfig {
    /// Target edge counts of the original graphs.
    pub edge_counts: Vec<u64>,
    pub trials_per_size: usize,
    pub n_mean: f64,
    pub n_std: f64,
    pub seed: u64,
    /// Community sizes scaled to each target edge count.
    pub base_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_ac: f64,
    /// `p_pin` is drawn from `[0, p_pin_max)`, `p_pac` from `[0, p_pac_max)`.
    pub p_pin_max: f64,
    pub p_pac_max: f64,
    pub out: Option<PathBuf>,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            edge_counts: geometric_edge_counts(480, 24000, 8),
            trials_per_size: 30,
            n_mean: 100.0,
            n_std: 10.0,
            seed: 0,
            base_sizes: vec![200, 300, 400, 500, 600],
            p_in: 0.3,
            p_ac: 0.01,
            p_pin_max: 0.8,
            p_pac_max: 0.1,
            out: None,
        }
    }
}

/// `points` geometrically spaced integers from `lo` to `hi` inclusive.
pub fn geometric_edge_counts(lo: u64, hi: u64, points: usize) -> Vec<u64> {
    if points < 2 {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).powf(1.0 / (points - 1) as f64);
    (0..points)
        .map(|i| (lo as f64 * ratio.powi(i as i32)).round() as u64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    /// Edge count of the generated original graph.
    pub m: u64,
    pub trial: usize,
    pub n: usize,
    pub p_pin: f64,
    pub p_pac: f64,
    pub dl1: f64,
    pub lb1: f64,
    pub ub1: f64,
    pub dl2: f64,
    pub lb2: f64,
    pub ub2: f64,
}

impl TrialRecord {
    pub fn within_bounds(&self) -> bool {
        const LB_SLACK: f64 = 1e-12;
        self.lb1 - LB_SLACK <= self.dl1
            && self.dl1 <= self.ub1
            && self.lb2 - LB_SLACK <= self.dl2
            && self.dl2 <= self.ub2
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeSummary {
    pub target_m: u64,
    pub m: u64,
    pub mean_abs_dl1: f64,
    pub mean_abs_dl2: f64,
    pub mean_dl1: f64,
    pub mean_dl2: f64,
    pub mean_ub1: f64,
    pub mean_ub2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub trials: Vec<TrialRecord>,
    pub sizes: Vec<SizeSummary>,
    pub failures: Vec<Failure>,
}

impl ConvergenceReport {
    /// Mean |dL| at the largest size over the smallest, per dimension.
    pub fn decay_ratios(&self) -> Option<(f64, f64)> {
        let (first, last) = (self.sizes.first()?, self.sizes.last()?);
        Some((
            last.mean_abs_dl1 / first.mean_abs_dl1,
            last.mean_abs_dl2 / first.mean_abs_dl2,
        ))
    }
}

const MAX_TRIAL_RETRIES: u64 = 10;

/// For each target edge count: one original graph and its Louvain tree,
/// then independent partitioning-process trials, each with its own seed
/// derived from `(seed, target, trial)`. Trials run in parallel.
pub fn convergence_experiment(cfg: &ConvergenceConfig) -> Result<ConvergenceReport> {
    if cfg.trials_per_size == 0 {
        return Err(Error::Config("trials_per_size must be at least 1".into()));
    }
    let normal = Normal::new(cfg.n_mean, cfg.n_std)
        .map_err(|e| Error::Config(format!("bad n distribution: {e}")))?;
    let mut trials = Vec::new();
    let mut sizes = Vec::new();
    for &target in &cfg.edge_counts {
        let community_sizes = scaled_sizes(&cfg.base_sizes, cfg.p_in, cfg.p_ac, target as f64);
        let (g, _) = random_partition_graph(
            &community_sizes,
            cfg.p_in,
            cfg.p_ac,
            derive_seed(cfg.seed, &[target]),
        )?;
        let partition = louvain(&g, derive_seed(cfg.seed, &[target, u64::MAX]))?;
        let tree = build_two_dim_tree(&g, &partition)?;
        let s1 = StructuralState1D::new(&g)?;
        let s2 = StructuralState2D::new(&g, &tree)?;
        let (m, d_m) = (g.edge_count(), g.max_degree());
        let v_min = s2
            .community_stats()
            .iter()
            .map(|c| c.volume)
            .min()
            .unwrap_or(0);

        let run_trial = |trial: usize| -> Result<TrialRecord> {
            let mut last_err = None;
            for attempt in 0..MAX_TRIAL_RETRIES {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(
                    cfg.seed,
                    &[target, trial as u64, attempt],
                ));
                let p_pin = rng.random::<f64>() * cfg.p_pin_max;
                let p_pac = rng.random::<f64>() * cfg.p_pac_max;
                let n = (normal.sample(&mut rng).round() as i64).max(1) as usize;
                let xi = match pbp_sequence(&g, &partition, n, p_pin, p_pac, rng.random()) {
                    Ok(xi) => xi,
                    Err(e) => {
                        last_err = Some(e);
                        continue;
                    }
                };
                let dl1 = s1.local_difference(&s1.extract(&xi)?);
                let dl2 = s2.local_difference(&s2.extract(&xi)?);
                let b1 = bounds_1d(m, d_m, n as u64);
                let b2 = bounds_2d(m, d_m, v_min, n as u64);
                return Ok(TrialRecord {
                    m,
                    trial,
                    n,
                    p_pin,
                    p_pac,
                    dl1,
                    lb1: b1.lb,
                    ub1: b1.ub,
                    dl2,
                    lb2: b2.lb,
                    ub2: b2.ub,
                });
            }
            Err(last_err.expect("at least one attempt"))
        };
        let records = (0..cfg.trials_per_size)
            .into_par_iter()
            .map(run_trial)
            .collect::<Result<Vec<_>>>()?;

        let k = records.len() as f64;
        let mean = |f: &dyn Fn(&TrialRecord) -> f64| records.iter().map(f).sum::<f64>() / k;
        sizes.push(SizeSummary {
            target_m: target,
            m,
            mean_abs_dl1: mean(&|r| r.dl1.abs()),
            mean_abs_dl2: mean(&|r| r.dl2.abs()),
            mean_dl1: mean(&|r| r.dl1),
            mean_dl2: mean(&|r| r.dl2),
            mean_ub1: mean(&|r| r.ub1),
            mean_ub2: mean(&|r| r.ub2),
        });
        trials.extend(records);
    }

    let mut failures: Vec<Failure> = trials
        .iter()
        .filter(|r| !r.within_bounds())
        .map(|r| Failure {
            check: "bounds containment".into(),
            detail: format!(
                "m={} trial={}: dL1={} in [{}, {}], dL2={} in [{}, {}]",
                r.m, r.trial, r.dl1, r.lb1, r.ub1, r.dl2, r.lb2, r.ub2
            ),
        })
        .collect();
    let report = ConvergenceReport {
        trials,
        sizes,
        failures: Vec::new(),
    };
    if let Some((r1, r2)) = report.decay_ratios() {
        if report.sizes.len() > 1 && (r1 >= 0.1 || r2 >= 0.1) {
            failures.push(Failure {
                check: "vanishing local difference".into(),
                detail: format!("largest/smallest mean |dL|: {r1} (1d), {r2} (2d)"),
            });
        }
    }
    Ok(ConvergenceReport { failures, ..report })
}

/// Definition-formula entropy of `g` under its one-dimensional tree.
pub fn one_dim_entropy(g: &Graph) -> Result<f64> {
    structural_entropy(g, &build_one_dim_tree(g)?)
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-5, 1e12)`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        trim_zeros(format!("{x:.*}", (11 - exp) as usize))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Something that renders as one CSV table.
pub trait CsvTable {
    const HEADER: &'static str;
    fn row(&self) -> String;
}

impl CsvTable for ResultRow {
    const HEADER: &'static str = "t,n,H_bits,wall_seconds";
    fn row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.t,
            self.n,
            fmt_sig(self.h_bits),
            fmt_sig(self.wall_seconds)
        )
    }
}

impl CsvTable for TimingRecord {
    const HEADER: &'static str = "t,n,H_incre,H_rfs,rel_err_pct,C_M,C_R,SP";
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.t,
            self.n,
            fmt_sig(self.h_incre),
            fmt_sig(self.h_rfs),
            fmt_sig(self.rel_err_pct),
            fmt_sig(self.c_m),
            fmt_sig(self.c_r),
            fmt_sig(self.sp)
        )
    }
}

impl CsvTable for TrialRecord {
    const HEADER: &'static str = "m,trial,n,p_pin,p_pac,dL1,lb1,ub1,dL2,lb2,ub2";
    fn row(&self) -> String {
        let f = [
            self.p_pin, self.p_pac, self.dl1, self.lb1, self.ub1, self.dl2, self.lb2, self.ub2,
        ]
        .map(fmt_sig)
        .join(",");
        format!("{},{},{},{f}", self.m, self.trial, self.n)
    }
}

pub fn write_csv<T: CsvTable>(mut w: impl Write, rows: &[T]) -> std::io::Result<()> {
    writeln!(w, "{}", T::HEADER)?;
    for r in rows {
        writeln!(w, "{}", r.row())?;
    }
    w.flush()
}

pub fn csv_string<T: CsvTable>(rows: &[T]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_dataset, DatasetConfig, Process};

    #[test]
    fn interleaved_timing_calls_each_job_once_per_round() {
        let mut calls = vec![0; 3];
        let out = time_median_interleaved(3, 4, |i| {
            calls[i] += 1;
            Ok(i * 10)
        })
        .unwrap();
        assert_eq!(calls, [5, 5, 5]);
        assert_eq!(out.iter().map(|o| o.0).collect::<Vec<_>>(), [0, 10, 20]);
        assert!(out.iter().all(|o| o.1 >= 0.0));
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(1.5), "1.5");
        assert_eq!(fmt_sig(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_sig(-0.000123456789012345), "-0.000123456789012");
        assert_eq!(fmt_sig(1.0e-7), "1e-7");
        assert_eq!(fmt_sig(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn geometric_points() {
        let pts = geometric_edge_counts(480, 24000, 8);
        assert_eq!(pts.len(), 8);
        assert_eq!((pts[0], pts[7]), (480, 24000));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    fn tiny(process: &str) -> Dataset {
        generate_dataset(&DatasetConfig {
            sizes: vec![10, 12, 14],
            p_in: 0.5,
            p_ac: 0.05,
            process: Process::reference(process).unwrap().with_dim(4),
            total_size: Some(30),
            steps: 5,
            seed: 3,
        })
        .unwrap()
    }

    #[test]
    fn one_dim_measure_matches_baseline() {
        let ds = tiny("triad");
        let m = run_measure(&ds, Dim::One, 1).unwrap();
        let b = run_baseline(&ds, Dim::One, 0, 1).unwrap();
        assert_eq!(m.rows.len(), 6);
        for (x, y) in m.rows.iter().zip(&b) {
            assert_eq!((x.t, x.n), (y.t, y.n));
            assert!((x.h_bits - y.h_bits).abs() <= 1e-10 * y.h_bits);
        }
        assert!((m.rows[0].h_bits - one_dim_entropy(&ds.original).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn compare_report_shape() {
        let ds = tiny("pbp");
        let r = run_compare(&ds, Dim::Two, 1, 1).unwrap();
        assert_eq!(r.records.len(), 5);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        let csv = csv_string(&r.records);
        assert!(csv.starts_with("t,n,H_incre,H_rfs,rel_err_pct,C_M,C_R,SP\n"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn small_convergence_is_deterministic() {
        let cfg = ConvergenceConfig {
            edge_counts: vec![200, 400],
            trials_per_size: 4,
            n_mean: 20.0,
            n_std: 3.0,
            seed: 5,
            ..Default::default()
        };
        let a = convergence_experiment(&cfg).unwrap();
        let b = convergence_experiment(&cfg).unwrap();
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.trials.len(), 8);
        assert!(a.trials.iter().all(TrialRecord::within_bounds));
        assert!(
            csv_string(&a.trials).starts_with("m,trial,n,p_pin,p_pac,dL1,lb1,ub1,dL2,lb2,ub2\n")
        );
    }
}
