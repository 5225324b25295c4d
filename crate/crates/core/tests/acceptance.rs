//! Acceptance suite. Runs every criterion in sequence and prints one
//! PASS/FAIL line each; exits non-zero if any criterion fails. The timed
//! criteria (7-9) run last so nothing else competes for the CPU.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use incse::experiment::{
    convergence_experiment, run_compare, CompareReport, ConvergenceConfig, Dim,
};
use incse::generators::{
    generate_dataset, hawkes_sequence, pbp_sequence, random_partition_graph, scaled_sizes,
    triad_sequence, Dataset, DatasetConfig, Process,
};
use incse::{
    adjust_one_dim_tree, adjust_two_dim_tree, bounds_1d, bounds_2d, build_one_dim_tree,
    build_two_dim_tree, incre_1dse, incre_2dse, louvain, node_strategy_condition, rfs_1d,
    rfs_2d_with_partition, structural_entropy, Graph, IncrementalSequence, Partition,
    StructuralState1D, StructuralState2D,
};

struct Outcome {
    id: &'static str,
    pass: bool,
    summary: String,
}

fn report(id: &'static str, title: &str, pass: bool, detail: String, start: Instant) -> Outcome {
    let line = format!(
        "{} {id} {title}: {detail} ({:.1}s)",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    println!("{line}");
    Outcome {
        id,
        pass,
        summary: line,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// ---------------------------------------------------------------------------
// Criteria 1-3: exact decomposition, 1d equivalence, fixed-partition oracle
// ---------------------------------------------------------------------------

struct Instance {
    g: Graph,
    partition: Partition,
    xi: IncrementalSequence,
}

fn random_instance(k: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + k);
    loop {
        let total = rng.random_range(10..=200usize);
        let r = rng.random_range(2..=5usize).min(total / 2);
        let mut sizes = vec![2usize; r];
        for _ in 0..total - 2 * r {
            sizes[rng.random_range(0..r)] += 1;
        }
        let p_in = rng.random_range(0.1..0.5);
        let p_ac = rng.random_range(0.02..0.15);
        let Ok((g, _)) = random_partition_graph(&sizes, p_in, p_ac, rng.random()) else {
            continue;
        };
        let partition = louvain(&g, rng.random()).unwrap();
        let n = rng.random_range(0..=3 * g.edge_count() as usize);
        let seed = rng.random();
        let xi = match k % 3 {
            0 => hawkes_sequence(&g, n, rng.random_range(0.05..0.5), 8, seed),
            1 => triad_sequence(&g, n, rng.random_range(0.05..0.5), 8, seed),
            _ => {
                let p_pin = rng.random_range(0.0..0.9);
                let p_pac = rng.random_range(0.0..(0.95 - p_pin));
                pbp_sequence(&g, &partition, n, p_pin, p_pac, seed)
            }
        };
        if let Ok(xi) = xi {
            return Instance { g, partition, xi };
        }
    }
}

/// Relative errors: (decomposition 1d, decomposition 2d, incre vs rfs 1d,
/// incre vs injected-partition rfs 2d).
fn instance_errors(inst: &Instance) -> [f64; 4] {
    let Instance { g, partition, xi } = inst;
    let gt = g.combine(xi).unwrap();

    let t1 = adjust_one_dim_tree(&build_one_dim_tree(g).unwrap(), xi).unwrap();
    let h1_def = structural_entropy(&gt, &t1).unwrap();
    let h1 = StructuralState1D::new(g)
        .unwrap()
        .measure(xi)
        .unwrap()
        .entropy();

    let t0 = build_two_dim_tree(g, partition).unwrap();
    let t2 = adjust_two_dim_tree(&t0, g, xi).unwrap();
    let h2_def = structural_entropy(&gt, &t2).unwrap();
    let h2 = StructuralState2D::new(g, &t0)
        .unwrap()
        .measure(xi)
        .unwrap()
        .entropy();

    let adjusted = t2.as_two_dim().unwrap().partition();
    [
        rel(h1, h1_def),
        rel(h2, h2_def),
        rel(incre_1dse(g, xi).unwrap(), rfs_1d(g, xi).unwrap()),
        rel(
            incre_2dse(g, &t0, xi).unwrap(),
            rfs_2d_with_partition(g, xi, &adjusted).unwrap(),
        ),
    ]
}

fn criteria_1_to_3() -> Vec<Outcome> {
    const INSTANCES: u64 = 500;
    const TOL: f64 = 1e-10;
    let start = Instant::now();
    let errors: Vec<[f64; 4]> = (0..INSTANCES)
        .into_par_iter()
        .map(|k| instance_errors(&random_instance(k)))
        .collect();
    let max = |i: usize| errors.iter().map(|e| e[i]).fold(0.0, f64::max);
    let (d1, d2, e1, e2) = (max(0), max(1), max(2), max(3));
    vec![
        report(
            "C1",
            "exact decomposition",
            d1 <= TOL && d2 <= TOL,
            format!("{INSTANCES} instances, max rel err K=1 {d1:.2e}, K=2 {d2:.2e} (tol {TOL:e})"),
            start,
        ),
        report(
            "C2",
            "one-dimensional equivalence",
            e1 <= TOL,
            format!("max rel err incre_1dse vs rfs_1d {e1:.2e} (tol {TOL:e})"),
            start,
        ),
        report(
            "C3",
            "fixed-partition two-dimensional oracle",
            e2 <= TOL,
            format!("max rel err incre_2dse vs injected rfs_2d {e2:.2e} (tol {TOL:e})"),
            start,
        ),
    ]
}

// ---------------------------------------------------------------------------
// Criterion 4: bounds containment on random partitioning-process trials
// ---------------------------------------------------------------------------

fn criterion_4() -> Outcome {
    const TRIALS: u64 = 1000;
    let start = Instant::now();
    let results: Vec<(bool, bool)> = (0..TRIALS)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xB0_0000 + k);
            loop {
                let r = rng.random_range(1..=5usize);
                let base: Vec<usize> = (0..r).map(|_| rng.random_range(5..30)).collect();
                let p_in = rng.random_range(0.2..0.6);
                let p_ac = rng.random_range(0.01..0.1);
                let target = rng.random_range(50.0..500.0);
                let sizes = scaled_sizes(&base, p_in, p_ac, target);
                let Ok((g, _)) = random_partition_graph(&sizes, p_in, p_ac, rng.random()) else {
                    continue;
                };
                if !(50..=500).contains(&g.edge_count()) {
                    continue;
                }
                let partition = louvain(&g, rng.random()).unwrap();
                let n = rng.random_range(1..=100usize);
                let p_pin = rng.random_range(0.0..1.0);
                let p_pac = rng.random_range(0.0..(1.0 - p_pin));
                let Ok(xi) = pbp_sequence(&g, &partition, n, p_pin, p_pac, rng.random()) else {
                    continue;
                };
                let tree = build_two_dim_tree(&g, &partition).unwrap();
                let s1 = StructuralState1D::new(&g).unwrap();
                let s2 = StructuralState2D::new(&g, &tree).unwrap();
                let dl1 = s1.local_difference(&s1.extract(&xi).unwrap());
                let dl2 = s2.local_difference(&s2.extract(&xi).unwrap());
                let v_min = s2.community_stats().iter().map(|c| c.volume).min().unwrap();
                let (m, d_m) = (g.edge_count(), g.max_degree());
                let b1 = bounds_1d(m, d_m, n as u64);
                let b2 = bounds_2d(m, d_m, v_min, n as u64);
                return (b1.contains(dl1, 1e-12), b2.contains(dl2, 1e-12));
            }
        })
        .collect();
    let ok1 = results.iter().filter(|r| r.0).count();
    let ok2 = results.iter().filter(|r| r.1).count();
    report(
        "C4",
        "bounds containment",
        ok1 == TRIALS as usize && ok2 == TRIALS as usize,
        format!("{TRIALS} trials, contained K=1 {ok1}/{TRIALS}, K=2 {ok2}/{TRIALS}"),
        start,
    )
}

// ---------------------------------------------------------------------------
// Criterion 5: node strategy brute force on all connected graphs <= 6 nodes
// ---------------------------------------------------------------------------

/// Definition-formula two-dimensional entropy from raw degrees, community
/// labels and edges. Independent of the library's tree code.
fn entropy_2d(k: usize, edges: &[(usize, usize)], label: &[usize]) -> f64 {
    let mut degree = vec![0u64; k];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let r = label.iter().max().unwrap() + 1;
    let mut volume = vec![0u64; r];
    let mut cut = vec![0u64; r];
    for v in 0..k {
        volume[label[v]] += degree[v];
    }
    for &(u, v) in edges {
        if label[u] != label[v] {
            cut[label[u]] += 1;
            cut[label[v]] += 1;
        }
    }
    let two_m = (2 * edges.len()) as f64;
    let mut h = 0.0;
    for c in 0..r {
        if cut[c] > 0 {
            h -= cut[c] as f64 / two_m * (volume[c] as f64 / two_m).log2();
        }
    }
    for v in 0..k {
        let d = degree[v] as f64;
        h -= d / two_m * (d / volume[label[v]] as f64).log2();
    }
    h
}

fn connected(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Restricted growth strings: every set partition of `0..k`.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max + 1 {
            cur.push(c);
            go(k, cur, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0];
    go(k, &mut cur, 0, &mut out);
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut first_violation = None;
    for k in 2..=6usize {
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        let partitions = set_partitions(k);
        let per_k: Vec<(u64, u64, Option<String>)> = (1u32..1 << pairs.len())
            .into_par_iter()
            .filter_map(|mask| {
                let edges: Vec<_> = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                connected(k, &edges).then_some(edges)
            })
            .map(|edges| {
                let m = edges.len() as u64;
                let mut degree = vec![0u64; k];
                for &(u, v) in &edges {
                    degree[u] += 1;
                    degree[v] += 1;
                }
                let (mut checked, mut bad, mut first) = (0u64, 0u64, None);
                let mut grown = edges.clone();
                grown.push((0, k)); // placeholder, attachment set below
                for label in &partitions {
                    let r = label.iter().max().unwrap() + 1;
                    if r < 2 {
                        continue;
                    }
                    let mut volume = vec![0u64; r];
                    for v in 0..k {
                        volume[label[v]] += degree[v];
                    }
                    for u in 0..k {
                        let alpha = label[u];
                        if !node_strategy_condition(m, volume[alpha]) {
                            continue;
                        }
                        *grown.last_mut().unwrap() = (u, k);
                        let mut with = label.clone();
                        with.push(alpha);
                        let h_alpha = entropy_2d(k + 1, &grown, &with);
                        for beta in (0..r).filter(|&b| b != alpha) {
                            *with.last_mut().unwrap() = beta;
                            let h_beta = entropy_2d(k + 1, &grown, &with);
                            checked += 1;
                            if h_alpha.partial_cmp(&h_beta) != Some(std::cmp::Ordering::Less) {
                                bad += 1;
                                first.get_or_insert_with(|| {
                                    format!(
                                        "edges {edges:?} labels {label:?} attach to {u}: \
                                         H(alpha)={h_alpha} H(beta={beta})={h_beta}"
                                    )
                                });
                            }
                        }
                    }
                }
                (checked, bad, first)
            })
            .collect();
        for (c, b, f) in per_k {
            checked += c;
            violations += b;
            if first_violation.is_none() {
                first_violation = f;
            }
        }
    }
    let detail = match &first_violation {
        None => {
            format!("{checked} (graph, partition, attachment, alternative) cases, 0 violations")
        }
        Some(f) => format!("{violations} of {checked} cases violated, e.g. {f}"),
    };
    report(
        "C5",
        "node strategy brute force",
        violations == 0,
        detail,
        start,
    )
}

// ---------------------------------------------------------------------------
// Criterion 6: convergence sweep
// ---------------------------------------------------------------------------

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let cfg = ConvergenceConfig {
        seed: 2024,
        ..Default::default()
    };
    let report_ = convergence_experiment(&cfg).unwrap();
    let (r1, r2) = report_.decay_ratios().unwrap();
    let below_ub = report_
        .trials
        .iter()
        .all(|t| t.dl1 <= t.ub1 && t.dl2 <= t.ub2);
    let positive = report_
        .sizes
        .iter()
        .all(|s| s.mean_dl1 > 0.0 && s.mean_dl2 > 0.0);
    for s in &report_.sizes {
        println!(
            "    m={:>6} mean|dL1|={:.4e} mean|dL2|={:.4e} mean UB1={:.4e} mean UB2={:.4e}",
            s.m, s.mean_abs_dl1, s.mean_abs_dl2, s.mean_ub1, s.mean_ub2
        );
    }
    report(
        "C6",
        "convergence sweep",
        r1 <= 0.1 && r2 <= 0.1 && below_ub && positive,
        format!(
            "{} sizes x {} trials; mean|dL| drop {:.2}% (1d), {:.2}% (2d) [reference 96.27%, 95.98%]; \
             all below UB: {below_ub}; mean dL positive at every m: {positive}",
            cfg.edge_counts.len(),
            cfg.trials_per_size,
            100.0 * (1.0 - r1),
            100.0 * (1.0 - r2)
        ),
        start,
    )
}

// ---------------------------------------------------------------------------
// Criteria 7-9: full-size datasets, error band, speedup, linear cost
// ---------------------------------------------------------------------------

/// Coefficient of determination of the least-squares line y ~ a + b x.
fn r_squared(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy * sxy / (sxx * syy)
}

fn criteria_7_to_9() -> Vec<Outcome> {
    const SEED: u64 = 2024;
    const REPETITIONS: usize = 5;
    let start = Instant::now();
    let names = ["hawkes", "triad", "pbp"];
    let datasets: Vec<Dataset> = names
        .par_iter()
        .map(|name| {
            let cfg = DatasetConfig::reference(Process::reference(name).unwrap(), SEED);
            generate_dataset(&cfg).unwrap()
        })
        .collect();
    for (name, ds) in names.iter().zip(&datasets) {
        let last = ds.manifest.snapshots.last().unwrap();
        println!(
            "    {name}: G0 {} nodes {} edges; G{} {} nodes {} edges",
            ds.original.node_count(),
            ds.original.edge_count(),
            last.t,
            last.nodes,
            last.edges
        );
    }

    let mut reports: Vec<(CompareReport, CompareReport)> = Vec::new();
    for ds in &datasets {
        let one = run_compare(ds, Dim::One, SEED, REPETITIONS).unwrap();
        let two = run_compare(ds, Dim::Two, SEED, REPETITIONS).unwrap();
        reports.push((one, two));
    }

    // criterion 7
    let mut pass7 = true;
    let mut detail7 = Vec::new();
    for (name, (_, two)) in names.iter().zip(&reports) {
        let worst = two
            .records
            .iter()
            .map(|r| r.rel_err_pct.abs() / 100.0)
            .fold(0.0, f64::max);
        let tol = if *name == "pbp" { 1e-6 } else { 0.05 };
        pass7 &= worst <= tol;
        detail7.push(format!("{name} max |rel err| {worst:.3e} (tol {tol:e})"));
    }

    // criterion 8
    let mut pass8 = true;
    let mut detail8 = Vec::new();
    let reference_1d = [3.3, 3.4, 2.9];
    let reference_2d = [17.0, 10.0, 6.0];
    for (i, (name, (one, two))) in names.iter().zip(&reports).enumerate() {
        let all_above_one = one.records.iter().chain(&two.records).all(|r| r.sp > 1.0);
        let sp2 = |t: usize| two.records.iter().find(|r| r.t == t).unwrap().sp;
        let sp1_last = one.records.last().unwrap().sp;
        let decreasing = sp2(1) > sp2(20);
        pass8 &= all_above_one && decreasing;
        detail8.push(format!(
            "{name}: min SP 1d {:.2} 2d {:.2}; SP at 100% 1d {sp1_last:.2} [reference {}], \
             2d {:.2} [reference {}]; 2d SP t=1 {:.2} > t=20 {:.2}: {decreasing}",
            one.summary.sp_min,
            two.summary.sp_min,
            reference_1d[i],
            sp2(20),
            reference_2d[i],
            sp2(1),
            sp2(20)
        ));
    }

    // criterion 9
    let mut pass9 = true;
    let mut detail9 = Vec::new();
    for (name, (_, two)) in names.iter().zip(&reports) {
        let n: Vec<f64> = two.records.iter().map(|r| r.n as f64).collect();
        let c: Vec<f64> = two.records.iter().map(|r| r.c_m).collect();
        let r2 = r_squared(&n, &c);
        pass9 &= r2 >= 0.9;
        detail9.push(format!("{name} R^2 {r2:.4}"));
    }

    for (name, (one, two)) in names.iter().zip(&reports) {
        for (dim, rep) in [("1d", one), ("2d", two)] {
            for r in &rep.records {
                println!(
                    "    {name} {dim} t={:>2} n={:>6} H_incre={:.9} H_rfs={:.9} rel_err={:+.3e}% C_M={:.3e}s C_R={:.3e}s SP={:.2}",
                    r.t, r.n, r.h_incre, r.h_rfs, r.rel_err_pct, r.c_m, r.c_r, r.sp
                );
            }
        }
    }

    vec![
        report(
            "C7",
            "error band at full size",
            pass7,
            detail7.join("; "),
            start,
        ),
        report("C8", "speedup direction", pass8, detail8.join("; "), start),
        report(
            "C9",
            "linear measurement cost",
            pass9,
            detail9.join("; "),
            start,
        ),
    ]
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as --nocapture; only a filter
    // that names no criterion skips the suite.
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return ExitCode::SUCCESS;
    }

    let mut outcomes = criteria_1_to_3();
    outcomes.push(criterion_4());
    outcomes.push(criterion_5());
    outcomes.push(criterion_6());
    outcomes.extend(criteria_7_to_9());

    println!();
    println!("acceptance summary:");
    for o in &outcomes {
        println!("  {}", o.summary);
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
