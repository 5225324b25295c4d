//! Closed-form bounds on the Local Difference.
//!
//! The bounds use the final closed forms as printed, with base-2 logs. `m` is
//! the edge count of the original graph, `d_m` its maximum degree, `v_min`
//! the smallest community volume and `n` the sequence length.

use serde::Serialize;

use crate::graph::Graph;
use crate::tree::TwoDimTree;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub lb: f64,
    pub ub: f64,
}

impl Bounds {
    /// Containment with `slack` allowed below the lower bound only.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lb - slack <= x && x <= self.ub
    }
}

/// `x log2 x` with `0 log 0 = 0`.
fn s_n(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

fn lb_head(m: u64, d_m: u64, n: u64) -> f64 {
    let (m, d, n) = (m as f64, d_m as f64, n as f64);
    (s_n(d) - s_n(d + n)) / (m + n)
}

pub fn bounds_1d(m: u64, d_m: u64, n: u64) -> Bounds {
    let (mf, nf) = (m as f64, n as f64);
    Bounds {
        lb: lb_head(m, d_m, n) + nf * (2.0 * mf + 2.0 * nf).log2() / (mf + nf),
        ub: (nf * (mf + nf).log2() + 1.5 * nf) / (mf + nf),
    }
}

pub fn bounds_2d(m: u64, d_m: u64, v_min: u64, n: u64) -> Bounds {
    let (mf, nf) = (m as f64, n as f64);
    Bounds {
        lb: lb_head(m, d_m, n) + nf * (v_min as f64 + 2.0).log2() / (mf + nf),
        ub: (nf * (mf + nf).log2() + 2.5 * nf) / (mf + nf),
    }
}

/// One observed Local Difference alongside the bound inputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRecord {
    pub m: u64,
    pub n: u64,
    pub d_m: u64,
    /// Zero for one-dimensional records.
    pub v_min: u64,
    pub v_max: u64,
    pub bounds: Bounds,
    pub observed: f64,
}

impl BoundsRecord {
    pub fn one_dim(g: &Graph, n: u64, observed: f64) -> Self {
        let (m, d_m) = (g.edge_count(), g.max_degree());
        Self {
            m,
            n,
            d_m,
            v_min: 0,
            v_max: 0,
            bounds: bounds_1d(m, d_m, n),
            observed,
        }
    }

    pub fn two_dim(g: &Graph, tree: &TwoDimTree, n: u64, observed: f64) -> Self {
        let (m, d_m) = (g.edge_count(), g.max_degree());
        let volumes = tree.communities().iter().map(|c| c.volume);
        let v_min = volumes.clone().min().unwrap_or(0);
        let v_max = volumes.max().unwrap_or(0);
        Self {
            m,
            n,
            d_m,
            v_min,
            v_max,
            bounds: bounds_2d(m, d_m, v_min, n),
            observed,
        }
    }

    pub fn holds(&self) -> bool {
        self.bounds.contains(self.observed, 1e-12)
    }
}
