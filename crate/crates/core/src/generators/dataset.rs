use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{derive_seed, hawkes_sequence, pbp_sequence, random_partition_graph, triad_sequence};
use crate::error::{Error, Result};
use crate::graph::{Graph, IncrementalSequence};
use crate::io;
use crate::louvain::louvain;
use crate::partition::Partition;

/// Incremental-sequence process and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Process {
    Hawkes { p_hn: f64, embed_dim: usize },
    Triad { p_tn: f64, embed_dim: usize },
    Pbp { p_pin: f64, p_pac: f64 },
}

impl Process {
    pub fn name(&self) -> &'static str {
        match self {
            Process::Hawkes { .. } => "hawkes",
            Process::Triad { .. } => "triad",
            Process::Pbp { .. } => "pbp",
        }
    }

    /// Settings used for the reference datasets.
    pub fn reference(name: &str) -> Option<Process> {
        match name {
            "hawkes" => Some(Process::Hawkes {
                p_hn: 0.05,
                embed_dim: 16,
            }),
            "triad" => Some(Process::Triad {
                p_tn: 0.05,
                embed_dim: 16,
            }),
            "pbp" => Some(Process::Pbp {
                p_pin: 0.9,
                p_pac: 0.05,
            }),
            _ => None,
        }
    }

    /// Overrides the embedding dimension where the process has one.
    pub fn with_dim(self, dim: usize) -> Process {
        match self {
            Process::Hawkes { p_hn, .. } => Process::Hawkes {
                p_hn,
                embed_dim: dim,
            },
            Process::Triad { p_tn, .. } => Process::Triad {
                p_tn,
                embed_dim: dim,
            },
            pbp => pbp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetConfig {
    pub sizes: Vec<usize>,
    pub p_in: f64,
    pub p_ac: f64,
    pub process: Process,
    /// Length `N` of the full sequence; the original edge count if absent.
    #[serde(default)]
    pub total_size: Option<usize>,
    pub steps: usize,
    pub seed: u64,
}

impl DatasetConfig {
    /// 2000 nodes in five communities, `p_in = 0.3`, `p_ac = 0.01`, `T = 20`,
    /// `N` equal to the original edge count.
    pub fn reference(process: Process, seed: u64) -> Self {
        Self {
            sizes: vec![200, 300, 400, 500, 600],
            p_in: 0.3,
            p_ac: 0.01,
            process,
            total_size: None,
            steps: 20,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: usize,
    pub n: usize,
    pub nodes: usize,
    pub edges: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: DatasetConfig,
    pub graph_seed: u64,
    pub louvain_seed: u64,
    pub sequence_seed: u64,
    pub total_size: usize,
    pub snapshots: Vec<Snapshot>,
}

/// An original graph, its Louvain partition and the cumulative sequences
/// `xi_{1->t}` for `t = 1..=T`.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub original: Graph,
    pub partition: Partition,
    pub cumulative: Vec<IncrementalSequence>,
    pub manifest: Manifest,
}

/// Generates one sequence of `total` edges and cuts it into `steps` chunks
/// of `total / steps` edges, the last chunk taking the remainder. Returns
/// the cumulative prefixes. `partition` is only read by the partitioning
/// process.
pub fn build_dataset(
    g0: &Graph,
    partition: &Partition,
    process: &Process,
    total: usize,
    steps: usize,
    seed: u64,
) -> Result<Vec<IncrementalSequence>> {
    if steps == 0 {
        return Err(Error::Config("steps must be at least 1".into()));
    }
    let full = match *process {
        Process::Hawkes { p_hn, embed_dim } => hawkes_sequence(g0, total, p_hn, embed_dim, seed)?,
        Process::Triad { p_tn, embed_dim } => triad_sequence(g0, total, p_tn, embed_dim, seed)?,
        Process::Pbp { p_pin, p_pac } => pbp_sequence(g0, partition, total, p_pin, p_pac, seed)?,
    };
    let chunk = total / steps;
    Ok((1..=steps)
        .map(|t| full.prefix(if t == steps { total } else { chunk * t }))
        .collect())
}

pub fn generate_dataset(config: &DatasetConfig) -> Result<Dataset> {
    let graph_seed = derive_seed(config.seed, &[0]);
    let louvain_seed = derive_seed(config.seed, &[1]);
    let sequence_seed = derive_seed(config.seed, &[2]);
    let (original, _) =
        random_partition_graph(&config.sizes, config.p_in, config.p_ac, graph_seed)?;
    let partition = louvain(&original, louvain_seed)?;
    let total = config.total_size.unwrap_or(original.edge_count() as usize);
    let cumulative = build_dataset(
        &original,
        &partition,
        &config.process,
        total,
        config.steps,
        sequence_seed,
    )?;
    let snapshots = snapshots(&original, &cumulative);
    Ok(Dataset {
        manifest: Manifest {
            config: config.clone(),
            graph_seed,
            louvain_seed,
            sequence_seed,
            total_size: total,
            snapshots,
        },
        original,
        partition,
        cumulative,
    })
}

fn snapshots(g0: &Graph, cumulative: &[IncrementalSequence]) -> Vec<Snapshot> {
    let mut out = vec![Snapshot {
        t: 0,
        n: 0,
        nodes: g0.node_count(),
        edges: g0.edge_count(),
    }];
    let mut seen = std::collections::HashSet::new();
    let mut done = 0;
    for (i, xi) in cumulative.iter().enumerate() {
        for &(u, v) in &xi.edges()[done..] {
            for w in [u, v] {
                if !g0.contains_node(w) {
                    seen.insert(w);
                }
            }
        }
        done = xi.len();
        out.push(Snapshot {
            t: i + 1,
            n: xi.len(),
            nodes: g0.node_count() + seen.len(),
            edges: g0.edge_count() + xi.len() as u64,
        });
    }
    out
}

fn sequence_file(t: usize, steps: usize) -> String {
    let width = steps.to_string().len().max(2);
    format!("seq_t{t:0width$}.edges")
}

impl Dataset {
    pub fn steps(&self) -> usize {
        self.cumulative.len()
    }

    /// Writes `original.edges`, `original.tree`, one `seq_tXX.edges` per step
    /// and `manifest.json` into `dir`, creating it if needed.
    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        io::save_edge_list(&self.original, dir.join("original.edges"))?;
        io::save_partition(&self.partition, dir.join("original.tree"))?;
        for (i, xi) in self.cumulative.iter().enumerate() {
            io::save_sequence(xi, dir.join(sequence_file(i + 1, self.steps())))?;
        }
        let path = dir.join("manifest.json");
        let mut json = serde_json::to_string_pretty(&self.manifest)?;
        json.push('\n');
        fs::write(&path, json).map_err(|e| Error::io(&path, e))
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Dataset> {
        let dir = dir.as_ref();
        let path = dir.join("manifest.json");
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let manifest: Manifest = serde_json::from_str(&text)?;
        let steps = manifest.config.steps;
        let original = io::load_edge_list(dir.join("original.edges"))?;
        let partition = io::load_partition(dir.join("original.tree"))?;
        let cumulative = (1..=steps)
            .map(|t| io::load_sequence(dir.join(sequence_file(t, steps))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset {
            original,
            partition,
            cumulative,
            manifest,
        })
    }
}
