use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Algo;
use crate::engine::{Counters, SccSettings};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputDescriptor {
    EdgeList {
        path: PathBuf,
    },
    Points {
        path: PathBuf,
        k: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        label_col: Option<usize>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub graph_build_seconds: f64,
    pub cluster_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    pub dendrogram: PathBuf,
    pub dendrogram_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<PathBuf>,
}

/// Everything needed to reproduce one clustering run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub input: InputDescriptor,
    pub vertices: usize,
    pub edges: usize,
    pub algorithm: Algo,
    pub epsilon: f64,
    pub seed: u64,
    pub threads: Option<usize>,
    pub weight_scheme: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scc: Option<SccSettings>,
    pub counters: Counters,
    pub timings: Timings,
    pub outputs: Outputs,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Absolute form of a path so manifests replay from any directory.
pub fn absolute(path: &Path) -> PathBuf {
    std::path::absolute(path).unwrap_or_else(|_| path.to_path_buf())
}
