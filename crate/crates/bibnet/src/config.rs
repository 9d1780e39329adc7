//! Run configuration, read from a single JSON document.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use bibnet_core::mds::Normalization;
use bibnet_core::{BowTieMode, Paradigm};
use serde::{Deserialize, Serialize};

use crate::parse::Format;

fn all_paradigms() -> Vec<String> {
    Paradigm::ALL.iter().map(|p| p.code().to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub name: String,
    pub path: PathBuf,
    pub format: Format,
    #[serde(default = "all_paradigms")]
    pub paradigms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnfConfig {
    pub realizations: u32,
    pub trials: u32,
}

impl Default for AnfConfig {
    fn default() -> Self {
        AnfConfig { realizations: 100, trials: 32 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingConfig {
    pub samples: usize,
    pub size: usize,
    pub restart: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            samples: bibnet_core::sampling::DEFAULT_SAMPLE_COUNT,
            size: bibnet_core::sampling::DEFAULT_SAMPLE_SIZE,
            restart: bibnet_core::sampling::DEFAULT_RESTART,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationName {
    Zscore,
    None,
}

impl From<NormalizationName> for Normalization {
    fn from(n: NormalizationName) -> Self {
        match n {
            NormalizationName::Zscore => Normalization::ZScore,
            NormalizationName::None => Normalization::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MdsConfig {
    pub dims: Vec<usize>,
    pub restarts: usize,
    pub normalization: NormalizationName,
}

impl Default for MdsConfig {
    fn default() -> Self {
        MdsConfig {
            dims: vec![2, 3],
            restarts: bibnet_core::mds::DEFAULT_RESTARTS,
            normalization: NormalizationName::Zscore,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BowTieName {
    Degree,
    Scc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub datasets: Vec<Dataset>,
    pub seed: u64,
    pub k_min: f64,
    pub anf: AnfConfig,
    pub sampling: SamplingConfig,
    pub alpha: f64,
    /// Nemenyi critical value; looked up from `alpha` and the database
    /// count when absent.
    pub q: Option<f64>,
    pub mds: MdsConfig,
    pub bow_tie: BowTieName,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            datasets: Vec::new(),
            seed: 42,
            k_min: 10.0,
            anf: AnfConfig::default(),
            sampling: SamplingConfig::default(),
            alpha: 0.1,
            q: None,
            mds: MdsConfig::default(),
            bow_tie: BowTieName::Degree,
            out: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    /// Loads a config; relative dataset paths resolve against the config's
    /// directory.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for d in &mut cfg.datasets {
            if d.path.is_relative() {
                d.path = base.join(&d.path);
            }
        }
        if cfg.out.is_relative() {
            cfg.out = base.join(&cfg.out);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.datasets.is_empty() {
            bail!("config lists no datasets");
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            bail!("alpha must lie in (0, 1), got {}", self.alpha);
        }
        if !(self.k_min >= 1.0) {
            bail!("k_min must be at least 1, got {}", self.k_min);
        }
        if self.anf.realizations == 0 || self.anf.trials == 0 {
            bail!("ANF realizations and trials must be positive");
        }
        if self.sampling.samples == 0 || self.sampling.size < 2 {
            bail!("sampling needs at least one sample of two or more nodes");
        }
        if !(0.0..1.0).contains(&self.sampling.restart) {
            bail!("restart probability must lie in [0, 1)");
        }
        if let Some(&p) = self.mds.dims.iter().find(|&&p| !(2..=3).contains(&p)) {
            bail!("MDS dimension must be 2 or 3, got {p}");
        }
        let mut names = std::collections::BTreeSet::new();
        for d in &self.datasets {
            if d.name.is_empty() || d.name.contains(['/', '\\']) || d.name.contains("__") {
                bail!("invalid dataset name {:?}", d.name);
            }
            if !names.insert(&d.name) {
                bail!("duplicate dataset name {:?}", d.name);
            }
            for p in &d.paradigms {
                p.parse::<Paradigm>()
                    .map_err(|e| anyhow::anyhow!("dataset {:?}: {e}", d.name))?;
            }
        }
        Ok(())
    }

    pub fn bow_tie_mode(&self) -> BowTieMode {
        match self.bow_tie {
            BowTieName::Degree => BowTieMode::Degree,
            BowTieName::Scc => BowTieMode::Scc,
        }
    }

    /// Paradigms of a dataset, in canonical order.
    pub fn paradigms_of(&self, d: &Dataset) -> Vec<Paradigm> {
        Paradigm::ALL
            .iter()
            .copied()
            .filter(|p| d.paradigms.iter().any(|c| c.parse() == Ok(*p)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_fill_in() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"datasets":[{"name":"a","path":"a.txt","format":"edgelist"}]}"#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.alpha, 0.1);
        assert_eq!(cfg.datasets[0].paradigms, ["pp", "aa-cite", "aa-coauth"]);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_alpha_and_empty() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate().is_err());
        cfg.datasets.push(Dataset {
            name: "a".into(),
            path: "a".into(),
            format: Format::Jsonl,
            paradigms: vec!["pp".into()],
        });
        cfg.alpha = 1.0;
        assert!(cfg.validate().is_err());
        cfg.alpha = 0.05;
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"sede": 1}"#).is_err());
    }
}
