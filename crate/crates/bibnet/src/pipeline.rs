//! The ingest, measure, sample and compare stages.
//!
//! Each stage reads what the previous one left under the output directory,
//! so stages can be rerun independently. Failures are recorded per dataset
//! and paradigm; the remaining jobs still run.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use bibnet_core::measures::{
    degree_exponents, degree_profiles, measure_report, AnfParams, MeasureConfig,
};
use bibnet_core::mds::{dissimilarity_matrix, nmds_embed, Normalization};
use bibnet_core::network::build;
use bibnet_core::sampling::best_sample_with;
use bibnet_core::stats::{
    rank_databases, select_independent_measures, studentized_range_q, studentized_residuals,
    MeasureMatrix,
};
use bibnet_core::{Measure, Paradigm};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::export;
use crate::parse::parse_records;
use crate::store::{self, hex};

/// Power-law cutoffs reported for every network.
pub const KMIN_CHOICES: [f64; 2] = [10.0, 25.0];

pub const NO_SIGNIFICANCE_BANNER: &str =
    "no significant inconsistencies: the Friedman test did not reject equal mean ranks";

/// Problems found while running a stage, split by exit status.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Outcome {
    pub input_errors: Vec<String>,
    pub stats_errors: Vec<String>,
}

impl Outcome {
    pub fn merge(&mut self, other: Outcome) {
        self.input_errors.extend(other.input_errors);
        self.stats_errors.extend(other.stats_errors);
    }

    /// 0 when clean, 1 for input errors, 2 for unmet statistical
    /// preconditions.
    pub fn exit_code(&self) -> i32 {
        if !self.input_errors.is_empty() {
            1
        } else if !self.stats_errors.is_empty() {
            2
        } else {
            0
        }
    }
}

pub fn stem(dataset: &str, paradigm: Paradigm) -> String {
    format!("{dataset}__{}", paradigm.code())
}

fn graphs_dir(cfg: &RunConfig) -> PathBuf {
    cfg.out.join("graphs")
}

fn measures_dir(cfg: &RunConfig) -> PathBuf {
    cfg.out.join("measures")
}

fn samples_dir(cfg: &RunConfig) -> PathBuf {
    cfg.out.join("samples")
}

fn compare_dir(cfg: &RunConfig) -> PathBuf {
    cfg.out.join("compare")
}

fn create_file(path: &Path) -> Result<std::io::BufWriter<fs::File>> {
    let f = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(std::io::BufWriter::new(f))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create_file(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub dataset: String,
    pub file: String,
    pub sha256: String,
    pub lines: usize,
    pub malformed_lines: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub dataset: String,
    pub paradigm: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub header: Option<store::Header>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dangling_refs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_citations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pruned_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ManifestEntry {
    fn failed(dataset: &str, paradigm: Paradigm, error: String) -> Self {
        ManifestEntry {
            dataset: dataset.to_string(),
            paradigm: paradigm.code().to_string(),
            status: "error".into(),
            file: None,
            header: None,
            dangling_refs: None,
            self_citations: None,
            pruned_nodes: None,
            error: Some(error),
        }
    }

    fn paradigm(&self) -> Option<Paradigm> {
        self.paradigm.parse().ok()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub graphs: Vec<ManifestEntry>,
}

fn manifest_path(cfg: &RunConfig) -> PathBuf {
    graphs_dir(cfg).join("manifest.json")
}

pub fn read_manifest(cfg: &RunConfig) -> Result<Manifest> {
    read_json(&manifest_path(cfg))
}

/// Parses every dataset, builds its paradigms and persists the graphs.
pub fn cmd_ingest(cfg: &RunConfig) -> Result<Outcome> {
    let dir = graphs_dir(cfg);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut outcome = Outcome::default();
    let mut manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        ..Manifest::default()
    };
    for ds in &cfg.datasets {
        let paradigms = cfg.paradigms_of(ds);
        let parsed = fs::read(&ds.path)
            .with_context(|| format!("reading {}", ds.path.display()))
            .and_then(|bytes| {
                let digest = hex(&Sha256::digest(&bytes));
                let p = parse_records(&bytes[..], ds.format)
                    .with_context(|| format!("parsing {}", ds.path.display()))?;
                Ok((digest, p))
            });
        let (digest, parsed) = match parsed {
            Ok(v) => v,
            Err(e) => {
                let msg = format!("{}: {e:#}", ds.name);
                for &p in &paradigms {
                    manifest.graphs.push(ManifestEntry::failed(&ds.name, p, format!("{e:#}")));
                }
                outcome.input_errors.push(msg);
                continue;
            }
        };
        manifest.inputs.push(InputDigest {
            dataset: ds.name.clone(),
            file: ds
                .path
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default(),
            sha256: digest,
            lines: parsed.lines,
            malformed_lines: parsed.malformed,
        });
        for &p in &paradigms {
            match build(&parsed.records, p) {
                Ok(net) => {
                    let file = format!("{}.bng", stem(&ds.name, p));
                    let header = store::write_graph(&dir.join(&file), &ds.name, &net)
                        .with_context(|| format!("writing {file}"))?;
                    manifest.graphs.push(ManifestEntry {
                        dataset: ds.name.clone(),
                        paradigm: p.code().to_string(),
                        status: "ok".into(),
                        file: Some(file),
                        header: Some(header),
                        dangling_refs: Some(net.stats.dangling_refs),
                        self_citations: Some(net.stats.self_citations),
                        pruned_nodes: Some(net.stats.pruned_nodes),
                        error: None,
                    });
                }
                Err(e) => {
                    outcome.input_errors.push(format!("{} {p}: {e}", ds.name));
                    manifest.graphs.push(ManifestEntry::failed(&ds.name, p, e.to_string()));
                }
            }
        }
    }
    write_json(&manifest_path(cfg), &manifest)?;
    Ok(outcome)
}

/// Graph entries of the manifest that the config still asks for.
fn requested<'m>(cfg: &RunConfig, manifest: &'m Manifest) -> Vec<(&'m ManifestEntry, Paradigm)> {
    let mut out = Vec::new();
    for ds in &cfg.datasets {
        for p in cfg.paradigms_of(ds) {
            if let Some(e) = manifest
                .graphs
                .iter()
                .find(|e| e.dataset == ds.name && e.paradigm() == Some(p))
            {
                out.push((e, p));
            }
        }
    }
    out
}

fn load_graph(cfg: &RunConfig, e: &ManifestEntry) -> Result<store::StoredGraph> {
    let file = e.file.as_deref().context("manifest entry has no file")?;
    let path = graphs_dir(cfg).join(file);
    store::read_graph(&path).with_context(|| format!("reading {}", path.display()))
}

/// Degree exponents at one lower cutoff.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub k_min: f64,
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_in: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_out: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub dataset: String,
    pub paradigm: String,
    pub directed: bool,
    pub nodes: usize,
    pub links: usize,
    pub k_min: f64,
    pub anf_realizations: u32,
    pub anf_trials: u32,
    pub seed: u64,
    /// Canonical measure name to value; `null` when undefined.
    pub measures: serde_json::Map<String, serde_json::Value>,
    /// Reasons for the `null` entries.
    pub missing: serde_json::Map<String, serde_json::Value>,
    /// Exponents at each supported cutoff.
    pub exponents: Vec<Exponents>,
}

impl MeasureFile {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.measures.get(name).and_then(|v| v.as_f64())
    }
}

pub fn measure_config(cfg: &RunConfig) -> MeasureConfig {
    MeasureConfig {
        k_min: cfg.k_min,
        anf: AnfParams {
            realizations: cfg.anf.realizations,
            trials: cfg.anf.trials,
            seed: cfg.seed,
        },
        bow_tie: cfg.bow_tie_mode(),
    }
}

fn measure_path(cfg: &RunConfig, dataset: &str, p: Paradigm) -> PathBuf {
    measures_dir(cfg).join(format!("{}.json", stem(dataset, p)))
}

/// Computes measure vectors, degree profiles and hop plots of every
/// persisted graph, plus one table per paradigm.
pub fn cmd_measure(cfg: &RunConfig) -> Result<Outcome> {
    let manifest = read_manifest(cfg)?;
    let dir = measures_dir(cfg);
    fs::create_dir_all(&dir)?;
    let mcfg = measure_config(cfg);
    let mut outcome = Outcome::default();
    let mut tables: Vec<(Paradigm, Vec<MeasureFile>)> = Vec::new();
    for (entry, p) in requested(cfg, &manifest) {
        if entry.status != "ok" {
            outcome.input_errors.push(format!(
                "{} {p}: not ingested: {}",
                entry.dataset,
                entry.error.as_deref().unwrap_or("unknown error")
            ));
            continue;
        }
        let sg = match load_graph(cfg, entry) {
            Ok(g) => g,
            Err(e) => {
                outcome.input_errors.push(format!("{} {p}: {e:#}", entry.dataset));
                continue;
            }
        };
        let g = &sg.graph;
        let report = measure_report(g, &mcfg);
        let measures = report
            .vector
            .entries
            .iter()
            .map(|(m, v)| (m.name().to_string(), v.map_or(serde_json::Value::Null, Into::into)))
            .collect();
        let missing = report
            .vector
            .missing
            .iter()
            .map(|(m, why)| (m.name().to_string(), why.clone().into()))
            .collect();
        let exponents = KMIN_CHOICES
            .iter()
            .map(|&k_min| {
                let (g, gi, go) = degree_exponents(g, k_min);
                Exponents {
                    k_min,
                    gamma: g.ok(),
                    gamma_in: gi.and_then(Result::ok),
                    gamma_out: go.and_then(Result::ok),
                }
            })
            .collect();
        let mf = MeasureFile {
            dataset: entry.dataset.clone(),
            paradigm: p.code().to_string(),
            directed: g.is_directed(),
            nodes: g.node_count(),
            links: g.link_count(),
            k_min: cfg.k_min,
            anf_realizations: cfg.anf.realizations,
            anf_trials: cfg.anf.trials,
            seed: cfg.seed,
            measures,
            missing,
            exponents,
        };
        write_json(&measure_path(cfg, &entry.dataset, p), &mf)?;

        let base = stem(&entry.dataset, p);
        let mut w = export::csv_writer(create_file(&dir.join(format!("{base}__hops.csv")))?);
        w.write_record(["delta", "h"])?;
        for (d, h) in &report.hops.points {
            w.write_record([d.to_string(), export::num(Some(*h))])?;
        }
        w.flush()?;
        let profiles = degree_profiles(g);
        for prof in [
            &profiles.neighbor_connectivity,
            &profiles.clustering_by_degree,
            &profiles.degree_histogram,
        ] {
            let name = format!("{base}__{}.csv", prof.kind.name());
            let mut w = export::csv_writer(create_file(&dir.join(name))?);
            w.write_record(["k", "value", "count"])?;
            for pt in &prof.points {
                w.write_record([pt.k.to_string(), export::num(Some(pt.value)), pt.count.to_string()])?;
            }
            w.flush()?;
        }
        match tables.iter_mut().find(|t| t.0 == p) {
            Some(t) => t.1.push(mf),
            None => tables.push((p, vec![mf])),
        }
    }
    tables.sort_by_key(|t| t.0);
    for (p, rows) in &tables {
        let names = Measure::canonical(p.is_directed());
        let mut w = export::csv_writer(create_file(&dir.join(format!("table_{}.csv", p.code())))?);
        let mut header = vec!["database", "nodes", "links"];
        header.extend(names.iter().map(|m| m.name()));
        w.write_record(&header)?;
        for r in rows {
            let mut rec = vec![r.dataset.clone(), r.nodes.to_string(), r.links.to_string()];
            rec.extend(names.iter().map(|m| export::num(r.value(m.name()))));
            w.write_record(&rec)?;
        }
        w.flush()?;
    }
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub dataset: String,
    pub paradigm: String,
    pub directed: bool,
    pub nodes: usize,
    pub links: usize,
    pub ks: f64,
    pub seed: u64,
    pub index: usize,
    pub samples: usize,
    pub size: usize,
    pub restart: f64,
    pub truncated: bool,
    pub median_ks: f64,
}

/// Exports the best random-walk sample of every persisted graph.
pub fn cmd_sample(cfg: &RunConfig) -> Result<Outcome> {
    let manifest = read_manifest(cfg)?;
    let dir = samples_dir(cfg);
    fs::create_dir_all(&dir)?;
    let mut outcome = Outcome::default();
    for (entry, p) in requested(cfg, &manifest) {
        if entry.status != "ok" {
            outcome.input_errors.push(format!("{} {p}: not ingested", entry.dataset));
            continue;
        }
        let sg = match load_graph(cfg, entry) {
            Ok(g) => g,
            Err(e) => {
                outcome.input_errors.push(format!("{} {p}: {e:#}", entry.dataset));
                continue;
            }
        };
        let s = &cfg.sampling;
        let best = match best_sample_with(&sg.graph, s.samples, s.size, cfg.seed, s.restart) {
            Ok(b) => b,
            Err(e) => {
                outcome.input_errors.push(format!("{} {p}: {e}", entry.dataset));
                continue;
            }
        };
        let mut ks = best.all_ks.clone();
        ks.sort_by(f64::total_cmp);
        let median_ks = if ks.len() % 2 == 1 {
            ks[ks.len() / 2]
        } else {
            0.5 * (ks[ks.len() / 2 - 1] + ks[ks.len() / 2])
        };
        let sample = &best.sample;
        let base = stem(&entry.dataset, p);
        let label = |u: u32| sg.labels[u as usize].as_str();
        let mut w = create_file(&dir.join(format!("{base}.edges")))?;
        for &(u, v) in &sample.links {
            writeln!(w, "{}\t{}", label(u), label(v))?;
        }
        w.flush()?;
        let nodes: Vec<&str> = sample.nodes.iter().map(|&u| label(u)).collect();
        let links: Vec<(&str, &str)> = sample.links.iter().map(|&(u, v)| (label(u), label(v))).collect();
        fs::write(
            dir.join(format!("{base}.dot")),
            export::dot(&base, sg.graph.is_directed(), &nodes, &links),
        )?;
        write_json(
            &dir.join(format!("{base}.json")),
            &SampleMeta {
                dataset: entry.dataset.clone(),
                paradigm: p.code().to_string(),
                directed: sg.graph.is_directed(),
                nodes: sample.nodes.len(),
                links: sample.links.len(),
                ks: sample.ks,
                seed: sample.seed,
                index: best.index,
                samples: s.samples,
                size: s.size,
                restart: s.restart,
                truncated: sample.truncated,
                median_ks,
            },
        )?;
    }
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FriedmanReport {
    pub statistic: f64,
    pub critical: f64,
    pub df: usize,
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub database: String,
    pub mean_rank: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub dims: usize,
    pub stress: f64,
    pub iterations: usize,
    pub restart: usize,
    pub file: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParadigmReport {
    pub paradigm: String,
    pub databases: Vec<String>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banner: Option<String>,
    pub dropped_measures: Vec<(String, String)>,
    pub selected_measures: Vec<String>,
    pub removed_measures: Vec<String>,
    pub z_critical: Option<f64>,
    pub friedman: Option<FriedmanReport>,
    pub q: Option<f64>,
    pub critical_difference: Option<f64>,
    pub ranking: Vec<RankReport>,
    pub groups: Vec<Vec<String>>,
    pub embeddings: Vec<EmbeddingReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
    pub alpha: f64,
    pub k_min: f64,
    pub anf_realizations: u32,
    pub anf_trials: u32,
    pub mds_restarts: usize,
    pub normalization: String,
    pub inputs: Vec<InputDigest>,
    pub graphs: Vec<ManifestEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub provenance: Provenance,
    pub paradigms: Vec<ParadigmReport>,
}

/// Columns usable for distances: at least two present values and, when
/// standardizing, nonzero spread.
fn mds_columns(m: &MeasureMatrix, zscore: bool) -> Vec<usize> {
    (0..m.n_measures())
        .filter(|&j| {
            let col: Vec<f64> = m.column(j).into_iter().flatten().collect();
            if col.len() < 2 {
                return false;
            }
            !zscore || col.iter().any(|v| *v != col[0])
        })
        .collect()
}

fn compare_paradigm(
    cfg: &RunConfig,
    p: Paradigm,
    rows: &[MeasureFile],
    dir: &Path,
) -> Result<ParadigmReport> {
    let names = Measure::canonical(p.is_directed());
    let databases: Vec<String> = rows.iter().map(|r| r.dataset.clone()).collect();
    let mut rep = ParadigmReport {
        paradigm: p.code().to_string(),
        databases: databases.clone(),
        status: "ok".into(),
        ..ParadigmReport::default()
    };
    let values = rows
        .iter()
        .map(|r| names.iter().map(|m| r.value(m.name())).collect())
        .collect();
    let m = MeasureMatrix::new(
        databases.clone(),
        names.iter().map(|m| m.name().to_string()).collect(),
        values,
    )?;
    fs::create_dir_all(dir)?;

    // ranking
    let ranking = studentized_residuals(&m, cfg.alpha).and_then(|rm| {
        export::residuals_csv(&rm, create_file(&dir.join("residuals.csv")).map_err(stats_io)?)
            .map_err(|e| bibnet_core::StatsError::Invalid(e.to_string()))?;
        rep.dropped_measures = rm.dropped.clone();
        let sel = select_independent_measures(&rm, cfg.alpha)?;
        rep.z_critical = Some(sel.z_critical);
        rep.selected_measures = sel.selected.iter().map(|&j| rm.columns[j].measure.clone()).collect();
        rep.removed_measures = sel.removed.iter().map(|&j| rm.columns[j].measure.clone()).collect();
        let q = cfg
            .q
            .or_else(|| studentized_range_q(rm.n_databases(), cfg.alpha))
            .ok_or_else(|| {
                bibnet_core::StatsError::Invalid(format!(
                    "no Nemenyi critical value tabulated for {} databases at alpha {}; set q",
                    rm.n_databases(),
                    cfg.alpha
                ))
            })?;
        rank_databases(&rm, &sel.selected, cfg.alpha, q)
    });
    match ranking {
        Ok(r) => {
            rep.friedman = Some(FriedmanReport {
                statistic: r.friedman.statistic,
                critical: r.friedman.critical,
                df: r.friedman.df,
                significant: r.friedman.significant,
            });
            rep.q = Some(r.q);
            rep.critical_difference = Some(r.critical_difference);
            rep.ranking = r
                .order()
                .into_iter()
                .map(|i| RankReport {
                    database: r.databases[i].clone(),
                    mean_rank: r.mean_ranks[i],
                })
                .collect();
            rep.groups = r
                .groups
                .iter()
                .map(|g| g.iter().map(|&i| r.databases[i].clone()).collect())
                .collect();
            if r.not_significant {
                rep.banner = Some(NO_SIGNIFICANCE_BANNER.to_string());
            }
            let mut w = export::csv_writer(create_file(&dir.join("selected.csv"))?);
            w.write_record(["measure", "selected", "removal_order"])?;
            for name in &rep.selected_measures {
                w.write_record([name.as_str(), "true", ""])?;
            }
            for (k, name) in rep.removed_measures.iter().enumerate() {
                w.write_record([name.clone(), "false".into(), (k + 1).to_string()])?;
            }
            w.flush()?;
            export::ranking_csv(&r, create_file(&dir.join("ranking.csv"))?)?;
            export::groups_csv(&r, create_file(&dir.join("cd_groups.csv"))?)?;
            let title = format!("Mean consistency ranks, {}", p.code());
            fs::write(dir.join("cd.svg"), export::cd_svg(&title, &r))?;
        }
        Err(e) => {
            rep.status = "error".into();
            rep.errors.push(format!("ranking: {e}"));
        }
    }

    // embedding
    let zscore = cfg.mds.normalization == crate::config::NormalizationName::Zscore;
    let keep = mds_columns(&m, zscore);
    let sub = MeasureMatrix::new(
        databases.clone(),
        keep.iter().map(|&j| m.measures[j].clone()).collect(),
        m.values.iter().map(|row| keep.iter().map(|&j| row[j]).collect()).collect(),
    )?;
    let norm: Normalization = cfg.mds.normalization.into();
    match dissimilarity_matrix(&sub, norm) {
        Ok(d) => {
            for &dims in &cfg.mds.dims {
                match nmds_embed(&d, dims, cfg.mds.restarts, cfg.seed) {
                    Ok(e) => {
                        let file = format!("mds_{dims}d.csv");
                        export::embedding_csv(&databases, &e, create_file(&dir.join(&file))?)?;
                        rep.embeddings.push(EmbeddingReport {
                            dims,
                            stress: e.stress,
                            iterations: e.iterations,
                            restart: e.restart,
                            file,
                        });
                    }
                    Err(e) => {
                        rep.status = "error".into();
                        rep.errors.push(format!("mds {dims}d: {e}"));
                    }
                }
            }
        }
        Err(e) => {
            rep.status = "error".into();
            rep.errors.push(format!("mds: {e}"));
        }
    }
    Ok(rep)
}

fn stats_io(e: anyhow::Error) -> bibnet_core::StatsError {
    bibnet_core::StatsError::Invalid(format!("{e:#}"))
}

/// Residuals, independent-measure screening, Friedman/Nemenyi ranking and
/// NMDS per paradigm, written under `compare/` with a `report.json`.
pub fn cmd_compare(cfg: &RunConfig) -> Result<Outcome> {
    let manifest = read_manifest(cfg)?;
    let mut outcome = Outcome::default();
    let mut reports = Vec::new();
    for p in Paradigm::ALL {
        let wanted: Vec<&str> = cfg
            .datasets
            .iter()
            .filter(|d| cfg.paradigms_of(d).contains(&p))
            .map(|d| d.name.as_str())
            .collect();
        if wanted.is_empty() {
            continue;
        }
        let mut rows = Vec::new();
        let mut errors = Vec::new();
        for name in &wanted {
            let path = measure_path(cfg, name, p);
            match read_json::<MeasureFile>(&path) {
                Ok(mf) => rows.push(mf),
                Err(e) => errors.push(format!("{name}: {e:#}")),
            }
        }
        let dir = compare_dir(cfg).join(p.code());
        let mut rep = if rows.len() < 4 {
            ParadigmReport {
                paradigm: p.code().to_string(),
                databases: rows.iter().map(|r| r.dataset.clone()).collect(),
                status: "error".into(),
                errors: vec![format!(
                    "need at least 4 measured databases, got {}",
                    rows.len()
                )],
                ..ParadigmReport::default()
            }
        } else {
            compare_paradigm(cfg, p, &rows, &dir)?
        };
        for e in &rep.errors {
            outcome.stats_errors.push(format!("{p}: {e}"));
        }
        for e in &errors {
            outcome.input_errors.push(format!("{p}: {e}"));
        }
        rep.errors.extend(errors);
        if let Some(b) = &rep.banner {
            eprintln!("{p}: {b}");
        }
        reports.push(rep);
    }
    let report = ComparisonReport {
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: cfg.seed,
            alpha: cfg.alpha,
            k_min: cfg.k_min,
            anf_realizations: cfg.anf.realizations,
            anf_trials: cfg.anf.trials,
            mds_restarts: cfg.mds.restarts,
            normalization: format!("{:?}", cfg.mds.normalization).to_lowercase(),
            inputs: manifest.inputs.clone(),
            graphs: manifest.graphs.clone(),
        },
        paradigms: reports,
    };
    fs::create_dir_all(compare_dir(cfg))?;
    write_json(&compare_dir(cfg).join("report.json"), &report)?;
    Ok(outcome)
}

/// Every stage in order.
pub fn cmd_all(cfg: &RunConfig) -> Result<Outcome> {
    let mut outcome = cmd_ingest(cfg)?;
    outcome.merge(cmd_measure(cfg)?);
    outcome.merge(cmd_sample(cfg)?);
    outcome.merge(cmd_compare(cfg)?);
    Ok(outcome)
}
