//! Random-walk network samples, scored by the Kolmogorov-Smirnov distance
//! between sample and network degree distributions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::Graph;
use crate::rng::Rng;

pub const DEFAULT_SAMPLE_SIZE: usize = 250;
pub const DEFAULT_SAMPLE_COUNT: usize = 5000;
/// Per-step probability of jumping back to an already visited node.
pub const DEFAULT_RESTART: f64 = 0.15;

/// Induced subgraph on the nodes visited by one walk.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    /// Node ids of the sampled graph, sorted.
    pub nodes: Vec<u32>,
    /// Links of the sampled graph between sample nodes, in its own
    /// orientation, as listed by [`Graph::links`].
    pub links: Vec<(u32, u32)>,
    pub ks: f64,
    pub seed: u64,
    /// The host component was smaller than the requested size.
    pub truncated: bool,
}

/// Largest absolute difference between the empirical CDFs of two samples.
pub fn ks_distance(a: &[usize], b: &[usize]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    ks_sorted(&a, &b)
}

fn ks_sorted(a: &[usize], b: &[usize]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 0.0 } else { 1.0 };
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut best = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        best = best.max(libm::fabs(i as f64 / na - j as f64 / nb));
    }
    best
}

/// Reusable walk state for one graph.
pub struct Sampler<'g> {
    graph: &'g Graph,
    walk_graph: Graph,
    component: Vec<u32>,
    full_degrees: Vec<usize>,
    restart: f64,
    mark: Vec<u32>,
    stamp: u32,
}

impl<'g> Sampler<'g> {
    pub fn new(graph: &'g Graph, restart: f64) -> Result<Self, GraphError> {
        let (component, _) = graph.largest_wcc();
        if component.len() < 2 {
            return Err(GraphError::ComponentTooSmall(component.len()));
        }
        let mut full_degrees: Vec<usize> =
            (0..graph.node_count() as u32).map(|u| graph.degree(u)).collect();
        full_degrees.sort_unstable();
        Ok(Sampler {
            graph,
            walk_graph: graph.undirected_view(),
            component,
            full_degrees,
            restart,
            mark: vec![0; graph.node_count()],
            stamp: 0,
        })
    }

    /// Walks on the undirected view from a uniform node of the largest
    /// component until `size` distinct nodes are visited.
    pub fn sample(&mut self, size: usize, seed: u64) -> Sample {
        let mut rng = Rng::new(seed);
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        let target = size.min(self.component.len()).max(1);
        let truncated = size > self.component.len();
        let mut visited = Vec::with_capacity(target);
        let mut cur = self.component[rng.below(self.component.len())];
        self.mark[cur as usize] = self.stamp;
        visited.push(cur);
        while visited.len() < target {
            let nbrs = self.walk_graph.out_neighbors(cur);
            if nbrs.is_empty() || rng.uniform() < self.restart {
                cur = visited[rng.below(visited.len())];
                continue;
            }
            cur = nbrs[rng.below(nbrs.len())];
            if self.mark[cur as usize] != self.stamp {
                self.mark[cur as usize] = self.stamp;
                visited.push(cur);
            }
        }
        visited.sort_unstable();

        let g = self.graph;
        let mut links = Vec::new();
        let mut local_degree = vec![0usize; visited.len()];
        let pos = |v: u32| visited.binary_search(&v).expect("marked nodes are visited");
        for (i, &u) in visited.iter().enumerate() {
            for &v in g.out_neighbors(u) {
                if self.mark[v as usize] != self.stamp {
                    continue;
                }
                local_degree[i] += 1;
                if g.is_directed() {
                    local_degree[pos(v)] += 1;
                    links.push((u, v));
                } else if u < v {
                    links.push((u, v));
                }
            }
            if g.has_self_loop(u) {
                links.push((u, u));
            }
        }
        links.sort_unstable();
        local_degree.sort_unstable();
        let ks = ks_sorted(&local_degree, &self.full_degrees);
        Sample {
            nodes: visited,
            links,
            ks,
            seed,
            truncated,
        }
    }
}

pub fn random_walk_sample(g: &Graph, size: usize, seed: u64) -> Result<Sample, GraphError> {
    Ok(Sampler::new(g, DEFAULT_RESTART)?.sample(size, seed))
}

/// Winning sample and the KS distance of every generated sample.
#[derive(Clone, Debug, PartialEq)]
pub struct BestSample {
    pub sample: Sample,
    pub index: usize,
    pub all_ks: Vec<f64>,
}

/// Generates `n_samples` walks with seeds `seed + i` and keeps the one with
/// the smallest KS distance (lowest index on ties).
pub fn best_sample(
    g: &Graph,
    n_samples: usize,
    size: usize,
    seed: u64,
) -> Result<BestSample, GraphError> {
    best_sample_with(g, n_samples, size, seed, DEFAULT_RESTART)
}

pub fn best_sample_with(
    g: &Graph,
    n_samples: usize,
    size: usize,
    seed: u64,
    restart: f64,
) -> Result<BestSample, GraphError> {
    let mut sampler = Sampler::new(g, restart)?;
    let mut best: Option<(usize, Sample)> = None;
    let mut all_ks = Vec::with_capacity(n_samples);
    for i in 0..n_samples.max(1) {
        let s = sampler.sample(size, seed.wrapping_add(i as u64));
        all_ks.push(s.ks);
        if best.as_ref().is_none_or(|(_, b)| s.ks < b.ks) {
            best = Some((i, s));
        }
    }
    let (index, sample) = best.expect("at least one sample");
    Ok(BestSample {
        sample,
        index,
        all_ks,
    })
}
