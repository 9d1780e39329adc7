//! Non-metric multidimensional scaling of measure vectors.
//!
//! Stress is Kruskal's stress-1 against monotone (PAVA) disparities, with
//! ties in the dissimilarities left free (primary approach). Configurations
//! are improved with Guttman transforms.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MdsError;
use crate::rng::Rng;
use crate::stats::MeasureMatrix;

pub const DEFAULT_RESTARTS: usize = 20;
pub const MAX_ITERATIONS: usize = 500;
pub const TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    #[default]
    ZScore,
    None,
}

/// Euclidean distances between the rows of `m`. Missing cells are skipped
/// pairwise and the sum rescaled by `M / M_present`.
pub fn dissimilarity_matrix(
    m: &MeasureMatrix,
    normalization: Normalization,
) -> Result<Vec<Vec<f64>>, MdsError> {
    let n = m.n_databases();
    let k = m.n_measures();
    let mut x = m.values.clone();
    if normalization == Normalization::ZScore {
        for j in 0..k {
            let col: Vec<f64> = m.column(j).into_iter().flatten().collect();
            if col.len() < 2 {
                return Err(MdsError::ZeroVariance(j));
            }
            let mean = col.iter().sum::<f64>() / col.len() as f64;
            let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (col.len() - 1) as f64;
            if !(var > 0.0) {
                return Err(MdsError::ZeroVariance(j));
            }
            let sd = libm::sqrt(var);
            for row in x.iter_mut() {
                if let Some(v) = row[j].as_mut() {
                    *v = (*v - mean) / sd;
                }
            }
        }
    }
    let mut d = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let (mut ss, mut present) = (0.0, 0usize);
            for j in 0..k {
                if let (Some(u), Some(v)) = (x[a][j], x[b][j]) {
                    ss += (u - v) * (u - v);
                    present += 1;
                }
            }
            if present == 0 {
                return Err(MdsError::NoSharedColumns(a, b));
            }
            let dist = libm::sqrt(ss * k as f64 / present as f64);
            d[a][b] = dist;
            d[b][a] = dist;
        }
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    /// One row of `p` coordinates per object, column means zero.
    pub coordinates: Vec<Vec<f64>>,
    pub stress: f64,
    pub iterations: usize,
    pub seed: u64,
    /// Restart that produced this solution (0 is the classical start).
    pub restart: usize,
    /// Stress after each accepted update, non-increasing.
    pub stress_history: Vec<f64>,
}

fn validate(d: &[Vec<f64>]) -> Result<(), MdsError> {
    let n = d.len();
    if d.iter().any(|row| row.len() != n) {
        return Err(MdsError::NotSquare);
    }
    for i in 0..n {
        if d[i][i] != 0.0 {
            return Err(MdsError::InvalidEntry(i, i));
        }
        for j in i + 1..n {
            let (a, b) = (d[i][j], d[j][i]);
            if !a.is_finite() || a < 0.0 {
                return Err(MdsError::InvalidEntry(i, j));
            }
            if libm::fabs(a - b) > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                return Err(MdsError::NotSymmetric(i, j));
            }
        }
    }
    Ok(())
}

/// Pair list `(i, j)` for `i < j` sorted by dissimilarity, with the
/// boundaries of runs of equal dissimilarity.
struct PairOrder {
    pairs: Vec<(usize, usize)>,
    blocks: Vec<(usize, usize)>,
}

impl PairOrder {
    fn new(d: &[Vec<f64>]) -> Self {
        let n = d.len();
        let mut pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs.sort_by(|a, b| d[a.0][a.1].total_cmp(&d[b.0][b.1]).then(a.cmp(b)));
        let mut blocks = Vec::new();
        let mut start = 0;
        for t in 1..=pairs.len() {
            if t == pairs.len() || d[pairs[t].0][pairs[t].1] != d[pairs[start].0][pairs[start].1] {
                blocks.push((start, t));
                start = t;
            }
        }
        PairOrder { pairs, blocks }
    }
}

fn distances(x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s: f64 = x[i].iter().zip(&x[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            out[i][j] = libm::sqrt(s);
            out[j][i] = out[i][j];
        }
    }
    out
}

/// Least-squares non-decreasing fit of `y`.
pub fn pava(y: &[f64]) -> Vec<f64> {
    // (sum, count) per pooled block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(y.len());
    for &v in y {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (s1, c1) = blocks[blocks.len() - 1];
            let (s0, c0) = blocks[blocks.len() - 2];
            if s0 / c0 as f64 <= s1 / c1 as f64 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s0 + s1, c0 + c1);
        }
    }
    let mut out = Vec::with_capacity(y.len());
    for (s, c) in blocks {
        out.extend(core::iter::repeat_n(s / c as f64, c));
    }
    out
}

/// Disparities for the current distances, as an `n x n` matrix.
fn disparities(order: &PairOrder, dist: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pairs = order.pairs.clone();
    for &(a, b) in &order.blocks {
        pairs[a..b].sort_by(|p, q| dist[p.0][p.1].total_cmp(&dist[q.0][q.1]));
    }
    let seq: Vec<f64> = pairs.iter().map(|&(i, j)| dist[i][j]).collect();
    let fit = pava(&seq);
    let n = dist.len();
    let mut out = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(fit) {
        out[i][j] = v;
        out[j][i] = v;
    }
    out
}

fn stress_of(dist: &[Vec<f64>], dhat: &[Vec<f64>]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..dist.len() {
        for j in i + 1..dist.len() {
            num += (dhat[i][j] - dist[i][j]) * (dhat[i][j] - dist[i][j]);
            den += dist[i][j] * dist[i][j];
        }
    }
    if den > 0.0 {
        libm::sqrt(num / den)
    } else {
        0.0
    }
}

/// Kruskal stress-1 of configuration `x` against dissimilarities `d`.
pub fn kruskal_stress(d: &[Vec<f64>], x: &[Vec<f64>]) -> f64 {
    let order = PairOrder::new(d);
    let dist = distances(x);
    stress_of(&dist, &disparities(&order, &dist))
}

fn guttman(x: &[Vec<f64>], dist: &[Vec<f64>], dhat: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    let p = x[0].len();
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || dist[i][j] <= 0.0 {
                continue;
            }
            let w = dhat[i][j] / dist[i][j];
            for c in 0..p {
                out[i][c] += w * (x[i][c] - x[j][c]);
            }
        }
        for v in out[i].iter_mut() {
            *v /= n as f64;
        }
    }
    out
}

fn center(x: &mut [Vec<f64>]) {
    let n = x.len() as f64;
    for c in 0..x[0].len() {
        let mean = x.iter().map(|r| r[c]).sum::<f64>() / n;
        for r in x.iter_mut() {
            r[c] -= mean;
        }
    }
}

/// Eigenpairs of a symmetric matrix by cyclic Jacobi rotations, sorted by
/// descending eigenvalue; eigenvectors are the columns of the second value.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut a = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if libm::fabs(a[p][q]) < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]).then(i.cmp(&j)));
    let values = idx.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n).map(|r| idx.iter().map(|&i| v[r][i]).collect()).collect();
    (values, vectors)
}

/// Torgerson scaling: top `p` eigenvectors of the double-centred squared
/// dissimilarities.
pub fn classical_scaling(d: &[Vec<f64>], p: usize) -> Vec<Vec<f64>> {
    let n = d.len();
    let sq: Vec<Vec<f64>> = d.iter().map(|r| r.iter().map(|v| v * v).collect()).collect();
    let row_mean: Vec<f64> = sq.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand)).collect())
        .collect();
    let (values, vectors) = symmetric_eigen(&b);
    (0..n)
        .map(|i| {
            (0..p)
                .map(|c| if c < n { vectors[i][c] * libm::sqrt(values[c].max(0.0)) } else { 0.0 })
                .collect()
        })
        .collect()
}

fn refine(d_order: &PairOrder, mut x: Vec<Vec<f64>>) -> (Vec<Vec<f64>>, f64, Vec<f64>) {
    let n = x.len();
    let target = (n * (n - 1) / 2) as f64;
    let mut dist = distances(&x);
    let mut dhat = disparities(d_order, &dist);
    let mut stress = stress_of(&dist, &dhat);
    let mut history = vec![stress];
    for _ in 0..MAX_ITERATIONS {
        if stress < 1e-12 {
            break;
        }
        let ss: f64 = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| dhat[i][j] * dhat[i][j]).sum();
        if !(ss > 0.0) {
            break;
        }
        let scale = libm::sqrt(target / ss);
        let scaled: Vec<Vec<f64>> = dhat.iter().map(|r| r.iter().map(|v| v * scale).collect()).collect();
        let mut cand = guttman(&x, &dist, &scaled);
        let mut accepted = None;
        for _ in 0..20 {
            let cd = distances(&cand);
            let ch = disparities(d_order, &cd);
            let cs = stress_of(&cd, &ch);
            if cs <= stress {
                accepted = Some((cand, cd, ch, cs));
                break;
            }
            // halve the step toward the current configuration
            for (c, o) in cand.iter_mut().zip(&x) {
                for (cv, ov) in c.iter_mut().zip(o) {
                    *cv = 0.5 * (*cv + ov);
                }
            }
        }
        let Some((nx, nd, nh, ns)) = accepted else { break };
        let rel = (stress - ns) / stress;
        x = nx;
        dist = nd;
        dhat = nh;
        stress = ns;
        history.push(stress);
        if rel < TOLERANCE {
            break;
        }
    }
    (x, stress, history)
}

/// Every one of `restarts` NMDS runs in `p` dimensions, in restart order.
/// Restart 0 starts from classical scaling, the rest from Gaussian
/// configurations drawn from streams of `seed`.
pub fn nmds_runs(
    d: &[Vec<f64>],
    p: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<Embedding>, MdsError> {
    if !(2..=3).contains(&p) {
        return Err(MdsError::Dimension(p));
    }
    validate(d)?;
    let n = d.len();
    if n <= 2 {
        let mut coordinates = vec![vec![0.0; p]; n];
        if n == 2 {
            coordinates[0][0] = -d[0][1] / 2.0;
            coordinates[1][0] = d[0][1] / 2.0;
        }
        return Ok(vec![Embedding {
            coordinates,
            stress: 0.0,
            iterations: 0,
            seed,
            restart: 0,
            stress_history: vec![0.0],
        }]);
    }
    let order = PairOrder::new(d);
    let runs = (0..restarts.max(1))
        .map(|r| {
            let init = if r == 0 {
                classical_scaling(d, p)
            } else {
                let mut rng = Rng::derived(seed, r as u64);
                (0..n).map(|_| (0..p).map(|_| rng.gaussian()).collect()).collect()
            };
            let (mut x, stress, history) = refine(&order, init);
            center(&mut x);
            Embedding {
                coordinates: x,
                stress,
                iterations: history.len() - 1,
                seed,
                restart: r,
                stress_history: history,
            }
        })
        .collect();
    Ok(runs)
}

/// Lowest-stress run of [`nmds_runs`]; ties go to the lowest restart.
pub fn nmds_embed(
    d: &[Vec<f64>],
    p: usize,
    restarts: usize,
    seed: u64,
) -> Result<Embedding, MdsError> {
    let mut best: Option<Embedding> = None;
    for e in nmds_runs(d, p, restarts, seed)? {
        if best.as_ref().is_none_or(|b| e.stress < b.stress) {
            best = Some(e);
        }
    }
    Ok(best.expect("at least one restart"))
}
