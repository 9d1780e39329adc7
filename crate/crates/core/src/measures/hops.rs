//! Hop plot via the approximate neighborhood function (ANF) and the
//! effective diameter derived from it.
//!
//! Every node carries `trials` 64-bit Flajolet-Martin masks per realization.
//! Masks are OR-ed along links once per hop, so after `h` hops a node's masks
//! summarize its `h`-neighborhood. The statistic kept per node is the length
//! of the run of set low bits, summed over masks and pooled across
//! realizations; the pooled mean is mapped back to a neighborhood size.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MeasureError;
use crate::graph::Graph;
use crate::rng::Rng;

/// Flajolet-Martin bias constant.
pub const FM_PHI: f64 = 0.77351;

// Exact expectations are tabulated up to this count; above it the
// asymptotic `log2(FM_PHI * n)` is within 1e-3 bits.
const EXACT_LIMIT: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnfParams {
    pub realizations: u32,
    pub trials: u32,
    pub seed: u64,
}

impl Default for AnfParams {
    fn default() -> Self {
        AnfParams {
            realizations: 100,
            trials: 32,
            seed: 42,
        }
    }
}

/// Fraction `H(delta)` of reachable node pairs within `delta` hops,
/// starting at `delta = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopPlot {
    pub points: Vec<(u32, f64)>,
    pub realizations: u32,
    pub trials: u32,
    /// Estimated number of ordered reachable pairs (distinct nodes).
    pub reachable_pairs: f64,
}

impl HopPlot {
    /// `H` at `delta`, saturating past the last point.
    pub fn h(&self, delta: u32) -> f64 {
        match self.points.iter().find(|p| p.0 == delta) {
            Some(p) => p.1,
            None => self.points.last().map_or(0.0, |p| p.1),
        }
    }
}

/// Maps the mean low-bit run length of FM masks back to a set size.
struct RunLengthInverse {
    // expected run length for exactly n inserted items
    expected: Vec<f64>,
}

impl RunLengthInverse {
    fn new() -> Self {
        // An item misses bit 0 with probability 1/2; conditioned on that its
        // bit index is again geometric, shifted by one. Hence
        // E[n] = sum_{m<n} C(n,m) 2^-n (1 + E[m]).
        let mut expected = vec![0.0f64; EXACT_LIMIT + 1];
        let ln2 = core::f64::consts::LN_2;
        for n in 1..=EXACT_LIMIT {
            let lg_n = libm::lgamma(n as f64 + 1.0);
            let mut s = 0.0;
            for m in 0..n {
                let lp = lg_n
                    - libm::lgamma(m as f64 + 1.0)
                    - libm::lgamma((n - m) as f64 + 1.0)
                    - n as f64 * ln2;
                s += libm::exp(lp) * (1.0 + expected[m]);
            }
            expected[n] = s;
        }
        RunLengthInverse { expected }
    }

    fn size(&self, mean_run: f64) -> f64 {
        if mean_run <= 0.0 {
            return 0.0;
        }
        let top = self.expected[EXACT_LIMIT];
        if mean_run >= top {
            return libm::exp2(mean_run) / FM_PHI;
        }
        let i = self.expected.partition_point(|&e| e <= mean_run) - 1;
        let (lo, hi) = (self.expected[i], self.expected[i + 1]);
        i as f64 + (mean_run - lo) / (hi - lo)
    }
}

fn run_sums(masks: &[u64], trials: usize, out: &mut [u32]) {
    for (dst, chunk) in out.iter_mut().zip(masks.chunks_exact(trials)) {
        *dst = chunk.iter().map(|m| (!m).trailing_zeros()).sum();
    }
}

/// ANF hop plot on the undirected view of `g`, deterministic in
/// `params.seed`.
pub fn hop_plot_anf(g: &Graph, params: &AnfParams) -> HopPlot {
    let view;
    let g = if g.is_directed() {
        view = g.undirected_view();
        &view
    } else {
        g
    };
    let n = g.node_count();
    let k = params.trials.max(1) as usize;
    let realizations = params.realizations.max(1);

    // base[u]: pooled run sums at delta 0; steps[d][u]: pooled increase from
    // hop d to d + 1. Converged realizations stop contributing increments.
    let mut base = vec![0u64; n];
    let mut steps: Vec<Vec<u64>> = Vec::new();

    let mut cur = vec![0u64; n * k];
    let mut next = vec![0u64; n * k];
    let mut prev_row = vec![0u32; n];
    let mut row = vec![0u32; n];

    for r in 0..realizations {
        let mut rng = Rng::derived(params.seed, r as u64);
        for m in cur.iter_mut() {
            *m = 1u64 << rng.next_u64().trailing_zeros().min(63);
        }
        run_sums(&cur, k, &mut prev_row);
        for (b, &x) in base.iter_mut().zip(&prev_row) {
            *b += x as u64;
        }
        let mut hop = 0usize;
        loop {
            next.copy_from_slice(&cur);
            let mut changed = false;
            for u in 0..n {
                let dst = &mut next[u * k..(u + 1) * k];
                for &v in g.out_neighbors(u as u32) {
                    let v = v as usize;
                    let src = &cur[v * k..(v + 1) * k];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= *s;
                    }
                }
                if !changed && dst != &cur[u * k..(u + 1) * k] {
                    changed = true;
                }
            }
            if !changed || hop >= n {
                break;
            }
            core::mem::swap(&mut cur, &mut next);
            run_sums(&cur, k, &mut row);
            if steps.len() <= hop {
                steps.push(vec![0u64; n]);
            }
            for ((s, &a), &b) in steps[hop].iter_mut().zip(&row).zip(&prev_row) {
                *s += (a - b) as u64;
            }
            core::mem::swap(&mut prev_row, &mut row);
            hop += 1;
        }
    }

    let inverse = RunLengthInverse::new();
    let masks_per_node = (realizations as u64 * k as u64) as f64;
    let mut pooled = base;
    let mut totals = Vec::with_capacity(steps.len() + 1);
    let total = |pooled: &[u64]| -> f64 {
        pooled
            .iter()
            .map(|&s| inverse.size(s as f64 / masks_per_node))
            .sum()
    };
    totals.push(total(&pooled));
    for step in &steps {
        for (p, &s) in pooled.iter_mut().zip(step) {
            *p += s;
        }
        totals.push(total(&pooled));
    }

    let start = totals[0];
    let span = totals[totals.len() - 1] - start;
    let points = if span > 0.0 {
        totals
            .iter()
            .enumerate()
            .map(|(d, &t)| (d as u32, ((t - start) / span).clamp(0.0, 1.0)))
            .collect()
    } else {
        vec![(0, 0.0)]
    };
    HopPlot {
        points,
        realizations,
        trials: k as u32,
        reachable_pairs: span.max(0.0),
    }
}

/// Smallest (linearly interpolated) hop count at which `H` reaches 0.9.
pub fn effective_diameter(h: &HopPlot) -> Result<f64, MeasureError> {
    hop_quantile(h, 0.9)
}

pub fn hop_quantile(h: &HopPlot, q: f64) -> Result<f64, MeasureError> {
    const EPS: f64 = 1e-12;
    let last = h.points.last().map_or(0.0, |p| p.1);
    if last < q - EPS {
        return Err(MeasureError::Fragmented(last));
    }
    let mut prev = (0.0f64, 0.0f64);
    for &(d, v) in &h.points {
        let d = d as f64;
        if v >= q - EPS {
            if d == 0.0 || v <= prev.1 {
                return Ok(d);
            }
            let t = ((q - prev.1) / (v - prev.1)).clamp(0.0, 1.0);
            return Ok(prev.0 + t * (d - prev.0));
        }
        prev = (d, v);
    }
    unreachable!("final point satisfies the quantile")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plot(points: &[(u32, f64)]) -> HopPlot {
        HopPlot {
            points: points.to_vec(),
            realizations: 1,
            trials: 1,
            reachable_pairs: 0.0,
        }
    }

    #[test]
    fn interpolated_effective_diameter() {
        let h = plot(&[(0, 0.0), (1, 0.5), (2, 1.0)]);
        assert!((effective_diameter(&h).unwrap() - 1.8).abs() < 1e-12);
    }

    #[test]
    fn exact_hit_on_integer_hop() {
        let h = plot(&[(0, 0.0), (1, 0.4), (2, 0.7), (3, 0.9), (4, 1.0)]);
        assert!((effective_diameter(&h).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn one_hop_saturation() {
        let h = plot(&[(0, 0.0), (1, 1.0)]);
        let d = effective_diameter(&h).unwrap();
        assert!(d > 0.0 && d <= 1.0);
    }

    #[test]
    fn fragmented_plot_is_an_error() {
        let h = plot(&[(0, 0.0), (1, 0.5), (2, 0.8)]);
        assert_eq!(effective_diameter(&h), Err(MeasureError::Fragmented(0.8)));
    }

    #[test]
    fn run_length_table_matches_small_cases() {
        let inv = RunLengthInverse::new();
        assert!((inv.expected[1] - 0.5).abs() < 1e-12);
        assert!((inv.expected[2] - 1.0).abs() < 1e-12);
        assert!((inv.expected[3] - 1.4375).abs() < 1e-12);
        assert!((inv.size(0.5) - 1.0).abs() < 1e-9);
        // continuity with the asymptotic formula at the table edge
        let top = inv.expected[EXACT_LIMIT];
        let asym = libm::exp2(top) / FM_PHI;
        assert!((asym / EXACT_LIMIT as f64 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn complete_graph_saturates_in_one_hop() {
        let mut links = Vec::new();
        for u in 0..10u32 {
            for v in u + 1..10 {
                links.push((u, v));
            }
        }
        let g = Graph::from_links(10, links, false, false).unwrap();
        let h = hop_plot_anf(&g, &AnfParams::default());
        assert!((h.h(1) - 1.0).abs() <= 0.05);
    }

    #[test]
    fn deterministic_under_seed() {
        let g = Graph::from_links(5, [(0, 1), (1, 2), (2, 3), (3, 4)], false, false).unwrap();
        let p = AnfParams { realizations: 10, trials: 8, seed: 3 };
        assert_eq!(hop_plot_anf(&g, &p), hop_plot_anf(&g, &p));
    }
}
