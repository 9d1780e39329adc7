//! Local clustering coefficients `c`, `b` (delta-corrected) and `d`
//! (degree-corrected), all on the undirected view.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MeasureError;
use crate::graph::Graph;
use crate::measures::mixing::value_mixing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusteringKind {
    C,
    B,
    D,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    pub c: Vec<f64>,
    pub b: Vec<f64>,
    pub d: Vec<f64>,
    /// Links among the neighbors of each node.
    pub triangles: Vec<u64>,
    /// Largest degree of the undirected view.
    pub max_degree: usize,
}

impl Clustering {
    pub fn values(&self, kind: ClusteringKind) -> &[f64] {
        match kind {
            ClusteringKind::C => &self.c,
            ClusteringKind::B => &self.b,
            ClusteringKind::D => &self.d,
        }
    }

    pub fn mean(&self, kind: ClusteringKind) -> f64 {
        let v = self.values(kind);
        v.iter().sum::<f64>() / v.len() as f64
    }
}

fn count_common(a: &[u32], b: &[u32], mut hit: impl FnMut(u32)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                hit(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Per-node triangle counts on an undirected graph.
fn triangles(g: &Graph) -> Vec<u64> {
    let mut t = vec![0u64; g.node_count()];
    for u in 0..g.node_count() as u32 {
        let nu = g.out_neighbors(u);
        for &v in nu.iter().filter(|&&v| v > u) {
            count_common(nu, g.out_neighbors(v), |w| t[w as usize] += 1);
        }
    }
    t
}

pub fn clustering_coefficients(g: &Graph) -> Clustering {
    let view;
    let g = if g.is_directed() {
        view = g.undirected_view();
        &view
    } else {
        g
    };
    let n = g.node_count();
    let t = triangles(g);
    let max_degree = (0..n as u32).map(|u| g.degree(u)).max().unwrap_or(0);
    let mut c = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut d = vec![0.0; n];
    for u in 0..n as u32 {
        let k = g.degree(u);
        if k <= 1 {
            continue;
        }
        let i = u as usize;
        let ti = t[i] as f64;
        c[i] = 2.0 * ti / (k * (k - 1)) as f64;
        // k / max_degree <= 1 keeps b <= c after rounding
        b[i] = c[i] * (k as f64 / max_degree as f64);
        // most links each neighbor j can have inside the neighborhood
        let slots: usize = g
            .out_neighbors(u)
            .iter()
            .map(|&j| (g.degree(j) - 1).min(k - 1))
            .sum();
        let omega = slots / 2;
        if omega > 0 {
            d[i] = ti / omega as f64;
        }
    }
    Clustering {
        c,
        b,
        d,
        triangles: t,
        max_degree,
    }
}

/// Pearson correlation of a clustering coefficient across link endpoints.
pub fn clustering_mixing(g: &Graph, kind: ClusteringKind) -> Result<f64, MeasureError> {
    let view;
    let g = if g.is_directed() {
        view = g.undirected_view();
        &view
    } else {
        g
    };
    let cl = clustering_coefficients(g);
    value_mixing(g, cl.values(kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(n: usize, links: &[(u32, u32)]) -> Graph {
        Graph::from_links(n, links.iter().copied(), false, false).unwrap()
    }

    #[test]
    fn complete_graph() {
        let g = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let cl = clustering_coefficients(&g);
        assert!(cl.c.iter().chain(&cl.b).chain(&cl.d).all(|&x| x == 1.0));
        assert_eq!(cl.mean(ClusteringKind::C), 1.0);
        assert_eq!(
            clustering_mixing(&g, ClusteringKind::C),
            Err(MeasureError::UndefinedMixing)
        );
    }

    #[test]
    fn triangle() {
        let g = undirected(3, &[(0, 1), (1, 2), (0, 2)]);
        let cl = clustering_coefficients(&g);
        assert_eq!(cl.triangles, [1, 1, 1]);
        assert_eq!((cl.c[0], cl.b[0], cl.d[0]), (1.0, 1.0, 1.0));
    }

    #[test]
    fn star_plus_edge() {
        // center 0 with leaves 1, 2, 3 and the link 1-2
        let g = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]);
        let cl = clustering_coefficients(&g);
        assert!((cl.c[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((cl.b[0] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(cl.d[0], 1.0);
        // node 1: k = 2, t = 1, delta = 3
        assert_eq!(cl.c[1], 1.0);
        assert!((cl.b[1] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(cl.d[1], 1.0);
        assert_eq!((cl.c[3], cl.b[3], cl.d[3]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn directed_input_uses_undirected_view() {
        let g = Graph::from_links(3, [(0, 1), (1, 2), (2, 0), (1, 0), (1, 1)], true, true).unwrap();
        let cl = clustering_coefficients(&g);
        assert_eq!(cl.c, [1.0, 1.0, 1.0]);
    }
}
