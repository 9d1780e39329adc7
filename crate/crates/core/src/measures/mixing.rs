use alloc::vec::Vec;

use crate::error::MeasureError;
use crate::graph::Graph;
use crate::stats::correlation::pearson;

/// Which degree of a node enters a mixing coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeKind {
    In,
    Out,
    Total,
}

fn degree_of(g: &Graph, u: u32, kind: DegreeKind) -> f64 {
    match kind {
        DegreeKind::In => g.in_degree(u) as f64,
        DegreeKind::Out => g.out_degree(u) as f64,
        DegreeKind::Total => g.degree(u) as f64,
    }
}

/// Pearson correlation of the `alpha`-degree at link sources and the
/// `beta`-degree at link targets. Undirected links count in both
/// orientations (every kind is then the plain degree); self-loops are
/// skipped.
pub fn degree_mixing(
    g: &Graph,
    alpha: DegreeKind,
    beta: DegreeKind,
) -> Result<f64, MeasureError> {
    let (alpha, beta) = if g.is_directed() {
        (alpha, beta)
    } else {
        (DegreeKind::Total, DegreeKind::Total)
    };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in 0..g.node_count() as u32 {
        let du = degree_of(g, u, alpha);
        for &v in g.out_neighbors(u) {
            xs.push(du);
            ys.push(degree_of(g, v, beta));
        }
    }
    pearson(&xs, &ys).ok_or(MeasureError::UndefinedMixing)
}

/// Classical degree assortativity, on the undirected view for directed
/// graphs.
pub fn assortativity(g: &Graph) -> Result<f64, MeasureError> {
    if g.is_directed() {
        degree_mixing(&g.undirected_view(), DegreeKind::Total, DegreeKind::Total)
    } else {
        degree_mixing(g, DegreeKind::Total, DegreeKind::Total)
    }
}

/// Pearson correlation of a per-node value at both endpoints of every
/// undirected link of `undirected`.
pub fn value_mixing(undirected: &Graph, values: &[f64]) -> Result<f64, MeasureError> {
    debug_assert!(!undirected.is_directed());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for u in 0..undirected.node_count() as u32 {
        for &v in undirected.out_neighbors(u) {
            xs.push(values[u as usize]);
            ys.push(values[v as usize]);
        }
    }
    pearson(&xs, &ys).ok_or(MeasureError::UndefinedMixing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_perfectly_disassortative() {
        let g = Graph::from_links(4, [(0, 1), (0, 2), (0, 3)], false, false).unwrap();
        assert_eq!(assortativity(&g).unwrap(), -1.0);
    }

    #[test]
    fn triangle_is_undefined() {
        let g = Graph::from_links(3, [(0, 1), (1, 2), (0, 2)], false, false).unwrap();
        assert_eq!(assortativity(&g), Err(MeasureError::UndefinedMixing));
    }

    #[test]
    fn self_loops_do_not_enter() {
        let a = Graph::from_links(4, [(0, 1), (0, 2), (1, 2), (3, 0)], true, true).unwrap();
        let b = Graph::from_links(4, [(0, 1), (0, 2), (1, 2), (3, 0), (2, 2)], true, true).unwrap();
        for (x, y) in [
            (DegreeKind::In, DegreeKind::Out),
            (DegreeKind::Out, DegreeKind::In),
            (DegreeKind::Total, DegreeKind::Total),
        ] {
            assert_eq!(degree_mixing(&a, x, y), degree_mixing(&b, x, y));
        }
    }
}
