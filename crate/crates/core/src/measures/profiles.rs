use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::measures::clustering::clustering_coefficients;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    NeighborConnectivity,
    ClusteringByDegree,
    DegreeHistogram,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::NeighborConnectivity => "neighbor_connectivity",
            ProfileKind::ClusteringByDegree => "clustering_by_degree",
            ProfileKind::DegreeHistogram => "degree_histogram",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfilePoint {
    pub k: usize,
    pub value: f64,
    pub count: usize,
}

/// Per-degree aggregate, sorted by `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub kind: ProfileKind,
    pub points: Vec<ProfilePoint>,
}

pub struct DegreeProfiles {
    pub neighbor_connectivity: Profile,
    pub clustering_by_degree: Profile,
    pub degree_histogram: Profile,
}

/// Mean neighbor degree, mean clustering and node count per degree, on the
/// undirected view. Degree-zero nodes appear in the histogram and the
/// clustering profile only.
pub fn degree_profiles(g: &Graph) -> DegreeProfiles {
    let view;
    let g = if g.is_directed() {
        view = g.undirected_view();
        &view
    } else {
        g
    };
    let cl = clustering_coefficients(g);
    // k -> (sum of mean neighbor degree, sum of c, count)
    let mut acc: BTreeMap<usize, (f64, f64, usize)> = BTreeMap::new();
    for u in 0..g.node_count() as u32 {
        let k = g.degree(u);
        let knn = if k == 0 {
            0.0
        } else {
            g.out_neighbors(u).iter().map(|&v| g.degree(v) as f64).sum::<f64>() / k as f64
        };
        let e = acc.entry(k).or_insert((0.0, 0.0, 0));
        e.0 += knn;
        e.1 += cl.c[u as usize];
        e.2 += 1;
    }
    let n = g.node_count() as f64;
    let mut nc = Vec::new();
    let mut ck = Vec::new();
    let mut hist = Vec::new();
    for (&k, &(knn, c, count)) in &acc {
        let m = count as f64;
        if k > 0 {
            nc.push(ProfilePoint { k, value: knn / m, count });
        }
        ck.push(ProfilePoint { k, value: c / m, count });
        hist.push(ProfilePoint { k, value: m / n, count });
    }
    DegreeProfiles {
        neighbor_connectivity: Profile {
            kind: ProfileKind::NeighborConnectivity,
            points: nc,
        },
        clustering_by_degree: Profile {
            kind: ProfileKind::ClusteringByDegree,
            points: ck,
        },
        degree_histogram: Profile {
            kind: ProfileKind::DegreeHistogram,
            points: hist,
        },
    }
}
