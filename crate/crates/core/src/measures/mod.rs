//! Topological measures of a single network and the fixed-order vector that
//! feeds the cross-database comparison.

pub mod clustering;
pub mod hops;
pub mod mixing;
pub mod powerlaw;
pub mod profiles;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::MeasureError;
use crate::graph::{BowTieMode, Graph};

pub use clustering::{clustering_coefficients, clustering_mixing, Clustering, ClusteringKind};
pub use hops::{effective_diameter, hop_plot_anf, AnfParams, HopPlot};
pub use mixing::{assortativity, degree_mixing, DegreeKind};
pub use powerlaw::powerlaw_exponent;
pub use profiles::{degree_profiles, DegreeProfiles, Profile, ProfileKind, ProfilePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Wcc,
    In,
    Core,
    Out,
    MeanDegree,
    Gamma,
    GammaIn,
    GammaOut,
    R,
    RInIn,
    RInOut,
    ROutIn,
    ROutOut,
    CMean,
    BMean,
    DMean,
    RC,
    RB,
    RD,
    Delta90,
}

impl Measure {
    pub const DIRECTED: [Measure; 20] = [
        Measure::Wcc,
        Measure::In,
        Measure::Core,
        Measure::Out,
        Measure::MeanDegree,
        Measure::Gamma,
        Measure::GammaIn,
        Measure::GammaOut,
        Measure::R,
        Measure::RInIn,
        Measure::RInOut,
        Measure::ROutIn,
        Measure::ROutOut,
        Measure::CMean,
        Measure::BMean,
        Measure::DMean,
        Measure::RC,
        Measure::RB,
        Measure::RD,
        Measure::Delta90,
    ];

    pub const UNDIRECTED: [Measure; 11] = [
        Measure::Wcc,
        Measure::MeanDegree,
        Measure::Gamma,
        Measure::R,
        Measure::CMean,
        Measure::BMean,
        Measure::DMean,
        Measure::RC,
        Measure::RB,
        Measure::RD,
        Measure::Delta90,
    ];

    pub fn canonical(directed: bool) -> &'static [Measure] {
        if directed {
            &Self::DIRECTED
        } else {
            &Self::UNDIRECTED
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Wcc => "wcc",
            Measure::In => "in",
            Measure::Core => "core",
            Measure::Out => "out",
            Measure::MeanDegree => "k_mean",
            Measure::Gamma => "gamma",
            Measure::GammaIn => "gamma_in",
            Measure::GammaOut => "gamma_out",
            Measure::R => "r",
            Measure::RInIn => "r_in_in",
            Measure::RInOut => "r_in_out",
            Measure::ROutIn => "r_out_in",
            Measure::ROutOut => "r_out_out",
            Measure::CMean => "c_mean",
            Measure::BMean => "b_mean",
            Measure::DMean => "d_mean",
            Measure::RC => "r_c",
            Measure::RB => "r_b",
            Measure::RD => "r_d",
            Measure::Delta90 => "delta90",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::DIRECTED
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| alloc::format!("unknown measure {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureConfig {
    pub k_min: f64,
    pub anf: AnfParams,
    pub bow_tie: BowTieMode,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            k_min: 10.0,
            anf: AnfParams::default(),
            bow_tie: BowTieMode::Degree,
        }
    }
}

/// Measures of one network in canonical order. Undefined values are `None`
/// with the reason kept in `missing`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureVector {
    pub directed: bool,
    pub entries: Vec<(Measure, Option<f64>)>,
    pub missing: Vec<(Measure, String)>,
}

impl MeasureVector {
    pub fn get(&self, m: Measure) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == m).and_then(|e| e.1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Degree exponents `(gamma, gamma_in, gamma_out)`; the last two only for
/// directed graphs. `gamma` uses `k_in + k_out` on directed graphs.
pub fn degree_exponents(
    g: &Graph,
    k_min: f64,
) -> (
    Result<f64, MeasureError>,
    Option<Result<f64, MeasureError>>,
    Option<Result<f64, MeasureError>>,
) {
    let nodes = 0..g.node_count() as u32;
    let total: Vec<f64> = nodes.clone().map(|u| g.degree(u) as f64).collect();
    let gamma = powerlaw_exponent(&total, k_min);
    if !g.is_directed() {
        return (gamma, None, None);
    }
    let ins: Vec<f64> = nodes.clone().map(|u| g.in_degree(u) as f64).collect();
    let outs: Vec<f64> = nodes.map(|u| g.out_degree(u) as f64).collect();
    (
        gamma,
        Some(powerlaw_exponent(&ins, k_min)),
        Some(powerlaw_exponent(&outs, k_min)),
    )
}

struct Builder {
    entries: Vec<(Measure, Option<f64>)>,
    missing: Vec<(Measure, String)>,
}

impl Builder {
    fn put(&mut self, m: Measure, v: Result<f64, MeasureError>) {
        match v {
            Ok(x) => self.entries.push((m, Some(x))),
            Err(e) => {
                self.entries.push((m, None));
                self.missing.push((m, e.to_string()));
            }
        }
    }
}

/// Computes every measure of `g`. Constituent failures (short power-law
/// tails, zero-variance mixing, fragmented hop plots) become missing
/// entries.
pub fn measure_vector(g: &Graph, cfg: &MeasureConfig) -> MeasureVector {
    measure_report(g, cfg).vector
}

/// A measure vector together with the hop plot behind its `delta90`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub vector: MeasureVector,
    pub hops: HopPlot,
}

/// [`measure_vector`], keeping the hop plot.
pub fn measure_report(g: &Graph, cfg: &MeasureConfig) -> MeasureReport {
    let directed = g.is_directed();
    let undirected = g.undirected_view();
    let mut b = Builder {
        entries: Vec::with_capacity(20),
        missing: Vec::new(),
    };

    let (_, wcc) = g.largest_wcc();
    b.put(Measure::Wcc, Ok(wcc));
    if directed {
        let bt = g.bow_tie(cfg.bow_tie).expect("graph is directed");
        b.put(Measure::In, Ok(bt.in_fraction));
        b.put(Measure::Core, Ok(bt.core_fraction));
        b.put(Measure::Out, Ok(bt.out_fraction));
    }
    b.put(
        Measure::MeanDegree,
        Ok(2.0 * g.link_count() as f64 / g.node_count() as f64),
    );
    let (gamma, gamma_in, gamma_out) = degree_exponents(g, cfg.k_min);
    b.put(Measure::Gamma, gamma);
    if let (Some(gi), Some(go)) = (gamma_in, gamma_out) {
        b.put(Measure::GammaIn, gi);
        b.put(Measure::GammaOut, go);
    }
    b.put(Measure::R, assortativity(&undirected));
    if directed {
        use DegreeKind::{In, Out};
        b.put(Measure::RInIn, degree_mixing(g, In, In));
        b.put(Measure::RInOut, degree_mixing(g, In, Out));
        b.put(Measure::ROutIn, degree_mixing(g, Out, In));
        b.put(Measure::ROutOut, degree_mixing(g, Out, Out));
    }
    let cl = clustering_coefficients(&undirected);
    b.put(Measure::CMean, Ok(cl.mean(ClusteringKind::C)));
    b.put(Measure::BMean, Ok(cl.mean(ClusteringKind::B)));
    b.put(Measure::DMean, Ok(cl.mean(ClusteringKind::D)));
    for (m, kind) in [
        (Measure::RC, ClusteringKind::C),
        (Measure::RB, ClusteringKind::B),
        (Measure::RD, ClusteringKind::D),
    ] {
        b.put(m, mixing::value_mixing(&undirected, cl.values(kind)));
    }
    let hops = hop_plot_anf(&undirected, &cfg.anf);
    b.put(Measure::Delta90, effective_diameter(&hops));

    debug_assert!(b
        .entries
        .iter()
        .map(|e| e.0)
        .eq(Measure::canonical(directed).iter().copied()));
    MeasureReport {
        vector: MeasureVector {
            directed,
            entries: b.entries,
            missing: b.missing,
        },
        hops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_triangle_vector() {
        let g = Graph::from_links(3, [(0, 1), (1, 2), (0, 2)], false, false).unwrap();
        let v = measure_vector(&g, &MeasureConfig::default());
        assert_eq!(v.len(), 11);
        assert_eq!(v.get(Measure::MeanDegree), Some(2.0));
        assert_eq!(v.get(Measure::CMean), Some(1.0));
        assert!(v.get(Measure::Delta90).unwrap() <= 1.0);
        // all degrees equal: every mixing is undefined, tail too short
        assert!(v.missing.iter().any(|(m, _)| *m == Measure::R));
        assert!(v.missing.iter().any(|(m, _)| *m == Measure::Gamma));
    }

    #[test]
    fn directed_vector_schema() {
        let g = Graph::from_links(4, [(0, 1), (1, 2), (2, 3), (0, 2), (3, 3)], true, true).unwrap();
        let v = measure_vector(&g, &MeasureConfig::default());
        let names: Vec<_> = v.entries.iter().map(|e| e.0.name()).collect();
        assert_eq!(
            names,
            [
                "wcc", "in", "core", "out", "k_mean", "gamma", "gamma_in", "gamma_out", "r",
                "r_in_in", "r_in_out", "r_out_in", "r_out_out", "c_mean", "b_mean", "d_mean",
                "r_c", "r_b", "r_d", "delta90"
            ]
        );
    }

    #[test]
    fn measure_names_parse() {
        for m in Measure::DIRECTED {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
    }
}
