use bibnet_core::measures::{degree_mixing, hop_plot_anf, powerlaw_exponent, AnfParams, DegreeKind};
use bibnet_core::mds::{kruskal_stress, nmds_embed};
use bibnet_core::network::{build_coauthorship, build_paper_citation};
use bibnet_core::sampling::ks_distance;
use bibnet_core::stats::correlation::{pearson, spearman};
use bibnet_core::stats::{
    fisher_z, friedman_test, nemenyi_groups, screen_independent, studentized_residuals,
    MeasureMatrix,
};
use bibnet_core::{Graph, Record, RecordSet};
use proptest::prelude::*;

fn links_strategy(max_n: u32) -> impl Strategy<Value = (u32, Vec<(u32, u32)>)> {
    (3..max_n).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..(4 * n as usize))))
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("db{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_scale_covariant(
        degs in prop::collection::vec(1.0f64..500.0, 5..200),
        scale in 0.1f64..50.0,
    ) {
        let scaled: Vec<f64> = degs.iter().map(|d| d * scale).collect();
        if let Ok(g) = powerlaw_exponent(&degs, 10.0) {
            let h = powerlaw_exponent(&scaled, 10.0 * scale).unwrap();
            prop_assert!((g - h).abs() < 1e-12 * g.abs().max(1.0), "{} vs {}", g, h);
        }
    }

    #[test]
    fn assortativity_ignores_link_orientation((n, links) in links_strategy(60)) {
        let links: Vec<_> = links.into_iter().filter(|(u, v)| u != v).collect();
        prop_assume!(!links.is_empty());
        let g = Graph::from_links(n as usize, links.iter().copied(), false, false).unwrap();
        let r = Graph::from_links(n as usize, links.iter().map(|&(u, v)| (v, u)), false, false).unwrap();
        let a = degree_mixing(&g, DegreeKind::Total, DegreeKind::Total);
        let b = degree_mixing(&r, DegreeKind::Total, DegreeKind::Total);
        prop_assert_eq!(&a, &b);
        if let Ok(x) = a {
            prop_assert!((-1.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn hop_plot_is_monotone((n, links) in links_strategy(80), seed in 0u64..1000) {
        let links: Vec<_> = links.into_iter().filter(|(u, v)| u != v).collect();
        prop_assume!(!links.is_empty());
        let g = Graph::from_links(n as usize, links, false, false).unwrap();
        let h = hop_plot_anf(&g, &AnfParams { realizations: 4, trials: 8, seed });
        prop_assert!(h.points.windows(2).all(|w| w[0].1 <= w[1].1));
        prop_assert!(h.points.iter().all(|p| (0.0..=1.0).contains(&p.1)));
    }

    #[test]
    fn ks_is_a_bounded_symmetric_distance(
        a in prop::collection::vec(0usize..30, 1..50),
        b in prop::collection::vec(0usize..30, 1..50),
    ) {
        let d = ks_distance(&a, &b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(d, ks_distance(&b, &a));
        prop_assert_eq!(ks_distance(&a, &a), 0.0);
    }

    #[test]
    fn built_networks_respect_loop_and_degree_rules(
        papers in prop::collection::vec(
            (prop::collection::vec(0u8..8, 0..4), prop::collection::vec(0u8..12, 0..4)),
            2..15,
        )
    ) {
        let recs: Vec<Record> = papers
            .iter()
            .enumerate()
            .map(|(i, (au, refs))| Record::new(
                format!("p{i}"),
                au.iter().map(|a| format!("a{a}")).collect(),
                refs.iter().map(|r| format!("p{r}")).collect(),
                None,
            ))
            .collect();
        let rs = RecordSet::new(recs).unwrap();
        for net in [build_paper_citation(&rs), build_coauthorship(&rs)].into_iter().flatten() {
            let g = &net.graph;
            prop_assert_eq!(g.self_loop_count(), 0);
            prop_assert!((0..g.node_count() as u32).all(|u| g.degree(u) >= 1));
            prop_assert_eq!(net.labels.len(), g.node_count());
        }
    }

    #[test]
    fn residual_ranks_survive_affine_maps(
        col in prop::collection::vec(-100.0f64..100.0, 6),
        a in prop_oneof![-5.0f64..-0.2, 0.2f64..5.0],
        b in -50.0f64..50.0,
    ) {
        let m1 = MeasureMatrix::from_dense(names(6), vec!["x".into()], col.iter().map(|v| vec![*v]).collect()).unwrap();
        let m2 = MeasureMatrix::from_dense(names(6), vec!["x".into()], col.iter().map(|v| vec![a * v + b]).collect()).unwrap();
        let (Ok(r1), Ok(r2)) = (studentized_residuals(&m1, 0.1), studentized_residuals(&m2, 0.1)) else {
            return Ok(());
        };
        let (c1, c2) = (&r1.columns[0], &r2.columns[0]);
        for (x, y) in c1.residuals.iter().zip(&c2.residuals) {
            let (x, y) = (x.unwrap(), y.unwrap());
            prop_assert!((x.abs() - y.abs()).abs() < 1e-6 * x.abs().max(1.0));
            prop_assert!((x - a.signum() * y).abs() < 1e-6 * x.abs().max(1.0));
        }
        let mut sorted = c1.ranks.clone();
        sorted.sort();
        prop_assert_eq!(sorted, vec![1, 2, 3, 4, 5, 6]);
        // ranks agree unless two |residuals| are numerically tied
        let mut mags: Vec<f64> = c1.residuals.iter().map(|r| r.unwrap().abs()).collect();
        mags.sort_by(f64::total_cmp);
        if mags.windows(2).all(|w| w[1] - w[0] > 1e-9) {
            prop_assert_eq!(&c1.ranks, &c2.ranks);
        }
    }

    #[test]
    fn screening_leaves_no_dependent_pair(
        cols in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 6), 2..10),
    ) {
        let m = MeasureMatrix::from_dense(
            names(6),
            (0..cols.len()).map(|j| format!("m{j}")).collect(),
            (0..6).map(|i| cols.iter().map(|c| c[i]).collect()).collect(),
        ).unwrap();
        let Ok(rm) = studentized_residuals(&m, 0.1) else { return Ok(()) };
        let sel = screen_independent(&rm, 0.1);
        for (ai, &a) in sel.selected.iter().enumerate() {
            for &b in &sel.selected[ai + 1..] {
                let xs: Vec<f64> = rm.columns[a].residuals.iter().map(|v| v.unwrap()).collect();
                let ys: Vec<f64> = rm.columns[b].residuals.iter().map(|v| v.unwrap()).collect();
                let ax: Vec<f64> = xs.iter().map(|v| v.abs()).collect();
                let ay: Vec<f64> = ys.iter().map(|v| v.abs()).collect();
                for r in [pearson(&xs, &ys), spearman(&ax, &ay)].into_iter().flatten() {
                    let z = fisher_z(r, 6).map(f64::abs).unwrap_or(f64::INFINITY);
                    prop_assert!(z < sel.z_critical, "pair {a},{b} r={r}");
                }
            }
        }
    }

    #[test]
    fn friedman_matches_raw_rank_formula(perms in prop::collection::vec(Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (1..=5).collect();
        for i in (1..5).rev() {
            v.swap(i, rng.random_range(0..=i));
        }
        v
    }), 2..12)) {
        let (mean, f) = friedman_test(&perms, 0.1).unwrap();
        let (n, k) = (5.0, perms.len() as f64);
        let sum_sq: f64 = (0..5)
            .map(|i| {
                let r = perms.iter().map(|p| p[i] as f64).sum::<f64>() / k;
                r * r
            })
            .sum();
        let want = 12.0 * k / (n * (n + 1.0)) * (sum_sq - n * (n + 1.0) * (n + 1.0) / 4.0);
        prop_assert!((f.statistic - want).abs() < 1e-9);
        prop_assert!(mean.iter().all(|r| (1.0..=5.0).contains(r)));
    }

    #[test]
    fn nemenyi_groups_ignore_input_order(
        ranks in prop::collection::vec(1.0f64..6.0, 6),
        shift in 1usize..6,
    ) {
        let f = bibnet_core::stats::FriedmanResult { statistic: 99.0, critical: 1.0, df: 5, significant: true };
        let db = names(6);
        let a = nemenyi_groups(&db, &ranks, 13, 2.59, f);
        let perm: Vec<usize> = (0..6).map(|i| (i + shift) % 6).collect();
        let db2: Vec<String> = perm.iter().map(|&i| db[i].clone()).collect();
        let r2: Vec<f64> = perm.iter().map(|&i| ranks[i]).collect();
        let b = nemenyi_groups(&db2, &r2, 13, 2.59, f);
        let label = |r: &bibnet_core::stats::RankingResult| -> Vec<Vec<String>> {
            r.groups.iter().map(|g| g.iter().map(|&i| r.databases[i].clone()).collect()).collect()
        };
        prop_assert_eq!(label(&a), label(&b));
        for g in &a.groups {
            let lo = g.iter().map(|&i| ranks[i]).fold(f64::INFINITY, f64::min);
            let hi = g.iter().map(|&i| ranks[i]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(hi - lo < a.critical_difference);
        }
        let mut covered: Vec<usize> = a.groups.iter().flatten().copied().collect();
        covered.sort();
        covered.dedup();
        prop_assert_eq!(covered.len(), 6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stress_is_invariant_under_rigid_motion(
        pts in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 6),
        dis in prop::collection::vec(0.1f64..10.0, 15),
        angle in 0.0f64..std::f64::consts::TAU,
        flip in any::<bool>(),
        tx in -10.0f64..10.0,
        ty in -10.0f64..10.0,
    ) {
        let mut d = vec![vec![0.0; 6]; 6];
        let mut it = dis.iter();
        for i in 0..6 {
            for j in i + 1..6 {
                let v = *it.next().unwrap();
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        let x: Vec<Vec<f64>> = pts.iter().map(|&(a, b)| vec![a, b]).collect();
        let (c, s) = (angle.cos(), angle.sin());
        let sign = if flip { -1.0 } else { 1.0 };
        let y: Vec<Vec<f64>> = pts
            .iter()
            .map(|&(a, b)| vec![c * a - s * b + tx, sign * (s * a + c * b) + ty])
            .collect();
        let (s1, s2) = (kruskal_stress(&d, &x), kruskal_stress(&d, &y));
        prop_assert!((s1 - s2).abs() < 1e-9, "{} vs {}", s1, s2);
    }

    #[test]
    fn embedding_is_deterministic(dis in prop::collection::vec(0.1f64..10.0, 10), seed in 0u64..100) {
        let mut d = vec![vec![0.0; 5]; 5];
        let mut it = dis.iter();
        for i in 0..5 {
            for j in i + 1..5 {
                let v = *it.next().unwrap();
                d[i][j] = v;
                d[j][i] = v;
            }
        }
        let a = nmds_embed(&d, 2, 4, seed).unwrap();
        let b = nmds_embed(&d, 2, 4, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.stress_history.windows(2).all(|w| w[1] <= w[0]));
    }
}
