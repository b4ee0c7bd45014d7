mod common;

use std::collections::BTreeSet;

use oddgrid::catalog::{self, AppendixRecord, Table};
use oddgrid::periodic::{self, PeriodicPattern};
use oddgrid::solver::{self, Budget, SolveOptions};
use oddgrid::{
    build, cartesian_product, is_odd_independent, verify_strong_odd, FamilySpec, Graph, VertexSet,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next() == Some(true) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn record_strategy() -> impl Strategy<Value = AppendixRecord> {
    (0usize..4, 3usize..12).prop_flat_map(|(t, k)| {
        prop::collection::btree_set((0..k, 0..k), 0..=k * k / 2).prop_map(
            move |cells: BTreeSet<(usize, usize)>| AppendixRecord {
                table: Table::ALL[t],
                k,
                claimed_size: cells.len(),
                cells: cells.into_iter().collect(),
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_verify(g in graph_strategy(14)) {
        let rep = solver::solve_alpha_od(&g, &SolveOptions::default()).unwrap();
        let check = is_odd_independent(&g, &rep.witness).unwrap();
        prop_assert!(check.ok);
        prop_assert_eq!(rep.witness.len(), rep.optimum);
        prop_assert_eq!(rep.optimum, common::brute_alpha_od(&common::masks(&g)));
    }

    #[test]
    fn chi_so_colorings_verify(g in graph_strategy(9)) {
        let rep = solver::solve_chi_so(&g, g.n().max(1), Budget::default()).unwrap();
        let col = rep.coloring.expect("n colors always suffice");
        prop_assert!(verify_strong_odd(&g, &col).unwrap().ok);
        let chi = rep.chi_so.unwrap();
        prop_assert_eq!(col.colors_used(), chi);
        prop_assert!(rep.infeasible_below[..chi - 1].iter().all(|&b| b));
    }

    #[test]
    fn subsets_of_independent_sets_stay_independent(g in graph_strategy(12), drop in any::<prop::sample::Index>()) {
        let s = solver::max_independent_set(&g);
        prop_assume!(!s.is_empty());
        let members = s.to_vec();
        let gone = members[drop.index(members.len())];
        let smaller = VertexSet::from_vertices(g.n(), members.into_iter().filter(|&v| v != gone)).unwrap();
        prop_assert!(is_odd_independent(&g, &smaller).unwrap().independent);
    }

    #[test]
    fn witness_products_are_odd_independent(g in graph_strategy(7), h in graph_strategy(7)) {
        let opts = SolveOptions::default();
        let sg = solver::solve_alpha_od(&g, &opts).unwrap();
        let sh = solver::solve_alpha_od(&h, &opts).unwrap();
        let gh = cartesian_product(&g, &h).unwrap();
        let hn = h.n();
        let product = VertexSet::from_vertices(
            gh.n(),
            sg.witness.iter().flat_map(|u| sh.witness.iter().map(move |v| u * hn + v)),
        )
        .unwrap();
        prop_assert!(is_odd_independent(&gh, &product).unwrap().ok);
        let best = solver::solve_alpha_od(&gh, &opts).unwrap().optimum;
        prop_assert!(best >= sg.optimum * sh.optimum);
    }

    #[test]
    fn periodic_verification_is_translation_invariant(di in -20i64..20, dj in -20i64..20, which in 0usize..6) {
        let pat: PeriodicPattern = match which {
            0 => periodic::r_rook_diagonal_pattern(2).unwrap(),
            1 => periodic::r_bishop_pattern(1).unwrap(),
            2 => periodic::knight_central_pattern().unwrap(),
            3 => periodic::triangular_class_pattern().unwrap(),
            4 => periodic::hexagonal_class_pattern().unwrap(),
            _ => PeriodicPattern::new((3, 4), [(0, 0), (1, 1), (2, 3)], periodic::PatternFamily::PlanarGrid).unwrap(),
        };
        let base = periodic::verify_periodic(&pat);
        let moved = periodic::verify_periodic(&pat.translated(di, dj).unwrap());
        prop_assert_eq!(base.ok, moved.ok);
        prop_assert_eq!(base.density, moved.density);
    }

    #[test]
    fn appendix_text_round_trips(records in prop::collection::vec(record_strategy(), 0..5)) {
        let mut records = records;
        records.sort_by_key(|r| r.table as u8);
        let text = catalog::serialize_appendix(&records);
        let parsed = catalog::parse_appendix(&text).unwrap();
        prop_assert!(parsed.iter().all(|p| p.is_clean()));
        let back: Vec<AppendixRecord> = parsed.into_iter().map(|p| p.record).collect();
        prop_assert_eq!(&back, &records);
        let json = catalog::records_to_json(&records).unwrap();
        prop_assert_eq!(catalog::records_from_json(&json).unwrap(), records);
    }
}

#[test]
fn bundled_snapshot_matches_vetted_text() {
    let vetted = catalog::vet_bundled_text().unwrap();
    let snapshot = catalog::bundled_records().unwrap();
    assert_eq!(snapshot, vetted.accepted);
    let again = catalog::parse_appendix(&catalog::serialize_appendix(&snapshot)).unwrap();
    assert!(again.iter().all(|p| p.is_clean()));
    assert_eq!(
        again.into_iter().map(|p| p.record).collect::<Vec<_>>(),
        snapshot
    );
}

#[test]
fn internal_ratios_decrease_within_each_parity() {
    let opts = SolveOptions::default();
    let mut values: Vec<(usize, usize)> = (3..=10)
        .map(|k| {
            let rep =
                solver::solve_alpha_iod(&build(&FamilySpec::path_grid(k)).unwrap(), &opts).unwrap();
            assert!(rep.proof_complete);
            (k, rep.optimum)
        })
        .collect();
    for rec in catalog::bundled_records().unwrap() {
        if rec.table == Table::Iod && rec.k > 10 {
            values.push((rec.k, rec.claimed_size));
        }
    }
    values.sort();
    for parity in 0..2 {
        let ratios: Vec<(usize, f64)> = values
            .iter()
            .filter(|(k, _)| k % 2 == parity)
            .map(|&(k, v)| (k, v as f64 / (k * k) as f64))
            .collect();
        for w in ratios.windows(2) {
            assert!(
                w[1].1 < w[0].1,
                "ratio rises from k={} to k={}",
                w[0].0,
                w[1].0
            );
        }
    }
}

#[test]
fn deterministic_runs_agree() {
    let g = build(&FamilySpec::path_grid(7)).unwrap();
    let opts = SolveOptions::default().counting();
    let a = solver::solve_alpha_od(&g, &opts).unwrap();
    let b = solver::solve_alpha_od(&g, &opts).unwrap();
    assert_eq!(
        (&a.witness, a.optimum, a.optimum_count, a.nodes_explored),
        (&b.witness, b.optimum, b.optimum_count, b.nodes_explored)
    );
    let parallel = SolveOptions {
        threads: 4,
        deterministic: false,
        ..SolveOptions::default()
    };
    for spec in [
        FamilySpec::torus_grid(6),
        FamilySpec::King { n: 8 },
        FamilySpec::cylinder_grid(7),
    ] {
        let g = build(&spec).unwrap();
        let serial = solver::solve_alpha_od(&g, &SolveOptions::default()).unwrap();
        let threaded = solver::solve_alpha_od(&g, &parallel).unwrap();
        assert_eq!(serial.optimum, threaded.optimum, "{spec}");
        assert!(is_odd_independent(&g, &threaded.witness).unwrap().ok);
    }
}

#[test]
fn small_chromatic_values() {
    let chi = |spec: FamilySpec, max| {
        solver::solve_chi_so(&build(&spec).unwrap(), max, Budget::default()).unwrap()
    };
    let p22 = chi(FamilySpec::path_grid(2), 4);
    assert!(p22.infeasible_below[1]);
    assert_eq!(p22.chi_so, Some(4));
    let king3 = chi(FamilySpec::King { n: 3 }, 9);
    assert_eq!(king3.chi_so, Some(9));
    assert!(king3.proof_complete);
}
