use maxcut_core::oracle::brute_force_maxcut;
use maxcut_core::presets::{apply_manual, Preset};
use maxcut_core::record::{aggregate, RunRecord};
use maxcut_core::solvers::{solve, solve_per_component};
use maxcut_core::{generate_er, parse_edge_list, Algorithm, SolverConfig};

const TRIANGLE_AND_SQUARE: &str = "\
% two components and an isolated node
8 7
1 2
2 3
3 1
4 5
5 6
6 7
7 4
";

#[test]
fn every_algorithm_writes_a_verifiable_record() {
    let g = generate_er(40, 0.2, 3).unwrap();
    let mut records = Vec::new();
    for algorithm in [Algorithm::Pquco, Algorithm::Pluco, Algorithm::Pdeco] {
        let mut cfg = SolverConfig::with_algorithm(algorithm);
        cfg.batch_size = 8;
        cfg.num_batches = 2;
        apply_manual(&mut cfg, Preset::SmallEr);
        cfg.ascent.iterations = 300;
        if let Some(p) = cfg.lifted_ascent.as_mut() {
            p.iterations = 300;
        }
        let report = solve(&g, &cfg, 5).unwrap();
        let record = RunRecord::new("er-40", &g, &cfg, "manual", 5, &report);
        let json = serde_json::to_string_pretty(&record).unwrap();
        let back: RunRecord = serde_json::from_str(&json).unwrap();
        assert!(back.verify(&g).unwrap());
        assert_eq!(back.batch_trace.len(), 2);
        records.push(back);
    }
    let rows = aggregate(&records, true);
    assert_eq!(
        rows.iter()
            .map(|r| (r.algorithm.as_str(), r.lift))
            .collect::<Vec<_>>(),
        vec![("pquco", 1), ("pluco", 2), ("pdeco", 2)]
    );
}

#[test]
fn components_are_solved_separately() {
    let g = parse_edge_list(TRIANGLE_AND_SQUARE).unwrap();
    let cfg = SolverConfig {
        batch_size: 16,
        ..SolverConfig::default()
    };
    let report = solve_per_component(&g, &cfg, 1).unwrap();
    assert_eq!(
        report.best.cut_value,
        brute_force_maxcut(&g).unwrap().optimum
    );
    assert_eq!(report.best.assignment[7], 0);
    let record = RunRecord::new("parts", &g, &cfg, "manual", 1, &report);
    assert!(record.verify(&g).unwrap());
    let components: Vec<usize> = record.phase_trace.iter().map(|p| p.component).collect();
    assert!(components.contains(&0) && components.contains(&1));
}
