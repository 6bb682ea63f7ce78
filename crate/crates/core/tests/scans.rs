use mbcolour::families;
use mbcolour::search::{enumerate_graphs, evaluate, scan, Hit, Predicate, ScanOptions, ScanReport, Witness};
use mbcolour::solver::SolverConfig;
use mbcolour::{Graph, Variant};
use std::time::Duration;

fn stream() -> Vec<Graph> {
    vec![families::complete(4), families::fig3_graph(), families::cycle(5), families::fig4_graph().0, families::star(5)]
}

#[test]
fn fig3_flagged_with_gap() {
    let report = scan(&stream(), &Predicate::ChiGLessThanChiCg { k_max: None }, &ScanOptions::default()).unwrap();
    assert_eq!(report.hits.len(), 1);
    assert_eq!(report.hits[0].graph6, families::fig3_graph().to_graph6());
    assert_eq!(report.hits[0].witness, Witness::ChiGap { chi_g: 4, chi_cg: 5 });
}

#[test]
fn fig4_flagged_with_dashed_edge() {
    let (fig4, dashed) = families::fig4_graph();
    let report = scan(&stream(), &"col-cg-edge".parse().unwrap(), &ScanOptions::default()).unwrap();
    let hit = report.hits.iter().find(|h| h.graph6 == fig4.to_graph6()).unwrap();
    let Witness::EdgeDeletion { col_cg, edges } = &hit.witness else { panic!("wrong witness {}", hit.witness) };
    assert_eq!(*col_cg, 3);
    assert!(edges.contains(&(dashed, 4)));
}

#[test]
fn hits_reproduce_from_graph6() {
    let report = scan(&stream(), &"col-cg-edge".parse().unwrap(), &ScanOptions::default()).unwrap();
    for hit in &report.hits {
        let g = Graph::from_graph6(&hit.graph6).unwrap();
        assert_eq!(evaluate(&g, &hit.predicate, &SolverConfig::default()).unwrap().as_ref(), Some(hit));
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let graphs = enumerate_graphs(5, true).unwrap();
    let pred: Predicate = "threshold:chi_g=3".parse().unwrap();
    let one = scan(&graphs, &pred, &ScanOptions { jobs: Some(1), ..Default::default() }).unwrap();
    let three = scan(&graphs, &pred, &ScanOptions { jobs: Some(3), ..Default::default() }).unwrap();
    assert_eq!(one, three);
    assert!(!one.hits.is_empty());
}

#[test]
fn exhausted_budget_is_reported_as_skipped() {
    let graphs = vec![families::complete(6), families::path(3)];
    let pred = Predicate::NonMonotoneProfile { variant: Variant::Arboricity, k_min: 3, k_max: Some(3) };
    let options = ScanOptions { jobs: Some(1), budget: Some(Duration::from_millis(1)), max_entries: None };
    let report = scan(&graphs, &pred, &options).unwrap();
    assert_eq!(report.skipped.len(), 1);
    assert_eq!(report.skipped[0].index, 0);
    assert_eq!(report.evaluated, 2);
}

#[test]
fn reports_round_trip_through_json() {
    let report = scan(&stream(), &Predicate::ChiGLessThanChiCg { k_max: None }, &ScanOptions::default()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: ScanReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    let hit: Hit = serde_json::from_str(&serde_json::to_string(&report.hits[0]).unwrap()).unwrap();
    assert_eq!(hit, report.hits[0]);
}

#[test]
fn trees_have_no_arboricity_drops() {
    let trees: Vec<Graph> = (1..=6)
        .flat_map(|n| enumerate_graphs(n, true).unwrap())
        .filter(|g| g.m() + 1 == g.n())
        .collect();
    let report = scan(&trees, &"non-monotone:arboricity".parse().unwrap(), &ScanOptions::default()).unwrap();
    assert!(report.hits.is_empty());
}
