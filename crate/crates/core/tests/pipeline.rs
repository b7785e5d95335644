use std::io::Cursor;

use ncsep::export::{as_product, read_edge_list, read_graph_json};
use ncsep::separators::Violation;
use ncsep::{
    best_coordinate_cut, build_ncc_graph, cartesian_product_with_cube, certify_lower_bound, export_graph,
    lift_to_product, stacked_triangulation, verify_separator, Format, Graph, GraphDocument, Separator,
};

#[test]
fn metis_header_for_m4() {
    let h = stacked_triangulation(4, 0).unwrap();
    let g = as_product(&build_ncc_graph(4, &h).unwrap());
    let mut out = Vec::new();
    export_graph(&g, Format::Metis, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().next(), Some("192 384"));
    assert_eq!(text.lines().count(), 193);
}

#[test]
fn edge_list_and_json_round_trip() {
    let h = stacked_triangulation(5, 42).unwrap();
    let g = build_ncc_graph(5, &h).unwrap().with_seed(Some(42));
    let p = cartesian_product_with_cube(&g, 1).unwrap();

    let mut out = Vec::new();
    export_graph(&p, Format::EdgeList, &mut out).unwrap();
    let edges = read_edge_list(Cursor::new(out)).unwrap();
    assert_eq!(edges, p.edges().collect::<Vec<_>>());

    let mut out = Vec::new();
    export_graph(&p, Format::Json, &mut out).unwrap();
    let doc = read_graph_json(Cursor::new(out.clone())).unwrap();
    assert_eq!(doc, GraphDocument::from_graph(&p));
    let rebuilt = doc.rebuild().unwrap();
    assert_eq!(rebuilt.vertex_count(), 1152);
    assert_eq!(rebuilt.regular_degree(), Some(5));

    let mut again = Vec::new();
    export_graph(&rebuilt, Format::Json, &mut again).unwrap();
    assert_eq!(out, again);
}

#[test]
fn separator_json_survives_and_verifies() {
    let h = stacked_triangulation(6, 5).unwrap();
    let g = build_ncc_graph(6, &h).unwrap();
    let p = cartesian_product_with_cube(&g, 2).unwrap();
    let sep = lift_to_product(&p, &best_coordinate_cut(&g));
    let json = serde_json::to_string(&sep).unwrap();
    let back: Separator = serde_json::from_str(&json).unwrap();
    assert_eq!(back, sep);
    assert!(verify_separator(&p, &back).is_valid());
    let cert = certify_lower_bound(&p, &back, None).unwrap();
    assert!(cert.certified_bound <= back.size() as u64);
}

#[test]
fn tampered_separator_lists_violations() {
    let h = stacked_triangulation(4, 0).unwrap();
    let g = build_ncc_graph(4, &h).unwrap();
    let mut sep = best_coordinate_cut(&g);
    let moved = sep.c.pop().unwrap();
    sep.b.push(moved);
    sep.b.sort_unstable();
    let dup = sep.a[0];
    sep.b.push(dup);
    let report = verify_separator(&g, &sep);
    assert!(!report.is_valid());
    assert!(report.violations.iter().any(|v| matches!(v, Violation::Duplicate { .. })));
}
