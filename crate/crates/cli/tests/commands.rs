use std::path::PathBuf;
use std::process::{Command, Output};

use cpg::{catalog, contact_graph, CpgRepresentation, GridPath, GridPoint};
use serde_json::Value;

fn cpg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Writes `contents` to a file in the test scratch directory.
fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn fixture_file(name: &str, part: &str) -> String {
    let out = cpg(&["catalog", "emit", name, "--part", part]);
    assert_eq!(code(&out), 0);
    scratch(&format!("{name}.{part}.json"), std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn extract_and_audit_fig3() {
    let rep = fixture_file("fig3_nonplanar_b0", "rep");
    let g = cpg(&["extract", &rep]);
    assert_eq!(code(&g), 0);
    let graph: cpg::SimpleGraph = serde_json::from_value(json(&g)).unwrap();
    assert_eq!(graph, catalog::fig3_graph());
    let audit = json(&cpg(&["audit", &rep]));
    assert_eq!(audit["sum_doubled"], 22);
    assert_eq!(audit["edge_count"], 11);
    assert_eq!(audit["equality"], true);
}

#[test]
fn exit_codes() {
    let fig3 = fixture_file("fig3_nonplanar_b0", "entry");
    let fig6a = fixture_file("fig6a_not_cpg", "graph");
    assert_eq!(code(&cpg(&["certify", "k33", &fig3])), 0);
    assert_eq!(code(&cpg(&["certify", "deg3-bound", &fig6a, "--maximally-planar"])), 1);
    assert_eq!(code(&cpg(&["certify", "gadgets"])), 0);
    assert_eq!(code(&cpg(&["validate", &scratch("broken.json", "{\"rows\": 1")])), 2);
    assert_eq!(code(&cpg(&["extract", "/nonexistent/rep.json"])), 2);
    assert_eq!(code(&cpg(&["catalog", "emit", "no_such_fixture"])), 2);

    let k4 = scratch("k4.json", &serde_json::to_string(&cpg::SimpleGraph::complete(4)).unwrap());
    assert_eq!(code(&cpg(&["kcolor", &k4, "-k", "3"])), 1);
    assert_eq!(code(&cpg(&["kcolor", &k4, "-k", "4"])), 0);
    assert_eq!(code(&cpg(&["recognize", &k4])), 0);
    let k33 = scratch("k33.json", &serde_json::to_string(&cpg::SimpleGraph::complete_bipartite(3, 3)).unwrap());
    let unsat = cpg(&["recognize", &k33]);
    assert_eq!(code(&unsat), 1);
    assert_eq!(json(&unsat)["status"], "unsat-within-bounds");
    let k5 = scratch("k5.json", &serde_json::to_string(&cpg::SimpleGraph::complete(5)).unwrap());
    let starved = cpg(&["recognize", &k5, "--budget", "10"]);
    assert_eq!(code(&starved), 2);
    assert_eq!(json(&starved)["status"], "budget-exceeded");
}

#[test]
fn invalid_rep_fails_validation() {
    let crossing = CpgRepresentation::new(
        3,
        3,
        vec![
            GridPath::new("a", vec![GridPoint::new(1, 0), GridPoint::new(1, 2)]),
            GridPath::new("b", vec![GridPoint::new(0, 1), GridPoint::new(2, 1)]),
        ],
    )
    .unwrap();
    let path = scratch("crossing.json", &serde_json::to_string(&crossing).unwrap());
    let out = cpg(&["validate", &path]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["ok"], false);
    assert_eq!(code(&cpg(&["extract", &path])), 2);
}

#[test]
fn outputs_are_deterministic() {
    let rep = fixture_file("fig7_k6_b2", "rep");
    let emb = fixture_file("orth_c5", "embedding");
    for args in [
        vec!["extract", rep.as_str()],
        vec!["classify", rep.as_str()],
        vec!["color6", rep.as_str()],
        vec!["reduce3col", emb.as_str()],
        vec!["render", rep.as_str()],
        vec!["catalog", "list"],
    ] {
        let a = cpg(&args);
        let b = cpg(&args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn stdin_input() {
    let rep = serde_json::to_string(&catalog::k4_cross()).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_cpg"))
        .args(["color4", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    std::io::Write::write_all(&mut child.stdin.take().unwrap(), rep.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    let colors = json(&out)["colors"].as_object().unwrap().len();
    assert_eq!(colors, 4);
}

/// Rebuilds a representation from the `data-corners` attributes of an SVG.
fn rep_from_svg(svg: &str, rows: u32, cols: u32) -> CpgRepresentation {
    let attr = |line: &str, key: &str| {
        let start = line.find(&format!("{key}=\"")).unwrap() + key.len() + 2;
        line[start..].split('"').next().unwrap().to_string()
    };
    let paths = svg
        .lines()
        .filter(|l| l.contains("class=\"path\""))
        .map(|l| {
            let corners = attr(l, "data-corners")
                .split(' ')
                .map(|p| {
                    let (r, c) = p.split_once(',').unwrap();
                    GridPoint::new(r.parse().unwrap(), c.parse().unwrap())
                })
                .collect();
            GridPath::new(attr(l, "data-vertex"), corners)
        })
        .collect();
    CpgRepresentation::new(rows, cols, paths).unwrap()
}

#[test]
fn render_round_trip() {
    for name in ["fig3_nonplanar_b0", "fig7_k6_b2", "fig5_maxplanar", "gadget_h"] {
        let rep = catalog::fixture(name).unwrap().rep.unwrap();
        let out = cpg(&["render", &fixture_file(name, "rep")]);
        assert_eq!(code(&out), 0);
        let svg = String::from_utf8(out.stdout).unwrap();
        assert!(svg.starts_with("<svg"));
        let back = rep_from_svg(&svg, rep.rows, rep.cols);
        assert_eq!(back.paths.len(), rep.paths.len());
        assert_eq!(contact_graph(&back), contact_graph(&rep), "{name}");
    }
    let svg = String::from_utf8(cpg(&["render", &fixture_file("fig7_k6_b2", "rep")]).stdout).unwrap();
    assert_eq!(svg.matches("class=\"path\"").count(), 6);
    let emb = cpg(&["render", &fixture_file("orth_k4", "embedding")]);
    assert_eq!(code(&emb), 0);
}

#[test]
fn bridge_commands() {
    let rep = fixture_file("fig2_k4_cross", "rep");
    let drawing = cpg(&["rep2rect", &rep]);
    assert_eq!(code(&drawing), 0);
    let d = scratch("cross_drawing.json", std::str::from_utf8(&drawing.stdout).unwrap());
    let back = cpg(&["rect2rep", &d]);
    assert_eq!(code(&back), 0);
    let back: CpgRepresentation = serde_json::from_value(json(&back)).unwrap();
    assert_eq!(contact_graph(&back), contact_graph(&catalog::k4_cross()));
    let octa = fixture_file("octahedron", "graph");
    let l = json(&cpg(&["linegraph", &octa]));
    assert_eq!(l["vertices"].as_array().map(Vec::len), Some(12));
}
