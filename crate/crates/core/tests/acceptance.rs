//! The twelve acceptance criteria, each run in isolation with its own time
//! limit. Prints one PASS/FAIL line per criterion and fails if any failed.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cpg::certify::{check_4regular_7_lemma, clique_number, degree_certificate, has_k33_minor, k7_check, maxplanar_deg3_bound};
use cpg::coloring::{color_b0, color_cpg, is_k_colorable};
use cpg::reduction::verify_gadget_claims;
use cpg::{
    catalog, classify_point, contact_graph, is_claw_free, line_graph, recognize_b0, recognize_bk, rectilinear_from_rep, reduce_3col,
    rep_from_rectilinear, weight_audit, GridPoint, PointTag, SearchOutcome, SimpleGraph, Witness,
};

const RANDOM_REPS: u64 = 500;

enum Verdict {
    Pass(String),
    Fail(String),
}

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(limit: Duration, check: Check) -> Verdict {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check));
    let elapsed = start.elapsed();
    match result {
        Ok(Ok(_)) if elapsed > limit => Verdict::Fail(format!("took {elapsed:.2?}, limit {limit:.0?}")),
        Ok(Ok(note)) => Verdict::Pass(format!("{note} ({elapsed:.2?})")),
        Ok(Err(msg)) => Verdict::Fail(msg),
        Err(_) => Verdict::Fail("panicked".into()),
    }
}

fn fig3_pipeline() -> Result<String, String> {
    let rep = catalog::fig3_rep();
    ensure(rep.validate().ok, "fig3 rep invalid")?;
    ensure(rep.max_bends() == 0, "fig3 rep bends")?;
    let g = contact_graph(&rep);
    ensure(g == catalog::fig3_graph() && g.edge_count() == 11, "fig3 extraction")?;
    let audit = weight_audit(&rep);
    ensure(audit.sum_doubled.halves() == 22 && audit.edge_count == 11 && audit.equality, "fig3 weight audit")?;
    ensure(has_k33_minor(&g).map_err(|e| e.to_string())?.is_some(), "fig3 has no K3,3 minor")?;
    Ok("sum w = 11 = |E|, K3,3 minor found".into())
}

fn fig7_pipeline() -> Result<String, String> {
    let rep = catalog::fig7_rep();
    ensure(rep.validate().ok, "fig7 rep invalid")?;
    ensure(rep.max_bends() == 2, "fig7 rep bends")?;
    let g = contact_graph(&rep);
    ensure(g == SimpleGraph::complete(6), "fig7 extraction is not K6")?;
    let cert = k7_check(&g).map_err(|e| e.to_string())?;
    ensure(cert.passed() && clique_number(&g).unwrap() == 6, "k7 check")?;
    Ok("K6 with 2 bends, clique number 6".into())
}

fn gadgets() -> Result<String, String> {
    let cert = verify_gadget_claims();
    ensure(cert.passed(), format!("{:?}", cert.witness))?;
    let Witness::Gadget { h_colorings, h_prime_colorings, .. } = cert.witness else { return Err("witness".into()) };
    Ok(format!("{h_colorings} colorings of H, {h_prime_colorings} of H'"))
}

fn reduction() -> Result<String, String> {
    let mut sizes = Vec::new();
    for (emb, expect) in [(catalog::orth_c5(), true), (catalog::orth_k4(), false)] {
        let out = reduce_3col(&emb).map_err(|e| e.to_string())?;
        ensure(out.rep.validate().ok && out.rep.max_bends() == 0, "reduced rep invalid")?;
        ensure(contact_graph(&out.rep) == out.gprime, "extraction differs from G'")?;
        let g = is_k_colorable(&out.graph, 3).map_err(|e| e.to_string())?.is_some();
        let gp = is_k_colorable(&out.gprime, 3).map_err(|e| e.to_string())?.is_some();
        ensure(g == expect && gp == expect, format!("colorability G {g}, G' {gp}"))?;
        sizes.push(out.gprime.vertex_count());
    }
    Ok(format!("G' sizes {sizes:?}"))
}

fn colorings() -> Result<String, String> {
    for seed in 0..RANDOM_REPS {
        let rep = common::random_rep(&mut common::rng(seed), 2 + (seed % 9) as usize, 7, 0);
        let c = color_b0(&rep).map_err(|e| e.to_string())?;
        ensure(common::proper(&contact_graph(&rep), &c.colors) && c.colors.values().all(|&x| x < 4), format!("b0 seed {seed}"))?;
    }
    for seed in 0..RANDOM_REPS {
        let rep = common::random_rep(&mut common::rng(seed), 2 + (seed % 9) as usize, 7, 3);
        let g = contact_graph(&rep);
        let c = color_cpg(&g).map_err(|e| e.to_string())?;
        ensure(common::proper(&g, &c.colors) && c.colors.values().all(|&x| x < 6), format!("cpg seed {seed}"))?;
    }
    ensure(is_k_colorable(&SimpleGraph::complete(4), 3).unwrap().is_none(), "K4 3-colorable")?;
    Ok(format!("{RANDOM_REPS} + {RANDOM_REPS} reps"))
}

fn observations() -> Result<String, String> {
    for seed in 0..RANDOM_REPS {
        let rep = common::random_rep(&mut common::rng(seed), 2 + (seed % 9) as usize, 7, (seed % 4) as usize);
        let audit = weight_audit(&rep);
        ensure(audit.weights_doubled.values().all(|w| w.w1.halves() <= 3 && w.w2.halves() <= 3), format!("weight range, seed {seed}"))?;
        ensure(2 * audit.edge_count as u32 <= audit.sum_doubled.halves(), format!("|E| > sum, seed {seed}"))?;
        let double = common::oracle_touches(&rep).iter().any(|t| t.2 >= 2);
        ensure(audit.equality == !double, format!("equality flag, seed {seed}"))?;
    }
    Ok(format!("{RANDOM_REPS} reps"))
}

fn structural() -> Result<String, String> {
    let mut graphs: Vec<SimpleGraph> = (0..RANDOM_REPS)
        .map(|seed| contact_graph(&common::random_rep(&mut common::rng(seed), 2 + (seed % 9) as usize, 7, (seed % 4) as usize)))
        .collect();
    graphs.extend(catalog::fixtures().iter().filter_map(|e| e.rep.as_ref().map(contact_graph)));
    for g in &graphs {
        ensure(degree_certificate(g).passed(), "degree certificate")?;
        ensure(k7_check(g).map_err(|e| e.to_string())?.passed(), "k7 check")?;
    }
    for seed in 0..RANDOM_REPS {
        let g = contact_graph(&common::random_rep(&mut common::rng(seed), 2 + (seed % 9) as usize, 7, 1));
        ensure(g.vertex_count() == 0 || g.degrees().values().any(|&d| d <= 5), format!("1-bend seed {seed}"))?;
    }
    Ok(format!("{} extractions", graphs.len()))
}

fn separation() -> Result<String, String> {
    let a = maxplanar_deg3_bound(&catalog::fig6a_graph(), None, true).map_err(|e| e.to_string())?;
    ensure(!a.passed(), "fig6a passes")?;
    let Witness::LowDegreeCount { count, bound, .. } = a.witness else { return Err("witness".into()) };
    ensure(count == 13 && bound == 12, format!("fig6a count {count}, bound {bound}"))?;
    ensure(maxplanar_deg3_bound(&catalog::fig5_graph(), None, true).map_err(|e| e.to_string())?.passed(), "fig5 fails")?;
    let rep = catalog::fig5_rep();
    ensure(rep.validate().ok && contact_graph(&rep) == catalog::fig5_graph(), "fig5 rep")?;
    Ok(format!("fig6a {count} > {bound}, fig5 passes"))
}

fn four_regular_lemma() -> Result<String, String> {
    let cert = check_4regular_7_lemma();
    ensure(cert.passed(), "some class lacks the minor")?;
    let Witness::Enumeration { labeled_graphs, classes, .. } = cert.witness else { return Err("witness".into()) };
    Ok(format!("{labeled_graphs} labeled graphs, {classes} classes"))
}

fn bridge() -> Result<String, String> {
    let mut drawings = 0;
    for seed in 0..150 {
        let d = common::random_drawing(&mut common::rng(seed), 2 + (seed % 8) as usize, 6);
        let rep = rep_from_rectilinear(&d).map_err(|e| e.to_string())?;
        ensure(contact_graph(&rep) == line_graph(&d.graph().map_err(|e| e.to_string())?), format!("drawing seed {seed}"))?;
        drawings += 1;
    }
    let mut reps = vec![catalog::k4_cross()];
    reps.extend(catalog::fixtures().into_iter().filter_map(|e| e.rep).filter(|r| r.max_bends() == 0 && is_claw_free(&contact_graph(r))));
    for rep in &reps {
        let d = rectilinear_from_rep(rep).map_err(|e| e.to_string())?;
        ensure(d.labeled_line_graph() == contact_graph(rep), "recovered drawing")?;
    }
    Ok(format!("{drawings} drawings, {} reps", reps.len()))
}

fn recognition() -> Result<String, String> {
    for g in [SimpleGraph::complete(4), SimpleGraph::cycle(4)] {
        let r = recognize_b0(&g, 10_000_000).map_err(|e| e.to_string())?;
        ensure(r.found().is_some(), "K4 or C4 not found")?;
    }
    let k33 = recognize_b0(&SimpleGraph::complete_bipartite(3, 3), 1_000_000_000).map_err(|e| e.to_string())?;
    ensure(k33.is_unsat() && k33.exhaustive, "K3,3 not refuted")?;
    let k5 = recognize_bk(&SimpleGraph::complete(5), 1, 200_000_000).map_err(|e| e.to_string())?;
    ensure(!matches!(k5.outcome, SearchOutcome::UnsatWithinBounds { .. }), "K5 unsat at k = 1")?;
    let k6 = recognize_bk(&SimpleGraph::complete(6), 2, 400_000_000).map_err(|e| e.to_string())?;
    ensure(!matches!(k6.outcome, SearchOutcome::UnsatWithinBounds { .. }), "K6 unsat at k = 2")?;
    let status = |r: &cpg::SearchReport| if r.found().is_some() { "found" } else { "skipped (budget)" };
    Ok(format!("K3,3 unsat in {} nodes; K5: {}; K6: {}", k33.stats.nodes, status(&k5), status(&k6)))
}

fn six_regular() -> Result<String, String> {
    let emb = catalog::orth_octahedron();
    let rep = catalog::six_regular_family(&emb).map_err(|e| e.to_string())?;
    ensure(rep.validate().ok, "rep invalid")?;
    // Vertex points are where four paths end.
    let type_i = rep
        .paths
        .iter()
        .flat_map(|p| [p.corners[0], *p.corners.last().unwrap()])
        .collect::<std::collections::BTreeSet<GridPoint>>()
        .into_iter()
        .filter(|&p| classify_point(&rep, p).tag == PointTag::TypeI)
        .count();
    ensure(type_i == emb.vertices.len(), format!("{type_i} type I points"))?;
    let g = contact_graph(&rep);
    ensure(g == line_graph(&catalog::octahedron()) && g.is_regular(6), "extraction")?;
    Ok(format!("{} vertices, all of degree 6", g.vertex_count()))
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria: [(&str, Duration, Check); 12] = [
        ("fig3 pipeline", secs(1), fig3_pipeline),
        ("fig7 pipeline", secs(1), fig7_pipeline),
        ("gadget claims", secs(30), gadgets),
        ("reduction end to end", secs(240), reduction),
        ("coloring properties", secs(120), colorings),
        ("weight observations", secs(120), observations),
        ("structural certificates", secs(120), structural),
        ("degree-3 separation", secs(5), separation),
        ("4-regular 7-vertex lemma", secs(60), four_regular_lemma),
        ("line graph bridge", secs(60), bridge),
        ("recognition search", secs(300), recognition),
        ("six-regular family", secs(1), six_regular),
    ];
    // Written straight to stderr so the summary shows without `--nocapture`.
    let mut err = std::io::stderr();
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        match run(limit, check) {
            Verdict::Pass(note) => writeln!(err, "criterion {:>2} {name}: PASS {note}", i + 1).unwrap(),
            Verdict::Fail(msg) => {
                writeln!(err, "criterion {:>2} {name}: FAIL {msg}", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
