//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; every tolerance is exact and pinned here.

use std::sync::OnceLock;
use std::time::Instant;
use surfgraph::canon::canonical_form;
use surfgraph::curves::{
    exhaustive_width_oracle, face_width, nonseparating_face_width, Width, WidthClass,
};
use surfgraph::dyclass::{enumerate_class, seed_gate, verify_projective_theorem, DeltaWyeClass};
use surfgraph::fixtures;
use surfgraph::graph::SimpleGraph;
use surfgraph::minors::{brute_force_minor_oracle, has_minor, verify_minor_model, DEFAULT_BUDGET};
use surfgraph::radial::radial_graph;
use surfgraph::suites;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn class() -> &'static DeltaWyeClass {
    static CLASS: OnceLock<DeltaWyeClass> = OnceLock::new();
    CLASS.get_or_init(|| {
        let seed = fixtures::projective_grid_4();
        seed_gate(&seed).expect("seed must pass the validation gate");
        enumerate_class(&seed.to_simple_graph(), 2000).expect("class enumeration")
    })
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!("criterion {criterion}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_class_reproduction() {
    let t = Instant::now();
    let size = class().len();
    report(
        "1 (ΔY-class size)",
        size == 270,
        &format!("{size} members in {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_02_triangle_free_count() {
    let tf = class().triangle_free_members();
    report("2 (triangle-free members)", tf.len() == 8, &format!("{} members", tf.len()));
}

#[test]
fn criterion_03_k6_certificates_for_all_members() {
    let t = Instant::now();
    let c = class();
    let rep = verify_projective_theorem(c, DEFAULT_BUDGET).expect("certification");
    let k6 = SimpleGraph::complete(6);
    let all_verified = rep
        .certified
        .iter()
        .enumerate()
        .all(|(i, m)| verify_minor_model(&c.members[i].graph, &k6, m).is_ok());
    report(
        "3 (270/270 certified)",
        rep.certified.len() == 270 && all_verified,
        &format!(
            "{} direct, {} propagated in {:?}",
            rep.direct.len(),
            rep.propagated.len(),
            t.elapsed()
        ),
    );
}

#[test]
fn criterion_04_width_correctness() {
    let seed = fixtures::projective_grid_4();
    let fw = face_width(&seed).unwrap().value;
    let nsfw = nonseparating_face_width(&seed).unwrap().value;
    let mut ok = fw == Width::Finite(4) && nsfw == Width::Finite(4);
    let mut detail = format!("seed fw={fw:?} nsfw={nsfw:?}");
    for n in 4..=7usize {
        let g = fixtures::toroidal_grid(n, n);
        let fw_n = face_width(&g).unwrap().value;
        let nsfw_n = nonseparating_face_width(&g).unwrap().value;
        ok &= fw_n == Width::Finite(n) && nsfw_n == Width::Finite(n);
        detail.push_str(&format!("; {n}x{n} fw={fw_n:?} nsfw={nsfw_n:?}"));
        if n <= 5 {
            let r = radial_graph(&g);
            let ofw = exhaustive_width_oracle(&r, WidthClass::NonContractible, 2 * n).unwrap();
            let onsfw = exhaustive_width_oracle(&r, WidthClass::NonSeparating, 2 * n).unwrap();
            ok &= ofw == fw_n && onsfw == nsfw_n;
        }
    }
    report("4 (width correctness)", ok, &detail);
}

#[test]
fn criterion_05_cut_width_inequalities() {
    let rep = suites::cutwidth_suite(50, 0xC0FFEE).expect("cutwidth suite");
    report(
        "5 (width halving under surgery)",
        rep.fixtures_checked == 50 && rep.violations == 0,
        &format!("{} fixtures, {} violations", rep.fixtures_checked, rep.violations),
    );
}

#[test]
fn criterion_06_three_path_parity() {
    let rep = suites::threepath_suite(1000, 0x3A7).expect("threepath suite");
    report(
        "6 (3-path parity)",
        rep.thetas_checked >= 1000 && rep.violations == 0,
        &format!("{} thetas, {} violations", rep.thetas_checked, rep.violations),
    );
}

#[test]
fn criterion_07_menger_suites() {
    let rep = suites::menger_suite(100, 0x4E).expect("menger suite");
    let ok = rep.duality_violations == 0
        && rep.separator_misses == 0
        && rep.torus_checks == 3
        && rep.torus_violations == 0;
    report(
        "7 (Menger duality and homologous linkage)",
        ok,
        &format!(
            "{} instances, {} duality violations, {} separator misses, {} torus violations",
            rep.instances, rep.duality_violations, rep.separator_misses, rep.torus_violations
        ),
    );
}

#[test]
fn criterion_08_cylinder_sweep() {
    let t = Instant::now();
    let rep = suites::cylinder_suite(200, 20260809, DEFAULT_BUDGET).expect("cylinder sweep");
    report(
        "8 (cylinder-grid sweep)",
        rep.verified == 200,
        &format!(
            "{}/{} verified across {} branches in {:?}",
            rep.verified,
            rep.trials,
            rep.case_coverage.len(),
            t.elapsed()
        ),
    );
}

#[test]
fn criterion_09_torus_spot_check() {
    let t = Instant::now();
    let g = fixtures::toroidal_grid(7, 7);
    let nsfw = nonseparating_face_width(&g).unwrap().value;
    let gs = g.to_simple_graph();
    let k6 = SimpleGraph::complete(6);
    let out = has_minor(&gs, &k6, DEFAULT_BUDGET);
    let ok = nsfw == Width::Finite(7)
        && out.model().is_some_and(|m| verify_minor_model(&gs, &k6, m).is_ok());
    report(
        "9 (7x7 torus grid K6 spot-check)",
        ok,
        &format!("nsfw={nsfw:?}, model in {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_10_oracle_equivalence() {
    let t = Instant::now();
    // exhaustive corpus: every graph on at most 8 vertices up to isomorphism
    let k4 = SimpleGraph::complete(4);
    let mut layer: Vec<SimpleGraph> = vec![SimpleGraph::new(1)];
    let mut checked = 0usize;
    let mut agree = true;
    for _n in 2..=8usize {
        let mut next: Vec<SimpleGraph> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in &layer {
            let nv = g.vertex_count();
            for subset in 0u64..(1 << nv) {
                let mut h = SimpleGraph::new(nv + 1);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for b in 0..nv {
                    if subset >> b & 1 == 1 {
                        h.add_edge(b, nv);
                    }
                }
                let form = canonical_form(&h).unwrap();
                if seen.insert(form) {
                    next.push(h);
                }
            }
        }
        for g in &next {
            let oracle = brute_force_minor_oracle(g, &k4).unwrap().is_some();
            let search = !has_minor(g, &k4, DEFAULT_BUDGET).is_absent();
            agree &= oracle == search;
            checked += 1;
        }
        layer = next;
    }
    let exhaustive_checked = checked;
    // random corpus at up to 10 vertices against K5 and K6
    let mut rng = ChaCha8Rng::seed_from_u64(0xAB5);
    let k5 = SimpleGraph::complete(5);
    let k6 = SimpleGraph::complete(6);
    for _ in 0..500 {
        let n = 6 + rng.gen_range(0..5);
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v);
                }
            }
        }
        for h in [&k5, &k6] {
            let oracle = brute_force_minor_oracle(&g, h).unwrap().is_some();
            let search = !has_minor(&g, h, DEFAULT_BUDGET).is_absent();
            agree &= oracle == search;
            checked += 1;
        }
    }
    report(
        "10 (oracle equivalence)",
        agree,
        &format!(
            "{exhaustive_checked} exhaustive + {} random checks in {:?}",
            checked - exhaustive_checked,
            t.elapsed()
        ),
    );
}
