//! Reusable property suites: each one runs a batch of checks against
//! fixtures or seeded random instances and reports counts. The command-line
//! driver and the acceptance tests both call these.

use crate::curves::{
    cut_width_inequality_check, shortest_radial_cycle, three_path_check, Width, WidthClass,
};
use crate::dyclass::{enumerate_class, seed_gate, verify_projective_theorem};
use crate::embed::EmbeddedGraph;
use crate::fixtures;
use crate::linkage::{homologous_cycle_linkage_check, max_disjoint_paths, randomized_theorem_sweep, SweepReport};
use crate::radial::radial_graph;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Projective-plane pipeline: gate the seed, enumerate its class, count the
/// triangle-free members and certify a K6 minor in every member.
#[derive(Clone, Debug)]
pub struct PpReport {
    pub class_size: usize,
    pub triangle_free: usize,
    pub certified: usize,
    pub direct: usize,
    pub propagated: usize,
}

pub fn pp_suite(budget: u64) -> Result<PpReport> {
    let seed = fixtures::projective_grid_4();
    seed_gate(&seed)?;
    let class = enumerate_class(&seed.to_simple_graph(), 2000)?;
    let tf = class.triangle_free_members();
    let report = verify_projective_theorem(&class, budget)?;
    Ok(PpReport {
        class_size: class.len(),
        triangle_free: tf.len(),
        certified: report.certified.len(),
        direct: report.direct.len(),
        propagated: report.propagated.len(),
    })
}

/// Width-halving under surgery: cut random embedded fixtures along their
/// minimal non-separating chains and verify both width inequalities.
#[derive(Clone, Debug, Default)]
pub struct CutWidthReport {
    pub fixtures_checked: usize,
    pub violations: usize,
}

pub fn cutwidth_suite(fixtures_wanted: usize, seed: u64) -> Result<CutWidthReport> {
    let mut report = CutWidthReport::default();
    let mut stream = 0u64;
    while report.fixtures_checked < fixtures_wanted {
        let n = 7 + (stream % 4) as usize;
        let extra = 4 + (stream % 5) as usize;
        let g = fixtures::random_embedded(n, extra, seed.wrapping_add(stream));
        stream += 1;
        if stream > 40 * fixtures_wanted as u64 {
            return Err(Error::Precondition("fixture stream exhausted".into()));
        }
        let r = radial_graph(&g);
        let cert = match shortest_radial_cycle(&r, WidthClass::NonSeparating) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let Some(witness) = cert.witness else { continue };
        if !matches!(cert.value, Width::Finite(v) if v >= 1) {
            continue;
        }
        match cut_width_inequality_check(&g, &r, &witness.radial) {
            Ok(rep) => {
                report.fixtures_checked += 1;
                if !rep.pass {
                    report.violations += 1;
                }
            }
            Err(Error::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// 3-path parity: sample theta subgraphs from torus and projective fixtures
/// and check that neither the contractible nor the separating count among
/// the three cycles is ever exactly two.
#[derive(Clone, Debug, Default)]
pub struct ThreePathReport {
    pub thetas_checked: usize,
    pub violations: usize,
}

pub fn threepath_suite(thetas_wanted: usize, seed: u64) -> Result<ThreePathReport> {
    let fixtures: Vec<EmbeddedGraph> = vec![
        fixtures::toroidal_grid(4, 4),
        fixtures::toroidal_grid(4, 5),
        fixtures::toroidal_grid(5, 5),
        fixtures::projective_quad_grid(3),
        fixtures::projective_quad_grid(4),
        fixtures::k6_projective(),
        fixtures::klein_grid(4, 4),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ThreePathReport::default();
    let mut guard = 0usize;
    while report.thetas_checked < thetas_wanted {
        guard += 1;
        if guard > 100 * thetas_wanted {
            return Err(Error::Precondition("theta sampling exhausted".into()));
        }
        let g = &fixtures[rng.gen_range(0..fixtures.len())];
        let n = g.vertex_count();
        let x = rng.gen_range(0..n);
        let y = rng.gen_range(0..n);
        if x == y {
            continue;
        }
        let Some(paths) = sample_disjoint_paths(g, x, y, 3, &mut rng) else { continue };
        let rep = three_path_check(g, &paths[0], &paths[1], &paths[2])?;
        report.thetas_checked += 1;
        if !rep.pass {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Up to `count` internally disjoint (x,y)-paths by randomized search.
fn sample_disjoint_paths(
    g: &EmbeddedGraph,
    x: usize,
    y: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut blocked = vec![false; n];
    let mut paths = Vec::new();
    for _ in 0..count {
        // randomized BFS from x to y avoiding blocked interiors
        let mut parent = vec![usize::MAX; n];
        parent[x] = x;
        let mut queue = std::collections::VecDeque::from([x]);
        let mut found = false;
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<usize> = g.rotation(v).iter().map(|&d| g.head(d)).collect();
            // random tie-breaking diversifies the sampled thetas
            for i in (1..nbrs.len()).rev() {
                let j = rng.gen_range(0..=i);
                nbrs.swap(i, j);
            }
            for w in nbrs {
                if w == y {
                    parent[y] = v;
                    found = true;
                    queue.clear();
                    break;
                }
                if !blocked[w] && parent[w] == usize::MAX && w != x {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
            if found {
                break;
            }
        }
        if !found {
            return None;
        }
        let mut path = vec![y];
        let mut v = y;
        while v != x {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        for &v in &path[1..path.len() - 1] {
            blocked[v] = true;
        }
        paths.push(path);
    }
    Some(paths)
}

/// Menger duality on random instances plus the homologous-cycle linkage
/// bound on toroidal grids.
#[derive(Clone, Debug, Default)]
pub struct MengerReport {
    pub instances: usize,
    pub duality_violations: usize,
    pub separator_misses: usize,
    pub torus_checks: usize,
    pub torus_violations: usize,
}

pub fn menger_suite(instances: usize, seed: u64) -> Result<MengerReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MengerReport { instances, ..Default::default() };
    for _ in 0..instances {
        let n = 8 + rng.gen_range(0..10);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.25) {
                    edges.push((u, v));
                }
            }
        }
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let t: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        if s.is_empty() || t.is_empty() {
            continue;
        }
        let linkage = max_disjoint_paths(n, &edges, &s, &t);
        if linkage.paths.len() != linkage.separator.len() {
            report.duality_violations += 1;
        }
        // sample random S-T walks and confirm the separator hits them
        let adj: Vec<Vec<usize>> = {
            let mut a = vec![Vec::new(); n];
            for &(u, v) in &edges {
                a[u].push(v);
                a[v].push(u);
            }
            a
        };
        let sep: std::collections::HashSet<usize> =
            linkage.separator.iter().copied().collect();
        for _ in 0..5 {
            let mut v = s[rng.gen_range(0..s.len())];
            let mut path = vec![v];
            for _ in 0..100 {
                if t.contains(&v) {
                    break;
                }
                if adj[v].is_empty() {
                    break;
                }
                v = adj[v][rng.gen_range(0..adj[v].len())];
                if let Some(i) = path.iter().position(|&u| u == v) {
                    path.truncate(i);
                }
                path.push(v);
            }
            if t.contains(&v) && !path.iter().any(|u| sep.contains(u)) {
                report.separator_misses += 1;
            }
        }
    }
    for n in [5usize, 6, 7] {
        let g = fixtures::toroidal_grid(n, n);
        let row = |r: usize| -> Vec<usize> {
            (0..n).map(|c| fixtures::toroidal_grid_vertex(n, r, c)).collect()
        };
        let rep = homologous_cycle_linkage_check(&g, &row(0), &row(2))?;
        report.torus_checks += 1;
        if !rep.pass {
            report.torus_violations += 1;
        }
    }
    Ok(report)
}

/// Theorem sweep over random cylinder instances.
pub fn cylinder_suite(trials: usize, seed: u64, budget: u64) -> Result<SweepReport> {
    randomized_theorem_sweep(trials, 7..=9, seed, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutwidth_suite_small() {
        let report = cutwidth_suite(8, 11).unwrap();
        assert_eq!(report.fixtures_checked, 8);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn threepath_suite_small() {
        let report = threepath_suite(60, 5).unwrap();
        assert_eq!(report.thetas_checked, 60);
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn menger_suite_small() {
        let report = menger_suite(20, 9).unwrap();
        assert_eq!(report.duality_violations, 0);
        assert_eq!(report.separator_misses, 0);
        assert_eq!(report.torus_violations, 0);
    }
}
