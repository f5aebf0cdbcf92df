//! Vertex-disjoint path linkages via unit-capacity max-flow, and the
//! cylinder-grid construction: three nested cycles joined by spokes, plus
//! two or three chords, always forcing a K6 minor. The builder follows the
//! case analysis over chord positions, restricting minor search to the small
//! union of cycles and selected spokes named by each case.

use crate::curves::{classify_cycle, nonseparating_face_width, Width};
use crate::embed::EmbeddedGraph;
use crate::graph::SimpleGraph;
use crate::minors::{has_minor, verify_minor_model, MinorModel, SearchOutcome};
use crate::surgery::{cut_along_cycle, cycle_from_vertices};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A set of pairwise vertex-disjoint (S,T)-paths together with a vertex
/// separator of equal size.
#[derive(Clone, Debug)]
pub struct Linkage {
    pub paths: Vec<Vec<usize>>,
    pub separator: Vec<usize>,
}

/// Maximum set of vertex-disjoint (S,T)-paths and a matching separator, by
/// unit-vertex-capacity max-flow. Vertices in both S and T count as paths of
/// a single vertex.
pub fn max_disjoint_paths(
    n: usize,
    edges: &[(usize, usize)],
    s: &[usize],
    t: &[usize],
) -> Linkage {
    let s_set: std::collections::BTreeSet<usize> = s.iter().copied().collect();
    let t_set: std::collections::BTreeSet<usize> = t.iter().copied().collect();
    let common: Vec<usize> = s_set.intersection(&t_set).copied().collect();
    // common vertices are zero-length paths; remove them from the flow graph
    let blocked: u128 = common.iter().fold(0u128, |acc, &v| acc | 1 << v);
    assert!(n <= 128, "linkage graphs are desk scale");

    // flow network: node 2v = v_in, 2v+1 = v_out, plus source 2n, sink 2n+1.
    // vertex-split arcs carry capacity 1; all other arcs are effectively
    // unbounded so minimum cuts consist of vertices only
    let nn = 2 * n + 2;
    let source = 2 * n;
    let sink = 2 * n + 1;
    const BIG: i32 = 1 << 20;
    let mut cap: Vec<BTreeMap<usize, i32>> = vec![BTreeMap::new(); nn];
    let mut flow: BTreeMap<(usize, usize), i32> = BTreeMap::new();
    let add = |cap: &mut Vec<BTreeMap<usize, i32>>, a: usize, b: usize, c: i32| {
        *cap[a].entry(b).or_insert(0) += c;
        cap[b].entry(a).or_insert(0);
    };
    for v in 0..n {
        if blocked >> v & 1 == 0 {
            add(&mut cap, 2 * v, 2 * v + 1, 1);
        }
    }
    for &(u, v) in edges {
        if blocked >> u & 1 == 1 || blocked >> v & 1 == 1 {
            continue;
        }
        add(&mut cap, 2 * u + 1, 2 * v, BIG);
        add(&mut cap, 2 * v + 1, 2 * u, BIG);
    }
    for &v in &s_set {
        if blocked >> v & 1 == 0 {
            add(&mut cap, source, 2 * v, BIG);
        }
    }
    for &v in &t_set {
        if blocked >> v & 1 == 0 {
            add(&mut cap, 2 * v + 1, sink, BIG);
        }
    }
    // Edmonds-Karp with unit augmentations
    loop {
        let mut parent = vec![usize::MAX; nn];
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for (&w, &c) in &cap[u] {
                if c > 0 && parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut w = sink;
        while w != source {
            let p = parent[w];
            *cap[p].get_mut(&w).unwrap() -= 1;
            *cap[w].get_mut(&p).unwrap() += 1;
            *flow.entry((p, w)).or_insert(0) += 1;
            let back = flow.entry((w, p)).or_insert(0);
            if *back > 0 {
                *back -= 1;
                *flow.get_mut(&(p, w)).unwrap() -= 1;
            }
            w = p;
        }
    }
    // extract vertex-disjoint paths along positive-flow arcs
    let used = |flow: &BTreeMap<(usize, usize), i32>, a: usize, b: usize| {
        flow.get(&(a, b)).copied().unwrap_or(0) > 0
    };
    let mut paths: Vec<Vec<usize>> = common.iter().map(|&v| vec![v]).collect();
    let starts: Vec<usize> = s_set
        .iter()
        .filter(|&&v| blocked >> v & 1 == 0 && used(&flow, source, 2 * v))
        .copied()
        .collect();
    for start in starts {
        let mut path = vec![start];
        let mut v = start;
        loop {
            if t_set.contains(&v) && used(&flow, 2 * v + 1, sink) {
                *flow.get_mut(&(2 * v + 1, sink)).unwrap() -= 1;
                break;
            }
            let next = cap[2 * v + 1]
                .keys()
                .find(|&&w| w % 2 == 0 && w != 2 * v && w < 2 * n && used(&flow, 2 * v + 1, w))
                .copied()
                .expect("flow conservation")
                / 2;
            *flow.get_mut(&(2 * v + 1, 2 * next)).unwrap() -= 1;
            path.push(next);
            v = next;
        }
        paths.push(path);
    }
    // separator: vertices whose split arc crosses the residual cut
    let mut reach = vec![false; nn];
    reach[source] = true;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for (&w, &c) in &cap[u] {
            if c > 0 && !reach[w] {
                reach[w] = true;
                queue.push_back(w);
            }
        }
    }
    let mut separator = common;
    for v in 0..n {
        if blocked >> v & 1 == 0 && reach[2 * v] && !reach[2 * v + 1] {
            separator.push(v);
        }
    }
    separator.sort_unstable();
    Linkage { paths, separator }
}

/// Distance between x and y on a cycle with respect to a marked vertex set:
/// the smaller number of marked vertices strictly inside the two arcs.
pub fn distance_on_cycle(cycle: &[usize], marked: &[usize], x: usize, y: usize) -> Result<usize> {
    let px = cycle.iter().position(|&v| v == x).ok_or(Error::NotOnCycle(x))?;
    let py = cycle.iter().position(|&v| v == y).ok_or(Error::NotOnCycle(y))?;
    if x == y {
        return Ok(0);
    }
    let n = cycle.len();
    let count = |from: usize, to: usize| {
        let mut c = 0;
        let mut i = (from + 1) % n;
        while i != to {
            if marked.contains(&cycle[i]) {
                c += 1;
            }
            i = (i + 1) % n;
        }
        c
    };
    Ok(count(px, py).min(count(py, px)))
}

/// Check that both sides of a pair of disjoint homologous non-separating
/// cycles carry at least nsfw disjoint paths between the cycles.
#[derive(Clone, Debug)]
pub struct HomologousLinkageReport {
    pub nsfw: usize,
    pub side_counts: (usize, usize),
    pub pass: bool,
}

pub fn homologous_cycle_linkage_check(
    g: &EmbeddedGraph,
    c1: &[usize],
    c2: &[usize],
) -> Result<HomologousLinkageReport> {
    if c1.iter().any(|v| c2.contains(v)) {
        return Err(Error::Precondition("cycles are not disjoint".into()));
    }
    let d1 = cycle_from_vertices(g, c1)?;
    let d2 = cycle_from_vertices(g, c2)?;
    let k1 = classify_cycle(g, &d1)?;
    let k2 = classify_cycle(g, &d2)?;
    if k1.is_separating() || k2.is_separating() {
        return Err(Error::Precondition("cycles must be surface non-separating".into()));
    }
    let nsfw = match nonseparating_face_width(g)?.value {
        Width::Finite(v) => v,
        Width::Unbounded => return Err(Error::Precondition("sphere input".into())),
    };
    // cut along the first cycle: homologous disjoint non-separating cycles
    // leave one piece; the second cut splits it in two
    let cut1 = cut_along_cycle(g, &d1)?;
    if cut1.pieces.len() != 1 {
        return Err(Error::Precondition("first cycle separates".into()));
    }
    let piece = &cut1.pieces[0];
    let c2_in_piece: Vec<usize> = c2
        .iter()
        .map(|&v| piece.orig_vertex.iter().position(|&o| o == v).unwrap())
        .collect();
    let d2p = cycle_from_vertices(&piece.emb, &c2_in_piece)?;
    let cut2 = cut_along_cycle(&piece.emb, &d2p)?;
    if cut2.pieces.len() != 2 {
        return Err(Error::Precondition("cycles are not homologous".into()));
    }
    let mut counts = Vec::new();
    for side in &cut2.pieces {
        // originals: compose the two vertex maps
        let orig: Vec<usize> = side.orig_vertex.iter().map(|&v| piece.orig_vertex[v]).collect();
        let s: Vec<usize> =
            (0..side.emb.vertex_count()).filter(|&v| c1.contains(&orig[v])).collect();
        let t: Vec<usize> =
            (0..side.emb.vertex_count()).filter(|&v| c2.contains(&orig[v])).collect();
        let linkage = max_disjoint_paths(side.emb.vertex_count(), side.emb.edges(), &s, &t);
        counts.push(linkage.paths.len());
    }
    let pass = counts[0] >= nsfw && counts[1] >= nsfw;
    Ok(HomologousLinkageReport { nsfw, side_counts: (counts[0], counts[1]), pass })
}

// ---------------------------------------------------------------------------
// cylinder grid instances

/// Grid on a cylinder: cycles C1, C2, C3 (C1 and C3 on the cuffs), k >= 7
/// pairwise disjoint spokes meeting each cycle once, and chord attachments
/// on C1 and C3. The chords themselves are not embedded; the minor lives in
/// the abstract graph plus chords.
#[derive(Clone, Debug)]
pub struct CylinderGridInstance {
    pub emb: EmbeddedGraph,
    /// cycles as vertex sequences in consistent cyclic order
    pub cycles: [Vec<usize>; 3],
    /// spokes, each a path from its C1 vertex to its C3 vertex
    pub spokes: Vec<Vec<usize>>,
    /// chords (a_i on C1, b_i on C3); two for case (i), three for case (ii)
    pub chords: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremCase {
    I,
    II,
}

impl CylinderGridInstance {
    pub fn k(&self) -> usize {
        self.spokes.len()
    }

    pub fn sources(&self) -> Vec<usize> {
        self.spokes.iter().map(|p| p[0]).collect()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.spokes.iter().map(|p| *p.last().unwrap()).collect()
    }

    /// The abstract graph with the chords added.
    pub fn augmented_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.emb.vertex_count());
        for &(u, v) in self.emb.edges() {
            g.add_edge(u, v);
        }
        for &(a, b) in &self.chords {
            g.add_edge(a, b);
        }
        g
    }

    pub fn serialize_sidecar(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.cycles.iter().enumerate() {
            let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("cyl C{} {}\n", i + 1, v.join(" ")));
        }
        for (i, p) in self.spokes.iter().enumerate() {
            let v: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("cyl P{} {}\n", i, v.join(" ")));
        }
        for &(a, b) in &self.chords {
            out.push_str(&format!("cyl chord {a} {b}\n"));
        }
        out
    }

    /// Rebuild an instance from an `.emb` text and its `cyl` sidecar, as
    /// emitted on sweep failures, so failing trials can be replayed.
    pub fn from_sidecar(emb_text: &str, sidecar: &str) -> Result<CylinderGridInstance> {
        let emb = crate::emb_io::from_emb(emb_text)?;
        let mut cycles: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut spokes: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut chords = Vec::new();
        let parse_err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        for (idx, raw) in sidecar.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            if tok.next() != Some("cyl") {
                return Err(parse_err(lineno, "expected `cyl` directive"));
            }
            let what = tok.next().ok_or_else(|| parse_err(lineno, "missing item"))?;
            let nums: Vec<usize> = tok
                .map(|t| t.parse().map_err(|_| parse_err(lineno, "bad vertex id")))
                .collect::<Result<_>>()?;
            match what {
                "C1" => cycles[0] = nums,
                "C2" => cycles[1] = nums,
                "C3" => cycles[2] = nums,
                "chord" => {
                    if nums.len() != 2 {
                        return Err(parse_err(lineno, "chord needs two endpoints"));
                    }
                    chords.push((nums[0], nums[1]));
                }
                p if p.starts_with('P') => {
                    let i: usize =
                        p[1..].parse().map_err(|_| parse_err(lineno, "bad spoke index"))?;
                    spokes.push((i, nums));
                }
                _ => return Err(parse_err(lineno, "unknown item")),
            }
        }
        spokes.sort_by_key(|&(i, _)| i);
        let spokes: Vec<Vec<usize>> = spokes.into_iter().map(|(_, p)| p).collect();
        let inst = CylinderGridInstance { emb, cycles, spokes, chords };
        validate_instance(&inst)?;
        Ok(inst)
    }
}

pub fn validate_instance(inst: &CylinderGridInstance) -> Result<()> {
    let k = inst.k();
    if k < 7 {
        return Err(Error::Precondition(format!("k = {k} < 7")));
    }
    let mut seen = std::collections::HashSet::new();
    for c in &inst.cycles {
        for &v in c {
            if !seen.insert(v) {
                return Err(Error::Precondition("cycles intersect".into()));
            }
        }
    }
    let mut spoke_seen = std::collections::HashSet::new();
    for (i, p) in inst.spokes.iter().enumerate() {
        for (j, c) in inst.cycles.iter().enumerate() {
            let hits = p.iter().filter(|v| c.contains(v)).count();
            if hits != 1 {
                return Err(Error::Precondition(format!("spoke {i} meets C{} {hits} times", j + 1)));
            }
        }
        if !inst.cycles[0].contains(&p[0]) || !inst.cycles[2].contains(p.last().unwrap()) {
            return Err(Error::Precondition(format!("spoke {i} must run from C1 to C3")));
        }
        for &v in p {
            let interior = !inst.cycles.iter().any(|c| c.contains(&v));
            if (interior || v == p[0] || v == *p.last().unwrap() || inst.cycles[1].contains(&v))
                && !spoke_seen.insert(v)
            {
                return Err(Error::Precondition("spokes intersect".into()));
            }
        }
    }
    // sources and targets must appear in the same cyclic order
    let order_on = |cycle: &Vec<usize>, pts: &Vec<usize>| -> Result<Vec<usize>> {
        let mut pos: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pts.iter().enumerate() {
            let at = cycle.iter().position(|&v| v == p).ok_or(Error::NotOnCycle(p))?;
            pos.push((at, i));
        }
        pos.sort_unstable();
        Ok(pos.into_iter().map(|(_, i)| i).collect())
    };
    let s_order = order_on(&inst.cycles[0], &inst.sources())?;
    let t_order = order_on(&inst.cycles[2], &inst.targets())?;
    let aligned = (0..k).any(|shift| {
        let fwd = (0..k).all(|i| s_order[(i + shift) % k] == t_order[i]);
        let rev = (0..k).all(|i| s_order[(i + shift) % k] == t_order[(k - i) % k]);
        fwd || rev
    });
    if !aligned {
        return Err(Error::Precondition("spoke ends are not in consistent cyclic order".into()));
    }
    for &(a, b) in &inst.chords {
        if !inst.cycles[0].contains(&a) {
            return Err(Error::NotOnCycle(a));
        }
        if !inst.cycles[2].contains(&b) {
            return Err(Error::NotOnCycle(b));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// the K6 builder

/// Positions of the chords after normalization, in role indices: a1 sits at
/// role 0 and a2 at role `j`; `abs[p]` is the original spoke index playing
/// role p, so every transform stays invertible.
#[derive(Clone, Debug)]
struct Config {
    k: usize,
    j: usize,
    b1: usize,
    b2: usize,
    b3: Option<usize>,
    a3: Option<usize>,
    abs: Vec<usize>,
}

impl Config {
    /// reflection p -> -p (fixes role 0)
    fn reflect(&self) -> Config {
        let k = self.k;
        let m = |p: usize| (k - p) % k;
        Config {
            k,
            j: m(self.j),
            b1: m(self.b1),
            b2: m(self.b2),
            b3: self.b3.map(m),
            a3: self.a3.map(m),
            abs: (0..k).map(|p| self.abs[(k - p) % k]).collect(),
        }
    }

    /// swap the two C1 attachments: p -> j - p; the chord labels follow
    /// their C1 ends, so b1 and b2 exchange roles
    fn swap_a(&self) -> Config {
        let k = self.k;
        let m = |p: usize| (self.j + k - p) % k;
        Config {
            k,
            j: self.j,
            b1: m(self.b2),
            b2: m(self.b1),
            b3: self.b3.map(m),
            a3: self.a3.map(m),
            abs: (0..k).map(|p| self.abs[(self.j + k - p) % k]).collect(),
        }
    }

    fn dist_t(&self, p: usize, q: usize) -> usize {
        let d = (q + self.k - p) % self.k;
        let inside = d.saturating_sub(1);
        let outside = (self.k - d).saturating_sub(1);
        inside.min(outside)
    }
}

/// Report of a successful build.
#[derive(Clone, Debug)]
pub struct BuildOutcome {
    pub model: MinorModel,
    /// dispatch branch, for coverage accounting
    pub branch: String,
}

/// Build a verified K6 minor model in the augmented cylinder graph,
/// following the case analysis on chord positions. Restricted search
/// exhaustion is a hard failure: it would contradict the theorem.
pub fn build_k6_on_cylinder(
    inst: &CylinderGridInstance,
    case: TheoremCase,
    budget: u64,
) -> Result<BuildOutcome> {
    validate_instance(inst)?;
    let expected_chords = match case {
        TheoremCase::I => 2,
        TheoremCase::II => 3,
    };
    if inst.chords.len() != expected_chords {
        return Err(Error::Precondition(format!(
            "case {case:?} needs {expected_chords} chords, got {}",
            inst.chords.len()
        )));
    }
    let k = inst.k();
    let sources = inst.sources();
    let targets = inst.targets();

    // effective spoke positions for each attachment; attachments between two
    // spoke ends may act as either neighbor, as long as all distance
    // conditions survive (mirroring the contraction normalization)
    let a_opts: Vec<Vec<usize>> = inst
        .chords
        .iter()
        .map(|&(a, _)| effective_positions(&inst.cycles[0], &sources, a))
        .collect::<Result<_>>()?;
    let b_opts: Vec<Vec<usize>> = inst
        .chords
        .iter()
        .map(|&(_, b)| effective_positions(&inst.cycles[2], &targets, b))
        .collect::<Result<_>>()?;

    let mut chosen: Option<Config> = None;
    'combos: for a1p in &a_opts[0] {
        for a2p in &a_opts[1] {
            for b1p in &b_opts[0] {
                for b2p in &b_opts[1] {
                    let b3_list: Vec<Option<(usize, usize)>> = match case {
                        TheoremCase::I => vec![None],
                        TheoremCase::II => {
                            let mut v = Vec::new();
                            for a3p in &a_opts[2] {
                                for b3p in &b_opts[2] {
                                    v.push(Some((*a3p, *b3p)));
                                }
                            }
                            v
                        }
                    };
                    for extra in b3_list {
                        let cfg = Config {
                            k,
                            j: (*a2p + k - *a1p) % k,
                            b1: (*b1p + k - *a1p) % k,
                            b2: (*b2p + k - *a1p) % k,
                            b3: extra.map(|(_, b)| (b + k - *a1p) % k),
                            a3: extra.map(|(a, _)| (a + k - *a1p) % k),
                            abs: (0..k).map(|p| (p + *a1p) % k).collect(),
                        };
                        if config_ok(&cfg, case) {
                            chosen = Some(cfg);
                            break 'combos;
                        }
                    }
                }
            }
        }
    }
    let cfg = chosen.ok_or_else(|| {
        Error::Precondition(format!(
            "no effective attachment positions satisfy the case {case:?} distance conditions"
        ))
    })?;
    let (final_cfg, spoke_roles, branch, swap) = dispatch(&cfg, case)?;
    if let Some(z) = swap {
        // role swap: rerun case (i) with C1 and C3 interchanged, the third
        // chord and chord z as the two chords
        let swapped = swap_roles(inst, z);
        let out = build_k6_on_cylinder(&swapped, TheoremCase::I, budget)?;
        // the vertex set is unchanged, so the model carries over
        let g = inst.augmented_graph();
        let k6 = SimpleGraph::complete(6);
        verify_minor_model(&g, &k6, &out.model)
            .map_err(|d| Error::TheoremViolation(format!("role-swapped model invalid: {d:?}")))?;
        return Ok(BuildOutcome { model: out.model, branch: format!("ii/2-swap({})", out.branch) });
    }
    let abs_spokes: Vec<usize> = spoke_roles.iter().map(|&r| final_cfg.abs[r]).collect();
    let model = restricted_search(inst, &abs_spokes, case, budget)?;
    Ok(BuildOutcome { model, branch })
}

/// effective spoke positions an attachment may take: its own if it is a
/// spoke end, otherwise the two ends of the arc it lies on
fn effective_positions(cycle: &[usize], ends: &[usize], v: usize) -> Result<Vec<usize>> {
    if let Some(i) = ends.iter().position(|&e| e == v) {
        return Ok(vec![i]);
    }
    let pos = cycle.iter().position(|&x| x == v).ok_or(Error::NotOnCycle(v))?;
    // scan backwards and forwards along the cycle for the nearest spoke ends
    let n = cycle.len();
    let mut back = (pos + n - 1) % n;
    while !ends.contains(&cycle[back]) {
        back = (back + n - 1) % n;
    }
    let mut fwd = (pos + 1) % n;
    while !ends.contains(&cycle[fwd]) {
        fwd = (fwd + 1) % n;
    }
    let i = ends.iter().position(|&e| e == cycle[back]).unwrap();
    let j = ends.iter().position(|&e| e == cycle[fwd]).unwrap();
    Ok(vec![i, j])
}

fn config_ok(cfg: &Config, case: TheoremCase) -> bool {
    let (_k, j, b1, b2, b3, a3) = (cfg.k, cfg.j, cfg.b1, cfg.b2, cfg.b3, cfg.a3);
    if j == 0 {
        return false;
    }
    // dist_{C1,S}(a1, a2) >= 2
    if cfg.dist_t(0, j) < 2 {
        return false;
    }
    match case {
        TheoremCase::I => b1 != b2 && cfg.dist_t(b1, b2) >= 1,
        TheoremCase::II => {
            let (a3, b3) = (a3.unwrap(), b3.unwrap());
            b1 != b2
                && cfg.dist_t(b1, b2) == 0
                && b3 != b1
                && b3 != b2
                && a3 != 0
                && a3 != j
                && (cfg.dist_t(b1, b3) >= 1 || cfg.dist_t(b2, b3) >= 1)
        }
    }
}

type SwapPlan = Option<usize>; // chord index z for the role swap

/// The case dispatch: returns the final configuration, the spoke roles of
/// the restricted union, a branch label, and optionally a role-swap plan.
fn dispatch(cfg: &Config, case: TheoremCase) -> Result<(Config, Vec<usize>, String, SwapPlan)> {
    let mut cfg = cfg.clone();
    let k = cfg.k;
    // normalize j into [3, k-3] (possible since dist >= 2)
    if cfg.j > k - 3 {
        cfg = cfg.reflect();
    }
    debug_assert!((3..=k - 3).contains(&cfg.j));
    match case {
        TheoremCase::I => {
            let j = cfg.j;
            let (l, r) = (cfg.b1.min(cfg.b2), cfg.b1.max(cfg.b2));
            let in_lower = |p: usize| (1..j).contains(&p);
            let in_upper = |p: usize| (j + 1..k).contains(&p);
            if (in_lower(l) && in_lower(r)) || (in_upper(l) && in_upper(r)) {
                // case 1: both strictly on one side of {0, j}
                let mut c = cfg;
                if in_upper(l) {
                    c = c.reflect();
                }
                let (l, r) = (c.b1.min(c.b2), c.b1.max(c.b2));
                let jj = c.j;
                if c.b1 == l {
                    Ok((c, vec![(jj + 1) % k, l + 1, r, jj], "i/1a".into(), None))
                } else {
                    Ok((c, vec![0, l, r, jj, (jj + 1) % k], "i/1b".into(), None))
                }
            } else if l == 0 || l == j || r == j {
                // case 2: normalize to l = 0, 2 <= r <= j
                let mut c = cfg;
                if l != 0 {
                    // one of the pair sits at j: exchange the C1 attachments
                    c = c.swap_a();
                    if c.j > k - 3 {
                        c = c.reflect();
                    }
                }
                let (mut l2, mut r2) = (c.b1.min(c.b2), c.b1.max(c.b2));
                if r2 > c.j {
                    c = c.reflect();
                    l2 = c.b1.min(c.b2);
                    r2 = c.b1.max(c.b2);
                }
                debug_assert_eq!(l2, 0);
                debug_assert!((2..=c.j).contains(&r2));
                if r2 < c.j {
                    let jj = c.j;
                    if c.b1 == 0 {
                        Ok((c, vec![(jj + 1) % k, 1, r2, jj], "i/2a".into(), None))
                    } else {
                        Ok((c, vec![k - 1, 1, r2, jj, (jj + 1) % k], "i/2b".into(), None))
                    }
                } else {
                    // r2 == j
                    if c.j > k - 4 {
                        c = c.reflect();
                        // reflection maps the pair (0, j) onto (0, k - j)
                    }
                    let jj = c.j;
                    let b1_low = c.b1 < c.b2;
                    if b1_low {
                        Ok((c, vec![k - 1, 1, jj - 1, (jj + 1) % k], "i/2c".into(), None))
                    } else {
                        Ok((
                            c,
                            vec![k - 1, 1, jj - 1, (jj + 1) % k, (jj + 2) % k],
                            "i/2d".into(),
                            None,
                        ))
                    }
                }
            } else {
                // case 3: l in 1..j-1, r in j+1..k-1
                Ok((cfg.clone(), vec![r, 0, l, j], "i/3".into(), None))
            }
        }
        TheoremCase::II => {
            // consecutive pair (l, l+1); normalize so 0 <= l <= j-1
            let mut c = cfg;
            let low = |c: &Config| if (c.b1 + 1) % k == c.b2 { c.b1 } else { c.b2 };
            if low(&c) >= c.j {
                c = c.reflect();
            }
            let mut l = low(&c);
            debug_assert!(l < c.j);
            if l == 0 || l == c.j - 1 {
                // case 1: normalize to l = 0
                if l != 0 {
                    c = c.swap_a();
                    l = low(&c);
                }
                debug_assert_eq!(l, 0);
                let jj = c.j;
                let spokes = vec![0, 1, jj - 1, jj, (jj + 1) % k, k - 1];
                if c.b1 == 0 {
                    Ok((c, spokes, "ii/1a".into(), None))
                } else {
                    Ok((c, spokes, "ii/1b".into(), None))
                }
            } else {
                // case 2: 1 <= l <= j-2
                if c.b1 == (c.b2 + 1) % k {
                    // b1 = t_{l+1}, b2 = t_l
                    let j = c.j;
                    Ok((c.clone(), vec![0, l, l + 1, j, (j + 1) % k], "ii/2a".into(), None))
                } else if l != 1 || c.j != 3 {
                    if l == 1 {
                        // l = 1 with j > 3: mirror to the l != 1 form
                        c = c.swap_a();
                        let l2 = low(&c);
                        debug_assert_ne!(l2, 1);
                        if c.b1 == (c.b2 + 1) % k {
                            let j = c.j;
                            return Ok((
                                c.clone(),
                                vec![0, l2, l2 + 1, j, (j + 1) % k],
                                "ii/2a-sym".into(),
                                None,
                            ));
                        }
                        let j = c.j;
                        return Ok((
                            c.clone(),
                            vec![1, l2, l2 + 1, j, (j + 1) % k, 0],
                            "ii/2b-sym".into(),
                            None,
                        ));
                    }
                    let j = c.j;
                    Ok((c.clone(), vec![1, l, l + 1, j, (j + 1) % k, 0], "ii/2b".into(), None))
                } else {
                    // l = 1, j = 3: the third chord decides
                    let b3 = c.b3.ok_or_else(|| {
                        Error::Precondition("case (ii) corner requires a third chord".into())
                    })?;
                    let a3 = c.a3.unwrap();
                    if (5..=k - 2).contains(&b3) {
                        // far third chord: interchange the cuffs; pick the
                        // original chord whose C1 end is S-far from a3
                        let z = if c.dist_t(a3, 0) >= 1 { 0 } else { 1 };
                        debug_assert!(c.dist_t(a3, if z == 0 { 0 } else { c.j }) >= 1);
                        Ok((c, Vec::new(), "ii/2-swap".into(), Some(z)))
                    } else if b3 == 0 || b3 == 3 {
                        if b3 == 0 {
                            c = c.swap_a();
                            debug_assert_eq!(c.b3.unwrap(), 3);
                        }
                        Ok((c, vec![0, 1, 2, 3, 4, 5], "ii/2-b3near".into(), None))
                    } else if b3 == 4 || b3 == k - 1 {
                        if b3 == k - 1 {
                            c = c.swap_a();
                            debug_assert_eq!(c.b3.unwrap(), 4);
                        }
                        Ok((c, vec![0, 1, 2, 3, k - 2, k - 1], "ii/2-b3far".into(), None))
                    } else {
                        Err(Error::Precondition(format!("unhandled b3 position {b3}")))
                    }
                }
            }
        }
    }
}

/// Restrict to the union of the three cycles, the selected spokes and the
/// chords; suppress degree-2 vertices; search for K6; lift and verify.
fn restricted_search(
    inst: &CylinderGridInstance,
    spokes_abs: &[usize],
    case: TheoremCase,
    budget: u64,
) -> Result<MinorModel> {
    let g = inst.augmented_graph();
    let n = g.vertex_count();
    // the union is edge-restricted: cycle edges, selected spoke edges and
    // the chords; nothing else (unselected spokes stay out even when their
    // endpoints lie on the cycles)
    let chords: &[(usize, usize)] = match case {
        TheoremCase::I => &inst.chords[..2],
        TheoremCase::II => &inst.chords[..],
    };
    let mut union_edges: Vec<(usize, usize)> = Vec::new();
    for c in &inst.cycles {
        for i in 0..c.len() {
            union_edges.push((c[i], c[(i + 1) % c.len()]));
        }
    }
    for &i in spokes_abs {
        for w in inst.spokes[i].windows(2) {
            union_edges.push((w[0], w[1]));
        }
    }
    union_edges.extend(chords.iter().copied());
    let mut keep = vec![false; n];
    for &(u, v) in &union_edges {
        keep[u] = true;
        keep[v] = true;
    }
    let mut new_id = vec![usize::MAX; n];
    let mut orig = Vec::new();
    for v in 0..n {
        if keep[v] {
            new_id[v] = orig.len();
            orig.push(v);
        }
    }
    let mut h = SimpleGraph::new(orig.len());
    for &(u, v) in &union_edges {
        h.add_edge(new_id[u], new_id[v]);
    }
    // suppress degree-2 vertices, tracking preimages
    let mut preimage: Vec<Vec<usize>> = orig.iter().map(|&v| vec![v]).collect();
    loop {
        let n_h = h.vertex_count();
        let Some(v) = (0..n_h).find(|&v| h.degree(v) == 2) else { break };
        let nb: Vec<usize> = h.neighbors(v).collect();
        if h.has_edge(nb[0], nb[1]) || nb.len() < 2 {
            // contracting would merge a parallel edge; fold v into nb[0]
        }
        let u = nb[0];
        let moved = n_h - 1;
        let mut pre_v = preimage[v].clone();
        preimage[u].append(&mut pre_v);
        h = h.contract_edge(u, v);
        let pv = preimage.pop().unwrap();
        if v != moved {
            preimage[v] = pv;
        }
    }
    let k6 = SimpleGraph::complete(6);
    match has_minor(&h, &k6, budget) {
        SearchOutcome::Found(small) => {
            // lift to the augmented graph
            let branch_sets: Vec<Vec<usize>> = small
                .branch_sets
                .iter()
                .map(|s| {
                    let mut set: Vec<usize> =
                        s.iter().flat_map(|&v| preimage[v].iter().copied()).collect();
                    set.sort_unstable();
                    set
                })
                .collect();
            let bits: Vec<u64> = branch_sets
                .iter()
                .map(|s| s.iter().fold(0u64, |acc, &v| acc | 1 << v))
                .collect();
            let mut witnesses = std::collections::BTreeMap::new();
            for (i, j) in k6.edges() {
                let mut found = None;
                'scan: for &a in &branch_sets[i] {
                    for &b in &branch_sets[j] {
                        if g.has_edge(a, b) {
                            found = Some((a, b));
                            break 'scan;
                        }
                    }
                }
                let _ = &bits;
                witnesses.insert(
                    (i.min(j), i.max(j)),
                    found.ok_or_else(|| Error::TheoremViolation("lifting lost a witness".into()))?,
                );
            }
            let model = MinorModel { branch_sets, witnesses };
            verify_minor_model(&g, &k6, &model)
                .map_err(|d| Error::TheoremViolation(format!("lifted model invalid: {d:?}")))?;
            Ok(model)
        }
        SearchOutcome::Absent => Err(Error::TheoremViolation(format!(
            "restricted union of spokes {spokes_abs:?} contains no K6"
        ))),
        SearchOutcome::Unknown => Err(Error::BudgetExceeded),
    }
}

/// Interchange the roles of C1 and C3: reverse everything and install the
/// third chord and chord z as the two chords of a case (i) instance.
fn swap_roles(inst: &CylinderGridInstance, z: usize) -> CylinderGridInstance {
    // new spokes: reversed paths, listed so that the new sources follow the
    // new C1 (= old C3 reversed) in order
    let new_c1: Vec<usize> = inst.cycles[2].iter().rev().copied().collect();
    let new_c2: Vec<usize> = inst.cycles[1].iter().rev().copied().collect();
    let new_c3: Vec<usize> = inst.cycles[0].iter().rev().copied().collect();
    let mut new_spokes: Vec<Vec<usize>> = inst
        .spokes
        .iter()
        .map(|p| p.iter().rev().copied().collect())
        .collect();
    // order by position of the new source on the new C1
    new_spokes.sort_by_key(|p| new_c1.iter().position(|&v| v == p[0]).unwrap());
    let chord3 = inst.chords[2];
    let chord_z = inst.chords[z];
    CylinderGridInstance {
        emb: inst.emb.clone(),
        cycles: [new_c1, new_c2, new_c3],
        spokes: new_spokes,
        chords: vec![(chord3.1, chord3.0), (chord_z.1, chord_z.0)],
    }
}

// ---------------------------------------------------------------------------
// instance generator and sweep

/// Build a cylinder grid: three nested cycles, k spokes, arc lengths and
/// spoke subdivisions controlled by the RNG, embedded in the sphere with the
/// two cuffs at C1 and C3.
pub fn generate_cylinder_grid(k: usize, rng: &mut ChaCha8Rng) -> CylinderGridInstance {
    // column structure: spoke i occupies a column; arcs between consecutive
    // columns have 0 or 1 extra vertices on each cycle
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next_id = 0usize;
    let alloc = |n: &mut usize| {
        let v = *n;
        *n += 1;
        v
    };
    // ring vertices per cycle, in cyclic order, with spoke attachment marks
    let mut rings: Vec<Vec<usize>> = Vec::new();
    let mut attachments: Vec<Vec<usize>> = Vec::new();
    for _ in 0..3 {
        let mut ring = Vec::new();
        let mut att = Vec::new();
        for _col in 0..k {
            let v = alloc(&mut next_id);
            ring.push(v);
            att.push(v);
            if rng.gen_bool(0.3) {
                ring.push(alloc(&mut next_id));
            }
        }
        rings.push(ring);
        attachments.push(att);
    }
    for ring in &rings {
        for i in 0..ring.len() {
            edges.push((ring[i], ring[(i + 1) % ring.len()]));
        }
    }
    // spokes: attachment chain C1 -> C2 -> C3 with optional extra vertices
    let mut spokes = Vec::new();
    for col in 0..k {
        let mut path = vec![attachments[0][col]];
        for seg in 0..2 {
            if rng.gen_bool(0.25) {
                let v = alloc(&mut next_id);
                edges.push((*path.last().unwrap(), v));
                path.push(v);
            }
            let target = attachments[seg + 1][col];
            edges.push((*path.last().unwrap(), target));
            path.push(target);
        }
        spokes.push(path);
    }
    // rotations: rings counterclockwise, spokes between ring neighbors
    let n = next_id;
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edge_id = std::collections::HashMap::new();
    for (e, &(u, v)) in edges.iter().enumerate() {
        edge_id.insert((u, v), e);
        edge_id.insert((v, u), e);
    }
    let spoke_of = |v: usize| -> Option<(usize, usize)> {
        spokes.iter().enumerate().find_map(|(i, p)| p.iter().position(|&x| x == v).map(|j| (i, j)))
    };
    for (ri, ring) in rings.iter().enumerate() {
        for (pos, &v) in ring.iter().enumerate() {
            let next = ring[(pos + 1) % ring.len()];
            let prev = ring[(pos + ring.len() - 1) % ring.len()];
            let mut order = vec![edge_id[&(v, next)]];
            if let Some((si, sj)) = spoke_of(v) {
                // inward neighbor on the spoke (toward C3)
                if ri < 2 {
                    order.push(edge_id[&(v, spokes[si][sj + 1])]);
                }
                order.push(edge_id[&(v, prev)]);
                if ri > 0 {
                    order.push(edge_id[&(v, spokes[si][sj - 1])]);
                }
            } else {
                order.push(edge_id[&(v, prev)]);
            }
            rot[v] = order;
        }
    }
    // spoke interior vertices
    for p in &spokes {
        for w in 1..p.len() - 1 {
            let v = p[w];
            if rot[v].is_empty() {
                rot[v] = vec![edge_id[&(v, p[w + 1])], edge_id[&(v, p[w - 1])]];
            }
        }
    }
    let m = edges.len();
    let emb = EmbeddedGraph::new(n, edges, vec![1; m], rot).expect("cylinder grid embedding");
    debug_assert_eq!(crate::embed::surface(&emb).unwrap().euler_genus, 0);
    CylinderGridInstance {
        emb,
        cycles: [rings[0].clone(), rings[1].clone(), rings[2].clone()],
        spokes,
        chords: Vec::new(),
    }
}

/// Attach chords for the requested case at positions sampled to satisfy the
/// distance preconditions; attachments sometimes land on arc vertices to
/// exercise the normalization.
pub fn attach_chords(
    inst: &mut CylinderGridInstance,
    case: TheoremCase,
    rng: &mut ChaCha8Rng,
) {
    let k = inst.k();
    let sources = inst.sources();
    let targets = inst.targets();
    // a vertex representing position p, sometimes nudged onto an arc vertex
    let pick = |cycle: &Vec<usize>, ends: &Vec<usize>, p: usize, rng: &mut ChaCha8Rng| -> usize {
        let v = ends[p];
        let pos = cycle.iter().position(|&x| x == v).unwrap();
        let next = cycle[(pos + 1) % cycle.len()];
        if !ends.contains(&next) && rng.gen_bool(0.25) {
            next
        } else {
            v
        }
    };
    let j = 3 + rng.gen_range(0..=(k - 6));
    let a1 = pick(&inst.cycles[0], &sources, 0, rng);
    let a2 = pick(&inst.cycles[0], &sources, j, rng);
    match case {
        TheoremCase::I => {
            // positions l < r with at least one target strictly inside both arcs
            let l = rng.gen_range(0..k);
            let gap = 2 + rng.gen_range(0..=(k - 4));
            let r = (l + gap) % k;
            let b_l = pick(&inst.cycles[2], &targets, l, rng);
            let b_r = pick(&inst.cycles[2], &targets, r, rng);
            if rng.gen_bool(0.5) {
                inst.chords = vec![(a1, b_l), (a2, b_r)];
            } else {
                inst.chords = vec![(a1, b_r), (a2, b_l)];
            }
        }
        TheoremCase::II => {
            let l = rng.gen_range(0..k);
            let b_l = inst.targets()[l];
            let b_r = inst.targets()[(l + 1) % k];
            let (b1, b2) = if rng.gen_bool(0.5) { (b_l, b_r) } else { (b_r, b_l) };
            // third chord: all positions except the pair, constrained to keep
            // one distance positive
            let mut m;
            loop {
                m = rng.gen_range(0..k);
                if m == l || m == (l + 1) % k {
                    continue;
                }
                let dist = |p: usize, q: usize| {
                    let d = (q + k - p) % k;
                    d.saturating_sub(1).min((k - d).saturating_sub(1))
                };
                if dist(l, m) >= 1 || dist((l + 1) % k, m) >= 1 {
                    break;
                }
            }
            let mut p;
            loop {
                p = rng.gen_range(0..k);
                if p != 0 && p != j {
                    break;
                }
            }
            let a3 = inst.sources()[p];
            let b3 = inst.targets()[m];
            inst.chords = vec![(a1, b1), (a2, b2), (a3, b3)];
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub trials: usize,
    pub verified: usize,
    pub case_coverage: BTreeMap<String, usize>,
}

/// Generate random valid instances across the proof cases and require a
/// verified K6 model from every single one.
pub fn randomized_theorem_sweep(
    trials: usize,
    k_range: std::ops::RangeInclusive<usize>,
    seed: u64,
    budget: u64,
) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport { trials, ..Default::default() };
    for trial in 0..trials {
        let k = *k_range.start() + rng.gen_range(0..=(k_range.end() - k_range.start()));
        let case = if rng.gen_bool(0.5) { TheoremCase::I } else { TheoremCase::II };
        let mut inst = generate_cylinder_grid(k, &mut rng);
        attach_chords(&mut inst, case, &mut rng);
        match build_k6_on_cylinder(&inst, case, budget) {
            Ok(outcome) => {
                report.verified += 1;
                *report.case_coverage.entry(outcome.branch).or_insert(0) += 1;
            }
            Err(e) => {
                return Err(Error::TheoremViolation(format!(
                    "trial {trial} (k={k}, case {case:?}) failed: {e}\ninstance:\n{}{}",
                    crate::emb_io::to_emb(&inst.emb),
                    inst.serialize_sidecar()
                )));
            }
        }
    }
    Ok(report)
}
