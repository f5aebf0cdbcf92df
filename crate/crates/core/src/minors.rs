//! Minor testing with certificates. A minor model maps each vertex of H to a
//! connected branch set in G, pairwise disjoint, with a witness edge of G for
//! every edge of H. Models are verified independently of any search.

use crate::graph::{BitIter, SimpleGraph};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Branch-set certificate that H is a minor of G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    /// branch set per H-vertex, each sorted
    pub branch_sets: Vec<Vec<usize>>,
    /// witness edge of G per H-edge
    pub witnesses: BTreeMap<(usize, usize), (usize, usize)>,
}

impl MinorModel {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (i, set) in self.branch_sets.iter().enumerate() {
            let verts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("branch {i}: {}\n", verts.join(" ")));
        }
        for (&(i, j), &(a, b)) in &self.witnesses {
            out.push_str(&format!("witness {i}-{j}: {a}-{b}\n"));
        }
        out
    }

    fn branch_bits(&self) -> Vec<u64> {
        self.branch_sets
            .iter()
            .map(|s| s.iter().fold(0u64, |acc, &v| acc | 1 << v))
            .collect()
    }
}

/// Why a model was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelDefect {
    WrongBranchCount,
    EmptyBranchSet(usize),
    OutOfRange(usize),
    Overlap(usize, usize),
    DisconnectedBranchSet(usize),
    MissingWitness(usize, usize),
    BadWitness(usize, usize),
}

/// Check every model invariant; never trusts the search that produced it.
pub fn verify_minor_model(
    g: &SimpleGraph,
    h: &SimpleGraph,
    model: &MinorModel,
) -> std::result::Result<(), ModelDefect> {
    if model.branch_sets.len() != h.vertex_count() {
        return Err(ModelDefect::WrongBranchCount);
    }
    let bits = model.branch_bits();
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(ModelDefect::EmptyBranchSet(i));
        }
        if set.iter().any(|&v| v >= g.vertex_count()) {
            return Err(ModelDefect::OutOfRange(i));
        }
        if !g.is_set_connected(bits[i]) {
            return Err(ModelDefect::DisconnectedBranchSet(i));
        }
    }
    for i in 0..bits.len() {
        for j in (i + 1)..bits.len() {
            if bits[i] & bits[j] != 0 {
                return Err(ModelDefect::Overlap(i, j));
            }
        }
    }
    for (i, j) in h.edges() {
        match model.witnesses.get(&(i.min(j), i.max(j))) {
            None => return Err(ModelDefect::MissingWitness(i, j)),
            Some(&(a, b)) => {
                let ok = a < g.vertex_count()
                    && b < g.vertex_count()
                    && g.has_edge(a, b)
                    && ((bits[i] >> a & 1 == 1 && bits[j] >> b & 1 == 1)
                        || (bits[i] >> b & 1 == 1 && bits[j] >> a & 1 == 1));
                if !ok {
                    return Err(ModelDefect::BadWitness(i, j));
                }
            }
        }
    }
    Ok(())
}

/// Outcome of a budgeted search: exceeding the node budget is reported as
/// `Unknown`, never silently as absent.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(MinorModel),
    Absent,
    Unknown,
}

impl SearchOutcome {
    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent)
    }
}

pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Decide H <= G (minor order), returning a verified model when one exists.
///
/// A deterministic two-phase strategy: matching contractions shrink G and a
/// model found in the quotient is lifted back (fast on large instances that
/// do contain the minor); otherwise an exact branch-set search with
/// reachability pruning settles the question within the node budget.
pub fn has_minor(g: &SimpleGraph, h: &SimpleGraph, budget: u64) -> SearchOutcome {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return SearchOutcome::Absent;
    }
    if h.vertex_count() == 0 {
        return SearchOutcome::Found(MinorModel { branch_sets: Vec::new(), witnesses: BTreeMap::new() });
    }
    // planarity pruning: minors of planar graphs are planar, so a nonplanar
    // H cannot sit in a planar G; when every H - u is also nonplanar, one
    // vertex deletion cannot help either, refuting apex-like hosts
    if !crate::planarity::is_planar(h) {
        if crate::planarity::is_planar(g) {
            return SearchOutcome::Absent;
        }
        let h_stays_nonplanar = (0..h.vertex_count())
            .all(|u| !crate::planarity::is_planar(&h.remove_vertex(u)));
        if h_stays_nonplanar
            && (0..g.vertex_count()).any(|v| crate::planarity::is_planar(&g.remove_vertex(v)))
        {
            return SearchOutcome::Absent;
        }
    }
    // phase 1: contraction seeding, only useful when G is larger than H
    if g.vertex_count() > h.vertex_count() + 4 {
        if let Some(model) = contraction_seeded(g, h, budget / 4) {
            debug_assert!(verify_minor_model(g, h, &model).is_ok());
            return SearchOutcome::Found(model);
        }
    }
    // phase 2: exact search
    let mut search = Search::new(g, h, budget);
    match search.run() {
        Some(true) => {
            let model = search.extract_model();
            debug_assert!(verify_minor_model(g, h, &model).is_ok());
            SearchOutcome::Found(model)
        }
        Some(false) => SearchOutcome::Absent,
        None => SearchOutcome::Unknown,
    }
}

/// Greedy matching contractions until G is small, then exact search in the
/// quotient; a found model lifts through the contraction maps.
fn contraction_seeded(g: &SimpleGraph, h: &SimpleGraph, budget: u64) -> Option<MinorModel> {
    let target = (h.vertex_count() + 10).max(14);
    let mut quotient = g.clone();
    // preimage[v] = set of original vertices behind quotient vertex v
    let mut preimage: Vec<u64> = (0..g.vertex_count()).map(|v| 1u64 << v).collect();
    while quotient.vertex_count() > target {
        // greedy maximal matching by vertex id
        let mut matched = 0u64;
        let mut pairs = Vec::new();
        for u in 0..quotient.vertex_count() {
            if matched >> u & 1 == 1 {
                continue;
            }
            if let Some(v) = quotient.neighbors(u).find(|&v| matched >> v & 1 == 0) {
                matched |= 1 << u | 1 << v;
                pairs.push((u, v));
            }
        }
        if pairs.is_empty() {
            break;
        }
        // stop contracting before dropping below the target
        let excess = quotient.vertex_count() - target;
        pairs.truncate(excess);
        // contract in descending v order so earlier indices stay stable
        pairs.sort_by_key(|&(_, v)| std::cmp::Reverse(v));
        for (u, v) in pairs {
            let moved = quotient.vertex_count() - 1;
            quotient = quotient.contract_edge(u, v);
            preimage[u] |= preimage[v];
            // contract_edge moved the last vertex into slot v
            if v != moved {
                preimage[v] = preimage[moved];
            }
            preimage.truncate(quotient.vertex_count());
        }
    }
    if quotient.vertex_count() == g.vertex_count() {
        return None;
    }
    let mut search = Search::new(&quotient, h, budget);
    if search.run() != Some(true) {
        return None;
    }
    let small = search.extract_model();
    // lift: branch sets become unions of preimages; witnesses re-resolved
    let branch_bits: Vec<u64> = small
        .branch_sets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &v| acc | preimage[v]))
        .collect();
    lift_model(g, h, &branch_bits)
}

/// Build a model from branch-set bitsets by locating witness edges.
fn lift_model(g: &SimpleGraph, h: &SimpleGraph, branch_bits: &[u64]) -> Option<MinorModel> {
    let mut witnesses = BTreeMap::new();
    for (i, j) in h.edges() {
        let mut found = None;
        'scan: for a in BitIter(branch_bits[i]) {
            let hits = g.row(a) & branch_bits[j];
            if hits != 0 {
                found = Some((a, hits.trailing_zeros() as usize));
                break 'scan;
            }
        }
        witnesses.insert((i.min(j), i.max(j)), found?);
    }
    let branch_sets: Vec<Vec<usize>> =
        branch_bits.iter().map(|&b| BitIter(b).collect()).collect();
    let model = MinorModel { branch_sets, witnesses };
    if verify_minor_model(g, h, &model).is_ok() {
        Some(model)
    } else {
        None
    }
}

/// Exact branch-set search with reachability pruning.
struct Search<'a> {
    g: &'a SimpleGraph,
    h: &'a SimpleGraph,
    h_edges: Vec<(usize, usize)>,
    h_complete: bool,
    sets: Vec<u64>,
    used: u64,
    /// per set: vertices barred from ever joining it (minimal-move dedup)
    taboo: Vec<u64>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph, h: &'a SimpleGraph, budget: u64) -> Self {
        let hn = h.vertex_count();
        let h_edges = h.edges();
        let h_complete = h_edges.len() == hn * (hn - 1) / 2;
        Search {
            g,
            h,
            h_edges,
            h_complete,
            sets: vec![0; hn],
            used: 0,
            taboo: vec![0; hn],
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    /// Some(true) found, Some(false) proven absent, None budget exhausted.
    fn run(&mut self) -> Option<bool> {
        let found = self.recurse();
        if self.exhausted && !found {
            None
        } else {
            Some(found)
        }
    }

    fn extract_model(&self) -> MinorModel {
        lift_model(self.g, self.h, &self.sets).expect("search state is a valid model")
    }

    fn free(&self) -> u64 {
        let all = if self.g.vertex_count() == 64 {
            u64::MAX
        } else {
            (1u64 << self.g.vertex_count()) - 1
        };
        all & !self.used
    }

    fn neighbors_of_set(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for v in BitIter(bits) {
            out |= self.g.row(v);
        }
        out & !bits
    }

    fn components_of(&self, bits: u64) -> Vec<u64> {
        let mut rest = bits;
        let mut comps = Vec::new();
        while rest != 0 {
            let start = 1u64 << rest.trailing_zeros();
            let comp = self.g.reach(start, rest) & rest;
            comps.push(comp);
            rest &= !comp;
        }
        comps
    }

    fn feasible(&self) -> bool {
        let free = self.free();
        // every branch set must be connectable through free non-taboo vertices
        for (i, &bits) in self.sets.iter().enumerate() {
            if bits == 0 {
                continue;
            }
            let grow = free & !self.taboo[i];
            let comps = self.components_of(bits);
            if comps.len() > 1 {
                let reach = self.g.reach(comps[0], grow | bits);
                if comps.iter().any(|&c| reach & c == 0) {
                    return false;
                }
            }
        }
        // each unwitnessed H-edge must remain connectable; a connector may
        // mix vertices headed for either set, so only vertices taboo for
        // both sides are excluded
        for &(i, j) in &self.h_edges {
            let (a, b) = (self.sets[i], self.sets[j]);
            if a == 0 || b == 0 {
                continue;
            }
            if self.touching(a, b) {
                continue;
            }
            let region = free & !(self.taboo[i] & self.taboo[j]);
            let reach_a = self.g.reach(a, region | a);
            if !self.touching(reach_a, b) {
                return false;
            }
        }
        // enough free vertices to seed the empty sets
        let empties = self.sets.iter().filter(|&&b| b == 0).count();
        if (free.count_ones() as usize) < empties {
            return false;
        }
        true
    }

    fn touching(&self, a: u64, b: u64) -> bool {
        for v in BitIter(a) {
            if self.g.row(v) & b != 0 {
                return true;
            }
        }
        false
    }

    fn solved(&self) -> bool {
        self.sets.iter().all(|&b| b != 0)
            && self
                .h_edges
                .iter()
                .all(|&(i, j)| self.touching(self.sets[i], self.sets[j]))
            && self.sets.iter().all(|&b| self.g.is_set_connected(b))
    }

    fn recurse(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return false;
        }
        if !self.feasible() {
            return false;
        }
        if self.solved() {
            return true;
        }
        // choose the most constrained requirement
        let free = self.free();
        let mut best: Option<(usize, Vec<(usize, usize)>)> = None; // (count, moves)
        // disconnected sets: moves join the first component
        for (i, &bits) in self.sets.iter().enumerate() {
            if bits == 0 {
                continue;
            }
            let comps = self.components_of(bits);
            if comps.len() > 1 {
                let cand = self.neighbors_of_set(comps[0]) & free & !self.taboo[i];
                let moves: Vec<(usize, usize)> = BitIter(cand).map(|v| (i, v)).collect();
                if best.as_ref().map_or(true, |(c, _)| moves.len() < *c) {
                    let count = moves.len();
                    best = Some((count, moves));
                }
            }
        }
        if best.is_none() || best.as_ref().unwrap().0 > 1 {
            // unwitnessed adjacent pair: extend either side
            for &(i, j) in &self.h_edges {
                let (a, b) = (self.sets[i], self.sets[j]);
                if a == 0 || b == 0 || self.touching(a, b) {
                    continue;
                }
                let region = free & !(self.taboo[i] & self.taboo[j]);
                let reach_b = self.g.reach(b, region | b);
                let reach_a = self.g.reach(a, region | a);
                let cand_i = self.neighbors_of_set(a) & free & !self.taboo[i] & reach_b;
                let cand_j = self.neighbors_of_set(b) & free & !self.taboo[j] & reach_a;
                let mut moves: Vec<(usize, usize)> = BitIter(cand_i).map(|v| (i, v)).collect();
                moves.extend(BitIter(cand_j).map(|v| (j, v)));
                if best.as_ref().map_or(true, |(c, _)| moves.len() < *c) {
                    let count = moves.len();
                    best = Some((count, moves));
                }
            }
        }
        if best.is_none() {
            // seed an empty set; for complete H the sets are interchangeable,
            // so seeds are forced to ascend
            if let Some(i) = self.sets.iter().position(|&b| b == 0) {
                let floor = if self.h_complete {
                    self.sets[..i]
                        .iter()
                        .map(|&b| if b == 0 { 0 } else { b.trailing_zeros() as usize + 1 })
                        .max()
                        .unwrap_or(0)
                } else {
                    0
                };
                let moves: Vec<(usize, usize)> = BitIter(free & !self.taboo[i])
                    .filter(|&v| v >= floor)
                    .map(|v| (i, v))
                    .collect();
                best = Some((moves.len(), moves));
            }
        }
        let Some((_, moves)) = best else {
            return false;
        };
        // minimal-move branching: a solution extending this state contains
        // some move from the list; branch k assumes the k-th is the first
        // one used, so earlier moves become taboo in later branches
        let mut tabooed: Vec<(usize, usize)> = Vec::new();
        for (i, v) in moves {
            self.sets[i] |= 1 << v;
            self.used |= 1 << v;
            if self.recurse() {
                // leave the solved assignment in place for extraction
                return true;
            }
            self.sets[i] &= !(1u64 << v);
            self.used &= !(1u64 << v);
            if self.exhausted {
                break;
            }
            self.taboo[i] |= 1 << v;
            tabooed.push((i, v));
        }
        for (i, v) in tabooed {
            self.taboo[i] &= !(1u64 << v);
        }
        false
    }
}

/// Exhaustive reference search: plain lexicographic vertex assignment with
/// only sound feasibility pruning. Capped at 14 vertices; written
/// independently of [`has_minor`] so the two can check each other.
pub fn brute_force_minor_oracle(g: &SimpleGraph, h: &SimpleGraph) -> Result<Option<MinorModel>> {
    if g.vertex_count() > 14 {
        return Err(Error::SizeCap(format!(
            "oracle capped at 14 vertices, got {}",
            g.vertex_count()
        )));
    }
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let hn = h.vertex_count();
    let h_edges = h.edges();
    let h_complete = h_edges.len() == hn * (hn - 1) / 2;
    let n = g.vertex_count();
    let mut sets = vec![0u64; hn];

    fn future_mask(v: usize, n: usize) -> u64 {
        if v >= n {
            0
        } else {
            let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            all & !((1u64 << v) - 1)
        }
    }

    fn ok_so_far(
        g: &SimpleGraph,
        h_edges: &[(usize, usize)],
        sets: &[u64],
        next_vertex: usize,
        n: usize,
    ) -> bool {
        let future = future_mask(next_vertex, n);
        for &bits in sets {
            if bits == 0 {
                continue;
            }
            // components must be joinable through future vertices
            let mut rest = bits;
            let start = 1u64 << rest.trailing_zeros();
            let reach = g.reach(start, bits | future);
            rest &= !reach;
            if rest != 0 {
                return false;
            }
        }
        for &(i, j) in h_edges {
            let (a, b) = (sets[i], sets[j]);
            if a == 0 || b == 0 {
                continue;
            }
            // some edge must already exist or remain reachable through future
            let reach = g.reach(a, a | future);
            let mut touch = false;
            for v in BitIter(reach | a) {
                if g.row(v) & b != 0 && (reach | a) >> v & 1 == 1 {
                    touch = true;
                    break;
                }
            }
            if !touch {
                return false;
            }
        }
        // enough room to seed empty sets
        let empties = sets.iter().filter(|&&b| b == 0).count();
        if (future.count_ones() as usize) < empties {
            return false;
        }
        true
    }

    fn assign(
        g: &SimpleGraph,
        h_edges: &[(usize, usize)],
        h_complete: bool,
        sets: &mut Vec<u64>,
        v: usize,
        n: usize,
    ) -> bool {
        if v == n {
            return sets.iter().all(|&b| b != 0 && g.is_set_connected(b))
                && h_edges.iter().all(|&(i, j)| {
                    BitIter(sets[i]).any(|a| g.row(a) & sets[j] != 0)
                });
        }
        // skip v
        if assign(g, h_edges, h_complete, sets, v + 1, n) {
            return true;
        }
        for i in 0..sets.len() {
            // canonical seeding order for interchangeable sets
            if h_complete && sets[i] == 0 && i > 0 && sets[i - 1] == 0 {
                break;
            }
            sets[i] |= 1 << v;
            if ok_so_far(g, h_edges, sets, v + 1, n)
                && assign(g, h_edges, h_complete, sets, v + 1, n)
            {
                return true;
            }
            sets[i] &= !(1u64 << v);
        }
        false
    }

    if assign(g, &h_edges, h_complete, &mut sets, 0, n) {
        Ok(lift_model(g, h, &sets))
    } else {
        Ok(None)
    }
}

/// Record of one ΔY step: the triangle replaced and the new vertex's id in
/// the transformed graph.
#[derive(Clone, Copy, Debug)]
pub struct DeltaWyeRecord {
    pub triangle: (usize, usize, usize),
    pub y: usize,
}

/// Pull a K6 (or any H) model back through a ΔY-transformation: G' was
/// obtained from G by replacing triangle uvw with a new vertex y. A model in
/// G' yields one in G by dropping y or replacing it with a triangle vertex.
pub fn propagate_model_through_delta_wye(
    g: &SimpleGraph,
    g_after: &SimpleGraph,
    h: &SimpleGraph,
    model_after: &MinorModel,
    record: DeltaWyeRecord,
) -> Result<MinorModel> {
    let (u, v, w) = record.triangle;
    let y = record.y;
    // validate the transformation record
    let tri_ok = g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w);
    let y_ok = y == g.vertex_count()
        && g_after.vertex_count() == g.vertex_count() + 1
        && g_after.degree(y) == 3
        && [u, v, w].iter().all(|&x| g_after.has_edge(x, y))
        && !g_after.has_edge(u, v)
        && !g_after.has_edge(v, w)
        && !g_after.has_edge(u, w);
    if !tri_ok || !y_ok {
        return Err(Error::BadTransformation("record does not match a ΔY step".into()));
    }
    if verify_minor_model(g_after, h, model_after).is_err() {
        return Err(Error::BadTransformation("model invalid in the transformed graph".into()));
    }
    let host = model_after.branch_sets.iter().position(|s| s.contains(&y));
    let mut branch_bits: Vec<u64> = model_after
        .branch_sets
        .iter()
        .map(|s| s.iter().filter(|&&x| x != y).fold(0u64, |acc, &x| acc | 1 << x))
        .collect();
    if let Some(i) = host {
        if branch_bits[i] == 0 {
            // y was a singleton: substitute a free triangle vertex that the
            // triangle edges connect to all previous witnesses
            let used: u64 = branch_bits.iter().fold(0, |a, &b| a | b);
            let t = [u, v, w]
                .into_iter()
                .find(|&t| used >> t & 1 == 0)
                .ok_or_else(|| {
                    Error::BadTransformation("no triangle vertex free to replace y".into())
                })?;
            branch_bits[i] = 1 << t;
        }
        // else: y interior; the triangle edges reconnect the remainder
    }
    lift_model(g, h, &branch_bits)
        .ok_or_else(|| Error::BadTransformation("propagated sets do not form a model".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::surgery::delta_to_wye;

    fn k(n: usize) -> SimpleGraph {
        SimpleGraph::complete(n)
    }

    #[test]
    fn petersen_contains_k5() {
        let p = fixtures::petersen();
        // contract the five spokes
        let branch_sets: Vec<Vec<usize>> = (0..5).map(|i| vec![i, 5 + i]).collect();
        let mut witnesses = BTreeMap::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                let e = if (j - i) % 5 == 1 || (j - i) % 5 == 4 {
                    (i, j) // outer cycle edge
                } else {
                    (5 + i, 5 + j) // pentagram edge
                };
                witnesses.insert((i, j), e);
            }
        }
        let model = MinorModel { branch_sets, witnesses };
        assert!(verify_minor_model(&p, &k(5), &model).is_ok());
    }

    #[test]
    fn verify_rejects_defects() {
        let p = fixtures::petersen();
        let good = has_minor(&p, &k(5), DEFAULT_BUDGET);
        let model = good.model().unwrap().clone();
        let mut emptied = model.clone();
        emptied.branch_sets[2] = vec![];
        assert_eq!(
            verify_minor_model(&p, &k(5), &emptied),
            Err(ModelDefect::EmptyBranchSet(2))
        );
        let mut overlapping = model.clone();
        let steal = overlapping.branch_sets[0][0];
        overlapping.branch_sets[1].push(steal);
        overlapping.branch_sets[1].sort_unstable();
        assert!(matches!(
            verify_minor_model(&p, &k(5), &overlapping),
            Err(ModelDefect::Overlap(_, _))
        ));
        let mut unwitnessed = model.clone();
        unwitnessed.witnesses.remove(&(0, 1));
        assert_eq!(
            verify_minor_model(&p, &k(5), &unwitnessed),
            Err(ModelDefect::MissingWitness(0, 1))
        );
    }

    #[test]
    fn k7_contains_k6() {
        let out = has_minor(&k(7), &k(6), DEFAULT_BUDGET);
        let model = out.model().expect("K7 has a K6 minor");
        assert!(verify_minor_model(&k(7), &k(6), model).is_ok());
    }

    #[test]
    fn k5_has_no_k6() {
        assert!(has_minor(&k(5), &k(6), DEFAULT_BUDGET).is_absent());
    }

    #[test]
    fn petersen_has_no_k6() {
        let p = fixtures::petersen();
        assert!(has_minor(&p, &k(6), DEFAULT_BUDGET).is_absent());
        assert!(brute_force_minor_oracle(&p, &k(6)).unwrap().is_none());
    }

    #[test]
    fn c6_contracts_to_triangle() {
        let c6 = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let model = brute_force_minor_oracle(&c6, &k(3)).unwrap().expect("C6 has K3 minor");
        assert!(verify_minor_model(&c6, &k(3), &model).is_ok());
    }

    #[test]
    fn k33_contains_k4() {
        let k33 = SimpleGraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        let model = brute_force_minor_oracle(&k33, &k(4)).unwrap().expect("K33 has K4 minor");
        assert!(verify_minor_model(&k33, &k(4), &model).is_ok());
    }

    #[test]
    fn oracle_matches_search_small() {
        // all graphs on exactly 5 vertices, via bitmask enumeration
        for mask in 0u32..1 << 10 {
            let mut g = SimpleGraph::new(5);
            let mut bit = 0;
            for u in 0..5 {
                for v in (u + 1)..5 {
                    if mask >> bit & 1 == 1 {
                        g.add_edge(u, v);
                    }
                    bit += 1;
                }
            }
            let oracle = brute_force_minor_oracle(&g, &k(4)).unwrap().is_some();
            let search = !has_minor(&g, &k(4), DEFAULT_BUDGET).is_absent();
            assert_eq!(oracle, search, "disagreement on mask {mask}");
        }
    }

    #[test]
    fn search_size_prunes() {
        assert!(has_minor(&k(3), &k(4), DEFAULT_BUDGET).is_absent());
    }

    #[test]
    fn apex_graphs_have_no_k6() {
        for seed in 0..20u64 {
            let n = 12 + (seed as usize * 7) % 19; // sizes spread over 12..30
            let g = fixtures::apex_graph(n, seed);
            assert!(has_minor(&g, &k(6), DEFAULT_BUDGET).is_absent(), "n={n} seed={seed}");
        }
    }

    #[test]
    fn propagate_unused_y() {
        // K7 with a triangle starred: model avoiding y propagates unchanged
        let g = k(7);
        let g2 = delta_to_wye(&g, (0, 1, 2)).unwrap();
        // find K6 model in g2 not using y = 7: delete row 7 mentally by
        // searching in the subgraph; simplest: search g2 and check both cases
        let out = has_minor(&g2, &k(6), DEFAULT_BUDGET);
        let model = out.model().expect("starred K7 keeps a K6 minor");
        let record = DeltaWyeRecord { triangle: (0, 1, 2), y: 7 };
        let back = propagate_model_through_delta_wye(&g, &g2, &k(6), model, record).unwrap();
        assert!(verify_minor_model(&g, &k(6), &back).is_ok());
    }

    #[test]
    fn propagate_interior_y() {
        // force y into a branch set: take K6, star a triangle, and use the
        // unique K5-model structure of the result
        let g = k(6);
        let g2 = delta_to_wye(&g, (0, 1, 2)).unwrap();
        let out = has_minor(&g2, &k(5), DEFAULT_BUDGET);
        let model = out.model().unwrap();
        let record = DeltaWyeRecord { triangle: (0, 1, 2), y: 6 };
        let back = propagate_model_through_delta_wye(&g, &g2, &k(5), model, record).unwrap();
        assert!(verify_minor_model(&g, &k(5), &back).is_ok());
    }

    #[test]
    fn propagate_rejects_bad_record() {
        let g = k(6);
        let g2 = delta_to_wye(&g, (0, 1, 2)).unwrap();
        let out = has_minor(&g2, &k(5), DEFAULT_BUDGET);
        let model = out.model().unwrap();
        let bad = DeltaWyeRecord { triangle: (0, 1, 3), y: 6 };
        assert!(matches!(
            propagate_model_through_delta_wye(&g, &g2, &k(5), model, bad),
            Err(Error::BadTransformation(_))
        ));
    }

    #[test]
    fn budget_reports_unknown() {
        let g = fixtures::toroidal_grid(5, 5).to_simple_graph();
        match has_minor(&g, &k(6), 10) {
            SearchOutcome::Unknown => {}
            other => panic!("tiny budget should exhaust, got {other:?}"),
        }
    }
}
