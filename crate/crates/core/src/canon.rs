//! Canonical forms for simple graphs by color refinement with
//! individualization and backtracking. Two graphs have equal canonical byte
//! strings iff they are isomorphic.

use crate::graph::{BitIter, SimpleGraph, MAX_VERTICES};
use crate::{Error, Result};

/// Byte string identifying an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Canonical form of `g`.
pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalForm> {
    Ok(canonical_labeling(g)?.0)
}

/// Canonical form together with a permutation realizing it: vertex `v` of `g`
/// maps to position `perm[v]` in the canonical graph.
pub fn canonical_labeling(g: &SimpleGraph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::SizeCap(format!("canonical form capped at {MAX_VERTICES} vertices")));
    }
    if n == 0 {
        return Ok((CanonicalForm(vec![0]), Vec::new()));
    }
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let initial: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let coloring = refine(g, dense(&initial));
    descend(g, coloring, &mut best);
    let (key, perm) = best.unwrap();
    Ok((CanonicalForm(key), perm))
}

/// The canonical representative graph itself.
pub fn canonical_graph(g: &SimpleGraph) -> Result<SimpleGraph> {
    let (_, perm) = canonical_labeling(g)?;
    Ok(g.relabel(&perm))
}

/// An explicit isomorphism from `a` to `b`, if one exists: vertex `v` of `a`
/// maps to `iso[v]` in `b`.
pub fn isomorphism(a: &SimpleGraph, b: &SimpleGraph) -> Result<Option<Vec<usize>>> {
    if a.vertex_count() != b.vertex_count() {
        return Ok(None);
    }
    let (ka, pa) = canonical_labeling(a)?;
    let (kb, pb) = canonical_labeling(b)?;
    if ka != kb {
        return Ok(None);
    }
    // v -> pa[v] -> pb^{-1}(pa[v])
    let n = a.vertex_count();
    let mut pb_inv = vec![0usize; n];
    for (v, &p) in pb.iter().enumerate() {
        pb_inv[p] = v;
    }
    let iso: Vec<usize> = (0..n).map(|v| pb_inv[pa[v]]).collect();
    debug_assert!(a.edges().iter().all(|&(u, v)| b.has_edge(iso[u], iso[v])));
    Ok(Some(iso))
}

fn descend(g: &SimpleGraph, coloring: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    match first_nonsingleton_cell(&coloring) {
        None => {
            // discrete: coloring is a permutation
            let key = g.relabel(&coloring).adjacency_key();
            let better = match best {
                None => true,
                Some((k, _)) => key > *k,
            };
            if better {
                *best = Some((key, coloring));
            }
        }
        Some(cell) => {
            for v in cell {
                let mut c = coloring.clone();
                // individualize v: give it a color just below its cell
                for u in 0..c.len() {
                    if c[u] >= c[v] && u != v {
                        c[u] += 1;
                    }
                }
                let refined = refine(g, dense(&c));
                descend(g, refined, best);
            }
        }
    }
}

fn first_nonsingleton_cell(coloring: &[usize]) -> Option<Vec<usize>> {
    let n = coloring.len();
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, &c) in coloring.iter().enumerate() {
        by_color[c].push(v);
    }
    let mut smallest: Option<&Vec<usize>> = None;
    for cell in by_color.iter().filter(|c| c.len() > 1) {
        match smallest {
            Some(s) if s.len() <= cell.len() => {}
            _ => smallest = Some(cell),
        }
    }
    smallest.cloned()
}

/// Renumber colors to dense 0..k preserving order.
fn dense(coloring: &[usize]) -> Vec<usize> {
    let mut values: Vec<usize> = coloring.to_vec();
    values.sort_unstable();
    values.dedup();
    coloring.iter().map(|c| values.binary_search(c).unwrap()).collect()
}

/// Equitable refinement: split cells by neighbor color counts until stable.
fn refine(g: &SimpleGraph, mut coloring: Vec<usize>) -> Vec<usize> {
    let n = g.vertex_count();
    loop {
        let ncolors = coloring.iter().max().map(|&c| c + 1).unwrap_or(0);
        // signature of v: (color, counts of neighbor colors)
        let mut sigs: Vec<(usize, Vec<u8>, usize)> = (0..n)
            .map(|v| {
                let mut counts = vec![0u8; ncolors];
                for u in BitIter(g.row(v)) {
                    counts[coloring[u]] += 1;
                }
                (coloring[v], counts, v)
            })
            .collect();
        sigs.sort();
        let mut new_coloring = vec![0usize; n];
        let mut color = 0usize;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                color += 1;
            }
            new_coloring[sigs[i].2] = color;
        }
        if new_coloring == coloring {
            return coloring;
        }
        coloring = new_coloring;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic_explicit;

    #[test]
    fn relabelings_share_form() {
        let g = SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)]);
        let f = canonical_form(&g).unwrap();
        let perm = [4, 2, 0, 6, 1, 5, 3];
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(&h).unwrap(), f);
    }

    #[test]
    fn c6_differs_from_two_triangles() {
        let c6 = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let tt = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&tt).unwrap());
    }

    #[test]
    fn canonical_graph_is_isomorphic() {
        let g = SimpleGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5)]);
        let c = canonical_graph(&g).unwrap();
        assert!(isomorphic_explicit(&g, &c));
    }

    #[test]
    fn isomorphism_maps_edges() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let h = g.relabel(&[2, 4, 1, 3, 0]);
        let iso = isomorphism(&g, &h).unwrap().unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(iso[u], iso[v]));
        }
        let p5 = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(isomorphism(&g, &p5).unwrap().is_none());
    }

    #[test]
    fn agrees_with_explicit_iso_on_random_pairs() {
        // deterministic xorshift sampling of small graph pairs
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 5 + (next() % 3) as usize;
            let mut a = SimpleGraph::new(n);
            let mut b = SimpleGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if next() % 2 == 0 {
                        a.add_edge(u, v);
                    }
                    if next() % 2 == 0 {
                        b.add_edge(u, v);
                    }
                }
            }
            let same_form = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
            assert_eq!(same_form, isomorphic_explicit(&a, &b));
        }
    }
}
