//! Planarity testing by the face-based incremental method (Demoucron,
//! Malgrange, Pertuiset) over biconnected blocks. Used as a sound pruning
//! rule in minor search: minors of planar graphs are planar.

use crate::graph::{BitIter, SimpleGraph};

pub fn is_planar(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n.saturating_sub(2) {
        // even disconnected graphs obey sum of 3n_i - 6 <= 3n - 6
        return false;
    }
    for block in blocks(g) {
        if !dmp_planar(&block) {
            return false;
        }
    }
    true
}

/// Biconnected blocks with at least three vertices, each relabeled onto
/// 0..k. Bridges and isolated vertices are always planar and skipped.
fn blocks(g: &SimpleGraph) -> Vec<SimpleGraph> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    // iterative DFS with explicit frames: (vertex, parent, neighbor cursor)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize, Vec<usize>, usize)> =
            vec![(root, usize::MAX, g.neighbors(root).collect(), 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(frame) = frames.last_mut() {
            let (v, parent, nbrs, idx) = (frame.0, frame.1, frame.2.clone(), frame.3);
            if idx < nbrs.len() {
                frame.3 += 1;
                let w = nbrs[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, v, g.neighbors(w).collect(), 0));
                } else if disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(pframe) = frames.last_mut() {
                    let p = pframe.0;
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        // pop one block
                        let mut edges = Vec::new();
                        while let Some(&(a, b)) = stack.last() {
                            if disc[a] >= disc[v] || (a == p && b == v) {
                                edges.push((a, b));
                                stack.pop();
                                if a == p && b == v {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if edges.len() >= 3 {
                            out.push(relabel_block(&edges));
                        }
                    }
                }
            }
        }
    }
    out
}

fn relabel_block(edges: &[(usize, usize)]) -> SimpleGraph {
    let mut ids = std::collections::BTreeMap::new();
    for &(a, b) in edges {
        let next = ids.len();
        ids.entry(a).or_insert(next);
        let next = ids.len();
        ids.entry(b).or_insert(next);
    }
    let mut g = SimpleGraph::new(ids.len());
    for &(a, b) in edges {
        g.add_edge(ids[&a], ids[&b]);
    }
    g
}

/// Planarity of a biconnected graph: grow an embedded subgraph face by face,
/// always embedding a bridge with the fewest admissible faces.
fn dmp_planar(g: &SimpleGraph) -> bool {
    let n = g.vertex_count();
    if n <= 4 {
        return true;
    }
    if g.edge_count() > 3 * n - 6 {
        return false;
    }
    // initial cycle
    let cycle = find_cycle(g);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut in_h = vec![false; n];
    for &v in &cycle {
        in_h[v] = true;
    }
    let mut embedded = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded.insert((a.min(b), a.max(b)));
    }
    let total_edges = g.edge_count();
    while embedded.len() < total_edges {
        // bridges: components of G - V(H) with their attachments, plus
        // unembedded chords between H-vertices
        let mut bridges: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (component, attachments)
        let mut seen = vec![false; n];
        for s in 0..n {
            if in_h[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut attach = std::collections::BTreeSet::new();
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v) {
                    if in_h[w] {
                        attach.insert(w);
                    } else if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            bridges.push((comp, attach.into_iter().collect()));
        }
        for u in 0..n {
            if !in_h[u] {
                continue;
            }
            for w in g.neighbors(u) {
                if w > u && in_h[w] && !embedded.contains(&(u, w)) {
                    bridges.push((Vec::new(), vec![u, w]));
                }
            }
        }
        // admissible faces per bridge
        let mut best: Option<(usize, usize, Vec<usize>)> = None; // (count, bridge idx, admissible)
        for (bi, (_, attach)) in bridges.iter().enumerate() {
            let adm: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| attach.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if adm.is_empty() {
                return false;
            }
            if best.as_ref().map_or(true, |(c, _, _)| adm.len() < *c) {
                best = Some((adm.len(), bi, adm));
            }
        }
        let (_, bi, adm) = best.expect("unembedded edges imply a bridge");
        let (comp, attach) = &bridges[bi];
        // a path between two attachments through the bridge
        let path: Vec<usize> = if comp.is_empty() {
            vec![attach[0], attach[1]]
        } else {
            bridge_path(g, comp, attach)
        };
        // embed the path into the chosen face, splitting it in two
        let face = faces.swap_remove(adm[0]);
        let a = *path.first().unwrap();
        let b = *path.last().unwrap();
        let pa = face.iter().position(|&v| v == a).unwrap();
        let pb = face.iter().position(|&v| v == b).unwrap();
        let len = face.len();
        let mut f1 = Vec::new(); // a .. b along the face, then path reversed
        let mut i = pa;
        while i != pb {
            f1.push(face[i]);
            i = (i + 1) % len;
        }
        f1.push(face[pb]);
        for &v in path.iter().rev().skip(1).take(path.len().saturating_sub(2)) {
            f1.push(v);
        }
        let mut f2 = Vec::new(); // b .. a along the face, then path forward
        let mut i = pb;
        while i != pa {
            f2.push(face[i]);
            i = (i + 1) % len;
        }
        f2.push(face[pa]);
        for &v in path.iter().skip(1).take(path.len().saturating_sub(2)) {
            f2.push(v);
        }
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
    }
    true
}

fn find_cycle(g: &SimpleGraph) -> Vec<usize> {
    // walk never revisiting the predecessor until a vertex repeats
    let mut path = vec![0usize];
    let mut prev = usize::MAX;
    let mut pos = vec![usize::MAX; g.vertex_count()];
    pos[0] = 0;
    loop {
        let v = *path.last().unwrap();
        let next = g
            .neighbors(v)
            .find(|&w| w != prev)
            .expect("biconnected graph has min degree 2");
        if pos[next] != usize::MAX {
            return path[pos[next]..].to_vec();
        }
        prev = v;
        pos[next] = path.len();
        path.push(next);
    }
}

fn bridge_path(g: &SimpleGraph, comp: &[usize], attach: &[usize]) -> Vec<usize> {
    // BFS from one attachment through the component to another attachment
    let a = attach[0];
    let in_comp: u64 = comp.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for w in BitIter(g.row(a) & in_comp) {
        if parent[w] == usize::MAX {
            parent[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if w != a && attach.contains(&w) {
                // found the far end
                let mut path = vec![w, v];
                let mut x = v;
                while parent[x] != a {
                    x = parent[x];
                    path.push(x);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if in_comp >> w & 1 == 1 && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("bridge of a biconnected graph has two attachments");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::SimpleGraph;

    #[test]
    fn known_cases() {
        assert!(is_planar(&SimpleGraph::complete(4)));
        assert!(!is_planar(&SimpleGraph::complete(5)));
        let k33 = SimpleGraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert!(!is_planar(&k33));
        assert!(is_planar(&fixtures::cube().to_simple_graph()));
        assert!(!is_planar(&fixtures::petersen()));
        // petersen minus a vertex still violates the girth-5 edge bound
        assert!(!is_planar(&fixtures::petersen().remove_vertex(0)));
        let mut k5_minus = SimpleGraph::complete(5);
        k5_minus.remove_edge(0, 1);
        assert!(is_planar(&k5_minus));
        assert!(!is_planar(&fixtures::toroidal_grid(4, 4).to_simple_graph()));
    }

    #[test]
    fn apex_parts_are_planar() {
        for seed in 0..10 {
            let g = fixtures::apex_graph(17, seed);
            let apexless = g.remove_vertex(16);
            assert!(is_planar(&apexless), "seed {seed}");
            assert!(!is_planar(&SimpleGraph::complete(6)));
        }
    }

    #[test]
    fn wagner_cross_check() {
        // planar iff no K5 and no K3,3 minor; checked against the
        // independent brute-force minor oracle on random small graphs
        let k5 = SimpleGraph::complete(5);
        let k33 = SimpleGraph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        let mut state = 0x12345678u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..60 {
            let n = 6 + (next() % 3) as usize;
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if next() % 100 < 45 {
                        g.add_edge(u, v);
                    }
                }
            }
            let planar = is_planar(&g);
            let wagner = crate::minors::brute_force_minor_oracle(&g, &k5).unwrap().is_none()
                && crate::minors::brute_force_minor_oracle(&g, &k33).unwrap().is_none();
            assert_eq!(planar, wagner, "trial {trial} on {g:?}");
        }
    }
}
