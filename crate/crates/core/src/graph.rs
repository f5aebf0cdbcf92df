//! Simple undirected graphs on up to 64 vertices, stored as bitset adjacency
//! rows. This is the working representation for isomorphism, minor search and
//! ΔY/YΔ enumeration; embedded graphs live in [`crate::embed`].

use crate::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Simple graph with adjacency rows packed into `u64` bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "graph too large for bitset representation");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbors of `v` as a bitset.
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> BitIter {
        BitIter(self.adj[v])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !((1u64 << (u + 1)).wrapping_sub(1))) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// Bitset of vertices reachable from any vertex of `start`, moving only
    /// through vertices in `allowed` (start vertices need not be allowed).
    pub fn reach(&self, start: u64, allowed: u64) -> u64 {
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u64;
            for v in BitIter(frontier) {
                next |= self.adj[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// True if the vertices in `set` induce a connected subgraph. The empty
    /// set counts as disconnected.
    pub fn is_set_connected(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let start = 1u64 << set.trailing_zeros();
        self.reach(start, set) & set == set
    }

    /// All triangles `(u, v, w)` with `u < v < w`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !((1u64 << (u + 1)).wrapping_sub(1))) {
                let common = self.adj[u] & self.adj[v] & !((1u64 << (v + 1)).wrapping_sub(1));
                for w in BitIter(common) {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn has_triangle(&self) -> bool {
        for u in 0..self.n {
            for v in BitIter(self.adj[u]) {
                if v > u && self.adj[u] & self.adj[v] != 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = SimpleGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Contract edge `uv`, merging `v` into `u`, then remove `v` by swapping
    /// in the last vertex. Result is simple.
    pub fn contract_edge(&self, u: usize, v: usize) -> Self {
        assert!(self.has_edge(u, v));
        let mut g = self.clone();
        g.adj[u] |= g.adj[v];
        g.adj[u] &= !(1 << u);
        g.adj[u] &= !(1 << v);
        for w in 0..g.n {
            if g.adj[v] >> w & 1 == 1 {
                g.adj[w] &= !(1 << v);
                if w != u {
                    g.adj[w] |= 1 << u;
                }
            }
        }
        g.adj[v] = 0;
        g.remove_vertex(v)
    }

    /// Delete vertex `v`, relabeling the last vertex to `v`.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let mut g = self.clone();
        let last = g.n - 1;
        for w in 0..g.n {
            g.adj[w] &= !(1 << v);
        }
        g.adj[v] = 0;
        if v != last {
            g.adj[v] = g.adj[last];
            for w in BitIter(g.adj[last]) {
                g.adj[w] &= !(1u64 << last);
                g.adj[w] |= 1 << v;
            }
        }
        g.adj.pop();
        g.n -= 1;
        g
    }

    /// Adjacency matrix upper triangle as bits, row by row. Equal outputs iff
    /// equal labeled graphs on the same vertex count.
    pub fn adjacency_key(&self) -> Vec<u8> {
        let mut bits = Vec::with_capacity(self.n * (self.n - 1) / 2 / 8 + 2);
        bits.push(self.n as u8);
        let mut acc = 0u8;
        let mut nbits = 0;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                acc = (acc << 1) | (self.has_edge(u, v) as u8);
                nbits += 1;
                if nbits == 8 {
                    bits.push(acc);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bits.push(acc << (8 - nbits));
        }
        bits
    }
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterator over set bits of a `u64`.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

// ---------------------------------------------------------------------------
// graph6

/// Encode in graph6 format (header-less, printable ASCII).
pub fn to_graph6(g: &SimpleGraph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut bits: Vec<bool> = Vec::with_capacity(n * (n - 1) / 2);
    for v in 1..n {
        for u in 0..v {
            bits.push(g.has_edge(u, v));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for &bit in chunk {
            b = (b << 1) | (bit as u8);
        }
        out.push(b + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Decode a graph6 line.
pub fn from_graph6(s: &str) -> Result<SimpleGraph> {
    let bytes: Vec<u8> = s.trim().bytes().collect();
    let bad = |msg: &str| Error::Parse { line: 1, msg: format!("graph6: {msg}") };
    if bytes.is_empty() {
        return Err(bad("empty input"));
    }
    let (n, mut idx) = if bytes[0] == 126 {
        if bytes.len() < 4 {
            return Err(bad("truncated size"));
        }
        if bytes[1] == 126 {
            return Err(bad("graphs over 258047 vertices unsupported"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(bad("invalid size byte"));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        if !(63..=126).contains(&bytes[0]) {
            return Err(bad("invalid size byte"));
        }
        ((bytes[0] - 63) as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Error::SizeCap(format!("graph6 input has {n} vertices, cap is {MAX_VERTICES}")));
    }
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - idx < nbytes {
        return Err(bad("truncated adjacency data"));
    }
    let mut g = SimpleGraph::new(n);
    let mut bit = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[idx + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad("invalid data byte"));
            }
            if (byte - 63) >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
            if bit >= nbits {
                break 'outer;
            }
        }
    }
    idx += nbytes;
    if idx != bytes.len() {
        return Err(bad("trailing data"));
    }
    Ok(g)
}

/// Brute-force isomorphism test by permutation search with degree pruning.
/// Intended for small graphs as an independent check against canonical forms.
pub fn isomorphic_explicit(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.vertex_count();
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // map[v] = image of a-vertex v in b
    fn extend(a: &SimpleGraph, b: &SimpleGraph, map: &mut Vec<Option<usize>>, used: u64, v: usize) -> bool {
        let n = a.vertex_count();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used >> w & 1 == 1 || a.degree(v) != b.degree(w) {
                continue;
            }
            let ok = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u].unwrap(), w));
            if ok {
                map[v] = Some(w);
                if extend(a, b, map, used | 1 << w, v + 1) {
                    return true;
                }
                map[v] = None;
            }
        }
        false
    }
    let mut map = vec![None; n];
    extend(a, b, &mut map, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_connected());
        assert_eq!(g.degree(0), 2);
        assert!(!g.has_triangle());
        assert_eq!(SimpleGraph::complete(4).triangles().len(), 4);
    }

    #[test]
    fn contraction_keeps_simple() {
        let k4 = SimpleGraph::complete(4);
        let g = k4.contract_edge(0, 1);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3); // K3, parallels collapsed
    }

    #[test]
    fn c6_contracts_to_k3() {
        let c6 = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let g = c6.contract_edge(0, 1).contract_edge(0, 1);
        // after two contractions we are down to a 4-cycle; contract once more
        let g = g.contract_edge(0, 1);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn graph6_roundtrip_known() {
        // petersen-adjacent sanity: C5 encodes as "DUW" per the format spec?
        // Use a fixed small case computed by hand instead: path P4 = "Ch"? We
        // assert a round trip and a known encoding of K4.
        let k4 = SimpleGraph::complete(4);
        assert_eq!(to_graph6(&k4), "C~");
        let g = from_graph6("C~").unwrap();
        assert!(isomorphic_explicit(&g, &k4));
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~xyz").is_err());
    }

    #[test]
    fn explicit_iso_distinguishes() {
        let c6 = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let two_triangles = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!isomorphic_explicit(&c6, &two_triangles));
        let relabeled = c6.relabel(&[3, 1, 4, 0, 5, 2]);
        assert!(isomorphic_explicit(&c6, &relabeled));
    }
}
