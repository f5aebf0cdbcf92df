//! The radial graph of an embedding: the bipartite vertex-face incidence
//! graph, one edge per corner, embedded on the same surface. Radial cycles
//! of length 2k realize closed face-chains of length k, so curve
//! classification and width computations run on this structure.

use crate::embed::{corner_sector, trace_facial_walks, EmbeddedGraph, Faces};
use crate::{Error, Result};

/// Back-reference of a radial edge to its corner.
#[derive(Clone, Copy, Debug)]
pub struct CornerRef {
    /// graph vertex of the corner
    pub vertex: usize,
    /// rotation sector at the vertex: between positions sector and sector+1
    pub sector: usize,
    /// face the corner belongs to
    pub face: usize,
    /// position on the facial walk
    pub walk_pos: usize,
}

/// Radial graph with its embedding. Radial node ids: `0..g_vertex_count` are
/// the vertices of the base graph, `g_vertex_count + f` is face `f`.
#[derive(Clone, Debug)]
pub struct RadialGraph {
    pub emb: EmbeddedGraph,
    pub g_vertex_count: usize,
    pub faces: Faces,
    pub corners: Vec<CornerRef>,
}

impl RadialGraph {
    pub fn face_node(&self, f: usize) -> usize {
        self.g_vertex_count + f
    }

    pub fn is_face_node(&self, node: usize) -> bool {
        node >= self.g_vertex_count
    }

    pub fn node_count(&self) -> usize {
        self.emb.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.emb.edge_count()
    }
}

/// Build the radial graph of an embedding.
pub fn radial_graph(g: &EmbeddedGraph) -> RadialGraph {
    let faces = trace_facial_walks(g);
    let nv = g.vertex_count();
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let mut corners = Vec::new();
    // sector (v, s) -> radial edge id
    let mut sector_edge: Vec<Vec<usize>> = (0..nv).map(|v| vec![usize::MAX; g.degree(v)]).collect();
    let mut face_rot: Vec<Vec<usize>> = Vec::with_capacity(faces.count());
    for (f, walk) in faces.walks.iter().enumerate() {
        let mut rot = Vec::with_capacity(walk.len());
        for i in 0..walk.len() {
            let (v, s) = corner_sector(g, walk, i);
            let id = edges.len();
            edges.push((v, nv + f));
            sign.push(crate::embed::flag_sigma(walk.steps[i]));
            corners.push(CornerRef { vertex: v, sector: s, face: f, walk_pos: i });
            debug_assert_eq!(sector_edge[v][s], usize::MAX);
            sector_edge[v][s] = id;
            rot.push(id);
        }
        face_rot.push(rot);
    }
    let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(nv + faces.count());
    for v in 0..nv {
        // corners around v in rotation order
        rotations.push(sector_edge[v].clone());
    }
    // seen from the face's interior, corners appear in the reverse of the
    // tracing order relative to the vertex rotations
    rotations.extend(face_rot.into_iter().map(|r| r.into_iter().rev().collect::<Vec<_>>()));
    // dart-level: radial edge e = (v, face-node); dart 2e originates at v
    let rot_darts: Vec<Vec<usize>> = rotations
        .iter()
        .enumerate()
        .map(|(node, rot)| {
            rot.iter().map(|&e| if node < nv { 2 * e } else { 2 * e + 1 }).collect()
        })
        .collect();
    let emb = EmbeddedGraph::from_darts(nv + faces.count(), edges, sign, rot_darts)
        .expect("radial embedding");
    RadialGraph { emb, g_vertex_count: nv, faces, corners }
}

/// A face-chain: alternating vertices and faces
/// `x0, F0, x1, F1, ..., F_{n-1}` (closing back to `x0`), or an open chain
/// `x0, F0, ..., F_{k-1}, xk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceChain {
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
    pub closed: bool,
}

impl FaceChain {
    pub fn closed(vertices: Vec<usize>, faces: Vec<usize>) -> Self {
        assert_eq!(vertices.len(), faces.len());
        FaceChain { vertices, faces, closed: true }
    }

    pub fn open(vertices: Vec<usize>, faces: Vec<usize>) -> Self {
        assert_eq!(vertices.len(), faces.len() + 1);
        FaceChain { vertices, faces, closed: false }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `chain x0 F0 x1 F1 ... x0` serialization.
    pub fn to_line(&self) -> String {
        let mut parts = vec!["chain".to_string()];
        for i in 0..self.faces.len() {
            parts.push(self.vertices[i].to_string());
            parts.push(format!("F{}", self.faces[i]));
        }
        if self.closed {
            parts.push(self.vertices[0].to_string());
        } else {
            parts.push(self.vertices[self.faces.len()].to_string());
        }
        parts.join(" ")
    }

    /// Nice: all faces distinct and all vertices distinct.
    pub fn is_nice(&self) -> Result<bool> {
        if !self.closed {
            return Err(Error::ChainNotClosed);
        }
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut fs = self.faces.clone();
        fs.sort_unstable();
        fs.dedup();
        Ok(vs.len() == self.vertices.len() && fs.len() == self.faces.len())
    }
}

/// A cycle in the radial graph, stored as radial edge ids in traversal
/// order: edge 2i runs from node x_i into face F_i, edge 2i+1 from F_i to
/// x_{i+1}, so the cycle has even length 2k for a chain of length k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialCycle {
    pub edges: Vec<usize>,
}

impl RadialCycle {
    pub fn chain_len(&self) -> usize {
        self.edges.len() / 2
    }

    /// Decode into the face-chain it realizes.
    pub fn to_chain(&self, r: &RadialGraph) -> FaceChain {
        let mut vertices = Vec::new();
        let mut faces = Vec::new();
        for pair in self.edges.chunks(2) {
            vertices.push(r.corners[pair[0]].vertex);
            faces.push(r.corners[pair[0]].face);
            debug_assert_eq!(r.corners[pair[1]].face, r.corners[pair[0]].face);
        }
        FaceChain::closed(vertices, faces)
    }

    /// The crossing corners at vertex x_i: (incoming sector, outgoing sector).
    pub fn crossing_sectors(&self, r: &RadialGraph, i: usize) -> (usize, usize) {
        let k = self.edges.len();
        let incoming = self.edges[(2 * i + k - 1) % k];
        let outgoing = self.edges[2 * i];
        debug_assert_eq!(r.corners[incoming].vertex, r.corners[outgoing].vertex);
        (r.corners[incoming].sector, r.corners[outgoing].sector)
    }

    /// The underlying cycle in the radial embedding as a dart sequence.
    pub fn to_darts(&self, r: &RadialGraph) -> Vec<usize> {
        let mut darts = Vec::with_capacity(self.edges.len());
        for (i, &e) in self.edges.iter().enumerate() {
            // even positions leave a vertex node (dart 2e), odd leave a face node
            darts.push(if i % 2 == 0 { 2 * e } else { 2 * e + 1 });
        }
        debug_assert!(darts.iter().enumerate().all(|(i, &d)| {
            r.emb.head(d) == r.emb.origin(darts[(i + 1) % darts.len()])
        }));
        darts
    }
}

/// Realize a closed face-chain as a radial cycle. Fails if some vertex does
/// not lie on the stated face or occurs on its walk more than once (the arc
/// through the face would be ambiguous).
pub fn realize_chain(r: &RadialGraph, chain: &FaceChain) -> Result<RadialCycle> {
    if !chain.closed {
        return Err(Error::ChainNotClosed);
    }
    let n = chain.len();
    let mut edges = Vec::with_capacity(2 * n);
    let find = |x: usize, f: usize| -> Result<usize> {
        let mut hits =
            (0..r.corners.len()).filter(|&e| r.corners[e].vertex == x && r.corners[e].face == f);
        let first = hits.next().ok_or_else(|| {
            Error::ChainNotRealizable(format!("vertex {x} is not on face {f}"))
        })?;
        if hits.next().is_some() {
            return Err(Error::ChainNotRealizable(format!(
                "vertex {x} occurs more than once on face {f}"
            )));
        }
        Ok(first)
    };
    for i in 0..n {
        let x = chain.vertices[i];
        let x_next = chain.vertices[(i + 1) % n];
        let f = chain.faces[i];
        edges.push(find(x, f)?);
        edges.push(find(x_next, f)?);
    }
    Ok(RadialCycle { edges })
}
