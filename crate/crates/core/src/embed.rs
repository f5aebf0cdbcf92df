//! Combinatorial embeddings: rotation systems with edge signatures, facial
//! walk tracing and surface parameters.
//!
//! An embedding of a graph is a cyclic order of darts around every vertex
//! plus a sign in {+1,-1} per edge. Every such pair describes a 2-cell
//! embedding of the graph in a unique closed surface; the surface is
//! recovered by tracing facial walks and applying Euler's formula.

use crate::{Error, Result};

/// Dart identifier. Edge `e` owns darts `2e` (origin `edges[e].0`) and
/// `2e + 1` (origin `edges[e].1`).
pub type Dart = usize;

/// A flag is a dart together with a traversal orientation: `2d` carries
/// orientation +1 and `2d + 1` orientation -1.
pub type Flag = usize;

#[inline]
pub fn flag(dart: Dart, sigma: i8) -> Flag {
    dart * 2 + (sigma < 0) as usize
}

#[inline]
pub fn flag_dart(f: Flag) -> Dart {
    f / 2
}

#[inline]
pub fn flag_sigma(f: Flag) -> i8 {
    if f % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Graph embedded in a surface. Immutable; surgeries build fresh values.
#[derive(Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    pub(crate) n: usize,
    pub(crate) edges: Vec<(usize, usize)>,
    pub(crate) sign: Vec<i8>,
    /// per-vertex cyclic order of darts with that origin
    pub(crate) rot: Vec<Vec<Dart>>,
    /// position of each dart in its origin rotation
    pub(crate) pos: Vec<usize>,
}

impl std::fmt::Debug for EmbeddedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EmbeddedGraph(n={}, m={})", self.n, self.edges.len())
    }
}

impl EmbeddedGraph {
    /// Build a validated embedding. `rotations[v]` lists the edges incident
    /// to `v` in cyclic order; signs are +1 or -1 per edge. Malformed input
    /// is rejected, never repaired.
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        sign: Vec<i8>,
        rotations: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if sign.len() != edges.len() {
            return Err(Error::InvalidEmbedding(format!(
                "{} signs for {} edges",
                sign.len(),
                edges.len()
            )));
        }
        for (i, s) in sign.iter().enumerate() {
            if *s != 1 && *s != -1 {
                return Err(Error::InvalidEmbedding(format!("sign of edge {i} is not +1/-1")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidEmbedding(format!("edge {i} endpoint out of range")));
            }
            if u == v {
                return Err(Error::InvalidEmbedding(format!("edge {i} is a loop")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidEmbedding(format!("duplicate edge {u}-{v}")));
            }
        }
        if rotations.len() != n {
            return Err(Error::InvalidEmbedding(format!("{} rotations for {n} vertices", rotations.len())));
        }
        // convert per-vertex edge lists to dart lists
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n];
        for (v, edge_list) in rotations.iter().enumerate() {
            for &e in edge_list {
                if e >= edges.len() {
                    return Err(Error::InvalidEmbedding(format!("rotation at {v} mentions unknown edge {e}")));
                }
                let (a, b) = edges[e];
                let dart = if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(Error::InvalidEmbedding(format!(
                        "rotation at {v} mentions non-incident edge {e}"
                    )));
                };
                rot[v].push(dart);
            }
        }
        let g = Self::from_darts(n, edges, sign, rot)?;
        g.require_simple()?;
        Ok(g)
    }

    /// Internal constructor from dart rotations. Validates dart structure but
    /// permits parallel edges and loops (surgery may create them transiently).
    pub(crate) fn from_darts(
        n: usize,
        edges: Vec<(usize, usize)>,
        sign: Vec<i8>,
        rot: Vec<Vec<Dart>>,
    ) -> Result<Self> {
        let nd = 2 * edges.len();
        let mut pos = vec![usize::MAX; nd];
        for (v, darts) in rot.iter().enumerate() {
            for (i, &d) in darts.iter().enumerate() {
                if d >= nd {
                    return Err(Error::InvalidEmbedding(format!("rotation at {v} has unknown dart {d}")));
                }
                let e = d / 2;
                let origin = if d % 2 == 0 { edges[e].0 } else { edges[e].1 };
                if origin != v {
                    return Err(Error::InvalidEmbedding(format!(
                        "rotation at {v} contains dart {d} with origin {origin}"
                    )));
                }
                if pos[d] != usize::MAX {
                    return Err(Error::InvalidEmbedding(format!("dart {d} appears twice")));
                }
                pos[d] = i;
            }
        }
        if let Some(d) = pos.iter().position(|&p| p == usize::MAX) {
            let e = d / 2;
            let origin = if d % 2 == 0 { edges[e].0 } else { edges[e].1 };
            return Err(Error::InvalidEmbedding(format!(
                "incomplete rotation at vertex {origin}: missing edge {e}"
            )));
        }
        Ok(EmbeddedGraph { n, edges, sign, rot, pos })
    }

    fn require_simple(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &self.edges {
            if u == v {
                return Err(Error::InvalidEmbedding("loop edge".into()));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidEmbedding("parallel edges".into()));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.sign[e]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> usize {
        d / 2
    }

    #[inline]
    pub fn twin(&self, d: Dart) -> Dart {
        d ^ 1
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> usize {
        let (u, v) = self.edges[d / 2];
        if d % 2 == 0 {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.origin(d ^ 1)
    }

    /// The dart of edge `{u, v}` with origin `u`, if the edge exists.
    pub fn dart_from(&self, u: usize, v: usize) -> Option<Dart> {
        self.rot[u].iter().copied().find(|&d| self.head(d) == v)
    }

    pub fn next_at_origin(&self, d: Dart) -> Dart {
        let v = self.origin(d);
        let p = self.pos[d];
        self.rot[v][(p + 1) % self.rot[v].len()]
    }

    pub fn prev_at_origin(&self, d: Dart) -> Dart {
        let v = self.origin(d);
        let p = self.pos[d];
        let len = self.rot[v].len();
        self.rot[v][(p + len - 1) % len]
    }

    /// Face-tracing successor on flags.
    pub fn face_next(&self, f: Flag) -> Flag {
        let d = flag_dart(f);
        let sigma = flag_sigma(f) * self.sign[d / 2];
        let t = d ^ 1;
        let next = if sigma > 0 { self.next_at_origin(t) } else { self.prev_at_origin(t) };
        flag(next, sigma)
    }

    /// The flag that starts the reverse traversal of the same face.
    pub fn mate(&self, f: Flag) -> Flag {
        let d = flag_dart(f);
        let sigma = flag_sigma(f) * self.sign[d / 2];
        flag(d ^ 1, -sigma)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Split into connected components; each comes with the list of original
    /// vertex ids, indexed by new vertex id.
    pub fn split_components(&self) -> Vec<(EmbeddedGraph, Vec<usize>)> {
        let mut comp = vec![usize::MAX; self.n];
        let mut ncomp = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = ncomp;
            while let Some(v) = stack.pop() {
                for &d in &self.rot[v] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        let mut out = Vec::new();
        for c in 0..ncomp {
            let verts: Vec<usize> = (0..self.n).filter(|&v| comp[v] == c).collect();
            let mut new_id = vec![usize::MAX; self.n];
            for (i, &v) in verts.iter().enumerate() {
                new_id[v] = i;
            }
            let edge_ids: Vec<usize> =
                (0..self.edges.len()).filter(|&e| comp[self.edges[e].0] == c).collect();
            let mut new_eid = vec![usize::MAX; self.edges.len()];
            for (i, &e) in edge_ids.iter().enumerate() {
                new_eid[e] = i;
            }
            let edges: Vec<(usize, usize)> =
                edge_ids.iter().map(|&e| (new_id[self.edges[e].0], new_id[self.edges[e].1])).collect();
            let sign: Vec<i8> = edge_ids.iter().map(|&e| self.sign[e]).collect();
            let rot: Vec<Vec<Dart>> = verts
                .iter()
                .map(|&v| self.rot[v].iter().map(|&d| 2 * new_eid[d / 2] + d % 2).collect())
                .collect();
            let g = EmbeddedGraph::from_darts(verts.len(), edges, sign, rot).expect("component split");
            out.push((g, verts));
        }
        out
    }

    /// Underlying abstract graph (requires at most 64 vertices).
    pub fn to_simple_graph(&self) -> crate::graph::SimpleGraph {
        let mut g = crate::graph::SimpleGraph::new(self.n);
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }
}

/// One facial walk: a cyclic sequence of flags. The vertex at step `i` is the
/// origin of the step's dart; the walk's corner sequence pairs each step with
/// a rotation sector at that vertex.
#[derive(Clone, Debug)]
pub struct FacialWalk {
    pub steps: Vec<Flag>,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn darts<'a>(&'a self) -> impl Iterator<Item = Dart> + 'a {
        self.steps.iter().map(|&f| flag_dart(f))
    }

    pub fn vertices<'a>(&'a self, g: &'a EmbeddedGraph) -> impl Iterator<Item = usize> + 'a {
        self.steps.iter().map(move |&f| g.origin(flag_dart(f)))
    }

    pub fn edge_set(&self) -> std::collections::BTreeSet<usize> {
        self.darts().map(|d| d / 2).collect()
    }

    pub fn vertex_set(&self, g: &EmbeddedGraph) -> std::collections::BTreeSet<usize> {
        self.vertices(g).collect()
    }
}

/// The full face structure of an embedding.
#[derive(Clone, Debug)]
pub struct Faces {
    pub walks: Vec<FacialWalk>,
    /// face id of every flag (both traversal orientations)
    pub face_of_flag: Vec<usize>,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.walks.len()
    }

    pub fn face_of_dart(&self, d: Dart, sigma: i8) -> usize {
        self.face_of_flag[flag(d, sigma)]
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.walks.iter().map(|w| w.len()).collect();
        v.sort_unstable();
        v
    }
}

/// Surface identified by Euler genus and orientability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceDescriptor {
    pub euler_genus: usize,
    pub orientable: bool,
    pub components: usize,
}

impl SurfaceDescriptor {
    pub fn is_sphere(&self) -> bool {
        self.euler_genus == 0
    }
}

/// Trace all facial walks. Every flag class {flag, mate} is used exactly
/// once across the walks; the total walk length is 2|E|. Faces are numbered
/// in trace order starting from the least unused flag.
pub fn trace_facial_walks(g: &EmbeddedGraph) -> Faces {
    let nflags = 4 * g.edges.len();
    let mut orbit_of = vec![usize::MAX; nflags];
    let mut orbits: Vec<Vec<Flag>> = Vec::new();
    for start in 0..nflags {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut walk = Vec::new();
        let mut f = start;
        loop {
            orbit_of[f] = id;
            walk.push(f);
            f = g.face_next(f);
            if f == start {
                break;
            }
        }
        orbits.push(walk);
    }
    // pair each orbit with its reverse traversal; one face per pair
    let mut face_of_orbit = vec![usize::MAX; orbits.len()];
    let mut walks = Vec::new();
    for (i, orbit) in orbits.iter().enumerate() {
        if face_of_orbit[i] != usize::MAX {
            continue;
        }
        let mate_orbit = orbit_of[g.mate(orbit[0])];
        debug_assert_ne!(mate_orbit, i, "face orbit equals its own reversal");
        let id = walks.len();
        face_of_orbit[i] = id;
        face_of_orbit[mate_orbit] = id;
        walks.push(FacialWalk { steps: orbit.clone() });
    }
    let face_of_flag: Vec<usize> = orbit_of.iter().map(|&o| face_of_orbit[o]).collect();
    debug_assert_eq!(walks.iter().map(|w| w.len()).sum::<usize>(), 2 * g.edges.len());
    Faces { walks, face_of_flag }
}

/// Rotation sector of the corner traversed at step `i` of a walk: the corner
/// lies at the origin of the step's dart, between rotation positions
/// `sector` and `sector + 1`.
pub fn corner_sector(g: &EmbeddedGraph, walk: &FacialWalk, i: usize) -> (usize, usize) {
    let f = walk.steps[i];
    let d = flag_dart(f);
    let v = g.origin(d);
    let deg = g.rot[v].len();
    let p = g.pos[d];
    let sector = if flag_sigma(f) > 0 { (p + deg - 1) % deg } else { p };
    (v, sector)
}

/// Euler genus and orientability; rejects disconnected input.
pub fn surface(g: &EmbeddedGraph) -> Result<SurfaceDescriptor> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let faces = trace_facial_walks(g);
    surface_from_face_count(g, faces.count())
}

pub(crate) fn surface_from_face_count(g: &EmbeddedGraph, f: usize) -> Result<SurfaceDescriptor> {
    let chi = g.n as i64 - g.edges.len() as i64 + f as i64;
    let eg = 2 - chi;
    debug_assert!(eg >= 0, "euler genus must be non-negative");
    Ok(SurfaceDescriptor {
        euler_genus: eg as usize,
        orientable: is_orientable(g),
        components: 1,
    })
}

/// An embedding is orientable iff local orientations can be chosen making
/// all signs +1. Checked by propagating flips over a spanning tree.
pub fn is_orientable(g: &EmbeddedGraph) -> bool {
    let mut flip: Vec<i8> = vec![0; g.n];
    for root in 0..g.n {
        if flip[root] != 0 {
            continue;
        }
        flip[root] = 1;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &d in &g.rot[v] {
                let w = g.head(d);
                let want = flip[v] * g.sign[d / 2];
                if flip[w] == 0 {
                    flip[w] = want;
                    stack.push(w);
                } else if flip[w] != want {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-sign the embedding so that every spanning-tree edge carries +1,
/// reversing rotations where a local orientation flips. The facial structure
/// is unchanged; the embedding is orientable iff all output signs are +1.
pub fn normalize_signature(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut flip: Vec<i8> = vec![0; g.n];
    flip[0] = 1;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &d in &g.rot[v] {
            let w = g.head(d);
            if flip[w] == 0 {
                flip[w] = flip[v] * g.sign[d / 2];
                queue.push_back(w);
            }
        }
    }
    Ok(apply_flips(g, &flip))
}

/// Flip the local orientation at every vertex with `flip[v] == -1`.
pub(crate) fn apply_flips(g: &EmbeddedGraph, flip: &[i8]) -> EmbeddedGraph {
    let sign: Vec<i8> =
        (0..g.edges.len()).map(|e| g.sign[e] * flip[g.edges[e].0] * flip[g.edges[e].1]).collect();
    let rot: Vec<Vec<Dart>> = (0..g.n)
        .map(|v| {
            if flip[v] < 0 {
                g.rot[v].iter().rev().copied().collect()
            } else {
                g.rot[v].clone()
            }
        })
        .collect();
    EmbeddedGraph::from_darts(g.n, g.edges.clone(), sign, rot).expect("flip preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_in_sphere() {
        let g = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, 1],
            vec![vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap();
        let faces = trace_facial_walks(&g);
        assert_eq!(faces.count(), 2);
        let s = surface(&g).unwrap();
        assert_eq!(s.euler_genus, 0);
        assert!(s.orientable);
    }

    #[test]
    fn incomplete_rotation_rejected() {
        let err = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, 1],
            vec![vec![0, 2], vec![1], vec![2, 1]],
        )
        .unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("incomplete rotation"), "{msg}");
    }

    #[test]
    fn non_incident_rotation_rejected() {
        let err = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, 1],
            vec![vec![0, 1], vec![1, 0], vec![2, 1]],
        )
        .unwrap_err();
        assert!(format!("{err}").contains("non-incident"));
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        assert!(EmbeddedGraph::new(2, vec![(0, 0)], vec![1], vec![vec![0, 0], vec![]]).is_err());
        assert!(EmbeddedGraph::new(
            2,
            vec![(0, 1), (1, 0)],
            vec![1, 1],
            vec![vec![0, 1], vec![0, 1]]
        )
        .is_err());
    }

    #[test]
    fn bad_sign_rejected() {
        assert!(EmbeddedGraph::new(2, vec![(0, 1)], vec![2], vec![vec![0], vec![0]]).is_err());
    }

    #[test]
    fn single_edge_one_face_of_length_two() {
        let g = EmbeddedGraph::new(2, vec![(0, 1)], vec![1], vec![vec![0], vec![0]]).unwrap();
        let faces = trace_facial_walks(&g);
        assert_eq!(faces.count(), 1);
        assert_eq!(faces.walks[0].len(), 2);
        assert_eq!(surface(&g).unwrap().euler_genus, 0);
    }

    #[test]
    fn cube_has_six_quads() {
        let g = fixtures::cube();
        let faces = trace_facial_walks(&g);
        assert_eq!(faces.count(), 6);
        assert!(faces.walks.iter().all(|w| w.len() == 4));
        let s = surface(&g).unwrap();
        assert_eq!(s.euler_genus, 0);
        assert!(s.orientable);
    }

    #[test]
    fn triangle_on_projective_plane() {
        // one negative edge makes the triangle one-sided: single hexagonal face
        let g = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, -1],
            vec![vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap();
        let faces = trace_facial_walks(&g);
        assert_eq!(faces.count(), 1);
        assert_eq!(faces.walks[0].len(), 6);
        let s = surface(&g).unwrap();
        assert_eq!(s.euler_genus, 1);
        assert!(!s.orientable);
    }

    #[test]
    fn toroidal_grid_surface() {
        let g = fixtures::toroidal_grid(7, 7);
        let s = surface(&g).unwrap();
        assert_eq!(s.euler_genus, 2);
        assert!(s.orientable);
        let faces = trace_facial_walks(&g);
        assert_eq!(faces.count(), 49);
        assert!(faces.walks.iter().all(|w| w.len() == 4));
    }

    #[test]
    fn normalization_is_equivalence() {
        // scatter signs on an orientable grid by random vertex flips; the
        // normalized embedding must be all-positive with the same face sizes
        let g = fixtures::toroidal_grid(4, 5);
        let before = trace_facial_walks(&g).degree_multiset();
        let mut flip = vec![1i8; g.vertex_count()];
        for v in [1usize, 3, 4, 7, 12, 13, 19] {
            flip[v] = -1;
        }
        let scattered = apply_flips(&g, &flip);
        assert!(scattered.sign.iter().any(|&s| s < 0));
        assert_eq!(trace_facial_walks(&scattered).degree_multiset(), before);
        let normalized = normalize_signature(&scattered).unwrap();
        assert!(normalized.sign.iter().all(|&s| s == 1));
        assert_eq!(trace_facial_walks(&normalized).degree_multiset(), before);
    }

    #[test]
    fn normalization_keeps_projective_negative() {
        let g = fixtures::k6_projective();
        let normalized = normalize_signature(&g).unwrap();
        assert!(normalized.sign.iter().any(|&s| s < 0));
        assert_eq!(
            trace_facial_walks(&normalized).degree_multiset(),
            trace_facial_walks(&g).degree_multiset()
        );
    }

    #[test]
    fn dart_conservation() {
        for g in [fixtures::cube(), fixtures::toroidal_grid(3, 4), fixtures::k6_projective()] {
            let faces = trace_facial_walks(&g);
            let total: usize = faces.walks.iter().map(|w| w.len()).sum();
            assert_eq!(total, 2 * g.edge_count());
            // every flag class used exactly once
            let mut used = vec![0u8; 4 * g.edge_count()];
            for w in &faces.walks {
                for &f in &w.steps {
                    used[f] += 1;
                    used[g.mate(f)] += 1;
                }
            }
            assert!(used.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn corner_sectors_partition() {
        for g in [fixtures::cube(), fixtures::k6_projective()] {
            let faces = trace_facial_walks(&g);
            let mut seen = std::collections::HashSet::new();
            for w in &faces.walks {
                for i in 0..w.len() {
                    assert!(seen.insert(corner_sector(&g, w, i)), "sector traversed twice");
                }
            }
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            assert_eq!(seen.len(), total);
        }
    }
}
