//! Surface surgery: cutting an embedding along a cycle or a face-chain and
//! capping the cuffs, edge contraction and deletion, and ΔY/YΔ
//! transformations. All operations return fresh embeddings; simplicity is
//! restored before returning whenever an operation can create parallel
//! edges.

use crate::embed::{
    apply_flips, flag_sigma, trace_facial_walks, Dart, EmbeddedGraph, Faces,
};
use crate::graph::SimpleGraph;
use crate::radial::{RadialCycle, RadialGraph};
use crate::{Error, Result};

/// One connected piece of a cut, capped: the cuff boundaries appear as
/// ordinary faces, listed in `cap_faces`.
#[derive(Clone, Debug)]
pub struct CutPiece {
    pub emb: EmbeddedGraph,
    /// original vertex behind each piece vertex
    pub orig_vertex: Vec<usize>,
    pub faces: Faces,
    pub cap_faces: Vec<usize>,
}

/// Result of cutting along a simple cycle or chain: one piece if the curve
/// was non-separating, two if separating. `vertex_copies[i]` lists the
/// (piece, vertex) copies of the i-th cut vertex.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub pieces: Vec<CutPiece>,
    pub one_sided: bool,
    pub cut_vertices: Vec<usize>,
    pub vertex_copies: Vec<Vec<(usize, usize)>>,
}

impl CutResult {
    pub fn is_separating(&self) -> bool {
        self.pieces.len() == 2
    }

    /// One `.emb` text per piece plus a `cutmap` sidecar listing the copies
    /// of every cut vertex as `copy <orig> <piece> <vertex>` lines.
    pub fn serialize(&self) -> (Vec<String>, String) {
        let embs: Vec<String> =
            self.pieces.iter().map(|p| crate::emb_io::to_emb(&p.emb)).collect();
        let mut cutmap = String::new();
        for (i, copies) in self.vertex_copies.iter().enumerate() {
            for &(piece, vertex) in copies {
                cutmap.push_str(&format!("copy {} {piece} {vertex}\n", self.cut_vertices[i]));
            }
        }
        (embs, cutmap)
    }
}

/// Turn a vertex sequence into the dart sequence of a simple cycle.
pub fn cycle_from_vertices(g: &EmbeddedGraph, verts: &[usize]) -> Result<Vec<Dart>> {
    let m = verts.len();
    if m < 1 {
        return Err(Error::NonSimpleCycle);
    }
    let mut sorted = verts.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != m {
        return Err(Error::NonSimpleCycle);
    }
    let mut darts = Vec::with_capacity(m);
    for i in 0..m {
        let d = g
            .dart_from(verts[i], verts[(i + 1) % m])
            .ok_or_else(|| Error::Precondition(format!(
                "no edge {}-{}",
                verts[i],
                verts[(i + 1) % m]
            )))?;
        darts.push(d);
    }
    Ok(darts)
}

fn check_simple_cycle(g: &EmbeddedGraph, darts: &[Dart]) -> Result<Vec<usize>> {
    let m = darts.len();
    if m == 0 {
        return Err(Error::NonSimpleCycle);
    }
    let verts: Vec<usize> = darts.iter().map(|&d| g.origin(d)).collect();
    for i in 0..m {
        if g.head(darts[i]) != verts[(i + 1) % m] {
            return Err(Error::NonSimpleCycle);
        }
    }
    let mut sorted = verts.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != m {
        return Err(Error::NonSimpleCycle);
    }
    Ok(verts)
}

/// Sign of a closed walk: -1 iff the walk's neighborhood is a Möbius band.
pub fn cycle_sign(g: &EmbeddedGraph, darts: &[Dart]) -> i8 {
    darts.iter().map(|&d| g.sign(d / 2)).product()
}

/// Cut the surface along a simple cycle of the graph and cap the cuffs.
///
/// Two-sided cycles split every cycle vertex into two copies joined by two
/// boundary cycles; a one-sided cycle yields a single boundary cycle of
/// doubled length. Capped cuffs appear as ordinary faces of the pieces.
pub fn cut_along_cycle(g: &EmbeddedGraph, cycle: &[Dart]) -> Result<CutResult> {
    let verts = check_simple_cycle(g, cycle)?;
    let m = verts.len();
    if m < 2 {
        // a single-vertex "cycle" would be a loop; simple graphs have none
        return Err(Error::NonSimpleCycle);
    }
    let one_sided = cycle_sign(g, cycle) < 0;

    // re-sign so the cycle carries +1 everywhere except, when one-sided, on
    // its last edge (the seam)
    let mut flip = vec![1i8; g.vertex_count()];
    for i in 0..m - 1 {
        let e = cycle[i] / 2;
        flip[verts[i + 1]] = flip[verts[i]] * g.sign(e);
    }
    let g = apply_flips(g, &flip);
    for (i, &d) in cycle.iter().enumerate() {
        let expect = if i + 1 == m && one_sided { -1 } else { 1 };
        debug_assert_eq!(g.sign(d / 2), expect);
    }

    let n = g.vertex_count();
    let mut on_cycle = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        on_cycle[v] = i;
    }

    // new vertex ids: two copies per cycle vertex (side 0/1), others kept
    let mut new_id = vec![usize::MAX; n];
    let mut orig_of = Vec::new();
    let mut copy = vec![[usize::MAX; 2]; m];
    for (i, &v) in verts.iter().enumerate() {
        copy[i][0] = orig_of.len();
        orig_of.push(v);
        copy[i][1] = orig_of.len();
        orig_of.push(v);
    }
    for v in 0..n {
        if on_cycle[v] == usize::MAX {
            new_id[v] = orig_of.len();
            orig_of.push(v);
        }
    }

    // side of each dart at a cycle vertex: walk the rotation from the
    // outgoing cycle dart; darts strictly before the incoming dart are side
    // 0, the rest side 1
    let mut dart_side = vec![0u8; 2 * g.edge_count()];
    let mut arcs: Vec<[Vec<Dart>; 2]> = Vec::with_capacity(m);
    for i in 0..m {
        let v = verts[i];
        let d_out = cycle[i];
        let d_in = cycle[(i + m - 1) % m] ^ 1;
        debug_assert_eq!(g.origin(d_in), v);
        let deg = g.degree(v);
        let start = g.rotation(v).iter().position(|&d| d == d_out).unwrap();
        let mut side0 = Vec::new();
        let mut side1 = Vec::new();
        let mut side = 0u8;
        for k in 1..deg {
            let d = g.rotation(v)[(start + k) % deg];
            if d == d_in {
                side = 1;
                continue;
            }
            dart_side[d] = side;
            if side == 0 {
                side0.push(d);
            } else {
                side1.push(d);
            }
        }
        arcs.push([side0, side1]);
    }

    // edges of the cut graph: originals (cycle edges dropped) plus two
    // copies per cycle edge
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    let endpoint = |d: Dart, edges_len: usize| -> usize {
        let v = g.origin(d);
        if on_cycle[v] == usize::MAX {
            new_id[v]
        } else {
            let _ = edges_len;
            copy[on_cycle[v]][dart_side[d] as usize]
        }
    };
    for e in 0..g.edge_count() {
        if cycle.iter().any(|&d| d / 2 == e) {
            continue;
        }
        new_edge[e] = edges.len();
        edges.push((endpoint(2 * e, edges.len()), endpoint(2 * e + 1, edges.len())));
        sign.push(g.sign(e));
    }
    // cycle edge copies: copies[i][s] joins copy[i][s] with, across the seam,
    // the opposite side of v0
    let mut cycle_copy = vec![[usize::MAX; 2]; m];
    for i in 0..m {
        let seam = i + 1 == m && one_sided;
        for s in 0..2 {
            let t = if seam { 1 - s } else { s };
            cycle_copy[i][s] = edges.len();
            edges.push((copy[i][s], copy[(i + 1) % m][t]));
            // the seam copies run through halves of the original twisted band
            sign.push(if seam { -1 } else { 1 });
        }
    }

    // rotations
    let remap = |d: Dart| -> Dart {
        let e = new_edge[d / 2];
        2 * e + d % 2
    };
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); orig_of.len()];
    for v in 0..n {
        if on_cycle[v] == usize::MAX {
            rot[new_id[v]] = g.rotation(v).iter().map(|&d| remap(d)).collect();
        }
    }
    for i in 0..m {
        // out-dart of the side-s copy of edge cycle[i]: the copy starting at
        // copy[i][s]; in-dart: copy of cycle[i-1] arriving at side s of v_i
        let prev = (i + m - 1) % m;
        let seam_in = prev + 1 == m && one_sided;
        for s in 0..2 {
            let e_out = cycle_copy[i][s];
            let d_out = if edges[e_out].0 == copy[i][s] { 2 * e_out } else { 2 * e_out + 1 };
            // which copy of the previous edge ends at (i, s)?
            let s_prev = if seam_in { 1 - s } else { s };
            let e_in = cycle_copy[prev][s_prev];
            let d_in = if edges[e_in].0 == copy[i][s] { 2 * e_in } else { 2 * e_in + 1 };
            debug_assert_ne!(d_in, d_out);
            // stored so the cut corner is the wrap-around sector on both sides
            let r = if s == 0 {
                let mut r = vec![d_out];
                r.extend(arcs[i][0].iter().map(|&d| remap(d)));
                r.push(d_in);
                r
            } else {
                let mut r = vec![d_in];
                r.extend(arcs[i][1].iter().map(|&d| remap(d)));
                r.push(d_out);
                r
            };
            rot[copy[i][s]] = r;
        }
    }

    let cut = EmbeddedGraph::from_darts(orig_of.len(), edges, sign, rot)?;
    assemble_cut_result(cut, orig_of, verts, one_sided, |piece_emb, piece_faces, orig| {
        find_caps_by_new_sector(piece_emb, piece_faces, orig, &|pv| {
            // boundary copies: the cut corner sits between the rotation's
            // last and first darts by construction
            pv < 2 * m
        })
    })
}

/// Cut the surface along the closed curve realized by a simple radial cycle
/// (a nice face-chain). The curve meets the graph only in the chain's
/// vertices; cutting splits each of them into two, leaves every edge intact
/// and caps the cuffs.
pub fn cut_along_chain(g: &EmbeddedGraph, r: &RadialGraph, cycle: &RadialCycle) -> Result<CutResult> {
    let chain = cycle.to_chain(r);
    let n_cross = chain.vertices.len();
    if n_cross == 0 {
        return Err(Error::NonSimpleCycle);
    }
    {
        let mut vs = chain.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut fs = chain.faces.clone();
        fs.sort_unstable();
        fs.dedup();
        if vs.len() != n_cross || fs.len() != chain.faces.len() {
            return Err(Error::NonSimpleCycle);
        }
    }
    let one_sided = radial_cycle_sign(r, cycle) < 0;

    let n = g.vertex_count();
    let mut cross_index = vec![usize::MAX; n];
    for (i, &v) in chain.vertices.iter().enumerate() {
        cross_index[v] = i;
    }
    let mut new_id = vec![usize::MAX; n];
    let mut orig_of = Vec::new();
    let mut copy = vec![[usize::MAX; 2]; n_cross];
    for i in 0..n_cross {
        copy[i][0] = orig_of.len();
        orig_of.push(chain.vertices[i]);
        copy[i][1] = orig_of.len();
        orig_of.push(chain.vertices[i]);
    }
    for v in 0..n {
        if cross_index[v] == usize::MAX {
            new_id[v] = orig_of.len();
            orig_of.push(v);
        }
    }

    // split each crossed vertex into the two rotation arcs between its
    // crossing sectors
    let mut dart_new_origin = vec![usize::MAX; 2 * g.edge_count()];
    for v in 0..n {
        if cross_index[v] == usize::MAX {
            for &d in g.rotation(v) {
                dart_new_origin[d] = new_id[v];
            }
        }
    }
    let mut arc_lists = vec![[Vec::new(), Vec::new()]; n_cross];
    for i in 0..n_cross {
        let v = chain.vertices[i];
        let (p, q) = cycle.crossing_sectors(r, i);
        debug_assert_ne!(p, q, "chain must cross through two distinct corners");
        let deg = g.degree(v);
        // arc 0: positions p+1..=q, arc 1: positions q+1..=p
        let mut k = (p + 1) % deg;
        loop {
            let d = g.rotation(v)[k];
            arc_lists[i][0].push(d);
            dart_new_origin[d] = copy[i][0];
            if k == q {
                break;
            }
            k = (k + 1) % deg;
        }
        let mut k = (q + 1) % deg;
        loop {
            let d = g.rotation(v)[k];
            arc_lists[i][1].push(d);
            dart_new_origin[d] = copy[i][1];
            if k == p {
                break;
            }
            k = (k + 1) % deg;
        }
    }

    let edges: Vec<(usize, usize)> = (0..g.edge_count())
        .map(|e| (dart_new_origin[2 * e], dart_new_origin[2 * e + 1]))
        .collect();
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); orig_of.len()];
    for v in 0..n {
        if cross_index[v] == usize::MAX {
            rot[new_id[v]] = g.rotation(v).to_vec();
        }
    }
    for i in 0..n_cross {
        rot[copy[i][0]] = arc_lists[i][0].clone();
        rot[copy[i][1]] = arc_lists[i][1].clone();
    }
    let cut = EmbeddedGraph::from_darts(orig_of.len(), edges, g.sign.clone(), rot)?;
    let verts = chain.vertices.clone();
    assemble_cut_result(cut, orig_of, verts, one_sided, |piece_emb, piece_faces, orig| {
        find_caps_by_new_sector(piece_emb, piece_faces, orig, &|pv| pv < 2 * n_cross)
    })
}

/// Sign of the curve realized by a radial cycle.
pub fn radial_cycle_sign(r: &RadialGraph, cycle: &RadialCycle) -> i8 {
    cycle.edges.iter().map(|&e| r.emb.sign(e)).product()
}

fn assemble_cut_result(
    cut: EmbeddedGraph,
    orig_of: Vec<usize>,
    cut_vertices: Vec<usize>,
    one_sided: bool,
    cap_finder: impl Fn(&EmbeddedGraph, &Faces, &[usize]) -> Vec<usize>,
) -> Result<CutResult> {
    let comps = cut.split_components();
    debug_assert!(comps.len() <= 2, "cutting along one curve yields at most two pieces");
    let ncopies = 2 * cut_vertices.len();
    let mut vertex_copies = vec![Vec::new(); cut_vertices.len()];
    let mut pieces = Vec::new();
    for (pi, (emb, verts)) in comps.into_iter().enumerate() {
        for (new_v, &cut_v) in verts.iter().enumerate() {
            if cut_v < ncopies {
                vertex_copies[cut_v / 2].push((pi, new_v));
            }
        }
        let faces = trace_facial_walks(&emb);
        // orig ids within this piece: the copy ids below ncopies mark cuffs
        let caps = cap_finder(&emb, &faces, &verts);
        let orig_vertex: Vec<usize> = verts.iter().map(|&v| orig_of[v]).collect();
        pieces.push(CutPiece { emb, orig_vertex, faces, cap_faces: caps });
    }
    Ok(CutResult { pieces, one_sided, cut_vertices, vertex_copies })
}

/// Cap faces contain the fresh corner of a boundary copy: the sector between
/// the copy's last and first rotation entries.
fn find_caps_by_new_sector(
    emb: &EmbeddedGraph,
    faces: &Faces,
    orig: &[usize],
    is_copy: &dyn Fn(usize) -> bool,
) -> Vec<usize> {
    let mut caps = Vec::new();
    for v in 0..emb.vertex_count() {
        if !is_copy(orig[v]) {
            continue;
        }
        let deg = emb.degree(v);
        let target_sector = deg - 1;
        // find the face traversing sector (v, deg-1)
        for (f, walk) in faces.walks.iter().enumerate() {
            for i in 0..walk.len() {
                let (w, s) = crate::embed::corner_sector(emb, walk, i);
                if w == v && s == target_sector && !caps.contains(&f) {
                    caps.push(f);
                }
            }
        }
    }
    caps.sort_unstable();
    caps
}

/// Public cut entry point: the supplied classification must agree with the
/// computed one.
pub fn cut_along(
    g: &EmbeddedGraph,
    cycle: &[Dart],
    expected: &crate::curves::CurveClass,
) -> Result<CutResult> {
    let computed = crate::curves::classify_cycle(g, cycle)?;
    if computed != *expected {
        return Err(Error::ClassificationMismatch {
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
        });
    }
    cut_along_cycle(g, cycle)
}

// ---------------------------------------------------------------------------
// contraction / deletion

/// Contract an edge; the merged vertex keeps the id of the lower endpoint
/// after reindexing. Loops are removed first, then parallel edges collapse
/// keeping the copy with the smaller edge id. Panics never; malformed input
/// errors.
pub fn contract_edge(g: &EmbeddedGraph, e: usize) -> Result<EmbeddedGraph> {
    if e >= g.edge_count() {
        return Err(Error::Precondition(format!("no edge {e}")));
    }
    let (u, v) = g.edges()[e];
    // make the contracted edge positive so both rotations read coherently
    let g = if g.sign(e) < 0 {
        let mut flip = vec![1i8; g.vertex_count()];
        flip[v] = -1;
        apply_flips(g, &flip)
    } else {
        g.clone()
    };
    let d_uv = 2 * e;
    let d_vu = 2 * e + 1;
    debug_assert_eq!(g.origin(d_uv), u);
    // merged rotation: u's darts after d_uv, then v's darts after d_vu
    let mut merged: Vec<Dart> = Vec::with_capacity(g.degree(u) + g.degree(v) - 2);
    let du = g.degree(u);
    let pu = g.rotation(u).iter().position(|&d| d == d_uv).unwrap();
    for k in 1..du {
        merged.push(g.rotation(u)[(pu + k) % du]);
    }
    let dv = g.degree(v);
    let pv = g.rotation(v).iter().position(|&d| d == d_vu).unwrap();
    for k in 1..dv {
        merged.push(g.rotation(v)[(pv + k) % dv]);
    }

    // rebuild with v merged into u, dropping edge e
    let n = g.vertex_count();
    let mut new_id: Vec<usize> = Vec::with_capacity(n);
    let mut count = 0usize;
    for w in 0..n {
        if w == v {
            new_id.push(usize::MAX);
        } else {
            new_id.push(count);
            count += 1;
        }
    }
    let target = |w: usize| if w == v { new_id[u] } else { new_id[w] };

    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    for f in 0..g.edge_count() {
        if f == e {
            continue;
        }
        let (a, b) = g.edges()[f];
        let (na, nb) = (target(a), target(b));
        if na == nb {
            continue; // loop created by contraction: removed
        }
        new_edge[f] = edges.len();
        edges.push((na, nb));
        sign.push(g.sign(f));
    }
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); count];
    let remap = |d: Dart| -> Option<Dart> {
        let f = new_edge[d / 2];
        if f == usize::MAX {
            None
        } else {
            Some(2 * f + d % 2)
        }
    };
    for w in 0..n {
        if w == u || w == v {
            continue;
        }
        rot[new_id[w]] = g.rotation(w).iter().filter_map(|&d| remap(d)).collect();
    }
    rot[new_id[u]] = merged.iter().filter_map(|&d| remap(d)).collect();
    let multi = EmbeddedGraph::from_darts(count, edges, sign, rot)?;
    simplify_parallel_edges(multi)
}

/// Collapse parallel edges, keeping the copy with the smaller edge id.
fn simplify_parallel_edges(g: EmbeddedGraph) -> Result<EmbeddedGraph> {
    use std::collections::HashMap;
    let mut keep: HashMap<(usize, usize), usize> = HashMap::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let key = (a.min(b), a.max(b));
        keep.entry(key).or_insert(e);
    }
    if keep.len() == g.edge_count() {
        return Ok(g);
    }
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let key = (a.min(b), a.max(b));
        if keep[&key] == e {
            new_edge[e] = edges.len();
            edges.push((a, b));
            sign.push(g.sign(e));
        }
    }
    let rot: Vec<Vec<Dart>> = (0..g.vertex_count())
        .map(|v| {
            g.rotation(v)
                .iter()
                .filter_map(|&d| {
                    let f = new_edge[d / 2];
                    if f == usize::MAX {
                        None
                    } else {
                        Some(2 * f + d % 2)
                    }
                })
                .collect()
        })
        .collect();
    EmbeddedGraph::from_darts(g.vertex_count(), edges, sign, rot)
}

/// Delete an edge. The embedding stays valid; the two faces at the edge
/// merge (the result may be disconnected, which downstream topological
/// operations reject).
pub fn delete_edge(g: &EmbeddedGraph, e: usize) -> Result<EmbeddedGraph> {
    if e >= g.edge_count() {
        return Err(Error::Precondition(format!("no edge {e}")));
    }
    let mut edges = Vec::with_capacity(g.edge_count() - 1);
    let mut sign = Vec::new();
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    for f in 0..g.edge_count() {
        if f == e {
            continue;
        }
        new_edge[f] = edges.len();
        edges.push(g.edges()[f]);
        sign.push(g.sign(f));
    }
    let rot: Vec<Vec<Dart>> = (0..g.vertex_count())
        .map(|v| {
            g.rotation(v)
                .iter()
                .filter_map(|&d| {
                    let f = new_edge[d / 2];
                    if f == usize::MAX {
                        None
                    } else {
                        Some(2 * f + d % 2)
                    }
                })
                .collect()
        })
        .collect();
    EmbeddedGraph::from_darts(g.vertex_count(), edges, sign, rot)
}

// ---------------------------------------------------------------------------
// ΔY / YΔ

/// ΔY on an abstract graph: replace the edges of triangle `uvw` by a new
/// vertex joined to u, v and w. Vertex count grows by one, edge count is
/// unchanged.
pub fn delta_to_wye(g: &SimpleGraph, t: (usize, usize, usize)) -> Result<SimpleGraph> {
    let (u, v, w) = t;
    if !(g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w)) {
        return Err(Error::NotATriangle);
    }
    let n = g.vertex_count();
    let mut out = SimpleGraph::new(n + 1);
    for (a, b) in g.edges() {
        let in_triangle = |a: usize, b: usize| {
            let s = [u, v, w];
            s.contains(&a) && s.contains(&b)
        };
        if !in_triangle(a, b) {
            out.add_edge(a, b);
        }
    }
    out.add_edge(u, n);
    out.add_edge(v, n);
    out.add_edge(w, n);
    Ok(out)
}

/// YΔ on an abstract graph: remove a degree-3 vertex and join its neighbors
/// into a triangle. Rejected when two neighbors are already adjacent, which
/// keeps results simple.
pub fn wye_to_delta(g: &SimpleGraph, y: usize) -> Result<SimpleGraph> {
    if g.degree(y) != 3 {
        return Err(Error::NotDegreeThree);
    }
    let nb: Vec<usize> = g.neighbors(y).collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if g.has_edge(nb[i], nb[j]) {
                return Err(Error::WyeNeighborsAdjacent);
            }
        }
    }
    let mut out = g.remove_vertex(y);
    let fix = |v: usize| if v == g.vertex_count() - 1 { y } else { v };
    // remove_vertex moved the last vertex into slot y
    let (a, b, c) = (fix(nb[0]), fix(nb[1]), fix(nb[2]));
    out.add_edge(a, b);
    out.add_edge(b, c);
    out.add_edge(a, c);
    Ok(out)
}

/// ΔY on an embedded graph. The triangle must bound a face; the new vertex
/// is placed inside it.
pub fn delta_to_wye_embedded(g: &EmbeddedGraph, t: (usize, usize, usize)) -> Result<EmbeddedGraph> {
    let (u, v, w) = t;
    let mut tri = [u, v, w];
    tri.sort_unstable();
    let e_uv = g.dart_from(u, v).map(|d| d / 2).ok_or(Error::NotATriangle)?;
    let e_vw = g.dart_from(v, w).map(|d| d / 2).ok_or(Error::NotATriangle)?;
    let e_uw = g.dart_from(u, w).map(|d| d / 2).ok_or(Error::NotATriangle)?;
    let faces = trace_facial_walks(g);
    let face = (0..faces.count())
        .find(|&f| {
            let walk = &faces.walks[f];
            if walk.len() != 3 {
                return false;
            }
            let mut vs: Vec<usize> = walk.vertices(g).collect();
            vs.sort_unstable();
            vs == tri
        })
        .ok_or(Error::TriangleNotFacial)?;
    let walk = faces.walks[face].clone();

    let n = g.vertex_count();
    let y = n;
    let old_edges = [e_uv, e_vw, e_uw];
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    for e in 0..g.edge_count() {
        if old_edges.contains(&e) {
            continue;
        }
        new_edge[e] = edges.len();
        edges.push(g.edges()[e]);
        sign.push(g.sign(e));
    }
    // spoke edges, one per corner of the face walk, signed like radial edges
    let mut spoke_at = std::collections::HashMap::new();
    let mut y_rot = Vec::new();
    for i in 0..3 {
        let (x, sector) = crate::embed::corner_sector(g, &walk, i);
        let id = edges.len();
        edges.push((x, y));
        sign.push(flag_sigma(walk.steps[i]));
        spoke_at.insert(x, (id, sector));
        y_rot.push(2 * id + 1);
    }
    // from inside the face the corners appear in reverse tracing order
    y_rot.reverse();
    let mut rot: Vec<Vec<Dart>> = Vec::with_capacity(n + 1);
    for x in 0..n {
        let mut r = Vec::new();
        if let Some(&(spoke, sector)) = spoke_at.get(&x) {
            let deg = g.degree(x);
            for k in 0..deg {
                let d = g.rotation(x)[k];
                if new_edge[d / 2] != usize::MAX {
                    r.push(2 * new_edge[d / 2] + d % 2);
                }
                if k == sector {
                    r.push(2 * spoke);
                }
            }
        } else {
            r = g.rotation(x).iter().filter_map(|&d| {
                let e = new_edge[d / 2];
                if e == usize::MAX { None } else { Some(2 * e + d % 2) }
            }).collect();
        }
        rot.push(r);
    }
    rot.push(y_rot);
    EmbeddedGraph::from_darts(n + 1, edges, sign, rot)
}

/// YΔ on an embedded graph: remove a degree-3 vertex and draw the triangle
/// through the three faces around it.
pub fn wye_to_delta_embedded(g: &EmbeddedGraph, y: usize) -> Result<EmbeddedGraph> {
    if y >= g.vertex_count() || g.degree(y) != 3 {
        return Err(Error::NotDegreeThree);
    }
    let nb: Vec<usize> = g.rotation(y).iter().map(|&d| g.head(d)).collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if nb[i] == nb[j] || g.dart_from(nb[i], nb[j]).is_some() {
                return Err(Error::WyeNeighborsAdjacent);
            }
        }
    }
    let faces = trace_facial_walks(g);
    // the walk step at y in face between spokes: for each face at y, find
    // the corner step; predecessor/successor steps give the two neighbor
    // corners the new edge connects
    let mut inserts: Vec<(usize, usize, usize, usize, i8)> = Vec::new(); // (a, sector_a, b, sector_b, sign)
    for (_f, walk) in faces.walks.iter().enumerate() {
        for i in 0..walk.len() {
            let (x, _) = crate::embed::corner_sector(g, walk, i);
            if x != y {
                continue;
            }
            let len = walk.len();
            let prev = (i + len - 1) % len;
            let next = (i + 1) % len;
            let (a, sa) = crate::embed::corner_sector(g, walk, prev);
            let (b, sb) = crate::embed::corner_sector(g, walk, next);
            debug_assert!(a != y && b != y, "neighbors of a degree-3 vertex are distinct");
            let s = flag_sigma(walk.steps[prev]) * flag_sigma(walk.steps[next]);
            inserts.push((a, sa, b, sb, s));
        }
    }
    debug_assert_eq!(inserts.len(), 3);

    // drop y and its edges, then add the three chords at the recorded corners
    let n = g.vertex_count();
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    for e in 0..g.edge_count() {
        let (a, b) = g.edges()[e];
        if a == y || b == y {
            continue;
        }
        new_edge[e] = edges.len();
        edges.push((a, b));
        sign.push(g.sign(e));
    }
    let mut chord_ids = Vec::new();
    for &(a, _, b, _, s) in &inserts {
        chord_ids.push(edges.len());
        edges.push((a, b));
        sign.push(s);
    }
    // insertion lists per vertex: (sector, dart)
    let mut pending: Vec<Vec<(usize, Dart)>> = vec![Vec::new(); n];
    for (k, &(a, sa, b, sb, _)) in inserts.iter().enumerate() {
        let e = chord_ids[k];
        pending[a].push((sa, 2 * e));
        pending[b].push((sb, 2 * e + 1));
    }
    let mut rot: Vec<Vec<Dart>> = Vec::with_capacity(n - 1);
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if x == y {
            continue;
        }
        new_id[x] = count;
        count += 1;
        let deg = g.degree(x);
        let mut r = Vec::new();
        for k in 0..deg {
            let d = g.rotation(x)[k];
            if new_edge[d / 2] != usize::MAX {
                r.push(2 * new_edge[d / 2] + d % 2);
            }
            for &(sector, nd) in &pending[x] {
                if sector == k {
                    r.push(nd);
                }
            }
        }
        rot.push(r);
    }
    let edges: Vec<(usize, usize)> =
        edges.into_iter().map(|(a, b)| (new_id[a], new_id[b])).collect();
    EmbeddedGraph::from_darts(n - 1, edges, sign, rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::surface;
    use crate::fixtures;

    #[test]
    fn cut_torus_meridian_gives_sphere() {
        let g = fixtures::toroidal_grid(5, 5);
        let col: Vec<usize> = (0..5).map(|r| fixtures::toroidal_grid_vertex(5, r, 2)).collect();
        let cycle = cycle_from_vertices(&g, &col).unwrap();
        let cut = cut_along_cycle(&g, &cycle).unwrap();
        assert_eq!(cut.pieces.len(), 1);
        assert!(!cut.one_sided);
        let piece = &cut.pieces[0];
        let s = surface(&piece.emb).unwrap();
        assert_eq!(s.euler_genus, 0, "torus cut along essential curve caps to the sphere");
        assert_eq!(piece.cap_faces.len(), 2);
        for &f in &piece.cap_faces {
            assert_eq!(piece.faces.walks[f].len(), 5);
        }
        // face multiset: original 25 quads + 2 caps
        assert_eq!(piece.faces.count(), 27);
    }

    #[test]
    fn cut_face_boundary_gives_two_pieces() {
        let g = fixtures::toroidal_grid(4, 4);
        let faces = trace_facial_walks(&g);
        let quad: Vec<usize> = faces.walks[0].vertices(&g).collect();
        let cycle = cycle_from_vertices(&g, &quad).unwrap();
        let cut = cut_along_cycle(&g, &cycle).unwrap();
        assert_eq!(cut.pieces.len(), 2);
        let genera: Vec<usize> =
            cut.pieces.iter().map(|p| surface(&p.emb).unwrap().euler_genus).collect();
        let mut sorted = genera.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 2], "genus is additive over a separating cut");
    }

    #[test]
    fn cut_one_sided_cycle_in_projective_triangle() {
        let g = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, -1],
            vec![vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap();
        let cycle = cycle_from_vertices(&g, &[0, 1, 2]).unwrap();
        assert_eq!(cycle_sign(&g, &cycle), -1);
        let cut = cut_along_cycle(&g, &cycle).unwrap();
        assert_eq!(cut.pieces.len(), 1);
        assert!(cut.one_sided);
        let piece = &cut.pieces[0];
        assert_eq!(piece.emb.vertex_count(), 6);
        assert_eq!(piece.emb.edge_count(), 6);
        let s = surface(&piece.emb).unwrap();
        assert_eq!(s.euler_genus, 0);
        assert_eq!(piece.cap_faces.len(), 1);
        assert_eq!(piece.faces.walks[piece.cap_faces[0]].len(), 6, "doubled boundary cycle");
    }

    #[test]
    fn cut_one_sided_in_k6() {
        // 0-1-2 with chord signs: find a one-sided triangle through the cross-cap
        let g = fixtures::k6_projective();
        let tri = [1usize, 2, 3]; // two pentagon edges and one chord: sign -1
        let cycle = cycle_from_vertices(&g, &tri).unwrap();
        assert_eq!(cycle_sign(&g, &cycle), -1);
        let cut = cut_along_cycle(&g, &cycle).unwrap();
        assert_eq!(cut.pieces.len(), 1);
        let piece = &cut.pieces[0];
        let s = surface(&piece.emb).unwrap();
        assert_eq!(s.euler_genus, 0, "projective plane cut along one-sided curve caps to sphere");
        assert_eq!(piece.cap_faces.len(), 1);
        assert_eq!(piece.faces.walks[piece.cap_faces[0]].len(), 6);
        // all ten triangles survive
        assert_eq!(piece.faces.count(), 10 + 1);
    }

    #[test]
    fn contract_triangle_edge() {
        let g = EmbeddedGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![1, 1, 1],
            vec![vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap();
        let h = contract_edge(&g, 0).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(surface(&h).unwrap().euler_genus, 0);
    }

    #[test]
    fn contract_grid_edge_keeps_torus() {
        let g = fixtures::toroidal_grid(4, 4);
        let h = contract_edge(&g, 5).unwrap();
        assert_eq!(h.vertex_count(), 15);
        let s = surface(&h).unwrap();
        assert_eq!(s.euler_genus, 2);
        assert!(s.orientable);
    }

    #[test]
    fn delete_bridge_disconnects_quietly() {
        let g = EmbeddedGraph::new(
            4,
            vec![(0, 1), (1, 2), (2, 0), (2, 3)],
            vec![1, 1, 1, 1],
            vec![vec![0, 2], vec![1, 0], vec![2, 1, 3], vec![3]],
        )
        .unwrap();
        let h = delete_edge(&g, 3).unwrap();
        assert!(!h.is_connected());
        assert!(surface(&h).is_err());
    }

    #[test]
    fn delta_wye_abstract_roundtrip() {
        let k4 = SimpleGraph::complete(4);
        let g = delta_to_wye(&k4, (0, 1, 2)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(4), 3);
        let back = wye_to_delta(&g, 4).unwrap();
        assert!(crate::graph::isomorphic_explicit(&back, &k4));
    }

    #[test]
    fn wye_rejects_adjacent_neighbors() {
        let k4 = SimpleGraph::complete(4);
        assert!(matches!(wye_to_delta(&k4, 0), Err(Error::WyeNeighborsAdjacent)));
        let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(matches!(wye_to_delta(&path, 1), Err(Error::NotDegreeThree)));
    }

    #[test]
    fn delta_wye_embedded_k6() {
        let g = fixtures::k6_projective();
        let faces = trace_facial_walks(&g);
        let tri: Vec<usize> = faces.walks[0].vertices(&g).collect();
        let h = delta_to_wye_embedded(&g, (tri[0], tri[1], tri[2])).unwrap();
        assert_eq!(h.vertex_count(), 7);
        assert_eq!(h.edge_count(), 15);
        let s = surface(&h).unwrap();
        assert_eq!(s.euler_genus, 1);
        assert!(!s.orientable);
        // back again
        let back = wye_to_delta_embedded(&h, 6).unwrap();
        let s2 = surface(&back).unwrap();
        assert_eq!(s2.euler_genus, 1);
        assert_eq!(back.vertex_count(), 6);
        assert_eq!(back.edge_count(), 15);
        assert!(crate::graph::isomorphic_explicit(
            &back.to_simple_graph(),
            &g.to_simple_graph()
        ));
        assert_eq!(
            trace_facial_walks(&back).degree_multiset(),
            trace_facial_walks(&g).degree_multiset()
        );
    }

    #[test]
    fn delta_wye_nonfacial_rejected() {
        let g = fixtures::k6_projective();
        // the one-sided triangle 1-2-3 cannot bound a face
        assert!(matches!(
            delta_to_wye_embedded(&g, (1, 2, 3)),
            Err(Error::TriangleNotFacial)
        ));
    }

    #[test]
    fn delta_wye_embedded_preserves_planarity() {
        let k4 = EmbeddedGraph::new(
            4,
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            vec![1; 6],
            vec![vec![0, 1, 2], vec![0, 4, 3], vec![1, 3, 5], vec![2, 5, 4]],
        )
        .unwrap();
        assert_eq!(surface(&k4).unwrap().euler_genus, 0);
        let faces = trace_facial_walks(&k4);
        let tri: Vec<usize> = faces.walks[0].vertices(&k4).collect();
        let h = delta_to_wye_embedded(&k4, (tri[0], tri[1], tri[2])).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(surface(&h).unwrap().euler_genus, 0);
    }
}
