//! Embedded and abstract graph fixtures: grids on the torus and Klein
//! bottle, the projective-planar K6, quotient grids, random embeddings and
//! apex graphs. Fixtures with frozen data are validated by unit tests.

use crate::embed::{trace_facial_walks, Dart, EmbeddedGraph};
#[cfg(test)]
use crate::embed::surface;
use crate::graph::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Planar cube with its six quadrilateral faces.
pub fn cube() -> EmbeddedGraph {
    // bottom 0..3, top 4..7 with i above i-4
    let edges = vec![
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0), // bottom
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 4), // top
        (0, 4),
        (1, 5),
        (2, 6),
        (3, 7), // verticals
    ];
    let rotations = vec![
        vec![0, 8, 3],
        vec![1, 9, 0],
        vec![2, 10, 1],
        vec![3, 11, 2],
        vec![4, 7, 8],
        vec![5, 4, 9],
        vec![6, 5, 10],
        vec![7, 6, 11],
    ];
    EmbeddedGraph::new(8, edges, vec![1; 12], rotations).expect("cube fixture")
}

pub fn toroidal_grid_vertex(m: usize, r: usize, c: usize) -> usize {
    r * m + c
}

/// n x m grid on the torus: vertex (r, c) joins (r, c+1) and (r+1, c), all
/// indices cyclic. Orientable, Euler genus 2, all faces quadrilaterals.
pub fn toroidal_grid(n: usize, m: usize) -> EmbeddedGraph {
    assert!(n >= 3 && m >= 3, "wrap edges must stay simple");
    let v = |r: usize, c: usize| (r % n) * m + (c % m);
    let mut edges = Vec::new();
    let mut right = vec![vec![0usize; m]; n];
    let mut down = vec![vec![0usize; m]; n];
    for r in 0..n {
        for c in 0..m {
            right[r][c] = edges.len();
            edges.push((v(r, c), v(r, c + 1)));
            down[r][c] = edges.len();
            edges.push((v(r, c), v(r + 1, c)));
        }
    }
    let mut rotations = vec![Vec::new(); n * m];
    for r in 0..n {
        for c in 0..m {
            // east, south, west, north
            rotations[v(r, c)] = vec![
                right[r][c],
                down[r][c],
                right[r][(c + m - 1) % m],
                down[(r + n - 1) % n][c],
            ];
        }
    }
    EmbeddedGraph::new(n * m, edges, vec![1; 2 * n * m], rotations).expect("torus grid")
}

/// n x m grid on the Klein bottle: as the torus grid, but the horizontal
/// wrap glues row r to row n-1-r with reversed orientation.
pub fn klein_grid(n: usize, m: usize) -> EmbeddedGraph {
    assert!(n >= 3 && m >= 3);
    let v = |r: usize, c: usize| r * m + c;
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let mut right = vec![vec![0usize; m]; n];
    let mut down = vec![vec![0usize; m]; n];
    for r in 0..n {
        for c in 0..m {
            right[r][c] = edges.len();
            if c + 1 < m {
                edges.push((v(r, c), v(r, c + 1)));
                sign.push(1);
            } else {
                edges.push((v(r, m - 1), v(n - 1 - r, 0)));
                sign.push(-1);
            }
            down[r][c] = edges.len();
            edges.push((v(r, c), v((r + 1) % n, c)));
            sign.push(1);
        }
    }
    let mut rotations = vec![Vec::new(); n * m];
    for r in 0..n {
        for c in 0..m {
            let west = if c > 0 { right[r][c - 1] } else { right[n - 1 - r][m - 1] };
            rotations[v(r, c)] =
                vec![right[r][c], down[r][c], west, down[(r + n - 1) % n][c]];
        }
    }
    EmbeddedGraph::new(n * m, edges, sign, rotations).expect("klein grid")
}

/// Planar (n+1) x (n+1) grid embedding together with its outer boundary walk
/// in cyclic order.
pub fn planar_grid(n: usize) -> (EmbeddedGraph, Vec<usize>) {
    let side = n + 1;
    let v = |r: usize, c: usize| r * side + c;
    let mut edges = Vec::new();
    let mut right = vec![vec![usize::MAX; side]; side];
    let mut down = vec![vec![usize::MAX; side]; side];
    for r in 0..side {
        for c in 0..side {
            if c + 1 < side {
                right[r][c] = edges.len();
                edges.push((v(r, c), v(r, c + 1)));
            }
            if r + 1 < side {
                down[r][c] = edges.len();
                edges.push((v(r, c), v(r + 1, c)));
            }
        }
    }
    let mut rotations = vec![Vec::new(); side * side];
    for r in 0..side {
        for c in 0..side {
            let mut rot = Vec::new();
            if c + 1 < side {
                rot.push(right[r][c]);
            }
            if r + 1 < side {
                rot.push(down[r][c]);
            }
            if c > 0 {
                rot.push(right[r][c - 1]);
            }
            if r > 0 {
                rot.push(down[r - 1][c]);
            }
            rotations[v(r, c)] = rot;
        }
    }
    let m = edges.len();
    let g = EmbeddedGraph::new(side * side, edges, vec![1; m], rotations).expect("planar grid");
    let mut boundary = Vec::new();
    for c in 0..side {
        boundary.push(v(0, c));
    }
    for r in 1..side {
        boundary.push(v(r, side - 1));
    }
    for c in (0..side - 1).rev() {
        boundary.push(v(side - 1, c));
    }
    for r in (1..side - 1).rev() {
        boundary.push(v(r, 0));
    }
    (g, boundary)
}

/// Quotient of a planar embedding under the antipodal identification of its
/// outer boundary cycle. The boundary list must have even length, traverse
/// the outer face, and carry no chords; vertex `b[i]` is identified with
/// `b[i + len/2]`. The result is a projective-planar embedding.
pub fn antipodal_quotient(g: &EmbeddedGraph, boundary: &[usize]) -> EmbeddedGraph {
    let bl = boundary.len();
    assert!(bl % 2 == 0);
    let m = bl / 2;
    let is_boundary_vertex = {
        let mut b = vec![false; g.vertex_count()];
        for &v in boundary {
            b[v] = true;
        }
        b
    };
    let boundary_index = {
        let mut idx = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in boundary.iter().enumerate() {
            idx[v] = i;
        }
        idx
    };
    // locate outer face and its corner at each boundary vertex
    let faces = trace_facial_walks(g);
    let outer = (0..faces.count())
        .find(|&f| {
            let vs = faces.walks[f].vertex_set(g);
            boundary.iter().all(|v| vs.contains(v))
        })
        .expect("no face contains the whole boundary");
    let walk = &faces.walks[outer];
    // at boundary vertex v the outer corner lies between rot[v][s] and rot[v][s+1]
    let mut corner_at = vec![usize::MAX; g.vertex_count()];
    for i in 0..walk.len() {
        let (v, s) = crate::embed::corner_sector(g, walk, i);
        assert!(corner_at[v] == usize::MAX, "outer face revisits vertex {v}");
        corner_at[v] = s;
    }

    // new vertex ids: representatives are b[0..m] and the interior vertices
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut count = 0;
    for v in 0..g.vertex_count() {
        if is_boundary_vertex[v] && boundary_index[v] >= m {
            continue;
        }
        new_id[v] = count;
        count += 1;
    }
    for i in m..bl {
        new_id[boundary[i]] = new_id[boundary[i - m]];
    }

    let is_boundary_edge = |e: usize| -> Option<usize> {
        let (u, v) = g.edges()[e];
        if !is_boundary_vertex[u] || !is_boundary_vertex[v] {
            return None;
        }
        let (i, j) = (boundary_index[u], boundary_index[v]);
        if (i + 1) % bl == j {
            Some(i)
        } else if (j + 1) % bl == i {
            Some(j)
        } else {
            panic!("boundary chord {u}-{v} not supported");
        }
    };

    // edge classes: boundary edge starting at position i pairs with i+m
    let mut new_edge_id = vec![usize::MAX; g.edge_count()];
    let mut edges = Vec::new();
    let mut sign = Vec::new();
    let flipped = |v: usize| is_boundary_vertex[v] && boundary_index[v] >= m;
    let mut boundary_edge_class = vec![usize::MAX; bl]; // by start position
    for e in 0..g.edge_count() {
        match is_boundary_edge(e) {
            Some(i) => {
                let j = (i + m) % bl;
                if boundary_edge_class[j] != usize::MAX {
                    new_edge_id[e] = boundary_edge_class[j];
                } else {
                    let id = edges.len();
                    boundary_edge_class[i] = id;
                    new_edge_id[e] = id;
                    let (u, v) = g.edges()[e];
                    edges.push((new_id[u], new_id[v]));
                    let s = g.sign(e)
                        * if flipped(u) { -1 } else { 1 }
                        * if flipped(v) { -1 } else { 1 };
                    sign.push(s);
                }
            }
            None => {
                let id = edges.len();
                new_edge_id[e] = id;
                let (u, v) = g.edges()[e];
                edges.push((new_id[u], new_id[v]));
                let s = g.sign(e)
                    * if flipped(u) { -1 } else { 1 }
                    * if flipped(v) { -1 } else { 1 };
                sign.push(s);
            }
        }
    }
    // fill remaining class slots for partner copies
    for i in 0..bl {
        if boundary_edge_class[i] == usize::MAX {
            boundary_edge_class[i] = boundary_edge_class[(i + m) % bl];
        }
    }

    // rotations: the half-fans of identified vertices are spliced, the
    // partner's fan reversed (its local orientation flips)
    let fan = |v: usize| -> Vec<Dart> {
        // rotation at v, rotated to start just after the outer corner
        let deg = g.degree(v);
        let s = corner_at[v];
        (1..=deg).map(|k| g.rotation(v)[(s + k) % deg]).collect()
    };
    let remap_dart = |d: Dart| -> Dart {
        let e = d / 2;
        let (u, _) = g.edges()[e];
        let orig = if d % 2 == 0 { u } else { g.edges()[e].1 };
        let ne = new_edge_id[e];
        if edges[ne].0 == new_id[orig] {
            2 * ne
        } else {
            2 * ne + 1
        }
    };
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); count];
    for v in 0..g.vertex_count() {
        if !is_boundary_vertex[v] {
            rotations[new_id[v]] = g.rotation(v).iter().map(|&d| remap_dart(d)).collect();
        }
    }
    for i in 0..m {
        let p = boundary[i];
        let q = boundary[i + m];
        // p's fan runs [to-next, interior..., to-prev]; q's interior reversed
        let fp = fan(p);
        let fq = fan(q);
        let mut rot: Vec<Dart> = Vec::with_capacity(fp.len() + fq.len() - 2);
        rot.extend(fp.iter().map(|&d| remap_dart(d)));
        rot.extend(fq[1..fq.len() - 1].iter().rev().map(|&d| remap_dart(d)));
        rotations[new_id[p]] = rot;
    }
    // degenerate duplicate darts cannot arise: boundary has no chords
    EmbeddedGraph::from_darts(count, edges, sign, rotations).expect("antipodal quotient")
}

/// Quadrangulation of the projective plane: the (n+1) x (n+1) planar grid
/// with the outer boundary identified antipodally. n^2 quadrilateral faces.
pub fn projective_quad_grid(n: usize) -> EmbeddedGraph {
    assert!(n >= 2);
    let (g, boundary) = planar_grid(n);
    antipodal_quotient(&g, &boundary)
}

/// K6 embedded in the projective plane with ten triangular faces:
/// pentagon 1..5 around the center 0, pentagram chords through the
/// cross-cap. Rotation pattern and chord signs found by the regeneration
/// search in this module's tests.
pub fn k6_projective() -> EmbeddedGraph {
    let mut edges = Vec::new();
    let mut star = [0usize; 6]; // star[i] edge 0-i for i 1..5
    let mut pent = [0usize; 6]; // pent[i] edge i-(i+1)
    let mut chord = [0usize; 6]; // chord[i] edge i-(i+2)
    for i in 1..=5 {
        star[i] = edges.len();
        edges.push((0, i));
    }
    let nx = |i: usize, k: usize| (i - 1 + k) % 5 + 1;
    for i in 1..=5 {
        pent[i] = edges.len();
        edges.push((i, nx(i, 1)));
    }
    for i in 1..=5 {
        chord[i] = edges.len();
        edges.push((i, nx(i, 2)));
    }
    let mut sign = vec![1i8; 15];
    for i in 1..=5 {
        sign[chord[i]] = -1;
    }
    let mut rotations = vec![Vec::new(); 6];
    rotations[0] = (1..=5).map(|i| star[i]).collect();
    for i in 1..=5 {
        rotations[i] = vec![star[i], pent[nx(i, 4)], chord[i], chord[nx(i, 3)], pent[i]];
    }
    EmbeddedGraph::new(6, edges, sign, rotations).expect("k6 projective fixture")
}

/// The frozen gate-passing seed of the projective grid class: a
/// minor-minimal projective-planar embedding of face-width 4, found by
/// greedy minor-minimization of the quotient quadrangulation (see the
/// regeneration test in the dyclass module). Its ΔY/YΔ closure has exactly
/// 270 members, 8 of them triangle-free.
pub fn projective_grid_4() -> EmbeddedGraph {
    crate::emb_io::from_emb(include_str!("../../../fixtures/projective_grid_4.emb"))
        .expect("frozen seed fixture")
}

/// Petersen graph (abstract): outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> SimpleGraph {
    let mut g = SimpleGraph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    g
}

/// Random connected embedded graph: random simple connected graph with a
/// random rotation system and random edge signs. Every rotation/sign pair is
/// a valid embedding of some surface.
pub fn random_embedded(n: usize, extra_edges: usize, seed: u64) -> EmbeddedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut present = std::collections::HashSet::new();
    // random spanning tree keeps it connected
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present.insert((u, v));
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra_edges && attempts < 50 * extra_edges + 100 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && !present.contains(&key) {
            present.insert(key);
            edges.push(key);
            added += 1;
        }
    }
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in edges.iter().enumerate() {
        rotations[u].push(e);
        rotations[v].push(e);
    }
    for rot in rotations.iter_mut() {
        // Fisher-Yates
        for i in (1..rot.len()).rev() {
            let j = rng.gen_range(0..=i);
            rot.swap(i, j);
        }
    }
    let sign: Vec<i8> = edges.iter().map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    EmbeddedGraph::new(n, edges, sign, rotations).expect("random embedding")
}

/// Random apex graph: a random planar graph (stacked triangulation with
/// random deletions) plus one universal vertex.
pub fn apex_graph(n: usize, seed: u64) -> SimpleGraph {
    assert!(n >= 5);
    let planar_n = n - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // stacked triangulation: faces as vertex triples
    let mut g = SimpleGraph::new(planar_n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    let mut faces = vec![(0usize, 1usize, 2usize), (0, 1, 2)];
    for v in 3..planar_n {
        let f = rng.gen_range(0..faces.len());
        let (a, b, c) = faces[f];
        g.add_edge(v, a);
        g.add_edge(v, b);
        g.add_edge(v, c);
        faces[f] = (a, b, v);
        faces.push((a, c, v));
        faces.push((b, c, v));
    }
    // random deletions keep planarity
    let edges = g.edges();
    for (u, v) in edges {
        if rng.gen_bool(0.2) {
            g.remove_edge(u, v);
        }
    }
    // apex vertex adjacent to everything
    let mut apex = SimpleGraph::new(n);
    for (u, v) in g.edges() {
        apex.add_edge(u, v);
    }
    for v in 0..planar_n {
        apex.add_edge(v, planar_n);
    }
    apex
}
