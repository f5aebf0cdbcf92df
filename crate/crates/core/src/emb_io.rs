//! Line-oriented `.emb` embedding files.
//!
//! ```text
//! emb 1
//! n <vertex-count>
//! e <edge-id> <u> <v> <sign>      one per edge, sign + or -
//! rot <v> <edge-id> <edge-id> ... one per vertex, cyclic order
//! ```
//!
//! `#` starts a comment. Parsing is strict: unknown directives, gaps in edge
//! ids, missing rotations or trailing junk are errors.

use crate::embed::EmbeddedGraph;
use crate::{Error, Result};

pub fn to_emb(g: &EmbeddedGraph) -> String {
    let mut out = String::from("emb 1\n");
    out.push_str(&format!("n {}\n", g.vertex_count()));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let s = if g.sign(e) > 0 { '+' } else { '-' };
        out.push_str(&format!("e {e} {u} {v} {s}\n"));
    }
    for v in 0..g.vertex_count() {
        let ids: Vec<String> = g.rotation(v).iter().map(|&d| (d / 2).to_string()).collect();
        out.push_str(&format!("rot {v} {}\n", ids.join(" ")));
    }
    out
}

pub fn from_emb(text: &str) -> Result<EmbeddedGraph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut sign: Vec<i8> = Vec::new();
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut saw_header = false;
    let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("emb") => {
                if saw_header {
                    return Err(err(lineno, "duplicate header"));
                }
                match tok.next() {
                    Some("1") => saw_header = true,
                    _ => return Err(err(lineno, "unsupported format version")),
                }
            }
            Some("n") => {
                if !saw_header {
                    return Err(err(lineno, "missing `emb 1` header"));
                }
                if n.is_some() {
                    return Err(err(lineno, "duplicate vertex count"));
                }
                let count: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex count"))?;
                n = Some(count);
                rotations = vec![None; count];
            }
            Some("e") => {
                let count = n.ok_or_else(|| err(lineno, "edge before vertex count"))?;
                let id: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad edge id"))?;
                if id != edges.len() {
                    return Err(err(lineno, "edge ids must be dense and in order"));
                }
                let u: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad endpoint"))?;
                let v: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad endpoint"))?;
                if u >= count || v >= count {
                    return Err(err(lineno, "endpoint out of range"));
                }
                let s = match tok.next() {
                    Some("+") => 1,
                    Some("-") => -1,
                    _ => return Err(err(lineno, "sign must be + or -")),
                };
                if tok.next().is_some() {
                    return Err(err(lineno, "trailing tokens"));
                }
                edges.push((u, v));
                sign.push(s);
            }
            Some("rot") => {
                let count = n.ok_or_else(|| err(lineno, "rotation before vertex count"))?;
                let v: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(lineno, "bad vertex id"))?;
                if v >= count {
                    return Err(err(lineno, "vertex out of range"));
                }
                if rotations[v].is_some() {
                    return Err(err(lineno, "duplicate rotation"));
                }
                let mut ids = Vec::new();
                for t in tok {
                    let e: usize =
                        t.parse().map_err(|_| err(lineno, "bad edge id in rotation"))?;
                    ids.push(e);
                }
                rotations[v] = Some(ids);
            }
            _ => return Err(err(lineno, "unknown directive")),
        }
    }
    if !saw_header {
        return Err(err(1, "missing `emb 1` header"));
    }
    let n = n.ok_or_else(|| err(1, "missing vertex count"))?;
    let mut rots = Vec::with_capacity(n);
    for (v, r) in rotations.into_iter().enumerate() {
        rots.push(r.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("missing rotation for vertex {v}"),
        })?);
    }
    EmbeddedGraph::new(n, edges, sign, rots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn roundtrip() {
        for g in [fixtures::cube(), fixtures::k6_projective(), fixtures::toroidal_grid(4, 5)] {
            let text = to_emb(&g);
            let back = from_emb(&text).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn strict_parsing() {
        assert!(matches!(from_emb(""), Err(Error::Parse { .. })));
        assert!(matches!(from_emb("n 3\n"), Err(Error::Parse { .. })));
        let bad_sign = "emb 1\nn 2\ne 0 0 1 x\nrot 0 0\nrot 1 0\n";
        assert!(matches!(from_emb(bad_sign), Err(Error::Parse { line: 3, .. })));
        let missing_rot = "emb 1\nn 2\ne 0 0 1 +\nrot 0 0\n";
        assert!(from_emb(missing_rot).is_err());
        let junk = "emb 1\nn 2\nxyz\n";
        assert!(matches!(from_emb(junk), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn comments_and_blanks_ok() {
        let text = "# a comment\nemb 1\n\nn 2\ne 0 0 1 +\nrot 0 0\nrot 1 0\n";
        assert!(from_emb(text).is_ok());
    }
}
