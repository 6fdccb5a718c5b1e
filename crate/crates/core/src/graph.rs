//! Loopless multigraphs with dense, stable integer ids.
//!
//! Vertices are `0..n`, edges are `0..m` in construction order; parallel edges
//! are allowed, loops are not.  A `Graph` is immutable after construction.
//! Derived graphs (edge-deleted subgraphs, bridge subgraphs, planarizations)
//! get fresh dense ids plus a provenance map back to the parent's ids.
//!
//! Text formats: a plain edge-list format (`n m` header, one `u v` pair per
//! line, 0-based, repeated pairs meaning parallel edges) and graph6 import for
//! simple graphs.

use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Maps a derived graph's ids back to the graph it was extracted from.
#[derive(Debug, Clone, Default)]
pub struct Provenance {
    /// `vertex_to_parent[v]` is the parent id of vertex `v`, if any.
    pub vertex_to_parent: Vec<Option<usize>>,
    /// `edge_to_parent[e]` is the parent id of edge `e`, if any.
    pub edge_to_parent: Vec<Option<usize>>,
}

/// A loopless multigraph.  Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    provenance: Option<Box<Provenance>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from endpoint pairs.
    /// Rejects loops and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            provenance: None,
        };
        for (u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u} rejected")));
            }
            let id = g.edges.len();
            g.edges.push((u, v));
            g.adj[u].push(id);
            g.adj[v].push(id);
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` in construction order.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.  Panics if `v` is not an end of `e`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Ids of the edges incident with `v`, in construction order.
    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`, counting parallel edges separately.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted, deduplicated neighbor list of `v`.
    pub fn distinct_neighbors(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.adj[v].iter().map(|&e| self.other_end(e, v)).collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    /// Number of distinct neighbors of `v`.
    pub fn distinct_neighbor_count(&self, v: usize) -> usize {
        self.distinct_neighbors(v).len()
    }

    /// True if no two edges share the same endpoint pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// All edge ids joining `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.adj[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .collect()
    }

    /// Parallel classes: for each unordered endpoint pair with at least one
    /// edge, the ids of all edges joining it, keyed in sorted pair order.
    pub fn parallel_classes(&self) -> Vec<((usize, usize), Vec<usize>)> {
        let mut map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            map.entry((u.min(v), u.max(v))).or_default().push(id);
        }
        map.into_iter().collect()
    }

    /// Copy of this graph without the listed edges.  Vertices keep their ids;
    /// surviving edges get fresh dense ids with a provenance map back here.
    pub fn without_edges(&self, remove: &[usize]) -> Graph {
        let mut drop = vec![false; self.m()];
        for &e in remove {
            drop[e] = true;
        }
        let mut g = Graph {
            adj: vec![Vec::new(); self.n()],
            edges: Vec::new(),
            provenance: None,
        };
        let mut edge_to_parent = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if drop[id] {
                continue;
            }
            let nid = g.edges.len();
            g.edges.push((u, v));
            g.adj[u].push(nid);
            g.adj[v].push(nid);
            edge_to_parent.push(Some(id));
        }
        g.provenance = Some(Box::new(Provenance {
            vertex_to_parent: (0..self.n()).map(Some).collect(),
            edge_to_parent,
        }));
        g
    }

    /// Subgraph on a vertex subset with all edges among it.  Vertex and edge
    /// ids are remapped densely; the provenance map records the parent ids.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph {
            adj: vec![Vec::new(); keep.len()],
            edges: Vec::new(),
            provenance: None,
        };
        let mut edge_to_parent = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                let nid = g.edges.len();
                g.edges.push((new_id[u], new_id[v]));
                g.adj[new_id[u]].push(nid);
                g.adj[new_id[v]].push(nid);
                edge_to_parent.push(Some(id));
            }
        }
        g.provenance = Some(Box::new(Provenance {
            vertex_to_parent: keep.iter().map(|&v| Some(v)).collect(),
            edge_to_parent,
        }));
        g
    }

    /// Provenance map, if this graph was derived from another.
    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_deref()
    }

    /// Attaches a provenance map (used by planarization and generators).
    pub(crate) fn with_provenance(mut self, p: Provenance) -> Graph {
        self.provenance = Some(Box::new(p));
        self
    }

    /// Connected components as sorted vertex lists, isolated vertices included.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&[])
    }

    /// Connected components of the graph minus the `banned` vertices.
    pub fn components_avoiding(&self, banned: &[usize]) -> Vec<Vec<usize>> {
        let mut blocked = vec![false; self.n()];
        for &v in banned {
            blocked[v] = true;
        }
        let mut seen = blocked.clone();
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = vec![s];
            seen[s] = true;
            while let Some(v) = queue.pop() {
                for &e in &self.adj[v] {
                    let w = self.other_end(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True if the graph is connected (the empty graph is not).
    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Canonical edge-list text: `n m` header, then one sorted `u v` pair per
    /// line in lexicographic order.  Stable across runs; used for hashing.
    pub fn canonical_edge_list(&self) -> String {
        let mut pairs: Vec<(usize, usize)> =
            self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in pairs {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Short hex content hash of the canonical edge list.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_edge_list().as_bytes());
        let mut s = String::new();
        for byte in digest.iter().take(6) {
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    /// Edge-list text in construction order (round-trips edge ids).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list format produced by [`Graph::to_edge_list`].
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<usize> {
            tok.ok_or(Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|_| Error::Parse {
                line,
                msg: "expected an unsigned integer".into(),
            })
        };
        let n = parse_num(it.next(), hline)?;
        let m = parse_num(it.next(), hline)?;
        let mut pairs = Vec::with_capacity(m);
        for (lno, line) in lines {
            let mut it = line.split_whitespace();
            let u = parse_num(it.next(), lno)?;
            let v = parse_num(it.next(), lno)?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lno,
                    msg: "trailing tokens after edge pair".into(),
                });
            }
            if u >= n || v >= n || u == v {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("bad edge ({u}, {v}) for {n} vertices"),
                });
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header promises {m} edges, found {}", pairs.len()),
            });
        }
        Graph::from_edges(n, pairs)
    }

    /// Imports a graph6-encoded simple graph (one graph per line; first line).
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty())
            .ok_or(Error::Parse {
                line: 1,
                msg: "empty graph6 input".into(),
            })?;
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        let bytes = line.as_bytes();
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: msg.into(),
        };
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(bad("graph6 bytes must be in 63..=126"));
        }
        let (n, mut pos) = if bytes[0] != 126 {
            ((bytes[0] - 63) as usize, 1)
        } else if bytes.len() >= 4 && bytes[1] != 126 {
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = (n << 6) | (b - 63) as usize;
            }
            (n, 4)
        } else {
            return Err(bad("oversized graph6 header not supported"));
        };
        let need_bits = n.saturating_mul(n.saturating_sub(1)) / 2;
        let mut bits = Vec::with_capacity(need_bits + 6);
        for &b in &bytes[pos..] {
            let x = b - 63;
            for k in (0..6).rev() {
                bits.push((x >> k) & 1 == 1);
            }
        }
        if bits.len() < need_bits {
            return Err(bad("graph6 body too short"));
        }
        pos = 0;
        let mut pairs = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if bits[pos] {
                    pairs.push((u, v));
                }
                pos += 1;
            }
        }
        Graph::from_edges(n, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 5);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.distinct_neighbor_count(0), 2);
        assert!(!g.is_simple());
        assert_eq!(g.edges_between(0, 1), vec![0, 4]);
        let classes = g.parallel_classes();
        assert_eq!(classes.iter().filter(|(_, c)| c.len() > 1).count(), 1);
    }

    #[test]
    fn loops_rejected() {
        assert!(Graph::from_edges(2, vec![(1, 1)]).is_err());
    }

    #[test]
    fn without_edges_keeps_vertices_and_tracks_parents() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let h = g.without_edges(&[1]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert_eq!(h.provenance().unwrap().edge_to_parent, vec![Some(0), Some(2)]);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(4, vec![(0, 1), (0, 1), (2, 3)]).unwrap();
        let h = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.m(), 3);
        assert_eq!(h.endpoints(1), (0, 1));
        assert_eq!(g.content_hash(), h.content_hash());
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Graph::parse_edge_list("3 2\n0 1\n0 3\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn graph6_petersen_sized_input() {
        // K4 in graph6 is "C~": 4 vertices, all six bits set.
        let g = Graph::parse_graph6("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
        assert!(g.is_simple());
        // Cycle C5 is "Dhc" -> check degree sequence instead of ids.
        let c5 = Graph::parse_graph6("Dhc").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.m(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
    }

    #[test]
    fn components_respect_bans() {
        let g = Graph::from_edges(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.components_avoiding(&[1]).len(), 3);
        assert!(!g.is_connected());
    }
}
