//! Connectivity structure: cut vertices and 2-cuts, uv-bridges, blobs,
//! branches, double uv-paths and blob fallback edges.
//!
//! All cut searches here are deliberately the quadratic reference versions
//! (delete, then re-check connectivity); inputs are desk scale.

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{Graph, Provenance};
use crate::planar;
use std::collections::BTreeSet;

/// Vertex connectivity bucket: 0, 1, 2 or "3 or more".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityLevel {
    Zero,
    One,
    Two,
    ThreePlus,
}

/// Summary facts about a graph.
#[derive(Debug, Clone)]
pub struct GraphProperties {
    pub n: usize,
    pub m: usize,
    pub simple: bool,
    pub component_count: usize,
    pub min_degree: usize,
    pub min_distinct_adjacency: usize,
    pub connectivity: ConnectivityLevel,
}

/// Computes [`GraphProperties`] for `g`.
pub fn graph_properties(g: &Graph) -> GraphProperties {
    let comps = g.components().len();
    GraphProperties {
        n: g.n(),
        m: g.m(),
        simple: g.is_simple(),
        component_count: comps,
        min_degree: (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0),
        min_distinct_adjacency: (0..g.n())
            .map(|v| g.distinct_neighbor_count(v))
            .min()
            .unwrap_or(0),
        connectivity: connectivity_level(g),
    }
}

/// Vertex connectivity bucket of `g`.
pub fn connectivity_level(g: &Graph) -> ConnectivityLevel {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return ConnectivityLevel::Zero;
    }
    if n == 2 || !cut_vertices(g).is_empty() {
        return ConnectivityLevel::One;
    }
    if n == 3 || !two_cuts(g).is_empty() {
        return ConnectivityLevel::Two;
    }
    ConnectivityLevel::ThreePlus
}

/// True if removing the vertex set leaves at least two components
/// among the surviving vertices.
fn separates(g: &Graph, banned: &[usize]) -> bool {
    g.n() > banned.len() && g.components_avoiding(banned).len() >= 2
}

/// All cut vertices of a connected graph (vertices whose removal disconnects
/// the rest).
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| separates(g, &[v])).collect()
}

/// All 2-cuts: unordered pairs `{u, v}` whose removal disconnects the rest.
pub fn two_cuts(g: &Graph) -> Vec<(usize, usize)> {
    let mut cuts = Vec::new();
    for u in 0..g.n() {
        for v in (u + 1)..g.n() {
            if separates(g, &[u, v]) {
                cuts.push((u, v));
            }
        }
    }
    cuts
}

/// True if `g` is 3-connected (n >= 4, connected, no cut vertex, no 2-cut).
pub fn is_three_connected(g: &Graph) -> bool {
    connectivity_level(g) == ConnectivityLevel::ThreePlus
}

/// One {u,v}-bridge: either a trivial bridge (a single uv-edge) or a
/// component of `G - {u, v}` together with its attaching edges.
#[derive(Debug, Clone)]
pub struct UvBridge {
    pub u: usize,
    pub v: usize,
    pub trivial: bool,
    /// Interior vertices (the component); empty for a trivial bridge.
    pub interior: Vec<usize>,
    /// All edges of the bridge, in ascending id order.
    pub edges: Vec<usize>,
    /// Which of `u`, `v` the bridge actually touches.
    pub touches_u: bool,
    pub touches_v: bool,
}

impl UvBridge {
    /// Builds the bridge as a standalone graph with provenance to the host.
    /// Vertex order: interior vertices in sorted order, then `u`, then `v`
    /// (each only if touched); returns the graph and the local ids of (u, v).
    pub fn to_graph(&self, g: &Graph) -> (Graph, Option<usize>, Option<usize>) {
        let mut verts = self.interior.clone();
        let lu = self.touches_u.then(|| {
            verts.push(self.u);
            verts.len() - 1
        });
        let lv = self.touches_v.then(|| {
            verts.push(self.v);
            verts.len() - 1
        });
        let mut local = std::collections::HashMap::new();
        for (i, &p) in verts.iter().enumerate() {
            local.insert(p, i);
        }
        let mut pairs = Vec::new();
        let mut edge_to_parent = Vec::new();
        for &e in &self.edges {
            let (a, b) = g.endpoints(e);
            pairs.push((local[&a], local[&b]));
            edge_to_parent.push(Some(e));
        }
        let sub = Graph::from_edges(verts.len(), pairs)
            .expect("bridge subgraph is well formed")
            .with_provenance(Provenance {
                vertex_to_parent: verts.iter().map(|&p| Some(p)).collect(),
                edge_to_parent,
            });
        (sub, lu, lv)
    }
}

/// All {u,v}-bridges of `g`: one trivial bridge per uv-edge plus one bridge
/// per component of `G - {u, v}`.  Together they partition the edge set.
pub fn uv_bridges(g: &Graph, u: usize, v: usize) -> Vec<UvBridge> {
    assert_ne!(u, v);
    let mut bridges: Vec<UvBridge> = g
        .edges_between(u, v)
        .into_iter()
        .map(|e| UvBridge {
            u,
            v,
            trivial: true,
            interior: Vec::new(),
            edges: vec![e],
            touches_u: true,
            touches_v: true,
        })
        .collect();
    for comp in g.components_avoiding(&[u, v]) {
        let inside: BTreeSet<usize> = comp.iter().copied().collect();
        let mut edges = BTreeSet::new();
        let mut touches_u = false;
        let mut touches_v = false;
        for &x in &comp {
            for &e in g.edges_at(x) {
                let y = g.other_end(e, x);
                if inside.contains(&y) || y == u || y == v {
                    edges.insert(e);
                    touches_u |= y == u;
                    touches_v |= y == v;
                }
            }
        }
        bridges.push(UvBridge {
            u,
            v,
            trivial: false,
            interior: comp,
            edges: edges.into_iter().collect(),
            touches_u,
            touches_v,
        });
    }
    bridges
}

/// A uv-blob: a nontrivial {u,v}-bridge over a 2-cut that can be drawn in a
/// disc with `u` and `v` on its boundary.
#[derive(Debug, Clone)]
pub struct Blob {
    pub u: usize,
    pub v: usize,
    pub bridge: UvBridge,
    /// Maximum number of edge-disjoint uv-paths inside the bridge.
    pub width: usize,
    /// No other blob's bridge is properly contained in this one.
    pub minimal: bool,
}

/// Finds every uv-blob of a connected graph.  Pairs `(u, v)` range over the
/// 2-cuts; a nontrivial bridge qualifies when adding a marker uv-edge keeps
/// it planar.  3-connected graphs therefore yield an empty list.
pub fn detect_blobs(g: &Graph) -> Result<Vec<Blob>> {
    if !g.is_connected() {
        return Err(Error::HypothesisNotMet("blob detection needs a connected host".into()));
    }
    let mut blobs = Vec::new();
    for (u, v) in two_cuts(g) {
        for bridge in uv_bridges(g, u, v) {
            if bridge.trivial || !bridge.touches_u || !bridge.touches_v {
                continue;
            }
            let (sub, lu, lv) = bridge.to_graph(g);
            let (lu, lv) = (lu.unwrap(), lv.unwrap());
            // uv-planarity: the bridge plus a marker uv-edge stays planar.
            let mut pairs: Vec<(usize, usize)> =
                (0..sub.m()).map(|e| sub.endpoints(e)).collect();
            pairs.push((lu, lv));
            let marked = Graph::from_edges(sub.n(), pairs)?;
            if !planar::is_planar(&marked) {
                continue;
            }
            let width = flow::width(&sub, lu, lv);
            debug_assert!(width >= 1);
            blobs.push(Blob {
                u,
                v,
                bridge,
                width,
                minimal: true,
            });
        }
    }
    // Minimality: no other blob's edge set is properly contained in ours.
    let sets: Vec<BTreeSet<usize>> = blobs
        .iter()
        .map(|b| b.bridge.edges.iter().copied().collect())
        .collect();
    for i in 0..blobs.len() {
        blobs[i].minimal = !sets.iter().enumerate().any(|(j, s)| {
            j != i && s.len() < sets[i].len() && s.is_subset(&sets[i])
        });
    }
    Ok(blobs)
}

/// True if `g` has no blob at all.
pub fn is_irreducible(g: &Graph) -> Result<bool> {
    Ok(detect_blobs(g)?.is_empty())
}

/// Replaces a blob's bridge by `width` parallel uv-edges.  Interior vertices
/// disappear; the result gets dense ids and provenance (the new parallel
/// edges have no parent).
pub fn simplify_blob(g: &Graph, blob: &Blob) -> Graph {
    let interior: BTreeSet<usize> = blob.bridge.interior.iter().copied().collect();
    let dropped: BTreeSet<usize> = blob.bridge.edges.iter().copied().collect();
    let keep_verts: Vec<usize> = (0..g.n()).filter(|x| !interior.contains(x)).collect();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &p) in keep_verts.iter().enumerate() {
        local[p] = i;
    }
    let mut pairs = Vec::new();
    let mut edge_to_parent = Vec::new();
    for e in 0..g.m() {
        if dropped.contains(&e) {
            continue;
        }
        let (a, b) = g.endpoints(e);
        pairs.push((local[a], local[b]));
        edge_to_parent.push(Some(e));
    }
    for _ in 0..blob.width {
        pairs.push((local[blob.u], local[blob.v]));
        edge_to_parent.push(None);
    }
    Graph::from_edges(keep_verts.len(), pairs)
        .expect("simplified graph is well formed")
        .with_provenance(Provenance {
            vertex_to_parent: keep_verts.iter().map(|&p| Some(p)).collect(),
            edge_to_parent,
        })
}

/// A branch: a path whose endpoints have degree >= 3 and whose internal
/// vertices have degree exactly 2.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Vertex sequence from one endpoint to the other.
    pub vertices: Vec<usize>,
    /// Edge sequence along the path.
    pub edges: Vec<usize>,
}

impl Branch {
    pub fn endpoints(&self) -> (usize, usize) {
        (*self.vertices.first().unwrap(), *self.vertices.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// All branches with at least one internal vertex.  Single edges joining two
/// degree->=3 vertices do not count (see [`branch_decomposition`] for the
/// inclusive variant); pure degree-2 cycles are not branches either.
pub fn branches(g: &Graph) -> Vec<Branch> {
    branch_decomposition(g, false)
}

/// Maximal degree-2 chains with endpoints of degree >= 3.  With
/// `include_single_edges`, a lone edge between two degree->=3 vertices is a
/// (length-1) branch as well.
pub fn branch_decomposition(g: &Graph, include_single_edges: bool) -> Vec<Branch> {
    let mut used = vec![false; g.m()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        if g.degree(start) < 3 {
            continue;
        }
        for &e0 in g.edges_at(start) {
            if used[e0] {
                continue;
            }
            // Walk through degree-2 vertices until hitting a non-chain vertex.
            let mut vertices = vec![start];
            let mut edges = vec![e0];
            used[e0] = true;
            let mut prev_edge = e0;
            let mut x = g.other_end(e0, start);
            while g.degree(x) == 2 && x != start {
                vertices.push(x);
                let &next = g
                    .edges_at(x)
                    .iter()
                    .find(|&&f| f != prev_edge)
                    .expect("degree-2 vertex has a second edge");
                used[next] = true;
                edges.push(next);
                prev_edge = next;
                x = g.other_end(next, x);
            }
            vertices.push(x);
            let proper_path = {
                let mut vs = vertices.clone();
                vs.sort_unstable();
                vs.windows(2).all(|w| w[0] != w[1])
            };
            if g.degree(x) >= 3 && proper_path && (include_single_edges || edges.len() >= 2) {
                out.push(Branch { vertices, edges });
            }
        }
    }
    out
}

/// A doubled path: consecutive vertices joined by exactly two parallel edges.
#[derive(Debug, Clone)]
pub struct DoublePath {
    pub vertices: Vec<usize>,
    /// One (e, e') pair per step of the path.
    pub edge_pairs: Vec<(usize, usize)>,
}

/// True if `g` is exactly a doubled uv-path: `u` and `v` of degree 2,
/// interior vertices of degree 4, every consecutive pair joined by exactly
/// two parallel edges, and no other edges or vertices (isolated allowed: no).
pub fn is_double_path(g: &Graph, u: usize, v: usize) -> bool {
    if u == v || g.n() < 2 || g.degree(u) != 2 || g.degree(v) != 2 {
        return false;
    }
    let mut visited_edges = 0usize;
    let mut x = u;
    let mut prev = usize::MAX;
    let mut seen = vec![false; g.n()];
    loop {
        seen[x] = true;
        let mut nexts: Vec<usize> = g
            .edges_at(x)
            .iter()
            .map(|&e| g.other_end(e, x))
            .filter(|&y| y != prev)
            .collect();
        nexts.sort_unstable();
        nexts.dedup();
        if x == v && prev != usize::MAX {
            return visited_edges == g.m() && (0..g.n()).all(|w| seen[w]);
        }
        if nexts.len() != 1 {
            return false;
        }
        let y = nexts[0];
        if seen[y] {
            return false;
        }
        let between = g.edges_between(x, y).len();
        if between != 2 {
            return false;
        }
        if x != u && x != v && g.degree(x) != 4 {
            return false;
        }
        visited_edges += 2;
        prev = x;
        x = y;
    }
}

/// Maximal doubled chains in `g`: runs of exactly-2 parallel classes joined
/// through interior vertices of degree 4.
pub fn double_uv_paths(g: &Graph) -> Vec<DoublePath> {
    // A vertex can sit inside a doubled chain if its four edges form exactly
    // two doubled pairs toward two distinct neighbors.
    let chain_interior = |x: usize| -> Option<(usize, usize)> {
        if g.degree(x) != 4 {
            return None;
        }
        let ns = g.distinct_neighbors(x);
        if ns.len() != 2 {
            return None;
        }
        (g.edges_between(x, ns[0]).len() == 2 && g.edges_between(x, ns[1]).len() == 2)
            .then_some((ns[0], ns[1]))
    };
    let doubled = |x: usize, y: usize| g.edges_between(x, y).len() == 2;
    let mut used_pair: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..g.n() {
        if chain_interior(a).is_some() {
            continue; // start chains only at their ends
        }
        let neighbors = g.distinct_neighbors(a);
        for b in neighbors {
            if !doubled(a, b) || used_pair.contains(&(a.min(b), a.max(b))) {
                continue;
            }
            let mut vertices = vec![a, b];
            let mut prev = a;
            let mut x = b;
            while let Some((p, q)) = chain_interior(x) {
                let next = if p == prev { q } else { p };
                if next == prev || vertices.contains(&next) {
                    break;
                }
                vertices.push(next);
                prev = x;
                x = next;
            }
            let mut edge_pairs = Vec::new();
            for w in vertices.windows(2) {
                let es = g.edges_between(w[0], w[1]);
                used_pair.insert((w[0].min(w[1]), w[0].max(w[1])));
                edge_pairs.push((es[0], es[1]));
            }
            out.push(DoublePath { vertices, edge_pairs });
        }
    }
    out
}

/// For a minimal blob of width >= 2 that is not a doubled uv-path, returns an
/// edge `e` (host id) of the bridge with `width(B - e) >= 2`.
pub fn blob_fallback_edge(g: &Graph, blob: &Blob) -> Result<usize> {
    if blob.width < 2 {
        return Err(Error::HypothesisNotMet(format!(
            "blob fallback needs width >= 2, got {}",
            blob.width
        )));
    }
    let (sub, lu, lv) = blob.bridge.to_graph(g);
    let (lu, lv) = (lu.unwrap(), lv.unwrap());
    if is_double_path(&sub, lu, lv) {
        return Err(Error::NotSupported(
            "blob is a doubled uv-path; every edge lies in a 2-edge-cut".into(),
        ));
    }
    for e in 0..sub.m() {
        if flow::width_filtered(&sub, lu, lv, |f| f != e) >= 2 {
            return Ok(sub.provenance().unwrap().edge_to_parent[e].unwrap());
        }
    }
    Err(Error::Counterexample(format!(
        "blob at ({}, {}) admits no fallback edge although it is not a doubled path",
        blob.u, blob.v
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_complete, gen_cycle_product, gen_hn};

    #[test]
    fn connectivity_buckets() {
        let empty = Graph::from_edges(0, Vec::new()).unwrap();
        assert_eq!(connectivity_level(&empty), ConnectivityLevel::Zero);
        let p3 = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(connectivity_level(&p3), ConnectivityLevel::One);
        let k4 = gen_complete(4);
        assert_eq!(connectivity_level(&k4), ConnectivityLevel::ThreePlus);
        let c4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(connectivity_level(&c4), ConnectivityLevel::Two);
    }

    #[test]
    fn cycle_product_is_three_connected() {
        // Oracle for the harness: the quadratic all-pairs 2-cut search.
        let g = gen_cycle_product(4);
        assert!(two_cuts(&g).is_empty());
        assert_eq!(connectivity_level(&g), ConnectivityLevel::ThreePlus);
    }

    #[test]
    fn hn_bridges_partition_edges() {
        let g = gen_hn(3);
        let bridges = uv_bridges(&g, 0, 1);
        // No uv-edge in H_n, so all bridges are the three copies.
        assert_eq!(bridges.len(), 3);
        assert!(bridges.iter().all(|b| !b.trivial && b.touches_u && b.touches_v));
        let mut all: Vec<usize> = bridges.iter().flat_map(|b| b.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.m()).collect::<Vec<_>>());
    }

    #[test]
    fn three_connected_graphs_have_no_blobs() {
        assert!(is_irreducible(&gen_complete(5)).unwrap());
        assert!(is_irreducible(&gen_cycle_product(3)).unwrap());
    }

    #[test]
    fn hn_copies_are_blobs_of_width_two() {
        let g = gen_hn(3);
        let blobs = detect_blobs(&g).unwrap();
        assert_eq!(blobs.len(), 3);
        assert!(blobs.iter().all(|b| b.width == 2 && b.minimal));
        assert!(blobs.iter().all(|b| (b.u, b.v) == (0, 1)));
    }

    #[test]
    fn subdivided_edge_is_a_width_one_blob() {
        // A 2-connected host (K4 on {0,1,2,3}) with edge (0,1) replaced by a
        // path through 4 and 5.  Every 2-cut pair contributes its bridges:
        // {0,1}, {0,5} and {1,4} are cuts, two bridges each.
        let g = Graph::from_edges(
            6,
            vec![(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let blobs = detect_blobs(&g).unwrap();
        assert_eq!(blobs.len(), 6);
        let path = blobs
            .iter()
            .find(|b| (b.u, b.v) == (0, 1) && b.bridge.interior == vec![4, 5])
            .expect("the subdivided edge is a blob");
        assert_eq!(path.width, 1);
        // The sub-paths over {0,5} and {1,4} are contained in it.
        assert!(!path.minimal);
        let side = blobs
            .iter()
            .find(|b| (b.u, b.v) == (0, 1) && b.bridge.interior == vec![2, 3])
            .expect("the K4-side bridge is a blob");
        assert_eq!(side.width, 2);
        assert!(side.minimal);
        assert_eq!(blobs.iter().filter(|b| b.minimal).count(), 3);
    }

    #[test]
    fn simplify_blob_replaces_bridge_by_parallels() {
        let g = gen_hn(3);
        let blobs = detect_blobs(&g).unwrap();
        let s = simplify_blob(&g, &blobs[0]);
        assert_eq!(s.n(), g.n() - 2);
        assert_eq!(s.m(), g.m() - 5 + 2);
        // The simplified graph keeps the other copies intact.
        let pv = s.provenance().unwrap();
        assert!(pv.edge_to_parent.iter().filter(|p| p.is_none()).count() == 2);
    }

    #[test]
    fn branch_conventions() {
        // C3 x C4 is 4-regular: no branches at all.
        assert!(branches(&gen_cycle_product(4)).is_empty());
        // ... but in the inclusive decomposition every edge is a chain.
        let g = gen_cycle_product(4);
        assert_eq!(branch_decomposition(&g, true).len(), g.m());
        // A K4 edge subdivided twice gives exactly one branch of length 3.
        let sub = Graph::from_edges(
            6,
            vec![(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let bs = branches(&sub);
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].len(), 3);
        assert_eq!(bs[0].endpoints(), (0, 1));
    }

    #[test]
    fn doubled_three_path_detected() {
        let g = Graph::from_edges(
            4,
            vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3)],
        )
        .unwrap();
        assert!(is_double_path(&g, 0, 3));
        assert!(!is_double_path(&g, 0, 2));
        let chains = double_uv_paths(&g);
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(chains[0].edge_pairs.len(), 3);
    }

    #[test]
    fn fallback_edge_in_k4_minus_e_blob() {
        // K4 - e glued into a host at (0, 1): the blob bridge is {2, 3} with
        // chord (2,3); removing the chord keeps width 2, and the maxflow
        // recheck accepts the first such edge in ascending order.
        let g = gen_hn(2);
        let blobs = detect_blobs(&g).unwrap();
        let e = blob_fallback_edge(&g, &blobs[0]).unwrap();
        // Any bridge edge with width(B - e) >= 2 must be the chord x-y.
        let (a, b) = g.endpoints(e);
        assert_eq!((a.min(b), a.max(b)), (2, 3));
    }

    #[test]
    fn fallback_rejects_double_paths() {
        // Host: doubled 2-path between 0 and 1 inside a triangle of doubled
        // edges is overkill; simplest: a doubled path blob in a theta-like host.
        let g = Graph::from_edges(
            4,
            vec![(0, 2), (0, 2), (2, 1), (2, 1), (0, 3), (3, 1), (0, 1)],
        )
        .unwrap();
        let blobs = detect_blobs(&g).unwrap();
        let doubled = blobs
            .iter()
            .find(|b| b.bridge.interior == vec![2])
            .expect("doubled path bridge is a blob");
        assert_eq!(doubled.width, 2);
        assert!(matches!(
            blob_fallback_edge(&g, doubled),
            Err(Error::NotSupported(_))
        ));
    }
}
