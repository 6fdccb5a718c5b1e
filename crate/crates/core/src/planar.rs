//! Planarity testing and combinatorial embeddings: rotation systems, face
//! walks, duals, digons with their containment order, clean normalization,
//! and Kuratowski witnesses.
//!
//! Conventions used throughout the crate:
//! - a dart is a directed edge end, `2*e` for u -> v and `2*e + 1` for
//!   v -> u (with `(u, v)` the stored endpoint order of edge `e`);
//! - rotations list the darts leaving a vertex in counterclockwise order;
//! - the face walk continues from dart `d` with `rot_next(twin(d))`, so each
//!   face is traversed with its interior on a fixed side and every dart lies
//!   on exactly one face.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::BTreeSet;

/// Opposite dart of the same edge.
pub fn twin(d: usize) -> usize {
    d ^ 1
}

/// Edge an end belongs to.
pub fn dart_edge(d: usize) -> usize {
    d >> 1
}

/// The dart of `e` leaving its stored tail (u for endpoints (u, v)).
pub fn forward_dart(e: usize) -> usize {
    2 * e
}

/// A graph together with a rotation system whose face structure satisfies
/// the Euler relation, i.e. a drawing in the plane up to homeomorphism.
#[derive(Debug, Clone)]
pub struct PlanarEmbedding {
    g: Graph,
    rot: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    face_of: Vec<usize>,
    outer: Option<usize>,
}

impl PlanarEmbedding {
    /// Validates a rotation system: every dart leaving `v` appears exactly
    /// once in `rot[v]`, and the face orbits satisfy the Euler relation
    /// (counting one shared unbounded face across components).
    pub fn new(g: Graph, rot: Vec<Vec<usize>>) -> Result<PlanarEmbedding> {
        if rot.len() != g.n() {
            return Err(Error::InvalidArgument(
                "rotation system has wrong vertex count".into(),
            ));
        }
        let mut seen = vec![false; 2 * g.m()];
        for v in 0..g.n() {
            for &d in &rot[v] {
                if d >= 2 * g.m() || seen[d] {
                    return Err(Error::InvalidArgument(format!(
                        "dart {d} repeated or out of range"
                    )));
                }
                seen[d] = true;
                let e = dart_edge(d);
                let (a, b) = g.endpoints(e);
                let tail = if d % 2 == 0 { a } else { b };
                if tail != v {
                    return Err(Error::InvalidArgument(format!(
                        "dart {d} listed at vertex {v} but leaves {tail}"
                    )));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidArgument("rotation system misses darts".into()));
        }

        // rot_next: successor of each dart in the rotation at its tail.
        let mut rot_next = vec![0usize; 2 * g.m()];
        for list in &rot {
            for (i, &d) in list.iter().enumerate() {
                rot_next[d] = list[(i + 1) % list.len()];
            }
        }
        let mut face_of = vec![usize::MAX; 2 * g.m()];
        let mut faces = Vec::new();
        for start in 0..2 * g.m() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = faces.len();
                walk.push(d);
                d = rot_next[twin(d)];
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }

        let components = g.components().len();
        let edged_components = g
            .components()
            .iter()
            .filter(|c| c.iter().any(|&v| g.degree(v) > 0))
            .count();
        let plane_faces = if faces.is_empty() {
            1
        } else {
            faces.len() - (edged_components - 1)
        };
        let lhs = g.n() as i64 - g.m() as i64 + plane_faces as i64;
        if lhs != 1 + components as i64 {
            return Err(Error::InvalidArgument(format!(
                "rotation system is not planar: V - E + F = {} but 1 + components = {}",
                lhs,
                1 + components
            )));
        }
        let outer = (0..faces.len()).max_by_key(|&f| (faces[f].len(), usize::MAX - f));
        Ok(PlanarEmbedding {
            g,
            rot,
            faces,
            face_of,
            outer,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    /// Counterclockwise darts leaving `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    /// Face walks as dart cycles (one orbit per face side).
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Boundary walk length (darts on the face; a bridge contributes twice).
    pub fn face_len(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Designated unbounded face: a maximum-length walk.
    pub fn outer_face(&self) -> Option<usize> {
        self.outer
    }

    /// Number of faces of the drawing in the plane: the walk orbits, with
    /// the unbounded face shared by all edged components.
    pub fn plane_face_count(&self) -> usize {
        if self.faces.is_empty() {
            return 1;
        }
        let edged = self
            .g
            .components()
            .iter()
            .filter(|c| c.iter().any(|&v| self.g.degree(v) > 0))
            .count();
        self.faces.len() - (edged - 1)
    }

    pub fn tail(&self, d: usize) -> usize {
        let (a, b) = self.g.endpoints(dart_edge(d));
        if d % 2 == 0 {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(twin(d))
    }

    /// Distinct vertices on the boundary walk of `f`, sorted.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.faces[f].iter().map(|&d| self.tail(d)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Distinct edges on the boundary walk of `f`, sorted.
    pub fn face_edges(&self, f: usize) -> Vec<usize> {
        let mut es: Vec<usize> = self.faces[f].iter().map(|&d| dart_edge(d)).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Rotation successor of dart `d` at its tail.
    pub fn rot_next(&self, d: usize) -> usize {
        let v = self.tail(d);
        let i = self.rot[v].iter().position(|&x| x == d).unwrap();
        self.rot[v][(i + 1) % self.rot[v].len()]
    }

    /// Text dump: per vertex the clockwise (edge id, direction sign) list,
    /// then each face as an edge-id walk.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in 0..self.g.n() {
            out.push_str(&format!("v {v}:"));
            for &d in self.rot[v].iter().rev() {
                out.push_str(&format!(
                    " {}{}",
                    dart_edge(d),
                    if d % 2 == 0 { '+' } else { '-' }
                ));
            }
            out.push('\n');
        }
        for (f, walk) in self.faces.iter().enumerate() {
            out.push_str(&format!("f {f}:"));
            for &d in walk {
                out.push_str(&format!(" {}", dart_edge(d)));
            }
            out.push('\n');
        }
        out
    }
}

/// Verdict of the embedding attempt.
#[derive(Debug)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar,
}

impl Planarity {
    pub fn embedding(self) -> Option<PlanarEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar => None,
        }
    }
}

/// True if `g` admits a plane drawing.
pub fn is_planar(g: &Graph) -> bool {
    matches!(planarity_embed(g), Planarity::Planar(_))
}

/// Tests planarity and, on success, returns an embedding.  Works per
/// biconnected block and joins the block rotations at cut vertices.
pub fn planarity_embed(g: &Graph) -> Planarity {
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        let (bg, verts) = block_subgraph(g, &block);
        let local_rot = if bg.m() == 1 {
            let (a, b) = bg.endpoints(0);
            let mut r = vec![Vec::new(), Vec::new()];
            r[a] = vec![0];
            r[b] = vec![1];
            r
        } else {
            match embed_biconnected(&bg) {
                Some(r) => r,
                None => return Planarity::NonPlanar,
            }
        };
        // Map local darts back and append at each vertex (any interleaving
        // of blocks around a cut vertex is planar).
        let edge_parent = |e: usize| bg.provenance().unwrap().edge_to_parent[e].unwrap();
        for (lv, list) in local_rot.iter().enumerate() {
            let v = verts[lv];
            for &d in list {
                rot[v].push(2 * edge_parent(dart_edge(d)) + d % 2);
            }
        }
    }
    match PlanarEmbedding::new(g.clone(), rot) {
        Ok(e) => Planarity::Planar(e),
        Err(err) => panic!("embedding pipeline produced an invalid rotation system: {err}"),
    }
}

/// Biconnected blocks as edge-id sets (standard lowpoint algorithm with an
/// explicit stack; parallel edges to the parent count as back edges).
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut estack: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // frame: (vertex, entering edge, next incident index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        loop {
            let Some(top) = stack.last_mut() else { break };
            let (v, pe) = (top.0, top.1);
            if top.2 < g.edges_at(v).len() {
                let e = g.edges_at(v)[top.2];
                top.2 += 1;
                if e == pe {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    estack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                // disc[w] > disc[v]: the same edge is handled from w's side.
            } else {
                stack.pop();
                if pe != usize::MAX {
                    let p = g.other_end(pe, v);
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut blk = Vec::new();
                        loop {
                            let e = estack.pop().expect("edge stack holds the block");
                            blk.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(blk);
                    }
                }
            }
        }
        debug_assert!(estack.is_empty());
    }
    out
}

/// Induced subgraph on a block's edges, plus the parent ids of its vertices.
pub(crate) fn block_subgraph(g: &Graph, block: &[usize]) -> (Graph, Vec<usize>) {
    let mut verts = BTreeSet::new();
    for &e in block {
        let (a, b) = g.endpoints(e);
        verts.insert(a);
        verts.insert(b);
    }
    let verts: Vec<usize> = verts.into_iter().collect();
    let mut local = std::collections::HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        local.insert(v, i);
    }
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    let pairs: Vec<(usize, usize)> = sorted
        .iter()
        .map(|&e| {
            let (a, b) = g.endpoints(e);
            (local[&a], local[&b])
        })
        .collect();
    let bg = Graph::from_edges(verts.len(), pairs)
        .expect("block subgraph is well formed")
        .with_provenance(crate::graph::Provenance {
            vertex_to_parent: verts.iter().map(|&v| Some(v)).collect(),
            edge_to_parent: sorted.iter().map(|&e| Some(e)).collect(),
        });
    (bg, verts)
}

/// Incremental face-based planarity for a biconnected multigraph with at
/// least two edges: start from a cycle, then repeatedly embed a path of an
/// unembedded fragment into a face containing all its attachments.  Returns
/// the rotation system, or None when some fragment has no admissible face.
fn embed_biconnected(bg: &Graph) -> Option<Vec<Vec<usize>>> {
    let (cyc_verts, cyc_edges) = some_cycle(bg);
    let mut emb_v = vec![false; bg.n()];
    let mut emb_e = vec![false; bg.m()];
    for &v in &cyc_verts {
        emb_v[v] = true;
    }
    for &e in &cyc_edges {
        emb_e[e] = true;
    }
    let dart_from = |e: usize, from: usize| -> usize {
        if bg.endpoints(e).0 == from {
            2 * e
        } else {
            2 * e + 1
        }
    };
    // The cycle bounds two faces: the forward walk and the backward walk.
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let l = cyc_verts.len();
    faces.push((0..l).map(|i| dart_from(cyc_edges[i], cyc_verts[i])).collect());
    faces.push(
        (0..l)
            .rev()
            .map(|i| dart_from(cyc_edges[i], cyc_verts[(i + 1) % l]))
            .collect(),
    );

    while emb_e.iter().any(|&d| !d) {
        // Fragments: single unembedded edges between embedded vertices, and
        // components of unembedded vertices with their attaching edges.
        struct Fragment {
            edges: Vec<usize>,
            attachments: Vec<usize>,
        }
        let mut fragments: Vec<Fragment> = Vec::new();
        for e in 0..bg.m() {
            let (a, b) = bg.endpoints(e);
            if !emb_e[e] && emb_v[a] && emb_v[b] {
                fragments.push(Fragment {
                    edges: vec![e],
                    attachments: vec![a.min(b), a.max(b)],
                });
            }
        }
        let mut comp = vec![usize::MAX; bg.n()];
        for s in 0..bg.n() {
            if emb_v[s] || comp[s] != usize::MAX {
                continue;
            }
            let cid = s;
            let mut queue = vec![s];
            comp[s] = cid;
            let mut inner = vec![s];
            while let Some(x) = queue.pop() {
                for &e in bg.edges_at(x) {
                    let y = bg.other_end(e, x);
                    if !emb_v[y] && comp[y] == usize::MAX {
                        comp[y] = cid;
                        inner.push(y);
                        queue.push(y);
                    }
                }
            }
            let mut edges = BTreeSet::new();
            let mut attach = BTreeSet::new();
            for &x in &inner {
                for &e in bg.edges_at(x) {
                    edges.insert(e);
                    let y = bg.other_end(e, x);
                    if emb_v[y] {
                        attach.insert(y);
                    }
                }
            }
            fragments.push(Fragment {
                edges: edges.into_iter().collect(),
                attachments: attach.into_iter().collect(),
            });
        }
        debug_assert!(!fragments.is_empty());

        // Admissible faces contain all attachments of the fragment.
        let face_verts: Vec<BTreeSet<usize>> = faces
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&d| {
                        let (a, b) = bg.endpoints(dart_edge(d));
                        if d % 2 == 0 {
                            a
                        } else {
                            b
                        }
                    })
                    .collect()
            })
            .collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&f| fr.attachments.iter().all(|a| face_verts[f].contains(a)))
                    .collect()
            })
            .collect();
        let pick = (0..fragments.len())
            .min_by_key(|&i| (admissible[i].len(), fragments[i].edges[0]))
            .unwrap();
        if admissible[pick].is_empty() {
            return None;
        }
        let f = admissible[pick][0];
        let fr = &fragments[pick];

        // A path through the fragment between two distinct attachments.
        let (pverts, pedges) = fragment_path(bg, &fr.edges, &fr.attachments, &emb_v);
        for &x in &pverts {
            emb_v[x] = true;
        }
        for &e in &pedges {
            emb_e[e] = true;
        }

        // Split face f along the path.
        let walk = faces[f].clone();
        let pos = |x: usize| -> usize {
            walk.iter()
                .position(|&d| {
                    let (a, b) = bg.endpoints(dart_edge(d));
                    let t = if d % 2 == 0 { a } else { b };
                    t == x
                })
                .expect("attachment lies on the admissible face")
        };
        let a = *pverts.first().unwrap();
        let b = *pverts.last().unwrap();
        let ia = pos(a);
        let ib = pos(b);
        let fwd: Vec<usize> = (0..pedges.len())
            .map(|i| dart_from(pedges[i], pverts[i]))
            .collect();
        let bwd: Vec<usize> = (0..pedges.len())
            .rev()
            .map(|i| dart_from(pedges[i], pverts[i + 1]))
            .collect();
        let seg = |from: usize, to: usize| -> Vec<usize> {
            // walk[from..to) cyclically
            let mut s = Vec::new();
            let mut i = from;
            while i != to {
                s.push(walk[i]);
                i = (i + 1) % walk.len();
            }
            s
        };
        let mut face1 = fwd;
        face1.extend(seg(ib, ia));
        let mut face2 = bwd;
        face2.extend(seg(ia, ib));
        faces[f] = face1;
        faces.push(face2);
    }

    // Recover rotations from the face walks: in the rotation at the head of
    // dart d, the successor of twin(d) is the face walk's next dart.
    let mut rot_next = vec![usize::MAX; 2 * bg.m()];
    for walk in &faces {
        for (i, &d) in walk.iter().enumerate() {
            rot_next[twin(d)] = walk[(i + 1) % walk.len()];
        }
    }
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); bg.n()];
    let mut placed = vec![false; 2 * bg.m()];
    for d0 in 0..2 * bg.m() {
        if placed[d0] {
            continue;
        }
        let v = {
            let (a, b) = bg.endpoints(dart_edge(d0));
            if d0 % 2 == 0 {
                a
            } else {
                b
            }
        };
        let mut d = d0;
        loop {
            assert!(!placed[d], "rotation at {v} is not a single cycle");
            placed[d] = true;
            rot[v].push(d);
            d = rot_next[d];
            if d == d0 {
                break;
            }
        }
    }
    Some(rot)
}

/// Any cycle in a biconnected multigraph with >= 2 edges, as aligned vertex
/// and edge sequences (vertices[i] -- edges[i] -- vertices[i+1], cyclically).
fn some_cycle(bg: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut parent_edge = vec![usize::MAX; bg.n()];
    let mut parent = vec![usize::MAX; bg.n()];
    let mut state = vec![0u8; bg.n()]; // 0 new, 1 visited
    let start = 0;
    state[start] = 1;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &e in bg.edges_at(v) {
            if e == parent_edge[v] {
                continue;
            }
            let w = bg.other_end(e, v);
            if state[w] == 0 {
                state[w] = 1;
                parent[w] = v;
                parent_edge[w] = e;
                stack.push(w);
                continue;
            }
            // Non-tree edge v--w: close a cycle through the meeting point of
            // the two ancestor chains.
            let mut v_anc = Vec::new();
            let mut x = v;
            while x != usize::MAX {
                v_anc.push(x);
                x = parent[x];
            }
            let mut y = w;
            while !v_anc.contains(&y) {
                y = parent[y];
            }
            // Chain A: w up to y; chain B: v up to y.  The cycle is
            // w -> .. -> y -> .. -> v -> (e) -> w.
            let mut verts = Vec::new();
            let mut edges = Vec::new();
            let mut x = w;
            while x != y {
                verts.push(x);
                edges.push(parent_edge[x]);
                x = parent[x];
            }
            verts.push(y);
            let mut b_verts = Vec::new();
            let mut b_edges = Vec::new();
            let mut x = v;
            while x != y {
                b_verts.push(x);
                b_edges.push(parent_edge[x]);
                x = parent[x];
            }
            for (&bv, &be) in b_verts.iter().zip(b_edges.iter()).rev() {
                edges.push(be);
                verts.push(bv);
            }
            edges.push(e);
            debug_assert_eq!(verts.len(), edges.len());
            return (verts, edges);
        }
    }
    unreachable!("biconnected graph with >= 2 edges contains a cycle");
}

/// Shortest path through a fragment from one attachment to a different one;
/// interior vertices are unembedded.  A single-edge fragment is its own path.
fn fragment_path(
    bg: &Graph,
    fragment_edges: &[usize],
    attachments: &[usize],
    emb_v: &[bool],
) -> (Vec<usize>, Vec<usize>) {
    let a = attachments[0];
    if fragment_edges.len() == 1 {
        let (p, q) = bg.endpoints(fragment_edges[0]);
        let b = if p == a { q } else { p };
        return (vec![a, b], vec![fragment_edges[0]]);
    }
    let eset: BTreeSet<usize> = fragment_edges.iter().copied().collect();
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; bg.n()];
    let mut seen = vec![false; bg.n()];
    seen[a] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(a);
    while let Some(x) = queue.pop_front() {
        if x != a && emb_v[x] {
            // Reached another attachment: rebuild the path.
            let mut verts = vec![x];
            let mut edges = Vec::new();
            let mut cur = x;
            while cur != a {
                let (pv, pe) = prev[cur].unwrap();
                edges.push(pe);
                verts.push(pv);
                cur = pv;
            }
            verts.reverse();
            edges.reverse();
            return (verts, edges);
        }
        for &e in bg.edges_at(x) {
            if !eset.contains(&e) {
                continue;
            }
            let y = bg.other_end(e, x);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment connects at least two attachments in a biconnected block");
}

/// Edge set of a minimal nonplanar subgraph (a Kuratowski subdivision):
/// deletes edges greedily while the remainder stays nonplanar.
pub fn kuratowski_edges(g: &Graph) -> Vec<usize> {
    assert!(!is_planar(g), "witness extraction needs a nonplanar graph");
    let mut kept: Vec<bool> = vec![true; g.m()];
    for e in 0..g.m() {
        kept[e] = false;
        let dropped: Vec<usize> = (0..g.m()).filter(|&x| !kept[x]).collect();
        if is_planar(&g.without_edges(&dropped)) {
            kept[e] = true;
        }
    }
    (0..g.m()).filter(|&e| kept[e]).collect()
}

/// Dual graph: one vertex per face, one edge per primal edge joining the two
/// face sides; edge ids match the primal ids.  Fails on bridges (their dual
/// edge would be a loop).
pub fn dual(e: &PlanarEmbedding) -> Result<Graph> {
    let mut pairs = Vec::new();
    for eid in 0..e.graph().m() {
        let f1 = e.face_of(forward_dart(eid));
        let f2 = e.face_of(twin(forward_dart(eid)));
        if f1 == f2 {
            return Err(Error::NotSupported(format!(
                "edge {eid} is a bridge; its dual edge would be a loop"
            )));
        }
        pairs.push((f1, f2));
    }
    Graph::from_edges(e.faces().len(), pairs)
}

/// The natural embedding of the dual: the rotation at a face vertex lists
/// the dual darts in boundary-walk order.  Because the dual edge of `e`
/// stores its endpoints as (left face, right face), dual dart ids coincide
/// with primal dart ids and the rotations are the face walks themselves.
pub fn dual_embedding(e: &PlanarEmbedding) -> Result<PlanarEmbedding> {
    let dg = dual(e)?;
    PlanarEmbedding::new(dg, e.faces().to_vec())
}

/// A digon: two parallel edges bounding a disc.
#[derive(Debug, Clone)]
pub struct Digon {
    pub edges: (usize, usize),
    pub endpoints: (usize, usize),
    /// Faces strictly inside the disc (the side away from the outer face).
    pub inside_faces: BTreeSet<usize>,
    /// Edges strictly inside the disc.
    pub inside_edges: BTreeSet<usize>,
}

/// Faces on the side of the cycle {e1, e2} away from the unbounded region,
/// computed by flood fill over face adjacency that never steps across the
/// two digon edges.  Components are drawn mutually outside each other, so
/// the flood starts at the longest face of the digon's own component and
/// only that component's faces can end up inside.
pub fn digon_inside_faces(emb: &PlanarEmbedding, e1: usize, e2: usize) -> BTreeSet<usize> {
    let g = emb.graph();
    let comps = g.components();
    let mut comp_of = vec![usize::MAX; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let cid = comp_of[g.endpoints(e1).0];
    let nf = emb.faces().len();
    let in_comp: Vec<bool> = (0..nf)
        .map(|f| comp_of[emb.tail(emb.faces()[f][0])] == cid)
        .collect();
    let outer = (0..nf)
        .filter(|&f| in_comp[f])
        .max_by_key(|&f| (emb.face_len(f), usize::MAX - f))
        .expect("digon component has faces");
    let mut reached = vec![false; nf];
    let mut stack = vec![outer];
    reached[outer] = true;
    while let Some(f) = stack.pop() {
        for &d in &emb.faces()[f] {
            let eid = dart_edge(d);
            if eid == e1 || eid == e2 {
                continue;
            }
            let h = emb.face_of(twin(d));
            if !reached[h] {
                reached[h] = true;
                stack.push(h);
            }
        }
    }
    (0..nf).filter(|&f| in_comp[f] && !reached[f]).collect()
}

/// All digons of the embedding with their disc contents.
pub fn digons(emb: &PlanarEmbedding) -> Vec<Digon> {
    let g = emb.graph();
    let mut out = Vec::new();
    for ((u, v), class) in g.parallel_classes() {
        if class.len() < 2 {
            continue;
        }
        for i in 0..class.len() {
            for j in (i + 1)..class.len() {
                let (e1, e2) = (class[i], class[j]);
                let inside_faces = digon_inside_faces(emb, e1, e2);
                let inside_edges = (0..g.m())
                    .filter(|&e| {
                        e != e1
                            && e != e2
                            && inside_faces.contains(&emb.face_of(forward_dart(e)))
                            && inside_faces.contains(&emb.face_of(twin(forward_dart(e))))
                    })
                    .collect();
                out.push(Digon {
                    edges: (e1, e2),
                    endpoints: (u, v),
                    inside_faces,
                    inside_edges,
                });
            }
        }
    }
    out
}

/// The containment order on digons.
#[derive(Debug)]
pub struct DigonPoset {
    pub digons: Vec<Digon>,
    /// Strict relations (i, j) meaning digon i's disc is inside digon j's.
    pub below: Vec<(usize, usize)>,
}

impl DigonPoset {
    /// Cover pairs (child, parent): parent is a minimal strict container.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for &(i, j) in &self.below {
            let has_mid = self
                .below
                .iter()
                .any(|&(a, b)| a == i && b != j && self.below.contains(&(b, j)));
            if !has_mid {
                covers.push((i, j));
            }
        }
        covers
    }

    /// True if every digon has at most one parent in the cover relation.
    pub fn is_forest(&self) -> bool {
        let covers = self.hasse();
        (0..self.digons.len()).all(|i| covers.iter().filter(|&&(a, _)| a == i).count() <= 1)
    }
}

/// Builds the digon containment order: D' below D iff D's closed disc
/// contains both edges of D' and every face inside D'.
pub fn digon_poset(emb: &PlanarEmbedding) -> DigonPoset {
    let ds = digons(emb);
    let mut below = Vec::new();
    for i in 0..ds.len() {
        for j in 0..ds.len() {
            if i == j {
                continue;
            }
            let closed_edges = |d: &Digon| {
                let mut s = d.inside_edges.clone();
                s.insert(d.edges.0);
                s.insert(d.edges.1);
                s
            };
            if ds[i].inside_faces.is_subset(&ds[j].inside_faces)
                && closed_edges(&ds[i]).is_subset(&closed_edges(&ds[j]))
                && ds[i].inside_faces != ds[j].inside_faces
            {
                below.push((i, j));
            }
        }
    }
    DigonPoset { digons: ds, below }
}

/// Clean predicate: every parallel class has a pair of edges whose disc
/// holds exactly the remaining class edges.
pub fn is_clean(emb: &PlanarEmbedding) -> bool {
    let g = emb.graph();
    for (_, class) in g.parallel_classes() {
        if class.len() < 2 {
            continue;
        }
        let rest: fn(&[usize], usize, usize) -> BTreeSet<usize> = |class, a, b| {
            class.iter().copied().filter(|&e| e != a && e != b).collect()
        };
        let mut ok = false;
        'pairs: for i in 0..class.len() {
            for j in (i + 1)..class.len() {
                let inside_faces = digon_inside_faces(emb, class[i], class[j]);
                let inside: BTreeSet<usize> = (0..g.m())
                    .filter(|&e| {
                        e != class[i]
                            && e != class[j]
                            && inside_faces.contains(&emb.face_of(forward_dart(e)))
                            && inside_faces.contains(&emb.face_of(twin(forward_dart(e))))
                    })
                    .collect();
                if inside == rest(&class, class[i], class[j]) {
                    ok = true;
                    break 'pairs;
                }
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Re-nests every parallel class into consecutive rotation slots (reversed
/// at the far endpoint), which makes the embedding clean; clean inputs are
/// returned unchanged.
pub fn clean_normalize(emb: &PlanarEmbedding) -> PlanarEmbedding {
    if is_clean(emb) {
        return emb.clone();
    }
    let g = emb.graph();
    let mut rot: Vec<Vec<usize>> = emb.rotations().to_vec();
    for ((u, v), class) in g.parallel_classes() {
        if class.len() < 2 {
            continue;
        }
        let keep = class[0];
        let class_set: BTreeSet<usize> = class.iter().copied().collect();
        let dart_at = |e: usize, x: usize| {
            if g.endpoints(e).0 == x {
                2 * e
            } else {
                2 * e + 1
            }
        };
        // At u: drop the other class darts, then splice them after keep's.
        let prune = |list: &mut Vec<usize>, x: usize| {
            list.retain(|&d| dart_edge(d) == keep || !class_set.contains(&dart_edge(d)));
            let at = list
                .iter()
                .position(|&d| d == dart_at(keep, x))
                .expect("kept dart present");
            at
        };
        let at_u = prune(&mut rot[u], u);
        for (k, &e) in class.iter().enumerate().skip(1) {
            rot[u].insert(at_u + k, dart_at(e, u));
        }
        let at_v = prune(&mut rot[v], v);
        for &e in class.iter().skip(1) {
            rot[v].insert(at_v, dart_at(e, v));
        }
    }
    PlanarEmbedding::new(g.clone(), rot).expect("re-nesting parallel classes keeps planarity")
}

/// Face counts (|F|, |F'|) where F' holds the faces of length at most r+5.
pub fn short_face_count(emb: &PlanarEmbedding, r: usize) -> Result<(usize, usize)> {
    let g = emb.graph();
    if !g.is_connected() {
        return Err(Error::HypothesisNotMet("face counts need a connected graph".into()));
    }
    if !is_clean(emb) {
        return Err(Error::HypothesisNotMet("face counts need a clean embedding".into()));
    }
    if (0..g.n()).any(|v| g.distinct_neighbor_count(v) < 3) {
        return Err(Error::HypothesisNotMet(
            "face counts need min distinct adjacency >= 3".into(),
        ));
    }
    let total = emb.faces().len();
    let short = (0..total).filter(|&f| emb.face_len(f) <= r + 5).count();
    Ok((total, short))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn small_planarity_verdicts() {
        assert!(is_planar(&gen_complete(4)));
        assert!(!is_planar(&gen_complete(5)));
        assert!(!is_planar(&gen_complete_bipartite(3, 3)));
        assert!(is_planar(&gen_cube()));
        assert!(is_planar(&gen_dodecahedron()));
        assert!(!is_planar(&gen_petersen()));
        assert!(is_planar(&gen_wheel(8)));
        assert!(is_planar(&gen_hn(5)));
        assert!(!is_planar(&gen_cycle_product(4)));
        // Subdividing preserves both verdicts.
        assert!(!is_planar(&gen_k5_subdivided(3).unwrap()));
    }

    #[test]
    fn k4_has_four_triangles() {
        let e = planarity_embed(&gen_complete(4)).embedding().unwrap();
        assert_eq!(e.faces().len(), 4);
        assert!((0..4).all(|f| e.face_len(f) == 3));
    }

    #[test]
    fn cube_and_dodecahedron_faces() {
        let c = planarity_embed(&gen_cube()).embedding().unwrap();
        assert_eq!(c.faces().len(), 6);
        assert!((0..6).all(|f| c.face_len(f) == 4));
        let d = planarity_embed(&gen_dodecahedron()).embedding().unwrap();
        assert_eq!(d.faces().len(), 12);
        assert!((0..12).all(|f| d.face_len(f) == 5));
    }

    #[test]
    fn platonic_duals() {
        let c = planarity_embed(&gen_cube()).embedding().unwrap();
        let oct = dual(&c).unwrap();
        assert_eq!((oct.n(), oct.m()), (6, 12));
        assert!((0..6).all(|v| oct.degree(v) == 4));
        let d = planarity_embed(&gen_dodecahedron()).embedding().unwrap();
        let ico = dual(&d).unwrap();
        assert_eq!((ico.n(), ico.m()), (12, 30));
        assert!((0..12).all(|v| ico.degree(v) == 5));
    }

    #[test]
    fn dual_round_trip() {
        for g in [gen_complete(4), gen_cube(), gen_dodecahedron(), gen_wheel(6)] {
            let e = planarity_embed(&g).embedding().unwrap();
            let de = dual_embedding(&e).unwrap();
            assert_eq!(de.faces().len(), g.n());
        }
    }

    #[test]
    fn parallel_classes_embed_as_nests() {
        let g = Graph::from_edges(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let e = planarity_embed(&g).embedding().unwrap();
        assert_eq!(e.faces().len(), 3);
        assert!((0..3).all(|f| e.face_len(f) == 2));
    }

    #[test]
    fn disconnected_and_isolated() {
        // Two triangles: 4 orbits but 3 plane faces; plus isolated vertex.
        let g = Graph::from_edges(
            7,
            vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        let e = planarity_embed(&g).embedding().unwrap();
        assert_eq!(e.faces().len(), 4);
        assert_eq!(e.plane_face_count(), 3);
        let empty = Graph::from_edges(3, vec![]).unwrap();
        let ee = planarity_embed(&empty).embedding().unwrap();
        assert_eq!(ee.plane_face_count(), 1);
    }

    #[test]
    fn embedding_dump_is_stable() {
        let e = planarity_embed(&gen_complete(4)).embedding().unwrap();
        let d1 = e.dump();
        let e2 = planarity_embed(&gen_complete(4)).embedding().unwrap();
        assert_eq!(d1, e2.dump());
        assert!(d1.contains("v 0:"));
        assert!(d1.contains("f 0:"));
    }

    #[test]
    fn kuratowski_witness_is_minimal() {
        // K5 with two subdivided edges plus noise edges.
        let g = gen_cycle_product(4);
        let k = kuratowski_edges(&g);
        let rest: Vec<usize> = (0..g.m()).filter(|e| !k.contains(e)).collect();
        let witness = g.without_edges(&rest);
        assert!(!is_planar(&witness));
        // Minimality: dropping any witness edge restores planarity.
        for &e in &k {
            let mut drop = rest.clone();
            drop.push(e);
            assert!(is_planar(&g.without_edges(&drop)));
        }
    }

    #[test]
    fn clean_normalization() {
        // Triple edge with pendants wedged into both gaps between copies at
        // vertex 0, so no pair's disc holds exactly the remaining copy.
        let g =
            Graph::from_edges(4, vec![(0, 1), (0, 1), (0, 1), (0, 2), (0, 3)]).unwrap();
        let rot = vec![vec![0, 6, 2, 8, 4], vec![5, 3, 1], vec![7], vec![9]];
        let e = PlanarEmbedding::new(g.clone(), rot).unwrap();
        assert!(!is_clean(&e));
        let c = clean_normalize(&e);
        assert!(is_clean(&c));
        assert_eq!(c.faces().len(), e.faces().len());
        // Idempotent.
        let cc = clean_normalize(&c);
        assert_eq!(cc.rotations(), c.rotations());
        // Simple graphs are identically clean.
        let s = planarity_embed(&gen_cube()).embedding().unwrap();
        assert!(is_clean(&s));
        assert_eq!(clean_normalize(&s).rotations(), s.rotations());
    }

    #[test]
    fn digon_chain_for_nested_triple() {
        let g = Graph::from_edges(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let e = planarity_embed(&g).embedding().unwrap();
        let e = clean_normalize(&e);
        let p = digon_poset(&e);
        assert_eq!(p.digons.len(), 3);
        assert!(p.is_forest());
        // Exactly two strict containments: the widest pair holds both others.
        assert_eq!(p.below.len(), 2);
    }

    #[test]
    fn short_faces_on_platonic_solids() {
        let c = planarity_embed(&gen_cube()).embedding().unwrap();
        assert_eq!(short_face_count(&c, 0).unwrap(), (6, 6));
        let d = planarity_embed(&gen_dodecahedron()).embedding().unwrap();
        assert_eq!(short_face_count(&d, 0).unwrap(), (12, 12));
        assert_eq!(short_face_count(&d, 3).unwrap(), (12, 12));
        // Bound arithmetic from the examples: r=3 needs (3*12+12)/6 = 8 <= 12.
        assert!(12 >= (3 * 12 + 12) / (3 + 3));
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let pe = planarity_embed(&path).embedding().unwrap();
        assert!(matches!(
            short_face_count(&pe, 0),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn blocks_of_h2() {
        // H_2 is 2-connected: a single block.
        assert_eq!(blocks(&gen_hn(2)).len(), 1);
        // A path has one block per edge.
        let p = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(blocks(&p).len(), 3);
        // Doubled edge: one block with both copies.
        let d = Graph::from_edges(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        let bs = blocks(&d);
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().any(|b| b.len() == 2));
    }

    #[test]
    fn rotation_validation_rejects_garbage() {
        let g = gen_complete(4);
        // Wrong vertex count.
        assert!(PlanarEmbedding::new(g.clone(), vec![vec![]; 3]).is_err());
        // K5 has no planar rotation system: any system fails Euler.
        let k5 = gen_complete(5);
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); 5];
        for v in 0..5 {
            for e in 0..k5.m() {
                let (a, b) = k5.endpoints(e);
                if a == v {
                    rot[v].push(2 * e);
                } else if b == v {
                    rot[v].push(2 * e + 1);
                }
            }
        }
        assert!(PlanarEmbedding::new(k5, rot).is_err());
    }
}
