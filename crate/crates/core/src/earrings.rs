//! Light edges of embedded graphs and their earrings: a base edge plus two
//! bounded-length, low-internal-degree paths between its endpoints.  Extracts
//! pairwise edge-disjoint families through a conflict-graph independent set,
//! both directly on planar hosts and through an optimal planarized drawing
//! for nonplanar ones.

use crate::decompose::{self, ConnectivityLevel};
use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planar::{self, dart_edge, twin, PlanarEmbedding};
use crate::solver;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Duration;

/// Path-length and internal-degree limits for earrings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EarringParams {
    /// Maximum number of edges on each path.
    pub ell: usize,
    /// Strict upper bound on internal-vertex degrees.
    pub delta: usize,
}

impl EarringParams {
    pub fn new(ell: usize, delta: usize) -> Result<EarringParams> {
        if ell < 1 || delta < 1 {
            return Err(Error::InvalidArgument(
                "earring parameters must be positive".into(),
            ));
        }
        Ok(EarringParams { ell, delta })
    }

    /// The reference preset used by the symbolic guarantees.
    pub fn preset() -> EarringParams {
        EarringParams {
            ell: 5000,
            delta: 500,
        }
    }

    /// Conflict graphs on light edges have maximum degree at most
    /// `2 ell (2 ell + 1)`.
    pub fn conflict_degree_bound(&self) -> usize {
        2 * self.ell * (2 * self.ell + 1)
    }
}

/// Coefficients of the extraction guarantees, tied to the reference preset.
/// They are only meaningful for symbolic bound reports; at desk scale the
/// guaranteed counts are far below one.
#[derive(Debug, Clone, Copy)]
pub struct GuaranteeConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub z1: f64,
}

pub const GUARANTEE: GuaranteeConstants = GuaranteeConstants {
    c1: 1e-10,
    c2: 1e-5,
    c3: 999.0 / 1000.0,
    c4: 1.0 / 1000.0,
    c5: 999.0,
    c6: 36.0 / 5000.0,
    c7: 1e-5 + 2.0,
    z1: 3e-10,
};

/// A base edge `uv` together with two distinct `uv`-paths within the limits;
/// edges on both paths must pair with the base as a 2-edge-cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Earring {
    pub base: usize,
    pub p_vertices: Vec<usize>,
    pub p_edges: Vec<usize>,
    pub q_vertices: Vec<usize>,
    pub q_edges: Vec<usize>,
    /// Edges on both paths, ascending; each verified against the base.
    pub shared: Vec<usize>,
}

impl Earring {
    /// All edge ids of the subgraph: base plus both paths.
    pub fn edge_set(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.p_edges.iter().copied().collect();
        s.extend(self.q_edges.iter().copied());
        s.insert(self.base);
        s
    }

    /// All vertices of the subgraph.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.p_vertices.iter().copied().collect();
        s.extend(self.q_vertices.iter().copied());
        s
    }

    /// One-line dump: `base e; P = v…v; Q = v…v; shared = [edge ids]`.
    pub fn dump(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "base {}; P = {}; Q = {}; shared = [{}]",
            self.base,
            join(&self.p_vertices),
            join(&self.q_vertices),
            join(&self.shared),
        )
    }
}

/// True if removing both edges disconnects the graph while neither alone
/// does.
pub fn is_two_edge_cut(g: &Graph, e: usize, f: usize) -> bool {
    if e == f {
        return false;
    }
    let base = g.components().len();
    g.without_edges(&[e, f]).components().len() > base
        && g.without_edges(&[e]).components().len() == base
        && g.without_edges(&[f]).components().len() == base
}

fn check_path(
    g: &Graph,
    vertices: &[usize],
    edges: &[usize],
    u: usize,
    v: usize,
    banned: usize,
) -> Result<()> {
    let bad = |msg: &str| Err(Error::InvalidArgument(format!("invalid earring path: {msg}")));
    if edges.is_empty() || vertices.len() != edges.len() + 1 {
        return bad("length mismatch");
    }
    if vertices[0] != u || *vertices.last().unwrap() != v {
        return bad("endpoints");
    }
    let mut seen = BTreeSet::new();
    for &x in vertices {
        if !seen.insert(x) {
            return bad("repeated vertex");
        }
    }
    let mut eseen = BTreeSet::new();
    for (i, &e) in edges.iter().enumerate() {
        if e == banned || !eseen.insert(e) {
            return bad("base edge reused or repeated edge");
        }
        let (a, b) = g.endpoints(e);
        if (a, b) != (vertices[i], vertices[i + 1]) && (b, a) != (vertices[i], vertices[i + 1]) {
            return bad("edge does not join consecutive vertices");
        }
    }
    Ok(())
}

/// Independent certificate re-check of a claimed earring: path validity,
/// length and degree limits, distinctness, and the cut condition on every
/// shared edge.
pub fn verify_earring(g: &Graph, p: &EarringParams, ear: &Earring) -> Result<()> {
    let (u, v) = g.endpoints(ear.base);
    check_path(g, &ear.p_vertices, &ear.p_edges, u, v, ear.base)?;
    check_path(g, &ear.q_vertices, &ear.q_edges, u, v, ear.base)?;
    if ear.p_edges == ear.q_edges {
        return Err(Error::InvalidArgument("paths are not distinct".into()));
    }
    if ear.p_edges.len() > p.ell || ear.q_edges.len() > p.ell {
        return Err(Error::InvalidArgument("path exceeds length limit".into()));
    }
    for path in [&ear.p_vertices, &ear.q_vertices] {
        for &x in &path[1..path.len() - 1] {
            if g.degree(x) >= p.delta {
                return Err(Error::InvalidArgument(format!(
                    "internal vertex {x} has degree {} >= {}",
                    g.degree(x),
                    p.delta
                )));
            }
        }
    }
    let pset: BTreeSet<usize> = ear.p_edges.iter().copied().collect();
    let shared: Vec<usize> = ear
        .q_edges
        .iter()
        .copied()
        .filter(|e| pset.contains(e))
        .collect();
    let mut sorted = shared.clone();
    sorted.sort_unstable();
    if sorted != ear.shared {
        return Err(Error::InvalidArgument("shared-edge record mismatch".into()));
    }
    for &f in &ear.shared {
        if !is_two_edge_cut(g, ear.base, f) {
            return Err(Error::InvalidArgument(format!(
                "shared edge {f} does not form a 2-edge-cut with the base"
            )));
        }
    }
    Ok(())
}

fn require_two_connected(g: &Graph) -> Result<()> {
    match decompose::connectivity_level(g) {
        ConnectivityLevel::Two | ConnectivityLevel::ThreePlus => Ok(()),
        _ => Err(Error::HypothesisNotMet("host must be 2-connected".into())),
    }
}

// ---------------------------------------------------------------------------
// Light edges in embeddings
// ---------------------------------------------------------------------------

/// Edges whose two incident faces both have length at most `ell + 1` and
/// carry no vertex of degree >= `delta` besides possibly the endpoints.
pub fn ld_edges(emb: &PlanarEmbedding, p: &EarringParams) -> Result<Vec<usize>> {
    let g = emb.graph();
    require_two_connected(g)?;
    let mut out = Vec::new();
    'edges: for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        for d in [2 * e, 2 * e + 1] {
            let f = emb.face_of(d);
            if emb.face_len(f) > p.ell + 1 {
                continue 'edges;
            }
            for &fd in &emb.faces()[f] {
                let x = emb.tail(fd);
                if x != u && x != v && g.degree(x) >= p.delta {
                    continue 'edges;
                }
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// The face walk of the side `d` of edge `dart_edge(d)`, with that edge
/// removed: a path between the edge's endpoints, oriented from the dart's
/// head back to its tail.
fn face_path(emb: &PlanarEmbedding, d: usize) -> (Vec<usize>, Vec<usize>) {
    let f = emb.face_of(d);
    let walk = &emb.faces()[f];
    let start = walk.iter().position(|&x| x == d).expect("dart on its face");
    let mut vertices = vec![emb.head(d)];
    let mut edges = Vec::new();
    for i in 1..walk.len() {
        let x = walk[(start + i) % walk.len()];
        edges.push(dart_edge(x));
        vertices.push(emb.head(x));
    }
    (vertices, edges)
}

/// The earring associated with a light edge: its two face boundaries minus
/// the edge itself.
pub fn earring_of_edge(
    emb: &PlanarEmbedding,
    edge: usize,
    p: &EarringParams,
) -> Result<Earring> {
    let g = emb.graph();
    if !ld_edges(emb, p)?.contains(&edge) {
        return Err(Error::InvalidArgument(format!(
            "edge {edge} is not a light edge for (ell, delta) = ({}, {})",
            p.ell, p.delta
        )));
    }
    let (u, _v) = g.endpoints(edge);
    // Side 2e runs u -> v, so its face path comes back v -> ... -> u;
    // reverse it to orient u -> v.  Side 2e+1 yields u -> v directly.
    let (mut pv, mut pe) = face_path(emb, 2 * edge);
    pv.reverse();
    pe.reverse();
    let (qv, qe) = face_path(emb, 2 * edge + 1);
    debug_assert_eq!(pv[0], u);
    debug_assert_eq!(qv[0], u);
    let pset: BTreeSet<usize> = pe.iter().copied().collect();
    let mut shared: Vec<usize> = qe.iter().copied().filter(|e| pset.contains(e)).collect();
    shared.sort_unstable();
    let ear = Earring {
        base: edge,
        p_vertices: pv,
        p_edges: pe,
        q_vertices: qv,
        q_edges: qe,
        shared,
    };
    verify_earring(g, p, &ear)?;
    Ok(ear)
}

// ---------------------------------------------------------------------------
// General search in abstract graphs
// ---------------------------------------------------------------------------

/// Simple `u`-`v` paths of at most `ell` edges avoiding `banned`, internal
/// vertices of degree < `delta`; deterministic order, capped in size.
fn bounded_paths(
    g: &Graph,
    u: usize,
    v: usize,
    banned: usize,
    p: &EarringParams,
    cap: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut vstack = vec![u];
    let mut estack: Vec<usize> = Vec::new();
    fn dfs(
        g: &Graph,
        v: usize,
        banned: usize,
        p: &EarringParams,
        cap: usize,
        vstack: &mut Vec<usize>,
        estack: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        if out.len() >= cap {
            return;
        }
        let here = *vstack.last().unwrap();
        if here == v {
            out.push((vstack.clone(), estack.clone()));
            return;
        }
        if estack.len() == p.ell {
            return;
        }
        let mut next: Vec<usize> = g.edges_at(here).to_vec();
        next.sort_unstable();
        for e in next {
            if e == banned || estack.contains(&e) {
                continue;
            }
            let w = g.other_end(e, here);
            if vstack.contains(&w) {
                continue;
            }
            // w will be internal unless it is the target.
            if w != v && g.degree(w) >= p.delta {
                continue;
            }
            vstack.push(w);
            estack.push(e);
            dfs(g, v, banned, p, cap, vstack, estack, out);
            vstack.pop();
            estack.pop();
        }
    }
    dfs(g, v, banned, p, cap, &mut vstack, &mut estack, &mut out);
    out
}

/// All earrings with the given base edge, up to `limit`: every unordered
/// pair of admissible paths whose shared edges satisfy the cut condition.
pub fn earring_search(g: &Graph, edge: usize, p: &EarringParams, limit: usize) -> Vec<Earring> {
    let (u, v) = g.endpoints(edge);
    let paths = bounded_paths(g, u, v, edge, p, 4096);
    let mut out = Vec::new();
    'pairs: for i in 0..paths.len() {
        for j in (i + 1)..paths.len() {
            if out.len() >= limit {
                break 'pairs;
            }
            let (pv, pe) = &paths[i];
            let (qv, qe) = &paths[j];
            let pset: BTreeSet<usize> = pe.iter().copied().collect();
            let mut shared: Vec<usize> =
                qe.iter().copied().filter(|e| pset.contains(e)).collect();
            shared.sort_unstable();
            if shared.iter().any(|&f| !is_two_edge_cut(g, edge, f)) {
                continue;
            }
            let ear = Earring {
                base: edge,
                p_vertices: pv.clone(),
                p_edges: pe.clone(),
                q_vertices: qv.clone(),
                q_edges: qe.clone(),
                shared,
            };
            debug_assert!(verify_earring(g, p, &ear).is_ok());
            out.push(ear);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Anchors
// ---------------------------------------------------------------------------

/// A set of vertices claimed to anchor the host: none of them lies in a
/// 2-vertex-cut, and every nontrivial bridge of every 2-cut meets the set.
#[derive(Debug, Clone, Default)]
pub struct AnchorSet {
    pub vertices: Vec<usize>,
}

impl AnchorSet {
    pub fn new(vertices: Vec<usize>) -> AnchorSet {
        AnchorSet { vertices }
    }

    pub fn empty() -> AnchorSet {
        AnchorSet { vertices: Vec::new() }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// Outcome of an anchor check: either both clauses hold, or a witness cut
/// (with the offending bridge interior, for the second clause).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnchorVerdict {
    Ok,
    Violation {
        cut: (usize, usize),
        bridge_interior: Option<Vec<usize>>,
    },
}

/// Checks the two anchor clauses against every 2-vertex-cut of the host.
pub fn anchor_check(g: &Graph, z: &AnchorSet) -> Result<AnchorVerdict> {
    require_two_connected(g)?;
    for (u, v) in decompose::two_cuts(g) {
        if z.contains(u) || z.contains(v) {
            return Ok(AnchorVerdict::Violation {
                cut: (u, v),
                bridge_interior: None,
            });
        }
        for b in decompose::uv_bridges(g, u, v) {
            if b.trivial {
                continue;
            }
            let met = b.interior.iter().any(|&x| z.contains(x))
                || (b.touches_u && z.contains(u))
                || (b.touches_v && z.contains(v));
            if !met {
                return Ok(AnchorVerdict::Violation {
                    cut: (u, v),
                    bridge_interior: Some(b.interior.clone()),
                });
            }
        }
    }
    Ok(AnchorVerdict::Ok)
}

// ---------------------------------------------------------------------------
// Disjoint families via the conflict graph
// ---------------------------------------------------------------------------

/// Result of a disjoint-family extraction.
#[derive(Debug, Clone)]
pub struct ExtractionReport {
    /// Pairwise edge-disjoint earrings, by ascending base edge.
    pub earrings: Vec<Earring>,
    /// All qualifying light-edge ids.
    pub candidates: Vec<usize>,
    /// Maximum degree observed in the conflict graph.
    pub max_conflict_degree: usize,
    /// Symbolic guaranteed count (may be vacuous at small scale).
    pub guarantee: f64,
    pub summary: String,
}

fn greedy_independent(neighbors: &[Vec<usize>]) -> Vec<usize> {
    let n = neighbors.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (neighbors[i].len(), i));
    let mut picked = vec![false; n];
    let mut blocked = vec![false; n];
    for &i in &order {
        if blocked[i] {
            continue;
        }
        picked[i] = true;
        for &j in &neighbors[i] {
            blocked[j] = true;
        }
        blocked[i] = true;
    }
    (0..n).filter(|&i| picked[i]).collect()
}

fn conflict_neighbors(ears: &[Earring]) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<usize>> = ears.iter().map(|e| e.edge_set()).collect();
    let mut neighbors = vec![Vec::new(); ears.len()];
    for i in 0..ears.len() {
        for j in (i + 1)..ears.len() {
            if !sets[i].is_disjoint(&sets[j]) {
                neighbors[i].push(j);
                neighbors[j].push(i);
            }
        }
    }
    neighbors
}

/// Extracts a pairwise edge-disjoint earring family from an embedded planar
/// host: all light edges, their associated earrings, a conflict graph, and
/// a greedy maximal independent set, re-verified for disjointness.
pub fn disjoint_earrings_planar(
    emb: &PlanarEmbedding,
    p: &EarringParams,
    z: &AnchorSet,
) -> Result<ExtractionReport> {
    let g = emb.graph();
    require_two_connected(g)?;
    if (0..g.n()).any(|v| g.distinct_neighbor_count(v) < 3) {
        return Err(Error::HypothesisNotMet(
            "every vertex must be adjacent to at least 3 distinct vertices".into(),
        ));
    }
    for &zv in &z.vertices {
        if g.degree(zv) != 4 {
            return Err(Error::HypothesisNotMet(format!(
                "anchor vertex {zv} must have degree 4, has {}",
                g.degree(zv)
            )));
        }
    }
    match anchor_check(g, z)? {
        AnchorVerdict::Ok => {}
        AnchorVerdict::Violation { cut, .. } => {
            return Err(Error::Counterexample(format!(
                "anchor violation at cut ({}, {})",
                cut.0, cut.1
            )));
        }
    }
    let candidates = ld_edges(emb, p)?;
    let ears: Vec<Earring> = candidates
        .iter()
        .map(|&e| earring_of_edge(emb, e, p))
        .collect::<Result<_>>()?;
    let neighbors = conflict_neighbors(&ears);
    let max_conflict_degree = neighbors.iter().map(Vec::len).max().unwrap_or(0);
    assert!(
        max_conflict_degree <= p.conflict_degree_bound(),
        "conflict degree {} exceeds the bound {} for ell = {}",
        max_conflict_degree,
        p.conflict_degree_bound(),
        p.ell
    );
    let picked = greedy_independent(&neighbors);
    let chosen: Vec<Earring> = picked.iter().map(|&i| ears[i].clone()).collect();
    for (a, i) in chosen.iter().enumerate() {
        verify_earring(g, p, i)?;
        for j in chosen.iter().skip(a + 1) {
            assert!(
                i.edge_set().is_disjoint(&j.edge_set()),
                "extracted earrings must be pairwise edge-disjoint"
            );
        }
    }
    let guarantee = GUARANTEE.c1 * g.m() as f64 - GUARANTEE.c2 * z.vertices.len() as f64;
    let mut summary = String::new();
    writeln!(
        summary,
        "light edges: {} of {}; conflict degree <= {} (bound {})",
        candidates.len(),
        g.m(),
        max_conflict_degree,
        p.conflict_degree_bound()
    )
    .unwrap();
    writeln!(
        summary,
        "guaranteed count: {:.3e}*|E={}| - {:.3e}*|Z={}| = {:.6e}{}",
        GUARANTEE.c1,
        g.m(),
        GUARANTEE.c2,
        z.vertices.len(),
        guarantee,
        if guarantee < 1.0 { " (vacuous)" } else { "" }
    )
    .unwrap();
    writeln!(summary, "found: {}", chosen.len()).unwrap();
    Ok(ExtractionReport {
        earrings: chosen,
        candidates,
        max_conflict_degree,
        guarantee,
        summary,
    })
}

/// Result of the nonplanar pipeline: earrings on the input graph plus the
/// drawing-side accounting.
#[derive(Debug, Clone)]
pub struct NonplanarReport {
    /// Green-free earrings mapped back to the input graph's edges.
    pub earrings: Vec<Earring>,
    /// Crossing number of the optimal drawing used.
    pub crossings: usize,
    /// Earrings dropped for touching a green vertex.
    pub discarded: usize,
    pub guarantee: f64,
    pub summary: String,
}

/// Extraction through an optimal drawing: solve exactly, planarize, verify
/// the structural facts optimality promises for the planarization, extract
/// on it with the green vertices as anchors, and keep the green-free
/// earrings, which are earrings of the input graph.
pub fn disjoint_earrings_nonplanar(
    g: &Graph,
    p: &EarringParams,
    budget: Option<Duration>,
) -> Result<NonplanarReport> {
    require_two_connected(g)?;
    if !decompose::is_irreducible(g)? {
        return Err(Error::HypothesisNotMet("host must be irreducible".into()));
    }
    let outcome = solver::crossing_number_exact(g, 64, budget)?;
    let (t, witness) = match outcome {
        solver::CrossingOutcome::Exact { value, witness } => (value, witness),
        solver::CrossingOutcome::Bounds { lower, upper, .. } => {
            return Err(Error::BudgetExhausted(format!(
                "exact solve unavailable within budget (bounds {lower}..{upper:?})"
            )))
        }
    };
    let h = witness.planarization().clone();
    let greens: Vec<usize> = witness.greens().to_vec();
    // Structural facts of an optimal drawing's planarization; failures would
    // witness a non-optimal drawing.
    for v in 0..h.n() {
        if h.distinct_neighbor_count(v) < 3 {
            return Err(Error::Counterexample(format!(
                "planarization vertex {v} has fewer than 3 distinct neighbors"
            )));
        }
    }
    if !matches!(
        decompose::connectivity_level(&h),
        ConnectivityLevel::Two | ConnectivityLevel::ThreePlus
    ) {
        return Err(Error::Counterexample(
            "planarization is not 2-connected".into(),
        ));
    }
    for (u, v) in decompose::two_cuts(&h) {
        if greens.contains(&u) || greens.contains(&v) {
            return Err(Error::Counterexample(format!(
                "green vertex in the 2-cut ({u}, {v}) of the planarization"
            )));
        }
    }
    let z = AnchorSet::new(greens.clone());
    if let AnchorVerdict::Violation { cut, .. } = anchor_check(&h, &z)? {
        return Err(Error::Counterexample(format!(
            "green vertices do not anchor the planarization (cut {}, {})",
            cut.0, cut.1
        )));
    }
    let emb = match planar::planarity_embed(&planar::clean_normalize(&h)?.0) {
        planar::Planarity::Planar(e) => e,
        planar::Planarity::NonPlanar => unreachable!("planarization is planar"),
    };
    let report = disjoint_earrings_planar(&emb, p, &z)?;
    let mut kept = Vec::new();
    let mut discarded = 0usize;
    let parent_edge = |e: usize| {
        h.provenance().unwrap().edge_to_parent[e].expect("pieces map to original edges")
    };
    for ear in &report.earrings {
        if ear.vertex_set().iter().any(|v| z.contains(*v)) {
            discarded += 1;
            continue;
        }
        // Green-free: every edge is an uncrossed original edge.
        let lifted = Earring {
            base: parent_edge(ear.base),
            p_vertices: ear.p_vertices.clone(),
            p_edges: ear.p_edges.iter().map(|&e| parent_edge(e)).collect(),
            q_vertices: ear.q_vertices.clone(),
            q_edges: ear.q_edges.iter().map(|&e| parent_edge(e)).collect(),
            shared: {
                let mut s: Vec<usize> = ear.shared.iter().map(|&e| parent_edge(e)).collect();
                s.sort_unstable();
                s
            },
        };
        verify_earring(g, p, &lifted)?;
        kept.push(lifted);
    }
    assert!(
        discarded <= 2 * t,
        "at most two earrings can be lost per crossing (lost {discarded}, crossings {t})"
    );
    let guarantee = GUARANTEE.c1 * g.m() as f64 - GUARANTEE.c7 * t as f64;
    let mut summary = String::new();
    writeln!(summary, "optimal drawing: {t} crossings").unwrap();
    write!(summary, "{}", report.summary).unwrap();
    writeln!(
        summary,
        "green-free kept: {} (discarded {discarded} <= {})",
        kept.len(),
        2 * t
    )
    .unwrap();
    writeln!(
        summary,
        "guaranteed count: {:.3e}*|E={}| - {:.3e}*t={} = {:.6e}{}",
        GUARANTEE.c1,
        g.m(),
        GUARANTEE.c7,
        t,
        guarantee,
        if guarantee < 1.0 { " (vacuous)" } else { "" }
    )
    .unwrap();
    Ok(NonplanarReport {
        earrings: kept,
        crossings: t,
        discarded,
        guarantee,
        summary,
    })
}

/// Keeps a drawing-based pipeline honest: the planarization of `d` embeds,
/// and its green vertices form an anchor set.
pub fn greens_anchor(d: &Drawing) -> Result<AnchorVerdict> {
    anchor_check(d.planarization(), &AnchorSet::new(d.greens().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        gen_cube, gen_cycle_product, gen_dodecahedron, gen_hn, gen_petersen, gen_wheel,
    };
    use crate::planar::{planarity_embed, Planarity};

    fn embed(g: &Graph) -> PlanarEmbedding {
        match planarity_embed(g) {
            Planarity::Planar(e) => e,
            Planarity::NonPlanar => panic!("test host must be planar"),
        }
    }

    /// Exhaustive maximum-independent-set size, for cross-checking greedy
    /// extraction on small conflict graphs.
    fn mis_size(neighbors: &[Vec<usize>]) -> usize {
        fn rec(neighbors: &[Vec<usize>], alive: &mut Vec<bool>) -> usize {
            let pick = (0..neighbors.len())
                .filter(|&i| alive[i])
                .max_by_key(|&i| neighbors[i].iter().filter(|&&j| alive[j]).count());
            let Some(i) = pick else { return 0 };
            if neighbors[i].iter().all(|&j| !alive[j]) {
                // Isolated among the living: always take it.
                alive[i] = false;
                let r = 1 + rec(neighbors, alive);
                alive[i] = true;
                return r;
            }
            // Branch: exclude i, or include i and exclude its neighbors.
            alive[i] = false;
            let without = rec(neighbors, alive);
            let mut removed = vec![i];
            for &j in &neighbors[i] {
                if alive[j] {
                    alive[j] = false;
                    removed.push(j);
                }
            }
            let with = 1 + rec(neighbors, alive);
            for j in removed {
                alive[j] = true;
            }
            alive[i] = true;
            without.max(with)
        }
        let mut alive = vec![true; neighbors.len()];
        rec(neighbors, &mut alive)
    }

    #[test]
    fn light_edges_on_the_cube() {
        let g = gen_cube();
        let emb = embed(&g);
        let all = ld_edges(&emb, &EarringParams::new(4, 5).unwrap()).unwrap();
        assert_eq!(all.len(), 12);
        let none = ld_edges(&emb, &EarringParams::new(2, 5).unwrap()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn light_edges_on_the_wheel() {
        // Spokes qualify: the degree-8 hub is an exempt endpoint, triangle
        // faces have length 3, and rim internal vertices have degree 3.  Rim
        // edges fail: their triangle face carries the hub as a non-endpoint
        // and the outer face is too long.
        let g = gen_wheel(8);
        let hub = 8;
        let emb = embed(&g);
        let got = ld_edges(&emb, &EarringParams::new(3, 8).unwrap()).unwrap();
        let spokes: Vec<usize> = (0..g.m())
            .filter(|&e| {
                let (a, b) = g.endpoints(e);
                a == hub || b == hub
            })
            .collect();
        assert_eq!(got, spokes);
        assert_eq!(got.len(), 8);
    }

    #[test]
    fn associated_earring_on_the_cube() {
        let g = gen_cube();
        let emb = embed(&g);
        let p = EarringParams::new(4, 5).unwrap();
        let ear = earring_of_edge(&emb, 0, &p).unwrap();
        assert_eq!(ear.p_edges.len(), 3);
        assert_eq!(ear.q_edges.len(), 3);
        assert!(ear.shared.is_empty());
        verify_earring(&g, &p, &ear).unwrap();
        // A heavier edge id fails the qualification gate.
        assert!(earring_of_edge(&emb, 0, &EarringParams::new(2, 5).unwrap()).is_err());
    }

    #[test]
    fn digon_face_gives_a_length_one_path() {
        // Triangle with one doubled side: the doubled pair bounds a digon.
        let g = Graph::from_edges(3, vec![(0, 1), (0, 1), (1, 2), (2, 0)]).unwrap();
        let emb = embed(&g);
        let p = EarringParams::new(3, 5).unwrap();
        let ear = earring_of_edge(&emb, 0, &p).unwrap();
        let lens = {
            let mut l = [ear.p_edges.len(), ear.q_edges.len()];
            l.sort_unstable();
            l
        };
        assert_eq!(lens, [1, 2]);
    }

    #[test]
    fn shared_edge_records_a_cut() {
        // Vertices 0, 1, 2 with a doubled 0-1 edge, a 0-2 base and the 1-2
        // link: both faces of the base reuse edge 3, and {base, 3} is a
        // 2-edge-cut (their removal isolates vertex 2).
        let g = Graph::from_edges(3, vec![(0, 1), (0, 1), (0, 2), (1, 2)]).unwrap();
        let emb = embed(&g);
        let p = EarringParams::new(3, 5).unwrap();
        let ear = earring_of_edge(&emb, 2, &p).unwrap();
        assert_eq!(ear.shared, vec![3]);
        assert!(is_two_edge_cut(&g, 2, 3));
        assert!(!is_two_edge_cut(&g, 0, 1));
    }

    #[test]
    fn search_on_k4_finds_one_earring_per_edge() {
        let g = crate::constructions::gen_complete(4);
        let p = EarringParams::new(2, 4).unwrap();
        for e in 0..g.m() {
            let ears = earring_search(&g, e, &p, 16);
            assert_eq!(ears.len(), 1, "edge {e}");
            assert_eq!(ears[0].p_edges.len(), 2);
            assert_eq!(ears[0].q_edges.len(), 2);
        }
    }

    #[test]
    fn search_on_cycle_product_side_edges() {
        let g = gen_cycle_product(4);
        let p = EarringParams::new(3, 5).unwrap();
        // Triangle side (0,0)-(1,0): edge id 0.
        let ears = earring_search(&g, 0, &p, 64);
        assert!(!ears.is_empty());
        let has_two_three = ears.iter().any(|e| {
            let mut l = [e.p_edges.len(), e.q_edges.len()];
            l.sort_unstable();
            l == [2, 3]
        });
        assert!(has_two_three, "expected a pair through the third triangle vertex and the adjacent triangle");
        for e in &ears {
            verify_earring(&g, &p, e).unwrap();
        }
    }

    #[test]
    fn hn_family_has_no_earrings() {
        for n in [10usize, 30, 50] {
            let g = gen_hn(n);
            for ell in [1usize, 5, 10] {
                let p = EarringParams::new(ell, 20).unwrap();
                for e in 0..g.m() {
                    assert!(
                        earring_search(&g, e, &p, 4).is_empty(),
                        "n = {n}, ell = {ell}, edge {e}"
                    );
                }
            }
        }
    }

    #[test]
    fn anchor_checks() {
        // 3-connected: no 2-cuts, any claim passes.
        let g = gen_cycle_product(4);
        assert_eq!(anchor_check(&g, &AnchorSet::empty()).unwrap(), AnchorVerdict::Ok);
        // H3 with an empty set: nontrivial bridges of the (0, 1) cut carry
        // no anchor vertex.
        let h3 = gen_hn(3);
        match anchor_check(&h3, &AnchorSet::empty()).unwrap() {
            AnchorVerdict::Violation { cut, bridge_interior } => {
                assert_eq!(cut, (0, 1));
                assert!(bridge_interior.is_some());
            }
            AnchorVerdict::Ok => panic!("expected a violation"),
        }
        // Any anchor vertex inside a cut violates the first clause.
        match anchor_check(&h3, &AnchorSet::new(vec![0])).unwrap() {
            AnchorVerdict::Violation { bridge_interior, .. } => {
                assert_eq!(bridge_interior, None);
            }
            AnchorVerdict::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn planar_extraction_on_platonic_hosts() {
        // Cube earrings span 7 of 12 edges, so no two are edge-disjoint:
        // the conflict graph is complete and any maximal set has size 1.
        let cube = gen_cube();
        let r = disjoint_earrings_planar(
            &embed(&cube),
            &EarringParams::new(4, 5).unwrap(),
            &AnchorSet::empty(),
        )
        .unwrap();
        assert_eq!(r.candidates.len(), 12);
        assert_eq!(r.max_conflict_degree, 11);
        assert_eq!(r.earrings.len(), 1);
        assert!(r.guarantee < 1.0);
        assert!(r.summary.contains("vacuous"));
        // Dodecahedron earrings span 9 of 30 edges, capping any disjoint
        // family at 3; the greedy set matches the exhaustive optimum.
        let dodeca = gen_dodecahedron();
        let r = disjoint_earrings_planar(
            &embed(&dodeca),
            &EarringParams::new(5, 4).unwrap(),
            &AnchorSet::empty(),
        )
        .unwrap();
        assert_eq!(r.candidates.len(), 30);
        let ears: Vec<Earring> = r
            .candidates
            .iter()
            .map(|&e| earring_of_edge(&embed(&dodeca), e, &EarringParams::new(5, 4).unwrap()).unwrap())
            .collect();
        let exact = mis_size(&conflict_neighbors(&ears));
        assert!(exact <= 3);
        assert!(r.earrings.len() >= 1 && r.earrings.len() <= exact);
        // With the reference preset the guarantee is vacuous but extraction
        // still returns a family.
        let r = disjoint_earrings_planar(
            &embed(&dodeca),
            &EarringParams::preset(),
            &AnchorSet::empty(),
        )
        .unwrap();
        assert!(r.guarantee < 1.0);
        assert!(!r.earrings.is_empty());
    }

    #[test]
    fn planar_extraction_rejects_bad_hypotheses() {
        // A path host is not 2-connected.
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            disjoint_earrings_planar(
                &embed(&path),
                &EarringParams::new(3, 5).unwrap(),
                &AnchorSet::empty()
            ),
            Err(Error::HypothesisNotMet(_))
        ));
        // Anchor vertices must have degree 4.
        let cube = gen_cube();
        assert!(matches!(
            disjoint_earrings_planar(
                &embed(&cube),
                &EarringParams::new(4, 5).unwrap(),
                &AnchorSet::new(vec![0])
            ),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn nonplanar_pipeline_on_planar_host_is_the_planar_pipeline() {
        let cube = gen_cube();
        let r = disjoint_earrings_nonplanar(&cube, &EarringParams::new(4, 5).unwrap(), None)
            .unwrap();
        assert_eq!(r.crossings, 0);
        assert_eq!(r.discarded, 0);
        assert_eq!(r.earrings.len(), 1);
    }

    #[test]
    fn nonplanar_pipeline_on_k5() {
        let g = crate::constructions::gen_complete(5);
        let p = EarringParams::new(3, 5).unwrap();
        let r = disjoint_earrings_nonplanar(&g, &p, None).unwrap();
        assert_eq!(r.crossings, 1);
        assert!(!r.earrings.is_empty());
        for e in &r.earrings {
            verify_earring(&g, &p, e).unwrap();
        }
        assert!(r.discarded <= 2);
    }

    #[test]
    fn nonplanar_pipeline_on_cycle_product() {
        let g = gen_cycle_product(4);
        let p = EarringParams::new(3, 5).unwrap();
        let r = disjoint_earrings_nonplanar(&g, &p, None).unwrap();
        assert_eq!(r.crossings, 4);
        assert!(!r.earrings.is_empty());
        // Pairwise disjoint on the host graph.
        for (a, i) in r.earrings.iter().enumerate() {
            verify_earring(&g, &p, i).unwrap();
            for j in r.earrings.iter().skip(a + 1) {
                assert!(i.edge_set().is_disjoint(&j.edge_set()));
            }
        }
        assert!(r.discarded <= 8);
    }

    #[test]
    fn nonplanar_pipeline_requires_irreducible_hosts() {
        let h3 = gen_hn(3);
        assert!(matches!(
            disjoint_earrings_nonplanar(&h3, &EarringParams::new(3, 5).unwrap(), None),
            Err(Error::HypothesisNotMet(_))
        ));
        // Petersen is 3-connected, hence irreducible; run end to end.
        let r = disjoint_earrings_nonplanar(&gen_petersen(), &EarringParams::new(5, 4).unwrap(), None)
            .unwrap();
        assert_eq!(r.crossings, 2);
        assert!(r.discarded <= 4);
    }

    #[test]
    fn dump_format() {
        let g = crate::constructions::gen_complete(4);
        let p = EarringParams::new(2, 4).unwrap();
        let ear = &earring_search(&g, 0, &p, 1)[0];
        let line = ear.dump();
        assert!(line.starts_with("base 0; P = 0 "));
        assert!(line.contains("; Q = 0 "));
        assert!(line.ends_with("; shared = []"));
    }
}
