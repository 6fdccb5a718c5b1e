//! Deterministic graph generators: complete graphs, products, subdivisions,
//! the H_n family, the non-robust two-part family, and triconnectification
//! of subdivided complete graphs.
//!
//! Every generator is pure and emits a canonical labeling, so regenerating
//! with the same parameters is bit-identical.

use crate::decompose;
use crate::drawing::{Crossing, Drawing, DrawingMode};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Complete graph K_n, edges in lexicographic order.
pub fn gen_complete(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    Graph::from_edges(n, pairs).expect("K_n is well formed")
}

/// Complete bipartite graph K_{a,b}: left part 0..a, right part a..a+b.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..a {
        for j in 0..b {
            pairs.push((i, a + j));
        }
    }
    Graph::from_edges(a + b, pairs).expect("K_{a,b} is well formed")
}

/// The product C3 x Cn ("triangular prism ring"): vertex (i, j) has id
/// 3j + i; the first 3n edges are the triangle edges (by column j, then i),
/// the next 3n edges are the rung edges from column j to column j+1 mod n.
pub fn gen_cycle_product(n: usize) -> Graph {
    assert!(n >= 3, "cycle product needs n >= 3");
    let id = |i: usize, j: usize| 3 * (j % n) + i % 3;
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..3 {
            pairs.push((id(i, j), id(i + 1, j)));
        }
    }
    for j in 0..n {
        for i in 0..3 {
            pairs.push((id(i, j), id(i, j + 1)));
        }
    }
    Graph::from_edges(3 * n, pairs).expect("C3 x Cn is well formed")
}

/// Edge ids of the three rungs between column `j` and column `j+1 mod n`
/// of [`gen_cycle_product`]`(n)`.
pub fn cycle_product_rungs(n: usize, j: usize) -> [usize; 3] {
    let base = 3 * n + 3 * (j % n);
    [base, base + 1, base + 2]
}

/// Edge id of the triangle side between rows `i` and `i+1` in column `j`.
pub fn cycle_product_side(n: usize, i: usize, j: usize) -> usize {
    3 * (j % n) + i % 3
}

/// A concrete non-minimal drawing of C3 x Cn with exactly `3n - 4` crossings,
/// all involving the last rung set: columns are drawn as nested rings, the
/// three closing rungs travel outward crossing one triangle side per
/// intermediate ring, and one of them wiggles twice across the first side it
/// meets.  Even `n >= 4` only.
pub fn fig1_drawing(n: usize) -> Result<Drawing> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::NotSupported(format!(
            "ring drawing of C3 x C{n} needs even n >= 4"
        )));
    }
    let g = gen_cycle_product(n);
    let rungs = cycle_product_rungs(n, n - 1);
    let mut cs = Vec::new();
    // Rung 0 crosses its first side three times (positions 0, 1, 2 on both),
    // then one side per remaining ring.
    let first = cycle_product_side(n, 0, n - 2);
    for p in 0..3 {
        cs.push(Crossing::new(rungs[0], p, first, p));
    }
    for j in (1..=n.saturating_sub(3)).rev() {
        cs.push(Crossing::new(rungs[0], n - j, cycle_product_side(n, 0, j), 0));
    }
    // Rungs 1 and 2 cross one side per intermediate ring, innermost first.
    for i in 1..3 {
        for j in (1..=n - 2).rev() {
            cs.push(Crossing::new(
                rungs[i],
                (n - 2) - j,
                cycle_product_side(n, i, j),
                0,
            ));
        }
    }
    Drawing::new(&g, cs, DrawingMode::Relaxed)
}

/// K_base with every edge replaced by a path of length `t` (so `t - 1` new
/// interior vertices per edge).  Interior vertices of the q-th base edge are
/// `base + q*(t-1) ..`, and the path edges of each base edge are consecutive.
fn subdivide_complete(base: usize, t: usize) -> Graph {
    assert!(t >= 1);
    let base_edges: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..base {
            for j in (i + 1)..base {
                v.push((i, j));
            }
        }
        v
    };
    let mut pairs = Vec::new();
    let mut next = base;
    for &(u, v) in &base_edges {
        let mut prev = u;
        for _ in 0..(t - 1) {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
        pairs.push((prev, v));
    }
    Graph::from_edges(next, pairs).expect("subdivision is well formed")
}

/// K5 with every edge replaced by a path of length `t`: 10t - 5 vertices and
/// 10t edges.
pub fn gen_k5_subdivided(t: usize) -> Result<Graph> {
    if t < 1 {
        return Err(Error::InvalidArgument("subdivision length must be >= 1".into()));
    }
    Ok(subdivide_complete(5, t))
}

/// `s` disjoint copies of `g`; copy `c` maps vertex `v` to `c*n + v` and the
/// edges of copy `c` come before those of copy `c + 1`.
pub fn gen_disjoint_copies(s: usize, g: &Graph) -> Result<Graph> {
    if s < 1 {
        return Err(Error::InvalidArgument("need at least one copy".into()));
    }
    let n = g.n();
    let mut pairs = Vec::new();
    for c in 0..s {
        for e in 0..g.m() {
            let (u, v) = g.endpoints(e);
            pairs.push((c * n + u, c * n + v));
        }
    }
    Ok(Graph::from_edges(s * n, pairs).expect("copies are well formed"))
}

/// H_n: n copies of K4 minus an edge, glued at their two degree-2 vertices
/// `u = 0` and `v = 1`.  Copy i uses interior vertices 2+2i and 3+2i, and its
/// five edges appear consecutively.
pub fn gen_hn(n: usize) -> Graph {
    assert!(n >= 1, "H_n needs n >= 1");
    let mut pairs = Vec::new();
    for i in 0..n {
        let (x, y) = (2 + 2 * i, 3 + 2 * i);
        pairs.extend_from_slice(&[(0, x), (0, y), (1, x), (1, y), (x, y)]);
    }
    Graph::from_edges(2 + 2 * n, pairs).expect("H_n is well formed")
}

/// Petersen graph: outer cycle 0..5, inner pentagram 5..10, spokes i -- 5+i.
pub fn gen_petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        pairs.push((i, 5 + i));
    }
    Graph::from_edges(10, pairs).expect("Petersen graph is well formed")
}

/// 3-cube graph: vertices are 3-bit codes, edges flip one bit.
pub fn gen_cube() -> Graph {
    let mut pairs = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                pairs.push((v, w));
            }
        }
    }
    Graph::from_edges(8, pairs).expect("cube is well formed")
}

/// Dodecahedron: outer pentagon 0..5, middle 10-ring 5..15, inner pentagon
/// 15..20, with spokes outer -> even ring vertices and odd ring -> inner.
pub fn gen_dodecahedron() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
    }
    for i in 0..10 {
        pairs.push((5 + i, 5 + (i + 1) % 10));
    }
    for i in 0..5 {
        pairs.push((i, 5 + 2 * i));
    }
    for i in 0..5 {
        pairs.push((6 + 2 * i, 15 + i));
    }
    for i in 0..5 {
        pairs.push((15 + i, 15 + (i + 1) % 5));
    }
    Graph::from_edges(20, pairs).expect("dodecahedron is well formed")
}

/// Wheel with `k` rim vertices 0..k and hub `k`.
pub fn gen_wheel(k: usize) -> Graph {
    assert!(k >= 3, "wheel needs a rim of length >= 3");
    let mut pairs = Vec::new();
    for i in 0..k {
        pairs.push((i, (i + 1) % k));
    }
    for i in 0..k {
        pairs.push((i, k));
    }
    Graph::from_edges(k + 1, pairs).expect("wheel is well formed")
}

/// How the non-robustness family's driving constant is supplied.
#[derive(Debug, Clone, Copy)]
pub enum AlphaSource {
    /// Derive alpha from a robustness constant (alpha = gamma / 600).
    Gamma(f64),
    /// Use alpha directly (experiment override).
    Alpha(f64),
}

/// Derived parameters of the non-robust family.  Raw values keep the
/// pre-rounding numbers for diagnostics; `r`, `s`, `t` and the copy count
/// take floors, in that dependency order.
#[derive(Debug, Clone)]
pub struct FamilyParams {
    pub n: usize,
    pub gamma: Option<f64>,
    pub alpha: f64,
    pub c: f64,
    pub r_raw: f64,
    pub s_raw: f64,
    pub t_raw: f64,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// Number of K_r copies on the sparse side.
    pub copies: usize,
    pub g1_vertices: usize,
    pub g2_vertices: usize,
}

impl FamilyParams {
    /// Computes all derived constants for the family at size `n`.
    pub fn derive(n: usize, source: AlphaSource) -> FamilyParams {
        let (gamma, alpha) = match source {
            AlphaSource::Gamma(g) => (Some(g), g / 600.0),
            AlphaSource::Alpha(a) => (None, a),
        };
        let nf = n as f64;
        let c = alpha * alpha / 100.0;
        let r_raw = alpha * alpha * nf.cbrt() / 5.0;
        let s_raw = 1.0 / (alpha * alpha);
        let s = s_raw.floor() as usize;
        let t_raw = if s > 0 { (nf / s as f64).sqrt() } else { f64::NAN };
        let r = r_raw.floor() as usize;
        let t = if s > 0 { t_raw.floor() as usize } else { 0 };
        let copies = if r >= 1 { n / (2 * r) } else { 0 };
        let g1_vertices = copies * r;
        let g2_vertices = if t >= 1 { t + t * (t - 1) / 2 * (s.saturating_sub(1)) } else { 0 };
        FamilyParams {
            n,
            gamma,
            alpha,
            c,
            r_raw,
            s_raw,
            t_raw,
            r,
            s,
            t,
            copies,
            g1_vertices,
            g2_vertices,
        }
    }

    /// First derived parameter that violates its feasibility bound, if any.
    pub fn infeasibility(&self) -> Option<Error> {
        if self.r < 2 {
            return Some(Error::ParameterInfeasible {
                name: "r".into(),
                value: self.r_raw,
                need: ">= 2 after flooring".into(),
            });
        }
        if self.s < 1 {
            return Some(Error::ParameterInfeasible {
                name: "s".into(),
                value: self.s_raw,
                need: ">= 1 after flooring".into(),
            });
        }
        if self.t < 3 {
            return Some(Error::ParameterInfeasible {
                name: "t".into(),
                value: self.t_raw,
                need: ">= 3 after flooring".into(),
            });
        }
        None
    }
}

/// Side facts reported alongside the generated family.
#[derive(Debug, Clone)]
pub struct NonrobustDiagnostics {
    pub m: usize,
    /// Lower and upper edge-count brackets c * n^{4/3} and n^{4/3}.
    pub edge_lower: f64,
    pub edge_upper: f64,
    pub edge_bracket_holds: bool,
    /// Closed-form bracket for the crossing number of the dense side:
    /// strictly between t^4 / 100 and t^4.
    pub cr_g2_lower: f64,
    pub cr_g2_upper: f64,
    pub padding: usize,
}

/// The dense side of the family: K_t with every edge subdivided `s - 1`
/// times (each base edge becomes a path of length `s`).
pub fn gen_g2(s: usize, t: usize) -> Result<Graph> {
    if s < 1 || t < 2 {
        return Err(Error::InvalidArgument(
            "dense side needs s >= 1 and t >= 2".into(),
        ));
    }
    Ok(subdivide_complete(t, s))
}

/// Generates the non-robust family at size `n`: floor(n / 2r) copies of K_r,
/// disjoint from K_t subdivided s-1 times, padded with isolated vertices to
/// exactly n.
pub fn gen_nonrobust_family(
    n: usize,
    source: AlphaSource,
) -> Result<(Graph, FamilyParams, NonrobustDiagnostics)> {
    let p = FamilyParams::derive(n, source);
    if let Some(err) = p.infeasibility() {
        return Err(err);
    }
    let half = n as f64 / 2.0;
    if (p.g1_vertices as f64) > half || (p.g2_vertices as f64) > half {
        return Err(Error::Counterexample(format!(
            "family sides exceed n/2: |V1| = {}, |V2| = {}, n = {}",
            p.g1_vertices, p.g2_vertices, n
        )));
    }
    let g1 = gen_disjoint_copies(p.copies, &gen_complete(p.r))?;
    let g2 = gen_g2(p.s, p.t)?;
    let mut pairs = Vec::new();
    for e in 0..g1.m() {
        pairs.push(g1.endpoints(e));
    }
    let off = g1.n();
    for e in 0..g2.m() {
        let (u, v) = g2.endpoints(e);
        pairs.push((off + u, off + v));
    }
    let g = Graph::from_edges(n, pairs)?;
    let nf = n as f64;
    let tf = p.t as f64;
    let diag = NonrobustDiagnostics {
        m: g.m(),
        edge_lower: p.c * nf.powf(4.0 / 3.0),
        edge_upper: nf.powf(4.0 / 3.0),
        edge_bracket_holds: p.c * nf.powf(4.0 / 3.0) < g.m() as f64
            && (g.m() as f64) < nf.powf(4.0 / 3.0),
        cr_g2_lower: tf.powi(4) / 100.0,
        cr_g2_upper: tf.powi(4),
        padding: n - g1.n() - g2.n(),
    };
    Ok((g, p, diag))
}

/// Adds, to a subdivided complete graph, the two-apart chords along every
/// branch (k to k+2 for k = 0..s-2) and one cycle of stitching edges through
/// the first interior vertices around every node.
///
/// `rotation`, when given, lists for each node the cyclic order of opposite
/// node ids used for stitching; the default is ascending order.
pub fn triconnectify(g2: &Graph, rotation: Option<&[Vec<usize>]>) -> Result<Graph> {
    // Recognize the subdivided-K_t shape: nodes are the degree >= 3 vertices.
    let nodes: Vec<usize> = (0..g2.n()).filter(|&v| g2.degree(v) >= 3).collect();
    let t = nodes.len();
    if t < 4 {
        return Err(Error::NotSupported(format!(
            "triconnectification needs t >= 4 nodes, found {t}"
        )));
    }
    if nodes.iter().any(|&v| g2.degree(v) != t - 1)
        || (0..g2.n()).any(|v| g2.degree(v) < 2)
    {
        return Err(Error::InvalidArgument(
            "input is not a cleanly subdivided complete graph".into(),
        ));
    }
    let branches = decompose::branch_decomposition(g2, true);
    let expected = t * (t - 1) / 2;
    let pair_set: std::collections::BTreeSet<(usize, usize)> = branches
        .iter()
        .map(|b| {
            let (a, z) = b.endpoints();
            (a.min(z), a.max(z))
        })
        .collect();
    if branches.len() != expected || pair_set.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "expected {} branches between {} nodes, found {}",
            expected,
            t,
            branches.len()
        )));
    }
    let s = branches[0].len();
    if branches.iter().any(|b| b.len() != s) {
        return Err(Error::InvalidArgument("branches have mixed lengths".into()));
    }
    if s < 3 {
        return Err(Error::NotSupported(format!(
            "triconnectification needs branch length s >= 3, got {s}"
        )));
    }

    let mut pairs: Vec<(usize, usize)> = (0..g2.m()).map(|e| g2.endpoints(e)).collect();
    for b in &branches {
        for k in 0..=(s - 2) {
            pairs.push((b.vertices[k], b.vertices[k + 2]));
        }
    }
    // node id -> (opposite node, first interior vertex on that branch)
    let node_index: std::collections::HashMap<usize, usize> =
        nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut around: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t];
    for b in &branches {
        let (a, z) = b.endpoints();
        around[node_index[&a]].push((z, b.vertices[1]));
        around[node_index[&z]].push((a, b.vertices[s - 1]));
    }
    for (i, list) in around.iter_mut().enumerate() {
        match rotation {
            Some(rot) => {
                let order = &rot[i];
                if order.len() != list.len() {
                    return Err(Error::InvalidArgument(
                        "rotation hint has the wrong arity".into(),
                    ));
                }
                list.sort_by_key(|&(opp, _)| {
                    order.iter().position(|&o| o == opp).unwrap_or(usize::MAX)
                });
            }
            None => list.sort_by_key(|&(opp, _)| opp),
        }
        for w in 0..list.len() {
            let a = list[w].1;
            let b = list[(w + 1) % list.len()].1;
            pairs.push((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(g2.n(), pairs)
}
