//! Drawings of graphs given combinatorially: a registry of crossings, each
//! pairing two positions on two distinct edges, together with the derived
//! planarization in which every crossing becomes a degree-4 "green" vertex.

use crate::error::{Error, Result};
use crate::graph::{Graph, Provenance};
use crate::planar;
use std::fmt::Write as _;

/// One crossing: an unordered pair of edge segments, stored with the lower
/// edge id first.  `position` counts crossings along the edge from its
/// stored tail, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub edge_a: usize,
    pub pos_a: usize,
    pub edge_b: usize,
    pub pos_b: usize,
}

impl Crossing {
    pub fn new(e1: usize, p1: usize, e2: usize, p2: usize) -> Crossing {
        if e1 <= e2 {
            Crossing { edge_a: e1, pos_a: p1, edge_b: e2, pos_b: p2 }
        } else {
            Crossing { edge_a: e2, pos_a: p2, edge_b: e1, pos_b: p1 }
        }
    }

    /// Position of this crossing along edge `e` (which must participate).
    pub fn pos_on(&self, e: usize) -> usize {
        if e == self.edge_a {
            self.pos_a
        } else {
            debug_assert_eq!(e, self.edge_b);
            self.pos_b
        }
    }

    pub fn involves(&self, e: usize) -> bool {
        e == self.edge_a || e == self.edge_b
    }
}

/// How strictly the registry is validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawingMode {
    /// Facts about crossing-minimal drawings are enforced: no two edges
    /// cross more than once, and crossing edges never share an endpoint.
    Optimal,
    /// Arbitrary drawings: only structural validity is checked.
    Relaxed,
}

/// A drawing as a crossing registry over an owned graph, with its
/// planarization built and planarity-checked on construction.
#[derive(Debug, Clone)]
pub struct Drawing {
    g: Graph,
    crossings: Vec<Crossing>,
    mode: DrawingMode,
    planarization: Graph,
    /// Green vertex ids in the planarization, one per registry entry.
    greens: Vec<usize>,
}

impl Drawing {
    /// The crossing-free drawing of a planar graph.
    pub fn empty(g: &Graph) -> Result<Drawing> {
        Drawing::new(g, Vec::new(), DrawingMode::Optimal)
    }

    /// Validates the registry, builds the planarization and checks that it
    /// is planar.
    pub fn new(g: &Graph, crossings: Vec<Crossing>, mode: DrawingMode) -> Result<Drawing> {
        // Structural validity: no self-pairing, positions on each edge are
        // exactly 0..k-1.
        let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); g.m()];
        for (i, c) in crossings.iter().enumerate() {
            if c.edge_a == c.edge_b {
                return Err(Error::InvalidDrawing(format!(
                    "crossing {i} pairs edge {} with itself",
                    c.edge_a
                )));
            }
            if c.edge_a >= g.m() || c.edge_b >= g.m() {
                return Err(Error::InvalidDrawing(format!("crossing {i} names a missing edge")));
            }
            per_edge[c.edge_a].push(i);
            per_edge[c.edge_b].push(i);
        }
        for (e, list) in per_edge.iter().enumerate() {
            let mut ps: Vec<usize> = list.iter().map(|&i| crossings[i].pos_on(e)).collect();
            ps.sort_unstable();
            if ps.iter().enumerate().any(|(k, &p)| k != p) {
                return Err(Error::InvalidDrawing(format!(
                    "positions on edge {e} are not 0..{}",
                    list.len()
                )));
            }
        }
        if mode == DrawingMode::Optimal {
            let mut pairs = std::collections::BTreeSet::new();
            for (i, c) in crossings.iter().enumerate() {
                if !pairs.insert((c.edge_a, c.edge_b)) {
                    return Err(Error::InvalidDrawing(format!(
                        "edges {} and {} cross twice (registry entry {i})",
                        c.edge_a, c.edge_b
                    )));
                }
                let (a1, a2) = g.endpoints(c.edge_a);
                let (b1, b2) = g.endpoints(c.edge_b);
                if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                    return Err(Error::InvalidDrawing(format!(
                        "edges {} and {} share an endpoint but cross",
                        c.edge_a, c.edge_b
                    )));
                }
            }
        }

        let (planarization, greens) = build_planarization(g, &crossings);
        if !planar::is_planar(&planarization) {
            return Err(Error::InvalidDrawing(
                "planarization of the registry is not planar".into(),
            ));
        }
        Ok(Drawing {
            g: g.clone(),
            crossings,
            mode,
            planarization,
            greens,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn count(&self) -> usize {
        self.crossings.len()
    }

    pub fn mode(&self) -> DrawingMode {
        self.mode
    }

    /// Registry indices of the crossings on `e`, ordered by position.
    pub fn crossing_sequence(&self, e: usize) -> Vec<usize> {
        let mut list: Vec<usize> = (0..self.crossings.len())
            .filter(|&i| self.crossings[i].involves(e))
            .collect();
        list.sort_by_key(|&i| self.crossings[i].pos_on(e));
        list
    }

    /// The planarization: green degree-4 vertices replace crossings; edge
    /// pieces carry provenance to their original edge.
    pub fn planarization(&self) -> &Graph {
        &self.planarization
    }

    /// Green vertex ids in the planarization, indexed like the registry.
    pub fn greens(&self) -> &[usize] {
        &self.greens
    }

    /// Text form: one "crossing e1 p1 e2 p2" line per registry entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            writeln!(out, "crossing {} {} {} {}", c.edge_a, c.pos_a, c.edge_b, c.pos_b).unwrap();
        }
        out
    }

    /// Parses the text form against a given graph and validates.
    pub fn parse(g: &Graph, text: &str, mode: DrawingMode) -> Result<Drawing> {
        let mut crossings = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let tag = it.next();
            if tag != Some("crossing") {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: "expected 'crossing e1 p1 e2 p2'".into(),
                });
            }
            let mut next = || -> Result<usize> {
                it.next()
                    .ok_or(Error::Parse {
                        line: ln + 1,
                        msg: "missing field".into(),
                    })?
                    .parse()
                    .map_err(|_| Error::Parse {
                        line: ln + 1,
                        msg: "bad integer".into(),
                    })
            };
            let (e1, p1, e2, p2) = (next()?, next()?, next()?, next()?);
            crossings.push(Crossing::new(e1, p1, e2, p2));
        }
        Drawing::new(g, crossings, mode)
    }
}

/// Builds the planarization: original vertices keep their ids, crossing `i`
/// becomes green vertex `n + i`, and every edge is replaced by its chain of
/// pieces through its crossings in position order.
pub(crate) fn build_planarization(g: &Graph, crossings: &[Crossing]) -> (Graph, Vec<usize>) {
    let n = g.n();
    let mut pairs = Vec::new();
    let mut edge_to_parent = Vec::new();
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        let mut seq: Vec<usize> = (0..crossings.len())
            .filter(|&i| crossings[i].involves(e))
            .collect();
        seq.sort_by_key(|&i| crossings[i].pos_on(e));
        let mut prev = u;
        for &i in &seq {
            pairs.push((prev, n + i));
            edge_to_parent.push(Some(e));
            prev = n + i;
        }
        pairs.push((prev, v));
        edge_to_parent.push(Some(e));
    }
    let total = n + crossings.len();
    let mut vertex_to_parent: Vec<Option<usize>> = (0..n).map(Some).collect();
    vertex_to_parent.extend(std::iter::repeat(None).take(crossings.len()));
    let h = Graph::from_edges(total, pairs)
        .expect("planarization is well formed")
        .with_provenance(Provenance {
            vertex_to_parent,
            edge_to_parent,
        });
    (h, (n..total).collect())
}

/// Standalone conversion per the module interface: the planarized graph and
/// the green vertex ids.
pub fn planarize(d: &Drawing) -> (Graph, Vec<usize>) {
    (d.planarization().clone(), d.greens().to_vec())
}

/// How a weight vector came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightProvenance {
    Explicit,
    Sampled { seed: u64 },
}

/// Edge weights in [0, 1].
#[derive(Debug, Clone)]
pub struct WeightAssignment {
    weights: Vec<f64>,
    pub provenance: WeightProvenance,
}

impl WeightAssignment {
    pub fn new(weights: Vec<f64>, provenance: WeightProvenance) -> Result<WeightAssignment> {
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidArgument("weights must lie in [0, 1]".into()));
        }
        Ok(WeightAssignment { weights, provenance })
    }

    pub fn ones(m: usize) -> WeightAssignment {
        WeightAssignment {
            weights: vec![1.0; m],
            provenance: WeightProvenance::Explicit,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    /// All weights scaled by `c` in (0, 1].
    pub fn scaled(&self, c: f64) -> Result<WeightAssignment> {
        WeightAssignment::new(self.weights.iter().map(|w| w * c).collect(), self.provenance)
    }

    /// Edge ids ordered by descending weight, ties by ascending id.
    pub fn order_desc(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.weights.len()).collect();
        ids.sort_by(|&a, &b| {
            self.weights[b]
                .partial_cmp(&self.weights[a])
                .unwrap()
                .then(a.cmp(&b))
        });
        ids
    }
}

/// A crossing total: plain count and weighted sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingValue {
    pub count: usize,
    pub weighted: f64,
}

/// Exact weighted total of a drawing's registry.
pub fn drawing_weight(d: &Drawing, w: &WeightAssignment) -> Result<CrossingValue> {
    if w.len() != d.graph().m() {
        return Err(Error::InvalidArgument(format!(
            "weight vector covers {} edges, graph has {}",
            w.len(),
            d.graph().m()
        )));
    }
    let weighted = d
        .crossings()
        .iter()
        .map(|c| w.get(c.edge_a) * w.get(c.edge_b))
        .sum();
    Ok(CrossingValue {
        count: d.count(),
        weighted,
    })
}

/// Restriction of a drawing to an edge subset: the drawing of the subgraph
/// keeping exactly the crossings whose two edges both survive.
pub fn restrict_drawing(d: &Drawing, keep: &[usize]) -> Result<Drawing> {
    let g = d.graph();
    let keep_set: std::collections::BTreeSet<usize> = keep.iter().copied().collect();
    let drop: Vec<usize> = (0..g.m()).filter(|e| !keep_set.contains(e)).collect();
    let sub = g.without_edges(&drop);
    let mut new_id = vec![usize::MAX; g.m()];
    for e in 0..sub.m() {
        new_id[sub.provenance().unwrap().edge_to_parent[e].unwrap()] = e;
    }
    let survivors: Vec<&Crossing> = d
        .crossings()
        .iter()
        .filter(|c| keep_set.contains(&c.edge_a) && keep_set.contains(&c.edge_b))
        .collect();
    // Re-rank positions among surviving crossings, preserving edge order.
    let rank = |e: usize, p: usize| -> usize {
        survivors
            .iter()
            .filter(|c| c.involves(e) && c.pos_on(e) < p)
            .count()
    };
    let crossings: Vec<Crossing> = survivors
        .iter()
        .map(|c| {
            Crossing::new(
                new_id[c.edge_a],
                rank(c.edge_a, c.pos_a),
                new_id[c.edge_b],
                rank(c.edge_b, c.pos_b),
            )
        })
        .collect();
    Drawing::new(&sub, crossings, d.mode())
}
