//! Edge-disjoint path counts between two vertices ("widths").
//!
//! The maximum number of pairwise edge-disjoint uv-paths equals the minimum
//! uv-edge-cut; it is computed by unit-capacity augmentation (each undirected
//! edge usable once, in either direction).  Augmenting paths are found by
//! breadth-first search, scanning incident edges in ascending id order, so the
//! returned path family is deterministic.

use crate::graph::Graph;

/// Maximum number of pairwise edge-disjoint `u`..`v` paths in `g`,
/// ignoring edges for which `edge_ok` returns false.
pub fn width_filtered(g: &Graph, u: usize, v: usize, edge_ok: impl Fn(usize) -> bool) -> usize {
    edge_disjoint_paths_filtered(g, u, v, edge_ok).len()
}

/// Maximum number of pairwise edge-disjoint `u`..`v` paths in `g`.
pub fn width(g: &Graph, u: usize, v: usize) -> usize {
    width_filtered(g, u, v, |_| true)
}

/// A maximum family of pairwise edge-disjoint `u`..`v` paths, each returned as
/// an edge-id sequence from `u` to `v`.
pub fn edge_disjoint_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    edge_disjoint_paths_filtered(g, u, v, |_| true)
}

/// Filtered variant of [`edge_disjoint_paths`].
pub fn edge_disjoint_paths_filtered(
    g: &Graph,
    u: usize,
    v: usize,
    edge_ok: impl Fn(usize) -> bool,
) -> Vec<Vec<usize>> {
    assert_ne!(u, v, "width requires distinct endpoints");
    // flow[e]: 0 none, +1 used from endpoints.0 to .1, -1 the reverse.
    let mut flow: Vec<i8> = vec![0; g.m()];
    loop {
        // BFS over residual arcs; prev[w] = (vertex, edge, direction) on the path.
        let mut prev: Vec<Option<(usize, usize, i8)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        'bfs: while let Some(x) = queue.pop_front() {
            for &e in g.edges_at(x) {
                if !edge_ok(e) {
                    continue;
                }
                let (a, _) = g.endpoints(e);
                let dir: i8 = if a == x { 1 } else { -1 };
                // Residual capacity: the edge may carry one unit in either
                // direction; pushing against existing flow cancels it.
                if flow[e] == dir {
                    continue;
                }
                let y = g.other_end(e, x);
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                prev[y] = Some((x, e, dir));
                if y == v {
                    break 'bfs;
                }
                queue.push_back(y);
            }
        }
        if !seen[v] {
            break;
        }
        let mut x = v;
        while let Some((p, e, dir)) = prev[x] {
            flow[e] += dir;
            debug_assert!(flow[e].abs() <= 1);
            x = p;
        }
    }
    // Decompose the flow into paths by walking from u along used arcs.
    let mut used: Vec<bool> = vec![false; g.m()];
    let mut paths = Vec::new();
    loop {
        let mut path = Vec::new();
        let mut x = u;
        loop {
            let mut step = None;
            for &e in g.edges_at(x) {
                if used[e] || flow[e] == 0 {
                    continue;
                }
                let (a, _) = g.endpoints(e);
                let leaves_x = (a == x && flow[e] == 1) || (a != x && flow[e] == -1);
                if leaves_x {
                    step = Some(e);
                    break;
                }
            }
            match step {
                Some(e) => {
                    used[e] = true;
                    path.push(e);
                    x = g.other_end(e, x);
                    if x == v {
                        break;
                    }
                }
                None => break,
            }
        }
        if x == v && !path.is_empty() {
            paths.push(path);
        } else {
            break;
        }
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_complete;
    use crate::graph::Graph;

    /// Exhaustive oracle: maximum edge-disjoint path family by direct search
    /// over simple paths.  Usable for small graphs only.
    pub fn width_oracle(g: &Graph, u: usize, v: usize) -> usize {
        fn all_paths(g: &Graph, u: usize, v: usize, blocked: &mut Vec<bool>) -> Vec<Vec<usize>> {
            // Enumerate simple paths u..v avoiding blocked edges.
            fn rec(
                g: &Graph,
                x: usize,
                v: usize,
                blocked: &mut Vec<bool>,
                visited: &mut Vec<bool>,
                path: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if x == v {
                    out.push(path.clone());
                    return;
                }
                for &e in g.edges_at(x) {
                    if blocked[e] {
                        continue;
                    }
                    let y = g.other_end(e, x);
                    if visited[y] {
                        continue;
                    }
                    blocked[e] = true;
                    visited[y] = true;
                    path.push(e);
                    rec(g, y, v, blocked, visited, path, out);
                    path.pop();
                    visited[y] = false;
                    blocked[e] = false;
                }
            }
            let mut visited = vec![false; g.n()];
            visited[u] = true;
            let mut out = Vec::new();
            rec(g, u, v, blocked, &mut visited, &mut Vec::new(), &mut out);
            out
        }
        fn best(g: &Graph, u: usize, v: usize, blocked: &mut Vec<bool>) -> usize {
            let paths = all_paths(g, u, v, blocked);
            let mut best_k = 0;
            for p in paths {
                for &e in &p {
                    blocked[e] = true;
                }
                best_k = best_k.max(1 + best(g, u, v, blocked));
                for &e in &p {
                    blocked[e] = false;
                }
            }
            best_k
        }
        best(g, u, v, &mut vec![false; g.m()])
    }

    #[test]
    fn width_of_theta_graph() {
        // Three internally disjoint paths between 0 and 3.
        let g = Graph::from_edges(
            5,
            vec![(0, 3), (0, 1), (1, 3), (0, 2), (2, 3), (0, 4), (4, 2)],
        )
        .unwrap();
        assert_eq!(width(&g, 0, 3), 3);
        assert_eq!(width_oracle(&g, 0, 3), 3);
    }

    #[test]
    fn width_matches_oracle_on_small_graphs() {
        let k5 = gen_complete(5);
        assert_eq!(width(&k5, 0, 4), 4);
        assert_eq!(width_oracle(&k5, 0, 4), 4);

        let parallel = Graph::from_edges(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(width(&parallel, 0, 1), 3);
        assert_eq!(width_oracle(&parallel, 0, 1), 3);

        // Mixed multigraph with a bottleneck.
        let g = Graph::from_edges(
            4,
            vec![(0, 1), (0, 1), (1, 2), (1, 2), (1, 2), (2, 3), (2, 3), (0, 3)],
        )
        .unwrap();
        assert_eq!(width(&g, 0, 3), width_oracle(&g, 0, 3));
        assert_eq!(width(&g, 0, 3), 3);
    }

    #[test]
    fn paths_are_edge_disjoint() {
        let k5 = gen_complete(5);
        let fam = edge_disjoint_paths(&k5, 1, 3);
        assert_eq!(fam.len(), 4);
        let mut seen = std::collections::HashSet::new();
        for p in &fam {
            for &e in p {
                assert!(seen.insert(e), "edge {e} reused");
            }
        }
    }

    #[test]
    fn filtered_width_drops_paths() {
        let g = Graph::from_edges(4, vec![(0, 1), (1, 3), (0, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(width(&g, 0, 3), 3);
        assert_eq!(width_filtered(&g, 0, 3, |e| e != 4), 2);
    }
}
