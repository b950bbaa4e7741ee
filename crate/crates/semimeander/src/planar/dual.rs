//! Dual graph of a diagram with a selected arc, and shortest reduction
//! paths across it.
//!
//! Nodes are faces; each diagram edge contributes one arc between its two
//! sides, unit weight, allowed iff some portion of the edge lies on the
//! selected arc (a curve may cross the diagram only there). A reduction
//! curve is a face path using allowed arcs; its cost is the number of arcs
//! crossed. Unit weights make breadth-first search sufficient.

use super::{KnotDiagram, SelectedArc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DualArc {
    pub left: usize,
    pub right: usize,
    pub edge: usize,
    pub allowed: bool,
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    pub num_faces: usize,
    /// One arc per diagram edge, in edge order.
    pub arcs: Vec<DualArc>,
}

/// One crossing point of a reduction curve: which edge, and whether the
/// curve approaches from the edge's left side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrossedEdge {
    pub edge: usize,
    pub from_left: bool,
}

/// A reduction curve in dual form: the face sequence and the edges crossed
/// between consecutive faces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualPath {
    pub faces: Vec<usize>,
    pub crossings: Vec<CrossedEdge>,
}

impl DualPath {
    pub fn cost(&self) -> usize {
        self.crossings.len()
    }
}

/// Builds the dual graph. Edges carrying at least one pass endpoint of the
/// arc have a portion on it and are allowed; an arc with no passes allows
/// nothing.
pub fn dual_graph(d: &KnotDiagram, j: &SelectedArc) -> DualGraph {
    let faces = d.faces();
    let j_passes = j.passes(d).unwrap_or_default();
    let mut on_j = vec![false; d.edge_count()];
    for &t in &j_passes {
        on_j[d.passes()[t].in_edge] = true;
        on_j[d.passes()[t].out_edge] = true;
    }
    let arcs = (0..d.edge_count())
        .map(|e| {
            let (left, right) = d.edge_sides(&faces, e);
            DualArc { left, right, edge: e, allowed: on_j[e] }
        })
        .collect();
    DualGraph { num_faces: faces.count, arcs }
}

/// Lexicographically least minimum-cost face path from any source face to
/// any target face over allowed arcs. Arcs with equal faces on both sides
/// never help and are skipped.
pub fn shortest_allowed_path(
    g: &DualGraph,
    sources: &[usize],
    targets: &[usize],
) -> Option<DualPath> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.num_faces];
    for a in &g.arcs {
        if a.allowed && a.left != a.right {
            adj[a.left].push((a.right, a.edge));
            adj[a.right].push((a.left, a.edge));
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }

    // Distance to the nearest target, by reverse breadth-first search.
    let mut dist = vec![usize::MAX; g.num_faces];
    let mut queue = std::collections::VecDeque::new();
    for &t in targets {
        if dist[t] == usize::MAX {
            dist[t] = 0;
            queue.push_back(t);
        }
    }
    while let Some(f) = queue.pop_front() {
        for &(next, _) in &adj[f] {
            if dist[next] == usize::MAX {
                dist[next] = dist[f] + 1;
                queue.push_back(next);
            }
        }
    }

    let cost = sources.iter().map(|&s| dist[s]).min()?;
    if cost == usize::MAX {
        return None;
    }
    // Walk downhill toward the targets, always taking the least face and
    // then the least edge, which yields the lexicographically least
    // optimal path.
    let mut cur = *sources.iter().filter(|&&s| dist[s] == cost).min()?;
    let mut faces = vec![cur];
    let mut crossings = Vec::new();
    for remaining in (0..cost).rev() {
        let (next, edge) = *adj[cur]
            .iter()
            .find(|(n, _)| dist[*n] == remaining)
            .expect("breadth-first predecessor exists");
        let from_left = g.arcs[edge].left == cur;
        crossings.push(CrossedEdge { edge, from_left });
        faces.push(next);
        cur = next;
    }
    Some(DualPath { faces, crossings })
}

#[cfg(test)]
mod tests {
    use super::super::{fixtures, parse_pd, EdgeEnd};
    use super::*;

    #[test]
    fn empty_arc_allows_nothing() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        let j = SelectedArc {
            start_edge: 0,
            start_near: EdgeEnd::Lo,
            end_edge: 0,
            end_near: EdgeEnd::Hi,
        };
        let g = dual_graph(&d, &j);
        assert_eq!(g.arcs.len(), d.edge_count());
        assert!(g.arcs.iter().all(|a| !a.allowed));
    }

    #[test]
    fn whole_knot_arc_allows_everything() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        let j = SelectedArc {
            start_edge: 0,
            start_near: EdgeEnd::Hi,
            end_edge: 0,
            end_near: EdgeEnd::Lo,
        };
        let g = dual_graph(&d, &j);
        assert!(g.arcs.iter().all(|a| a.allowed));
    }

    #[test]
    fn partial_arc_allows_its_edges() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        // Two passes: edges 1, 2, 3 carry the arc (1 and 3 partially).
        let j = SelectedArc {
            start_edge: 0,
            start_near: EdgeEnd::Lo,
            end_edge: 2,
            end_near: EdgeEnd::Hi,
        };
        let g = dual_graph(&d, &j);
        let allowed: Vec<usize> =
            g.arcs.iter().filter(|a| a.allowed).map(|a| a.edge).collect();
        assert_eq!(allowed, vec![0, 1, 2]);
    }

    #[test]
    fn shortest_path_on_hand_graph() {
        // A path of four faces joined by allowed arcs 0-1-2, plus a
        // disallowed shortcut.
        let g = DualGraph {
            num_faces: 4,
            arcs: vec![
                DualArc { left: 0, right: 1, edge: 0, allowed: true },
                DualArc { left: 1, right: 2, edge: 1, allowed: true },
                DualArc { left: 2, right: 3, edge: 2, allowed: true },
                DualArc { left: 0, right: 3, edge: 3, allowed: false },
            ],
        };
        let p = shortest_allowed_path(&g, &[0], &[3]).unwrap();
        assert_eq!(p.cost(), 3);
        assert_eq!(p.faces, vec![0, 1, 2, 3]);

        let p = shortest_allowed_path(&g, &[0, 2], &[3]).unwrap();
        assert_eq!(p.cost(), 1);
        assert_eq!(p.faces, vec![2, 3]);
        assert_eq!(p.crossings, vec![CrossedEdge { edge: 2, from_left: true }]);

        assert!(shortest_allowed_path(
            &DualGraph { num_faces: 2, arcs: vec![] },
            &[0],
            &[1]
        )
        .is_none());

        // Source inside the target set costs zero.
        let p = shortest_allowed_path(&g, &[1], &[1]).unwrap();
        assert_eq!(p.cost(), 0);
    }
}
