//! Reduction of a diagram to a semimeander one.
//!
//! A crossing off the selected arc is reducible if one of its two strand
//! branches can be rerouted along a curve meeting the diagram only on the
//! arc; the cost is the least number of such meeting points, found by
//! breadth-first search over the dual graph. Replacing the branch removes
//! the crossing and creates one new crossing per meeting point, with the
//! rerouted strand passing over everything it crosses (lifting the strand
//! off the diagram and dropping it back is an ambient isotopy, so the knot
//! type is preserved). Repeating at minimum cost until every crossing lies
//! on the arc yields a semimeander diagram.

use std::fmt;

use thiserror::Error;

use crate::planar::{
    dual_graph, is_semimeander, shortest_allowed_path, ArcError, DualGraph, DualPath, EdgeEnd,
    KnotDiagram, SelectedArc,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("crossing {0} lies on the selected arc")]
    CrossingOnArc(usize),
    #[error("crossing {0} out of range")]
    CrossingRange(usize),
    #[error("reduction is stale: the diagram or arc changed since it was computed")]
    Stale,
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error("no reducible crossing although the diagram is not semimeander")]
    NoReducibleCrossing,
}

/// A planned reroute of one branch of a crossing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction {
    pub crossing: usize,
    /// 1 = under-branch, 2 = over-branch.
    pub branch: u8,
    pub cost: usize,
    pub path: DualPath,
    fingerprint: u64,
}

fn fingerprint(d: &KnotDiagram, j: &SelectedArc) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    d.digest().hash(&mut h);
    j.format().hash(&mut h);
    h.finish()
}

/// In- and out-edges of one branch of `x`: branch 1 is the under-strand
/// (entering at slot 0), branch 2 the over.
fn branch_edges(d: &KnotDiagram, x: usize, branch: u8) -> (usize, usize) {
    let [p1, p2] = d.passes_of_crossing(x);
    let pass = [p1, p2]
        .into_iter()
        .map(|t| d.passes()[t])
        .find(|p| (branch == 1) == (p.in_slot == 0))
        .expect("each crossing has one under and one over pass");
    (pass.in_edge, pass.out_edge)
}

fn branch_path(d: &KnotDiagram, dual: &DualGraph, x: usize, branch: u8) -> Option<DualPath> {
    let (in_edge, out_edge) = branch_edges(d, x, branch);
    let sources = [dual.arcs[in_edge].left, dual.arcs[in_edge].right];
    let targets = [dual.arcs[out_edge].left, dual.arcs[out_edge].right];
    shortest_allowed_path(dual, &sources, &targets)
}

fn best_reduction(
    d: &KnotDiagram,
    dual: &DualGraph,
    j: &SelectedArc,
    x: usize,
) -> Option<Reduction> {
    let mut best: Option<Reduction> = None;
    for branch in [1u8, 2] {
        if let Some(path) = branch_path(d, dual, x, branch) {
            let cost = path.cost();
            let better = match &best {
                None => true,
                Some(b) => cost < b.cost,
            };
            if better {
                best = Some(Reduction { crossing: x, branch, cost, path, fingerprint: fingerprint(d, j) });
            }
        }
    }
    best
}

/// Cheapest reduction of crossing `x`, or `None` if no reduction curve
/// exists. Ties between branches prefer the under-branch.
pub fn reduction_cost(
    d: &KnotDiagram,
    j: &SelectedArc,
    x: usize,
) -> Result<Option<Reduction>, ReduceError> {
    if x >= d.crossing_count() {
        return Err(ReduceError::CrossingRange(x));
    }
    let j_passes = j.check_simple(d)?;
    if j_passes.iter().any(|&t| d.passes()[t].crossing == x) {
        return Err(ReduceError::CrossingOnArc(x));
    }
    let dual = dual_graph(d, j);
    Ok(best_reduction(d, &dual, j, x))
}

/// Applies a reduction: removes the crossing, reroutes the branch over the
/// arc, and re-threads the arc through the new crossings. The off-arc
/// crossing count drops by one; the total changes by `cost - 1`.
pub fn replace_arc(
    d: &KnotDiagram,
    j: &SelectedArc,
    r: &Reduction,
) -> Result<(KnotDiagram, SelectedArc), ReduceError> {
    if r.fingerprint != fingerprint(d, j) {
        return Err(ReduceError::Stale);
    }
    let old_len = d.passes().len();
    let j_passes = j.check_simple(d)?;
    let mut on_j = vec![false; old_len];
    for &t in &j_passes {
        on_j[t] = true;
    }

    let x = r.crossing;
    let [pa, pb] = d.passes_of_crossing(x);
    let (route_idx, other_idx) = if (r.branch == 1) == (d.passes()[pa].in_slot == 0) {
        (pa, pb)
    } else {
        (pb, pa)
    };

    // New crossing ids: kept crossings compact in old order, the crossings
    // created along the route appended.
    let kept = |c: usize| if c > x { c - 1 } else { c };
    let n_new = d.crossing_count() - 1 + r.cost;
    let z_id = |k: usize| d.crossing_count() - 1 + k;

    // The rerouted strand keeps its vertical level: an all-under arc can
    // slide below the plane, an all-over arc above it, so the reroute is an
    // ambient isotopy exactly when every new crossing keeps the branch on
    // its old side. Slot labels follow from planarity: slots run
    // counterclockwise with slot 0 the incoming under-strand.
    let route_under = r.branch == 1;
    let route_in_slot = |from_left: bool| -> u8 {
        match (route_under, from_left) {
            (true, _) => 0,
            (false, true) => 3,
            (false, false) => 1,
        }
    };
    let arc_in_slot = |from_left: bool| -> u8 {
        match (route_under, from_left) {
            (true, true) => 1,
            (true, false) => 3,
            (false, _) => 0,
        }
    };

    // Each crossed edge receives its new crossing just before the pass at
    // the edge's head.
    let mut insert_before: Vec<Option<usize>> = vec![None; old_len];
    for (k, crossed) in r.path.crossings.iter().enumerate() {
        let t = d.pass_entering(crossed.edge);
        debug_assert!(insert_before[t].is_none(), "a shortest path crosses an edge once");
        debug_assert!(t != route_idx, "the rerouted branch's in-edge is never on the arc");
        insert_before[t] = Some(k);
    }

    // Rebuild the cyclic pass list.
    struct NewPass {
        crossing: usize,
        in_slot: u8,
        on_j: bool,
        /// Old pass index this emission replaces (for empty-arc tracking).
        origin: Option<usize>,
    }
    let mut passes: Vec<NewPass> = Vec::with_capacity(old_len + 2 * r.cost - 2);
    for t in 0..old_len {
        if let Some(k) = insert_before[t] {
            let in_slot = arc_in_slot(r.path.crossings[k].from_left);
            passes.push(NewPass { crossing: z_id(k), in_slot, on_j: true, origin: None });
        }
        if t == route_idx {
            for (k, crossed) in r.path.crossings.iter().enumerate() {
                let in_slot = route_in_slot(crossed.from_left);
                passes.push(NewPass { crossing: z_id(k), in_slot, on_j: false, origin: None });
            }
        } else if t == other_idx {
            // The other strand passes straight through where x was.
        } else {
            let p = d.passes()[t];
            passes.push(NewPass {
                crossing: kept(p.crossing),
                in_slot: p.in_slot,
                on_j: on_j[t],
                origin: Some(t),
            });
        }
    }
    let total = passes.len();
    debug_assert_eq!(total, 2 * n_new);
    if total == 0 {
        // Removing the last crossing leaves the round unknot.
        let trivial = SelectedArc {
            start_edge: 0,
            start_near: EdgeEnd::Lo,
            end_edge: 0,
            end_near: EdgeEnd::Hi,
        };
        return Ok((KnotDiagram::unknot(), trivial));
    }

    // Edge `i` runs from the out-slot of pass `i-1` to the in-slot of pass
    // `i`; slot tables follow.
    let mut crossings = vec![[usize::MAX; 4]; n_new];
    let mut edges = Vec::with_capacity(total);
    for i in 0..total {
        let prev = &passes[(i + total - 1) % total];
        let cur = &passes[i];
        let tail = crate::planar::End { crossing: prev.crossing, slot: (prev.in_slot + 2) % 4 };
        let head = crate::planar::End { crossing: cur.crossing, slot: cur.in_slot };
        crossings[tail.crossing][tail.slot as usize] = i;
        crossings[head.crossing][head.slot as usize] = i;
        edges.push(crate::planar::Edge { tail, head });
    }
    debug_assert!(crossings.iter().all(|slots| slots.iter().all(|&e| e != usize::MAX)));
    let new_d = KnotDiagram::from_structure(crossings, edges)
        .expect("surgery preserves a valid single-component map");

    // The arc keeps its geometric position: its passes are the old ones
    // plus every crossing created on it, which stay contiguous.
    let flags: Vec<bool> = passes.iter().map(|p| p.on_j).collect();
    let new_j = if flags.iter().any(|&b| b) {
        let (first, last) = cyclic_block(&flags).expect("arc passes stay contiguous");
        SelectedArc {
            start_edge: first,
            start_near: EdgeEnd::Lo,
            end_edge: (last + 1) % total,
            end_near: EdgeEnd::Hi,
        }
    } else {
        // Pass-free arc: it sits inside one old edge; find the surviving
        // piece of that edge.
        let h = d.pass_entering(j.start_edge);
        let host = (0..total)
            .min_by_key(|&i| {
                let o = passes[i].origin.unwrap_or(usize::MAX);
                // distance forward from h to o, cyclically
                if o == usize::MAX {
                    usize::MAX
                } else {
                    (o + old_len - h) % old_len
                }
            })
            .expect("diagram has passes");
        SelectedArc {
            start_edge: host,
            start_near: EdgeEnd::Lo,
            end_edge: host,
            end_near: EdgeEnd::Hi,
        }
    };
    debug_assert_eq!(
        new_j.check_simple(&new_d).map(|p| p.len()),
        Ok(j_passes.len() + r.cost),
    );
    Ok((new_d, new_j))
}

/// Bounds of the single cyclic block of `true` flags, or `None` if all
/// false. Returns `(first, last)` indices of the block in cyclic order.
fn cyclic_block(flags: &[bool]) -> Option<(usize, usize)> {
    let n = flags.len();
    let count = flags.iter().filter(|&&b| b).count();
    if count == 0 {
        return None;
    }
    if count == n {
        return Some((0, n - 1));
    }
    // First true whose predecessor is false.
    let first = (0..n).find(|&i| flags[i] && !flags[(i + n - 1) % n])?;
    for i in 0..count {
        if !flags[(first + i) % n] {
            return None;
        }
    }
    let last = (first + count - 1) % n;
    if (0..n).filter(|&i| flags[i] && !flags[(i + n - 1) % n]).count() != 1 {
        return None;
    }
    Some((first, last))
}

/// Greedy simple arc starting inside edge `e`: extend forward while no
/// crossing repeats, then extend backward likewise.
pub fn greedy_arc_from(d: &KnotDiagram, e: usize) -> SelectedArc {
    let total = d.edge_count();
    if total == 0 {
        return SelectedArc {
            start_edge: 0,
            start_near: EdgeEnd::Lo,
            end_edge: 0,
            end_near: EdgeEnd::Hi,
        };
    }
    let mut seen = vec![false; d.crossing_count()];
    let t0 = d.pass_entering(e);
    let mut first = t0;
    let mut last = t0;
    let mut len = 0usize;
    // Forward.
    let mut t = t0;
    loop {
        let c = d.passes()[t].crossing;
        if seen[c] || len == total {
            break;
        }
        seen[c] = true;
        last = t;
        len += 1;
        t = (t + 1) % total;
    }
    if len == 0 {
        // Even the first crossing repeats is impossible; a fresh walk always
        // takes at least one pass.
        unreachable!("greedy walk takes at least one pass");
    }
    // Backward.
    let mut t = (t0 + total - 1) % total;
    while len < total {
        let c = d.passes()[t].crossing;
        if seen[c] {
            break;
        }
        seen[c] = true;
        first = t;
        len += 1;
        t = (t + total - 1) % total;
    }
    SelectedArc {
        start_edge: d.passes()[first].in_edge,
        start_near: EdgeEnd::Lo,
        end_edge: d.passes()[last].out_edge,
        end_near: EdgeEnd::Hi,
    }
}

/// Greedy longest simple arc over all starting edges; ties take the lowest
/// starting edge id.
pub fn choose_initial_arc(d: &KnotDiagram) -> SelectedArc {
    let mut best: Option<(usize, SelectedArc)> = None;
    for e in 0..d.edge_count().max(1) {
        let arc = greedy_arc_from(d, e.min(d.edge_count().saturating_sub(1)));
        let len = arc.passes(d).map(|p| p.len()).unwrap_or(0);
        if best.as_ref().map(|(l, _)| len > *l).unwrap_or(true) {
            best = Some((len, arc));
        }
    }
    best.map(|(_, a)| a).unwrap_or(SelectedArc {
        start_edge: 0,
        start_near: EdgeEnd::Lo,
        end_edge: 0,
        end_near: EdgeEnd::Hi,
    })
}

/// One step of the reduction loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub step: usize,
    pub crossing: usize,
    pub branch: u8,
    pub cost: usize,
    /// Totals after the step.
    pub total_crossings: usize,
    pub off_arc_crossings: usize,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {}",
            self.step, self.crossing, self.branch, self.cost, self.total_crossings, self.off_arc_crossings
        )
    }
}

fn off_arc_crossings(d: &KnotDiagram, j_passes: &[usize]) -> Vec<usize> {
    let mut on = vec![false; d.crossing_count()];
    for &t in j_passes {
        on[d.passes()[t].crossing] = true;
    }
    (0..d.crossing_count()).filter(|&c| !on[c]).collect()
}

/// Repeatedly reduces the cheapest reducible crossing (ties: lowest
/// crossing id, under-branch first) until the diagram is semimeander.
/// Terminates in exactly as many steps as there are crossings off the arc.
pub fn make_semimeander(
    d: &KnotDiagram,
    j: &SelectedArc,
) -> Result<(KnotDiagram, SelectedArc, Vec<TraceStep>), ReduceError> {
    let mut d = d.clone();
    let mut j = *j;
    let mut trace = Vec::new();
    let budget = off_arc_crossings(&d, &j.check_simple(&d)?).len();
    for step in 1..=budget {
        let j_passes = j.check_simple(&d)?;
        let off = off_arc_crossings(&d, &j_passes);
        debug_assert_eq!(off.len(), budget - step + 1);
        let dual = dual_graph(&d, &j);
        let chosen = off
            .iter()
            .filter_map(|&x| best_reduction(&d, &dual, &j, x))
            .min_by_key(|r| (r.cost, r.crossing, r.branch))
            .ok_or(ReduceError::NoReducibleCrossing)?;
        let (nd, nj) = replace_arc(&d, &j, &chosen)?;
        d = nd;
        j = nj;
        trace.push(TraceStep {
            step,
            crossing: chosen.crossing,
            branch: chosen.branch,
            cost: chosen.cost,
            total_crossings: d.crossing_count(),
            off_arc_crossings: off_arc_crossings(&d, &j.check_simple(&d)?).len(),
        });
    }
    debug_assert_eq!(is_semimeander(&d, &j), Ok(true));
    Ok((d, j, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{extract_acd, fixtures, normalized_bracket, parse_pd};

    fn trefoil_with_two_pass_arc() -> (KnotDiagram, SelectedArc) {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        let j = SelectedArc::parse("edge:1@lo .. edge:3@hi").unwrap();
        (d, j)
    }

    #[test]
    fn greedy_arc_on_trefoil_reaches_three_crossings() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        for e in 0..d.edge_count() {
            let arc = greedy_arc_from(&d, e);
            assert_eq!(arc.check_simple(&d).unwrap().len(), 3, "edge {e}");
        }
        let best = choose_initial_arc(&d);
        assert_eq!(best.check_simple(&d).unwrap().len(), 3);
        assert!(is_semimeander(&d, &best).unwrap());
    }

    #[test]
    fn greedy_arc_on_kink() {
        let d = parse_pd(fixtures::UNKNOT_KINK).unwrap();
        let arc = choose_initial_arc(&d);
        assert_eq!(arc.check_simple(&d).unwrap().len(), 1);
    }

    #[test]
    fn reduction_cost_rejects_arc_crossings() {
        let (d, j) = trefoil_with_two_pass_arc();
        // Crossings 0 and 2 are on the arc; crossing 1 is off it.
        assert!(matches!(reduction_cost(&d, &j, 0), Err(ReduceError::CrossingOnArc(0))));
        let r = reduction_cost(&d, &j, 1).unwrap().expect("reducible");
        assert_eq!(r.crossing, 1);
        assert!(r.cost <= 2);
    }

    #[test]
    fn replace_arc_accounting() {
        let (d, j) = trefoil_with_two_pass_arc();
        let before = extract_acd(&d, &j).unwrap();
        let r = reduction_cost(&d, &j, 1).unwrap().unwrap();
        let (nd, nj) = replace_arc(&d, &j, &r).unwrap();
        // Total change is cost - 1; off-arc count drops by one.
        assert_eq!(nd.crossing_count(), d.crossing_count() + r.cost - 1);
        let after = extract_acd(&nd, &nj).unwrap();
        assert_eq!(after.len(), before.len() - 1);
        // Knot type is preserved.
        assert_eq!(normalized_bracket(&nd).unwrap(), normalized_bracket(&d).unwrap());
    }

    #[test]
    fn stale_reduction_rejected() {
        let (d, j) = trefoil_with_two_pass_arc();
        let r = reduction_cost(&d, &j, 1).unwrap().unwrap();
        let (nd, nj) = replace_arc(&d, &j, &r).unwrap();
        assert!(matches!(replace_arc(&nd, &nj, &r), Err(ReduceError::Stale)));
    }

    #[test]
    fn already_semimeander_is_identity() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        let j = SelectedArc::parse("edge:1@lo .. edge:4@hi").unwrap();
        let (nd, nj, trace) = make_semimeander(&d, &j).unwrap();
        assert!(trace.is_empty());
        assert_eq!(nd, d);
        assert_eq!(nj, j);
    }

    #[test]
    fn trefoil_two_pass_arc_reduces_in_one_step() {
        let (d, j) = trefoil_with_two_pass_arc();
        let (nd, nj, trace) = make_semimeander(&d, &j).unwrap();
        assert_eq!(trace.len(), 1);
        assert!(is_semimeander(&nd, &nj).unwrap());
        assert_eq!(normalized_bracket(&nd).unwrap(), normalized_bracket(&d).unwrap());
        // Deterministic policy: pinned regression values.
        let t = trace[0];
        assert_eq!((t.crossing, t.branch), (1, 1));
        let line = t.to_string();
        assert_eq!(line.split_whitespace().count(), 6);
    }

    #[test]
    fn empty_arc_reduction_on_kink() {
        let d = parse_pd(fixtures::UNKNOT_KINK).unwrap();
        // A pass-free arc inside edge 1: the kink crossing is off the arc
        // and reduces at zero cost, unwinding the diagram completely.
        let j = SelectedArc::parse("edge:1@lo .. edge:1@hi").unwrap();
        let (nd, nj, trace) = make_semimeander(&d, &j).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].cost, 0);
        assert_eq!(nd.crossing_count(), 0);
        assert!(is_semimeander(&nd, &nj).unwrap());
    }
}
