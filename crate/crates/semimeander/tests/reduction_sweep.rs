//! Exhaustive reduction sweep: every forward arc of every length on every
//! corpus knot, checking termination, the semimeander predicate, the
//! reduction-cost oracle, and knot-type preservation.

use semimeander::planar::{
    dual_graph, extract_acd, fixtures, is_semimeander, normalized_bracket, parse_pd,
    shortest_allowed_path, DualGraph, EdgeEnd, KnotDiagram, SelectedArc,
};
use semimeander::reducer::{make_semimeander, reduction_cost};

/// All simple forward arcs starting inside each edge.
fn forward_arcs(d: &KnotDiagram) -> Vec<SelectedArc> {
    let total = d.edge_count();
    let mut out = Vec::new();
    for start in 0..total {
        'len: for len in 1..=total {
            let t0 = d.pass_entering(start);
            let mut seen = vec![false; d.crossing_count()];
            for i in 0..len {
                let c = d.passes()[(t0 + i) % total].crossing;
                if seen[c] {
                    continue 'len;
                }
                seen[c] = true;
            }
            let end_edge = d.passes()[(t0 + len - 1) % total].out_edge;
            if end_edge == start {
                continue;
            }
            out.push(SelectedArc {
                start_edge: start,
                start_near: EdgeEnd::Lo,
                end_edge,
                end_near: EdgeEnd::Hi,
            });
        }
    }
    out
}

#[test]
fn reduce_every_arc_on_every_corpus_knot() {
    let mut runs = 0usize;
    let mut multi_step = 0usize;
    for (name, pd) in fixtures::ALL_KNOTS {
        let d = parse_pd(pd).unwrap();
        let reference = normalized_bracket(&d).unwrap();
        for arc in forward_arcs(&d) {
            let off = extract_acd(&d, &arc).unwrap().len();
            let (nd, nj, trace) = make_semimeander(&d, &arc)
                .unwrap_or_else(|e| panic!("{name} arc {}: {e}", arc.format()));
            assert_eq!(trace.len(), off, "{name} arc {}", arc.format());
            assert!(is_semimeander(&nd, &nj).unwrap(), "{name} arc {}", arc.format());
            // Costs are nonincreasing in urgency only step by step; check
            // each recorded step kept the off-arc count falling by one.
            for (i, step) in trace.iter().enumerate() {
                assert_eq!(step.step, i + 1);
                assert_eq!(step.off_arc_crossings, off - i - 1);
            }
            if nd.crossing_count() <= 20 {
                assert_eq!(
                    normalized_bracket(&nd).unwrap(),
                    reference,
                    "{name} arc {}: knot type changed",
                    arc.format()
                );
            }
            runs += 1;
            if trace.len() > 1 {
                multi_step += 1;
            }
        }
    }
    assert!(runs > 400, "sweep too small: {runs}");
    assert!(multi_step > 200, "too few multi-step reductions: {multi_step}");
}

/// Brute-force enumeration of simple allowed face paths up to a depth.
fn brute_min_cost(
    g: &DualGraph,
    sources: &[usize],
    targets: &[usize],
    depth: usize,
) -> Option<usize> {
    fn dfs(
        g: &DualGraph,
        cur: usize,
        targets: &[usize],
        used: &mut Vec<bool>,
        depth_left: usize,
        cost: usize,
        best: &mut Option<usize>,
    ) {
        if targets.contains(&cur) {
            *best = Some(best.map_or(cost, |b: usize| b.min(cost)));
        }
        if depth_left == 0 {
            return;
        }
        for a in &g.arcs {
            if !a.allowed || a.left == a.right {
                continue;
            }
            for (from, to) in [(a.left, a.right), (a.right, a.left)] {
                if from == cur && !used[to] {
                    used[to] = true;
                    dfs(g, to, targets, used, depth_left - 1, cost + 1, best);
                    used[to] = false;
                }
            }
        }
    }
    let mut best = None;
    for &s in sources {
        let mut used = vec![false; g.num_faces];
        used[s] = true;
        dfs(g, s, targets, &mut used, depth, 0, &mut best);
    }
    best
}

#[test]
fn reduction_costs_match_brute_force_path_enumeration() {
    for (name, pd) in [("3_1", fixtures::TREFOIL), ("4_1", fixtures::FIGURE_EIGHT), ("5_2", fixtures::K5_2)] {
        let d = parse_pd(pd).unwrap();
        for arc in forward_arcs(&d) {
            let g = dual_graph(&d, &arc);
            let arc_passes = arc.check_simple(&d).unwrap();
            let mut on_arc = vec![false; d.crossing_count()];
            for &t in &arc_passes {
                on_arc[d.passes()[t].crossing] = true;
            }
            for x in 0..d.crossing_count() {
                if on_arc[x] {
                    continue;
                }
                let got = reduction_cost(&d, &arc, x).unwrap();
                // Oracle: min over both branches of the brute-force search.
                let mut want: Option<usize> = None;
                for branch in [1u8, 2] {
                    let [pa, pb] = d.passes_of_crossing(x);
                    let pass = [pa, pb]
                        .into_iter()
                        .map(|t| d.passes()[t])
                        .find(|p| (branch == 1) == (p.in_slot == 0))
                        .unwrap();
                    let s = [g.arcs[pass.in_edge].left, g.arcs[pass.in_edge].right];
                    let t = [g.arcs[pass.out_edge].left, g.arcs[pass.out_edge].right];
                    if let Some(c) = brute_min_cost(&g, &s, &t, 6) {
                        want = Some(want.map_or(c, |w: usize| w.min(c)));
                    }
                    // Cross-check the search itself per branch.
                    let path = shortest_allowed_path(&g, &s, &t);
                    assert_eq!(path.map(|p| p.cost()), brute_min_cost(&g, &s, &t, 6),
                        "{name} arc {} crossing {x} branch {branch}", arc.format());
                }
                assert_eq!(
                    got.map(|r| r.cost),
                    want,
                    "{name} arc {} crossing {x}",
                    arc.format()
                );
            }
        }
    }
}

#[test]
fn first_off_arc_crossing_is_always_reducible() {
    // The construction pulling the first crossing after the arc's end onto
    // it guarantees a reduction curve exists.
    for (name, pd) in fixtures::ALL_KNOTS {
        let d = parse_pd(pd).unwrap();
        for arc in forward_arcs(&d) {
            let passes = arc.check_simple(&d).unwrap();
            let mut on_arc = vec![false; d.crossing_count()];
            for &t in &passes {
                on_arc[d.passes()[t].crossing] = true;
            }
            let total = d.edge_count();
            let last = *passes.last().unwrap();
            let first_off = (1..total)
                .map(|i| d.passes()[(last + i) % total].crossing)
                .find(|&c| !on_arc[c]);
            if let Some(x) = first_off {
                let r = reduction_cost(&d, &arc, x).unwrap();
                assert!(r.is_some(), "{name} arc {}: first off-arc crossing {x} not reducible", arc.format());
            }
        }
    }
}
