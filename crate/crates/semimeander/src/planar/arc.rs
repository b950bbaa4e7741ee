//! Selected simple arcs and the chord diagram they induce.
//!
//! An arc runs forward along the knot from a point strictly inside one edge
//! to a point strictly inside another, so its endpoints are never crossings.
//! Contracting the arc to a basepoint and dropping every chord with an end
//! on it turns the diagram into a circular annotated chord diagram with
//! concrete integer weights.

use std::fmt;

use thiserror::Error;

use crate::acd::Acd;
use crate::linear_form::LinearForm;
use crate::rational::rat;

use super::KnotDiagram;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArcError {
    #[error("malformed arc spec `{0}`")]
    Malformed(String),
    #[error("edge {0} out of range")]
    EdgeRange(usize),
    #[error("arc is not simple: crossing {0} is passed twice")]
    NotSimple(usize),
}

/// Which end of an edge interior a point sits near; `Lo` is near the tail.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeEnd {
    Lo,
    Hi,
}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeEnd::Lo => write!(f, "lo"),
            EdgeEnd::Hi => write!(f, "hi"),
        }
    }
}

/// An arc from a point inside `start_edge` forward along the knot to a
/// point inside `end_edge`. With both endpoints on the same edge the
/// markers disambiguate: `hi .. lo` wraps the whole knot, anything else is
/// an empty arc passing no crossings.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SelectedArc {
    pub start_edge: usize,
    pub start_near: EdgeEnd,
    pub end_edge: usize,
    pub end_near: EdgeEnd,
}

impl SelectedArc {
    /// Text form `edge:<label>@<lo|hi> .. edge:<label>@<lo|hi>` with
    /// 1-based edge labels matching the PD code.
    pub fn parse(text: &str) -> Result<SelectedArc, ArcError> {
        let err = || ArcError::Malformed(text.to_string());
        let (a, b) = text.split_once("..").ok_or_else(err)?;
        let parse_end = |part: &str| -> Result<(usize, EdgeEnd), ArcError> {
            let part = part.trim();
            let rest = part.strip_prefix("edge:").ok_or_else(err)?;
            let (label, at) = rest.split_once('@').ok_or_else(err)?;
            let label: usize = label.trim().parse().map_err(|_| err())?;
            if label == 0 {
                return Err(ArcError::EdgeRange(label));
            }
            let near = match at.trim() {
                "lo" => EdgeEnd::Lo,
                "hi" => EdgeEnd::Hi,
                _ => return Err(err()),
            };
            Ok((label - 1, near))
        };
        let (start_edge, start_near) = parse_end(a)?;
        let (end_edge, end_near) = parse_end(b)?;
        Ok(SelectedArc { start_edge, start_near, end_edge, end_near })
    }

    pub fn format(&self) -> String {
        format!(
            "edge:{}@{} .. edge:{}@{}",
            self.start_edge + 1,
            self.start_near,
            self.end_edge + 1,
            self.end_near
        )
    }

    /// Pass indices covered by the arc, in walk order.
    pub fn passes(&self, d: &KnotDiagram) -> Result<Vec<usize>, ArcError> {
        let total = d.edge_count();
        if total == 0 {
            return Ok(Vec::new());
        }
        if self.start_edge >= total {
            return Err(ArcError::EdgeRange(self.start_edge + 1));
        }
        if self.end_edge >= total {
            return Err(ArcError::EdgeRange(self.end_edge + 1));
        }
        if self.start_edge == self.end_edge {
            return if (self.start_near, self.end_near) == (EdgeEnd::Hi, EdgeEnd::Lo) {
                let first = d.pass_entering(self.start_edge);
                Ok((0..total).map(|i| (first + i) % total).collect())
            } else {
                Ok(Vec::new())
            };
        }
        let mut out = Vec::new();
        let mut t = d.pass_entering(self.start_edge);
        loop {
            out.push(t);
            if d.passes()[t].out_edge == self.end_edge {
                return Ok(out);
            }
            t = (t + 1) % total;
            debug_assert!(out.len() <= total, "walk failed to reach the end edge");
        }
    }

    /// Errors unless no crossing is passed twice by the arc.
    pub fn check_simple(&self, d: &KnotDiagram) -> Result<Vec<usize>, ArcError> {
        let passes = self.passes(d)?;
        let mut seen = vec![false; d.crossing_count()];
        for &t in &passes {
            let c = d.passes()[t].crossing;
            if seen[c] {
                return Err(ArcError::NotSimple(c));
            }
            seen[c] = true;
        }
        Ok(passes)
    }
}

/// Contracts the arc to a basepoint and builds the induced chord diagram.
///
/// The basepoint constant is the number of crossings on the arc; each
/// boundary segment counts the chord ends removed from it; chords are the
/// crossings with both passes off the arc. The segment constants sum to the
/// basepoint constant.
pub fn extract_acd(d: &KnotDiagram, j: &SelectedArc) -> Result<Acd, ArcError> {
    let j_passes = j.check_simple(d)?;
    let total = d.edge_count();
    let mut on_j = vec![false; total.max(1)];
    for &t in &j_passes {
        on_j[t] = true;
    }
    let mut crossing_on_j = vec![false; d.crossing_count()];
    for &t in &j_passes {
        crossing_on_j[d.passes()[t].crossing] = true;
    }

    // Complement walk: from the end of the arc around to its start.
    let complement: Vec<usize> = if j_passes.is_empty() {
        if total == 0 {
            Vec::new()
        } else {
            let first = d.pass_entering(j.start_edge);
            (0..total).map(|i| (first + i) % total).collect()
        }
    } else {
        let last = *j_passes.last().unwrap();
        (1..=total - j_passes.len()).map(|i| (last + i) % total).collect()
    };

    let mut partner_by_crossing: Vec<Option<usize>> = vec![None; d.crossing_count()];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut segment_counts: Vec<u64> = vec![0];
    let mut positions = 0usize;
    for &t in &complement {
        let c = d.passes()[t].crossing;
        if crossing_on_j[c] {
            // A removed chord end: the crossing sits on the arc.
            *segment_counts.last_mut().unwrap() += 1;
        } else {
            positions += 1;
            segment_counts.push(0);
            match partner_by_crossing[c] {
                None => partner_by_crossing[c] = Some(positions),
                Some(first) => pairs.push((first, positions)),
            }
        }
    }

    let mut partner = vec![usize::MAX; positions];
    for (a, b) in pairs {
        partner[a - 1] = b - 1;
        partner[b - 1] = a - 1;
    }
    debug_assert!(partner.iter().all(|q| *q != usize::MAX), "complement pass without partner");

    let segments =
        segment_counts.iter().map(|c| LinearForm::from_constant(rat(*c as i64))).collect();
    let basepoint = LinearForm::from_constant(rat(j_passes.len() as i64));
    Ok(Acd::from_parts(partner, segments, basepoint))
}

/// True iff the arc and its complement are both simple, i.e. every crossing
/// pairs one arc pass with one complement pass.
pub fn is_semimeander(d: &KnotDiagram, j: &SelectedArc) -> Result<bool, ArcError> {
    if d.crossing_count() == 0 {
        return Ok(true);
    }
    let j_passes = match j.check_simple(d) {
        Ok(p) => p,
        Err(ArcError::NotSimple(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let mut count = vec![0usize; d.crossing_count()];
    for &t in &j_passes {
        count[d.passes()[t].crossing] += 1;
    }
    Ok(count.iter().all(|&c| c == 1))
}

#[cfg(test)]
mod tests {
    use super::super::{fixtures, parse_pd};
    use super::*;
    use num::Zero;

    fn arc(text: &str) -> SelectedArc {
        SelectedArc::parse(text).unwrap()
    }

    #[test]
    fn spec_round_trip() {
        let a = arc("edge:1@lo .. edge:4@hi");
        assert_eq!(a.format(), "edge:1@lo .. edge:4@hi");
        assert_eq!(a.start_edge, 0);
        assert_eq!(a.end_edge, 3);
        assert!(SelectedArc::parse("edge:0@lo .. edge:1@hi").is_err());
        assert!(SelectedArc::parse("edge:1@mid .. edge:2@hi").is_err());
    }

    #[test]
    fn trefoil_arc_passes() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        // From inside edge 1 forward to inside edge 4: passes the heads of
        // edges 1, 2, 3, which are three distinct crossings.
        let a = arc("edge:1@lo .. edge:4@hi");
        let passes = a.check_simple(&d).unwrap();
        assert_eq!(passes.len(), 3);

        // The full wrap is not simple: every crossing is passed twice.
        let wrap = arc("edge:1@hi .. edge:1@lo");
        assert!(matches!(wrap.check_simple(&d), Err(ArcError::NotSimple(_))));

        // Degenerate empty arc.
        let tiny = arc("edge:1@lo .. edge:1@hi");
        assert_eq!(tiny.passes(&d).unwrap().len(), 0);
    }

    #[test]
    fn trefoil_with_three_pass_arc_is_semimeander() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        let a = arc("edge:1@lo .. edge:4@hi");
        assert!(is_semimeander(&d, &a).unwrap());
        let x = extract_acd(&d, &a).unwrap();
        assert_eq!(x.len(), 0);
        assert_eq!(*x.basepoint().constant_term(), rat(3));
    }

    #[test]
    fn trefoil_two_pass_arc_extracts_single_chord() {
        let d = parse_pd(fixtures::TREFOIL).unwrap();
        // Passes the heads of edges 1 and 2 only: two crossings on the arc,
        // one crossing (with both passes in the complement) remains a chord.
        let a = arc("edge:1@lo .. edge:3@hi");
        let x = extract_acd(&d, &a).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(*x.basepoint().constant_term(), rat(2));
        let total: crate::rational::Rational =
            x.segments().iter().map(|s| s.constant_term().clone()).sum();
        assert_eq!(total, rat(2));
        assert!(!is_semimeander(&d, &a).unwrap());
    }

    #[test]
    fn empty_arc_extracts_everything_as_chords() {
        let d = parse_pd(fixtures::FIGURE_EIGHT).unwrap();
        let a = arc("edge:1@lo .. edge:1@hi");
        let x = extract_acd(&d, &a).unwrap();
        assert_eq!(x.len(), 4);
        assert!(x.basepoint().constant_term().is_zero());
    }

    #[test]
    fn unknot_is_semimeander() {
        let d = parse_pd("").unwrap();
        let a = arc("edge:1@lo .. edge:1@hi");
        assert!(is_semimeander(&d, &a).unwrap());
    }

    #[test]
    fn kink_one_pass_arc_is_semimeander() {
        let d = parse_pd(fixtures::UNKNOT_KINK).unwrap();
        let a = arc("edge:1@lo .. edge:2@hi");
        assert!(is_semimeander(&d, &a).unwrap());
        let x = extract_acd(&d, &a).unwrap();
        assert_eq!(x.len(), 0);
        assert_eq!(*x.basepoint().constant_term(), rat(1));
    }
}
