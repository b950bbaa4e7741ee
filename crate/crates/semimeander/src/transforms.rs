//! Transformations I and II as rewrite rules with symbolic weight
//! bookkeeping.
//!
//! On a circular diagram with code
//! `x_{2n}[w_{2n+1}][m][w_1]x_1[w_2]x_2 ... x_{2n-1}[w_{2n}]`:
//!
//! * Transformation I eliminates `x_1` (or mirrored, `x_{2n}`). With the
//!   partner of `x_1` at position `i`, the basepoint gains `2w_1 + 1`,
//!   segments 1 and 2 merge, and segments `i`, `i+1` merge gaining another
//!   `2w_1 + 1`; for `i = 2` both merges collapse into one segment.
//! * Transformation II at an adjacent equal pair `x_{i-1} = x_i` removes the
//!   pair; the basepoint gains `w_i` and segments `i-1`, `i`, `i+1` merge.
//!
//! Both rules transfer to windows: a move on a symbol whose partner lies in
//! the window follows the circular formula; eliminating an unpaired symbol
//! adds `2w + 1` to the basepoint (`w` its basepoint-side segment), merges
//! its flanking segments, and drops the partner-side update, which falls
//! outside the window. Every move eliminates exactly one chord.

use thiserror::Error;

use crate::acd::{Acd, Diagram, PreAcd};
use crate::linear_form::LinearForm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("no moves on an empty diagram")]
    EmptyDiagram,
    #[error("move not applicable: {0}")]
    NotApplicable(String),
}

/// One elimination step.
///
/// For circular diagrams the T2 position `i` is 1-based with
/// `2 <= i <= 2n`, naming the adjacent equal pair `(x_{i-1}, x_i)`; the pair
/// may not span the basepoint. For windows `i` is the 1-based position of the
/// second symbol of the pair in window order, both symbols on the same side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    T1Left,
    T1Right,
    T2 { i: usize },
}

impl Move {
    /// The move acting on the reflected diagram.
    pub fn mirror(&self, positions: usize) -> Move {
        match *self {
            Move::T1Left => Move::T1Right,
            Move::T1Right => Move::T1Left,
            Move::T2 { i } => Move::T2 { i: positions + 2 - i },
        }
    }
}

/// All moves applicable to a circular diagram, in the fixed search order:
/// T1-left, T1-right, then T2 positions left to right.
pub fn applicable_moves_acd(x: &Acd) -> Result<Vec<Move>, MoveError> {
    if x.is_empty() {
        return Err(MoveError::EmptyDiagram);
    }
    let mut moves = vec![Move::T1Left, Move::T1Right];
    for i in 2..=x.positions() {
        if x.partner(i - 1) == i {
            moves.push(Move::T2 { i });
        }
    }
    Ok(moves)
}

/// All moves applicable to a window, same order. T1-left acts on the symbol
/// immediately before the basepoint, T1-right on the one immediately after.
pub fn applicable_moves_pre(x: &PreAcd) -> Result<Vec<Move>, MoveError> {
    if x.symbol_count() == 0 {
        return Err(MoveError::EmptyDiagram);
    }
    let mut moves = Vec::new();
    if x.left_count() > 0 {
        moves.push(Move::T1Left);
    }
    if x.right_count() > 0 {
        moves.push(Move::T1Right);
    }
    let total = x.symbol_count();
    for p in 0..total.saturating_sub(1) {
        let same_side = (p + 1 < x.left_count()) || (p >= x.left_count());
        if same_side && x.partner(p) == Some(p + 1) {
            moves.push(Move::T2 { i: p + 2 });
        }
    }
    Ok(moves)
}

pub fn applicable_moves(x: &Diagram) -> Result<Vec<Move>, MoveError> {
    match x {
        Diagram::Acd(a) => applicable_moves_acd(a),
        Diagram::Pre(p) => applicable_moves_pre(p),
    }
}

/// Transformation I on `x_1`.
pub fn apply_t1_left(x: &Acd) -> Result<Acd, MoveError> {
    if x.is_empty() {
        return Err(MoveError::EmptyDiagram);
    }
    let n2 = x.positions();
    let i = x.partner(1);
    let gain = x.segment(1).double_plus_one();
    let mut basepoint = x.basepoint().clone();
    basepoint.add_assign(&gain);

    let mut segments = Vec::with_capacity(n2 - 1);
    if i == 2 {
        // Partner adjacent: segments 1, 2, 3 collapse into one, carrying the
        // partner-side gain as well.
        let mut merged = x.segment(1).add(x.segment(2));
        merged.add_assign(x.segment(3));
        merged.add_assign(&gain);
        segments.push(merged);
        for j in 4..=n2 + 1 {
            segments.push(x.segment(j).clone());
        }
    } else {
        segments.push(x.segment(1).add(x.segment(2)));
        for j in 3..=n2 + 1 {
            if j == i {
                let mut merged = x.segment(i).add(x.segment(i + 1));
                merged.add_assign(&gain);
                segments.push(merged);
            } else if j != i + 1 {
                segments.push(x.segment(j).clone());
            }
        }
    }

    let partner = removed_positions_partner(x, &[1, i]);
    Ok(Acd::from_parts(partner, segments, basepoint))
}

/// Transformation I on `x_{2n}`, the mirror image of [`apply_t1_left`].
pub fn apply_t1_right(x: &Acd) -> Result<Acd, MoveError> {
    if x.is_empty() {
        return Err(MoveError::EmptyDiagram);
    }
    let n2 = x.positions();
    let i = x.partner(n2);
    let last = n2 + 1;
    let gain = x.segment(last).double_plus_one();
    let mut basepoint = x.basepoint().clone();
    basepoint.add_assign(&gain);

    let mut segments = Vec::with_capacity(n2 - 1);
    if i == n2 - 1 {
        let mut merged = x.segment(last).add(x.segment(last - 1));
        merged.add_assign(x.segment(last - 2));
        merged.add_assign(&gain);
        for j in 1..=n2 - 2 {
            segments.push(x.segment(j).clone());
        }
        segments.push(merged);
    } else {
        for j in 1..=n2 - 1 {
            if j == i {
                let mut merged = x.segment(i).add(x.segment(i + 1));
                merged.add_assign(&gain);
                segments.push(merged);
            } else if j != i + 1 {
                segments.push(x.segment(j).clone());
            }
        }
        segments.push(x.segment(n2).add(x.segment(last)));
    }

    let partner = removed_positions_partner(x, &[i, n2]);
    Ok(Acd::from_parts(partner, segments, basepoint))
}

/// Transformation II at the adjacent equal pair `(x_{i-1}, x_i)`.
pub fn apply_t2(x: &Acd, i: usize) -> Result<Acd, MoveError> {
    if x.is_empty() {
        return Err(MoveError::EmptyDiagram);
    }
    let n2 = x.positions();
    if i < 2 || i > n2 || x.partner(i - 1) != i {
        return Err(MoveError::NotApplicable(format!(
            "positions {} and {} are not an adjacent equal pair",
            i - 1,
            i
        )));
    }
    let mut basepoint = x.basepoint().clone();
    basepoint.add_assign(x.segment(i));

    let mut segments = Vec::with_capacity(n2 - 1);
    for j in 1..=n2 + 1 {
        if j == i - 1 {
            let mut merged = x.segment(i - 1).add(x.segment(i));
            merged.add_assign(x.segment(i + 1));
            segments.push(merged);
        } else if j != i && j != i + 1 {
            segments.push(x.segment(j).clone());
        }
    }

    let partner = removed_positions_partner(x, &[i - 1, i]);
    Ok(Acd::from_parts(partner, segments, basepoint))
}

/// Rebuilds the partner involution after deleting two 1-based positions.
fn removed_positions_partner(x: &Acd, removed: &[usize; 2]) -> Vec<usize> {
    let n2 = x.positions();
    let shift = |p: usize| -> usize {
        // New 0-based index of old 1-based position p.
        p - 1 - removed.iter().filter(|r| **r < p).count()
    };
    let mut out = Vec::with_capacity(n2 - 2);
    for p in 1..=n2 {
        if removed.contains(&p) {
            continue;
        }
        let q = x.partner(p);
        debug_assert!(!removed.contains(&q), "chord with one removed endpoint");
        out.push(shift(q));
    }
    out
}

pub fn apply_move_acd(x: &Acd, mv: Move) -> Result<Acd, MoveError> {
    match mv {
        Move::T1Left => apply_t1_left(x),
        Move::T1Right => apply_t1_right(x),
        Move::T2 { i } => apply_t2(x, i),
    }
}

/// A pending removal inside a window: `gain` is added to the segment the
/// removed symbol's flanks merge into (used for the partner side of a T1).
struct Removal {
    pos: usize,
    gain: Option<LinearForm>,
}

/// Clears the pairing between two positions about to be removed.
fn unlink(x: &mut PreAcd, a: usize, b: usize) {
    let (_, partner, _) = x.parts_mut();
    debug_assert_eq!(partner[a], Some(b));
    debug_assert_eq!(partner[b], Some(a));
    partner[a] = None;
    partner[b] = None;
}

fn remove_symbol(x: &mut PreAcd, r: Removal) {
    let (left, partner, segments) = x.parts_mut();
    let p = r.pos;
    debug_assert!(partner[p].is_none(), "removals operate on unlinked symbols");
    let seg = segments[p].clone();
    if p < *left {
        // Left side: the basepoint-side segment of p merges outward into the
        // slot of p-1; at the window edge the merge falls outside and is
        // dropped, along with any gain.
        if p > 0 {
            segments[p - 1].add_assign(&seg);
            if let Some(g) = &r.gain {
                segments[p - 1].add_assign(g);
            }
        }
        *left -= 1;
    } else {
        // Right side: the segment between p and its inner neighbour merges
        // outward into the next slot (possibly the flank).
        segments[p + 1].add_assign(&seg);
        if let Some(g) = &r.gain {
            segments[p + 1].add_assign(g);
        }
    }
    segments.remove(p);
    partner.remove(p);
    for q in partner.iter_mut().flatten() {
        debug_assert!(*q != p);
        if *q > p {
            *q -= 1;
        }
    }
}

fn apply_t1_pre(x: &PreAcd, from_left: bool) -> Result<PreAcd, MoveError> {
    let pos = if from_left {
        if x.left_count() == 0 {
            return Err(MoveError::NotApplicable("no symbol before the basepoint".into()));
        }
        x.left_count() - 1
    } else {
        if x.right_count() == 0 {
            return Err(MoveError::NotApplicable("no symbol after the basepoint".into()));
        }
        x.left_count()
    };
    let mut out = x.clone();
    let gain = x.segment(pos).double_plus_one();
    out.basepoint_mut().add_assign(&gain);

    let mut removals = vec![Removal { pos, gain: None }];
    if let Some(pp) = x.partner(pos) {
        unlink(&mut out, pos, pp);
        removals.push(Removal { pos: pp, gain: Some(gain) });
    }
    // Descending position order keeps earlier indices valid.
    removals.sort_by(|a, b| b.pos.cmp(&a.pos));
    for r in removals {
        remove_symbol(&mut out, r);
    }
    Ok(out)
}

fn apply_t2_pre(x: &PreAcd, i: usize) -> Result<PreAcd, MoveError> {
    // `i` names the second symbol of the pair, 1-based: positions p, p+1.
    if i < 2 || i > x.symbol_count() {
        return Err(MoveError::NotApplicable(format!("no pair at position {i}")));
    }
    let p = i - 2;
    let same_side = (p + 1 < x.left_count()) || (p >= x.left_count());
    if !same_side || x.partner(p) != Some(p + 1) {
        return Err(MoveError::NotApplicable(format!(
            "positions {} and {} are not an adjacent equal pair on one side",
            p,
            p + 1
        )));
    }
    let mut out = x.clone();
    let between = if p < x.left_count() { x.segment(p) } else { x.segment(p + 1) };
    out.basepoint_mut().add_assign(between);
    unlink(&mut out, p, p + 1);
    remove_symbol(&mut out, Removal { pos: p + 1, gain: None });
    remove_symbol(&mut out, Removal { pos: p, gain: None });
    Ok(out)
}

pub fn apply_move_pre(x: &PreAcd, mv: Move) -> Result<PreAcd, MoveError> {
    match mv {
        Move::T1Left => apply_t1_pre(x, true),
        Move::T1Right => apply_t1_pre(x, false),
        Move::T2 { i } => apply_t2_pre(x, i),
    }
}

/// Applies one move; every move eliminates exactly one chord.
pub fn apply_move(x: &Diagram, mv: Move) -> Result<Diagram, MoveError> {
    match x {
        Diagram::Acd(a) => apply_move_acd(a, mv).map(Diagram::Acd),
        Diagram::Pre(p) => apply_move_pre(p, mv).map(Diagram::Pre),
    }
}
