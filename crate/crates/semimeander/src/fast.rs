//! Integer-coefficient elimination search for fresh diagrams.
//!
//! The table sweep enumerates up to tens of millions of fresh diagrams. On a
//! fresh diagram every transformation keeps all weight coefficients as small
//! nonnegative integers, so the sequence search runs on compact integer
//! forms and converts to exact rationals only at the linear-program
//! boundary. A sweep may also pass a threshold: as soon as one completed
//! sequence proves the diagram's value is strictly below it, the search
//! aborts, since `t̂ <= 1 + max_j a_j + a_0/m` for every single final form.
//!
//! Must agree exactly with the [`crate::transforms`] +
//! [`crate::optimizer`] path; the tests check that on all small diagrams.

use std::collections::{BTreeSet, HashSet};

use num::One;

use crate::linear_form::LinearForm;
use crate::optimizer::MParam;
use crate::rational::{rat, Rational};

/// `m + Σ w[j]·w_{j+1} + c` for basepoints, or the same without the `m`
/// for segments.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct IntForm {
    w: Box<[u64]>,
    c: u64,
}

impl IntForm {
    fn symbol(width: usize, slot: usize) -> Self {
        let mut w = vec![0; width].into_boxed_slice();
        w[slot] = 1;
        IntForm { w, c: 0 }
    }

    fn zero(width: usize) -> Self {
        IntForm { w: vec![0; width].into_boxed_slice(), c: 0 }
    }

    fn add(&mut self, other: &IntForm) {
        for (a, b) in self.w.iter_mut().zip(other.w.iter()) {
            *a += b;
        }
        self.c += other.c;
    }

    /// `2·self + 1`.
    fn gain(&self) -> IntForm {
        IntForm { w: self.w.iter().map(|a| 2 * a).collect(), c: 2 * self.c + 1 }
    }

    fn dominates(&self, other: &IntForm) -> bool {
        self != other
            && self.c >= other.c
            && self.w.iter().zip(other.w.iter()).all(|(a, b)| a >= b)
    }

    /// Upper bound `1 + max_j a_j + c/m` on any program constrained by this
    /// form alone.
    fn single_bound(&self, m: &MParam) -> Rational {
        let mut out = Rational::one() + rat(*self.w.iter().max().unwrap_or(&0) as i64);
        if let MParam::Finite(m) = m {
            out += rat(self.c as i64) / m;
        }
        out
    }

    fn to_linear_with_m(&self) -> LinearForm {
        LinearForm::from_int_parts(true, &self.w, self.c)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct AcdState {
    /// 0-based fixed-point-free involution.
    partner: Vec<u16>,
    /// `segs[s]` precedes position `s`; the last entry trails position
    /// `2n-1`.
    segs: Vec<IntForm>,
    bp: IntForm,
}

impl AcdState {
    fn fresh(partner: &[usize]) -> Self {
        let n2 = partner.len();
        let width = n2 + 1;
        AcdState {
            partner: partner.iter().map(|q| *q as u16).collect(),
            segs: (0..width).map(|s| IntForm::symbol(width, s)).collect(),
            bp: IntForm::zero(width),
        }
    }

    fn positions(&self) -> usize {
        self.partner.len()
    }

    fn rebuild_partner(&self, removed: [usize; 2]) -> Vec<u16> {
        let mut out = Vec::with_capacity(self.partner.len() - 2);
        for (p, q) in self.partner.iter().enumerate() {
            if p == removed[0] || p == removed[1] {
                continue;
            }
            let q = *q as usize;
            let shift = removed.iter().filter(|r| **r < q).count();
            out.push((q - shift) as u16);
        }
        out
    }

    fn t1_left(&self) -> AcdState {
        let q = self.partner[0] as usize;
        let gain = self.segs[0].gain();
        let mut bp = self.bp.clone();
        bp.add(&gain);
        let mut segs = Vec::with_capacity(self.segs.len() - 2);
        if q == 1 {
            let mut merged = self.segs[0].clone();
            merged.add(&self.segs[1]);
            merged.add(&self.segs[2]);
            merged.add(&gain);
            segs.push(merged);
            segs.extend_from_slice(&self.segs[3..]);
        } else {
            let mut first = self.segs[0].clone();
            first.add(&self.segs[1]);
            segs.push(first);
            segs.extend_from_slice(&self.segs[2..q]);
            let mut merged = self.segs[q].clone();
            merged.add(&gain);
            merged.add(&self.segs[q + 1]);
            segs.push(merged);
            segs.extend_from_slice(&self.segs[q + 2..]);
        }
        AcdState { partner: self.rebuild_partner([0, q]), segs, bp }
    }

    fn t1_right(&self) -> AcdState {
        let last = self.positions() - 1;
        let q = self.partner[last] as usize;
        let gain = self.segs[last + 1].gain();
        let mut bp = self.bp.clone();
        bp.add(&gain);
        let mut segs = Vec::with_capacity(self.segs.len() - 2);
        if q == last - 1 {
            segs.extend_from_slice(&self.segs[..last - 1]);
            let mut merged = self.segs[last - 1].clone();
            merged.add(&self.segs[last]);
            merged.add(&self.segs[last + 1]);
            merged.add(&gain);
            segs.push(merged);
        } else {
            segs.extend_from_slice(&self.segs[..q]);
            let mut merged = self.segs[q].clone();
            merged.add(&gain);
            merged.add(&self.segs[q + 1]);
            segs.push(merged);
            segs.extend_from_slice(&self.segs[q + 2..last]);
            let mut trailing = self.segs[last].clone();
            trailing.add(&self.segs[last + 1]);
            segs.push(trailing);
        }
        AcdState { partner: self.rebuild_partner([q, last]), segs, bp }
    }

    /// Pair at positions `(p, p+1)`.
    fn t2(&self, p: usize) -> AcdState {
        let mut bp = self.bp.clone();
        bp.add(&self.segs[p + 1]);
        let mut segs = Vec::with_capacity(self.segs.len() - 2);
        segs.extend_from_slice(&self.segs[..p]);
        let mut merged = self.segs[p].clone();
        merged.add(&self.segs[p + 1]);
        merged.add(&self.segs[p + 2]);
        segs.push(merged);
        segs.extend_from_slice(&self.segs[p + 3..]);
        AcdState { partner: self.rebuild_partner([p, p + 1]), segs, bp }
    }

    fn successors(&self, out: &mut Vec<AcdState>) {
        out.push(self.t1_left());
        out.push(self.t1_right());
        for p in 0..self.positions() - 1 {
            if self.partner[p] as usize == p + 1 {
                out.push(self.t2(p));
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct PreState {
    left: u16,
    /// `u16::MAX` marks an unpaired symbol.
    partner: Vec<u16>,
    segs: Vec<IntForm>,
    bp: IntForm,
}

const SINGLE: u16 = u16::MAX;

impl PreState {
    fn fresh(pairing: &[Option<usize>]) -> Self {
        let total = pairing.len();
        let width = total + 1;
        PreState {
            left: (total / 2) as u16,
            partner: pairing.iter().map(|q| q.map(|q| q as u16).unwrap_or(SINGLE)).collect(),
            segs: (0..width).map(|s| IntForm::symbol(width, s)).collect(),
            bp: IntForm::zero(width),
        }
    }

    fn remove(&mut self, p: usize, gain: Option<&IntForm>) {
        debug_assert_eq!(self.partner[p], SINGLE);
        let seg = self.segs[p].clone();
        if p < self.left as usize {
            if p > 0 {
                self.segs[p - 1].add(&seg);
                if let Some(g) = gain {
                    self.segs[p - 1].add(g);
                }
            }
            self.left -= 1;
        } else {
            self.segs[p + 1].add(&seg);
            if let Some(g) = gain {
                self.segs[p + 1].add(g);
            }
        }
        self.segs.remove(p);
        self.partner.remove(p);
        for q in self.partner.iter_mut() {
            if *q != SINGLE && *q as usize > p {
                *q -= 1;
            }
        }
    }

    fn t1(&self, from_left: bool) -> PreState {
        let pos = if from_left { self.left as usize - 1 } else { self.left as usize };
        let gain = self.segs[pos].gain();
        let mut out = self.clone();
        out.bp.add(&gain);
        let pp = self.partner[pos];
        if pp == SINGLE {
            out.remove(pos, None);
        } else {
            let pp = pp as usize;
            out.partner[pos] = SINGLE;
            out.partner[pp] = SINGLE;
            if pp > pos {
                out.remove(pp, Some(&gain));
                out.remove(pos, None);
            } else {
                out.remove(pos, None);
                out.remove(pp, Some(&gain));
            }
        }
        out
    }

    /// Pair at positions `(p, p+1)`, both on one side.
    fn t2(&self, p: usize) -> PreState {
        let mut out = self.clone();
        let on_left = p + 1 < self.left as usize;
        let between = if on_left { &self.segs[p] } else { &self.segs[p + 1] };
        out.bp.add(between);
        out.partner[p] = SINGLE;
        out.partner[p + 1] = SINGLE;
        out.remove(p + 1, None);
        out.remove(p, None);
        out
    }

    fn successors(&self, out: &mut Vec<PreState>) {
        if self.left > 0 {
            out.push(self.t1(true));
        }
        if (self.left as usize) < self.partner.len() {
            out.push(self.t1(false));
        }
        for p in 0..self.partner.len().saturating_sub(1) {
            let same_side = (p + 1 < self.left as usize) || (p >= self.left as usize);
            if same_side && self.partner[p] != SINGLE && self.partner[p] as usize == p + 1 {
                out.push(self.t2(p));
            }
        }
    }
}

/// Depth-first search shared by both families; `Done` states contribute
/// their basepoint form. Returns `None` when `threshold` proves the value
/// strictly below it.
trait Elim: Clone + Eq + std::hash::Hash {
    fn done(&self) -> bool;
    fn successors(&self, out: &mut Vec<Self>);
    fn bp(&self) -> &IntForm;
}

impl Elim for AcdState {
    fn done(&self) -> bool {
        self.partner.is_empty()
    }
    fn successors(&self, out: &mut Vec<Self>) {
        AcdState::successors(self, out)
    }
    fn bp(&self) -> &IntForm {
        &self.bp
    }
}

/// A window paired with its remaining chord budget.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Budgeted(PreState, u16);

impl Elim for Budgeted {
    fn done(&self) -> bool {
        self.1 == 0
    }
    fn successors(&self, out: &mut Vec<Self>) {
        let mut states = Vec::new();
        self.0.successors(&mut states);
        out.extend(states.into_iter().map(|s| Budgeted(s, self.1 - 1)));
    }
    fn bp(&self) -> &IntForm {
        &self.0.bp
    }
}

fn search<S: Elim>(
    root: S,
    m: &MParam,
    threshold: Option<&Rational>,
) -> Option<BTreeSet<IntForm>> {
    let mut seen: HashSet<S> = HashSet::new();
    let mut out: BTreeSet<IntForm> = BTreeSet::new();
    let mut stack = vec![root];
    let mut succ = Vec::new();
    while let Some(state) = stack.pop() {
        if state.done() {
            if let Some(t) = threshold {
                if state.bp().single_bound(m) < *t {
                    return None;
                }
            }
            out.insert(state.bp().clone());
            continue;
        }
        succ.clear();
        state.successors(&mut succ);
        for s in succ.drain(..) {
            if seen.insert(s.clone()) {
                stack.push(s);
            }
        }
    }
    Some(out)
}

fn finish(raw: BTreeSet<IntForm>) -> Vec<LinearForm> {
    let all: Vec<IntForm> = raw.into_iter().collect();
    let mut keep = Vec::new();
    'outer: for (i, f) in all.iter().enumerate() {
        for (j, g) in all.iter().enumerate() {
            if i != j && f.dominates(g) {
                continue 'outer;
            }
        }
        keep.push(f.to_linear_with_m());
    }
    keep
}

/// Final forms for the fresh circular diagram of `partner`, or `None` if
/// `threshold` proves its value strictly below the threshold.
pub(crate) fn acd_final_forms(
    partner: &[usize],
    m: &MParam,
    threshold: Option<&Rational>,
) -> Option<Vec<LinearForm>> {
    Some(finish(search(AcdState::fresh(partner), m, threshold)?))
}

/// Same for the fresh window of `pairing` (length = half the symbol count).
pub(crate) fn pre_final_forms(
    pairing: &[Option<usize>],
    m: &MParam,
    threshold: Option<&Rational>,
) -> Option<Vec<LinearForm>> {
    let budget = (pairing.len() / 2) as u16;
    Some(finish(search(Budgeted(PreState::fresh(pairing), budget), m, threshold)?))
}
