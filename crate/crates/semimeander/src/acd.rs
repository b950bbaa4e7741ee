//! Annotated chord diagrams (circular) and windowed pre-diagrams (linear).
//!
//! An [`Acd`] is a based chord diagram: a perfect matching on positions
//! `1..2n` around a circle, a basepoint between positions `2n` and `1`, and a
//! weight (a [`LinearForm`]) on the basepoint and on each of the `2n+1`
//! boundary segments. Segment `j` sits between position `j-1` and position
//! `j`, with segment `1` immediately following the basepoint and segment
//! `2n+1` immediately preceding it.
//!
//! A [`PreAcd`] is a linear window around the basepoint: `L` symbols on the
//! left (outermost first), `R` on the right (innermost first), each occurring
//! at most twice. It carries `L+R+1` segments; the segment beyond the
//! outermost left symbol is outside the window and never tracked (it cannot
//! enter any transformation cost).

use crate::linear_form::LinearForm;

/// Circular annotated chord diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Acd {
    /// 0-based involution without fixed points; `partner[p] = q` pairs
    /// positions `p+1` and `q+1`.
    partner: Vec<usize>,
    /// `2n+1` forms; `segments[j-1]` is segment `j`.
    segments: Vec<LinearForm>,
    basepoint: LinearForm,
}

impl Acd {
    /// Fresh symbolic diagram: basepoint `m`, segment `j` the pure symbol
    /// `w_j`. `pairs` lists the chords as 1-based position pairs.
    pub fn fresh(n: usize, pairs: &[(usize, usize)]) -> Self {
        assert_eq!(pairs.len(), n);
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            assert!(a != b && (1..=2 * n).contains(&a) && (1..=2 * n).contains(&b));
            assert!(partner[a - 1] == usize::MAX && partner[b - 1] == usize::MAX);
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        let segments = (1..=2 * n + 1).map(LinearForm::symbol_w).collect();
        Self { partner, segments, basepoint: LinearForm::symbol_m() }
    }

    /// Fresh symbolic diagram from a 0-based partner involution.
    pub(crate) fn fresh_from_partner(partner: Vec<usize>) -> Self {
        let n2 = partner.len();
        debug_assert!(n2 % 2 == 0);
        debug_assert!((0..n2).all(|p| partner[partner[p]] == p && partner[p] != p));
        let segments = (1..=n2 + 1).map(LinearForm::symbol_w).collect();
        Self { partner, segments, basepoint: LinearForm::symbol_m() }
    }

    pub(crate) fn from_parts(
        partner: Vec<usize>,
        segments: Vec<LinearForm>,
        basepoint: LinearForm,
    ) -> Self {
        assert_eq!(segments.len(), partner.len() + 1);
        Self { partner, segments, basepoint }
    }

    /// Length-zero diagram of basepoint `m`.
    pub fn empty() -> Self {
        Self {
            partner: Vec::new(),
            segments: vec![LinearForm::symbol_w(1)],
            basepoint: LinearForm::symbol_m(),
        }
    }

    /// Number of chords.
    pub fn len(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    /// Number of positions, `2n`.
    pub fn positions(&self) -> usize {
        self.partner.len()
    }

    /// Partner of 1-based position `p`.
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p - 1] + 1
    }

    /// Segment `j` (1-based, `1..=2n+1`).
    pub fn segment(&self, j: usize) -> &LinearForm {
        &self.segments[j - 1]
    }

    pub fn segments(&self) -> &[LinearForm] {
        &self.segments
    }

    /// The complexity of the diagram.
    pub fn basepoint(&self) -> &LinearForm {
        &self.basepoint
    }

    /// True if all weights are fully symbolic in fresh position order.
    pub fn is_fresh(&self) -> bool {
        self.basepoint.is_pure_symbol_m()
            && self.segments.iter().enumerate().all(|(i, s)| s.is_pure_symbol_w(i + 1))
    }

    /// Reverses the circular order about the basepoint. An involution.
    ///
    /// Weights travel with their segments; a fresh diagram additionally has
    /// its positional weight symbols renumbered, so reflecting a fresh
    /// diagram yields the fresh diagram of the mirrored matching.
    pub fn reflect(&self) -> Self {
        let n2 = self.positions();
        let partner: Vec<usize> = (0..n2).map(|p| n2 - 1 - self.partner[n2 - 1 - p]).collect();
        if self.is_fresh() {
            return Self::fresh_from_partner(partner);
        }
        let segments = self.segments.iter().rev().cloned().collect();
        Self { partner, segments, basepoint: self.basepoint.clone() }
    }

    /// Key equal for two diagrams iff they are equal up to chord relabeling.
    ///
    /// Chord labels exist only in the textual format; the positional partner
    /// array is label-free, so the key is a canonical rendering of it plus
    /// the weight data.
    pub fn canonical_key(&self) -> String {
        let mut out = String::from("acd;");
        push_partner_key(&mut out, &self.partner);
        push_weights_key(&mut out, &self.segments, &self.basepoint);
        out
    }
}

/// Windowed (linear) fragment of a chord diagram around the basepoint.
///
/// Positions are 0-based internally: `0..left` are the left symbols ordered
/// outermost to innermost; `left..left+right` are the right symbols ordered
/// innermost to outermost. `segments[p]` for `p < left` lies between left
/// symbol `p` and the next token toward the basepoint; `segments[left]` lies
/// between the basepoint and the innermost right symbol; subsequent entries
/// lie between consecutive right symbols, ending with the right flank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreAcd {
    left: usize,
    /// 0-based within-window partner, or `None` for an unpaired symbol.
    partner: Vec<Option<usize>>,
    /// `left + right + 1` forms.
    segments: Vec<LinearForm>,
    basepoint: LinearForm,
}

impl PreAcd {
    /// Fresh symbolic window of length `k`: `k` symbols on each side, segment
    /// `p` (0-based slot) the pure symbol `w_{p+1}`, basepoint `m`. `pairing`
    /// maps each 0-based position to its partner or `None`.
    pub fn fresh(k: usize, pairing: &[Option<usize>]) -> Self {
        assert_eq!(pairing.len(), 2 * k);
        for (p, q) in pairing.iter().enumerate() {
            if let Some(q) = q {
                assert!(*q != p && pairing[*q] == Some(p));
            }
        }
        let segments = (1..=2 * k + 1).map(LinearForm::symbol_w).collect();
        Self { left: k, partner: pairing.to_vec(), segments, basepoint: LinearForm::symbol_m() }
    }

    pub(crate) fn from_parts(
        left: usize,
        partner: Vec<Option<usize>>,
        segments: Vec<LinearForm>,
        basepoint: LinearForm,
    ) -> Self {
        assert!(left <= partner.len());
        assert_eq!(segments.len(), partner.len() + 1);
        Self { left, partner, segments, basepoint }
    }

    /// Window length: symbol count divided by two. Fresh windows are
    /// balanced; intermediate states of an elimination need not be.
    pub fn len(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn symbol_count(&self) -> usize {
        self.partner.len()
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.partner.len() - self.left
    }

    pub fn is_balanced(&self) -> bool {
        self.left_count() == self.right_count()
    }

    /// Partner of 0-based position `p`, if inside the window.
    pub fn partner(&self, p: usize) -> Option<usize> {
        self.partner[p]
    }

    /// Segment at 0-based slot `s` (see type docs for the slot layout).
    pub fn segment(&self, s: usize) -> &LinearForm {
        &self.segments[s]
    }

    pub fn segments(&self) -> &[LinearForm] {
        &self.segments
    }

    pub fn basepoint(&self) -> &LinearForm {
        &self.basepoint
    }

    pub(crate) fn basepoint_mut(&mut self) -> &mut LinearForm {
        &mut self.basepoint
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut usize, &mut Vec<Option<usize>>, &mut Vec<LinearForm>) {
        (&mut self.left, &mut self.partner, &mut self.segments)
    }

    pub fn is_fresh(&self) -> bool {
        self.basepoint.is_pure_symbol_m()
            && self.segments.iter().enumerate().all(|(i, s)| s.is_pure_symbol_w(i + 1))
    }

    /// Reverses the window about the basepoint, keeping the single untracked
    /// flank beyond the outermost right symbol. An involution; fresh windows
    /// have their positional weight symbols renumbered as in [`Acd::reflect`].
    pub fn reflect(&self) -> Self {
        let total = self.partner.len();
        let new_left = self.right_count();
        // position map: old p -> total - 1 - p (left and right swap, order
        // within each side reverses).
        let map = |p: usize| total - 1 - p;
        let mut partner = vec![None; total];
        for (p, q) in self.partner.iter().enumerate() {
            if let Some(q) = q {
                partner[map(p)] = Some(map(*q));
            }
        }
        if self.is_fresh() && self.is_balanced() {
            return Self::fresh(self.len(), &partner);
        }
        // Interior segment slots reverse; the flank slot stays last.
        let mut segments: Vec<LinearForm> = self.segments[..total].iter().rev().cloned().collect();
        segments.push(self.segments[total].clone());
        Self { left: new_left, partner, segments, basepoint: self.basepoint.clone() }
    }

    pub fn canonical_key(&self) -> String {
        let mut out = format!("pre;{};", self.left);
        for q in &self.partner {
            match q {
                Some(q) => out.push_str(&format!("{q},")),
                None => out.push_str("_,"),
            }
        }
        out.push(';');
        push_weights_key(&mut out, &self.segments, &self.basepoint);
        out
    }
}

fn push_partner_key(out: &mut String, partner: &[usize]) {
    for q in partner {
        out.push_str(&format!("{q},"));
    }
    out.push(';');
}

fn push_weights_key(out: &mut String, segments: &[LinearForm], basepoint: &LinearForm) {
    out.push_str(&basepoint.to_bracket(None));
    for s in segments {
        out.push('|');
        out.push_str(&s.to_bracket(None));
    }
}

/// Either kind of diagram; the textual format distinguishes them by the
/// window delimiters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Diagram {
    Acd(Acd),
    Pre(PreAcd),
}

impl Diagram {
    pub fn reflect(&self) -> Self {
        match self {
            Diagram::Acd(a) => Diagram::Acd(a.reflect()),
            Diagram::Pre(p) => Diagram::Pre(p.reflect()),
        }
    }

    pub fn canonical_key(&self) -> String {
        match self {
            Diagram::Acd(a) => a.canonical_key(),
            Diagram::Pre(p) => p.canonical_key(),
        }
    }
}
