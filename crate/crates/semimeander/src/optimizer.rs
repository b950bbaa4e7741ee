//! Enumeration of elimination sequences and the max-min linear program.
//!
//! Every sequence of transformations eliminating all chords of a diagram
//! (for a window of length `k`: eliminating exactly `k` chords, one per
//! move) yields a final basepoint form `f_i = m + Σ a_j w_j + a_0`. The
//! diagram's value is
//!
//! ```text
//! t̂ = max  min_i ( 1 + Σ a_{i,j} w'_j + a_{i,0}/m )
//!     s.t. Σ w'_j <= 1,  0 <= w'_j <= 1
//! ```
//!
//! solved exactly over the rationals; at `m = ∞` the constant terms drop.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num::{One, Zero};
use thiserror::Error;

use crate::acd::{Acd, Diagram, PreAcd};
use crate::linear_form::LinearForm;
use crate::lp::{solve, LpProblem, LpSolution};
use crate::rational::{format_plain, parse_rational, Rational};
use crate::transforms::{applicable_moves_acd, applicable_moves_pre, apply_move_acd, apply_move_pre};

/// The basepoint weight the program is normalized by.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum MParam {
    Finite(Rational),
    Infinite,
}

impl MParam {
    pub fn parse(s: &str) -> Option<MParam> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") || s == "∞" {
            return Some(MParam::Infinite);
        }
        let r = parse_rational(s)?;
        if r <= Rational::zero() {
            return None;
        }
        Some(MParam::Finite(r))
    }
}

impl fmt::Display for MParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MParam::Finite(r) => write!(f, "{}", format_plain(r)),
            MParam::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("final form `{0}` does not have basepoint coefficient 1")]
    BadBasepointCoefficient(String),
}

/// The dominance-pruned set of final basepoint forms of a diagram.
///
/// No member coefficient-wise dominates another: a dominating form can never
/// realize the min over the nonnegative orthant, so removing it leaves the
/// program's value unchanged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionSet {
    forms: Vec<LinearForm>,
    num_weights: usize,
    source_length: usize,
}

impl FunctionSet {
    /// From an already dominance-filtered list (the integer search applies
    /// the same filter); derives the weight count from the forms.
    pub(crate) fn from_forms(forms: Vec<LinearForm>) -> Self {
        let num_weights = forms.iter().filter_map(LinearForm::max_w_index).max().unwrap_or(0);
        Self { forms, num_weights, source_length: 0 }
    }

    fn from_raw(raw: BTreeSet<LinearForm>, num_weights: usize, source_length: usize) -> Self {
        let forms = dominance_filter(raw);
        let num_weights = forms
            .iter()
            .filter_map(LinearForm::max_w_index)
            .max()
            .unwrap_or(0)
            .max(num_weights);
        Self { forms, num_weights, source_length }
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn num_weights(&self) -> usize {
        self.num_weights
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    /// `min_i max_w f_i`, a cheap upper bound on the program value: each
    /// constraint alone is maximized by putting all weight on its largest
    /// coefficient.
    pub fn quick_upper_bound(&self, m: &MParam) -> Rational {
        self.forms
            .iter()
            .map(|f| {
                let mut v = Rational::one() + f.max_w_coeff();
                if let MParam::Finite(m) = m {
                    v += f.constant_term() / m;
                }
                v
            })
            .min()
            .expect("function set is never empty")
    }
}

fn dominance_filter(raw: BTreeSet<LinearForm>) -> Vec<LinearForm> {
    let all: Vec<LinearForm> = raw.into_iter().collect();
    let mut keep = Vec::new();
    'outer: for (i, f) in all.iter().enumerate() {
        for (j, g) in all.iter().enumerate() {
            if i != j && f.dominates(g) {
                continue 'outer;
            }
        }
        keep.push(f.clone());
    }
    keep
}

fn collect_acd(x: &Acd, seen: &mut HashSet<String>, out: &mut BTreeSet<LinearForm>) {
    if x.is_empty() {
        out.insert(x.basepoint().clone());
        return;
    }
    for mv in applicable_moves_acd(x).expect("nonempty") {
        let y = apply_move_acd(x, mv).expect("move from applicable_moves");
        if seen.insert(y.canonical_key()) {
            collect_acd(&y, seen, out);
        }
    }
}

fn collect_pre(x: &PreAcd, budget: usize, seen: &mut HashSet<String>, out: &mut BTreeSet<LinearForm>) {
    if budget == 0 {
        out.insert(x.basepoint().clone());
        return;
    }
    debug_assert!(x.symbol_count() > 0, "window exhausted before its chord budget");
    for mv in applicable_moves_pre(x).expect("nonempty") {
        let y = apply_move_pre(x, mv).expect("move from applicable_moves");
        let key = format!("{};b{}", y.canonical_key(), budget - 1);
        if seen.insert(key) {
            collect_pre(&y, budget - 1, seen, out);
        }
    }
}

/// All final basepoint forms reachable by elimination sequences, after
/// dominance pruning. Identical intermediate states (same matching, segment
/// forms and basepoint) are expanded once.
pub fn elimination_functions(x: &Diagram) -> FunctionSet {
    match x {
        Diagram::Acd(a) => elimination_functions_acd(a),
        Diagram::Pre(p) => elimination_functions_pre(p),
    }
}

pub fn elimination_functions_acd(x: &Acd) -> FunctionSet {
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    collect_acd(x, &mut seen, &mut out);
    FunctionSet::from_raw(out, 2 * x.len() + 1, x.len())
}

/// For a window of length `k`, sequences eliminate exactly `k` chords; each
/// move (including one on an unpaired symbol) eliminates one chord.
pub fn elimination_functions_pre(x: &PreAcd) -> FunctionSet {
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    collect_pre(x, x.len(), &mut seen, &mut out);
    FunctionSet::from_raw(out, 2 * x.len() + 1, x.len())
}

/// Assembles the max-min program. Variables are `w'_1..w'_W` then `t`.
pub fn build_lp(fs: &FunctionSet, m: &MParam) -> Result<LpProblem, BuildError> {
    let w = fs.num_weights();
    let n = w + 1;
    let mut objective = vec![Rational::zero(); n];
    objective[w] = Rational::one();
    let mut p = LpProblem::new(n, objective);

    let mut sum_row = vec![Rational::one(); n];
    sum_row[w] = Rational::zero();
    p.add_constraint(sum_row, Rational::one());
    for j in 0..w {
        let mut row = vec![Rational::zero(); n];
        row[j] = Rational::one();
        p.add_constraint(row, Rational::one());
    }
    for f in fs.forms() {
        if !f.m_coeff().is_one() {
            return Err(BuildError::BadBasepointCoefficient(f.to_string()));
        }
        let mut row = vec![Rational::zero(); n];
        row[w] = Rational::one();
        for (j, c) in f.w_terms() {
            row[j - 1] = -c.clone();
        }
        let mut rhs = Rational::one();
        if let MParam::Finite(m) = m {
            rhs += f.constant_term() / m;
        }
        p.add_constraint(row, rhs);
    }
    Ok(p)
}

/// The exact program value `t̂` for a diagram.
pub fn t_hat(x: &Diagram, m: &MParam) -> Rational {
    t_hat_of_functions(&elimination_functions(x), m)
}

pub fn t_hat_of_functions(fs: &FunctionSet, m: &MParam) -> Rational {
    let p = build_lp(fs, m).expect("elimination preserves a unit basepoint coefficient");
    match solve(&p) {
        LpSolution::Optimal { value, .. } => value,
        other => unreachable!("the max-min program is feasible and bounded, got {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::parse_gauss;
    use crate::rational::{rat, ratio};

    fn diagram(text: &str) -> Diagram {
        parse_gauss(text).unwrap()
    }

    fn forms_of(text: &str) -> Vec<String> {
        elimination_functions(&diagram(text)).forms().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn single_chord_function_set() {
        let mut fs = forms_of("@[*] [w] a [w] a [w]");
        fs.sort();
        assert_eq!(fs, vec!["m+2w1+1", "m+2w3+1", "m+w2"]);
    }

    #[test]
    fn empty_diagram_function_set() {
        assert_eq!(forms_of("@[*]"), vec!["m"]);
    }

    #[test]
    fn window_function_sets_match_hand_computation() {
        let mut paired = forms_of("| [w] a @[*] [w] a [w] |");
        paired.sort();
        assert_eq!(paired, vec!["m+2w1+1", "m+2w2+1"]);

        let mut unpaired = forms_of("| [w] a @[*] [w] b [w] |");
        unpaired.sort();
        assert_eq!(unpaired, vec!["m+2w1+1", "m+2w2+1"]);

        let mut singles = forms_of("| [w] a [w] b @[*] [w] c [w] d [w] |");
        singles.sort();
        assert_eq!(singles, vec!["m+2w1+4w2+2", "m+2w2+2w3+2", "m+4w3+2w4+2"]);
    }

    #[test]
    fn t_hat_of_single_chord() {
        let x = diagram("@[*] [w] a [w] a [w]");
        assert_eq!(t_hat(&x, &MParam::Finite(rat(8))), ratio(25, 16));
        assert_eq!(t_hat(&x, &MParam::Finite(rat(4))), ratio(13, 8));
        assert_eq!(t_hat(&x, &MParam::Infinite), ratio(3, 2));
    }

    #[test]
    fn t_hat_of_empty_is_one() {
        for m in [MParam::Finite(rat(8)), MParam::Finite(ratio(7, 2)), MParam::Infinite] {
            assert_eq!(t_hat(&diagram("@[*]"), &m), rat(1));
        }
    }

    #[test]
    fn t_hat_of_length_one_windows() {
        for text in ["| [w] a @[*] [w] a [w] |", "| [w] a @[*] [w] b [w] |"] {
            let x = diagram(text);
            assert_eq!(t_hat(&x, &MParam::Finite(rat(8))), ratio(17, 8));
            assert_eq!(t_hat(&x, &MParam::Infinite), rat(2));
        }
    }

    #[test]
    fn build_lp_rejects_scaled_basepoint() {
        let mut raw = BTreeSet::new();
        raw.insert(LinearForm::symbol_m().scale_int(2));
        let fs = FunctionSet::from_raw(raw, 1, 0);
        assert!(build_lp(&fs, &MParam::Infinite).is_err());
    }

    #[test]
    fn pruning_matches_unpruned_exhaustive_search() {
        // Oracle: exhaustive DFS without memoization, then dominance filter.
        fn oracle(x: &Acd, out: &mut BTreeSet<LinearForm>) {
            if x.is_empty() {
                out.insert(x.basepoint().clone());
                return;
            }
            for mv in applicable_moves_acd(x).unwrap() {
                oracle(&apply_move_acd(x, mv).unwrap(), out);
            }
        }
        for pairs in [[(1, 2), (3, 4)], [(1, 4), (2, 3)], [(1, 3), (2, 4)]] {
            let x = Acd::fresh(2, &pairs);
            let mut raw = BTreeSet::new();
            oracle(&x, &mut raw);
            let expect = FunctionSet::from_raw(raw, 5, 2);
            let got = elimination_functions_acd(&x);
            assert_eq!(got.forms(), expect.forms());
        }
    }

    #[test]
    fn t_hat_invariant_under_reflect() {
        let m8 = MParam::Finite(rat(8));
        for text in [
            "@[*] [w] a [w] b [w] a [w] b [w]",
            "@[*] [w] a [w] a [w] b [w] b [w]",
            "| [w] a [w] b @[*] [w] b [w] c [w] |",
        ] {
            let x = diagram(text);
            assert_eq!(t_hat(&x, &m8), t_hat(&x.reflect(), &m8));
        }
    }

    #[test]
    fn t_hat_monotone_in_m() {
        let x = diagram("@[*] [w] a [w] b [w] a [w] b [w]");
        let at = |m: MParam| t_hat(&x, &m);
        let v8 = at(MParam::Finite(rat(8)));
        let v64 = at(MParam::Finite(rat(64)));
        let vinf = at(MParam::Infinite);
        assert!(v8 >= v64);
        assert!(v64 >= vinf);
    }

    #[test]
    fn quick_upper_bound_is_valid() {
        let m8 = MParam::Finite(rat(8));
        for text in ["@[*] [w] a [w] a [w]", "@[*] [w] a [w] b [w] a [w] b [w]"] {
            let fs = elimination_functions(&diagram(text));
            assert!(fs.quick_upper_bound(&m8) >= t_hat_of_functions(&fs, &m8));
        }
    }
}
