//! Linear forms over the basepoint symbol `m`, the segment weight symbols
//! `w_1..w_{2k+1}`, and an exact rational constant.
//!
//! These are the currency of all cost accounting: every transformation adds
//! nonnegative combinations of weights to the basepoint, and every final
//! basepoint form becomes one constraint of the max-min linear program.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::rational::{format_plain, parse_rational, rat, Rational};

/// `m_coeff · m + Σ_j w_coeffs[j] · w_j + constant`, all coefficients ≥ 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LinearForm {
    m_coeff: Rational,
    w_coeffs: BTreeMap<usize, Rational>,
    constant: Rational,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The pure basepoint symbol `m`.
    pub fn symbol_m() -> Self {
        Self { m_coeff: rat(1), ..Self::default() }
    }

    /// The pure weight symbol `w_j` (1-based index).
    pub fn symbol_w(j: usize) -> Self {
        assert!(j >= 1, "weight symbols are 1-based");
        let mut w_coeffs = BTreeMap::new();
        w_coeffs.insert(j, rat(1));
        Self { w_coeffs, ..Self::default() }
    }

    pub fn from_constant(c: Rational) -> Self {
        assert!(!c.is_negative(), "weights are nonnegative");
        Self { constant: c, ..Self::default() }
    }

    /// Form with integer data: optional unit `m` term, weight coefficients
    /// by slot (`w[s]` is the coefficient of `w_{s+1}`), and a constant.
    pub(crate) fn from_int_parts(with_m: bool, w: &[u64], c: u64) -> Self {
        let mut w_coeffs = BTreeMap::new();
        for (s, coeff) in w.iter().enumerate() {
            if *coeff != 0 {
                w_coeffs.insert(s + 1, rat(*coeff as i64));
            }
        }
        Self {
            m_coeff: if with_m { rat(1) } else { rat(0) },
            w_coeffs,
            constant: rat(c as i64),
        }
    }

    pub fn m_coeff(&self) -> &Rational {
        &self.m_coeff
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn w_coeff(&self, j: usize) -> Rational {
        self.w_coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn w_terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.w_coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn max_w_index(&self) -> Option<usize> {
        self.w_coeffs.keys().max().copied()
    }

    /// Largest weight coefficient (zero if none). Used for cheap upper bounds.
    pub fn max_w_coeff(&self) -> Rational {
        self.w_coeffs.values().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// True if the form has no symbolic part.
    pub fn is_concrete(&self) -> bool {
        self.m_coeff.is_zero() && self.w_coeffs.is_empty()
    }

    /// True if this is exactly the symbol `w_j`.
    pub fn is_pure_symbol_w(&self, j: usize) -> bool {
        self.m_coeff.is_zero()
            && self.constant.is_zero()
            && self.w_coeffs.len() == 1
            && self.w_coeffs.get(&j).map(|c| c.is_one()).unwrap_or(false)
    }

    /// True if this is exactly the symbol `m`.
    pub fn is_pure_symbol_m(&self) -> bool {
        self.m_coeff.is_one() && self.constant.is_zero() && self.w_coeffs.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &LinearForm) {
        self.m_coeff += &other.m_coeff;
        self.constant += &other.constant;
        for (j, c) in &other.w_coeffs {
            let slot = self.w_coeffs.entry(*j).or_insert_with(Rational::zero);
            *slot += c;
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        assert!(!c.is_negative());
        self.constant += c;
    }

    /// `2·self + 1`, the basepoint gain of a Transformation I step whose
    /// travel segment is `self`.
    pub fn double_plus_one(&self) -> LinearForm {
        let mut out = self.scale_int(2);
        out.constant += rat(1);
        out
    }

    pub fn scale_int(&self, k: i64) -> LinearForm {
        assert!(k >= 0);
        let k = rat(k);
        LinearForm {
            m_coeff: &self.m_coeff * &k,
            w_coeffs: self.w_coeffs.iter().map(|(j, c)| (*j, c * &k)).collect(),
            constant: &self.constant * &k,
        }
    }

    /// Coefficient-wise domination: every coefficient and the constant of
    /// `self` is ≥ that of `other`, at least one strictly. A dominating form
    /// can never realize the minimum over the nonnegative orthant.
    pub fn dominates(&self, other: &LinearForm) -> bool {
        if self == other {
            return false;
        }
        if self.m_coeff < other.m_coeff || self.constant < other.constant {
            return false;
        }
        for (j, c) in &other.w_coeffs {
            if self.w_coeff(*j) < *c {
                return false;
            }
        }
        // self's extra indices are ≥ 0 ≥ other's implicit zeros.
        true
    }

    /// Evaluates at concrete weight values (`m` given separately).
    pub fn eval(&self, m: &Rational, w: &dyn Fn(usize) -> Rational) -> Rational {
        let mut out = &self.m_coeff * m + &self.constant;
        for (j, c) in &self.w_coeffs {
            out += c * w(*j);
        }
        out
    }

    fn check_invariants(&self) {
        debug_assert!(!self.m_coeff.is_negative());
        debug_assert!(!self.constant.is_negative());
        debug_assert!(self.w_coeffs.values().all(|c| !c.is_negative()));
    }

    /// Weight-bracket text, e.g. `w3`, `2w1+1`, `5/2`, `m+2w1+1`.
    ///
    /// `auto_index`: when the form is the pure symbol `w_j` sitting at its own
    /// position `j`, it prints as the bare auto-indexed token `w`; the pure
    /// symbol `m` prints as `*`.
    pub fn to_bracket(&self, auto_index: Option<usize>) -> String {
        self.check_invariants();
        if self.is_pure_symbol_m() {
            return "*".to_string();
        }
        if let Some(j) = auto_index {
            if self.is_pure_symbol_w(j) {
                return "w".to_string();
            }
        }
        if self.m_coeff.is_zero() && self.w_coeffs.is_empty() {
            return format_plain(&self.constant);
        }
        let mut parts = Vec::new();
        if !self.m_coeff.is_zero() {
            parts.push(coeff_token(&self.m_coeff, "m"));
        }
        for (j, c) in &self.w_coeffs {
            if !c.is_zero() {
                parts.push(coeff_token(c, &format!("w{j}")));
            }
        }
        if !self.constant.is_zero() {
            parts.push(format_plain(&self.constant));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses the contents of a weight bracket. `auto_index` supplies the
    /// index assigned to a bare `w` token; `*` parses as the pure symbol `m`.
    pub fn parse_bracket(text: &str, auto_index: usize) -> Result<Self, String> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err("empty weight bracket".into());
        }
        if text == "*" {
            return Ok(Self::symbol_m());
        }
        if text == "w" {
            return Ok(Self::symbol_w(auto_index));
        }
        let mut out = Self::zero();
        for term in text.split('+') {
            if term.is_empty() {
                return Err(format!("malformed weight `{text}`"));
            }
            let (coeff_str, sym) = match term.find(|c: char| c == 'w' || c == 'm' || c == '*') {
                Some(pos) => (&term[..pos], &term[pos..]),
                None => (term, ""),
            };
            let coeff = if coeff_str.is_empty() && !sym.is_empty() {
                rat(1)
            } else {
                parse_rational(coeff_str).ok_or_else(|| format!("malformed weight `{term}`"))?
            };
            if coeff.is_negative() {
                return Err(format!("negative weight `{term}`"));
            }
            if sym.is_empty() {
                out.constant += coeff;
            } else if sym == "m" || sym == "*" {
                out.m_coeff += coeff;
            } else if sym == "w" {
                let slot = out.w_coeffs.entry(auto_index).or_insert_with(Rational::zero);
                *slot += coeff;
            } else if let Some(idx) = sym.strip_prefix('w') {
                let idx: usize =
                    idx.parse().map_err(|_| format!("malformed weight symbol `{sym}`"))?;
                if idx == 0 {
                    return Err("weight symbols are 1-based".into());
                }
                let slot = out.w_coeffs.entry(idx).or_insert_with(Rational::zero);
                *slot += coeff;
            } else {
                return Err(format!("malformed weight `{term}`"));
            }
        }
        out.w_coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

fn coeff_token(c: &Rational, sym: &str) -> String {
    if c.is_one() {
        sym.to_string()
    } else {
        format!("{}{}", format_plain(c), sym)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = self.to_bracket(None);
        if s == "*" {
            s = "m".to_string();
        }
        write!(f, "{s}")
    }
}
