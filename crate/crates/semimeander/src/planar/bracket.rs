//! Kauffman bracket state sum, used as a knot-type preservation oracle.
//!
//! Each crossing resolves two ways: the A-smoothing joins slots 0-1 and
//! 2-3, the B-smoothing 0-3 and 1-2. The bracket is
//! `Σ_states A^(a-b) · (-A² - A⁻²)^(loops-1)`; the writhe-normalized
//! variant multiplies by `(-A³)^(-writhe)` and is invariant under all
//! Reidemeister moves.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::KnotDiagram;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BracketError {
    #[error("diagram has {0} crossings, above the state-sum limit of {1}")]
    TooLarge(usize, usize),
}

/// Laurent polynomial in one variable with integer coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (e, c) in &other.coeffs {
            let slot = self.coeffs.entry(*e).or_insert(0);
            *slot += c;
            if *slot == 0 {
                self.coeffs.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let slot = out.coeffs.entry(e1 + e2).or_insert(0);
                *slot += c1 * c2;
                if *slot == 0 {
                    out.coeffs.remove(&(e1 + e2));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes `A -> A⁻¹`.
    pub fn mirror(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, *c)).collect() }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let sign = if *c < 0 {
                if first { "-" } else { "- " }
            } else if first {
                ""
            } else {
                "+ "
            };
            let mag = c.abs();
            let body = match (*e, mag) {
                (0, m) => format!("{m}"),
                (1, 1) => "A".to_string(),
                (1, m) => format!("{m}A"),
                (e, 1) => format!("A^{e}"),
                (e, m) => format!("{m}A^{e}"),
            };
            write!(f, "{}{}{}", if first { "" } else { " " }, sign, body)?;
            first = false;
        }
        Ok(())
    }
}

const DEFAULT_STATE_LIMIT: usize = 20;

/// Sum of crossing signs.
pub fn writhe(d: &KnotDiagram) -> i32 {
    (0..d.crossing_count()).map(|c| d.crossing_sign(c)).sum()
}

/// The bracket polynomial by direct state sum (`2^n` states).
pub fn kauffman_bracket(d: &KnotDiagram) -> Result<LaurentPoly, BracketError> {
    kauffman_bracket_with_limit(d, DEFAULT_STATE_LIMIT)
}

pub fn kauffman_bracket_with_limit(
    d: &KnotDiagram,
    limit: usize,
) -> Result<LaurentPoly, BracketError> {
    let n = d.crossing_count();
    if n > limit {
        return Err(BracketError::TooLarge(n, limit));
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }

    // d = -A^2 - A^-2; precompute its powers up to the max loop count.
    let mut d_powers = Vec::with_capacity(n + 1);
    let circle = {
        let mut p = LaurentPoly::monomial(2, -1);
        p.add_assign(&LaurentPoly::monomial(-2, -1));
        p
    };
    d_powers.push(LaurentPoly::one());
    for i in 1..=n {
        d_powers.push(d_powers[i - 1].mul(&circle));
    }

    let edges = d.edge_count();
    let mut total = LaurentPoly::zero();
    let mut dsu = vec![0usize; edges];
    for state in 0u64..(1 << n) {
        for (i, slot) in dsu.iter_mut().enumerate() {
            *slot = i;
        }
        let mut a_count = 0i64;
        for c in 0..n {
            let e = |s: u8| d.edge_at(c, s);
            if state >> c & 1 == 0 {
                a_count += 1;
                union(&mut dsu, e(0), e(1));
                union(&mut dsu, e(2), e(3));
            } else {
                union(&mut dsu, e(0), e(3));
                union(&mut dsu, e(1), e(2));
            }
        }
        let mut loops = 0usize;
        for i in 0..edges {
            if find(&mut dsu, i) == i {
                loops += 1;
            }
        }
        let b_count = n as i64 - a_count;
        let term = LaurentPoly::monomial(a_count - b_count, 1).mul(&d_powers[loops - 1]);
        total.add_assign(&term);
    }
    Ok(total)
}

/// `(-A³)^(-writhe) · bracket`, invariant under all Reidemeister moves.
pub fn normalized_bracket(d: &KnotDiagram) -> Result<LaurentPoly, BracketError> {
    normalized_bracket_with_limit(d, DEFAULT_STATE_LIMIT)
}

pub fn normalized_bracket_with_limit(
    d: &KnotDiagram,
    limit: usize,
) -> Result<LaurentPoly, BracketError> {
    let bracket = kauffman_bracket_with_limit(d, limit)?;
    let w = writhe(d);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let twist = LaurentPoly::monomial(-3 * w as i64, sign);
    Ok(bracket.mul(&twist))
}

fn find(dsu: &mut [usize], mut x: usize) -> usize {
    while dsu[x] != x {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
    }
    x
}

fn union(dsu: &mut [usize], a: usize, b: usize) {
    let ra = find(dsu, a);
    let rb = find(dsu, b);
    if ra != rb {
        dsu[ra] = rb;
    }
}
