//! Crossing-number bounds for semimeander, meander and potholder diagrams.
//!
//! For a knot with `n > 10` crossings the minimal semimeander crossing
//! number is at most `8 · D_{9,8}^⌊(n-8)/9⌋ · C_{d,8}` with `d = (n-8) mod 9`,
//! relaxed to the closed form `coeff · base^n` where `base = D_{9,8}^{1/9}`
//! and `coeff = max_d 8·C_{d,8} / D_{9,8}^{(d+8)/9}`, attained at `d = 2`:
//! `(208/431)·(8/431)^{1/9} ≈ 0.310`, with base `≈ 1.557`. A meander diagram
//! costs at most 4 times the semimeander bound, and a potholder at most
//! `(2·meander - 1)²`.

use num::{One, ToPrimitive};
use thiserror::Error;

use crate::optimizer::MParam;
use crate::rational::{pow_u, rat, ratio, Rational};
use crate::tables::{published_table, CostTable, Family};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("bounds apply to crossing numbers above 10; the semimeander crossing number is known exactly up to 10 crossings")]
    OutOfRange(u64),
}

/// Bounds for one crossing number.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    /// `(n - 8) mod 9`.
    pub d: u64,
    /// Exact semimeander bound `8 · D_{9,8}^⌊(n-8)/9⌋ · C_{d,8}`.
    pub exact: Rational,
    /// Closed-form relaxation `coeff · base^n`.
    pub closed_form: f64,
    /// Meander bound, 4 times the semimeander bound.
    pub meander: Rational,
    pub meander_closed: f64,
    /// Potholder bound `(2·meander - 1)²`.
    pub potholder: Rational,
    pub potholder_closed: f64,
}

fn c_entry(table: &CostTable, k: usize) -> Rational {
    table
        .get(Family::C, &MParam::Finite(rat(8)), k)
        .expect("published table covers k <= 9")
        .value
        .clone()
}

fn d9(table: &CostTable) -> Rational {
    table
        .get(Family::D, &MParam::Finite(rat(8)), 9)
        .expect("published table covers k = 9")
        .value
        .clone()
}

/// Ninth powers of the closed-form coefficient candidates
/// `8·C_{d,8} / D_{9,8}^{(d+8)/9}` for `d = 0..=8`, exact.
pub fn coefficient_candidates_ninth_power(table: &CostTable) -> Vec<Rational> {
    let d9 = d9(table);
    (0..=8)
        .map(|d| {
            let c = rat(8) * c_entry(table, d);
            pow_u(&c, 9) / pow_u(&d9, (d + 8) as u32)
        })
        .collect()
}

/// The `d` maximizing the coefficient candidate (exact comparison of ninth
/// powers) and the decimal coefficient and exponential base.
pub fn theorem_constant(table: &CostTable) -> (usize, f64, f64) {
    let candidates = coefficient_candidates_ninth_power(table);
    let best_d = (0..=8)
        .max_by(|a, b| candidates[*a].cmp(&candidates[*b]))
        .expect("nine candidates");
    let coeff = candidates[best_d].to_f64().expect("small rational").powf(1.0 / 9.0);
    let base = d9(table).to_f64().expect("small rational").powf(1.0 / 9.0);
    (best_d, coeff, base)
}

/// Bounds from the published constants.
pub fn bound_report(n: u64) -> Result<BoundReport, BoundError> {
    bound_report_from(n, &published_table())
}

pub fn bound_report_from(n: u64, table: &CostTable) -> Result<BoundReport, BoundError> {
    if n <= 10 {
        return Err(BoundError::OutOfRange(n));
    }
    let d = ((n - 8) % 9) as usize;
    let e = ((n - 8) / 9) as u32;
    let exact = rat(8) * pow_u(&d9(table), e) * c_entry(table, d);

    let (_, coeff, base) = theorem_constant(table);
    let closed_form = coeff * base.powi(n as i32);
    let meander = rat(4) * exact.clone();
    let meander_closed = 4.0 * closed_form;
    let doubled = rat(2) * meander.clone() - Rational::one();
    let potholder = pow_u(&doubled, 2);
    let potholder_closed = 2.0 * meander_closed;
    Ok(BoundReport {
        n,
        d: d as u64,
        exact,
        closed_form,
        meander,
        meander_closed,
        potholder,
        potholder_closed,
    })
}

/// The exact ninth power of the displayed coefficient
/// `(208/431)·(8/431)^{1/9}`, for exact identity checks.
pub fn displayed_coefficient_ninth_power() -> Rational {
    pow_u(&ratio(208, 431), 9) * ratio(8, 431)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_bounds_at_small_n() {
        let r = bound_report(11).unwrap();
        assert_eq!(r.d, 3);
        assert_eq!(r.exact, rat(35));
        assert_eq!(r.meander, rat(140));
        assert_eq!(r.potholder, rat(77841));

        let r = bound_report(17).unwrap();
        assert_eq!(r.d, 0);
        assert_eq!(r.exact, rat(431));
        assert_eq!(r.meander, rat(1724));
    }

    #[test]
    fn rejects_small_crossing_numbers() {
        assert_eq!(bound_report(10), Err(BoundError::OutOfRange(10)));
        assert!(bound_report(11).is_ok());
    }

    #[test]
    fn coefficient_attained_at_d2_with_displayed_value() {
        let table = published_table();
        let candidates = coefficient_candidates_ninth_power(&table);
        let (best_d, coeff, base) = theorem_constant(&table);
        assert_eq!(best_d, 2);
        for (d, c) in candidates.iter().enumerate() {
            assert!(*c <= candidates[2], "candidate {d} exceeds d=2");
        }
        assert_eq!(candidates[2], displayed_coefficient_ninth_power());
        assert!((coeff - 0.310).abs() < 0.0005, "coeff = {coeff}");
        assert!((base - 1.557).abs() < 0.0005, "base = {base}");
    }

    #[test]
    fn exact_bound_below_closed_form() {
        for n in 11..=40 {
            let r = bound_report(n).unwrap();
            let exact = crate::rational::to_f64(&r.exact);
            assert!(exact <= r.closed_form * (1.0 + 1e-9), "n = {n}");
        }
    }

    #[test]
    fn step_of_nine_multiplies_by_d9() {
        for n in 11..=20 {
            let a = bound_report(n).unwrap().exact;
            let b = bound_report(n + 9).unwrap().exact;
            assert_eq!(b, a * ratio(431, 8));
        }
    }

    #[test]
    fn bounds_monotone_in_n() {
        let mut prev = bound_report(11).unwrap();
        for n in 12..=40 {
            let cur = bound_report(n).unwrap();
            assert!(cur.potholder > prev.potholder);
            assert!(cur.closed_form > prev.closed_form);
            prev = cur;
        }
    }
}
