//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p semimeander --test acceptance -- --nocapture`.
//! The hours-scale deep table range is `#[ignore]`d; run it with
//! `cargo test -p semimeander --test acceptance -- --ignored --nocapture`.

use num::rational::Ratio;
use num::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use semimeander::acd::{Acd, Diagram};
use semimeander::gauss::parse_gauss;
use semimeander::linear_form::LinearForm;
use semimeander::lp::{solve, LpProblem, LpSolution};
use semimeander::optimizer::{t_hat, MParam};
use semimeander::planar::{extract_acd, fixtures, is_semimeander, normalized_bracket, parse_pd};
use semimeander::rational::{format_plain, rat, ratio, to_f64, Rational};
use semimeander::reducer::{greedy_arc_from, make_semimeander};
use semimeander::tables::{
    compute_entry, least_squares_slope, published_table, ComputeOptions, Family,
};
use semimeander::transforms::{applicable_moves_acd, apply_move_acd, Move};

fn m8() -> MParam {
    MParam::Finite(rat(8))
}

#[test]
fn criterion_1_table_reproduction_required_range() {
    let published = published_table();
    let opts = ComputeOptions::default();
    for family in [Family::C, Family::D] {
        for m in [m8(), MParam::Infinite] {
            for k in 0..=5 {
                let got = compute_entry(family, k, &m, opts);
                let want = &published.get(family, &m, k).unwrap().value;
                assert_eq!(
                    got.value, *want,
                    "{family}_{{{k},{m}}}: computed {} expected {}",
                    format_plain(&got.value),
                    format_plain(want)
                );
            }
        }
    }
    println!("criterion 1: PASS - C and D rows for k = 0..5 match the published table exactly");
}

#[test]
#[ignore = "hours-scale sweep of k = 6..9; run nightly via -- --ignored"]
fn criterion_2_table_stretch_range() {
    let published = published_table();
    let opts = ComputeOptions { progress: true };
    for family in [Family::C, Family::D] {
        for m in [m8(), MParam::Infinite] {
            for k in 6..=9 {
                let got = compute_entry(family, k, &m, opts);
                let want = &published.get(family, &m, k).unwrap().value;
                assert_eq!(
                    got.value, *want,
                    "{family}_{{{k},{m}}}: computed {} expected {}",
                    format_plain(&got.value),
                    format_plain(want)
                );
                eprintln!("deep {family}_{{{k},{m}}} = {} ok", format_plain(&got.value));
            }
        }
    }
    println!("criterion 2: PASS - deep range k = 6..9 matches the published table exactly");
}

#[test]
fn criterion_3_closed_form_constant() {
    use semimeander::bounds::{
        coefficient_candidates_ninth_power, displayed_coefficient_ninth_power, theorem_constant,
    };
    let table = published_table();
    let candidates = coefficient_candidates_ninth_power(&table);
    for (d, c) in candidates.iter().enumerate() {
        if d != 2 {
            assert!(c < &candidates[2], "candidate at d = {d} not below d = 2");
        }
    }
    assert_eq!(candidates[2], displayed_coefficient_ninth_power());
    let (best_d, coeff, base) = theorem_constant(&table);
    assert_eq!(best_d, 2);
    assert!((coeff - 0.310).abs() < 5e-4, "coefficient {coeff} != 0.310");
    assert!((base - 1.557).abs() < 5e-4, "base {base} != 1.557 to 4 significant digits");
    println!(
        "criterion 3: PASS - coefficient attained at d = 2, exactly (208/431)(8/431)^(1/9), \
         decimal {coeff:.4}, base {base:.4}"
    );
}

#[test]
fn criterion_4_single_chord_value() {
    let x = parse_gauss("@[*] [w] a [w] a [w]").unwrap();
    for m in [4i64, 8, 100] {
        let expect = ratio(3 * m + 1, 2 * m);
        let got = t_hat(&x, &MParam::Finite(rat(m)));
        assert_eq!(got, expect, "m = {m}");
    }
    assert_eq!(t_hat(&x, &MParam::Infinite), ratio(3, 2));
    println!("criterion 4: PASS - single-chord value is (3m+1)/(2m) at m = 4, 8, 100 and 3/2 at inf");
}

// -- criterion 5: brute-force oracle over candidate vertices ---------------

type Q = Ratio<i128>;

#[derive(Debug, PartialEq, Eq)]
enum OracleOutcome {
    Infeasible,
    Unbounded,
    Optimal(Q),
}

/// Gaussian elimination over exact rationals; `None` when singular.
fn solve_square(rows: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = rhs.len();
    let mut a: Vec<Vec<Q>> = rows.iter().cloned().collect();
    let mut b: Vec<Q> = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col];
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col] / p;
            for c in col..n {
                let d = a[col][c] * f;
                a[r][c] -= d;
            }
            let d = b[col] * f;
            b[r] -= d;
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// All basic solutions of `n`-subsets of the rows, filtered for
/// feasibility. Rows are `(coeffs, rhs)` meaning `coeffs·x <= rhs`.
fn feasible_vertices(n: usize, rows: &[(Vec<Q>, Q)]) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    if rows.len() < n {
        return out;
    }
    loop {
        let sub_rows: Vec<Vec<Q>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let sub_rhs: Vec<Q> = subset.iter().map(|&i| rows[i].1).collect();
        if let Some(x) = solve_square(&sub_rows, &sub_rhs) {
            let feasible = rows.iter().all(|(row, b)| {
                let lhs: Q = row.iter().zip(&x).map(|(a, v)| *a * *v).sum();
                lhs <= *b
            });
            if feasible {
                out.push(x);
            }
        }
        // next combination
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] != i + rows.len() - n {
                subset[i] += 1;
                for j in i + 1..n {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Statuses and optima by explicit enumeration: candidate vertices of the
/// feasible region, then of the boxed recession cone for unboundedness.
fn oracle(num_vars: usize, objective: &[i64], cons: &[(Vec<i64>, i64)]) -> OracleOutcome {
    let q = |v: i64| Q::from_integer(v as i128);
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for (row, b) in cons {
        rows.push((row.iter().map(|&v| q(v)).collect(), q(*b)));
    }
    for j in 0..num_vars {
        let mut row = vec![Q::zero(); num_vars];
        row[j] = -Q::one();
        rows.push((row, Q::zero()));
    }
    let vertices = feasible_vertices(num_vars, &rows);
    if vertices.is_empty() {
        return OracleOutcome::Infeasible;
    }

    // Recession directions, normalized into the unit box.
    let mut rec_rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for (row, _) in cons {
        rec_rows.push((row.iter().map(|&v| q(v)).collect(), Q::zero()));
    }
    for j in 0..num_vars {
        let mut up = vec![Q::zero(); num_vars];
        up[j] = Q::one();
        rec_rows.push((up, Q::one()));
        let mut down = vec![Q::zero(); num_vars];
        down[j] = -Q::one();
        rec_rows.push((down, Q::zero()));
    }
    let value_of = |x: &[Q]| -> Q {
        x.iter().zip(objective).map(|(v, &c)| *v * q(c)).sum()
    };
    let unbounded = feasible_vertices(num_vars, &rec_rows)
        .iter()
        .any(|d| value_of(d) > Q::zero());
    if unbounded {
        return OracleOutcome::Unbounded;
    }
    OracleOutcome::Optimal(vertices.iter().map(|v| value_of(v)).max().unwrap())
}

#[test]
fn criterion_5_lp_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(0x5eed_1a5e);
    let mut statuses = [0usize; 3];
    let cases = 220;
    for case in 0..cases {
        // Small shapes dominate, with a handful at the full size.
        let n = if case % 11 == 0 { 6 } else { rng.gen_range(1..=4) };
        let m = if case % 11 == 0 { rng.gen_range(8..=12) } else { rng.gen_range(0..=8) };
        let objective: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let cons: Vec<(Vec<i64>, i64)> = (0..m)
            .map(|_| {
                let row: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
                (row, rng.gen_range(-4..=6))
            })
            .collect();

        let mut p = LpProblem::new(n, objective.iter().map(|&c| rat(c)).collect());
        for (row, b) in &cons {
            p.add_constraint(row.iter().map(|&v| rat(v)).collect(), rat(*b));
        }
        let got = solve(&p);
        let want = oracle(n, &objective, &cons);
        match (&got, &want) {
            (LpSolution::Infeasible, OracleOutcome::Infeasible) => statuses[0] += 1,
            (LpSolution::Unbounded, OracleOutcome::Unbounded) => statuses[1] += 1,
            (LpSolution::Optimal { value, point }, OracleOutcome::Optimal(w)) => {
                let w = ratio(*w.numer() as i64, *w.denom() as i64);
                assert_eq!(*value, w, "case {case}: value mismatch");
                assert!(p.is_feasible_point(point), "case {case}: infeasible point");
                statuses[2] += 1;
            }
            _ => panic!("case {case}: solver {got:?} but oracle {want:?}"),
        }
    }
    assert!(statuses.iter().all(|&c| c > 0), "status mix {statuses:?} missing a case");
    println!(
        "criterion 5: PASS - {cases} random programs agree with vertex enumeration \
         ({} infeasible, {} unbounded, {} optimal)",
        statuses[0], statuses[1], statuses[2]
    );
}

// -- criterion 6: transformation accounting --------------------------------

fn random_concrete_acd(rng: &mut StdRng) -> Acd {
    let n = rng.gen_range(1..=6);
    let mut free: Vec<usize> = (1..=2 * n).collect();
    let mut pairs = Vec::new();
    while let Some(a) = free.first().copied() {
        free.remove(0);
        let b = free.remove(rng.gen_range(0..free.len()));
        pairs.push((a, b));
    }
    let x = Acd::fresh(n, &pairs);
    // Concrete weights: small nonnegative rationals, integer basepoint.
    let code = semimeander::gauss::serialize_acd(&x);
    let mut out = format!("@[{}]", rng.gen_range(1..20));
    for token in code.split_whitespace().skip(1) {
        if token == "[w]" {
            let p = rng.gen_range(0..=8);
            let q = rng.gen_range(1..=4);
            out.push_str(&format!(" [{}/{}]", p, q));
        } else {
            out.push_str(&format!(" {token}"));
        }
    }
    match parse_gauss(&out).unwrap() {
        Diagram::Acd(a) => a,
        _ => unreachable!(),
    }
}

#[test]
fn criterion_6_transformation_accounting() {
    let mut rng = StdRng::seed_from_u64(2024);
    for case in 0..1000 {
        let x = random_concrete_acd(&mut rng);
        let n2 = x.positions();
        let bp = x.basepoint().constant_term().clone();
        for mv in applicable_moves_acd(&x).unwrap() {
            let y = apply_move_acd(&x, mv).unwrap();
            assert_eq!(y.len(), x.len() - 1, "case {case}: length must drop by one");
            let delta = y.basepoint().constant_term() - &bp;
            let expect = match mv {
                Move::T1Left => x.segment(1).constant_term() * rat(2) + rat(1),
                Move::T1Right => x.segment(n2 + 1).constant_term() * rat(2) + rat(1),
                Move::T2 { i } => x.segment(i).constant_term().clone(),
            };
            assert_eq!(delta, expect, "case {case}: basepoint delta for {mv:?}");
            assert!(delta >= Rational::zero());

            // Reflect-equivariance.
            let mirrored = apply_move_acd(&x.reflect(), mv.mirror(n2)).unwrap();
            assert_eq!(mirrored, y.reflect(), "case {case}: mirror of {mv:?}");
        }
    }
    println!(
        "criterion 6: PASS - 1000 concrete diagrams: T1 adds 2w+1, T2 adds w_i, \
         every move drops one chord, and moves commute with reflection"
    );
}

#[test]
fn criterion_7_reducer_corpus() {
    let mut runs = 0;
    for (name, pd) in fixtures::ALL_KNOTS {
        let d = parse_pd(pd).unwrap();
        let reference = normalized_bracket(&d).unwrap();
        let mut arcs: Vec<_> = (0..d.edge_count()).map(|e| greedy_arc_from(&d, e)).collect();
        let max_len = arcs.iter().map(|a| a.check_simple(&d).unwrap().len()).max().unwrap();
        arcs.retain(|a| a.check_simple(&d).unwrap().len() == max_len);
        arcs.dedup();
        for arc in &arcs {
            let off = extract_acd(&d, arc).unwrap().len();
            let (nd, nj, trace) = make_semimeander(&d, arc).unwrap();
            assert_eq!(trace.len(), off, "{name}: steps != initial off-arc count");
            assert!(is_semimeander(&nd, &nj).unwrap(), "{name}: output not semimeander");
            if nd.crossing_count() <= 20 {
                assert_eq!(
                    normalized_bracket(&nd).unwrap(),
                    reference,
                    "{name}: knot type changed"
                );
            }
            runs += 1;
        }
    }
    println!(
        "criterion 7: PASS - {runs} maximal greedy arcs across 9 standard knots reduce in \
         exactly off-arc-count steps to semimeander form with the knot type preserved"
    );
}

#[test]
fn criterion_8_bound_calculator() {
    use semimeander::bounds::{bound_report, theorem_constant};
    let r11 = bound_report(11).unwrap();
    assert_eq!(r11.exact, rat(35));
    assert_eq!(r11.meander, rat(140));
    assert_eq!(r11.potholder, rat(77841));
    let r17 = bound_report(17).unwrap();
    assert_eq!(r17.exact, rat(431));
    assert_eq!(r17.meander, rat(1724));

    let (_, coeff, _) = theorem_constant(&published_table());
    let printed = format!("{:.3} {:.2} {:.2}", coeff, 4.0 * coeff, 8.0 * coeff);
    assert_eq!(printed, "0.310 1.24 2.48");
    println!(
        "criterion 8: PASS - bound(11) = 35, bound(17) = 431, meander(11) = 140, \
         potholder(11) = 77841, closed-form coefficients print as {printed}"
    );
}

#[test]
fn criterion_9_growth_slopes() {
    let table = published_table();
    let mut slopes = Vec::new();
    for (family, m) in [
        (Family::C, m8()),
        (Family::C, MParam::Infinite),
        (Family::D, m8()),
        (Family::D, MParam::Infinite),
    ] {
        let pts: Vec<(f64, f64)> = (3..=9)
            .map(|k| (k as f64, to_f64(&table.get(family, &m, k).unwrap().value).log10()))
            .collect();
        slopes.push(least_squares_slope(&pts));
    }
    assert!(slopes.iter().all(|s| *s > 0.0), "slopes {slopes:?} not all positive");
    let min = slopes.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = slopes.iter().cloned().fold(0.0, f64::max);
    assert!(
        (max - min) / min <= 0.15,
        "family slopes {slopes:?} spread more than 15%"
    );
    println!(
        "criterion 9: PASS - log10 growth slopes over k = 3..9 are positive and within 15%: \
         {slopes:?}"
    );
}

// Shared-surface checks: parse/serialize stability of every printed form.
#[test]
fn printed_rationals_round_trip() {
    use semimeander::rational::parse_rational;
    let table = published_table();
    for (_, entry) in table.iter() {
        let text = format_plain(&entry.value);
        assert_eq!(parse_rational(&text).unwrap(), entry.value);
        let mixed = semimeander::rational::format_mixed(&entry.value);
        assert_eq!(parse_rational(&mixed).unwrap(), entry.value);
    }
    let x = parse_gauss("@[*] [w] a [w] b [w] a [w] b [w]").unwrap();
    let forms = semimeander::optimizer::elimination_functions(&x);
    for f in forms.forms() {
        let text = f.to_bracket(None);
        assert_eq!(LinearForm::parse_bracket(&text, 1).unwrap(), *f);
        assert!(!f.constant_term().is_negative());
    }
}
