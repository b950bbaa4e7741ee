//! Crossing-number bounds for knots with more than ten crossings.

use semimeander::bounds::{bound_report, coefficient_candidates_ninth_power, theorem_constant};
use semimeander::rational::{format_plain, to_f64};
use semimeander::tables::published_table;

fn main() {
    let table = published_table();
    let (best_d, coeff, base) = theorem_constant(&table);
    println!("closed form: {coeff:.6} * {base:.6}^n, coefficient attained at d = {best_d}");
    println!("coefficient candidates (ninth root of the exact value):");
    for (d, c) in coefficient_candidates_ninth_power(&table).iter().enumerate() {
        println!("  d = {d}: {:.6}", to_f64(c).powf(1.0 / 9.0));
    }

    println!("n   semimeander   meander   potholder");
    for n in [11, 12, 17, 20, 26, 35] {
        let r = bound_report(n).expect("n > 10");
        println!(
            "{n:<3} {:<13} {:<9} {}",
            format_plain(&r.exact),
            format_plain(&r.meander),
            format_plain(&r.potholder)
        );
    }
}
