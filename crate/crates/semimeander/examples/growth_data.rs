//! Emits the growth data of the constants as CSV and fits the log-linear
//! slopes.

use semimeander::optimizer::MParam;
use semimeander::rational::{rat, to_f64};
use semimeander::tables::{emit_growth_csv, least_squares_slope, published_table, Family};

fn main() {
    let table = published_table();
    let mut csv = Vec::new();
    emit_growth_csv(&table, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    println!();
    println!("least-squares slopes of log10 over k = 3..9:");
    for (family, m) in [
        (Family::C, MParam::Finite(rat(8))),
        (Family::C, MParam::Infinite),
        (Family::D, MParam::Finite(rat(8))),
        (Family::D, MParam::Infinite),
    ] {
        let pts: Vec<(f64, f64)> = (3..=9)
            .map(|k| (k as f64, to_f64(&table.get(family, &m, k).unwrap().value).log10()))
            .collect();
        let slope = least_squares_slope(&pts);
        println!("  {family} at m = {m}: {slope:.4} (growth factor {:.3} per chord)", 10f64.powf(slope));
    }
}
