//! Recomputes the constants C_{k,m} and D_{k,m} for small k and checks them
//! against the published values.
//!
//! The default range k <= 4 runs in seconds. Pass a larger k as the first
//! argument for the slower ranges (k = 9 is an hours-scale run).

use semimeander::optimizer::MParam;
use semimeander::rational::rat;
use semimeander::tables::{
    compute_table, diff_against_published, render_table, ComputeOptions, CostTable, Family,
};

fn main() {
    let kmax: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let opts = ComputeOptions { progress: kmax > 5 };

    let mut table = CostTable::default();
    for family in [Family::C, Family::D] {
        for m in [MParam::Finite(rat(8)), MParam::Infinite] {
            let row = compute_table(kmax, &m, family, opts);
            for (key, entry) in row.iter() {
                table.insert(key.0, key.1.clone(), key.2, entry.clone());
            }
        }
    }

    print!("{}", render_table(&table));
    let mismatches = diff_against_published(&table);
    if mismatches.is_empty() {
        println!("all {} entries match the published constants", table.len());
    } else {
        for (key, got, want) in mismatches {
            println!("MISMATCH {key}: computed {got} expected {want}");
        }
        std::process::exit(1);
    }
}
