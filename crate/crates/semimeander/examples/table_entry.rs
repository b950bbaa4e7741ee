//! Computes a single table entry, useful for splitting the deep range
//! across machines.
//!
//! Usage: `table_entry <C|D> <k> <m|inf>`, e.g. `table_entry D 9 8`.

use semimeander::optimizer::MParam;
use semimeander::rational::{format_mixed, format_plain};
use semimeander::tables::{compute_entry, ComputeOptions, Family};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let usage = "usage: table_entry <C|D> <k> <m|inf>";
    let family = args.first().and_then(|s| Family::parse(s)).expect(usage);
    let k: usize = args.get(1).and_then(|s| s.parse().ok()).expect(usage);
    let m = args.get(2).and_then(|s| MParam::parse(s)).expect(usage);

    let started = std::time::Instant::now();
    let entry = compute_entry(family, k, &m, ComputeOptions { progress: true });
    println!(
        "{family}_{{{k},{m}}} = {} ({}) in {:?}",
        format_plain(&entry.value),
        format_mixed(&entry.value),
        started.elapsed()
    );
    println!("witness: {}", entry.witness.unwrap_or_default());
}
