//! Rewrites a knot diagram into a semimeander one and shows the trace.
//!
//! Starts the figure-eight knot with a deliberately short arc so several
//! reduction steps fire, then verifies the knot type via the normalized
//! bracket polynomial.

use semimeander::planar::{
    extract_acd, fixtures, is_semimeander, normalized_bracket, parse_pd, serialize_pd, SelectedArc,
};
use semimeander::reducer::{choose_initial_arc, make_semimeander};

fn main() {
    let d = parse_pd(fixtures::FIGURE_EIGHT).expect("valid PD");
    println!("figure-eight: {}", serialize_pd(&d));

    // The greedy arc already covers all four crossings here.
    let best = choose_initial_arc(&d);
    println!(
        "greedy arc {} covers {} crossings; semimeander = {}",
        best.format(),
        best.check_simple(&d).unwrap().len(),
        is_semimeander(&d, &best).unwrap()
    );

    // A two-crossing arc leaves two crossings to reduce.
    let short = SelectedArc::parse("edge:1@lo .. edge:3@hi").expect("valid spec");
    let chords = extract_acd(&d, &short).unwrap();
    println!(
        "short arc {}: {} crossings off the arc, induced chord diagram {}",
        short.format(),
        chords.len(),
        semimeander::gauss::serialize_acd(&chords)
    );

    let before = normalized_bracket(&d).unwrap();
    let (nd, nj, trace) = make_semimeander(&d, &short).expect("reduction succeeds");
    println!("step crossing branch cost total_crossings off_arc_crossings");
    for step in &trace {
        println!("{step}");
    }
    println!("result: {} crossings, arc {}", nd.crossing_count(), nj.format());
    println!("semimeander: {}", is_semimeander(&nd, &nj).unwrap());
    println!("knot type preserved: {}", normalized_bracket(&nd).unwrap() == before);
    println!("pd: {}", serialize_pd(&nd));
}
