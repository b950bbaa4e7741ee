//! Kauffman brackets of the small-knot corpus.
//!
//! The writhe-normalized bracket is a knot invariant; the reducer's tests
//! use it to certify that rewriting a diagram preserves the knot.

use semimeander::planar::{fixtures, kauffman_bracket, normalized_bracket, parse_pd, writhe};

fn main() {
    for (name, pd) in fixtures::ALL_KNOTS {
        let d = parse_pd(pd).expect("valid PD");
        let b = kauffman_bracket(&d).expect("within the state-sum limit");
        let f = normalized_bracket(&d).unwrap();
        println!("{name}: writhe {:+}", writhe(&d));
        println!("  bracket:    {b}");
        println!("  normalized: {f}");
    }

    // A kink changes the bracket but not its normalization.
    let kink = parse_pd(fixtures::UNKNOT_KINK).unwrap();
    println!(
        "unknot with one kink: bracket {}, normalized {}",
        kauffman_bracket(&kink).unwrap(),
        normalized_bracket(&kink).unwrap()
    );
}
