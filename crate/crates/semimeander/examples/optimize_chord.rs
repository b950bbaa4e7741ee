//! Elimination functions and the max-min program value of a diagram.
//!
//! The single-chord diagram has three elimination sequences. Its value is
//! (3m+1)/(2m) for finite m and 3/2 in the limit.

use semimeander::gauss::{parse_gauss, serialize};
use semimeander::optimizer::{elimination_functions, t_hat_of_functions, MParam};
use semimeander::rational::{format_plain, rat};

fn main() {
    let diagram = parse_gauss("@[*] [w] a [w] a [w]").expect("valid code");
    println!("diagram: {}", serialize(&diagram));

    let fs = elimination_functions(&diagram);
    println!("final basepoint forms:");
    for f in fs.forms() {
        println!("  {f}");
    }

    for m in [MParam::Finite(rat(4)), MParam::Finite(rat(8)), MParam::Finite(rat(100))] {
        let v = t_hat_of_functions(&fs, &m);
        println!("t-hat at m = {m}: {}", format_plain(&v));
    }
    let v = t_hat_of_functions(&fs, &MParam::Infinite);
    println!("t-hat at m = inf: {}", format_plain(&v));

    // A window: the two symbols nearest the basepoint, both unpaired.
    let window = parse_gauss("| [w] a @[*] [w] b [w] |").expect("valid code");
    let fs = elimination_functions(&window);
    println!("window {}:", serialize(&window));
    for f in fs.forms() {
        println!("  {f}");
    }
    let v = t_hat_of_functions(&fs, &MParam::Finite(rat(8)));
    println!("t-hat at m = 8: {}", format_plain(&v));
}
