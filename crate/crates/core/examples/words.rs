//! Free and cyclic reduction, inverses, rotations and the useful threshold.

use tietze::words::useful_threshold;
use tietze::{Involutions, Word};

fn main() {
    let w: Word = "aBbcAa".parse().unwrap();
    println!("{w} freely reduces to {}", w.free_reduce());

    let r: Word = "bacAB".parse().unwrap();
    println!("{r} cyclically reduces to {}", r.free_reduce().cyclic_reduce());

    let x: Word = "aBc".parse().unwrap();
    println!("inverse of {x} is {}", x.inverse());
    for i in 0..x.len() {
        println!("  rotate_right({x}, {i}) = {}", x.rotate_right(i));
    }
    println!("least rotation of {} or its inverse: {}", "cab", "cab".parse::<Word>().unwrap().canonical_rep());

    // With b an involution, B and b are the same symbol.
    let inv = Involutions::from_generators([2]);
    let y: Word = "aBcB".parse().unwrap();
    println!("{y} with b = B normalizes to {}, inverse {}", inv.normalize(&y), inv.invert(&y));

    for l_p in [1, 4, 5, 12] {
        println!("pattern length {l_p}: a common segment needs {} symbols", useful_threshold(l_p).unwrap());
    }
}
