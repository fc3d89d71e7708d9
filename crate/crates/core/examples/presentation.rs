//! Parsing, normalization and serialization of presentations.

use tietze::Presentation;

const TEXT: &str = "# a presentation of the dihedral group of order 8
gens 2
relw aaaa
relw bb
rel 1 2 1 2
relw aBbA
";

fn main() {
    let p: Presentation = TEXT.parse().expect("valid presentation");
    println!("{} generators, {} relators, total length {}", p.gens(), p.num_relators(), p.total_length());
    println!("involutions: {:?}", p.involutions.iter().collect::<Vec<_>>());
    print!("{}", p.to_text());

    for bad in ["gens 2\nrel 3\n", "gens 2\nrelw az\n", "rel 1\n"] {
        match bad.parse::<Presentation>() {
            Ok(_) => println!("unexpectedly parsed {bad:?}"),
            Err(e) => println!("rejected {bad:?}: {e}"),
        }
    }
}
