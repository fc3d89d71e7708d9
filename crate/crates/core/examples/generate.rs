//! Seeded random presentations in both profiles.

use tietze::generate::{generate, GenParams, Profile};

fn main() {
    let generic = GenParams { gens: 3, rels: 5, maxlen: 10, seed: 42, profile: Profile::Generic };
    print!("{}", generate(&generic).unwrap().to_text());
    assert_eq!(generate(&generic).unwrap(), generate(&generic).unwrap());

    let long = GenParams { gens: 4, rels: 8, maxlen: 120, seed: 42, profile: Profile::SmallAlphabetLong };
    let p = generate(&long).unwrap();
    let lens: Vec<usize> = p.rel.iter().map(|r| r.len()).collect();
    println!("small-alphabet-long relator lengths: {lens:?}");

    let bad = GenParams { gens: 1, ..long };
    println!("{:?}", generate(&bad).unwrap_err());
}
