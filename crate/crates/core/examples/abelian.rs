//! Abelian invariants through the Smith normal form of the exponent-sum
//! matrix.

use tietze::verify::{abelian_invariants, exponent_matrix, smith_normal_form};
use tietze::Presentation;

fn main() {
    let groups = [
        ("Z/2 x Z/3, which is Z/6", "gens 2\nrelw aa\nrelw bbb\nrelw abAB\n"),
        ("free abelian of rank 2", "gens 2\nrelw abAB\n"),
        ("dihedral of order 8", "gens 2\nrelw aaaa\nrelw bb\nrelw abab\n"),
        ("binary icosahedral (perfect)", "gens 2\nrelw aaaBBBBB\nrelw ababAAA\n"),
    ];
    for (name, text) in groups {
        let p: Presentation = text.parse().unwrap();
        let m = exponent_matrix(&p);
        let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
        println!("{name}: exponent sums {rows:?}");
        println!("  elementary divisors {:?}", smith_normal_form(&m).iter().map(|x| x.to_string()).collect::<Vec<_>>());
        println!("  {}", abelian_invariants(&p));
    }
}
