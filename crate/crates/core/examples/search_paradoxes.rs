//! Exhaustive search over a bounded exponent box, then a search over a
//! hand-picked alphabet that finds the five-party d = 4 set.
//!
//!     cargo run --release --example search_paradoxes

use std::time::Instant;

use cvghz::paradox::{canonical_form, SearchSpace};
use cvghz::{builtin, LatticeParams, PartyExponent};

fn main() {
    let start = Instant::now();
    let space = SearchSpace::boxed(LatticeParams::new(2).unwrap(), 3, 4, 1).unwrap();
    let out = space.run().unwrap();
    println!(
        "3 parties, d = 2, 4 operators: {} classes from {} raw hits ({:.1?})",
        out.sets.len(),
        out.raw_hits,
        start.elapsed()
    );
    for set in &out.sets {
        println!("{set}");
    }

    let start = Instant::now();
    let alphabet = [(1, 0), (-1, 0), (0, 1), (0, -3)].map(|(m, n)| PartyExponent::new(m, n)).to_vec();
    let space =
        SearchSpace::with_alphabet(LatticeParams::new(4).unwrap(), 5, 6, alphabet).unwrap().with_max_nodes(u128::MAX);
    let out = space.run().unwrap();
    let w6 = canonical_form(&builtin("w6").unwrap());
    println!(
        "5 parties, d = 4, 6 operators: {} classes, w6 among them: {} ({:.1?})",
        out.sets.len(),
        out.sets.contains(&w6),
        start.elapsed()
    );
}
