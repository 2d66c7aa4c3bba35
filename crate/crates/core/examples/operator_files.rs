//! Writing a set to the JSON file format and reading it back.
//!
//!     cargo run --example operator_files

use cvghz::format::{emit_set, parse_set};
use cvghz::{verify, LatticeParams, OperatorSet};

fn main() {
    // X X X with the three cyclic X Y Y partners, d = 2
    let set = OperatorSet::from_rows(
        LatticeParams::new(2).unwrap(),
        [[(1, 0), (1, 0), (1, 0)], [(-1, 0), (0, 1), (0, -1)], [(0, -1), (-1, 0), (0, 1)], [(0, 1), (0, -1), (-1, 0)]],
    )
    .unwrap();
    let text = emit_set(&set, Some("cyclic"));
    print!("{text}");
    let back = parse_set(&text).unwrap();
    assert_eq!(back, set);
    println!("round trip ok, paradox: {}", verify(&back).unwrap().is_paradox);
}
