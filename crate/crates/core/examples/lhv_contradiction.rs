//! Any assignment of classical values to x̃ and p̃ makes the product +1,
//! while the operators multiply to -I.
//!
//!     cargo run --example lhv_contradiction

use cvghz::paradox::{lhv_value, LhvAssignment};
use cvghz::{builtin, verify};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let set = builtin("v4").unwrap();
    let quantum = verify(&set).unwrap().product;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let v = lhv_value(&set, &LhvAssignment::new(x.clone(), p.clone())).unwrap();
        println!("x = {x:>7.3?}  p = {p:>7.3?}  ->  {:+.12} {:+.1e}i", v.re, v.im);
    }
    println!("quantum product: {quantum}");
}
