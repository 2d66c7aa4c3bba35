//! Dense clock-and-shift matrices confirm the symbolic algebra, and the joint
//! eigenvector shows the eigenvalues multiplying to -1.
//!
//!     cargo run --release --example oracle_check [v4|w6]

use cvghz::builtin;
use cvghz::oracle::{check_set, joint_eigenvector, OracleConfig};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "v4".into());
    let set = builtin(&name).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2);
    });
    let config = OracleConfig::default();
    let r = check_set(&set, &config).unwrap();
    println!("{name}: {} x {} matrices", r.dimension, r.dimension);
    println!("  max ||[M_a, M_b]||   {:.3e}", r.max_commutator_norm);
    println!("  product deviation   {:.3e}", r.product_deviation.unwrap_or(f64::NAN));
    let je = joint_eigenvector(&set, &config).unwrap();
    for (k, l) in je.eigenvalues.iter().enumerate() {
        println!("  lambda_{}  {:+.6} {:+.6}i", k + 1, l.re, l.im);
    }
    let p = je.eigenvalue_product();
    println!("  product  {:+.6} {:+.6}i  (residual {:.1e})", p.re, p.im, je.residual);
}
