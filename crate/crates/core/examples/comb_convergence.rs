//! Finite-width Gaussian combs approach the ideal eigenvalues as the peaks
//! narrow.
//!
//!     cargo run --release --example comb_convergence

use cvghz::comb::{convergence_study, CombParams};
use cvghz::oracle::OracleConfig;

fn main() {
    let widths = [0.4, 0.2, 0.1, 0.05, 0.025];
    let table = convergence_study(&widths, &CombParams::default(), &OracleConfig::default()).unwrap();
    let lambdas: Vec<String> = table.eigenvalues.iter().map(|l| format!("{:+.0}", l.re)).collect();
    println!("target eigenvalues: {}", lambdas.join(", "));
    println!("{:>7}  {:>9}  {:>9}  {:>9}", "delta", "<V1>", "<V2>", "max dev");
    for row in &table.rows {
        println!(
            "{:>7.3}  {:>9.5}  {:>9.5}  {:>9.5}",
            row.width, row.expectations[0].re, row.expectations[1].re, row.deviation
        );
    }
    println!("monotone: {}", table.is_monotone());
}
