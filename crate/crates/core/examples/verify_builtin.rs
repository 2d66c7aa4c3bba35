//! Exact verification of the two built-in paradoxes.
//!
//!     cargo run --example verify_builtin

use cvghz::{builtin, verify};

fn main() {
    for name in ["v4", "w6"] {
        let set = builtin(name).expect("built-in");
        let report = verify(&set).expect("consistent set");
        println!("{name} (d = {}):", set.params().d());
        print!("{set}");
        println!("  product        {}", report.product);
        println!("  commuting      {}", report.is_commuting);
        println!("  locally meas.  {}", report.is_local);
        println!("  paradox        {}\n", report.is_paradox);
    }
}
