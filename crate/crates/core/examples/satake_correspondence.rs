//! ∧^k applied to the CP^n data: traces of the lifted monodromy, the spectrum
//! of the lifted connection, and the unipotent Jordan type.
//!
//!     cargo run --example satake_correspondence -- 4

use ttstar_toda::representation::{principal_jordan_type, satake_check};
use ttstar_toda::stokes::StokesVector;

fn main() -> ttstar_toda::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let s = StokesVector::binomial(n);
    for k in 1..=n {
        let report = satake_check(n, k, &s)?;
        println!("n={n} k={k}: {}", if report.passed { "pass" } else { "FAIL" });
        for c in &report.checks {
            println!("  {:<10} err {:.2e}  {}", c.name, c.error, c.detail);
        }
        println!("  principal Jordan type on ∧^{k}: {:?}", principal_jordan_type(n, k));
    }
    Ok(())
}
