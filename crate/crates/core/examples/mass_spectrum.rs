//! Linearisation around w = 0: the mass operator spectrum equals the squared
//! particle masses.
//!
//!     cargo run --example mass_spectrum

use ttstar_toda::roots::{mass, mass_operator_spectrum};

fn main() -> ttstar_toda::Result<()> {
    for n in 1..=8 {
        let spectrum = mass_operator_spectrum(n)?;
        let mut squares: Vec<f64> = (1..=n).map(|k| mass(n, k).powi(2)).collect();
        squares.sort_by(f64::total_cmp);
        let err = spectrum.iter().zip(&squares).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let shown: Vec<String> = spectrum.iter().map(|x| format!("{x:.4}")).collect();
        println!("n={n}: [{}]  max |λ - L_k²| = {err:.1e}", shown.join(", "));
    }
    Ok(())
}
