//! Closed-form Stokes data from asymptotic data m, the Steinberg
//! cross-section, and the Stokes factors on each singular direction.
//!
//!     cargo run --example stokes_data

use ttstar_toda::linalg::{eigenvalues, max_abs};
use ttstar_toda::representation::ext_power_group;
use ttstar_toda::stokes::{steinberg_monodromy, stokes_factors, stokes_from_m, TodaParams};

fn main() -> ttstar_toda::Result<()> {
    let cases = [
        ("CP^3", TodaParams::cpn(3)?),
        ("generic n=3", TodaParams::from_m(3, &[-0.9, -0.3, 0.3, 0.9], None)?),
        ("symmetric n=2", TodaParams::from_m(2, &[0.0; 3], None)?),
        ("from k, n=4", TodaParams::from_k(4, &[0.0, -1.0, -1.0, -1.0, -1.0])?),
    ];
    for (name, params) in cases {
        let s = stokes_from_m(&params)?;
        println!("{name}: m = {:?}, k = {:?}, N = {}", params.m, params.k, params.big_n);
        println!("  s = {:?}", s.real_parts());

        let monodromy = steinberg_monodromy(&s);
        let traces: Vec<String> = (1..=params.n)
            .map(|k| ext_power_group(monodromy.matrix(), k).map(|m| format!("{:.6}", m.trace().re)))
            .collect::<Result<_, _>>()?;
        println!("  tr ∧^k M = [{}], det M = {:.6}", traces.join(", "), monodromy.determinant());
        let ev: Vec<String> = eigenvalues(monodromy.matrix())?.iter().map(|z| format!("{z:.4}")).collect();
        println!("  eigenvalues of M: {}", ev.join(", "));

        for (angle, q) in stokes_factors(params.n, &s)?.iter().take(2) {
            let dim = q.nrows();
            let nil = q - ttstar_toda::linalg::CMatrix::identity(dim, dim);
            println!(
                "  Stokes factor at {angle:+.4}: |Q - I| = {:.4}, |(Q - I)^{}| = {:.1e}",
                max_abs(&nil),
                dim,
                max_abs(&nil.pow(dim as u32))
            );
        }
    }
    Ok(())
}
