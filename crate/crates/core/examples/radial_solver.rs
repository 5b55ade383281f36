//! Solves the radial equations for given m and fits the Stokes data from the
//! tail, comparing with the closed form.
//!
//!     cargo run --release --example radial_solver -- 3 -0.9,-0.3,0.3,0.9

use ttstar_toda::radial::{asymptotic_components, residual, verify_asymptotics, SolverConfig, Template};
use ttstar_toda::stokes::TodaParams;

fn main() -> ttstar_toda::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let m: Vec<f64> = match args.next() {
        Some(list) => list.split(',').map(|v| v.parse().expect("m values are numbers")).collect(),
        None => (0..=n).map(|i| i as f64 - n as f64 / 2.0).collect(),
    };
    let params = TodaParams::from_m(n, &m, None)?;

    for template in [Template::Bessel, Template::F] {
        let config = SolverConfig {
            template,
            ..SolverConfig::default()
        };
        let (solution, report) = verify_asymptotics(&params, &config)?;
        let res = residual(&solution)?;
        println!(
            "{template:?}: {} Newton steps (continuation {:?}), residual {:.1e}, route gap {:.1e}, flux error {:.1e}",
            solution.newton_iterations,
            solution.continuation,
            res.max_componentwise(),
            res.max_route_gap(),
            report.boundary_flux_error
        );
        for row in &report.rows {
            println!(
                "  k={}: ŝ = {:.6}, closed form {:.6}, rel {:>8}, spread {:.1e}, {}",
                row.k,
                row.fitted,
                row.closed_form,
                row.rel_error.map_or("-".into(), |r| format!("{r:.4}")),
                row.spread,
                if row.passed { "pass" } else { "FAIL" }
            );
        }
        if template == Template::Bessel {
            let u = asymptotic_components(&solution);
            for j in (0..solution.grid.count).step_by(250) {
                let us: Vec<String> = u.iter().map(|c| format!("{:+.3e}", c[j])).collect();
                println!("    x = {:8.4}  w_0 = {:+.5}  u = [{}]", solution.grid.x(j), solution.w[(j, 0)], us.join(", "));
            }
        }
    }
    Ok(())
}
