//! Projects the roots of A_n to each Coxeter plane and prints the wheels
//! (particle masses) and rays (singular directions).
//!
//!     cargo run --example coxeter_plane -- 5

use ttstar_toda::roots::{coxeter_diagram, coxeter_orbits, particle_classes, spin_table};

fn main() -> ttstar_toda::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);

    println!("A_{n}: {} roots in {} Coxeter orbits", n * (n + 1), coxeter_orbits(n)?.len());
    for class in particle_classes(n) {
        println!("  class {} has mass {:.6}", class.k, class.mass);
    }

    for r in 1..=n {
        let d = coxeter_diagram(n, r)?;
        let radii: Vec<String> = d.wheels.iter().map(|w| format!("{:.4}", w.radius)).collect();
        println!(
            "spin {r}: {} points, {} rays, wheels at [{}]",
            d.points.len(),
            d.rays.len(),
            radii.join(", ")
        );
    }

    println!("spin table (row k, column r):");
    for (k, row) in spin_table(n)?.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:7.4}")).collect();
        println!("  k={} {}", k + 1, cells.join(" "));
    }

    let d = coxeter_diagram(n, 1)?;
    println!("points on the first ray (angle {:.4}):", d.rays[0].angle);
    for &idx in &d.rays[0].points {
        println!("  {} at |z| = {:.4}", d.points[idx].sources.join("|"), d.points[idx].position.norm());
    }
    Ok(())
}
