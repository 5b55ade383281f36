//! Soliton polytope of the Gr_k(C^{n+1}) model: vacua are k-subsets of
//! {0..n}, solitons join subsets sharing k-1 elements.
//!
//!     cargo run --example grassmannian_solitons -- 5 3

use ttstar_toda::representation::soliton_graph;
use ttstar_toda::stokes::StokesVector;

fn main() -> ttstar_toda::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(5);
    let k = args.next().flatten().unwrap_or(3);

    let graph = soliton_graph(n, k, &StokesVector::binomial(n))?;
    let diagram = graph.diagram();
    println!(
        "Gr_{k}(C^{}): {} vacua at {} distinct positions, {} solitons, degree {}",
        n + 1,
        graph.vertices.len(),
        diagram.points.len(),
        graph.edges.len(),
        graph.degree(0)
    );
    for p in &diagram.points {
        println!("  {:>12}  |z| = {:.4}  arg = {:+.4}", p.sources.join("|"), p.position.norm(), p.position.arg());
    }

    let mut by_class = std::collections::BTreeMap::new();
    for e in &graph.edges {
        let entry = by_class.entry(e.class).or_insert((e.mass, e.multiplicity.re, 0));
        entry.2 += 1;
    }
    for (class, (mass, multiplicity, count)) in by_class {
        println!("  class {class}: mass {mass:.6}, multiplicity {multiplicity}, {count} edges");
    }

    if n == 5 && k == 3 {
        let e = graph.edge_between(&[0, 2, 5], &[2, 4, 5]).expect("025-245 is a soliton");
        println!("  025 -> 245 via {} (class {}, mass {:.6})", e.root.label(), e.class, e.mass);
        println!("  024 -- 135 joined: {}", graph.edge_between(&[0, 2, 4], &[1, 3, 5]).is_some());
    }
    Ok(())
}
