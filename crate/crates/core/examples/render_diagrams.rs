//! Writes the Coxeter-plane and soliton-polytope SVGs into a directory.
//!
//!     cargo run --example render_diagrams -- out/

use std::path::PathBuf;

use ttstar_toda::io::write_file;
use ttstar_toda::render::{render_coxeter, render_polytope, spec_for};
use ttstar_toda::representation::soliton_graph;
use ttstar_toda::roots::coxeter_diagram;
use ttstar_toda::stokes::StokesVector;

fn main() -> ttstar_toda::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "diagrams".into()));
    std::fs::create_dir_all(&dir).map_err(|e| ttstar_toda::Error::InvalidInput(e.to_string()))?;

    for (n, r) in [(5, 1), (5, 2), (2, 1), (6, 1)] {
        let d = coxeter_diagram(n, r)?;
        let path = dir.join(format!("coxeter_n{n}_r{r}.svg"));
        write_file(&path, &render_coxeter(&d, &spec_for(&d))?)?;
        println!("{}", path.display());
    }
    for (n, k) in [(5, 3), (5, 1), (3, 2)] {
        let g = soliton_graph(n, k, &StokesVector::binomial(n))?;
        let path = dir.join(format!("polytope_n{n}_k{k}.svg"));
        write_file(&path, &render_polytope(&g, &spec_for(&g.diagram()))?)?;
        println!("{}", path.display());
    }
    Ok(())
}
