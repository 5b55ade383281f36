use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),

    #[error("spin order {r} outside 1..={n}")]
    SpinOrder { n: usize, r: usize },

    #[error("root x_{i} - x_{j} is not a root of A_{n}")]
    InvalidRoot { n: usize, i: usize, j: usize },

    #[error("exterior degree {k} outside 1..={max}")]
    ExteriorDegree { k: usize, max: usize },

    #[error("parameter region violated: {0}")]
    Region(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("angle {0} is not a ray of the Coxeter diagram")]
    NotARay(f64),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("Newton iteration did not converge after {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("fit window [{x_a}, {x_b}] is not inside the grid [{x_min}, {x_max}]")]
    Window {
        x_a: f64,
        x_b: f64,
        x_min: f64,
        x_max: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n < 1 {
        Err(Error::InvalidRank(n))
    } else {
        Ok(())
    }
}
