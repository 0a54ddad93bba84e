use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("density is not normalized (quadrature mass = {mass})")]
    Normalization { mass: f64 },

    /// Malformed call: mismatched grids, indivisible bin counts, empty inputs.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(
        "density vanishes at bin {index} (x = {x}); the requested quantity is undefined there"
    )]
    Support { index: usize, x: f64 },

    /// The fermion pair quantities diverge at zero separation.
    #[error("pole at x = {at}: the fermion force and potential diverge at contact")]
    Pole { at: f64 },

    #[error(
        "target mean energy {target} is infeasible; it must lie strictly inside ({min}, {max})"
    )]
    Infeasible { target: f64, min: f64, max: f64 },

    #[error("failed to converge: {0}")]
    Convergence(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("non-finite state in walker {walker} at step {step}")]
    Numeric { walker: usize, step: usize },

    #[error("insufficient data: no histogram bin group reaches {min_expected} expected counts")]
    InsufficientData { min_expected: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
