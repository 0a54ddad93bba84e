//! Entropic forces from probability densities.
//!
//! The crate is organised bottom-up:
//!
//! - [`entropy`]: discrete, differential and relative entropy on gridded
//!   densities, and the constrained maximum-entropy (Boltzmann) solver.
//! - [`osmotic`]: entropic, osmotic and classical forces obtained by
//!   differentiating gridded densities and potentials.
//! - [`quantum`]: closed-form pair density, statistical potential and
//!   entropic force for two free bosons or fermions, with the
//!   low-temperature and classical limits.
//! - [`noncommutative`]: the same pair quantities when `[x, y] = iθ`.
//! - [`dynamics`]: an overdamped Langevin simulator for the relative
//!   coordinate of a pair, checked against the analytic pair density.
//!
//! Pair quantities are computed in reduced units: separations as
//! `x = r / λ_th` and forces as `g = λ_th β F·ê_r`.

pub mod dynamics;
pub mod entropy;
mod error;
pub mod noncommutative;
pub mod osmotic;
pub mod quantum;

pub use error::{Error, Result};

pub use dynamics::{
    compare_histogram, simulate_pair, stationary_reference, HistogramComparison, LangevinConfig,
    PairLaw, SeparationHistogram,
};
pub use entropy::{
    differential_entropy, discrete_entropy, maxent_solve, relative_entropy, riemann_entropy_limit,
    scale_transform, Constraint, DensityGrid, Domain, Geometry, MaxEntProblem, MaxEntSolution,
};
pub use noncommutative::{
    nc_entropic_force_reduced, nc_low_temp_force_reduced, nc_pair_density_reduced,
    pauli_violation_probe, ContactRegime, NcParams, PauliProbe,
};
pub use osmotic::{
    classical_force_from_potential, entropic_force_from_density, equivalence_residual,
    osmotic_force_from_density, ForceProfile, Units,
};
pub use quantum::{
    classical_series_force_reduced, classical_series_terms, entropic_force_physical,
    entropic_force_reduced, hooke_constant, low_temp_force_reduced, neumann_force,
    pair_density_reduced, polymer_force, statistical_potential_reduced, thermal_wavelength,
    PolymerChain, Statistics, ThermalState,
};
