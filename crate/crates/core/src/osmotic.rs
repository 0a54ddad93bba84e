//! Forces obtained by differentiating gridded densities and potentials.
//!
//! Sign conventions follow `F_e = -T ∇S` with `S = k_B ln(1/p)`, so the
//! entropic force is `k_B T ∇p / p` and the osmotic force is its negation.
//! A positive radial component points outward.
//!
//! Derivatives are central differences on a uniform grid. The two boundary
//! samples use second-order one-sided stencils; they are kept in the profile
//! but [`ForceProfile::interior`] excludes them, and so do all accuracy
//! statements and residuals.

use crate::entropy::{maxent_solve, Constraint, DensityGrid, Domain, MaxEntProblem};
use crate::quantum::Statistics;
use crate::{Error, Result};

/// Density floor for division, relative to the largest density value.
pub const RELATIVE_DENSITY_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Units {
    /// `x = r / λ_th` and `g = λ_th β F·ê_r`.
    Reduced,
    Physical,
}

/// Radial force sampled at increasing, nonnegative positions.
#[derive(Clone, Debug, PartialEq)]
pub struct ForceProfile {
    x: Vec<f64>,
    force: Vec<f64>,
    units: Units,
    statistics: Option<Statistics>,
}

impl ForceProfile {
    pub fn new(
        x: Vec<f64>,
        force: Vec<f64>,
        units: Units,
        statistics: Option<Statistics>,
    ) -> Result<Self> {
        if x.len() != force.len() {
            return Err(Error::Usage(format!(
                "{} positions for {} force samples",
                x.len(),
                force.len()
            )));
        }
        if x.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Domain(
                "force positions must be finite and >= 0".into(),
            ));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Usage(
                "force positions must be strictly increasing".into(),
            ));
        }
        if let Some(i) = force.iter().position(|f| !f.is_finite()) {
            return Err(Error::Domain(format!(
                "force at x = {} is not finite",
                x[i]
            )));
        }
        Ok(Self {
            x,
            force,
            units,
            statistics,
        })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn force(&self) -> &[f64] {
        &self.force
    }

    pub fn units(&self) -> Units {
        self.units
    }

    pub fn statistics(&self) -> Option<Statistics> {
        self.statistics
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Positions and forces without the two one-sided boundary samples.
    pub fn interior(&self) -> (&[f64], &[f64]) {
        let n = self.x.len();
        if n <= 2 {
            return (&[], &[]);
        }
        (&self.x[1..n - 1], &self.force[1..n - 1])
    }

    /// Pointwise negation, exact in floating point.
    pub fn negated(&self) -> Self {
        Self {
            x: self.x.clone(),
            force: self.force.iter().map(|f| -f).collect(),
            units: self.units,
            statistics: self.statistics,
        }
    }

    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = Some(statistics);
        self
    }

    /// Largest interior `|self - other|` on a shared set of positions.
    pub fn max_interior_difference(&self, other: &ForceProfile) -> Result<f64> {
        if self.x != other.x {
            return Err(Error::Usage(
                "force profiles sample different positions".into(),
            ));
        }
        let (_, a) = self.interior();
        let (_, b) = other.interior();
        Ok(a.iter()
            .zip(b)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn require_uniform(domain: &Domain) -> Result<f64> {
    domain
        .uniform_spacing()
        .ok_or_else(|| Error::Usage("force extraction needs uniformly spaced bins".into()))
}

/// First derivative on a uniform grid.
fn gradient(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    if n == 2 {
        let d = (values[1] - values[0]) / h;
        return vec![d, d];
    }
    let mut out = Vec::with_capacity(n);
    // one-sided second-order stencils, written in differences so constants give exactly 0
    out.push((4.0 * (values[1] - values[0]) - (values[2] - values[0])) / (2.0 * h));
    out.extend(values.windows(3).map(|w| (w[2] - w[0]) / (2.0 * h)));
    out.push((4.0 * (values[n - 1] - values[n - 2]) - (values[n - 1] - values[n - 3])) / (2.0 * h));
    out
}

fn check_temperature(kt: f64) -> Result<()> {
    if kt.is_finite() && kt > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("k_B T must be positive, got {kt}")))
    }
}

/// `k_B T ∇p / p` at every bin midpoint.
pub fn entropic_force_from_density(density: &DensityGrid, kt: f64) -> Result<ForceProfile> {
    check_temperature(kt)?;
    let domain = density.domain();
    let h = require_uniform(domain)?;
    let p = density.values();
    let x = domain.midpoints();
    let floor = RELATIVE_DENSITY_FLOOR * p.iter().cloned().fold(0.0, f64::max);
    if let Some(i) = p.iter().position(|v| *v <= floor) {
        return Err(Error::Support { index: i, x: x[i] });
    }
    let force = gradient(p, h)
        .iter()
        .zip(p)
        .map(|(dp, p)| kt * (dp / p))
        .collect();
    ForceProfile::new(x, force, Units::Physical, None)
}

/// Einstein's osmotic force `-k_B T ∇p / p`.
pub fn osmotic_force_from_density(density: &DensityGrid, kt: f64) -> Result<ForceProfile> {
    Ok(entropic_force_from_density(density, kt)?.negated())
}

/// `-∇U` at every bin midpoint.
pub fn classical_force_from_potential(domain: &Domain, potential: &[f64]) -> Result<ForceProfile> {
    if potential.len() != domain.bins() {
        return Err(Error::Usage(format!(
            "{} potential samples for {} bins",
            potential.len(),
            domain.bins()
        )));
    }
    if let Some(i) = potential.iter().position(|u| !u.is_finite()) {
        return Err(Error::Domain(format!("potential sample {i} is not finite")));
    }
    let h = require_uniform(domain)?;
    let force = gradient(potential, h).into_iter().map(|d| -d).collect();
    ForceProfile::new(domain.midpoints(), force, Units::Physical, None)
}

/// Largest interior `|F_c - F_e|` where `F_e` comes from the Boltzmann
/// density of `U` at inverse temperature `beta`.
pub fn equivalence_residual(domain: &Domain, potential: &[f64], beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let problem = MaxEntProblem::new(
        domain.clone(),
        potential.to_vec(),
        Constraint::FixedBeta(beta),
    )?;
    let solution = maxent_solve(&problem)?;
    let entropic = entropic_force_from_density(&solution.density, 1.0 / beta)?;
    let classical = classical_force_from_potential(domain, potential)?;
    classical.max_interior_difference(&entropic)
}
