//! Entropies of gridded densities and the maximum-entropy solver.
//!
//! Densities live on a [`Domain`]: a list of strictly increasing bin edges
//! plus a geometry tag. A density is one value per bin, sampled at the bin
//! midpoint. Integrals use the midpoint rule (bin width on a line,
//! `4π r_i² Δr_i` on a radial domain) with an end correction that lifts it to
//! fourth order; see [`Domain::weights`].
//!
//! Sign conventions: [`relative_entropy`] returns the nonnegative divergence
//! `∫ p ln(p/q)`. The entropy-flavoured quantity `-∫ p ln(p/q)` is its
//! negation and is never returned by this module.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Tolerance on `∫ p = 1` accepted by normalized constructors.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Densities at or below this value are treated as exactly zero.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Weight factors for the three outermost bins at each end of a uniform run.
const END_CORRECTION: [f64; 3] = [1.0 + 1.0 / 12.0, 1.0 - 1.0 / 8.0, 1.0 + 1.0 / 24.0];

const BRACKET_DOUBLINGS: usize = 60;
const BISECTION_TOL: f64 = 1e-12;
const MEAN_ENERGY_REL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    /// One-dimensional interval, weight `dx`.
    Line,
    /// Radial coordinate of a spherically symmetric 3D density, weight `4πr² dr`.
    Radial,
}

/// Bin edges and geometry. Values live elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    edges: Vec<f64>,
    geometry: Geometry,
}

impl Domain {
    pub fn new(edges: Vec<f64>, geometry: Geometry) -> Result<Self> {
        if edges.len() < 3 {
            return Err(Error::Usage(format!(
                "a grid needs at least 2 bins, got {} edges",
                edges.len()
            )));
        }
        if edges.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("bin edges must be finite".into()));
        }
        if let Some(i) = edges.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Usage(format!(
                "bin edges must be strictly increasing (edge {} = {} follows {})",
                i + 1,
                edges[i + 1],
                edges[i]
            )));
        }
        if geometry == Geometry::Radial && edges[0] < 0.0 {
            return Err(Error::Domain(format!(
                "radial domains start at r >= 0, got {}",
                edges[0]
            )));
        }
        Ok(Self { edges, geometry })
    }

    /// `bins` equal-width bins covering `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, bins: usize, geometry: Geometry) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(Error::Usage(format!("invalid interval [{lo}, {hi}]")));
        }
        let h = (hi - lo) / bins as f64;
        let mut edges: Vec<f64> = (0..=bins).map(|i| lo + h * i as f64).collect();
        if let Some(last) = edges.last_mut() {
            *last = hi;
        }
        Self::new(edges, geometry)
    }

    /// Rebuilds edges from bin midpoints: interior edges halfway between
    /// neighbouring midpoints, outer edges mirrored by half a spacing.
    pub fn from_midpoints(midpoints: &[f64], geometry: Geometry) -> Result<Self> {
        if midpoints.len() < 2 {
            return Err(Error::Usage("need at least 2 sample points".into()));
        }
        if let Some(i) = midpoints.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Usage(format!(
                "sample points must be strictly increasing (row {})",
                i + 1
            )));
        }
        let n = midpoints.len();
        let mut edges = Vec::with_capacity(n + 1);
        edges.push(midpoints[0] - 0.5 * (midpoints[1] - midpoints[0]));
        edges.extend(midpoints.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        edges.push(midpoints[n - 1] + 0.5 * (midpoints[n - 1] - midpoints[n - 2]));
        if geometry == Geometry::Radial && edges[0] < 0.0 && edges[0] > -1e-12 {
            edges[0] = 0.0;
        }
        Self::new(edges, geometry)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn bins(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Quadrature weight of every bin.
    ///
    /// Midpoint rule with an end correction: when the three outermost bins at
    /// each end share a width, the `h²/24 (f'(b) - f'(a))` Euler–Maclaurin
    /// term is folded into their weights using second-order one-sided
    /// derivatives from the midpoint samples. All weights stay positive and
    /// the rule is fourth order on uniform grids.
    pub fn weights(&self) -> Vec<f64> {
        let mut weights: Vec<f64> = self
            .edges
            .windows(2)
            .map(|w| {
                let width = w[1] - w[0];
                match self.geometry {
                    Geometry::Line => width,
                    Geometry::Radial => {
                        let r = 0.5 * (w[0] + w[1]);
                        4.0 * PI * r * r * width
                    }
                }
            })
            .collect();
        let n = weights.len();
        if n >= END_CORRECTION.len() * 2 {
            let widths = self.widths();
            let even = |ws: &[f64]| ws.iter().all(|w| (w - ws[0]).abs() <= 1e-9 * ws[0]);
            if even(&widths[..3]) {
                for (w, c) in weights.iter_mut().zip(END_CORRECTION) {
                    *w *= c;
                }
            }
            if even(&widths[n - 3..]) {
                for (w, c) in weights.iter_mut().rev().zip(END_CORRECTION) {
                    *w *= c;
                }
            }
        }
        weights
    }

    /// Total measure (length or volume) of the domain under the quadrature rule.
    pub fn measure(&self) -> f64 {
        self.weights().iter().sum()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.weights().iter().zip(values).map(|(w, v)| w * v).sum()
    }

    /// Common bin width when all bins agree to 1e-6 relative.
    pub fn uniform_spacing(&self) -> Option<f64> {
        let widths = self.widths();
        let h = (self.edges[self.edges.len() - 1] - self.edges[0]) / widths.len() as f64;
        widths
            .iter()
            .all(|w| (w - h).abs() <= 1e-6 * h)
            .then_some(h)
    }

    fn same_as(&self, other: &Domain) -> bool {
        self.geometry == other.geometry
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0))
    }
}

/// Probability density sampled at bin midpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid {
    domain: Domain,
    values: Vec<f64>,
}

impl DensityGrid {
    /// Builds a density that must already integrate to 1.
    pub fn new(domain: Domain, values: Vec<f64>) -> Result<Self> {
        let grid = Self::from_raw(domain, values)?;
        if !grid.is_normalized() {
            return Err(Error::Normalization { mass: grid.mass() });
        }
        Ok(grid)
    }

    /// Builds a density and rescales it to unit mass.
    pub fn normalized(domain: Domain, values: Vec<f64>) -> Result<Self> {
        Self::from_raw(domain, values)?.renormalize()
    }

    /// Samples `f` at the bin midpoints and normalizes.
    pub fn from_fn(domain: Domain, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = domain.midpoints().into_iter().map(f).collect();
        Self::normalized(domain, values)
    }

    /// Structural checks only; the mass may differ from 1. Entropy
    /// operations re-check normalization where they need it.
    pub fn from_raw(domain: Domain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.bins() {
            return Err(Error::Usage(format!(
                "{} values for {} bins",
                values.len(),
                domain.bins()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain(format!(
                "density value {} at bin {i} is negative or non-finite",
                values[i]
            )));
        }
        Ok(Self { domain, values })
    }

    pub fn renormalize(mut self) -> Result<Self> {
        let mass = self.mass();
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Normalization { mass });
        }
        self.values.iter_mut().for_each(|v| *v /= mass);
        Ok(self)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mass(&self) -> f64 {
        self.domain.integrate(&self.values)
    }

    pub fn is_normalized(&self) -> bool {
        (self.mass() - 1.0).abs() <= NORMALIZATION_TOL
    }

    /// Probability carried by each bin.
    pub fn probabilities(&self) -> Vec<f64> {
        self.domain
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(w, p)| w * p)
            .collect()
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::Normalization { mass: self.mass() })
        }
    }
}

fn plogp(p: f64) -> f64 {
    if p <= DENSITY_FLOOR {
        0.0
    } else {
        p * p.ln()
    }
}

/// Shannon entropy `-Σ p ln p` of a discrete distribution, with `0 ln 0 = 0`.
pub fn discrete_entropy(probabilities: &[f64]) -> Result<f64> {
    if let Some(i) = probabilities
        .iter()
        .position(|p| !p.is_finite() || *p < 0.0)
    {
        return Err(Error::Domain(format!(
            "probability {} at index {i} is negative or non-finite",
            probabilities[i]
        )));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Normalization { mass: total });
    }
    let s: f64 = -probabilities.iter().map(|&p| plogp(p)).sum::<f64>();
    Ok(s.max(0.0))
}

/// Differential entropy `-∫ p ln p`. Can be negative.
pub fn differential_entropy(density: &DensityGrid) -> Result<f64> {
    density.require_normalized()?;
    Ok(-density
        .domain
        .weights()
        .iter()
        .zip(&density.values)
        .map(|(w, &p)| w * plogp(p))
        .sum::<f64>())
}

/// Riemann-sum entropy `S_Δ + Σ P_i ln Δ_i` at the native resolution and
/// after merging every `coarse_factor` bins, returned as `(fine, coarse)`.
///
/// `Δ_i` is the bin measure, so on the native grid the corrected sum
/// coincides with the midpoint differential entropy.
pub fn riemann_entropy_limit(density: &DensityGrid, coarse_factor: usize) -> Result<(f64, f64)> {
    density.require_normalized()?;
    let bins = density.domain.bins();
    if coarse_factor < 2 || !bins.is_multiple_of(coarse_factor) {
        return Err(Error::Usage(format!(
            "{bins} bins cannot be coarsened by a factor of {coarse_factor}"
        )));
    }
    let mass = density.probabilities();
    let measure = density.domain.weights();
    let corrected = |mass: &[f64], measure: &[f64]| -> f64 {
        mass.iter()
            .zip(measure)
            .map(|(&p, &d)| {
                if p <= DENSITY_FLOOR {
                    0.0
                } else {
                    -p * p.ln() + p * d.ln()
                }
            })
            .sum()
    };
    let fine = corrected(&mass, &measure);
    let coarse_mass: Vec<f64> = mass.chunks(coarse_factor).map(|c| c.iter().sum()).collect();
    let coarse_measure: Vec<f64> = measure
        .chunks(coarse_factor)
        .map(|c| c.iter().sum())
        .collect();
    Ok((fine, corrected(&coarse_mass, &coarse_measure)))
}

/// Kullback–Leibler divergence `∫ p ln(p/q) ≥ 0` on a shared grid.
///
/// `p` must be normalized. `q` may carry mass below 1 (a density restricted
/// to a sub-domain) but not above.
pub fn relative_entropy(p: &DensityGrid, q: &DensityGrid) -> Result<f64> {
    if !p.domain.same_as(&q.domain) {
        return Err(Error::Usage("densities live on different grids".into()));
    }
    p.require_normalized()?;
    let q_mass = q.mass();
    if q_mass > 1.0 + NORMALIZATION_TOL {
        return Err(Error::Normalization { mass: q_mass });
    }
    let mids = p.domain.midpoints();
    let mut total = 0.0;
    for (i, ((w, &pv), &qv)) in p
        .domain
        .weights()
        .iter()
        .zip(&p.values)
        .zip(&q.values)
        .enumerate()
    {
        if pv <= DENSITY_FLOOR {
            continue;
        }
        if qv <= DENSITY_FLOOR {
            return Err(Error::Support {
                index: i,
                x: mids[i],
            });
        }
        total += w * pv * (pv / qv).ln();
    }
    Ok(total)
}

/// Density of `Y = αX`.
///
/// On a line the values are divided by `|α|` and the entropy grows by
/// `ln|α|`. A radial density scales as a volume: `α` must be positive,
/// values are divided by `α³` and the entropy grows by `3 ln α`.
pub fn scale_transform(density: &DensityGrid, alpha: f64) -> Result<DensityGrid> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "scale factor must be finite and nonzero, got {alpha}"
        )));
    }
    let geometry = density.domain.geometry;
    let jacobian = match geometry {
        Geometry::Line => alpha.abs(),
        Geometry::Radial if alpha > 0.0 => alpha.powi(3),
        Geometry::Radial => {
            return Err(Error::Domain(format!(
                "radial densities can only be scaled by alpha > 0, got {alpha}"
            )))
        }
    };
    let mut edges: Vec<f64> = density.domain.edges.iter().map(|e| e * alpha).collect();
    let mut values: Vec<f64> = density.values.iter().map(|v| v / jacobian).collect();
    if alpha < 0.0 {
        edges.reverse();
        values.reverse();
    }
    DensityGrid::new(Domain::new(edges, geometry)?, values)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Constraint {
    /// Inverse temperature supplied directly.
    FixedBeta(f64),
    /// Mean energy to reproduce; β is solved for.
    TargetMeanEnergy(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxEntProblem {
    domain: Domain,
    potential: Vec<f64>,
    constraint: Constraint,
    reference_volume: f64,
}

impl MaxEntProblem {
    /// `potential` holds energies at the bin midpoints of `domain`. The
    /// reference volume defaults to the domain measure.
    pub fn new(domain: Domain, potential: Vec<f64>, constraint: Constraint) -> Result<Self> {
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
        match constraint {
            Constraint::FixedBeta(beta) if !beta.is_finite() => {
                return Err(Error::Domain(format!("beta must be finite, got {beta}")))
            }
            Constraint::TargetMeanEnergy(target) => {
                let (min, max) = min_max(&potential);
                if !(target > min && target < max) {
                    return Err(Error::Infeasible { target, min, max });
                }
            }
            _ => {}
        }
        let reference_volume = domain.measure();
        Ok(Self {
            domain,
            potential,
            constraint,
            reference_volume,
        })
    }

    pub fn with_reference_volume(mut self, volume: f64) -> Result<Self> {
        if !(volume.is_finite() && volume > 0.0) {
            return Err(Error::Domain(format!(
                "reference volume must be positive, got {volume}"
            )));
        }
        self.reference_volume = volume;
        Ok(self)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }

    pub fn reference_volume(&self) -> f64 {
        self.reference_volume
    }
}

/// Boltzmann density `p = e^{-βU} / Q` with its multipliers.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxEntSolution {
    pub density: DensityGrid,
    pub beta: f64,
    /// Normalization multiplier, from `Q = V e^{1+λ}`.
    pub lambda: f64,
    /// Partition value `Q = ∫ e^{-βU}`. May overflow; `log_partition` does not.
    pub partition: f64,
    pub log_partition: f64,
    pub reference_volume: f64,
    pub mean_energy: f64,
    potential: Vec<f64>,
}

impl MaxEntSolution {
    /// Largest `|ln(pV) + 1 + λ + βU|` over bins with nonzero density.
    pub fn stationarity_residual(&self) -> f64 {
        let ln_v = self.reference_volume.ln();
        self.density
            .values()
            .iter()
            .zip(&self.potential)
            .filter(|(p, _)| **p > DENSITY_FLOOR)
            .map(|(p, u)| (p.ln() + ln_v + 1.0 + self.lambda + self.beta * u).abs())
            .fold(0.0, f64::max)
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

struct Boltzmann {
    values: Vec<f64>,
    log_partition: f64,
    mean_energy: f64,
}

fn boltzmann(weights: &[f64], potential: &[f64], beta: f64) -> Boltzmann {
    let (min, max) = min_max(potential);
    // shift so every exponent is <= 0
    let shift = if beta >= 0.0 { min } else { max };
    let raw: Vec<f64> = potential
        .iter()
        .map(|u| (-beta * (u - shift)).exp())
        .collect();
    let z: f64 = weights.iter().zip(&raw).map(|(w, e)| w * e).sum();
    let values: Vec<f64> = raw.iter().map(|e| e / z).collect();
    let mean_energy = weights
        .iter()
        .zip(&values)
        .zip(potential)
        .map(|((w, p), u)| w * p * u)
        .sum();
    Boltzmann {
        values,
        log_partition: z.ln() - beta * shift,
        mean_energy,
    }
}

fn solve_beta(weights: &[f64], potential: &[f64], target: f64) -> Result<f64> {
    let (min, max) = min_max(potential);
    let scale = 1.0 / (max - min);
    let mean = |beta: f64| boltzmann(weights, potential, beta).mean_energy;

    // ⟨U⟩(β) decreases strictly, so the root sits where mean crosses target.
    let (mut lo, mut hi) = (-scale, scale);
    let mut doublings = 0;
    while mean(lo) < target {
        lo *= 2.0;
        doublings += 1;
        if doublings > BRACKET_DOUBLINGS {
            return Err(Error::Convergence(format!(
                "no beta bracket below the target mean energy {target}"
            )));
        }
    }
    doublings = 0;
    while mean(hi) > target {
        hi *= 2.0;
        doublings += 1;
        if doublings > BRACKET_DOUBLINGS {
            return Err(Error::Convergence(format!(
                "no beta bracket above the target mean energy {target}"
            )));
        }
    }

    let mut beta = 0.5 * (lo + hi);
    for _ in 0..2000 {
        beta = 0.5 * (lo + hi);
        let residual = mean(beta) - target;
        if residual.abs() <= BISECTION_TOL || beta <= lo || beta >= hi {
            break;
        }
        if residual > 0.0 {
            lo = beta;
        } else {
            hi = beta;
        }
    }
    let achieved = mean(beta);
    if (achieved - target).abs() > MEAN_ENERGY_REL_TOL * target.abs().max(max - min) {
        return Err(Error::Convergence(format!(
            "bisection stalled at beta = {beta} with mean energy {achieved} (target {target})"
        )));
    }
    Ok(beta)
}

/// Maximizes `-∫ p ln(pV)` subject to normalization and the energy constraint.
pub fn maxent_solve(problem: &MaxEntProblem) -> Result<MaxEntSolution> {
    let weights = problem.domain.weights();
    let beta = match problem.constraint {
        Constraint::FixedBeta(beta) => beta,
        Constraint::TargetMeanEnergy(target) => solve_beta(&weights, &problem.potential, target)?,
    };
    let b = boltzmann(&weights, &problem.potential, beta);
    let density = DensityGrid::new(problem.domain.clone(), b.values)?;
    Ok(MaxEntSolution {
        density,
        beta,
        lambda: b.log_partition - problem.reference_volume.ln() - 1.0,
        partition: b.log_partition.exp(),
        log_partition: b.log_partition,
        reference_volume: problem.reference_volume,
        mean_energy: b.mean_energy,
        potential: problem.potential.clone(),
    })
}
