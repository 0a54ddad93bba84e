//! Overdamped Langevin dynamics of a pair's relative coordinate.
//!
//! The relative position `x⃗` (reduced units) moves by Euler–Maruyama,
//!
//! ```text
//! Δx⃗ = D g(|x⃗|) ê dt + √(2 D dt) ξ⃗,    D = k_B T / γ,
//! ```
//!
//! inside a spherical shell `x_min ≤ |x⃗| ≤ x_max` with reflecting walls. The
//! stationary radial law is `x² V²p(x)` on the shell, which
//! [`stationary_reference`] integrates bin by bin.
//!
//! Walkers are independent. Walker `i` draws from the ChaCha stream `i` of
//! the configured seed, so results do not depend on how walkers are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::noncommutative::{nc_entropic_force_reduced, nc_pair_density_reduced};
use crate::quantum::Statistics;
use crate::{Error, Result};

/// Every `THINNING`-th post-burn-in step is recorded.
pub const THINNING: usize = 10;

/// Largest allowed drift per step, `dt · D · max|g|`.
pub const STABILITY_LIMIT: f64 = 0.1;

/// Minimum expected count per merged bin in the chi-square test.
pub const MIN_EXPECTED_COUNT: f64 = 20.0;

const GUARD_SAMPLES: usize = 4096;
const SIMPSON_PANELS: usize = 32;

/// Interaction between the two particles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairLaw {
    /// No force; the stationary law is `x²` on the shell.
    Free,
    /// Exchange force for the given statistics; `tau = 0` is commutative space.
    Quantum { statistics: Statistics, tau: f64 },
}

impl PairLaw {
    pub fn quantum(statistics: Statistics, tau: f64) -> Self {
        PairLaw::Quantum { statistics, tau }
    }

    /// Reduced radial force `g(x)`.
    pub fn force(&self, x: f64) -> Result<f64> {
        match *self {
            PairLaw::Free => Ok(0.0),
            PairLaw::Quantum { statistics, tau } => nc_entropic_force_reduced(x, statistics, tau),
        }
    }

    /// `V² p(x)`.
    pub fn pair_density(&self, x: f64) -> Result<f64> {
        match *self {
            PairLaw::Free => Ok(1.0),
            PairLaw::Quantum { statistics, tau } => nc_pair_density_reduced(x, statistics, tau),
        }
    }

    fn is_singular_at_contact(&self) -> bool {
        matches!(
            self,
            PairLaw::Quantum {
                statistics: Statistics::Fermi,
                tau
            } if *tau == 0.0
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LangevinConfig {
    pub friction: f64,
    /// Thermal energy `k_B T`; with `friction` it fixes `D = k_B T / γ`.
    pub kt: f64,
    pub dt: f64,
    pub n_steps: usize,
    pub burn_in: usize,
    pub n_walkers: usize,
    pub seed: u64,
    pub x_min: f64,
    pub x_max: f64,
    pub bins: usize,
}

impl Default for LangevinConfig {
    fn default() -> Self {
        Self {
            friction: 1.0,
            kt: 1.0,
            dt: 0.01,
            n_steps: 600,
            burn_in: 400,
            n_walkers: 10_000,
            seed: 42,
            x_min: 0.0,
            x_max: 3.0,
            bins: 30,
        }
    }
}

impl LangevinConfig {
    /// Einstein relation `D = k_B T / γ`.
    pub fn diffusion(&self) -> f64 {
        self.kt / self.friction
    }

    /// Retained samples per walker.
    pub fn samples_per_walker(&self) -> usize {
        self.n_steps.saturating_sub(self.burn_in) / THINNING
    }

    pub fn total_samples(&self) -> usize {
        self.n_walkers * self.samples_per_walker()
    }

    /// Largest `|g|` over the shell: a dense scan plus the endpoints, which
    /// carry the Neumann `2/x_min` bound for commutative fermions.
    pub fn max_force(&self, law: &PairLaw) -> Result<f64> {
        let span = self.x_max - self.x_min;
        (0..=GUARD_SAMPLES)
            .map(|i| self.x_min + span * i as f64 / GUARD_SAMPLES as f64)
            .try_fold(0.0f64, |acc, x| Ok(acc.max(law.force(x)?.abs())))
    }

    /// Largest `dt` that passes the stability guard (exclusive bound).
    pub fn max_stable_dt(&self, law: &PairLaw) -> Result<f64> {
        let f = self.max_force(law)?;
        Ok(if f == 0.0 {
            f64::INFINITY
        } else {
            STABILITY_LIMIT / (self.diffusion() * f)
        })
    }

    pub fn validate(&self, law: &PairLaw) -> Result<()> {
        let positive = [
            ("friction", self.friction),
            ("kt", self.kt),
            ("dt", self.dt),
            ("x_max", self.x_max),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.x_min.is_finite() && self.x_min >= 0.0 && self.x_min < self.x_max) {
            return Err(Error::Config(format!(
                "need 0 <= x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_walkers == 0 || self.bins == 0 {
            return Err(Error::Config("walkers and bins must be positive".into()));
        }
        if self.burn_in >= self.n_steps {
            return Err(Error::Config(format!(
                "burn-in ({}) must be shorter than the run ({} steps)",
                self.burn_in, self.n_steps
            )));
        }
        if self.samples_per_walker() == 0 {
            return Err(Error::Config(format!(
                "fewer than {THINNING} steps after burn-in; nothing would be recorded"
            )));
        }
        if let PairLaw::Quantum { tau, .. } = law {
            if !(tau.is_finite() && *tau >= 0.0) {
                return Err(Error::Config(format!("tau must be >= 0, got {tau}")));
            }
        }
        if law.is_singular_at_contact() && self.x_min <= 0.0 {
            return Err(Error::Config(
                "commutative fermions need an inner cutoff x_min > 0".into(),
            ));
        }
        let limit = self.max_stable_dt(law)?;
        if self.dt >= limit {
            return Err(Error::Config(format!(
                "dt = {} violates the stability guard; use dt < {limit:.6e}",
                self.dt
            )));
        }
        Ok(())
    }
}

/// Radial histogram of recorded separations with its analytic reference.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationHistogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    empirical: Vec<f64>,
    reference: Vec<f64>,
}

impl SeparationHistogram {
    /// `reference` is a density on the same bins; it is renormalized.
    pub fn new(edges: Vec<f64>, counts: Vec<u64>, reference: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 || counts.len() + 1 != edges.len() || reference.len() != counts.len() {
            return Err(Error::Usage(
                "histogram edges, counts and reference disagree".into(),
            ));
        }
        if edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Usage("histogram edges must increase".into()));
        }
        let widths: Vec<f64> = edges.windows(2).map(|w| w[1] - w[0]).collect();
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InsufficientData {
                min_expected: MIN_EXPECTED_COUNT,
            });
        }
        let empirical = counts
            .iter()
            .zip(&widths)
            .map(|(&c, w)| c as f64 / total as f64 / w)
            .collect();
        let ref_mass: f64 = reference.iter().zip(&widths).map(|(r, w)| r * w).sum();
        if !(ref_mass.is_finite() && ref_mass > 0.0) || reference.iter().any(|r| *r < 0.0) {
            return Err(Error::Domain(
                "reference density must be nonnegative with positive mass".into(),
            ));
        }
        let reference = reference.iter().map(|r| r / ref_mass).collect();
        Ok(Self {
            edges,
            counts,
            empirical,
            reference,
        })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn empirical(&self) -> &[f64] {
        &self.empirical
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Mean recorded separation, using bin midpoints.
    pub fn mean_separation(&self) -> f64 {
        let total = self.total() as f64;
        self.edges
            .windows(2)
            .zip(&self.counts)
            .map(|(w, &c)| 0.5 * (w[0] + w[1]) * c as f64)
            .sum::<f64>()
            / total
    }

    /// Empirical probability below `x`, counting whole bins only.
    pub fn mass_below(&self, x: f64) -> f64 {
        self.edges
            .windows(2)
            .zip(&self.counts)
            .filter(|(w, _)| w[1] <= x + 1e-12)
            .map(|(_, &c)| c as f64)
            .sum::<f64>()
            / self.total() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistogramComparison {
    pub tv_distance: f64,
    pub chi_square: f64,
    pub dof: usize,
}

/// Simpson integral of `x² V²p(x)` over each bin, normalized to a density.
pub fn stationary_reference(law: &PairLaw, edges: &[f64]) -> Result<Vec<f64>> {
    if edges.len() < 2 {
        return Err(Error::Usage("the reference needs at least one bin".into()));
    }
    if edges.windows(2).any(|w| w[1] <= w[0]) || edges[0] < 0.0 {
        return Err(Error::Usage(
            "reference edges must be increasing and >= 0".into(),
        ));
    }
    let integrand = |x: f64| -> Result<f64> { Ok(x * x * law.pair_density(x)?) };
    let mut mass = Vec::with_capacity(edges.len() - 1);
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = (b - a) / SIMPSON_PANELS as f64;
        let mut sum = integrand(a)? + integrand(b)?;
        for k in 1..SIMPSON_PANELS {
            let coeff = if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += coeff * integrand(a + h * k as f64)?;
        }
        mass.push(sum * h / 3.0);
    }
    let total: f64 = mass.iter().sum();
    if !total.is_finite() || total <= 0.0 {
        return Err(Error::Domain(
            "reference density has no mass on these bins".into(),
        ));
    }
    Ok(mass
        .iter()
        .zip(edges.windows(2))
        .map(|(m, w)| m / total / (w[1] - w[0]))
        .collect())
}

/// Folds a radius back into `[lo, hi]` by repeated mirror reflection.
fn reflect(r: f64, lo: f64, hi: f64) -> f64 {
    if (lo..=hi).contains(&r) {
        return r;
    }
    let width = hi - lo;
    let t = (r - lo).rem_euclid(2.0 * width);
    let folded = if t > width { 2.0 * width - t } else { t };
    (lo + folded).clamp(lo, hi)
}

fn run_walker(law: &PairLaw, config: &LangevinConfig, walker: usize) -> Result<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(walker as u64);

    let (lo, hi) = (config.x_min, config.x_max);
    let d = config.diffusion();
    let drift = d * config.dt;
    let noise = (2.0 * d * config.dt).sqrt();
    let bin_width = (hi - lo) / config.bins as f64;

    // uniform in the shell volume
    let u: f64 = rng.random();
    let mut r = (lo.powi(3) + u * (hi.powi(3) - lo.powi(3))).cbrt();
    let mut pos = random_direction(&mut rng);
    pos.iter_mut().for_each(|c| *c *= r);

    let mut counts = vec![0u64; config.bins];
    for step in 0..config.n_steps {
        let g = if r > 0.0 {
            law.force(r).unwrap_or(f64::NAN)
        } else {
            0.0
        };
        let scale = if r > 0.0 { drift * g / r } else { 0.0 };
        for c in pos.iter_mut() {
            let xi: f64 = rng.sample(StandardNormal);
            *c += scale * *c + noise * xi;
        }
        let raw = norm(&pos);
        if !raw.is_finite() {
            return Err(Error::Numeric { walker, step });
        }
        r = reflect(raw, lo, hi);
        if r != raw {
            if raw > 0.0 {
                pos.iter_mut().for_each(|c| *c *= r / raw);
            } else {
                pos = [0.0, 0.0, r];
            }
        }
        if step >= config.burn_in && (step - config.burn_in + 1).is_multiple_of(THINNING) {
            let bin = (((r - lo) / bin_width) as usize).min(config.bins - 1);
            counts[bin] += 1;
        }
    }
    Ok(counts)
}

fn norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn random_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = norm(&v);
        if n > 1e-12 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Runs all walkers and bins the recorded separations.
pub fn simulate_pair(law: &PairLaw, config: &LangevinConfig) -> Result<SeparationHistogram> {
    config.validate(law)?;
    let per_walker: Vec<Result<Vec<u64>>> = (0..config.n_walkers)
        .into_par_iter()
        .map(|w| run_walker(law, config, w))
        .collect();

    let mut counts = vec![0u64; config.bins];
    for walker in per_walker {
        for (total, c) in counts.iter_mut().zip(walker?) {
            *total += c;
        }
    }
    let h = (config.x_max - config.x_min) / config.bins as f64;
    let mut edges: Vec<f64> = (0..=config.bins)
        .map(|i| config.x_min + h * i as f64)
        .collect();
    edges[config.bins] = config.x_max;
    let reference = stationary_reference(law, &edges)?;
    SeparationHistogram::new(edges, counts, reference)
}

/// Total-variation distance and Pearson chi-square between the empirical
/// and reference histograms. Adjacent bins are merged left to right until
/// each group expects at least [`MIN_EXPECTED_COUNT`] counts; a short tail
/// joins the last group.
pub fn compare_histogram(hist: &SeparationHistogram) -> Result<HistogramComparison> {
    let widths = hist.widths();
    let tv_distance = (0.5
        * hist
            .empirical
            .iter()
            .zip(&hist.reference)
            .zip(&widths)
            .map(|((e, r), w)| (e - r).abs() * w)
            .sum::<f64>())
    .min(1.0);

    let total = hist.total() as f64;
    let mut groups: Vec<(f64, f64)> = Vec::new();
    let (mut observed, mut expected) = (0.0, 0.0);
    for ((&c, r), w) in hist.counts.iter().zip(&hist.reference).zip(&widths) {
        observed += c as f64;
        expected += total * r * w;
        if expected >= MIN_EXPECTED_COUNT {
            groups.push((observed, expected));
            observed = 0.0;
            expected = 0.0;
        }
    }
    match groups.last_mut() {
        Some(last) => {
            last.0 += observed;
            last.1 += expected;
        }
        None => {
            return Err(Error::InsufficientData {
                min_expected: MIN_EXPECTED_COUNT,
            })
        }
    }
    let chi_square = groups.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    Ok(HistogramComparison {
        tv_distance,
        chi_square,
        dof: groups.len() - 1,
    })
}
