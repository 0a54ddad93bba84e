//! Exchange-statistics quantities for a free pair of identical particles.
//!
//! The pair density of two free bosons (+) or fermions (-) in a volume `V` is
//! `V² p(r) = 1 ± exp(-2π r² / λ_th²)`. Writing it as a Boltzmann factor
//! defines the statistical potential `β v_s = -ln(1 ± e^{-2πx²})`, and the
//! entropic force is `-∇v_s`.
//!
//! Every pair function here works in reduced units, `x = r / λ_th` and
//! `g = λ_th β F·ê_r`. [`entropic_force_physical`] restores units.

use std::f64::consts::{LN_2, PI};

use crate::{Error, Result};

/// Above this exponent `1 ± e^u` is replaced by its leading term.
pub(crate) const OVERFLOW_EXPONENT: f64 = 700.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    /// `+1` for bosons, `-1` for fermions.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Bose => 1.0,
            Statistics::Fermi => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Bose => "bose",
            Statistics::Fermi => "fermi",
        }
    }
}

/// Particle mass and temperature, with `ħ` and `k_B` (both 1 in reduced mode).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalState {
    mass: f64,
    temperature: f64,
    hbar: f64,
    k_b: f64,
}

impl ThermalState {
    pub fn new(mass: f64, temperature: f64, hbar: f64, k_b: f64) -> Result<Self> {
        for (name, v) in [
            ("mass", mass),
            ("temperature", temperature),
            ("hbar", hbar),
            ("k_B", k_b),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            mass,
            temperature,
            hbar,
            k_b,
        })
    }

    /// `ħ = k_B = 1`.
    pub fn reduced(mass: f64, temperature: f64) -> Result<Self> {
        Self::new(mass, temperature, 1.0, 1.0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    pub fn kt(&self) -> f64 {
        self.k_b * self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.kt()
    }

    pub fn thermal_wavelength(&self) -> f64 {
        thermal_wavelength(self)
    }
}

/// `λ_th = ħ √(2πβ/m)`.
pub fn thermal_wavelength(state: &ThermalState) -> f64 {
    state.hbar * (2.0 * PI * state.beta() / state.mass).sqrt()
}

/// Freely jointed chain of `monomers` rigid links of length `monomer_length`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolymerChain {
    monomers: u32,
    monomer_length: f64,
}

impl PolymerChain {
    pub fn new(monomers: u32, monomer_length: f64) -> Result<Self> {
        if monomers == 0 {
            return Err(Error::Domain("a chain needs at least one monomer".into()));
        }
        if !(monomer_length.is_finite() && monomer_length > 0.0) {
            return Err(Error::Domain(format!(
                "monomer length must be positive, got {monomer_length}"
            )));
        }
        Ok(Self {
            monomers,
            monomer_length,
        })
    }

    pub fn monomers(&self) -> u32 {
        self.monomers
    }

    pub fn monomer_length(&self) -> f64 {
        self.monomer_length
    }
}

pub(crate) fn check_separation(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "separation must be finite and >= 0, got {x}"
        )))
    }
}

fn check_fermi_contact(x: f64, stats: Statistics) -> Result<()> {
    check_separation(x)?;
    if stats == Statistics::Fermi && x == 0.0 {
        return Err(Error::Pole { at: 0.0 });
    }
    Ok(())
}

/// `V² p = 1 ± e^{-2πx²}`.
pub fn pair_density_reduced(x: f64, stats: Statistics) -> Result<f64> {
    check_separation(x)?;
    let u = 2.0 * PI * x * x;
    Ok(match stats {
        Statistics::Bose => 1.0 + (-u).exp(),
        Statistics::Fermi => -(-u).exp_m1(),
    })
}

/// `β v_s = -ln(1 ± e^{-2πx²})`.
pub fn statistical_potential_reduced(x: f64, stats: Statistics) -> Result<f64> {
    check_fermi_contact(x, stats)?;
    let u = 2.0 * PI * x * x;
    Ok(match stats {
        Statistics::Bose => -(-u).exp().ln_1p(),
        // ln(1 - e^{-u}) without cancellation on either side of ln 2
        Statistics::Fermi if u < LN_2 => -(-(-u).exp_m1()).ln(),
        Statistics::Fermi => -(-(-u).exp()).ln_1p(),
    })
}

/// `g = -4πx / (1 ± e^{2πx²})`: attractive for bosons, repulsive for fermions.
pub fn entropic_force_reduced(x: f64, stats: Statistics) -> Result<f64> {
    check_fermi_contact(x, stats)?;
    let u = 2.0 * PI * x * x;
    if u > OVERFLOW_EXPONENT {
        return Ok(-stats.sign() * 4.0 * PI * x * (-u).exp());
    }
    Ok(match stats {
        Statistics::Bose => -4.0 * PI * x / (1.0 + u.exp()),
        Statistics::Fermi => 4.0 * PI * x / u.exp_m1(),
    })
}

/// Radial entropic force in physical units, `(k_B T / λ_th) g(r / λ_th)`.
pub fn entropic_force_physical(r: f64, state: &ThermalState, stats: Statistics) -> Result<f64> {
    check_separation(r)?;
    let lambda = thermal_wavelength(state);
    Ok(state.kt() / lambda * entropic_force_reduced(r / lambda, stats)?)
}

/// Leading behaviour for `2πx² ≪ 1`: Hooke `-2πx` for bosons, Neumann `2/x`
/// for fermions.
pub fn low_temp_force_reduced(x: f64, stats: Statistics) -> Result<f64> {
    check_fermi_contact(x, stats)?;
    Ok(match stats {
        Statistics::Bose => -2.0 * PI * x,
        Statistics::Fermi => 2.0 / x,
    })
}

/// Spring constant `a = 2π k_B T / λ_th²` of the low-temperature boson force.
pub fn hooke_constant(state: &ThermalState) -> f64 {
    let lambda = thermal_wavelength(state);
    2.0 * PI * state.kt() / (lambda * lambda)
}

/// Large-separation expansion of [`entropic_force_reduced`] truncated to
/// `n_terms` powers of `e^{-2πx²}`.
///
/// Bosons: `-4πx Σ (-1)^{k-1} e^{-2πkx²}`; fermions: `+4πx Σ e^{-2πkx²}`.
pub fn classical_series_force_reduced(x: f64, stats: Statistics, n_terms: usize) -> Result<f64> {
    Ok(classical_series_terms(x, stats, n_terms)?.iter().sum())
}

/// The individual terms summed by [`classical_series_force_reduced`]:
/// alternating in sign for bosons, all positive for fermions.
pub fn classical_series_terms(x: f64, stats: Statistics, n_terms: usize) -> Result<Vec<f64>> {
    if n_terms == 0 {
        return Err(Error::Usage("the series needs at least one term".into()));
    }
    check_separation(x)?;
    if x == 0.0 {
        return Err(Error::Domain("the classical expansion needs x > 0".into()));
    }
    let q = (-2.0 * PI * x * x).exp();
    let ratio = -stats.sign() * q;
    let mut term = -stats.sign() * 4.0 * PI * x * q;
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        terms.push(term);
        term *= ratio;
    }
    Ok(terms)
}

/// Hookean force `-3 k_B T r / (N l²)` on the free end of a polymer chain.
pub fn polymer_force(r: f64, chain: &PolymerChain, kt: f64) -> Result<f64> {
    check_separation(r)?;
    let n = f64::from(chain.monomers);
    Ok(-3.0 * kt * r / (n * chain.monomer_length * chain.monomer_length))
}

/// Neumann's radial force `2 k_B T / r`.
pub fn neumann_force(r: f64, kt: f64) -> Result<f64> {
    check_separation(r)?;
    if r == 0.0 {
        return Err(Error::Pole { at: 0.0 });
    }
    Ok(2.0 * kt / r)
}
