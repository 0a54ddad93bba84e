//! Pair correlation and entropic force when `[x, y] = iθ`.
//!
//! Everything depends on `θ` only through `τ = θ / λ_th²`. With `c = 1 + τ²`
//! the pair density becomes `V² p = 1 ± e^{-2πx²/c} / c`, which stays
//! nonzero at contact for fermions: the exchange hole fills in and the
//! fermion force vanishes at `x = 0`.

use std::f64::consts::PI;

use crate::quantum::{check_separation, Statistics, ThermalState, OVERFLOW_EXPONENT};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NcParams {
    tau: f64,
    theta: Option<f64>,
}

impl NcParams {
    pub fn from_tau(tau: f64) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self { tau, theta: None })
    }

    /// `τ = θ / λ_th²` for the given state.
    pub fn from_theta(theta: f64, state: &ThermalState) -> Result<Self> {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
        }
        let lambda = state.thermal_wavelength();
        Ok(Self {
            tau: theta / (lambda * lambda),
            theta: Some(theta),
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    /// True when `θ` is unknown or reproduces `τ` for `state` to 1e-12.
    pub fn is_consistent_with(&self, state: &ThermalState) -> bool {
        match self.theta {
            None => true,
            Some(theta) => {
                let lambda = state.thermal_wavelength();
                (theta / (lambda * lambda) - self.tau).abs() <= 1e-12 * self.tau.max(1.0)
            }
        }
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "tau must be finite and >= 0, got {tau}"
        )))
    }
}

fn check_inputs(x: f64, stats: Statistics, tau: f64) -> Result<()> {
    check_separation(x)?;
    check_tau(tau)?;
    if stats == Statistics::Fermi && tau == 0.0 && x == 0.0 {
        return Err(Error::Pole { at: 0.0 });
    }
    Ok(())
}

/// `V² p = 1 ± e^{-2πx²/(1+τ²)} / (1+τ²)`.
pub fn nc_pair_density_reduced(x: f64, stats: Statistics, tau: f64) -> Result<f64> {
    check_separation(x)?;
    check_tau(tau)?;
    let c = 1.0 + tau * tau;
    let v = 2.0 * PI * x * x / c;
    Ok(match stats {
        Statistics::Bose => 1.0 + (-v).exp() / c,
        // 1 - e^{-v}/c written without cancellation
        Statistics::Fermi => (tau * tau - (-v).exp_m1()) / c,
    })
}

/// `g = -(4π/c) x / (1 ± c e^{2πx²/c})` with `c = 1 + τ²`.
pub fn nc_entropic_force_reduced(x: f64, stats: Statistics, tau: f64) -> Result<f64> {
    check_inputs(x, stats, tau)?;
    let tau2 = tau * tau;
    let c = 1.0 + tau2;
    let v = 2.0 * PI * x * x / c;
    let prefactor = 4.0 * PI * x / c;
    if v > OVERFLOW_EXPONENT {
        return Ok(-stats.sign() * prefactor / c * (-v).exp());
    }
    Ok(match stats {
        Statistics::Bose => -prefactor / (1.0 + c * v.exp()),
        // c e^v - 1 = τ² e^v + (e^v - 1)
        Statistics::Fermi => prefactor / (tau2 * v.exp() + v.exp_m1()),
    })
}

/// Leading behaviour for `2πx²/(1+τ²) ≪ 1`.
///
/// Bosons: `-4πx / ((1+τ²)(2+τ²))`. Fermions: `(2/(1+τ²)) x / (x² + τ²/2π)`,
/// finite at contact whenever `τ > 0`.
pub fn nc_low_temp_force_reduced(x: f64, stats: Statistics, tau: f64) -> Result<f64> {
    check_inputs(x, stats, tau)?;
    let tau2 = tau * tau;
    let c = 1.0 + tau2;
    Ok(match stats {
        Statistics::Bose => -4.0 * PI * x / (c * (1.0 + c)),
        Statistics::Fermi => 2.0 / c * x / (x * x + tau2 / (2.0 * PI)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactRegime {
    /// Commutative fermions: the force blows up as `2/x`.
    Diverging,
    /// `τ > 0`: the force goes to zero at contact.
    Vanishing,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliProbe {
    pub force: f64,
    pub regime: ContactRegime,
}

/// Fermion force at a small separation and whether it diverges or vanishes
/// at contact. `x_small` must lie in `(0, 0.01]`.
pub fn pauli_violation_probe(tau: f64, x_small: f64) -> Result<PauliProbe> {
    check_tau(tau)?;
    if !(x_small > 0.0 && x_small <= 0.01) {
        return Err(Error::Domain(format!(
            "probe separation must lie in (0, 0.01], got {x_small}"
        )));
    }
    let force = nc_entropic_force_reduced(x_small, Statistics::Fermi, tau)?;
    let regime = if tau > 0.0 {
        ContactRegime::Vanishing
    } else {
        ContactRegime::Diverging
    };
    Ok(PauliProbe { force, regime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::entropic_force_reduced;
    use approx::assert_relative_eq;

    const BOSE: Statistics = Statistics::Bose;
    const FERMI: Statistics = Statistics::Fermi;

    /// `d/dx ln(V²p)` by central differences.
    fn fd_force(x: f64, stats: Statistics, tau: f64) -> f64 {
        let h = 1e-6;
        let lp = |x| nc_pair_density_reduced(x, stats, tau).unwrap().ln();
        (lp(x + h) - lp(x - h)) / (2.0 * h)
    }

    #[test]
    fn pair_density_examples() {
        assert_relative_eq!(nc_pair_density_reduced(0.0, BOSE, 1.0).unwrap(), 1.5);
        assert_relative_eq!(nc_pair_density_reduced(0.0, FERMI, 1.0).unwrap(), 0.5);
        assert_relative_eq!(
            nc_pair_density_reduced(0.5, BOSE, 0.0).unwrap(),
            1.207_879_576_350_762,
            epsilon = 1e-15
        );
        assert!(nc_pair_density_reduced(-1.0, BOSE, 0.0).is_err());
        assert!(nc_pair_density_reduced(1.0, BOSE, -0.1).is_err());
    }

    #[test]
    fn force_examples() {
        for tau in [0.0, 0.3, 2.0] {
            assert_eq!(nc_entropic_force_reduced(0.0, BOSE, tau).unwrap(), 0.0);
        }
        let b = nc_entropic_force_reduced(0.5, BOSE, 1.0).unwrap();
        assert_relative_eq!(b, -0.583_227_996_050_565, epsilon = 1e-14);
        assert_relative_eq!(b, fd_force(0.5, BOSE, 1.0), epsilon = 1e-8);
        let f = nc_entropic_force_reduced(0.1, FERMI, 1.0).unwrap();
        assert_relative_eq!(f, 0.590_619_727_894_826, epsilon = 1e-14);
        assert_relative_eq!(f, fd_force(0.1, FERMI, 1.0), epsilon = 1e-8);
        assert_eq!(
            nc_entropic_force_reduced(0.0, FERMI, 0.0),
            Err(Error::Pole { at: 0.0 })
        );
        assert_eq!(nc_entropic_force_reduced(0.0, FERMI, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn reduces_to_commutative_force() {
        for i in 0..=295 {
            let x = 0.05 + i as f64 * 0.01;
            for s in [BOSE, FERMI] {
                let nc = nc_entropic_force_reduced(x, s, 1e-6).unwrap();
                let c = entropic_force_reduced(x, s).unwrap();
                assert!(((nc - c) / c).abs() < 1e-9, "x = {x}");
                if s == BOSE || x >= 0.07 {
                    assert!((nc - c).abs() < 1e-9, "x = {x}");
                }
                assert_eq!(nc_entropic_force_reduced(x, s, 0.0).unwrap(), c);
            }
        }
    }

    #[test]
    fn small_tau_fermion_shift_matches_first_order_estimate() {
        // g_nc - g ≈ -τ²/(πx³) for fermions when 2πx² ≪ 1
        let x: f64 = 0.05;
        let shift = nc_entropic_force_reduced(x, FERMI, 1e-6).unwrap()
            - entropic_force_reduced(x, FERMI).unwrap();
        assert_relative_eq!(shift, -2.546_114_215_733e-9, max_relative = 1e-3);
        assert_relative_eq!(shift, -1e-12 / (PI * x.powi(3)), max_relative = 0.05);
    }

    #[test]
    fn low_temperature_examples() {
        assert_eq!(nc_low_temp_force_reduced(0.0, FERMI, 1.0).unwrap(), 0.0);
        let approx = nc_low_temp_force_reduced(0.1, FERMI, 1.0).unwrap();
        assert_relative_eq!(approx, 0.591_173_974_417_489_3, epsilon = 1e-14);
        let exact = nc_entropic_force_reduced(0.1, FERMI, 1.0).unwrap();
        assert!(((approx - exact) / exact).abs() < 2e-3);
        for x in [0.0, 0.01, 0.3] {
            assert_relative_eq!(
                nc_low_temp_force_reduced(x, BOSE, 0.0).unwrap(),
                -2.0 * PI * x,
                epsilon = 1e-15
            );
        }
        assert!(nc_low_temp_force_reduced(0.0, FERMI, 0.0).is_err());
    }

    #[test]
    fn pauli_probe_examples() {
        let p = pauli_violation_probe(0.5, 1e-6).unwrap();
        assert_eq!(p.regime, ContactRegime::Vanishing);
        assert!(p.force.abs() < 1e-4 && p.force > 0.0);
        assert!(p.force < 4.0 * PI * 1e-6 / 0.25);

        let p = pauli_violation_probe(0.0, 1e-6).unwrap();
        assert_eq!(p.regime, ContactRegime::Diverging);
        assert_relative_eq!(p.force, 2e6, max_relative = 1e-6);

        let p = pauli_violation_probe(1.0, 1e-3).unwrap();
        assert_eq!(p.regime, ContactRegime::Vanishing);
        assert_relative_eq!(p.force, 6.283_145_828_948_019e-3, max_relative = 1e-10);

        assert!(pauli_violation_probe(1.0, 0.0).is_err());
        assert!(pauli_violation_probe(1.0, 0.02).is_err());
    }

    #[test]
    fn params_from_theta() {
        let s = ThermalState::reduced(1.0, 2.0 * PI).unwrap();
        let p = NcParams::from_theta(0.25, &s).unwrap();
        assert_relative_eq!(p.tau(), 0.25, epsilon = 1e-14);
        assert!(p.is_consistent_with(&s));
        let hot = ThermalState::reduced(1.0, 4.0 * PI).unwrap();
        assert!(!p.is_consistent_with(&hot));
        assert!(NcParams::from_tau(-1.0).is_err());
        assert!(NcParams::from_tau(0.0).unwrap().is_consistent_with(&hot));
    }

    #[test]
    fn bose_force_softens_with_tau() {
        for x in [0.02, 0.1, 0.2] {
            let mags: Vec<f64> = [0.0, 0.25, 0.5, 1.0, 2.0]
                .iter()
                .map(|&t| nc_entropic_force_reduced(x, BOSE, t).unwrap().abs())
                .collect();
            assert!(mags.windows(2).all(|w| w[1] < w[0]), "x = {x}: {mags:?}");
        }
    }
}
