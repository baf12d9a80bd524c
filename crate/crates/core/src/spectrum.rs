//! Single-particle levels of the 3-dimensional q-deformed oscillator.
//!
//! For `n` quanta and angular momentum `l` the energy is
//!
//! ```text
//! E(n, l) = ħω0 { [n] q^(n+1) - q (q - q^-1) / [2] · [l][l+1] }
//! ```
//!
//! with `q = e^τ`. The prefactor `q (q - q^-1) / [2]` simplifies to
//! `e^τ tanh τ`, and `[l][l+1]` is the eigenvalue of the so_q(3) Casimir.
//! The second-order expansion in `τ` and the Nilsson modified oscillator
//! (without spin-orbit term) are provided for comparison.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmath::{q_bracket, DeformationKind, DeformationParameter};

/// Deformation used for the reference level scheme (`ħω0 = 1`).
pub const DEFAULT_TAU: f64 = 0.038;
/// Shell bound that covers occupancies past 1500 at the reference deformation.
pub const DEFAULT_N_MAX: u32 = 24;

/// One `(n, l)` eigenstate. `degeneracy` counts both spin projections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    pub degeneracy: u32,
}

impl Level {
    pub fn new(n: u32, l: u32, params: &ModelParameters) -> Result<Self> {
        Ok(Self {
            n,
            l,
            energy: energy(n, l, params)?,
            degeneracy: degeneracy(l),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParameters {
    hbar_omega0: f64,
    deformation: DeformationParameter,
    n_max: u32,
}

impl ModelParameters {
    pub fn new(hbar_omega0: f64, deformation: DeformationParameter, n_max: u32) -> Result<Self> {
        if !(hbar_omega0.is_finite() && hbar_omega0 > 0.0) {
            return Err(Error::Domain(format!(
                "hbar_omega0 must be positive, got {hbar_omega0}"
            )));
        }
        if n_max < 1 {
            return Err(Error::Domain("n_max must be at least 1".into()));
        }
        Ok(Self {
            hbar_omega0,
            deformation,
            n_max,
        })
    }

    /// Real deformation `q = e^tau`, the common case.
    pub fn with_tau(hbar_omega0: f64, tau: f64, n_max: u32) -> Result<Self> {
        Self::new(hbar_omega0, DeformationParameter::real(tau)?, n_max)
    }

    pub fn hbar_omega0(&self) -> f64 {
        self.hbar_omega0
    }

    pub fn deformation(&self) -> DeformationParameter {
        self.deformation
    }

    pub fn tau(&self) -> f64 {
        self.deformation.tau()
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn with_n_max(self, n_max: u32) -> Result<Self> {
        Self::new(self.hbar_omega0, self.deformation, n_max)
    }
}

impl Default for ModelParameters {
    fn default() -> Self {
        Self {
            hbar_omega0: 1.0,
            deformation: DeformationParameter::real(DEFAULT_TAU).expect("finite tau"),
            n_max: DEFAULT_N_MAX,
        }
    }
}

/// Angular momenta carried by a shell of `n` quanta: `n, n-2, ..., 1 or 0`.
pub fn allowed_l(n: u32) -> Vec<u32> {
    (0..=n).rev().step_by(2).collect()
}

pub fn degeneracy(l: u32) -> u32 {
    2 * (2 * l + 1)
}

fn check_branching(n: u32, l: u32) -> Result<()> {
    if l > n || !(n - l).is_multiple_of(2) {
        return Err(Error::InvalidLevel { n, l });
    }
    Ok(())
}

/// `[l][l+1]`, the so_q(3) second-order Casimir on angular momentum `l`.
pub fn casimir_eigenvalue(l: u32, d: DeformationParameter) -> Result<f64> {
    let l = f64::from(l);
    Ok(q_bracket(l, d)? * q_bracket(l + 1.0, d)?)
}

/// Exact eigenvalue `E(n, l)` in units of energy set by `params`.
pub fn energy(n: u32, l: u32, params: &ModelParameters) -> Result<f64> {
    check_branching(n, l)?;
    let d = params.deformation;
    if d.kind() != DeformationKind::RealQ {
        return Err(Error::PhaseDeformation);
    }
    let hw = params.hbar_omega0;
    if d.is_undeformed() {
        return Ok(hw * f64::from(n));
    }
    let tau = d.tau();
    let vibrational = q_bracket(f64::from(n), d)? * (tau * f64::from(n + 1)).exp();
    let rotational = tau.exp() * tau.tanh() * casimir_eigenvalue(l, d)?;
    let e = hw * (vibrational - rotational);
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::Domain(format!(
            "energy of ({n}, {l}) overflows at tau = {tau}"
        )))
    }
}

/// Expansion of [`energy`] to first or second order in `τ`.
pub fn energy_taylor(n: u32, l: u32, params: &ModelParameters, order: u32) -> Result<f64> {
    check_branching(n, l)?;
    if !(1..=2).contains(&order) {
        return Err(Error::Domain(format!(
            "expansion order must be 1 or 2, got {order}"
        )));
    }
    let hw = params.hbar_omega0;
    let tau = params.tau();
    let (n, l) = (f64::from(n), f64::from(l));
    let ll = l * (l + 1.0);
    let mut e = n - tau * (ll - n * (n + 1.0));
    if order == 2 {
        e -= tau * tau * (ll - n * (n + 1.0) * (2.0 * n + 1.0) / 3.0);
    }
    Ok(hw * e)
}

/// `<L²>_N = N(N+3)/2`. `N(N+3)` is always even, so the mean is an integer.
pub fn mean_l2(shell: u32) -> u64 {
    let n = u64::from(shell);
    n * (n + 3) / 2
}

/// Diagonal energy of the Nilsson modified oscillator without spin-orbit
/// coupling, `ħω (n + 3/2) - ħω κ' (l(l+1) - <L²>_n)`.
pub fn nilsson_energy(n: u32, l: u32, kappa_prime: f64, hbar_omega: f64) -> Result<f64> {
    check_branching(n, l)?;
    if !(hbar_omega.is_finite() && hbar_omega > 0.0) {
        return Err(Error::Domain(format!(
            "hbar_omega must be positive, got {hbar_omega}"
        )));
    }
    if !kappa_prime.is_finite() {
        return Err(Error::Domain(format!(
            "kappa' must be finite, got {kappa_prime}"
        )));
    }
    let ll = f64::from(l) * f64::from(l + 1);
    let mean = mean_l2(n) as f64;
    Ok(hbar_omega * (f64::from(n) + 1.5) - hbar_omega * kappa_prime * (ll - mean))
}

/// All levels with `n <= n_max`, in enumeration order (by `n`, then
/// descending `l`).
pub fn enumerate_levels(params: &ModelParameters) -> Result<Vec<Level>> {
    (0..=params.n_max)
        .flat_map(|n| allowed_l(n).into_iter().map(move |l| (n, l)))
        .map(|(n, l)| Level::new(n, l, params))
        .collect()
}
