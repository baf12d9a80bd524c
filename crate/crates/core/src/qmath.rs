//! q-numbers (q-brackets) for real and phase deformations.
//!
//! The bracket `[x] = (q^x - q^-x) / (q - q^-1)` is evaluated through its
//! closed hyperbolic or trigonometric form:
//!
//! * real deformation, `q = e^τ`: `[x] = sinh(τx) / sinh(τ)`
//! * phase deformation, `q = e^{iτ}`: `[x] = sin(τx) / sin(τ)`
//!
//! At `τ = 0` both reduce to `[x] = x`, which is returned exactly.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// How the deformation exponent maps onto `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeformationKind {
    /// `q = e^τ`
    RealQ,
    /// `q = e^{iτ}`
    PhaseQ,
}

/// Deformation exponent `τ` together with its interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformationParameter {
    tau: f64,
    kind: DeformationKind,
}

impl DeformationParameter {
    pub fn new(tau: f64, kind: DeformationKind) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::Domain(format!(
                "deformation tau must be finite, got {tau}"
            )));
        }
        if kind == DeformationKind::PhaseQ && tau != 0.0 {
            let k = (tau / PI).round();
            if k != 0.0 && (tau - k * PI).abs() <= 1e-12 * tau.abs().max(1.0) {
                return Err(Error::SingularParameter { tau });
            }
        }
        Ok(Self { tau, kind })
    }

    /// Real deformation `q = e^τ`.
    pub fn real(tau: f64) -> Result<Self> {
        Self::new(tau, DeformationKind::RealQ)
    }

    /// Phase deformation `q = e^{iτ}`.
    pub fn phase(tau: f64) -> Result<Self> {
        Self::new(tau, DeformationKind::PhaseQ)
    }

    /// The undeformed case, `q = 1`.
    pub fn undeformed() -> Self {
        Self {
            tau: 0.0,
            kind: DeformationKind::RealQ,
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn kind(&self) -> DeformationKind {
        self.kind
    }

    pub fn is_undeformed(&self) -> bool {
        self.tau == 0.0
    }
}

/// Evaluates the q-number `[x]`.
pub fn q_bracket(x: f64, d: DeformationParameter) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "q-bracket argument must be finite, got {x}"
        )));
    }
    let tau = d.tau;
    if tau == 0.0 {
        return Ok(x);
    }
    let value = match d.kind {
        DeformationKind::RealQ => (tau * x).sinh() / tau.sinh(),
        DeformationKind::PhaseQ => (tau * x).sin() / tau.sin(),
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!(
            "q-bracket [{x}] overflows at tau = {tau}"
        )))
    }
}
