// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Electrodes: Fermi occupations, BCS quasiparticle spectrum with a small
//! imaginary (Dynes) broadening, Bogoliubov coherence factors, and the
//! golden-rule tunneling rates that feed the dissipator.
//!
//! Energies are measured from each lead's chemical potential; every rate is
//! evaluated pointwise at the transition frequency of the channel it damps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::system::Dot;

/// Which electrode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One electrode: superconducting gap, order-parameter phase, temperature,
/// Dynes broadening and (bias-shifted) chemical potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadParams {
    pub delta: f64,
    pub phase: f64,
    pub temperature: f64,
    pub dynes: f64,
    pub mu: f64,
}

impl LeadParams {
    pub fn new(delta: f64, phase: f64, temperature: f64, dynes: f64, mu: f64) -> Result<Self> {
        if delta < 0.0 || !delta.is_finite() {
            return Err(Error::InvalidParams(format!("gap must be >= 0, got {delta}")));
        }
        if temperature <= 0.0 || !temperature.is_finite() {
            return Err(Error::InvalidParams(format!(
                "temperature must be > 0, got {temperature}"
            )));
        }
        if dynes <= 0.0 || !dynes.is_finite() {
            return Err(Error::InvalidParams(format!(
                "dynes broadening must be > 0, got {dynes}"
            )));
        }
        if !phase.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidParams("phase and mu must be finite".into()));
        }
        Ok(Self { delta, phase, temperature, dynes, mu })
    }
}

/// Broadening used when a config does not set one explicitly.
pub fn default_dynes(delta: f64, gamma0: f64) -> f64 {
    1e-3 * delta.max(gamma0)
}

/// Fermi-Dirac occupation at energy `e` relative to the chemical potential.
/// Saturates cleanly to 0/1 for |e| >> T.
pub fn fermi(e: f64, temperature: f64) -> f64 {
    // exp overflows to +inf for large e/T; 1/(inf + 1) = 0, which is exact.
    1.0 / ((e / temperature).exp() + 1.0)
}

/// Dimensionless quasiparticle density of states with Dynes broadening:
/// `|Re[(e + i eta) / sqrt((e + i eta)^2 - delta^2)]|`.
///
/// Exactly 1 for a normal lead (`delta = 0`); suppressed below the gap,
/// peaked just above it, approaching 1 far outside.
pub fn bcs_dos(e: f64, lead: &LeadParams) -> f64 {
    if lead.delta == 0.0 {
        return 1.0;
    }
    let z = Complex64::new(e, lead.dynes);
    let root = (z * z - Complex64::new(lead.delta * lead.delta, 0.0)).sqrt();
    (z / root).re.abs()
}

/// Bogoliubov coherence factors for quasiparticle energy `xi` measured from
/// the chemical potential, with the gap's complex phase carried by `u`.
///
/// Returns `(u, v, energy)` with `|u|^2 + |v|^2 = 1` and
/// `energy = sqrt(xi^2 + delta^2)`.
pub fn bogoliubov_uv(xi: f64, delta: f64, phase: f64) -> Result<(Complex64, f64, f64)> {
    if xi == 0.0 && delta == 0.0 {
        return Err(Error::DegenerateInput);
    }
    let energy = xi.hypot(delta);
    let u_mag = (0.5 * (1.0 + xi / energy)).sqrt();
    let v = (0.5 * (1.0 - xi / energy)).sqrt();
    let u = Complex64::from_polar(u_mag, -phase);
    Ok((u, v, energy))
}

/// Dot-lead coupling strengths derived from a single asymmetry knob:
/// `kappa = 0` couples both dots equally to both leads, `kappa -> 1`
/// attaches dot A to the left lead and dot B to the right lead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSet {
    pub gamma0: f64,
    pub kappa: f64,
    pub gamma_al: f64,
    pub gamma_ar: f64,
    pub gamma_bl: f64,
    pub gamma_br: f64,
}

impl CouplingSet {
    pub fn new(gamma0: f64, kappa: f64) -> Result<Self> {
        if gamma0 <= 0.0 || !gamma0.is_finite() {
            return Err(Error::InvalidParams(format!("gamma0 must be > 0, got {gamma0}")));
        }
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::InvalidParams(format!(
                "kappa must lie in [0, 1], got {kappa}"
            )));
        }
        Ok(Self {
            gamma0,
            kappa,
            gamma_al: 1.0 + kappa,
            gamma_ar: 1.0 - kappa,
            gamma_bl: 1.0 - kappa,
            gamma_br: 1.0 + kappa,
        })
    }

    pub fn gamma(&self, dot: Dot, side: Side) -> f64 {
        match (dot, side) {
            (Dot::A, Side::Left) => self.gamma_al,
            (Dot::A, Side::Right) => self.gamma_ar,
            (Dot::B, Side::Left) => self.gamma_bl,
            (Dot::B, Side::Right) => self.gamma_br,
        }
    }
}

/// Excitation (`+`) and relaxation (`-`) rates for one transition channel
/// against one lead, evaluated pointwise at `e = omega - mu`:
///
/// `rate± = gamma0 · gamma² · dos(e) · f±(e)`, with `f+ = f`, `f- = 1 - f`.
pub fn rates(omega: f64, lead: &LeadParams, gamma: f64, gamma0: f64) -> Result<(f64, f64)> {
    if omega <= 0.0 {
        return Err(Error::NonPositiveFrequency { omega });
    }
    if gamma < 0.0 {
        return Err(Error::NegativeRate { rate: gamma });
    }
    if gamma0 <= 0.0 {
        return Err(Error::InvalidParams(format!("gamma0 must be > 0, got {gamma0}")));
    }
    let e = omega - lead.mu;
    let dos = bcs_dos(e, lead);
    let f = fermi(e, lead.temperature);
    let scale = gamma0 * gamma * gamma * dos;
    Ok((scale * f, scale * (1.0 - f)))
}

/// Symmetric bias drop convention: the left lead is raised by the full bias
/// voltage while the right stays at the equilibrium potential.
pub fn bias_potentials(mu0: f64, v: f64) -> (f64, f64) {
    (mu0 + v, mu0)
}
