// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical readouts: particle currents per lead, occupation probabilities,
//! purity and two-qubit concurrence.

use crate::error::{Error, Result};
use crate::leads::Side;
use crate::linalg::{cplx, herm_defect, herm_eigvals, hermitize, trace, zeros, Operator};
use crate::liouvillian::{devectorize, vectorize, Generator};

/// Total occupation-number operator `diag(0, 1, 1, 2)` in the product basis
/// (gg, ge, eg, ee).
pub fn number_operator() -> Operator {
    let mut n = zeros(4);
    n[(1, 1)] = cplx(1.0, 0.0);
    n[(2, 2)] = cplx(1.0, 0.0);
    n[(3, 3)] = cplx(2.0, 0.0);
    n
}

/// Particle current through one lead: the occupation flow generated by that
/// lead's dissipators alone, signed so the left current is positive when
/// electrons enter the molecule from the left and the right current is
/// positive when they leave into the right lead.
pub fn current(gen: &Generator, side: Side, rho: &Operator) -> Result<f64> {
    let sign = match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    };
    let drho = devectorize(&(gen.lead_part(side) * vectorize(rho)), gen.dim)?;
    let flow = trace(&(number_operator() * drho));
    Ok(sign * flow.re)
}

/// Diagonal of the density matrix: occupation probabilities of
/// (gg, ge, eg, ee).
pub fn populations(rho: &Operator) -> [f64; 4] {
    [rho[(0, 0)].re, rho[(1, 1)].re, rho[(2, 2)].re, rho[(3, 3)].re]
}

pub fn purity(rho: &Operator) -> f64 {
    trace(&(rho * rho)).re
}

/// `sigma_y ⊗ sigma_y`: antidiagonal (-1, 1, 1, -1) in the product basis.
fn spin_flip() -> Operator {
    let mut m = zeros(4);
    m[(0, 3)] = cplx(-1.0, 0.0);
    m[(1, 2)] = cplx(1.0, 0.0);
    m[(2, 1)] = cplx(1.0, 0.0);
    m[(3, 0)] = cplx(-1.0, 0.0);
    m
}

fn check_state(rho: &Operator) -> Result<()> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.nrows() });
    }
    let tr = trace(rho);
    if (tr.re - 1.0).abs() > 1e-6 || tr.im.abs() > 1e-6 {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    if herm_defect(rho) > 1e-6 {
        return Err(Error::InvalidState("state is not Hermitian".into()));
    }
    Ok(())
}

/// Two-qubit concurrence.
///
/// Uses the eigenvalues of `rho · rho~` with `rho~ = Y rho* Y`,
/// `Y = sigma_y ⊗ sigma_y`: the concurrence is
/// `max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))` with the `l_i`
/// sorted descending, clamped to [0, 1]. The product matrix is similar to
/// the Hermitian `sqrt(rho) rho~ sqrt(rho)`, so its spectrum is real and
/// nonnegative up to roundoff, which is clamped away.
pub fn concurrence(rho: &Operator) -> Result<f64> {
    check_state(rho)?;
    let rho_h = hermitize(rho);
    let y = spin_flip();
    // rho·rho~ is non-Hermitian but isospectral to the PSD matrix
    // sqrt(rho)·rho~·sqrt(rho); take eigenvalues of the Hermitian form.
    let sqrt_rho = crate::linalg::psd_sqrt(&rho_h)?;
    let herm_form = hermitize(&(&sqrt_rho * &y * rho_h.conjugate() * &y * &sqrt_rho));
    let mut evs = herm_eigvals(&herm_form)?;
    for e in evs.iter_mut() {
        if *e < 0.0 {
            if *e < -1e-8 {
                return Err(Error::NegativeSpectrum { eigenvalue: *e });
            }
            *e = 0.0;
        }
    }
    evs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let c = evs[0].sqrt() - evs[1].sqrt() - evs[2].sqrt() - evs[3].sqrt();
    Ok(c.clamp(0.0, 1.0))
}
