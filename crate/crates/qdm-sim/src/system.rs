// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! The two-dot molecule itself: Hamiltonian, transition (jump) operators and
//! canonical initial states.
//!
//! Computational basis, in fixed order:
//! `|0> = |gg>`, `|1> = |ge>`, `|2> = |eg>`, `|3> = |ee>`,
//! where the first letter is dot A and the second dot B. All 4x4 matrices in
//! the crate use this ordering.

use crate::error::{Error, Result};
use crate::linalg::{cplx, zeros, Operator};

/// Which dot a transition operator belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dot {
    A,
    B,
}

/// On-site energies and interdot hopping, all in units of the bare
/// tunneling rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub eps_a: f64,
    pub eps_b: f64,
    pub t_hop: f64,
}

impl SystemParams {
    /// Requires `eps_a > eps_b > 0` (the transport window is ordered) and
    /// `|t_hop| < eps_b` so the local-basis transition operators stay
    /// meaningful.
    pub fn new(eps_a: f64, eps_b: f64, t_hop: f64) -> Result<Self> {
        if !(eps_a > eps_b && eps_b > 0.0) {
            return Err(Error::InvalidParams(format!(
                "level energies must satisfy eps_a > eps_b > 0, got ({eps_a}, {eps_b})"
            )));
        }
        if !t_hop.is_finite() || t_hop.abs() >= eps_b.min(eps_a) {
            return Err(Error::InvalidParams(format!(
                "hopping |{t_hop}| must be below min(eps_a, eps_b) = {}",
                eps_b.min(eps_a)
            )));
        }
        Ok(Self { eps_a, eps_b, t_hop })
    }
}

/// Molecule Hamiltonian: on-site splittings plus excitation-conserving
/// hopping between `|ge>` and `|eg>`.
pub fn build_hamiltonian(p: &SystemParams) -> Operator {
    let (ea, eb, t) = (p.eps_a, p.eps_b, p.t_hop);
    let mut h = zeros(4);
    h[(0, 0)] = cplx(-(ea + eb) / 2.0, 0.0);
    h[(1, 1)] = cplx((-ea + eb) / 2.0, 0.0);
    h[(2, 2)] = cplx((ea - eb) / 2.0, 0.0);
    h[(3, 3)] = cplx((ea + eb) / 2.0, 0.0);
    h[(1, 2)] = cplx(t, 0.0);
    h[(2, 1)] = cplx(t, 0.0);
    h
}

/// A lowering operator together with its transition frequency and the dot
/// it de-excites.
#[derive(Debug, Clone)]
pub struct JumpOperator {
    pub op: Operator,
    pub freq: f64,
    pub dot: Dot,
}

/// The four local de-excitation channels. Each lowers exactly one dot while
/// the other dot is a spectator, so each matrix has a single unit entry:
///
/// * dot A: `|gg><eg|` and `|ge><ee|`, both at frequency `eps_a`;
/// * dot B: `|gg><ge|` and `|eg><ee|`, both at frequency `eps_b`.
///
/// The operators are written in the local product basis even when hopping is
/// nonzero; the weak-hopping regime keeps that consistent.
pub fn jump_operators(p: &SystemParams) -> Vec<JumpOperator> {
    let mut ops = Vec::with_capacity(4);
    for (row, col, freq, dot) in [
        (0usize, 2usize, p.eps_a, Dot::A),
        (1, 3, p.eps_a, Dot::A),
        (0, 1, p.eps_b, Dot::B),
        (2, 3, p.eps_b, Dot::B),
    ] {
        let mut m = zeros(4);
        m[(row, col)] = cplx(1.0, 0.0);
        ops.push(JumpOperator { op: m, freq, dot });
    }
    ops
}

/// Canonical starting states for the two coupling layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    /// `(|ge> + i|eg>)/sqrt(2)`: maximally entangled single-excitation state.
    Bell,
    /// `|gg>`: both dots relaxed, fully separable.
    Separable,
}

pub fn initial_state(kind: InitialState) -> Operator {
    let mut rho = zeros(4);
    match kind {
        InitialState::Bell => {
            rho[(1, 1)] = cplx(0.5, 0.0);
            rho[(2, 2)] = cplx(0.5, 0.0);
            rho[(1, 2)] = cplx(0.0, -0.5);
            rho[(2, 1)] = cplx(0.0, 0.5);
        }
        InitialState::Separable => {
            rho[(0, 0)] = cplx(1.0, 0.0);
        }
    }
    rho
}
