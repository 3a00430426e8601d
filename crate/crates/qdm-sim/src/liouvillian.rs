// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Vectorized master-equation machinery: dissipator superoperators, the full
//! generator split by lead, the SVD steady-state solver and an adaptive
//! Runge-Kutta propagator.
//!
//! Vectorization is column-stacking: entry `rho[i, j]` lives at vector index
//! `dim*j + i`, so `vec(A rho B) = (B^T ⊗ A) vec(rho)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::leads::{rates, CouplingSet, LeadParams, Side};
use crate::linalg::{cplx, herm_defect, herm_eigvals, hermitize, identity, kron, trace, zeros, Operator};
use crate::system::{build_hamiltonian, jump_operators, SystemParams};

/// Singular-value threshold separating the physical null vector from slow
/// decaying modes.
pub const NULLSPACE_TOL: f64 = 1e-8;

/// Per-step absolute error target of the adaptive integrator.
pub const STEP_TOL: f64 = 1e-9;

pub fn vectorize(rho: &Operator) -> DVector<Complex64> {
    // nalgebra stores column-major, so the raw slice is already the
    // column-stacked vector.
    DVector::from_column_slice(rho.as_slice())
}

pub fn devectorize(v: &DVector<Complex64>, dim: usize) -> Result<Operator> {
    if v.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, got: v.len() });
    }
    Ok(Operator::from_column_slice(dim, dim, v.as_slice()))
}

/// Superoperator for one (possibly mixed) pair of lowering operators
/// `(a_j, a_k)` sharing a transition frequency:
///
/// relaxation:  `g- · [a_k ρ a_j† - ½{a_j† a_k, ρ}]`
/// excitation:  `g+ · [a_j† ρ a_k - ½{a_k a_j†, ρ}]`
///
/// With `a_j = a_k` this is the standard two-sided dissipator.
fn dissipator_pair(a_j: &Operator, a_k: &Operator, g_minus: f64, g_plus: f64) -> Operator {
    let dim = a_j.nrows();
    let id = identity(dim);
    let mut m = zeros(dim * dim);
    if g_minus != 0.0 {
        let ajd_ak = a_j.adjoint() * a_k;
        let jump = kron(&a_j.conjugate(), a_k);
        let anti = kron(&id, &ajd_ak).scale(0.5) + kron(&ajd_ak.transpose(), &id).scale(0.5);
        m += (jump - anti).scale(g_minus);
    }
    if g_plus != 0.0 {
        let ak_ajd = a_k * a_j.adjoint();
        let jump = kron(&a_k.transpose(), &a_j.adjoint());
        let anti = kron(&id, &ak_ajd).scale(0.5) + kron(&ak_ajd.transpose(), &id).scale(0.5);
        m += (jump - anti).scale(g_plus);
    }
    m
}

/// Standard dissipator superoperator for a single channel with relaxation
/// rate `gamma_minus` and excitation rate `gamma_plus`. Both rates zero gives
/// the zero matrix.
pub fn dissipator(a: &Operator, gamma_minus: f64, gamma_plus: f64) -> Result<Operator> {
    if gamma_minus < 0.0 {
        return Err(Error::NegativeRate { rate: gamma_minus });
    }
    if gamma_plus < 0.0 {
        return Err(Error::NegativeRate { rate: gamma_plus });
    }
    Ok(dissipator_pair(a, a, gamma_minus, gamma_plus))
}

/// Coherent part `-i[H, ·]` as a superoperator.
pub fn commutator_superop(h: &Operator) -> Operator {
    let dim = h.nrows();
    let id = identity(dim);
    (kron(&id, h) - kron(&h.transpose(), &id)).map(|z| cplx(0.0, -1.0) * z)
}

#[derive(Debug, Clone, Copy)]
pub struct GeneratorOptions {
    /// Include `-i[H, ρ]`. On by default; switching it off freezes all
    /// coherences and leaves pure rate dynamics.
    pub include_coherent: bool,
    /// Include cross dissipators between distinct channels that share a
    /// transition frequency, with geometric-mean rates. Off by default
    /// (fully secular generator).
    pub cross_terms: bool,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        Self { include_coherent: true, cross_terms: false }
    }
}

/// The assembled generator, kept split by lead so particle currents can be
/// read off one electrode at a time.
#[derive(Debug, Clone)]
pub struct Generator {
    pub dim: usize,
    pub m_left: Operator,
    pub m_right: Operator,
    pub m_coherent: Operator,
    pub m_total: Operator,
}

impl Generator {
    pub fn lead_part(&self, side: Side) -> &Operator {
        match side {
            Side::Left => &self.m_left,
            Side::Right => &self.m_right,
        }
    }

    /// `devec(m_total · vec(rho))`: the time derivative of `rho`.
    pub fn apply(&self, rho: &Operator) -> Operator {
        devectorize(&(&self.m_total * vectorize(rho)), self.dim).expect("dimensions fixed")
    }

    /// Complex spectrum of `m_total`, computed through the 2n² real
    /// embedding `[[Re, -Im], [Im, Re]]` (its eigenvalues are the
    /// generator's eigenvalues together with their conjugates).
    pub fn spectrum(&self) -> Vec<Complex64> {
        let n = self.m_total.nrows();
        let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.m_total[(i, j)];
                emb[(i, j)] = z.re;
                emb[(i, j + n)] = -z.im;
                emb[(i + n, j)] = z.im;
                emb[(i + n, j + n)] = z.re;
            }
        }
        let mut evs: Vec<Complex64> = emb.complex_eigenvalues().iter().cloned().collect();
        evs.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
        evs
    }

    /// Smallest nonzero decay rate `|Re λ|`, ignoring the stationary mode.
    pub fn spectral_gap(&self) -> f64 {
        self.spectrum()
            .iter()
            .map(|z| -z.re)
            .filter(|&r| r > 1e-9)
            .fold(f64::INFINITY, f64::min)
    }
}

fn one_lead_superop(
    sys: &SystemParams,
    lead: &LeadParams,
    couplings: &CouplingSet,
    side: Side,
    cross_terms: bool,
) -> Result<Operator> {
    let ops = jump_operators(sys);
    let mut chan = Vec::with_capacity(ops.len());
    for j in &ops {
        let gamma = couplings.gamma(j.dot, side);
        let (gp, gm) = rates(j.freq, lead, gamma, couplings.gamma0)?;
        chan.push((j, gp, gm));
    }
    let mut m = zeros(16);
    for (j, gp, gm) in &chan {
        m += dissipator_pair(&j.op, &j.op, *gm, *gp);
    }
    if cross_terms {
        for (a, (j, jp, jm)) in chan.iter().enumerate() {
            for (b, (k, kp, km)) in chan.iter().enumerate() {
                if a == b || (j.freq - k.freq).abs() > 1e-9 * j.freq.max(k.freq) {
                    continue;
                }
                m += dissipator_pair(&j.op, &k.op, (jm * km).sqrt(), (jp * kp).sqrt());
            }
        }
    }
    Ok(m)
}

/// Assemble the full generator from system, leads (already bias-shifted)
/// and coupling strengths.
pub fn build_generator(
    sys: &SystemParams,
    left: &LeadParams,
    right: &LeadParams,
    couplings: &CouplingSet,
    options: &GeneratorOptions,
) -> Result<Generator> {
    let m_left = one_lead_superop(sys, left, couplings, Side::Left, options.cross_terms)?;
    let m_right = one_lead_superop(sys, right, couplings, Side::Right, options.cross_terms)?;
    let m_coherent = if options.include_coherent {
        commutator_superop(&build_hamiltonian(sys))
    } else {
        zeros(16)
    };
    let m_total = &m_left + &m_right + &m_coherent;
    Ok(Generator { dim: 4, m_left, m_right, m_coherent, m_total })
}

/// Unique stationary state of the generator.
///
/// The candidate is the right singular vector of the smallest singular value
/// of `m_total`; trace normalization fixes scale and phase. A second
/// singular value below [`NULLSPACE_TOL`] means the nullspace is not
/// one-dimensional and the steady state is not unique.
pub fn steady_state(gen: &Generator) -> Result<Operator> {
    let svd = gen.m_total.clone().svd(true, true);
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[i].partial_cmp(&sv[j]).unwrap());
    let second = sv[order[1]];
    if second <= NULLSPACE_TOL {
        return Err(Error::DegenerateSteadyState { second_sv: second, tol: NULLSPACE_TOL });
    }
    let vt = svd.v_t.as_ref().expect("requested");
    let null_vec: DVector<Complex64> = vt.row(order[0]).adjoint();
    let raw = devectorize(&null_vec, gen.dim)?;
    let tr = trace(&raw);
    if tr.norm() < 1e-12 {
        return Err(Error::NoConvergence(
            "null vector is traceless; no stationary density matrix".into(),
        ));
    }
    let rho = hermitize(&raw.map(|z| z / tr));
    let residual = (&gen.m_total * vectorize(&rho))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > 1e-10 {
        return Err(Error::ToleranceFailure(format!(
            "steady-state residual {residual:.3e} above 1e-10"
        )));
    }
    let min_eig = herm_eigvals(&rho)?[0];
    if min_eig < -1e-9 {
        return Err(Error::ToleranceFailure(format!(
            "steady state not PSD: min eigenvalue {min_eig:.3e}"
        )));
    }
    Ok(rho)
}

/// States sampled along a time evolution.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Operator>,
}

impl Trajectory {
    pub fn last(&self) -> &Operator {
        self.states.last().expect("trajectory is never empty")
    }

    /// Physicality check over every sampled state: trace within 1e-7 of 1,
    /// Hermiticity defect at most 1e-8, smallest eigenvalue above -1e-7.
    pub fn validate(&self) -> Result<()> {
        for (t, rho) in self.times.iter().zip(&self.states) {
            let tr_err = (trace(rho).re - 1.0).abs().max(trace(rho).im.abs());
            if tr_err > 1e-7 {
                return Err(Error::ToleranceFailure(format!(
                    "trace error {tr_err:.3e} at t = {t}"
                )));
            }
            let hd = herm_defect(rho);
            if hd > 1e-8 {
                return Err(Error::ToleranceFailure(format!(
                    "Hermiticity defect {hd:.3e} at t = {t}"
                )));
            }
            let min_eig = herm_eigvals(&hermitize(rho))?[0];
            if min_eig < -1e-7 {
                return Err(Error::ToleranceFailure(format!(
                    "negative eigenvalue {min_eig:.3e} at t = {t}"
                )));
            }
        }
        Ok(())
    }
}

/// 400 output times spanning `[0, 50/gamma0]`, log-spaced after the origin
/// so early transients and late plateaus both resolve.
pub fn default_time_grid(gamma0: f64) -> Vec<f64> {
    log_time_grid(50.0 / gamma0, 400)
}

/// `n` output times on `[0, t_max]`: zero followed by `n - 1` log-spaced
/// points from `t_max * 1e-4` up to `t_max`.
pub fn log_time_grid(t_max: f64, n: usize) -> Vec<f64> {
    assert!(t_max > 0.0 && n >= 2);
    let mut ts = Vec::with_capacity(n);
    ts.push(0.0);
    let lo = (t_max * 1e-4).ln();
    let hi = t_max.ln();
    for k in 0..n - 1 {
        let f = k as f64 / (n - 2).max(1) as f64;
        ts.push((lo + f * (hi - lo)).exp());
    }
    let len = ts.len();
    ts[len - 1] = t_max; // kill rounding on the endpoint
    ts
}

fn check_initial_state(rho0: &Operator) -> Result<()> {
    if rho0.nrows() != 4 || rho0.ncols() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho0.nrows() });
    }
    let tr = trace(rho0);
    if (tr.re - 1.0).abs() > 1e-6 || tr.im.abs() > 1e-6 {
        return Err(Error::InvalidState(format!("trace {tr} is not 1")));
    }
    if herm_defect(rho0) > 1e-8 {
        return Err(Error::InvalidState("initial state is not Hermitian".into()));
    }
    let min_eig = herm_eigvals(&hermitize(rho0))?[0];
    if min_eig < -1e-7 {
        return Err(Error::InvalidState(format!("negative population {min_eig:.3e}")));
    }
    Ok(())
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct Dopri<'a> {
    m: &'a Operator,
    t: f64,
    y: DVector<Complex64>,
    h: f64,
    steps: usize,
}

impl<'a> Dopri<'a> {
    fn new(m: &'a Operator, y0: DVector<Complex64>) -> Self {
        let m_norm = m
            .row_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max);
        let h = (0.1 / (1.0 + m_norm)).min(1e-2);
        Self { m, t: 0.0, y: y0, h, steps: 0 }
    }

    /// Advance to `target`, adapting the step to keep the per-step
    /// element-wise error below [`STEP_TOL`].
    fn advance_to(&mut self, target: f64) -> Result<()> {
        const MAX_STEPS: usize = 20_000_000;
        while self.t < target {
            if self.steps > MAX_STEPS {
                return Err(Error::NoConvergence(format!(
                    "step budget exhausted at t = {}",
                    self.t
                )));
            }
            let h = self.h.min(target - self.t);
            let mut k: Vec<DVector<Complex64>> = Vec::with_capacity(7);
            k.push(self.m * &self.y);
            for row in &A {
                let mut ys = self.y.clone();
                for (j, kj) in k.iter().enumerate() {
                    let a = row[j];
                    if a != 0.0 {
                        ys.axpy(cplx(h * a, 0.0), kj, cplx(1.0, 0.0));
                    }
                }
                k.push(self.m * ys);
            }
            let mut y5 = self.y.clone();
            let mut err_vec: DVector<Complex64> = DVector::zeros(self.y.len());
            for (j, kj) in k.iter().enumerate() {
                if B5[j] != 0.0 {
                    y5.axpy(cplx(h * B5[j], 0.0), kj, cplx(1.0, 0.0));
                }
                let d = B5[j] - B4[j];
                if d != 0.0 {
                    err_vec.axpy(cplx(h * d, 0.0), kj, cplx(1.0, 0.0));
                }
            }
            let err = err_vec.iter().map(|z| z.norm()).fold(0.0, f64::max);
            self.steps += 1;
            if err <= STEP_TOL {
                self.t += h;
                self.y = y5;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * (STEP_TOL / err).powf(0.2)).clamp(0.2, 5.0) };
                self.h = (h * grow).max(1e-14);
            } else {
                self.h = (h * (0.9 * (STEP_TOL / err).powf(0.2)).clamp(0.2, 1.0)).max(1e-14);
                if self.h < 1e-13 * target.max(1.0) {
                    return Err(Error::NoConvergence(format!(
                        "step size collapsed at t = {}",
                        self.t
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Propagate `rho0` under the generator, sampling at the given times.
/// Integration starts at t = 0; `t_grid` must be nonnegative and strictly
/// increasing.
pub fn evolve(gen: &Generator, rho0: &Operator, t_grid: &[f64]) -> Result<Trajectory> {
    check_initial_state(rho0)?;
    if t_grid.is_empty() {
        return Err(Error::InvalidParams("empty time grid".into()));
    }
    if t_grid[0] < 0.0 || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "time grid must be nonnegative and strictly increasing".into(),
        ));
    }
    let mut solver = Dopri::new(&gen.m_total, vectorize(rho0));
    let mut times = Vec::with_capacity(t_grid.len());
    let mut states = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        solver.advance_to(t)?;
        times.push(t);
        states.push(devectorize(&solver.y, gen.dim)?);
    }
    Ok(Trajectory { times, states })
}
