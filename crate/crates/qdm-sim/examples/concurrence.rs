// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! The entanglement monotone on hand-built two-qubit states.
//!
//! Concurrence runs from 0 (separable) to 1 (maximally entangled) and has
//! closed forms for simple families, which this example reproduces:
//! mixing the maximally entangled state with white noise by weight `p`
//! gives `C = max(0, (3p - 1) / 2)`, so entanglement survives only above
//! `p = 1/3`; damping the off-diagonal coherence of the entangled state by
//! `x` gives `C = x` directly.

use qdm_sim::linalg::{cplx, identity};
use qdm_sim::{concurrence, initial_state, InitialState};

fn main() -> qdm_sim::Result<()> {
    let bell = initial_state(InitialState::Bell);
    let empty = initial_state(InitialState::Separable);
    println!("maximally entangled: C = {:.6}", concurrence(&bell)?);
    println!("empty product state: C = {:.6}", concurrence(&empty)?);
    println!();

    println!("white-noise mixture p*Bell + (1-p)*I/4   [closed form max(0, (3p-1)/2)]");
    println!("{:>6} {:>10} {:>10}", "p", "C", "exact");
    let noise = identity(4).scale(0.25);
    for k in 0..=10 {
        let p = 0.1 * k as f64;
        let rho = bell.scale(p) + noise.scale(1.0 - p);
        let exact = (1.5 * p - 0.5).max(0.0);
        println!("{p:>6.2} {:>10.6} {exact:>10.6}", concurrence(&rho)?);
    }
    println!();

    println!("dephased entangled state, coherence scaled by x   [closed form C = x]");
    println!("{:>6} {:>10}", "x", "C");
    for k in 0..=5 {
        let x = 0.2 * k as f64;
        let mut rho = bell.clone();
        rho[(1, 2)] *= cplx(x, 0.0);
        rho[(2, 1)] *= cplx(x, 0.0);
        println!("{x:>6.2} {:>10.6}", concurrence(&rho)?);
    }
    Ok(())
}
