// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Current-voltage staircase of the normal-lead molecule next to the
//! gap-shifted steps of a superconducting junction.
//!
//! With gapless leads the current rises in two thermally smeared steps at
//! the dot level energies (2 and 4 here) and saturates. With a pairing gap
//! `delta` on both leads the onsets move to `level + delta` and each step
//! is sharpened by the quasiparticle density-of-states peak at the edge.

use qdm_sim::{
    bias_potentials, build_generator, current, default_dynes, steady_state, CouplingSet,
    GeneratorOptions, LeadParams, Side, SystemParams,
};

fn current_at(sys: &SystemParams, coup: &CouplingSet, delta: f64, v: f64) -> qdm_sim::Result<f64> {
    let (mu_l, mu_r) = bias_potentials(0.0, v);
    let eta = default_dynes(delta, coup.gamma0);
    let left = LeadParams::new(delta, 0.0, 0.02, eta, mu_l)?;
    let right = LeadParams::new(delta, 0.0, 0.02, eta, mu_r)?;
    let gen = build_generator(sys, &left, &right, coup, &GeneratorOptions::default())?;
    current(&gen, Side::Left, &steady_state(&gen)?)
}

fn main() -> qdm_sim::Result<()> {
    let sys = SystemParams::new(4.0, 2.0, 0.1)?;
    let coup = CouplingSet::new(1.0, 0.0)?;

    println!("{:>6} {:>12} {:>12}", "bias", "I(gapless)", "I(gap 2.6)");
    for k in 0..=40 {
        let v = 0.25 * k as f64;
        let i0 = current_at(&sys, &coup, 0.0, v)?;
        let i26 = current_at(&sys, &coup, 2.6, v)?;
        println!("{v:>6.2} {i0:>12.6} {i26:>12.6}");
    }
    println!();
    println!("gapless steps at 2 and 4; gapped onsets near 4.6 and 6.6");
    Ok(())
}
