// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution at fixed bias: decay of an entangled state for the
//! symmetric molecule, then buildup from an empty state for the asymmetric
//! one, each for several pairing gaps.
//!
//! Larger gaps concentrate quasiparticle weight at the gap edge, which
//! speeds up both the decay and the buildup at a bias just above the
//! shifted resonances.

use qdm_sim::{
    bias_potentials, build_generator, concurrence, default_dynes, evolve, initial_state,
    log_time_grid, CouplingSet, GeneratorOptions, InitialState, LeadParams, SystemParams,
    Trajectory,
};

fn trajectory(
    deltas: (f64, f64),
    kappa: f64,
    v: f64,
    start: InitialState,
    t_grid: &[f64],
) -> qdm_sim::Result<Trajectory> {
    let sys = SystemParams::new(4.0, 2.0, 0.1)?;
    let coup = CouplingSet::new(1.0, kappa)?;
    let (mu_l, mu_r) = bias_potentials(0.0, v);
    let left = LeadParams::new(deltas.0, 0.0, 0.02, default_dynes(deltas.0, coup.gamma0), mu_l)?;
    let right = LeadParams::new(deltas.1, 0.0, 0.02, default_dynes(deltas.1, coup.gamma0), mu_r)?;
    let gen = build_generator(&sys, &left, &right, &coup, &GeneratorOptions::default())?;
    evolve(&gen, &initial_state(start), t_grid)
}

fn print_block(
    title: &str,
    labels: [&str; 3],
    runs: [&Trajectory; 3],
) -> qdm_sim::Result<()> {
    println!("{title}");
    println!("{:>10} {:>10} {:>10} {:>10}", "t", labels[0], labels[1], labels[2]);
    for (k, t) in runs[0].times.iter().enumerate() {
        let cs: Vec<f64> = runs
            .iter()
            .map(|traj| concurrence(&traj.states[k]))
            .collect::<qdm_sim::Result<_>>()?;
        println!("{t:>10.5} {:>10.5} {:>10.5} {:>10.5}", cs[0], cs[1], cs[2]);
    }
    println!();
    Ok(())
}

fn main() -> qdm_sim::Result<()> {
    let grid = log_time_grid(0.5, 25);
    let decay: Vec<Trajectory> = [(0.0, 0.0), (1.6, 1.6), (3.0, 3.0)]
        .iter()
        .map(|&d| trajectory(d, 0.0, 7.1, InitialState::Bell, &grid))
        .collect::<qdm_sim::Result<_>>()?;
    print_block(
        "entangled start, symmetric couplings, bias 7.1: decay",
        ["gap 0", "gap 1.6", "gap 3.0"],
        [&decay[0], &decay[1], &decay[2]],
    )?;

    let grid = log_time_grid(5.0, 25);
    let rise: Vec<Trajectory> = [(0.0, 0.0), (2.5, 3.5), (3.0, 6.0)]
        .iter()
        .map(|&d| trajectory(d, 0.95, 8.2, InitialState::Separable, &grid))
        .collect::<qdm_sim::Result<_>>()?;
    print_block(
        "empty start, kappa 0.95, bias 8.2: buildup",
        ["normal", "2.5|3.5", "3.0|6.0"],
        [&rise[0], &rise[1], &rise[2]],
    )?;
    Ok(())
}
