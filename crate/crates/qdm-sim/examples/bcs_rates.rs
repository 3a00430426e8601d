// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Energy dependence of the broadened quasiparticle density of states and
//! of the resulting in/out tunneling rates for one transition channel.
//!
//! The density of states vanishes inside the pairing gap (up to the small
//! Dynes floor), peaks sharply at the gap edge and tends to 1 far outside.
//! The rates inherit that profile, weighted by the Fermi occupation: the
//! in-rate needs an occupied lead state, the out-rate an empty one, and
//! their sum is temperature-independent.

use qdm_sim::{bcs_dos, default_dynes, rates, LeadParams};

fn main() -> qdm_sim::Result<()> {
    let delta = 2.6;
    let eta = default_dynes(delta, 1.0);
    let normal = LeadParams::new(0.0, 0.0, 0.02, default_dynes(0.0, 1.0), 0.0)?;

    println!("density of states vs energy (gap {delta}, broadening {eta:.4})");
    println!("{:>7} {:>10} {:>10}", "e", "gapless", "gapped");
    for k in 0..=24 {
        let e = 0.25 * k as f64;
        let sc = LeadParams::new(delta, 0.0, 0.02, eta, 0.0)?;
        println!("{e:>7.2} {:>10.5} {:>10.5}", bcs_dos(e, &normal), bcs_dos(e, &sc));
    }
    println!();

    // one transition channel at frequency 4; sweep the lead potential
    // through the resonance window
    let omega = 4.0;
    println!("in/out rates for the channel at frequency {omega} vs lead potential");
    println!("{:>7} {:>12} {:>12} {:>12}", "mu", "rate_in", "rate_out", "sum");
    for k in 0..=16 {
        let mu = 0.5 * k as f64;
        let lead = LeadParams::new(delta, 0.0, 0.02, eta, mu)?;
        let (r_in, r_out) = rates(omega, &lead, 1.0, 1.0)?;
        println!("{mu:>7.2} {r_in:>12.6} {r_out:>12.6} {:>12.6}", r_in + r_out);
    }
    println!();
    println!("the in-rate switches on once mu crosses omega + gap edge; the sum");
    println!("traces the density of states alone");
    Ok(())
}
