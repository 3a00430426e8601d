// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Sweep and dynamics runners plus their CSV / manifest artifacts.
//!
//! Sweeps report the stationary current at every bias point. The
//! entanglement column differs by mode: `iv_sweep` and the current column
//! always read the stationary state, while `cv_sweep` reads concurrence and
//! populations from the state evolved out of the configured initial state
//! for `time.t_max` — a stationary state is independent of where the system
//! started, so an initial-state-resolved entanglement-vs-bias curve is only
//! defined at a finite observation horizon.
//!
//! Per-point solver failures mark the row `failed:<code>` and never abort
//! the sweep. All runners are deterministic: rows are emitted in sorted
//! grid order with fixed-precision formatting, so identical configs produce
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::{Mode, RunConfig, VGrid};
use crate::error::{Error, Result};
use crate::leads::Side;
use crate::linalg::{herm_eigvals, hermitize, trace};
use crate::liouvillian::{build_generator, evolve, steady_state, Generator, Trajectory};
use crate::observables::{concurrence, current, populations};
use crate::system::initial_state;

/// Bias voltages at which tunneling channels open: each level plus each
/// gap edge, and the bare levels, clipped to the sweep window.
pub fn resonance_voltages(cfg: &RunConfig, v_min: f64, v_max: f64) -> Vec<f64> {
    let (ea, eb) = (cfg.sys.eps_a, cfg.sys.eps_b);
    let (dl, dr) = (cfg.lead_left.delta, cfg.lead_right.delta);
    let mut rs: Vec<f64> = [ea + dl, eb + dr, ea + dr, eb + dl, ea, eb]
        .into_iter()
        .filter(|v| (v_min..=v_max).contains(v))
        .collect();
    rs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    rs.dedup();
    rs
}

/// Uniform grid plus 41 extra points per resonance (the resonance itself
/// and 20 geometrically shrinking offsets per side, from 0.2 down to 2e-4),
/// sorted and deduplicated.
pub fn refine_grid(grid: &VGrid, resonances: &[f64]) -> Vec<f64> {
    let n = grid.points;
    let mut vs: Vec<f64> = (0..n)
        .map(|i| grid.v_min + (grid.v_max - grid.v_min) * i as f64 / (n - 1) as f64)
        .collect();
    let ratio = 1e-3f64.powf(1.0 / 19.0);
    for &r in resonances {
        if (grid.v_min..=grid.v_max).contains(&r) {
            vs.push(r);
        }
        let mut off = 0.2;
        for _ in 0..20 {
            for v in [r - off, r + off] {
                if (grid.v_min..=grid.v_max).contains(&v) {
                    vs.push(v);
                }
            }
            off *= ratio;
        }
    }
    vs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // tolerance dedup: a base-grid point can land within float rounding of a
    // resonance point; the legitimate minimum spacing is the finest geometric
    // offset gap (~9e-5), orders above this threshold
    vs.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    vs
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    Failed(&'static str),
}

impl RowStatus {
    pub fn as_str(&self) -> String {
        match self {
            RowStatus::Ok => "ok".into(),
            RowStatus::Failed(code) => format!("failed:{code}"),
        }
    }
}

/// One bias point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub v: f64,
    pub current: f64,
    pub concurrence: f64,
    pub populations: [f64; 4],
    pub status: RowStatus,
}

impl SweepRow {
    fn failed(v: f64, e: &Error) -> Self {
        SweepRow {
            v,
            current: f64::NAN,
            concurrence: f64::NAN,
            populations: [f64::NAN; 4],
            status: RowStatus::Failed(e.code()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failed_points: usize,
}

fn generator_at(cfg: &RunConfig, v: f64) -> Result<Generator> {
    let (left, right) = cfg.leads_at(v)?;
    build_generator(&cfg.sys, &left, &right, &cfg.couplings, &cfg.options())
}

fn sweep_voltages(cfg: &RunConfig) -> Vec<f64> {
    if cfg.v_grid.refine {
        let rs = resonance_voltages(cfg, cfg.v_grid.v_min, cfg.v_grid.v_max);
        refine_grid(&cfg.v_grid, &rs)
    } else {
        refine_grid(&cfg.v_grid, &[])
    }
}

fn sweep_point(cfg: &RunConfig, v: f64) -> Result<SweepRow> {
    let gen = generator_at(cfg, v)?;
    let rho_ss = steady_state(&gen)?;
    let i = current(&gen, Side::Left, &rho_ss)?;
    let readout = match cfg.mode {
        Mode::CvSweep => {
            let rho0 = initial_state(cfg.initial_state_kind());
            let traj = evolve(&gen, &rho0, &[cfg.t_max])?;
            traj.states.into_iter().next_back().expect("one sample")
        }
        _ => rho_ss,
    };
    Ok(SweepRow {
        v,
        current: i,
        concurrence: concurrence(&hermitize(&readout))?,
        populations: populations(&readout),
        status: RowStatus::Ok,
    })
}

/// Run an `iv_sweep` or `cv_sweep` over the (optionally refined) grid.
pub fn run_sweep(cfg: &RunConfig) -> SweepOutcome {
    let mut rows = Vec::new();
    let mut failed = 0;
    for v in sweep_voltages(cfg) {
        match sweep_point(cfg, v) {
            Ok(row) => rows.push(row),
            Err(e) => {
                failed += 1;
                rows.push(SweepRow::failed(v, &e));
            }
        }
    }
    SweepOutcome { rows, failed_points: failed }
}

/// One sampled instant of a dynamics run.
#[derive(Debug, Clone)]
pub struct DynPoint {
    pub t: f64,
    pub concurrence: f64,
    pub populations: [f64; 4],
    pub trace_err: f64,
    pub min_eig: f64,
}

fn trajectory_points(traj: &Trajectory) -> Result<Vec<DynPoint>> {
    let mut out = Vec::with_capacity(traj.times.len());
    for (t, rho) in traj.times.iter().zip(&traj.states) {
        let rho_h = hermitize(rho);
        out.push(DynPoint {
            t: *t,
            concurrence: concurrence(&rho_h)?,
            populations: populations(rho),
            trace_err: (trace(rho) - crate::linalg::cplx(1.0, 0.0)).norm(),
            min_eig: herm_eigvals(&rho_h)?[0],
        });
    }
    Ok(out)
}

/// Evolve from the configured initial state at fixed bias `cfg.v`.
pub fn run_dynamics(cfg: &RunConfig) -> Result<Vec<DynPoint>> {
    let gen = generator_at(cfg, cfg.v)?;
    let rho0 = initial_state(cfg.initial_state_kind());
    let traj = evolve(&gen, &rho0, &cfg.time_grid())?;
    trajectory_points(&traj)
}

/// One labeled fixed-bias trace of a resonance-dynamics run.
#[derive(Debug, Clone)]
pub struct ResonanceTrace {
    pub label: &'static str,
    pub v: f64,
    pub points: Vec<DynPoint>,
}

/// Dynamics on both sides of the two gap-shifted resonances
/// (`eps_A + Delta_L` and `eps_B + Delta_R`, offset by ∓0.01), plus a
/// high-bias reference. Asymmetric superconducting runs add a
/// `r1_minus_textvariant` trace at `eps_A - Delta_L - 0.01`, a second
/// published location for the same side of the first resonance; both are
/// emitted so the discrepancy stays visible in the output.
pub fn run_resonance_dynamics(cfg: &RunConfig) -> Result<Vec<ResonanceTrace>> {
    let r1 = cfg.sys.eps_a + cfg.lead_left.delta;
    let r2 = cfg.sys.eps_b + cfg.lead_right.delta;
    let mut plan: Vec<(&'static str, f64)> = vec![
        ("r1_minus", r1 - 0.01),
        ("r1_plus", r1 + 0.01),
        ("r2_minus", r2 - 0.01),
        ("r2_plus", r2 + 0.01),
        ("high_bias", cfg.high_bias),
    ];
    if cfg.couplings.kappa > 0.0 && cfg.lead_left.delta > 0.0 {
        plan.push(("r1_minus_textvariant", cfg.sys.eps_a - cfg.lead_left.delta - 0.01));
    }
    let rho0 = initial_state(cfg.initial_state_kind());
    let grid = cfg.time_grid();
    let mut traces = Vec::with_capacity(plan.len());
    for (label, v) in plan {
        let gen = generator_at(cfg, v)?;
        let traj = evolve(&gen, &rho0, &grid)?;
        traces.push(ResonanceTrace { label, v, points: trajectory_points(&traj)? });
    }
    Ok(traces)
}

fn fmt_f(x: f64) -> String {
    format!("{x:.12e}")
}

/// CSV for sweep modes: `v,current,concurrence,p_gg,p_ge,p_eg,p_ee,status`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("v,current,concurrence,p_gg,p_ge,p_eg,p_ee,status\n");
    for r in rows {
        let p = r.populations;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            fmt_f(r.v),
            fmt_f(r.current),
            fmt_f(r.concurrence),
            fmt_f(p[0]),
            fmt_f(p[1]),
            fmt_f(p[2]),
            fmt_f(p[3]),
            r.status.as_str()
        );
    }
    s
}

/// CSV for dynamics modes:
/// `t,concurrence,p_gg,p_ge,p_eg,p_ee,trace_err,min_eig`.
pub fn dynamics_csv(points: &[DynPoint]) -> String {
    let mut s = String::from("t,concurrence,p_gg,p_ge,p_eg,p_ee,trace_err,min_eig\n");
    for p in points {
        let pops = p.populations;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            fmt_f(p.t),
            fmt_f(p.concurrence),
            fmt_f(pops[0]),
            fmt_f(pops[1]),
            fmt_f(pops[2]),
            fmt_f(pops[3]),
            fmt_f(p.trace_err),
            fmt_f(p.min_eig)
        );
    }
    s
}

/// Key-value dump of every resolved setting plus run-specific extras,
/// written next to each CSV so any artifact is reconstructible.
pub fn manifest_text(cfg: &RunConfig, extras: &[(String, String)]) -> String {
    let mut entries = cfg.manifest_entries();
    entries.extend(extras.iter().cloned());
    entries.sort();
    let mut s = String::new();
    for (k, v) in entries {
        let _ = writeln!(s, "{k} = {v}");
    }
    s
}

fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest")
}

fn labeled_path(base: &Path, label: &str) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}.{label}.{ext}"))
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub failed_points: usize,
}

/// Execute the configured mode and write its CSV and manifest artifacts.
/// `extras` is echoed into every manifest (the CLI passes the preset name
/// and output origin through it).
pub fn run_to_files(cfg: &RunConfig, extras: &[(String, String)]) -> Result<RunSummary> {
    let base: PathBuf = match &cfg.output {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(format!("{}.csv", cfg.mode.as_str())),
    };
    let mut files = Vec::new();
    let mut failed_points = 0;
    let mut write = |path: &Path, content: &str| -> Result<()> {
        fs::write(path, content)?;
        files.push(path.to_path_buf());
        Ok(())
    };
    match cfg.mode {
        Mode::IvSweep | Mode::CvSweep => {
            let outcome = run_sweep(cfg);
            failed_points = outcome.failed_points;
            write(&base, &sweep_csv(&outcome.rows))?;
            let mut ex = extras.to_vec();
            ex.push(("output".into(), base.display().to_string()));
            write(&manifest_path(&base), &manifest_text(cfg, &ex))?;
        }
        Mode::Dynamics => {
            let points = run_dynamics(cfg)?;
            write(&base, &dynamics_csv(&points))?;
            let mut ex = extras.to_vec();
            ex.push(("output".into(), base.display().to_string()));
            write(&manifest_path(&base), &manifest_text(cfg, &ex))?;
        }
        Mode::ResonanceDynamics => {
            for trace in run_resonance_dynamics(cfg)? {
                let path = labeled_path(&base, trace.label);
                write(&path, &dynamics_csv(&trace.points))?;
                let mut ex = extras.to_vec();
                ex.push(("output".into(), path.display().to_string()));
                ex.push(("trace".into(), trace.label.to_string()));
                ex.push(("trace.v".into(), trace.v.to_string()));
                write(&manifest_path(&path), &manifest_text(cfg, &ex))?;
            }
        }
    }
    Ok(RunSummary { files, failed_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_source, Layers, RunConfig};

    fn cfg_from(text: &str) -> RunConfig {
        let mut layers = Layers::default();
        layers.push(parse_source("test", text).unwrap());
        RunConfig::from_layers(&layers).unwrap()
    }

    #[test]
    fn resonance_set_dedups_and_clips() {
        let normal = cfg_from("lead_left.delta = 0\nlead_right.delta = 0");
        assert_eq!(resonance_voltages(&normal, 0.0, 10.0), vec![2.0, 4.0]);
        let sc = cfg_from("lead_left.delta = 2.5\nlead_right.delta = 3.5");
        assert_eq!(resonance_voltages(&sc, 0.0, 12.0), vec![2.0, 4.0, 4.5, 5.5, 6.5, 7.5]);
        assert_eq!(resonance_voltages(&sc, 0.0, 5.0), vec![2.0, 4.0, 4.5]);
    }

    #[test]
    fn refine_grid_counts_and_symmetry() {
        let grid = VGrid { v_min: 0.0, v_max: 1.0, points: 10, refine: true };
        assert_eq!(refine_grid(&grid, &[]).len(), 10);
        let refined = refine_grid(&grid, &[0.5]);
        assert_eq!(refined.len(), 10 + 41);
        // cluster symmetric about the resonance
        let around: Vec<f64> = refined
            .iter()
            .copied()
            .filter(|v| (v - 0.5).abs() < 0.19 && (v - 0.5).abs() > 1e-12)
            .collect();
        for v in &around {
            let mirror = 1.0 - v;
            assert!(
                around.iter().any(|w| (w - mirror).abs() < 1e-12),
                "no mirror for {v}"
            );
        }
        // a resonance outside the window adds no cluster: base points only
        assert_eq!(refine_grid(&grid, &[2.0]).len(), grid.points);
        // grid stays sorted, deduplicated, in-window
        assert!(refined.windows(2).all(|w| w[0] < w[1]));
        assert!(refined.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn iv_sweep_rows_are_physical() {
        let cfg = cfg_from(
            "mode = iv_sweep\ngrid.v_min = 0\ngrid.v_max = 6\ngrid.points = 7\ngrid.refine = false",
        );
        let out = run_sweep(&cfg);
        assert_eq!(out.failed_points, 0);
        assert_eq!(out.rows.len(), 7);
        for r in &out.rows {
            assert_eq!(r.status, RowStatus::Ok);
            assert!(r.current.is_finite());
            assert!((0.0..=1.0).contains(&r.concurrence));
            let psum: f64 = r.populations.iter().sum();
            assert!((psum - 1.0).abs() < 1e-9);
        }
        assert!(out.rows[0].current.abs() < 1e-10, "no current at zero bias");
        assert!(out.rows.last().unwrap().current > 0.1, "current flows at high bias");
    }

    #[test]
    fn cv_readout_depends_on_initial_state_but_current_does_not() {
        let base = "mode = cv_sweep\ngrid.v_min = 0\ngrid.v_max = 6\ngrid.points = 4\ngrid.refine = false\ntime.t_max = 1\ncouplings.kappa = 0\n";
        let bell = cfg_from(&format!("{base}initial = bell"));
        let sep = cfg_from(&format!("{base}initial = separable"));
        let rows_b = run_sweep(&bell).rows;
        let rows_s = run_sweep(&sep).rows;
        for (b, s) in rows_b.iter().zip(&rows_s) {
            assert!((b.current - s.current).abs() < 1e-12, "current is a stationary readout");
        }
        // at V = 0 the Bell start retains coherence the product start never had
        assert!(rows_b[0].concurrence > rows_s[0].concurrence + 0.05);
    }

    #[test]
    fn dynamics_trace_is_sane() {
        let cfg = cfg_from(
            "mode = dynamics\nbias.v = 7.2\ntime.t_max = 10\ntime.points = 30\ncouplings.kappa = 0\ninitial = bell",
        );
        let points = run_dynamics(&cfg).unwrap();
        assert_eq!(points.len(), 30);
        assert_eq!(points[0].t, 0.0);
        assert!((points[0].concurrence - 1.0).abs() < 1e-9, "Bell start");
        for p in &points {
            assert!((0.0..=1.0).contains(&p.concurrence));
            assert!(p.trace_err <= 1e-7);
            assert!(p.min_eig >= -1e-7);
        }
        assert!(points.last().unwrap().concurrence < 0.05, "high bias destroys entanglement");
    }

    #[test]
    fn resonance_dynamics_trace_plan() {
        let sym = cfg_from(
            "mode = resonance_dynamics\ncouplings.kappa = 0\nlead_left.delta = 2.5\nlead_right.delta = 2.5\ntime.t_max = 1\ntime.points = 3\nresdyn.high_bias = 20",
        );
        let traces = run_resonance_dynamics(&sym).unwrap();
        let labels: Vec<&str> = traces.iter().map(|t| t.label).collect();
        assert_eq!(labels, ["r1_minus", "r1_plus", "r2_minus", "r2_plus", "high_bias"]);
        assert_eq!(traces[0].v, 4.0 + 2.5 - 0.01);
        assert_eq!(traces[1].v, 4.0 + 2.5 + 0.01);
        assert_eq!(traces[2].v, 2.0 + 2.5 - 0.01);
        assert_eq!(traces[3].v, 2.0 + 2.5 + 0.01);
        assert_eq!(traces[4].v, 20.0);

        let asym = cfg_from(
            "mode = resonance_dynamics\ncouplings.kappa = 0.95\nlead_left.delta = 3\nlead_right.delta = 6\ntime.t_max = 1\ntime.points = 3",
        );
        let traces = run_resonance_dynamics(&asym).unwrap();
        assert_eq!(traces.len(), 6);
        let tv = traces.last().unwrap();
        assert_eq!(tv.label, "r1_minus_textvariant");
        assert!((tv.v - (4.0 - 3.0 - 0.01)).abs() < 1e-12);
    }

    #[test]
    fn csv_formats_are_fixed_and_deterministic() {
        let rows = vec![
            SweepRow {
                v: 1.0,
                current: 0.5,
                concurrence: 0.25,
                populations: [0.4, 0.3, 0.2, 0.1],
                status: RowStatus::Ok,
            },
            SweepRow::failed(2.0, &Error::DegenerateSteadyState { second_sv: 0.0, tol: 1e-8 }),
        ];
        let csv = sweep_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "v,current,concurrence,p_gg,p_ge,p_eg,p_ee,status");
        let first = lines.next().unwrap();
        assert!(first.starts_with("1.000000000000e0,5.000000000000e-1,"), "{first}");
        assert!(first.ends_with(",ok"));
        let second = lines.next().unwrap();
        assert!(second.ends_with(",failed:degenerate-steady-state"), "{second}");
        assert!(second.contains("NaN"));
        assert_eq!(csv, sweep_csv(&rows), "emission is a pure function");
    }

    #[test]
    fn run_to_files_writes_csv_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let cfg = cfg_from(&format!(
            "mode = iv_sweep\ngrid.v_min = 0\ngrid.v_max = 3\ngrid.points = 3\ngrid.refine = false\noutput = {}",
            out.display()
        ));
        let summary = run_to_files(&cfg, &[("preset".into(), "none".into())]).unwrap();
        assert_eq!(summary.failed_points, 0);
        assert_eq!(summary.files.len(), 2);
        let csv = fs::read_to_string(&out).unwrap();
        assert_eq!(csv.lines().count(), 1 + 3);
        let manifest = fs::read_to_string(out.with_extension("manifest")).unwrap();
        assert!(manifest.contains("sys.t_hop = 0.1"));
        assert!(manifest.contains("preset = none"));
        assert!(manifest.contains("mode = iv_sweep"));
        // byte-identical rerun
        let again = run_to_files(&cfg, &[("preset".into(), "none".into())]).unwrap();
        assert_eq!(summary.files, again.files);
        assert_eq!(csv, fs::read_to_string(&out).unwrap());
    }

    #[test]
    fn resdyn_files_labelled_per_trace() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("res.csv");
        let cfg = cfg_from(&format!(
            "mode = resonance_dynamics\ncouplings.kappa = 0\nlead_left.delta = 2.5\nlead_right.delta = 2.5\ntime.t_max = 1\ntime.points = 3\noutput = {}",
            out.display()
        ));
        let summary = run_to_files(&cfg, &[]).unwrap();
        assert_eq!(summary.files.len(), 10, "five traces, each with a manifest");
        assert!(dir.path().join("res.r1_minus.csv").exists());
        assert!(dir.path().join("res.r1_minus.manifest").exists());
        assert!(dir.path().join("res.high_bias.csv").exists());
        let manifest = fs::read_to_string(dir.path().join("res.r2_plus.manifest")).unwrap();
        assert!(manifest.contains("trace = r2_plus"));
        assert!(manifest.contains("trace.v = 4.51"));
    }
}
