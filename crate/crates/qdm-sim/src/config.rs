// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a flat key-value text format with section-dotted keys
//! (`lead_left.delta = 2.5`), layered so later sources override earlier ones
//! (defaults < preset < config file < command-line flags), resolving into a
//! validated [`RunConfig`].
//!
//! Lines are `key = value`; `#` starts a comment anywhere; blank lines are
//! ignored. Unknown or duplicated keys are errors with line diagnostics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::leads::{bias_potentials, default_dynes, CouplingSet, LeadParams};
use crate::liouvillian::{log_time_grid, GeneratorOptions};
use crate::system::{InitialState, SystemParams};

/// Every key the format accepts. Anything else is a typo and gets rejected.
pub const KNOWN_KEYS: &[&str] = &[
    "bias.mu0",
    "bias.v",
    "couplings.gamma0",
    "couplings.kappa",
    "grid.points",
    "grid.refine",
    "grid.v_max",
    "grid.v_min",
    "initial",
    "lead_left.delta",
    "lead_left.dynes",
    "lead_left.phase",
    "lead_left.temperature",
    "lead_right.delta",
    "lead_right.dynes",
    "lead_right.phase",
    "lead_right.temperature",
    "mode",
    "output",
    "resdyn.high_bias",
    "solver.coherent",
    "solver.cross_terms",
    "sys.eps_a",
    "sys.eps_b",
    "sys.t_hop",
    "time.points",
    "time.t_max",
];

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
}

/// One parsed configuration source (a preset, a file, or synthesized flags).
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    entries: BTreeMap<String, Entry>,
}

impl Source {
    /// Empty source, for synthesizing entries programmatically.
    pub fn empty(name: &str) -> Self {
        Source { name: name.to_string(), entries: BTreeMap::new() }
    }

    /// Insert or replace a key (used for CLI flag overrides).
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.entries.insert(key.to_string(), Entry { value: value.into(), line: 0 });
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parse one config text into a source, validating keys and rejecting
/// duplicates.
pub fn parse_source(name: &str, text: &str) -> Result<Source> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::ConfigError(format!("{name}:{line_no}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::ConfigError(format!("{name}:{line_no}: unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(Error::ConfigError(format!("{name}:{line_no}: empty value for `{key}`")));
        }
        if let Some(prev) = entries.get(key) {
            return Err(Error::ConfigError(format!(
                "{name}:{line_no}: duplicate key `{key}` (first set at line {})",
                prev.line
            )));
        }
        entries.insert(key.to_string(), Entry { value: value.to_string(), line: line_no });
    }
    Ok(Source { name: name.to_string(), entries })
}

/// Ordered stack of sources; later sources win.
#[derive(Debug, Clone, Default)]
pub struct Layers {
    sources: Vec<Source>,
}

impl Layers {
    pub fn push(&mut self, source: Source) {
        self.sources.push(source);
    }

    fn get(&self, key: &str) -> Option<(&str, &str, usize)> {
        self.sources
            .iter()
            .rev()
            .find_map(|s| s.entries.get(key).map(|e| (e.value.as_str(), s.name.as_str(), e.line)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    IvSweep,
    CvSweep,
    Dynamics,
    ResonanceDynamics,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::IvSweep => "iv_sweep",
            Mode::CvSweep => "cv_sweep",
            Mode::Dynamics => "dynamics",
            Mode::ResonanceDynamics => "resonance_dynamics",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialChoice {
    Bell,
    Separable,
    Auto,
}

impl InitialChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            InitialChoice::Bell => "bell",
            InitialChoice::Separable => "separable",
            InitialChoice::Auto => "auto",
        }
    }
}

/// Static lead description; chemical potential is supplied per bias point.
#[derive(Debug, Clone, Copy)]
pub struct LeadSpec {
    pub delta: f64,
    pub phase: f64,
    pub temperature: f64,
    /// Dynes broadening; `None` resolves to `1e-3 * max(delta, gamma0)`.
    pub dynes: Option<f64>,
}

impl LeadSpec {
    pub fn resolved_dynes(&self, gamma0: f64) -> f64 {
        self.dynes.unwrap_or_else(|| default_dynes(self.delta, gamma0))
    }

    pub fn resolve(&self, gamma0: f64, mu: f64) -> Result<LeadParams> {
        LeadParams::new(self.delta, self.phase, self.temperature, self.resolved_dynes(gamma0), mu)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VGrid {
    pub v_min: f64,
    pub v_max: f64,
    pub points: usize,
    pub refine: bool,
}

/// Fully resolved and validated run description.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub sys: SystemParams,
    pub lead_left: LeadSpec,
    pub lead_right: LeadSpec,
    pub couplings: CouplingSet,
    pub initial: InitialChoice,
    pub mu0: f64,
    /// Fixed bias for dynamics runs; also the readout horizon context for
    /// sweeps is `t_max` below.
    pub v: f64,
    pub v_grid: VGrid,
    pub t_max: f64,
    pub t_points: usize,
    pub include_coherent: bool,
    pub cross_terms: bool,
    pub output: Option<String>,
    pub high_bias: f64,
}

fn parse_f64(key: &str, value: &str, src: &str, line: usize) -> Result<f64> {
    let x: f64 = value.parse().map_err(|_| {
        Error::ConfigError(format!("{src}:{line}: `{key} = {value}`: expected a number"))
    })?;
    if !x.is_finite() {
        return Err(Error::ConfigError(format!("{src}:{line}: `{key} = {value}`: must be finite")));
    }
    Ok(x)
}

fn parse_usize(key: &str, value: &str, src: &str, line: usize) -> Result<usize> {
    value.parse().map_err(|_| {
        Error::ConfigError(format!("{src}:{line}: `{key} = {value}`: expected a positive integer"))
    })
}

fn parse_bool(key: &str, value: &str, src: &str, line: usize) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::ConfigError(format!(
            "{src}:{line}: `{key} = {value}`: expected `true` or `false`"
        ))),
    }
}

impl RunConfig {
    /// Resolve a layered stack into a validated config.
    pub fn from_layers(layers: &Layers) -> Result<RunConfig> {
        let f = |key: &str, default: f64| -> Result<f64> {
            match layers.get(key) {
                Some((v, s, l)) => parse_f64(key, v, s, l),
                None => Ok(default),
            }
        };
        let u = |key: &str, default: usize| -> Result<usize> {
            match layers.get(key) {
                Some((v, s, l)) => parse_usize(key, v, s, l),
                None => Ok(default),
            }
        };
        let b = |key: &str, default: bool| -> Result<bool> {
            match layers.get(key) {
                Some((v, s, l)) => parse_bool(key, v, s, l),
                None => Ok(default),
            }
        };

        let mode = match layers.get("mode") {
            Some(("iv_sweep", _, _)) => Mode::IvSweep,
            Some(("cv_sweep", _, _)) => Mode::CvSweep,
            Some(("dynamics", _, _)) => Mode::Dynamics,
            Some(("resonance_dynamics", _, _)) => Mode::ResonanceDynamics,
            Some((v, s, l)) => {
                return Err(Error::ConfigError(format!(
                    "{s}:{l}: `mode = {v}`: expected iv_sweep | cv_sweep | dynamics | resonance_dynamics"
                )))
            }
            None => Mode::IvSweep,
        };

        let initial = match layers.get("initial") {
            Some(("bell", _, _)) => InitialChoice::Bell,
            Some(("separable", _, _)) => InitialChoice::Separable,
            Some(("auto", _, _)) => InitialChoice::Auto,
            Some((v, s, l)) => {
                return Err(Error::ConfigError(format!(
                    "{s}:{l}: `initial = {v}`: expected bell | separable | auto"
                )))
            }
            None => InitialChoice::Auto,
        };

        let sys = SystemParams::new(f("sys.eps_a", 4.0)?, f("sys.eps_b", 2.0)?, f("sys.t_hop", 0.1)?)
            .map_err(|e| Error::ConfigError(format!("sys: {e}")))?;
        let couplings = CouplingSet::new(f("couplings.gamma0", 1.0)?, f("couplings.kappa", 0.0)?)
            .map_err(|e| Error::ConfigError(format!("couplings: {e}")))?;

        let lead = |section: &str| -> Result<LeadSpec> {
            let dynes = match layers.get(&format!("{section}.dynes")) {
                None => None,
                Some(("auto", _, _)) => None,
                Some((v, s, l)) => Some(parse_f64(&format!("{section}.dynes"), v, s, l)?),
            };
            Ok(LeadSpec {
                delta: f(&format!("{section}.delta"), 0.0)?,
                phase: f(&format!("{section}.phase"), 0.0)?,
                temperature: f(&format!("{section}.temperature"), 0.02)?,
                dynes,
            })
        };
        let lead_left = lead("lead_left")?;
        let lead_right = lead("lead_right")?;
        for (name, spec) in [("lead_left", &lead_left), ("lead_right", &lead_right)] {
            spec.resolve(couplings.gamma0, 0.0)
                .map_err(|e| Error::ConfigError(format!("{name}: {e}")))?;
        }

        let v_grid = VGrid {
            v_min: f("grid.v_min", 0.0)?,
            v_max: f("grid.v_max", 10.0)?,
            points: u("grid.points", 201)?,
            refine: b("grid.refine", true)?,
        };
        if v_grid.v_min >= v_grid.v_max {
            return Err(Error::ConfigError(format!(
                "grid: v_min = {} must be below v_max = {}",
                v_grid.v_min, v_grid.v_max
            )));
        }
        if v_grid.points < 2 {
            return Err(Error::ConfigError("grid: points must be at least 2".into()));
        }

        let t_max = f("time.t_max", 50.0)?;
        let t_points = u("time.points", 400)?;
        if t_max <= 0.0 {
            return Err(Error::ConfigError("time: t_max must be positive".into()));
        }
        if t_points < 2 {
            return Err(Error::ConfigError("time: points must be at least 2".into()));
        }

        Ok(RunConfig {
            mode,
            sys,
            lead_left,
            lead_right,
            couplings,
            initial,
            mu0: f("bias.mu0", 0.0)?,
            v: f("bias.v", 0.0)?,
            v_grid,
            t_max,
            t_points,
            include_coherent: b("solver.coherent", true)?,
            cross_terms: b("solver.cross_terms", false)?,
            output: layers.get("output").map(|(v, _, _)| v.to_string()),
            high_bias: f("resdyn.high_bias", 20.0)?,
        })
    }

    /// `auto` resolves to the maximally entangled start for the symmetric
    /// structure and to the product start for any asymmetric one.
    pub fn initial_state_kind(&self) -> InitialState {
        match self.initial {
            InitialChoice::Bell => InitialState::Bell,
            InitialChoice::Separable => InitialState::Separable,
            InitialChoice::Auto => {
                if self.couplings.kappa == 0.0 {
                    InitialState::Bell
                } else {
                    InitialState::Separable
                }
            }
        }
    }

    pub fn options(&self) -> GeneratorOptions {
        GeneratorOptions { include_coherent: self.include_coherent, cross_terms: self.cross_terms }
    }

    /// Lead parameters at a given bias voltage.
    pub fn leads_at(&self, v: f64) -> Result<(LeadParams, LeadParams)> {
        let (mu_l, mu_r) = bias_potentials(self.mu0, v);
        Ok((
            self.lead_left.resolve(self.couplings.gamma0, mu_l)?,
            self.lead_right.resolve(self.couplings.gamma0, mu_r)?,
        ))
    }

    /// Output sampling times for dynamics runs.
    pub fn time_grid(&self) -> Vec<f64> {
        log_time_grid(self.t_max, self.t_points)
    }

    /// Every key with its resolved value, including derived defaults, so a
    /// run is reconstructible from its manifest alone.
    pub fn manifest_entries(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = vec![
            ("bias.mu0".into(), self.mu0.to_string()),
            ("bias.v".into(), self.v.to_string()),
            ("couplings.gamma0".into(), self.couplings.gamma0.to_string()),
            ("couplings.kappa".into(), self.couplings.kappa.to_string()),
            ("grid.points".into(), self.v_grid.points.to_string()),
            ("grid.refine".into(), self.v_grid.refine.to_string()),
            ("grid.v_max".into(), self.v_grid.v_max.to_string()),
            ("grid.v_min".into(), self.v_grid.v_min.to_string()),
            ("initial".into(), self.initial.as_str().into()),
            ("mode".into(), self.mode.as_str().into()),
            ("resdyn.high_bias".into(), self.high_bias.to_string()),
            ("solver.coherent".into(), self.include_coherent.to_string()),
            ("solver.cross_terms".into(), self.cross_terms.to_string()),
            ("sys.eps_a".into(), self.sys.eps_a.to_string()),
            ("sys.eps_b".into(), self.sys.eps_b.to_string()),
            ("sys.t_hop".into(), self.sys.t_hop.to_string()),
            ("time.points".into(), self.t_points.to_string()),
            ("time.t_max".into(), self.t_max.to_string()),
        ];
        for (name, spec) in [("lead_left", &self.lead_left), ("lead_right", &self.lead_right)] {
            out.push((format!("{name}.delta"), spec.delta.to_string()));
            out.push((format!("{name}.dynes"), spec.resolved_dynes(self.couplings.gamma0).to_string()));
            out.push((format!("{name}.phase"), spec.phase.to_string()));
            out.push((format!("{name}.temperature"), spec.temperature.to_string()));
        }
        out.push(("resolved.initial".into(), {
            let k = self.initial_state_kind();
            match k {
                InitialState::Bell => "bell".into(),
                InitialState::Separable => "separable".into(),
            }
        }));
        let (mu_l, mu_r) = bias_potentials(self.mu0, self.v);
        out.push(("resolved.mu_left".into(), mu_l.to_string()));
        out.push(("resolved.mu_right".into(), mu_r.to_string()));
        out.sort();
        out
    }
}

/// Built-in figure-reproduction presets, embedded in the binary so runs
/// need no external files.
pub mod presets {
    /// Name/content pairs, sorted by name.
    pub const ALL: &[(&str, &str)] = &[
        ("fig2_d0", include_str!("../presets/fig2_d0.conf")),
        ("fig2_d18", include_str!("../presets/fig2_d18.conf")),
        ("fig2_d26", include_str!("../presets/fig2_d26.conf")),
        ("fig3a_d0", include_str!("../presets/fig3a_d0.conf")),
        ("fig3a_d25", include_str!("../presets/fig3a_d25.conf")),
        ("fig3a_d35", include_str!("../presets/fig3a_d35.conf")),
        ("fig3b_d0", include_str!("../presets/fig3b_d0.conf")),
        ("fig3b_dl25_dr35", include_str!("../presets/fig3b_dl25_dr35.conf")),
        ("fig3b_dl3_dr6", include_str!("../presets/fig3b_dl3_dr6.conf")),
        ("fig4a_d0", include_str!("../presets/fig4a_d0.conf")),
        ("fig4a_d16", include_str!("../presets/fig4a_d16.conf")),
        ("fig4a_d3", include_str!("../presets/fig4a_d3.conf")),
        ("fig4b_d0", include_str!("../presets/fig4b_d0.conf")),
        ("fig4b_dl25_dr35", include_str!("../presets/fig4b_dl25_dr35.conf")),
        ("fig4b_dl3_dr6", include_str!("../presets/fig4b_dl3_dr6.conf")),
        ("fig5a", include_str!("../presets/fig5a.conf")),
        ("fig5b", include_str!("../presets/fig5b.conf")),
    ];

    pub fn names() -> Vec<&'static str> {
        ALL.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(name: &str) -> Option<&'static str> {
        ALL.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
    }
}
