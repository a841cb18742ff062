// SPDX-License-Identifier: Apache-2.0

//! TOML experiment files with `[channel]`, `[initial_state]`, `[run]` and
//! `[scan]` tables of flat `key = value` pairs.

use std::path::Path;

use qthermo_core::dynamics::DEFAULT_DT;
use qthermo_core::nonmarkov::DEFAULT_TAU_MAX;
use qthermo_core::{BlochVector, ChannelKind, ChannelSpec, Formulation};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Gad,
    PdMarkov,
    PdNonmarkov,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ChannelTable {
    pub kind: Option<KindName>,
    pub omega0: Option<f64>,
    pub gamma0: Option<f64>,
    pub te: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
    pub s: Option<f64>,
    pub omega_c: Option<f64>,
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct InitialStateTable {
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub z: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunTable {
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub formulations: Option<Vec<String>>,
    pub emit_plot_script: Option<bool>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ScanTable {
    pub s_min: Option<f64>,
    pub s_max: Option<f64>,
    pub s_step: Option<f64>,
    pub tau_max: Option<f64>,
    pub kappa: Option<f64>,
    pub emit_plot_script: Option<bool>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub channel: Option<ChannelTable>,
    pub initial_state: Option<InitialStateTable>,
    pub run: Option<RunTable>,
    pub scan: Option<ScanTable>,
}

/// Validated input of `simulate`.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub channel: ChannelSpec,
    pub initial_state: BlochVector,
    pub t_max: f64,
    pub dt: f64,
    pub formulations: Vec<Formulation>,
    pub emit_plot_script: bool,
}

/// Validated input of `nm-scan`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan {
    pub s_values: Vec<f64>,
    pub tau_max: f64,
    pub kappa: f64,
    pub emit_plot_script: bool,
}

/// Command-line replacements for `[run]` values.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn read_config(path: &Path) -> CliResult<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> CliResult<ConfigFile> {
    toml::from_str(text).map_err(|e| bad(e.message().to_string()))
}

fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(format!("{name} must be finite")))
    }
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if finite(name, v)? > 0.0 {
        Ok(v)
    } else {
        Err(bad(format!("{name} must be > 0, got {v}")))
    }
}

fn forbid(kind: &str, keys: &[(&str, Option<f64>)]) -> CliResult<()> {
    for (name, v) in keys {
        if v.is_some() {
            return Err(bad(format!("channel.{name} does not apply to kind = \"{kind}\"")));
        }
    }
    Ok(())
}

impl ChannelTable {
    pub fn validate(&self) -> CliResult<ChannelSpec> {
        let kind = self.kind.ok_or_else(|| bad("channel.kind is required"))?;
        let omega0 = finite("channel.omega0", self.omega0.unwrap_or(1.0))?;
        let spec = match kind {
            KindName::Gad => {
                forbid("gad", &[("gamma", self.gamma), ("omega", self.omega), ("s", self.s), ("omega_c", self.omega_c), ("kappa", self.kappa)])?;
                let te = self.te.ok_or_else(|| bad("channel.te is required for kind = \"gad\""))?;
                ChannelSpec::gad(omega0, self.gamma0.unwrap_or(1.0), positive("channel.te", te)?)
            }
            KindName::PdMarkov => {
                forbid("pd_markov", &[("gamma0", self.gamma0), ("te", self.te), ("s", self.s), ("omega_c", self.omega_c), ("kappa", self.kappa)])?;
                ChannelSpec::pd_markov(omega0, self.gamma.unwrap_or(1.0), self.omega.unwrap_or(1.0))
            }
            KindName::PdNonmarkov => {
                forbid("pd_nonmarkov", &[("gamma0", self.gamma0), ("te", self.te), ("gamma", self.gamma), ("omega", self.omega)])?;
                let s = self.s.ok_or_else(|| bad("channel.s is required for kind = \"pd_nonmarkov\""))?;
                ChannelSpec::pd_nonmarkov(omega0, self.omega_c.unwrap_or(1.0), s, self.kappa.unwrap_or(2.0))
            }
        };
        spec.map_err(|e| bad(e.to_string()))
    }
}

impl InitialStateTable {
    pub fn validate(&self) -> CliResult<BlochVector> {
        let cart = [self.x, self.y, self.z];
        let polar = [self.r, self.theta, self.phi];
        let any_cart = cart.iter().any(Option::is_some);
        let any_polar = polar.iter().any(Option::is_some);
        let v = match (any_cart, any_polar) {
            (true, true) => return Err(bad("initial_state: give either x, y, z or r, theta, phi, not both")),
            (false, false) => return Err(bad("initial_state: no coordinates given")),
            (true, false) => {
                let [x, y, z] = cart.map(|c| c.unwrap_or(0.0));
                BlochVector::new(finite("x", x)?, finite("y", y)?, finite("z", z)?)
            }
            (false, true) => {
                let r = self.r.ok_or_else(|| bad("initial_state.r is required with theta/phi"))?;
                let [r, theta, phi] = [r, self.theta.unwrap_or(0.0), self.phi.unwrap_or(0.0)];
                if r < 0.0 {
                    return Err(bad(format!("initial_state.r must be >= 0, got {r}")));
                }
                BlochVector::from_spherical(finite("r", r)?, finite("theta", theta)?, finite("phi", phi)?)
            }
        };
        v.map_err(|e| bad(format!("initial_state: {e}")))
    }
}

fn parse_formulations(names: Option<&Vec<String>>) -> CliResult<Vec<Formulation>> {
    let Some(names) = names else {
        return Ok(Formulation::ALL.to_vec());
    };
    if names.is_empty() {
        return Err(bad("run.formulations must not be empty"));
    }
    let mut out = Vec::new();
    for n in names {
        let f: Formulation = n.parse().map_err(|_| {
            bad(format!(
                "run.formulations: unknown {n:?} (expected standard, entropy, ergotropy or operational)"
            ))
        })?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

fn check_grid(t_max: f64, dt: f64) -> CliResult<()> {
    positive("dt", dt)?;
    positive("t_max", t_max)?;
    if dt > t_max * (1.0 + 1e-12) {
        return Err(bad(format!("dt = {dt} exceeds t_max = {t_max}")));
    }
    if t_max / dt > 1e8 {
        return Err(bad("t_max/dt exceeds 1e8 steps"));
    }
    Ok(())
}

impl ConfigFile {
    pub fn experiment(&self, ov: Overrides) -> CliResult<Experiment> {
        if self.scan.is_some() {
            return Err(bad("[scan] belongs to nm-scan configs"));
        }
        let channel = self.channel.as_ref().ok_or_else(|| bad("missing [channel]"))?.validate()?;
        let initial_state = self
            .initial_state
            .as_ref()
            .ok_or_else(|| bad("missing [initial_state]"))?
            .validate()?;
        let run = self.run.clone().unwrap_or_default();
        let t_max = ov.t_max.or(run.t_max).ok_or_else(|| bad("run.t_max is required"))?;
        let dt = ov.dt.or(run.dt).unwrap_or(DEFAULT_DT);
        check_grid(t_max, dt)?;
        Ok(Experiment {
            channel,
            initial_state,
            t_max,
            dt,
            formulations: parse_formulations(run.formulations.as_ref())?,
            emit_plot_script: run.emit_plot_script.unwrap_or(false),
        })
    }

    pub fn scan(&self, ov: Overrides) -> CliResult<Scan> {
        if self.channel.is_some() || self.initial_state.is_some() || self.run.is_some() {
            return Err(bad("nm-scan configs take only a [scan] table"));
        }
        if ov.dt.is_some() {
            return Err(CliError::Usage("--dt does not apply to nm-scan".into()));
        }
        let scan = self.scan.as_ref().ok_or_else(|| bad("missing [scan]"))?;
        let need = |name: &str, v: Option<f64>| v.ok_or_else(|| bad(format!("scan.{name} is required")));
        let s_min = positive("scan.s_min", need("s_min", scan.s_min)?)?;
        let s_max = finite("scan.s_max", need("s_max", scan.s_max)?)?;
        let s_step = positive("scan.s_step", need("s_step", scan.s_step)?)?;
        if s_max < s_min {
            return Err(bad(format!("scan.s_max = {s_max} is below scan.s_min = {s_min}")));
        }
        let n = ((s_max - s_min) / s_step + 1e-9).floor() as usize;
        if n > 100_000 {
            return Err(bad("scan has more than 1e5 rows"));
        }
        let s_values = (0..=n)
            .map(|k| ((s_min + k as f64 * s_step) * 1e12).round() / 1e12)
            .collect();
        let tau_max = positive("scan.tau_max", ov.t_max.or(scan.tau_max).unwrap_or(DEFAULT_TAU_MAX))?;
        let kappa = positive("scan.kappa", scan.kappa.unwrap_or(2.0))?;
        Ok(Scan {
            s_values,
            tau_max,
            kappa,
            emit_plot_script: scan.emit_plot_script.unwrap_or(false),
        })
    }
}

impl Experiment {
    pub fn is_unital(&self) -> bool {
        self.channel.kind != ChannelKind::Gad
    }
}
