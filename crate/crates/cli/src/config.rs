//! Flat `key = value` sweep configuration files.
//!
//! ```text
//! # slow atom, four atom counts
//! n_values = 1, 3, 8, 100
//! u = 0.03
//! s_range = 0, 12, 1201
//! mode = exact
//! ```
//!
//! Lists are comma separated. `u_sigma` and `quadrature_points` belong to
//! averaged mode, `steps` and `scheme_order` to oracle mode. Blank lines and
//! `#` comments are ignored.

use std::collections::BTreeMap;
use std::str::FromStr;

use mazer_core::{OracleConfig, PacketSpec};

use crate::error::CliError;
use crate::sweep::{Mode, PacketSettings, SRange, SweepSpec};

const KEYS: &[&str] = &[
    "n_values",
    "u",
    "s_range",
    "mode",
    "u_sigma",
    "quadrature_points",
    "steps",
    "scheme_order",
];

/// Default `kappa L` grid.
pub const DEFAULT_S_RANGE: SRange = SRange { start: 0.0, stop: 12.0, points: 1201 };

/// Raw key-value pairs; later values win, so command-line flags can be
/// layered on top with [`ConfigValues::set`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigValues(BTreeMap<String, String>);

impl ConfigValues {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = ConfigValues::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {}: expected `key = value`", lineno + 1))
            })?;
            values.set(key.trim(), value.trim())?;
        }
        Ok(values)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KEYS.contains(&key) {
            return Err(CliError::usage(format!("{key}: unknown configuration key")));
        }
        self.0.insert(key.to_string(), value.to_string());
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn scalar<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::usage(format!("{key}: cannot parse `{v}`")))
            })
            .transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, CliError> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|item| !item.is_empty())
                    .map(|item| {
                        item.parse()
                            .map_err(|_| CliError::usage(format!("{key}: cannot parse `{item}`")))
                    })
                    .collect()
            })
            .transpose()
    }

    /// Builds and validates the sweep.
    pub fn to_spec(&self) -> Result<SweepSpec, CliError> {
        let n_values = self
            .list::<u32>("n_values")?
            .ok_or_else(|| CliError::usage("n_values: missing"))?;
        let u_values = self.list::<f64>("u")?.ok_or_else(|| CliError::usage("u: missing"))?;
        let s_range = match self.list::<f64>("s_range")? {
            None => DEFAULT_S_RANGE,
            Some(v) => parse_range(&v)?,
        };
        let mode = self.scalar::<Mode>("mode")?.unwrap_or(Mode::Exact);

        let u_sigma = self.scalar::<f64>("u_sigma")?;
        let quadrature_points = self.scalar::<usize>("quadrature_points")?;
        let packet = match (u_sigma, quadrature_points) {
            (None, None) => None,
            (None, Some(_)) => {
                return Err(CliError::usage("u_sigma: required when quadrature_points is set"))
            }
            (Some(u_sigma), q) => Some(PacketSettings {
                u_sigma,
                quadrature_points: q.unwrap_or(PacketSpec::DEFAULT_POINTS),
            }),
        };

        let steps = self.scalar::<usize>("steps")?;
        let order = self.scalar::<u32>("scheme_order")?;
        let oracle_config = if steps.is_some() || order.is_some() || mode == Mode::Oracle {
            Some(OracleConfig::with_order(
                steps.unwrap_or(OracleConfig::DEFAULT_STEPS),
                order.unwrap_or(OracleConfig::SCHEME_ORDER),
            )?)
        } else {
            None
        };

        let spec = SweepSpec { n_values, u_values, s_range, mode, packet, oracle_config };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_range(v: &[f64]) -> Result<SRange, CliError> {
    match v {
        [start, stop, points] if points.fract() == 0.0 && *points >= 0.0 => {
            Ok(SRange { start: *start, stop: *stop, points: *points as usize })
        }
        _ => Err(CliError::usage("s_range: expected `start, stop, points`")),
    }
}
