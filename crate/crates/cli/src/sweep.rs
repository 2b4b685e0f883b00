//! Parameter sweeps over `(N, u, s)` grids.

use std::fmt;
use std::str::FromStr;

use mazer_core::{
    averaged_probabilities, channel_amplitudes, channel_probabilities, fast_limit_probabilities,
    slow_limit_transmission, solve_coupled_channels, ChannelProbabilities, OracleConfig,
    PacketSpec, SystemParams,
};
use rayon::prelude::*;

use crate::error::CliError;

/// Environment variable capping the worker pool; `0` or unset means auto.
pub const THREADS_ENV: &str = "MAZER_THREADS";

/// How each grid point is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Closed-form dressed-state amplitudes.
    Exact,
    /// Slow-atom transmission formula; fills `p_t1` only.
    SlowLimit,
    /// Fast-atom Rabi formulas; fills `p1`, `pj`, `p0` only.
    FastLimit,
    /// Gaussian momentum average of the exact probabilities.
    Averaged,
    /// Coupled-channel numerical integration.
    Oracle,
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "exact" => Ok(Mode::Exact),
            "slow" | "slow_limit" => Ok(Mode::SlowLimit),
            "fast" | "fast_limit" => Ok(Mode::FastLimit),
            "averaged" => Ok(Mode::Averaged),
            "oracle" => Ok(Mode::Oracle),
            other => Err(CliError::usage(format!(
                "mode: unknown mode `{other}` (expected exact, slow, fast, averaged or oracle)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::SlowLimit => "slow",
            Mode::FastLimit => "fast",
            Mode::Averaged => "averaged",
            Mode::Oracle => "oracle",
        })
    }
}

/// Evenly spaced `kappa L` grid, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SRange {
    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|k| {
                if k == last {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * k as f64 / last as f64
                }
            })
            .collect()
    }
}

/// Momentum spread for `averaged` mode; the mean is each swept `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSettings {
    pub u_sigma: f64,
    pub quadrature_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_values: Vec<u32>,
    pub u_values: Vec<f64>,
    pub s_range: SRange,
    pub mode: Mode,
    pub packet: Option<PacketSettings>,
    pub oracle_config: Option<OracleConfig>,
}

impl SweepSpec {
    /// Checks every field, naming the first offending one.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_values.is_empty() {
            return Err(CliError::usage("n_values: at least one atom count is required"));
        }
        if let Some(n) = self.n_values.iter().find(|&&n| n < 1) {
            return Err(CliError::usage(format!("n_values: {n} is not >= 1")));
        }
        if self.u_values.is_empty() {
            return Err(CliError::usage("u: at least one momentum is required"));
        }
        if let Some(u) = self.u_values.iter().find(|u| !(u.is_finite() && **u > 0.0)) {
            return Err(CliError::usage(format!("u: {u} is not a positive finite number")));
        }
        let r = &self.s_range;
        if r.points < 2 {
            return Err(CliError::usage("s_range: points must be at least 2"));
        }
        if !(r.start.is_finite() && r.stop.is_finite() && r.start >= 0.0) {
            return Err(CliError::usage("s_range: start and stop must be finite and >= 0"));
        }
        if r.start > r.stop {
            return Err(CliError::usage("s_range: start must not exceed stop"));
        }
        match (self.mode, &self.packet) {
            (Mode::Averaged, None) => {
                return Err(CliError::usage("u_sigma: required in averaged mode"));
            }
            (Mode::Averaged, Some(p)) => {
                if !(p.u_sigma.is_finite() && p.u_sigma >= 0.0) {
                    return Err(CliError::usage("u_sigma: must be finite and >= 0"));
                }
                if p.quadrature_points < 1 {
                    return Err(CliError::usage("quadrature_points: must be at least 1"));
                }
            }
            (_, Some(_)) => {
                return Err(CliError::usage("u_sigma: only valid in averaged mode"));
            }
            _ => {}
        }
        match (self.mode, &self.oracle_config) {
            (Mode::Oracle, None) => Err(CliError::usage("steps: required in oracle mode")),
            (Mode::Oracle, Some(_)) | (_, None) => Ok(()),
            (_, Some(_)) => Err(CliError::usage("steps: only valid in oracle mode")),
        }
    }

    /// Grid points in lexicographic `(n, u, s)` order.
    pub fn points(&self) -> Vec<(u32, f64, f64)> {
        let mut ns = self.n_values.clone();
        ns.sort_unstable();
        ns.dedup();
        let mut us = self.u_values.clone();
        us.sort_by(f64::total_cmp);
        us.dedup();
        let ss = self.s_range.values();
        let mut out = Vec::with_capacity(ns.len() * us.len() * ss.len());
        for &n in &ns {
            for &u in &us {
                out.extend(ss.iter().map(|&s| (n, u, s)));
            }
        }
        out
    }
}

/// One CSV row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub n_atoms: u32,
    pub u: f64,
    pub s: f64,
    pub probabilities: ChannelProbabilities,
    pub unitarity_residual: f64,
}

impl SweepRecord {
    pub fn p_t1(&self) -> f64 {
        self.probabilities.p_t1
    }
}

fn evaluate(spec: &SweepSpec, n: u32, u: f64, s: f64) -> Result<SweepRecord, CliError> {
    let params = SystemParams::new(n, u, s)?;
    let (probabilities, unitarity_residual) = match spec.mode {
        Mode::Exact => {
            let p = channel_probabilities(&channel_amplitudes(&params)?);
            (p, p.unitarity_residual())
        }
        Mode::SlowLimit => {
            let p = ChannelProbabilities { p_t1: slow_limit_transmission(&params), ..Default::default() };
            (p, 0.0)
        }
        Mode::FastLimit => {
            let f = fast_limit_probabilities(&params);
            let p = ChannelProbabilities { p1: f.p1, pj: f.pj, p0: f.p0, ..Default::default() };
            (p, p.unitarity_residual())
        }
        Mode::Averaged => {
            let settings = spec.packet.expect("validated");
            let packet = PacketSpec::new(u, settings.u_sigma, settings.quadrature_points)?;
            let p = averaged_probabilities(&packet, n, s)?;
            (p, p.unitarity_residual())
        }
        Mode::Oracle => {
            let config = spec.oracle_config.expect("validated");
            let p = channel_probabilities(&solve_coupled_channels(&params, &config)?);
            (p, p.unitarity_residual())
        }
    };
    Ok(SweepRecord { n_atoms: n, u, s, probabilities, unitarity_residual })
}

/// Worker count from `MAZER_THREADS`; `0` means one per core.
pub fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("{THREADS_ENV}: `{v}` is not a thread count"))),
        _ => Ok(0),
    }
}

/// Evaluates the sweep with the worker count taken from `MAZER_THREADS`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>, CliError> {
    run_sweep_with_threads(spec, threads_from_env()?)
}

/// Evaluates every grid point on a pool of `threads` workers (`0` = auto).
/// Output order is the lexicographic grid order regardless of scheduling.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRecord>, CliError> {
    spec.validate()?;
    let points = spec.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("{THREADS_ENV}: {e}")))?;
    pool.install(|| {
        points
            .par_iter()
            .map(|&(n, u, s)| evaluate(spec, n, u, s))
            .collect::<Result<Vec<_>, _>>()
    })
}
