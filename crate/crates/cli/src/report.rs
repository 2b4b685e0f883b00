//! Single-point and extrema reports.

use std::f64::consts::PI;

use mazer_core::{
    channel_amplitudes, channel_probabilities, dressed_eigensystem, fast_limit_probabilities,
    slow_limit_transmission, solve_coupled_channels, transmission_extrema, OracleConfig,
    SystemParams,
};
use serde::Serialize;

use crate::error::CliError;
use crate::output::format_float;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub steps: usize,
    pub p_t1: f64,
    pub p_r1: f64,
    pub p_tj: f64,
    pub p_rj: f64,
    pub p_t0: f64,
    pub p_r0: f64,
    pub unitarity_residual: f64,
    /// Largest modulus difference from the closed-form amplitudes.
    pub max_amplitude_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub n_atoms: u32,
    pub u: f64,
    pub s: f64,
    pub tunneling: bool,
    pub p_t1: f64,
    pub p_r1: f64,
    pub p_tj: f64,
    pub p_rj: f64,
    pub p_t0: f64,
    pub p_r0: f64,
    pub p1: f64,
    pub pj: f64,
    pub p0: f64,
    pub total: f64,
    pub unitarity_residual: f64,
    pub eigenvalue_plus: f64,
    pub eigenvalue_dark: f64,
    pub eigenvalue_minus: f64,
    pub slow_limit_p_t1: f64,
    pub fast_limit_p1: f64,
    pub fast_limit_pj: f64,
    pub fast_limit_p0: f64,
    pub extrema_p_max: Option<f64>,
    pub extrema_p_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

pub fn point_report(params: &SystemParams, oracle: Option<&OracleConfig>) -> Result<PointReport, CliError> {
    let amps = channel_amplitudes(params)?;
    let p = channel_probabilities(&amps);
    let eig = dressed_eigensystem(params);
    let fast = fast_limit_probabilities(params);
    let extrema = transmission_extrema(params.n_atoms()).ok();
    let oracle = oracle
        .map(|config| -> Result<OracleReport, CliError> {
            let numeric = solve_coupled_channels(params, config)?;
            let q = channel_probabilities(&numeric);
            Ok(OracleReport {
                steps: config.steps(),
                p_t1: q.p_t1,
                p_r1: q.p_r1,
                p_tj: q.p_tj,
                p_rj: q.p_rj,
                p_t0: q.p_t0,
                p_r0: q.p_r0,
                unitarity_residual: q.unitarity_residual(),
                max_amplitude_difference: numeric.max_difference(&amps),
            })
        })
        .transpose()?;
    Ok(PointReport {
        n_atoms: params.n_atoms(),
        u: params.u(),
        s: params.s(),
        tunneling: params.is_tunneling(),
        p_t1: p.p_t1,
        p_r1: p.p_r1,
        p_tj: p.p_tj,
        p_rj: p.p_rj,
        p_t0: p.p_t0,
        p_r0: p.p_r0,
        p1: p.p1,
        pj: p.pj,
        p0: p.p0,
        total: p.total(),
        unitarity_residual: p.unitarity_residual(),
        eigenvalue_plus: eig.eigenvalues[0],
        eigenvalue_dark: eig.eigenvalues[1],
        eigenvalue_minus: eig.eigenvalues[2],
        slow_limit_p_t1: slow_limit_transmission(params),
        fast_limit_p1: fast.p1,
        fast_limit_pj: fast.pj,
        fast_limit_p0: fast.p0,
        extrema_p_max: extrema.map(|e| e.0),
        extrema_p_min: extrema.map(|e| e.1),
        oracle,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), format_float)
}

impl PointReport {
    /// Aligned `key  value` lines.
    pub fn to_text(&self) -> String {
        let mut lines = vec![
            ("n_atoms", self.n_atoms.to_string()),
            ("u", format_float(self.u)),
            ("s", format_float(self.s)),
            ("regime", if self.tunneling { "tunneling" } else { "above barrier" }.to_string()),
        ];
        for (k, v) in [
            ("p_t1", self.p_t1),
            ("p_r1", self.p_r1),
            ("p_tj", self.p_tj),
            ("p_rj", self.p_rj),
            ("p_t0", self.p_t0),
            ("p_r0", self.p_r0),
            ("p1", self.p1),
            ("pj", self.pj),
            ("p0", self.p0),
            ("total", self.total),
            ("unitarity_residual", self.unitarity_residual),
            ("eigenvalue_plus", self.eigenvalue_plus),
            ("eigenvalue_dark", self.eigenvalue_dark),
            ("eigenvalue_minus", self.eigenvalue_minus),
            ("slow_limit_p_t1", self.slow_limit_p_t1),
            ("fast_limit_p1", self.fast_limit_p1),
            ("fast_limit_pj", self.fast_limit_pj),
            ("fast_limit_p0", self.fast_limit_p0),
        ] {
            lines.push((k, format_float(v)));
        }
        lines.push(("extrema_p_max", opt(self.extrema_p_max)));
        lines.push(("extrema_p_min", opt(self.extrema_p_min)));
        if let Some(o) = &self.oracle {
            lines.push(("oracle_steps", o.steps.to_string()));
            for (k, v) in [
                ("oracle_p_t1", o.p_t1),
                ("oracle_p_r1", o.p_r1),
                ("oracle_p_tj", o.p_tj),
                ("oracle_p_rj", o.p_rj),
                ("oracle_p_t0", o.p_t0),
                ("oracle_p_r0", o.p_r0),
                ("oracle_unitarity_residual", o.unitarity_residual),
                ("oracle_max_amplitude_difference", o.max_amplitude_difference),
            ] {
                lines.push((k, format_float(v)));
            }
        }
        render(&lines)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremaReport {
    pub n_atoms: u32,
    pub p_max: f64,
    pub p_min: f64,
    /// Spacing of successive maxima in `s`: `2 pi / N^{1/4}`.
    pub period: f64,
}

pub fn extrema_report(n_atoms: u32) -> Result<ExtremaReport, CliError> {
    let (p_max, p_min) = transmission_extrema(n_atoms)?;
    Ok(ExtremaReport { n_atoms, p_max, p_min, period: 2.0 * PI / f64::from(n_atoms).powf(0.25) })
}

impl ExtremaReport {
    pub fn to_text(&self) -> String {
        render(&[
            ("n_atoms", self.n_atoms.to_string()),
            ("p_max", format_float(self.p_max)),
            ("p_min", format_float(self.p_min)),
            ("period", format_float(self.period)),
        ])
    }
}

fn render(lines: &[(&str, String)]) -> String {
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    lines.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
