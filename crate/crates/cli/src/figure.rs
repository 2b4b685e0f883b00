//! Built-in sweeps reproducing the standard transmission plots.

use std::str::FromStr;

use crate::config::DEFAULT_S_RANGE;
use crate::error::CliError;
use crate::sweep::{run_sweep_with_threads, Mode, SweepRecord, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Slow atom (`u = 0.03`) for `N = 1, 3, 8, 100`.
    Fig2,
    /// `(N, u) = (100, 1.01)` and `(2000, 5)`: above-barrier onset of the
    /// dark-state transparency.
    Fig3,
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            other => Err(CliError::usage(format!("figure: unknown figure `{other}` (expected fig2 or fig3)"))),
        }
    }
}

fn exact(n_values: Vec<u32>, u: f64) -> SweepSpec {
    SweepSpec {
        n_values,
        u_values: vec![u],
        s_range: DEFAULT_S_RANGE,
        mode: Mode::Exact,
        packet: None,
        oracle_config: None,
    }
}

impl Figure {
    /// Sweeps whose records are concatenated in order.
    pub fn sweeps(self) -> Vec<SweepSpec> {
        match self {
            Figure::Fig2 => vec![exact(vec![1, 3, 8, 100], 0.03)],
            Figure::Fig3 => vec![exact(vec![100], 1.01), exact(vec![2000], 5.0)],
        }
    }

    pub fn records(self, threads: usize) -> Result<Vec<SweepRecord>, CliError> {
        let mut out = Vec::new();
        for spec in self.sweeps() {
            out.extend(run_sweep_with_threads(&spec, threads)?);
        }
        Ok(out)
    }
}
