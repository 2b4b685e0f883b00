//! Incoherent averaging of the channel probabilities over the momentum
//! distribution of a Gaussian incident packet.
//!
//! Each momentum component scatters independently; cross terms between
//! different momenta drop out of the asymptotic probabilities, so the
//! packet result is the `|A(u)|^2`-weighted mean of the stationary ones.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::scattering::{channel_amplitudes, channel_probabilities, ChannelProbabilities};
#[allow(unused_imports)]
use num_traits::Float;

/// Half-width of the momentum grid in standard deviations.
pub const TRUNCATION_SIGMAS: f64 = 5.0;

/// Gaussian momentum distribution of the incident atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    u_mean: f64,
    u_sigma: f64,
    quadrature_points: usize,
}

impl PacketSpec {
    /// Default number of evenly spaced abscissae.
    pub const DEFAULT_POINTS: usize = 129;

    /// Validated packet; `u_sigma = 0` is a sharp momentum.
    pub fn new(u_mean: f64, u_sigma: f64, quadrature_points: usize) -> Result<Self> {
        if !(u_mean.is_finite() && u_mean > 0.0) {
            return Err(Error::invalid("u_mean", "must be finite and strictly positive"));
        }
        if !(u_sigma.is_finite() && u_sigma >= 0.0) {
            return Err(Error::invalid("u_sigma", "must be finite and non-negative"));
        }
        if quadrature_points < 1 {
            return Err(Error::invalid("quadrature_points", "must be at least 1"));
        }
        Ok(PacketSpec { u_mean, u_sigma, quadrature_points })
    }

    /// Packet with the default quadrature.
    pub fn gaussian(u_mean: f64, u_sigma: f64) -> Result<Self> {
        Self::new(u_mean, u_sigma, Self::DEFAULT_POINTS)
    }

    /// Mean momentum.
    pub fn u_mean(&self) -> f64 {
        self.u_mean
    }

    /// Momentum standard deviation.
    pub fn u_sigma(&self) -> f64 {
        self.u_sigma
    }

    /// Number of abscissae.
    pub fn quadrature_points(&self) -> usize {
        self.quadrature_points
    }

    /// Abscissae with normalized weights over `u_mean +- 5 sigma`, keeping
    /// only `u > 0`.
    ///
    /// Evenly spaced nodes carry composite Simpson weights times the
    /// Gaussian density. When the window reaches below zero the grid starts
    /// at the cut instead, with the first node nudged to a tiny positive
    /// momentum since `u = 0` itself is not a valid scenario.
    pub fn nodes(&self) -> Result<Vec<(f64, f64)>> {
        if self.u_sigma == 0.0 || self.quadrature_points == 1 {
            return Ok(alloc::vec![(self.u_mean, 1.0)]);
        }
        let hi = self.u_mean + TRUNCATION_SIGMAS * self.u_sigma;
        let lo = (self.u_mean - TRUNCATION_SIGMAS * self.u_sigma).max(0.0);
        let count = self.quadrature_points;
        let step = (hi - lo) / (count - 1) as f64;
        let rule = newton_cotes_weights(count);
        let mut nodes: Vec<(f64, f64)> = rule
            .iter()
            .enumerate()
            .map(|(k, &r)| {
                let mut u = lo + step * k as f64;
                if u <= 0.0 {
                    u = step * CUT_OFFSET;
                }
                let z = (u - self.u_mean) / self.u_sigma;
                (u, r * (-0.5 * z * z).exp())
            })
            .collect();
        let total = compensated_sum(nodes.iter().map(|&(_, w)| w));
        if !(total > 0.0) {
            return Err(Error::EmptyQuadrature);
        }
        for node in nodes.iter_mut() {
            node.1 /= total;
        }
        Ok(nodes)
    }
}

/// Position of the first node, in grid steps, when the grid starts at `u = 0`.
const CUT_OFFSET: f64 = 1e-9;

/// Relative weights of a composite closed Newton-Cotes rule on `count`
/// evenly spaced points: Simpson 1/3 throughout, with a trailing 3/8 panel
/// when the number of intervals is odd.
fn newton_cotes_weights(count: usize) -> Vec<f64> {
    let mut w = alloc::vec![0.0; count];
    let intervals = count - 1;
    match intervals {
        0 => w[0] = 1.0,
        1 => {
            w[0] = 0.5;
            w[1] = 0.5;
        }
        _ => {
            let (simpson, tail) = if intervals.is_multiple_of(2) { (intervals, 0) } else { (intervals - 3, 3) };
            for k in (0..simpson).step_by(2) {
                w[k] += 1.0 / 3.0;
                w[k + 1] += 4.0 / 3.0;
                w[k + 2] += 1.0 / 3.0;
            }
            if tail == 3 {
                for (offset, c) in [3.0, 9.0, 9.0, 3.0].iter().enumerate() {
                    w[simpson + offset] += c / 8.0;
                }
            }
        }
    }
    w
}

/// Neumaier-compensated sum, so the reduction is accurate to a few ulps
/// regardless of term ordering.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `<P> = sum_k w_k P(u_k)` over the packet's momentum nodes for `n_atoms`
/// atoms and cavity length `s`.
pub fn averaged_probabilities(
    packet: &PacketSpec,
    n_atoms: u32,
    s: f64,
) -> Result<ChannelProbabilities> {
    let nodes = packet.nodes()?;
    let samples = nodes
        .iter()
        .map(|&(u, w)| {
            let params = SystemParams::new(n_atoms, u, s)?;
            Ok((w, channel_probabilities(&channel_amplitudes(&params)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(weighted_mean(&samples))
}

/// Weighted mean of per-momentum probabilities; weights must sum to 1.
pub fn weighted_mean(samples: &[(f64, ChannelProbabilities)]) -> ChannelProbabilities {
    let field = |idx: usize| compensated_sum(samples.iter().map(|(w, p)| w * p.to_array()[idx]));
    ChannelProbabilities::from_channels(field(0), field(1), field(2), field(3), field(4), field(5))
}
