//! Closed-form scattering amplitudes.
//!
//! Each dressed component of the incoming excited atom scatters off a
//! rectangular potential of width `s`: a barrier of height `+sqrt(N)` for
//! `|Psi(+)>`, a well of depth `sqrt(N)` for `|Psi(-)>` and nothing at all for
//! the dark state. Projecting the outgoing dressed waves back onto the bare
//! states gives the channel amplitudes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::SystemParams;
#[allow(unused_imports)]
use num_traits::Float;

/// Below this `|s xi|` the `sin(s xi) / xi` factor is evaluated from its
/// Taylor series.
const SERIES_THRESHOLD: f64 = 1e-6;

/// Which dressed potential a mesa amplitude belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Barrier `+sqrt(N)` seen by `|Psi(+)>`.
    Barrier,
    /// Well `-sqrt(N)` seen by `|Psi(-)>`.
    Well,
}

impl Branch {
    /// Potential sign, `+1` for the barrier and `-1` for the well.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Barrier => 1.0,
            Branch::Well => -1.0,
        }
    }
}

/// Reflection and transmission amplitude of one rectangular potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MesaAmplitudes {
    /// Reflection amplitude.
    pub rho: Complex64,
    /// Transmission amplitude, normalized so that free propagation gives 1.
    pub tau: Complex64,
    /// Internal wave number (principal root of `u^2 -+ sqrt(N)`).
    pub xi: Complex64,
}

impl MesaAmplitudes {
    /// Amplitudes for a potential region with internal wave number `xi`,
    /// outside momentum `u` and width `s`.
    ///
    /// Only even functions of `xi` enter, so either root may be passed.
    pub fn from_wavenumber(xi: Complex64, u: f64, s: f64) -> Result<Self> {
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::invalid("u", "must be finite and strictly positive"));
        }
        let xi_sq = xi * xi;
        let theta = xi * s;

        // cos and sin are carried with e^{-|Im theta|} divided out so wide
        // barriers cannot overflow; the factor cancels in rho and tau.
        let damp = theta.im.abs();
        let (cos_scaled, sin_scaled) = scaled_cos_sin(theta, damp);
        let sin_over_xi = if theta.norm() < SERIES_THRESHOLD {
            let t2 = theta * theta;
            let sinc = Complex64::new(1.0, 0.0) - t2 / 6.0 + t2 * t2 / 120.0;
            sinc * (s * (-damp).exp())
        } else {
            sin_scaled / xi
        };

        // alpha sin and beta sin written without 1/xi.
        let alpha_sin = (xi_sq - u * u) / (2.0 * u) * sin_over_xi;
        let beta_sin = (xi_sq + u * u) / (2.0 * u) * sin_over_xi;

        let i = Complex64::i();
        let denom = cos_scaled - i * beta_sin;
        let tau = Complex64::from_polar((-damp).exp(), -u * s) / denom;
        let rho = i * alpha_sin / denom;
        Ok(MesaAmplitudes { rho, tau, xi })
    }

    /// `|rho|^2 + |tau|^2`.
    pub fn total_probability(&self) -> f64 {
        self.rho.norm_sqr() + self.tau.norm_sqr()
    }
}

/// `(cos z, sin z) * e^{-damp}` without forming `cosh` or `sinh` of a large
/// argument.
fn scaled_cos_sin(z: Complex64, damp: f64) -> (Complex64, Complex64) {
    let (sx, cx) = z.re.sin_cos();
    let y = z.im;
    // cosh(y) e^{-damp} and sinh(y) e^{-damp} with damp = |y|.
    let ep = (y - damp).exp();
    let em = (-y - damp).exp();
    let ch = 0.5 * (ep + em);
    let sh = 0.5 * (ep - em);
    (Complex64::new(cx * ch, -sx * sh), Complex64::new(sx * ch, cx * sh))
}

/// Mesa amplitudes of the barrier (`Branch::Barrier`) or well
/// (`Branch::Well`) induced for the given scenario.
pub fn mesa_amplitudes(branch: Branch, params: &SystemParams) -> Result<MesaAmplitudes> {
    let u = params.u();
    let xi_sq = Complex64::new(u * u - branch.sign() * params.potential_height(), 0.0);
    MesaAmplitudes::from_wavenumber(xi_sq.sqrt(), u, params.s())
}

/// Amplitudes for ending up reflected or transmitted in each bare state
/// `|1>`, `|j>`, `|0>`, for an atom incident in `|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelAmplitudes {
    /// Reflected, moving atom still excited.
    pub r1: Complex64,
    /// Reflected, excitation handed to the trapped atoms.
    pub rj: Complex64,
    /// Reflected, photon left in the cavity.
    pub r0: Complex64,
    /// Transmitted, moving atom still excited.
    pub t1: Complex64,
    /// Transmitted, excitation handed to the trapped atoms.
    pub tj: Complex64,
    /// Transmitted, photon left in the cavity.
    pub t0: Complex64,
}

impl ChannelAmplitudes {
    /// Reflection amplitudes in bare-basis order.
    pub fn reflection(&self) -> [Complex64; 3] {
        [self.r1, self.rj, self.r0]
    }

    /// Transmission amplitudes in bare-basis order.
    pub fn transmission(&self) -> [Complex64; 3] {
        [self.t1, self.tj, self.t0]
    }

    /// Builds from reflection and transmission vectors in bare-basis order.
    pub fn from_vectors(reflection: [Complex64; 3], transmission: [Complex64; 3]) -> Self {
        ChannelAmplitudes {
            r1: reflection[0],
            rj: reflection[1],
            r0: reflection[2],
            t1: transmission[0],
            tj: transmission[1],
            t0: transmission[2],
        }
    }

    /// All six amplitudes, reflection first.
    pub fn to_array(&self) -> [Complex64; 6] {
        [self.r1, self.rj, self.r0, self.t1, self.tj, self.t0]
    }

    /// Largest modulus difference over the six amplitudes.
    pub fn max_difference(&self, other: &ChannelAmplitudes) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `sum_s |R(s)|^2 + |T(s)|^2`.
    pub fn total_probability(&self) -> f64 {
        self.to_array().iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Channel amplitudes assembled from the barrier and well amplitudes.
///
/// The dark-state component propagates freely (`rho = 0`, `tau = 1`), which
/// is where the `2(N-1)` and `-2` terms in the transmission come from.
pub fn channel_amplitudes(params: &SystemParams) -> Result<ChannelAmplitudes> {
    let plus = mesa_amplitudes(Branch::Barrier, params)?;
    let minus = mesa_amplitudes(Branch::Well, params)?;
    let n = params.n();
    let c = params.sqrt_n_minus_1();
    let root4n = (4.0 * n).sqrt();

    let r1 = (plus.rho + minus.rho) / (2.0 * n);
    let t_sum = plus.tau + minus.tau;
    Ok(ChannelAmplitudes {
        r1,
        rj: r1 * c,
        r0: (plus.rho - minus.rho) / root4n,
        t1: (t_sum + 2.0 * (n - 1.0)) / (2.0 * n),
        tj: (t_sum - 2.0) * c / (2.0 * n),
        t0: (plus.tau - minus.tau) / root4n,
    })
}

/// Modulus-squared amplitudes and per-state totals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChannelProbabilities {
    /// `|T(1)|^2`, the transmission probability of the excited atom.
    pub p_t1: f64,
    /// `|R(1)|^2`.
    pub p_r1: f64,
    /// `|T(j)|^2`.
    pub p_tj: f64,
    /// `|R(j)|^2`.
    pub p_rj: f64,
    /// `|T(0)|^2`.
    pub p_t0: f64,
    /// `|R(0)|^2`.
    pub p_r0: f64,
    /// Probability of leaving in `|1>`.
    pub p1: f64,
    /// Probability of leaving in `|j>`.
    pub pj: f64,
    /// Probability of leaving in `|0>` (photon emitted into the mode).
    pub p0: f64,
}

impl ChannelProbabilities {
    /// Builds the totals from the six channel probabilities.
    pub fn from_channels(p_t1: f64, p_r1: f64, p_tj: f64, p_rj: f64, p_t0: f64, p_r0: f64) -> Self {
        ChannelProbabilities {
            p_t1,
            p_r1,
            p_tj,
            p_rj,
            p_t0,
            p_r0,
            p1: p_t1 + p_r1,
            pj: p_tj + p_rj,
            p0: p_t0 + p_r0,
        }
    }

    /// `p1 + pj + p0`.
    pub fn total(&self) -> f64 {
        self.p1 + self.pj + self.p0
    }

    /// `|p1 + pj + p0 - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.total() - 1.0).abs()
    }

    /// Fields in CSV column order.
    pub fn to_array(&self) -> [f64; 9] {
        [
            self.p_t1, self.p_r1, self.p_tj, self.p_rj, self.p_t0, self.p_r0, self.p1, self.pj,
            self.p0,
        ]
    }
}

/// Componentwise `|amplitude|^2`.
pub fn channel_probabilities(amps: &ChannelAmplitudes) -> ChannelProbabilities {
    ChannelProbabilities::from_channels(
        amps.t1.norm_sqr(),
        amps.r1.norm_sqr(),
        amps.tj.norm_sqr(),
        amps.rj.norm_sqr(),
        amps.t0.norm_sqr(),
        amps.r0.norm_sqr(),
    )
}

/// Approximate `|T(1)|^2` for slow atoms (`u^2 << sqrt(N)`), where the
/// barrier component is fully reflected:
///
/// `[4(N-1)^2 + (1 + 4(N-1) cos(s N^{1/4})) / (1 + (N^{1/4}/(2u))^2 sin^2(s N^{1/4}))] / (4 N^2)`
///
/// Evaluated unconditionally; whether the slow regime applies is up to the
/// caller.
pub fn slow_limit_transmission(params: &SystemParams) -> f64 {
    let n = params.n();
    let q = n.sqrt().sqrt();
    let phase = params.s() * q;
    let (sin, cos) = phase.sin_cos();
    let beta = q / (2.0 * params.u());
    let resonant = (1.0 + 4.0 * (n - 1.0) * cos) / (1.0 + beta * beta * sin * sin);
    (4.0 * (n - 1.0) * (n - 1.0) + resonant) / (4.0 * n * n)
}

/// Slow-limit transmission maximum and minimum `((1 - 1/2N)^2, (1 - 3/2N)^2)`,
/// reached at `s N^{1/4} = 2 pi n` and `(2n + 1) pi` respectively.
///
/// Only defined for `N > 1`.
pub fn transmission_extrema(n_atoms: u32) -> Result<(f64, f64)> {
    if n_atoms <= 1 {
        return Err(Error::invalid("n_atoms", "extrema laws hold only for N > 1"));
    }
    let n = f64::from(n_atoms);
    let max = 1.0 - 1.0 / (2.0 * n);
    let min = 1.0 - 3.0 / (2.0 * n);
    Ok((max * max, min * min))
}

/// Fast-atom state probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FastLimitProbabilities {
    /// Probability of leaving in `|1>`.
    pub p1: f64,
    /// Probability of leaving in `|j>`.
    pub pj: f64,
    /// Probability of leaving in `|0>`.
    pub p0: f64,
}

impl FastLimitProbabilities {
    /// `p1 + pj + p0`.
    pub fn total(&self) -> f64 {
        self.p1 + self.pj + self.p0
    }
}

/// Rabi-type state probabilities for fast atoms (`u^2 >> sqrt(N)`), with the
/// collective Rabi phase `g t sqrt(N) = s sqrt(N) / (2u)` accumulated over the
/// transit time `t = mu L / (hbar chi)`.
pub fn fast_limit_probabilities(params: &SystemParams) -> FastLimitProbabilities {
    let n = params.n();
    let phi = params.s() * n.sqrt() / (2.0 * params.u());
    let (sin, cos) = phi.sin_cos();
    let stay = n - 1.0 + cos;
    let drop = cos - 1.0;
    FastLimitProbabilities {
        p1: stay * stay / (n * n),
        pj: (n - 1.0) * drop * drop / (n * n),
        p0: sin * sin / n,
    }
}
