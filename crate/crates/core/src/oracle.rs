//! Brute-force coupled-channel solver used to cross-check the closed forms.
//!
//! Inside the cavity the stationary equation in the bare basis reads
//! `psi'' = (M - u^2) psi` with `M` the coupling matrix; outside it is free.
//! The solver never diagonalizes `M`. It starts from the three purely
//! outgoing solutions at the exit face `z = s` (unit transmitted wave in one
//! channel each), integrates them back to `z = 0` with classic fixed-step
//! RK4, and matches them to incident-plus-reflected waves. Matching is a
//! 6x6 complex linear system in the three reflection amplitudes and the
//! three (rescaled) transmission amplitudes.
//!
//! Under a barrier the backward solutions grow like `e^{|xi| s}`. Every
//! [`CHECKPOINT_STEPS`] steps the columns are re-orthonormalized and the
//! triangular factors are kept, so the true transmission amplitudes are
//! recovered by back-substitution through them at the end.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{solve_upper, Lu, Matrix};
use crate::model::{coupling_matrix, dressed_eigensystem, SystemParams};
use crate::scattering::{channel_amplitudes, ChannelAmplitudes};
#[allow(unused_imports)]
use num_traits::Float;

/// Steps between column re-orthonormalizations.
pub const CHECKPOINT_STEPS: usize = 32;

/// Matching systems with a larger 1-norm condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Integration settings for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    steps: usize,
    scheme_order: u32,
}

impl OracleConfig {
    /// Default number of steps across the cavity.
    pub const DEFAULT_STEPS: usize = 4096;
    /// Fewest steps accepted.
    pub const MIN_STEPS: usize = 100;
    /// The only implemented scheme is classic RK4.
    pub const SCHEME_ORDER: u32 = 4;

    /// Fixed-step RK4 configuration with `steps` steps.
    pub fn new(steps: usize) -> Result<Self> {
        Self::with_order(steps, Self::SCHEME_ORDER)
    }

    /// Validates both fields; `scheme_order` must be 4.
    pub fn with_order(steps: usize, scheme_order: u32) -> Result<Self> {
        if steps < Self::MIN_STEPS {
            return Err(Error::invalid("steps", "must be at least 100"));
        }
        if scheme_order != Self::SCHEME_ORDER {
            return Err(Error::invalid("scheme_order", "only the 4th-order scheme is implemented"));
        }
        Ok(OracleConfig { steps, scheme_order })
    }

    /// Number of fixed steps across `[0, s]`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Order of the integration scheme.
    pub fn scheme_order(&self) -> u32 {
        self.scheme_order
    }
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { steps: Self::DEFAULT_STEPS, scheme_order: Self::SCHEME_ORDER }
    }
}

/// `C` solutions of a `C`-channel problem: column `k` of `psi` and `dpsi`
/// holds the wave function and its derivative.
#[derive(Clone, Copy)]
struct Block<const C: usize> {
    psi: [[Complex64; C]; C],
    dpsi: [[Complex64; C]; C],
}

impl<const C: usize> Block<C> {
    /// `(psi, dpsi)' = (dpsi, W psi)`.
    fn derivative(&self, w: &[[f64; C]; C]) -> Self {
        let mut accel = [[ZERO; C]; C];
        for (i, row) in accel.iter_mut().enumerate() {
            for (k, out) in row.iter_mut().enumerate() {
                *out = (0..C).map(|j| self.psi[j][k] * w[i][j]).sum();
            }
        }
        Block { psi: self.dpsi, dpsi: accel }
    }

    fn axpy(&self, h: f64, other: &Self) -> Self {
        let mut out = *self;
        for i in 0..C {
            for k in 0..C {
                out.psi[i][k] += other.psi[i][k] * h;
                out.dpsi[i][k] += other.dpsi[i][k] * h;
            }
        }
        out
    }

    fn rk4_step(&self, w: &[[f64; C]; C], h: f64) -> Self {
        let k1 = self.derivative(w);
        let k2 = self.axpy(0.5 * h, &k1).derivative(w);
        let k3 = self.axpy(0.5 * h, &k2).derivative(w);
        let k4 = self.axpy(h, &k3).derivative(w);
        let mut out = *self;
        let f = h / 6.0;
        for i in 0..C {
            for k in 0..C {
                out.psi[i][k] += (k1.psi[i][k]
                    + (k2.psi[i][k] + k3.psi[i][k]) * 2.0
                    + k4.psi[i][k])
                    * f;
                out.dpsi[i][k] += (k1.dpsi[i][k]
                    + (k2.dpsi[i][k] + k3.dpsi[i][k]) * 2.0
                    + k4.dpsi[i][k])
                    * f;
            }
        }
        out
    }

    /// Modified Gram-Schmidt over the stacked `(psi, dpsi)` columns; returns
    /// the upper-triangular factor.
    fn orthonormalize(&mut self) -> [[Complex64; C]; C] {
        let mut r = [[ZERO; C]; C];
        for j in 0..C {
            for k in 0..j {
                let proj: Complex64 = (0..C)
                    .map(|i| {
                        self.psi[i][k].conj() * self.psi[i][j]
                            + self.dpsi[i][k].conj() * self.dpsi[i][j]
                    })
                    .sum();
                r[k][j] = proj;
                for i in 0..C {
                    let (p, d) = (self.psi[i][k], self.dpsi[i][k]);
                    self.psi[i][j] -= proj * p;
                    self.dpsi[i][j] -= proj * d;
                }
            }
            let norm = (0..C)
                .map(|i| self.psi[i][j].norm_sqr() + self.dpsi[i][j].norm_sqr())
                .sum::<f64>()
                .sqrt();
            r[j][j] = Complex64::new(norm, 0.0);
            for i in 0..C {
                self.psi[i][j] /= norm;
                self.dpsi[i][j] /= norm;
            }
        }
        r
    }
}

/// Reflection and transmission vectors of a `C`-channel problem with
/// coupling `coupling` (units of `hbar g`) for incident amplitudes
/// `incident` at momentum `u` through a cavity of width `s`.
fn solve_channels<const C: usize>(
    coupling: &[[f64; C]; C],
    incident: &[Complex64; C],
    u: f64,
    s: f64,
    config: &OracleConfig,
) -> Result<([Complex64; C], [Complex64; C])> {
    let mut w = *coupling;
    for (i, row) in w.iter_mut().enumerate() {
        row[i] -= u * u;
    }

    let exit = Complex64::from_polar(1.0, u * s);
    let iu = Complex64::new(0.0, u);
    let mut block = Block { psi: [[ZERO; C]; C], dpsi: [[ZERO; C]; C] };
    for i in 0..C {
        block.psi[i][i] = exit;
        block.dpsi[i][i] = iu * exit;
    }

    let mut factors: Vec<[[Complex64; C]; C]> = Vec::new();
    if s > 0.0 {
        let h = -s / config.steps() as f64;
        for step in 1..=config.steps() {
            block = block.rk4_step(&w, h);
            if step % CHECKPOINT_STEPS == 0 && step != config.steps() {
                factors.push(block.orthonormalize());
            }
        }
    }

    // Unknowns (R, d): psi(0) d - R = e, dpsi(0) d + iu R = iu e.
    let mut a = Matrix::zeros(2 * C);
    let mut rhs = Vec::with_capacity(2 * C);
    for i in 0..C {
        a.set(i, i, Complex64::new(-1.0, 0.0));
        a.set(C + i, i, iu);
        for k in 0..C {
            a.set(i, C + k, block.psi[i][k]);
            a.set(C + i, C + k, block.dpsi[i][k]);
        }
        rhs.push(incident[i]);
    }
    for i in 0..C {
        rhs.push(iu * incident[i]);
    }
    let norm = a.norm1();
    if !norm.is_finite() {
        return Err(Error::SingularMatching { condition: f64::INFINITY });
    }
    let lu = Lu::factor(a).ok_or(Error::SingularMatching { condition: f64::INFINITY })?;
    let condition = norm * lu.inverse_norm1();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularMatching { condition });
    }
    let x = lu.solve(&rhs);
    if !x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::SingularMatching { condition });
    }

    let mut reflection = [ZERO; C];
    let mut transmission = [ZERO; C];
    reflection.copy_from_slice(&x[..C]);
    transmission.copy_from_slice(&x[C..]);
    for r in factors.iter().rev() {
        solve_upper(r, &mut transmission);
    }
    Ok((reflection, transmission))
}

/// Channel amplitudes from direct integration of the coupled bare-basis
/// equations.
pub fn solve_coupled_channels(
    params: &SystemParams,
    config: &OracleConfig,
) -> Result<ChannelAmplitudes> {
    let m = *coupling_matrix(params).as_array();
    let one = Complex64::new(1.0, 0.0);
    let (r, t) = solve_channels(&m, &[one, ZERO, ZERO], params.u(), params.s(), config)?;
    Ok(ChannelAmplitudes::from_vectors(r, t))
}

/// `(rho, tau)` of a single rectangular potential of height `potential`
/// (units of `hbar g`), found by integration.
pub fn solve_single_channel(
    potential: f64,
    u: f64,
    s: f64,
    config: &OracleConfig,
) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let (r, t) = solve_channels(&[[potential]], &[one], u, s, config)?;
    Ok((r[0], t[0]))
}

/// Same problem solved in a rotated basis: the rows of `basis` are
/// orthonormal vectors given in bare coordinates. The coupling and incident
/// state are rotated in, the coupled system is integrated, and the result is
/// rotated back.
pub fn solve_in_basis(
    params: &SystemParams,
    config: &OracleConfig,
    basis: &[[f64; 3]; 3],
) -> Result<ChannelAmplitudes> {
    let m = coupling_matrix(params);
    let mut rotated = [[0.0; 3]; 3];
    for (a, row) in rotated.iter_mut().enumerate() {
        let mb = m.apply(&basis[a]);
        for (b, out) in row.iter_mut().enumerate() {
            *out = (0..3).map(|i| basis[b][i] * mb[i]).sum();
        }
    }
    let incident = [
        Complex64::new(basis[0][0], 0.0),
        Complex64::new(basis[1][0], 0.0),
        Complex64::new(basis[2][0], 0.0),
    ];
    let (r, t) = solve_channels(&rotated, &incident, params.u(), params.s(), config)?;
    Ok(ChannelAmplitudes::from_vectors(rotate_back(basis, &r), rotate_back(basis, &t)))
}

/// Integrates the three dressed channels as independent one-channel
/// problems and recombines them in the bare basis.
pub fn solve_decoupled(params: &SystemParams, config: &OracleConfig) -> Result<ChannelAmplitudes> {
    let eig = dressed_eigensystem(params);
    let mut r = [ZERO; 3];
    let mut t = [ZERO; 3];
    for k in 0..3 {
        let incident = [Complex64::new(eig.eigenvectors[k][0], 0.0)];
        let (rk, tk) =
            solve_channels(&[[eig.eigenvalues[k]]], &incident, params.u(), params.s(), config)?;
        r[k] = rk[0];
        t[k] = tk[0];
    }
    Ok(ChannelAmplitudes::from_vectors(
        rotate_back(&eig.eigenvectors, &r),
        rotate_back(&eig.eigenvectors, &t),
    ))
}

fn rotate_back(basis: &[[f64; 3]; 3], v: &[Complex64; 3]) -> [Complex64; 3] {
    let mut out = [ZERO; 3];
    for (coef, vec) in v.iter().zip(basis.iter()) {
        for (o, b) in out.iter_mut().zip(vec.iter()) {
            *o += coef * *b;
        }
    }
    out
}

/// Oracle error against the closed-form amplitudes for each step count of
/// `step_ladder`, which must be strictly increasing.
pub fn convergence_study(params: &SystemParams, step_ladder: &[usize]) -> Result<Vec<(usize, f64)>> {
    if step_ladder.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("step_ladder", "must be strictly increasing"));
    }
    let exact = channel_amplitudes(params)?;
    step_ladder
        .iter()
        .map(|&steps| {
            let oracle = solve_coupled_channels(params, &OracleConfig::new(steps)?)?;
            Ok((steps, oracle.max_difference(&exact)))
        })
        .collect()
}
