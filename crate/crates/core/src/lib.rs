//! Scattering of a slow excited two-level atom through a single vacuum
//! cavity mode that already holds `N - 1` ground-state atoms.
//!
//! The interaction is restricted to the single-excitation sector spanned by
//! the bare states `|1>` (moving atom excited), `|j>` (symmetric collective
//! excitation of the trapped atoms) and `|0>` (one cavity photon). Its
//! dressed states see a rectangular barrier `+sqrt(N)`, a free channel and a
//! rectangular well `-sqrt(N)`, so the channel amplitudes follow in closed
//! form from the textbook mesa amplitudes.
//!
//! Everything is dimensionless: momenta in units of the CM wave vector
//! `kappa` (where `(hbar kappa)^2 / 2 mu = hbar g`), energies in units of
//! `hbar g`, lengths in units of `1 / kappa`.
//!
//! Modules:
//!
//! * [`model`] - scenario parameters, coupling matrix and dressed eigensystem.
//! * [`scattering`] - closed-form amplitudes, probabilities and limiting laws.
//! * [`oracle`] - brute-force coupled-channel integration in the bare basis.
//! * [`wavepacket`] - incoherent averaging over a Gaussian momentum spread.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
mod linalg;
pub mod model;
pub mod oracle;
pub mod scattering;
pub mod wavepacket;

pub use error::{Error, Result};
pub use model::{
    bare_state_decomposition, coupling_matrix, dressed_eigensystem, CouplingMatrix,
    DressedEigensystem, SystemParams,
};
pub use num_complex::Complex64;
pub use oracle::{
    convergence_study, solve_coupled_channels, solve_decoupled, solve_in_basis, solve_single_channel,
    OracleConfig,
};
pub use scattering::{
    channel_amplitudes, channel_probabilities, fast_limit_probabilities, mesa_amplitudes,
    slow_limit_transmission, transmission_extrema, Branch, ChannelAmplitudes,
    ChannelProbabilities, FastLimitProbabilities, MesaAmplitudes,
};
pub use wavepacket::{averaged_probabilities, PacketSpec};
