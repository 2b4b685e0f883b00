//! Scenario parameters and the single-excitation eigensystem of the
//! atom-field interaction.
//!
//! Bare basis ordering used everywhere in the crate:
//! index 0 is `|1>` (moving atom excited), index 1 is the normalized
//! symmetric collective state `|j>` of the `N - 1` trapped atoms, index 2 is
//! `|0>` (one photon in the mode).


use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Dimensionless description of one scattering scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    n_atoms: u32,
    u: f64,
    s: f64,
}

impl SystemParams {
    /// Builds a validated scenario.
    ///
    /// `n_atoms` is the total atom count `N` (moving atom included), `u` the
    /// incident momentum `chi / kappa` and `s` the cavity length `kappa L`.
    pub fn new(n_atoms: u32, u: f64, s: f64) -> Result<Self> {
        if n_atoms < 1 {
            return Err(Error::invalid("n_atoms", "must be at least 1"));
        }
        if !(u.is_finite() && u > 0.0) {
            return Err(Error::invalid("u", "must be finite and strictly positive"));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::invalid("s", "must be finite and non-negative"));
        }
        Ok(SystemParams { n_atoms, u, s })
    }

    /// Total number of atoms `N`.
    pub fn n_atoms(&self) -> u32 {
        self.n_atoms
    }

    /// Incident momentum in units of `kappa`.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Cavity length in units of `1 / kappa`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Same atoms and cavity, different incident momentum.
    pub fn with_u(&self, u: f64) -> Result<Self> {
        SystemParams::new(self.n_atoms, u, self.s)
    }

    /// Same atoms and momentum, different cavity length.
    pub fn with_s(&self, s: f64) -> Result<Self> {
        SystemParams::new(self.n_atoms, self.u, s)
    }

    /// `N` as a float.
    pub fn n(&self) -> f64 {
        f64::from(self.n_atoms)
    }

    /// Collective coupling enhancement `sqrt(N - 1)`.
    pub fn sqrt_n_minus_1(&self) -> f64 {
        f64::from(self.n_atoms - 1).sqrt()
    }

    /// Height of the induced barrier, `sqrt(N)` in units of `hbar g`.
    pub fn potential_height(&self) -> f64 {
        self.n().sqrt()
    }

    /// `true` when the incident energy lies below the barrier (`u^2 < sqrt(N)`).
    pub fn is_tunneling(&self) -> bool {
        self.u * self.u < self.potential_height()
    }
}

/// Interaction Hamiltonian restricted to the single-excitation sector, in
/// units of `hbar g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingMatrix([[f64; 3]; 3]);

impl CouplingMatrix {
    /// Row-major entries.
    pub fn as_array(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    /// Entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[row][col]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }
}

/// Coupling matrix `[[0,0,1],[0,0,sqrt(N-1)],[1,sqrt(N-1),0]]`.
///
/// The photon state couples to the moving atom with strength 1 and to the
/// symmetric collective state with strength `sqrt(N-1)`; the two atomic
/// states do not couple to each other directly.
pub fn coupling_matrix(params: &SystemParams) -> CouplingMatrix {
    let c = params.sqrt_n_minus_1();
    CouplingMatrix([[0.0, 0.0, 1.0], [0.0, 0.0, c], [1.0, c, 0.0]])
}

/// Dressed eigenvalues and eigenvectors, ordered `(+, 0, -)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedEigensystem {
    /// `+sqrt(N)`, `0`, `-sqrt(N)` in units of `hbar g`.
    pub eigenvalues: [f64; 3],
    /// `eigenvectors[k]` holds the bare-basis coefficients of dressed state
    /// `k`.
    pub eigenvectors: [[f64; 3]; 3],
}

impl DressedEigensystem {
    /// Index of `|Psi(+)>`.
    pub const PLUS: usize = 0;
    /// Index of the dark state `|Psi(0)>`.
    pub const DARK: usize = 1;
    /// Index of `|Psi(-)>`.
    pub const MINUS: usize = 2;

    /// Maps dressed-basis coefficients back to the bare basis.
    pub fn to_bare(&self, dressed: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (coef, vec) in dressed.iter().zip(self.eigenvectors.iter()) {
            for (o, v) in out.iter_mut().zip(vec.iter()) {
                *o += coef * v;
            }
        }
        out
    }
}

/// Closed-form dressed states.
///
/// `|Psi(+-)> = (|1> + sqrt(N-1)|j>)/sqrt(2N) +- |0>/sqrt(2)` and
/// `|Psi(0)> = (sqrt(N-1)|1> - |j>)/sqrt(N)`. For `N = 1` the dark state
/// reduces to `-|j>`, which is decoupled.
pub fn dressed_eigensystem(params: &SystemParams) -> DressedEigensystem {
    let n = params.n();
    let c = params.sqrt_n_minus_1();
    let a = (2.0 * n).sqrt().recip();
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let d = n.sqrt().recip();
    let root = n.sqrt();
    DressedEigensystem {
        eigenvalues: [root, 0.0, -root],
        eigenvectors: [[a, c * a, h], [c * d, -d, 0.0], [a, c * a, -h]],
    }
}

/// Coefficients `(c+, c0, c-)` of `|1>` in the dressed basis:
/// `|1> = [|Psi(+)> + sqrt(2(N-1)) |Psi(0)> + |Psi(-)>] / sqrt(2N)`.
pub fn bare_state_decomposition(params: &SystemParams) -> [f64; 3] {
    let n = params.n();
    let edge = (2.0 * n).sqrt().recip();
    let dark = (2.0 * (n - 1.0)).sqrt() * edge;
    [edge, dark, edge]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32) -> SystemParams {
        SystemParams::new(n, 0.5, 1.0).unwrap()
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(matches!(
            SystemParams::new(0, 1.0, 1.0),
            Err(Error::InvalidParameter { name: "n_atoms", .. })
        ));
        assert!(SystemParams::new(1, 0.0, 1.0).is_err());
        assert!(SystemParams::new(1, -0.1, 1.0).is_err());
        assert!(SystemParams::new(1, f64::NAN, 1.0).is_err());
        assert!(SystemParams::new(1, 1.0, -1e-9).is_err());
        assert!(SystemParams::new(1, 1.0, f64::INFINITY).is_err());
        assert!(SystemParams::new(1, 1e-300, 0.0).is_ok());
    }

    #[test]
    fn coupling_matrix_small_n() {
        assert_eq!(
            coupling_matrix(&params(1)).as_array(),
            &[[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]
        );
        assert_eq!(
            coupling_matrix(&params(2)).as_array(),
            &[[0.0, 0.0, 1.0], [0.0, 0.0, 1.0], [1.0, 1.0, 0.0]]
        );
        let m5 = coupling_matrix(&params(5));
        assert_eq!(m5.get(1, 2), 2.0);
        assert_eq!(m5.get(2, 1), 2.0);
    }

    fn assert_close(got: &[f64; 3], want: &[f64; 3]) {
        for (g, w) in got.iter().zip(want.iter()) {
            assert!((g - w).abs() < 1e-15, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn single_atom_dressed_states() {
        let eig = dressed_eigensystem(&params(1));
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(eig.eigenvalues, [1.0, 0.0, -1.0]);
        assert_close(&eig.eigenvectors[DressedEigensystem::PLUS], &[h, 0.0, h]);
        assert_close(&eig.eigenvectors[DressedEigensystem::DARK], &[0.0, -1.0, 0.0]);
        assert_close(&eig.eigenvectors[DressedEigensystem::MINUS], &[h, 0.0, -h]);
    }

    #[test]
    fn dark_state_coefficient_n4() {
        let eig = dressed_eigensystem(&params(4));
        let expected = 3.0f64.sqrt() / 2.0;
        assert!((eig.eigenvectors[DressedEigensystem::DARK][0] - expected).abs() < 1e-15);
    }

    #[test]
    fn decomposition_examples() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert_close(&bare_state_decomposition(&params(1)), &[h, 0.0, h]);
        let c = bare_state_decomposition(&params(2));
        assert!((c[0] - 0.5).abs() < 1e-15);
        assert!((c[1] - h).abs() < 1e-15);
        assert!((c[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn decomposition_reconstructs_excited_state() {
        for n in [1, 2, 3, 7, 100, 10_000] {
            let p = params(n);
            let bare = dressed_eigensystem(&p).to_bare(&bare_state_decomposition(&p));
            assert!((bare[0] - 1.0).abs() < 1e-14, "n={n}: {bare:?}");
            assert!(bare[1].abs() < 1e-14 && bare[2].abs() < 1e-14, "n={n}: {bare:?}");
        }
    }
}
