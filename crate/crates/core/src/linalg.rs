//! Small dense complex linear algebra for the oracle's matching problem.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square row-major matrix.
#[derive(Debug, Clone)]
pub(crate) struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub(crate) fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![ZERO; n * n] }
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.n + col] = v;
    }

    fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    /// Maximum absolute column sum; NaN if any entry is NaN.
    pub(crate) fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, nan_max)
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// LU factorization with partial pivoting.
pub(crate) struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Returns `None` when a pivot is exactly zero.
    pub(crate) fn factor(mut a: Matrix) -> Option<Self> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a.get(i, k).norm().total_cmp(&a.get(j, k).norm()))
                .unwrap_or(k);
            if a.get(pivot, k).norm() == 0.0 {
                return None;
            }
            if pivot != k {
                for j in 0..n {
                    a.data.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
            }
            let inv = ONE / a.get(k, k);
            for i in k + 1..n {
                let f = a.get(i, k) * inv;
                a.set(i, k, f);
                for j in k + 1..n {
                    let v = a.get(i, j) - f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        Some(Lu { lu: a, perm })
    }

    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let v = x[j];
                x[i] -= self.lu.get(i, j) * v;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let v = x[j];
                x[i] -= self.lu.get(i, j) * v;
            }
            x[i] /= self.lu.get(i, i);
        }
        x
    }

    /// `||A^{-1}||_1` from `n` unit solves.
    pub(crate) fn inverse_norm1(&self) -> f64 {
        let n = self.lu.n;
        (0..n)
            .map(|col| {
                let mut e = vec![ZERO; n];
                e[col] = ONE;
                self.solve(&e).iter().map(|v| v.norm()).sum::<f64>()
            })
            .fold(0.0, nan_max)
    }
}

/// Solves `R x = b` in place for upper-triangular `R`.
pub(crate) fn solve_upper<const N: usize>(r: &[[Complex64; N]; N], b: &mut [Complex64; N]) {
    for i in (0..N).rev() {
        for j in i + 1..N {
            let v = b[j];
            b[i] -= r[i][j] * v;
        }
        b[i] /= r[i][i];
    }
}
