//! Dense complex linear algebra for 2×2 and 4×4 matrices.
//!
//! Basis ordering is `{|00⟩, |01⟩, |10⟩, |11⟩}` throughout, so `kron(a, b)`
//! places subsystem A on the high bit of the index.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Off-diagonal Frobenius norm (relative to the full norm) at which Jacobi stops.
pub const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Negative eigenvalues above `-PSD_CLAMP` are treated as round-off and set to zero.
pub const PSD_CLAMP: f64 = 1e-10;

/// Square complex matrix of fixed dimension, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<const N: usize>([[C64; N]; N]);

pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;

impl<const N: usize> Mat<N> {
    pub const fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn from_rows(rows: [[C64; N]; N]) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { index: i * N + j });
                }
            }
        }
        Ok(Mat(rows))
    }

    /// Builds a matrix from real rows without validation.
    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn diag(values: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = C64::new(values[i], 0.0);
        }
        m
    }

    /// `|v⟩⟨w|`
    pub fn outer(v: &[C64; N], w: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for i in 0..N {
            out[i] = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest `|H_ij - conj(H_ji)|` together with its position.
    pub fn hermiticity_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..N {
            for j in i..N {
                let d = (self.0[i][j] - self.0[j][i].conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let (deviation, row, col) = self.hermiticity_defect();
        if deviation > tol {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation,
            });
        }
        Ok(())
    }

    /// `(H + H†)/2`
    pub fn hermitian_part(&self) -> Self {
        let a = self.adjoint();
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = (self.0[i][j] + a.0[i][j]) * 0.5;
            }
        }
        m
    }

    /// `max |U†U - 1|`
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }
}

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Mat<N>;
    fn mul(self, rhs: Mat<N>) -> Mat<N> {
        let mut m = Mat::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Mul<C64> for Mat<N> {
    type Output = Mat<N>;
    fn mul(self, s: C64) -> Mat<N> {
        self.map(|z| z * s)
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Mat<N>;
    fn add(mut self, rhs: Mat<N>) -> Mat<N> {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Mat<N>;
    fn sub(mut self, rhs: Mat<N>) -> Mat<N> {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Mat<N>;
    fn neg(self) -> Mat<N> {
        self.map(|z| -z)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// `tr_B` of a 4×4 operator.
pub fn partial_trace_b(m: &Mat4) -> Mat2 {
    let mut r = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            r.0[i][j] = m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1];
        }
    }
    r
}

/// `tr_A` of a 4×4 operator.
pub fn partial_trace_a(m: &Mat4) -> Mat2 {
    let mut r = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            r.0[i][j] = m.0[i][j] + m.0[2 + i][2 + j];
        }
    }
    r
}

pub fn sigma_x() -> Mat2 {
    Mat([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> Mat2 {
    Mat([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> Mat2 {
    Mat([[ONE, ZERO], [ZERO, -ONE]])
}

pub fn paulis() -> [Mat2; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues, descending.
    pub values: [f64; N],
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: Mat<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> [C64; N] {
        let mut v = [ZERO; N];
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = self.vectors.0[i][k];
        }
        v
    }

    /// `V f(Λ) V†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> Mat<N> {
        let mut m = Mat::zeros();
        for k in 0..N {
            let fk = f(self.values[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..N {
                for j in 0..N {
                    m.0[i][j] += self.vectors.0[i][k] * self.vectors.0[j][k].conj() * fk;
                }
            }
        }
        m
    }
}

/// Cyclic complex Jacobi. The input is symmetrized after the Hermiticity check.
pub fn herm_eigen<const N: usize>(h: &Mat<N>, tol: f64) -> Result<HermitianEigen<N>> {
    h.check_hermitian(tol)?;
    let mut a = h.hermitian_part();
    let mut v = Mat::<N>::identity();
    let scale = a.frobenius();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a.0[j][j].re.total_cmp(&a.0[i][i].re));
    let values = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut vectors = Mat::zeros();
    for (k, &src) in order.iter().enumerate() {
        for i in 0..N {
            vectors.0[i][k] = v.0[i][src];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn herm_eigvals<const N: usize>(h: &Mat<N>, tol: f64) -> Result<[f64; N]> {
    herm_eigen(h, tol).map(|e| e.values)
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt<const N: usize>(h: &Mat<N>, tol: f64) -> Result<Mat<N>> {
    let eig = herm_eigen(h, tol)?;
    let min = eig.values[N - 1];
    if min < -PSD_CLAMP {
        return Err(Error::NotPositive { eigenvalue: min });
    }
    Ok(eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}

fn off_diagonal_norm<const N: usize>(a: &Mat<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a.0[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a unitary plane rotation `A ← J† A J`, `V ← V J`.
fn rotate<const N: usize>(a: &mut Mat<N>, v: &mut Mat<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    // Phase that makes the pivot real, then the textbook real rotation.
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = I except J_pp = c, J_pq = s, J_qp = -s·conj(phase), J_qq = c·conj(phase).
    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // Columns p and q of A J.
    for k in 0..N {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * jpp + akq * jqp;
        a.0[k][q] = akp * jpq + akq * jqq;
    }
    // Rows p and q of J† (A J).
    for k in 0..N {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.0[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
    a.0[q][q] = C64::new(a.0[q][q].re, 0.0);

    for k in 0..N {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * jpp + vkq * jqp;
        v.0[k][q] = vkp * jpq + vkq * jqq;
    }
}
