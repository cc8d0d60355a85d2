//! Dense 4×4 (and 2×2) complex matrix kernel.
//!
//! Everything here is fixed-size and stack allocated. The Hermitian
//! eigensolver is a cyclic complex Jacobi iteration: slow in general, but for
//! 4×4 inputs it converges in a handful of sweeps and is fully deterministic.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default Hermiticity tolerance (Frobenius norm of `m - m†`).
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues at or above `-PSD_CLAMP` are treated as rounding noise around zero.
pub const PSD_CLAMP: f64 = 1e-10;

/// Relative floor below which a nonnegative eigenvalue is indistinguishable
/// from zero for a Jacobi-diagonalized 4×4 matrix.
pub const NOISE_FLOOR: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

/// Builds a complex number, rejecting NaN and infinities.
pub fn complex(re: f64, im: f64) -> Option<Complex64> {
    (re.is_finite() && im.is_finite()).then(|| Complex64::new(re, im))
}

/// A 2×2 complex matrix, used for single-qubit operators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        Mat2([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Mat2([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Mat2(out)
    }
}

/// A four-component complex column vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec4(pub [Complex64; 4]);

impl Vec4 {
    pub const fn zero() -> Self {
        Vec4([ZERO; 4])
    }

    pub fn from_real(v: [f64; 4]) -> Self {
        Vec4(v.map(|x| Complex64::new(x, 0.0)))
    }

    /// Standard basis vector `|k⟩`.
    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = ONE;
        v
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Vec4) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, s: Complex64) -> Vec4 {
        Vec4(self.0.map(|z| z * s))
    }

    /// Returns the unit vector along `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vec4> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Vec4) -> Mat4 {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i] * other.0[j].conj();
            }
        }
        m
    }

    pub fn distance(&self, other: &Vec4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for Vec4 {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// A dense 4×4 complex matrix, row-major.
///
/// `==` is exact entrywise comparison; use [`Mat4::approx_eq`] when rounding
/// is expected.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[Complex64; 4]; 4]);

impl Mat4 {
    pub const fn zero() -> Self {
        Mat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub const fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Mat4(rows)
    }

    /// Like [`Mat4::from_rows`] but rejects non-finite entries.
    pub fn try_from_rows(rows: [[Complex64; 4]; 4]) -> Result<Self> {
        for (row, r) in rows.iter().enumerate() {
            for (col, z) in r.iter().enumerate() {
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Mat4(rows))
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Mat4(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn diag(values: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (k, v) in values.into_iter().enumerate() {
            m.0[k][k] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex64> {
        self.0.get(row).and_then(|r| r.get(col)).copied()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Mat4(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat4(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Mat4(self.0.map(|r| r.map(|z| z * s)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn frobenius_distance(&self, other: &Mat4) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise comparison with an absolute tolerance on each modulus.
    pub fn approx_eq(&self, other: &Mat4, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.frobenius_distance(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// `(m + m†) / 2`.
    pub fn hermitian_part(&self) -> Mat4 {
        (*self + self.adjoint()).scale_re(0.5)
    }

    pub fn apply(&self, v: &Vec4) -> Vec4 {
        let mut out = Vec4::zero();
        for i in 0..4 {
            out.0[i] = (0..4).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        out
    }

    /// `a ⊗ b` in the standard two-qubit ordering |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                    }
                }
            }
        }
        out
    }

    pub fn commutator(a: &Mat4, b: &Mat4) -> Mat4 {
        *a * *b - *b * *a
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|z| *z == ZERO)
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for Mat4 {
    type Output = Mat4;

    fn add(mut self, rhs: Mat4) -> Mat4 {
        self += rhs;
        self
    }
}

impl AddAssign for Mat4 {
    fn add_assign(&mut self, rhs: Mat4) {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a += b;
        }
    }
}

impl Sub for Mat4 {
    type Output = Mat4;

    fn sub(mut self, rhs: Mat4) -> Mat4 {
        for (a, b) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Mat4 {
    type Output = Mat4;

    fn neg(self) -> Mat4 {
        Mat4(self.0.map(|r| r.map(|z| -z)))
    }
}

impl Mul for Mat4 {
    type Output = Mat4;

    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        format!("{:>8.4}", z.re)
                    } else {
                        format!("{:.4}{:+.4}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending.
    pub values: [f64; 4],
    /// Orthonormal; `vectors[k]` belongs to `values[k]`.
    pub vectors: [Vec4; 4],
}

impl Eigen {
    /// `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> Complex64) -> Mat4 {
        let mut out = Mat4::zero();
        for (v, &lambda) in self.vectors.iter().zip(self.values.iter()) {
            let w = f(lambda);
            if w != ZERO {
                out += v.outer(v).scale(w);
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Mat4 {
        self.reconstruct_with(|x| Complex64::new(x, 0.0))
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// `m` must be Hermitian to within `tol` in Frobenius norm; the solver then
/// works on its Hermitian part.
pub fn herm_eigen(m: &Mat4, tol: f64) -> Result<Eigen> {
    let deviation = m.hermiticity_defect();
    if deviation.is_nan() || deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = m.hermitian_part().0;
    for (k, row) in a.iter_mut().enumerate() {
        row[k].im = 0.0;
    }
    let mut v = Mat4::identity().0;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotated |= jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re).then(i.cmp(&j)));
    let values = order.map(|k| a[k][k].re);
    let vectors = order.map(|k| Vec4([v[0][k], v[1][k], v[2][k], v[3][k]]));
    Ok(Eigen { values, vectors })
}

/// Zeroes `a[p][q]` with a unitary acting on rows/columns `p, q`. Returns
/// false when the entry is already negligible.
fn jacobi_rotate(
    a: &mut [[Complex64; 4]; 4],
    v: &mut [[Complex64; 4]; 4],
    p: usize,
    q: usize,
) -> bool {
    let apq = a[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return false;
    }
    let app = a[p][p].re;
    let aqq = a[q][q].re;
    // Below half an ulp of both diagonal entries the rotation cannot change them.
    if app.abs() + r == app.abs() && aqq.abs() + r == aqq.abs() && (app != 0.0 || aqq != 0.0) {
        a[p][q] = ZERO;
        a[q][p] = ZERO;
        return false;
    }

    // Phase e^{-iφ} makes the (p, q) entry real; then a real Jacobi rotation.
    let phase = (apq / r).conj();
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase * (-s);
    let u_qq = phase * c;

    // a <- a U
    for row in a.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * u_pp + y * u_qp;
        row[q] = x * u_pq + y * u_qq;
    }
    // a <- U† a
    #[allow(clippy::needless_range_loop)]
    for k in 0..4 {
        let (x, y) = (a[p][k], a[q][k]);
        a[p][k] = u_pp.conj() * x + u_qp.conj() * y;
        a[q][k] = u_pq.conj() * x + u_qq.conj() * y;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p].im = 0.0;
    a[q][q].im = 0.0;

    for row in v.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * u_pp + y * u_qp;
        row[q] = x * u_pq + y * u_qq;
    }
    true
}

/// Clamps eigenvalues that are zero up to rounding, and rejects genuinely
/// negative ones.
pub(crate) fn clamp_psd(values: [f64; 4]) -> Result<[f64; 4]> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(floor_noise(values))
}

/// Zeroes every eigenvalue at or below the rounding floor, negatives included.
pub(crate) fn floor_noise(values: [f64; 4]) -> [f64; 4] {
    let scale = values.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    values.map(|x| if x <= NOISE_FLOOR * scale { 0.0 } else { x })
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn sqrt_psd(m: &Mat4) -> Result<Mat4> {
    let mut eig = herm_eigen(m, HERMITIAN_TOL)?;
    eig.values = clamp_psd(eig.values)?;
    Ok(eig.reconstruct_with(|x| Complex64::new(x.sqrt(), 0.0)))
}

/// `exp(i h)` for Hermitian `h`.
pub fn expm_i_hermitian(h: &Mat4) -> Result<Mat4> {
    let eig = herm_eigen(h, HERMITIAN_TOL)?;
    Ok(eig.reconstruct_with(|x| Complex64::new(0.0, x).exp()))
}
