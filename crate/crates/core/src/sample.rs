//! Random valid states and unitaries for property checks.
//!
//! All samplers take the RNG explicitly so that seeded runs are reproducible.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{expm_i_hermitian, Complex64, Mat2, Mat4, Vec4};
use crate::s3world::{S3Coeffs, S3Generators};
use crate::twoqubit::{validate_density, DensityMatrix};
use crate::xworld::XCoeffs;

fn normal_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Uniform point in the 3-ball of the given radius.
fn ball_point(rng: &mut impl Rng, radius: f64) -> [f64; 3] {
    loop {
        let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let r2: f64 = p.iter().map(|x| x * x).sum();
        if r2 <= 1.0 {
            return p.map(|x| x * radius);
        }
    }
}

/// `e` uniform in [-1, 1], then `P` in the ball of radius `1 + e` and `S` in
/// the ball of radius `1 − e`, which keeps the closed-form spectrum
/// nonnegative.
pub fn random_x_coeffs(rng: &mut impl Rng) -> XCoeffs {
    let e = rng.random_range(-1.0..=1.0);
    XCoeffs {
        e,
        p: ball_point(rng, 1.0 + e),
        s: ball_point(rng, 1.0 - e),
    }
}

/// Uniform point of the valid `a = 1` disk: centre (−1/6, −1/6, −1/6),
/// radius 1/√6, in the plane `b + c + d = −½`.
pub fn random_s3_state(rng: &mut impl Rng) -> S3Coeffs {
    let radius = (1.0f64 / 6.0).sqrt() * rng.random::<f64>().sqrt();
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    s3_disk_point(radius, phi)
}

/// The point at polar coordinates `(radius, phi)` of the `a = 1` disk.
pub fn s3_disk_point(radius: f64, phi: f64) -> S3Coeffs {
    let u = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let v = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    let (s, c) = phi.sin_cos();
    let coord = |k: usize| -1.0 / 6.0 + radius * (c * u[k] + s * v[k]);
    S3Coeffs {
        a: 1.0,
        b: coord(0),
        c: coord(1),
        d: coord(2),
    }
}

/// Haar-ish random pure state (normalized complex Gaussian vector).
pub fn random_pure_state(rng: &mut impl Rng) -> Vec4 {
    loop {
        let v = Vec4(std::array::from_fn(|_| normal_complex(rng)));
        if let Some(v) = v.normalized() {
            return v;
        }
    }
}

/// Random mixed state `G G† / Tr(G G†)` from a Ginibre matrix, with random
/// rank between 1 and 4.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    let mut g = Mat4::zero();
    for row in g.0.iter_mut() {
        for z in row.iter_mut().take(rank) {
            *z = normal_complex(rng);
        }
    }
    let m = g * g.adjoint();
    let m = m.scale_re(1.0 / m.trace().re).hermitian_part();
    validate_density(m).expect("Ginibre construction is a valid state")
}

/// Random SU(2)·U(1) element `e^{iα} [[a, −b*], [b, a*]]`.
pub fn random_qubit_unitary(rng: &mut impl Rng) -> Mat2 {
    let a = normal_complex(rng);
    let b = normal_complex(rng);
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    Mat2([[a * phase, -b.conj() * phase], [b * phase, a.conj() * phase]])
}

/// `exp(i Σ θₖ Hₖ)` with θ uniform in [−π, π].
pub fn random_s3_unitary(rng: &mut impl Rng) -> Mat4 {
    let g = S3Generators::new();
    let mut h = Mat4::zero();
    for hk in &g.h {
        h += hk.scale_re(rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI));
    }
    expm_i_hermitian(&h).expect("real symmetric combination is Hermitian")
}
