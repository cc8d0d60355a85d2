//! Two-qubit density operators and the Wootters concurrence oracle.
//!
//! Basis ordering is |00⟩, |01⟩, |10⟩, |11⟩ throughout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{floor_noise, herm_eigen, sqrt_psd, Mat2, Mat4, Vec4, HERMITIAN_TOL};

/// Allowed deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue a valid density matrix may have.
pub const MIN_EIGENVALUE: f64 = -1e-9;

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_inner(self) -> Mat4 {
        self.0
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> [f64; 4] {
        herm_eigen(&self.0, HERMITIAN_TOL)
            .expect("validated density matrix is Hermitian")
            .values
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat4::identity().scale_re(0.25))
    }

    /// `|ψ⟩⟨ψ|` for a normalized copy of `psi`.
    pub fn pure(psi: &Vec4) -> Result<Self> {
        let psi = psi
            .normalized()
            .ok_or_else(|| Error::PreconditionViolated("zero state vector".into()))?;
        validate_density(psi.outer(&psi))
    }
}

/// Checks Hermiticity, unit trace and positivity, in that order.
pub fn validate_density(m: Mat4) -> Result<DensityMatrix> {
    let m = Mat4::try_from_rows(m.0)?;
    let deviation = m.hermiticity_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    let min = herm_eigen(&m, HERMITIAN_TOL)?.values[0];
    if min < MIN_EIGENVALUE {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(DensityMatrix(m))
}

/// `Tr(ρ²)`; one exactly for pure states, ¼ for the maximally mixed state.
pub fn purity(rho: &DensityMatrix) -> f64 {
    (rho.0 * rho.0).trace().re
}

fn sigma_y_sigma_y() -> Mat4 {
    Mat4::kron(&Mat2::pauli_y(), &Mat2::pauli_y())
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> Mat4 {
    spin_flip_matrix(&rho.0)
}

pub(crate) fn spin_flip_matrix(m: &Mat4) -> Mat4 {
    let yy = sigma_y_sigma_y();
    yy * m.conj() * yy
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    /// Eigenvalues of `ρρ̃`, descending and clamped at zero.
    pub omegas: [f64; 4],
    pub concurrence: f64,
    pub eof: f64,
}

/// `max{0, √Ω₁ − √Ω₂ − √Ω₃ − √Ω₄}` for descending `omegas`.
pub fn concurrence_from_omegas(omegas: [f64; 4]) -> f64 {
    let roots = omegas.map(|x| x.max(0.0).sqrt());
    (roots[0] - roots[1] - roots[2] - roots[3]).max(0.0)
}

/// Entanglement of formation (in ebits) as a function of concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    let x = (1.0 + (1.0 - c * c).sqrt()) / 2.0;
    let h = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    (h(x) + h(1.0 - x)).clamp(0.0, 1.0)
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// The Ω eigenvalues come from the Hermitian matrix `√ρ ρ̃ √ρ`, which is
/// similar to `ρρ̃`.
pub fn concurrence_oracle(rho: &DensityMatrix) -> Result<ConcurrenceReport> {
    let root = sqrt_psd(&rho.0)?;
    let omega = (root * spin_flip(rho) * root).hermitian_part();
    let eig = herm_eigen(&omega, HERMITIAN_TOL)?;
    // Ω is PSD by construction; only rounding can push it negative.
    let mut omegas = floor_noise(eig.values).map(|x| x.max(0.0));
    omegas.reverse();
    let concurrence = concurrence_from_omegas(omegas).min(1.0);
    Ok(ConcurrenceReport {
        omegas,
        concurrence,
        eof: eof_from_concurrence(concurrence),
    })
}

/// `2|ψ₀₀ψ₁₁ − ψ₀₁ψ₁₀|` for a normalized pure state.
pub fn pure_concurrence(psi: &Vec4) -> f64 {
    2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm()
}
