//! The X-state world: two-qubit states whose nonzero entries form an "X".
//!
//! Its observable algebra has eight generators: the unit, the parity-like
//! diagonal `E`, and two Pauli-like triples `λ` (outer block, |00⟩/|11⟩) and
//! `τ` (inner block, |01⟩/|10⟩).

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{Complex64, Mat4, I, ONE, ZERO};
use crate::report::RelationReport;
use crate::twoqubit::{validate_density, DensityMatrix};

/// Default tolerance for [`classify_pure_x`].
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct XGenerators {
    pub unit: Mat4,
    pub e: Mat4,
    pub lambda: [Mat4; 3],
    pub tau: [Mat4; 3],
}

impl XGenerators {
    pub fn new() -> Self {
        let m = |a: usize, b: usize| {
            // Pauli triple on the two-dimensional block spanned by |a⟩, |b⟩.
            let mut x = Mat4::zero();
            x[(a, b)] = ONE;
            x[(b, a)] = ONE;
            let mut y = Mat4::zero();
            y[(a, b)] = -I;
            y[(b, a)] = I;
            let mut z = Mat4::zero();
            z[(a, a)] = ONE;
            z[(b, b)] = -ONE;
            [x, y, z]
        };
        XGenerators {
            unit: Mat4::identity(),
            e: Mat4::diag([1.0, -1.0, -1.0, 1.0]),
            lambda: m(0, 3),
            tau: m(1, 2),
        }
    }

    pub fn all(&self) -> [&Mat4; 8] {
        [
            &self.unit,
            &self.e,
            &self.lambda[0],
            &self.lambda[1],
            &self.lambda[2],
            &self.tau[0],
            &self.tau[1],
            &self.tau[2],
        ]
    }
}

impl Default for XGenerators {
    fn default() -> Self {
        Self::new()
    }
}

/// Coefficients of `ρ = (1 + eE + Σ Pᵢλᵢ + Σ Sᵢτᵢ)/4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XCoeffs {
    pub e: f64,
    pub p: [f64; 3],
    pub s: [f64; 3],
}

impl XCoeffs {
    pub fn p_norm(&self) -> f64 {
        self.p.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn s_norm(&self) -> f64 {
        self.s.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Whether the closed-form spectrum is nonnegative.
    pub fn is_valid(&self) -> bool {
        self.p_norm() <= 1.0 + self.e + 1e-12 && self.s_norm() <= 1.0 - self.e + 1e-12
    }
}

/// ε_ijk for zero-based indices.
fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Verifies the full product table of the X algebra with exact equality.
pub fn check_x_relations() -> RelationReport {
    let g = XGenerators::new();
    let mut report = RelationReport::new();
    let half_plus = (g.unit + g.e).scale_re(0.5);
    let half_minus = (g.unit - g.e).scale_re(0.5);

    for (name, triple, delta_term) in [("λ", &g.lambda, half_plus), ("τ", &g.tau, half_minus)] {
        for i in 0..3 {
            for j in 0..3 {
                let mut rhs = if i == j { delta_term } else { Mat4::zero() };
                for (k, gen_k) in triple.iter().enumerate() {
                    let eps = levi_civita(i, j, k);
                    if eps != 0.0 {
                        rhs += gen_k.scale(Complex64::new(0.0, eps));
                    }
                }
                report.record(
                    format!("{name}{}·{name}{} = δ·(1{}E)/2 + iε{name}", i + 1, j + 1, if name == "λ" { "+" } else { "-" }),
                    triple[i] * triple[j] == rhs,
                );
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            report.record(
                format!("λ{}·τ{} = τ{}·λ{} = 0", i + 1, j + 1, j + 1, i + 1),
                (g.lambda[i] * g.tau[j]).is_zero() && (g.tau[j] * g.lambda[i]).is_zero(),
            );
        }
    }
    for i in 0..3 {
        report.record(
            format!("E·λ{0} = λ{0}·E = λ{0}", i + 1),
            g.e * g.lambda[i] == g.lambda[i] && g.lambda[i] * g.e == g.lambda[i],
        );
        report.record(
            format!("E·τ{0} = τ{0}·E = -τ{0}", i + 1),
            g.e * g.tau[i] == -g.tau[i] && g.tau[i] * g.e == -g.tau[i],
        );
    }
    report
}

/// The unvalidated matrix `(1 + eE + P·λ + S·τ)/4`.
pub fn x_matrix(c: &XCoeffs) -> Mat4 {
    let g = XGenerators::new();
    let mut m = g.unit + g.e.scale_re(c.e);
    for k in 0..3 {
        m += g.lambda[k].scale_re(c.p[k]);
        m += g.tau[k].scale_re(c.s[k]);
    }
    m.scale_re(0.25)
}

pub fn assemble_x(c: &XCoeffs) -> Result<DensityMatrix> {
    validate_density(x_matrix(c))
}

/// `{(1+e±|P|)/4, (1−e±|S|)/4}`, ascending.
pub fn x_spectrum(c: &XCoeffs) -> [f64; 4] {
    let (p, s) = (c.p_norm(), c.s_norm());
    let mut out = [
        (1.0 + c.e + p) / 4.0,
        (1.0 + c.e - p) / 4.0,
        (1.0 - c.e + s) / 4.0,
        (1.0 - c.e - s) / 4.0,
    ];
    out.sort_by(f64::total_cmp);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PureClass {
    /// `e = 1`, `|P| = 2`, `S = 0`: pure states on the |00⟩/|11⟩ block.
    Class1,
    /// `e = −1`, `|S| = 2`, `P = 0`: pure states on the |01⟩/|10⟩ block.
    Class2,
    NotPure,
}

pub fn classify_pure_x(c: &XCoeffs, tol: f64) -> PureClass {
    let (p, s) = (c.p_norm(), c.s_norm());
    if (c.e - 1.0).abs() <= tol && (p - 2.0).abs() <= tol && s <= tol {
        PureClass::Class1
    } else if (c.e + 1.0).abs() <= tol && (s - 2.0).abs() <= tol && p <= tol {
        PureClass::Class2
    } else {
        PureClass::NotPure
    }
}

/// Entry positions that are structurally zero in every X matrix.
pub const ANTI_PATTERN: [(usize, usize); 8] =
    [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)];

pub fn is_x_pattern(m: &Mat4) -> bool {
    ANTI_PATTERN.iter().all(|&(i, j)| m[(i, j)] == ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{herm_eigen, Vec4};
    use crate::sample;
    use crate::twoqubit::purity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn coeffs(e: f64, p: [f64; 3], s: [f64; 3]) -> XCoeffs {
        XCoeffs { e, p, s }
    }

    #[test]
    fn generators_are_hermitian() {
        let g = XGenerators::new();
        for m in g.all() {
            assert_eq!(*m, m.adjoint());
        }
    }

    #[test]
    fn relation_spot_checks() {
        let g = XGenerators::new();
        assert_eq!(g.lambda[0] * g.lambda[1], g.lambda[2].scale(I));
        assert!((g.lambda[0] * g.tau[0]).is_zero());
        assert_eq!(g.lambda[0] * g.lambda[0], (g.unit + g.e).scale_re(0.5));
    }

    #[test]
    fn relation_suite_passes() {
        let report = check_x_relations();
        assert_eq!(report.len(), 9 + 9 + 9 + 6);
        assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn assemble_examples() {
        let mixed = assemble_x(&coeffs(0.0, [0.0; 3], [0.0; 3])).unwrap();
        assert_eq!(*mixed.matrix(), Mat4::identity().scale_re(0.25));

        let up = assemble_x(&coeffs(1.0, [0.0, 0.0, 2.0], [0.0; 3])).unwrap();
        assert_eq!(*up.matrix(), Mat4::diag([1.0, 0.0, 0.0, 0.0]));

        // (1 − E + 2τ₁)/4 = ½ on the |01⟩/|10⟩ block everywhere.
        let triplet = assemble_x(&coeffs(-1.0, [0.0; 3], [2.0, 0.0, 0.0])).unwrap();
        let psi = Vec4::from_real([0.0, 1.0, 1.0, 0.0]).normalized().unwrap();
        assert!(triplet.matrix().approx_eq(&psi.outer(&psi), 1e-15));
    }

    #[test]
    fn assemble_rejects_outside_region() {
        assert!(assemble_x(&coeffs(0.0, [1.5, 0.0, 0.0], [0.0; 3])).is_err());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(x_spectrum(&coeffs(0.0, [0.0; 3], [0.0; 3])), [0.25; 4]);
        assert_eq!(
            x_spectrum(&coeffs(1.0, [0.0, 0.0, 2.0], [0.0; 3])),
            [0.0, 0.0, 0.0, 1.0]
        );
    }

    #[test]
    fn spectrum_matches_numeric_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let c = sample::random_x_coeffs(&mut rng);
            assert!(c.is_valid());
            let numeric = herm_eigen(&x_matrix(&c), 1e-12).unwrap().values;
            for (a, b) in numeric.iter().zip(x_spectrum(&c)) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn assembled_matrices_have_exact_x_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..500 {
            let c = sample::random_x_coeffs(&mut rng);
            assert!(is_x_pattern(&x_matrix(&c)));
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_pure_x(&coeffs(1.0, [0.0, 0.0, 2.0], [0.0; 3]), CLASSIFY_TOL),
            PureClass::Class1
        );
        assert_eq!(
            classify_pure_x(&coeffs(-1.0, [0.0; 3], [2.0, 0.0, 0.0]), CLASSIFY_TOL),
            PureClass::Class2
        );
        assert_eq!(
            classify_pure_x(&coeffs(0.0, [0.0; 3], [0.0; 3]), CLASSIFY_TOL),
            PureClass::NotPure
        );
    }

    #[test]
    fn classification_agrees_with_purity() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut cases: Vec<XCoeffs> = (0..2000).map(|_| sample::random_x_coeffs(&mut rng)).collect();
        cases.push(coeffs(1.0, [1.2, 0.0, 1.6], [0.0; 3]));
        cases.push(coeffs(1.0, [0.0, 0.0, 2.0], [0.0; 3]));
        cases.push(coeffs(-1.0, [0.0; 3], [0.0, 1.2, 1.6]));
        for c in cases {
            let Ok(rho) = assemble_x(&c) else { continue };
            let pure = (purity(&rho) - 1.0).abs() < 1e-8;
            let classified = classify_pure_x(&c, CLASSIFY_TOL) != PureClass::NotPure;
            assert_eq!(pure, classified, "{c:?}");
        }
    }
}
