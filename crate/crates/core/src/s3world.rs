//! The S3-symmetric world: two-qubit states spanned by the permutations of
//! |00⟩, |01⟩, |10⟩ that leave |11⟩ fixed.
//!
//! A state is `ρ = a/2 + b·H1 + c·H2 + d·H3` with `a + b + c + d = ½`, where
//! `H1`, `H2`, `H3` are the three transpositions. Most of the analysis is for
//! the `a = 1` family, whose matrices have a zero fourth row and column and
//! whose valid states form the disk `0 ≤ bc + bd + cd ≤ 1/12` in the plane
//! `b + c + d = −½`. The pure states are the boundary circle, parametrized by
//! a real `t` plus a point at infinity.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{herm_eigen, Complex64, Mat4, Vec4, HERMITIAN_TOL};
use crate::report::RelationReport;
use crate::search::golden_max;
use crate::twoqubit::validate_density;

/// Tolerance on `a + b + c + d = ½` and on `a = 1`.
pub const NORM_TOL: f64 = 1e-12;
/// Slack on both edges of the validity window `[0, 1/12]`.
pub const WINDOW_TOL: f64 = 1e-12;
/// Grid size used by [`maximize_gain`] over the compactified parameter.
pub const GAIN_GRID_POINTS: usize = 10_000;
/// Two gains closer than this are a tie for [`maximize_gain`].
pub const GAIN_TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct S3Generators {
    pub unit: Mat4,
    /// Transpositions (12), (13), (23) of the first three basis states.
    pub h: [Mat4; 3],
    /// The 3-cycle 1→2→3→1.
    pub a: Mat4,
    /// The inverse 3-cycle.
    pub b: Mat4,
}

impl S3Generators {
    pub fn new() -> Self {
        S3Generators {
            unit: Mat4::identity(),
            h: [
                Mat4::from_real([
                    [0.0, 1.0, 0.0, 0.0],
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 1.0, 0.0],
                    [0.0, 0.0, 0.0, 1.0],
                ]),
                Mat4::from_real([
                    [0.0, 0.0, 1.0, 0.0],
                    [0.0, 1.0, 0.0, 0.0],
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 0.0, 1.0],
                ]),
                Mat4::from_real([
                    [1.0, 0.0, 0.0, 0.0],
                    [0.0, 0.0, 1.0, 0.0],
                    [0.0, 1.0, 0.0, 0.0],
                    [0.0, 0.0, 0.0, 1.0],
                ]),
            ],
            a: Mat4::from_real([
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]),
            b: Mat4::from_real([
                [0.0, 0.0, 1.0, 0.0],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]),
        }
    }

    /// `C = H1 + H2 + H3`, central in the algebra.
    pub fn casimir(&self) -> Mat4 {
        self.h[0] + self.h[1] + self.h[2]
    }

    /// The six group elements with their names.
    pub fn named(&self) -> [(&'static str, &Mat4); 6] {
        [
            ("1", &self.unit),
            ("H1", &self.h[0]),
            ("H2", &self.h[1]),
            ("H3", &self.h[2]),
            ("A", &self.a),
            ("B", &self.b),
        ]
    }
}

impl Default for S3Generators {
    fn default() -> Self {
        Self::new()
    }
}

/// Coefficients of `ρ = a/2 + b·H1 + c·H2 + d·H3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct S3Coeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl S3Coeffs {
    /// Checks `a + b + c + d = ½`.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let sum = a + b + c + d;
        if sum.is_nan() || (sum - 0.5).abs() > NORM_TOL {
            return Err(Error::NormalizationViolated { sum });
        }
        Ok(S3Coeffs { a, b, c, d })
    }

    /// A member of the `a = 1` family.
    pub fn unit_family(b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(1.0, b, c, d)
    }

    /// `bc + bd + cd`.
    pub fn window_value(&self) -> f64 {
        self.b * self.c + self.b * self.d + self.c * self.d
    }

    pub fn is_unit_family(&self) -> bool {
        (self.a - 1.0).abs() <= NORM_TOL
    }

    fn require_unit_family(&self) -> Result<()> {
        if self.is_unit_family() {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!(
                "operation needs a = 1, got a = {}",
                self.a
            )))
        }
    }

    /// Requires `a = 1` and `bc + bd + cd ∈ [0, 1/12]`; returns the window value.
    pub fn check_window(&self) -> Result<f64> {
        self.require_unit_family()?;
        let value = self.window_value();
        if !(-WINDOW_TOL..=1.0 / 12.0 + WINDOW_TOL).contains(&value) {
            return Err(Error::OutsideValidityWindow { value });
        }
        Ok(value)
    }
}

/// A point of the real projective line: a finite `t` or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TParam {
    Finite(f64),
    Infinity,
}

impl TParam {
    /// `|t|`, with the point at infinity ordered after every finite value.
    pub fn magnitude(&self) -> f64 {
        match self {
            TParam::Finite(t) => t.abs(),
            TParam::Infinity => f64::INFINITY,
        }
    }

    /// `t = tan θ`, with `θ = ±π/2` mapped to infinity.
    pub fn from_angle(theta: f64) -> Self {
        if (theta.abs() - FRAC_PI_2).abs() <= 1e-12 {
            TParam::Infinity
        } else {
            TParam::Finite(theta.tan())
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TParam::Infinity)
    }
}

impl From<f64> for TParam {
    fn from(t: f64) -> Self {
        if t.is_infinite() {
            TParam::Infinity
        } else {
            TParam::Finite(t)
        }
    }
}

impl fmt::Display for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TParam::Finite(t) => write!(f, "{t}"),
            TParam::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for TParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "-inf" | "infinity" | "+infinity" | "-infinity" => Ok(TParam::Infinity),
            _ => {
                let t: f64 = s.parse().map_err(|_| format!("invalid t value '{s}'"))?;
                if t.is_nan() {
                    return Err("t must not be NaN".into());
                }
                Ok(TParam::from(t))
            }
        }
    }
}

impl Serialize for TParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TParam::Finite(t) => serializer.serialize_f64(*t),
            TParam::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for TParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(t) => Ok(TParam::from(t)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementAxis {
    H1,
    H2,
    H3,
}

impl MeasurementAxis {
    pub const ALL: [MeasurementAxis; 3] = [MeasurementAxis::H1, MeasurementAxis::H2, MeasurementAxis::H3];

    pub fn index(self) -> usize {
        match self {
            MeasurementAxis::H1 => 0,
            MeasurementAxis::H2 => 1,
            MeasurementAxis::H3 => 2,
        }
    }

    pub fn observable(self) -> Mat4 {
        S3Generators::new().h[self.index()]
    }
}

impl fmt::Display for MeasurementAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.index() + 1)
    }
}

impl FromStr for MeasurementAxis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(MeasurementAxis::H1),
            "h2" => Ok(MeasurementAxis::H2),
            "h3" => Ok(MeasurementAxis::H3),
            _ => Err(format!("unknown axis '{s}' (expected h1, h2 or h3)")),
        }
    }
}

/// Entanglement before and after measuring from a pure initial state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainResult {
    pub t_star: TParam,
    pub delta_c: f64,
    pub c_before: f64,
    pub c_after: f64,
}

/// Verifies the S3 multiplication table, `A + B = C − 1`, and centrality of
/// `C`, all with exact equality.
pub fn check_s3_relations() -> RelationReport {
    let g = S3Generators::new();
    let [h1, h2, h3] = g.h;
    let (a, b, one) = (g.a, g.b, g.unit);
    let mut r = RelationReport::new();

    for (k, h) in g.h.iter().enumerate() {
        r.record(format!("H{}² = 1", k + 1), *h * *h == one);
    }
    r.record("H1·H2 = A", h1 * h2 == a);
    r.record("H2·H3 = A", h2 * h3 == a);
    r.record("H3·H1 = A", h3 * h1 == a);
    r.record("H1·H3 = B", h1 * h3 == b);
    r.record("H2·H1 = B", h2 * h1 == b);
    r.record("H3·H2 = B", h3 * h2 == b);
    r.record("H1·A = H2", h1 * a == h2);
    r.record("H2·A = H3", h2 * a == h3);
    r.record("H3·A = H1", h3 * a == h1);
    r.record("A·H1 = H3", a * h1 == h3);
    r.record("A·H2 = H1", a * h2 == h1);
    r.record("A·H3 = H2", a * h3 == h2);
    r.record("A = B†", a == b.adjoint());
    r.record("A·B = 1", a * b == one);
    r.record("B·A = 1", b * a == one);
    r.record("A² = B", a * a == b);
    r.record("B² = A", b * b == a);
    let c = g.casimir();
    r.record("A + B = C − 1", a + b == c - one);
    for (name, m) in g.named() {
        r.record(format!("[C, {name}] = 0"), Mat4::commutator(&c, m).is_zero());
    }
    r
}

/// Rewrites `k/2 + l·H1 + m·H2 + n·H3 + p(A + B)` in four-coefficient form
/// using `A + B = C − 1`.
pub fn reduce_five_coeff(k: f64, l: f64, m: f64, n: f64, p: f64) -> Result<S3Coeffs> {
    let sum = k + l + m + n + p;
    if sum.is_nan() || (sum - 0.5).abs() > NORM_TOL {
        return Err(Error::NormalizationViolated { sum });
    }
    Ok(S3Coeffs {
        a: k - 2.0 * p,
        b: l + p,
        c: m + p,
        d: n + p,
    })
}

/// The matrix of the five-term representation, without reduction.
pub fn five_term_matrix(k: f64, l: f64, m: f64, n: f64, p: f64) -> Mat4 {
    let g = S3Generators::new();
    g.unit.scale_re(k / 2.0)
        + g.h[0].scale_re(l)
        + g.h[1].scale_re(m)
        + g.h[2].scale_re(n)
        + (g.a + g.b).scale_re(p)
}

/// The density matrix of `c`.
///
/// The |11⟩ diagonal entry is `a/2 + b + c + d`, written as `½ − a/2` using
/// normalization so that the `a = 1` family has an exactly zero fourth row.
pub fn assemble_s3(c: &S3Coeffs) -> Mat4 {
    let h = c.a / 2.0;
    Mat4::from_real([
        [h + c.d, c.b, c.c, 0.0],
        [c.b, h + c.c, c.d, 0.0],
        [c.c, c.d, h + c.b, 0.0],
        [0.0, 0.0, 0.0, 0.5 - h],
    ])
}

/// Reads `(a, b, c, d)` back from a matrix in the S3 span.
pub fn coeffs_from_matrix(m: &Mat4) -> S3Coeffs {
    S3Coeffs {
        a: 1.0 - 2.0 * m[(3, 3)].re,
        b: m[(0, 1)].re,
        c: m[(0, 2)].re,
        d: m[(1, 2)].re,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct S3Spectrum {
    /// The two nonzero-branch eigenvalues, `mu[0] ≥ mu[1]`.
    pub mu: [f64; 2],
    /// Kernel vectors `|11⟩` and `(|00⟩ + |01⟩ + |10⟩)/√3`.
    pub kernel: [Vec4; 2],
}

impl S3Spectrum {
    /// All four eigenvalues, ascending.
    pub fn values(&self) -> [f64; 4] {
        [0.0, 0.0, self.mu[1], self.mu[0]]
    }
}

/// Closed-form spectrum `{0, 0, (1 ± √(1 − 12q))/2}` with `q = bc + bd + cd`.
pub fn s3_spectrum(c: &S3Coeffs) -> Result<S3Spectrum> {
    let q = c.check_window()?;
    let root = (1.0 - 12.0 * q).max(0.0).sqrt();
    let third = 1.0 / 3f64.sqrt();
    Ok(S3Spectrum {
        mu: [(1.0 + root) / 2.0, (1.0 - root) / 2.0],
        kernel: [Vec4::basis(3), Vec4::from_real([third, third, third, 0.0])],
    })
}

/// `b² + c² + d² = ¼` within `tol`, for the `a = 1` family.
pub fn is_pure(c: &S3Coeffs, tol: f64) -> bool {
    c.is_unit_family() && (c.b * c.b + c.c * c.c + c.d * c.d - 0.25).abs() <= tol
}

/// The pure state with parameter `t`:
/// `b = −t(1+t)/2D`, `c = −(1+t)/2D`, `d = t/2D`, `D = 1 + t + t²`.
pub fn t_param(t: TParam) -> S3Coeffs {
    let (b, c, d) = match t {
        TParam::Infinity => (-0.5, 0.0, 0.0),
        TParam::Finite(t) if t.abs() <= 1.0 => {
            let den = 2.0 * (1.0 + t + t * t);
            (-t * (1.0 + t) / den, -(1.0 + t) / den, t / den)
        }
        TParam::Finite(t) => {
            // Same formulas in u = 1/t, which stay finite for huge |t|.
            let u = 1.0 / t;
            let den = 2.0 * (u * u + u + 1.0);
            (-(1.0 + u) / den, -(u * u + u) / den, u / den)
        }
    };
    S3Coeffs { a: 1.0, b, c, d }
}

/// Unit eigenvector of `assemble_s3(t_param(t))` for eigenvalue one, with the
/// first nonzero component made real and positive.
pub fn pure_vector(t: TParam) -> Vec4 {
    let m = assemble_s3(&t_param(t));
    let eig = herm_eigen(&m, HERMITIAN_TOL).expect("assembled S3 matrices are symmetric");
    let v = eig.vectors[3];
    let lead = v
        .0
        .iter()
        .copied()
        .find(|z| z.norm() > 1e-12)
        .unwrap_or(Complex64::new(1.0, 0.0));
    v.scale(lead.conj() / lead.norm())
}

/// `|t| / (1 + t + t²)`, zero at infinity.
pub fn pure_concurrence_t(t: TParam) -> f64 {
    match t {
        TParam::Infinity => 0.0,
        TParam::Finite(t) if t.abs() <= 1.0 => t.abs() / (1.0 + t + t * t),
        TParam::Finite(t) => {
            let u = 1.0 / t;
            u.abs() / (u * u + u + 1.0)
        }
    }
}

/// `⟨Hᵢ⟩ − 1` for the three transpositions, and their sum of squares `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanValues {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub r: f64,
}

impl MeanValues {
    /// `⟨H1 + H2 + H3⟩`.
    pub fn casimir(&self) -> f64 {
        self.a1 + self.a2 + self.a3 + 3.0
    }
}

/// For the `a = 1` family: `A1 = c + d + 4b`, `A2 = b + d + 4c`,
/// `A3 = b + c + 4d`. Pure states have `R = 9/2`.
pub fn mean_values(c: &S3Coeffs) -> MeanValues {
    let a1 = c.c + c.d + 4.0 * c.b;
    let a2 = c.b + c.d + 4.0 * c.c;
    let a3 = c.b + c.c + 4.0 * c.d;
    MeanValues {
        a1,
        a2,
        a3,
        r: a1 * a1 + a2 * a2 + a3 * a3,
    }
}

fn closed_concurrence_unchecked(c: &S3Coeffs) -> f64 {
    2.0 * ((0.5 + c.b) * (0.5 + c.c)).max(0.0).sqrt()
}

/// `C = 2√((½ + b)(½ + c))` for the `a = 1` family.
///
/// This agrees with the Wootters concurrence when `d ≥ √((½ + b)(½ + c))`,
/// in particular on every pure state. Inside the disk the Wootters value is
/// `2·min(|d|, √((½ + b)(½ + c)))`; see [`closed_omegas`].
pub fn concurrence_closed(c: &S3Coeffs) -> Result<f64> {
    c.check_window()?;
    Ok(closed_concurrence_unchecked(c))
}

/// Eigenvalues of `ρρ̃` for the `a = 1` family, descending:
/// `(d ± √((½ + b)(½ + c)))²` and two zeros.
pub fn closed_omegas(c: &S3Coeffs) -> Result<[f64; 4]> {
    c.check_window()?;
    let s = ((0.5 + c.b) * (0.5 + c.c)).max(0.0).sqrt();
    let (x, y) = ((c.d + s).powi(2), (c.d - s).powi(2));
    Ok([x.max(y), x.min(y), 0.0, 0.0])
}

fn measure_unchecked(c: &S3Coeffs, axis: MeasurementAxis) -> S3Coeffs {
    let (b, cc, d) = match axis {
        MeasurementAxis::H1 => {
            let m = (c.c + c.d) / 2.0;
            (c.b, m, m)
        }
        MeasurementAxis::H2 => {
            let m = (c.b + c.d) / 2.0;
            (m, c.c, m)
        }
        MeasurementAxis::H3 => {
            let m = (c.b + c.c) / 2.0;
            (m, m, c.d)
        }
    };
    S3Coeffs { a: c.a, b, c: cc, d }
}

/// Non-selective measurement of `axis`: the coefficient form of
/// `ρ → (ρ + HρH)/2`.
pub fn measure_update(c: &S3Coeffs, axis: MeasurementAxis) -> Result<S3Coeffs> {
    c.check_window()?;
    Ok(measure_unchecked(c, axis))
}

/// `(ρ + HρH)/2` computed on matrices.
pub fn measure_matrix(rho: &Mat4, axis: MeasurementAxis) -> Mat4 {
    let h = axis.observable();
    (*rho + h * *rho * h).scale_re(0.5)
}

/// Closed-form entanglement gain from the pure state `t` when measuring `axis`.
pub fn gain_closed_form(axis: MeasurementAxis, t: TParam) -> f64 {
    let TParam::Finite(t) = t else {
        return match axis {
            MeasurementAxis::H1 => 0.0,
            MeasurementAxis::H2 => FRAC_1_SQRT_2,
            MeasurementAxis::H3 => 0.5,
        };
    };
    let den = 1.0 + t + t * t;
    match axis {
        MeasurementAxis::H1 => (((1.0 + 2.0 * t + 2.0 * t * t) / 2.0).sqrt() - t.abs()) / den,
        MeasurementAxis::H2 => t.abs() / den * (((2.0 + 2.0 * t + t * t) / 2.0).sqrt() - 1.0),
        MeasurementAxis::H3 => (1.0 + t * t - 2.0 * t.abs()) / (2.0 * den),
    }
}

/// Concurrence before and after measuring `axis` on the pure state `t`.
pub fn gain(axis: MeasurementAxis, t: TParam) -> GainResult {
    let after = measure_unchecked(&t_param(t), axis);
    let c_before = pure_concurrence_t(t);
    let c_after = closed_concurrence_unchecked(&after);
    GainResult {
        t_star: t,
        delta_c: c_after - c_before,
        c_before,
        c_after,
    }
}

/// `θ = π(k/n − ½)` for `k = 1..=n`, covering (−π/2, π/2]; `k = n` is the
/// point at infinity.
pub fn grid_param(k: usize, n: usize) -> TParam {
    if k == n {
        TParam::Infinity
    } else {
        TParam::Finite(grid_angle(k, n).tan())
    }
}

pub fn grid_angle(k: usize, n: usize) -> f64 {
    PI * (2.0 * k as f64 - n as f64) / (2.0 * n as f64)
}

fn beats(candidate: &GainResult, incumbent: &GainResult) -> bool {
    let diff = candidate.delta_c - incumbent.delta_c;
    if diff > GAIN_TIE_TOL {
        true
    } else if diff < -GAIN_TIE_TOL {
        false
    } else {
        candidate.t_star.magnitude() < incumbent.t_star.magnitude()
    }
}

/// Maximizes [`gain`] over the whole projective line.
///
/// A uniform grid in `θ = arctan t` locates the best cell, then golden-section
/// search refines inside the two neighbouring cells until the bracket in `t`
/// is below 1e-10. Ties go to the smaller `|t|`; infinity loses ties.
pub fn maximize_gain(axis: MeasurementAxis) -> GainResult {
    let n = GAIN_GRID_POINTS;
    let mut best_k = 1;
    let mut best = gain(axis, grid_param(1, n));
    for k in 2..=n {
        let g = gain(axis, grid_param(k, n));
        if beats(&g, &best) {
            best = g;
            best_k = k;
        }
    }

    let step = PI / n as f64;
    let centre = if best_k == n { FRAC_PI_2 } else { grid_angle(best_k, n) };
    let f = |theta: f64| gain(axis, TParam::from_angle(theta)).delta_c;
    let converged = |lo: f64, hi: f64| (hi.tan() - lo.tan()).abs() <= 1e-10;
    let (theta, _) = golden_max(f, centre - step, centre + step, converged, 400);
    let refined = gain(axis, TParam::from_angle(theta));
    if beats(&refined, &best) {
        refined
    } else {
        best
    }
}

/// `ρ_IE = ½ − C/6`, i.e. `(a, b, c, d) = (1, −1/6, −1/6, −1/6)`.
pub fn ie_state() -> S3Coeffs {
    let s = -1.0 / 6.0;
    S3Coeffs { a: 1.0, b: s, c: s, d: s }
}

/// Everything that makes the IE state special, checked one fact at a time.
pub fn ie_checks() -> RelationReport {
    let g = S3Generators::new();
    let ie = ie_state();
    let rho = assemble_s3(&ie);
    let mut r = RelationReport::new();

    r.record(
        "ρ_IE = ½ − C/6",
        rho == g.unit.scale_re(0.5) - g.casimir().scale_re(1.0 / 6.0),
    );
    let q = ie.window_value();
    r.record_with(
        "bc + bd + cd = 1/12 (edge of the validity window)",
        (q - 1.0 / 12.0).abs() <= 1e-12,
        format!("{q}"),
    );
    r.record("ρ_IE is a valid density matrix", validate_density(rho).is_ok());
    let conc = closed_concurrence_unchecked(&ie);
    r.record_with(
        "closed-form concurrence = 2/3",
        (conc - 2.0 / 3.0).abs() <= 1e-12,
        format!("{conc}"),
    );
    for axis in MeasurementAxis::ALL {
        r.record(
            format!("measuring {axis} leaves ρ_IE unchanged"),
            measure_unchecked(&ie, axis) == ie,
        );
    }
    for (name, m) in g.named().into_iter().skip(1) {
        r.record(format!("[ρ_IE, {name}] = 0"), Mat4::commutator(&rho, m).is_zero());
    }
    r.record("A ρ_IE A† = ρ_IE", g.a * rho * g.a.adjoint() == rho);
    r.record("B ρ_IE B† = ρ_IE", g.b * rho * g.b.adjoint() == rho);
    r
}

/// Starts from `(1, −1/6, cc, dd)` with `cc + dd = −⅓` and measures `H1`,
/// which lands on the IE state.
///
/// The initial state must be positive semidefinite, which holds exactly when
/// `cc·dd ≥ −1/18`. The bound `cd ≤ 5/36` is not checked: it is automatic
/// for real `cc + dd = −⅓` and does not imply positivity.
pub fn ie_reach(cc: f64, dd: f64) -> Result<S3Coeffs> {
    let sum = cc + dd;
    if sum.is_nan() || (sum + 1.0 / 3.0).abs() > 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "c + d must equal -1/3, got {sum}"
        )));
    }
    let start = S3Coeffs { a: 1.0, b: -1.0 / 6.0, c: cc, d: dd };
    validate_density(assemble_s3(&start))?;
    measure_update(&start, MeasurementAxis::H1)
}
