//! Polar representation of plane tensors.
//!
//! Any plane elastic-type tensor is described by the isotropic moduli
//! `T0, T1`, the anisotropic moduli `R0, R1` and two angles `Φ0, Φ1`; a
//! symmetric 2nd-rank tensor by `T, R, Φ`; a 4th-rank tensor lacking the
//! major symmetry (the compliance coupling tensor of a laminate) by nine
//! parameters `t0, t1, t3, r0, r1, r2, φ0, φ1, φ2`.
//!
//! Angles are radians. Moduli are non-negative; the angle of a vanishing
//! modulus is stored as 0 and flagged as undefined.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kelvin::{KelvinMat, KelvinMatAsym, KelvinVec, SQRT2};

/// Default relative tolerance for symmetry classification.
pub const DEFAULT_TOL: f64 = 1e-6;

/// A modulus below this fraction of the tensor scale leaves its angle undefined.
const ANGLE_EPS: f64 = 1e-13;

/// Reduces `x` into `(-period/2, period/2]`.
pub fn wrap_angle(x: f64, period: f64) -> f64 {
    let half = 0.5 * period;
    let mut y = (x + half).rem_euclid(period) - half;
    if y <= -half {
        y += period;
    }
    y
}

/// Distance of `x` from the nearest multiple of `period`.
pub fn angle_residual(x: f64, period: f64) -> f64 {
    wrap_angle(x, period).abs()
}

fn extract(re: f64, im: f64, scale: f64, order: f64) -> (f64, f64, bool) {
    let r = re.hypot(im);
    if r <= ANGLE_EPS * scale || r == 0.0 {
        (r, 0.0, false)
    } else {
        (r, wrap_angle(im.atan2(re) / order, 2.0 * PI / order), true)
    }
}

/// Rotation of a tensor by a counter-clockwise angle: every polar angle is
/// shifted by `delta`, moduli are unchanged.
pub trait Rotate: Sized {
    fn rotated(&self, delta: f64) -> Self;

    /// The same tensor described in a frame whose x₁ axis sits at `theta`.
    fn in_frame(&self, theta: f64) -> Self {
        self.rotated(-theta)
    }
}

/// Polar parameters of a 4th-rank plane tensor with major symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarParams4 {
    pub t0: f64,
    pub t1: f64,
    pub r0: f64,
    pub r1: f64,
    pub phi0: f64,
    pub phi1: f64,
    pub phi0_defined: bool,
    pub phi1_defined: bool,
}

impl PolarParams4 {
    /// Builds normalised parameters; a negative modulus is folded into its angle.
    pub fn new(t0: f64, t1: f64, r0: f64, r1: f64, phi0: f64, phi1: f64) -> Self {
        let (r0, phi0) = if r0 < 0.0 {
            (-r0, phi0 + FRAC_PI_4)
        } else {
            (r0, phi0)
        };
        let (r1, phi1) = if r1 < 0.0 {
            (-r1, phi1 + FRAC_PI_2)
        } else {
            (r1, phi1)
        };
        Self {
            t0,
            t1,
            r0,
            r1,
            phi0: if r0 > 0.0 {
                wrap_angle(phi0, FRAC_PI_2)
            } else {
                0.0
            },
            phi1: if r1 > 0.0 { wrap_angle(phi1, PI) } else { 0.0 },
            phi0_defined: r0 > 0.0,
            phi1_defined: r1 > 0.0,
        }
    }

    pub fn isotropic(t0: f64, t1: f64) -> Self {
        Self::new(t0, t1, 0.0, 0.0, 0.0, 0.0)
    }

    /// Builds the parameters from the complex anisotropic invariants
    /// `R0 e^{4iΦ0}` and `R1 e^{2iΦ1}` given as `(re, im)` pairs.
    pub fn from_invariants(t0: f64, t1: f64, z0: (f64, f64), z1: (f64, f64)) -> Self {
        let scale = t0.abs() + 2.0 * t1.abs() + z0.0.hypot(z0.1) + z1.0.hypot(z1.1);
        let (r0, phi0, d0) = extract(z0.0, z0.1, scale, 4.0);
        let (r1, phi1, d1) = extract(z1.0, z1.1, scale, 2.0);
        Self {
            t0,
            t1,
            r0,
            r1,
            phi0,
            phi1,
            phi0_defined: d0,
            phi1_defined: d1,
        }
    }

    pub fn from_cartesian(m: &KelvinMat) -> Self {
        polar_from_cartesian_4(m)
    }

    pub fn cartesian(&self, theta: f64) -> KelvinMat {
        cartesian_from_polar_4(self, theta)
    }

    /// `Φ0 − Φ1` reduced to `(−π/4, π/4]`; zero when either angle is undefined.
    pub fn phase_difference(&self) -> f64 {
        if self.phi0_defined && self.phi1_defined {
            wrap_angle(self.phi0 - self.phi1, FRAC_PI_2)
        } else {
            0.0
        }
    }

    /// Anisotropic moduli projected on the axes of a frame at `theta`:
    /// `(R0 cos 4(Φ0 − θ), R1 cos 2(Φ1 − θ))`.
    pub fn signed_moduli(&self, theta: f64) -> (f64, f64) {
        (
            self.r0 * (4.0 * (self.phi0 - theta)).cos(),
            self.r1 * (2.0 * (self.phi1 - theta)).cos(),
        )
    }
}

impl Rotate for PolarParams4 {
    fn rotated(&self, delta: f64) -> Self {
        Self {
            phi0: if self.phi0_defined {
                wrap_angle(self.phi0 + delta, FRAC_PI_2)
            } else {
                0.0
            },
            phi1: if self.phi1_defined {
                wrap_angle(self.phi1 + delta, PI)
            } else {
                0.0
            },
            ..*self
        }
    }
}

/// Cartesian Kelvin components of a polar tensor in the direction `theta`.
pub fn cartesian_from_polar_4(p: &PolarParams4, theta: f64) -> KelvinMat {
    let a4 = 4.0 * (p.phi0 - theta);
    let a2 = 2.0 * (p.phi1 - theta);
    let (s4, c4) = a4.sin_cos();
    let (s2, c2) = a2.sin_cos();
    let iso = p.t0 + 2.0 * p.t1;
    KelvinMat::new(
        iso + p.r0 * c4 + 4.0 * p.r1 * c2,
        -p.t0 + 2.0 * p.t1 - p.r0 * c4,
        SQRT2 * (p.r0 * s4 + 2.0 * p.r1 * s2),
        iso + p.r0 * c4 - 4.0 * p.r1 * c2,
        SQRT2 * (-p.r0 * s4 + 2.0 * p.r1 * s2),
        2.0 * (p.t0 - p.r0 * c4),
    )
}

/// Polar parameters of a symmetric Kelvin matrix.
///
/// Angles come from the two-argument arctangent of the complex invariants,
/// which fixes `R0, R1 ≥ 0` and resolves the branch of `Φ0`.
pub fn polar_from_cartesian_4(m: &KelvinMat) -> PolarParams4 {
    // tensor shear components
    let q1112 = m.m16 / SQRT2;
    let q2212 = m.m26 / SQRT2;
    let q1212 = m.m66 / 2.0;
    let t0 = (m.m11 - 2.0 * m.m12 + 4.0 * q1212 + m.m22) / 8.0;
    let t1 = (m.m11 + 2.0 * m.m12 + m.m22) / 8.0;
    let r0_re = (m.m11 - 2.0 * m.m12 - 4.0 * q1212 + m.m22) / 8.0;
    let r0_im = (q1112 - q2212) / 2.0;
    let r1_re = (m.m11 - m.m22) / 8.0;
    let r1_im = (q1112 + q2212) / 4.0;
    let scale = t0.abs() + 2.0 * t1.abs() + r0_re.hypot(r0_im) + r1_re.hypot(r1_im);
    let (r0, phi0, d0) = extract(r0_re, r0_im, scale, 4.0);
    let (r1, phi1, d1) = extract(r1_re, r1_im, scale, 2.0);
    PolarParams4 {
        t0,
        t1,
        r0,
        r1,
        phi0,
        phi1,
        phi0_defined: d0,
        phi1_defined: d1,
    }
}

/// Polar parameters of a symmetric 2nd-rank plane tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarParams2 {
    pub t: f64,
    pub r: f64,
    pub phi: f64,
    pub phi_defined: bool,
}

impl PolarParams2 {
    pub fn new(t: f64, r: f64, phi: f64) -> Self {
        let (r, phi) = if r < 0.0 {
            (-r, phi + FRAC_PI_2)
        } else {
            (r, phi)
        };
        Self {
            t,
            r,
            phi: if r > 0.0 { wrap_angle(phi, PI) } else { 0.0 },
            phi_defined: r > 0.0,
        }
    }

    pub fn from_cartesian(v: &KelvinVec) -> Self {
        polar_from_cartesian_2(v)
    }

    /// Builds the parameters from `T` and the complex invariant `R e^{2iΦ}`.
    pub fn from_invariants(t: f64, z: (f64, f64)) -> Self {
        let (r, phi, defined) = extract(z.0, z.1, t.abs() + z.0.hypot(z.1), 2.0);
        Self {
            t,
            r,
            phi,
            phi_defined: defined,
        }
    }

    pub fn cartesian(&self, theta: f64) -> KelvinVec {
        cartesian_from_polar_2(self, theta)
    }

    /// Anisotropic modulus projected on a frame at `theta`: `R cos 2(Φ − θ)`.
    pub fn signed_modulus(&self, theta: f64) -> f64 {
        self.r * (2.0 * (self.phi - theta)).cos()
    }
}

impl Rotate for PolarParams2 {
    fn rotated(&self, delta: f64) -> Self {
        Self {
            phi: if self.phi_defined {
                wrap_angle(self.phi + delta, PI)
            } else {
                0.0
            },
            ..*self
        }
    }
}

pub fn cartesian_from_polar_2(p: &PolarParams2, theta: f64) -> KelvinVec {
    let (s, c) = (2.0 * (p.phi - theta)).sin_cos();
    KelvinVec::new(p.t + p.r * c, p.t - p.r * c, SQRT2 * p.r * s)
}

pub fn polar_from_cartesian_2(v: &KelvinVec) -> PolarParams2 {
    let t = 0.5 * (v.v1 + v.v2);
    let re = 0.5 * (v.v1 - v.v2);
    let im = v.v6 / SQRT2;
    let scale = t.abs() + re.hypot(im);
    let (r, phi, defined) = extract(re, im, scale, 2.0);
    PolarParams2 {
        t,
        r,
        phi,
        phi_defined: defined,
    }
}

/// Polar parameters of a 4th-rank plane tensor with minor symmetries only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarParamsB9 {
    pub t0: f64,
    pub t1: f64,
    pub t3: f64,
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub phi0: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi0_defined: bool,
    pub phi1_defined: bool,
    pub phi2_defined: bool,
}

impl PolarParamsB9 {
    pub fn from_cartesian(m: &KelvinMatAsym) -> Self {
        polar_from_cartesian_b(m)
    }

    pub fn cartesian(&self, theta: f64) -> KelvinMatAsym {
        cartesian_from_polar_b(self, theta)
    }

    /// Collapses to the symmetric form when `t3 ≈ 0`, `r1 ≈ r2`, `φ1 ≈ φ2`.
    pub fn as_symmetric(&self, tol: f64) -> Option<PolarParams4> {
        let scale = self.t0.abs() + 2.0 * self.t1.abs() + self.r0 + self.r1 + self.r2;
        let tol_abs = tol * scale.max(f64::MIN_POSITIVE);
        let same_phase = !self.phi1_defined
            || !self.phi2_defined
            || angle_residual(self.phi1 - self.phi2, PI) * self.r1.max(self.r2) <= tol_abs;
        if self.t3.abs() <= tol_abs && (self.r1 - self.r2).abs() <= tol_abs && same_phase {
            let r1 = 0.5 * (self.r1 + self.r2);
            let phi1 = if self.phi1_defined {
                self.phi1
            } else {
                self.phi2
            };
            Some(PolarParams4::new(
                self.t0, self.t1, self.r0, r1, self.phi0, phi1,
            ))
        } else {
            None
        }
    }
}

impl Rotate for PolarParamsB9 {
    fn rotated(&self, delta: f64) -> Self {
        let shift = |phi: f64, defined: bool, period: f64| {
            if defined {
                wrap_angle(phi + delta, period)
            } else {
                0.0
            }
        };
        Self {
            phi0: shift(self.phi0, self.phi0_defined, FRAC_PI_2),
            phi1: shift(self.phi1, self.phi1_defined, PI),
            phi2: shift(self.phi2, self.phi2_defined, PI),
            ..*self
        }
    }
}

pub fn cartesian_from_polar_b(p: &PolarParamsB9, theta: f64) -> KelvinMatAsym {
    let (s4, c4) = (4.0 * (p.phi0 - theta)).sin_cos();
    let (s21, c21) = (2.0 * (p.phi1 - theta)).sin_cos();
    let (s22, c22) = (2.0 * (p.phi2 - theta)).sin_cos();
    let iso = p.t0 + 2.0 * p.t1;
    let cross = -p.t0 + 2.0 * p.t1;
    let (r0c, r1c, r2c) = (p.r0 * c4, 2.0 * p.r1 * c21, 2.0 * p.r2 * c22);
    KelvinMatAsym {
        m11: iso + r0c + r1c + r2c,
        m12: cross - r0c + r1c - r2c,
        m16: SQRT2 * (-p.t3 + p.r0 * s4 + 2.0 * p.r2 * s22),
        m21: cross - r0c - r1c + r2c,
        m22: iso + r0c - r1c - r2c,
        m26: SQRT2 * (p.t3 - p.r0 * s4 + 2.0 * p.r2 * s22),
        m61: SQRT2 * (p.t3 + p.r0 * s4 + 2.0 * p.r1 * s21),
        m62: SQRT2 * (-p.t3 - p.r0 * s4 + 2.0 * p.r1 * s21),
        m66: 2.0 * (p.t0 - r0c),
    }
}

/// Inverts the nine component formulas of a major-asymmetric tensor.
pub fn polar_from_cartesian_b(m: &KelvinMatAsym) -> PolarParamsB9 {
    let (b16, b26, b61, b62) = (m.m16 / SQRT2, m.m26 / SQRT2, m.m61 / SQRT2, m.m62 / SQRT2);
    let diag = m.m11 + m.m22;
    let off = m.m12 + m.m21;
    let t0 = (diag - off + 2.0 * m.m66) / 8.0;
    let t1 = (diag + off) / 8.0;
    let t3 = (b61 - b62 + b26 - b16) / 4.0;
    let r0_re = (diag - off - 2.0 * m.m66) / 8.0;
    let r0_im = (b61 - b62 - b26 + b16) / 4.0;
    let r1_re = (m.m11 - m.m22 + m.m12 - m.m21) / 8.0;
    let r1_im = (b61 + b62) / 4.0;
    let r2_re = (m.m11 - m.m22 - m.m12 + m.m21) / 8.0;
    let r2_im = (b16 + b26) / 4.0;
    let scale = t0.abs()
        + 2.0 * t1.abs()
        + t3.abs()
        + r0_re.hypot(r0_im)
        + r1_re.hypot(r1_im)
        + r2_re.hypot(r2_im);
    let (r0, phi0, d0) = extract(r0_re, r0_im, scale, 4.0);
    let (r1, phi1, d1) = extract(r1_re, r1_im, scale, 2.0);
    let (r2, phi2, d2) = extract(r2_re, r2_im, scale, 2.0);
    PolarParamsB9 {
        t0,
        t1,
        t3,
        r0,
        r1,
        r2,
        phi0,
        phi1,
        phi2,
        phi0_defined: d0,
        phi1_defined: d1,
        phi2_defined: d2,
    }
}

/// Symmetry class of a 4th-rank plane tensor, most special class first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    Isotropic,
    SquareSymmetric,
    R0Orthotropic,
    OrdinaryOrthotropicK0,
    OrdinaryOrthotropicK1,
    GenericAnisotropic,
}

/// Symmetry class of a symmetric 2nd-rank plane tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass2 {
    Isotropic2,
    Anisotropic2,
}

/// Classifies a stiffness-type tensor, normalising moduli by `T0 + 2 T1`.
pub fn classify_symmetry(p: &PolarParams4, tol: f64) -> Result<SymmetryClass> {
    let norm = p.t0 + 2.0 * p.t1;
    if !(norm > 0.0) {
        return Err(Error::NormalizationUndefined(norm));
    }
    classify_symmetry_scaled(p, tol, norm)
}

/// Classifies against an explicit modulus scale, for tensors whose own
/// isotropic part vanishes (laminate coupling tensors).
pub fn classify_symmetry_scaled(p: &PolarParams4, tol: f64, scale: f64) -> Result<SymmetryClass> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(scale > 0.0) {
        return Err(Error::NormalizationUndefined(scale));
    }
    let r0_zero = p.r0 / scale <= tol;
    let r1_zero = p.r1 / scale <= tol;
    Ok(match (r0_zero, r1_zero) {
        (true, true) => SymmetryClass::Isotropic,
        (false, true) => SymmetryClass::SquareSymmetric,
        (true, false) => SymmetryClass::R0Orthotropic,
        (false, false) => {
            let diff = wrap_angle(p.phi0 - p.phi1, FRAC_PI_2);
            if diff.abs() <= tol {
                SymmetryClass::OrdinaryOrthotropicK0
            } else if FRAC_PI_4 - diff.abs() <= tol {
                SymmetryClass::OrdinaryOrthotropicK1
            } else {
                SymmetryClass::GenericAnisotropic
            }
        }
    })
}

pub fn classify_symmetry_2(p: &PolarParams2, tol: f64, scale: f64) -> SymmetryClass2 {
    if p.r <= tol * scale.abs() || p.r == 0.0 {
        SymmetryClass2::Isotropic2
    } else {
        SymmetryClass2::Anisotropic2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::rel_diff_mat;

    fn t300() -> PolarParams4 {
        PolarParams4::new(26_880.0, 24_740.0, 19_710.0, 21_430.0, 0.0, 0.0)
    }

    #[test]
    fn isotropic_matrix_has_zero_anisotropy() {
        let m = KelvinMat::new(3.0, 1.0, 0.0, 3.0, 0.0, 2.0);
        let p = polar_from_cartesian_4(&m);
        assert!((p.t0 - 1.0).abs() < 1e-15 && (p.t1 - 1.0).abs() < 1e-15);
        assert_eq!((p.r0, p.r1), (0.0, 0.0));
        assert!(!p.phi0_defined && !p.phi1_defined);
    }

    #[test]
    fn isotropic_polar_gives_same_components_at_any_angle() {
        let p = PolarParams4::isotropic(1.0, 1.0);
        for theta in [0.0, 0.3, 1.7, -2.2] {
            let m = p.cartesian(theta);
            let want = KelvinMat::new(3.0, 1.0, 0.0, 3.0, 0.0, 2.0);
            assert!(rel_diff_mat(m.into(), want.into()) < 1e-15);
        }
    }

    #[test]
    fn t300_reconstruction_q11() {
        let m = t300().cartesian(0.0);
        // T0 + 2T1 + R0 + 4R1
        assert_eq!(m.m11, 26_880.0 + 2.0 * 24_740.0 + 19_710.0 + 4.0 * 21_430.0);
        assert!((m.m11 - 1.818e5).abs() / 1.818e5 < 2e-3);
        assert_eq!(m.m16, 0.0);
    }

    #[test]
    fn half_turn_periodicity() {
        let p = PolarParams4::new(3.0, 2.0, 1.2, 0.7, 0.3, -0.4);
        for theta in [0.0, 0.4, 2.0] {
            let a = p.cartesian(theta);
            let b = p.cartesian(theta + PI);
            assert!(rel_diff_mat(a.into(), b.into()) < 1e-14);
        }
    }

    #[test]
    fn quarter_rotation_swaps_q11_q22() {
        let p = t300();
        let m = p.cartesian(0.0);
        let r = p.rotated(FRAC_PI_2).cartesian(0.0);
        assert!((r.m11 - m.m22).abs() < 1e-9 && (r.m22 - m.m11).abs() < 1e-9);
    }

    #[test]
    fn rotation_matches_kelvin_matrix_rotation() {
        let p = PolarParams4::new(3.0, 2.0, 1.2, 0.7, 0.3, -0.4);
        let delta = 0.61;
        let via_polar = p.rotated(delta).cartesian(0.0);
        let via_matrix = p.cartesian(0.0).rotated(delta);
        assert!(rel_diff_mat(via_polar.into(), via_matrix.into()) < 1e-14);
    }

    #[test]
    fn second_rank_examples() {
        let p = polar_from_cartesian_2(&KelvinVec::new(15.1, 15.1, 0.0));
        assert_eq!((p.t, p.r), (15.1, 0.0));
        assert!(!p.phi_defined);
        let p = polar_from_cartesian_2(&KelvinVec::new(4.11, -4.11, 0.0));
        assert_eq!(p.t, 0.0);
        assert!((p.r - 4.11).abs() < 1e-15 && p.phi == 0.0);
        let p = PolarParams2::new(2.0, 1.0, 0.2).rotated(0.5);
        assert!((p.phi - 0.7).abs() < 1e-15 && p.r == 1.0 && p.t == 2.0);
    }

    #[test]
    fn nine_parameter_zero_and_symmetric_collapse() {
        let z = polar_from_cartesian_b(&KelvinMatAsym::zero());
        assert_eq!([z.t0, z.t1, z.t3, z.r0, z.r1, z.r2], [0.0; 6]);
        assert_eq!([z.phi0, z.phi1, z.phi2], [0.0; 3]);

        // diag(3.47, -3.47, 0) × 1e-5
        let b = KelvinMat::new(3.47e-5, 0.0, 0.0, -3.47e-5, 0.0, 0.0);
        let p = polar_from_cartesian_b(&b.into());
        assert!(p.t3.abs() < 1e-20);
        assert!((p.r1 - p.r2).abs() < 1e-20);
        let sym = p.as_symmetric(1e-12).expect("symmetric input collapses");
        let direct = polar_from_cartesian_4(&b);
        assert!((sym.t0 - direct.t0).abs() < 1e-20 && (sym.t1 - direct.t1).abs() < 1e-20);
        assert!((sym.r1 - direct.r1).abs() < 1e-20 && (sym.r0 - direct.r0).abs() < 1e-20);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_symmetry(&t300(), DEFAULT_TOL).unwrap(),
            SymmetryClass::OrdinaryOrthotropicK0
        );
        let a = PolarParams4::new(26_880.0, 24_740.0, 1.97e4, 0.0, 0.0, 0.0);
        assert_eq!(
            classify_symmetry(&a, DEFAULT_TOL).unwrap(),
            SymmetryClass::SquareSymmetric
        );
        let iso = PolarParams4::isotropic(1.0, 2.0);
        assert_eq!(
            classify_symmetry(&iso, DEFAULT_TOL).unwrap(),
            SymmetryClass::Isotropic
        );
        let r0 = PolarParams4::new(1.0, 2.0, 0.0, 0.3, 0.0, 0.2);
        assert_eq!(
            classify_symmetry(&r0, DEFAULT_TOL).unwrap(),
            SymmetryClass::R0Orthotropic
        );
        let k1 = PolarParams4::new(1.0, 2.0, 0.4, 0.3, FRAC_PI_4 + 0.2, 0.2);
        assert_eq!(
            classify_symmetry(&k1, DEFAULT_TOL).unwrap(),
            SymmetryClass::OrdinaryOrthotropicK1
        );
        let gen = PolarParams4::new(1.0, 2.0, 0.4, 0.3, 0.1, 0.5);
        assert_eq!(
            classify_symmetry(&gen, DEFAULT_TOL).unwrap(),
            SymmetryClass::GenericAnisotropic
        );
    }

    #[test]
    fn classification_rejects_non_positive_normalisation() {
        let b = PolarParams4::new(0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            classify_symmetry(&b, DEFAULT_TOL),
            Err(Error::NormalizationUndefined(_))
        ));
        assert!(classify_symmetry(&t300(), 0.0).is_err());
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI / 2.0, PI), PI / 2.0);
        assert!((wrap_angle(-PI / 2.0, PI) - PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 4.0, PI) + PI / 4.0).abs() < 1e-15);
        assert_eq!(wrap_angle(FRAC_PI_4, FRAC_PI_2), FRAC_PI_4);
    }
}
