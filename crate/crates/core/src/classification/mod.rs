//! Laminate-level classification: coupling, quasi-homogeneity, thermal
//! stability, symmetry classes and the orthotropic special cases.
//!
//! Every residual is normalised. Elastic stiffness tensors are measured
//! against `E = T0 + 2 T1` of `A`, thermal stiffness tensors against
//! `G = |T^U| + R^U`, and the thermal compliances against `G / E`
//! (`u`, `w`), `G / (E h)` (`v1`) and `G h / E` (`v2`).

mod closed_form;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

pub use closed_form::{
    closed_form_case, deviation, synthesize, ClosedFormDeviation, ClosedFormInputs,
    ClosedFormOutputs, ClosedFormTensor, SpecialCase,
};

use crate::compliance::ComplianceSet;
use crate::error::{Error, Result};
use crate::laminate::{homogeneity_tensors, PolarSet, StiffnessSet};
use crate::polar::{
    angle_residual, classify_symmetry_2, classify_symmetry_scaled, wrap_angle, PolarParams2,
    PolarParams4, SymmetryClass, SymmetryClass2, DEFAULT_TOL,
};

/// Normalisation scales of a laminate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scales {
    pub elastic: f64,
    pub thermal: f64,
    pub h: f64,
}

impl Scales {
    pub fn of(s: &StiffnessSet) -> Self {
        let a = PolarParams4::from_cartesian(&s.a);
        let e = a.t0 + 2.0 * a.t1;
        let elastic = if e > 0.0 {
            e
        } else {
            s.a.max_abs().max(f64::MIN_POSITIVE)
        };
        let u = PolarParams2::from_cartesian(&s.u);
        let thermal = (u.t.abs() + u.r).max(s.u.max_abs()).max(f64::MIN_POSITIVE);
        Self {
            elastic,
            thermal,
            h: s.h,
        }
    }

    pub fn compliance(&self) -> f64 {
        self.thermal / self.elastic
    }
}

/// Phase differences `Φ0 − Φ1` of `A, B, D`, shift angles of `A` and `D`
/// relative to `B`, and the thermal angle relations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftAngles {
    pub phi_a: f64,
    pub phi_b: f64,
    pub phi_d: f64,
    /// `Φ1^A − Φ1^B` reduced mod π; `None` when either angle is undefined.
    pub delta_a: Option<f64>,
    pub delta_d: Option<f64>,
    /// `|Φ^U − Φ1^A − λπ/2|` mod π, when both anisotropies are present.
    pub residual_u: Option<f64>,
    pub residual_v: Option<f64>,
    pub residual_w: Option<f64>,
}

impl ShiftAngles {
    pub fn max_residual(&self) -> f64 {
        [self.residual_u, self.residual_v, self.residual_w]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max)
    }
}

fn significant(r: f64, scale: f64, tol: f64) -> bool {
    r > tol * scale
}

/// Shift angles with moduli below `tol` of their scale treated as absent.
pub fn shift_angles_with_tol(s: &StiffnessSet, tol: f64) -> ShiftAngles {
    shift_angles_polar(&s.polar(), &Scales::of(s), s.ply.map(|p| p.lambda), tol)
}

pub fn shift_angles(s: &StiffnessSet) -> ShiftAngles {
    shift_angles_with_tol(s, DEFAULT_TOL)
}

fn shift_angles_polar(p: &PolarSet, sc: &Scales, lambda: Option<u8>, tol: f64) -> ShiftAngles {
    let e = sc.elastic;
    let phase = |x: &PolarParams4| {
        if significant(x.r0, e, tol) && significant(x.r1, e, tol) {
            x.phase_difference()
        } else {
            0.0
        }
    };
    let b_on = significant(p.b.r1, e, tol);
    let delta = |x: &PolarParams4| {
        (b_on && significant(x.r1, e, tol)).then(|| wrap_angle(x.phi1 - p.b.phi1, PI))
    };
    let relation = |t: &PolarParams2, x: &PolarParams4| {
        let l = lambda?;
        (significant(t.r, sc.thermal, tol) && significant(x.r1, e, tol))
            .then(|| angle_residual(t.phi - x.phi1 - f64::from(l) * FRAC_PI_2, PI))
    };
    ShiftAngles {
        phi_a: phase(&p.a),
        phi_b: phase(&p.b),
        phi_d: phase(&p.d),
        delta_a: delta(&p.a),
        delta_d: delta(&p.d),
        residual_u: relation(&p.u, &p.a),
        residual_v: relation(&p.v, &p.b),
        residual_w: relation(&p.w, &p.d),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub a: SymmetryClass,
    pub b: SymmetryClass,
    pub d: SymmetryClass,
    pub u: SymmetryClass2,
    pub v: SymmetryClass2,
    pub w: SymmetryClass2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    /// `B ≠ O`
    pub elastically_coupled: bool,
    /// `V = v1 = v2 = O`
    pub thermally_uncoupled: bool,
    /// `C = A − D = O`
    pub quasi_homogeneous: bool,
    /// `Y = U − W = O`
    pub thermally_quasi_homogeneous: bool,
    /// `Y = O` with `B ≠ O`.
    pub tqhcl: bool,
    /// `v1 = O` with `B ≠ O`.
    pub warp_free_stable: bool,
    /// `v2 = O` with `B ≠ O`.
    pub extension_free_stable: bool,
}

/// Normalised norms behind the flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub b: f64,
    /// `R1^B`
    pub r1b: f64,
    pub v: f64,
    pub c: f64,
    pub y: f64,
    pub v1: f64,
    pub v2: f64,
}

/// A special case matched by the laminate and its closed-form check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseMatch {
    pub case: SpecialCase,
    /// Every case whose preconditions hold, most specific first.
    pub satisfied: Vec<SpecialCase>,
    /// A or D is orthotropic of the second kind (`Φ0 − Φ1 = π/4`).
    pub k1: bool,
    /// Axis of the frame the polar inputs refer to, radians.
    pub reference_angle: f64,
    pub inputs: ClosedFormInputs,
    pub closed_form: Option<ClosedFormOutputs>,
    /// Deviation of the closed form from the numeric compliances.
    pub deviation: Option<ClosedFormDeviation>,
    /// Set when the closed form cannot be evaluated.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub symmetry: SymmetryReport,
    pub flags: Flags,
    pub residuals: Residuals,
    pub shift_angles: ShiftAngles,
    pub special_case: Option<CaseMatch>,
    pub scales: Scales,
    pub tolerance: f64,
}

/// Frame of the special-case formulas: the anisotropy axis of `B` when it
/// has one, otherwise the first defined of `Φ1^A, Φ1^D, Φ0^A, Φ0^D, Φ0^B`.
pub fn reference_angle(p: &PolarSet, scale: f64, tol: f64) -> f64 {
    let on = |r: f64| significant(r, scale, tol);
    [
        (p.b.r1, p.b.phi1),
        (p.a.r1, p.a.phi1),
        (p.d.r1, p.d.phi1),
        (p.a.r0, p.a.phi0),
        (p.d.r0, p.d.phi0),
        (p.b.r0, p.b.phi0),
    ]
    .into_iter()
    .find(|&(r, _)| on(r))
    .map_or(0.0, |(_, phi)| phi)
}

fn aligned(x: &PolarParams4, theta: f64, scale: f64, tol: f64) -> bool {
    (x.r0 * (4.0 * (x.phi0 - theta)).sin()).abs() <= tol * scale
        && (x.r1 * (2.0 * (x.phi1 - theta)).sin()).abs() <= tol * scale
}

/// Special cases satisfied by a laminate, most specific first, with the
/// frame and signed inputs used to test them.
pub fn special_cases(
    s: &StiffnessSet,
    tol: f64,
) -> Option<(Vec<SpecialCase>, f64, ClosedFormInputs, bool)> {
    s.ply?;
    let p = s.polar();
    let e = Scales::of(s).elastic;
    let theta = reference_angle(&p, e, tol);
    if ![&p.a, &p.b, &p.d]
        .into_iter()
        .all(|x| aligned(x, theta, e, tol))
    {
        return None;
    }
    let i = ClosedFormInputs::from_stiffness(s, theta).ok()?;
    let zero = |x: f64| x.abs() <= tol * e;
    let same = |x: f64, y: f64| (x - y).abs() <= tol * e;
    use SpecialCase::*;
    let mut out = Vec::new();
    if zero(i.r1b) {
        if zero(i.r1a) && zero(i.r1d) {
            out.push(SquareCouplingWarpExtensionFree);
        }
        if zero(i.r0a) && zero(i.r1a) {
            out.push(SquareCouplingIsotropicA);
        }
        if zero(i.r0a) && zero(i.r0d) {
            out.push(SquareCouplingR0Orthotropic);
        }
        if zero(i.r1a) {
            out.push(SquareCouplingWarpFree);
        }
        if zero(i.r1d) {
            out.push(SquareCouplingExtensionFree);
        }
        if same(i.r0a, i.r0d) && same(i.r1a, i.r1d) {
            out.push(SquareCouplingEqualAD);
        }
        out.push(SquareCouplingAligned);
    } else {
        if zero(i.r1a) && zero(i.r1d) && zero(i.r0b) {
            out.push(BalancedCrossPly);
        }
        out.push(CoupledAligned);
    }
    let k1 = [(i.r0a, i.r1a), (i.r0d, i.r1d)]
        .into_iter()
        .any(|(r0, r1)| r0 < -tol * e && !zero(r1));
    Some((out, theta, i, k1))
}

fn case_match(s: &StiffnessSet, c: &ComplianceSet, tol: f64) -> Option<CaseMatch> {
    let (satisfied, theta, inputs, k1) = special_cases(s, tol)?;
    let case = satisfied[0];
    let inputs = case.conform(inputs);
    let (closed_form, deviation, error) = match closed_form_case(case, &inputs) {
        Ok(cf) => {
            let p = &c.polar;
            let dev = deviation(&cf, [&p.u, &p.v1, &p.v2, &p.w], theta, s.h);
            (Some(cf), Some(dev), None)
        }
        Err(e) => (None, None, Some(e.to_string())),
    };
    Some(CaseMatch {
        case,
        satisfied,
        k1,
        reference_angle: theta,
        inputs,
        closed_form,
        deviation,
        error,
    })
}

/// Normalised norms of `B, R1^B, V, C, Y, v1, v2`.
pub fn residuals(s: &StiffnessSet, c: &ComplianceSet, sc: &Scales) -> Residuals {
    let hp = homogeneity_tensors(s);
    let cs = sc.compliance();
    Residuals {
        b: s.b.max_abs() / sc.elastic,
        r1b: PolarParams4::from_cartesian(&s.b).r1 / sc.elastic,
        v: s.v.max_abs() / sc.thermal,
        c: hp.c.max_abs() / sc.elastic,
        y: hp.y.max_abs() / sc.thermal,
        v1: c.v1.max_abs() / (cs / sc.h),
        v2: c.v2.max_abs() / (cs * sc.h),
    }
}

/// Classifies a laminate from its stiffness and compliance tensors.
pub fn classify(s: &StiffnessSet, c: &ComplianceSet, tol: f64) -> Result<ClassificationReport> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let sc = Scales::of(s);
    let p = s.polar();
    let residuals = residuals(s, c, &sc);
    let small = |x: f64| x <= tol;
    let coupled = !small(residuals.b);
    let flags = Flags {
        elastically_coupled: coupled,
        thermally_uncoupled: small(residuals.v) && small(residuals.v1) && small(residuals.v2),
        quasi_homogeneous: small(residuals.c),
        thermally_quasi_homogeneous: small(residuals.y),
        tqhcl: coupled && small(residuals.y),
        warp_free_stable: coupled && small(residuals.v1),
        extension_free_stable: coupled && small(residuals.v2),
    };
    let symmetry = SymmetryReport {
        a: classify_symmetry_scaled(&p.a, tol, sc.elastic)?,
        b: classify_symmetry_scaled(&p.b, tol, sc.elastic)?,
        d: classify_symmetry_scaled(&p.d, tol, sc.elastic)?,
        u: classify_symmetry_2(&p.u, tol, sc.thermal),
        v: classify_symmetry_2(&p.v, tol, sc.thermal),
        w: classify_symmetry_2(&p.w, tol, sc.thermal),
    };
    Ok(ClassificationReport {
        symmetry,
        flags,
        residuals,
        shift_angles: shift_angles_polar(&p, &sc, s.ply.map(|p| p.lambda), tol),
        special_case: case_match(s, c, tol),
        scales: sc,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compliance::compliance;
    use crate::laminate::{stiffness_tensors, Laminate, DEFAULT_PLY_THICKNESS};
    use crate::material::MaterialCatalog;

    fn report(angles: &[f64]) -> (StiffnessSet, ComplianceSet, ClassificationReport) {
        let lam = Laminate::identical("t", "T300/5208", angles, DEFAULT_PLY_THICKNESS).unwrap();
        let s = stiffness_tensors(&lam, &MaterialCatalog::builtin()).unwrap();
        let c = compliance(&s).unwrap();
        let r = classify(&s, &c, DEFAULT_TOL).unwrap();
        (s, c, r)
    }

    const FIRST: [f64; 12] = [0., 0., 0., 0., 0., 0., 90., 90., 90., 90., 90., 90.];

    #[test]
    fn first_laminate() {
        let (_, _, r) = report(&FIRST);
        assert!(r.flags.elastically_coupled && r.flags.tqhcl && r.flags.quasi_homogeneous);
        assert!(!r.flags.thermally_uncoupled && !r.flags.warp_free_stable);
        let m = r.special_case.unwrap();
        assert_eq!(m.case, SpecialCase::BalancedCrossPly);
        assert_eq!(
            m.satisfied,
            vec![SpecialCase::BalancedCrossPly, SpecialCase::CoupledAligned]
        );
        assert!(!m.k1);
        assert!(m.deviation.unwrap().max() < 1e-9);
        assert_eq!(r.symmetry.v, SymmetryClass2::Anisotropic2);
        assert!(r.shift_angles.residual_v.unwrap() < 1e-12);
    }

    #[test]
    fn unidirectional() {
        let (_, _, r) = report(&[0.0; 6]);
        assert!(!r.flags.elastically_coupled);
        assert!(
            r.flags.quasi_homogeneous
                && r.flags.thermally_quasi_homogeneous
                && r.flags.thermally_uncoupled
        );
        assert!(!r.flags.tqhcl);
        assert_eq!(r.shift_angles.delta_a, None);
        assert_eq!(r.symmetry.b, SymmetryClass::Isotropic);
        assert_eq!(r.symmetry.a, SymmetryClass::OrdinaryOrthotropicK0);
    }

    #[test]
    fn rotated_unidirectional_shift_angles_vanish() {
        let (s, _, _) = report(&[0.0; 4]);
        let sh = shift_angles(&s);
        assert_eq!((sh.phi_a, sh.phi_d), (0.0, 0.0));
        assert!(sh.residual_u.unwrap() < 1e-12 && sh.residual_w.unwrap() < 1e-12);
    }

    #[test]
    fn symmetric_angle_ply_is_not_a_special_case() {
        let (_, _, r) = report(&[30.0, -30.0, -30.0, 30.0]);
        assert!(!r.flags.elastically_coupled);
        assert!(r.special_case.is_none());
    }

    #[test]
    fn bad_tolerance() {
        let (s, c, _) = report(&[0.0]);
        assert!(classify(&s, &c, 0.0).is_err());
    }
}
