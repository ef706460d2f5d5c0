//! Closed-form polar compliances of orthotropic laminates whose tensors are
//! aligned with the anisotropy axis of `B`.
//!
//! Inputs are the signed anisotropic moduli projected on the reference frame
//! (`R0 cos 4(Φ0 − θ)`, `R1 cos 2(Φ1 − θ)`), so a tensor turned by a quarter
//! turn, or an orthotropy of the second kind, enters through a sign.
//! Every output is an isotropic modulus `t` together with the signed
//! anisotropic amplitude `x` on the reference axes; the non-negative polar
//! modulus is `|x|` and the angle is `0` for `x ≥ 0`, `π/2` otherwise.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kelvin::KelvinVec;
use crate::laminate::StiffnessSet;
use crate::material::PlyPolar;
use crate::polar::{PolarParams2, PolarParams4, Rotate};

/// Orthotropic configurations with closed-form thermal compliances.
///
/// The first seven have a square-symmetric coupling tensor (`R1^B = 0`,
/// hence `V = O`); the last two keep `R1^B ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialCase {
    /// `A ≠ D`, all aligned.
    SquareCouplingAligned,
    /// `A = D`.
    SquareCouplingEqualAD,
    /// `R1^A = 0`: no curvature from a uniform temperature change.
    SquareCouplingWarpFree,
    /// `R1^D = 0`: no membrane strain from a gradient.
    SquareCouplingExtensionFree,
    /// `R1^A = R1^D = 0`.
    SquareCouplingWarpExtensionFree,
    /// `R0^A = R0^D = 0`.
    SquareCouplingR0Orthotropic,
    /// `R0^A = R1^A = 0`: isotropic extension stiffness.
    SquareCouplingIsotropicA,
    /// `R1^B ≠ 0`, all aligned.
    CoupledAligned,
    /// `R1^A = R1^D = R0^B = 0`, reached by balanced cross-ply sequences.
    BalancedCrossPly,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 9] = [
        SpecialCase::SquareCouplingAligned,
        SpecialCase::SquareCouplingEqualAD,
        SpecialCase::SquareCouplingWarpFree,
        SpecialCase::SquareCouplingExtensionFree,
        SpecialCase::SquareCouplingWarpExtensionFree,
        SpecialCase::SquareCouplingR0Orthotropic,
        SpecialCase::SquareCouplingIsotropicA,
        SpecialCase::CoupledAligned,
        SpecialCase::BalancedCrossPly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::SquareCouplingAligned => "square-coupling-aligned",
            SpecialCase::SquareCouplingEqualAD => "square-coupling-equal-a-d",
            SpecialCase::SquareCouplingWarpFree => "square-coupling-warp-free",
            SpecialCase::SquareCouplingExtensionFree => "square-coupling-extension-free",
            SpecialCase::SquareCouplingWarpExtensionFree => "square-coupling-warp-extension-free",
            SpecialCase::SquareCouplingR0Orthotropic => "square-coupling-r0-orthotropic",
            SpecialCase::SquareCouplingIsotropicA => "square-coupling-isotropic-a",
            SpecialCase::CoupledAligned => "coupled-aligned",
            SpecialCase::BalancedCrossPly => "balanced-cross-ply",
        }
    }

    /// Whether the case assumes `R1^B = 0`.
    pub fn square_coupling(self) -> bool {
        !matches!(
            self,
            SpecialCase::CoupledAligned | SpecialCase::BalancedCrossPly
        )
    }

    /// Forces the moduli the case assumes to vanish (or coincide).
    pub fn conform(self, mut i: ClosedFormInputs) -> ClosedFormInputs {
        use SpecialCase::*;
        if self.square_coupling() {
            i.r1b = 0.0;
        }
        match self {
            SquareCouplingAligned | CoupledAligned => {}
            SquareCouplingEqualAD => {
                i.r0d = i.r0a;
                i.r1d = i.r1a;
            }
            SquareCouplingWarpFree => i.r1a = 0.0,
            SquareCouplingExtensionFree => i.r1d = 0.0,
            SquareCouplingWarpExtensionFree => {
                i.r1a = 0.0;
                i.r1d = 0.0;
            }
            SquareCouplingR0Orthotropic => {
                i.r0a = 0.0;
                i.r0d = 0.0;
            }
            SquareCouplingIsotropicA => {
                i.r0a = 0.0;
                i.r1a = 0.0;
            }
            BalancedCrossPly => {
                i.r1a = 0.0;
                i.r1d = 0.0;
                i.r0b = 0.0;
            }
        }
        i
    }
}

impl std::fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SpecialCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpecialCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown special case `{s}`")))
    }
}

/// Polar data of an identical-ply laminate in the reference frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormInputs {
    pub t0: f64,
    pub t1: f64,
    pub r0a: f64,
    pub r0b: f64,
    pub r0d: f64,
    pub r1a: f64,
    pub r1b: f64,
    pub r1d: f64,
    pub t_gamma: f64,
    pub rho: f64,
    pub lambda: u8,
    /// mm
    pub h: f64,
}

impl ClosedFormInputs {
    fn s(&self) -> f64 {
        if self.lambda == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `T_γ − (−1)^λ T1 ρ`, the factor shared by every anisotropic term.
    fn g(&self) -> f64 {
        self.t_gamma - self.s() * self.t1 * self.rho
    }

    fn scale(&self) -> f64 {
        [
            self.t0, self.t1, self.r0a, self.r0b, self.r0d, self.r1a, self.r1b, self.r1d,
        ]
        .into_iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Signed moduli of `A, B, D` projected on a frame at `theta`, with the
    /// ply data needed for the thermal terms.
    pub fn from_stiffness(s: &StiffnessSet, theta: f64) -> Result<Self> {
        let ply = s.ply.ok_or_else(|| {
            Error::InvalidInput("closed forms need an identical-ply laminate".into())
        })?;
        let p = s.polar();
        let (r0a, r1a) = p.a.signed_moduli(theta);
        let (r0b, r1b) = p.b.signed_moduli(theta);
        let (r0d, r1d) = p.d.signed_moduli(theta);
        Ok(Self {
            t0: p.a.t0,
            t1: p.a.t1,
            r0a,
            r0b,
            r0d,
            r1a,
            r1b,
            r1d,
            t_gamma: ply.gamma.t,
            rho: ply.rho.unwrap_or(0.0),
            lambda: ply.lambda,
            h: s.h,
        })
    }
}

/// Isotropic modulus and signed amplitude of one thermal compliance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormTensor {
    pub t: f64,
    pub x: f64,
}

impl ClosedFormTensor {
    const ZERO: Self = Self { t: 0.0, x: 0.0 };

    fn new(t: f64, x: f64) -> Self {
        Self { t, x }
    }

    /// `{t, r = |x|, φ}` in the reference frame.
    pub fn polar(&self) -> PolarParams2 {
        PolarParams2::new(self.t, self.x, 0.0)
    }

    pub fn cartesian(&self) -> KelvinVec {
        KelvinVec::new(self.t + self.x, self.t - self.x, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormOutputs {
    pub u: ClosedFormTensor,
    pub v1: ClosedFormTensor,
    pub v2: ClosedFormTensor,
    pub w: ClosedFormTensor,
}

fn check(name: &'static str, value: f64, scale: f64, degree: i32) -> Result<f64> {
    if !value.is_finite() || value.abs() <= 1e-12 * scale.powi(degree) {
        Err(Error::DenominatorVanishes { name, value })
    } else {
        Ok(value)
    }
}

/// Evaluates the closed form of `case`. The inputs must satisfy the case's
/// preconditions; moduli the case assumes zero are not read.
pub fn closed_form_case(case: SpecialCase, i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    use SpecialCase::*;
    if !(i.h > 0.0) {
        return Err(Error::InvalidInput(format!(
            "thickness must be positive, got {}",
            i.h
        )));
    }
    match case {
        SquareCouplingAligned => square_coupling_aligned(i),
        SquareCouplingEqualAD => square_coupling_aligned(&ClosedFormInputs {
            r0d: i.r0a,
            r1d: i.r1a,
            ..*i
        }),
        SquareCouplingWarpFree => warp_free(i),
        SquareCouplingExtensionFree => extension_free(i),
        SquareCouplingWarpExtensionFree => warp_extension_free(i),
        SquareCouplingR0Orthotropic => r0_orthotropic(i),
        SquareCouplingIsotropicA => isotropic_a(i),
        CoupledAligned => coupled_aligned(i),
        BalancedCrossPly => balanced_cross_ply(i),
    }
}

fn square_coupling_aligned(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0a,
        r0b,
        r0d,
        r1a,
        r1d,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let tau1 = r0a * r0d * t1 * t1 - 2.0 * r0a * r1d * r1d * t1 + r0a * t0 * t1 * t1
        - 3.0 * r0b * r0b * t1 * t1
        - 2.0 * r0d * r1a * r1a * t1
        + r0d * t0 * t1 * t1
        + 4.0 * r1a * r1a * r1d * r1d
        - 2.0 * r1a * r1a * t0 * t1
        - 2.0 * r1d * r1d * t0 * t1
        + t0 * t0 * t1 * t1;
    let tau1 = check("tau1", tau1, i.scale(), 4)?;
    let ka = (r0a + t0) * t1 - 2.0 * r1a * r1a;
    let kd = (r0d + t0) * t1 - 2.0 * r1d * r1d;
    let b2 = 3.0 * r0b * r0b * t1;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(
            (((r0a + t0) * kd - b2) * tg - 2.0 * s * r1a * r1a * kd * rho) / (4.0 * tau1),
            -r1a * kd * g / (2.0 * tau1),
        ),
        v1: ClosedFormTensor::new(
            -3.0 / h * r0b * r1a * r1d * g / tau1,
            3.0 / h * r0b * r1a * t1 * g / tau1,
        ),
        v2: ClosedFormTensor::new(
            -h / 4.0 * r0b * r1a * r1d * g / tau1,
            h / 4.0 * r0b * r1d * t1 * g / tau1,
        ),
        w: ClosedFormTensor::new(
            (((r0d + t0) * ka - b2) * tg - 2.0 * s * r1d * r1d * ka * rho) / (4.0 * tau1),
            -r1d * ka * g / (2.0 * tau1),
        ),
    })
}

fn warp_free(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0a,
        r0b,
        r0d,
        r1d,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let t1 = check("T1", t1, i.scale(), 1)?;
    let den = (r0a + t0) * ((r0d + t0) * t1 - 2.0 * r1d * r1d) - 3.0 * r0b * r0b * t1;
    let den = check("(R0A+T0)((R0D+T0)T1-2R1D^2)-3R0B^2 T1", den, i.scale(), 3)?;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(tg / (4.0 * t1), 0.0),
        v1: ClosedFormTensor::ZERO,
        v2: ClosedFormTensor::new(0.0, h / 4.0 * r0b * r1d * g / den),
        w: ClosedFormTensor::new(
            ((r0a + t0) * ((r0d + t0) * tg - 2.0 * s * r1d * r1d * rho) - 3.0 * r0b * r0b * tg)
                / (4.0 * den),
            -r1d * (r0a + t0) * g / (2.0 * den),
        ),
    })
}

fn extension_free(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0a,
        r0b,
        r0d,
        r1a,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let t1 = check("T1", t1, i.scale(), 1)?;
    let den = (r0d + t0) * ((r0a + t0) * t1 - 2.0 * r1a * r1a) - 3.0 * r0b * r0b * t1;
    let den = check("(R0D+T0)((R0A+T0)T1-2R1A^2)-3R0B^2 T1", den, i.scale(), 3)?;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(
            ((r0d + t0) * ((r0a + t0) * tg - 2.0 * s * r1a * r1a * rho) - 3.0 * r0b * r0b * tg)
                / (4.0 * den),
            -r1a * (r0d + t0) * g / (2.0 * den),
        ),
        v1: ClosedFormTensor::new(0.0, 3.0 / h * r0b * r1a * g / den),
        v2: ClosedFormTensor::ZERO,
        w: ClosedFormTensor::new(tg / (4.0 * t1), 0.0),
    })
}

fn warp_extension_free(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let t1 = check("T1", i.t1, i.scale(), 1)?;
    let iso = ClosedFormTensor::new(i.t_gamma / (4.0 * t1), 0.0);
    Ok(ClosedFormOutputs {
        u: iso,
        v1: ClosedFormTensor::ZERO,
        v2: ClosedFormTensor::ZERO,
        w: iso,
    })
}

fn r0_orthotropic(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0b,
        r1a,
        r1d,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let (a2, d2) = (r1a * r1a, r1d * r1d);
    let tau0 = 4.0 * a2 * d2 - 2.0 * (a2 + d2) * t0 * t1 + (t0 * t0 - 3.0 * r0b * r0b) * t1 * t1;
    let tau0 = check("tau0", tau0, i.scale(), 4)?;
    let iso = (t0 * t0 - 3.0 * r0b * r0b) * t1 * tg;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(
            (iso + 2.0 * s * a2 * (2.0 * d2 - t0 * t1) * rho - 2.0 * d2 * t0 * tg) / (4.0 * tau0),
            -r1a * (t0 * t1 - 2.0 * d2) * g / (2.0 * tau0),
        ),
        v1: ClosedFormTensor::new(
            -3.0 / h * r0b * r1a * r1d * g / tau0,
            3.0 / h * r0b * r1a * t1 * g / tau0,
        ),
        v2: ClosedFormTensor::new(
            -h / 4.0 * r0b * r1a * r1d * g / tau0,
            h / 4.0 * r0b * r1d * t1 * g / tau0,
        ),
        w: ClosedFormTensor::new(
            (iso + 2.0 * s * d2 * (2.0 * a2 - t0 * t1) * rho - 2.0 * a2 * t0 * tg) / (4.0 * tau0),
            -r1d * (t0 * t1 - 2.0 * a2) * g / (2.0 * tau0),
        ),
    })
}

fn isotropic_a(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0b,
        r0d,
        r1d,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let t1 = check("T1", t1, i.scale(), 1)?;
    let den = 2.0 * r1d * r1d * t0 + 3.0 * r0b * r0b * t1 - t0 * (r0d + t0) * t1;
    let den = check("2R1D^2 T0+3R0B^2 T1-T0(R0D+T0)T1", den, i.scale(), 3)?;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(tg / (4.0 * t1), 0.0),
        v1: ClosedFormTensor::ZERO,
        v2: ClosedFormTensor::new(0.0, -h / 4.0 * r0b * r1d * g / den),
        w: ClosedFormTensor::new(
            ((3.0 * r0b * r0b - (r0d + t0) * t0) * tg + 2.0 * s * r1d * r1d * t0 * rho)
                / (4.0 * den),
            0.5 * r1d * t0 * g / den,
        ),
    })
}

fn coupled_aligned(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0a,
        r0b,
        r0d,
        r1a,
        r1b,
        r1d,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let b2 = r1b * r1b;
    let psi = 36.0 * b2 * b2
        + 12.0 * r0b * r1b * (r1a + r1d) * t1
        + 2.0 * r1a * r1a * (2.0 * r1d * r1d - (r0d + t0) * t1)
        - 6.0 * b2 * (4.0 * r1a * r1d + (r0a + r0d + 2.0 * t0) * t1)
        + t1 * ((r0a + t0) * ((r0d + t0) * t1 - 2.0 * r1d * r1d) - 3.0 * r0b * r0b * t1);
    let psi = check("psi", psi, i.scale(), 4)?;

    // u and w are exchanged by swapping the A and D moduli
    let iso = |ra0: f64, ra1: f64, rd0: f64, rd1: f64| {
        let el = 12.0 * r0b * r1b * rd1 - 6.0 * b2 * (t0 + rd0) - 3.0 * r0b * r0b * t1
            + rd0 * (ra0 + t0) * t1
            + (ra0 + t0) * (t0 * t1 - 2.0 * rd1 * rd1);
        let th = 2.0 * (ra1 * rd1 - 3.0 * b2).powi(2)
            - (rd0 * ra1 * ra1 - 6.0 * r0b * ra1 * r1b + ra1 * ra1 * t0 + 3.0 * b2 * (ra0 + t0))
                * t1;
        (el * tg + 2.0 * s * th * rho) / (4.0 * psi)
    };
    let aniso = |ra1: f64, rd0: f64, rd1: f64| {
        -(6.0 * b2 * rd1 - 2.0 * ra1 * rd1 * rd1 - 3.0 * r0b * r1b * t1 + ra1 * (rd0 + t0) * t1) * g
            / (2.0 * psi)
    };
    let tv = (r0d * r1a * r1b + r0a * r1b * r1d - r0b * (3.0 * b2 + r1a * r1d)
        + r1b * (r1a + r1d) * t0)
        * g
        / psi;
    let xv = |ra0: f64, ra1: f64| {
        (6.0 * b2 * r1b + r0b * ra1 * t1 - r1b * (2.0 * r1a * r1d + (ra0 + t0) * t1)) * g / psi
    };
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(iso(r0a, r1a, r0d, r1d), aniso(r1a, r0d, r1d)),
        v1: ClosedFormTensor::new(3.0 / h * tv, 3.0 / h * xv(r0a, r1a)),
        v2: ClosedFormTensor::new(h / 4.0 * tv, h / 4.0 * xv(r0d, r1d)),
        w: ClosedFormTensor::new(iso(r0d, r1d, r0a, r1a), aniso(r1d, r0a, r1a)),
    })
}

fn balanced_cross_ply(i: &ClosedFormInputs) -> Result<ClosedFormOutputs> {
    let ClosedFormInputs {
        t0,
        t1,
        r0a,
        r0d,
        r1b,
        t_gamma: tg,
        rho,
        h,
        ..
    } = *i;
    let (s, g) = (i.s(), i.g());
    let b2 = r1b * r1b;
    let sc = i.scale();
    let den_d = check("(R0D+T0)T1-6R1B^2", (r0d + t0) * t1 - 6.0 * b2, sc, 2)?;
    let den_a = check("(R0A+T0)T1-6R1B^2", (r0a + t0) * t1 - 6.0 * b2, sc, 2)?;
    Ok(ClosedFormOutputs {
        u: ClosedFormTensor::new(((r0d + t0) * tg - 6.0 * s * b2 * rho) / (4.0 * den_d), 0.0),
        v1: ClosedFormTensor::new(0.0, -3.0 / h * r1b * g / den_d),
        v2: ClosedFormTensor::new(0.0, -h / 4.0 * r1b * g / den_a),
        w: ClosedFormTensor::new(((r0a + t0) * tg - 6.0 * s * b2 * rho) / (4.0 * den_a), 0.0),
    })
}

/// Builds the stiffness tensors of an identical-ply laminate with the given
/// polar moduli, aligned with a frame at `theta`. The thermal tensors follow
/// from the ply ratio `ρ` and index `λ`.
pub fn synthesize(i: &ClosedFormInputs, theta: f64) -> StiffnessSet {
    let s = i.s();
    let tensor4 = |t0: f64, t1: f64, r0: f64, r1: f64| {
        PolarParams4::new(t0, t1, r0, r1, 0.0, 0.0).rotated(theta)
    };
    let tensor2 = |t: f64, r: f64| PolarParams2::new(t, r, 0.0).rotated(theta);
    let a = tensor4(i.t0, i.t1, i.r0a, i.r1a);
    let b = tensor4(0.0, 0.0, i.r0b, i.r1b);
    let d = tensor4(i.t0, i.t1, i.r0d, i.r1d);
    let u = tensor2(i.t_gamma, s * i.rho * i.r1a);
    let v = tensor2(0.0, s * i.rho * i.r1b);
    let w = tensor2(i.t_gamma, s * i.rho * i.r1d);

    let ply_r1 = [i.r1a.abs(), 2.0 * i.r1b.abs(), i.r1d.abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let ply_r1 = if ply_r1 > 0.0 { ply_r1 } else { i.t1 };
    let ply = PlyPolar {
        q: PolarParams4::new(i.t0, i.t1, 0.0, ply_r1, 0.0, 0.0),
        gamma: PolarParams2::new(i.t_gamma, i.rho * ply_r1, f64::from(i.lambda) * FRAC_PI_2),
        rho: Some(i.rho),
        lambda: i.lambda,
    };
    StiffnessSet {
        a: a.cartesian(0.0),
        b: b.cartesian(0.0),
        d: d.cartesian(0.0),
        u: u.cartesian(0.0),
        v: v.cartesian(0.0),
        w: w.cartesian(0.0),
        h: i.h,
        ply: Some(ply),
    }
}

/// Per-tensor deviation of a closed form from numeric compliances expressed
/// in the same frame, on the scales `|u|`, `|u|/h`, `|u|·h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormDeviation {
    pub u: f64,
    pub v1: f64,
    pub v2: f64,
    pub w: f64,
}

impl ClosedFormDeviation {
    pub fn max(&self) -> f64 {
        self.u.max(self.v1).max(self.v2).max(self.w)
    }
}

/// Compares against numeric `(u, v1, v2, w)` given as polar parameters in a
/// frame at `theta`.
pub fn deviation(
    cf: &ClosedFormOutputs,
    numeric: [&PolarParams2; 4],
    theta: f64,
    h: f64,
) -> ClosedFormDeviation {
    let pair = |p: &PolarParams2| {
        (
            p.t,
            p.signed_modulus(theta),
            p.r * (2.0 * (p.phi - theta)).sin(),
        )
    };
    let [nu, nv1, nv2, nw] = numeric.map(pair);
    let base = [nu, nw]
        .iter()
        .map(|(t, x, y)| t.abs() + x.abs() + y.abs())
        .fold(0.0, f64::max);
    let base = base.max(f64::MIN_POSITIVE);
    let d = |c: &ClosedFormTensor, n: (f64, f64, f64), scale: f64| {
        (c.t - n.0).abs().max((c.x - n.1).abs()).max(n.2.abs()) / scale
    };
    ClosedFormDeviation {
        u: d(&cf.u, nu, base),
        v1: d(&cf.v1, nv1, base / h),
        v2: d(&cf.v2, nv2, base * h),
        w: d(&cf.w, nw, base),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compliance::compliance;

    fn inputs() -> ClosedFormInputs {
        ClosedFormInputs {
            t0: 26_880.0,
            t1: 24_740.0,
            r0a: 12_000.0,
            r0b: 4_100.0,
            r0d: 7_300.0,
            r1a: 6_200.0,
            r1b: 2_900.0,
            r1d: -3_800.0,
            t_gamma: 15.08,
            rho: 3.83e-4,
            lambda: 1,
            h: 1.5,
        }
    }

    fn pipeline(i: &ClosedFormInputs, theta: f64) -> ClosedFormDeviation {
        let s = synthesize(i, theta);
        let c = compliance(&s).unwrap();
        let p = &c.polar;
        let cf = closed_form_case(SpecialCase::CoupledAligned, i).unwrap();
        deviation(&cf, [&p.u, &p.v1, &p.v2, &p.w], theta, i.h)
    }

    #[test]
    fn general_form_matches_pipeline() {
        for lambda in [0, 1] {
            for theta in [0.0, 0.3, -1.1] {
                let i = ClosedFormInputs { lambda, ..inputs() };
                let dev = pipeline(&i, theta);
                assert!(dev.max() < 1e-10, "{dev:?}");
            }
        }
    }

    #[test]
    fn every_case_is_a_specialisation_of_the_general_form() {
        for case in SpecialCase::ALL {
            let i = case.conform(inputs());
            let special = closed_form_case(case, &i).unwrap();
            let general = closed_form_case(SpecialCase::CoupledAligned, &i).unwrap();
            for (a, b) in [
                (special.u, general.u),
                (special.v1, general.v1),
                (special.v2, general.v2),
                (special.w, general.w),
            ] {
                let scale = general.u.t.abs() * 10.0;
                assert!((a.t - b.t).abs() < 1e-12 * scale, "{case}: {a:?} vs {b:?}");
                assert!((a.x - b.x).abs() < 1e-12 * scale, "{case}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn warp_extension_free_is_isotropic() {
        let i = SpecialCase::SquareCouplingWarpExtensionFree.conform(inputs());
        let o = closed_form_case(SpecialCase::SquareCouplingWarpExtensionFree, &i).unwrap();
        assert_eq!(o.u.t, 15.08 / (4.0 * 24_740.0));
        assert_eq!(o.u, o.w);
        assert_eq!(o.v1, ClosedFormTensor::ZERO);
    }

    #[test]
    fn vanishing_denominator() {
        // (R0D + T0) T1 = 6 R1B² makes the cross-ply denominator vanish
        let mut i = SpecialCase::BalancedCrossPly.conform(inputs());
        i.r1b = ((i.r0d + i.t0) * i.t1 / 6.0).sqrt();
        assert!(matches!(
            closed_form_case(SpecialCase::BalancedCrossPly, &i),
            Err(Error::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn polar_form_of_outputs() {
        let t = ClosedFormTensor::new(1.0, -0.5);
        let p = t.polar();
        assert_eq!((p.t, p.r), (1.0, 0.5));
        assert!((p.phi - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(t.cartesian(), KelvinVec::new(0.5, 1.5, 0.0));
    }

    #[test]
    fn case_names_round_trip() {
        for c in SpecialCase::ALL {
            assert_eq!(c.name().parse::<SpecialCase>().unwrap(), c);
        }
    }
}
