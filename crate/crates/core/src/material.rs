//! Ply materials: engineering constants, reduced stiffness, thermal
//! stiffness `γ = Q α` and the polar description of both.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kelvin::{KelvinMat, KelvinVec};
use crate::polar::{angle_residual, PolarParams2, PolarParams4, DEFAULT_TOL};

/// Orthotropic ply in its material frame. Moduli in MPa, expansion
/// coefficients in °C⁻¹.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlyMaterial {
    pub name: String,
    pub e1_mpa: f64,
    pub e2_mpa: f64,
    pub g12_mpa: f64,
    pub nu12: f64,
    pub alpha1_per_c: f64,
    pub alpha2_per_c: f64,
}

impl PlyMaterial {
    /// Carbon-epoxy T300/5208.
    ///
    /// The transverse expansion coefficient 2.25e-3 °C⁻¹ is kept as the
    /// reference worked examples print it, although it is about a hundred
    /// times the usual value for this system; the tabulated `T_γ`, `R_γ`
    /// and `ρ` are consistent with it.
    pub fn t300_5208() -> Self {
        Self {
            name: "T300/5208".into(),
            e1_mpa: 181_000.0,
            e2_mpa: 10_300.0,
            g12_mpa: 7_170.0,
            nu12: 0.28,
            alpha1_per_c: 2e-6,
            alpha2_per_c: 2.25e-3,
        }
    }

    pub fn nu21(&self) -> f64 {
        self.nu12 * self.e2_mpa / self.e1_mpa
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidMaterial {
                name: self.name.clone(),
                reason: reason.into(),
            })
        };
        let all = [
            self.e1_mpa,
            self.e2_mpa,
            self.g12_mpa,
            self.nu12,
            self.alpha1_per_c,
            self.alpha2_per_c,
        ];
        if all.iter().any(|x| !x.is_finite()) {
            return bad("non-finite constant");
        }
        if !(self.e1_mpa > 0.0 && self.e2_mpa > 0.0 && self.g12_mpa > 0.0) {
            return bad("moduli E1, E2, G12 must be positive");
        }
        if !(1.0 - self.nu12 * self.nu21() > 0.0) {
            return bad("1 - nu12 nu21 must be positive");
        }
        Ok(())
    }

    /// Thermal expansion tensor in the material frame.
    pub fn alpha(&self) -> KelvinVec {
        KelvinVec::new(self.alpha1_per_c, self.alpha2_per_c, 0.0)
    }
}

/// Plane-stress reduced stiffness in the material frame, Kelvin form.
pub fn reduced_stiffness(mat: &PlyMaterial) -> Result<KelvinMat> {
    mat.validate()?;
    let den = 1.0 - mat.nu12 * mat.nu21();
    Ok(KelvinMat::new(
        mat.e1_mpa / den,
        mat.nu12 * mat.e2_mpa / den,
        0.0,
        mat.e2_mpa / den,
        0.0,
        2.0 * mat.g12_mpa,
    ))
}

/// `γ = Q α`.
pub fn thermal_stiffness(q: &KelvinMat, alpha: &KelvinVec) -> KelvinVec {
    q.mul_vec(*alpha)
}

/// Polar description of a ply: `Q`, `γ`, the ratio `ρ = R_γ / R1` and the
/// index `λ` with `Φ_γ = Φ1 + λπ/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlyPolar {
    pub q: PolarParams4,
    pub gamma: PolarParams2,
    /// `None` when `R1 = 0` (square-symmetric ply).
    pub rho: Option<f64>,
    pub lambda: u8,
}

impl PlyPolar {
    /// `(−1)^λ`.
    pub fn lambda_sign(&self) -> f64 {
        if self.lambda == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

pub fn ply_polar(mat: &PlyMaterial) -> Result<PlyPolar> {
    ply_polar_with_tol(mat, DEFAULT_TOL)
}

pub fn ply_polar_with_tol(mat: &PlyMaterial, tol: f64) -> Result<PlyPolar> {
    let q = reduced_stiffness(mat)?;
    let gamma = thermal_stiffness(&q, &mat.alpha());
    ply_polar_from_tensors(&q, &gamma, tol)
}

/// Bundles the polar forms of `Q` and `γ` given in a common frame.
pub fn ply_polar_from_tensors(q: &KelvinMat, gamma: &KelvinVec, tol: f64) -> Result<PlyPolar> {
    let qp = PolarParams4::from_cartesian(q);
    let gp = PolarParams2::from_cartesian(gamma);
    let scale = qp.t0 + 2.0 * qp.t1;
    let r1_zero = qp.r1 <= tol * scale;
    let g_scale = gp.t.abs() + gp.r;
    let rg_zero = gp.r <= tol * g_scale || gp.r == 0.0;

    let lambda = if r1_zero || rg_zero {
        // an isotropic γ takes the angle of Q by convention
        0
    } else {
        let diff = gp.phi - qp.phi1;
        if angle_residual(diff, PI) <= tol {
            0
        } else if angle_residual(diff - FRAC_PI_2, PI) <= tol {
            1
        } else {
            return Err(Error::MisalignedThermalAxes(diff));
        }
    };
    let rho = if r1_zero { None } else { Some(gp.r / qp.r1) };
    Ok(PlyPolar {
        q: qp,
        gamma: gp,
        rho,
        lambda,
    })
}

/// Named materials; T300/5208 is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialCatalog {
    materials: BTreeMap<String, PlyMaterial>,
}

impl Default for MaterialCatalog {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialCatalog {
    pub fn builtin() -> Self {
        let mut materials = BTreeMap::new();
        let t300 = PlyMaterial::t300_5208();
        materials.insert(t300.name.clone(), t300);
        Self { materials }
    }

    /// Parses a JSON array of materials and merges it over the built-ins.
    pub fn from_json(text: &str) -> Result<Self> {
        let list: Vec<PlyMaterial> = serde_json::from_str(text)?;
        let mut cat = Self::builtin();
        for m in list {
            cat.insert(m)?;
        }
        Ok(cat)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn insert(&mut self, m: PlyMaterial) -> Result<()> {
        m.validate()?;
        self.materials.insert(m.name.clone(), m);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&PlyMaterial> {
        self.materials
            .get(name)
            .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.materials.keys().map(String::as_str)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(
            &self.materials.values().collect::<Vec<_>>(),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn t300_stiffness_polar_constants() {
        let q = reduced_stiffness(&PlyMaterial::t300_5208()).unwrap();
        assert!(rel(q.m11, 1.818e5) < 1e-3);
        let p = PolarParams4::from_cartesian(&q);
        assert!(rel(p.t0, 26_880.0) < 5e-3);
        assert!(rel(p.t1, 24_740.0) < 5e-3);
        assert!(rel(p.r0, 19_710.0) < 5e-3);
        assert!(rel(p.r1, 21_430.0) < 5e-3);
        assert_eq!((p.phi0, p.phi1), (0.0, 0.0));
        // cross-check through the polar reconstruction
        let back = p.cartesian(0.0);
        assert!(rel(back.m11, q.m11) < 1e-14 && rel(back.m66, q.m66) < 1e-14);
    }

    #[test]
    fn t300_thermal_polar_and_rho() {
        let pp = ply_polar(&PlyMaterial::t300_5208()).unwrap();
        assert!(rel(pp.gamma.t, 15.1) < 1e-2);
        assert!(rel(pp.gamma.r, 8.21) < 1e-2);
        assert_eq!(pp.lambda, 1);
        assert!(rel(pp.rho.unwrap(), 3.83e-4) < 1e-2);
    }

    #[test]
    fn isotropic_material_has_no_anisotropy() {
        let e = 70_000.0;
        let nu = 0.3;
        let m = PlyMaterial {
            name: "iso".into(),
            e1_mpa: e,
            e2_mpa: e,
            g12_mpa: e / (2.0 * (1.0 + nu)),
            nu12: nu,
            alpha1_per_c: 1e-5,
            alpha2_per_c: 1e-5,
        };
        let p = PolarParams4::from_cartesian(&reduced_stiffness(&m).unwrap());
        assert!(p.r0 < 1e-10 * p.t0 && p.r1 < 1e-10 * p.t0);
        let pp = ply_polar(&m).unwrap();
        assert!(pp.rho.is_none());
        assert!(pp.gamma.r < 1e-12);
    }

    #[test]
    fn zero_alpha_gives_zero_gamma() {
        let q = reduced_stiffness(&PlyMaterial::t300_5208()).unwrap();
        assert_eq!(thermal_stiffness(&q, &KelvinVec::ZERO), KelvinVec::ZERO);
    }

    #[test]
    fn isotropic_expansion_on_isotropic_stiffness() {
        // R0 = R1 = 0: Q (a, a, 0) = 4 T1 a (1, 1, 0)
        let q = PolarParams4::isotropic(3.0, 5.0).cartesian(0.0);
        let g = thermal_stiffness(&q, &KelvinVec::new(0.2, 0.2, 0.0));
        assert!((g.v1 - 4.0).abs() < 1e-14 && (g.v2 - 4.0).abs() < 1e-14 && g.v6 == 0.0);
    }

    #[test]
    fn isotropic_expansion_on_orthotropic_ply() {
        // R_γ = 4 a R1, T_γ = 4 a T1, Φ_γ = Φ1: ρ = 4a, λ = 0
        let mut m = PlyMaterial::t300_5208();
        m.alpha1_per_c = 3e-5;
        m.alpha2_per_c = 3e-5;
        let pp = ply_polar(&m).unwrap();
        assert_eq!(pp.lambda, 0);
        assert!(rel(pp.rho.unwrap(), 1.2e-4) < 1e-12);
        assert!(rel(pp.gamma.t, 1.2e-4 * pp.q.t1) < 1e-12);
    }

    #[test]
    fn square_symmetric_ply_has_undefined_rho() {
        let q = PolarParams4::new(30_000.0, 20_000.0, 15_000.0, 0.0, 0.0, 0.0).cartesian(0.0);
        let g = thermal_stiffness(&q, &KelvinVec::new(1e-5, 1e-5, 0.0));
        let pp = ply_polar_from_tensors(&q, &g, DEFAULT_TOL).unwrap();
        assert!(pp.rho.is_none());
        assert!(pp.gamma.r < 1e-12);
    }

    #[test]
    fn misaligned_thermal_axes_are_rejected() {
        let q = PolarParams4::new(30_000.0, 20_000.0, 15_000.0, 8_000.0, 0.0, 0.0).cartesian(0.0);
        let g = PolarParams2::new(10.0, 3.0, 0.3).cartesian(0.0);
        assert!(matches!(
            ply_polar_from_tensors(&q, &g, DEFAULT_TOL),
            Err(Error::MisalignedThermalAxes(_))
        ));
    }

    #[test]
    fn invalid_materials() {
        let mut m = PlyMaterial::t300_5208();
        m.e2_mpa = -1.0;
        assert!(reduced_stiffness(&m).is_err());
        let mut m = PlyMaterial::t300_5208();
        m.nu12 = 5.0;
        assert!(matches!(m.validate(), Err(Error::InvalidMaterial { .. })));
    }

    #[test]
    fn catalog_round_trip() {
        let mut cat = MaterialCatalog::builtin();
        let mut glass = PlyMaterial::t300_5208();
        glass.name = "E-glass/epoxy".into();
        glass.e1_mpa = 38_600.0;
        glass.e2_mpa = 8_270.0;
        glass.g12_mpa = 4_140.0;
        glass.nu12 = 0.26;
        cat.insert(glass.clone()).unwrap();
        let back = MaterialCatalog::from_json(&cat.to_json().unwrap()).unwrap();
        assert_eq!(back.get("E-glass/epoxy").unwrap(), &glass);
        assert!(matches!(back.get("nope"), Err(Error::UnknownMaterial(_))));
    }
}
