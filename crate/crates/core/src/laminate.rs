//! Stacking sequences and their homogenised stiffness.
//!
//! `A, B, D` and the thermal stiffness tensors `U, V, W` are stored
//! normalised by the laminate thickness: the constitutive law carries the
//! `h`, `h²/2`, `h³/12` prefactors (see [`crate::response`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kelvin::{sin_cos, KelvinMat, KelvinVec};
use crate::material::{ply_polar, reduced_stiffness, thermal_stiffness, MaterialCatalog, PlyPolar};
use crate::polar::{PolarParams2, PolarParams4};

/// Ply thickness used when a laminate file does not give one, mm.
pub const DEFAULT_PLY_THICKNESS: f64 = 0.125;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ply {
    pub material: String,
    /// Orientation, radians.
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Laminate {
    pub name: String,
    pub plies: Vec<Ply>,
    /// mm
    pub ply_thickness: f64,
}

impl Laminate {
    /// Laminate of identical plies; angles in degrees.
    pub fn identical(
        name: &str,
        material: &str,
        angles_deg: &[f64],
        ply_thickness: f64,
    ) -> Result<Self> {
        let plies = angles_deg
            .iter()
            .map(|a| Ply {
                material: material.to_string(),
                angle: a.to_radians(),
            })
            .collect();
        let lam = Self {
            name: name.to_string(),
            plies,
            ply_thickness,
        };
        lam.validate()?;
        Ok(lam)
    }

    pub fn validate(&self) -> Result<()> {
        if self.plies.is_empty() {
            return Err(Error::InvalidLaminate(format!(
                "`{}` has no plies",
                self.name
            )));
        }
        if !(self.ply_thickness > 0.0) || !self.ply_thickness.is_finite() {
            return Err(Error::InvalidLaminate(format!(
                "ply thickness must be positive, got {}",
                self.ply_thickness
            )));
        }
        if let Some(p) = self.plies.iter().find(|p| !p.angle.is_finite()) {
            return Err(Error::InvalidLaminate(format!(
                "non-finite angle for material `{}`",
                p.material
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.plies.len()
    }

    pub fn thickness(&self) -> f64 {
        self.n() as f64 * self.ply_thickness
    }

    pub fn angles_deg(&self) -> Vec<f64> {
        self.plies.iter().map(|p| p.angle.to_degrees()).collect()
    }

    /// The single material of an identical-ply laminate.
    pub fn common_material(&self) -> Option<&str> {
        let first = &self.plies.first()?.material;
        self.plies
            .iter()
            .all(|p| &p.material == first)
            .then_some(first.as_str())
    }

    fn distinct_materials(&self) -> usize {
        let mut names: Vec<&str> = self.plies.iter().map(|p| p.material.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        names.len()
    }

    /// Same plies stacked in the opposite order.
    pub fn reversed(&self) -> Self {
        let mut lam = self.clone();
        lam.plies.reverse();
        lam
    }
}

/// `z_0 .. z_n`, mm, midplane at 0.
pub fn z_coordinates(lam: &Laminate) -> Vec<f64> {
    let h = lam.thickness();
    (0..=lam.n())
        .map(|k| -0.5 * h + k as f64 * lam.ply_thickness)
        .collect()
}

/// Laminate definition as stored on disk.
///
/// Either `{name, material, ply_thickness_mm, angles_deg}` or the hybrid
/// form `{name, ply_thickness_mm, plies: [{material, angle_deg}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaminateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ply_thickness_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles_deg: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plies: Option<Vec<PlyEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlyEntry {
    pub material: String,
    pub angle_deg: f64,
}

impl LaminateFile {
    pub fn parse(text: &str) -> Result<Laminate> {
        let file: LaminateFile = serde_json::from_str(text)?;
        file.into_laminate()
    }

    pub fn into_laminate(self) -> Result<Laminate> {
        let name = self.name.unwrap_or_else(|| "laminate".into());
        let t = self.ply_thickness_mm.unwrap_or(DEFAULT_PLY_THICKNESS);
        let lam = match (self.angles_deg, self.plies) {
            (Some(angles), None) => {
                let material = self.material.ok_or_else(|| {
                    Error::InvalidLaminate("`angles_deg` form needs a `material`".into())
                })?;
                Laminate::identical(&name, &material, &angles, t)?
            }
            (None, Some(plies)) => Laminate {
                name,
                plies: plies
                    .into_iter()
                    .map(|p| Ply {
                        material: p.material,
                        angle: p.angle_deg.to_radians(),
                    })
                    .collect(),
                ply_thickness: t,
            },
            _ => {
                return Err(Error::InvalidLaminate(
                    "give exactly one of `angles_deg` or `plies`".into(),
                ))
            }
        };
        lam.validate()?;
        Ok(lam)
    }

    pub fn from_laminate(lam: &Laminate) -> Self {
        match lam.common_material() {
            Some(m) => Self {
                name: Some(lam.name.clone()),
                material: Some(m.to_string()),
                ply_thickness_mm: Some(lam.ply_thickness),
                angles_deg: Some(lam.angles_deg()),
                plies: None,
            },
            None => Self {
                name: Some(lam.name.clone()),
                material: None,
                ply_thickness_mm: Some(lam.ply_thickness),
                angles_deg: None,
                plies: Some(
                    lam.plies
                        .iter()
                        .map(|p| PlyEntry {
                            material: p.material.clone(),
                            angle_deg: p.angle.to_degrees(),
                        })
                        .collect(),
                ),
            },
        }
    }
}

/// Homogenised stiffness of a laminate, thickness-normalised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StiffnessSet {
    pub a: KelvinMat,
    pub b: KelvinMat,
    pub d: KelvinMat,
    pub u: KelvinVec,
    pub v: KelvinVec,
    pub w: KelvinVec,
    /// mm
    pub h: f64,
    /// Polar data of the basic layer, for identical-ply laminates.
    pub ply: Option<PlyPolar>,
}

/// Polar forms of the six stiffness tensors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarSet {
    pub a: PolarParams4,
    pub b: PolarParams4,
    pub d: PolarParams4,
    pub u: PolarParams2,
    pub v: PolarParams2,
    pub w: PolarParams2,
}

impl PolarSet {
    /// Cartesian tensors rebuilt at `theta = 0`.
    pub fn to_cartesian(&self, h: f64, ply: Option<PlyPolar>) -> StiffnessSet {
        StiffnessSet {
            a: self.a.cartesian(0.0),
            b: self.b.cartesian(0.0),
            d: self.d.cartesian(0.0),
            u: self.u.cartesian(0.0),
            v: self.v.cartesian(0.0),
            w: self.w.cartesian(0.0),
            h,
            ply,
        }
    }
}

impl StiffnessSet {
    pub fn polar(&self) -> PolarSet {
        PolarSet {
            a: PolarParams4::from_cartesian(&self.a),
            b: PolarParams4::from_cartesian(&self.b),
            d: PolarParams4::from_cartesian(&self.d),
            u: PolarParams2::from_cartesian(&self.u),
            v: PolarParams2::from_cartesian(&self.v),
            w: PolarParams2::from_cartesian(&self.w),
        }
    }

    /// Modulus scale `T0 + 2 T1` of the extension tensor.
    pub fn elastic_scale(&self) -> f64 {
        let p = PolarParams4::from_cartesian(&self.a);
        p.t0 + 2.0 * p.t1
    }
}

struct ResolvedPly {
    q: KelvinMat,
    gamma: KelvinVec,
    polar: PlyPolar,
    angle: f64,
}

fn resolve(lam: &Laminate, catalog: &MaterialCatalog) -> Result<Vec<ResolvedPly>> {
    lam.validate()?;
    lam.plies
        .iter()
        .map(|p| {
            let mat = catalog.get(&p.material)?;
            let q = reduced_stiffness(mat)?;
            Ok(ResolvedPly {
                gamma: thermal_stiffness(&q, &mat.alpha()),
                q,
                polar: ply_polar(mat)?,
                angle: p.angle,
            })
        })
        .collect()
}

fn identical_ply(lam: &Laminate, catalog: &MaterialCatalog) -> Result<Option<PlyPolar>> {
    match lam.common_material() {
        Some(m) => Ok(Some(ply_polar(catalog.get(m)?)?)),
        None => Ok(None),
    }
}

/// Thickness weights `((z_k − z_{k−1})/h, (z_k² − z_{k−1}²)/h², 4(z_k³ − z_{k−1}³)/h³)`.
fn weights(z: &[f64], h: f64) -> Vec<(f64, f64, f64)> {
    z.windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            (
                (hi - lo) / h,
                (hi * hi - lo * lo) / (h * h),
                4.0 * (hi * hi * hi - lo * lo * lo) / (h * h * h),
            )
        })
        .collect()
}

/// `A, B, D, U, V, W` by direct summation over the plies, each ply's `Q` and
/// `γ` rotated to its orientation with the Kelvin rotation matrix.
pub fn stiffness_tensors(lam: &Laminate, catalog: &MaterialCatalog) -> Result<StiffnessSet> {
    let plies = resolve(lam, catalog)?;
    let h = lam.thickness();
    let mut s = StiffnessSet {
        a: KelvinMat::ZERO,
        b: KelvinMat::ZERO,
        d: KelvinMat::ZERO,
        u: KelvinVec::ZERO,
        v: KelvinVec::ZERO,
        w: KelvinVec::ZERO,
        h,
        ply: identical_ply(lam, catalog)?,
    };
    for (p, (wa, wb, wd)) in plies.iter().zip(weights(&z_coordinates(lam), h)) {
        let q = p.q.rotated(p.angle);
        let g = p.gamma.rotated(p.angle);
        s.a = s.a + q * wa;
        s.b = s.b + q * wb;
        s.d = s.d + q * wd;
        s.u = s.u + g * wa;
        s.v = s.v + g * wb;
        s.w = s.w + g * wd;
    }
    Ok(s)
}

/// Integer numerators of the stacking coefficients of ply `k` (1-based):
/// `a_k = 1/n`, `b_k = num/n²`, `d_k = num/n³`, `c_k = a_k − d_k = num/n³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefNumerators {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub c: i64,
}

pub fn coef_numerators(n: usize, k: usize) -> CoefNumerators {
    let (n, k) = (n as i64, k as i64);
    let d = 12 * k * (k - n - 1) + 4 + 3 * n * (n + 2);
    CoefNumerators {
        a: 1,
        b: 2 * k - n - 1,
        d,
        c: n * n - d,
    }
}

/// The sixteen lamination parameters.
///
/// Pairs `(ξ1,ξ2) … (ξ11,ξ12)` are the `a`, `b`, `d` sums with `e^{4iδ}` and
/// `e^{2iδ}`; `(ξ13,ξ14)`, `(ξ15,ξ16)` are the `c_k = a_k − d_k` sums that
/// govern the homogeneity tensors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaminationParams {
    pub xi: [f64; 16],
}

impl LaminationParams {
    /// `ξ_{2j−1} + i ξ_{2j}` for `j = 1..=8`.
    pub fn pair(&self, j: usize) -> (f64, f64) {
        (self.xi[2 * j - 2], self.xi[2 * j - 1])
    }
    pub fn a4(&self) -> (f64, f64) {
        self.pair(1)
    }
    pub fn a2(&self) -> (f64, f64) {
        self.pair(2)
    }
    pub fn b4(&self) -> (f64, f64) {
        self.pair(3)
    }
    pub fn b2(&self) -> (f64, f64) {
        self.pair(4)
    }
    pub fn d4(&self) -> (f64, f64) {
        self.pair(5)
    }
    pub fn d2(&self) -> (f64, f64) {
        self.pair(6)
    }
    pub fn c4(&self) -> (f64, f64) {
        self.pair(7)
    }
    pub fn c2(&self) -> (f64, f64) {
        self.pair(8)
    }
}

/// Lamination parameters of an identical-ply laminate. Each group is summed
/// with its integer numerators and divided by `n`, `n²` or `n³` once.
pub fn lamination_parameters(lam: &Laminate) -> Result<LaminationParams> {
    lam.validate()?;
    if lam.common_material().is_none() {
        return Err(Error::HybridLaminate(lam.distinct_materials()));
    }
    let n = lam.n();
    let mut sums = [0.0_f64; 16];
    for (idx, p) in lam.plies.iter().enumerate() {
        let c = coef_numerators(n, idx + 1);
        let (s4, c4) = sin_cos(4.0 * p.angle);
        let (s2, c2) = sin_cos(2.0 * p.angle);
        for (g, num) in [c.a, c.b, c.d, c.c].into_iter().enumerate() {
            let num = num as f64;
            sums[4 * g] += num * c4;
            sums[4 * g + 1] += num * s4;
            sums[4 * g + 2] += num * c2;
            sums[4 * g + 3] += num * s2;
        }
    }
    let nf = n as f64;
    let den = [nf, nf * nf, nf * nf * nf, nf * nf * nf];
    let xi = std::array::from_fn(|i| sums[i] / den[i / 4]);
    Ok(LaminationParams { xi })
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cexp(r: f64, arg: f64) -> (f64, f64) {
    let (s, c) = sin_cos(arg);
    (r * c, r * s)
}

/// Polar homogenisation: lamination-parameter shortcut for identical plies,
/// weighted polar sums otherwise.
pub fn polar_homogenize(lam: &Laminate, catalog: &MaterialCatalog) -> Result<PolarSet> {
    match lam.common_material() {
        Some(m) => {
            let ply = ply_polar(catalog.get(m)?)?;
            Ok(polar_from_lamination(&ply, &lamination_parameters(lam)?))
        }
        None => polar_homogenize_sums(lam, catalog),
    }
}

/// Polar forms of `A, B, D, U, V, W` from the ply polar data and the
/// lamination parameters.
pub fn polar_from_lamination(ply: &PlyPolar, lp: &LaminationParams) -> PolarSet {
    let q = &ply.q;
    let g = &ply.gamma;
    let z0 = cexp(q.r0, 4.0 * q.phi0);
    let z1 = cexp(q.r1, 2.0 * q.phi1);
    let zg = cexp(g.r, 2.0 * g.phi);
    PolarSet {
        a: PolarParams4::from_invariants(q.t0, q.t1, cmul(z0, lp.a4()), cmul(z1, lp.a2())),
        b: PolarParams4::from_invariants(0.0, 0.0, cmul(z0, lp.b4()), cmul(z1, lp.b2())),
        d: PolarParams4::from_invariants(q.t0, q.t1, cmul(z0, lp.d4()), cmul(z1, lp.d2())),
        u: PolarParams2::from_invariants(g.t, cmul(zg, lp.a2())),
        v: PolarParams2::from_invariants(0.0, cmul(zg, lp.b2())),
        w: PolarParams2::from_invariants(g.t, cmul(zg, lp.d2())),
    }
}

/// General polar homogenisation, valid for hybrid laminates.
pub fn polar_homogenize_sums(lam: &Laminate, catalog: &MaterialCatalog) -> Result<PolarSet> {
    let plies = resolve(lam, catalog)?;
    let h = lam.thickness();
    // per tensor: T0, T1, R0 e^{4iΦ0}, R1 e^{2iΦ1}; per thermal tensor: T, R e^{2iΦ}
    let mut el = [[0.0_f64; 6]; 3];
    let mut th = [[0.0_f64; 3]; 3];
    for (p, (wa, wb, wd)) in plies.iter().zip(weights(&z_coordinates(lam), h)) {
        let q = &p.polar.q;
        let g = &p.polar.gamma;
        let z0 = cexp(q.r0, 4.0 * (q.phi0 + p.angle));
        let z1 = cexp(q.r1, 2.0 * (q.phi1 + p.angle));
        let zg = cexp(g.r, 2.0 * (g.phi + p.angle));
        for (i, w) in [wa, wb, wd].into_iter().enumerate() {
            let terms = [q.t0, q.t1, z0.0, z0.1, z1.0, z1.1];
            for (acc, t) in el[i].iter_mut().zip(terms) {
                *acc += w * t;
            }
            for (acc, t) in th[i].iter_mut().zip([g.t, zg.0, zg.1]) {
                *acc += w * t;
            }
        }
    }
    let p4 = |e: [f64; 6]| PolarParams4::from_invariants(e[0], e[1], (e[2], e[3]), (e[4], e[5]));
    let p2 = |t: [f64; 3]| PolarParams2::from_invariants(t[0], (t[1], t[2]));
    Ok(PolarSet {
        a: p4(el[0]),
        b: p4(el[1]),
        d: p4(el[2]),
        u: p2(th[0]),
        v: p2(th[1]),
        w: p2(th[2]),
    })
}

/// `C = A − D`, `Y = U − W`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityPair {
    pub c: KelvinMat,
    pub y: KelvinVec,
    pub c_polar: PolarParams4,
    pub y_polar: PolarParams2,
}

pub fn homogeneity_tensors(s: &StiffnessSet) -> HomogeneityPair {
    let c = s.a - s.d;
    let y = s.u - s.w;
    HomogeneityPair {
        c,
        y,
        c_polar: PolarParams4::from_cartesian(&c),
        y_polar: PolarParams2::from_cartesian(&y),
    }
}

/// Polar forms of `C` and `Y` of an identical-ply laminate from the
/// `c_k` lamination parameters.
pub fn homogeneity_from_lamination(
    ply: &PlyPolar,
    lp: &LaminationParams,
) -> (PolarParams4, PolarParams2) {
    let q = &ply.q;
    let g = &ply.gamma;
    let c = PolarParams4::from_invariants(
        0.0,
        0.0,
        cmul(cexp(q.r0, 4.0 * q.phi0), lp.c4()),
        cmul(cexp(q.r1, 2.0 * q.phi1), lp.c2()),
    );
    let y = PolarParams2::from_invariants(0.0, cmul(cexp(g.r, 2.0 * g.phi), lp.c2()));
    (c, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::{rel_diff_mat, rel_diff_vec};
    use crate::material::PlyMaterial;

    const T300: &str = "T300/5208";

    fn lam(angles: &[f64]) -> Laminate {
        Laminate::identical("t", T300, angles, DEFAULT_PLY_THICKNESS).unwrap()
    }

    fn first() -> Laminate {
        lam(&[0., 0., 0., 0., 0., 0., 90., 90., 90., 90., 90., 90.])
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn z_coordinates_examples() {
        assert_eq!(z_coordinates(&lam(&[0.0, 90.0])), vec![-0.125, 0.0, 0.125]);
        assert_eq!(lam(&[0.0, 90.0]).thickness(), 0.25);
        assert_eq!(z_coordinates(&lam(&[30.0])), vec![-0.0625, 0.0625]);
        let l = first();
        assert_eq!(l.thickness(), 1.5);
        let z = z_coordinates(&l);
        assert_eq!(z[6], 0.0);
        assert_eq!(z[12] - z[0], 1.5);
    }

    #[test]
    fn first_laminate_stiffness_values() {
        let s = stiffness_tensors(&first(), &MaterialCatalog::builtin()).unwrap();
        assert!(rel(s.a.m11, 9.61e4) < 1e-2);
        assert!(rel(s.a.m12, 0.29e4) < 1e-2);
        assert!(rel(s.a.m66, 1.43e4) < 1e-2);
        assert!(rel(s.b.m11, -4.29e4) < 1e-2);
        assert!(rel(s.u.v1, 15.1) < 1e-2 && rel(s.u.v2, 15.1) < 1e-2);
        assert!(rel(s.v.v1, 4.11) < 1e-2 && rel(s.v.v2, -4.11) < 1e-2);
        assert!(s.u.v6.abs() < 1e-12 && s.v.v6.abs() < 1e-12);
    }

    #[test]
    fn single_ply_telescopes() {
        let cat = MaterialCatalog::builtin();
        let s = stiffness_tensors(&lam(&[0.0]), &cat).unwrap();
        let q = reduced_stiffness(&PlyMaterial::t300_5208()).unwrap();
        assert!(rel_diff_mat(s.a.into(), q.into()) < 1e-15);
        assert!(rel_diff_mat(s.d.into(), q.into()) < 1e-14);
        assert_eq!(s.b, KelvinMat::ZERO);
        assert_eq!(s.v, KelvinVec::ZERO);
    }

    #[test]
    fn lamination_parameter_examples() {
        let lp = lamination_parameters(&first()).unwrap();
        assert!(lp.a2().0.abs() < 1e-15 && lp.a2().1.abs() < 1e-15);
        assert_eq!(lp.b2(), (-0.5, 0.0));
        assert!(lp.b4().0.abs() < 1e-15);
        let lp = lamination_parameters(&lam(&[0.0; 7])).unwrap();
        assert_eq!(lp.a4(), (1.0, 0.0));
        assert_eq!(lp.b2(), (0.0, 0.0));
        assert_eq!(lp.c2(), (0.0, 0.0));
    }

    #[test]
    fn coefficient_sums() {
        for n in 1..20 {
            let (mut sa, mut sb, mut sd, mut sc) = (0, 0, 0, 0);
            for k in 1..=n {
                let c = coef_numerators(n, k);
                sa += c.a;
                sb += c.b;
                sd += c.d;
                sc += c.c;
            }
            let n = n as i64;
            assert_eq!(sa, n);
            assert_eq!(sb, 0);
            assert_eq!(sd, n * n * n);
            assert_eq!(sc, 0);
        }
    }

    #[test]
    fn hybrid_rejected_for_lamination_parameters() {
        let mut l = lam(&[0.0, 90.0]);
        l.plies[1].material = "other".into();
        assert!(matches!(
            lamination_parameters(&l),
            Err(Error::HybridLaminate(2))
        ));
    }

    #[test]
    fn unknown_material() {
        let l = Laminate::identical("x", "unobtainium", &[0.0], 0.1).unwrap();
        assert!(matches!(
            stiffness_tensors(&l, &MaterialCatalog::builtin()),
            Err(Error::UnknownMaterial(_))
        ));
    }

    #[test]
    fn polar_route_first_laminate() {
        let p = polar_homogenize(&first(), &MaterialCatalog::builtin()).unwrap();
        assert!(rel(p.b.r1, 1.07e4) < 1e-2);
        assert!(rel(p.v.r, 4.11) < 1e-2);
        assert!(rel(p.a.r0, 1.97e4) < 1e-2);
        assert_eq!((p.b.t0, p.b.t1, p.v.t), (0.0, 0.0, 0.0));
    }

    #[test]
    fn square_symmetric_plies_keep_r1_zero() {
        let mut cat = MaterialCatalog::builtin();
        // E1 = E2 with G12 away from the isotropic value: R1 = 0, R0 != 0
        let fabric = PlyMaterial {
            name: "fabric".into(),
            e1_mpa: 60_000.0,
            e2_mpa: 60_000.0,
            g12_mpa: 4_000.0,
            nu12: 0.05,
            alpha1_per_c: 3e-6,
            alpha2_per_c: 3e-6,
        };
        cat.insert(fabric).unwrap();
        let l = Laminate::identical("f", "fabric", &[10.0, -33.0, 70.0, 0.0, 45.0], 0.2).unwrap();
        let p = polar_homogenize(&l, &cat).unwrap();
        let s = stiffness_tensors(&l, &cat).unwrap().polar();
        for r in [p.a.r1, p.b.r1, p.d.r1, s.a.r1, s.b.r1, s.d.r1] {
            assert!(r < 1e-9);
        }
        for r in [p.u.r, p.v.r, p.w.r, s.u.r, s.v.r, s.w.r] {
            assert!(r < 1e-15);
        }
    }

    #[test]
    fn homogeneity_examples() {
        let cat = MaterialCatalog::builtin();
        let s = stiffness_tensors(&first(), &cat).unwrap();
        let hp = homogeneity_tensors(&s);
        assert!(hp.c.max_abs() < 1e-10 * s.a.max_abs());
        assert!(hp.y.max_abs() < 1e-10 * s.u.max_abs());

        // [0/90]: direct A - D
        let l = lam(&[0.0, 90.0]);
        let s = stiffness_tensors(&l, &cat).unwrap();
        let hp = homogeneity_tensors(&s);
        assert!(rel_diff_mat(hp.c.into(), (s.a - s.d).into()) < 1e-15);
        let (cp, yp) =
            homogeneity_from_lamination(&s.ply.unwrap(), &lamination_parameters(&l).unwrap());
        assert!(rel_diff_mat(cp.cartesian(0.0).into(), hp.c.into()) < 1e-10);
        assert!(rel_diff_vec(yp.cartesian(0.0), hp.y) < 1e-10);
    }

    #[test]
    fn laminate_file_forms() {
        let l = LaminateFile::parse(
            r#"{"name": "x", "material": "T300/5208", "ply_thickness_mm": 0.2, "angles_deg": [0, 45, -45]}"#,
        )
        .unwrap();
        assert_eq!(l.n(), 3);
        assert_eq!(l.ply_thickness, 0.2);
        let l = LaminateFile::parse(
            r#"{"name": "h", "plies": [{"material": "a", "angle_deg": 0}, {"material": "b", "angle_deg": 90}]}"#,
        )
        .unwrap();
        assert_eq!(l.ply_thickness, DEFAULT_PLY_THICKNESS);
        assert!(l.common_material().is_none());
        assert!(LaminateFile::parse(r#"{"angles_deg": [0]}"#).is_err());
        assert!(LaminateFile::parse(r#"{"material": "m", "angles_deg": []}"#).is_err());
        assert!(LaminateFile::parse(
            r#"{"material": "m", "angles_deg": [0], "ply_thickness_mm": -1}"#
        )
        .is_err());
        let err =
            LaminateFile::parse("{\n  \"material\": \"m\",\n  \"angles_deg\": [0,\n}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
    }
}
