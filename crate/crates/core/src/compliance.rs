//! Inversion of the laminate constitutive law.
//!
//! With `h`-normalised stiffness tensors the law reads
//!
//! ```text
//! N = h A ε + h²/2 B κ − t h U − ∇t h²/2 V
//! M = h²/2 B ε + h³/12 D κ − t h²/2 V − ∇t h³/12 W
//! ```
//!
//! and its converse
//!
//! ```text
//! ε = a N / h + 2 b M / h² + t u + ∇t v2
//! κ = 2 bᵀ N / h² + 12 d M / h³ + t v1 + ∇t w
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kelvin::{KelvinMat, KelvinMatAsym, KelvinVec};
use crate::laminate::StiffnessSet;
use crate::polar::{PolarParams2, PolarParams4, PolarParamsB9};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplianceSet {
    /// MPa⁻¹
    pub a: KelvinMat,
    /// MPa⁻¹
    pub b: KelvinMatAsym,
    /// MPa⁻¹
    pub d: KelvinMat,
    /// °C⁻¹
    pub u: KelvinVec,
    /// (°C·mm)⁻¹
    pub v1: KelvinVec,
    /// °C⁻¹·mm
    pub v2: KelvinVec,
    /// °C⁻¹
    pub w: KelvinVec,
    pub polar: CompliancePolar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompliancePolar {
    pub a: PolarParams4,
    pub b: PolarParamsB9,
    pub d: PolarParams4,
    pub u: PolarParams2,
    pub v1: PolarParams2,
    pub v2: PolarParams2,
    pub w: PolarParams2,
}

impl ComplianceSet {
    pub fn from_parts(
        a: KelvinMat,
        b: KelvinMatAsym,
        d: KelvinMat,
        u: KelvinVec,
        v1: KelvinVec,
        v2: KelvinVec,
        w: KelvinVec,
    ) -> Self {
        let polar = CompliancePolar {
            a: PolarParams4::from_cartesian(&a),
            b: PolarParamsB9::from_cartesian(&b),
            d: PolarParams4::from_cartesian(&d),
            u: PolarParams2::from_cartesian(&u),
            v1: PolarParams2::from_cartesian(&v1),
            v2: PolarParams2::from_cartesian(&v2),
            w: PolarParams2::from_cartesian(&w),
        };
        Self {
            a,
            b,
            d,
            u,
            v1,
            v2,
            w,
            polar,
        }
    }
}

/// Elastic compliance blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticCompliance {
    pub a: KelvinMat,
    pub b: KelvinMatAsym,
    pub d: KelvinMat,
}

fn inv_block(m: KelvinMat, block: &'static str) -> Result<KelvinMat> {
    m.inverse().map_err(|_| Error::SingularBlock { block })
}

fn sym(m: KelvinMatAsym) -> KelvinMat {
    KelvinMat::from_array_sym(m.to_array())
}

/// `a = (A − 3 B D⁻¹ B)⁻¹`, `d = (D − 3 B A⁻¹ B)⁻¹`, `b = −3 a B D⁻¹`.
pub fn compliance_elastic(s: &StiffnessSet) -> Result<ElasticCompliance> {
    let a_inv = inv_block(s.a, "A")?;
    let d_inv = inv_block(s.d, "D")?;
    let b = s.b.as_general();
    let schur_a = s.a.as_general() - (b * d_inv.as_general() * b).scale(3.0);
    let schur_d = s.d.as_general() - (b * a_inv.as_general() * b).scale(3.0);
    let a = inv_block(sym(schur_a), "A - 3 B D^-1 B")?;
    let d = inv_block(sym(schur_d), "D - 3 B A^-1 B")?;
    let bc = (a.as_general() * b * d_inv.as_general()).scale(-3.0);
    Ok(ElasticCompliance { a, b: bc, d })
}

/// Thermal compliances from the elastic blocks.
pub fn compliance_thermal(
    s: &StiffnessSet,
    e: &ElasticCompliance,
) -> (KelvinVec, KelvinVec, KelvinVec, KelvinVec) {
    let h = s.h;
    let bt = e.b.transpose();
    let u = e.a.mul_vec(s.u) + e.b.mul_vec(s.v);
    let v1 = (bt.mul_vec(s.u) + e.d.mul_vec(s.v) * 3.0) * (2.0 / h);
    let v2 = (e.a.mul_vec(s.v) * 3.0 + e.b.mul_vec(s.w)) * (h / 6.0);
    let w = bt.mul_vec(s.v) + e.d.mul_vec(s.w);
    (u, v1, v2, w)
}

/// Full compliance of a laminate.
pub fn compliance(s: &StiffnessSet) -> Result<ComplianceSet> {
    let e = compliance_elastic(s)?;
    let (u, v1, v2, w) = compliance_thermal(s, &e);
    Ok(ComplianceSet::from_parts(e.a, e.b, e.d, u, v1, v2, w))
}

/// Residuals between equivalent closed forms of the compliances, on the
/// same block scales as [`oracle_deviation`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormResiduals {
    /// `b` against `−3 A⁻¹ B d`.
    pub b_alt: f64,
    pub u_alt: f64,
    pub v1_alt: f64,
    pub v2_alt: f64,
    pub w_alt: f64,
    /// `v2` against `h²/12 · a [d⁻¹ v1 + 6/h · B (A⁻¹U − D⁻¹W)]`.
    pub v2_from_v1: f64,
}

impl FormResiduals {
    pub fn max(&self) -> f64 {
        [
            self.b_alt,
            self.u_alt,
            self.v1_alt,
            self.v2_alt,
            self.w_alt,
            self.v2_from_v1,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

struct BlockScales {
    mat: f64,
    vec: f64,
    h: f64,
}

impl BlockScales {
    fn of(c: &ComplianceSet, h: f64) -> Self {
        Self {
            mat: c.a.max_abs().max(c.d.max_abs()).max(f64::MIN_POSITIVE),
            vec: c.u.max_abs().max(c.w.max_abs()).max(f64::MIN_POSITIVE),
            h,
        }
    }

    fn mat(&self, x: KelvinMatAsym, y: KelvinMatAsym) -> f64 {
        (x - y).max_abs() / self.mat
    }

    /// `order` is the power of `h` in the block's units: `-1` for `v1`, `1` for `v2`.
    fn vec(&self, x: KelvinVec, y: KelvinVec, order: i32) -> f64 {
        (x - y).max_abs() / (self.vec * self.h.powi(order))
    }
}

/// Evaluates the alternative forms of every compliance and reports how far
/// each is from the primary one.
pub fn form_residuals(s: &StiffnessSet, c: &ComplianceSet) -> Result<FormResiduals> {
    let h = s.h;
    let a_inv = inv_block(s.a, "A")?.as_general();
    let d_inv = inv_block(s.d, "D")?.as_general();
    let bs = s.b.as_general();
    let (ca, cd) = (c.a.as_general(), c.d.as_general());

    let b_alt = (a_inv * bs * cd).scale(-3.0);
    let u_alt = ca.mul_vec(s.u - (bs * d_inv).mul_vec(s.v) * 3.0);
    let v1_alt = cd.mul_vec(s.v - (bs * a_inv).mul_vec(s.u)) * (6.0 / h);
    let v2_alt = ca.mul_vec(s.v - (bs * d_inv).mul_vec(s.w)) * (h / 2.0);
    let w_alt = cd.mul_vec(s.w - (bs * a_inv).mul_vec(s.v) * 3.0);

    let cd_inv = inv_block(c.d, "d")?;
    let inner =
        cd_inv.mul_vec(c.v1) + bs.mul_vec(a_inv.mul_vec(s.u) - d_inv.mul_vec(s.w)) * (6.0 / h);
    let v2_eq = ca.mul_vec(inner) * (h * h / 12.0);

    let sc = BlockScales::of(c, h);
    Ok(FormResiduals {
        b_alt: sc.mat(c.b, b_alt),
        u_alt: sc.vec(c.u, u_alt, 0),
        v1_alt: sc.vec(c.v1, v1_alt, -1),
        v2_alt: sc.vec(c.v2, v2_alt, 1),
        w_alt: sc.vec(c.w, w_alt, 0),
        v2_from_v1: sc.vec(c.v2, v2_eq, 1),
    })
}

type Mat6 = [[f64; 6]; 6];

/// Solves `K X = R` for several right-hand sides by Gaussian elimination
/// with partial pivoting.
fn solve6(mut k: Mat6, mut rhs: Vec<[f64; 6]>) -> Result<Vec<[f64; 6]>> {
    let scale = k.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::SingularMatrix { size: 6 });
    }
    for col in 0..6 {
        let piv = (col..6)
            .max_by(|&i, &j| k[i][col].abs().total_cmp(&k[j][col].abs()))
            .expect("non-empty range");
        if !(k[piv][col].abs() > 1e-14 * scale) {
            return Err(Error::SingularMatrix { size: 6 });
        }
        k.swap(col, piv);
        for r in rhs.iter_mut() {
            r.swap(col, piv);
        }
        for row in col + 1..6 {
            let f = k[row][col] / k[col][col];
            if f == 0.0 {
                continue;
            }
            let pivot_row = k[col];
            for (x, p) in k[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            for r in rhs.iter_mut() {
                r[row] -= f * r[col];
            }
        }
    }
    for r in rhs.iter_mut() {
        for row in (0..6).rev() {
            let tail: f64 = (row + 1..6).map(|j| k[row][j] * r[j]).sum();
            r[row] = (r[row] - tail) / k[row][row];
        }
    }
    Ok(rhs)
}

/// Compliances obtained by inverting the assembled 6×6 constitutive matrix
/// directly. Independent of the block formulas; used for verification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleCompliance {
    pub a: KelvinMatAsym,
    pub b: KelvinMatAsym,
    pub d: KelvinMatAsym,
    pub u: KelvinVec,
    pub v1: KelvinVec,
    pub v2: KelvinVec,
    pub w: KelvinVec,
}

/// The 6×6 stiffness matrix of the law, `[[hA, h²/2 B], [h²/2 B, h³/12 D]]`.
pub fn assembled_stiffness(s: &StiffnessSet) -> Mat6 {
    let h = s.h;
    let blocks = [
        [s.a.to_array(), s.b.to_array()],
        [s.b.to_array(), s.d.to_array()],
    ];
    let f = [[h, h * h / 2.0], [h * h / 2.0, h * h * h / 12.0]];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| f[i / 3][j / 3] * blocks[i / 3][j / 3][i % 3][j % 3])
    })
}

pub fn full_inverse_oracle(s: &StiffnessSet) -> Result<OracleCompliance> {
    let h = s.h;
    let k = assembled_stiffness(s);
    let mut rhs: Vec<[f64; 6]> = (0..6)
        .map(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
        .collect();
    let cat = |x: KelvinVec, fx: f64, y: KelvinVec, fy: f64| {
        let (x, y) = (x.to_array(), y.to_array());
        std::array::from_fn(|i| if i < 3 { fx * x[i] } else { fy * y[i - 3] })
    };
    rhs.push(cat(s.u, h, s.v, h * h / 2.0));
    rhs.push(cat(s.v, h * h / 2.0, s.w, h * h * h / 12.0));
    let sol = solve6(k, rhs)?;

    // columns of the inverse
    let inv = |i: usize, j: usize| sol[j][i];
    let block = |r0: usize, c0: usize, f: f64| {
        KelvinMatAsym::from_array(std::array::from_fn(|i| {
            std::array::from_fn(|j| f * inv(r0 + i, c0 + j))
        }))
    };
    let split = |x: &[f64; 6]| {
        (
            KelvinVec::from_array([x[0], x[1], x[2]]),
            KelvinVec::from_array([x[3], x[4], x[5]]),
        )
    };
    let (u, v1) = split(&sol[6]);
    let (v2, w) = split(&sol[7]);
    Ok(OracleCompliance {
        a: block(0, 0, h),
        b: block(0, 3, h * h / 2.0),
        d: block(3, 3, h * h * h / 12.0),
        u,
        v1,
        v2,
        w,
    })
}

/// Relative deviation of each block from the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleDeviation {
    pub a: f64,
    pub b: f64,
    pub d: f64,
    pub u: f64,
    pub v1: f64,
    pub v2: f64,
    pub w: f64,
}

impl OracleDeviation {
    pub fn max(&self) -> f64 {
        [self.a, self.b, self.d, self.u, self.v1, self.v2, self.w]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Deviations of `c` from the dense oracle. Coupling blocks are compared on
/// the scale of their uncoupled counterparts (`b` on `a`, `v1` on `u / h`,
/// `v2` on `u h`), since they may vanish identically.
pub fn oracle_deviation(
    s: &StiffnessSet,
    c: &ComplianceSet,
    o: &OracleCompliance,
) -> OracleDeviation {
    let sc = BlockScales::of(c, s.h);
    OracleDeviation {
        a: sc.mat(c.a.as_general(), o.a),
        b: sc.mat(c.b, o.b),
        d: sc.mat(c.d.as_general(), o.d),
        u: sc.vec(c.u, o.u, 0),
        v1: sc.vec(c.v1, o.v1, -1),
        v2: sc.vec(c.v2, o.v2, 1),
        w: sc.vec(c.w, o.w, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kelvin::{rel_diff_mat, rel_diff_vec};
    use crate::laminate::{stiffness_tensors, Laminate, DEFAULT_PLY_THICKNESS};
    use crate::material::MaterialCatalog;

    fn set(angles: &[f64]) -> StiffnessSet {
        let lam = Laminate::identical("t", "T300/5208", angles, DEFAULT_PLY_THICKNESS).unwrap();
        stiffness_tensors(&lam, &MaterialCatalog::builtin()).unwrap()
    }

    fn first() -> StiffnessSet {
        set(&[0., 0., 0., 0., 0., 0., 90., 90., 90., 90., 90., 90.])
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn first_laminate_values() {
        let c = compliance(&first()).unwrap();
        assert!(rel(c.a.m11, 2.59e-5) < 1e-2);
        assert!(rel(c.b.m11, 3.47e-5) < 1e-2);
        assert!(rel(c.u.v1, 5.21e-4) < 1e-2 && rel(c.u.v2, 5.21e-4) < 1e-2);
        assert!(rel(c.v1.v1, 1.14e-3) < 1e-2 && rel(c.v1.v2, -1.14e-3) < 1e-2);
        assert!(rel(c.v2.v1, 2.13e-4) < 1e-2 && rel(c.v2.v2, -2.13e-4) < 1e-2);
    }

    #[test]
    fn printed_forms_agree() {
        for s in [first(), set(&[30.0, -45.0, 10.0]), set(&[0.0, 90.0])] {
            let c = compliance(&s).unwrap();
            let r = form_residuals(&s, &c).unwrap();
            assert!(r.max() < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn uncoupled_reduction() {
        let s = set(&[0.0, 45.0, 45.0, 0.0]);
        assert!(s.b.max_abs() < 1e-9);
        let mut s = s;
        s.b = KelvinMat::ZERO;
        s.v = KelvinVec::ZERO;
        let c = compliance(&s).unwrap();
        assert!(rel_diff_mat(c.a.into(), s.a.inverse().unwrap().into()) < 1e-14);
        assert_eq!(c.b.max_abs(), 0.0);
        assert!(rel_diff_vec(c.u, s.a.inverse().unwrap().mul_vec(s.u)) < 1e-14);
        assert_eq!(c.v1, KelvinVec::ZERO);
        assert_eq!(c.v2, KelvinVec::ZERO);
    }

    #[test]
    fn oracle_agrees_on_coupled_laminates() {
        for s in [
            first(),
            set(&[15.0, -60.0, 33.0, 90.0, 0.0]),
            set(&[45.0, 0.0]),
        ] {
            let c = compliance(&s).unwrap();
            let o = full_inverse_oracle(&s).unwrap();
            let dev = oracle_deviation(&s, &c, &o);
            assert!(dev.max() < 1e-9, "{dev:?}");
        }
    }

    #[test]
    fn identity_like_stiffness() {
        let s = StiffnessSet {
            a: KelvinMat::identity() * 2.0,
            b: KelvinMat::ZERO,
            d: KelvinMat::identity() * 4.0,
            u: KelvinVec::new(1.0, 1.0, 0.0),
            v: KelvinVec::ZERO,
            w: KelvinVec::new(2.0, 0.0, 0.0),
            h: 1.0,
            ply: None,
        };
        let o = full_inverse_oracle(&s).unwrap();
        assert!((o.a.m11 - 0.5).abs() < 1e-15 && (o.d.m66 - 0.25).abs() < 1e-15);
        assert!((o.u.v1 - 0.5).abs() < 1e-15 && (o.w.v1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn singular_block_is_named() {
        let mut s = first();
        s.a = KelvinMat::ZERO;
        match compliance(&s) {
            Err(Error::SingularBlock { block }) => assert_eq!(block, "A"),
            other => panic!("{other:?}"),
        }
        let mut s = first();
        s.a = KelvinMat::ZERO;
        assert!(full_inverse_oracle(&s).is_err());
    }
}
