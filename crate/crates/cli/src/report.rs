use serde::{Deserialize, Serialize};

use thermolam::compliance::{form_residuals, oracle_deviation, FormResiduals, OracleDeviation};
use thermolam::laminate::{homogeneity_tensors, LaminateFile};
use thermolam::{
    full_inverse_oracle, ComplianceSet, KelvinMat, KelvinMatAsym, KelvinVec, Laminate, PlyPolar,
    PolarParams2, PolarParams4, PolarParamsB9, Result, StiffnessSet,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tensor4 {
    pub kelvin: KelvinMat,
    pub polar: PolarParams4,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Coupling {
    pub kelvin: KelvinMatAsym,
    pub polar: PolarParamsB9,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tensor2 {
    pub kelvin: KelvinVec,
    pub polar: PolarParams2,
}

fn t4(m: KelvinMat) -> Tensor4 {
    Tensor4 {
        kelvin: m,
        polar: PolarParams4::from_cartesian(&m),
    }
}

fn t2(v: KelvinVec) -> Tensor2 {
    Tensor2 {
        kelvin: v,
        polar: PolarParams2::from_cartesian(&v),
    }
}

/// Thickness-normalised stiffness tensors, MPa and °C⁻¹MPa.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct StiffnessReport {
    pub h_mm: f64,
    pub A: Tensor4,
    pub B: Tensor4,
    pub D: Tensor4,
    pub U: Tensor2,
    pub V: Tensor2,
    pub W: Tensor2,
    pub ply: Option<PlyPolar>,
}

impl StiffnessReport {
    pub fn new(s: &StiffnessSet) -> Self {
        Self {
            h_mm: s.h,
            A: t4(s.a),
            B: t4(s.b),
            D: t4(s.d),
            U: t2(s.u),
            V: t2(s.v),
            W: t2(s.w),
            ply: s.ply,
        }
    }

    pub fn to_stiffness(&self) -> StiffnessSet {
        StiffnessSet {
            a: self.A.kelvin,
            b: self.B.kelvin,
            d: self.D.kelvin,
            u: self.U.kelvin,
            v: self.V.kelvin,
            w: self.W.kelvin,
            h: self.h_mm,
            ply: self.ply,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct HomogeneityReport {
    pub C: Tensor4,
    pub Y: Tensor2,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub a: Tensor4,
    pub b: Coupling,
    pub d: Tensor4,
    pub u: Tensor2,
    pub v1: Tensor2,
    pub v2: Tensor2,
    pub w: Tensor2,
}

impl ComplianceReport {
    pub fn new(c: &ComplianceSet) -> Self {
        let p = &c.polar;
        Self {
            a: Tensor4 {
                kelvin: c.a,
                polar: p.a,
            },
            b: Coupling {
                kelvin: c.b,
                polar: p.b,
            },
            d: Tensor4 {
                kelvin: c.d,
                polar: p.d,
            },
            u: Tensor2 {
                kelvin: c.u,
                polar: p.u,
            },
            v1: Tensor2 {
                kelvin: c.v1,
                polar: p.v1,
            },
            v2: Tensor2 {
                kelvin: c.v2,
                polar: p.v2,
            },
            w: Tensor2 {
                kelvin: c.w,
                polar: p.w,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifySection {
    pub oracle: OracleDeviation,
    pub oracle_max_deviation: f64,
    pub forms: FormResiduals,
    pub form_max_residual: f64,
}

impl VerifySection {
    pub fn new(s: &StiffnessSet, c: &ComplianceSet) -> Result<Self> {
        let oracle = oracle_deviation(s, c, &full_inverse_oracle(s)?);
        let forms = form_residuals(s, c)?;
        Ok(Self {
            oracle_max_deviation: oracle.max(),
            oracle,
            form_max_residual: forms.max(),
            forms,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub laminate: LaminateFile,
    pub n: usize,
    pub stiffness: StiffnessReport,
    pub homogeneity: HomogeneityReport,
    pub compliance: ComplianceReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifySection>,
}

impl AnalyzeReport {
    pub fn new(lam: &Laminate, s: &StiffnessSet, c: &ComplianceSet, verify: bool) -> Result<Self> {
        let hp = homogeneity_tensors(s);
        Ok(Self {
            laminate: LaminateFile::from_laminate(lam),
            n: lam.n(),
            stiffness: StiffnessReport::new(s),
            homogeneity: HomogeneityReport {
                C: t4(hp.c),
                Y: t2(hp.y),
            },
            compliance: ComplianceReport::new(c),
            verification: if verify {
                Some(VerifySection::new(s, c)?)
            } else {
                None
            },
        })
    }
}
