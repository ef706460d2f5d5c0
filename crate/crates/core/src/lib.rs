//! Thermoelastic analysis of anisotropic laminates by the polar method.
//!
//! The crate computes the stiffness tensors `A, B, D` and the thermal
//! stiffness tensors `U, V, W` of a stacking sequence, inverts the
//! constitutive law to the compliances `a, b, d, u, v1, v2, w`, classifies
//! the result (coupling, quasi-homogeneity, thermally stable classes),
//! evaluates closed-form polar solutions for the special orthotropic cases,
//! and searches stacking sequences with exact integer predicates.
//!
//! Units are fixed: MPa, mm, °C; angles are radians in the API and degrees
//! in files.
//!
//! ```
//! use thermolam::{compliance, stiffness_tensors, Laminate, MaterialCatalog};
//!
//! let lam = Laminate::identical("cross", "T300/5208", &[0.0, 0.0, 90.0, 90.0], 0.125).unwrap();
//! let s = stiffness_tensors(&lam, &MaterialCatalog::builtin()).unwrap();
//! let c = compliance(&s).unwrap();
//! assert!(s.b.m11 < 0.0);
//! assert!(c.v1.v1 > 0.0);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classification;
pub mod compliance;
pub mod error;
pub mod kelvin;
pub mod laminate;
pub mod material;
pub mod polar;
pub mod response;
pub mod search;

pub use classification::{classify, ClassificationReport, SpecialCase};
pub use compliance::{compliance, full_inverse_oracle, ComplianceSet};
pub use error::{Error, Result};
pub use kelvin::{KelvinMat, KelvinMatAsym, KelvinVec};
pub use laminate::{
    lamination_parameters, polar_homogenize, stiffness_tensors, Laminate, LaminateFile,
    LaminationParams, StiffnessSet,
};
pub use material::{MaterialCatalog, PlyMaterial, PlyPolar};
pub use polar::{PolarParams2, PolarParams4, PolarParamsB9, Rotate, SymmetryClass, SymmetryClass2};
pub use response::{deform, internal_actions, Response, ThermalLoad};
pub use search::{enumerate, Predicate, SearchSpec};
