use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid material `{name}`: {reason}")]
    InvalidMaterial { name: String, reason: String },

    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    #[error("invalid laminate: {0}")]
    InvalidLaminate(String),

    #[error("lamination parameters require identical plies, laminate mixes {0} materials")]
    HybridLaminate(usize),

    #[error("block `{block}` is singular")]
    SingularBlock { block: &'static str },

    #[error("singular {size}x{size} matrix")]
    SingularMatrix { size: usize },

    #[error("denominator `{name}` vanishes ({value:e})")]
    DenominatorVanishes { name: &'static str, value: f64 },

    #[error("normalisation undefined: T0 + 2 T1 = {0:e} is not positive")]
    NormalizationUndefined(f64),

    #[error(
        "thermal tensor is not aligned with the elastic frame: Phi_gamma - Phi_1 = {0:.6} rad"
    )]
    MisalignedThermalAxes(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a singular laminate rather than bad input.
    pub fn is_singular(&self) -> bool {
        matches!(
            self,
            Error::SingularBlock { .. }
                | Error::SingularMatrix { .. }
                | Error::DenominatorVanishes { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
