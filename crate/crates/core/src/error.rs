use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("shape {0} contains no grid cell")]
    EmptyBody(String),

    #[error("body `{0}` has coincident or overlapping voxels")]
    OverlappingVoxels(String),

    #[error("body `{label}` reaches x_{axis} = {extent} which is not strictly below the plane at {plane}")]
    CrossesPlane { label: String, axis: usize, extent: f64, plane: f64 },

    #[error("bodies overlap or touch (separation {0})")]
    Overlap(f64),

    #[error("bodies are not mirror images: {0}")]
    NotMirrorImages(String),

    #[error("negative susceptibility {chi} at xi = {xi}")]
    NegativeSusceptibility { chi: f64, xi: f64 },

    #[error("1 + chi G is not positive definite at xi = {xi} (body `{label}`)")]
    NotPositiveDefinite { label: String, xi: f64 },

    #[error("matrix has eigenvalue {value} below the clip threshold {threshold}")]
    NegativeEigenvalue { value: f64, threshold: f64 },

    #[error("coupling eigenvalue {lambda} outside [0, 1) at xi = {xi}")]
    EigenvalueBound { lambda: f64, xi: f64 },

    #[error("G_AB J is not symmetric: relative asymmetry {0:e}")]
    Asymmetric(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("eigen solver failed: {0}")]
    Solver(String),

    #[error("invalid config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
