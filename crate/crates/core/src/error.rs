use thiserror::Error;

pub type Result<T> = std::result::Result<T, BpError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BpError {
    #[error("invalid geometry: {0} violated")]
    InvalidGeometry(&'static str),

    #[error("invalid RIS placement: {0}")]
    InvalidPlacement(String),

    /// A closed form was asked to evaluate outside the domain it is proven on.
    #[error("precondition violated: {0}")]
    Domain(String),

    /// A closed form produced a value well outside `[0, 1]`.
    #[error("closed form returned {value}, outside [0, 1] beyond tolerance")]
    OutOfRange { value: f64 },

    #[error("invalid obstacle model: {0}")]
    InvalidModel(String),

    #[error(
        "truncated-normal rejection acceptance rate {rate:e} is below 1e-6; \
         use an inverse-CDF sampler for these parameters"
    )]
    RejectionRate { rate: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
