use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular phase deformation: sin(tau) vanishes at tau = {tau}")]
    SingularParameter { tau: f64 },

    #[error("invalid level (n = {n}, l = {l}): l must satisfy 0 <= l <= n with n - l even")]
    InvalidLevel { n: u32, l: u32 },

    #[error("oscillator energies are only defined for a real deformation q = e^tau")]
    PhaseDeformation,

    #[error("{}", insufficient_message(*.n_max, *.required))]
    InsufficientShells { n_max: u32, required: Option<u32> },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid dataset: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn insufficient_message(n_max: u32, required: Option<u32>) -> String {
    match required {
        Some(r) => {
            format!("n_max = {n_max} does not cover the requested occupancy; need n_max >= {r}")
        }
        None => format!(
            "n_max = {n_max} does not cover the requested occupancy and no finite bound was found"
        ),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
