use num_complex::Complex64;
use thiserror::Error;

use crate::modes::ModeLabel;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameter: {0}")]
    InvalidParameter(&'static str),

    /// A lower hypergeometric parameter sits on a nonpositive integer that the
    /// series reaches before it terminates.
    #[error("singular lower parameter {parameter} at coefficient index {index}{}", fmt_mode(.mode))]
    SingularLowerParameter {
        parameter: Complex64,
        index: usize,
        mode: Option<(ModeLabel, f64)>,
    },

    #[error(
        "hypergeometric series does not terminate (no upper parameter is a nonpositive integer)"
    )]
    NotTerminating,

    #[error("exceptional point: 1 - 4a(k+1) = {radicand:e} for a = {a}, k = {k}")]
    ExceptionalPoint { a: f64, k: usize, radicand: f64 },

    #[error("label {0} is not valid for this operation")]
    InvalidLabel(ModeLabel),

    #[error("residue needs the x^-1 coefficient but the truncated product is only known up to x^{known_up_to}")]
    InsufficientTruncation { known_up_to: i64 },

    #[error("initial state sequences have different lengths ({g}, {e}, {coh})")]
    LengthMismatch { g: usize, e: usize, coh: usize },

    #[error("initial state trace is {trace}, expected 1")]
    TraceNotNormalized { trace: f64 },

    #[error("population {which}_{index} = {value} is outside [0, 1]")]
    NegativePopulation {
        which: char,
        index: usize,
        value: f64,
    },

    #[error("imaginary residue {imag:e} exceeds the reality tolerance")]
    RealityViolation { imag: f64 },

    #[error(
        "time {tau} is outside the supported range (need 0 <= tau and Re(lambda) tau <= {cap})"
    )]
    TimeOutOfRange { tau: f64, cap: f64 },

    #[error("truncation level {n_trunc} too tight: {reason}")]
    TruncationTooTight {
        n_trunc: usize,
        reason: &'static str,
    },

    #[error("state slice sequences do not share a grid")]
    GridMismatch,
}

fn fmt_mode(mode: &Option<(ModeLabel, f64)>) -> alloc::string::String {
    match mode {
        Some((label, a)) => alloc::format!(" (mode {label}, a = {a})"),
        None => alloc::string::String::new(),
    }
}
