use thiserror::Error;

/// Errors produced by the numeric and algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {what} = {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("model isometry determinant deviates from 1 by {deviation:e}")]
    Determinant { deviation: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} > tolerance {tolerance:e} after {intervals} intervals")]
    Quadrature {
        estimate: f64,
        tolerance: f64,
        intervals: usize,
    },

    #[error("displacement budget is infeasible: loop sum {loop_sum} exceeds 1/2")]
    Infeasible { loop_sum: f64 },

    #[error("degenerate budget (m = k) with loop sum {loop_sum} > 1/2")]
    Degenerate { loop_sum: f64 },

    #[error("limit density estimates disagree: stabilized {stabilized} vs closed form {closed_form}")]
    LimitDisagreement { stabilized: f64, closed_form: f64 },

    #[error("limit density did not stabilize: successive difference {difference:e}")]
    NotStabilized { difference: f64 },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}
