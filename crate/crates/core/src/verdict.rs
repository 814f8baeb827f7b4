//! Outcome of a single identity check.

use std::fmt;

use crate::poly::Poly;

/// Why an identity check failed. When the check is of the form
/// `lhs - rhs == 0`, the nonzero difference is kept as the residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub detail: String,
    pub residual: Option<Poly>,
}

impl Failure {
    pub fn new(detail: impl Into<String>) -> Self {
        Failure {
            detail: detail.into(),
            residual: None,
        }
    }

    pub fn with_residual(detail: impl Into<String>, residual: Poly) -> Self {
        Failure {
            detail: detail.into(),
            residual: Some(residual),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.detail)?;
        if let Some(r) = &self.residual {
            write!(f, " (residual: {r})")?;
        }
        Ok(())
    }
}

impl std::error::Error for Failure {}

pub type Verdict = Result<(), Failure>;

/// Passes iff `residual` is the zero polynomial.
pub fn expect_zero(what: &str, residual: Poly) -> Verdict {
    if residual.is_zero() {
        Ok(())
    } else {
        Err(Failure::with_residual(
            format!("{what}: nonzero residual"),
            residual,
        ))
    }
}

/// Passes iff `lhs == rhs`; the residual on failure is `lhs - rhs`.
pub fn expect_equal(what: &str, lhs: &Poly, rhs: &Poly) -> Verdict {
    expect_zero(what, lhs - rhs)
}

pub fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(Failure::new(detail()))
    }
}
