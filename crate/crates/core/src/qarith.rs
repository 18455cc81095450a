//! q-deformed numbers and factorials over `f64`.
//!
//! The bracket is the symmetric one, `[x] = (q^x - q^-x) / (q - q^-1)`, which
//! tends to `x` as `q -> 1`. A [`DeformationParameter`] in classical-limit mode
//! evaluates every bracket as the identity and every power `q^x` as 1, so the
//! same construction code yields the undeformed gl(2/1) matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How brackets and powers of q are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeformationMode {
    Generic,
    ClassicalLimit,
}

/// The deformation parameter q together with its evaluation mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParameter {
    value: f64,
    mode: DeformationMode,
}

impl DeformationParameter {
    /// Generic q: must be finite, positive and different from 1.
    pub fn generic(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Config(format!(
                "deformation parameter must be a positive real number, got {value}"
            )));
        }
        if value == 1.0 {
            return Err(Error::Config(
                "q = 1 is not generic; use the classical-limit mode instead".into(),
            ));
        }
        Ok(Self {
            value,
            mode: DeformationMode::Generic,
        })
    }

    /// The undeformed limit `q -> 1`.
    pub fn classical() -> Self {
        Self {
            value: 1.0,
            mode: DeformationMode::ClassicalLimit,
        }
    }

    pub fn new(value: f64, mode: DeformationMode) -> Result<Self> {
        match mode {
            DeformationMode::Generic => Self::generic(value),
            DeformationMode::ClassicalLimit => Ok(Self::classical()),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn mode(&self) -> DeformationMode {
        self.mode
    }

    pub fn is_classical(&self) -> bool {
        self.mode == DeformationMode::ClassicalLimit
    }

    /// `q^x`; identically 1 in the classical limit.
    pub fn pow(&self, x: f64) -> f64 {
        match self.mode {
            DeformationMode::Generic => self.value.powf(x),
            DeformationMode::ClassicalLimit => 1.0,
        }
    }

    /// The q-number `[x]`.
    pub fn bracket(&self, x: f64) -> f64 {
        match self.mode {
            DeformationMode::ClassicalLimit => x,
            DeformationMode::Generic => {
                if x == 0.0 {
                    return 0.0;
                }
                let q = self.value;
                // sinh form keeps precision for q close to 1
                let h = q.ln();
                (x * h).sinh() / h.sinh()
            }
        }
    }

    /// `[n]! = [1][2]...[n]`.
    pub fn factorial(&self, n: i64) -> Result<f64> {
        if n < 0 {
            return Err(Error::Domain(format!(
                "q-factorial of a negative integer ({n})"
            )));
        }
        Ok((1..=n).map(|k| self.bracket(k as f64)).product())
    }
}

/// Free-function form of [`DeformationParameter::bracket`].
pub fn q_number(x: f64, q: &DeformationParameter) -> f64 {
    q.bracket(x)
}

/// Free-function form of [`DeformationParameter::factorial`].
pub fn q_factorial(n: i64, q: &DeformationParameter) -> Result<f64> {
    q.factorial(n)
}
