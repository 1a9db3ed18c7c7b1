//! Special functions entering the per-interval Coulomb solutions.
//!
//! Everything here takes real arguments. The confluent hypergeometric
//! functions are also available in extended range ([`Scaled`]) because the
//! Green's function construction evaluates them at arguments up to ~1e9.

mod bessel;
mod dd;
mod gamma;
mod hyper;
mod scaled;

pub use bessel::sph_bessel_j;
pub use dd::Dd;
pub use gamma::{cos_pi, gamma, ln_abs_rgamma, log_gamma, rgamma, sin_pi};
pub use hyper::{kummer_m_scaled, tricomi_u_connection, tricomi_u_scaled};
pub use scaled::{ldexp, Scaled};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFnError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: result is of order 2^{exponent}")]
    Overflow { exponent: i64 },
    #[error("accuracy loss in {what} (estimated relative error {est_rel_error:e})")]
    AccuracyLoss { what: String, est_rel_error: f64 },
}

/// Results with `est_rel_error` above this are flagged by callers.
pub const FLAG_REL_ERROR: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpecialFnResult {
    pub value: f64,
    pub est_rel_error: f64,
}

impl SpecialFnResult {
    pub fn is_flagged(&self) -> bool {
        !(self.est_rel_error <= FLAG_REL_ERROR)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledResult {
    pub value: Scaled,
    pub est_rel_error: f64,
}

impl ScaledResult {
    pub fn exact(value: Scaled) -> Self {
        ScaledResult {
            value,
            est_rel_error: 0.0,
        }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        ScaledResult {
            value: self.value.mul_f64(x),
            est_rel_error: self.est_rel_error,
        }
    }

    pub fn is_flagged(&self) -> bool {
        !(self.est_rel_error <= FLAG_REL_ERROR)
    }

    fn into_f64(self) -> Result<SpecialFnResult, SpecFnError> {
        let v = self.value.to_f64();
        if !v.is_finite() {
            return Err(SpecFnError::Overflow {
                exponent: self.value.exp2(),
            });
        }
        Ok(SpecialFnResult {
            value: v,
            est_rel_error: self.est_rel_error,
        })
    }
}

/// Kummer's confluent hypergeometric function `M(a,b,z)`.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<SpecialFnResult, SpecFnError> {
    kummer_m_scaled(a, b, z)?.into_f64()
}

/// Tricomi's confluent hypergeometric function `U(a,b,z)`, `z > 0`.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<SpecialFnResult, SpecFnError> {
    tricomi_u_scaled(a, b, z)?.into_f64()
}

/// `M'(a,b,z) = (a/b) M(a+1,b+1,z)`, extended range.
pub fn kummer_m_deriv_scaled(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    if a == 0.0 {
        return Ok(ScaledResult::exact(Scaled::ZERO));
    }
    Ok(kummer_m_scaled(a + 1.0, b + 1.0, z)?.mul_f64(a / b))
}

/// `U'(a,b,z) = -a U(a+1,b+1,z)`, extended range.
pub fn tricomi_u_deriv_scaled(a: f64, b: f64, z: f64) -> Result<ScaledResult, SpecFnError> {
    if a == 0.0 {
        if z <= 0.0 || !z.is_finite() {
            return Err(SpecFnError::Domain(format!("U requires z > 0, got {z}")));
        }
        return Ok(ScaledResult::exact(Scaled::ZERO));
    }
    Ok(tricomi_u_scaled(a + 1.0, b + 1.0, z)?.mul_f64(-a))
}

pub fn kummer_m_deriv(a: f64, b: f64, z: f64) -> Result<SpecialFnResult, SpecFnError> {
    kummer_m_deriv_scaled(a, b, z)?.into_f64()
}

pub fn tricomi_u_deriv(a: f64, b: f64, z: f64) -> Result<SpecialFnResult, SpecFnError> {
    tricomi_u_deriv_scaled(a, b, z)?.into_f64()
}
