//! The DYS symbol `ζ(z_A, z_B, z_C) = 1 − λz_A − λz_B + λ(2 − αz_C)z_Az_B`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::region::{Circle, ComplexPoint};

/// Step size, averaging parameter and shift of the symbol `|ζ − s|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DysParams {
    pub alpha: f64,
    pub lambda: f64,
    #[serde(default)]
    pub s: f64,
}

impl DysParams {
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        let p = DysParams { alpha, lambda, s: 0.0 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_shift(self, s: f64) -> Result<Self> {
        if s == 1.0 {
            return Err(Error::InvalidShift);
        }
        let p = DysParams { s, ..self };
        p.validate()?;
        Ok(p)
    }

    /// Checks positivity and finiteness; `s = 1` is left to the callers that need `s ≠ 1`.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !self.s.is_finite() {
            return Err(Error::InvalidParameter(format!("s must be finite, got {}", self.s)));
        }
        Ok(())
    }

    /// `t = (1 − s)/λ`.
    pub fn t(&self) -> f64 {
        (1.0 - self.s) / self.lambda
    }
}

pub fn zeta(za: ComplexPoint, zb: ComplexPoint, zc: ComplexPoint, p: &DysParams) -> ComplexPoint {
    let l = p.lambda;
    1.0 - l * za - l * zb + l * (2.0 - p.alpha * zc) * za * zb
}

/// The factored rendering `1 − λz_B + λz_A(2z_B − 1 − αz_Cz_B)`.
pub fn zeta_factored(za: ComplexPoint, zb: ComplexPoint, zc: ComplexPoint, p: &DysParams) -> ComplexPoint {
    let l = p.lambda;
    1.0 - l * zb + l * za * (2.0 * zb - 1.0 - p.alpha * zc * zb)
}

pub fn shifted_modulus(za: ComplexPoint, zb: ComplexPoint, zc: ComplexPoint, p: &DysParams) -> f64 {
    (zeta(za, zb, zc, p) - p.s).norm()
}

/// Complex derivatives `(∂ζ/∂z_A, ∂ζ/∂z_B, ∂ζ/∂z_C)`.
pub fn zeta_partials(za: ComplexPoint, zb: ComplexPoint, zc: ComplexPoint, p: &DysParams) -> [ComplexPoint; 3] {
    let l = p.lambda;
    let k = 2.0 - p.alpha * zc;
    [-l + l * k * zb, -l + l * k * za, -l * p.alpha * za * zb]
}

/// Real gradient of `|ζ − s|²` per coordinate, packed as `∂/∂x + i ∂/∂y`.
///
/// For holomorphic ζ this is `2(ζ − s)·conj(ζ′)`.
pub fn grad_shifted_modulus_sq(
    za: ComplexPoint,
    zb: ComplexPoint,
    zc: ComplexPoint,
    p: &DysParams,
) -> [ComplexPoint; 3] {
    let w = zeta(za, zb, zc, p) - p.s;
    zeta_partials(za, zb, zc, p).map(|d| 2.0 * w * d.conj())
}

/// Upper bound on the gradient norm of `|ζ − s|` over a product of disks.
pub fn lipschitz_bound(enclosures: &[Circle; 3], p: &DysParams) -> f64 {
    let [a, b, c] = enclosures.map(|e| e.sup_modulus());
    let l = p.lambda;
    let m_a = l * (1.0 + (2.0 + p.alpha * c) * b);
    let m_b = l * (1.0 + (2.0 + p.alpha * c) * a);
    let m_c = l * p.alpha * a * b;
    (m_a * m_a + m_b * m_b + m_c * m_c).sqrt()
}
