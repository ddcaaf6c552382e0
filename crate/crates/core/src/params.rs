use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation parameter `q` and the two twist parameters `p`, `ν`.
///
/// `ω = q − q⁻¹` is always recomputed from `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParameters {
    q: f64,
    p: f64,
    nu: f64,
}

impl ModelParameters {
    pub fn new(q: f64, p: f64, nu: f64) -> Result<Self> {
        if !(q.is_finite() && p.is_finite() && nu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "parameters must be finite (q={q}, p={p}, nu={nu})"
            )));
        }
        if q == 0.0 {
            return Err(Error::InvalidParameter("q must be nonzero".into()));
        }
        if p == 0.0 {
            return Err(Error::InvalidParameter("p must be nonzero".into()));
        }
        Ok(Self { q, p, nu })
    }

    /// `q = p = 1, ν = 0`: every R-matrix of the family collapses to the identity.
    pub fn classical() -> Self {
        Self {
            q: 1.0,
            p: 1.0,
            nu: 0.0,
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn omega(&self) -> f64 {
        self.q - self.q.recip()
    }

    /// Name/value pairs in a fixed order, for reports.
    pub fn named(&self) -> [(&'static str, f64); 3] {
        [("q", self.q), ("p", self.p), ("nu", self.nu)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ModelParameters::new(0.0, 1.0, 0.0).is_err());
        assert!(ModelParameters::new(1.0, 0.0, 0.0).is_err());
        assert!(ModelParameters::new(1.0, 1.0, f64::NAN).is_err());
        assert!(ModelParameters::new(-1.2, 0.5, -3.0).is_ok());
    }

    #[test]
    fn omega_from_q() {
        let m = ModelParameters::new(2.0, 1.0, 0.0).unwrap();
        assert_eq!(m.omega(), 1.5);
        assert_eq!(ModelParameters::classical().omega(), 0.0);
    }
}
