//! Physical parameters of the model and the parity label shared by the solvers.

use std::fmt;

/// Mass `m` and coupling `g` of the scalar potential `g|x|`, in units with
/// hbar = c = 1. The dimensionless strength `alpha = m / sqrt(g)` is always
/// derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    m: f64,
    g: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamsError {
    #[error("mass must be positive and finite, got {0}")]
    Mass(f64),
    #[error("coupling must be positive and finite, got {0}")]
    Coupling(f64),
    #[error("alpha must be positive")]
    Alpha(f64),
}

impl ModelParams {
    pub fn new(m: f64, g: f64) -> Result<Self, ParamsError> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(ParamsError::Mass(m));
        }
        if !(g > 0.0) || !g.is_finite() {
            return Err(ParamsError::Coupling(g));
        }
        Ok(ModelParams { m, g })
    }

    /// Dimensionless parameterization with g = 1, so m = alpha.
    pub fn from_alpha(alpha: f64) -> Result<Self, ParamsError> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(ParamsError::Alpha(alpha));
        }
        Ok(ModelParams { m: alpha, g: 1.0 })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn alpha(&self) -> f64 {
        self.m / self.g.sqrt()
    }
}

/// Parity under x -> -x combined with the beta matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    /// +1 for even, -1 for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn flipped(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity '{other}'")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_is_derived() {
        let p = ModelParams::new(2.0, 4.0).unwrap();
        assert_eq!(p.alpha(), 1.0);
        let q = ModelParams::from_alpha(7.5).unwrap();
        assert_eq!((q.m(), q.g(), q.alpha()), (7.5, 1.0, 7.5));
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(ModelParams::new(0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -2.0).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0).is_err());
        let err = ModelParams::from_alpha(0.0).unwrap_err();
        assert_eq!(err.to_string(), "alpha must be positive");
    }

    #[test]
    fn parity_round_trip() {
        for p in Parity::BOTH {
            assert_eq!(p.as_str().parse::<Parity>().unwrap(), p);
            assert_eq!(p.flipped().flipped(), p);
        }
    }
}
