//! Schrödinger limit of the model: `-u''/2m + g|x| u = ε̃ u`.
//!
//! Solutions are shifted Airy functions of `|x|`. Even states have Ai' = 0
//! at the origin, odd states Ai = 0.

use crate::params::{ModelParams, Parity};
use crate::quadrature::{GridError, SymmetricGrid};
use crate::specfun::{airy_ai, airy_zero, AiryKind, SpecFunError, AIRY_ZERO_MAX_INDEX};

/// Relative disagreement allowed between the fine and coarse norm integrals.
pub const NORM_CONVERGENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NonrelError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("level count must be between 1 and {max}, got {got}")]
    Count { got: usize, max: u32 },
    #[error("grid too coarse: norm integral changes by {rel_change:.2e} under step doubling")]
    GridTooCoarse { rel_change: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonrelLevel {
    /// 1-based index within the parity.
    pub n: u32,
    pub parity: Parity,
    /// rho'_n for even, rho_n for odd (positive).
    pub zero: f64,
    /// Energy above the rest mass.
    pub epsilon_tilde: f64,
    /// epsilon_tilde / m.
    pub epsilon: f64,
}

/// (g^2 / 2m)^(1/3), the energy unit of the linear potential.
pub fn energy_scale(params: &ModelParams) -> f64 {
    (params.g() * params.g() / (2.0 * params.m())).cbrt()
}

/// (2mg)^(1/3), the inverse length unit.
pub fn inverse_length(params: &ModelParams) -> f64 {
    (2.0 * params.m() * params.g()).cbrt()
}

/// Level `n` (1-based) of the given parity.
pub fn nonrel_level(params: &ModelParams, parity: Parity, n: u32) -> Result<NonrelLevel, NonrelError> {
    let kind = match parity {
        Parity::Even => AiryKind::AiPrime,
        Parity::Odd => AiryKind::Ai,
    };
    let zero = -airy_zero(kind, n)?.value;
    let epsilon_tilde = zero * energy_scale(params);
    Ok(NonrelLevel {
        n,
        parity,
        zero,
        epsilon_tilde,
        epsilon: epsilon_tilde / params.m(),
    })
}

/// The lowest `n_max` levels of each parity, sorted by energy.
pub fn nonrel_spectrum(params: &ModelParams, n_max: usize) -> Result<Vec<NonrelLevel>, NonrelError> {
    if n_max == 0 || n_max > AIRY_ZERO_MAX_INDEX as usize {
        return Err(NonrelError::Count {
            got: n_max,
            max: AIRY_ZERO_MAX_INDEX,
        });
    }
    let mut levels = Vec::with_capacity(2 * n_max);
    for n in 1..=n_max as u32 {
        for parity in Parity::BOTH {
            levels.push(nonrel_level(params, parity, n)?);
        }
    }
    levels.sort_by(|a, b| a.epsilon_tilde.total_cmp(&b.epsilon_tilde));
    Ok(levels)
}

/// Default grid: three classical turning points, widened to at least eight
/// Airy decay lengths past the turning point for the lowest levels.
pub fn default_grid(params: &ModelParams, level: &NonrelLevel) -> Result<SymmetricGrid, NonrelError> {
    let x_turn = level.epsilon_tilde / params.g();
    let half_width = (3.0 * x_turn).max(x_turn + 8.0 / inverse_length(params));
    Ok(SymmetricGrid::new(half_width, SymmetricGrid::DEFAULT_POINTS)?)
}

/// Normalized samples of the level on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NonrelWavefunction {
    pub grid: SymmetricGrid,
    pub values: Vec<f64>,
    /// Factor N applied to the raw Airy samples.
    pub normalization: f64,
}

/// N Ai((2mg)^(1/3) (|x| - ε̃/g)), odd states antisymmetric, with
/// ∫ ũ² dx = 1.
pub fn nonrel_wavefunction(
    params: &ModelParams,
    level: &NonrelLevel,
    grid: &SymmetricGrid,
) -> Result<NonrelWavefunction, NonrelError> {
    let k = inverse_length(params);
    let shift = level.epsilon_tilde / params.g();
    let sign = level.parity.sign();
    let mut values = Vec::with_capacity(grid.len());
    for x in grid.points() {
        let arg = (k * (x.abs() - shift)).min(crate::specfun::AIRY_DOMAIN);
        let ai = airy_ai(arg)?;
        values.push(if x < 0.0 { sign * ai } else { ai });
    }
    let sq: Vec<f64> = values.iter().map(|v| v * v).collect();
    let fine = grid.integrate(&sq);
    let coarse = grid.integrate_coarse(&sq);
    let rel_change = ((fine - coarse) / fine).abs();
    if !(rel_change <= NORM_CONVERGENCE_TOL) {
        return Err(NonrelError::GridTooCoarse { rel_change });
    }
    let normalization = fine.sqrt().recip();
    values.iter_mut().for_each(|v| *v *= normalization);
    Ok(NonrelWavefunction {
        grid: grid.clone(),
        values,
        normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> ModelParams {
        ModelParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn ground_states_at_unit_parameters() {
        let p = unit();
        let even = nonrel_level(&p, Parity::Even, 1).unwrap();
        let odd = nonrel_level(&p, Parity::Odd, 1).unwrap();
        assert!((even.epsilon_tilde - 0.80865).abs() < 5e-5);
        assert!((odd.epsilon_tilde - 1.85575).abs() < 5e-5);
    }

    #[test]
    fn coupling_scaling() {
        let a = nonrel_spectrum(&ModelParams::new(1.3, 0.7).unwrap(), 5).unwrap();
        let b = nonrel_spectrum(&ModelParams::new(1.3, 5.6).unwrap(), 5).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((y.epsilon_tilde / x.epsilon_tilde - 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn spectrum_is_sorted_and_alternates() {
        let levels = nonrel_spectrum(&unit(), 20).unwrap();
        assert_eq!(levels.len(), 40);
        for (i, l) in levels.iter().enumerate() {
            assert_eq!(l.parity, if i % 2 == 0 { Parity::Even } else { Parity::Odd });
            assert_eq!(l.n as usize, i / 2 + 1);
        }
        assert!(levels.windows(2).all(|w| w[0].epsilon_tilde < w[1].epsilon_tilde));
    }

    #[test]
    fn count_bounds() {
        assert!(nonrel_spectrum(&unit(), 0).is_err());
        assert!(nonrel_spectrum(&unit(), 21).is_err());
    }

    #[test]
    fn coarse_grid_is_reported() {
        let p = unit();
        let level = nonrel_level(&p, Parity::Odd, 6).unwrap();
        let grid = SymmetricGrid::new(40.0, 33).unwrap();
        assert!(matches!(
            nonrel_wavefunction(&p, &level, &grid),
            Err(NonrelError::GridTooCoarse { .. })
        ));
    }
}
