//! Eigenvalues by direct integration of `u' = E v - M u`, `v' = M v - E u`,
//! `M = m + g|x|`, inward from both ends and matching at x = 0.
//!
//! Shares no code with the Hermite route: only the ODE and an adaptive
//! Dormand–Prince 5(4) pair.

use crate::params::{ModelParams, Parity};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ShootingError {
    #[error("energy must be positive and finite, got {0}")]
    Energy(f64),
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("step size underflow at x = {x}")]
    StepUnderflow { x: f64 },
    #[error("step budget exhausted at x = {x}")]
    TooManySteps { x: f64 },
    #[error("level count must be between 1 and {MAX_ORACLE_LEVELS}, got {0}")]
    Count(usize),
    #[error("found only {} of {requested} levels below E = {e_max}", found.len())]
    ScanExhausted {
        found: Vec<OracleLevel>,
        requested: usize,
        e_max: f64,
    },
}

pub const MAX_ORACLE_LEVELS: usize = 8;
const MAX_STEPS: usize = 1_000_000;
const RENORM_HIGH: f64 = 1e100;
const RENORM_LOW: f64 = 1e-100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig {
    /// Integration start |x|; `None` uses 3 x_turn + 5/√g for each energy.
    pub x_max: Option<f64>,
    pub rtol: f64,
    pub atol: f64,
    /// Energy scan step; `None` uses m/50.
    pub energy_step: Option<f64>,
    /// Bisection stops at this relative bracket width.
    pub energy_rtol: f64,
    /// The scan gives up above this multiple of m (plus the confinement scale).
    pub energy_ceiling: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        ShootingConfig {
            x_max: None,
            rtol: 1e-10,
            atol: 1e-12,
            energy_step: None,
            energy_rtol: 1e-10,
            energy_ceiling: 50.0,
        }
    }
}

impl ShootingConfig {
    fn validate(&self) -> Result<(), ShootingError> {
        if !(self.rtol > 0.0 && self.atol > 0.0) {
            return Err(ShootingError::Config("tolerances must be positive"));
        }
        if let Some(x) = self.x_max {
            if !(x > 0.0) || !x.is_finite() {
                return Err(ShootingError::Config("x_max must be positive"));
            }
        }
        if let Some(s) = self.energy_step {
            if !(s > 0.0) || !s.is_finite() {
                return Err(ShootingError::Config("energy step must be positive"));
            }
        }
        Ok(())
    }

    /// Start of the integration for energy `e`.
    pub fn x_max_for(&self, params: &ModelParams, e: f64) -> f64 {
        self.x_max.unwrap_or_else(|| {
            let x_turn = ((e - params.m()) / params.g()).max(0.0);
            3.0 * x_turn + 5.0 / params.g().sqrt()
        })
    }
}

/// Solution direction at x = 0 (unit norm) and optional trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub u: f64,
    pub v: f64,
    /// (x, u, v) at every accepted step, scaled consistently with (u, v) at 0.
    pub trajectory: Option<Vec<(f64, f64, f64)>>,
}

fn mass(params: &ModelParams, x: f64) -> f64 {
    params.m() + params.g() * x.abs()
}

fn rhs(params: &ModelParams, e: f64, x: f64, y: [f64; 2]) -> [f64; 2] {
    let m = mass(params, x);
    [e * y[1] - m * y[0], m * y[1] - e * y[0]]
}

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate the decaying solution from the far end of `side` to x = 0.
pub fn integrate_halfline(
    params: &ModelParams,
    e: f64,
    side: Side,
    config: &ShootingConfig,
    keep_trajectory: bool,
) -> Result<BoundaryData, ShootingError> {
    if !(e > 0.0) || !e.is_finite() {
        return Err(ShootingError::Energy(e));
    }
    config.validate()?;
    let x_max = config.x_max_for(params, e);
    let (x0, dir) = match side {
        Side::Right => (x_max, -1.0),
        Side::Left => (-x_max, 1.0),
    };
    let m0 = mass(params, x0);
    let kappa = (m0 * m0 - e * e).max(0.0).sqrt();
    // decaying ray of the frozen-coefficient system
    let mut y = match side {
        Side::Right => [m0 + kappa, e],
        Side::Left => [e, m0 + kappa],
    };
    let n0 = y[0].hypot(y[1]);
    y = [y[0] / n0, y[1] / n0];

    let mut x = x0;
    let mut log_scale = 0.0;
    let mut traj: Vec<(f64, f64, f64, f64)> = Vec::new();
    if keep_trajectory {
        traj.push((x, y[0], y[1], log_scale));
    }
    let mut h = dir * (x_max * 1e-3).min(0.01 / m0.max(e));
    let mut k = [[0.0; 2]; 7];
    k[0] = rhs(params, e, x, y);
    let mut steps = 0;
    while dir * x < 0.0 {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(ShootingError::TooManySteps { x });
        }
        if dir * (x + h) > 0.0 {
            h = -x;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += h * A[s][j] * kj[0];
                ys[1] += h * A[s][j] * kj[1];
            }
            k[s] = rhs(params, e, x + C[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for c in 0..2 {
                y5[c] += h * B5[s] * k[s][c];
                err[c] += h * (B5[s] - B4[s]) * k[s][c];
            }
        }
        let mut en: f64 = 0.0;
        for c in 0..2 {
            let sc = config.atol + config.rtol * y[c].abs().max(y5[c].abs());
            en = en.max((err[c] / sc).abs());
        }
        if en <= 1.0 {
            x = if dir * (x + h) >= 0.0 { 0.0 } else { x + h };
            y = y5;
            // FSAL: the last stage is the derivative at the new point
            k[0] = k[6];
            let norm = y[0].hypot(y[1]);
            if !(RENORM_LOW..=RENORM_HIGH).contains(&norm) {
                y = [y[0] / norm, y[1] / norm];
                log_scale += norm.ln();
                k[0] = rhs(params, e, x, y);
            }
            if keep_trajectory {
                traj.push((x, y[0], y[1], log_scale));
            }
        }
        let factor = if en == 0.0 { 5.0 } else { (0.9 * en.powf(-0.2)).clamp(0.2, 5.0) };
        let h_new = h * factor;
        if h_new.abs() <= 1e-14 * x.abs().max(1.0) {
            return Err(ShootingError::StepUnderflow { x });
        }
        h = h_new;
    }
    let norm = y[0].hypot(y[1]);
    let final_log = log_scale + norm.ln();
    let trajectory = keep_trajectory.then(|| {
        traj.iter()
            .map(|&(xi, u, v, ls)| {
                let f = (ls - final_log).exp();
                (xi, u * f, v * f)
            })
            .collect()
    });
    Ok(BoundaryData {
        u: y[0] / norm,
        v: y[1] / norm,
        trajectory,
    })
}

/// Both boundary rays at energy `e`.
pub fn boundary_pair(
    params: &ModelParams,
    e: f64,
    config: &ShootingConfig,
) -> Result<(BoundaryData, BoundaryData), ShootingError> {
    Ok((
        integrate_halfline(params, e, Side::Left, config, false)?,
        integrate_halfline(params, e, Side::Right, config, false)?,
    ))
}

/// W(E) = (u_L v_R - u_R v_L) / (|y_L| |y_R|) at x = 0.
pub fn match_determinant(params: &ModelParams, e: f64, config: &ShootingConfig) -> Result<f64, ShootingError> {
    let (l, r) = boundary_pair(params, e, config)?;
    Ok(determinant((l.u, l.v), (r.u, r.v)))
}

/// Normalized 2x2 determinant of two boundary vectors.
pub fn determinant(left: (f64, f64), right: (f64, f64)) -> f64 {
    let nl = left.0.hypot(left.1);
    let nr = right.0.hypot(right.1);
    (left.0 * right.1 - right.0 * left.1) / (nl * nr)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLevel {
    pub energy: f64,
    pub parity: Parity,
    /// E²/(2g) - 1.
    pub nu: f64,
}

/// The `count` lowest positive-energy levels, both parities, by energy.
///
/// Parity comes from the right boundary ray: u(0) and v(0) of equal sign
/// for even states, opposite sign for odd ones.
pub fn oracle_spectrum(
    params: &ModelParams,
    count: usize,
    config: &ShootingConfig,
) -> Result<Vec<OracleLevel>, ShootingError> {
    if count == 0 || count > MAX_ORACLE_LEVELS {
        return Err(ShootingError::Count(count));
    }
    config.validate()?;
    let m = params.m();
    let step = config.energy_step.unwrap_or(m / 50.0);
    let e_max = config.energy_ceiling * (m + params.g().sqrt());
    let w = |e: f64| match_determinant(params, e, config);
    let mut levels = Vec::with_capacity(count);
    let mut a = m;
    let mut wa = w(a)?;
    let mut k = 0u64;
    while levels.len() < count {
        k += 1;
        let b = m + k as f64 * step;
        if b > e_max {
            return Err(ShootingError::ScanExhausted {
                found: levels,
                requested: count,
                e_max,
            });
        }
        let wb = w(b)?;
        if wb == 0.0 || wa * wb < 0.0 {
            let e = if wb == 0.0 { b } else { bisect(&w, a, b, wa, config.energy_rtol)? };
            let r = integrate_halfline(params, e, Side::Right, config, false)?;
            let parity = if r.u * r.v > 0.0 { Parity::Even } else { Parity::Odd };
            levels.push(OracleLevel {
                energy: e,
                parity,
                nu: e * e / (2.0 * params.g()) - 1.0,
            });
        }
        a = b;
        wa = wb;
    }
    Ok(levels)
}

fn bisect<F>(f: &F, mut a: f64, mut b: f64, mut fa: f64, rtol: f64) -> Result<f64, ShootingError>
where
    F: Fn(f64) -> Result<f64, ShootingError>,
{
    while b - a > rtol * b {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_is_scale_free() {
        let w = determinant((0.3, -1.2), (2.0, 0.7));
        assert!((determinant((3.0, -12.0), (0.2, 0.07)) - w).abs() < 1e-15);
        assert_eq!(determinant((1.0, 2.0), (2.0, 4.0)), 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        let p = ModelParams::from_alpha(1.0).unwrap();
        let c = ShootingConfig::default();
        assert!(integrate_halfline(&p, -1.0, Side::Right, &c, false).is_err());
        assert!(oracle_spectrum(&p, 9, &c).is_err());
        let bad = ShootingConfig { rtol: 0.0, ..c };
        assert!(match_determinant(&p, 1.5, &bad).is_err());
    }
}
