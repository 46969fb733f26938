//! Bound states of `u' + (m + g|x|) u = E v`, `-v' + (m + g|x|) v = E u`.
//!
//! For x > 0 the solution is `u = C e^{-ξ²/2} H_{ν+1}(ξ)`,
//! `v = C (E/√g) e^{-ξ²/2} H_ν(ξ)` with `ξ = √g (m/g + |x|)` and
//! `E² = 2(ν+1)g`; for x < 0 the components swap and `C' = ±C`.
//! Continuity at the origin gives the condition
//! `H_{ν+1}(α) = ±(E/√g) H_ν(α)`.
//!
//! All Hermite values are taken in the scaled form
//! `h_ν(ξ) = e^{-ξ²/2} H_ν(ξ) / (2^ν Γ((ν+1)/2))`, so the condition reads
//! `F = 2 r_ν h_{ν+1}(α) ∓ √(2ν+2) h_ν(α)` with `r_ν = Γ((ν+2)/2)/Γ((ν+1)/2)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::nonrel::{nonrel_level, NonrelError};
use crate::params::{ModelParams, Parity};
use crate::quadrature::{GridError, SymmetricGrid};
use crate::specfun::{hermite_pair_scaled, HermiteOrder, SpecFunError, NU_SUPPORTED_MAX};

/// Roots are never searched further than this below `α²/2 - 1`.
pub const SCAN_GUARD: f64 = 0.5;
pub const DEFAULT_SCAN_STEP: f64 = 0.05;
/// Bisection stops when the bracket is narrower than this.
pub const NU_TOLERANCE: f64 = 1e-12;
pub const MAX_LEVELS: usize = 16;
/// Largest acceptable |F| at a root.
pub const RESIDUAL_LIMIT: f64 = 1e-9;
/// Largest acceptable mismatch of the two half-line branches at x = 0.
pub const CONTINUITY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiracError {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Nonrel(#[from] NonrelError),
    #[error("order {nu} is below the search window starting at {min}")]
    BelowWindow { nu: f64, min: f64 },
    #[error("level count must be between 1 and {MAX_LEVELS}, got {0}")]
    Count(usize),
    #[error("found only {} of {requested} levels below nu = {nu_max}", found.len())]
    ScanExhausted {
        found: Vec<SpectralLevel>,
        requested: usize,
        nu_max: f64,
    },
    #[error("level residual {0:.2e} is too large to build a wavefunction")]
    Residual(f64),
    #[error("wavefunction branches disagree at x = 0 by {0:.2e}")]
    Continuity(f64),
    #[error("the weak-coupling comparison needs alpha >= 2, got {0}")]
    AlphaTooSmall(f64),
    #[error("invalid scan options: {0}")]
    Options(&'static str),
}

/// Sign of the energy branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EnergySign {
    #[default]
    Positive,
    Negative,
}

impl EnergySign {
    pub fn sign(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLevel {
    /// 0-based position within its parity, ordered by nu.
    pub index: usize,
    pub parity: Parity,
    pub nu: f64,
    /// ±√(2(ν+1)g).
    pub energy: f64,
    /// |E|/m - 1, which equals E/m - 1 on the positive branch.
    pub epsilon: f64,
    /// |F| at the root, in the scaled form.
    pub residual: f64,
}

impl SpectralLevel {
    pub fn energy_sign(&self) -> EnergySign {
        if self.energy < 0.0 {
            EnergySign::Negative
        } else {
            EnergySign::Positive
        }
    }
}

/// ξ = √g (m/g + |x|).
pub fn xi_of_x(params: &ModelParams, x: f64) -> f64 {
    params.g().sqrt() * (params.m() / params.g() + x.abs())
}

/// ν for a given energy, from E² = 2(ν+1)g.
pub fn nu_of_energy(params: &ModelParams, energy: f64) -> f64 {
    energy * energy / (2.0 * params.g()) - 1.0
}

/// ε = √(2ν+2)/α - 1.
pub fn epsilon_of_nu(params: &ModelParams, nu: f64) -> f64 {
    (2.0 * nu + 2.0).sqrt() / params.alpha() - 1.0
}

/// Lowest order accepted by [`eigencondition`].
pub fn window_start(params: &ModelParams) -> f64 {
    let a = params.alpha();
    (-1.0f64).max(0.5 * a * a - 1.0 - SCAN_GUARD)
}

/// Lower and upper branch values 2 r h_{ν+1} and √(2ν+2) h_ν at ξ.
fn branches(nu: f64, xi: f64) -> Result<(f64, f64), SpecFunError> {
    let pair = hermite_pair_scaled(HermiteOrder::new(nu)?, xi)?;
    Ok((2.0 * pair.ratio * pair.h_next, (2.0 * nu + 2.0).sqrt() * pair.h))
}

fn condition(params: &ModelParams, parity: Parity, energy: EnergySign, nu: f64) -> Result<f64, DiracError> {
    let min = window_start(params);
    if !(nu >= min) {
        return Err(DiracError::BelowWindow { nu, min });
    }
    let (upper, lower) = branches(nu, params.alpha())?;
    Ok(upper - parity.sign() * energy.sign() * lower)
}

/// Scaled continuity condition `H_{ν+1}(α) ∓ √(2ν+2) H_ν(α)`, upper sign
/// for even parity. The scale factor `e^{-α²/2} 2^{-ν} / Γ((ν+1)/2)` is
/// positive, so the roots are those of the unscaled condition.
pub fn eigencondition(params: &ModelParams, parity: Parity, nu: f64) -> Result<f64, DiracError> {
    condition(params, parity, EnergySign::Positive, nu)
}

/// Same as [`eigencondition`] on the chosen energy branch.
pub fn eigencondition_signed(
    params: &ModelParams,
    parity: Parity,
    energy: EnergySign,
    nu: f64,
) -> Result<f64, DiracError> {
    condition(params, parity, energy, nu)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub step: f64,
    /// The scan stops here; raising it leaves the documented accuracy box.
    pub nu_max: f64,
    pub energy: EnergySign,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            step: DEFAULT_SCAN_STEP,
            nu_max: NU_SUPPORTED_MAX,
            energy: EnergySign::Positive,
        }
    }
}

/// The `count` lowest positive-energy levels of one parity.
pub fn find_levels(params: &ModelParams, parity: Parity, count: usize) -> Result<Vec<SpectralLevel>, DiracError> {
    find_levels_with(params, parity, count, &ScanOptions::default())
}

/// Uniform scan in ν for sign changes of the condition, each bracket
/// refined by bisection.
pub fn find_levels_with(
    params: &ModelParams,
    parity: Parity,
    count: usize,
    options: &ScanOptions,
) -> Result<Vec<SpectralLevel>, DiracError> {
    if count == 0 || count > MAX_LEVELS {
        return Err(DiracError::Count(count));
    }
    if !(options.step > 0.0) || !options.nu_max.is_finite() {
        return Err(DiracError::Options("step must be positive and nu_max finite"));
    }
    let f = |nu: f64| condition(params, parity, options.energy, nu);
    let start = window_start(params).max(-1.0 + 1e-6);
    let mut levels = Vec::with_capacity(count);
    let mut k = 0u64;
    let mut a = start;
    let mut fa = f(a)?;
    while levels.len() < count {
        k += 1;
        let b = start + k as f64 * options.step;
        if b > options.nu_max {
            return Err(DiracError::ScanExhausted {
                found: levels,
                requested: count,
                nu_max: options.nu_max,
            });
        }
        let fb = f(b)?;
        if fb == 0.0 || fa * fb < 0.0 {
            let nu = if fb == 0.0 { b } else { bisect(&f, a, b, fa)? };
            levels.push(make_level(params, parity, options.energy, levels.len(), nu, f(nu)?.abs()));
        }
        a = b;
        fa = fb;
    }
    Ok(levels)
}

fn bisect<F>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64, DiracError>
where
    F: Fn(f64) -> Result<f64, DiracError>,
{
    while b - a > NU_TOLERANCE {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
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

fn make_level(
    params: &ModelParams,
    parity: Parity,
    energy: EnergySign,
    index: usize,
    nu: f64,
    residual: f64,
) -> SpectralLevel {
    let e = (2.0 * (nu + 1.0) * params.g()).sqrt();
    SpectralLevel {
        index,
        parity,
        nu,
        energy: energy.sign() * e,
        epsilon: epsilon_of_nu(params, nu),
        residual,
    }
}

/// One grid point of a two-component wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub x: f64,
    pub u: f64,
    pub v: f64,
}

/// (ũ, ṽ) = ((u+v)/√2, (v-u)/√2); the global phase i is dropped.
pub fn to_tilde(s: SpinorSample) -> (f64, f64) {
    ((s.u + s.v) * FRAC_1_SQRT_2, (s.v - s.u) * FRAC_1_SQRT_2)
}

/// Normalized spinor samples of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    pub params: ModelParams,
    pub level: SpectralLevel,
    pub grid: SymmetricGrid,
    pub samples: Vec<SpinorSample>,
    /// ∫(u² + v²) dx after normalization.
    pub norm: f64,
    /// Relative change of the norm integral under step doubling.
    pub quadrature_error: f64,
    /// max(|Δu|, |Δv|) between the two branches at x = 0 over max amplitude.
    pub continuity_gap: f64,
}

impl WavefunctionGrid {
    pub fn u(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.u).collect()
    }

    pub fn v(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.v).collect()
    }

    pub fn amplitude(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |a, s| a.max(s.u.abs()).max(s.v.abs()))
    }

    pub fn tilde(&self) -> (Vec<f64>, Vec<f64>) {
        self.samples.iter().map(|&s| to_tilde(s)).unzip()
    }
}

/// Classical turning point (|E| - m)/g.
pub fn turning_point(params: &ModelParams, level: &SpectralLevel) -> f64 {
    ((level.energy.abs() - params.m()) / params.g()).max(0.0)
}

/// Default grid: three turning points plus six Gaussian decay lengths.
pub fn default_grid(params: &ModelParams, level: &SpectralLevel) -> Result<SymmetricGrid, DiracError> {
    default_grid_with_points(params, level, SymmetricGrid::DEFAULT_POINTS)
}

pub fn default_grid_with_points(
    params: &ModelParams,
    level: &SpectralLevel,
    points: usize,
) -> Result<SymmetricGrid, DiracError> {
    let half_width = 3.0 * turning_point(params, level) + 6.0 / params.g().sqrt();
    Ok(SymmetricGrid::new(half_width, points)?)
}

/// Assemble and normalize the spinor of `level` on `grid`.
pub fn wavefunction(
    params: &ModelParams,
    level: &SpectralLevel,
    grid: &SymmetricGrid,
) -> Result<WavefunctionGrid, DiracError> {
    if !(level.residual < RESIDUAL_LIMIT) {
        return Err(DiracError::Residual(level.residual));
    }
    let p = level.parity.sign();
    let s = level.energy_sign().sign();
    let c = grid.center();
    let mut samples = Vec::with_capacity(grid.len());
    let mut right = vec![(0.0, 0.0); c + 1];
    for (j, slot) in right.iter_mut().enumerate() {
        let xi = xi_of_x(params, grid.x(c + j));
        let (upper, lower) = branches(level.nu, xi)?;
        *slot = (upper, s * lower);
    }
    for i in 0..grid.len() {
        let x = grid.x(i);
        let sample = if i >= c {
            let (u, v) = right[i - c];
            SpinorSample { x, u, v }
        } else {
            let (u, v) = right[c - i];
            SpinorSample { x, u: p * v, v: p * u }
        };
        samples.push(sample);
    }
    let dens: Vec<f64> = samples.iter().map(|s| s.u * s.u + s.v * s.v).collect();
    let fine = grid.integrate(&dens);
    let coarse = grid.integrate_coarse(&dens);
    let scale = fine.sqrt().recip();
    for smp in &mut samples {
        smp.u *= scale;
        smp.v *= scale;
    }
    let dens: Vec<f64> = samples.iter().map(|s| s.u * s.u + s.v * s.v).collect();
    let norm = grid.integrate(&dens);
    let (u0, v0) = right[0];
    let amp = samples.iter().fold(0.0f64, |a, s| a.max(s.u.abs()).max(s.v.abs()));
    // left branch at 0 is (p v0, p u0)
    let continuity_gap = scale * (u0 - p * v0).abs().max((v0 - p * u0).abs()) / amp;
    if !(continuity_gap < CONTINUITY_LIMIT) {
        return Err(DiracError::Continuity(continuity_gap));
    }
    Ok(WavefunctionGrid {
        params: *params,
        level: *level,
        grid: grid.clone(),
        samples,
        norm,
        quadrature_error: ((fine - coarse) / fine).abs(),
        continuity_gap,
    })
}

/// Quadrature diagnostics of the energy bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremBReport {
    /// ∫ ṽ ũ' dx.
    pub cross_term: f64,
    pub e_bound_satisfied: bool,
    /// Relative defect of ∫ṽũ' + ∫ũ(m+V)ũ = E∫ũ².
    pub identity_u_defect: f64,
    /// Relative defect of ∫ṽũ' - ∫ṽ(m+V)ṽ = E∫ṽ².
    pub identity_v_defect: f64,
}

/// Tolerance on the cross term's sign for positive energies.
pub const CROSS_TERM_SLACK: f64 = 1e-6;

/// Evaluate both integral identities on the tilde components. For E > 0
/// they imply ∫ṽũ' ≥ 0 and E ≥ m; for E < 0 the mirror bound E ≤ -m.
pub fn theorem_b_check(wf: &WavefunctionGrid) -> TheoremBReport {
    let grid = &wf.grid;
    let (ut, vt) = wf.tilde();
    let dut = grid.derivative(&ut);
    let mass: Vec<f64> = grid.points().map(|x| wf.params.m() + wf.params.g() * x.abs()).collect();
    let cross = grid.integrate(&zip_with(&vt, &dut, |a, b| a * b));
    let muu = grid.integrate(&zip3(&ut, &mass, |a, m| a * m * a));
    let mvv = grid.integrate(&zip3(&vt, &mass, |a, m| a * m * a));
    let uu = grid.integrate(&zip_with(&ut, &ut, |a, b| a * b));
    let vv = grid.integrate(&zip_with(&vt, &vt, |a, b| a * b));
    let e = wf.level.energy;
    let defect = |terms: [f64; 3]| {
        let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        (terms[0] + terms[1] - terms[2]).abs() / scale
    };
    let m = wf.params.m();
    let e_bound_satisfied = if e > 0.0 {
        cross >= -CROSS_TERM_SLACK && e >= m * (1.0 - 1e-9)
    } else {
        e <= -m * (1.0 - 1e-9)
    };
    TheoremBReport {
        cross_term: cross,
        e_bound_satisfied,
        identity_u_defect: defect([cross, muu, e * uu]),
        identity_v_defect: defect([cross, -mvv, e * vv]),
    }
}

fn zip_with(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

fn zip3(a: &[f64], m: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    zip_with(a, m, f)
}

/// One row of the relativistic / nonrelativistic comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    /// 1-based index within the parity.
    pub n: usize,
    pub parity: Parity,
    pub epsilon_rel: f64,
    pub epsilon_nonrel: f64,
    /// (ε_rel - ε_nonrel) / ε_nonrel.
    pub deviation: f64,
}

/// Pair the `count` lowest levels of each parity with the Airy levels.
pub fn nonrel_limit_report(params: &ModelParams, count: usize) -> Result<Vec<LimitRow>, DiracError> {
    nonrel_limit_report_with(params, count, &ScanOptions::default())
}

pub fn nonrel_limit_report_with(
    params: &ModelParams,
    count: usize,
    options: &ScanOptions,
) -> Result<Vec<LimitRow>, DiracError> {
    if params.alpha() < 2.0 {
        return Err(DiracError::AlphaTooSmall(params.alpha()));
    }
    let mut rows = Vec::with_capacity(2 * count);
    for parity in Parity::BOTH {
        let levels = find_levels_with(params, parity, count, options)?;
        for level in levels {
            let n = level.index + 1;
            let nr = nonrel_level(params, parity, n as u32)?;
            rows.push(LimitRow {
                n,
                parity,
                epsilon_rel: level.epsilon,
                epsilon_nonrel: nr.epsilon,
                deviation: (level.epsilon - nr.epsilon) / nr.epsilon,
            });
        }
    }
    Ok(rows)
}
