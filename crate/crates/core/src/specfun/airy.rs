//! Airy function Ai, its derivative, and the zeros of both.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::dd::Dd;

use super::SpecFunError;

/// Largest |x| accepted by [`airy_ai`] and [`airy_ai_prime`].
pub const AIRY_DOMAIN: f64 = 50.0;
/// Highest zero index served by [`airy_zero`].
pub const AIRY_ZERO_MAX_INDEX: u32 = 20;

const SERIES_POS_MAX: f64 = 6.0;
const SERIES_NEG_MAX: f64 = 8.0;

// Ai(0) and -Ai'(0) as double-double constants.
const AI0: Dd = Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MINUS_AIP0: Dd = Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AiryKind {
    Ai,
    AiPrime,
}

/// One zero of Ai or Ai'. `value` is the (negative) location of the zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryZero {
    pub kind: AiryKind,
    pub n: u32,
    pub value: f64,
    /// |Ai(value)| or |Ai'(value)| after refinement.
    pub residual: f64,
}

fn check_domain(x: f64) -> Result<(), SpecFunError> {
    if !x.is_finite() || x.abs() > AIRY_DOMAIN {
        return Err(SpecFunError::Domain { what: "airy", value: x });
    }
    Ok(())
}

/// Maclaurin series for (Ai, Ai') in double-double arithmetic.
fn airy_series(x: f64) -> (f64, f64) {
    let x3 = Dd::prod(x, x) * Dd::from_f64(x);
    let xd = Dd::from_f64(x);
    // f = sum a_k x^{3k},        a_{k+1} = a_k / ((3k+2)(3k+3))
    // g = sum b_k x^{3k+1},      b_{k+1} = b_k / ((3k+3)(3k+4))
    // f' = sum_{k>=1} 3k a_k x^{3k-1}, starting at x^2/2
    // g' = sum (3k+1) b_k x^{3k}, starting at 1
    let mut f_t = Dd::ONE;
    let mut g_t = xd;
    let mut fp_t = Dd::prod(x, x).mul_f64(0.5);
    let mut gp_t = Dd::ONE;
    let (mut f, mut g, mut fp, mut gp) = (f_t, g_t, fp_t, gp_t);
    for k in 0..200 {
        let kf = k as f64;
        f_t = (f_t * x3).div_f64((3.0 * kf + 2.0) * (3.0 * kf + 3.0));
        g_t = (g_t * x3).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 4.0));
        fp_t = (fp_t * x3).div_f64((3.0 * kf + 3.0) * (3.0 * kf + 5.0));
        gp_t = (gp_t * x3).div_f64((3.0 * kf + 1.0) * (3.0 * kf + 3.0));
        f = f + f_t;
        g = g + g_t;
        fp = fp + fp_t;
        gp = gp + gp_t;
        let biggest = f_t.hi.abs().max(g_t.hi.abs()).max(fp_t.hi.abs()).max(gp_t.hi.abs());
        if biggest < 1e-34 * (1.0 + f.hi.abs() + g.hi.abs()) && kf > 2.0 {
            break;
        }
    }
    let ai = AI0 * f - MINUS_AIP0 * g;
    let aip = AI0 * fp - MINUS_AIP0 * gp;
    (ai.to_f64(), aip.to_f64())
}

/// Asymptotic coefficients u_k and v_k, truncated where they stop helping.
fn asymptotic_coefficients(zeta: f64) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0];
    let mut v = vec![1.0];
    let mut uk = 1.0;
    let mut last = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        uk *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let size = uk / zeta.powi(k);
        if size > last || size < 1e-18 {
            break;
        }
        last = size;
        u.push(uk);
        v.push(-(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * uk);
    }
    (u, v)
}

fn airy_asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (u, v) = asymptotic_coefficients(zeta);
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut p = 1.0;
    for k in 0..u.len() {
        su += u[k] * p;
        sv += v[k] * p;
        p *= -1.0 / zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.sqrt().sqrt();
    (e / q * su, -e * q * sv)
}

fn airy_asymptotic_negative(x: f64) -> (f64, f64) {
    let y = -x;
    let zeta = 2.0 / 3.0 * y * y.sqrt();
    let (u, v) = asymptotic_coefficients(zeta);
    // even and odd parts of the alternating series in 1/zeta
    let (mut ue, mut uo, mut ve, mut vo) = (0.0, 0.0, 0.0, 0.0);
    let mut p = 1.0;
    for k in 0..u.len() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            ue += sign * u[k] * p;
            ve += sign * v[k] * p;
        } else {
            uo += sign * u[k] * p;
            vo += sign * v[k] * p;
        }
        p /= zeta;
    }
    let phase = zeta + FRAC_PI_4;
    let (s, c) = phase.sin_cos();
    let q = y.sqrt().sqrt();
    let ai = (s * ue - c * uo) / (PI.sqrt() * q);
    let aip = -q / PI.sqrt() * (c * ve + s * vo);
    (ai, aip)
}

/// Ai(x) and Ai'(x) together.
pub fn airy_ai_pair(x: f64) -> Result<(f64, f64), SpecFunError> {
    check_domain(x)?;
    Ok(if x > SERIES_POS_MAX {
        airy_asymptotic_positive(x)
    } else if x < -SERIES_NEG_MAX {
        airy_asymptotic_negative(x)
    } else {
        airy_series(x)
    })
}

/// Airy function Ai(x) for |x| <= 50.
pub fn airy_ai(x: f64) -> Result<f64, SpecFunError> {
    Ok(airy_ai_pair(x)?.0)
}

/// Derivative Ai'(x) for |x| <= 50.
pub fn airy_ai_prime(x: f64) -> Result<f64, SpecFunError> {
    Ok(airy_ai_pair(x)?.1)
}

fn zero_seed(kind: AiryKind, n: u32) -> f64 {
    let nf = n as f64;
    match kind {
        AiryKind::Ai => {
            let t = 3.0 * PI * (4.0 * nf - 1.0) / 8.0;
            let t2 = t.powi(-2);
            -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2)
        }
        AiryKind::AiPrime => {
            let t = 3.0 * PI * (4.0 * nf - 3.0) / 8.0;
            let t2 = t.powi(-2);
            -t.powf(2.0 / 3.0) * (1.0 - 7.0 / 48.0 * t2 + 35.0 / 288.0 * t2 * t2)
        }
    }
}

/// n-th zero of Ai or Ai' (n = 1 is the one closest to the origin),
/// by Newton iteration from the standard asymptotic seed.
pub fn airy_zero(kind: AiryKind, n: u32) -> Result<AiryZero, SpecFunError> {
    if n == 0 || n > AIRY_ZERO_MAX_INDEX {
        return Err(SpecFunError::Domain {
            what: "airy zero index",
            value: n as f64,
        });
    }
    let mut x = zero_seed(kind, n);
    for _ in 0..60 {
        let (ai, aip) = airy_ai_pair(x)?;
        let step = match kind {
            AiryKind::Ai => ai / aip,
            // (Ai')' = x Ai
            AiryKind::AiPrime => aip / (x * ai),
        };
        x -= step;
        if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    let (ai, aip) = airy_ai_pair(x)?;
    let residual = match kind {
        AiryKind::Ai => ai.abs(),
        AiryKind::AiPrime => aip.abs(),
    };
    if residual > 1e-10 {
        return Err(SpecFunError::NonConvergence { what: "airy zero" });
    }
    Ok(AiryZero {
        kind,
        n,
        value: x,
        residual,
    })
}
