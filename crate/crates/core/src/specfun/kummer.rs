//! Kummer's confluent hypergeometric function M(a, b, z) for real z >= 0.

use crate::dd::Dd;

use super::gamma::{gamma, rgamma, sin_pi};
use super::SpecFunError;

/// Switch from the power series to the large-z expansion above this z.
pub const KUMMER_CROSSOVER: f64 = 40.0;

const MAX_TERMS: usize = 20_000;

/// Power series result with its cancellation diagnostic.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: Dd,
    /// Largest |term| seen while summing.
    pub max_term: f64,
}

impl SeriesSum {
    /// Decimal digits cancelled while summing.
    pub fn cancelled_digits(&self) -> f64 {
        let v = self.value.to_f64().abs();
        if v == 0.0 {
            return f64::INFINITY;
        }
        (self.max_term / v).log10().max(0.0)
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Sum the Kummer power series in double-double arithmetic.
///
/// `rel_tol` is the relative size of the first neglected term.
pub(crate) fn kummer_series(a: f64, b: f64, z: Dd, rel_tol: f64) -> Result<SeriesSum, SpecFunError> {
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Pole { x: b });
    }
    let mut sum = Dd::ONE;
    let mut term = Dd::ONE;
    let mut max_term: f64 = 1.0;
    let zf = z.to_f64();
    let guard = a.abs().max(b.abs());
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ak = Dd::from_f64(a) + Dd::from_f64(kf);
        if ak.hi == 0.0 {
            // terminating series
            return Ok(SeriesSum {
                value: sum,
                max_term,
            });
        }
        let bk = Dd::from_f64(b) + Dd::from_f64(kf);
        term = (term * ak * z).div(bk.mul_f64(kf + 1.0));
        sum = sum + term;
        let t = term.hi.abs();
        max_term = max_term.max(t);
        if !sum.hi.is_finite() {
            return Err(SpecFunError::Overflow { what: "kummer_m" });
        }
        let next_ratio = ((a + kf + 1.0) * zf / ((b + kf + 1.0) * (kf + 2.0))).abs();
        if kf > guard && next_ratio < 1.0 && t <= rel_tol * sum.hi.abs() {
            return Ok(SeriesSum {
                value: sum,
                max_term,
            });
        }
    }
    Err(SpecFunError::NonConvergence { what: "kummer series" })
}

/// Asymptotic sum `sum_k (p)_k (q)_k / (k! w^k)` truncated before its
/// smallest term. Returns the sum and the relative size of the first
/// omitted term.
fn asymptotic_sum(p: f64, q: f64, w: f64, rel_tol: f64) -> (f64, f64) {
    let mut sum = 1.0;
    let mut term: f64 = 1.0;
    let mut comp = 0.0;
    for k in 0..400 {
        let kf = k as f64;
        let next = term * (p + kf) * (q + kf) / ((kf + 1.0) * w);
        if next == 0.0 {
            return (sum + comp, 0.0);
        }
        if next.abs() > term.abs() {
            return (sum + comp, (term / sum).abs());
        }
        // Neumaier compensation
        let t = sum + next;
        if sum.abs() >= next.abs() {
            comp += (sum - t) + next;
        } else {
            comp += (next - t) + sum;
        }
        sum = t;
        term = next;
        if term.abs() <= rel_tol * sum.abs() {
            break;
        }
    }
    (sum + comp, (term / sum).abs())
}

/// Large-z expansion of M and an estimate of its relative truncation error.
fn kummer_asymptotic(a: f64, b: f64, z: f64) -> Option<(f64, f64)> {
    let (s1, err1) = asymptotic_sum(b - a, 1.0 - a, z, 1e-17);
    // the recessive part is O(e^{-z}) relative, a loose truncation suffices
    let (s2, _) = asymptotic_sum(a, a - b + 1.0, -z, 1e-8);
    let gb = gamma(b).ok()?;
    let dominant = rgamma(a) * (z + (a - b) * z.ln()).exp() * s1;
    // real part of the recessive contribution on the Stokes line
    let cos_pi_a = sin_pi(a + 0.5);
    let recessive = rgamma(b - a) * cos_pi_a * (-a * z.ln()).exp() * s2;
    let value = gb * (dominant + recessive);
    let err = if value == 0.0 {
        f64::INFINITY
    } else {
        (gb * dominant * err1 / value).abs()
    };
    Some((value, err))
}

/// Kummer's function M(a, b, z) for z >= 0.
///
/// Power series with double-double accumulation for z <= 40 (or whenever
/// the series terminates), large-z asymptotic expansion above that when it
/// converges to double precision, series otherwise.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64, SpecFunError> {
    if !(z >= 0.0) || !a.is_finite() || !b.is_finite() || !z.is_finite() {
        return Err(SpecFunError::Domain {
            what: "kummer_m",
            value: z,
        });
    }
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Pole { x: b });
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z > KUMMER_CROSSOVER && !is_nonpositive_integer(a) {
        // falls through to the series while the expansion is still too coarse
        if let Some((v, _)) = kummer_asymptotic(a, b, z).filter(|&(_, err)| err <= 1e-16) {
            if !v.is_finite() {
                return Err(SpecFunError::Overflow { what: "kummer_m" });
            }
            return Ok(v);
        }
    }
    let s = kummer_series(a, b, Dd::from_f64(z), 1e-17)?;
    if s.cancelled_digits() > 10.0 {
        return Err(SpecFunError::AccuracyLoss {
            lost_digits: s.cancelled_digits() - 16.0,
        });
    }
    Ok(s.value.to_f64())
}
