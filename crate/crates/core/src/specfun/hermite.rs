//! Hermite functions H_nu(xi) of arbitrary real order on xi >= 0.
//!
//! The working representation is the weighted, order-normalized function
//!
//! ```text
//! h_nu(xi) = exp(-xi^2/2) H_nu(xi) / (2^nu Gamma((nu+1)/2))
//! ```
//!
//! which stays O(1) across the supported box (nu up to 300, xi up to 25)
//! where H_nu itself overflows. Values at two low base orders in [-3, -1)
//! come from the integral representation
//!
//! ```text
//! H_nu(xi) = 1/Gamma(-nu) * int_0^inf s^(-nu-1) exp(-s^2 - 2 xi s) ds,   nu < 0
//! ```
//!
//! evaluated by double-exponential quadrature (positive integrand, no
//! cancellation). Upward three-term recurrence in the order then reaches
//! the target; H_nu is the dominant solution in that direction, so the
//! recurrence is stable for every xi >= 0.
//!
//! The classical two-term Kummer representation is available separately in
//! [`hermite_h_kummer`] together with its cancellation diagnostic.

use crate::dd::Dd;

use super::airy::airy_ai;
use super::gamma::{gamma, ln_gamma, rgamma};
use super::kummer::kummer_series;
use super::SpecFunError;

/// Upper end of the order range with a documented accuracy promise.
pub const NU_SUPPORTED_MAX: f64 = 300.0;
/// Upper end of the argument range with a documented accuracy promise.
pub const XI_SUPPORTED_MAX: f64 = 25.0;

/// Real order of a Hermite function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HermiteOrder(f64);

impl HermiteOrder {
    pub fn new(nu: f64) -> Result<Self, SpecFunError> {
        if !nu.is_finite() || nu < -1.0 {
            return Err(SpecFunError::Domain {
                what: "hermite order",
                value: nu,
            });
        }
        Ok(HermiteOrder(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for HermiteOrder {
    type Error = SpecFunError;
    fn try_from(nu: f64) -> Result<Self, Self::Error> {
        HermiteOrder::new(nu)
    }
}

/// Scaled values at consecutive orders nu and nu+1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitePair {
    /// h_nu(xi)
    pub h: f64,
    /// h_{nu+1}(xi)
    pub h_next: f64,
    /// Gamma((nu+2)/2) / Gamma((nu+1)/2), so that H_{nu+1}/H_nu = 2 ratio h_next/h.
    pub ratio: f64,
}

const QUAD_STEP: f64 = 1.0 / 16.0;
const QUAD_LO: i32 = -80;
const QUAD_HI: i32 = 72;

fn check_xi(xi: f64) -> Result<(), SpecFunError> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(SpecFunError::Domain {
            what: "hermite argument",
            value: xi,
        });
    }
    Ok(())
}

/// exp(-xi^2/2) H_nu(xi) for nu < 0 from the integral representation.
fn weighted_from_integral(nu: f64, xi: f64) -> Result<f64, SpecFunError> {
    let mu = -nu;
    debug_assert!(mu > 0.0);
    let shift = -0.5 * xi * xi - ln_gamma(mu)?;
    let mut sum = 0.0;
    for k in QUAD_LO..=QUAD_HI {
        let t = k as f64 * QUAD_STEP;
        let et = (-t).exp();
        let s = (t - et).exp();
        if s == 0.0 {
            continue;
        }
        let log_f = (mu - 1.0) * s.ln() - s * s - 2.0 * xi * s + shift;
        if log_f < -745.0 {
            continue;
        }
        sum += log_f.exp() * s * (1.0 + et);
    }
    Ok(sum * QUAD_STEP)
}

/// exp(-xi^2/2) H at orders `m` and `m + 1` for `m` in [-2, 1).
fn weighted_low_pair(m: f64, xi: f64) -> Result<(f64, f64), SpecFunError> {
    let frac = m - m.floor();
    let base = frac - 3.0;
    let mut g0 = weighted_from_integral(base, xi)?;
    let mut g1 = weighted_from_integral(base + 1.0, xi)?;
    let mut n = base + 1.0;
    while n < m + 0.5 {
        let g2 = 2.0 * xi * g1 - 2.0 * n * g0;
        g0 = g1;
        g1 = g2;
        n += 1.0;
    }
    Ok((g0, g1))
}

fn gamma_ratio_half(nu: f64) -> Result<f64, SpecFunError> {
    // Gamma((nu+2)/2) / Gamma((nu+1)/2), finite and >= 0 for nu >= -1
    if nu > 20.0 {
        return Ok((ln_gamma(0.5 * (nu + 2.0))? - ln_gamma(0.5 * (nu + 1.0))?).exp());
    }
    Ok(gamma(0.5 * (nu + 2.0))? * rgamma(0.5 * (nu + 1.0)))
}

/// Scaled Hermite functions h_nu and h_{nu+1} at `xi`.
pub fn hermite_pair_scaled(nu: HermiteOrder, xi: f64) -> Result<HermitePair, SpecFunError> {
    check_xi(xi)?;
    let nu = nu.value();
    let start = if nu < 0.0 { nu } else { nu - nu.floor() };
    let (g0, g1) = weighted_low_pair(start, xi)?;
    let mut ratio = gamma_ratio_half(start)?;
    let mut h0 = g0 * (-start).exp2() * rgamma(0.5 * (start + 1.0));
    let mut h1 = g1 * (-start - 1.0).exp2() * rgamma(0.5 * (start + 2.0));
    let mut n = start;
    // h_{n+2} = xi h_{n+1} / r_{n+1} - h_n,  r_{n+1} = (n+1) / (2 r_n)
    while n < nu - 0.5 {
        ratio = (n + 1.0) / (2.0 * ratio);
        let h2 = xi * h1 / ratio - h0;
        h0 = h1;
        h1 = h2;
        n += 1.0;
    }
    Ok(HermitePair {
        h: h0,
        h_next: h1,
        ratio,
    })
}

/// Scaled Hermite function exp(-xi^2/2) H_nu(xi) / (2^nu Gamma((nu+1)/2)).
pub fn hermite_h_scaled(nu: HermiteOrder, xi: f64) -> Result<f64, SpecFunError> {
    Ok(hermite_pair_scaled(nu, xi)?.h)
}

/// Hermite function H_nu(xi) of real order nu >= -1 and xi >= 0.
///
/// Errors with `Overflow` where the value is not representable in double
/// precision (large nu together with large xi).
pub fn hermite_h(nu: HermiteOrder, xi: f64) -> Result<f64, SpecFunError> {
    hermite_unscaled(nu.value(), xi)
}

fn hermite_unscaled(nu: f64, xi: f64) -> Result<f64, SpecFunError> {
    check_xi(xi)?;
    if nu < 1.0 {
        let (g, _) = weighted_low_pair(nu, xi)?;
        let v = g * (0.5 * xi * xi).exp();
        if !v.is_finite() {
            return Err(SpecFunError::Overflow { what: "hermite_h" });
        }
        return Ok(v);
    }
    let h = hermite_h_scaled(HermiteOrder::new(nu)?, xi)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    let log_mag =
        h.abs().ln() + nu * std::f64::consts::LN_2 + ln_gamma(0.5 * (nu + 1.0))? + 0.5 * xi * xi;
    if log_mag > 709.0 {
        return Err(SpecFunError::Overflow { what: "hermite_h" });
    }
    Ok(h.signum() * log_mag.exp())
}

/// Derivative dH_nu/dxi = 2 nu H_{nu-1}(xi).
pub fn hermite_h_deriv(nu: HermiteOrder, xi: f64) -> Result<f64, SpecFunError> {
    let nu = nu.value();
    if nu == 0.0 {
        check_xi(xi)?;
        return Ok(0.0);
    }
    Ok(2.0 * nu * hermite_unscaled(nu - 1.0, xi)?)
}

/// Hermite function from the two-term Kummer representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerHermite {
    pub value: f64,
    /// Estimated decimal digits lost relative to double precision.
    pub lost_digits: f64,
}

/// Digits lost above which the Kummer route refuses to return a value.
pub const KUMMER_LOST_DIGIT_BUDGET: f64 = 10.0;

/// H_nu(xi) = 2^nu sqrt(pi) [ M(-nu/2, 1/2, xi^2) / Gamma((1-nu)/2)
///                           - 2 xi M((1-nu)/2, 3/2, xi^2) / Gamma(-nu/2) ]
///
/// Both series are accumulated in double-double arithmetic. The reported
/// `lost_digits` combines the cancellation inside each series (beyond the
/// extra double-double digits) with the cancellation between the two terms.
pub fn hermite_h_kummer(nu: HermiteOrder, xi: f64) -> Result<KummerHermite, SpecFunError> {
    check_xi(xi)?;
    let nu = nu.value();
    let z = Dd::prod(xi, xi);
    let tol = 1e-33;
    let m1 = kummer_series(-0.5 * nu, 0.5, z, tol)?;
    let m2 = kummer_series(0.5 * (1.0 - nu), 1.5, z, tol)?;
    let t1 = m1.value.mul_f64(rgamma(0.5 * (1.0 - nu)));
    let t2 = m2.value.mul_f64(2.0 * xi * rgamma(-0.5 * nu));
    let diff = (t1 - t2).to_f64();
    let series_loss = (m1.cancelled_digits().max(m2.cancelled_digits()) - 16.0).max(0.0);
    let scale = t1.hi.abs().max(t2.hi.abs());
    let combo_loss = if diff == 0.0 {
        if scale == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (scale / diff.abs()).log10().max(0.0)
    };
    let lost_digits = series_loss + combo_loss;
    if lost_digits > KUMMER_LOST_DIGIT_BUDGET {
        return Err(SpecFunError::AccuracyLoss { lost_digits });
    }
    let value = nu.exp2() * std::f64::consts::PI.sqrt() * diff;
    if !value.is_finite() {
        return Err(SpecFunError::Overflow { what: "hermite_h_kummer" });
    }
    Ok(KummerHermite { value, lost_digits })
}

/// Uniform Airy-type large-order approximation of the scaled Hermite function,
///
/// ```text
/// h_nu(xi) ~ (t / (z^2 - 1))^(1/4) Ai(t),
/// z = xi / sqrt(2 nu + 1),
/// t = -( 3/4 (2 nu + 1) [acos z - z sqrt(1 - z^2)] )^(2/3)
/// ```
///
/// valid in the oscillatory and turning-point region z <= 1. Within 1e-6 of
/// the turning point the one-term expansion of the bracket is used, which
/// removes the 0/0 in the prefactor.
pub fn hermite_airy_asymptotic_scaled(nu: HermiteOrder, xi: f64) -> Result<f64, SpecFunError> {
    check_xi(xi)?;
    let nu = nu.value();
    let w = 2.0 * nu + 1.0;
    if !(w > 0.0) {
        return Err(SpecFunError::Domain {
            what: "asymptotic order",
            value: nu,
        });
    }
    let z = xi / w.sqrt();
    if z > 1.0 {
        return Err(SpecFunError::Domain {
            what: "asymptotic z > 1",
            value: z,
        });
    }
    let (t, prefactor) = if 1.0 - z < 1e-6 {
        let c = (0.5 * w).powf(2.0 / 3.0);
        (-c * 2.0 * (1.0 - z), c.powf(0.25))
    } else {
        let bracket = z.acos() - z * (1.0 - z * z).sqrt();
        let t = -(0.75 * w * bracket).powf(2.0 / 3.0);
        (t, (t / (z * z - 1.0)).powf(0.25))
    };
    Ok(prefactor * airy_ai(t)?)
}

/// Right-hand side of the Airy-type approximation for H_nu itself,
/// `2^nu exp(xi^2/2) Gamma((nu+1)/2) (t/(z^2-1))^(1/4) Ai(t)`.
pub fn hermite_airy_asymptotic(nu: HermiteOrder, xi: f64) -> Result<f64, SpecFunError> {
    let scaled = hermite_airy_asymptotic_scaled(nu, xi)?;
    let n = nu.value();
    if scaled == 0.0 {
        return Ok(0.0);
    }
    let log_mag = scaled.abs().ln()
        + n * std::f64::consts::LN_2
        + ln_gamma(0.5 * (n + 1.0))?
        + 0.5 * xi * xi;
    if log_mag > 709.0 {
        return Err(SpecFunError::Overflow {
            what: "hermite_airy_asymptotic",
        });
    }
    Ok(scaled.signum() * log_mag.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(nu: f64) -> HermiteOrder {
        HermiteOrder::new(nu).unwrap()
    }

    /// Explicit Hermite polynomials by the integer recurrence.
    fn poly(n: usize, x: f64) -> f64 {
        let (mut a, mut b) = (1.0, 2.0 * x);
        if n == 0 {
            return a;
        }
        for k in 1..n {
            let c = 2.0 * x * b - 2.0 * k as f64 * a;
            a = b;
            b = c;
        }
        b
    }

    #[test]
    fn order_zero_and_one() {
        for &xi in &[0.0, 0.3, 2.0, 7.5, 14.0] {
            assert!((hermite_h(order(0.0), xi).unwrap() - 1.0).abs() < 1e-13, "xi={xi}");
            let h1 = hermite_h(order(1.0), xi).unwrap();
            assert!((h1 - 2.0 * xi).abs() < 1e-13 * (1.0 + xi), "xi={xi}");
        }
    }

    #[test]
    fn integer_orders_collapse_to_polynomials() {
        for n in 0..=10 {
            for &xi in &[0.05, 0.7, 1.9, 3.4, 6.0, 11.0] {
                let want = poly(n, xi);
                let got = hermite_h(order(n as f64), xi).unwrap();
                let scale = want.abs().max(poly(n + 1, xi).abs() / (2.0 * xi + 1.0)).max(1.0);
                assert!((got - want).abs() < 1e-10 * scale, "n={n} xi={xi}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn value_at_origin() {
        // H_nu(0) = 2^nu sqrt(pi) / Gamma((1-nu)/2)
        for &nu in &[-0.7, -0.2, 0.3, 1.5, 2.25, 7.9] {
            let want = f64::exp2(nu) * std::f64::consts::PI.sqrt() * rgamma(0.5 * (1.0 - nu));
            let got = hermite_h(order(nu), 0.0).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "nu={nu}");
        }
    }

    #[test]
    fn minus_one_is_scaled_erfc() {
        // H_{-1}(0) = sqrt(pi)/2
        let v = hermite_h(order(-1.0), 0.0).unwrap();
        assert!((v - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_small_orders() {
        for &xi in &[0.0, 0.4, 3.0] {
            assert!((hermite_h_deriv(order(1.0), xi).unwrap() - 2.0).abs() < 1e-13);
            assert!((hermite_h_deriv(order(2.0), xi).unwrap() - 8.0 * xi).abs() < 1e-12);
        }
    }

    #[test]
    fn kummer_route_agrees_where_well_conditioned() {
        for &nu in &[-0.5, 0.25, 2.5, 6.3, 13.7] {
            for &xi in &[0.0, 0.6, 1.3, 2.4] {
                let k = hermite_h_kummer(order(nu), xi).unwrap();
                let r = hermite_h(order(nu), xi).unwrap();
                let tol = 1e-12 * 10f64.powf(k.lost_digits) * r.abs().max(1.0);
                assert!((k.value - r).abs() < tol, "nu={nu} xi={xi}: {} vs {r}", k.value);
            }
        }
    }

    #[test]
    fn kummer_route_reports_accuracy_loss() {
        // far outside the oscillatory region the two terms cancel by e^{xi^2/2}
        let err = hermite_h_kummer(order(0.5), 9.0).unwrap_err();
        assert!(matches!(err, SpecFunError::AccuracyLoss { .. }));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(
            hermite_h(order(300.0), 25.0),
            Err(SpecFunError::Overflow { .. })
        ));
        assert!(hermite_h_scaled(order(300.0), 25.0).unwrap().is_finite());
    }

    #[test]
    fn turning_point_limit_is_continuous() {
        let nu = 50.0;
        let xi_tp = (2.0 * nu + 1.0_f64).sqrt();
        let at = hermite_airy_asymptotic_scaled(order(nu), xi_tp).unwrap();
        let near = hermite_airy_asymptotic_scaled(order(nu), xi_tp * (1.0 - 2e-6)).unwrap();
        assert!(((at - near) / at).abs() < 1e-4);
        assert!(hermite_airy_asymptotic_scaled(order(nu), xi_tp * 1.01).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(HermiteOrder::new(-1.5).is_err());
        assert!(HermiteOrder::new(f64::NAN).is_err());
        assert!(hermite_h(order(1.0), -0.1).is_err());
    }
}
