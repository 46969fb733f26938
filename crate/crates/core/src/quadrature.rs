//! Uniform symmetric grids with composite Simpson quadrature and
//! fourth-order finite differences.
//!
//! The origin is always a node. Integrals and derivatives are taken on each
//! half-line separately so a kink at x = 0 never sits inside a stencil.

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GridError {
    #[error("grid needs 8k+1 points (k >= 1), got {0}")]
    PointCount(usize),
    #[error("grid half-width must be positive and finite, got {0}")]
    HalfWidth(f64),
}

/// Points `x_i = (i - n) h` for `i = 0..=2n`, exactly antisymmetric about 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGrid {
    half_width: f64,
    half_intervals: usize,
}

impl SymmetricGrid {
    pub const DEFAULT_POINTS: usize = 4001;

    /// `points` must be of the form 8k+1 so Simpson's rule can also be
    /// applied at double spacing on each half.
    pub fn new(half_width: f64, points: usize) -> Result<Self, GridError> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(GridError::HalfWidth(half_width));
        }
        if points < 9 || !(points - 1).is_multiple_of(8) {
            return Err(GridError::PointCount(points));
        }
        Ok(SymmetricGrid {
            half_width,
            half_intervals: (points - 1) / 2,
        })
    }

    pub fn len(&self) -> usize {
        2 * self.half_intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn step(&self) -> f64 {
        self.half_width / self.half_intervals as f64
    }

    /// Index of the node at x = 0.
    pub fn center(&self) -> usize {
        self.half_intervals
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.half_intervals as f64) * self.step()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.x(i))
    }

    /// Integral of sampled values over [-L, L].
    pub fn integrate(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.len());
        let c = self.center();
        let h = self.step();
        simpson(&values[..=c], h) + simpson(&values[c..], h)
    }

    /// Same integral using only every second node; the difference to
    /// [`integrate`](Self::integrate) estimates the quadrature error.
    pub fn integrate_coarse(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.len());
        let c = self.center();
        let h = 2.0 * self.step();
        let left: Vec<f64> = values[..=c].iter().step_by(2).copied().collect();
        let right: Vec<f64> = values[c..].iter().step_by(2).copied().collect();
        simpson(&left, h) + simpson(&right, h)
    }

    /// d/dx of sampled values, fourth order, one-sided at x = 0 and the ends.
    /// At the center node the average of the two one-sided values is used.
    pub fn derivative(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.len());
        let c = self.center();
        let h = self.step();
        let left = derivative_segment(&values[..=c], h);
        let right = derivative_segment(&values[c..], h);
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&left[..c]);
        out.push(0.5 * (left[c] + right[0]));
        out.extend_from_slice(&right[1..]);
        out
    }

    /// Derivative on one half-line including the one-sided value at x = 0.
    pub fn derivative_halves(&self, values: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let c = self.center();
        let h = self.step();
        (
            derivative_segment(&values[..=c], h),
            derivative_segment(&values[c..], h),
        )
    }
}

/// Composite Simpson rule on an odd number of equally spaced samples.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd sample count");
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(n - 1).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even)
}

/// Fourth-order first derivative on a smooth, equally spaced segment.
pub fn derivative_segment(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5);
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    let fwd = |i: usize| {
        (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] - 3.0 * f[i + 4])
            / (12.0 * h)
    };
    let skew_fwd = |i: usize| {
        (-3.0 * f[i - 1] - 10.0 * f[i] + 18.0 * f[i + 1] - 6.0 * f[i + 2] + f[i + 3]) / (12.0 * h)
    };
    let bwd = |i: usize| {
        (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4])
            / (12.0 * h)
    };
    let skew_bwd = |i: usize| {
        (3.0 * f[i + 1] + 10.0 * f[i] - 18.0 * f[i - 1] + 6.0 * f[i - 2] - f[i - 3]) / (12.0 * h)
    };
    d[0] = fwd(0);
    d[1] = skew_fwd(1);
    d[n - 1] = bwd(n - 1);
    d[n - 2] = skew_bwd(n - 2);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = SymmetricGrid::new(2.0, 17).unwrap();
        assert_eq!(g.len(), 17);
        assert_eq!(g.x(g.center()), 0.0);
        assert_eq!(g.x(0), -2.0);
        assert_eq!(g.x(16), 2.0);
        for i in 0..g.len() {
            assert_eq!(g.x(i), -g.x(g.len() - 1 - i));
        }
        assert!(SymmetricGrid::new(1.0, 4000).is_err());
        assert!(SymmetricGrid::new(-1.0, 4001).is_err());
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let g = SymmetricGrid::new(1.5, 9).unwrap();
        let v: Vec<f64> = g.points().map(|x| x * x * x + 2.0 * x * x - 1.0).collect();
        let exact = 2.0 * (2.0 * 1.5f64.powi(3) / 3.0 - 1.5);
        assert!((g.integrate(&v) - exact).abs() < 1e-13);
        assert!((g.integrate_coarse(&v) - exact).abs() < 1e-13);
    }

    #[test]
    fn gaussian_integral() {
        let g = SymmetricGrid::new(8.0, 801).unwrap();
        let v: Vec<f64> = g.points().map(|x| (-x * x).exp()).collect();
        assert!((g.integrate(&v) - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kinked_integrand_is_handled_per_half() {
        let g = SymmetricGrid::new(1.0, 41).unwrap();
        let v: Vec<f64> = g.points().map(|x| x.abs()).collect();
        assert!((g.integrate(&v) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_fourth_order() {
        let g = SymmetricGrid::new(1.0, 401).unwrap();
        let v: Vec<f64> = g.points().map(|x| (3.0 * x).sin()).collect();
        let d = g.derivative(&v);
        for (i, x) in g.points().enumerate() {
            assert!((d[i] - 3.0 * (3.0 * x).cos()).abs() < 1e-7, "x={x}");
        }
    }
}
