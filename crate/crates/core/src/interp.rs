//! Monotonicity-preserving cubic Hermite interpolation on a sorted knot
//! vector. Slopes follow the Fritsch-Carlson construction: harmonic-mean
//! weighting in monotone runs, zero at local extrema, so the interpolant
//! never overshoots the data. Cached densities use this to stay non-negative
//! between nodes.

pub(crate) struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

fn end_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d * s0 <= 0.0 {
        0.0
    } else if s0 * s1 < 0.0 && d.abs() > 3.0 * s0.abs() {
        3.0 * s0
    } else {
        d
    }
}

impl Pchip {
    /// Knots must be strictly increasing, at least two of them.
    pub(crate) fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len());
        debug_assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let s: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        let mut ds = vec![0.0; n];
        if n == 2 {
            ds[0] = s[0];
            ds[1] = s[0];
        } else {
            for i in 1..n - 1 {
                if s[i - 1] * s[i] <= 0.0 {
                    continue;
                }
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                ds[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
            ds[0] = end_slope(h[0], h[1], s[0], s[1]);
            ds[n - 1] = end_slope(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
        }
        Pchip { xs, ys, ds }
    }

    /// Zero outside the knot range; the cached functions this backs are
    /// densities already truncated to that range.
    pub(crate) fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return 0.0;
        }
        let i = self
            .xs
            .partition_point(|&v| v <= x)
            .saturating_sub(1)
            .min(n - 2);
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        self.ys[i] * (2.0 * t3 - 3.0 * t2 + 1.0)
            + self.ds[i] * h * (t3 - 2.0 * t2 + t)
            + self.ys[i + 1] * (3.0 * t2 - 2.0 * t3)
            + self.ds[i + 1] * h * (t3 - t2)
    }

    pub(crate) fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    pub(crate) fn len(&self) -> usize {
        self.xs.len()
    }
}
