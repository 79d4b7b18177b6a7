//! Shared fixed-step integration plumbing.
//!
//! The torque equation (real 3-vector) and the three-state Schrödinger
//! equation (complex 3-vector) advance through the same RK4 kernel, so the
//! two pictures see identical discretization behavior.

use num_complex::Complex64;

/// State vectors the kernel can advance: anything supporting y + a·x.
pub(crate) trait OdeState: Copy {
    fn axpy(self, a: f64, x: Self) -> Self;
}

impl OdeState for [f64; 3] {
    #[inline]
    fn axpy(self, a: f64, x: Self) -> Self {
        [self[0] + a * x[0], self[1] + a * x[1], self[2] + a * x[2]]
    }
}

impl OdeState for [Complex64; 3] {
    #[inline]
    fn axpy(self, a: f64, x: Self) -> Self {
        [self[0] + a * x[0], self[1] + a * x[1], self[2] + a * x[2]]
    }
}

/// One classical RK4 update of dy/dz = f(z, y) from `z` to `z + h`.
#[inline]
pub(crate) fn rk4_step<Y: OdeState>(f: &mut impl FnMut(f64, Y) -> Y, z: f64, h: f64, y: Y) -> Y {
    let k1 = f(z, y);
    let k2 = f(z + 0.5 * h, y.axpy(0.5 * h, k1));
    let k3 = f(z + 0.5 * h, y.axpy(0.5 * h, k2));
    let k4 = f(z + h, y.axpy(h, k3));
    y.axpy(h / 6.0, k1)
        .axpy(h / 3.0, k2)
        .axpy(h / 3.0, k3)
        .axpy(h / 6.0, k4)
}

/// Step indices at which a trace of `sample_count` rows samples a run of
/// `step_count` steps: strictly increasing, always containing 0 and
/// `step_count`. Requires `2 <= sample_count <= step_count + 1`.
pub(crate) fn sample_indices(step_count: usize, sample_count: usize) -> Vec<usize> {
    (0..sample_count)
        .map(|j| j * step_count / (sample_count - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_matches_exponential_decay() {
        // dy/dz = -y componentwise; exact solution e^{-z}.
        let mut f = |_z: f64, y: [f64; 3]| [-y[0], -y[1], -y[2]];
        let mut y = [1.0, 2.0, -3.0];
        let n = 100;
        let h = 1.0 / n as f64;
        for i in 0..n {
            y = rk4_step(&mut f, i as f64 * h, h, y);
        }
        let e = (-1.0f64).exp();
        for (yi, y0) in y.iter().zip([1.0, 2.0, -3.0]) {
            assert!((yi - y0 * e).abs() < 1e-10);
        }
    }

    #[test]
    fn rk4_is_fourth_order() {
        let err = |n: usize| {
            let mut f = |_z: f64, y: [f64; 3]| [-y[0], 0.0, 0.0];
            let mut y = [1.0, 0.0, 0.0];
            let h = 1.0 / n as f64;
            for i in 0..n {
                y = rk4_step(&mut f, i as f64 * h, h, y);
            }
            (y[0] - (-1.0f64).exp()).abs()
        };
        let ratio = err(10) / err(20);
        // Halving h should cut the error by ~2^4.
        assert!(ratio > 12.0 && ratio < 20.0, "ratio {ratio}");
    }

    #[test]
    fn sample_indices_cover_endpoints() {
        let idx = sample_indices(100_000, 1001);
        assert_eq!(idx.len(), 1001);
        assert_eq!(idx[0], 0);
        assert_eq!(*idx.last().unwrap(), 100_000);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));

        // Degenerate but legal: samples equal to steps + 1.
        let idx = sample_indices(3, 4);
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }
}
