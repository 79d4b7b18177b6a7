//! Polarization states on the Poincaré sphere.
//!
//! A fully polarized beam is a point on the unit sphere spanned by the
//! reduced Stokes components: the poles are the circular states, the equator
//! the linear states, everything in between elliptical. Intensity is
//! normalized away (no polarization-dependent loss), so all dynamics in this
//! crate are rigid rotations of the sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Stokes vector of a fully polarized state.
///
/// Component convention: `+s1` horizontal linear, `+s2` diagonal (+45°)
/// linear, `+s3` right circular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub const fn new(s1: f64, s2: f64, s3: f64) -> Self {
        Self { s1, s2, s3 }
    }

    pub const fn horizontal() -> Self {
        Self::new(1.0, 0.0, 0.0)
    }

    pub const fn vertical() -> Self {
        Self::new(-1.0, 0.0, 0.0)
    }

    pub const fn diagonal() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }

    pub const fn antidiagonal() -> Self {
        Self::new(0.0, -1.0, 0.0)
    }

    pub const fn right_circular() -> Self {
        Self::new(0.0, 0.0, 1.0)
    }

    pub const fn left_circular() -> Self {
        Self::new(0.0, 0.0, -1.0)
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        self.s1 * other.s1 + self.s2 * other.s2 + self.s3 * other.s3
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Absolute distance of the norm from 1.
    #[inline]
    pub fn norm_error(&self) -> f64 {
        (self.norm() - 1.0).abs()
    }

    /// Unit vector in the same direction.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::UndefinedDirection(format!(
                "cannot normalize a Stokes vector of norm {n}"
            )));
        }
        Ok(Self::new(self.s1 / n, self.s2 / n, self.s3 / n))
    }

    /// Angle to another unit vector, in radians.
    ///
    /// Computed as 2·atan2(‖a − b‖, ‖a + b‖), which stays accurate for
    /// nearly parallel and nearly antiparallel pairs where acos of the dot
    /// product loses half the significant digits.
    pub fn angle_to(&self, other: &Self) -> f64 {
        let diff = [
            self.s1 - other.s1,
            self.s2 - other.s2,
            self.s3 - other.s3,
        ];
        let sum = [
            self.s1 + other.s1,
            self.s2 + other.s2,
            self.s3 + other.s3,
        ];
        2.0 * norm3(diff).atan2(norm3(sum))
    }

    #[inline]
    pub fn as_array(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }

    pub(crate) fn require_unit(&self, tol: f64, what: &str) -> Result<()> {
        let n = self.norm();
        if (n - 1.0).abs() > tol {
            return Err(Error::NonUnit {
                what: what.to_string(),
                norm: n,
            });
        }
        Ok(())
    }
}

impl From<[f64; 3]> for StokesVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl From<StokesVector> for [f64; 3] {
    fn from(s: StokesVector) -> Self {
        s.as_array()
    }
}

impl std::fmt::Display for StokesVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:+.6}, {:+.6}, {:+.6})", self.s1, self.s2, self.s3)
    }
}

#[inline]
pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Rotate `v` about `axis` (any nonzero length) by `angle` radians,
/// right-handed. A zero axis means no rotation.
pub(crate) fn rotate_about(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
    let n = norm3(axis);
    if n == 0.0 {
        return v;
    }
    let u = [axis[0] / n, axis[1] / n, axis[2] / n];
    let (sin, cos) = angle.sin_cos();
    let uxv = cross3(u, v);
    let udv = dot3(u, v) * (1.0 - cos);
    [
        v[0] * cos + uxv[0] * sin + u[0] * udv,
        v[1] * cos + uxv[1] * sin + u[1] * udv,
        v[2] * cos + uxv[2] * sin + u[2] * udv,
    ]
}
