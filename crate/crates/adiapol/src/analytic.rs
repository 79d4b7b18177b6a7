//! Closed-form solutions for the trigonometric profile
//! Ω(z) = Ω₀ (sin(πz/L), 0, cos(πz/L)) launched from S(0) = (0, 0, 1).
//!
//! Two closed forms are shipped. [`exact_rotating_frame_solution`] is
//! derived by transforming to the frame co-rotating with the field, where
//! the torque vector is constant and the motion is a single axis-angle
//! rotation; it satisfies the torque equation to machine precision and is
//! the reference. [`paper_printed_solution`] transcribes a published
//! expression verbatim; it differs from the reference at finite Ω₀L (its
//! oscillatory argument uses √(1/L² + Ω₀²) where the derivation gives
//! √(π²/L² + Ω₀²), and its second component has the opposite sign). The
//! validation report measures the discrepancy instead of guessing intent;
//! see `closed_form_audit` in the validate module.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::profile::BirefringenceProfile;
use crate::stokes::{rotate_about, StokesVector};

/// Parameters of the trigonometric profile: peak rotary power Ω₀ and device
/// length L. A zero peak is allowed (field off); the length must be
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TrigProfileParams {
    pub omega0: f64,
    pub length: f64,
}

impl TrigProfileParams {
    pub fn new(omega0: f64, length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Domain(format!(
                "length must be positive and finite, got {length}"
            )));
        }
        if !(omega0.is_finite() && omega0 >= 0.0) {
            return Err(Error::Domain(format!(
                "omega0 must be nonnegative and finite, got {omega0}"
            )));
        }
        Ok(Self { omega0, length })
    }

    /// Dimensionless strength Ω₀L, the pulse area of this profile.
    pub fn omega0_l(&self) -> f64 {
        self.omega0 * self.length
    }

    /// The profile as a field over [0, L], for the numerical integrators.
    pub fn profile(&self) -> Result<BirefringenceProfile> {
        BirefringenceProfile::trigonometric(self.omega0, self.length)
    }

    fn check_z(&self, z: f64) -> Result<()> {
        if !(z >= 0.0 && z <= self.length) {
            return Err(Error::Domain(format!(
                "z = {z} outside the device interval [0, {}]",
                self.length
            )));
        }
        Ok(())
    }
}

/// Reference closed form, derived in the rotating frame.
///
/// In the frame rotating about axis 2 at rate π/L the torque vector is the
/// constant (0, −π/L, Ω₀); the state simply precesses about it at rate
/// k = √(Ω₀² + π²/L²). Rotating the result back to the lab frame gives the
/// solution. Unit norm for every z by construction.
pub fn exact_rotating_frame_solution(p: &TrigProfileParams, z: f64) -> Result<StokesVector> {
    p.check_z(z)?;
    let rate = PI / p.length;
    let axis = [0.0, -rate, p.omega0];
    let k = (p.omega0 * p.omega0 + rate * rate).sqrt();
    let frame = rotate_about(axis, k * z, [0.0, 0.0, 1.0]);
    let (sin, cos) = (rate * z).sin_cos();
    Ok(StokesVector::new(
        frame[0] * cos + frame[2] * sin,
        frame[1],
        -frame[0] * sin + frame[2] * cos,
    ))
}

/// Published closed form, transcribed exactly as printed.
///
/// With x = Ω₀²L² and oscillatory argument A = πz√(1/L² + Ω₀²):
///
/// ```text
/// S₁ = (x + cos A)/(1 + x) · sin(πz/L) − sin A/√(1 + x) · cos(πz/L)
/// S₂ = 2Ω₀L/(1 + x) · sin²(A/2)
/// S₃ = (x + cos A)/(1 + x) · cos(πz/L) + sin A/√(1 + x) · sin(πz/L)
/// ```
///
/// It honors S(0) = (0, 0, 1) and reaches the same Ω₀L → ∞ endpoint limits
/// as the reference, but disagrees with it at finite Ω₀L. Substituting
/// Ω₀ → Ω₀/π in this expression and negating S₂ reproduces the reference
/// exactly (see the closed-form audit), which locates the mismatch in the
/// printed argument A and a handedness convention for S₂.
pub fn paper_printed_solution(p: &TrigProfileParams, z: f64) -> Result<StokesVector> {
    p.check_z(z)?;
    let x = p.omega0_l() * p.omega0_l();
    let arg = PI * z * (1.0 / (p.length * p.length) + p.omega0 * p.omega0).sqrt();
    let (sin_a, cos_a) = arg.sin_cos();
    let (sin_f, cos_f) = (PI * z / p.length).sin_cos();
    let secular = (x + cos_a) / (1.0 + x);
    let oscillatory = sin_a / (1.0 + x).sqrt();
    let half = (0.5 * arg).sin();
    Ok(StokesVector::new(
        secular * sin_f - oscillatory * cos_f,
        2.0 * p.omega0_l() / (1.0 + x) * half * half,
        secular * cos_f + oscillatory * sin_f,
    ))
}

/// Finite-Ω₀L envelope bounds on the states at z = L/2 (quarter period)
/// and z = L (half period), in terms of x = Ω₀²L².
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EndpointEnvelopes {
    /// Floor on S₁(L/2): (x − 1)/(1 + x).
    pub s1_half_min: f64,
    /// Ceiling on |S₂(L/2)|: 2Ω₀L/(1 + x).
    pub s2_half_abs: f64,
    /// Ceiling on |S₃(L/2)|: 1/√(1 + x).
    pub s3_half_abs: f64,
    /// Ceiling on |S₁(L)|: 1/√(1 + x).
    pub s1_full_abs: f64,
    /// Ceiling on |S₂(L)|: 2Ω₀L/(1 + x).
    pub s2_full_abs: f64,
    /// Ceiling on S₃(L): −(x − 1)/(1 + x).
    pub s3_full_max: f64,
}

impl EndpointEnvelopes {
    /// How far s sits outside the quarter-period envelope (0 when inside).
    pub fn half_violation(&self, s: &StokesVector) -> f64 {
        (self.s1_half_min - s.s1)
            .max(s.s2.abs() - self.s2_half_abs)
            .max(s.s3.abs() - self.s3_half_abs)
            .max(0.0)
    }

    /// How far s sits outside the half-period envelope (0 when inside).
    pub fn full_violation(&self, s: &StokesVector) -> f64 {
        (s.s1.abs() - self.s1_full_abs)
            .max(s.s2.abs() - self.s2_full_abs)
            .max(s.s3 - self.s3_full_max)
            .max(0.0)
    }
}

/// Envelope bounds implied by the quarter- and half-period limit
/// expressions. All six collapse to the ideal endpoints (1,0,0) and
/// (0,0,−1) as Ω₀L → ∞.
pub fn endpoint_limits(p: &TrigProfileParams) -> EndpointEnvelopes {
    let x = p.omega0_l() * p.omega0_l();
    let secular = (x - 1.0) / (1.0 + x);
    let oscillatory = 2.0 * p.omega0_l() / (1.0 + x);
    let tilt = 1.0 / (1.0 + x).sqrt();
    EndpointEnvelopes {
        s1_half_min: secular,
        s2_half_abs: oscillatory,
        s3_half_abs: tilt,
        s1_full_abs: tilt,
        s2_full_abs: oscillatory,
        s3_full_max: -secular,
    }
}

/// The printed solution with the rescaling Ω₀ → Ω₀/π and the sign of the
/// second component flipped. The closed-form audit shows this reproduces
/// [`exact_rotating_frame_solution`] to machine precision, which pins the
/// printed formula's deviation to those two conventions.
pub fn rescaled_printed_solution(p: &TrigProfileParams, z: f64) -> Result<StokesVector> {
    let rescaled = TrigProfileParams {
        omega0: p.omega0 / PI,
        length: p.length,
    };
    let s = paper_printed_solution(&rescaled, z)?;
    Ok(StokesVector::new(s.s1, -s.s2, s.s3))
}
