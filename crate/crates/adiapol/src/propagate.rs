//! Fixed-step integration of the torque equation dS/dz = Ω(z) × S(z).
//!
//! Two steppers are provided: a classical 4th-order Runge-Kutta update and
//! a norm-preserving rotor that applies the exact rotation generated by the
//! midpoint field. Profiles are smooth and bounded, so fixed steps with a
//! convergence check beat adaptive control on determinism.

use std::io;

use crate::error::{Error, Result};
use crate::ode::{rk4_step, sample_indices};
use crate::profile::{dark_superposition, BirefringenceProfile, BirefringenceSample, Case};
use crate::stokes::{cross3, rotate_about, StokesVector};

/// Integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Classical 4th-order Runge-Kutta; global error O(h⁴).
    Rk4,
    /// Exact rotation about the midpoint field; unit norm by construction,
    /// global error O(h²), exact for constant fields.
    Rotor,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::Rotor => "rotor",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rk4" => Ok(Method::Rk4),
            "rotor" => Ok(Method::Rotor),
            other => Err(Error::InvalidConfig(format!(
                "unknown integrator {other:?}, expected rk4 or rotor"
            ))),
        }
    }
}

/// Integration settings shared by the Stokes and three-state propagators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IntegratorConfig {
    pub method: Method,
    /// Number of fixed steps covering [0, L].
    pub step_count: usize,
    /// Number of trace samples, endpoints included; at most step_count + 1.
    pub sample_count: usize,
    /// Rescale to unit norm after each step (rk4 only; the rotor is
    /// norm-preserving regardless).
    pub renormalize: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            method: Method::Rotor,
            step_count: 100_000,
            sample_count: 1001,
            renormalize: false,
        }
    }
}

impl IntegratorConfig {
    /// Rotor scheme with `step_count` steps and at most 1001 samples.
    pub fn rotor(step_count: usize) -> Self {
        Self {
            method: Method::Rotor,
            step_count,
            sample_count: step_count.saturating_add(1).min(1001),
            renormalize: false,
        }
    }

    /// RK4 scheme with `step_count` steps and at most 1001 samples.
    pub fn rk4(step_count: usize) -> Self {
        Self {
            method: Method::Rk4,
            step_count,
            sample_count: step_count.saturating_add(1).min(1001),
            renormalize: false,
        }
    }

    pub fn with_samples(mut self, sample_count: usize) -> Self {
        self.sample_count = sample_count;
        self
    }

    pub fn validated(&self) -> Result<()> {
        if self.step_count < 1 {
            return Err(Error::InvalidConfig("step_count must be at least 1".into()));
        }
        if self.sample_count < 2 {
            return Err(Error::InvalidConfig(
                "sample_count must be at least 2 (both endpoints)".into(),
            ));
        }
        if self.sample_count > self.step_count + 1 {
            return Err(Error::InvalidConfig(format!(
                "sample_count {} exceeds step_count + 1 = {}",
                self.sample_count,
                self.step_count + 1
            )));
        }
        Ok(())
    }
}

/// Sampled history of one propagation: position, Stokes vector, driving
/// field, and (when a case was supplied) the dark-superposition weight σ.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PropagationTrace {
    pub z: Vec<f64>,
    pub s: Vec<StokesVector>,
    pub omega: Vec<BirefringenceSample>,
    pub sigma: Option<Vec<f64>>,
}

impl PropagationTrace {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    pub fn initial_state(&self) -> StokesVector {
        self.s[0]
    }

    pub fn final_state(&self) -> StokesVector {
        self.s[self.s.len() - 1]
    }

    /// Largest deviation of |S| from 1 over the trace.
    pub fn max_norm_drift(&self) -> f64 {
        self.s
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest |σ(z) − σ(0)| over the trace; `None` without a σ column.
    /// Small excursions mean the state stayed pinned to the moving field.
    pub fn max_sigma_excursion(&self) -> Option<f64> {
        let sigma = self.sigma.as_ref()?;
        let first = *sigma.first()?;
        Some(
            sigma
                .iter()
                .map(|v| (v - first).abs())
                .fold(0.0, f64::max),
        )
    }

    /// Write the trace as CSV: header
    /// `z,s1,s2,s3,omega1,omega2,omega3,sigma`, one row per sample, full
    /// double precision. The sigma field is left empty without a case.
    pub fn write_csv(&self, mut out: impl io::Write) -> io::Result<()> {
        writeln!(out, "z,s1,s2,s3,omega1,omega2,omega3,sigma")?;
        for i in 0..self.len() {
            let s = self.s[i];
            let w = self.omega[i];
            write!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},",
                self.z[i], s.s1, s.s2, s.s3, w.omega1, w.omega2, w.omega3
            )?;
            match &self.sigma {
                Some(sigma) => writeln!(out, "{:.16e}", sigma[i])?,
                None => writeln!(out)?,
            }
        }
        Ok(())
    }
}

/// Right-hand side of the torque equation: Ω × S.
#[inline]
pub fn torque_rhs(sample: &BirefringenceSample, s: &StokesVector) -> [f64; 3] {
    cross3(sample.as_array(), s.as_array())
}

/// Interval tolerance for stepper domain checks: step arithmetic may land
/// an ulp past L, which must not be treated as leaving the device.
#[inline]
fn check_step_interval(profile: &BirefringenceProfile, z: f64, h: f64) -> Result<()> {
    let length = profile.length();
    let slack = 1e-12 * length.max(1.0);
    let (lo, hi) = if h >= 0.0 { (z, z + h) } else { (z + h, z) };
    if !(lo >= -slack && hi <= length + slack && h.is_finite()) {
        return Err(Error::Domain(format!(
            "step [{lo}, {hi}] leaves the device interval [0, {length}]"
        )));
    }
    Ok(())
}

/// One classical RK4 update of S over [z, z + h].
pub fn step_rk4(
    profile: &BirefringenceProfile,
    s: &StokesVector,
    z: f64,
    h: f64,
    renormalize: bool,
) -> Result<StokesVector> {
    check_step_interval(profile, z, h)?;
    let mut f = |zz: f64, y: [f64; 3]| {
        let w = profile.evaluate_clamped(zz);
        cross3(w.as_array(), y)
    };
    let next = rk4_step(&mut f, z, h, s.as_array());
    let next = StokesVector::from(next);
    if renormalize {
        next.normalized()
    } else {
        Ok(next)
    }
}

/// One rotor update: exact rotation about Ω(z + h/2) by |Ω(z + h/2)|·h.
///
/// Exact for constant fields, second-order otherwise; the result is unit-
/// norm up to a rounding ulp no matter how many steps are taken.
pub fn step_rotor(
    profile: &BirefringenceProfile,
    s: &StokesVector,
    z: f64,
    h: f64,
) -> Result<StokesVector> {
    check_step_interval(profile, z, h)?;
    let w = profile.evaluate_clamped(z + 0.5 * h);
    let magnitude = w.norm();
    if magnitude == 0.0 {
        return Ok(*s);
    }
    let rotated = rotate_about(w.as_array(), magnitude * h, s.as_array());
    StokesVector::from(rotated).normalized()
}

/// Integrate the torque equation over the full device, sampling the state
/// on a uniform-as-possible grid of `config.sample_count` positions.
///
/// When `case` is supplied the σ column is filled from the dark
/// superposition at every sample; the field must then respect the case and
/// stay nonzero at each sampled position.
pub fn propagate(
    profile: &BirefringenceProfile,
    s0: &StokesVector,
    config: &IntegratorConfig,
    case: Option<Case>,
) -> Result<PropagationTrace> {
    config.validated()?;
    s0.require_unit(1e-6, "initial Stokes vector")?;
    let n = config.step_count;
    let length = profile.length();
    let h = length / n as f64;

    let marks = sample_indices(n, config.sample_count);
    let mut z_out = Vec::with_capacity(marks.len());
    let mut s_out = Vec::with_capacity(marks.len());
    let mut omega_out = Vec::with_capacity(marks.len());
    let mut sigma_out = case.map(|_| Vec::with_capacity(marks.len()));

    let mut s = *s0;
    let mut next_mark = 0;
    for i in 0..=n {
        // Grid positions are i·h; the final one is pinned to L exactly.
        let z = if i == n { length } else { i as f64 * h };
        if next_mark < marks.len() && marks[next_mark] == i {
            let w = profile.evaluate_clamped(z);
            if let (Some(sigma), Some(case)) = (sigma_out.as_mut(), case) {
                sigma.push(dark_superposition(&w, &s, case)?);
            }
            z_out.push(z);
            s_out.push(s);
            omega_out.push(w);
            next_mark += 1;
        }
        if i < n {
            s = match config.method {
                Method::Rk4 => step_rk4(profile, &s, z, h, config.renormalize)?,
                Method::Rotor => step_rotor(profile, &s, z, h)?,
            };
        }
    }

    Ok(PropagationTrace {
        z: z_out,
        s: s_out,
        omega: omega_out,
        sigma: sigma_out,
    })
}

/// Poincaré-sphere overlap F = (1 + s·target)/2 ∈ [0, 1].
///
/// Both vectors must be unit within 1e-3; the loose tolerance admits
/// outputs of long unrenormalized RK4 runs without masking genuinely
/// non-unit inputs.
pub fn fidelity(s: &StokesVector, target: &StokesVector) -> Result<f64> {
    s.require_unit(1e-3, "state")?;
    target.require_unit(1e-3, "target")?;
    Ok((0.5 * (1.0 + s.dot(target))).clamp(0.0, 1.0))
}
