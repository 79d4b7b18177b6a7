//! Adiabatic polarization conversion on the Poincaré sphere.
//!
//! Light propagating through a medium whose birefringence varies slowly
//! along the device obeys a torque equation: the Stokes vector precesses
//! about the local birefringence vector, dS/dz = Ω(z) × S(z). When the
//! direction of Ω turns slowly compared with its magnitude (pulse area
//! well above 6π), the polarization follows it adiabatically, which makes
//! robust broadband polarization converters: the conversion quality
//! degrades gracefully as the operating wavelength moves off design,
//! where a fixed retarder fails quickly.
//!
//! The same mathematics governs three-state stimulated Raman adiabatic
//! passage; [`three_state`] carries the exact mapping between the two
//! pictures and uses it as a cross-validation oracle.
//!
//! Everything is dimensionless by convention: lengths in device units
//! (the default device has length 1), rotary power in inverse length, and
//! field strengths quoted as the peak-times-length product Ω₀L or as the
//! pulse area ∫|Ω|dz.
//!
//! Module map:
//! - [`stokes`]: the unit Stokes vector and named polarization states.
//! - [`profile`]: birefringence profiles Ω(z), pulse areas, and the dark
//!   superposition diagnostic.
//! - [`propagate`]: fixed-step integrators for the torque equation; a
//!   norm-preserving rotor method (default) and classical RK4.
//! - [`analytic`]: closed-form solutions for the trigonometric profile,
//!   used as oracles, plus an audit of a compact published-style form.
//! - [`three_state`]: the Λ-system analogue, Schrödinger propagation, and
//!   the Stokes ↔ amplitude dictionary.
//! - [`protocols`]: the four named conversion protocols and adiabaticity
//!   checks.
//! - [`sweep`]: wavelength/length/area scans and the waveplate baseline.
//! - [`validate`]: self-check suites behind `adiapol validate`.
//! - [`cli`]: the command-line front end.

pub mod analytic;
pub mod cli;
pub mod error;
mod ode;
pub mod profile;
pub mod propagate;
pub mod protocols;
pub mod stokes;
pub mod sweep;
pub mod three_state;
pub mod validate;

pub use error::{Error, Result};
pub use profile::{BirefringenceProfile, BirefringenceSample, Case};
pub use propagate::{fidelity, propagate, IntegratorConfig, Method, PropagationTrace};
pub use protocols::{make_protocol, run_protocol, ProtocolKind, ProtocolSpec};
pub use stokes::StokesVector;
