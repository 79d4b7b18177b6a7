//! The four named conversion protocols and their adiabaticity checks.
//!
//! Each protocol bundles a birefringence profile, its case, a canonical
//! launch polarization aligned with the initial field, and the target the
//! adiabatic following should deliver. Working well requires pulse area
//! ∫|Ω|dz of roughly 6π or more; on the material side that corresponds to
//! a length-index-contrast product of about three wavelengths.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::profile::{pulse_area, BirefringenceProfile, Case};
use crate::propagate::{fidelity, propagate, IntegratorConfig, PropagationTrace};
use crate::stokes::StokesVector;

/// Pulse area at or above which the built-in protocols are treated as
/// adiabatic (inclusive threshold).
pub const ADIABATIC_AREA_THRESHOLD: f64 = 6.0 * PI;

/// Quadrature resolution used for protocol-level area checks.
const AREA_QUADRATURE_STEPS: usize = 10_000;

/// The named conversion protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolKind {
    /// Gaussian pair on components (1, 2): rotates linear polarization by
    /// 45 degrees, (1,0,0) → (0,1,0).
    CaseARotation,
    /// Gaussian pair on components (1, 3): linear to right circular,
    /// (1,0,0) → (0,0,1).
    CaseBLinToCirc,
    /// Trigonometric sweep on components (1, 3): component 3 changes sign
    /// at the peak of component 1, flipping circular handedness,
    /// (0,0,1) → (0,0,−1).
    LevelCrossing,
    /// Partial conversion: the mixing angle ramps to 2α and both
    /// components fade together, (1,0,0) → (cos 2α, 0, sin 2α).
    Fractional,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 4] = [
        ProtocolKind::CaseARotation,
        ProtocolKind::CaseBLinToCirc,
        ProtocolKind::LevelCrossing,
        ProtocolKind::Fractional,
    ];

    /// Short name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            ProtocolKind::CaseARotation => "case-a",
            ProtocolKind::CaseBLinToCirc => "case-b",
            ProtocolKind::LevelCrossing => "level-crossing",
            ProtocolKind::Fractional => "fractional",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ProtocolKind::CaseARotation => "rotate linear polarization by 45 degrees",
            ProtocolKind::CaseBLinToCirc => "convert linear to right circular polarization",
            ProtocolKind::LevelCrossing => "flip circular handedness through a field sign change",
            ProtocolKind::Fractional => "partial linear-to-elliptical conversion set by alpha",
        }
    }

    pub fn case(self) -> Case {
        match self {
            ProtocolKind::CaseARotation => Case::A,
            ProtocolKind::CaseBLinToCirc
            | ProtocolKind::LevelCrossing
            | ProtocolKind::Fractional => Case::B,
        }
    }
}

impl std::fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl std::str::FromStr for ProtocolKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "case-a" | "case-a-rotation" => Ok(ProtocolKind::CaseARotation),
            "case-b" | "case-b-lin-to-circ" => Ok(ProtocolKind::CaseBLinToCirc),
            "level-crossing" => Ok(ProtocolKind::LevelCrossing),
            "fractional" => Ok(ProtocolKind::Fractional),
            other => Err(Error::InvalidConfig(format!(
                "unknown protocol {other:?}, expected case-a, case-b, level-crossing, or fractional"
            ))),
        }
    }
}

/// Whether the device is traversed as built or from the far end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseOrdering {
    Forward,
    Reversed,
}

impl std::fmt::Display for PulseOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PulseOrdering::Forward => "forward",
            PulseOrdering::Reversed => "reversed",
        })
    }
}

impl std::str::FromStr for PulseOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "forward" => Ok(PulseOrdering::Forward),
            "reversed" => Ok(PulseOrdering::Reversed),
            other => Err(Error::InvalidConfig(format!(
                "unknown ordering {other:?}, expected forward or reversed"
            ))),
        }
    }
}

/// Full description of one protocol run.
///
/// Geometry overrides are expressed as fractions of the device length:
/// `centers` moves the two pulse peaks (Gaussian kinds) or the ramp
/// interval (fractional); `width` rescales the pulse/edge width. The
/// trigonometric level-crossing kind has no geometry knobs and ignores
/// them.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    /// Peak rotary power, > 0.
    pub omega0: f64,
    /// Device length, > 0.
    pub length: f64,
    pub ordering: PulseOrdering,
    /// Final mixing half-angle of the fractional protocol, in [0, π/2];
    /// ignored by the other kinds.
    pub alpha: f64,
    /// Pulse centers / ramp interval as fractions of the length.
    pub centers: Option<(f64, f64)>,
    /// Pulse or edge width as a fraction of the length.
    pub width: Option<f64>,
}

impl ProtocolSpec {
    /// Spec with forward ordering, default geometry, and α = π/8.
    pub fn new(kind: ProtocolKind, omega0: f64, length: f64) -> Self {
        Self {
            kind,
            omega0,
            length,
            ordering: PulseOrdering::Forward,
            alpha: PI / 8.0,
            centers: None,
            width: None,
        }
    }

    /// Spec whose peak is chosen so the pulse area ∫|Ω|dz equals `area`.
    pub fn with_area(kind: ProtocolKind, area: f64, length: f64) -> Result<Self> {
        if !(area.is_finite() && area > 0.0) {
            return Err(Error::Domain(format!(
                "pulse area must be positive and finite, got {area}"
            )));
        }
        let mut spec = Self::new(kind, 1.0, length);
        // |Ω| scales linearly with the peak, so one unit-peak quadrature
        // fixes the conversion.
        let unit_area = pulse_area(&make_protocol(&spec)?.profile, AREA_QUADRATURE_STEPS)?;
        spec.omega0 = area / unit_area;
        Ok(spec)
    }

    pub fn with_ordering(mut self, ordering: PulseOrdering) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "protocol peak omega0 must be positive and finite, got {}",
                self.omega0
            )));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "protocol length must be positive and finite, got {}",
                self.length
            )));
        }
        if !(0.0..=PI / 2.0).contains(&self.alpha) {
            return Err(Error::InvalidConfig(format!(
                "alpha must lie in [0, pi/2], got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// A realized protocol: the field to traverse and the polarization
/// endpoints it is meant to connect.
#[derive(Debug, Clone)]
pub struct Protocol {
    pub profile: BirefringenceProfile,
    pub case: Case,
    pub initial: StokesVector,
    pub target: StokesVector,
}

/// Build the profile, case, launch state, and target for a spec. Reversed
/// ordering mirrors the profile and swaps launch state and target.
pub fn make_protocol(spec: &ProtocolSpec) -> Result<Protocol> {
    spec.validate()?;
    let length = spec.length;
    let (c1, c2) = spec.centers.unwrap_or(match spec.kind {
        ProtocolKind::Fractional => crate::profile::FRACTIONAL_RAMP,
        _ => crate::profile::GAUSSIAN_PAIR_CENTERS,
    });
    let width_frac = spec.width.unwrap_or(match spec.kind {
        ProtocolKind::Fractional => crate::profile::FRACTIONAL_WIDTH,
        _ => crate::profile::GAUSSIAN_PAIR_WIDTH,
    });
    let (profile, initial, target) = match spec.kind {
        ProtocolKind::CaseARotation => (
            BirefringenceProfile::gaussian_pair_with(
                Case::A,
                spec.omega0,
                c1 * length,
                c2 * length,
                width_frac * length,
                length,
            )?,
            StokesVector::horizontal(),
            StokesVector::diagonal(),
        ),
        ProtocolKind::CaseBLinToCirc => (
            BirefringenceProfile::gaussian_pair_with(
                Case::B,
                spec.omega0,
                c1 * length,
                c2 * length,
                width_frac * length,
                length,
            )?,
            StokesVector::horizontal(),
            StokesVector::right_circular(),
        ),
        ProtocolKind::LevelCrossing => (
            BirefringenceProfile::level_crossing(spec.omega0, length)?,
            StokesVector::right_circular(),
            StokesVector::left_circular(),
        ),
        ProtocolKind::Fractional => {
            let (sin, cos) = (2.0 * spec.alpha).sin_cos();
            (
                BirefringenceProfile::fractional_with(
                    spec.omega0,
                    spec.alpha,
                    c1 * length,
                    c2 * length,
                    width_frac * length,
                    length,
                )?,
                StokesVector::horizontal(),
                StokesVector::new(cos, 0.0, sin),
            )
        }
    };
    let case = spec.kind.case();
    Ok(match spec.ordering {
        PulseOrdering::Forward => Protocol {
            profile,
            case,
            initial,
            target,
        },
        PulseOrdering::Reversed => Protocol {
            profile: profile.mirrored(),
            case,
            initial: target,
            target: initial,
        },
    })
}

/// Outcome of the pulse-area check, optionally paired with the material
/// design condition.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AdiabaticityReport {
    /// Pulse area ∫₀ᴸ |Ω(z)| dz in radians.
    pub area: f64,
    /// Threshold the area is compared against (inclusive).
    pub threshold: f64,
    pub satisfied: bool,
    /// Material condition L·Δn ≥ 3λ, when wavelength data was available.
    pub design_ok: Option<bool>,
}

/// Compare the profile's pulse area against a threshold (use
/// [`ADIABATIC_AREA_THRESHOLD`] for the standard working value).
pub fn check_adiabaticity(
    profile: &BirefringenceProfile,
    threshold: f64,
) -> Result<AdiabaticityReport> {
    let area = pulse_area(profile, AREA_QUADRATURE_STEPS)?;
    Ok(AdiabaticityReport {
        area,
        threshold,
        satisfied: area >= threshold,
        design_ok: None,
    })
}

/// Material design condition: true iff L·Δn ≥ 3λ (inclusive).
pub fn design_condition(length: f64, delta_n: f64, wavelength: f64) -> Result<bool> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!(
            "length must be positive and finite, got {length}"
        )));
    }
    if !(wavelength.is_finite() && wavelength > 0.0) {
        return Err(Error::Domain(format!(
            "wavelength must be positive and finite, got {wavelength}"
        )));
    }
    if !(delta_n.is_finite() && delta_n >= 0.0) {
        return Err(Error::Domain(format!(
            "index contrast must be nonnegative and finite, got {delta_n}"
        )));
    }
    Ok(length * delta_n >= 3.0 * wavelength)
}

/// A completed protocol run: the realized protocol, its trace, the score
/// against the target, and the area check.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub protocol: Protocol,
    pub trace: PropagationTrace,
    pub final_fidelity: f64,
    pub report: AdiabaticityReport,
}

/// Propagate a protocol and score the outcome against its target.
pub fn run_protocol(spec: &ProtocolSpec, config: &IntegratorConfig) -> Result<ProtocolRun> {
    let protocol = make_protocol(spec)?;
    let trace = propagate(
        &protocol.profile,
        &protocol.initial,
        config,
        Some(protocol.case),
    )?;
    let final_fidelity = fidelity(&trace.final_state(), &protocol.target)?;
    let report = check_adiabaticity(&protocol.profile, ADIABATIC_AREA_THRESHOLD)?;
    Ok(ProtocolRun {
        protocol,
        trace,
        final_fidelity,
        report,
    })
}

/// One row of the protocol catalog.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: ProtocolKind,
    pub case: &'static str,
    pub description: &'static str,
    pub initial: [f64; 3],
    pub target: [f64; 3],
}

/// The built-in protocols with their canonical endpoints (forward
/// ordering, default geometry, α = π/8 for the fractional entry).
pub fn catalog() -> Vec<CatalogEntry> {
    ProtocolKind::ALL
        .iter()
        .map(|&kind| {
            let spec = ProtocolSpec::new(kind, 1.0, 1.0);
            let protocol = make_protocol(&spec).expect("catalog specs are valid");
            CatalogEntry {
                name: kind.cli_name(),
                kind,
                case: protocol.case.label(),
                description: kind.describe(),
                initial: protocol.initial.as_array(),
                target: protocol.target.as_array(),
            }
        })
        .collect()
}
