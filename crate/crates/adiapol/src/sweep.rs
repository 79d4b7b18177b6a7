//! Robustness studies: protocol fidelity versus wavelength, device length,
//! and pulse area, with a fixed-retarder waveplate baseline for comparison.
//!
//! Wavelength enters only through the rotary power |Ω| = 2πΔn/λ; the index
//! contrast is treated as constant across the sweep (no dispersion model).
//! Grid points are independent and evaluated in parallel, but rows are
//! always emitted in grid order, so identical invocations produce
//! byte-identical output.

use std::io;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::profile::{pulse_area, rotary_power};
use crate::propagate::{fidelity, IntegratorConfig};
use crate::protocols::{make_protocol, run_protocol, ProtocolSpec};
use crate::stokes::{rotate_about, StokesVector};

/// Which knob the sweep turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    /// Vary λ; the peak rotary power follows 2πΔn/λ.
    Wavelength,
    /// Stretch the device; the peak rotary power stays fixed, so the pulse
    /// area grows with the length.
    Length,
    /// Vary the pulse area directly by rescaling the peak.
    Area,
}

impl SweepParameter {
    pub fn label(self) -> &'static str {
        match self {
            SweepParameter::Wavelength => "wavelength",
            SweepParameter::Length => "length",
            SweepParameter::Area => "area",
        }
    }
}

impl std::fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wavelength" | "lambda" => Ok(SweepParameter::Wavelength),
            "length" => Ok(SweepParameter::Length),
            "area" => Ok(SweepParameter::Area),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep parameter {other:?}, expected wavelength, length, or area"
            ))),
        }
    }
}

/// A sweep request: base protocol, the parameter to vary, its inclusive
/// range, and the grid resolution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SweepSpec {
    pub protocol: ProtocolSpec,
    pub parameter: SweepParameter,
    /// Inclusive [lo, hi] in the parameter's units; lo < hi.
    pub range: (f64, f64),
    /// Grid size, ≥ 2; uniform and endpoint-inclusive.
    pub samples: usize,
    /// Index contrast Δn; required for wavelength sweeps.
    pub delta_n: Option<f64>,
}

impl SweepSpec {
    pub fn validated(&self) -> Result<()> {
        let (lo, hi) = self.range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidConfig(format!(
                "sweep range [{lo}, {hi}] must be finite with lo < hi"
            )));
        }
        if self.samples < 2 {
            return Err(Error::InvalidConfig(format!(
                "sweep needs at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.parameter == SweepParameter::Wavelength && self.delta_n.is_none() {
            return Err(Error::InvalidConfig(
                "wavelength sweeps need --delta-n to convert wavelength to rotary power".into(),
            ));
        }
        Ok(())
    }

    /// The uniform endpoint-inclusive grid.
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        let n = self.samples;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// One grid point: parameter value, final Stokes vector, fidelity.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub s: StokesVector,
    pub fidelity: f64,
}

/// Completed sweep: rows in grid order plus the request that produced
/// them. Wall-clock time is kept out of the serialized form so identical
/// requests serialize identically.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub spec: SweepSpec,
    pub config: IntegratorConfig,
    pub rows: Vec<SweepRow>,
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

/// Run the protocol at every grid point. Points are evaluated in parallel;
/// rows come back in grid order regardless of completion order.
pub fn run_sweep(spec: &SweepSpec, config: &IntegratorConfig) -> Result<SweepResult> {
    spec.validated()?;
    config.validated()?;
    let started = std::time::Instant::now();
    // One unit-peak quadrature fixes the area-to-peak conversion for the
    // base geometry (|Ω| scales linearly with the peak).
    let unit_area = if spec.parameter == SweepParameter::Area {
        let mut base = spec.protocol;
        base.omega0 = 1.0;
        Some(pulse_area(&make_protocol(&base)?.profile, 10_000)?)
    } else {
        None
    };
    let rows: Vec<SweepRow> = spec
        .grid()
        .par_iter()
        .map(|&value| -> Result<SweepRow> {
            let mut point = spec.protocol;
            match spec.parameter {
                SweepParameter::Wavelength => {
                    let delta_n = spec.delta_n.expect("checked by validated()");
                    point.omega0 = rotary_power(delta_n, value)?;
                }
                SweepParameter::Length => {
                    point.length = value;
                }
                SweepParameter::Area => {
                    point.omega0 = value / unit_area.expect("computed for area sweeps");
                }
            }
            let run = run_protocol(&point, config)?;
            Ok(SweepRow {
                value,
                s: run.trace.final_state(),
                fidelity: run.final_fidelity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        parameter: spec.parameter,
        spec: *spec,
        config: *config,
        rows,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    })
}

impl SweepResult {
    pub fn fidelities(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.fidelity).collect()
    }

    pub fn min_fidelity(&self) -> f64 {
        self.rows.iter().map(|r| r.fidelity).fold(f64::INFINITY, f64::min)
    }

    pub fn median_fidelity(&self) -> f64 {
        median(&self.fidelities())
    }

    /// Write rows as CSV with header `param,value,s1,s2,s3,fidelity`,
    /// shortest round-trip float formatting.
    pub fn write_csv(&self, mut out: impl io::Write) -> io::Result<()> {
        writeln!(out, "param,value,s1,s2,s3,fidelity")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                self.parameter, row.value, row.s.s1, row.s.s2, row.s.s3, row.fidelity
            )?;
        }
        Ok(())
    }

    /// Summary used by the CLI's JSON output.
    pub fn summary(&self) -> SweepSummary {
        let fidelities = self.fidelities();
        let window = trend_window(self.rows.len());
        SweepSummary {
            parameter: self.parameter,
            min_fidelity: self.min_fidelity(),
            median_fidelity: median(&fidelities),
            grid: GridInfo {
                lo: self.spec.range.0,
                hi: self.spec.range.1,
                samples: self.spec.samples,
            },
            protocol: self.spec.protocol,
            trend: TrendInfo {
                window,
                medians: sliding_median_trend(&fidelities, window),
            },
        }
    }
}

/// Aggregate view of one sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepSummary {
    pub parameter: SweepParameter,
    pub min_fidelity: f64,
    pub median_fidelity: f64,
    pub grid: GridInfo,
    pub protocol: ProtocolSpec,
    /// Sliding-window medians of the fidelity along the grid; smooths
    /// oscillatory ripples so monotone trends are visible.
    pub trend: TrendInfo,
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GridInfo {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct TrendInfo {
    pub window: usize,
    pub medians: Vec<f64>,
}

/// Largest odd window ≤ 7 that fits the row count (minimum 1).
fn trend_window(rows: usize) -> usize {
    let w = rows.min(7);
    if w % 2 == 0 {
        (w - 1).max(1)
    } else {
        w.max(1)
    }
}

fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        0.5 * (sorted[mid - 1] + sorted[mid])
    }
}

/// Medians of each length-`window` slice of `values`, in order. Ripples of
/// period shorter than the window are suppressed, exposing the underlying
/// trend.
pub fn sliding_median_trend(values: &[f64], window: usize) -> Vec<f64> {
    assert!(window >= 1, "window must be positive");
    if values.len() < window {
        return Vec::new();
    }
    values.windows(window).map(median).collect()
}

/// The modeled fixed-retarder conversions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveplateConversion {
    /// Half-wave plate at 45 degrees: linear in, orthogonal linear out.
    HalfWaveOrthogonal,
}

/// Fidelity of a fixed linear retarder cut for retardation π at
/// `lambda_design` when operated at `lambda`.
///
/// The actual retardation is δ = π·λ_design/λ. The conversion is scored by
/// rotating the input Stokes vector about the retarder axis by δ and
/// comparing with the intended output; for the half-wave orthogonal
/// conversion this equals cos²((π − δ)/2), which the tests use as an
/// independent oracle.
pub fn waveplate_baseline(
    lambda_design: f64,
    lambda: f64,
    conversion: WaveplateConversion,
) -> Result<f64> {
    for (value, name) in [(lambda_design, "design wavelength"), (lambda, "wavelength")] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::Domain(format!(
                "{name} must be positive and finite, got {value}"
            )));
        }
    }
    let delta = std::f64::consts::PI * lambda_design / lambda;
    match conversion {
        WaveplateConversion::HalfWaveOrthogonal => {
            // Horizontal in, retarder axis 45 degrees from it (Stokes axis
            // 2), vertical intended out.
            let input = StokesVector::horizontal();
            let output = rotate_about([0.0, 1.0, 0.0], delta, input.as_array());
            fidelity(&StokesVector::from(output), &StokesVector::vertical())
        }
    }
}

/// The retarder baseline evaluated over a wavelength grid.
pub fn waveplate_sweep(
    lambda_design: f64,
    grid: &[f64],
    conversion: WaveplateConversion,
) -> Result<Vec<(f64, f64)>> {
    grid.iter()
        .map(|&lambda| Ok((lambda, waveplate_baseline(lambda_design, lambda, conversion)?)))
        .collect()
}

/// One wavelength of the adiabatic-versus-waveplate comparison.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BroadbandRow {
    pub lambda: f64,
    pub adiabatic_fidelity: f64,
    pub waveplate_fidelity: f64,
    /// adiabatic − waveplate.
    pub delta: f64,
}

/// The broadband comparison over a shared wavelength grid.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BroadbandReport {
    pub rows: Vec<BroadbandRow>,
    pub adiabatic_min: f64,
    pub adiabatic_median: f64,
    pub waveplate_min: f64,
    pub waveplate_median: f64,
}

impl BroadbandReport {
    /// CSV with header `lambda,adiabatic_fidelity,waveplate_fidelity,delta`.
    pub fn write_csv(&self, mut out: impl io::Write) -> io::Result<()> {
        writeln!(out, "lambda,adiabatic_fidelity,waveplate_fidelity,delta")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                row.lambda, row.adiabatic_fidelity, row.waveplate_fidelity, row.delta
            )?;
        }
        Ok(())
    }
}

/// Join an adiabatic wavelength sweep with a waveplate baseline computed
/// over the identical grid.
pub fn broadband_report(
    adiabatic: &SweepResult,
    baseline: &[(f64, f64)],
) -> Result<BroadbandReport> {
    if adiabatic.parameter != SweepParameter::Wavelength {
        return Err(Error::InvalidConfig(format!(
            "broadband report needs a wavelength sweep, got a {} sweep",
            adiabatic.parameter
        )));
    }
    if adiabatic.rows.is_empty() || baseline.is_empty() {
        return Err(Error::InvalidConfig(
            "broadband report needs a nonempty grid".into(),
        ));
    }
    if adiabatic.rows.len() != baseline.len() {
        return Err(Error::GridMismatch(format!(
            "adiabatic sweep has {} rows, baseline has {}",
            adiabatic.rows.len(),
            baseline.len()
        )));
    }
    let mut rows = Vec::with_capacity(baseline.len());
    for (a, (lambda, w)) in adiabatic.rows.iter().zip(baseline) {
        if a.value != *lambda {
            return Err(Error::GridMismatch(format!(
                "grids disagree: adiabatic wavelength {} vs baseline {lambda}",
                a.value
            )));
        }
        rows.push(BroadbandRow {
            lambda: *lambda,
            adiabatic_fidelity: a.fidelity,
            waveplate_fidelity: *w,
            delta: a.fidelity - w,
        });
    }
    let adiabatic_f: Vec<f64> = rows.iter().map(|r| r.adiabatic_fidelity).collect();
    let waveplate_f: Vec<f64> = rows.iter().map(|r| r.waveplate_fidelity).collect();
    Ok(BroadbandReport {
        adiabatic_min: adiabatic_f.iter().copied().fold(f64::INFINITY, f64::min),
        adiabatic_median: median(&adiabatic_f),
        waveplate_min: waveplate_f.iter().copied().fold(f64::INFINITY, f64::min),
        waveplate_median: median(&waveplate_f),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::ProtocolKind;
    use std::f64::consts::PI;

    fn case_a_wavelength_spec(range: (f64, f64), samples: usize) -> SweepSpec {
        // L·Δn = 10·λ₀ with λ₀ = 1 and L = 1: at the design wavelength the
        // peak rotary power is 20π.
        SweepSpec {
            protocol: ProtocolSpec::new(ProtocolKind::CaseARotation, 1.0, 1.0),
            parameter: SweepParameter::Wavelength,
            range,
            samples,
            delta_n: Some(10.0),
        }
    }

    #[test]
    fn spec_validation() {
        let mut spec = case_a_wavelength_spec((0.5, 1.5), 11);
        assert!(spec.validated().is_ok());
        spec.range = (1.5, 0.5);
        assert!(matches!(spec.validated(), Err(Error::InvalidConfig(_))));
        spec.range = (0.5, 1.5);
        spec.samples = 1;
        assert!(matches!(spec.validated(), Err(Error::InvalidConfig(_))));
        spec.samples = 11;
        spec.delta_n = None;
        assert!(matches!(spec.validated(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn grid_is_uniform_and_inclusive() {
        let spec = case_a_wavelength_spec((0.5, 1.5), 41);
        let grid = spec.grid();
        assert_eq!(grid.len(), 41);
        assert_eq!(grid[0], 0.5);
        assert_eq!(grid[40], 1.5);
        for w in grid.windows(2) {
            assert!((w[1] - w[0] - 0.025).abs() < 1e-12);
        }
    }

    #[test]
    fn wavelength_sweep_stays_high_fidelity() {
        let spec = case_a_wavelength_spec((0.5, 1.5), 21);
        let result = run_sweep(&spec, &IntegratorConfig::rotor(20_000)).unwrap();
        assert_eq!(result.rows.len(), 21);
        assert!(
            result.min_fidelity() >= 0.99,
            "min fidelity {}",
            result.min_fidelity()
        );
        assert!(result.rows.iter().all(|r| (0.0..=1.0).contains(&r.fidelity)));
    }

    #[test]
    fn area_sweep_improves_with_area() {
        let spec = SweepSpec {
            protocol: ProtocolSpec::new(ProtocolKind::LevelCrossing, 1.0, 1.0),
            parameter: SweepParameter::Area,
            range: (1.0, 100.0),
            samples: 12,
            delta_n: None,
        };
        let result = run_sweep(&spec, &IntegratorConfig::rotor(20_000)).unwrap();
        assert_eq!(result.rows[0].value, 1.0);
        assert_eq!(result.rows[11].value, 100.0);
        assert!(result.rows[11].fidelity >= result.rows[0].fidelity);
        // The trigonometric profile's area is Ω₀L, so the peak equals the
        // requested area here.
        assert!(result.rows[11].fidelity > 0.999);
    }

    #[test]
    fn length_stretch_at_fixed_area_is_invariant() {
        // Shape-preserving stretches leave the dynamics a function of the
        // dimensionless area alone: rescale the peak as 1/L and the final
        // fidelity must not move.
        let area = 20.0 * PI;
        let config = IntegratorConfig::rotor(10_000);
        let mut fidelities = Vec::new();
        for length in [0.5, 1.0, 2.0] {
            let spec = ProtocolSpec::new(
                ProtocolKind::CaseBLinToCirc,
                area / (0.531228931552638 * length),
                length,
            );
            fidelities.push(run_protocol(&spec, &config).unwrap().final_fidelity);
        }
        assert!((fidelities[0] - fidelities[1]).abs() <= 1e-12);
        assert!((fidelities[1] - fidelities[2]).abs() <= 1e-12);
    }

    #[test]
    fn length_sweep_grows_area() {
        let spec = SweepSpec {
            protocol: ProtocolSpec::new(ProtocolKind::LevelCrossing, 30.0, 1.0),
            parameter: SweepParameter::Length,
            range: (0.2, 2.0),
            samples: 7,
            delta_n: None,
        };
        let result = run_sweep(&spec, &IntegratorConfig::rotor(20_000)).unwrap();
        // Area Ω₀L runs from 6 (below threshold) to 60. The infidelity
        // ripples with area and 60 need not sit on a ripple node, but the
        // closed form caps the transverse endpoint components at
        // π/√(π² + x) and 2πΩ₀L/(π² + x) with x = (Ω₀L)², so
        // 1 − F ≤ (s1_max² + s2_max²)/4 ≈ 0.0034 there.
        assert!(result.rows[6].fidelity > result.rows[0].fidelity);
        assert!(result.rows[6].fidelity > 0.995);
        let x = 3600.0;
        let s1_max = PI / (PI * PI + x).sqrt();
        let s2_max = 2.0 * PI * 60.0 / (PI * PI + x);
        let floor = 1.0 - (s1_max * s1_max + s2_max * s2_max) / 4.0;
        assert!(result.rows[6].fidelity >= floor, "floor {floor}");
    }

    #[test]
    fn sweep_output_is_deterministic() {
        let spec = case_a_wavelength_spec((0.8, 1.2), 9);
        let config = IntegratorConfig::rotor(5_000);
        let a = run_sweep(&spec, &config).unwrap();
        let b = run_sweep(&spec, &config).unwrap();
        let mut csv_a = Vec::new();
        let mut csv_b = Vec::new();
        a.write_csv(&mut csv_a).unwrap();
        b.write_csv(&mut csv_b).unwrap();
        assert_eq!(csv_a, csv_b);
        assert!(csv_a.starts_with(b"param,value,s1,s2,s3,fidelity\n"));
        let text = String::from_utf8(csv_a).unwrap();
        assert_eq!(text.lines().count(), 10);
        assert!(text.lines().nth(1).unwrap().starts_with("wavelength,0.8,"));
    }

    #[test]
    fn fidelity_trends_down_once_area_drops_below_threshold() {
        // Longer wavelength means smaller area; past the adiabaticity
        // threshold the smoothed fidelity must not increase. Window 7 is
        // the smallest that suppresses the coherent ripples on this grid.
        let spec = case_a_wavelength_spec((1.0, 6.0), 41);
        let result = run_sweep(&spec, &IntegratorConfig::rotor(20_000)).unwrap();
        let areas: Vec<f64> = result
            .rows
            .iter()
            .map(|r| rotary_power(10.0, r.value).unwrap() * 0.531228931552638)
            .collect();
        let first_below = areas
            .iter()
            .position(|a| *a < crate::protocols::ADIABATIC_AREA_THRESHOLD)
            .unwrap();
        assert_eq!(first_below, 7);
        let tail: Vec<f64> = result.fidelities()[first_below..].to_vec();
        let medians = sliding_median_trend(&tail, 7);
        assert!(medians.len() > 2);
        for pair in medians.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12,
                "smoothed fidelity rose: {pair:?}"
            );
        }
    }

    #[test]
    fn median_and_trend_helpers() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(
            sliding_median_trend(&[1.0, 2.0, 3.0, 4.0], 3),
            vec![2.0, 3.0]
        );
        assert_eq!(sliding_median_trend(&[1.0], 3), Vec::<f64>::new());
        assert_eq!(trend_window(41), 7);
        assert_eq!(trend_window(6), 5);
        assert_eq!(trend_window(2), 1);
    }

    #[test]
    fn waveplate_examples() {
        let f = waveplate_baseline(1.0, 1.0, WaveplateConversion::HalfWaveOrthogonal).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
        let f = waveplate_baseline(1.0, 2.0, WaveplateConversion::HalfWaveOrthogonal).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
        let f = waveplate_baseline(1.0, 1.3, WaveplateConversion::HalfWaveOrthogonal).unwrap();
        assert!((f - 0.87425).abs() < 1e-4);
        assert!(f < 0.9);
        assert!(matches!(
            waveplate_baseline(1.0, 0.0, WaveplateConversion::HalfWaveOrthogonal),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            waveplate_baseline(-1.0, 1.0, WaveplateConversion::HalfWaveOrthogonal),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn waveplate_rotation_matches_closed_form() {
        for i in 0..=60 {
            let lambda = 0.5 + i as f64 / 40.0;
            let f =
                waveplate_baseline(1.0, lambda, WaveplateConversion::HalfWaveOrthogonal).unwrap();
            let delta = PI / lambda;
            let oracle = ((PI - delta) / 2.0).cos().powi(2);
            assert!(
                (f - oracle).abs() <= 1e-12,
                "lambda {lambda}: {f} vs {oracle}"
            );
        }
    }

    #[test]
    fn broadband_comparison() {
        let spec = case_a_wavelength_spec((0.5, 1.5), 41);
        let adiabatic = run_sweep(&spec, &IntegratorConfig::rotor(20_000)).unwrap();
        let grid = spec.grid();
        let baseline =
            waveplate_sweep(1.0, &grid, WaveplateConversion::HalfWaveOrthogonal).unwrap();
        let report = broadband_report(&adiabatic, &baseline).unwrap();
        assert_eq!(report.rows.len(), 41);
        // Off the design wavelength the adiabatic device wins everywhere
        // in the comparison window.
        for row in &report.rows {
            if row.lambda != 1.0 && (0.7..=1.5).contains(&row.lambda) {
                assert!(
                    row.adiabatic_fidelity >= row.waveplate_fidelity,
                    "waveplate won at lambda {}",
                    row.lambda
                );
            }
            if row.lambda == 1.0 {
                assert!((row.adiabatic_fidelity - 1.0).abs() < 0.01);
                assert!((row.waveplate_fidelity - 1.0).abs() < 0.01);
            }
        }
        assert!(report.adiabatic_min > report.waveplate_min);
        let mut csv = Vec::new();
        report.write_csv(&mut csv).unwrap();
        assert!(csv.starts_with(b"lambda,adiabatic_fidelity,waveplate_fidelity,delta\n"));
    }

    #[test]
    fn broadband_report_rejects_bad_grids() {
        let spec = case_a_wavelength_spec((0.8, 1.2), 5);
        let adiabatic = run_sweep(&spec, &IntegratorConfig::rotor(2_000)).unwrap();
        let short = waveplate_sweep(1.0, &spec.grid()[..4], WaveplateConversion::HalfWaveOrthogonal)
            .unwrap();
        assert!(matches!(
            broadband_report(&adiabatic, &short),
            Err(Error::GridMismatch(_))
        ));
        let shifted: Vec<(f64, f64)> = spec
            .grid()
            .iter()
            .map(|l| (l + 1e-9, 1.0))
            .collect();
        assert!(matches!(
            broadband_report(&adiabatic, &shifted),
            Err(Error::GridMismatch(_))
        ));
        assert!(matches!(
            broadband_report(&adiabatic, &[]),
            Err(Error::InvalidConfig(_))
        ));
        // Wrong sweep parameter.
        let area_spec = SweepSpec {
            protocol: ProtocolSpec::new(ProtocolKind::LevelCrossing, 1.0, 1.0),
            parameter: SweepParameter::Area,
            range: (10.0, 20.0),
            samples: 3,
            delta_n: None,
        };
        let area_sweep = run_sweep(&area_spec, &IntegratorConfig::rotor(2_000)).unwrap();
        let baseline = waveplate_sweep(
            1.0,
            &area_spec.grid(),
            WaveplateConversion::HalfWaveOrthogonal,
        )
        .unwrap();
        assert!(matches!(
            broadband_report(&area_sweep, &baseline),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn summary_has_trend_and_extremes() {
        let spec = SweepSpec {
            protocol: ProtocolSpec::new(ProtocolKind::LevelCrossing, 1.0, 1.0),
            parameter: SweepParameter::Area,
            range: (5.0, 50.0),
            samples: 10,
            delta_n: None,
        };
        let result = run_sweep(&spec, &IntegratorConfig::rotor(5_000)).unwrap();
        let summary = result.summary();
        assert_eq!(summary.grid.samples, 10);
        assert_eq!(summary.trend.window, 7);
        assert_eq!(summary.trend.medians.len(), 4);
        assert!(summary.min_fidelity <= summary.median_fidelity);
        let json = serde_json::to_string(&summary).unwrap();
        assert!(json.contains("\"trend\""));
        assert!(json.contains("\"min_fidelity\""));
    }
}
