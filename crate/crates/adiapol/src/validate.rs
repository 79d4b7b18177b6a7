//! Self-check suites behind the `validate` subcommand.
//!
//! Each suite runs a handful of checks and reports the measured value next
//! to its threshold; a suite passes when every gated check does. Checks
//! with no threshold are informational: they document measured behavior
//! (most notably how far the compact closed form sits from the exact
//! solution) without gating the exit code.

use std::io;

use crate::analytic::{
    endpoint_limits, exact_rotating_frame_solution, paper_printed_solution,
    rescaled_printed_solution, TrigProfileParams,
};
use crate::error::{Error, Result};
use crate::propagate::{propagate, IntegratorConfig, Method};
use crate::protocols::{make_protocol, run_protocol, ProtocolKind, ProtocolSpec, PulseOrdering};
use crate::stokes::{norm3, StokesVector};
use crate::three_state::equivalence_check;

/// Step budget used when the caller does not override `--steps`.
pub const DEFAULT_VALIDATION_STEPS: usize = 100_000;

/// The named validation suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    /// Closed-form rotating-frame solution against the integrator.
    Analytic,
    /// Torque propagation against the three-state Schrödinger analogue.
    Equivalence,
    /// Norm drift and rotation-matrix structure.
    Conservation,
    /// Backward propagation and protocol-level reversal.
    Reversibility,
    /// Measured error exponents of both integrators.
    Convergence,
    /// The compact closed form audited against the exact solution.
    ClosedFormAudit,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 6] = [
        SuiteKind::Analytic,
        SuiteKind::Equivalence,
        SuiteKind::Conservation,
        SuiteKind::Reversibility,
        SuiteKind::Convergence,
        SuiteKind::ClosedFormAudit,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SuiteKind::Analytic => "analytic",
            SuiteKind::Equivalence => "equivalence",
            SuiteKind::Conservation => "conservation",
            SuiteKind::Reversibility => "reversibility",
            SuiteKind::Convergence => "convergence",
            SuiteKind::ClosedFormAudit => "closed_form_audit",
        }
    }
}

impl std::fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "analytic" => Ok(SuiteKind::Analytic),
            "equivalence" => Ok(SuiteKind::Equivalence),
            "conservation" => Ok(SuiteKind::Conservation),
            "reversibility" => Ok(SuiteKind::Reversibility),
            "convergence" => Ok(SuiteKind::Convergence),
            "closed_form_audit" | "audit" => Ok(SuiteKind::ClosedFormAudit),
            other => Err(Error::InvalidConfig(format!(
                "unknown suite {other:?}; expected one of analytic, equivalence, conservation, \
                 reversibility, convergence, closed_form_audit"
            ))),
        }
    }
}

/// One measurement. `threshold: None` marks an informational check that
/// never gates the suite.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: Option<f64>,
    pub pass: bool,
}

impl CheckResult {
    fn gated(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold: Some(threshold),
            pass: measured.is_finite() && measured <= threshold,
        }
    }

    fn informational(name: impl Into<String>, measured: f64) -> Self {
        CheckResult {
            name: name.into(),
            measured,
            threshold: None,
            pass: true,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteResult {
    pub suite: SuiteKind,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    fn from_checks(suite: SuiteKind, checks: Vec<CheckResult>) -> Self {
        SuiteResult {
            suite,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

/// Full validation report; serializes to the `validate` subcommand's JSON.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ValidationReport {
    pub steps: usize,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = (&SuiteResult, &CheckResult)> {
        self.suites
            .iter()
            .flat_map(|s| s.checks.iter().map(move |c| (s, c)))
            .filter(|(_, c)| !c.pass)
    }

    /// Human-readable table, one line per check.
    pub fn render_text(&self, mut out: impl io::Write) -> io::Result<()> {
        for suite in &self.suites {
            writeln!(
                out,
                "suite {} ... {}",
                suite.suite,
                if suite.pass { "pass" } else { "FAIL" }
            )?;
            for check in &suite.checks {
                match check.threshold {
                    Some(threshold) => writeln!(
                        out,
                        "  [{}] {}: {:.3e} (threshold {:.1e})",
                        if check.pass { "pass" } else { "FAIL" },
                        check.name,
                        check.measured,
                        threshold
                    )?,
                    None => writeln!(
                        out,
                        "  [info] {}: {:.6e}",
                        check.name, check.measured
                    )?,
                }
            }
        }
        for note in &self.notes {
            writeln!(out, "note: {note}")?;
        }
        writeln!(out, "overall: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// What to run and how hard.
#[derive(Debug, Clone)]
pub struct ValidationOptions {
    /// Step budget for the workhorse runs; suites derive their own grids
    /// from it (the analytic suite refines by 10x, the convergence suite
    /// coarsens by 10x and 100x).
    pub steps: usize,
    /// Restrict to these suites; `None` runs all of them.
    pub suites: Option<Vec<SuiteKind>>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            steps: DEFAULT_VALIDATION_STEPS,
            suites: None,
        }
    }
}

/// Run the selected suites and collect the report.
pub fn run_validation(options: &ValidationOptions) -> Result<ValidationReport> {
    if options.steps == 0 {
        return Err(Error::InvalidConfig("step count must be at least 1".into()));
    }
    let selected: Vec<SuiteKind> = match &options.suites {
        Some(list) if !list.is_empty() => {
            let mut seen = Vec::new();
            for kind in SuiteKind::ALL {
                if list.contains(&kind) {
                    seen.push(kind);
                }
            }
            seen
        }
        _ => SuiteKind::ALL.to_vec(),
    };
    let mut suites = Vec::new();
    let mut notes = Vec::new();
    for kind in selected {
        let result = match kind {
            SuiteKind::Analytic => analytic_suite(options.steps)?,
            SuiteKind::Equivalence => equivalence_suite(options.steps)?,
            SuiteKind::Conservation => conservation_suite(options.steps)?,
            SuiteKind::Reversibility => reversibility_suite(options.steps)?,
            SuiteKind::Convergence => convergence_suite(options.steps)?,
            SuiteKind::ClosedFormAudit => audit_suite(options.steps, &mut notes)?,
        };
        suites.push(result);
    }
    Ok(ValidationReport {
        steps: options.steps,
        pass: suites.iter().all(|s| s.pass),
        suites,
        notes,
    })
}

fn sup_deviation_from_exact(
    params: &TrigProfileParams,
    method: Method,
    steps: usize,
) -> Result<f64> {
    let mut config = IntegratorConfig::default();
    config.method = method;
    config.step_count = steps;
    config.sample_count = 1001.min(steps + 1);
    let trace = propagate(
        &params.profile()?,
        &StokesVector::right_circular(),
        &config,
        None,
    )?;
    let mut sup: f64 = 0.0;
    for (z, s) in trace.z.iter().zip(&trace.s) {
        let exact = exact_rotating_frame_solution(params, *z)?;
        let d = [s.s1 - exact.s1, s.s2 - exact.s2, s.s3 - exact.s3];
        sup = sup.max(norm3(d));
    }
    Ok(sup)
}

fn analytic_suite(steps: usize) -> Result<SuiteResult> {
    let mut checks = Vec::new();
    let mut worst_norm: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for omega0_l in [1.0, 20.0, 100.0] {
        let params = TrigProfileParams::new(omega0_l, 1.0)?;
        let profile = params.profile()?;
        // Unit norm on a fine grid.
        for i in 0..=1000 {
            let z = i as f64 / 1000.0;
            let s = exact_rotating_frame_solution(&params, z)?;
            worst_norm = worst_norm.max(s.norm_error());
        }
        // The closed form must satisfy the torque equation: compare the
        // central difference of S against Omega x S at interior points.
        let eps = 1e-6;
        for i in 1..100 {
            let z = i as f64 / 100.0;
            let plus = exact_rotating_frame_solution(&params, z + eps)?;
            let minus = exact_rotating_frame_solution(&params, z - eps)?;
            let here = exact_rotating_frame_solution(&params, z)?;
            let omega = profile.evaluate(z)?;
            let rhs = crate::propagate::torque_rhs(&omega, &here);
            let d = [
                (plus.s1 - minus.s1) / (2.0 * eps) - rhs[0],
                (plus.s2 - minus.s2) / (2.0 * eps) - rhs[1],
                (plus.s3 - minus.s3) / (2.0 * eps) - rhs[2],
            ];
            worst_residual = worst_residual.max(norm3(d));
        }
        let refined = steps.saturating_mul(10);
        let sup = sup_deviation_from_exact(&params, Method::Rotor, refined)?;
        checks.push(CheckResult::gated(
            format!("exact vs rotor integrator, sup over z (omega0 L = {omega0_l}, {refined} steps)"),
            sup,
            1e-8,
        ));
    }
    checks.insert(
        0,
        CheckResult::gated("exact solution unit norm, sup over z and omega0 L", worst_norm, 1e-13),
    );
    checks.insert(
        1,
        CheckResult::gated(
            "exact solution torque-equation residual (central difference)",
            worst_residual,
            1e-6,
        ),
    );
    Ok(SuiteResult::from_checks(SuiteKind::Analytic, checks))
}

fn equivalence_suite(steps: usize) -> Result<SuiteResult> {
    let config = IntegratorConfig::rotor(steps);
    let mut checks = Vec::new();
    for kind in ProtocolKind::ALL {
        let protocol = make_protocol(&ProtocolSpec::new(kind, 20.0, 1.0))?;
        let deviation =
            equivalence_check(&protocol.profile, protocol.case, &protocol.initial, &config)?;
        checks.push(CheckResult::gated(
            format!("torque vs three-state propagation, sup over z ({kind})"),
            deviation,
            1e-8,
        ));
    }
    Ok(SuiteResult::from_checks(SuiteKind::Equivalence, checks))
}

fn conservation_suite(steps: usize) -> Result<SuiteResult> {
    let params = TrigProfileParams::new(20.0, 1.0)?;
    let profile = params.profile()?;
    let s0 = StokesVector::right_circular();
    let rotor = propagate(&profile, &s0, &IntegratorConfig::rotor(steps), None)?;
    let rk4 = propagate(&profile, &s0, &IntegratorConfig::rk4(steps), None)?;
    // Propagate an orthonormal frame and measure how far the end states
    // are from a proper rotation of it.
    let basis = [
        StokesVector::new(1.0, 0.0, 0.0),
        StokesVector::new(0.0, 1.0, 0.0),
        StokesVector::new(0.0, 0.0, 1.0),
    ];
    let mut columns = Vec::new();
    for b in basis {
        let trace = propagate(&profile, &b, &IntegratorConfig::rotor(steps), None)?;
        columns.push(trace.final_state().as_array());
    }
    let mut structure: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let dot = crate::stokes::dot3(columns[i], columns[j]);
            let expected = if i == j { 1.0 } else { 0.0 };
            structure = structure.max((dot - expected).abs());
        }
    }
    let det = crate::stokes::dot3(
        columns[0],
        crate::stokes::cross3(columns[1], columns[2]),
    );
    structure = structure.max((det - 1.0).abs());
    let checks = vec![
        CheckResult::gated("rotor norm drift, sup over trace", rotor.max_norm_drift(), 1e-12),
        CheckResult::gated("rk4 norm drift, sup over trace", rk4.max_norm_drift(), 1e-6),
        CheckResult::gated(
            "propagator orthogonality and determinant (rotor)",
            structure,
            1e-8,
        ),
    ];
    Ok(SuiteResult::from_checks(SuiteKind::Conservation, checks))
}

fn reversibility_suite(steps: usize) -> Result<SuiteResult> {
    let params = TrigProfileParams::new(20.0, 1.0)?;
    let s0 = StokesVector::right_circular();
    let mut checks = Vec::new();
    for method in [Method::Rotor, Method::Rk4] {
        let mut config = IntegratorConfig::default();
        config.method = method;
        config.step_count = steps;
        config.sample_count = 2;
        let forward = propagate(&params.profile()?, &s0, &config, None)?;
        let back_profile = params.profile()?.reversed_negated();
        // Rescale the turn-around state so coarse rk4 runs (whose drift the
        // conservation suite measures) still produce a closure number here
        // instead of a launch-validation error.
        let back = propagate(
            &back_profile,
            &forward.final_state().normalized()?,
            &config,
            None,
        )?;
        let closure = back.final_state();
        let d = [closure.s1 - s0.s1, closure.s2 - s0.s2, closure.s3 - s0.s3];
        checks.push(CheckResult::gated(
            format!("round trip through the sign-flipped reversed profile ({})", method),
            norm3(d),
            1e-8,
        ));
    }
    // Protocol-level reversal: mirrored profile with swapped endpoints
    // must convert exactly as well as the forward run.
    let area = 20.0 * std::f64::consts::PI;
    let spec = ProtocolSpec::with_area(ProtocolKind::CaseBLinToCirc, area, 1.0)?;
    let config = IntegratorConfig::rotor(steps);
    let forward = run_protocol(&spec, &config)?;
    let reversed = run_protocol(&spec.with_ordering(PulseOrdering::Reversed), &config)?;
    checks.push(CheckResult::gated(
        "protocol reversal fidelity gap (mirrored profile, swapped endpoints)",
        (forward.final_fidelity - reversed.final_fidelity).abs(),
        1e-6,
    ));
    Ok(SuiteResult::from_checks(SuiteKind::Reversibility, checks))
}

fn convergence_suite(steps: usize) -> Result<SuiteResult> {
    if steps < 100 {
        return Ok(SuiteResult::from_checks(
            SuiteKind::Convergence,
            vec![CheckResult {
                name: "step budget supports a three-point refinement (needs >= 100)".into(),
                measured: steps as f64,
                threshold: Some(100.0),
                pass: false,
            }],
        ));
    }
    let params = TrigProfileParams::new(100.0, 1.0)?;
    let grid = [steps / 100, steps / 10, steps];
    let mut checks = Vec::new();
    for (method, target) in [(Method::Rk4, 4.0), (Method::Rotor, 2.0)] {
        let mut points = Vec::new();
        for n in grid {
            let err = sup_deviation_from_exact(&params, method, n)?;
            points.push(((n as f64).log10(), err.log10()));
        }
        let slope = least_squares_slope(&points);
        checks.push(CheckResult::informational(
            format!("{method} measured error exponent over steps {grid:?}"),
            slope,
        ));
        checks.push(CheckResult::gated(
            format!("{method} exponent deviation from order {target}"),
            (slope + target).abs(),
            0.5,
        ));
    }
    Ok(SuiteResult::from_checks(SuiteKind::Convergence, checks))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    num / den
}

fn audit_suite(steps: usize, notes: &mut Vec<String>) -> Result<SuiteResult> {
    let mut checks = Vec::new();
    // Launch state.
    let params20 = TrigProfileParams::new(20.0, 1.0)?;
    let launch = paper_printed_solution(&params20, 0.0)?;
    let launch_dev = norm3([launch.s1, launch.s2, launch.s3 - 1.0]);
    checks.push(CheckResult::gated(
        "compact form reproduces the launch state at z = 0",
        launch_dev,
        1e-12,
    ));
    // The single-substitution repair: peak -> peak/pi plus a sign flip on
    // the second component reproduces the exact solution.
    let mut repair_sup: f64 = 0.0;
    for omega0_l in [1.0, 20.0] {
        let params = TrigProfileParams::new(omega0_l, 1.0)?;
        for i in 0..=1000 {
            let z = i as f64 / 1000.0;
            let exact = exact_rotating_frame_solution(&params, z)?;
            let repaired = rescaled_printed_solution(&params, z)?;
            let d = [
                repaired.s1 - exact.s1,
                repaired.s2 - exact.s2,
                repaired.s3 - exact.s3,
            ];
            repair_sup = repair_sup.max(norm3(d));
        }
    }
    checks.push(CheckResult::gated(
        "pi-rescaled compact form with flipped second component vs exact, sup over z",
        repair_sup,
        1e-12,
    ));
    // Compact form as printed, against the integrator. An even step count
    // puts the half-length point on the sample grid exactly.
    let even_steps = steps + steps % 2;
    let trace = propagate(
        &params20.profile()?,
        &StokesVector::right_circular(),
        &IntegratorConfig::rotor(even_steps),
        None,
    )?;
    let mut printed_sup: f64 = 0.0;
    for (z, s) in trace.z.iter().zip(&trace.s) {
        let printed = paper_printed_solution(&params20, *z)?;
        let d = [s.s1 - printed.s1, s.s2 - printed.s2, s.s3 - printed.s3];
        printed_sup = printed_sup.max(norm3(d));
    }
    checks.push(CheckResult::informational(
        "compact form as written vs integrator, sup over z (omega0 L = 20)",
        printed_sup,
    ));
    // Endpoint envelopes implied by the compact form, measured against the
    // integrator at the half and full length.
    let limits = endpoint_limits(&params20);
    let half_index = trace
        .z
        .iter()
        .position(|z| (*z - 0.5).abs() < 1e-9)
        .ok_or_else(|| Error::InvalidConfig("audit midpoint missing from sample grid".into()))?;
    let half_violation = limits.half_violation(&trace.s[half_index]);
    let full_violation = limits.full_violation(&trace.final_state());
    checks.push(CheckResult::informational(
        "integrator excess over the compact form's half-length envelope (omega0 L = 20)",
        half_violation,
    ));
    checks.push(CheckResult::informational(
        "integrator excess over the compact form's full-length envelope (omega0 L = 20)",
        full_violation,
    ));
    notes.push(
        "the compact closed form reproduces the launch state and the large-area limits, but \
         away from the endpoints it deviates from the exact rotating-frame solution by the \
         sup-norm amount reported above (omega0 L = 20)."
            .into(),
    );
    notes.push(
        "replacing the peak by peak/pi inside the oscillatory terms and flipping the sign of \
         the second component makes the compact form match the exact solution to machine \
         precision, so the discrepancy behaves like a transcription slip rather than a \
         different physical solution."
            .into(),
    );
    notes.push(
        "at omega0 L = 20 the integrator leaves the endpoints with larger transverse \
         components than the compact form's envelopes predict; the measured excesses are \
         reported above and shrink as the area grows."
            .into(),
    );
    Ok(SuiteResult::from_checks(SuiteKind::ClosedFormAudit, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes_every_suite() {
        let report = run_validation(&ValidationOptions::default()).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures().map(|(s, c)| format!("{}/{}", s.suite, c.name)).collect::<Vec<_>>());
        assert_eq!(report.suites.len(), 6);
        assert!(report.suites.iter().all(|s| s.pass));
        // The audit states the compact-form deviation instead of gating on
        // it: the measured value is order one.
        let audit = report
            .suites
            .iter()
            .find(|s| s.suite == SuiteKind::ClosedFormAudit)
            .unwrap();
        let printed = audit
            .checks
            .iter()
            .find(|c| c.name.contains("as written vs integrator"))
            .unwrap();
        assert!(printed.threshold.is_none());
        assert!((printed.measured - 0.4082877759).abs() < 1e-3);
        let half = audit
            .checks
            .iter()
            .find(|c| c.name.contains("half-length envelope"))
            .unwrap();
        assert!((half.measured - 0.171).abs() < 0.01);
        assert!(!report.notes.is_empty());
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(json.contains("\"closed_form_audit\""));
        let mut text = Vec::new();
        report.render_text(&mut text).unwrap();
        assert!(String::from_utf8(text).unwrap().contains("overall: pass"));
    }

    #[test]
    fn suite_filter_limits_sections() {
        let options = ValidationOptions {
            steps: 20_000,
            suites: Some(vec![SuiteKind::Equivalence]),
        };
        let report = run_validation(&options).unwrap();
        assert_eq!(report.suites.len(), 1);
        assert_eq!(report.suites[0].suite, SuiteKind::Equivalence);
        assert_eq!(report.suites[0].checks.len(), 4);
        assert!(report.pass);
    }

    #[test]
    fn coarse_steps_fail_convergence() {
        let options = ValidationOptions {
            steps: 10,
            suites: Some(vec![SuiteKind::Convergence]),
        };
        let report = run_validation(&options).unwrap();
        assert!(!report.pass);
        assert!(!report.suites[0].pass);
    }

    #[test]
    fn convergence_suite_measures_orders() {
        let options = ValidationOptions {
            steps: 100_000,
            suites: Some(vec![SuiteKind::Convergence]),
        };
        let report = run_validation(&options).unwrap();
        assert!(report.pass);
        let checks = &report.suites[0].checks;
        let rk4_slope = checks
            .iter()
            .find(|c| c.name.starts_with("rk4 measured"))
            .unwrap()
            .measured;
        let rotor_slope = checks
            .iter()
            .find(|c| c.name.starts_with("rotor measured"))
            .unwrap()
            .measured;
        assert!((rk4_slope + 3.956).abs() < 0.1, "rk4 slope {rk4_slope}");
        assert!((rotor_slope + 2.0).abs() < 0.05, "rotor slope {rotor_slope}");
    }

    #[test]
    fn suite_kind_parsing() {
        assert_eq!("analytic".parse::<SuiteKind>().unwrap(), SuiteKind::Analytic);
        assert_eq!(
            "closed-form-audit".parse::<SuiteKind>().unwrap(),
            SuiteKind::ClosedFormAudit
        );
        assert_eq!("audit".parse::<SuiteKind>().unwrap(), SuiteKind::ClosedFormAudit);
        assert!("wibble".parse::<SuiteKind>().is_err());
    }

    #[test]
    fn zero_steps_rejected() {
        let options = ValidationOptions {
            steps: 0,
            suites: None,
        };
        assert!(matches!(
            run_validation(&options),
            Err(Error::InvalidConfig(_))
        ));
    }
}
