//! Compare the adiabatic converter against a fixed half-wave plate over a
//! band of operating wavelengths.
//!
//! The waveplate's retardation is tuned to one design wavelength and
//! degrades quickly away from it. The adiabatic device only needs the
//! pulse area to stay above threshold, so it holds near-unit fidelity
//! across the whole band; that flatness is its main selling point.
//!
//! Run with: cargo run --example broadband_vs_waveplate

use adiapol::sweep::{
    broadband_report, run_sweep, waveplate_sweep, SweepParameter, SweepSpec, WaveplateConversion,
};
use adiapol::{IntegratorConfig, ProtocolKind, ProtocolSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Case A rotation, contrast chosen so the design area is 20π at λ = 1.
    let lambda_design = 1.0;
    let spec = SweepSpec {
        protocol: ProtocolSpec::new(ProtocolKind::CaseARotation, 1.0, 1.0),
        parameter: SweepParameter::Wavelength,
        range: (0.7, 1.6),
        samples: 19,
        delta_n: Some(10.0),
    };
    let mut config = IntegratorConfig::rotor(20_000);
    config.sample_count = 2;

    let adiabatic = run_sweep(&spec, &config)?;
    let baseline = waveplate_sweep(
        lambda_design,
        &spec.grid(),
        WaveplateConversion::HalfWaveOrthogonal,
    )?;
    let report = broadband_report(&adiabatic, &baseline)?;

    println!("half-wave plate cut for lambda = {lambda_design}, delta_n = 10 sweep");
    println!(
        "{:>8} {:>12} {:>12} {:>10}",
        "lambda", "adiabatic", "waveplate", "delta"
    );
    for row in &report.rows {
        println!(
            "{:>8.3} {:>12.6} {:>12.6} {:>+10.6}",
            row.lambda, row.adiabatic_fidelity, row.waveplate_fidelity, row.delta
        );
    }
    println!();
    println!(
        "worst case over the band: adiabatic {:.6}, waveplate {:.6}",
        report.adiabatic_min, report.waveplate_min
    );
    println!(
        "median over the band:     adiabatic {:.6}, waveplate {:.6}",
        report.adiabatic_median, report.waveplate_median
    );
    Ok(())
}
