//! Load a birefringence profile from a whitespace-separated text file.
//!
//! The format is one sample per line, `z omega1 omega2 omega3`, with `#`
//! comments and blank lines ignored; evaluation interpolates linearly
//! between samples. Here a coarse 41-line table of the Case A Gaussian
//! pair is written out, loaded back, and propagated; even that coarse
//! sampling lands within a fraction of a percent of the smooth profile.
//!
//! Run with: cargo run --example custom_profile_file

use adiapol::{
    fidelity, propagate, BirefringenceProfile, Case, IntegratorConfig, Result, StokesVector,
};
use std::fmt::Write as _;

fn main() -> Result<()> {
    // Peak picked so the pulse area (~6.8 pi) clears the adiabatic threshold.
    let omega0 = 40.0;
    let smooth = BirefringenceProfile::gaussian_pair(Case::A, omega0, 1.0)?;

    // Tabulate the smooth profile on a coarse grid.
    let mut text = String::from("# z omega1 omega2 omega3\n");
    let rows = 41;
    for i in 0..rows {
        let z = i as f64 / (rows - 1) as f64;
        let w = smooth.evaluate(z)?;
        writeln!(text, "{z:.6} {:.9} {:.9} {:.9}", w.omega1, w.omega2, w.omega3)
            .expect("string write");
    }
    let path = std::env::temp_dir().join("coarse_gaussian_pair.txt");
    std::fs::write(&path, &text)?;
    println!("wrote {} lines to {}", rows + 1, path.display());

    let loaded = BirefringenceProfile::tabulated_from_path(&path)?;
    let launch = StokesVector::horizontal();
    let target = StokesVector::diagonal();
    let config = IntegratorConfig::rotor(100_000);

    println!();
    println!("{:>10} {:>14} {:>14}", "profile", "fidelity", "1 - fidelity");
    for (name, profile) in [("smooth", &smooth), ("tabulated", &loaded)] {
        let trace = propagate(profile, &launch, &config, Some(Case::A))?;
        let f = fidelity(&trace.final_state(), &target)?;
        println!("{:>10} {:>14.9} {:>14.3e}", name, f, 1.0 - f);
    }

    std::fs::remove_file(&path)?;
    Ok(())
}
