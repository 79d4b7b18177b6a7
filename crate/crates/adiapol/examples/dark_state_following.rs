//! Watch the dark-superposition diagnostic sigma(z) during a Case A run.
//!
//! sigma projects the Stokes vector onto the instantaneous torque
//! direction within the active plane; perfect adiabatic following keeps
//! it pinned at its launch value, and its excursion measures the ripple
//! amplitude. Doubling the pulse area visibly shrinks the ripples.
//!
//! Run with: cargo run --example dark_state_following

use adiapol::{run_protocol, IntegratorConfig, ProtocolKind, ProtocolSpec, Result};

fn main() -> Result<()> {
    let config = IntegratorConfig::rotor(100_000);
    println!("dark-superposition excursion max |sigma(z) - sigma(0)|, Case A");
    println!("{:>10} {:>16}", "omega0L", "max excursion");
    for omega0_l in [20.0, 40.0, 100.0] {
        let spec = ProtocolSpec::new(ProtocolKind::CaseARotation, omega0_l, 1.0);
        let run = run_protocol(&spec, &config)?;
        println!(
            "{:>10} {:>16.8}",
            omega0_l,
            run.trace.max_sigma_excursion().expect("sigma recorded")
        );
    }

    println!();
    println!("sigma along the trace at omega0L = 20 (coarse view):");
    let spec = ProtocolSpec::new(ProtocolKind::CaseARotation, 20.0, 1.0);
    let run = run_protocol(&spec, &config)?;
    let sigma = run.trace.sigma.as_ref().expect("sigma recorded");
    println!("{:>6} {:>12}", "z/L", "sigma");
    for i in (0..run.trace.len()).step_by((run.trace.len() - 1) / 10) {
        println!("{:>6.2} {:>12.6}", run.trace.z[i], sigma[i]);
    }
    Ok(())
}
