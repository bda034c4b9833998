// A tabulated density of states with a sharp band edge just above ω₀
// (slope 10³ at ω₀) pushes the critical coupling down to ~1e−4 ω₀.

use std::path::Path;

use easc::model::{relative_density, ReservoirSpectrum, SystemConfig, TabulatedSpectrum};
use easc::regimes::{critical_coupling, CriticalCouplingOptions};

pub fn run_example() -> easc::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/stopped_light.csv");
    let spectrum = ReservoirSpectrum::Tabulated(TabulatedSpectrum::from_csv_path(&path)?);
    let h = 1e-7;
    let slope = (relative_density(&spectrum, 1.0 + h)? - relative_density(&spectrum, 1.0 - h)?) / (2.0 * h);
    println!("log-derivative of the density at omega0: {slope:.1}");

    let template = SystemConfig::new(0.0, 1.0, 2.0, spectrum);
    let opts = CriticalCouplingOptions {
        gamma1_min: 1e-8,
        gamma1_max: 1e-2,
        ladder_ratio: 1.2,
        band: (0.0, 4e-4),
        tol: 0.01,
    };
    let cc = critical_coupling(&template, 2.0, &opts)?;
    println!("omega_cp = {:.4e} at gamma1 = {:.3e}", cc.omega_cp, cc.gamma1_at_sup);
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
