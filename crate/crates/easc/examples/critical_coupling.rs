// Critical coupling Ω_CP for power-law reservoirs ρ ∝ ωⁿ, and whether it lies
// below the conventional ultra-strong threshold 0.1ω₀.

use easc::model::{ReservoirSpectrum, SystemConfig};
use easc::regimes::{critical_coupling, CriticalCouplingOptions};
use easc::usc::transition_order;

pub fn run_example() -> easc::Result<()> {
    let opts = CriticalCouplingOptions::default();
    println!("{:>3} {:>12} {:>14}  order", "n", "omega_cp", "gamma1 at sup");
    for n in 1..=4 {
        let template = SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::power_law(n as f64));
        let cc = critical_coupling(&template, 2.0, &opts)?;
        println!(
            "{n:>3} {:>12.6} {:>14.4e}  {:?}",
            cc.omega_cp,
            cc.gamma1_at_sup,
            transition_order(cc.omega_cp, 1.0)
        );
    }
    let flat = SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::Flat);
    println!("flat reservoir: {}", critical_coupling(&flat, 2.0, &opts).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
