// Eigenfrequency trajectories as the Rabi coupling grows, with and without
// environment-induced coupling.
//
// Without it the two eigenfrequencies meet at the exceptional point
// Ω = |γ₁ − γ₂|/2; with a square-law reservoir they never coalesce.

use easc::model::{EiMode, ReservoirSpectrum, SystemConfig};
use easc::regimes::transition_coupling;
use easc::spectral::{build_generator, eigendecompose, trajectory};

pub fn run_example() -> easc::Result<()> {
    let plain = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::Flat).with_ei_mode(EiMode::Off);
    let square = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::power_law(2.0));

    for (name, cfg) in [("no EI coupling", &plain), ("square-law reservoir", &square)] {
        println!("{name}");
        println!("{:>8} {:>12} {:>12} {:>12} {:>12}", "omega", "re w1", "im w1", "re w2", "im w2");
        for p in trajectory(cfg, (0.0, 0.1), 21)? {
            println!(
                "{:>8.4} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
                p.coupling, p.w[0].re, p.w[0].im, p.w[1].re, p.w[1].im
            );
        }
        let om = transition_coupling(cfg, (0.0, 0.1))?;
        let d = eigendecompose(&build_generator(&cfg.with_coupling(om))?);
        println!("closest approach at omega = {om:.10}, delta = {:.3e}\n", d.delta);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
