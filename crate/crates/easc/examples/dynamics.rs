// One excitation starts in the first oscillator. The amplitude equations and
// the zero-temperature master equation are integrated side by side and the
// interaction observable X = ⟨a₁†a₂ + a₁a₂†⟩ is compared.

use easc::dynamics::{compare_amplitude_vs_master, Integration};
use easc::model::{ReservoirSpectrum, SystemConfig};

pub fn run_example() -> easc::Result<()> {
    let integ = Integration {
        store_every: 100,
        ..Integration::new(400.0, 0.01)
    };
    for (name, spectrum) in [("square law", ReservoirSpectrum::power_law(2.0)), ("flat", ReservoirSpectrum::Flat)] {
        let cfg = SystemConfig::new(0.08, 0.001, 0.002, spectrum);
        let (report, amps, master) = compare_amplitude_vs_master(&cfg, &integ)?;
        println!("{name}: max |X| = {:.4e}, amplitude vs master max deviation = {:.2e}",
            report.max_abs_x_master, report.max_x_deviation);
        for (a, o) in amps.iter().zip(&master.observables).step_by(40) {
            println!("  t = {:>6.1}  E1 = {:.5}  E2 = {:.5}  X = {:+.3e}", o.t, o.e1, o.e2, a.x());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
