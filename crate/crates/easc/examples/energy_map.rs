// Interaction energy Ω·2Re(a₁*a₂) of the first eigenstate over (γ₁, Ω) with
// γ₂ = 2γ₁, for a flat and a square-law reservoir.

use easc::model::{ReservoirSpectrum, SystemConfig};
use easc::regimes::phase_diagram;

pub fn run_example() -> easc::Result<()> {
    let gammas: Vec<f64> = (0..7).map(|i| 1e-3 * 10f64.powf(i as f64 / 2.0)).collect();
    let omegas: Vec<f64> = (1..=8).map(|i| 0.0125 * i as f64).collect();
    for (name, spectrum) in [("flat", ReservoirSpectrum::Flat), ("square law", ReservoirSpectrum::power_law(2.0))] {
        let pd = phase_diagram(&SystemConfig::new(0.0, 1.0, 2.0, spectrum), &gammas, 2.0, &omegas)?;
        println!("{name}");
        print!("{:>10}", "gamma1");
        for w in &omegas {
            print!(" {w:>10.4}");
        }
        println!();
        for (g, row) in gammas.iter().zip(&pd.cells) {
            print!("{g:>10.2e}");
            for c in row {
                print!(" {:>10.2e}", c.interaction_energy_state1);
            }
            println!();
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
