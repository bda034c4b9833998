// Weak/strong coupling map over (γ₁, Ω) for a square-law reservoir with
// γ₂ = 2γ₁, drawn as text. `.` is weak coupling, `#` strong coupling.

use easc::model::{ReservoirSpectrum, SystemConfig};
use easc::regimes::{phase_diagram, Regime};

pub fn run_example() -> easc::Result<()> {
    let template = SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::power_law(2.0));
    let gammas: Vec<f64> = (0..25).map(|i| 1e-3 * 10f64.powf(i as f64 / 6.0)).collect();
    let omegas: Vec<f64> = (1..=60).map(|i| 0.1 * i as f64 / 60.0).collect();
    let pd = phase_diagram(&template, &gammas, 2.0, &omegas)?;

    println!("gamma1      boundary    map (omega 0 -> 0.1)");
    for ((g, b), row) in pd.gamma1_grid.iter().zip(&pd.boundary).zip(&pd.cells) {
        let map: String = row
            .iter()
            .map(|c| if c.regime == Regime::Strong { '#' } else { '.' })
            .collect();
        let edge = if b.flagged.is_some() { "edge" } else { "" };
        println!("{g:<10.3e}  {:<10.5} {map} {edge}", b.omega);
    }
    match pd.omega_cp {
        Some(cp) => println!("critical coupling {cp:.5} (saturated: {})", pd.converged),
        None => println!("critical coupling unresolved on this grid"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
