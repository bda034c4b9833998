// Real part of the eigenfrequency splitting against Ω. A flat reservoir keeps
// it at zero below the exceptional point; a square-law reservoir does not.

use easc::model::{ReservoirSpectrum, SystemConfig};
use easc::regimes::real_splitting_curve;

pub fn run_example() -> easc::Result<()> {
    let flat = SystemConfig::new(0.0, 0.01, 0.02, ReservoirSpectrum::Flat);
    let square = SystemConfig::new(0.0, 0.01, 0.02, ReservoirSpectrum::power_law(2.0));
    let a = real_splitting_curve(&flat, (0.0, 0.02), 21)?;
    let b = real_splitting_curve(&square, (0.0, 0.02), 21)?;
    println!("{:>7} {:>12} {:>12}", "omega", "flat", "square law");
    for ((om, s1), (_, s2)) in a.iter().zip(&b) {
        println!("{om:>7.4} {s1:>12.4e} {s2:>12.4e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
