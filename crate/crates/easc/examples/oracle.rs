// Checks the effective generator against a classical simulation of both
// oscillators coupled to 2000 explicit reservoir modes each.

use easc::microscopic::{run_oracle, OracleOptions};
use easc::model::{ReservoirSpectrum, SystemConfig};

pub fn run_example() -> easc::Result<()> {
    let cfg = SystemConfig::new(0.05, 0.02, 0.02, ReservoirSpectrum::power_law(2.0));
    let r = run_oracle(&cfg, &OracleOptions::default())?;
    println!("recurrence time {:.1}, fit residual {:.2e}", r.t_rec, r.residual);
    for i in 0..2 {
        for j in 0..2 {
            let (f, p) = (r.fitted_matrix[i][j], r.predicted_matrix[i][j]);
            println!(
                "m[{i}][{j}]  fitted {:+.6} {:+.6}i  predicted {:+.6} {:+.6}i  rel err {:.3}",
                f.re, f.im, p.re, p.im, r.relative_errors[i][j]
            );
        }
    }
    println!("within tolerance: {}", r.within_tolerance());
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
