// How far the counter-rotating and diamagnetic terms move the normal modes
// away from the rotating-wave picture.

use easc::usc::{usc_deviation_report, USC_THRESHOLD};

pub fn run_example() -> easc::Result<()> {
    let grid: Vec<f64> = (0..=12).map(|i| 0.025 * i as f64).collect();
    println!("{:>6} {:>10} {:>10} {:>12} {:>10}", "omega", "w_full_s", "w_full_a", "shift/2omega", "overlap_s");
    for d in usc_deviation_report(1.0, &grid)? {
        let mark = if d.coupling >= USC_THRESHOLD { "  usc" } else { "" };
        println!(
            "{:>6.3} {:>10.6} {:>10.6} {:>12.5} {:>10.7}{mark}",
            d.coupling, d.spectrum.full[0], d.spectrum.full[1], d.relative_shift[0], d.overlap[0]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> easc::Result<()> {
    run_example()
}
