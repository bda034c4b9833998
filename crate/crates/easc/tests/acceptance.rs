use std::path::Path;
use std::time::{Duration, Instant};

use easc::dynamics::{build_liouvillian, compare_amplitude_vs_master, evolve_density_matrix, excited_first, Integration};
use easc::microscopic::{
    discretize_reservoir, envelopes, evolve_microscopic, fit_decay_rate, run_oracle, MicroRun, MicroState,
    MicroSystem, OracleOptions,
};
use easc::model::{
    relative_density, DiagonalMode, EiMode, ReservoirSpectrum, SystemConfig, TabulatedSpectrum,
};
use easc::regimes::{critical_coupling, phase_diagram, real_splitting_curve, transition_coupling, CriticalCouplingOptions, Regime};
use easc::spectral::{build_generator, closed_form_eigenfrequencies, eigen_distance, eigendecompose, linspace, trajectory};
use easc::usc::{closed_form_usc, usc_eigenfrequencies};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let pass = out.pass && took <= budget;
    println!(
        "{} {id:>2} {name}: {} [{:.2}s of {:.0}s]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        budget.as_secs_f64()
    );
    pass
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn exceptional_point() -> Outcome {
    let cfg = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::Flat).with_ei_mode(EiMode::Off);
    let om = transition_coupling(&cfg, (0.0, 0.1)).unwrap();
    let delta = eigendecompose(&build_generator(&cfg.with_coupling(0.005)).unwrap()).delta;
    let path = trajectory(&cfg, (0.0, 0.1), 2001).unwrap();
    let mut below: f64 = 0.0;
    let mut above: f64 = 0.0;
    for p in &path {
        if p.coupling < 0.005 {
            below = below.max((p.w[0].re - p.w[1].re).abs());
        } else if p.coupling > 0.005 {
            above = above.max((p.w[0].im - p.w[1].im).abs());
        }
    }
    Outcome {
        pass: (om - 0.005).abs() < 1e-8 && delta < 1e-8 && below <= 1e-8 && above <= 1e-8,
        detail: format!(
            "coalescence at {om:.12}, delta {delta:.1e}, max re-splitting below {below:.1e}, max im gap above {above:.1e}"
        ),
    }
}

fn no_coalescence() -> Outcome {
    let cfg = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::power_law(2.0));
    let dense = linspace(1e-6, 0.1, 100_001)
        .into_iter()
        .map(|om| eigen_distance(&build_generator(&cfg.with_coupling(om)).unwrap().m))
        .fold(f64::INFINITY, f64::min);
    let om = transition_coupling(&cfg, (0.0, 0.1)).unwrap();
    let at_min = eigen_distance(&build_generator(&cfg.with_coupling(om)).unwrap().m);
    let min = dense.min(at_min);
    Outcome {
        pass: min > 1e-10,
        detail: format!("min delta {min:.4e} (argmin omega {om:.6})"),
    }
}

fn closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in linspace(0.0, 4.0, 20) {
        for g1 in linspace(1e-3f64.ln(), 0.1f64.ln(), 20).into_iter().map(f64::exp) {
            for om in linspace(0.005, 0.1, 20) {
                let cfg = SystemConfig::new(om, g1, g1 / 2.0, ReservoirSpectrum::power_law(n))
                    .with_ei_mode(EiMode::GradientApprox)
                    .with_diagonal_mode(DiagonalMode::RateAtOmega0);
                let w = closed_form_eigenfrequencies(&cfg).unwrap();
                let d = eigendecompose(&build_generator(&cfg).unwrap()).eigenfrequencies;
                let same = (w[0] - d[0]).norm().max((w[1] - d[1]).norm());
                let swapped = (w[0] - d[1]).norm().max((w[1] - d[0]).norm());
                worst = worst.max(same.min(swapped));
            }
        }
    }
    Outcome {
        pass: worst <= 1e-10,
        detail: format!("8000 points, max deviation {worst:.2e}"),
    }
}

fn liouvillian_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let spectrum = match rng.gen_range(0..3) {
            0 => ReservoirSpectrum::Flat,
            _ => ReservoirSpectrum::power_law(rng.gen_range(-2.0..5.0)),
        };
        let ei = [EiMode::Off, EiMode::ExactDifference, EiMode::GradientApprox][rng.gen_range(0..3)];
        let diag = [DiagonalMode::AveragedRates, DiagonalMode::RateAtOmega0][rng.gen_range(0..2)];
        let cfg = SystemConfig::new(
            rng.gen_range(0.0..0.3),
            rng.gen_range(0.0..0.1),
            rng.gen_range(0.0..0.1),
            spectrum,
        )
        .with_ei_mode(ei)
        .with_diagonal_mode(diag);
        let induced = build_liouvillian(&cfg).unwrap().induced_amplitude_generator();
        let m = build_generator(&cfg).unwrap().m;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((induced[i][j] - m[i][j]).norm());
            }
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("50 seeded configs, max entry deviation {worst:.2e}"),
    }
}

fn interaction_dynamics() -> Outcome {
    let integ = Integration::new(2000.0, 0.01);
    let square = SystemConfig::new(0.08, 0.001, 0.002, ReservoirSpectrum::power_law(2.0));
    let (report, _, _) = compare_amplitude_vs_master(&square, &integ).unwrap();
    let flat = SystemConfig::new(0.08, 0.001, 0.002, ReservoirSpectrum::Flat);
    let master = evolve_density_matrix(&flat, &excited_first(), &integ).unwrap();
    let flat_x = master.observables.iter().map(|o| o.x.abs()).fold(0.0, f64::max);
    let flat_coh = master.observables.iter().map(|o| o.re_rho_1001.abs()).fold(0.0, f64::max);
    Outcome {
        pass: report.max_x_deviation <= 1e-6 && report.max_abs_x_master > 0.01 && flat_x <= 1e-10 && flat_coh <= 1e-10,
        detail: format!(
            "square law: max |X| {:.4}, amplitude-master gap {:.1e}; flat: max |X| {flat_x:.1e}, max |Re rho_10,01| {flat_coh:.1e}",
            report.max_abs_x_master, report.max_x_deviation
        ),
    }
}

fn phase_boundary() -> Outcome {
    let template = SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::power_law(2.0));
    let gammas: Vec<f64> = linspace(1e-3f64.ln(), 10f64.ln(), 201).into_iter().map(f64::exp).collect();
    let omegas: Vec<f64> = (1..=201).map(|i| 0.1 * i as f64 / 201.0).collect();
    let pd = phase_diagram(&template, &gammas, 2.0, &omegas).unwrap();
    let worst = pd
        .boundary
        .iter()
        .filter(|b| b.gamma1 <= 0.02)
        .map(|b| (b.omega - b.gamma1 / 2.0).abs() / (b.gamma1 / 2.0))
        .fold(0.0, f64::max);
    let cp = pd.omega_cp.unwrap_or(f64::NAN);
    Outcome {
        pass: worst <= 0.05 && pd.converged && cp.is_finite() && cp > 0.0,
        detail: format!(
            "max relative gap to |g1-g2|/2 for g1<=0.02: {worst:.4}; omega_cp {cp:.5}, saturated {}",
            pd.converged
        ),
    }
}

fn stopped_light() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/stopped_light.csv");
    let spectrum = ReservoirSpectrum::Tabulated(TabulatedSpectrum::from_csv_path(&path).unwrap());
    let h = 1e-7;
    let slope = (relative_density(&spectrum, 1.0 + h).unwrap() - relative_density(&spectrum, 1.0 - h).unwrap()) / (2.0 * h);
    let template = SystemConfig::new(0.0, 1.0, 2.0, spectrum);
    let opts = CriticalCouplingOptions {
        gamma1_min: 1e-8,
        gamma1_max: 1e-2,
        ladder_ratio: 1.2,
        band: (0.0, 4e-4),
        tol: 0.01,
    };
    let cp = critical_coupling(&template, 2.0, &opts).map(|c| c.omega_cp).unwrap_or(f64::NAN);
    Outcome {
        pass: (slope / 1000.0 - 1.0).abs() < 0.01 && (1e-4 / 3.0..=3e-4).contains(&cp),
        detail: format!("density slope {slope:.2}, omega_cp {cp:.4e}"),
    }
}

fn microscopic_oracle() -> Outcome {
    let points: Vec<(f64, f64)> = [0.0, 1.0, 2.0]
        .iter()
        .flat_map(|&n| [0.01, 0.03, 0.05].map(|om| (n, om)))
        .collect();
    let reports: Vec<_> = points
        .par_iter()
        .map(|&(n, om)| {
            let cfg = SystemConfig::new(om, 0.01, 0.02, ReservoirSpectrum::power_law(n));
            run_oracle(&cfg, &OracleOptions::default())
        })
        .collect();
    let mut ok = 0;
    let mut worst: f64 = 0.0;
    for r in reports.iter().flatten() {
        if r.within_tolerance() {
            ok += 1;
        }
        worst = worst.max(r.relative_errors.iter().flatten().copied().fold(0.0, f64::max));
    }

    let opts = OracleOptions::default();
    let res = discretize_reservoir(&ReservoirSpectrum::Flat, 0.01, opts.band, opts.modes).unwrap();
    let system = MicroSystem::new(0.0, [res.clone(), res]).renormalized();
    let run = MicroRun {
        t_end: 400.0,
        dt: opts.dt,
        sample_every: opts.sample_every,
    };
    let series = evolve_microscopic(&system, &MicroState::displaced([1.0, 0.0], &system.reservoirs), &run).unwrap();
    let (t, a) = envelopes(&series, 1.0, opts.cutoff).unwrap();
    let a1: Vec<Complex64> = a.iter().map(|x| x[0]).collect();
    let rate = fit_decay_rate(&t, &a1, 30.0, 300.0);
    let rate_err = (rate / 0.01 - 1.0).abs();
    Outcome {
        pass: ok == points.len() && rate_err <= 0.02,
        detail: format!(
            "{ok}/{} grid points within tolerance (max relative error {worst:.3}); decay rate {rate:.5} vs 0.01 ({:.2}%)",
            points.len(),
            rate_err * 100.0
        ),
    }
}

fn ultra_strong() -> Outcome {
    let mut worst: f64 = 0.0;
    for om in linspace(0.0, 0.3, 301) {
        let s = usc_eigenfrequencies(1.0, om).unwrap();
        worst = worst.max((s.numeric[0] - s.full[0]).abs()).max((s.numeric[1] - s.full[1]).abs());
    }
    let pts: Vec<(f64, f64)> = linspace(1e-3f64.ln(), 3e-2f64.ln(), 30)
        .into_iter()
        .map(|l| {
            let om = l.exp();
            let res = closed_form_usc(1.0, om)[0] - (1.0 + om + 1.5 * om * om);
            (l, res.abs().ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    Outcome {
        pass: worst <= 1e-10 && (slope - 3.0).abs() <= 0.2,
        detail: format!("max eigenvalue gap {worst:.1e}, expansion residual slope {slope:.3}"),
    }
}

fn figure_properties() -> Outcome {
    let opts = CriticalCouplingOptions::default();
    let cps: Vec<f64> = (1..=4)
        .map(|n| {
            let t = SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::power_law(n as f64));
            critical_coupling(&t, 2.0, &opts).map(|c| c.omega_cp).unwrap_or(f64::NAN)
        })
        .collect();
    let monotone = cps.windows(2).all(|w| w[1] <= w[0]) && cps.iter().all(|c| c.is_finite());

    let gammas: Vec<f64> = linspace(1e-3f64.ln(), 10f64.ln(), 41).into_iter().map(f64::exp).collect();
    let omegas: Vec<f64> = (1..=41).map(|i| 0.1 * i as f64 / 41.0).collect();
    let flat = phase_diagram(&SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::Flat), &gammas, 2.0, &omegas).unwrap();
    let flat_wc_zero = flat.cells.iter().flatten().filter(|c| c.regime == Regime::Weak).all(|c| {
        c.interaction_energy_state1 == 0.0 && c.interaction_energy_state2 == 0.0
    });
    let wc_cells = flat.cells.iter().flatten().filter(|c| c.regime == Regime::Weak).count();
    let square = phase_diagram(
        &SystemConfig::new(0.0, 1.0, 2.0, ReservoirSpectrum::power_law(2.0)),
        &gammas,
        2.0,
        &omegas,
    )
    .unwrap();
    let square_nonzero = square
        .cells
        .iter()
        .flatten()
        .all(|c| c.interaction_energy_state1 != 0.0 && c.interaction_energy_state2 != 0.0);

    let a = real_splitting_curve(&SystemConfig::new(0.0, 0.01, 0.02, ReservoirSpectrum::Flat), (0.0, 0.1), 2001).unwrap();
    let b = real_splitting_curve(&SystemConfig::new(0.0, 0.01, 0.02, ReservoirSpectrum::power_law(2.0)), (0.0, 0.1), 2001)
        .unwrap();
    let exceeds = a.iter().zip(&b).filter(|(p, _)| p.0 > 0.0).all(|(p, q)| q.1 > p.1);
    Outcome {
        pass: monotone && flat_wc_zero && wc_cells > 0 && square_nonzero && exceeds,
        detail: format!(
            "omega_cp(n=1..4) = {:.4?}; flat WC cells zero: {flat_wc_zero} ({wc_cells} cells); square-law map nonzero: {square_nonzero}; square-law splitting exceeds flat: {exceeds}",
            cps
        ),
    }
}

#[test]
fn acceptance() {
    let results = [
        check(1, "exceptional point without EI coupling", secs(1), exceptional_point),
        check(2, "no coalescence with square-law reservoir", secs(1), no_coalescence),
        check(3, "closed form vs numeric eigenfrequencies", secs(5), closed_form),
        check(4, "Liouvillian-generator identity", secs(5), liouvillian_identity),
        check(5, "interaction dynamics, master vs amplitudes", secs(30), interaction_dynamics),
        check(6, "phase-diagram boundary", secs(60), phase_boundary),
        check(7, "stopped-light critical coupling", secs(60), stopped_light),
        check(8, "microscopic reservoir oracle", secs(600), microscopic_oracle),
        check(9, "ultra-strong coupling spectrum", secs(1), ultra_strong),
        check(10, "critical coupling, energy maps and splitting", secs(60), figure_properties),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
