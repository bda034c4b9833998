use easc::dynamics::build_liouvillian;
use easc::microscopic::demodulate;
use easc::model::{rate_at, EiMode, Oscillator, ReservoirSpectrum, SystemConfig, TabulatedSpectrum};
use easc::regimes::transition_coupling;
use easc::spectral::{build_generator, ei_coupling, eigendecompose};
use easc::usc::{build_usc_generator, usc_eigenfrequencies};
use nalgebra::Matrix3;
use num_complex::Complex64;
use proptest::prelude::*;

fn config(omega: f64, g1: f64, g2: f64, n: f64) -> SystemConfig {
    SystemConfig::new(omega, g1, g2, ReservoirSpectrum::power_law(n))
}

fn norm2(m: &[[Complex64; 2]; 2]) -> f64 {
    m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rates_are_non_negative(g in 0.0..1.0f64, n in -4.0..6.0f64, w in 0.05..3.0f64) {
        prop_assert!(rate_at(g, &ReservoirSpectrum::power_law(n), w).unwrap() >= 0.0);
    }

    #[test]
    fn zero_exponent_is_flat(om in 0.0..0.3f64, g1 in 0.0..0.1f64, g2 in 0.0..0.1f64) {
        let a = build_generator(&config(om, g1, g2, 0.0)).unwrap();
        let b = build_generator(&SystemConfig::new(om, g1, g2, ReservoirSpectrum::Flat)).unwrap();
        prop_assert_eq!(a.m, b.m);
    }

    #[test]
    fn eigenpairs_solve_the_generator(
        om in 0.0..0.3f64, g1 in 0.0..0.1f64, g2 in 0.0..0.1f64, n in 0.0..4.0f64,
    ) {
        let gen = build_generator(&config(om, g1, g2, n)).unwrap();
        let d = eigendecompose(&gen);
        let scale = norm2(&gen.m);
        for k in 0..2 {
            let v = d.eigenvectors[k];
            let lam = Complex64::new(0.0, -1.0) * d.eigenfrequencies[k];
            for i in 0..2 {
                let r = gen.m[i][0] * v[0] + gen.m[i][1] * v[1] - lam * v[i];
                prop_assert!(r.norm() <= 1e-12 * scale, "residual {} at k={k}", r.norm());
            }
        }
    }

    #[test]
    fn eigenfrequencies_sum_to_trace(
        om in 0.0..0.3f64, g1 in 0.0..0.1f64, g2 in 0.0..0.1f64, n in -2.0..4.0f64,
    ) {
        let gen = build_generator(&config(om, g1, g2, n)).unwrap();
        let d = eigendecompose(&gen);
        let tr = Complex64::new(0.0, 1.0) * (gen.m[0][0] + gen.m[1][1]);
        prop_assert!((d.eigenfrequencies[0] + d.eigenfrequencies[1] - tr).norm() <= 1e-14);
    }

    #[test]
    fn ei_coupling_follows_density_slope(om in 1e-3..0.3f64, g in 1e-4..0.1f64, n in 0.1..5.0f64) {
        let up = ei_coupling(&config(om, g, g, n), Oscillator::First).unwrap();
        let down = ei_coupling(&config(om, g, g, -n), Oscillator::First).unwrap();
        prop_assert!(up > 0.0);
        prop_assert!(down < 0.0);
    }

    #[test]
    fn gradient_error_is_cubic(om in 0.01..0.05f64, g in 1e-3..0.1f64, n in 2.5..6.0f64) {
        let err = |w: f64| {
            let c = config(w, g, g, n);
            let exact = ei_coupling(&c, Oscillator::First).unwrap();
            let grad = ei_coupling(&c.with_ei_mode(EiMode::GradientApprox), Oscillator::First).unwrap();
            exact - grad
        };
        let ratio = err(om) / err(om / 2.0);
        prop_assert!((ratio - 8.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn liouvillian_preserves_trace(
        om in 0.0..0.3f64, g1 in 0.0..0.1f64, g2 in 0.0..0.1f64, n in 0.0..4.0f64,
        re in prop::array::uniform9(-1.0..1.0f64), im in prop::array::uniform9(-1.0..1.0f64),
    ) {
        let l = build_liouvillian(&config(om, g1, g2, n)).unwrap();
        let a = Matrix3::from_fn(|i, j| Complex64::new(re[3 * i + j], im[3 * i + j]));
        let rho = a * a.adjoint();
        let rho = rho / rho.trace();
        prop_assert!(l.apply(&rho).trace().norm() <= 1e-14);
    }

    #[test]
    fn liouvillian_reproduces_generator(
        om in 0.0..0.3f64, g1 in 0.0..0.1f64, g2 in 0.0..0.1f64, n in -2.0..4.0f64,
    ) {
        let cfg = config(om, g1, g2, n);
        let induced = build_liouvillian(&cfg).unwrap().induced_amplitude_generator();
        let m = build_generator(&cfg).unwrap().m;
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((induced[i][j] - m[i][j]).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn monotone_samples_give_monotone_density(
        steps in prop::collection::vec((0.01..0.2f64, 0.0..2.0f64), 3..12),
    ) {
        let mut w = 0.5;
        let mut r = 0.1;
        let mut samples = Vec::new();
        for (dw, dr) in steps {
            samples.push((w, r));
            w += dw;
            r += dr;
        }
        samples.push((w.max(1.6), r));
        let s = ReservoirSpectrum::Tabulated(TabulatedSpectrum::new(samples.clone()).unwrap());
        let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=400 {
            let x = (lo + (hi - lo) * k as f64 / 400.0).min(hi);
            let v = rate_at(1.0, &s, x).unwrap();
            prop_assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn demodulation_is_linear(a in -2.0..2.0f64, b in -2.0..2.0f64, f1 in 0.9..1.1f64, f2 in 0.9..1.1f64) {
        let t: Vec<f64> = (0..3000).map(|k| 0.24 * k as f64).collect();
        let x: Vec<f64> = t.iter().map(|s| (f1 * s).cos()).collect();
        let y: Vec<f64> = t.iter().map(|s| (f2 * s + 0.3).sin()).collect();
        let z: Vec<f64> = x.iter().zip(&y).map(|(p, q)| a * p + b * q).collect();
        let (_, dx) = demodulate(&t, &x, 1.0, 0.1).unwrap();
        let (_, dy) = demodulate(&t, &y, 1.0, 0.1).unwrap();
        let (_, dz) = demodulate(&t, &z, 1.0, 0.1).unwrap();
        for k in 0..dz.len() {
            prop_assert!((dz[k] - (dx[k] * a + dy[k] * b)).norm() <= 1e-10);
        }
    }

    #[test]
    fn usc_numeric_matches_closed_form(om in 0.0..0.3f64) {
        let s = usc_eigenfrequencies(1.0, om).unwrap();
        prop_assert!((s.numeric[0] - s.full[0]).abs() <= 1e-10);
        prop_assert!((s.numeric[1] - s.full[1]).abs() <= 1e-10);
        prop_assert_eq!(build_usc_generator(1.0, om).unwrap().symmetry_defect(), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exceptional_point_without_ei_coupling(g1 in 1e-3..0.1f64, g2 in 1e-3..0.1f64) {
        prop_assume!((g1 - g2).abs() > 1e-6);
        let cfg = SystemConfig::new(0.0, g1, g2, ReservoirSpectrum::power_law(2.0)).with_ei_mode(EiMode::Off);
        let om = transition_coupling(&cfg, (0.0, 0.1)).unwrap();
        prop_assert!((om - (g1 - g2).abs() / 2.0).abs() <= 1e-10, "{om} vs {}", (g1 - g2).abs() / 2.0);
    }
}
