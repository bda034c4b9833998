//! Brute-force oracle: two classical oscillators coupled to explicitly
//! discretized reservoirs, integrated with velocity Verlet, then reduced to a
//! 2×2 amplitude generator by demodulation and a propagator fit.
//!
//! Coordinates obey
//!   ẍⱼ = −ω₀²xⱼ − κ²x_other + Σₖ gₖ yₖ,   ÿₖ = −ωₖ²yₖ + gₖ xⱼ,
//! with κ² = 2Ωω₀. Mode couplings are calibrated so the Markovian decay rate
//! of the amplitude at frequency ω equals γ·r(ω), which requires
//! gₖ² = 4ωₖ²Δω γ r(ωₖ)/π.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{relative_density, ReservoirSpectrum, SystemConfig};
use crate::spectral::{build_generator, Matrix2};

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedReservoir {
    pub mode_frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
    pub target_gamma: f64,
    pub band: (f64, f64),
    pub delta_omega: f64,
}

impl DiscretizedReservoir {
    /// Poincaré recurrence time 2π/Δω.
    pub fn recurrence_time(&self) -> f64 {
        2.0 * PI / self.delta_omega
    }

    /// Band must hold [ω₀−Ω, ω₀+Ω] with margin 10·max(γ, Ω) on both sides.
    pub fn check_margin(&self, coupling: f64) -> Result<()> {
        let margin = 10.0 * self.target_gamma.max(coupling);
        let (need_lo, need_hi) = (1.0 - coupling - margin, 1.0 + coupling + margin);
        if self.band.0 > need_lo || self.band.1 < need_hi {
            return Err(Error::BandTooNarrow {
                lo: self.band.0,
                hi: self.band.1,
                need_lo,
                need_hi,
            });
        }
        Ok(())
    }
}

/// Evenly spaced midpoint modes over `band` (ω₀ units), shape carried by gₖ².
pub fn discretize_reservoir(
    spectrum: &ReservoirSpectrum,
    target_gamma: f64,
    band: (f64, f64),
    modes: usize,
) -> Result<DiscretizedReservoir> {
    if modes < 500 {
        return Err(Error::InvalidConfig(format!("need at least 500 modes, got {modes}")));
    }
    if !(target_gamma >= 0.0) {
        return Err(Error::InvalidConfig("target rate must be non-negative".into()));
    }
    let (lo, hi) = band;
    if !(lo > 0.0 && lo < 1.0 && hi > 1.0) {
        return Err(Error::BandTooNarrow {
            lo,
            hi,
            need_lo: 1.0,
            need_hi: 1.0,
        });
    }
    let dw = (hi - lo) / modes as f64;
    let mut freqs = Vec::with_capacity(modes);
    let mut couplings = Vec::with_capacity(modes);
    for k in 0..modes {
        let w = lo + (k as f64 + 0.5) * dw;
        let r = relative_density(spectrum, w)?;
        freqs.push(w);
        couplings.push((4.0 * w * w * dw * target_gamma * r / PI).sqrt());
    }
    Ok(DiscretizedReservoir {
        mode_frequencies: freqs,
        couplings,
        target_gamma,
        band,
        delta_omega: dw,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicroState {
    pub x: [f64; 2],
    pub v: [f64; 2],
    pub y: [Vec<f64>; 2],
    pub vy: [Vec<f64>; 2],
}

impl MicroState {
    /// Oscillators displaced by `x`, at rest; reservoirs at rest.
    pub fn displaced(x: [f64; 2], reservoirs: &[DiscretizedReservoir; 2]) -> Self {
        MicroState {
            x,
            v: [0.0; 2],
            y: [
                vec![0.0; reservoirs[0].mode_frequencies.len()],
                vec![0.0; reservoirs[1].mode_frequencies.len()],
            ],
            vy: [
                vec![0.0; reservoirs[0].mode_frequencies.len()],
                vec![0.0; reservoirs[1].mode_frequencies.len()],
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicroSeries {
    pub t: Vec<f64>,
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MicroRun {
    pub t_end: f64,
    pub dt: f64,
    pub sample_every: usize,
}

/// Oscillator pair with its two reservoirs, in ω₀ = 1 units.
#[derive(Debug, Clone, PartialEq)]
pub struct MicroSystem {
    pub coupling: f64,
    pub reservoirs: [DiscretizedReservoir; 2],
    /// Bare squared frequencies of the two oscillators.
    pub omega_sq: [f64; 2],
}

impl MicroSystem {
    pub fn new(coupling: f64, reservoirs: [DiscretizedReservoir; 2]) -> Self {
        MicroSystem {
            coupling,
            reservoirs,
            omega_sq: [1.0, 1.0],
        }
    }

    /// Raises the bare frequencies by the principal-value shift
    /// Re Σ(ω₀) = Σₖ gₖ²/(ωₖ² − ω₀²) so the dressed oscillators sit at ω₀.
    pub fn renormalized(mut self) -> Self {
        for j in 0..2 {
            let r = &self.reservoirs[j];
            let shift: f64 = r
                .mode_frequencies
                .iter()
                .zip(&r.couplings)
                .map(|(w, g)| g * g / (w * w - 1.0))
                .sum();
            self.omega_sq[j] = 1.0 + shift;
        }
        self
    }
}

/// Velocity-Verlet integration of the full system.
pub fn evolve_microscopic(system: &MicroSystem, initial: &MicroState, run: &MicroRun) -> Result<MicroSeries> {
    let coupling = system.coupling;
    let reservoirs = &system.reservoirs;
    let w_hi = reservoirs
        .iter()
        .map(|r| r.band.1)
        .fold((1.0 + 2.0 * coupling).sqrt(), f64::max);
    let max_dt = 0.02 / w_hi;
    if !(run.dt > 0.0) || run.dt > max_dt * (1.0 + 1e-12) {
        return Err(Error::StepTooLarge { dt: run.dt, max: max_dt });
    }
    for r in reservoirs {
        let t_rec = r.recurrence_time();
        if run.t_end > 0.5 * t_rec {
            return Err(Error::RecurrenceHorizonExceeded { t_end: run.t_end, t_rec });
        }
    }
    if run.sample_every == 0 {
        return Err(Error::InvalidConfig("sample_every must be at least 1".into()));
    }
    let kappa2 = 2.0 * coupling;
    let steps = (run.t_end / run.dt).round() as usize;
    let dt = run.dt;
    let h = dt / 2.0;
    let mut s = initial.clone();
    let w2: [Vec<f64>; 2] = [
        reservoirs[0].mode_frequencies.iter().map(|w| w * w).collect(),
        reservoirs[1].mode_frequencies.iter().map(|w| w * w).collect(),
    ];
    let bath_force = |y: &[f64], g: &[f64]| -> f64 { y.iter().zip(g).map(|(a, b)| a * b).sum() };
    let mut ax = [0.0; 2];
    for j in 0..2 {
        ax[j] = -system.omega_sq[j] * s.x[j] - kappa2 * s.x[1 - j] + bath_force(&s.y[j], &reservoirs[j].couplings);
    }
    let cap = steps / run.sample_every + 2;
    let mut out = MicroSeries {
        t: Vec::with_capacity(cap),
        x1: Vec::with_capacity(cap),
        x2: Vec::with_capacity(cap),
        v1: Vec::with_capacity(cap),
        v2: Vec::with_capacity(cap),
    };
    let record = |out: &mut MicroSeries, t: f64, s: &MicroState| {
        out.t.push(t);
        out.x1.push(s.x[0]);
        out.x2.push(s.x[1]);
        out.v1.push(s.v[0]);
        out.v2.push(s.v[1]);
    };
    record(&mut out, 0.0, &s);
    for n in 1..=steps {
        let x_old = s.x;
        for j in 0..2 {
            s.v[j] += h * ax[j];
            s.x[j] += dt * s.v[j];
        }
        let mut force = [0.0; 2];
        for j in 0..2 {
            let g = &reservoirs[j].couplings;
            let (y, vy) = (&mut s.y[j], &mut s.vy[j]);
            let (xo, xn) = (x_old[j], s.x[j]);
            let mut acc = 0.0;
            for k in 0..g.len() {
                let a_old = -w2[j][k] * y[k] + g[k] * xo;
                let vh = vy[k] + h * a_old;
                y[k] += dt * vh;
                let a_new = -w2[j][k] * y[k] + g[k] * xn;
                vy[k] = vh + h * a_new;
                acc += g[k] * y[k];
            }
            force[j] = acc;
        }
        for j in 0..2 {
            ax[j] = -system.omega_sq[j] * s.x[j] - kappa2 * s.x[1 - j] + force[j];
            s.v[j] += h * ax[j];
        }
        if n % run.sample_every == 0 {
            record(&mut out, n as f64 * dt, &s);
        }
    }
    Ok(out)
}

fn bessel_i0(x: f64) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    let q = x * x / 4.0;
    for k in 1..200 {
        term *= q / (k as f64 * k as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum
}

/// Zero-phase Kaiser-windowed sinc low-pass: flat below `pass_edge`, at least
/// 100 dB down above `stop_edge` (angular frequencies, sample spacing `ts`).
pub fn lowpass_taps(pass_edge: f64, stop_edge: f64, ts: f64) -> Vec<f64> {
    let atten: f64 = 100.0;
    let beta = 0.1102 * (atten - 8.7);
    let trans = (stop_edge - pass_edge) * ts;
    let half = (((atten - 8.0) / (2.285 * trans)) / 2.0).ceil() as i64;
    let wc = (pass_edge + stop_edge) / 2.0 * ts;
    let norm = bessel_i0(beta);
    let mut taps: Vec<f64> = (-half..=half)
        .map(|k| {
            let r = k as f64 / half as f64;
            let win = bessel_i0(beta * (1.0 - r * r).max(0.0).sqrt()) / norm;
            let sinc = if k == 0 { wc / PI } else { (wc * k as f64).sin() / (PI * k as f64) };
            sinc * win
        })
        .collect();
    let sum: f64 = taps.iter().sum();
    for t in taps.iter_mut() {
        *t /= sum;
    }
    taps
}

/// Complex envelope a(t) of x(t) = a e^{−iω₀t} + c.c.: multiply by e^{iω₀t}
/// and low-pass with passband edge `cutoff`. Filter edges are dropped.
pub fn demodulate(t: &[f64], x: &[f64], omega0: f64, cutoff: f64) -> Result<(Vec<f64>, Vec<Complex64>)> {
    if t.len() < 3 || t.len() != x.len() {
        return Err(Error::InvalidConfig("demodulation needs matching series".into()));
    }
    let ts = t[1] - t[0];
    if ts * 2.0 * omega0 >= PI {
        return Err(Error::InvalidConfig("sampling too coarse to separate the 2ω₀ image".into()));
    }
    let taps = lowpass_taps(cutoff, omega0, ts);
    let half = taps.len() / 2;
    if t.len() <= taps.len() {
        return Err(Error::InvalidConfig("series shorter than the demodulation filter".into()));
    }
    let z: Vec<Complex64> = t
        .iter()
        .zip(x)
        .map(|(&ti, &xi)| Complex64::from_polar(xi, omega0 * ti))
        .collect();
    let mut times = Vec::with_capacity(t.len() - 2 * half);
    let mut env = Vec::with_capacity(t.len() - 2 * half);
    for n in half..t.len() - half {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, h) in taps.iter().enumerate() {
            acc += z[n + k - half] * *h;
        }
        times.push(t[n]);
        env.push(acc);
    }
    Ok((times, env))
}

/// Demodulated (a₁, a₂) series of one run.
pub fn envelopes(series: &MicroSeries, omega0: f64, cutoff: f64) -> Result<(Vec<f64>, Vec<[Complex64; 2]>)> {
    let (t, a1) = demodulate(&series.t, &series.x1, omega0, cutoff)?;
    let (_, a2) = demodulate(&series.t, &series.x2, omega0, cutoff)?;
    Ok((t, a1.into_iter().zip(a2).map(|(p, q)| [p, q]).collect()))
}

fn inv2(m: &Matrix2) -> Option<Matrix2> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() == 0.0 {
        return None;
    }
    Some([
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ])
}

fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Principal matrix logarithm of a 2×2 matrix via Sylvester's formula.
pub fn log2x2(p: &Matrix2) -> Matrix2 {
    let tr_half = (p[0][0] + p[1][1]) / 2.0;
    let half = (p[0][0] - p[1][1]) / 2.0;
    let s = (half * half + p[0][1] * p[1][0]).sqrt();
    let (mu1, mu2) = (tr_half + s, tr_half - s);
    let one = Complex64::new(1.0, 0.0);
    let id = |c: Complex64| [[c, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), c]];
    if s.norm() < 1e-10 * tr_half.norm() {
        let l = tr_half.ln();
        let inv = one / tr_half;
        return [
            [l + (p[0][0] - tr_half) * inv, p[0][1] * inv],
            [p[1][0] * inv, l + (p[1][1] - tr_half) * inv],
        ];
    }
    let (l1, l2) = (mu1.ln(), mu2.ln());
    let a = (l1 - l2) / (mu1 - mu2);
    let b = (mu1 * l2 - mu2 * l1) / (mu1 - mu2);
    let base = id(b);
    [
        [a * p[0][0] + base[0][0], a * p[0][1]],
        [a * p[1][0], a * p[1][1] + base[1][1]],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitWindow {
    pub t_start: f64,
    pub length: f64,
    pub lag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorFit {
    pub m: Matrix2,
    pub propagator: Matrix2,
    pub residual: f64,
}

/// Least-squares propagator a(t+τ) = P a(t) over the window, pooled across
/// runs, then M = log(P)/τ − iω₀.
pub fn fit_generator(
    runs: &[(Vec<f64>, Vec<[Complex64; 2]>)],
    omega0: f64,
    window: &FitWindow,
) -> Result<GeneratorFit> {
    let zero = Complex64::new(0.0, 0.0);
    let mut aa = [[zero; 2]; 2];
    let mut ba = [[zero; 2]; 2];
    let mut pairs: Vec<([Complex64; 2], [Complex64; 2])> = Vec::new();
    for (t, a) in runs {
        if t.len() < 2 {
            continue;
        }
        let ts = t[1] - t[0];
        let lag = (window.lag / ts).round() as usize;
        if lag == 0 {
            return Err(Error::InvalidConfig("fit lag shorter than sample spacing".into()));
        }
        for n in 0..t.len().saturating_sub(lag) {
            if t[n] < window.t_start || t[n] > window.t_start + window.length {
                continue;
            }
            pairs.push((a[n], a[n + lag]));
        }
    }
    if pairs.len() < 4 {
        return Err(Error::InvalidConfig("fit window holds too few samples".into()));
    }
    for (x, y) in &pairs {
        for i in 0..2 {
            for j in 0..2 {
                aa[i][j] += x[i] * x[j].conj();
                ba[i][j] += y[i] * x[j].conj();
            }
        }
    }
    let p = mul2(&ba, &inv2(&aa).ok_or(Error::PoorFit { residual: f64::INFINITY })?);
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in &pairs {
        for i in 0..2 {
            let pred = p[i][0] * x[0] + p[i][1] * x[1];
            num += (y[i] - pred).norm_sqr();
            den += y[i].norm_sqr();
        }
    }
    let residual = (num / den).sqrt();
    if !(residual <= 0.05) {
        return Err(Error::PoorFit { residual });
    }
    let tau = window.lag;
    let mut m = log2x2(&p);
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v /= tau;
        }
    }
    m[0][0].im -= omega0;
    m[1][1].im -= omega0;
    Ok(GeneratorFit {
        m,
        propagator: p,
        residual,
    })
}

/// Decay rate from a log-linear fit of |a(t)| over `[t0, t1]`.
pub fn fit_decay_rate(t: &[f64], a: &[Complex64], t0: f64, t1: f64) -> f64 {
    let pts: Vec<(f64, f64)> = t
        .iter()
        .zip(a)
        .filter(|(ti, _)| **ti >= t0 && **ti <= t1)
        .map(|(ti, ai)| (*ti, ai.norm().ln()))
        .collect();
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    -sxy / sxx
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleOptions {
    pub band: (f64, f64),
    pub modes: usize,
    pub dt: f64,
    pub sample_every: usize,
    /// Demodulation passband edge in ω₀ units.
    pub cutoff: f64,
    pub t_start: f64,
    /// Fit window length; `None` picks 3/γ̄ clamped to [100, 400].
    pub window: Option<f64>,
    pub lag: f64,
    /// Cancel the bath's static frequency shift, see [`MicroSystem::renormalized`].
    pub renormalize: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            band: (0.4, 1.6),
            modes: 2000,
            dt: 0.012,
            sample_every: 20,
            cutoff: 0.1,
            t_start: 30.0,
            window: None,
            lag: 10.0,
            renormalize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub fitted_matrix: [[Complex64; 2]; 2],
    pub predicted_matrix: [[Complex64; 2]; 2],
    pub relative_errors: [[f64; 2]; 2],
    pub t_rec: f64,
    pub residual: f64,
}

impl OracleReport {
    /// Entry-wise acceptance: 5% relative, 10% for entries below 1e−4.
    pub fn within_tolerance(&self) -> bool {
        (0..2).all(|i| {
            (0..2).all(|j| {
                let tol = if self.predicted_matrix[i][j].norm() < 1e-4 { 0.10 } else { 0.05 };
                self.relative_errors[i][j] <= tol
            })
        })
    }
}

/// Simulates `config` microscopically (ω₀ must be 1) and compares the fitted
/// generator with [`build_generator`].
pub fn run_oracle(config: &SystemConfig, opts: &OracleOptions) -> Result<OracleReport> {
    config.validate()?;
    if config.omega0 != 1.0 {
        return Err(Error::InvalidConfig("the microscopic oracle works in ω₀ = 1 units".into()));
    }
    let reservoirs = [
        discretize_reservoir(&config.spectrum1, config.gamma1, opts.band, opts.modes)?,
        discretize_reservoir(&config.spectrum2, config.gamma2, opts.band, opts.modes)?,
    ];
    for r in &reservoirs {
        r.check_margin(config.coupling)?;
    }
    let t_rec = reservoirs[0].recurrence_time();
    let mut system = MicroSystem::new(config.coupling, reservoirs);
    if opts.renormalize {
        system = system.renormalized();
    }
    let reservoirs = &system.reservoirs;
    let gbar = config.gamma1.max(config.gamma2).max(1e-3);
    let length = opts.window.unwrap_or((3.0 / gbar).clamp(100.0, 400.0));
    let window = FitWindow {
        t_start: opts.t_start,
        length,
        lag: opts.lag,
    };
    let taps = lowpass_taps(opts.cutoff, 1.0, opts.dt * opts.sample_every as f64);
    let edge = (taps.len() / 2 + 2) as f64 * opts.dt * opts.sample_every as f64;
    let run = MicroRun {
        t_end: window.t_start + window.length + window.lag + edge,
        dt: opts.dt,
        sample_every: opts.sample_every,
    };
    let runs = [[1.0, 0.0], [0.0, 1.0]]
        .iter()
        .map(|x0| {
            let s = evolve_microscopic(&system, &MicroState::displaced(*x0, reservoirs), &run)?;
            envelopes(&s, 1.0, opts.cutoff)
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_generator(&runs, 1.0, &window)?;
    let predicted = build_generator(config)?.m;
    let mut rel = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            rel[i][j] = (fit.m[i][j] - predicted[i][j]).norm() / predicted[i][j].norm();
        }
    }
    Ok(OracleReport {
        fitted_matrix: fit.m,
        predicted_matrix: predicted,
        relative_errors: rel,
        t_rec,
        residual: fit.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_calibration() {
        let r = discretize_reservoir(&ReservoirSpectrum::Flat, 0.01, (0.5, 1.5), 2000).unwrap();
        assert!((r.delta_omega - 5e-4).abs() < 1e-18);
        assert!((r.recurrence_time() - 12566.370614359172).abs() < 1e-8);
        let k = r.mode_frequencies.iter().position(|w| (w - 1.00025).abs() < 1e-9).unwrap();
        let expect = 2.0 * 1.00025 * (0.01 * 5e-4 / PI).sqrt();
        assert!((r.couplings[k] - expect).abs() < 1e-15);
    }

    #[test]
    fn square_law_shape_in_couplings() {
        let r = discretize_reservoir(&ReservoirSpectrum::power_law(2.0), 0.01, (0.5, 1.5), 1000).unwrap();
        for (w, g) in r.mode_frequencies.iter().zip(&r.couplings) {
            let ratio = g * g / w.powi(4);
            assert!((ratio - r.couplings[0].powi(2) / r.mode_frequencies[0].powi(4)).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_rate_zero_couplings() {
        let r = discretize_reservoir(&ReservoirSpectrum::Flat, 0.0, (0.5, 1.5), 600).unwrap();
        assert!(r.couplings.iter().all(|g| *g == 0.0));
    }

    #[test]
    fn rejects_bad_band() {
        let r = discretize_reservoir(&ReservoirSpectrum::Flat, 0.01, (1.1, 1.5), 600);
        assert!(matches!(r, Err(Error::BandTooNarrow { .. })));
    }

    #[test]
    fn log_inverts_exp() {
        let m = [
            [Complex64::new(-0.01, 0.02), Complex64::new(-0.001, -0.05)],
            [Complex64::new(-0.002, -0.05), Complex64::new(-0.02, 0.0)],
        ];
        let tau = 10.0;
        let col0 = crate::dynamics::propagate_exact(&m, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], tau);
        let col1 = crate::dynamics::propagate_exact(&m, [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], tau);
        let p = [[col0[0], col1[0]], [col0[1], col1[1]]];
        let l = log2x2(&p);
        for i in 0..2 {
            for j in 0..2 {
                assert!((l[i][j] / tau - m[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn lowpass_has_unit_dc_gain() {
        let taps = lowpass_taps(0.1, 1.0, 0.25);
        assert!((taps.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert_eq!(taps.len() % 2, 1);
    }
}
