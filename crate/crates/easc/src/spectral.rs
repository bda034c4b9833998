//! Effective 2×2 amplitude generator with environment-induced (EI) coupling,
//! its eigen-decomposition, interaction energies and Ω-trajectories.
//!
//! Eigenfrequencies follow `M v = −iω v`, i.e. `ω = iλ` for an eigenvalue λ
//! of the generator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ComplexFrequency, DiagonalMode, EiMode, Oscillator, ReservoirSpectrum, SystemConfig};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Real parts closer than this (relative to ω₀) count as equal when ordering.
const TIE: f64 = 1e-12;

/// Eigenvector angle below which a decomposition is flagged defective.
const DEFECT_ANGLE: f64 = 1e-8;

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveGenerator {
    pub m: Matrix2,
    pub k1: f64,
    pub k2: f64,
    /// Rabi coupling Ω the generator was built for.
    pub coupling: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomposition {
    pub eigenfrequencies: [ComplexFrequency; 2],
    pub eigenvectors: [[Complex64; 2]; 2],
    pub interaction_energies: [f64; 2],
    pub delta: f64,
    /// Eigenvectors are numerically collinear (exceptional point).
    pub defective: bool,
}

/// EI coupling strength K(Ω, γⱼ) of oscillator `which`.
pub fn ei_coupling(config: &SystemConfig, which: Oscillator) -> Result<f64> {
    let w0 = config.omega0;
    let om = config.coupling;
    match config.ei_mode {
        EiMode::Off => Err(Error::ModeMismatch(
            "EI coupling requested with ei_mode = off".into(),
        )),
        EiMode::ExactDifference => {
            let up = config.rate(which, w0 + om)?;
            let down = config.rate(which, w0 - om)?;
            Ok((up - down) / 2.0)
        }
        EiMode::GradientApprox => match config.spectrum(which) {
            ReservoirSpectrum::Flat => Ok(0.0),
            ReservoirSpectrum::PowerLaw { exponent } => {
                Ok(exponent * om * config.gamma(which) / w0)
            }
            ReservoirSpectrum::Tabulated(_) => Err(Error::GradientUnsupported),
        },
    }
}

fn diagonal_rate(config: &SystemConfig, which: Oscillator) -> Result<f64> {
    match config.diagonal_mode {
        DiagonalMode::RateAtOmega0 => Ok(config.gamma(which)),
        DiagonalMode::AveragedRates => {
            let up = config.rate(which, config.omega0 + config.coupling)?;
            let down = config.rate(which, config.omega0 - config.coupling)?;
            Ok((up + down) / 2.0)
        }
    }
}

pub fn build_generator(config: &SystemConfig) -> Result<EffectiveGenerator> {
    config.validate()?;
    let (k1, k2) = match config.ei_mode {
        EiMode::Off => (0.0, 0.0),
        _ => (
            ei_coupling(config, Oscillator::First)?,
            ei_coupling(config, Oscillator::Second)?,
        ),
    };
    let (g1, g2) = match config.ei_mode {
        EiMode::Off => (config.gamma1, config.gamma2),
        _ => (
            diagonal_rate(config, Oscillator::First)?,
            diagonal_rate(config, Oscillator::Second)?,
        ),
    };
    let w0 = config.omega0;
    let om = config.coupling;
    let m = [
        [Complex64::new(-g1, -w0), Complex64::new(-k1, -om)],
        [Complex64::new(-k2, -om), Complex64::new(-g2, -w0)],
    ];
    Ok(EffectiveGenerator {
        m,
        k1,
        k2,
        coupling: om,
    })
}

/// Half-difference of the diagonals and the characteristic discriminant.
fn discriminant(m: &Matrix2) -> (Complex64, Complex64) {
    let half = (m[0][0] - m[1][1]) / 2.0;
    (half, half * half + m[0][1] * m[1][0])
}

/// |ω₁ − ω₂| without building eigenvectors.
pub fn eigen_distance(m: &Matrix2) -> f64 {
    2.0 * discriminant(m).1.norm().sqrt()
}

/// Descending real part, ties (within [`TIE`]) broken by descending imaginary part.
pub fn frequency_order(a: &ComplexFrequency, b: &ComplexFrequency) -> std::cmp::Ordering {
    if (a.re - b.re).abs() > TIE * (1.0 + a.re.abs().max(b.re.abs())) {
        b.re.total_cmp(&a.re)
    } else {
        b.im.total_cmp(&a.im)
    }
}

fn sort_pair(w: [ComplexFrequency; 2]) -> [ComplexFrequency; 2] {
    if frequency_order(&w[0], &w[1]) == std::cmp::Ordering::Greater {
        [w[1], w[0]]
    } else {
        w
    }
}

/// Eigenvector for eigenvalue `tr/2 + sign·s`, from the better-conditioned
/// null-space row, unit norm with the larger component real and non-negative.
fn eigenvector(m: &Matrix2, half: Complex64, s: Complex64, sign: f64) -> [Complex64; 2] {
    // λ − m11 = −half + sign·s and λ − m22 = half + sign·s
    let row1 = [m[0][1], -half + sign * s];
    let row2 = [half + sign * s, m[1][0]];
    let n1 = row1[0].norm_sqr() + row1[1].norm_sqr();
    let n2 = row2[0].norm_sqr() + row2[1].norm_sqr();
    let (mut v, n) = if n1 >= n2 { (row1, n1) } else { (row2, n2) };
    if n == 0.0 {
        // Scalar matrix: every vector is an eigenvector.
        return if sign > 0.0 {
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        } else {
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        };
    }
    let norm = n.sqrt();
    v[0] /= norm;
    v[1] /= norm;
    fix_phase(v)
}

fn fix_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let lead = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    let r = lead.norm();
    if r == 0.0 {
        return v;
    }
    let phase = lead.conj() / r;
    let mut out = [v[0] * phase, v[1] * phase];
    // Remove rounding residue on the component made real.
    let k = if v[0].norm() >= v[1].norm() { 0 } else { 1 };
    out[k] = Complex64::new(out[k].norm(), 0.0);
    out
}

/// Ω·2Re(a₁* a₂).
pub fn interaction_energy(v: &[Complex64; 2], coupling: f64) -> f64 {
    // + 0.0 turns −0 into 0.
    coupling * 2.0 * (v[0].conj() * v[1]).re + 0.0
}

pub fn eigendecompose(gen: &EffectiveGenerator) -> EigenDecomposition {
    let m = &gen.m;
    let tr_half = (m[0][0] + m[1][1]) / 2.0;
    let (half, disc) = discriminant(m);
    let s = disc.sqrt();
    let lam = [tr_half + s, tr_half - s];
    let vecs = [eigenvector(m, half, s, 1.0), eigenvector(m, half, s, -1.0)];
    let mut w = [I * lam[0], I * lam[1]];
    let mut v = vecs;
    if frequency_order(&w[0], &w[1]) == std::cmp::Ordering::Greater {
        w.swap(0, 1);
        v.swap(0, 1);
    }
    let overlap = (v[0][0].conj() * v[1][0] + v[0][1].conj() * v[1][1]).norm().min(1.0);
    let angle = (1.0 - overlap * overlap).max(0.0).sqrt().asin();
    EigenDecomposition {
        eigenfrequencies: w,
        eigenvectors: v,
        interaction_energies: [
            interaction_energy(&v[0], gen.coupling),
            interaction_energy(&v[1], gen.coupling),
        ],
        delta: (w[0] - w[1]).norm(),
        defective: angle < DEFECT_ANGLE,
    }
}

/// Literal closed form for power-law reservoirs with the gradient EI coupling
/// and diagonal rates taken at ω₀.
pub fn closed_form_eigenfrequencies(config: &SystemConfig) -> Result<[ComplexFrequency; 2]> {
    config.validate()?;
    if config.ei_mode != EiMode::GradientApprox || config.diagonal_mode != DiagonalMode::RateAtOmega0 {
        return Err(Error::ModeMismatch(
            "closed form needs ei_mode = gradient_approx and diagonal_mode = rate_at_omega0".into(),
        ));
    }
    let exponent = |s: &ReservoirSpectrum| match s {
        ReservoirSpectrum::Flat => Ok(0.0),
        ReservoirSpectrum::PowerLaw { exponent } => Ok(*exponent),
        ReservoirSpectrum::Tabulated(_) => Err(Error::ModeMismatch(
            "closed form needs power-law spectra".into(),
        )),
    };
    let n = exponent(&config.spectrum1)?;
    if exponent(&config.spectrum2)? != n {
        return Err(Error::ModeMismatch(
            "closed form needs a common power-law exponent".into(),
        ));
    }
    let (w0, om, g1, g2) = (config.omega0, config.coupling, config.gamma1, config.gamma2);
    let factor = Complex64::new(1.0 - n * n * g1 * g2 / (w0 * w0), -n * (g1 + g2) / w0);
    let root = (om * om * factor - (g1 - g2) * (g1 - g2) / 4.0).sqrt();
    let centre = Complex64::new(w0, -(g1 + g2) / 2.0);
    Ok(sort_pair([centre + root, centre - root]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub coupling: f64,
    pub w: [ComplexFrequency; 2],
}

/// Uniform grid of `steps` points over `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// Eigenfrequencies along an Ω sweep with continuity-preserving branch labels.
pub fn trajectory(
    template: &SystemConfig,
    omega_range: (f64, f64),
    steps: usize,
) -> Result<Vec<TrajectoryPoint>> {
    let (lo, hi) = omega_range;
    if steps < 2 {
        return Err(Error::InvalidConfig("trajectory needs at least two steps".into()));
    }
    if !(lo >= 0.0 && hi >= lo && hi < template.omega0) {
        return Err(Error::InvalidConfig(format!(
            "coupling range [{lo}, {hi}] must lie in [0, omega0)"
        )));
    }
    let mut out: Vec<TrajectoryPoint> = Vec::with_capacity(steps);
    for om in linspace(lo, hi, steps) {
        let dec = eigendecompose(&build_generator(&template.with_coupling(om))?);
        let mut w = dec.eigenfrequencies;
        if let Some(prev) = out.last() {
            let keep = (prev.w[0] - w[0]).norm() + (prev.w[1] - w[1]).norm();
            let swap = (prev.w[0] - w[1]).norm() + (prev.w[1] - w[0]).norm();
            if swap < keep {
                w.swap(0, 1);
            }
        }
        out.push(TrajectoryPoint { coupling: om, w });
    }
    Ok(out)
}
