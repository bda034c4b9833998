//! Domain types, reservoir spectra and frequency-dependent relaxation rates.
//!
//! Spectra are dimensionless shapes `r(ω)` queried in units of the reference
//! frequency, normalized so that `r(1) = 1`. Physical rates are the product of
//! a reference rate at ω₀ and that shape.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex eigenfrequency: real part is the frequency, imaginary part the
/// negative decay rate.
pub type ComplexFrequency = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oscillator {
    First,
    Second,
}

/// Relative density of states of one reservoir.
#[derive(Debug, Clone, PartialEq)]
pub enum ReservoirSpectrum {
    Flat,
    PowerLaw { exponent: f64 },
    Tabulated(TabulatedSpectrum),
}

/// Monotone-cubic interpolated density, rescaled to 1 at the reference
/// frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSpectrum {
    raw: Vec<(f64, f64)>,
    omega: Vec<f64>,
    rho: Vec<f64>,
    slope: Vec<f64>,
}

impl TabulatedSpectrum {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSpectrum(
                "tabulated spectrum needs at least two samples".into(),
            ));
        }
        for &(w, r) in &samples {
            if !w.is_finite() || !r.is_finite() {
                return Err(Error::InvalidSpectrum("non-finite sample".into()));
            }
            if w <= 0.0 {
                return Err(Error::InvalidSpectrum(format!(
                    "sample frequency {w} is not positive"
                )));
            }
            if r < 0.0 {
                return Err(Error::NegativeDensity { omega: w, value: r });
            }
        }
        if samples.windows(2).any(|p| p[1].0 <= p[0].0) {
            return Err(Error::InvalidSpectrum(
                "sample frequencies must be strictly increasing".into(),
            ));
        }
        let omega: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let rho: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let slope = pchip_slopes(&omega, &rho);
        let mut spec = TabulatedSpectrum {
            raw: samples,
            omega,
            rho,
            slope,
        };
        let at_ref = spec.interpolate(1.0)?;
        if !(at_ref > 0.0) {
            return Err(Error::InvalidSpectrum(
                "density vanishes at the reference frequency".into(),
            ));
        }
        for v in spec.rho.iter_mut().chain(spec.slope.iter_mut()) {
            *v /= at_ref;
        }
        Ok(spec)
    }

    /// Reads a two-column CSV with header `omega,rho`.
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let headers = reader.headers()?.clone();
        let names: Vec<&str> = headers.iter().collect();
        if names != ["omega", "rho"] {
            return Err(Error::InvalidSpectrum(format!(
                "expected header `omega,rho`, found `{}`",
                names.join(",")
            )));
        }
        let mut samples = Vec::new();
        for record in reader.records() {
            let record = record?;
            let parse = |i: usize| -> Result<f64> {
                record[i].parse::<f64>().map_err(|e| {
                    Error::InvalidSpectrum(format!("bad number `{}`: {e}", &record[i]))
                })
            };
            samples.push((parse(0)?, parse(1)?));
        }
        Self::new(samples)
    }

    /// Samples as supplied, before rescaling.
    pub fn samples(&self) -> &[(f64, f64)] {
        &self.raw
    }

    pub fn band(&self) -> (f64, f64) {
        (self.omega[0], self.omega[self.omega.len() - 1])
    }

    fn interpolate(&self, w: f64) -> Result<f64> {
        let (lo, hi) = self.band();
        if !(w >= lo && w <= hi) {
            return Err(Error::OutOfBand { omega: w, lo, hi });
        }
        let k = match self.omega.binary_search_by(|x| x.total_cmp(&w)) {
            Ok(i) => return Ok(self.rho[i]),
            Err(i) => i - 1,
        };
        let h = self.omega[k + 1] - self.omega[k];
        let t = (w - self.omega[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        Ok(h00 * self.rho[k]
            + h10 * h * self.slope[k]
            + h01 * self.rho[k + 1]
            + h11 * h * self.slope[k + 1])
    }
}

/// Fritsch-Carlson derivative estimates with the Fritsch-Butland interior
/// mean and the shape-preserving three-point end rule.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|p| p[1] - p[0]).collect();
    let d: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![d[0], d[0]];
    }
    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        if d[k - 1] * d[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m.signum() != d0.signum() || d0 == 0.0 {
        0.0
    } else if d0.signum() != d1.signum() && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

impl ReservoirSpectrum {
    pub fn power_law(exponent: f64) -> Self {
        ReservoirSpectrum::PowerLaw { exponent }
    }

    /// True when the shape is constant, so no EI coupling can arise.
    pub fn is_flat(&self) -> bool {
        match self {
            ReservoirSpectrum::Flat => true,
            ReservoirSpectrum::PowerLaw { exponent } => *exponent == 0.0,
            ReservoirSpectrum::Tabulated(_) => false,
        }
    }

    /// Tabulated band, `None` for analytic spectra.
    pub fn band(&self) -> Option<(f64, f64)> {
        match self {
            ReservoirSpectrum::Tabulated(t) => Some(t.band()),
            _ => None,
        }
    }
}

/// Shape `r(ω)` with ω in reference-frequency units.
pub fn relative_density(spectrum: &ReservoirSpectrum, omega: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidConfig(format!(
            "density queried at non-positive frequency {omega}"
        )));
    }
    match spectrum {
        ReservoirSpectrum::Flat => Ok(1.0),
        ReservoirSpectrum::PowerLaw { exponent } => Ok(omega.powf(*exponent)),
        ReservoirSpectrum::Tabulated(t) => t.interpolate(omega),
    }
}

/// γ(ω) = γ_ref · r(ω).
pub fn rate_at(gamma_ref: f64, spectrum: &ReservoirSpectrum, omega: f64) -> Result<f64> {
    if !(gamma_ref >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "relaxation rate {gamma_ref} is negative"
        )));
    }
    Ok(gamma_ref * relative_density(spectrum, omega)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EiMode {
    Off,
    #[default]
    ExactDifference,
    GradientApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalMode {
    #[default]
    AveragedRates,
    RateAtOmega0,
}

/// One physical instance: two oscillators, their coupling and reservoirs.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub omega0: f64,
    pub coupling: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub spectrum1: ReservoirSpectrum,
    pub spectrum2: ReservoirSpectrum,
    pub ei_mode: EiMode,
    pub diagonal_mode: DiagonalMode,
}

impl SystemConfig {
    /// Both reservoirs share `spectrum`; ω₀ = 1, default modes.
    pub fn new(coupling: f64, gamma1: f64, gamma2: f64, spectrum: ReservoirSpectrum) -> Self {
        SystemConfig {
            omega0: 1.0,
            coupling,
            gamma1,
            gamma2,
            spectrum1: spectrum.clone(),
            spectrum2: spectrum,
            ei_mode: EiMode::default(),
            diagonal_mode: DiagonalMode::default(),
        }
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        SystemConfig {
            coupling,
            ..self.clone()
        }
    }

    pub fn with_gammas(&self, gamma1: f64, gamma2: f64) -> Self {
        SystemConfig {
            gamma1,
            gamma2,
            ..self.clone()
        }
    }

    pub fn with_ei_mode(mut self, mode: EiMode) -> Self {
        self.ei_mode = mode;
        self
    }

    pub fn with_diagonal_mode(mut self, mode: DiagonalMode) -> Self {
        self.diagonal_mode = mode;
        self
    }

    pub fn gamma(&self, which: Oscillator) -> f64 {
        match which {
            Oscillator::First => self.gamma1,
            Oscillator::Second => self.gamma2,
        }
    }

    pub fn spectrum(&self, which: Oscillator) -> &ReservoirSpectrum {
        match which {
            Oscillator::First => &self.spectrum1,
            Oscillator::Second => &self.spectrum2,
        }
    }

    /// Rate of oscillator `which` at absolute frequency `omega`.
    pub fn rate(&self, which: Oscillator, omega: f64) -> Result<f64> {
        rate_at(self.gamma(which), self.spectrum(which), omega / self.omega0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.omega0 > 0.0) || !self.omega0.is_finite() {
            return bad(format!("omega0 must be positive, got {}", self.omega0));
        }
        if !(self.coupling >= 0.0) || !self.coupling.is_finite() {
            return bad(format!("coupling must be non-negative, got {}", self.coupling));
        }
        if self.coupling >= self.omega0 {
            return bad(format!(
                "coupling {} must stay below omega0 {}",
                self.coupling, self.omega0
            ));
        }
        for (name, g) in [("gamma1", self.gamma1), ("gamma2", self.gamma2)] {
            if !(g >= 0.0) || !g.is_finite() {
                return bad(format!("{name} must be non-negative, got {g}"));
            }
        }
        let need_lo = 1.0 - self.coupling / self.omega0;
        let need_hi = 1.0 + self.coupling / self.omega0;
        for s in [&self.spectrum1, &self.spectrum2] {
            match s {
                ReservoirSpectrum::PowerLaw { exponent } if !exponent.is_finite() => {
                    return bad("power-law exponent must be finite".into());
                }
                ReservoirSpectrum::Tabulated(t) => {
                    let (lo, hi) = t.band();
                    if lo > need_lo || hi < need_hi {
                        return Err(Error::BandTooNarrow {
                            lo,
                            hi,
                            need_lo,
                            need_hi,
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}
