//! Counter-rotating and diamagnetic corrections to the coupled-oscillator
//! spectrum, beyond the rotating-wave (RWA) model.
//!
//! The 4×4 generator acts on (⟨a₁⟩, ⟨a₂⟩, ⟨a₁†⟩, ⟨a₂†⟩) with diamagnetic
//! strength D = Ω²/ω₀ on both oscillators.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Coupling at which the ultra-strong regime is conventionally entered, in ω₀ units.
pub const USC_THRESHOLD: f64 = 0.1;

pub type Matrix4c = Matrix4<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct UscGenerator {
    pub m4: Matrix4c,
    pub omega0: f64,
    pub coupling: f64,
}

impl UscGenerator {
    /// Block swap Σ exchanging the amplitude and conjugate-amplitude halves.
    pub fn block_swap() -> Matrix4c {
        let one = Complex64::new(1.0, 0.0);
        let mut s = Matrix4c::zeros();
        s[(0, 2)] = one;
        s[(1, 3)] = one;
        s[(2, 0)] = one;
        s[(3, 1)] = one;
        s
    }

    /// max |m4 − Σ conj(m4) Σ|.
    pub fn symmetry_defect(&self) -> f64 {
        let s = Self::block_swap();
        let mirrored = s * self.m4.map(|z| z.conj()) * s;
        (self.m4 - mirrored).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn check(omega0: f64, coupling: f64) -> Result<()> {
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::InvalidConfig(format!("omega0 must be positive, got {omega0}")));
    }
    if !(coupling >= 0.0 && coupling < omega0 / 2.0) {
        return Err(Error::InvalidConfig(format!(
            "coupling {coupling} must lie in [0, omega0/2)"
        )));
    }
    Ok(())
}

pub fn build_usc_generator(omega0: f64, coupling: f64) -> Result<UscGenerator> {
    check(omega0, coupling)?;
    let d = coupling * coupling / omega0;
    let diag = omega0 + 2.0 * d;
    let r = [
        [diag, coupling, 2.0 * d, coupling],
        [coupling, diag, coupling, 2.0 * d],
        [-2.0 * d, -coupling, -diag, -coupling],
        [-coupling, -2.0 * d, -coupling, -diag],
    ];
    let m4 = Matrix4c::from_fn(|i, j| Complex64::new(0.0, -r[i][j]));
    Ok(UscGenerator { m4, omega0, coupling })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UscSpectrum {
    /// ω₀ ± Ω.
    pub rwa: [f64; 2],
    /// sqrt(ω₀² ± 2Ωω₀ + 4Ω²).
    pub full: [f64; 2],
    /// Positive frequencies from the numeric eigenvalues of the 4×4 generator,
    /// descending.
    pub numeric: [f64; 2],
}

pub fn closed_form_usc(omega0: f64, coupling: f64) -> [f64; 2] {
    let base = omega0 * omega0 + 4.0 * coupling * coupling;
    let cross = 2.0 * coupling * omega0;
    [(base + cross).sqrt(), (base - cross).sqrt()]
}

pub fn usc_eigenfrequencies(omega0: f64, coupling: f64) -> Result<UscSpectrum> {
    let gen = build_usc_generator(omega0, coupling)?;
    let lam = gen
        .m4
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::InvariantViolation("Schur form did not triangularize".into()))?;
    // ω = iλ; keep the positive-frequency half.
    let mut w: Vec<f64> = lam.iter().map(|l| (Complex64::new(0.0, 1.0) * l).re).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    Ok(UscSpectrum {
        rwa: [omega0 + coupling, omega0 - coupling],
        full: closed_form_usc(omega0, coupling),
        numeric: [w[0], w[1]],
    })
}

/// Unit null vector of `m4 + iω I`.
fn eigenvector(m4: &Matrix4c, w: f64) -> Vector4<Complex64> {
    let shifted = m4 + Matrix4c::identity() * Complex64::new(0.0, w);
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let k = svd.singular_values.imin();
    v_t.row(k).transpose().map(|z| z.conj())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UscDeviation {
    pub coupling: f64,
    pub spectrum: UscSpectrum,
    /// (ω̃ − ω_RWA)/(2Ω) for the symmetric and antisymmetric mode.
    pub relative_shift: [f64; 2],
    /// |⟨v_RWA, v⟩| with the RWA mode embedded in the amplitude half.
    pub overlap: [f64; 2],
}

pub fn usc_deviation(omega0: f64, coupling: f64) -> Result<UscDeviation> {
    let spectrum = usc_eigenfrequencies(omega0, coupling)?;
    let gen = build_usc_generator(omega0, coupling)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rwa = [[h, h], [h, -h]];
    let mut overlap = [1.0; 2];
    let mut relative_shift = [0.0; 2];
    for k in 0..2 {
        let v = eigenvector(&gen.m4, spectrum.full[k]);
        let proj = v[0] * rwa[k][0] + v[1] * rwa[k][1];
        overlap[k] = proj.norm().min(1.0);
        if coupling > 0.0 {
            relative_shift[k] = (spectrum.full[k] - spectrum.rwa[k]) / (2.0 * coupling);
        }
    }
    Ok(UscDeviation {
        coupling,
        spectrum,
        relative_shift,
        overlap,
    })
}

pub fn usc_deviation_report(omega0: f64, couplings: &[f64]) -> Result<Vec<UscDeviation>> {
    couplings.iter().map(|&c| usc_deviation(omega0, c)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionOrder {
    /// Ω_CP lies below the USC threshold: strong coupling at every rate is reached first.
    StrongCouplingFirst,
    UltraStrongFirst,
}

pub fn transition_order(omega_cp: f64, omega0: f64) -> TransitionOrder {
    if omega_cp < USC_THRESHOLD * omega0 {
        TransitionOrder::StrongCouplingFirst
    } else {
        TransitionOrder::UltraStrongFirst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_generator_is_diagonal() {
        let g = build_usc_generator(1.0, 0.0).unwrap();
        let want = [-1.0, -1.0, 1.0, 1.0];
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { Complex64::new(0.0, want[i]) } else { Complex64::new(0.0, 0.0) };
                assert_eq!(g.m4[(i, j)], expect);
            }
        }
    }

    #[test]
    fn particle_hole_symmetry() {
        assert_eq!(build_usc_generator(1.0, 0.1).unwrap().symmetry_defect(), 0.0);
    }

    #[test]
    fn eigenvalues_pair_up() {
        let g = build_usc_generator(1.0, 0.05).unwrap();
        let lam = g.m4.schur().eigenvalues().unwrap();
        for l in lam.iter() {
            assert!(l.re.abs() < 1e-12);
            assert!(lam.iter().any(|m| (m + l).norm() < 1e-10));
        }
    }

    #[test]
    fn full_frequency_at_tenth() {
        let s = usc_eigenfrequencies(1.0, 0.1).unwrap();
        assert!((s.numeric[0] - 1.24f64.sqrt()).abs() < 1e-12);
        assert!((s.full[0] - 1.24f64.sqrt()).abs() < 1e-15);
        assert!((s.numeric[1] - 0.84f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn second_order_expansion() {
        let s = usc_eigenfrequencies(1.0, 0.01).unwrap();
        assert!((s.full[0] - 1.01015).abs() < 1e-5);
    }

    #[test]
    fn decoupled_frequencies() {
        let s = usc_eigenfrequencies(1.0, 0.0).unwrap();
        assert_eq!(s.full, [1.0, 1.0]);
        assert_eq!(s.rwa, [1.0, 1.0]);
    }

    #[test]
    fn relative_shift_small_coupling() {
        let d = usc_deviation(1.0, 0.01).unwrap();
        assert!((d.relative_shift[0] / 0.0075 - 1.0).abs() < 0.2);
        assert!(d.overlap[0] > 0.9999 && d.overlap[1] > 0.9999);
    }

    #[test]
    fn rejects_large_coupling() {
        assert!(build_usc_generator(1.0, 0.5).is_err());
    }

    #[test]
    fn order_against_threshold() {
        assert_eq!(transition_order(0.05, 1.0), TransitionOrder::StrongCouplingFirst);
        assert_eq!(transition_order(0.2, 1.0), TransitionOrder::UltraStrongFirst);
    }
}
