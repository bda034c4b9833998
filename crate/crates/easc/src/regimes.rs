//! Weak/strong coupling classification, transition boundaries, phase diagrams
//! and the critical coupling Ω_CP.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{BandEdge, Error, Result};
use crate::model::{ReservoirSpectrum, SystemConfig};
use crate::spectral::{build_generator, eigen_distance, eigendecompose, linspace, trajectory};

const COARSE_POINTS: usize = 401;
const GOLDEN_RTOL: f64 = 1e-12;
const GOLDEN_MAX_ITER: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "WC")]
    Weak,
    #[serde(rename = "SC")]
    Strong,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Weak => "WC",
            Regime::Strong => "SC",
        }
    }
}

/// Squared eigenfrequency distance; same argmin as Δ, smooth away from zeros.
fn objective(template: &SystemConfig, omega: f64) -> Result<f64> {
    let d = eigen_distance(&build_generator(&template.with_coupling(omega))?.m);
    Ok(d * d)
}

fn golden_section<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..GOLDEN_MAX_ITER {
        if (b - a).abs() <= GOLDEN_RTOL * (a.abs() + b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc <= fd { c } else { d })
}

/// Coupling at which the eigenfrequency distance Δ(Ω) is minimal over `band`.
///
/// With EI coupling off this is the exceptional point |γ₁−γ₂|/2. A minimum
/// sitting on a band edge is returned only when Δ vanishes there; otherwise
/// [`Error::NoInteriorMinimum`] names the edge.
pub fn transition_coupling(template: &SystemConfig, band: (f64, f64)) -> Result<f64> {
    let (lo, hi) = band;
    if !(lo >= 0.0 && hi > lo && hi < template.omega0) {
        return Err(Error::InvalidConfig(format!(
            "search band [{lo}, {hi}] must lie inside [0, omega0)"
        )));
    }
    template.with_coupling(hi).validate()?;
    let grid = linspace(lo, hi, COARSE_POINTS);
    let values = grid
        .iter()
        .map(|&om| objective(template, om))
        .collect::<Result<Vec<_>>>()?;
    let mut k = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[k] {
            k = i;
        }
    }
    let a = grid[k.saturating_sub(1)];
    let b = grid[(k + 1).min(grid.len() - 1)];
    let x = golden_section(|om| objective(template, om), a, b)?;
    let fx = objective(template, x)?;
    let (best, fbest) = if fx <= values[k] { (x, fx) } else { (grid[k], values[k]) };

    let scale = template.gamma1 + template.gamma2 + hi;
    let zero = fbest.sqrt() <= 1e-12 * scale;
    let edge_tol = 1e-9 * (hi - lo);
    // An edge whose value is indistinguishable from the minimum owns it.
    let level = |f: f64| f <= fbest * (1.0 + 1e-9);
    let (f_lo, f_hi) = (values[0], values[values.len() - 1]);
    if best - lo <= edge_tol || (!zero && level(f_lo)) {
        return if f_lo.sqrt() <= 1e-12 * scale {
            Ok(lo)
        } else {
            Err(Error::NoInteriorMinimum {
                edge: BandEdge::Lower,
                omega: lo,
            })
        };
    }
    if (hi - best <= edge_tol || level(f_hi)) && !zero {
        return Err(Error::NoInteriorMinimum {
            edge: BandEdge::Upper,
            omega: hi,
        });
    }
    Ok(best)
}

/// Boundary entry for one γ₁ row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub gamma1: f64,
    /// Transition coupling used for classification.
    pub omega: f64,
    /// Set when Δ had no interior minimum and `omega` is the band edge.
    pub flagged: Option<BandEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    pub regime: Regime,
    pub delta: f64,
    pub interaction_energy_state1: f64,
    pub interaction_energy_state2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub omega_grid: Vec<f64>,
    pub gamma1_grid: Vec<f64>,
    pub ratio: f64,
    /// Row-major: `cells[i][j]` is γ₁ index i, Ω index j.
    pub cells: Vec<Vec<Cell>>,
    pub boundary: Vec<BoundaryPoint>,
    pub omega_cp: Option<f64>,
    pub converged: bool,
}

fn ascending(v: &[f64]) -> bool {
    !v.is_empty() && v.windows(2).all(|p| p[1] > p[0])
}

/// Row transition with band-edge fallbacks: a lower-edge argmin puts the whole
/// row in SC, an upper-edge argmin puts it in WC.
fn row_boundary(template: &SystemConfig, band: (f64, f64)) -> Result<(f64, Option<BandEdge>)> {
    match transition_coupling(template, band) {
        Ok(om) => Ok((om, None)),
        Err(Error::NoInteriorMinimum { edge, omega }) => Ok((omega, Some(edge))),
        Err(e) => Err(e),
    }
}

/// Per-row transition coupling and per-cell classification on a γ₁ × Ω grid
/// with γ₂ = ratio·γ₁. Rows are evaluated in parallel; output order is fixed.
pub fn phase_diagram(
    template: &SystemConfig,
    gamma1_grid: &[f64],
    ratio: f64,
    omega_grid: &[f64],
) -> Result<PhaseDiagram> {
    if !ascending(gamma1_grid) || !ascending(omega_grid) {
        return Err(Error::InvalidConfig("grids must be non-empty and ascending".into()));
    }
    if !(ratio >= 0.0) || gamma1_grid[0] < 0.0 {
        return Err(Error::InvalidConfig("rates and ratio must be non-negative".into()));
    }
    let band = (0.0, omega_grid[omega_grid.len() - 1]);
    let rows: Vec<(BoundaryPoint, Vec<Cell>)> = gamma1_grid
        .par_iter()
        .map(|&g1| {
            let row_cfg = template.with_gammas(g1, ratio * g1);
            let (omega_star, flagged) = row_boundary(&row_cfg, band)?;
            let cells = omega_grid
                .iter()
                .map(|&om| {
                    let d = eigendecompose(&build_generator(&row_cfg.with_coupling(om))?);
                    let regime = match flagged {
                        Some(BandEdge::Lower) => Regime::Strong,
                        Some(BandEdge::Upper) => Regime::Weak,
                        None if om < omega_star => Regime::Weak,
                        None => Regime::Strong,
                    };
                    Ok(Cell {
                        regime,
                        delta: d.delta,
                        interaction_energy_state1: d.interaction_energies[0],
                        interaction_energy_state2: d.interaction_energies[1],
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((
                BoundaryPoint {
                    gamma1: g1,
                    omega: omega_star,
                    flagged,
                },
                cells,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (boundary, cells): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let sup = running_supremum(&boundary);
    let converged = sup
        .as_ref()
        .map(|s| saturated(gamma1_grid, s, 0.01))
        .unwrap_or(false);
    Ok(PhaseDiagram {
        omega_grid: omega_grid.to_vec(),
        gamma1_grid: gamma1_grid.to_vec(),
        ratio,
        cells,
        boundary,
        omega_cp: sup.and_then(|s| s.last().copied()),
        converged,
    })
}

/// Running maximum over rows with a resolved (or lower-edge) boundary.
/// Upper-edge rows make the supremum unresolvable and yield `None`.
fn running_supremum(boundary: &[BoundaryPoint]) -> Option<Vec<f64>> {
    let mut best = 0.0f64;
    let mut out = Vec::with_capacity(boundary.len());
    for b in boundary {
        match b.flagged {
            Some(BandEdge::Upper) => return None,
            Some(BandEdge::Lower) => {}
            None => best = best.max(b.omega),
        }
        out.push(best);
    }
    Some(out)
}

/// Relative change of the running supremum over the last decade of γ₁.
fn last_decade_change(gammas: &[f64], sup: &[f64]) -> Option<f64> {
    let last = *gammas.last()?;
    let top = *sup.last()?;
    let idx = gammas.iter().rposition(|&g| g <= last / 10.0)?;
    if top == 0.0 {
        return Some(f64::INFINITY);
    }
    Some((top - sup[idx]) / top)
}

fn saturated(gammas: &[f64], sup: &[f64], tol: f64) -> bool {
    last_decade_change(gammas, sup).is_some_and(|c| c < tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalCouplingOptions {
    pub gamma1_min: f64,
    pub gamma1_max: f64,
    /// Geometric step of the γ₁ ladder.
    pub ladder_ratio: f64,
    pub band: (f64, f64),
    pub tol: f64,
}

impl Default for CriticalCouplingOptions {
    fn default() -> Self {
        CriticalCouplingOptions {
            gamma1_min: 1e-4,
            gamma1_max: 10.0,
            ladder_ratio: 1.5,
            band: (0.0, 0.5),
            tol: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalCoupling {
    pub omega_cp: f64,
    pub converged: bool,
    /// γ₁ at which the supremum is attained.
    pub gamma1_at_sup: f64,
    pub ladder: Vec<BoundaryPoint>,
}

pub fn geometric_ladder(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut g = lo;
    while g < hi * (1.0 + 1e-12) {
        out.push(g);
        g *= ratio;
    }
    if out.last().is_some_and(|&l| l < hi * (1.0 - 1e-12)) {
        out.push(hi);
    }
    out
}

/// Critical coupling Ω_CP: the converged supremum of the transition coupling
/// along a geometric γ₁ ladder with γ₂ = ratio·γ₁.
///
/// `template` supplies ω₀, spectra and modes; its rates and coupling are
/// replaced along the ladder.
pub fn critical_coupling(
    template: &SystemConfig,
    ratio: f64,
    opts: &CriticalCouplingOptions,
) -> Result<CriticalCoupling> {
    if !(opts.gamma1_min > 0.0 && opts.gamma1_max > opts.gamma1_min && opts.ladder_ratio > 1.0) {
        return Err(Error::InvalidConfig("invalid critical-coupling ladder".into()));
    }
    if template.ei_mode == crate::model::EiMode::Off
        || (template.spectrum1.is_flat() && template.spectrum2.is_flat())
    {
        return Err(Error::Unbounded);
    }
    let probe = template.with_gammas(1.0, ratio).with_coupling(opts.band.1 / 2.0);
    let g = build_generator(&probe)?;
    if g.k1 == 0.0 && g.k2 == 0.0 {
        return Err(Error::Unbounded);
    }
    let gammas = geometric_ladder(opts.gamma1_min, opts.gamma1_max, opts.ladder_ratio);
    let ladder = gammas
        .par_iter()
        .map(|&g1| {
            let (omega, flagged) = row_boundary(&template.with_gammas(g1, ratio * g1), opts.band)?;
            Ok(BoundaryPoint {
                gamma1: g1,
                omega,
                flagged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup = running_supremum(&ladder).ok_or(Error::NotConverged {
        omega_cp: opts.band.1,
    })?;
    let omega_cp = *sup.last().unwrap_or(&0.0);
    let gamma1_at_sup = ladder
        .iter()
        .filter(|b| b.flagged.is_none())
        .max_by(|a, b| a.omega.total_cmp(&b.omega))
        .map(|b| b.gamma1)
        .unwrap_or(f64::NAN);
    if !saturated(&gammas, &sup, opts.tol) {
        return Err(Error::NotConverged { omega_cp });
    }
    Ok(CriticalCoupling {
        omega_cp,
        converged: true,
        gamma1_at_sup,
        ladder,
    })
}

/// |Re ω₁ − Re ω₂| along a branch-tracked Ω sweep.
pub fn real_splitting_curve(
    template: &SystemConfig,
    omega_range: (f64, f64),
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    Ok(trajectory(template, omega_range, steps)?
        .into_iter()
        .map(|p| (p.coupling, (p.w[0].re - p.w[1].re).abs()))
        .collect())
}

/// Spectrum with a sharp density-of-states edge just above ω₀:
/// r(ω) = sqrt(δ/(ω_c − ω)) with ω_c = 1 + δ, so dr/dω at ω₀ equals 1/(2δ).
pub fn stopped_light_samples(delta: f64, lo: f64, points: usize) -> Vec<(f64, f64)> {
    let wc = 1.0 + delta;
    let hi = 1.0 + 0.9 * delta;
    // Uniform in log(ω_c − ω) so samples crowd toward the edge.
    let (a, b) = ((wc - lo).ln(), (wc - hi).ln());
    (0..points)
        .map(|i| {
            let u = a + (b - a) * i as f64 / (points - 1) as f64;
            let w = wc - u.exp();
            (w, (delta / (wc - w)).sqrt())
        })
        .collect()
}

pub fn stopped_light_spectrum() -> ReservoirSpectrum {
    ReservoirSpectrum::Tabulated(
        crate::model::TabulatedSpectrum::new(stopped_light_samples(5e-4, 0.99, 400))
            .expect("analytic profile is valid"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EiMode, ReservoirSpectrum};

    #[test]
    fn ei_off_returns_exceptional_point() {
        let cfg = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::Flat).with_ei_mode(EiMode::Off);
        let om = transition_coupling(&cfg, (0.0, 0.1)).unwrap();
        assert!((om - 0.005).abs() < 1e-12, "{om}");
    }

    #[test]
    fn square_law_shifts_transition_down() {
        let cfg = SystemConfig::new(0.0, 0.02, 0.01, ReservoirSpectrum::power_law(2.0));
        let om = transition_coupling(&cfg, (0.0, 0.1)).unwrap();
        assert!(om < 0.005 && om > 0.004, "{om}");
    }

    #[test]
    fn equal_rates_sit_at_zero() {
        let cfg = SystemConfig::new(0.0, 0.02, 0.02, ReservoirSpectrum::power_law(2.0));
        assert_eq!(transition_coupling(&cfg, (0.0, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn flat_critical_coupling_unbounded() {
        let cfg = SystemConfig::new(0.0, 0.0, 0.0, ReservoirSpectrum::Flat);
        let r = critical_coupling(&cfg, 2.0, &CriticalCouplingOptions::default());
        assert_eq!(r, Err(Error::Unbounded));
    }

    #[test]
    fn ladder_is_geometric() {
        let l = geometric_ladder(1.0, 10.0, 1.5);
        assert_eq!(l.first(), Some(&1.0));
        assert_eq!(l.last(), Some(&10.0));
        assert!((l[1] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn stopped_light_gradient() {
        let s = stopped_light_spectrum();
        let h = 1e-6;
        let d = (crate::model::relative_density(&s, 1.0 + h).unwrap()
            - crate::model::relative_density(&s, 1.0 - h).unwrap())
            / (2.0 * h);
        assert!((d - 1000.0).abs() < 5.0, "{d}");
    }
}
