//! Time evolution: amplitude equations `da/dt = M a` and the zero-temperature
//! partial-secular master equation on span{|1,0⟩, |0,1⟩, |0,0⟩}.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemConfig;
use crate::spectral::{build_generator, EffectiveGenerator, Matrix2};

/// Largest accepted step, in units of 1/ω₀.
pub const MAX_DT: f64 = 0.05;
const TRACE_TOL: f64 = 1e-7;

pub type DensityMatrix3 = Matrix3<Complex64>;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeState {
    pub t: f64,
    pub a1: Complex64,
    pub a2: Complex64,
}

impl AmplitudeState {
    pub fn new(a1: Complex64, a2: Complex64) -> Self {
        AmplitudeState { t: 0.0, a1, a2 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr()
    }

    /// Semiclassical interaction observable 2Re(a₁* a₂).
    pub fn x(&self) -> f64 {
        2.0 * (self.a1.conj() * self.a2).re
    }
}

/// Lab frame keeps the e^{−iω₀t} carrier; the rotating frame removes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Frame {
    #[default]
    Lab,
    Rotating,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Integration {
    pub t_end: f64,
    pub dt: f64,
    pub store_every: usize,
    pub frame: Frame,
}

impl Default for Integration {
    fn default() -> Self {
        Integration {
            t_end: 100.0,
            dt: 0.01,
            store_every: 10,
            frame: Frame::Lab,
        }
    }
}

impl Integration {
    pub fn new(t_end: f64, dt: f64) -> Self {
        Integration {
            t_end,
            dt,
            ..Default::default()
        }
    }

    pub fn rotating(mut self) -> Self {
        self.frame = Frame::Rotating;
        self
    }

    fn check(&self, omega0: f64) -> Result<usize> {
        let max = MAX_DT / omega0;
        if !(self.dt > 0.0) || self.dt > max {
            return Err(Error::StepTooLarge { dt: self.dt, max });
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidConfig(format!("t_end must be positive, got {}", self.t_end)));
        }
        if self.store_every == 0 {
            return Err(Error::InvalidConfig("store_every must be at least 1".into()));
        }
        Ok((self.t_end / self.dt).round() as usize)
    }
}

fn rk4_step<const N: usize, F>(f: &F, y: &[Complex64; N], dt: f64) -> [Complex64; N]
where
    F: Fn(&[Complex64; N]) -> [Complex64; N],
{
    let shift = |base: &[Complex64; N], k: &[Complex64; N], h: f64| {
        let mut out = *base;
        for i in 0..N {
            out[i] += k[i] * h;
        }
        out
    };
    let k1 = f(y);
    let k2 = f(&shift(y, &k1, dt / 2.0));
    let k3 = f(&shift(y, &k2, dt / 2.0));
    let k4 = f(&shift(y, &k3, dt));
    let mut out = *y;
    for i in 0..N {
        out[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
    }
    out
}

fn frame_matrix(gen: &EffectiveGenerator, omega0: f64, frame: Frame) -> Matrix2 {
    let mut m = gen.m;
    if frame == Frame::Rotating {
        m[0][0].im += omega0;
        m[1][1].im += omega0;
    }
    m
}

fn matvec2(m: &Matrix2, v: &[Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Fixed-step RK4 integration of the amplitude equations. Samples are stored
/// every `store_every` steps, including t = 0 and the final step.
pub fn evolve_amplitudes(
    config: &SystemConfig,
    initial: AmplitudeState,
    integ: &Integration,
) -> Result<Vec<AmplitudeState>> {
    let steps = integ.check(config.omega0)?;
    let m = frame_matrix(&build_generator(config)?, config.omega0, integ.frame);
    let f = |v: &[Complex64; 2]| matvec2(&m, v);
    let mut y = [initial.a1, initial.a2];
    let mut out = Vec::with_capacity(steps / integ.store_every + 2);
    out.push(AmplitudeState { t: initial.t, ..initial });
    for n in 1..=steps {
        y = rk4_step(&f, &y, integ.dt);
        if n % integ.store_every == 0 || n == steps {
            out.push(AmplitudeState {
                t: initial.t + n as f64 * integ.dt,
                a1: y[0],
                a2: y[1],
            });
        }
    }
    Ok(out)
}

/// exp(M t) a₀ via the 2×2 Cayley-Hamilton form, valid through coalescence.
pub fn propagate_exact(m: &Matrix2, a0: [Complex64; 2], t: f64) -> [Complex64; 2] {
    let tr_half = (m[0][0] + m[1][1]) / 2.0;
    let half = (m[0][0] - m[1][1]) / 2.0;
    let s = (half * half + m[0][1] * m[1][0]).sqrt();
    let st = s * t;
    let (cosh, sinhc) = if st.norm() < 1e-4 {
        let z2 = st * st;
        (ONE + z2 / 2.0 + z2 * z2 / 24.0, t * (ONE + z2 / 6.0 + z2 * z2 / 120.0))
    } else {
        (st.cosh(), st.sinh() / s)
    };
    let scale = (tr_half * t).exp();
    let b = [
        [m[0][0] - tr_half, m[0][1]],
        [m[1][0], m[1][1] - tr_half],
    ];
    let ba = matvec2(&b, &a0);
    [
        scale * (cosh * a0[0] + sinhc * ba[0]),
        scale * (cosh * a0[1] + sinhc * ba[1]),
    ]
}

/// Matrix of the master-equation generator acting on row-major vec(ρ).
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    pub matrix: [[Complex64; 9]; 9],
}

fn unit(i: usize, j: usize) -> DensityMatrix3 {
    let mut m = DensityMatrix3::zeros();
    m[(i, j)] = ONE;
    m
}

fn vec9(m: &DensityMatrix3) -> [Complex64; 9] {
    let mut out = [ZERO; 9];
    for i in 0..3 {
        for j in 0..3 {
            out[3 * i + j] = m[(i, j)];
        }
    }
    out
}

fn unvec9(v: &[Complex64; 9]) -> DensityMatrix3 {
    DensityMatrix3::from_fn(|i, j| v[3 * i + j])
}

/// Lowering operators on the ordered basis (|1,0⟩, |0,1⟩, |0,0⟩).
pub fn lowering_operators() -> (DensityMatrix3, DensityMatrix3) {
    (unit(2, 0), unit(2, 1))
}

struct MasterCoefficients {
    omega0: f64,
    coupling: f64,
    /// Rates at the symmetric and antisymmetric frequencies per reservoir.
    gs: [f64; 2],
    ga: [f64; 2],
    k: [f64; 2],
}

impl MasterCoefficients {
    fn from_generator(gen: &EffectiveGenerator, omega0: f64) -> Self {
        let gbar = [-gen.m[0][0].re, -gen.m[1][1].re];
        let k = [gen.k1, gen.k2];
        MasterCoefficients {
            omega0,
            coupling: gen.coupling,
            gs: [gbar[0] + k[0], gbar[1] + k[1]],
            ga: [gbar[0] - k[0], gbar[1] - k[1]],
            k,
        }
    }

    fn apply(&self, rho: &DensityMatrix3) -> DensityMatrix3 {
        let (a1, a2) = lowering_operators();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let b = (a1 + a2) * Complex64::from(r);
        let c = (a1 - a2) * Complex64::from(r);
        let (bd, cd) = (b.adjoint(), c.adjoint());
        let w = Complex64::from(self.omega0);
        let om = Complex64::from(self.coupling);
        let h = DensityMatrix3::from_fn(|i, j| match (i, j) {
            (0, 0) | (1, 1) => w,
            (0, 1) | (1, 0) => om,
            _ => ZERO,
        });
        let i = Complex64::new(0.0, 1.0);
        let comm = |x: &DensityMatrix3| x * rho - rho * x;
        let diss = |l: &DensityMatrix3, ld: &DensityMatrix3| {
            let n = ld * l;
            l * rho * ld * Complex64::from(2.0) - n * rho - rho * n
        };
        let mut out = -comm(&h) * i;
        for j in 0..2 {
            out += diss(&b, &bd) * Complex64::from(self.gs[j] / 2.0);
            out += diss(&c, &cd) * Complex64::from(self.ga[j] / 2.0);
        }
        let sigma = [self.gs[0] + self.ga[0], self.gs[1] + self.ga[1]];
        let cross = (b * rho * cd) * Complex64::from(2.0) - rho * cd * b - cd * b * rho
            + (c * rho * bd) * Complex64::from(2.0)
            - rho * bd * c
            - bd * c * rho;
        out += cross * Complex64::from((sigma[0] - sigma[1]) / 4.0);
        out += (comm(&(bd * c)) - comm(&(cd * b))) * Complex64::from((self.k[0] - self.k[1]) / 2.0);
        out
    }
}

impl Liouvillian {
    pub fn apply(&self, rho: &DensityMatrix3) -> DensityMatrix3 {
        unvec9(&self.apply_vec(&vec9(rho)))
    }

    fn apply_vec(&self, v: &[Complex64; 9]) -> [Complex64; 9] {
        let mut out = [ZERO; 9];
        for (o, row) in out.iter_mut().zip(self.matrix.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Matrix of d⟨aᵢ⟩/dt = Σⱼ Mᵢⱼ⟨aⱼ⟩ implied by this generator.
    pub fn induced_amplitude_generator(&self) -> Matrix2 {
        let (a1, a2) = lowering_operators();
        let ops = [a1, a2];
        let mut m = [[ZERO; 2]; 2];
        for (i, op) in ops.iter().enumerate() {
            for k in 0..2 {
                // ⟨a_i⟩ = Tr(a_i ρ); probe with the coherence |k⟩⟨vac|.
                m[i][k] = (op * self.apply(&unit(k, 2))).trace();
            }
        }
        m
    }
}

fn build_from(gen: &EffectiveGenerator, omega0: f64, frame: Frame) -> Liouvillian {
    let mut coeffs = MasterCoefficients::from_generator(gen, omega0);
    if frame == Frame::Rotating {
        coeffs.omega0 = 0.0;
    }
    let mut matrix = [[ZERO; 9]; 9];
    for col in 0..9 {
        let image = vec9(&coeffs.apply(&unit(col / 3, col % 3)));
        for row in 0..9 {
            matrix[row][col] = image[row];
        }
    }
    Liouvillian { matrix }
}

/// Zero-temperature partial-secular generator. Dissipators act on the
/// symmetric and antisymmetric modes b, c = (a₁ ± a₂)/√2 with rates taken at
/// ω₀ ± Ω; the cross terms keep the two modes coupled.
pub fn build_liouvillian(config: &SystemConfig) -> Result<Liouvillian> {
    Ok(build_from(&build_generator(config)?, config.omega0, Frame::Lab))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub t: f64,
    pub e1: f64,
    pub e2: f64,
    pub x: f64,
    pub re_rho_1001: f64,
}

impl Observables {
    pub fn from_density(t: f64, rho: &DensityMatrix3) -> Self {
        Observables {
            t,
            e1: rho[(0, 0)].re,
            e2: rho[(1, 1)].re,
            x: 2.0 * rho[(1, 0)].re,
            re_rho_1001: rho[(0, 1)].re,
        }
    }
}

/// |1,0⟩⟨1,0|.
pub fn excited_first() -> DensityMatrix3 {
    unit(0, 0)
}

pub fn min_eigenvalue(rho: &DensityMatrix3) -> f64 {
    let herm = (rho + rho.adjoint()) * Complex64::from(0.5);
    herm.symmetric_eigenvalues().min()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityEvolution {
    pub states: Vec<(f64, DensityMatrix3)>,
    pub observables: Vec<Observables>,
    pub max_trace_error: f64,
    /// Smallest eigenvalue over stored samples; negative values are reported,
    /// never clipped.
    pub min_eigenvalue: f64,
}

pub fn evolve_density_matrix(
    config: &SystemConfig,
    rho0: &DensityMatrix3,
    integ: &Integration,
) -> Result<DensityEvolution> {
    let steps = integ.check(config.omega0)?;
    let herm = (rho0 - rho0.adjoint()).norm();
    let tr = rho0.trace();
    if herm > 1e-10 || (tr - ONE).norm() > 1e-9 || min_eigenvalue(rho0) < -1e-9 {
        return Err(Error::InvalidConfig(
            "initial density matrix must be Hermitian, unit-trace and positive".into(),
        ));
    }
    let l = build_from(&build_generator(config)?, config.omega0, integ.frame);
    let f = |v: &[Complex64; 9]| l.apply_vec(v);
    let mut y = vec9(rho0);
    let mut states = Vec::with_capacity(steps / integ.store_every + 2);
    let mut max_trace_error = 0.0f64;
    let mut min_eig = min_eigenvalue(rho0);
    states.push((0.0, *rho0));
    for n in 1..=steps {
        y = rk4_step(&f, &y, integ.dt);
        if n % integ.store_every == 0 || n == steps {
            let rho = unvec9(&y);
            let t = n as f64 * integ.dt;
            let err = (rho.trace() - ONE).norm();
            max_trace_error = max_trace_error.max(err);
            if err > TRACE_TOL {
                return Err(Error::InvariantViolation(format!(
                    "trace drifted by {err:e} at t = {t}"
                )));
            }
            min_eig = min_eig.min(min_eigenvalue(&rho));
            states.push((t, rho));
        }
    }
    let observables = states
        .iter()
        .map(|(t, rho)| Observables::from_density(*t, rho))
        .collect();
    Ok(DensityEvolution {
        states,
        observables,
        max_trace_error,
        min_eigenvalue: min_eig,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub max_e_deviation: f64,
    pub max_x_deviation: f64,
    pub max_abs_x_master: f64,
    pub max_abs_x_amplitude: f64,
}

/// Runs both descriptions from one excitation in oscillator 1 and compares
/// energies and the interaction observable under the semiclassical
/// replacement ⟨a†a⟩ → |a|².
pub fn compare_amplitude_vs_master(
    config: &SystemConfig,
    integ: &Integration,
) -> Result<(ComparisonReport, Vec<AmplitudeState>, DensityEvolution)> {
    let amps = evolve_amplitudes(config, AmplitudeState::new(ONE, ZERO), integ)?;
    let master = evolve_density_matrix(config, &excited_first(), integ)?;
    let mut report = ComparisonReport {
        max_e_deviation: 0.0,
        max_x_deviation: 0.0,
        max_abs_x_master: 0.0,
        max_abs_x_amplitude: 0.0,
    };
    for (a, o) in amps.iter().zip(master.observables.iter()) {
        let de = (a.a1.norm_sqr() - o.e1).abs().max((a.a2.norm_sqr() - o.e2).abs());
        report.max_e_deviation = report.max_e_deviation.max(de);
        report.max_x_deviation = report.max_x_deviation.max((a.x() - o.x).abs());
        report.max_abs_x_master = report.max_abs_x_master.max(o.x.abs());
        report.max_abs_x_amplitude = report.max_abs_x_amplitude.max(a.x().abs());
    }
    Ok((report, amps, master))
}
