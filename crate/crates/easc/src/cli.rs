//! Command-line front end: JSON config ingestion, subcommand dispatch and
//! CSV/JSON emission.
//!
//! ```text
//! easc <subcommand> --config <path> [--set key=value ...] --out <dir>
//! ```
//!
//! Every run writes `manifest.json` holding the fully resolved config; feeding
//! a manifest back through `--config` reproduces the run.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dynamics::{compare_amplitude_vs_master, Integration};
use crate::error::{Error, ErrorClass, Result};
use crate::microscopic::{run_oracle, OracleOptions};
use crate::model::{DiagonalMode, EiMode, ReservoirSpectrum, SystemConfig, TabulatedSpectrum};
use crate::regimes::{critical_coupling, phase_diagram, real_splitting_curve, CriticalCouplingOptions, PhaseDiagram};
use crate::spectral::{linspace, trajectory};
use crate::usc::{transition_order, usc_deviation_report, USC_THRESHOLD};

pub const TOOL: &str = "easc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const THREADS_ENV: &str = "EASC_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Trajectory,
    PhaseDiagram,
    CriticalCoupling,
    EnergyMap,
    Splitting,
    Dynamics,
    Oracle,
    Usc,
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Spectra, regimes and dynamics of coupled lossy oscillators")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub config: PathBuf,
    /// Dotted-path override, e.g. `system.gamma1=0.02`; values parse as JSON, else as strings.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Reservoir spectrum as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumSpec {
    Flat,
    PowerLaw {
        exponent: f64,
    },
    /// Either a CSV path (relative to the config file) or inline `[omega, rho]` samples.
    Tabulated {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        path: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<Vec<[f64; 2]>>,
    },
}

impl SpectrumSpec {
    fn resolve(&self, base: &Path) -> Result<ReservoirSpectrum> {
        Ok(match self {
            SpectrumSpec::Flat => ReservoirSpectrum::Flat,
            SpectrumSpec::PowerLaw { exponent } => ReservoirSpectrum::power_law(*exponent),
            SpectrumSpec::Tabulated { path, samples } => match (path, samples) {
                (Some(p), None) => ReservoirSpectrum::Tabulated(TabulatedSpectrum::from_csv_path(&base.join(p))?),
                (None, Some(s)) => {
                    ReservoirSpectrum::Tabulated(TabulatedSpectrum::new(s.iter().map(|x| (x[0], x[1])).collect())?)
                }
                _ => {
                    return Err(Error::InvalidConfig(
                        "tabulated spectrum needs exactly one of `path` or `samples`".into(),
                    ))
                }
            },
        })
    }

    fn inline(spectrum: &ReservoirSpectrum) -> Self {
        match spectrum {
            ReservoirSpectrum::Flat => SpectrumSpec::Flat,
            ReservoirSpectrum::PowerLaw { exponent } => SpectrumSpec::PowerLaw { exponent: *exponent },
            ReservoirSpectrum::Tabulated(t) => SpectrumSpec::Tabulated {
                path: None,
                samples: Some(t.samples().iter().map(|&(w, r)| [w, r]).collect()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default = "one")]
    pub omega0: f64,
    #[serde(default)]
    pub coupling: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Shared by both reservoirs unless `spectrum1`/`spectrum2` are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum1: Option<SpectrumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum2: Option<SpectrumSpec>,
    #[serde(default)]
    pub ei_mode: EiMode,
    #[serde(default)]
    pub diagonal_mode: DiagonalMode,
}

fn one() -> f64 {
    1.0
}

impl SystemSpec {
    pub fn resolve(&self, base: &Path) -> Result<SystemConfig> {
        if self.spectrum.is_some() && (self.spectrum1.is_some() || self.spectrum2.is_some()) {
            return Err(Error::InvalidConfig(
                "give either `spectrum` or `spectrum1`/`spectrum2`, not both".into(),
            ));
        }
        let shared = self.spectrum.clone().unwrap_or(SpectrumSpec::Flat);
        let s1 = self.spectrum1.as_ref().unwrap_or(&shared).resolve(base)?;
        let s2 = self.spectrum2.as_ref().unwrap_or(&shared).resolve(base)?;
        let cfg = SystemConfig {
            omega0: self.omega0,
            coupling: self.coupling,
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            spectrum1: s1,
            spectrum2: s2,
            ei_mode: self.ei_mode,
            diagonal_mode: self.diagonal_mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Self-contained spec with tabulated samples inlined.
    pub fn from_config(cfg: &SystemConfig) -> Self {
        let (spectrum, spectrum1, spectrum2) = if cfg.spectrum1 == cfg.spectrum2 {
            (Some(SpectrumSpec::inline(&cfg.spectrum1)), None, None)
        } else {
            (
                None,
                Some(SpectrumSpec::inline(&cfg.spectrum1)),
                Some(SpectrumSpec::inline(&cfg.spectrum2)),
            )
        };
        SystemSpec {
            omega0: cfg.omega0,
            coupling: cfg.coupling,
            gamma1: cfg.gamma1,
            gamma2: cfg.gamma2,
            spectrum,
            spectrum1,
            spectrum2,
            ei_mode: cfg.ei_mode,
            diagonal_mode: cfg.diagonal_mode,
        }
    }
}

/// Uniform coupling sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepBlock {
    pub omega_min: f64,
    pub omega_max: f64,
    pub steps: usize,
}

impl Default for SweepBlock {
    fn default() -> Self {
        SweepBlock {
            omega_min: 0.0,
            omega_max: 0.1,
            steps: 201,
        }
    }
}

/// γ₁ × Ω grid: geometric in γ₁, uniform over (0, omega_max] in Ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridBlock {
    pub gamma1_min: f64,
    pub gamma1_max: f64,
    pub gamma1_points: usize,
    /// γ₂/γ₁.
    pub ratio: f64,
    pub omega_max: f64,
    pub omega_points: usize,
}

impl Default for GridBlock {
    fn default() -> Self {
        GridBlock {
            gamma1_min: 1e-3,
            gamma1_max: 10.0,
            gamma1_points: 201,
            ratio: 2.0,
            omega_max: 0.1,
            omega_points: 201,
        }
    }
}

impl GridBlock {
    pub fn gamma1_grid(&self) -> Result<Vec<f64>> {
        if !(self.gamma1_min > 0.0 && self.gamma1_max >= self.gamma1_min && self.gamma1_points >= 1) {
            return Err(Error::InvalidConfig("invalid gamma1 grid".into()));
        }
        let (a, b) = (self.gamma1_min.ln(), self.gamma1_max.ln());
        Ok(linspace(a, b, self.gamma1_points).into_iter().map(f64::exp).collect())
    }

    pub fn omega_grid(&self) -> Result<Vec<f64>> {
        if !(self.omega_max > 0.0 && self.omega_points >= 1) {
            return Err(Error::InvalidConfig("invalid omega grid".into()));
        }
        let n = self.omega_points as f64;
        Ok((1..=self.omega_points).map(|i| self.omega_max * i as f64 / n).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CriticalBlock {
    /// γ₂/γ₁.
    pub ratio: f64,
    pub gamma1_min: f64,
    pub gamma1_max: f64,
    pub ladder_ratio: f64,
    pub band_max: f64,
    pub tol: f64,
    /// Power-law exponents to sweep; empty uses the system spectra as given.
    pub exponents: Vec<f64>,
}

impl Default for CriticalBlock {
    fn default() -> Self {
        let o = CriticalCouplingOptions::default();
        CriticalBlock {
            ratio: 2.0,
            gamma1_min: o.gamma1_min,
            gamma1_max: o.gamma1_max,
            ladder_ratio: o.ladder_ratio,
            band_max: o.band.1,
            tol: o.tol,
            exponents: Vec::new(),
        }
    }
}

impl CriticalBlock {
    fn options(&self) -> CriticalCouplingOptions {
        CriticalCouplingOptions {
            gamma1_min: self.gamma1_min,
            gamma1_max: self.gamma1_max,
            ladder_ratio: self.ladder_ratio,
            band: (0.0, self.band_max),
            tol: self.tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UscBlock {
    pub omega_min: f64,
    pub omega_max: f64,
    pub steps: usize,
}

impl Default for UscBlock {
    fn default() -> Self {
        UscBlock {
            omega_min: 0.0,
            omega_max: 0.3,
            steps: 31,
        }
    }
}

/// Full run configuration. Unknown keys are rejected at every level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSpec,
    /// Worker threads; `EASC_THREADS` overrides, absent means all cores.
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub trajectory: SweepBlock,
    #[serde(default)]
    pub phase_diagram: GridBlock,
    #[serde(default)]
    pub energy_map: GridBlock,
    #[serde(default)]
    pub critical_coupling: CriticalBlock,
    #[serde(default)]
    pub splitting: SweepBlock,
    #[serde(default)]
    pub dynamics: Integration,
    #[serde(default)]
    pub oracle: OracleOptions,
    #[serde(default)]
    pub usc: UscBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub subcommand: Command,
    pub config: RunConfig,
}

/// Sets `value` at a dotted `path`, creating objects on the way.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::InvalidConfig(format!("override `{assignment}` is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::InvalidConfig(format!("bad override key `{key}`")));
    }
    let mut node = doc;
    for part in &parts[..parts.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::InvalidConfig(format!("override `{key}` descends into a non-object")))?;
        node = obj.entry(part.to_string()).or_insert_with(|| json!({}));
    }
    node.as_object_mut()
        .ok_or_else(|| Error::InvalidConfig(format!("override `{key}` descends into a non-object")))?
        .insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

/// Reads a config or a manifest and applies overrides.
pub fn load_config(path: &Path, overrides: &[String]) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut doc: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    if doc.get("tool").is_some() && doc.get("config").is_some() {
        let manifest: Manifest = serde_json::from_value(doc).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        doc = serde_json::to_value(manifest.config).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    }
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    serde_json::from_value(doc).map_err(|e| Error::InvalidConfig(e.to_string()))
}

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Files written so far, removed again if the run fails.
struct Outputs {
    dir: PathBuf,
    created_dir: bool,
    files: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        let created_dir = !dir.exists();
        fs::create_dir_all(dir)?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            created_dir,
            files: Vec::new(),
        })
    }

    fn csv(&mut self, name: &str, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
        let path = self.dir.join(name);
        self.files.push(path.clone());
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let path = self.dir.join(name);
        self.files.push(path.clone());
        let mut file = fs::File::create(&path)?;
        serde_json::to_writer_pretty(&mut file, value).map_err(|e| Error::Io(e.to_string()))?;
        file.write_all(b"\n")?;
        Ok(())
    }

    fn discard(self) {
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        if self.created_dir {
            let _ = fs::remove_dir(&self.dir);
        }
    }
}

fn thread_count(cfg: &RunConfig) -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| Error::InvalidConfig(format!("{THREADS_ENV}={v} is not a positive integer"))),
        Err(_) => match cfg.threads {
            Some(0) => Err(Error::InvalidConfig("threads must be positive".into())),
            t => Ok(t),
        },
    }
}

/// Runs one subcommand and returns the written files.
pub fn run(command: Command, config_path: &Path, overrides: &[String], out: &Path) -> Result<Vec<PathBuf>> {
    let cfg = load_config(config_path, overrides)?;
    let base = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let system = cfg.system.resolve(&base)?;
    let threads = thread_count(&cfg)?;
    let mut resolved = cfg.clone();
    resolved.system = SystemSpec::from_config(&system);

    let mut outputs = Outputs::new(out)?;
    let result = (|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| dispatch(command, &resolved, &system, &mut outputs))?;
        outputs.json(
            "manifest.json",
            &Manifest {
                tool: TOOL.into(),
                version: VERSION.into(),
                subcommand: command,
                config: resolved.clone(),
            },
        )
    })();
    match result {
        Ok(()) => Ok(outputs.files),
        Err(e) => {
            outputs.discard();
            Err(e)
        }
    }
}

fn dispatch(command: Command, cfg: &RunConfig, system: &SystemConfig, out: &mut Outputs) -> Result<()> {
    match command {
        Command::Trajectory => {
            let b = cfg.trajectory;
            let pts = trajectory(system, (b.omega_min, b.omega_max), b.steps)?;
            out.csv(
                "trajectory.csv",
                &["omega_coupling", "re_w1", "im_w1", "re_w2", "im_w2"],
                pts.iter().map(|p| {
                    vec![f(p.coupling), f(p.w[0].re), f(p.w[0].im), f(p.w[1].re), f(p.w[1].im)]
                }),
            )
        }
        Command::PhaseDiagram => {
            let pd = grid_diagram(system, &cfg.phase_diagram)?;
            out.csv(
                "phase_diagram.csv",
                &["gamma1", "omega", "regime", "delta", "e_int_1", "e_int_2"],
                cells(&pd).map(|(g, w, c)| {
                    vec![
                        f(g),
                        f(w),
                        c.regime.label().to_string(),
                        f(c.delta),
                        f(c.interaction_energy_state1),
                        f(c.interaction_energy_state2),
                    ]
                }),
            )?;
            out.json(
                "phase_diagram.json",
                &json!({"boundary": pd.boundary, "omega_cp": pd.omega_cp, "converged": pd.converged}),
            )
        }
        Command::EnergyMap => {
            let pd = grid_diagram(system, &cfg.energy_map)?;
            out.csv(
                "energy_map.csv",
                &["gamma1", "omega", "e_int_1", "e_int_2"],
                cells(&pd).map(|(g, w, c)| {
                    vec![f(g), f(w), f(c.interaction_energy_state1), f(c.interaction_energy_state2)]
                }),
            )
        }
        Command::CriticalCoupling => {
            let b = &cfg.critical_coupling;
            if b.exponents.is_empty() {
                let cc = critical_coupling(system, b.ratio, &b.options())?;
                out.json(
                    "critical_coupling.json",
                    &json!({
                        "omega_cp": cc.omega_cp,
                        "converged": cc.converged,
                        "gamma1_at_sup": cc.gamma1_at_sup,
                        "usc_threshold": USC_THRESHOLD * system.omega0,
                        "transition_order": transition_order(cc.omega_cp, system.omega0),
                        "ladder": cc.ladder,
                    }),
                )
            } else {
                let mut rows = Vec::with_capacity(b.exponents.len());
                for &n in &b.exponents {
                    let mut s = system.clone();
                    s.spectrum1 = ReservoirSpectrum::power_law(n);
                    s.spectrum2 = ReservoirSpectrum::power_law(n);
                    let cc = critical_coupling(&s, b.ratio, &b.options())?;
                    let order = serde_json::to_value(transition_order(cc.omega_cp, system.omega0))
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default();
                    rows.push(vec![f(n), f(cc.omega_cp), f(cc.gamma1_at_sup), order]);
                }
                out.csv(
                    "critical_coupling.csv",
                    &["exponent", "omega_cp", "gamma1_at_sup", "transition_order"],
                    rows,
                )
            }
        }
        Command::Splitting => {
            let b = cfg.splitting;
            let curve = real_splitting_curve(system, (b.omega_min, b.omega_max), b.steps)?;
            out.csv(
                "splitting.csv",
                &["omega_coupling", "re_splitting"],
                curve.iter().map(|(w, s)| vec![f(*w), f(*s)]),
            )
        }
        Command::Dynamics => {
            let (report, amps, master) = compare_amplitude_vs_master(system, &cfg.dynamics)?;
            out.csv(
                "amplitudes.csv",
                &["t", "re_a1", "im_a1", "re_a2", "im_a2"],
                amps.iter().map(|a| vec![f(a.t), f(a.a1.re), f(a.a1.im), f(a.a2.re), f(a.a2.im)]),
            )?;
            out.csv(
                "observables.csv",
                &["t", "e1", "e2", "x", "re_rho_1001"],
                master.observables.iter().map(|o| vec![f(o.t), f(o.e1), f(o.e2), f(o.x), f(o.re_rho_1001)]),
            )?;
            out.json(
                "comparison.json",
                &json!({
                    "report": report,
                    "max_trace_error": master.max_trace_error,
                    "min_eigenvalue": master.min_eigenvalue,
                }),
            )
        }
        Command::Oracle => {
            let r = run_oracle(system, &cfg.oracle)?;
            out.json(
                "oracle.json",
                &json!({
                    "config": SystemSpec::from_config(system),
                    "fitted_matrix": r.fitted_matrix,
                    "predicted_matrix": r.predicted_matrix,
                    "relative_errors": r.relative_errors,
                    "t_rec": r.t_rec,
                    "residual": r.residual,
                    "within_tolerance": r.within_tolerance(),
                }),
            )
        }
        Command::Usc => {
            let b = cfg.usc;
            let grid = linspace(b.omega_min, b.omega_max, b.steps.max(1));
            let report = usc_deviation_report(system.omega0, &grid)?;
            out.csv(
                "usc.csv",
                &["omega_coupling", "w_rwa_s", "w_rwa_a", "w_full_s", "w_full_a", "overlap_s", "overlap_a"],
                report.iter().map(|d| {
                    vec![
                        f(d.coupling),
                        f(d.spectrum.rwa[0]),
                        f(d.spectrum.rwa[1]),
                        f(d.spectrum.full[0]),
                        f(d.spectrum.full[1]),
                        f(d.overlap[0]),
                        f(d.overlap[1]),
                    ]
                }),
            )?;
            let cb = &cfg.critical_coupling;
            let (omega_cp, order) = match critical_coupling(system, cb.ratio, &cb.options()) {
                Ok(cc) => (Some(cc.omega_cp), Some(transition_order(cc.omega_cp, system.omega0))),
                Err(Error::Unbounded | Error::NotConverged { .. }) => (None, None),
                Err(e) => return Err(e),
            };
            out.json(
                "usc_summary.json",
                &json!({
                    "usc_threshold": USC_THRESHOLD * system.omega0,
                    "omega_cp": omega_cp,
                    "transition_order": order,
                }),
            )
        }
    }
}

fn grid_diagram(system: &SystemConfig, b: &GridBlock) -> Result<PhaseDiagram> {
    phase_diagram(system, &b.gamma1_grid()?, b.ratio, &b.omega_grid()?)
}

fn cells(pd: &PhaseDiagram) -> impl Iterator<Item = (f64, f64, &crate::regimes::Cell)> {
    pd.gamma1_grid.iter().zip(&pd.cells).flat_map(move |(&g, row)| {
        pd.omega_grid.iter().zip(row).map(move |(&w, c)| (g, w, c))
    })
}

/// Machine-readable error document printed on stderr.
pub fn error_json(e: &Error) -> Value {
    json!({
        "error": e.kind(),
        "class": match e.class() {
            ErrorClass::Validation => "validation",
            ErrorClass::Numerical => "numerical",
        },
        "message": e.to_string(),
    })
}

pub fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Validation => 2,
        ErrorClass::Numerical => 3,
    }
}

/// Entry point of the `easc` binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, &cli.config, &cli.set, &cli.out) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
