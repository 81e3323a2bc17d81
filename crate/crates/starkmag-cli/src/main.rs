//! `starkmag`: command-line laboratory for magnetically charged hydrogen
//! Stark states.
//!
//! One computation per subcommand, reproducible file outputs:
//!
//! * `state`      — one parabolic Stark state: energy, norm, ⟨z⟩, dipole
//! * `charge`     — solve the magnetic charge for a level; both shift routes
//! * `oscillate`  — time series of the excited/ground charge partition
//! * `experiment` — beam-line scenario: trajectories, ring flux, SQUID
//!
//! Exit codes: 0 success · 2 usage/validation · 3 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use starkmag::dynamics::{charge_evolution, MixedPair};
use starkmag::experiment::{self, BeamOutcome, ExperimentScenario, RingCrossing};
use starkmag::hydrogen::{
    self, local_energy, z_expectation, z_expectation_closed, ParabolicPoint, QuantumNumbers,
};
use starkmag::monopole::{
    charge_report, electric_dipole_conventional, ChargeReport, MeasureMode, StarkConfig,
};
use starkmag::units::{Constants, UnitSystem};

/// Environment variable consulted for the default output directory.
const OUT_DIR_ENV: &str = "STARKMAG_OUT_DIR";

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "starkmag",
    version,
    about = "Numerical laboratory for magnetically charged hydrogen Stark states",
    after_help = "Exit codes: 0 success, 2 usage/validation error, 3 numerical failure.\n\
                  Global flags override values from --config, which override \
                  $STARKMAG_OUT_DIR and the built-in defaults."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalFlags {
    /// Unit system: gaussian-cgs | atomic  [default: gaussian-cgs]
    #[arg(long, global = true)]
    units: Option<String>,

    /// Optional TOML run-configuration file (same keys as these flags)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory  [default: $STARKMAG_OUT_DIR or "."]
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Report file format: csv | json  [default: json]
    #[arg(long, global = true)]
    format: Option<String>,

    /// Gauss–Laguerre quadrature order, at least 16  [default: 64]
    #[arg(long, global = true)]
    order: Option<u32>,

    /// Finite-difference step for the local-energy check, in system length
    /// units  [default: a₀/200]
    #[arg(long, global = true)]
    fd_step: Option<f64>,

    /// Integration measure for the monopole-route shift: flat | volume
    /// [default: flat]
    #[arg(long, global = true)]
    measure: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Report one parabolic Stark state (n1, n2, m)
    State(StateArgs),
    /// Solve the magnetic charge carried by level n and compare shift routes
    Charge(ChargeArgs),
    /// Tabulate the excited/ground magnetic-charge partition over time
    Oscillate(OscillateArgs),
    /// Run a beam-line scenario: deflection, ring flux, SQUID readout
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct StateArgs {
    /// First parabolic quantum number (≥ 0)
    #[arg(long)]
    n1: u32,
    /// Second parabolic quantum number (≥ 0)
    #[arg(long)]
    n2: u32,
    /// Magnetic quantum number
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    m: i32,
}

#[derive(Args)]
struct ChargeArgs {
    /// Principal quantum number (1..=10)
    #[arg(long)]
    n: u32,
    /// Electric field strength in system units
    /// [default: 1e-6 × the internal field e/a₀²]
    #[arg(long)]
    field: Option<f64>,
}

#[derive(Args)]
struct OscillateArgs {
    /// Principal quantum number of the excited level (≥ 2)
    #[arg(long)]
    n: u32,
    /// End of the sampled time range, in system time units (> 0)
    #[arg(long)]
    t_max: f64,
    /// Number of rows to tabulate (> 0); row i samples t = i·t_max/steps
    #[arg(long)]
    steps: u32,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Scenario TOML file; omitted = the built-in demonstration scenario
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Print the built-in scenario as TOML to stdout and exit
    #[arg(long)]
    emit_scenario: bool,
}

// ---------------------------------------------------------------------------
// Run configuration: flags > config file > environment > defaults
// ---------------------------------------------------------------------------

/// A usage/validation failure (exit code 2), as opposed to a numerical one.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn usage(message: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(message.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format `{other}` (expected csv | json)")),
        }
    }
}

/// On-disk shape of `--config`: every key optional, kebab-case, unknown keys
/// rejected so typos surface instead of silently using defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    units: Option<String>,
    order: Option<u32>,
    fd_step: Option<f64>,
    measure: Option<String>,
    out_dir: Option<PathBuf>,
    format: Option<String>,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
struct RunConfig {
    units: UnitSystem,
    order: u32,
    /// `None` means "a₀/200 in the resolved unit system".
    fd_step: Option<f64>,
    measure: MeasureMode,
    out_dir: PathBuf,
    format: OutputFormat,
}

impl RunConfig {
    fn constants(&self) -> Constants {
        Constants::new(self.units)
    }

    fn resolved_fd_step(&self, constants: &Constants) -> f64 {
        self.fd_step
            .unwrap_or(constants.bohr_radius / 200.0)
    }
}

fn parse_with<T: std::str::FromStr>(value: &str, what: &str) -> anyhow::Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse::<T>()
        .map_err(|e| usage(format!("invalid {what}: {e}")))
}

fn resolve_config(flags: &GlobalFlags) -> anyhow::Result<RunConfig> {
    let file: FileConfig = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config file {}", path.display()))
                .map_err(|e| usage(format!("{e:#}")))?;
            toml::from_str(&text).map_err(|e| usage(format!("config file: {e}")))?
        }
        None => FileConfig::default(),
    };

    let units = match flags.units.as_deref().or(file.units.as_deref()) {
        Some(s) => parse_with::<UnitSystem>(s, "--units")?,
        None => UnitSystem::default(),
    };
    let format = match flags.format.as_deref().or(file.format.as_deref()) {
        Some(s) => parse_with::<OutputFormat>(s, "--format")?,
        None => OutputFormat::Json,
    };
    let measure = match flags.measure.as_deref().or(file.measure.as_deref()) {
        Some(s) => parse_with::<MeasureMode>(s, "--measure")?,
        None => MeasureMode::default(),
    };
    let order = flags.order.or(file.order).unwrap_or(64);
    if order < 16 {
        return Err(usage(format!("--order must be at least 16 (got {order})")));
    }
    let fd_step = flags.fd_step.or(file.fd_step);
    if let Some(h) = fd_step {
        if !h.is_finite() || h <= 0.0 {
            return Err(usage(format!("--fd-step must be positive and finite (got {h})")));
        }
    }
    let out_dir = flags
        .out_dir
        .clone()
        .or(file.out_dir)
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    fs::create_dir_all(&out_dir)
        .map_err(|e| usage(format!("output directory {}: {e}", out_dir.display())))?;

    Ok(RunConfig {
        units,
        order,
        fd_step,
        measure,
        out_dir,
        format,
    })
}

// ---------------------------------------------------------------------------
// Output helpers: 17 significant digits everywhere so runs are byte-stable
// and values round-trip to the exact f64.
// ---------------------------------------------------------------------------

fn fmt(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_text(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("serializing report")?;
    text.push('\n');
    write_text(path, &text)
}

/// Two-column `key,value` CSV for single-record reports.
fn write_kv_csv(path: &Path, rows: &[(&str, String)]) -> anyhow::Result<()> {
    let mut text = String::from("key,value\n");
    for (key, value) in rows {
        text.push_str(key);
        text.push(',');
        text.push_str(value);
        text.push('\n');
    }
    write_text(path, &text)
}

// ---------------------------------------------------------------------------
// state
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct StateReport {
    units: UnitSystem,
    n1: u32,
    n2: u32,
    m: i32,
    principal: u32,
    quadrature_order: u32,
    /// Bound-state energy in system units.
    energy: f64,
    /// The same energy in electronvolts.
    energy_ev: f64,
    /// Quadrature ⟨ψ|ψ⟩ (should be 1 to quadrature accuracy).
    norm: f64,
    /// Quadrature ⟨z⟩ in system length units.
    z_expectation: f64,
    /// Closed form (3/2)·n·(n₁−n₂)·a₀.
    z_expectation_closed_form: f64,
    /// Permanent electric dipole z-component, system units.
    dipole_z: f64,
    /// The same dipole in units of e·a₀ (−3 for the (0,1,0) state).
    dipole_z_in_e_bohr: f64,
    /// |E_local/E_n − 1| from the finite-difference Hamiltonian check.
    local_energy_relative_error: f64,
    /// Finite-difference step used for that check, system length units.
    fd_step: f64,
}

fn cmd_state(args: &StateArgs, config: &RunConfig) -> anyhow::Result<()> {
    let constants = config.constants();
    let qn = QuantumNumbers::new(args.n1, args.n2, args.m)?;
    let rule = hydrogen::state_rule(&qn, config.order as usize, &constants)?;

    let energy = hydrogen::bound_energy(qn.principal(), &constants)?;
    let norm = hydrogen::norm(&qn, &rule, &constants)?;
    let z = z_expectation(&qn, &rule, &constants)?;
    let dipole = electric_dipole_conventional(&qn, &rule, &constants)?;

    // Local-energy check at a generic off-node, off-axis probe point.
    let a0 = constants.bohr_radius;
    let n = f64::from(qn.principal());
    let probe = ParabolicPoint::new(0.61 * n * a0, 0.47 * n * a0, 0.0)?;
    let h = config.resolved_fd_step(&constants);
    let local = local_energy(&qn, &probe, &constants, h)?;
    let local_err = (local - energy).abs() / energy.abs();

    let report = StateReport {
        units: config.units,
        n1: qn.n1,
        n2: qn.n2,
        m: qn.m,
        principal: qn.principal(),
        quadrature_order: config.order,
        energy,
        energy_ev: constants.energy_in_ev(energy),
        norm,
        z_expectation: z,
        z_expectation_closed_form: z_expectation_closed(&qn, &constants),
        dipole_z: dipole.z,
        dipole_z_in_e_bohr: dipole.z / (constants.elementary_charge * a0),
        local_energy_relative_error: local_err,
        fd_step: h,
    };

    println!(
        "state ({}, {}, {}): E = {} ({:.6} eV), ⟨ψ|ψ⟩ = {:.12}, ⟨z⟩/a₀ = {:.12}, d_z = {:.12} e·a₀",
        qn.n1,
        qn.n2,
        qn.m,
        fmt(energy),
        report.energy_ev,
        norm,
        z / a0,
        report.dipole_z_in_e_bohr
    );

    match config.format {
        OutputFormat::Json => write_json(&config.out_dir.join("state.json"), &report),
        OutputFormat::Csv => write_kv_csv(
            &config.out_dir.join("state.csv"),
            &[
                ("units", report.units.to_string()),
                ("n1", report.n1.to_string()),
                ("n2", report.n2.to_string()),
                ("m", report.m.to_string()),
                ("principal", report.principal.to_string()),
                ("quadrature_order", report.quadrature_order.to_string()),
                ("energy", fmt(report.energy)),
                ("energy_ev", fmt(report.energy_ev)),
                ("norm", fmt(report.norm)),
                ("z_expectation", fmt(report.z_expectation)),
                (
                    "z_expectation_closed_form",
                    fmt(report.z_expectation_closed_form),
                ),
                ("dipole_z", fmt(report.dipole_z)),
                ("dipole_z_in_e_bohr", fmt(report.dipole_z_in_e_bohr)),
                (
                    "local_energy_relative_error",
                    fmt(report.local_energy_relative_error),
                ),
                ("fd_step", fmt(report.fd_step)),
            ],
        ),
    }
}

// ---------------------------------------------------------------------------
// charge
// ---------------------------------------------------------------------------

fn cmd_charge(args: &ChargeArgs, config: &RunConfig) -> anyhow::Result<()> {
    let constants = config.constants();
    let field = args
        .field
        .unwrap_or_else(|| 1e-6 * constants.internal_field());
    let stark = StarkConfig::new(field)?;
    let report = charge_report(
        args.n,
        &stark,
        config.measure,
        config.order as usize,
        &constants,
    )?;

    println!(
        "level n = {}: eg/ħc = {:.10} (√3·n {:+.3e} away), g/g_Dirac(k=1) = {:.10}",
        report.principal,
        report.coupling,
        report.coupling_deviation_from_sqrt3n,
        report.dirac_ratio
    );
    println!(
        "shifts at ℰ = {}: conventional {}, monopole quadrature {} ({} mode), closed {}",
        fmt(report.field_strength),
        fmt(report.shift_conventional),
        fmt(report.shift_monopole_quadrature),
        report.measure_mode,
        fmt(report.shift_monopole_closed)
    );
    if let Some(residual) = report.identity_residual {
        println!(
            "dipole identity on {}: residual {:.3e} at coupling {:.10}",
            report.state,
            residual,
            report.identity_coupling.unwrap_or(f64::NAN)
        );
    }

    match config.format {
        OutputFormat::Json => write_json(&config.out_dir.join("charge.json"), &report),
        OutputFormat::Csv => {
            let opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
            write_kv_csv(
                &config.out_dir.join("charge.csv"),
                &charge_csv_rows(&report, opt),
            )
        }
    }
}

fn charge_csv_rows(
    report: &ChargeReport,
    opt: impl Fn(Option<f64>) -> String,
) -> Vec<(&'static str, String)> {
    vec![
        ("principal", report.principal.to_string()),
        ("state", report.state.to_string()),
        ("measure_mode", report.measure_mode.to_string()),
        ("field_strength", fmt(report.field_strength)),
        ("perturbative", report.perturbative.to_string()),
        ("pole_strength", fmt(report.pole_strength)),
        ("coupling", fmt(report.coupling)),
        (
            "coupling_deviation_from_sqrt3n",
            fmt(report.coupling_deviation_from_sqrt3n),
        ),
        ("dirac_ratio", fmt(report.dirac_ratio)),
        ("dipole_conventional_z", opt(report.dipole_conventional_z)),
        ("dipole_from_current_z", opt(report.dipole_from_current_z)),
        ("identity_residual", opt(report.identity_residual)),
        ("identity_coupling", opt(report.identity_coupling)),
        ("shift_conventional", fmt(report.shift_conventional)),
        (
            "shift_monopole_quadrature",
            fmt(report.shift_monopole_quadrature),
        ),
        ("shift_monopole_closed", fmt(report.shift_monopole_closed)),
        (
            "shift_ratio_quadrature_to_closed",
            opt(report.shift_ratio_quadrature_to_closed),
        ),
        ("first_term_magnitude", fmt(report.first_term_magnitude)),
        ("surface_decay_ratio", opt(report.surface_decay_ratio)),
    ]
}

// ---------------------------------------------------------------------------
// oscillate
// ---------------------------------------------------------------------------

fn cmd_oscillate(args: &OscillateArgs, config: &RunConfig) -> anyhow::Result<()> {
    if args.steps == 0 {
        return Err(usage("--steps must be positive"));
    }
    if !args.t_max.is_finite() || args.t_max <= 0.0 {
        return Err(usage(format!(
            "--t-max must be positive and finite (got {})",
            args.t_max
        )));
    }
    let constants = config.constants();
    let pair = MixedPair::new(args.n, &constants)?;

    let mut text = String::from("t,charge_excited,charge_ground,total\n");
    for i in 0..args.steps {
        let t = args.t_max * f64::from(i) / f64::from(args.steps);
        let partition = charge_evolution(&pair, t)?;
        text.push_str(&format!(
            "{},{},{},{}\n",
            fmt(t),
            fmt(partition.excited),
            fmt(partition.ground),
            fmt(partition.total())
        ));
    }

    println!(
        "level n = {}: ω = {} rad per unit time, period {}, tabulated {} rows to t < {}",
        args.n,
        fmt(pair.omega),
        fmt(std::f64::consts::TAU / pair.omega),
        args.steps,
        fmt(args.t_max)
    );
    write_text(&config.out_dir.join("oscillation.csv"), &text)
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

/// Per-beam digest stored in `events.json` (trajectories go to CSV).
#[derive(Serialize)]
struct BeamDigest {
    pole_strength: f64,
    coupling: f64,
    flux: f64,
    squid_quanta: f64,
    net_crossings: i64,
    crossings: Vec<RingCrossing>,
    speed_drift: f64,
    final_position: [f64; 3],
}

impl BeamDigest {
    fn new(outcome: &BeamOutcome) -> Self {
        Self {
            pole_strength: outcome.charge.pole_strength,
            coupling: outcome.charge.coupling,
            flux: outcome.flux_event.flux,
            squid_quanta: outcome.squid_quanta,
            net_crossings: outcome.flux_event.net_crossings(),
            crossings: outcome.flux_event.crossings.clone(),
            speed_drift: outcome.trajectory.speed_drift(),
            final_position: outcome.trajectory.last().position,
        }
    }
}

#[derive(Serialize)]
struct EventsDocument<'a> {
    scenario: &'a ExperimentScenario,
    excitation: &'a starkmag::experiment::ExcitationReport,
    transition_frequency: f64,
    plus: BeamDigest,
    minus: BeamDigest,
    separation: f64,
    separation_plane_z: f64,
}

fn write_trajectory_csv(
    path: &Path,
    trajectory: &starkmag::experiment::Trajectory,
) -> anyhow::Result<()> {
    let mut text = String::with_capacity(trajectory.samples.len() * 160);
    text.push_str("t,x,y,z,vx,vy,vz\n");
    for s in &trajectory.samples {
        let p = s.position;
        let v = s.velocity;
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt(s.t),
            fmt(p[0]),
            fmt(p[1]),
            fmt(p[2]),
            fmt(v[0]),
            fmt(v[1]),
            fmt(v[2])
        ));
    }
    write_text(path, &text)
}

fn cmd_experiment(args: &ExperimentArgs, config: &RunConfig) -> anyhow::Result<()> {
    let scenario: ExperimentScenario = match &args.scenario {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading scenario {}", path.display()))
                .map_err(|e| usage(format!("{e:#}")))?;
            toml::from_str(&text).map_err(|e| usage(format!("scenario schema: {e}")))?
        }
        None => ExperimentScenario::default(),
    };

    if args.emit_scenario {
        print!("{}", toml::to_string_pretty(&scenario).context("serializing scenario")?);
        return Ok(());
    }

    let outcome = experiment::run(&scenario)?;

    println!(
        "excitation: two-photon mismatch {:.3e} ({}), n = {}",
        outcome.excitation.two_photon_relative_mismatch,
        if outcome.excitation.two_photon_resonant {
            "resonant"
        } else {
            "off resonance"
        },
        outcome.excitation.principal
    );
    println!(
        "+g beam: {} ring crossing(s), SQUID {:+.6} Φ₀; −g beam: {} crossing(s), SQUID {:+.6} Φ₀",
        outcome.plus.flux_event.crossings.len(),
        outcome.plus.squid_quanta,
        outcome.minus.flux_event.crossings.len(),
        outcome.minus.squid_quanta
    );
    println!(
        "beam separation at z = {}: {}",
        fmt(outcome.separation_plane_z),
        fmt(outcome.separation)
    );

    write_trajectory_csv(
        &config.out_dir.join("trajectory_plus.csv"),
        &outcome.plus.trajectory,
    )?;
    write_trajectory_csv(
        &config.out_dir.join("trajectory_minus.csv"),
        &outcome.minus.trajectory,
    )?;
    let events = EventsDocument {
        scenario: &scenario,
        excitation: &outcome.excitation,
        transition_frequency: outcome.transition_frequency,
        plus: BeamDigest::new(&outcome.plus),
        minus: BeamDigest::new(&outcome.minus),
        separation: outcome.separation,
        separation_plane_z: outcome.separation_plane_z,
    };
    write_json(&config.out_dir.join("events.json"), &events)
}

// ---------------------------------------------------------------------------
// Entry point and exit-code policy
// ---------------------------------------------------------------------------

/// Map a failure to the documented exit codes: bad inputs and unusable
/// configuration are 2; computations that started but could not complete
/// (quadrature, finite differences, unresolved geometry) are 3.
fn exit_code(error: &anyhow::Error) -> i32 {
    if error.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if let Some(e) = error.downcast_ref::<starkmag::Error>() {
        return match e {
            starkmag::Error::QuadratureConvergence { .. }
            | starkmag::Error::NonFiniteIntegrand { .. }
            | starkmag::Error::FiniteDifferenceDomain { .. }
            | starkmag::Error::OnDiracString { .. }
            | starkmag::Error::SingularOrigin
            | starkmag::Error::NoPlaneCrossing { .. }
            | starkmag::Error::CrossingUnresolved { .. } => 3,
            _ => 2,
        };
    }
    2
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let config = resolve_config(&cli.global)?;
    match &cli.command {
        Command::State(args) => cmd_state(args, &config),
        Command::Charge(args) => cmd_charge(args, &config),
        Command::Oscillate(args) => cmd_oscillate(args, &config),
        Command::Experiment(args) => cmd_experiment(args, &config),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(&cli) {
        eprintln!("error: {error:#}");
        std::process::exit(exit_code(&error));
    }
}
