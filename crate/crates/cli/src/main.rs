//! Command-line runner: negativity time series, entangling-power sweeps,
//! gate design, W-state preparation, and figure-data reproduction.
//!
//! Output is CSV (`t,negativity[,linear_entropy]` for time series, `x,ep`
//! for sweeps, `eta_inv,delta,ep` for surfaces) or JSON; numbers carry 12
//! significant digits and reruns with identical flags are byte-identical.
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::json;

use bimodejc::*;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Parser)]
#[command(
    name = "bimodejc",
    about = "Two iso-spectral bosonic modes coupled through one qubit: \
             negativity dynamics, entangling power, and gate design",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Negativity and linearized entropy of the evolved vacuum
    Vacuum(VacuumArgs),
    /// Negativity of an evolved thermal preparation
    Thermal(ThermalArgs),
    /// Entangling power versus temperature (thermal reference)
    EpowerT(EpowerTArgs),
    /// Entangling power versus detuning (vacuum reference)
    EpowerDelta(EpowerDeltaArgs),
    /// Entangling power surface over temperature and detuning
    EpowerSurface(EpowerSurfaceArgs),
    /// Solve the commensurability gate and report the projected unitary
    Gate(GateArgs),
    /// W-state preparation across n modes
    Wstate(WstateArgs),
    /// Emit the parameter sets behind each figure
    Repro(ReproArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct VacuumArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long = "t-max", default_value_t = TWO_PI)]
    t_max: f64,
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Also report 2Ω₀ and Δ + 2γ²/Δ (needs Δ > 0)
    #[arg(long = "effective-frequency", default_value_t = false)]
    effective_frequency: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThermalArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Temperature ratio 1/η = k_B T / ħω
    #[arg(long = "eta-inv", default_value_t = 0.0)]
    eta_inv: f64,
    #[arg(long = "t-max", default_value_t = TWO_PI)]
    t_max: f64,
    #[arg(long, default_value_t = 400)]
    steps: usize,
    /// Thermal mass allowed outside the truncation
    #[arg(long, default_value_t = 1e-8)]
    tail: f64,
    #[arg(long = "effective-frequency", default_value_t = false)]
    effective_frequency: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EpowerTArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    #[arg(long, default_value_t = 10.0)]
    max: f64,
    #[arg(long, default_value_t = 21)]
    points: usize,
    #[arg(long, default_value_t = 1e-6)]
    tail: f64,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EpowerDeltaArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    #[arg(long, default_value_t = 10.0)]
    max: f64,
    #[arg(long, default_value_t = 41)]
    points: usize,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EpowerSurfaceArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long = "eta-max", default_value_t = 5.0)]
    eta_max: f64,
    #[arg(long = "eta-points", default_value_t = 6)]
    eta_points: usize,
    #[arg(long = "delta-max", default_value_t = 5.0)]
    delta_max: f64,
    #[arg(long = "delta-points", default_value_t = 6)]
    delta_points: usize,
    #[arg(long, default_value_t = 1e-6)]
    tail: f64,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WindowArgs {
    /// Supremum window length (defaults to 3π/Ω₀ per grid point)
    #[arg(long = "t-window")]
    t_window: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long = "no-refine", default_value_t = false)]
    no_refine: bool,
}

impl WindowArgs {
    /// Explicit window when any window flag departs from the defaults;
    /// `None` lets the sweep pick its per-point default.
    fn build(&self, reference: &JCParams) -> Result<Option<TimeWindow>> {
        match self.t_window {
            Some(t) => Ok(Some(TimeWindow::new(t, self.samples, !self.no_refine)?)),
            None if self.samples != 2000 || self.no_refine => Ok(Some(TimeWindow {
                coarse_samples: self.samples,
                refine: !self.no_refine,
                ..TimeWindow::default_for(reference)
            })),
            None => Ok(None),
        }
    }
}

#[derive(Args)]
struct GateArgs {
    /// q0 = 2Ω₀ as an integer or fraction, e.g. 3 or 5/2
    #[arg(long)]
    q0: String,
    /// q1 = 2Ω₁ as an integer or fraction
    #[arg(long)]
    q1: String,
    #[arg(long, value_enum, default_value_t = EncodingArg::Direct)]
    encoding: EncodingArg,
    #[arg(long = "max-quanta", default_value_t = 4)]
    max_quanta: u32,
    /// Evaluate the gate at this time instead of the solved t_g
    #[arg(long = "at-time")]
    at_time: Option<f64>,
    /// Also probe a candidate time for s₀, s₁ and the cosine signs
    #[arg(long = "probe-time")]
    probe_time: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Direct,
    Bell,
}

#[derive(Args)]
struct WstateArgs {
    #[arg(long, default_value_t = 2)]
    modes: u32,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Evolution time (defaults to the full-transfer time π/(2γ√n))
    #[arg(long)]
    time: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Tz,
    Negav,
    Det0,
    Detvar,
    Enpow,
    Epdet,
    Ep3d,
}

#[derive(Args)]
struct ReproArgs {
    #[arg(long, value_enum)]
    figure: Figure,
    #[arg(long = "out-dir", default_value = "out")]
    out_dir: PathBuf,
    /// Override the time-series sample count
    #[arg(long)]
    steps: Option<usize>,
    /// Override the sweep window sample count
    #[arg(long)]
    samples: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // eigensolver non-convergence on Hermitian input is fatal and surfaces
    // as a panic; report it as a numerical failure
    let outcome = std::panic::catch_unwind(|| run(cli.command));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Eigensolver(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
        Err(_) => {
            eprintln!("error: numerical failure");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Vacuum(a) => run_vacuum(a),
        Command::Thermal(a) => run_thermal(a),
        Command::EpowerT(a) => run_epower_t(a),
        Command::EpowerDelta(a) => run_epower_delta(a),
        Command::EpowerSurface(a) => run_epower_surface(a),
        Command::Gate(a) => run_gate(a),
        Command::Wstate(a) => run_wstate(a),
        Command::Repro(a) => run_repro(a),
    }
}

fn params_for(gamma: f64, delta: f64) -> Result<JCParams> {
    if delta == 0.0 {
        JCParams::resonant(gamma)
    } else {
        JCParams::detuned(gamma, delta)
    }
}

fn linspace(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || !(t_max > 0.0) {
        return Err(Error::InvalidParam(
            "need t-max > 0 and at least 2 steps".into(),
        ));
    }
    Ok((0..steps)
        .map(|k| t_max * k as f64 / (steps - 1) as f64)
        .collect())
}

/// 12 significant digits.
fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidParam(format!("cannot write {path:?}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::InvalidParam(format!("write failed: {e}")))
        }
    }
}

fn series_csv(series: &[TimePoint], with_entropy: bool) -> String {
    let mut s = String::new();
    if with_entropy {
        s.push_str("t,negativity,linear_entropy\n");
    } else {
        s.push_str("t,negativity\n");
    }
    for pt in series {
        s.push_str(&num(pt.t));
        s.push(',');
        s.push_str(&num(pt.negativity));
        if with_entropy {
            s.push(',');
            s.push_str(&num(pt.linear_entropy.unwrap_or(f64::NAN)));
        }
        s.push('\n');
    }
    s
}

fn series_json(series: &[TimePoint]) -> serde_json::Value {
    serde_json::Value::Array(
        series
            .iter()
            .map(|pt| {
                let mut obj = json!({ "t": pt.t, "negativity": pt.negativity });
                if let Some(sl) = pt.linear_entropy {
                    obj["linear_entropy"] = json!(sl);
                }
                obj
            })
            .collect(),
    )
}

fn effective_frequency_report(p: &JCParams) -> Result<EffectiveFrequency> {
    effective_frequency(p).map_err(|_| {
        Error::InvalidParam("the effective-frequency report requires a detuning Δ > 0".into())
    })
}

fn run_vacuum(a: VacuumArgs) -> Result<()> {
    let p = params_for(a.gamma, a.delta)?;
    let eff = if a.effective_frequency {
        Some(effective_frequency_report(&p)?)
    } else {
        None
    };
    let grid = linspace(a.t_max, a.steps)?;
    let series = negativity_timeseries(&InitialState::Vacuum, &p, &grid)?;
    match a.format {
        Format::Csv => {
            if let Some(eff) = eff {
                eprintln!(
                    "effective_frequency exact={} approx={}",
                    num(eff.exact),
                    num(eff.approx)
                );
            }
            emit(&a.out, &series_csv(&series, true))
        }
        Format::Json => {
            let mut doc = json!({
                "scenario": "vacuum",
                "gamma": a.gamma,
                "delta": a.delta,
                "series": series_json(&series),
            });
            if let Some(eff) = eff {
                doc["effective_frequency"] = json!({ "exact": eff.exact, "approx": eff.approx });
            }
            emit(&a.out, &format!("{doc:#}\n"))
        }
    }
}

fn run_thermal(a: ThermalArgs) -> Result<()> {
    let p = params_for(a.gamma, a.delta)?;
    let eff = if a.effective_frequency {
        Some(effective_frequency_report(&p)?)
    } else {
        None
    };
    let spec = ThermalSpec::sized_for(a.eta_inv, a.tail)?;
    let grid = linspace(a.t_max, a.steps)?;
    let series = negativity_timeseries(&InitialState::Thermal(spec), &p, &grid)?;
    match a.format {
        Format::Csv => {
            if let Some(eff) = eff {
                eprintln!(
                    "effective_frequency exact={} approx={}",
                    num(eff.exact),
                    num(eff.approx)
                );
            }
            emit(&a.out, &series_csv(&series, false))
        }
        Format::Json => {
            let mut doc = json!({
                "scenario": "thermal",
                "gamma": a.gamma,
                "delta": a.delta,
                "eta_inv": a.eta_inv,
                "max_total_quanta": spec.policy().max_total_quanta,
                "series": series_json(&series),
            });
            if let Some(eff) = eff {
                doc["effective_frequency"] = json!({ "exact": eff.exact, "approx": eff.approx });
            }
            emit(&a.out, &format!("{doc:#}\n"))
        }
    }
}

fn sweep_csv(points: &[(f64, f64)]) -> String {
    let mut s = String::from("x,ep\n");
    for (x, ep) in points {
        s.push_str(&format!("{},{}\n", num(*x), num(*ep)));
    }
    s
}

fn axis(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || !(max > min) {
        return Err(Error::InvalidParam(
            "need max > min and at least 2 grid points".into(),
        ));
    }
    Ok((0..points)
        .map(|k| min + (max - min) * k as f64 / (points - 1) as f64)
        .collect())
}

fn run_epower_t(a: EpowerTArgs) -> Result<()> {
    let p = params_for(a.gamma, a.delta)?;
    let grid = axis(a.min, a.max, a.points)?;
    let window = a.window.build(&p)?;
    let out = ep_vs_temperature(&grid, &p, a.tail, window)?;
    match a.format {
        Format::Csv => emit(&a.out, &sweep_csv(&out)),
        Format::Json => emit(
            &a.out,
            &format!(
                "{:#}\n",
                json!({
                    "scenario": "epower-t",
                    "gamma": a.gamma,
                    "delta": a.delta,
                    "points": out
                        .iter()
                        .map(|(x, ep)| json!({"eta_inv": x, "ep": ep}))
                        .collect::<Vec<_>>(),
                })
            ),
        ),
    }
}

fn run_epower_delta(a: EpowerDeltaArgs) -> Result<()> {
    let grid = axis(a.min, a.max, a.points)?;
    let reference = params_for(a.gamma, a.min)?;
    let window = a.window.build(&reference)?;
    let out = ep_vs_detuning(&grid, a.gamma, window)?;
    match a.format {
        Format::Csv => emit(&a.out, &sweep_csv(&out)),
        Format::Json => emit(
            &a.out,
            &format!(
                "{:#}\n",
                json!({
                    "scenario": "epower-delta",
                    "gamma": a.gamma,
                    "points": out
                        .iter()
                        .map(|(x, ep)| json!({"delta": x, "ep": ep}))
                        .collect::<Vec<_>>(),
                })
            ),
        ),
    }
}

fn surface_csv(s: &EPSurface) -> String {
    let mut out = String::from("eta_inv,delta,ep\n");
    for (i, eta) in s.eta_inv.iter().enumerate() {
        for (j, delta) in s.delta.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                num(*eta),
                num(*delta),
                num(s.values[i][j])
            ));
        }
    }
    out
}

fn run_epower_surface(a: EpowerSurfaceArgs) -> Result<()> {
    let eta = axis(0.0, a.eta_max, a.eta_points)?;
    let delta = axis(0.0, a.delta_max, a.delta_points)?;
    let reference = params_for(a.gamma, 0.0)?;
    let window = a.window.build(&reference)?;
    let surface = ep_surface(&eta, &delta, a.gamma, a.tail, window)?;
    match a.format {
        Format::Csv => emit(&a.out, &surface_csv(&surface)),
        Format::Json => emit(
            &a.out,
            &format!(
                "{:#}\n",
                json!({
                    "scenario": "epower-surface",
                    "gamma": a.gamma,
                    "eta_inv": surface.eta_inv,
                    "delta": surface.delta,
                    "ep": surface.values,
                })
            ),
        ),
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let parse_int = |x: &str| -> Result<i64> {
        x.trim()
            .parse::<i64>()
            .map_err(|_| Error::InvalidParam(format!("cannot parse '{x}' as an integer")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == 0 {
                return Err(Error::InvalidParam("zero denominator".into()));
            }
            Ok(Rational64::new(parse_int(n)?, d))
        }
        None => Ok(Rational64::from_integer(parse_int(s)?)),
    }
}

fn run_gate(a: GateArgs) -> Result<()> {
    let q0 = parse_rational(&a.q0)?;
    let q1 = parse_rational(&a.q1)?;
    let sol = solve_gate_params(q0, q1)?;
    let (encoding, target) = match a.encoding {
        EncodingArg::Direct => (LogicalEncoding::Direct12, GateTarget::SwapWithPhase),
        EncodingArg::Bell => (LogicalEncoding::BellVirtual, GateTarget::ControlledPiPhase),
    };
    let policy = TruncationPolicy::new(a.max_quanta);
    let t = a.at_time.unwrap_or(sol.t_gate);
    let gm = logical_gate_matrix_at(&sol, encoding, policy, t)?;
    let rep = gate_fidelity(&gm.matrix, target, gm.leakage);
    let matrix_rows: Vec<Vec<serde_json::Value>> = (0..4)
        .map(|r| {
            (0..4)
                .map(|c| {
                    let z = gm.matrix[(r, c)];
                    json!({ "re": z.re, "im": z.im })
                })
                .collect()
        })
        .collect();

    let mut doc = json!({
        "q0": a.q0,
        "q1": a.q1,
        "gamma": sol.gamma,
        "delta": sol.delta,
        "t_gate": sol.t_gate,
        "t_gate_over_pi": format!("{}", sol.t_gate_over_pi),
        "congruence_n": sol.big_n,
        "congruence_m": sol.big_m,
        "encoding": match a.encoding {
            EncodingArg::Direct => "direct",
            EncodingArg::Bell => "bell",
        },
        "evaluated_at": t,
        "fidelity": rep.fidelity,
        "global_phase": rep.global_phase,
        "phase_profile": rep.phase_profile.to_vec(),
        "leakage": gm.leakage,
        "leakage_flagged": rep.leakage_flagged,
        "sector_phase": gm.sector_phase,
        "sector_phase_trivial": gm.sector_phase_trivial,
        "matrix": matrix_rows,
    });
    if let Some(pt) = a.probe_time {
        let probe = probe_gate_time(&sol, pt);
        doc["probe"] = json!({
            "time": pt,
            "s0_magnitude": probe.s0_magnitude,
            "s1_magnitude": probe.s1_magnitude,
            "cos0": probe.cos0,
            "cos1": probe.cos1,
            "realizes_gate": probe.realizes_gate,
        });
    }
    emit(&a.out, &format!("{doc:#}\n"))
}

fn run_wstate(a: WstateArgs) -> Result<()> {
    let t_full = w_full_transfer_time(a.modes, a.gamma)?;
    let t = a.time.unwrap_or(t_full);
    let w = w_state(a.modes, t, a.gamma)?;
    let doc = json!({
        "modes": a.modes,
        "gamma": a.gamma,
        "time": t,
        "full_transfer_time": t_full,
        "excited_amplitude": { "re": w.excited_amplitude.re, "im": w.excited_amplitude.im },
        "mode_amplitudes": w
            .mode_amplitudes
            .iter()
            .map(|z| json!({ "re": z.re, "im": z.im }))
            .collect::<Vec<_>>(),
        "fidelity_to_w": w.fidelity_to_w(),
        "norm": w.norm(),
    });
    emit(&a.out, &format!("{doc:#}\n"))
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<()> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::InvalidParam(format!("cannot create {dir:?}: {e}")))?;
    let path = dir.join(name);
    fs::write(&path, content)
        .map_err(|e| Error::InvalidParam(format!("cannot write {path:?}: {e}")))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn axis_label(x: f64) -> String {
    format!("{x}").replace('.', "p")
}

fn run_repro(a: ReproArgs) -> Result<()> {
    let gamma = 1.0;
    match a.figure {
        Figure::Tz => {
            let p = JCParams::resonant(gamma)?;
            let grid = linspace(TWO_PI, a.steps.unwrap_or(1000))?;
            let series = negativity_timeseries(&InitialState::Vacuum, &p, &grid)?;
            write_file(&a.out_dir, "tz.csv", &series_csv(&series, true))
        }
        Figure::Negav => {
            let p = JCParams::resonant(gamma)?;
            let grid = linspace(TWO_PI, a.steps.unwrap_or(400))?;
            for eta_inv in [0.0, 0.5, 1.0, 5.0] {
                let spec = ThermalSpec::sized_for(eta_inv, 1e-8)?;
                let series = negativity_timeseries(&InitialState::Thermal(spec), &p, &grid)?;
                write_file(
                    &a.out_dir,
                    &format!("negav_eta_inv_{}.csv", axis_label(eta_inv)),
                    &series_csv(&series, false),
                )?;
            }
            Ok(())
        }
        Figure::Det0 => {
            let grid = linspace(2.0 * TWO_PI, a.steps.unwrap_or(1000))?;
            for delta in [0.0, 1.0, 2.0] {
                let p = params_for(gamma, delta)?;
                let series = negativity_timeseries(&InitialState::Vacuum, &p, &grid)?;
                write_file(
                    &a.out_dir,
                    &format!("det0_delta_{}.csv", axis_label(delta)),
                    &series_csv(&series, false),
                )?;
            }
            Ok(())
        }
        Figure::Detvar => {
            let p = JCParams::detuned(gamma, 1.0)?;
            let grid = linspace(TWO_PI, a.steps.unwrap_or(400))?;
            for eta_inv in [0.0, 0.5, 1.0, 5.0] {
                let spec = ThermalSpec::sized_for(eta_inv, 1e-8)?;
                let series = negativity_timeseries(&InitialState::Thermal(spec), &p, &grid)?;
                write_file(
                    &a.out_dir,
                    &format!("detvar_eta_inv_{}.csv", axis_label(eta_inv)),
                    &series_csv(&series, false),
                )?;
            }
            Ok(())
        }
        Figure::Enpow => {
            let p = JCParams::resonant(gamma)?;
            let grid = axis(0.0, 10.0, 21)?;
            // 600 samples keep the hot end of the curve tractable; the
            // refinement still pins each supremum
            let window = TimeWindow {
                coarse_samples: a.samples.unwrap_or(600),
                ..TimeWindow::default_for(&p)
            };
            let out = ep_vs_temperature(&grid, &p, 1e-6, Some(window))?;
            write_file(&a.out_dir, "enpow.csv", &sweep_csv(&out))
        }
        Figure::Epdet => {
            let grid = axis(0.0, 10.0, 41)?;
            let out = ep_vs_detuning(&grid, gamma, None)?;
            write_file(&a.out_dir, "epdet.csv", &sweep_csv(&out))
        }
        Figure::Ep3d => {
            let grid = axis(0.0, 5.0, 6)?;
            let window = a.samples.map(|s| {
                let p = JCParams::resonant(gamma).expect("gamma is 1");
                TimeWindow {
                    coarse_samples: s,
                    ..TimeWindow::default_for(&p)
                }
            });
            let surface = ep_surface(&grid, &grid, gamma, 1e-6, window)?;
            write_file(&a.out_dir, "ep3d.csv", &surface_csv(&surface))
        }
    }
}
