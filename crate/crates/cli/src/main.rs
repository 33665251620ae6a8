//! Command-line front end: chain energies, ground-state and wall-profile
//! minimization, near-critical sweeps and the phase diagram, with
//! deterministic CSV/JSON output.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use output::{Format, Table, Val};
use spinwall_core::ground_state::{self, Init, MinimizeOptions, PinSet};
use spinwall_core::{continuum, crease, model, scaling};

#[derive(Parser)]
#[command(
    name = "spinwall",
    about = "Frustrated spin-chain energies, chirality-wall profiles and scaling regimes",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random initial chains.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write a whitespace-separated .dat for plotting.
    #[arg(long, global = true)]
    gnuplot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy of an explicitly constructed chain.
    Energy {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        /// Constant chain: "theta-alpha", "minus-theta-alpha" or an angle.
        #[arg(long, conflicts_with = "random")]
        constant: Option<String>,
        /// Uniform random chain drawn with --seed.
        #[arg(long)]
        random: bool,
    },
    /// Ground-state minimization, optionally with forced chirality walls.
    Minimize {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        /// Initial chain: constant-plus, constant-minus, random or tanh.
        #[arg(long, default_value = "constant-plus")]
        init: String,
        /// Even number of pinned chirality walls (0 = free).
        #[arg(long, default_value_t = 0)]
        jumps: usize,
        #[arg(long, default_value_t = 50_000)]
        max_iterations: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Wall energy C_alpha with adaptive window growth.
    Crease {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
    },
    /// C_alpha over a uniform alpha grid.
    CreaseSweep {
        #[arg(long, default_value_t = 0.0)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.99)]
        alpha_max: f64,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
    },
    /// Log-log fit of C_alpha against 4 - alpha near the transition.
    FitAsymptotics {
        #[arg(long, default_value_t = 3.9)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.999)]
        alpha_max: f64,
        #[arg(long, default_value_t = 12)]
        points: usize,
        #[arg(long, default_value_t = 1e-8)]
        rel_tol: f64,
    },
    /// Scaled minimum and regime label at one (n, alpha).
    Regimes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 2)]
        jumps: usize,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
    },
    /// Discrete vs continuum Modica-Mortola comparison.
    MmCompare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 2)]
        jumps: usize,
    },
    /// Regime labels over an (n, alpha) grid.
    PhaseDiagram {
        /// Comma-separated site counts.
        #[arg(long)]
        n_grid: String,
        /// Comma-separated alpha values in [0, 4).
        #[arg(long)]
        alpha_grid: String,
        #[arg(long, default_value_t = 2)]
        jumps: usize,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
    },
}

/// Validation failure (exit 1) or solver non-convergence (exit 2).
enum RunError {
    Invalid(String),
    NotConverged(String),
    Io(std::io::Error),
}

impl From<spinwall_core::Error> for RunError {
    fn from(e: spinwall_core::Error) -> Self {
        RunError::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; fold all parse failures into
            // the validation exit code except the help/version paths
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::NotConverged(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn require_subcritical(alpha: f64, what: &str) -> Result<(), RunError> {
    if alpha >= 4.0 {
        return Err(RunError::Invalid(format!(
            "{what} is undefined for alpha = {alpha}: alpha = 4 is the singular point \
             of the scaling limit; use alpha in [0, 4)"
        )));
    }
    if alpha < 0.0 {
        return Err(RunError::Invalid(format!("alpha must be nonnegative, got {alpha}")));
    }
    Ok(())
}

fn emit(cli: &Cli, table: &Table) -> Result<(), RunError> {
    table.emit(cli.format, cli.out.as_deref(), cli.gnuplot)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), RunError> {
    match &cli.command {
        Command::Energy {
            alpha,
            n,
            constant,
            random,
        } => cmd_energy(cli, *alpha, *n, constant.as_deref(), *random),
        Command::Minimize {
            alpha,
            n,
            init,
            jumps,
            max_iterations,
            tol,
        } => cmd_minimize(cli, *alpha, *n, init, *jumps, *max_iterations, *tol),
        Command::Crease { alpha, rel_tol } => cmd_crease(cli, *alpha, *rel_tol),
        Command::CreaseSweep {
            alpha_min,
            alpha_max,
            points,
            rel_tol,
        } => cmd_crease_sweep(cli, *alpha_min, *alpha_max, *points, *rel_tol),
        Command::FitAsymptotics {
            alpha_min,
            alpha_max,
            points,
            rel_tol,
        } => cmd_fit(cli, *alpha_min, *alpha_max, *points, *rel_tol),
        Command::Regimes {
            n,
            alpha,
            jumps,
            grid,
        } => cmd_regimes(cli, *n, *alpha, *jumps, *grid),
        Command::MmCompare { n, alpha, jumps } => cmd_mm_compare(cli, *n, *alpha, *jumps),
        Command::PhaseDiagram {
            n_grid,
            alpha_grid,
            jumps,
            grid,
        } => cmd_phase_diagram(cli, n_grid, alpha_grid, *jumps, *grid),
    }
}

fn cmd_energy(
    cli: &Cli,
    alpha: f64,
    n: usize,
    constant: Option<&str>,
    random: bool,
) -> Result<(), RunError> {
    if alpha < 0.0 {
        return Err(RunError::Invalid(format!("alpha must be nonnegative, got {alpha}")));
    }
    if n < 3 {
        return Err(RunError::Invalid(format!("n must be >= 3, got {n}")));
    }
    let theta_a = model::pitch_angle(alpha);
    let (label, chain) = if random {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
        let thetas = (0..n)
            .map(|_| rng.gen_range(-std::f64::consts::FRAC_PI_2..=std::f64::consts::FRAC_PI_2))
            .collect();
        ("random".to_string(), spinwall_core::AngleChain::new(thetas)?)
    } else {
        let spec = constant.unwrap_or("theta-alpha");
        let value = match spec {
            "theta-alpha" => theta_a,
            "minus-theta-alpha" => -theta_a,
            other => other.parse::<f64>().map_err(|_| {
                RunError::Invalid(format!(
                    "--constant expects theta-alpha, minus-theta-alpha or an angle, got {other:?}"
                ))
            })?,
        };
        (spec.to_string(), spinwall_core::AngleChain::constant(n, value)?)
    };

    let energy = model::energy_angles(&chain, alpha);
    let mut table = Table::new(&["alpha", "chain", "n", "energy", "energy_per_site", "theta_alpha"]);
    table.meta("command", Val::Str("energy".into()));
    table.meta("seed", Val::UInt(cli.seed));
    table.push(vec![
        Val::Float(alpha),
        Val::Str(label),
        Val::UInt(n as u64),
        Val::Float(energy),
        Val::Float(energy / n as f64),
        Val::Float(theta_a),
    ]);
    emit(cli, &table)
}

fn parse_init(name: &str, seed: u64, n: usize, jumps: usize) -> Result<Init, RunError> {
    match name {
        "constant-plus" => Ok(Init::ConstantPlus),
        "constant-minus" => Ok(Init::ConstantMinus),
        "random" => Ok(Init::Random(seed)),
        "tanh" => {
            if jumps == 0 {
                return Ok(Init::ConstantPlus);
            }
            let walls = (0..jumps).map(|j| ((2 * j + 1) * n) / (2 * jumps)).collect();
            Ok(Init::TanhWall(walls))
        }
        other => Err(RunError::Invalid(format!(
            "unknown init {other:?}: expected constant-plus, constant-minus, random or tanh"
        ))),
    }
}

fn cmd_minimize(
    cli: &Cli,
    alpha: f64,
    n: usize,
    init: &str,
    jumps: usize,
    max_iterations: usize,
    tol: f64,
) -> Result<(), RunError> {
    if alpha < 0.0 {
        return Err(RunError::Invalid(format!("alpha must be nonnegative, got {alpha}")));
    }
    if jumps % 2 != 0 {
        return Err(RunError::Invalid(format!(
            "jump count must be even on a cyclic chain, got {jumps}"
        )));
    }
    if tol <= 0.0 {
        return Err(RunError::Invalid(format!("tol must be positive, got {tol}")));
    }
    let mut opts = MinimizeOptions::default();
    opts.max_iterations = max_iterations;
    opts.gradient_tolerance = tol;
    opts.init = parse_init(init, cli.seed, n, jumps)?;

    let result = if jumps == 0 {
        ground_state::minimize_periodic(n, alpha, &opts)?
    } else {
        let pins = PinSet::alternating(n, jumps, alpha)?;
        ground_state::minimize_constrained(n, alpha, &pins, &opts)?
    };
    let profile = ground_state::chirality_profile(&result.chain, 1e-6);
    let scaled = if alpha < 4.0 {
        result.energy / model::scaling_denominator(alpha)
    } else {
        f64::NAN
    };

    let mut table = Table::new(&[
        "alpha",
        "init",
        "jumps",
        "n",
        "energy",
        "iterations",
        "jump_count",
        "scaled_energy",
        "converged",
    ]);
    table.meta("command", Val::Str("minimize".into()));
    table.meta("gradient_tolerance", Val::Float(tol));
    table.meta("max_iterations", Val::UInt(max_iterations as u64));
    table.meta("seed", Val::UInt(cli.seed));
    table.push(vec![
        Val::Float(alpha),
        Val::Str(init.to_string()),
        Val::UInt(jumps as u64),
        Val::UInt(n as u64),
        Val::Float(result.energy),
        Val::UInt(result.iterations as u64),
        Val::UInt(profile.jump_count as u64),
        Val::Float(scaled),
        Val::Bool(result.converged),
    ]);
    emit(cli, &table)?;
    if !result.converged {
        return Err(RunError::NotConverged(format!(
            "minimization stopped after {} iterations above tolerance",
            result.iterations
        )));
    }
    Ok(())
}

fn cmd_crease(cli: &Cli, alpha: f64, rel_tol: f64) -> Result<(), RunError> {
    require_subcritical(alpha, "the crease energy")?;
    if rel_tol <= 0.0 {
        return Err(RunError::Invalid(format!("rel_tol must be positive, got {rel_tol}")));
    }
    let r = crease::crease_energy(alpha, rel_tol)?;

    match cli.format {
        Format::Json => {
            // single flat record with the window history inline
            let history: Vec<serde_json::Value> = r
                .window_history
                .iter()
                .map(|&(n, e)| serde_json::json!({"half_width": n, "energy": e}))
                .collect();
            let doc = serde_json::json!({
                "alpha": alpha,
                "C": r.energy,
                "N_final": r.profile.half_width,
                "converged": r.converged,
                "history": history,
                "metadata": {
                    "command": "crease",
                    "rel_tol": rel_tol,
                    "initial_half_width": crease::initial_half_width(alpha),
                },
            });
            let mut text = serde_json::to_string_pretty(&doc).unwrap();
            text.push('\n');
            match cli.out.as_deref() {
                Some(path) => std::fs::write(path, text).map_err(RunError::Io)?,
                None => print!("{text}"),
            }
        }
        Format::Csv => {
            let mut table = Table::new(&["alpha", "half_width", "energy", "converged"]);
            table.meta("command", Val::Str("crease".into()));
            table.meta("rel_tol", Val::Float(rel_tol));
            table.meta("C", Val::Float(r.energy));
            table.meta("N_final", Val::UInt(r.profile.half_width as u64));
            for &(n, e) in &r.window_history {
                table.push(vec![
                    Val::Float(alpha),
                    Val::UInt(n as u64),
                    Val::Float(e),
                    Val::Bool(r.converged),
                ]);
            }
            emit(cli, &table)?;
        }
    }
    if !r.converged {
        return Err(RunError::NotConverged(
            "crease window did not saturate; refine rel_tol or widen the window".into(),
        ));
    }
    Ok(())
}

fn uniform_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, RunError> {
    if points < 2 || hi <= lo {
        return Err(RunError::Invalid(format!(
            "need at least 2 points and max > min, got [{lo}, {hi}] with {points}"
        )));
    }
    Ok((0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect())
}

fn cmd_crease_sweep(
    cli: &Cli,
    alpha_min: f64,
    alpha_max: f64,
    points: usize,
    rel_tol: f64,
) -> Result<(), RunError> {
    require_subcritical(alpha_max, "the crease energy")?;
    require_subcritical(alpha_min, "the crease energy")?;
    let alphas = uniform_grid(alpha_min, alpha_max, points)?;

    // keyed by grid index, so thread scheduling cannot reorder rows
    let results: Vec<(usize, spinwall_core::Result<crease::CreaseResult>)> = alphas
        .par_iter()
        .enumerate()
        .map(|(i, &a)| (i, crease::crease_energy(a, rel_tol)))
        .collect();

    let mut table = Table::new(&[
        "alpha",
        "energy",
        "half_width",
        "prediction",
        "upper_bound",
        "converged",
    ]);
    table.meta("command", Val::Str("crease-sweep".into()));
    table.meta("rel_tol", Val::Float(rel_tol));
    let mut all_converged = true;
    let mut sorted = results;
    sorted.sort_by_key(|&(i, _)| i);
    for (i, res) in sorted {
        let alpha = alphas[i];
        let r = res?;
        all_converged &= r.converged;
        table.push(vec![
            Val::Float(alpha),
            Val::Float(r.energy),
            Val::UInt(r.profile.half_width as u64),
            Val::Float(crease::crease_asymptotic_prediction(alpha)),
            Val::Float(crease::crease_upper_bound(alpha)?),
            Val::Bool(r.converged),
        ]);
    }
    emit(cli, &table)?;
    if !all_converged {
        return Err(RunError::NotConverged("some sweep points did not converge".into()));
    }
    Ok(())
}

fn cmd_fit(
    cli: &Cli,
    alpha_min: f64,
    alpha_max: f64,
    points: usize,
    rel_tol: f64,
) -> Result<(), RunError> {
    require_subcritical(alpha_max, "the asymptotic fit")?;
    require_subcritical(alpha_min, "the asymptotic fit")?;
    if points < 5 {
        return Err(RunError::Invalid(format!("need at least 5 points, got {points}")));
    }
    // log-spaced in epsilon = 4 - alpha so the fit weights decades evenly
    let eps_lo = (4.0 - alpha_max).ln();
    let eps_hi = (4.0 - alpha_min).ln();
    let alphas: Vec<f64> = (0..points)
        .map(|i| 4.0 - (eps_lo + (eps_hi - eps_lo) * i as f64 / (points - 1) as f64).exp())
        .collect();

    let results: Vec<(usize, spinwall_core::Result<crease::CreaseResult>)> = alphas
        .par_iter()
        .enumerate()
        .map(|(i, &a)| (i, crease::crease_energy(a, rel_tol)))
        .collect();
    let mut sorted = results;
    sorted.sort_by_key(|&(i, _)| i);
    let mut sample = Vec::with_capacity(points);
    let mut all_converged = true;
    for (i, res) in sorted {
        let r = res?;
        all_converged &= r.converged;
        sample.push((alphas[i], r.energy));
    }
    let fit = crease::fit_asymptotics(&sample)?;

    let mut table = Table::new(&[
        "alpha_max",
        "alpha_min",
        "points",
        "exponent",
        "prefactor",
        "prefactor_target",
        "r_squared",
    ]);
    table.meta("command", Val::Str("fit-asymptotics".into()));
    table.meta("rel_tol", Val::Float(rel_tol));
    table.push(vec![
        Val::Float(alpha_max),
        Val::Float(alpha_min),
        Val::UInt(points as u64),
        Val::Float(fit.exponent),
        Val::Float(fit.prefactor),
        Val::Float(2f64.sqrt() / 3.0),
        Val::Float(fit.r_squared),
    ]);
    emit(cli, &table)?;
    if !all_converged {
        return Err(RunError::NotConverged("some fit points did not converge".into()));
    }
    Ok(())
}

fn cmd_regimes(cli: &Cli, n: usize, alpha: f64, jumps: usize, grid: usize) -> Result<(), RunError> {
    require_subcritical(alpha, "the scaled energy")?;
    if jumps % 2 != 0 || jumps < 2 {
        return Err(RunError::Invalid(format!(
            "jumps must be even and >= 2, got {jumps}"
        )));
    }
    let point = scaling::phase_point(n, alpha, jumps, grid, &MinimizeOptions::default())?;
    let sharp = 8.0 / 3.0 * jumps as f64;

    let mut table = Table::new(&[
        "alpha",
        "grid",
        "jumps",
        "n",
        "epsilon",
        "l_value",
        "measured",
        "regime",
        "sharp_prediction",
        "converged",
    ]);
    table.meta("command", Val::Str("regimes".into()));
    table.meta("ferro_threshold", Val::Float(2.0 * sharp));
    table.push(vec![
        Val::Float(alpha),
        Val::UInt(grid as u64),
        Val::UInt(jumps as u64),
        Val::UInt(n as u64),
        Val::Float(point.epsilon),
        Val::Float(point.l_value),
        Val::Float(point.measured),
        Val::Str(point.regime.label().into()),
        Val::Float(sharp),
        Val::Bool(point.converged),
    ]);
    emit(cli, &table)
}

fn cmd_mm_compare(cli: &Cli, n: usize, alpha: f64, jumps: usize) -> Result<(), RunError> {
    require_subcritical(alpha, "the Modica-Mortola comparison")?;
    if jumps % 2 != 0 {
        return Err(RunError::Invalid(format!("jumps must be even, got {jumps}")));
    }
    let r = continuum::equivalence_report(n, alpha, jumps, &MinimizeOptions::default())?;

    let mut table = Table::new(&[
        "alpha",
        "jumps",
        "n",
        "c_alpha",
        "continuum_min",
        "discrete_min",
        "grid",
        "max_relative_gap",
        "prediction",
    ]);
    table.meta("command", Val::Str("mm-compare".into()));
    table.push(vec![
        Val::Float(r.alpha),
        Val::UInt(r.jumps as u64),
        Val::UInt(r.n as u64),
        Val::Float(r.c_alpha),
        Val::Float(r.continuum_min),
        Val::Float(r.discrete_min),
        Val::UInt(r.grid as u64),
        Val::Float(r.max_relative_gap),
        Val::Float(r.prediction),
    ]);
    emit(cli, &table)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, RunError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|_| RunError::Invalid(format!("bad {what} entry {tok:?}")))
        })
        .collect()
}

fn cmd_phase_diagram(
    cli: &Cli,
    n_grid: &str,
    alpha_grid: &str,
    jumps: usize,
    grid: usize,
) -> Result<(), RunError> {
    let ns: Vec<usize> = parse_list(n_grid, "n")?;
    let alphas: Vec<f64> = parse_list(alpha_grid, "alpha")?;
    if ns.is_empty() || alphas.is_empty() {
        return Err(RunError::Invalid("empty phase-diagram grid".into()));
    }
    for &a in &alphas {
        require_subcritical(a, "the phase diagram")?;
    }
    if jumps % 2 != 0 || jumps < 2 {
        return Err(RunError::Invalid(format!(
            "jumps must be even and >= 2, got {jumps}"
        )));
    }

    let keys: Vec<(usize, usize)> = (0..ns.len())
        .flat_map(|i| (0..alphas.len()).map(move |j| (i, j)))
        .collect();
    let opts = MinimizeOptions::default();
    let results: Vec<((usize, usize), spinwall_core::Result<scaling::RegimePoint>)> = keys
        .par_iter()
        .map(|&(i, j)| ((i, j), scaling::phase_point(ns[i], alphas[j], jumps, grid, &opts)))
        .collect();
    let mut sorted = results;
    sorted.sort_by_key(|&(k, _)| k);

    let mut table = Table::new(&[
        "alpha",
        "jumps",
        "n",
        "epsilon",
        "inverse_n",
        "l_value",
        "measured",
        "regime",
        "converged",
    ]);
    table.meta("command", Val::Str("phase-diagram".into()));
    table.meta("ferro_threshold", Val::Float(2.0 * 8.0 / 3.0 * jumps as f64));
    table.meta("grid", Val::UInt(grid as u64));
    let mut all_ok = true;
    for ((i, j), res) in sorted {
        match res {
            Ok(p) => table.push(vec![
                Val::Float(p.alpha),
                Val::UInt(jumps as u64),
                Val::UInt(p.n as u64),
                Val::Float(p.epsilon),
                Val::Float(1.0 / p.n as f64),
                Val::Float(p.l_value),
                Val::Float(p.measured),
                Val::Str(p.regime.label().into()),
                Val::Bool(p.converged),
            ]),
            Err(e) => {
                // record the failed key, keep sweeping
                all_ok = false;
                table.push(vec![
                    Val::Float(alphas[j]),
                    Val::UInt(jumps as u64),
                    Val::UInt(ns[i] as u64),
                    Val::Float(4.0 - alphas[j]),
                    Val::Float(1.0 / ns[i] as f64),
                    Val::Float(f64::NAN),
                    Val::Float(f64::NAN),
                    Val::Str(format!("error: {e}")),
                    Val::Bool(false),
                ]);
            }
        }
    }
    emit(cli, &table)?;
    if !all_ok {
        return Err(RunError::NotConverged("some phase-diagram points failed".into()));
    }
    Ok(())
}
