//! Minimization of the periodic chain energy over angle configurations,
//! free or with pinned sites, plus the brute-force grid oracle and the
//! chirality bookkeeping.

use std::f64::consts::FRAC_PI_2;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{self, AngleChain};
use crate::optim::{self, BoxSpec, StepControl};

/// Initial configuration for a chain solve.
#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    /// Constant chain at +theta_alpha.
    ConstantPlus,
    /// Constant chain at -theta_alpha.
    ConstantMinus,
    /// Uniform draw from J with the given 64-bit seed.
    Random(u64),
    /// Tanh wall profile with walls at the given (strictly increasing) sites.
    TanhWall(Vec<usize>),
    Explicit(AngleChain),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeOptions {
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub init: Init,
    pub step: StepControl,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            max_iterations: 50_000,
            gradient_tolerance: 1e-10,
            init: Init::ConstantPlus,
            step: StepControl::default(),
        }
    }
}

impl MinimizeOptions {
    pub fn with_init(init: Init) -> Self {
        Self {
            init,
            ..Self::default()
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.gradient_tolerance <= 0.0 {
            return Err(Error::InvalidArgument(
                "gradient_tolerance must be positive".into(),
            ));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be positive".into()));
        }
        if let Init::TanhWall(walls) = &self.init {
            if !walls.windows(2).all(|w| w[0] < w[1]) || walls.iter().any(|&w| w >= n) {
                return Err(Error::InvalidArgument(
                    "wall positions must be strictly increasing and within [0, n)".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Outcome of a chain minimization.
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub chain: AngleChain,
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Seed used by a random init, recorded for reproducibility.
    pub seed: Option<u64>,
    /// Energy after each accepted solver step.
    pub trace: Vec<f64>,
}

/// Pinned sites (index, angle), all indices distinct and angles in J.
#[derive(Debug, Clone, PartialEq)]
pub struct PinSet {
    pins: Vec<(usize, f64)>,
}

impl PinSet {
    pub fn new(mut pins: Vec<(usize, f64)>) -> Result<Self> {
        pins.sort_by_key(|&(i, _)| i);
        for pair in pins.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate pin index {}",
                    pair[0].0
                )));
            }
        }
        for &(i, t) in &pins {
            if !model::in_angle_domain(t) {
                return Err(Error::InvalidArgument(format!(
                    "pin angle {t} at site {i} outside [-pi/2, pi/2]"
                )));
            }
        }
        Ok(Self { pins })
    }

    pub fn empty() -> Self {
        Self { pins: Vec::new() }
    }

    pub fn pins(&self) -> &[(usize, f64)] {
        &self.pins
    }

    /// k alternating pins at equally spaced sites, starting with
    /// +theta_alpha at site 0.
    pub fn alternating(n: usize, k: usize, alpha: f64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::empty());
        }
        if k % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "jump count must be even, got {k}"
            )));
        }
        if n < k {
            return Err(Error::InvalidArgument(format!("n = {n} smaller than k = {k}")));
        }
        let theta = model::pitch_angle(alpha);
        let pins = (0..k)
            .map(|j| {
                let site = j * n / k;
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                (site, sign * theta)
            })
            .collect();
        Self::new(pins)
    }
}

fn build_init(n: usize, alpha: f64, init: &Init, pins: &PinSet) -> Result<(Vec<f64>, Option<u64>)> {
    let theta = model::pitch_angle(alpha);
    let x = match init {
        Init::ConstantPlus => (vec![theta; n], None),
        Init::ConstantMinus => (vec![-theta; n], None),
        Init::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (
                (0..n).map(|_| rng.gen_range(-FRAC_PI_2..=FRAC_PI_2)).collect(),
                Some(*seed),
            )
        }
        Init::TanhWall(walls) => (tanh_wall_profile(n, alpha, walls), None),
        Init::Explicit(chain) => {
            if chain.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "explicit init has {} sites, expected {n}",
                    chain.len()
                )));
            }
            (chain.as_slice().to_vec(), None)
        }
    };
    let (mut x, seed) = x;
    for &(i, t) in pins.pins() {
        if i >= n {
            return Err(Error::InvalidArgument(format!("pin index {i} out of range")));
        }
        x[i] = t;
    }
    Ok((x, seed))
}

/// Alternating tanh profile with walls at the given sites. The wall width is
/// the discrete kink scale sqrt(2/(4-alpha)) sites, floored at one site.
fn tanh_wall_profile(n: usize, alpha: f64, walls: &[usize]) -> Vec<f64> {
    let theta = model::pitch_angle(alpha);
    if walls.is_empty() {
        return vec![theta; n];
    }
    let width = (2.0 / (4.0 - alpha).max(1e-12)).sqrt().max(1.0);
    (0..n)
        .map(|i| {
            // region sign alternates at each wall, starting + before walls[0]
            // (cyclically the count of walls passed determines the sign)
            let passed = walls.iter().filter(|&&w| w <= i).count();
            let sign = if passed % 2 == 0 { 1.0 } else { -1.0 };
            // cyclic distance to the nearest wall
            let d = walls
                .iter()
                .map(|&w| {
                    let d = (i as isize - w as isize).unsigned_abs();
                    d.min(n - d)
                })
                .min()
                .unwrap() as f64;
            sign * theta * (d / width).tanh()
        })
        .collect()
}

fn solve(n: usize, alpha: f64, pins: &PinSet, opts: &MinimizeOptions) -> Result<MinimizeResult> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be >= 3, got {n}")));
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    opts.validate(n)?;
    let (x0, seed) = build_init(n, alpha, &opts.init, pins)?;

    let mut spec = BoxSpec::all_free(n, -FRAC_PI_2, FRAC_PI_2);
    for &(i, _) in pins.pins() {
        spec.free[i] = false;
    }

    let report = optim::minimize_box(
        &x0,
        &spec,
        opts.max_iterations,
        opts.gradient_tolerance,
        opts.step,
        |x, g| {
            model::gradient_slice(x, alpha, g);
            model::energy_slice(x, alpha)
        },
    );

    let chain = AngleChain::new(report.x)?;
    let energy = model::energy_angles(&chain, alpha);
    Ok(MinimizeResult {
        chain,
        energy,
        iterations: report.iterations,
        converged: report.converged,
        seed,
        trace: report.trace,
    })
}

/// Minimize the free periodic chain energy.
pub fn minimize_periodic(n: usize, alpha: f64, opts: &MinimizeOptions) -> Result<MinimizeResult> {
    solve(n, alpha, &PinSet::empty(), opts)
}

/// Minimize with the pinned sites held fixed.
pub fn minimize_constrained(
    n: usize,
    alpha: f64,
    pins: &PinSet,
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    solve(n, alpha, pins, opts)
}

/// Exhaustive minimum over all grid_points^n chains on a uniform grid of J.
pub fn brute_force_minimum(n: usize, alpha: f64, grid_points: usize) -> Result<(AngleChain, f64)> {
    if n < 3 || n > 8 || grid_points < 3 || grid_points > 41 {
        return Err(Error::CostGuard { n, grid_points });
    }
    let total = (grid_points as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > 500_000_000 {
        return Err(Error::CostGuard { n, grid_points });
    }
    // uniform grid on J including both endpoints; odd counts include 0
    let grid: Vec<f64> = (0..grid_points)
        .map(|j| -FRAC_PI_2 + std::f64::consts::PI * j as f64 / (grid_points - 1) as f64)
        .collect();
    let cos_grid: Vec<f64> = grid.iter().map(|t| t.cos()).collect();
    let m = model::minimal_energy_density(alpha);

    let mut idx = vec![0usize; n];
    let mut best = f64::INFINITY;
    let mut best_idx = idx.clone();
    loop {
        let mut e = 0.0;
        for i in 0..n {
            let a = idx[i];
            let b = idx[(i + 1) % n];
            e += (grid[a] + grid[b]).cos() - 0.5 * alpha * (cos_grid[a] + cos_grid[b]) - m;
            if e >= best {
                break;
            }
        }
        if e < best {
            best = e;
            best_idx.copy_from_slice(&idx);
        }
        // odometer increment
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < grid_points {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == n {
                let chain = AngleChain::new(best_idx.iter().map(|&j| grid[j]).collect())?;
                return Ok((chain, best));
            }
        }
    }
}

/// Per-site chirality signs and the cyclic jump set of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiralityProfile {
    pub signs: Vec<i8>,
    /// Number of cyclic sign changes; even for any periodic chain.
    pub jump_count: usize,
    /// Indices i at which signs[i] != signs[i+1 mod n].
    pub jump_positions: Vec<usize>,
    /// Set when every angle sits inside the dead zone.
    pub zero_chirality: bool,
}

/// Extract chirality signs with a dead zone around zero. Sites inside the
/// dead zone inherit the preceding site's sign, seeded cyclically at the
/// first site with |theta| above the dead zone.
pub fn chirality_profile(chain: &AngleChain, dead_zone: f64) -> ChiralityProfile {
    let n = chain.len();
    let th = chain.as_slice();
    let start = th.iter().position(|t| t.abs() > dead_zone);
    let Some(start) = start else {
        return ChiralityProfile {
            signs: vec![-1; n],
            jump_count: 0,
            jump_positions: Vec::new(),
            zero_chirality: true,
        };
    };

    let mut signs = vec![0i8; n];
    let mut current: i8 = if th[start] > 0.0 { 1 } else { -1 };
    for k in 0..n {
        let i = (start + k) % n;
        if th[i] > dead_zone {
            current = 1;
        } else if th[i] < -dead_zone {
            current = -1;
        }
        signs[i] = current;
    }

    let jump_positions: Vec<usize> = (0..n).filter(|&i| signs[i] != signs[(i + 1) % n]).collect();
    ChiralityProfile {
        jump_count: jump_positions.len(),
        jump_positions,
        signs,
        zero_chirality: false,
    }
}
