//! Near-critical order parameter, scaled energies, the regime trichotomy in
//! the interface parameter l, and the (1/n, alpha) phase diagram near the
//! transition point alpha = 4.

use crate::continuum::{self, FunctionalKind};
use crate::error::{Error, Result};
use crate::ground_state::{self, Init, MinimizeOptions, PinSet};
use crate::model::{self, AngleChain};

/// Chain in the order parameter v = theta/theta_alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderParameterChain {
    pub values: Vec<f64>,
    pub alpha: f64,
}

impl OrderParameterChain {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn require_subcritical(alpha: f64) -> Result<f64> {
    if !(0.0..4.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in [0, 4), got {alpha}"
        )));
    }
    Ok(model::pitch_angle(alpha))
}

pub fn to_order_parameter(chain: &AngleChain, alpha: f64) -> Result<OrderParameterChain> {
    let theta_a = require_subcritical(alpha)?;
    Ok(OrderParameterChain {
        values: chain.as_slice().iter().map(|t| t / theta_a).collect(),
        alpha,
    })
}

pub fn from_order_parameter(v: &OrderParameterChain) -> Result<AngleChain> {
    let theta_a = require_subcritical(v.alpha)?;
    AngleChain::new(v.values.iter().map(|x| x * theta_a).collect())
}

/// Interface parameter l = sqrt(2) / (4 n sqrt(4 - alpha)).
pub fn l_value(n: usize, alpha: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be >= 3, got {n}")));
    }
    require_subcritical(alpha)?;
    Ok(std::f64::consts::SQRT_2 / (4.0 * n as f64 * (4.0 - alpha).sqrt()))
}

/// Parameter of the symmetric continuum functional matched by the discrete
/// chain at interface parameter `l`.
///
/// The quartic expansion of the scaled chain energy has potential weight
/// 1/(4 l) and gradient weight 4 l, which is the symmetric form
/// (1/l') P + l' G at l' = 4 l. Sharp-interface costs are unaffected
/// (the product of the weights is 1 either way), but finite-l comparisons
/// between discrete minima and the continuum functional must use l' = 4 l.
pub fn matched_continuum_l(l: f64) -> f64 {
    4.0 * l
}

/// Limit energy of the trichotomy at the given l, with `jumps` sign changes.
///
/// l = 0 gives the sharp-interface count (8/3) * jumps; l = infinity gives 0
/// for constants and an infinite marker otherwise; finite positive l gives
/// the constrained continuum minimum on `grid` nodes.
pub fn regime_limit_energy(l: f64, jumps: usize, grid: usize) -> Result<f64> {
    if jumps % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "jump count must be even, got {jumps}"
        )));
    }
    if l < 0.0 || l.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "l must be nonnegative, got {l}"
        )));
    }
    if l == 0.0 {
        return Ok(8.0 / 3.0 * jumps as f64);
    }
    if l.is_infinite() {
        return Ok(if jumps == 0 { 0.0 } else { f64::INFINITY });
    }
    if jumps == 0 {
        return Ok(0.0);
    }
    let pins = continuum::wall_pins(jumps, grid, 1.0)?;
    let (_, value) = continuum::minimize_functional(
        FunctionalKind::F0 { l },
        grid,
        &pins,
        None,
        &MinimizeOptions::default(),
    )?;
    Ok(value)
}

/// Constrained minimum of the scaled chain energy F = E / mu_alpha with
/// `jumps` forced chirality walls (k = 0 is the free ground state).
pub fn min_scaled_energy(
    n: usize,
    alpha: f64,
    jumps: usize,
    opts: &MinimizeOptions,
) -> Result<f64> {
    require_subcritical(alpha)?;
    let result = if jumps == 0 {
        let mut o = opts.clone();
        o.init = Init::ConstantPlus;
        ground_state::minimize_periodic(n, alpha, &o)?
    } else {
        let pins = PinSet::alternating(n, jumps, alpha)?;
        let walls: Vec<usize> = (0..jumps)
            .map(|j| ((2 * j + 1) * n) / (2 * jumps))
            .collect();
        let mut o = opts.clone();
        o.init = Init::TanhWall(walls);
        ground_state::minimize_constrained(n, alpha, &pins, &o)?
    };
    model::scaled_energy(&result.chain, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Sharp,
    Diffuse,
    Ferro,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Sharp => "sharp",
            Regime::Diffuse => "diffuse",
            Regime::Ferro => "ferro",
        }
    }
}

/// Nearest-candidate classifier over the trichotomy. Ferro is chosen
/// whenever the measured energy exceeds twice the sharp prediction.
///
/// `l` is the parameter of the continuum functional; when classifying a
/// discrete chain pass [`matched_continuum_l`] of its interface parameter.
pub fn classify_regime(measured: f64, l: f64, jumps: usize, grid: usize) -> Result<Regime> {
    if jumps < 2 {
        return Err(Error::InvalidArgument(format!(
            "classification needs at least 2 jumps, got {jumps}"
        )));
    }
    let sharp = 8.0 / 3.0 * jumps as f64;
    if measured > 2.0 * sharp {
        return Ok(Regime::Ferro);
    }
    let diffuse = regime_limit_energy(l, jumps, grid)?;
    let diffuse = if diffuse.is_finite() { diffuse } else { 2.0 * sharp };
    if (measured - sharp).abs() <= (measured - diffuse).abs() {
        Ok(Regime::Sharp)
    } else {
        Ok(Regime::Diffuse)
    }
}

#[derive(Debug, Clone)]
pub struct RegimePoint {
    pub n: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub l_value: f64,
    pub measured: f64,
    pub regime: Regime,
    pub converged: bool,
}

/// Sweep the (n, alpha) grid, measuring the constrained scaled energy and
/// labelling each point. Failed points are skipped with their error.
pub fn phase_diagram(
    n_grid: &[usize],
    alpha_grid: &[f64],
    jumps: usize,
    grid: usize,
    opts: &MinimizeOptions,
) -> Result<(Vec<RegimePoint>, Vec<(usize, f64, Error)>)> {
    if n_grid.is_empty() || alpha_grid.is_empty() {
        return Err(Error::InvalidArgument("empty phase-diagram grid".into()));
    }
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for &n in n_grid {
        for &alpha in alpha_grid {
            match phase_point(n, alpha, jumps, grid, opts) {
                Ok(p) => points.push(p),
                Err(e) => failures.push((n, alpha, e)),
            }
        }
    }
    Ok((points, failures))
}

pub fn phase_point(
    n: usize,
    alpha: f64,
    jumps: usize,
    grid: usize,
    opts: &MinimizeOptions,
) -> Result<RegimePoint> {
    let l = l_value(n, alpha)?;
    let measured = min_scaled_energy(n, alpha, jumps, opts)?;
    let regime = classify_regime(measured, matched_continuum_l(l), jumps, grid)?;
    Ok(RegimePoint {
        n,
        alpha,
        epsilon: 4.0 - alpha,
        l_value: l,
        measured,
        regime,
        converged: true,
    })
}
