//! Grid discretizations of the phase-transition functionals: the
//! near-critical limit functional, the Modica-Mortola families in the order
//! parameter and in the angle variable, interface costs, and the report
//! comparing discrete and continuum minima.
//!
//! Quadrature is trapezoidal for potential terms and forward-difference for
//! gradient terms, so gradients of the discretized functionals are exact.

use crate::crease;
use crate::error::{Error, Result};
use crate::ground_state::MinimizeOptions;
use crate::model;
use crate::optim::{self, BoxSpec};
use crate::scaling;

/// Uniform-grid function on [0, 1] with nodes t_j = j/(m-1).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<f64>,
    /// Whether the endpoint-magnitude constraint |v(0)| = |v(1)| is claimed.
    periodic_modulus: bool,
}

impl GridFunction {
    pub fn new(values: Vec<f64>, periodic_modulus: bool) -> Result<Self> {
        if values.len() < 64 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 64 nodes, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite grid value".into()));
        }
        if periodic_modulus {
            let defect = (values[0].abs() - values[values.len() - 1].abs()).abs();
            if defect > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "endpoint magnitudes differ by {defect} under the periodic-modulus flag"
                )));
            }
        }
        Ok(Self {
            values,
            periodic_modulus,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn periodic_modulus(&self) -> bool {
        self.periodic_modulus
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / (self.values.len() - 1) as f64
    }
}

/// Quartic double-well energy a * int (v^2 - w^2)^2 + b * int (v')^2 on the
/// grid; every functional in this module is an instance of it.
#[derive(Debug, Clone, Copy)]
struct QuarticGridFunctional {
    potential_weight: f64,
    gradient_weight: f64,
    well: f64,
}

impl QuarticGridFunctional {
    fn energy(&self, v: &[f64]) -> f64 {
        let m = v.len();
        let h = 1.0 / (m - 1) as f64;
        let w2 = self.well * self.well;
        let mut pot = 0.0;
        for (j, &x) in v.iter().enumerate() {
            let weight = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
            pot += weight * (x * x - w2).powi(2);
        }
        let mut dir = 0.0;
        for pair in v.windows(2) {
            let d = (pair[1] - pair[0]) / h;
            dir += d * d;
        }
        self.potential_weight * pot * h + self.gradient_weight * dir * h
    }

    fn gradient(&self, v: &[f64], g: &mut [f64]) {
        let m = v.len();
        let h = 1.0 / (m - 1) as f64;
        let w2 = self.well * self.well;
        for (j, &x) in v.iter().enumerate() {
            let weight = if j == 0 || j == m - 1 { 0.5 } else { 1.0 };
            g[j] = self.potential_weight * weight * h * 4.0 * x * (x * x - w2);
        }
        let k = 2.0 * self.gradient_weight / h;
        for j in 0..m {
            if j > 0 {
                g[j] += k * (v[j] - v[j - 1]);
            }
            if j + 1 < m {
                g[j] -= k * (v[j + 1] - v[j]);
            }
        }
    }
}

fn f0_functional(l: f64) -> Result<QuarticGridFunctional> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "interface parameter l must be positive and finite, got {l}"
        )));
    }
    Ok(QuarticGridFunctional {
        potential_weight: 1.0 / l,
        gradient_weight: l,
        well: 1.0,
    })
}

fn g_functional(n: usize, alpha: f64, c_alpha: f64) -> Result<QuarticGridFunctional> {
    if alpha >= 4.0 {
        return Err(Error::SingularPoint { alpha });
    }
    if !(c_alpha > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "wall energy must be positive, got {c_alpha}"
        )));
    }
    let k = model::derive_constants(alpha, n)?.with_wall_energy(c_alpha);
    let m_big = k.wall_modulus.unwrap();
    Ok(QuarticGridFunctional {
        potential_weight: k.lambda_n_alpha / k.mu_alpha,
        gradient_weight: m_big * m_big / (k.lambda_n_alpha * k.mu_alpha),
        well: 1.0,
    })
}

fn h_functional(n: usize, alpha: f64, c_alpha: f64) -> Result<QuarticGridFunctional> {
    if alpha >= 4.0 {
        return Err(Error::SingularPoint { alpha });
    }
    let k = model::derive_constants(alpha, n)?.with_wall_energy(c_alpha);
    let m_big = k.wall_modulus.unwrap();
    let t4 = k.theta_alpha.powi(4);
    let t2 = k.theta_alpha.powi(2);
    Ok(QuarticGridFunctional {
        potential_weight: k.lambda_n_alpha / t4,
        gradient_weight: m_big * m_big / (k.lambda_n_alpha * t2),
        well: k.theta_alpha,
    })
}

/// Near-critical limit functional (1/l) int (v^2-1)^2 + l int (v')^2.
pub fn continuum_f0(v: &GridFunction, l: f64) -> Result<f64> {
    Ok(f0_functional(l)?.energy(v.values()))
}

/// Modica-Mortola family in the order parameter v = theta/theta_alpha.
pub fn mm_energy_g(v: &GridFunction, n: usize, alpha: f64, c_alpha: f64) -> Result<f64> {
    Ok(g_functional(n, alpha, c_alpha)?.energy(v.values()))
}

/// Modica-Mortola family in the angle variable, wells at +-theta_alpha.
/// Satisfies H(theta) = mu_alpha * G(theta/theta_alpha) exactly.
pub fn mm_energy_h(theta: &GridFunction, n: usize, alpha: f64, c_alpha: f64) -> Result<f64> {
    Ok(h_functional(n, alpha, c_alpha)?.energy(theta.values()))
}

/// Double-well potential with its two zeros and an evaluator.
pub struct DoubleWellSpec {
    pub well_left: f64,
    pub well_right: f64,
    pub evaluator: Box<dyn Fn(f64) -> f64>,
}

impl DoubleWellSpec {
    /// The canonical well (v^2 - 1)^2.
    pub fn quartic_unit() -> Self {
        Self {
            well_left: -1.0,
            well_right: 1.0,
            evaluator: Box::new(|v| (v * v - 1.0).powi(2)),
        }
    }

    /// The angle-variable well (theta^2 - theta_alpha^2)^2.
    pub fn quartic_angle(theta_alpha: f64) -> Self {
        Self {
            well_left: -theta_alpha,
            well_right: theta_alpha,
            evaluator: Box::new(move |t| (t * t - theta_alpha * theta_alpha).powi(2)),
        }
    }
}

/// Interface cost c_W = 2 int_a^b sqrt(W) by adaptive Simpson quadrature.
pub fn interface_cost(spec: &DoubleWellSpec) -> Result<f64> {
    if spec.well_left > spec.well_right {
        return Err(Error::InvalidArgument(
            "well_left must not exceed well_right".into(),
        ));
    }
    if spec.well_left == spec.well_right {
        return Ok(0.0);
    }
    let f = |s: f64| -> Result<f64> {
        let w = (spec.evaluator)(s);
        if w < -1e-12 {
            return Err(Error::InvalidArgument(format!(
                "potential negative at s = {s}: {w}"
            )));
        }
        Ok(w.max(0.0).sqrt())
    };
    let integral = adaptive_simpson(&f, spec.well_left, spec.well_right, 1e-10, 40)?;
    Ok(2.0 * integral)
}

fn adaptive_simpson(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let c = 0.5 * (a + b);
    let fa = f(a)?;
    let fb = f(b)?;
    let fc = f(c)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    simpson_recurse(f, a, b, fa, fb, fc, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse(
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fc: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let c = 0.5 * (a + b);
    let d = 0.5 * (a + c);
    let e = 0.5 * (c + b);
    let fd = f(d)?;
    let fe = f(e)?;
    let left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    let right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        Ok(left + right + delta / 15.0)
    } else {
        Ok(simpson_recurse(f, a, c, fa, fc, fd, left, 0.5 * tol, depth - 1)?
            + simpson_recurse(f, c, b, fc, fb, fe, right, 0.5 * tol, depth - 1)?)
    }
}

/// Which grid functional to minimize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionalKind {
    /// Near-critical limit functional at interface parameter l.
    F0 { l: f64 },
    /// G family; the wall energy is an explicit input.
    G { n: usize, alpha: f64, c_alpha: f64 },
    /// H family in the angle variable.
    H { n: usize, alpha: f64, c_alpha: f64 },
}

impl FunctionalKind {
    fn build(&self) -> Result<QuarticGridFunctional> {
        match *self {
            FunctionalKind::F0 { l } => f0_functional(l),
            FunctionalKind::G { n, alpha, c_alpha } => g_functional(n, alpha, c_alpha),
            FunctionalKind::H { n, alpha, c_alpha } => h_functional(n, alpha, c_alpha),
        }
    }
}

/// Sign pins (node index, value) for a grid minimization.
pub type NodePins = Vec<(usize, f64)>;

/// Pin layout forcing `jumps` sign changes: both endpoints at the right
/// well and alternating interior pins at t = j/jumps, matching the equally
/// spaced cyclic pin layout of the discrete chain.
pub fn wall_pins(jumps: usize, grid: usize, well: f64) -> Result<NodePins> {
    if jumps % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "jump count must be even, got {jumps}"
        )));
    }
    let mut pins = vec![(0, well), (grid - 1, well)];
    for j in 1..jumps {
        let node = (j * (grid - 1)) / jumps;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        pins.push((node, sign * well));
    }
    Ok(pins)
}

/// Piecewise-tanh seed through the pins, kink width matched to the
/// functional's own interface scale.
fn tanh_seed_from_pins(pins: &NodePins, grid: usize, width: f64, well: f64) -> Vec<f64> {
    if pins.is_empty() {
        return vec![well; grid];
    }
    let mut sorted = pins.clone();
    sorted.sort_by_key(|&(j, _)| j);
    let h = 1.0 / (grid - 1) as f64;
    (0..grid)
        .map(|j| {
            let t = j as f64 * h;
            // value of the nearest pin, smoothed through sign changes by a
            // tanh ramp centred between pins of opposite sign
            let mut value = sorted[0].1;
            for w in sorted.windows(2) {
                let (j0, v0) = w[0];
                let (j1, v1) = w[1];
                let t0 = j0 as f64 * h;
                let t1 = j1 as f64 * h;
                if t >= t0 && t <= t1 {
                    if (v0 > 0.0) == (v1 > 0.0) {
                        value = if t - t0 < t1 - t { v0 } else { v1 };
                    } else {
                        let mid = 0.5 * (t0 + t1);
                        let mag = 0.5 * (v0.abs() + v1.abs());
                        let dir = if v1 > v0 { 1.0 } else { -1.0 };
                        value = dir * mag * ((t - mid) / width).tanh();
                    }
                    return value;
                }
                value = v1;
            }
            value
        })
        .collect()
}

/// Minimize a grid functional with pinned nodes held fixed.
pub fn minimize_functional(
    kind: FunctionalKind,
    grid: usize,
    pins: &NodePins,
    init: Option<GridFunction>,
    opts: &MinimizeOptions,
) -> Result<(GridFunction, f64)> {
    if grid < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid must be >= 64, got {grid}"
        )));
    }
    let functional = kind.build()?;
    for &(j, _) in pins {
        if j >= grid {
            return Err(Error::InvalidArgument(format!("pin node {j} out of range")));
        }
    }

    let width = (functional.gradient_weight / functional.potential_weight).sqrt();
    let mut x0 = match init {
        Some(v) => {
            if v.len() != grid {
                return Err(Error::InvalidArgument(format!(
                    "init has {} nodes, expected {grid}",
                    v.len()
                )));
            }
            v.values().to_vec()
        }
        None => tanh_seed_from_pins(pins, grid, width, functional.well),
    };
    for &(j, v) in pins {
        x0[j] = v;
    }

    let mut spec = BoxSpec::all_free(grid, f64::NEG_INFINITY, f64::INFINITY);
    for &(j, _) in pins {
        spec.free[j] = false;
    }

    let report = optim::minimize_box(
        &x0,
        &spec,
        opts.max_iterations,
        opts.gradient_tolerance,
        opts.step,
        |x, g| {
            functional.gradient(x, g);
            functional.energy(x)
        },
    );
    let value = report.value;
    let modulus_ok =
        (report.x[0].abs() - report.x[grid - 1].abs()).abs() <= 1e-9;
    Ok((GridFunction::new(report.x, modulus_ok)?, value))
}

/// v_j = tanh((t_j - center)/l).
pub fn tanh_profile(l: f64, center: f64, grid: usize) -> Result<GridFunction> {
    if !(l > 0.0) {
        return Err(Error::InvalidArgument(format!("l must be positive, got {l}")));
    }
    if grid < 64 {
        return Err(Error::InvalidArgument(format!(
            "grid must be >= 64, got {grid}"
        )));
    }
    let values = (0..grid)
        .map(|j| {
            let t = j as f64 / (grid - 1) as f64;
            ((t - center) / l).tanh()
        })
        .collect();
    GridFunction::new(values, false)
}

/// Side-by-side comparison of the discrete scaled minimum, the continuum
/// G minimum and the fixed-alpha wall-counting prediction.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub n: usize,
    pub alpha: f64,
    pub jumps: usize,
    pub c_alpha: f64,
    pub grid: usize,
    pub discrete_min: f64,
    pub continuum_min: f64,
    /// (8 C_alpha / (sqrt(2) (4-alpha)^{3/2})) * jumps.
    pub prediction: f64,
    pub max_relative_gap: f64,
}

/// Grid fine enough to resolve the G kink: at least 16 nodes per interface
/// width, floored at the 2048-node default.
pub fn equivalence_grid(n: usize, alpha: f64, c_alpha: f64) -> Result<usize> {
    let functional = g_functional(n, alpha, c_alpha)?;
    let width = (functional.gradient_weight / functional.potential_weight).sqrt();
    let needed = (16.0 / width).ceil() as usize;
    Ok(needed.max(2048))
}

pub fn equivalence_report(
    n: usize,
    alpha: f64,
    jumps: usize,
    opts: &MinimizeOptions,
) -> Result<EquivalenceReport> {
    if alpha >= 4.0 {
        return Err(Error::SingularPoint { alpha });
    }
    if jumps % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "jump count must be even, got {jumps}"
        )));
    }

    let c_alpha = crease::crease_energy(alpha, 1e-8)?.energy;
    let mu = model::scaling_denominator(alpha);
    let prediction = c_alpha / mu * jumps as f64;

    let discrete_min = scaling::min_scaled_energy(n, alpha, jumps, opts)?;

    let (continuum_min, grid) = if jumps == 0 {
        (0.0, 2048)
    } else {
        let grid = equivalence_grid(n, alpha, c_alpha)?;
        let pins = wall_pins(jumps, grid, 1.0)?;
        let kind = FunctionalKind::G { n, alpha, c_alpha };
        let (_, value) = minimize_functional(kind, grid, &pins, None, opts)?;
        (value, grid)
    };

    let gaps = if jumps == 0 {
        0.0
    } else {
        let vals = [discrete_min, continuum_min, prediction];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in i + 1..3 {
                worst = worst.max((vals[i] - vals[j]).abs() / vals[j].abs().max(1e-300));
            }
        }
        worst
    };

    Ok(EquivalenceReport {
        n,
        alpha,
        jumps,
        c_alpha,
        grid,
        discrete_min,
        continuum_min,
        prediction,
        max_relative_gap: gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn constant(m: usize, v: f64) -> GridFunction {
        GridFunction::new(vec![v; m], true).unwrap()
    }

    #[test]
    fn f0_examples() {
        assert_abs_diff_eq!(continuum_f0(&constant(128, 1.0), 0.3).unwrap(), 0.0);
        // v = 0: potential term integrates to exactly 1
        assert_abs_diff_eq!(continuum_f0(&constant(1001, 0.0), 1.0).unwrap(), 1.0, epsilon = 1e-12);

        let v = tanh_profile(0.05, 0.5, 4096).unwrap();
        let e = continuum_f0(&v, 0.05).unwrap();
        assert_abs_diff_eq!(e, 8.0 / 3.0, epsilon = 1e-3);

        assert!(continuum_f0(&constant(128, 0.0), 0.0).is_err());
    }

    #[test]
    fn quadrature_order_under_refinement() {
        // smooth profile fixed, grid doubled: error drops like h^2
        let reference = {
            let v = tanh_profile(0.1, 0.5, 1 << 17).unwrap();
            continuum_f0(&v, 0.1).unwrap()
        };
        let e1 = continuum_f0(&tanh_profile(0.1, 0.5, 1024).unwrap(), 0.1).unwrap();
        let e2 = continuum_f0(&tanh_profile(0.1, 0.5, 2048).unwrap(), 0.1).unwrap();
        let order = ((e1 - reference).abs() / (e2 - reference).abs()).log2();
        assert!(order >= 1.9, "observed order {order}");
    }

    #[test]
    fn g_vanishes_at_wells_and_scales_at_zero() {
        assert_abs_diff_eq!(mm_energy_g(&constant(128, 1.0), 100, 2.0, 0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(mm_energy_g(&constant(128, -1.0), 100, 2.0, 0.5).unwrap(), 0.0);

        let lambda = model::derive_constants(2.0, 100).unwrap().lambda_n_alpha;
        let e = mm_energy_g(&constant(1001, 0.0), 100, 2.0, 0.5).unwrap();
        assert_abs_diff_eq!(e, 2.0 * lambda, epsilon = 1e-9);
    }

    #[test]
    fn h_change_of_variables() {
        let theta_a = model::pitch_angle(2.0);
        assert_abs_diff_eq!(mm_energy_h(&constant(128, theta_a), 100, 2.0, 0.5).unwrap(), 0.0);

        let lambda = model::derive_constants(2.0, 100).unwrap().lambda_n_alpha;
        let e = mm_energy_h(&constant(1001, 0.0), 100, 2.0, 0.5).unwrap();
        assert_abs_diff_eq!(e, lambda, epsilon = 1e-9);

        // H(theta) = mu * G(theta/theta_alpha) on random grid functions
        let mu = model::scaling_denominator(2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let theta: Vec<f64> = (0..128).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let v: Vec<f64> = theta.iter().map(|t| t / theta_a).collect();
            let h = mm_energy_h(&GridFunction::new(theta, false).unwrap(), 100, 2.0, 0.5).unwrap();
            let g = mm_energy_g(&GridFunction::new(v, false).unwrap(), 100, 2.0, 0.5).unwrap();
            assert!((h - mu * g).abs() <= 1e-10 * h.abs().max(1.0));
        }
    }

    #[test]
    fn interface_cost_examples() {
        let c = interface_cost(&DoubleWellSpec::quartic_unit()).unwrap();
        assert_abs_diff_eq!(c, 8.0 / 3.0, epsilon = 1e-9);

        for alpha in [0.0, 1.0, 2.0, 3.0] {
            let theta_a = model::pitch_angle(alpha);
            let c = interface_cost(&DoubleWellSpec::quartic_angle(theta_a)).unwrap();
            assert_abs_diff_eq!(c, 8.0 / 3.0 * theta_a.powi(3), epsilon = 1e-9);
        }

        let degenerate = DoubleWellSpec {
            well_left: 0.3,
            well_right: 0.3,
            evaluator: Box::new(|_| 0.0),
        };
        assert_eq!(interface_cost(&degenerate).unwrap(), 0.0);

        let bad = DoubleWellSpec {
            well_left: -1.0,
            well_right: 1.0,
            evaluator: Box::new(|_| -1.0),
        };
        assert!(interface_cost(&bad).is_err());
    }

    #[test]
    fn two_wall_minimum_near_sharp_limit() {
        let pins = wall_pins(2, 2048, 1.0).unwrap();
        let (v, value) = minimize_functional(
            FunctionalKind::F0 { l: 0.05 },
            2048,
            &pins,
            None,
            &MinimizeOptions::default(),
        )
        .unwrap();
        assert!(v.periodic_modulus());
        assert!((value - 16.0 / 3.0).abs() / (16.0 / 3.0) < 0.05, "value {value}");
    }

    #[test]
    fn unconstrained_g_minimum_is_flat() {
        let (v, value) = minimize_functional(
            FunctionalKind::G { n: 100, alpha: 2.0, c_alpha: 0.5 },
            128,
            &Vec::new(),
            None,
            &MinimizeOptions::default(),
        )
        .unwrap();
        assert!(value.abs() < 1e-8);
        let s = v.values()[0].signum();
        for &x in v.values() {
            assert_abs_diff_eq!(x, s, epsilon = 1e-6);
        }
    }

    #[test]
    fn seeded_profile_is_not_better_than_minimizer() {
        let pins = wall_pins(2, 1024, 1.0).unwrap();
        let l = 0.05;
        let (_, minimized) = minimize_functional(
            FunctionalKind::F0 { l },
            1024,
            &pins,
            None,
            &MinimizeOptions::default(),
        )
        .unwrap();
        // single centred kink as a handmade competitor with the pins applied
        let mut handmade = tanh_profile(l, 0.25, 1024).unwrap().values().to_vec();
        for x in handmade.iter_mut() {
            *x = -*x;
        }
        for &(j, v) in &pins {
            handmade[j] = v;
        }
        let e = continuum_f0(&GridFunction::new(handmade, false).unwrap(), l).unwrap();
        assert!(e >= minimized - 1e-9);
    }

    #[test]
    fn tanh_profile_examples() {
        let v = tanh_profile(0.05, 0.5, 4097).unwrap();
        assert_abs_diff_eq!(v.values()[2048], 0.0, epsilon = 1e-12);
        assert!(v.values()[4096] > 0.9999);

        // equipartition residual shrinks under refinement
        let residual = |grid: usize| -> f64 {
            let l = 0.05;
            let v = tanh_profile(l, 0.5, grid).unwrap();
            let h = 1.0 / (grid - 1) as f64;
            let mut worst: f64 = 0.0;
            for j in 0..grid - 1 {
                let d = (v.values()[j + 1] - v.values()[j]) / h;
                let mid = 0.5 * (v.values()[j] + v.values()[j + 1]);
                worst = worst.max((l * d * d - (mid * mid - 1.0).powi(2) / l).abs());
            }
            worst
        };
        assert!(residual(8192) < residual(1024));
    }

    #[test]
    fn gradient_of_each_functional_matches_finite_differences() {
        let kinds = [
            FunctionalKind::F0 { l: 0.1 },
            FunctionalKind::G { n: 50, alpha: 2.0, c_alpha: 0.5 },
            FunctionalKind::H { n: 50, alpha: 2.0, c_alpha: 0.5 },
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for kind in kinds {
            let f = kind.build().unwrap();
            let mut v: Vec<f64> = (0..96).map(|_| rng.gen_range(-1.2..1.2)).collect();
            let mut g = vec![0.0; v.len()];
            f.gradient(&v, &mut g);
            for j in 0..v.len() {
                let h = 1e-6;
                let orig = v[j];
                v[j] = orig + h;
                let ep = f.energy(&v);
                v[j] = orig - h;
                let em = f.energy(&v);
                v[j] = orig;
                let fd = (ep - em) / (2.0 * h);
                let scale = g[j].abs().max(1.0);
                assert!((g[j] - fd).abs() / scale < 1e-5, "{kind:?} node {j}: {} vs {fd}", g[j]);
            }
        }
    }

    #[test]
    fn report_rejects_singular_point() {
        assert!(matches!(
            equivalence_report(100, 4.0, 2, &MinimizeOptions::default()),
            Err(Error::SingularPoint { .. })
        ));
    }
}
