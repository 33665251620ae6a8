//! Closed-form quantities of the F-AF chain: energies in spin and angle
//! form, the effective potential, derived constants and the conversions
//! between the two formulations.
//!
//! Angles live on J = [-pi/2, pi/2]; chains are cyclic, so index i + n is
//! identified with index i and every bond sum wraps around.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Tolerance for unit-norm checks on spin vectors.
const UNIT_TOL: f64 = 1e-9;

/// True if `theta` lies in the admissible interval J = [-pi/2, pi/2].
pub fn in_angle_domain(theta: f64) -> bool {
    (-FRAC_PI_2..=FRAC_PI_2).contains(&theta)
}

/// Helimagnetic pitch angle: arccos(alpha/4) for alpha in [0,4], zero beyond.
pub fn pitch_angle(alpha: f64) -> f64 {
    if alpha >= 4.0 {
        0.0
    } else {
        (alpha / 4.0).acos()
    }
}

/// Minimal energy per site. The two branches agree (= -3) at alpha = 4.
pub fn minimal_energy_density(alpha: f64) -> f64 {
    if alpha <= 4.0 {
        -(alpha * alpha / 8.0 + 1.0)
    } else {
        1.0 - alpha
    }
}

/// Near-critical scaling denominator mu_alpha = sqrt(2) (4-alpha)^{3/2} / 8.
pub fn scaling_denominator(alpha: f64) -> f64 {
    let eps = (4.0 - alpha).max(0.0);
    2.0f64.sqrt() * eps.powf(1.5) / 8.0
}

/// All alpha- and n-dependent scalars in one place.
///
/// `wall_modulus` (M_alpha = 3 C_alpha / 8) depends on the solved wall energy
/// and stays `None` until a crease value is supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedConstants {
    pub alpha: f64,
    pub n: usize,
    /// theta_alpha = arccos(alpha/4) on [0,4], 0 past the transition.
    pub theta_alpha: f64,
    /// m_alpha, the per-site minimum of the interaction energy.
    pub m_alpha: f64,
    /// mu_alpha = sqrt(2) (4-alpha)^{3/2} / 8; zero iff alpha >= 4.
    pub mu_alpha: f64,
    /// lambda_{n,alpha} = 2 n theta_alpha^4.
    pub lambda_n_alpha: f64,
    /// M_alpha = 3 C_alpha / 8, set once the wall energy is known.
    pub wall_modulus: Option<f64>,
}

/// Collect every derived constant for a given (alpha, n).
pub fn derive_constants(alpha: f64, n: usize) -> Result<DerivedConstants> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be >= 3, got {n}")));
    }
    let theta = pitch_angle(alpha);
    Ok(DerivedConstants {
        alpha,
        n,
        theta_alpha: theta,
        m_alpha: minimal_energy_density(alpha),
        mu_alpha: scaling_denominator(alpha),
        lambda_n_alpha: 2.0 * n as f64 * theta.powi(4),
        wall_modulus: None,
    })
}

impl DerivedConstants {
    /// Fill in M_alpha = 3 C_alpha / 8 from a solved wall energy.
    pub fn with_wall_energy(mut self, c_alpha: f64) -> Self {
        self.wall_modulus = Some(3.0 * c_alpha / 8.0);
        self
    }
}

/// Effective potential W_alpha(theta) = cos 2theta - alpha cos theta - m_alpha.
///
/// Double-well with zeros at +-theta_alpha for alpha < 4, convex with its
/// zero at 0 for alpha >= 4.
pub fn effective_potential(alpha: f64, theta: f64) -> Result<f64> {
    if !in_angle_domain(theta) {
        return Err(Error::InvalidArgument(format!(
            "theta = {theta} outside [-pi/2, pi/2]"
        )));
    }
    Ok((2.0 * theta).cos() - alpha * theta.cos() - minimal_energy_density(alpha))
}

/// Periodic angle configuration (theta^0, ..., theta^{n-1}), entries in J.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleChain {
    thetas: Vec<f64>,
}

impl AngleChain {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "chain needs at least 3 sites, got {}",
                thetas.len()
            )));
        }
        for (i, &t) in thetas.iter().enumerate() {
            if !t.is_finite() || !in_angle_domain(t) {
                return Err(Error::InvalidArgument(format!(
                    "theta^{i} = {t} outside [-pi/2, pi/2]"
                )));
            }
        }
        Ok(Self { thetas })
    }

    /// Constant chain theta^i = value.
    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cyclic access: theta^{i+n} == theta^i.
    pub fn get(&self, i: usize) -> f64 {
        self.thetas[i % self.thetas.len()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.thetas
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.thetas
    }
}

/// Periodic chain of planar unit spins.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinChain {
    spins: Vec<[f64; 2]>,
}

impl SpinChain {
    pub fn new(spins: Vec<[f64; 2]>) -> Result<Self> {
        if spins.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "chain needs at least 3 sites, got {}",
                spins.len()
            )));
        }
        for (i, s) in spins.iter().enumerate() {
            let norm = (s[0] * s[0] + s[1] * s[1]).sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "spin {i} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { spins })
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cyclic access: u^{i+n} == u^i.
    pub fn get(&self, i: usize) -> [f64; 2] {
        self.spins[i % self.spins.len()]
    }

    pub fn as_slice(&self) -> &[[f64; 2]] {
        &self.spins
    }
}

/// Chirality sign and oriented central angle between two unit vectors.
///
/// chi = sign(v1 w2 - v2 w1) with the convention sign(0) = -1; the angle is
/// chi * arccos((v,w)), mapped into [-pi, pi).
pub fn oriented_angle(v: [f64; 2], w: [f64; 2]) -> Result<(i8, f64)> {
    for (name, s) in [("v", v), ("w", w)] {
        let norm = (s[0] * s[0] + s[1] * s[1]).sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidArgument(format!(
                "{name} has norm {norm}, expected unit"
            )));
        }
    }
    let det = v[0] * w[1] - v[1] * w[0];
    let chi: i8 = if det > 0.0 { 1 } else { -1 };
    let dot = (v[0] * w[0] + v[1] * w[1]).clamp(-1.0, 1.0);
    let mut theta = chi as f64 * dot.acos();
    if theta >= std::f64::consts::PI {
        theta -= 2.0 * std::f64::consts::PI;
    }
    Ok((chi, theta))
}

/// Per-bond energy density: cos(a+b) - alpha/2 (cos a + cos b) - m_alpha.
#[inline]
pub fn bond_energy(a: f64, b: f64, alpha: f64, m_alpha: f64) -> f64 {
    (a + b).cos() - 0.5 * alpha * (a.cos() + b.cos()) - m_alpha
}

/// Cyclic bond sum over a raw angle slice (no domain validation).
pub(crate) fn energy_slice(th: &[f64], alpha: f64) -> f64 {
    let n = th.len();
    let m = minimal_energy_density(alpha);
    let mut e = 0.0;
    for i in 0..n {
        e += bond_energy(th[i], th[(i + 1) % n], alpha, m);
    }
    e
}

/// Analytic gradient of the cyclic bond sum over a raw angle slice.
pub(crate) fn gradient_slice(th: &[f64], alpha: f64, g: &mut [f64]) {
    let n = th.len();
    for k in 0..n {
        let prev = th[(k + n - 1) % n];
        let next = th[(k + 1) % n];
        g[k] = -(prev + th[k]).sin() - (th[k] + next).sin() + alpha * th[k].sin();
    }
}

/// Chain energy in the angle formulation (cyclic bond sum).
pub fn energy_angles(chain: &AngleChain, alpha: f64) -> f64 {
    energy_slice(chain.as_slice(), alpha)
}

/// Analytic gradient of `energy_angles` with respect to each angle.
pub fn energy_gradient(chain: &AngleChain, alpha: f64) -> Vec<f64> {
    let mut g = vec![0.0; chain.len()];
    gradient_slice(chain.as_slice(), alpha, &mut g);
    g
}

/// Chain energy in the spin formulation:
/// -alpha sum (u^i, u^{i+1}) + sum (u^i, u^{i+2}) - n m_alpha.
pub fn energy_spins(chain: &SpinChain, alpha: f64) -> f64 {
    let n = chain.len();
    let mut nn = 0.0;
    let mut nnn = 0.0;
    for i in 0..n {
        let a = chain.get(i);
        let b = chain.get(i + 1);
        let c = chain.get(i + 2);
        nn += a[0] * b[0] + a[1] * b[1];
        nnn += a[0] * c[0] + a[1] * c[1];
    }
    -alpha * nn + nnn - n as f64 * minimal_energy_density(alpha)
}

/// Sum of the effective potential evaluated at the bond midpoints. Always a
/// lower bound for `energy_angles`, with equality on constant chains.
pub fn potential_lower_bound(chain: &AngleChain, alpha: f64) -> f64 {
    let m = minimal_energy_density(alpha);
    let n = chain.len();
    // each bond is bounded below by W at the bond midpoint: with the sum
    // theta^i + theta^{i+1} fixed, the nearest-neighbour part is minimal
    // when both angles equal the midpoint
    (0..n)
        .map(|i| {
            let t = 0.5 * (chain.get(i) + chain.get((i + 1) % n));
            (2.0 * t).cos() - alpha * t.cos() - m
        })
        .sum()
}

/// Scaled energy F = E / mu_alpha; undefined at alpha >= 4 where mu = 0.
pub fn scaled_energy(chain: &AngleChain, alpha: f64) -> Result<f64> {
    if alpha >= 4.0 {
        return Err(Error::ScalingUndefined { alpha });
    }
    Ok(energy_angles(chain, alpha) / scaling_denominator(alpha))
}

/// Rebuild a spin chain from consecutive oriented angles, starting at `u0`.
///
/// The returned closure defect is |sum theta^i mod 2pi|, folded into
/// [-pi, pi] and reported in absolute value. The angle sum of a chain need
/// not be a multiple of 2pi; the cyclic energy only reads consecutive pairs,
/// so the chain is returned regardless and the defect is metadata.
pub fn spins_from_angles(chain: &AngleChain, u0: [f64; 2]) -> Result<(SpinChain, f64)> {
    let norm = (u0[0] * u0[0] + u0[1] * u0[1]).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidArgument(format!(
            "u0 has norm {norm}, expected unit"
        )));
    }
    let n = chain.len();
    let mut spins = Vec::with_capacity(n);
    // Track the accumulated rotation; each spin is u0 rotated by the prefix sum.
    let base = u0[1].atan2(u0[0]);
    let mut acc = 0.0;
    for i in 0..n {
        let phi = base + acc;
        spins.push([phi.cos(), phi.sin()]);
        acc += chain.get(i);
    }
    let defect = {
        let two_pi = 2.0 * std::f64::consts::PI;
        let r = acc.rem_euclid(two_pi);
        r.min(two_pi - r)
    };
    Ok((SpinChain::new(spins)?, defect))
}

/// Read off the oriented angles of a spin chain (cyclic).
///
/// Fails with the offending index if some consecutive angle leaves J, where
/// the angle formulation of the energy is not available.
pub fn angles_from_spins(chain: &SpinChain) -> Result<AngleChain> {
    let n = chain.len();
    let mut thetas = Vec::with_capacity(n);
    for i in 0..n {
        let (_, theta) = oriented_angle(chain.get(i), chain.get(i + 1))?;
        if !in_angle_domain(theta) {
            return Err(Error::DomainViolation { index: i, theta });
        }
        thetas.push(theta.clamp(-FRAC_PI_2, FRAC_PI_2));
    }
    AngleChain::new(thetas)
}
