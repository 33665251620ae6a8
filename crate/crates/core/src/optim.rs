//! Projected gradient minimization on a box, with Barzilai-Borwein step
//! seeding and a nonmonotone backtracking line search; the reported trace
//! and result are the best iterates, so both stay monotone.
//!
//! This is the single solver behind the chain, wall-profile and continuum
//! minimizations. Coordinates can be pinned (held fixed) and bounds may be
//! infinite, in which case the projection is a no-op.

/// Backtracking parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub initial_step: f64,
    pub shrink: f64,
    pub sufficient_decrease: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            initial_step: 1.0,
            shrink: 0.5,
            sufficient_decrease: 1e-4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoxSpec {
    pub lower: f64,
    pub upper: f64,
    /// true = coordinate is free; false = pinned at its initial value.
    pub free: Vec<bool>,
}

impl BoxSpec {
    pub fn all_free(n: usize, lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            free: vec![true; n],
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Best energy seen after each accepted step (monotone non-increasing).
    pub trace: Vec<f64>,
}

/// Minimize `objective` over the box, starting from `x0`.
///
/// `objective(x, grad)` fills the gradient and returns the value. The
/// stopping criterion is the infinity norm of the projected gradient step
/// x - P(x - g).
pub fn minimize_box<F>(
    x0: &[f64],
    spec: &BoxSpec,
    max_iterations: usize,
    gradient_tolerance: f64,
    step: StepControl,
    mut objective: F,
) -> SolveReport
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(spec.free.len(), n);
    let clamp = |v: f64| v.clamp(spec.lower, spec.upper);

    let mut x: Vec<f64> = x0.iter().map(|&v| clamp(v)).collect();
    // pinned coordinates keep their exact initial values
    for i in 0..n {
        if !spec.free[i] {
            x[i] = x0[i];
        }
    }

    let mut g = vec![0.0; n];
    let mut f = objective(&x, &mut g);
    mask(&mut g, &spec.free);

    // best iterate seen; returned so the reported value never exceeds the
    // starting energy even though the nonmonotone search lets single
    // iterates rise
    let mut best_x = x.clone();
    let mut best_f = f;
    let mut trace = vec![f];
    let mut bb_step = step.initial_step;
    let mut x_new = vec![0.0; n];
    let mut g_new = vec![0.0; n];
    // Grippo-Lampariello-Lucidi reference window: sufficient decrease is
    // measured against the worst of the last few accepted values, which
    // keeps the spectral step effective on ill-conditioned wells
    const MEMORY: usize = 10;
    let mut recent = std::collections::VecDeque::with_capacity(MEMORY);
    recent.push_back(f);

    for iter in 0..max_iterations {
        // projected gradient stationarity measure
        let mut pg_norm: f64 = 0.0;
        for i in 0..n {
            if spec.free[i] {
                pg_norm = pg_norm.max((x[i] - clamp(x[i] - g[i])).abs());
            }
        }
        if pg_norm <= gradient_tolerance {
            if f < best_f {
                best_f = f;
                best_x.copy_from_slice(&x);
            }
            return SolveReport {
                x: best_x,
                value: best_f,
                iterations: iter,
                converged: true,
                trace,
            };
        }

        // close to a minimizer the true decrease per step falls below the
        // rounding error of f itself; the slack keeps the search moving there
        let f_ref = recent.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let noise = 4.0 * f64::EPSILON * f_ref.abs().max(1.0);
        let mut t = bb_step.clamp(1e-12, 1e12);
        let mut f_new;
        let mut backtracks = 0;
        loop {
            let mut decrease = 0.0;
            for i in 0..n {
                x_new[i] = if spec.free[i] { clamp(x[i] - t * g[i]) } else { x[i] };
                decrease += g[i] * (x_new[i] - x[i]);
            }
            f_new = objective(&x_new, &mut g_new);
            if f_new <= f_ref + step.sufficient_decrease * decrease + noise || backtracks >= 60 {
                break;
            }
            t *= step.shrink;
            backtracks += 1;
        }
        mask(&mut g_new, &spec.free);

        // BB1 step from the accepted displacement
        let mut ss = 0.0;
        let mut sy = 0.0;
        for i in 0..n {
            let s = x_new[i] - x[i];
            let y = g_new[i] - g[i];
            ss += s * s;
            sy += s * y;
        }
        bb_step = if sy > 0.0 && ss > 0.0 { ss / sy } else { step.initial_step };

        std::mem::swap(&mut x, &mut x_new);
        std::mem::swap(&mut g, &mut g_new);
        if f_new <= f_ref + noise {
            f = f_new;
            if recent.len() == MEMORY {
                recent.pop_front();
            }
            recent.push_back(f);
            if f < best_f {
                best_f = f;
                best_x.copy_from_slice(&x);
            }
            trace.push(best_f);
        } else {
            // line search exhausted without an acceptable step
            return SolveReport {
                x: best_x,
                value: best_f,
                iterations: iter + 1,
                converged: false,
                trace,
            };
        }
    }

    SolveReport {
        x: best_x,
        value: best_f,
        iterations: max_iterations,
        converged: false,
        trace,
    }
}

fn mask(g: &mut [f64], free: &[bool]) {
    for (gi, &fi) in g.iter_mut().zip(free) {
        if !fi {
            *gi = 0.0;
        }
    }
}
