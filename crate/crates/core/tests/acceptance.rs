//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single pass/fail line; run with --nocapture to see them all.

use spinwall_core::ground_state::{self, Init, MinimizeOptions, PinSet};
use spinwall_core::{continuum, crease, model, scaling};

fn report(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "pass" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

#[test]
fn criterion_1_ground_states() {
    let mut pass = true;
    let mut detail = String::new();
    for &alpha in &[0.0, 1.0, 2.0, 3.0, 3.9] {
        let theta_a = model::pitch_angle(alpha);
        for &n in &[50usize, 500] {
            for (init, sign) in [(Init::ConstantPlus, 1.0), (Init::ConstantMinus, -1.0)] {
                let r = ground_state::minimize_periodic(n, alpha, &MinimizeOptions::with_init(init))
                    .unwrap();
                let flat = r
                    .chain
                    .as_slice()
                    .iter()
                    .all(|&t| (t - sign * theta_a).abs() < 1e-6);
                if r.energy.abs() >= 1e-10 || !flat {
                    pass = false;
                    detail = format!("alpha={alpha} n={n}: E={} flat={flat}", r.energy);
                }
            }
        }
    }
    for &alpha in &[4.0, 5.0] {
        for &n in &[50usize, 500] {
            let r = ground_state::minimize_periodic(
                n,
                alpha,
                &MinimizeOptions::with_init(Init::Random(1)),
            )
            .unwrap();
            let flat = r.chain.as_slice().iter().all(|&t| t.abs() < 1e-3);
            if r.energy.abs() >= 1e-8 || !flat {
                pass = false;
                detail = format!("alpha={alpha} n={n}: E={} flat={flat}", r.energy);
            }
        }
    }
    if pass {
        detail = "helical wells below alpha=4, aligned above".into();
    }
    report("ground states", pass, &detail);
}

#[test]
fn criterion_2_per_site_oracle() {
    let mut pass = true;
    let mut detail = String::new();
    for &n in &[3usize, 4] {
        for &alpha in &[0.0, 2.0, 4.0] {
            // brute-force energy already has n * m_alpha subtracted, so the
            // per-site gap above m_alpha is e / n
            let (_, e) = ground_state::brute_force_minimum(n, alpha, 41).unwrap();
            if e < -1e-12 || e / n as f64 > 5e-3 {
                pass = false;
                detail = format!("n={n} alpha={alpha}: excess {e}");
            }
        }
    }
    if pass {
        detail = "41-point grid minimum within 5e-3 of m_alpha per site".into();
    }
    report("per-site energy oracle", pass, &detail);
}

#[test]
fn criterion_3_crease_bounds() {
    let mut pass = true;
    let mut detail = String::new();
    for i in 0..20 {
        let alpha = 3.99 * i as f64 / 19.0;
        let r = crease::crease_energy(alpha, 1e-8).unwrap();
        let bound = crease::crease_upper_bound(alpha).unwrap();
        let monotone = r
            .window_history
            .windows(2)
            .all(|w| w[1].1 <= w[0].1 + 1e-12);
        if !(r.energy > 0.0) || r.energy > bound + 1e-9 || !r.converged || !monotone {
            pass = false;
            detail = format!(
                "alpha={alpha}: C={} bound={bound} converged={} monotone={monotone}",
                r.energy, r.converged
            );
        }
    }
    if pass {
        detail = "0 < C_alpha <= (4-alpha) - (4-alpha)^2/8 at 20 points".into();
    }
    report("crease bounds", pass, &detail);
}

#[test]
fn criterion_4_asymptotic_law() {
    let table: Vec<(f64, f64)> = (0..12)
        .map(|i| {
            // log-spaced epsilon in [1e-3, 1e-1]
            let eps = 10f64.powf(-3.0 + 2.0 * i as f64 / 11.0);
            let alpha = 4.0 - eps;
            let c = crease::crease_energy(alpha, 1e-8).unwrap().energy;
            (alpha, c)
        })
        .collect();
    let fit = crease::fit_asymptotics(&table).unwrap();
    let target = 2f64.sqrt() / 3.0;
    let pass = (fit.exponent - 1.5).abs() <= 0.05
        && (fit.prefactor - target).abs() / target <= 0.10;
    report(
        "asymptotic law",
        pass,
        &format!(
            "exponent {:.4} (want 1.5 +- 0.05), prefactor {:.4} (want {:.4} +- 10%)",
            fit.exponent, fit.prefactor, target
        ),
    );
}

#[test]
fn criterion_5_wall_counting() {
    let mut pass = true;
    let mut detail = String::new();
    for &alpha in &[2.0, 3.0] {
        let c = crease::crease_energy(alpha, 1e-8).unwrap().energy;
        for &k in &[2usize, 4] {
            let n = 400 * k;
            let pins = PinSet::alternating(n, k, alpha).unwrap();
            let walls: Vec<usize> = (0..k).map(|j| ((2 * j + 1) * n) / (2 * k)).collect();
            let mut opts = MinimizeOptions::default();
            opts.init = Init::TanhWall(walls);
            let r = ground_state::minimize_constrained(n, alpha, &pins, &opts).unwrap();
            let rel = (r.energy - k as f64 * c).abs() / (k as f64 * c);
            if rel > 0.01 {
                pass = false;
                detail = format!("alpha={alpha} k={k}: E={} kC={} rel={rel}", r.energy, k as f64 * c);
            }
        }
    }
    if pass {
        detail = "constrained k-wall minima within 1% of k C_alpha".into();
    }
    report("wall counting", pass, &detail);
}

#[test]
fn criterion_6_regime_trichotomy() {
    let opts = MinimizeOptions::default();
    let sharp_target = 16.0 / 3.0;

    let sharp = scaling::min_scaled_energy(4000, 3.996, 2, &opts).unwrap();
    let sharp_rel = (sharp - sharp_target).abs() / sharp_target;

    let ferro = scaling::min_scaled_energy(20, 3.999999, 2, &opts).unwrap();

    // matched diffuse point: choose (n, alpha) whose matched continuum
    // parameter 4 l = sqrt(2)/(n sqrt(eps)) equals 0.2
    let l_continuum = 0.2;
    let n = 120usize;
    let root_eps = 2f64.sqrt() / (n as f64 * l_continuum);
    let alpha = 4.0 - root_eps * root_eps;
    let discrete = scaling::min_scaled_energy(n, alpha, 2, &opts).unwrap();
    let continuum_min = scaling::regime_limit_energy(l_continuum, 2, 4096).unwrap();
    let diffuse_rel = (discrete - continuum_min).abs() / continuum_min;

    let pass = sharp_rel <= 0.07 && ferro > 2.0 * sharp_target && diffuse_rel <= 0.10;
    report(
        "regime trichotomy",
        pass,
        &format!(
            "sharp {sharp:.4} (rel {sharp_rel:.3}), ferro {ferro:.2} (> {:.2}), \
             diffuse {discrete:.4} vs {continuum_min:.4} (rel {diffuse_rel:.3})",
            2.0 * sharp_target
        ),
    );
}

#[test]
fn criterion_7_modica_mortola_equivalence() {
    let mut pass = true;
    let mut details = Vec::new();
    for &alpha in &[3.0, 2.0] {
        let r = continuum::equivalence_report(2000, alpha, 2, &MinimizeOptions::default()).unwrap();
        if r.max_relative_gap > 0.05 {
            pass = false;
        }
        details.push(format!(
            "alpha={alpha}: discrete {:.4} continuum {:.4} predicted {:.4} gap {:.3}",
            r.discrete_min, r.continuum_min, r.prediction, r.max_relative_gap
        ));
    }
    report("modica-mortola equivalence", pass, &details.join("; "));
}

#[test]
fn criterion_8_interface_costs() {
    let c_unit = continuum::interface_cost(&continuum::DoubleWellSpec::quartic_unit()).unwrap();
    let mut pass = (c_unit - 8.0 / 3.0).abs() <= 1e-9;
    for &alpha in &[0.0, 1.0, 2.0, 3.0, 3.9] {
        let t = model::pitch_angle(alpha);
        let c = continuum::interface_cost(&continuum::DoubleWellSpec::quartic_angle(t)).unwrap();
        if (c - 8.0 / 3.0 * t.powi(3)).abs() > 1e-9 {
            pass = false;
        }
    }
    let v = continuum::tanh_profile(0.05, 0.5, 4096).unwrap();
    let e = continuum::continuum_f0(&v, 0.05).unwrap();
    if (e - 8.0 / 3.0).abs() > 1e-3 {
        pass = false;
    }
    report(
        "interface costs",
        pass,
        &format!("c_W {c_unit:.12}, tanh energy {e:.6} (want 8/3)"),
    );
}

#[test]
fn criterion_9_property_suites() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    let mut pass = true;
    let mut detail = String::new();
    let mut rng = ChaCha8Rng::seed_from_u64(123);

    // energy dominates the summed effective potential
    for _ in 0..1000 {
        let n = rng.gen_range(3..40);
        let alpha = rng.gen_range(0.0..6.0);
        let chain = spinwall_core::AngleChain::new(
            (0..n).map(|_| rng.gen_range(-FRAC_PI_2..=FRAC_PI_2)).collect(),
        )
        .unwrap();
        let e = model::energy_angles(&chain, alpha);
        let w = model::potential_lower_bound(&chain, alpha);
        if e < w - 1e-9 {
            pass = false;
            detail = format!("lower bound violated: E={e} < W={w}");
        }
    }

    // angle -> spin -> angle recovers every non-closing bond
    for seed in 0..50 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 12;
        let chain = spinwall_core::AngleChain::new(
            (0..n)
                .map(|_| rng.gen_range(-FRAC_PI_2 + 1e-6..FRAC_PI_2 - 1e-6))
                .collect(),
        )
        .unwrap();
        let (spins, _) = model::spins_from_angles(&chain, [1.0, 0.0]).unwrap();
        if let Ok(back) = model::angles_from_spins(&spins) {
            for i in 0..n - 1 {
                if (chain.get(i) - back.get(i)).abs() > 1e-9 {
                    pass = false;
                    detail = format!("round trip broke at bond {i}");
                }
            }
        }
    }

    // H = mu G under theta = theta_alpha v
    let theta_a = model::pitch_angle(2.5);
    let mu = model::scaling_denominator(2.5);
    for _ in 0..100 {
        let theta: Vec<f64> = (0..96).map(|_| rng.gen_range(-1.4..1.4)).collect();
        let v: Vec<f64> = theta.iter().map(|t| t / theta_a).collect();
        let h = continuum::mm_energy_h(
            &continuum::GridFunction::new(theta, false).unwrap(),
            200,
            2.5,
            0.5,
        )
        .unwrap();
        let g = continuum::mm_energy_g(
            &continuum::GridFunction::new(v, false).unwrap(),
            200,
            2.5,
            0.5,
        )
        .unwrap();
        if (h - mu * g).abs() > 1e-10 * h.abs().max(1.0) {
            pass = false;
            detail = format!("H = mu G violated: {h} vs {}", mu * g);
        }
    }

    // analytic chain gradient against central differences
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 77);
        let n = 14;
        let thetas: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.4..1.4)).collect();
        let chain = spinwall_core::AngleChain::new(thetas.clone()).unwrap();
        let grad = model::energy_gradient(&chain, 1.8);
        for i in 0..n {
            let h = 1e-6;
            let mut plus = thetas.clone();
            plus[i] += h;
            let mut minus = thetas.clone();
            minus[i] -= h;
            let fd = (model::energy_angles(&spinwall_core::AngleChain::new(plus).unwrap(), 1.8)
                - model::energy_angles(&spinwall_core::AngleChain::new(minus).unwrap(), 1.8))
                / (2.0 * h);
            if (grad[i] - fd).abs() / grad[i].abs().max(1.0) > 1e-5 {
                pass = false;
                detail = format!("gradient mismatch at site {i}: {} vs {fd}", grad[i]);
            }
        }
    }

    if pass {
        detail = "lower bound, round trip, change of variables, gradients".into();
    }
    report("property suites", pass, &detail);
}
