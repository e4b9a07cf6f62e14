use fwm_fiber_modes::{
    branch_function, characteristic_residual, guided_roots, omega_from_wavelength, solve_mode,
    Branch, DispersionCache, FiberSpec, ModeLabel, Parity, SPEED_OF_LIGHT,
};
use std::sync::Arc;

fn fiber() -> FiberSpec {
    FiberSpec::silica_low_contrast()
}

/// Maps an effective index to the normalized lateral wavenumber U.
fn u_of_neff(f: &FiberSpec, n_eff: f64, wavelength_um: f64) -> f64 {
    let k0a = 2.0 * std::f64::consts::PI / wavelength_um * f.core_radius();
    k0a * (f.core_permittivity() - n_eff * n_eff).sqrt()
}

/// Counts sign changes of the branch function on a dense n_eff grid.
fn dense_neff_scan(f: &FiberSpec, m: u32, branch: Branch, wavelength_um: f64, points: usize) -> usize {
    let v = f.v_parameter(wavelength_um);
    let (lo, hi) = (f.cladding_index(), f.core_index());
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for i in 1..points {
        let n = lo + (hi - lo) * i as f64 / points as f64;
        let g = branch_function(f, m, branch, u_of_neff(f, n, wavelength_um), v);
        if !g.is_finite() {
            continue;
        }
        if let Some(p) = prev {
            if p.signum() != g.signum() {
                count += 1;
            }
        }
        prev = Some(g);
    }
    count
}

#[test]
fn he11_at_1550nm() {
    let f = fiber();
    let lambda = 1.55;
    let p = solve_mode(&f, ModeLabel::he(1).unwrap(), omega_from_wavelength(lambda)).unwrap();
    assert!(p.n_eff > 1.44 && p.n_eff < 1.45);
    let k = p.n_eff * 2.0 * std::f64::consts::PI / (lambda * 1e-6);
    assert!(((p.k - k) / k).abs() < 1e-14);
}

#[test]
fn he1_root_count_matches_dense_scan() {
    let f = fiber();
    let label = ModeLabel::he(1).unwrap();
    let roots = guided_roots(&f, label, f.v_parameter(1.55)).unwrap();
    let oracle = dense_neff_scan(&f, 1, Branch::He, 1.55, 100_000);
    assert!(roots.len() >= 3);
    assert_eq!(roots.len(), oracle);
}

#[test]
fn high_orders_guided_at_500nm() {
    let f = fiber();
    let omega = omega_from_wavelength(0.5);
    for m in 1..=11 {
        assert!(dense_neff_scan(&f, m, Branch::He, 0.5, 100_000) >= 1, "scan finds HE{m}");
        let p = solve_mode(&f, ModeLabel::he(m).unwrap(), omega).unwrap();
        assert!(p.n_eff > f.cladding_index() && p.n_eff < f.core_index());
    }
}

#[test]
fn consistency_invariants_hold_for_all_families() {
    let f = fiber();
    let mut labels = vec![ModeLabel::te(), ModeLabel::tm()];
    for m in 1..=11 {
        labels.push(ModeLabel::he(m).unwrap());
        labels.push(ModeLabel::eh(m).unwrap());
    }
    for lambda in [1.5, 0.5] {
        let omega = omega_from_wavelength(lambda);
        for &label in &labels {
            let p = match solve_mode(&f, label, omega) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let v2 = p.v * p.v;
            assert!(((p.big_u.powi(2) + p.big_w.powi(2) - v2) / v2).abs() < 1e-9);
            let r = characteristic_residual(&f, p.azimuthal_m, p.big_u, p.v);
            assert!(r < 1e-10, "{label} residual {r}");
            assert!(p.u > 0.0 && p.w > 0.0);
            assert!(((p.k - p.n_eff * omega / SPEED_OF_LIGHT) / p.k).abs() < 1e-14);
            match label.branch() {
                Branch::He if label.azimuthal_m() > 0 => assert!(p.s < 0.0, "{label} s = {}", p.s),
                Branch::Eh if label.azimuthal_m() > 0 => assert!(p.s > 0.0, "{label} s = {}", p.s),
                _ => assert_eq!(p.s, 0.0),
            }
        }
    }
}

#[test]
fn effective_index_increases_with_frequency() {
    let f = fiber();
    for label in [ModeLabel::he(1).unwrap(), ModeLabel::he(4).unwrap(), ModeLabel::eh(2).unwrap()] {
        let mut prev = 0.0;
        for i in 0..=20 {
            let lambda = 1.55 - 0.05 * i as f64;
            let p = solve_mode(&f, label, omega_from_wavelength(lambda)).unwrap();
            assert!(p.n_eff > prev, "{label} at {lambda}");
            prev = p.n_eff;
        }
    }
}

#[test]
fn branches_do_not_swap_under_small_perturbation() {
    let f = fiber();
    let omega = omega_from_wavelength(1.5);
    for m in 1..=6 {
        for label in [ModeLabel::he(m).unwrap(), ModeLabel::eh(m).unwrap()] {
            let a = solve_mode(&f, label, omega).unwrap();
            let b = solve_mode(&f, label, omega * (1.0 + 1e-4)).unwrap();
            // A smooth branch moves by about dn/dω·δω, far below mode spacing.
            assert!((a.n_eff - b.n_eff).abs() < 1e-6, "{label}");
        }
    }
}

#[test]
fn group_velocity_is_step_stable() {
    let f = fiber();
    let label = ModeLabel::he(3).unwrap();
    let p = solve_mode(&f, label, omega_from_wavelength(1.5)).unwrap();
    let half = p.group_velocity_with_step(&f, label, 5e-7).unwrap();
    assert!(((half - p.v_g) / p.v_g).abs() < 1e-6);
    assert!(p.v_g < SPEED_OF_LIGHT / f.cladding_index() && p.v_g > SPEED_OF_LIGHT / 1.5);
}

#[test]
fn parities_share_dispersion() {
    let f = fiber();
    let omega = omega_from_wavelength(1.5);
    let even = ModeLabel::he(2).unwrap();
    let odd = even.with_parity(Parity::Odd);
    assert_eq!(solve_mode(&f, even, omega).unwrap(), solve_mode(&f, odd, omega).unwrap());
}

#[test]
fn not_guided_below_cutoff() {
    let f = fiber();
    // V ≈ 0.7 is far below the EH5 cutoff.
    let omega = omega_from_wavelength(30.0);
    assert!(solve_mode(&f, ModeLabel::eh(5).unwrap(), omega).is_err());
}

#[test]
fn cache_is_consistent_under_concurrent_use() {
    let f = fiber();
    let cache = Arc::new(DispersionCache::new());
    let omegas: Vec<f64> = (0..8).map(|i| omega_from_wavelength(1.5 + 0.01 * i as f64)).collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let cache = Arc::clone(&cache);
            let omegas = omegas.clone();
            std::thread::spawn(move || {
                omegas
                    .iter()
                    .map(|&w| cache.get_or_solve(&f, ModeLabel::he(2).unwrap(), w).unwrap())
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for r in &results[1..] {
        assert_eq!(r, &results[0]);
    }
    assert_eq!(cache.len(), omegas.len());
    let direct = solve_mode(&f, ModeLabel::he(2).unwrap(), omegas[3]).unwrap();
    assert_eq!(results[0][3], direct);
}
