use fwm_fiber_modes::{FiberSpec, ModeLabel, Parity};
use fwm_overlap::{
    fwm_overlap, hybrid_overlap, overlap_table, FwmChannel, OverlapFamily, OverlapSetup,
};
use fwm_numerics::QuadratureSpec;
use fwm_oam_basis::{OamLabel, Sam};

fn tabulation() -> (OverlapSetup, fwm_overlap::Frequencies) {
    OverlapSetup::tabulation(FiberSpec::silica_low_contrast())
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

const CO_ROTATING_DIAGONAL: [f64; 4] = [0.225874, 0.164477, 0.124059, 0.093515];

#[test]
fn co_rotating_table_has_exact_checkerboard_zeros() {
    let (setup, freqs) = tabulation();
    let t = overlap_table(OverlapFamily::CO_ROTATING, 4, &freqs, &setup).unwrap();
    for m_s in 1..=4 {
        for m_i in 1..=4 {
            if (m_s + m_i) % 2 == 1 {
                assert_eq!(t.get(m_s, m_i).norm(), 0.0, "({m_s},{m_i})");
            } else {
                assert!(t.get(m_s, m_i).norm() > 0.0, "({m_s},{m_i})");
            }
        }
    }
}

#[test]
fn co_rotating_diagonal_ratio_chain_and_absolute_values() {
    let (setup, freqs) = tabulation();
    let t = overlap_table(OverlapFamily::CO_ROTATING, 4, &freqs, &setup).unwrap();
    let first = t.get(1, 1).re;
    for m in 1..=4u32 {
        let value = t.get(m, m).re;
        let expected = CO_ROTATING_DIAGONAL[(m - 1) as usize];
        assert!(rel(value / first, expected / CO_ROTATING_DIAGONAL[0]) < 0.02, "ratio at {m}");
        assert!(rel(value, expected) < 0.05, "absolute at {m}: {value}");
    }
    // Off-diagonal coupling between orders differing by two is small and negative.
    assert!(t.get(1, 3).re < 0.0 && t.get(1, 3).norm() < 1e-3);
}

const COUNTER_ROTATING_DIAGONAL: [f64; 4] = [0.224501, 0.163736, 0.123113, 0.092491];

#[test]
fn counter_rotating_diagonal_gap_follows_reference_gap() {
    let (setup, freqs) = tabulation();
    let co = overlap_table(OverlapFamily::CO_ROTATING, 4, &freqs, &setup).unwrap();
    let counter = overlap_table(OverlapFamily::COUNTER_ROTATING, 4, &freqs, &setup).unwrap();
    for m in 1..=4u32 {
        let k = (m - 1) as usize;
        let gap = rel(counter.get(m, m).re, co.get(m, m).re);
        let reference_gap = rel(COUNTER_ROTATING_DIAGONAL[k], CO_ROTATING_DIAGONAL[k]);
        assert!((gap - reference_gap).abs() < 1e-3, "m={m}: {gap} vs {reference_gap}");
        assert!(counter.get(m, m).re < co.get(m, m).re);
    }
    assert!(rel(counter.get(1, 1).re, 0.224501) < 0.05);
}

#[test]
fn spin_orbit_families_with_single_entry() {
    let (setup, freqs) = tabulation();
    for family in [OverlapFamily::CO_SIGNAL_COUNTER_IDLER, OverlapFamily::COUNTER_SIGNAL_CO_IDLER] {
        let t = overlap_table(family, 4, &freqs, &setup).unwrap();
        assert_eq!(t.nonzero_count(), 1, "{family}");
        assert!(rel(t.get(1, 1).re, 0.079653) < 0.05, "{family}: {}", t.get(1, 1));
    }
}

#[test]
fn spin_orbit_off_diagonal_entry() {
    let (setup, freqs) = tabulation();
    let t = overlap_table(OverlapFamily::CO_SIGNAL_COUNTER_IDLER_FLIPPED, 4, &freqs, &setup).unwrap();
    assert!(rel(t.get(1, 3).re, 0.001291) < 0.05, "{}", t.get(1, 3));
    let mirrored = overlap_table(OverlapFamily::COUNTER_SIGNAL_CO_IDLER_FLIPPED, 4, &freqs, &setup).unwrap();
    for m_s in 1..=4 {
        for m_i in 1..=4 {
            assert!((t.get(m_s, m_i) - mirrored.get(m_i, m_s)).norm() < 1e-12);
        }
    }
}

#[test]
fn co_signed_co_rotating_family_is_identically_zero() {
    let (setup, freqs) = tabulation();
    assert!(OverlapFamily::CO_EQUAL_CHARGE.is_identically_zero());
    let t = overlap_table(OverlapFamily::CO_EQUAL_CHARGE, 4, &freqs, &setup).unwrap();
    assert_eq!(t.nonzero_count(), 0);
    assert_eq!(
        OverlapFamily::all().iter().filter(|f| f.is_identically_zero()).count(),
        1
    );
}

#[test]
fn conjugate_pairs_give_identical_values() {
    let (setup, freqs) = tabulation();
    for family in OverlapFamily::all() {
        for (m_s, m_i) in [(1, 1), (2, 2), (1, 3), (3, 3)] {
            let (s, i) = family.labels(m_s, m_i).unwrap();
            let direct = fwm_overlap(&FwmChannel::new(s, i, freqs), &setup).unwrap();
            let mirrored = fwm_overlap(&FwmChannel::new(s.conjugate(), i.conjugate(), freqs), &setup).unwrap();
            assert!(
                (direct - mirrored).norm() <= 1e-10 * direct.norm().max(1e-12),
                "{family} ({m_s},{m_i}): {direct} vs {mirrored}"
            );
        }
    }
}

#[test]
fn conserving_channel_dominates_spin_orbit_channel() {
    let (setup, freqs) = tabulation();
    let co = overlap_table(OverlapFamily::CO_ROTATING, 1, &freqs, &setup).unwrap();
    let so = overlap_table(OverlapFamily::CO_SIGNAL_COUNTER_IDLER, 1, &freqs, &setup).unwrap();
    assert!(co.get(1, 1).norm() / so.get(1, 1).norm() > 2.5);
}

#[test]
fn values_are_stable_under_quadrature_refinement() {
    let (mut setup, freqs) = tabulation();
    let s = OamLabel::new(2, Sam::Plus).unwrap();
    let i = OamLabel::new(-2, Sam::Minus).unwrap();
    let channel = FwmChannel::new(s, i, freqs);
    let coarse = fwm_overlap(&channel, &setup).unwrap();
    setup.quad = QuadratureSpec::new(1e-13, 1e-21, 20_000);
    let fine = fwm_overlap(&channel, &setup).unwrap();
    assert!((coarse - fine).norm() / fine.norm() < 1e-9);
}

#[test]
fn hybrid_basis_matches_oam_decomposition() {
    // HE₂,₁ even = (O₊₁⁺ + O₋₁⁻)/√2, and only the cross terms survive the
    // selection rule.
    let (setup, freqs) = tabulation();
    let he2e = ModeLabel::he(2).unwrap();
    let direct = hybrid_overlap(he2e, he2e, &freqs, &setup).unwrap();
    let p = OamLabel::new(1, Sam::Plus).unwrap();
    let m = OamLabel::new(-1, Sam::Minus).unwrap();
    let a = fwm_overlap(&FwmChannel::new(p, m, freqs), &setup).unwrap();
    let b = fwm_overlap(&FwmChannel::new(m, p, freqs), &setup).unwrap();
    let expected = (a + b) * 0.5;
    assert!((direct - expected).norm() < 1e-9 * expected.norm(), "{direct} vs {expected}");

    let he2o = he2e.with_parity(Parity::Odd);
    assert_eq!(hybrid_overlap(he2e, he2o, &freqs, &setup).unwrap().norm(), 0.0);
}

#[test]
fn physical_operating_point_is_finite_and_positive() {
    let setup = OverlapSetup::physical(FiberSpec::silica_low_contrast());
    let freqs = fwm_overlap::Frequencies::degenerate_with_pumps(
        fwm_fiber_modes::omega_from_wavelength(1.5),
        fwm_fiber_modes::omega_from_wavelength(0.5),
    );
    let s = OamLabel::new(3, Sam::Plus).unwrap();
    let i = OamLabel::new(-3, Sam::Minus).unwrap();
    let v = fwm_overlap(&FwmChannel::new(s, i, freqs), &setup).unwrap();
    assert!(v.re > 0.0 && v.re.is_finite(), "{v}");
}
