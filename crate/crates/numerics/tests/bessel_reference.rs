//! Bessel values against 40-digit reference evaluations.

use fwm_numerics::{
    bessel, bessel_j, bessel_j_with_derivative, bessel_k, integrate, BesselKind, QuadratureSpec,
};

const J_REF: [(u32, f64, f64); 19] = [
    (0, 0.5, 0.93846980724081290423),
    (0, 7.3, 0.28821694763501439904),
    (0, 33.1, 0.086755199672848591671),
    (0, 250.0, -0.026053373425204233664),
    (0, 700.0, -0.0062882724650687667615),
    (1, 0.001, 0.00049999993750000261457),
    (1, 2.9, 0.37542748181309592781),
    (1, 45.2, 0.050618707410386114491),
    (2, 13.44, -0.21313392121723195286),
    (3, 0.2, 0.00016625041643526786412),
    (5, 17.7, -0.18258722944993538257),
    (10, 5.0, 0.0014678026473104741311),
    (11, 13.444, 0.27817584464701907203),
    (12, 42.0, 0.063116494318794273166),
    (20, 30.0, 0.0048310199934040645386),
    (32, 64.5, -0.096857329489979161157),
    (64, 10.0, 2.9049360287291092641e-45),
    (64, 80.0, 0.11112833093796253959),
    (40, 699.0, -0.0104945174423404268),
];
const JP_REF: [(u32, f64, f64); 19] = [
    (0, 0.5, -0.24226845767487388638),
    (0, 7.3, -0.082570430493257831051),
    (0, 33.1, -0.10951019061382738122),
    (0, 250.0, 0.043269038410330749511),
    (0, 700.0, -0.02948982408403033108),
    (1, 0.001, 0.49999981250001302083),
    (1, 2.9, -0.35376929814131150819),
    (1, 45.2, 0.10677396270031877108),
    (2, 13.44, 0.056946452809819399638),
    (3, 0.2, 0.0024895979062545458898),
    (5, 17.7, 0.067292712663790799059),
    (10, 5.0, 0.0025846778448547392521),
    (11, 13.444, -0.05194263096134634303),
    (12, 42.0, 0.10343250069987055415),
    (20, 30.0, 0.12570536685880943569),
    (32, 64.5, -0.037691828058901684577),
    (64, 10.0, 1.8366816605521744433e-44),
    (64, 80.0, 0.016052890715661883303),
    (40, 699.0, -0.028267747601439245558),
];
const K_REF: [(u32, f64, f64); 17] = [
    (0, 1e-06, 13.931442073626419459),
    (0, 0.3, 1.3724600605442974106),
    (0, 2.0, 0.11389387274953343565),
    (0, 9.5, 0.000030057884957934335384),
    (0, 600.0, 1.3558285309948524376e-262),
    (1, 1e-06, 999999.99999278432422),
    (1, 0.9, 0.7165335787760190463),
    (1, 3.3, 0.02811693427271661814),
    (1, 40.0, 8.4971319548610386508e-19),
    (2, 3.7, 0.025159327544450043464),
    (3, 0.05, 63980.006239507651875),
    (7, 12.0, 0.000015018951929635644266),
    (11, 2.5, 133486.9120255736528),
    (13, 30.0, 3.2800477341937896216e-13),
    (30, 50.0, 2.0058168144151078608e-19),
    (64, 64.0, 2.0389403417246265493e-16),
    (5, 690.0, 1.0549361807132383695e-301),
];
const KP_REF: [(u32, f64, f64); 17] = [
    (0, 1e-06, -999999.99999278432422),
    (0, 0.3, -3.0559920334573251072),
    (0, 2.0, -0.13986588181652242728),
    (0, 9.5, -0.000031602034110426745609),
    (0, 600.0, -1.3569579181128060869e-262),
    (1, 1e-06, -1000000000006.7158115),
    (1, 0.9, -1.2828787290251438708),
    (1, 3.3, -0.033130915258783749527),
    (1, 40.0, -8.605289398971093e-19),
    (2, 3.7, -0.03122767161273679942),
    (3, 0.05, -3839599.8755775236716),
    (7, 12.0, -0.000017856088037671272219),
    (11, 2.5, -603749.32932886601338),
    (13, 30.0, -3.6207132824139256444e-13),
    (30, 50.0, -2.3539321933650083701e-19),
    (64, 64.0, -2.8914943887591875239e-16),
    (5, 690.0, -1.0557280075770538173e-301),
];

fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

#[test]
fn j_matches_reference_values() {
    for (n, x, want) in J_REF {
        let got = bessel(BesselKind::J, n, x).unwrap();
        assert!(rel_err(got, want) < 1e-12, "J_{n}({x}) = {got}, want {want}");
    }
}

#[test]
fn j_prime_matches_reference_values() {
    for (n, x, want) in JP_REF {
        let got = bessel(BesselKind::JPrime, n, x).unwrap();
        assert!(rel_err(got, want) < 1e-12, "J'_{n}({x}) = {got}, want {want}");
    }
}

#[test]
fn k_matches_reference_values() {
    for (n, x, want) in K_REF {
        let got = bessel(BesselKind::K, n, x).unwrap();
        assert!(rel_err(got, want) < 1e-12, "K_{n}({x}) = {got}, want {want}");
    }
}

#[test]
fn k_prime_matches_reference_values() {
    for (n, x, want) in KP_REF {
        let got = bessel(BesselKind::KPrime, n, x).unwrap();
        assert!(rel_err(got, want) < 1e-12, "K'_{n}({x}) = {got}, want {want}");
    }
}

/// K_2(3.7) from the integral representation K_n(x) = ∫_0^∞ e^{-x cosh t} cosh(nt) dt,
/// an evaluation path that shares nothing with the series/continued-fraction code.
#[test]
fn k2_matches_integral_representation() {
    let x = 3.7;
    let spec = QuadratureSpec::new(1e-14, 1e-300, 10_000);
    let oracle = integrate(|t: f64| (-x * t.cosh()).exp() * (2.0 * t).cosh(), 0.0, 8.0, &spec)
        .unwrap()
        .value;
    let got = bessel_k(2, x).unwrap();
    assert!(rel_err(got, oracle) < 1e-12, "{got} vs {oracle}");
}

/// J_n from Bessel's integral J_n(x) = (1/π) ∫_0^π cos(nτ - x sin τ) dτ.
#[test]
fn j_matches_bessel_integral() {
    let spec = QuadratureSpec::new(1e-14, 1e-16, 10_000);
    for (n, x) in [(0u32, 3.3), (2, 11.0), (7, 9.1), (11, 14.0)] {
        let oracle = integrate(
            |t: f64| (n as f64 * t - x * t.sin()).cos(),
            0.0,
            std::f64::consts::PI,
            &spec,
        )
        .unwrap()
        .value
            / std::f64::consts::PI;
        let got = bessel_j(n, x);
        assert!((got - oracle).abs() < 1e-13, "J_{n}({x}) {got} vs {oracle}");
    }
}

#[test]
fn derivative_pairs_are_consistent() {
    for (n, x) in [(0u32, 0.7), (1, 5.5), (4, 20.0), (9, 3.0)] {
        let (j, jp) = bessel_j_with_derivative(n, x);
        assert_eq!(j, bessel_j(n, x));
        let h = 1e-5;
        let fd = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2.0 * h);
        assert!((jp - fd).abs() < 1e-9);
    }
}
