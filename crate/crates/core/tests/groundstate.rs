use h2delta_core::groundstate::{
    assemble_hamiltonian, e_electronic, e_electronic_on, e_prime_fh, e_prime_fh_extrapolated,
    fh_derivative, ground_state, richardson, GridSpec,
};
use h2delta_core::{e_ub, Error};
use proptest::prelude::*;

/// Decay exponent from the matching condition `alpha (1 + tanh(alpha a)) = 2`
/// by bisection on `[1, 2]`.
fn alpha_oracle(a: f64) -> f64 {
    let f = |al: f64| al * (1.0 + (al * a).tanh()) - 2.0;
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn coarse(a: f64) -> GridSpec {
    GridSpec::new(a, 0.1, 10.0).unwrap()
}

#[test]
fn non_interacting_energy_matches_one_electron_oracle() {
    for &a in &[0.0, 0.2, 0.5, 1.0] {
        let al = alpha_oracle(a);
        let e = e_electronic(a, f64::INFINITY, 1e-3).unwrap();
        assert!((e.value + al * al).abs() < 1e-4, "a = {a}: {} vs {}", e.value, -al * al);
    }
}

#[test]
fn grid_error_is_second_order() {
    for &(a, z) in &[(0.0, 1.0), (0.5, 1.0), (0.5, f64::INFINITY)] {
        let g = GridSpec::new(a, 0.1, 10.0).unwrap();
        let e: Vec<f64> = [g, g.refined(), g.refined().refined()]
            .iter()
            .map(|grid| ground_state(a, z, grid).unwrap().energy)
            .collect();
        let ratio = (e[1] - e[0]) / (e[2] - e[1]);
        assert!((3.5..4.5).contains(&ratio), "a = {a}, Z = {z}: ratio {ratio}");
    }
}

#[test]
fn ground_state_invariants() {
    for &a in &[0.0, 0.3116, 1.0] {
        let r = ground_state(a, 1.0, &coarse(a)).unwrap();
        assert!(r.residual <= 1e-8);
        assert_eq!(r.antisymmetric_part(), 0.0);
        // single sign above the roundoff floor
        let top = r.vector.iter().cloned().fold(0.0, f64::max);
        assert!(r.vector.iter().all(|&v| v > -1e-9 * top), "sign change at a = {a}");
        let centre = r.points_per_axis() / 2;
        assert!(r.value(centre, centre) > 0.0);
        let norm: f64 = (0..r.points_per_axis())
            .flat_map(|i| (0..r.points_per_axis()).map(move |j| (i, j)))
            .map(|(i, j)| r.weights[i] * r.weights[j] * r.value(i, j).powi(2))
            .sum();
        assert!((norm - 1.0).abs() < 1e-10);
        let al = alpha_oracle(a);
        // strict binding below the one-electron threshold
        assert!(r.energy < -0.5 * al * al);
    }
}

#[test]
fn sandwich_between_bounds() {
    for &a in &[0.0, 0.1, 0.5, 1.0] {
        let e = e_electronic(a, 1.0, 5e-3).unwrap().value;
        let al = alpha_oracle(a);
        assert!(e >= -al * al - 5e-3 && e <= e_ub(a, 1.0).unwrap() + 5e-3, "a = {a}: {e}");
    }
}

#[test]
fn repulsion_raises_energy_monotonically_in_charge() {
    let g = coarse(0.2);
    let e1 = ground_state(0.2, 1.0, &g).unwrap().energy;
    let e2 = ground_state(0.2, 2.0, &g).unwrap().energy;
    let ei = ground_state(0.2, f64::INFINITY, &g).unwrap().energy;
    assert!(e1 > e2 && e2 > ei);
}

#[test]
fn larger_box_does_not_raise_energy() {
    for &a in &[0.0, 0.5] {
        let small = ground_state(a, 1.0, &GridSpec::new(a, 0.05, 10.0).unwrap()).unwrap();
        let large = ground_state(a, 1.0, &GridSpec::new(a, 0.05, 12.0).unwrap()).unwrap();
        assert!(large.energy <= small.energy + 1e-6, "{} vs {}", large.energy, small.energy);
    }
}

#[test]
fn feynman_hellman_matches_oracle_without_repulsion() {
    // e(a) = -alpha(a)^2 exactly when the electrons do not interact
    let a = 0.5;
    let d = 1e-5;
    let de = -(alpha_oracle(a + d).powi(2) - alpha_oracle(a - d).powi(2)) / (2.0 * d);
    let fh = e_prime_fh_extrapolated(a, f64::INFINITY).unwrap();
    assert!((fh - de).abs() < 1e-3 * de, "{fh} vs {de}");
}

#[test]
fn feynman_hellman_converges_at_second_order() {
    let g = GridSpec::new(0.3, 0.1, 10.0).unwrap();
    let d: Vec<f64> = [g, g.refined(), g.refined().refined()]
        .iter()
        .map(|grid| e_prime_fh(0.3, 1.0, grid).unwrap())
        .collect();
    let ratio = (d[1] - d[0]) / (d[2] - d[1]);
    assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn feynman_hellman_needs_positive_a() {
    let r = ground_state(0.0, 1.0, &coarse(0.0)).unwrap();
    assert!(matches!(fh_derivative(&r), Err(Error::Domain(_))));
}

#[test]
fn electronic_energy_error_handling() {
    assert!(matches!(e_electronic(0.2, 1.0, 1e-4), Err(Error::Domain(_))));
    assert!(e_electronic(0.2, 0.0, 1e-2).is_err());
    // a budget no mesh pair up to the finest level can meet
    let base = GridSpec::new(0.0, 0.5, 10.0).unwrap();
    let r = e_electronic_on(&base, 1.0, 1e-3);
    assert!(matches!(r, Err(Error::AccuracyNotReached { .. })), "{r:?}");
}

#[test]
fn richardson_removes_quadratic_error() {
    let exact = -2.5;
    let c = 3.0;
    let (v, est) = richardson(exact + c * 0.01, exact + c * 0.0025, 2);
    assert!((v - exact).abs() < 1e-14);
    assert!((est - c * 0.0025).abs() < 1e-14);
}

#[test]
fn solver_is_deterministic() {
    let g = coarse(0.25);
    let r1 = ground_state(0.25, 1.0, &g).unwrap();
    let r2 = ground_state(0.25, 1.0, &g).unwrap();
    assert_eq!(r1.energy.to_bits(), r2.energy.to_bits());
    assert_eq!(r1.vector, r2.vector);
}

#[test]
fn grid_must_match_requested_distance() {
    assert!(matches!(ground_state(0.3, 1.0, &coarse(0.2)), Err(Error::InvalidGrid(_))));
}

#[test]
fn size_guard_rejects_huge_meshes() {
    let mut g = GridSpec::new(0.0, 0.05, 12.0).unwrap();
    for _ in 0..5 {
        g = g.refined();
    }
    assert!(matches!(assemble_hamiltonian(&g, 1.0), Err(Error::InvalidGrid(_))));
}

#[test]
fn eigenvector_dump_has_header_and_grid() {
    let r = ground_state(0.2, 1.0, &coarse(0.2)).unwrap();
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "box,h,a_snapped,Z,energy");
    let header: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(header[0], 10.0);
    assert_eq!(header[2], 0.2);
    assert_eq!(header[4], r.energy);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), r.points_per_axis());
    assert!(rows.iter().all(|l| l.split(',').count() == r.points_per_axis()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coarse_solution_is_symmetric_and_bounded(a in 0.0f64..1.2, z in 1.0f64..4.0) {
        let r = ground_state(a, z, &GridSpec::new(a, 0.2, 10.0).unwrap()).unwrap();
        prop_assert_eq!(r.antisymmetric_part(), 0.0);
        prop_assert!(r.residual <= 1e-8);
        let al = alpha_oracle(a);
        // the discrete spectrum sits above the continuum bound up to O(h^2)
        prop_assert!(r.energy >= -al * al - 0.05);
        prop_assert!(r.energy <= e_ub(a, z).unwrap() + 0.05);
    }
}
