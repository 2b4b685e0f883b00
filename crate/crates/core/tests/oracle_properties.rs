use mazer_core::oracle::{solve_decoupled, solve_in_basis};
use mazer_core::{
    channel_amplitudes, channel_probabilities, convergence_study, dressed_eigensystem,
    solve_coupled_channels, OracleConfig, SystemParams,
};
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn params(n: u32, u: f64, s: f64) -> SystemParams {
    SystemParams::new(n, u, s).unwrap()
}

/// Triples split evenly between tunneling (`u^2 < sqrt(N)`) and above-barrier
/// incidence.
fn sample_triples(count: usize, seed: u64) -> Vec<SystemParams> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=50u32);
        let barrier = f64::from(n).sqrt().sqrt();
        let u = if out.len() % 2 == 0 {
            rng.gen_range(0.02..0.98) * barrier
        } else {
            rng.gen_range(1.02..2.5) * barrier
        };
        let s = rng.gen_range(0.0..10.0);
        out.push(params(n, u, s));
    }
    out
}

#[test]
fn oracle_matches_closed_form_on_mixed_grid() {
    let triples = sample_triples(240, 11);
    assert_eq!(triples.iter().filter(|p| p.is_tunneling()).count(), 120);
    let config = OracleConfig::default();
    for p in &triples {
        let oracle = solve_coupled_channels(p, &config).unwrap();
        let exact = channel_amplitudes(p).unwrap();
        let diff = oracle.max_difference(&exact);
        assert!(diff < 1e-6, "{p:?}: {diff:e}");
        assert!((oracle.total_probability() - 1.0).abs() < 1e-6, "{p:?}");
    }
}

#[test]
fn oracle_unitarity_tracks_integration_error() {
    for p in sample_triples(40, 5) {
        let oracle = solve_coupled_channels(&p, &OracleConfig::new(8192).unwrap()).unwrap();
        let err = oracle.max_difference(&channel_amplitudes(&p).unwrap());
        let residual = (oracle.total_probability() - 1.0).abs();
        assert!(residual <= 10.0 * err.max(1e-13), "{p:?}: {residual:e} vs {err:e}");
    }
}

#[test]
fn rotated_and_decoupled_solutions_agree() {
    let config = OracleConfig::default();
    for p in sample_triples(30, 99) {
        let bare = solve_coupled_channels(&p, &config).unwrap();
        let eig = dressed_eigensystem(&p);
        let rotated = solve_in_basis(&p, &config, &eig.eigenvectors).unwrap();
        let decoupled = solve_decoupled(&p, &config).unwrap();
        assert!(bare.max_difference(&rotated) < 1e-10, "{p:?}");
        assert!(bare.max_difference(&decoupled) < 1e-10, "{p:?}");
    }
}

#[test]
fn arbitrary_rotation_leaves_amplitudes_unchanged() {
    let (a, b) = (0.4f64, 1.1f64);
    let basis = [
        [a.cos(), a.sin(), 0.0],
        [-a.sin() * b.cos(), a.cos() * b.cos(), b.sin()],
        [a.sin() * b.sin(), -a.cos() * b.sin(), b.cos()],
    ];
    let p = params(7, 0.9, 4.2);
    let config = OracleConfig::default();
    let bare = solve_coupled_channels(&p, &config).unwrap();
    let rotated = solve_in_basis(&p, &config, &basis).unwrap();
    assert!(bare.max_difference(&rotated) < 1e-10);
}

#[test]
fn fourth_order_error_ladder() {
    let p = params(3, 0.5, 2.0);
    let ladder = [100, 200, 400, 800, 1600, 3200, 6400, 12_800];
    let study = convergence_study(&p, &ladder).unwrap();
    assert_eq!(study.iter().map(|e| e.0).collect::<Vec<_>>(), ladder);
    for pair in study.windows(2) {
        let (coarse, fine) = (pair[0].1, pair[1].1);
        if fine > 1e-11 {
            let ratio = coarse / fine;
            assert!((13.0..19.0).contains(&ratio), "{pair:?}: ratio {ratio}");
        }
    }
    // Monotone until the round-off floor.
    let above_floor: Vec<f64> = study.iter().map(|e| e.1).filter(|&e| e > 1e-11).collect();
    assert!(above_floor.len() >= 3);
    assert!(above_floor.windows(2).all(|w| w[1] < w[0]));
    assert!(study.last().unwrap().1 < 1e-11);
}

#[test]
fn slow_eight_atom_maximum() {
    let s = 2.0 * std::f64::consts::PI / 8f64.sqrt().sqrt();
    let p = params(8, 0.03, s);
    let amps = solve_coupled_channels(&p, &OracleConfig::default()).unwrap();
    let pt1 = channel_probabilities(&amps).p_t1;
    assert!((pt1 - 0.87890625).abs() < 2e-3, "{pt1}");
}

#[test]
fn ill_conditioned_matching_is_reported() {
    // An absurdly coarse grid through a deep, wide well overflows RK4.
    let p = params(10_000, 0.03, 1e5);
    let err = solve_coupled_channels(&p, &OracleConfig::new(100).unwrap()).unwrap_err();
    assert!(matches!(err, mazer_core::Error::SingularMatching { .. }), "{err:?}");
}
