use std::f64::consts::PI;

use mazer_core::scattering::MesaAmplitudes;
use mazer_core::{
    channel_amplitudes, channel_probabilities, fast_limit_probabilities, mesa_amplitudes,
    slow_limit_transmission, solve_coupled_channels, solve_single_channel, transmission_extrema,
    Branch, ChannelProbabilities, Complex64, OracleConfig, SystemParams,
};
use proptest::prelude::*;

fn params(n: u32, u: f64, s: f64) -> SystemParams {
    SystemParams::new(n, u, s).unwrap()
}

fn probs(n: u32, u: f64, s: f64) -> ChannelProbabilities {
    channel_probabilities(&channel_amplitudes(&params(n, u, s)).unwrap())
}

fn grid(start: f64, stop: f64, points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| start + (stop - start) * i as f64 / (points - 1) as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn channel_unitarity(n in 1u32..=2000, u in 1e-6f64..=100.0, s in 0.0f64..=50.0) {
        let amps = channel_amplitudes(&params(n, u, s)).unwrap();
        prop_assert!((amps.total_probability() - 1.0).abs() < 1e-12);
        let p = channel_probabilities(&amps);
        prop_assert!(p.unitarity_residual() < 1e-12);
        for v in p.to_array() {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn mesa_unitarity(n in 1u32..=2000, u in 1e-6f64..=100.0, s in 0.0f64..=50.0) {
        for branch in [Branch::Barrier, Branch::Well] {
            let m = mesa_amplitudes(branch, &params(n, u, s)).unwrap();
            prop_assert!((m.total_probability() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn xi_sign_flip_invariance(n in 1u32..=2000, u in 1e-3f64..=100.0, s in 0.0f64..=50.0) {
        for branch in [Branch::Barrier, Branch::Well] {
            let m = mesa_amplitudes(branch, &params(n, u, s)).unwrap();
            let flipped = MesaAmplitudes::from_wavenumber(-m.xi, u, s).unwrap();
            prop_assert!((m.rho - flipped.rho).norm() < 1e-12);
            prop_assert!((m.tau - flipped.tau).norm() < 1e-12);
        }
    }

    #[test]
    fn collective_reflection_ratio(n in 2u32..=2000, u in 1e-3f64..=100.0, s in 0.0f64..=50.0) {
        let amps = channel_amplitudes(&params(n, u, s)).unwrap();
        let c = f64::from(n - 1).sqrt();
        prop_assert_eq!(amps.rj, amps.r1 * c);
    }
}

#[test]
fn turning_point_continuity() {
    for n in [1u32, 4, 16, 81, 2000] {
        let u0 = f64::from(n).sqrt().sqrt();
        for s in [0.5, 3.0, 11.0] {
            let at = channel_amplitudes(&params(n, u0, s)).unwrap();
            for eps in [1e-8, -1e-8] {
                let u = (u0 * u0 + eps).sqrt();
                let near = channel_amplitudes(&params(n, u, s)).unwrap();
                assert!(near.max_difference(&at) < 1e-6, "N={n} s={s} eps={eps}");
            }
        }
    }
}

#[test]
fn degenerate_barrier_closed_limit() {
    // xi -> 0: tau = e^{-ius} / (1 - i u s / 2), approached from both sides.
    let n = 9u32;
    let s = 2.3;
    let u0 = 3f64.sqrt();
    let limit = Complex64::from_polar(1.0, -u0 * s) / Complex64::new(1.0, -u0 * s / 2.0);
    for eps in [1e-10, -1e-10] {
        let u = (u0 * u0 + eps).sqrt();
        let m = mesa_amplitudes(Branch::Barrier, &params(n, u, s)).unwrap();
        assert!((m.tau - limit).norm() < 1e-8, "eps={eps}: {}", (m.tau - limit).norm());
    }
}

#[test]
fn well_transmission_matches_single_channel_integration() {
    let p = params(1, 0.03, PI);
    let m = mesa_amplitudes(Branch::Well, &p).unwrap();
    let (rho, tau) =
        solve_single_channel(-1.0, 0.03, PI, &OracleConfig::new(20_000).unwrap()).unwrap();
    assert!((m.tau.norm_sqr() - tau.norm_sqr()).abs() < 1e-8);
    assert!((m.tau - tau).norm() < 1e-8 && (m.rho - rho).norm() < 1e-8);
}

#[test]
fn three_atom_amplitudes_match_oracle() {
    let p = params(3, 0.5, 2.0);
    let exact = channel_amplitudes(&p).unwrap();
    let oracle = solve_coupled_channels(&p, &OracleConfig::new(10_000).unwrap()).unwrap();
    assert!(exact.max_difference(&oracle) < 1e-8);
}

#[test]
fn fig2_top_curve_is_nearly_transparent() {
    for s in grid(0.0, 12.0, 1201) {
        let p = probs(100, 0.03, s);
        assert!((0.97..=1.0 + 1e-12).contains(&p.p_t1), "s={s}: {}", p.p_t1);
    }
}

#[test]
fn slow_limit_matches_exact_for_n_ge_8() {
    for n in [8u32, 10, 20, 100, 2000, 10_000] {
        let q = f64::from(n).sqrt().sqrt();
        for theta in grid(6.0, 12.0, 2001) {
            let p = params(n, 0.03, theta / q);
            let diff = (probs(n, 0.03, theta / q).p_t1 - slow_limit_transmission(&p)).abs();
            assert!(diff < 1e-2, "N={n} s N^1/4={theta}: {diff:e}");
        }
    }
}

#[test]
fn slow_limit_error_is_secular_in_length() {
    // The closed slow-limit form drops the e^{-ius} phase of the well
    // transmission, so its error grows with s instead of decaying.
    let window_error = |n: u32, lo: f64, hi: f64| {
        let q = f64::from(n).sqrt().sqrt();
        grid(lo, hi, 4001)
            .map(|theta| {
                let p = params(n, 0.03, theta / q);
                (probs(n, 0.03, theta / q).p_t1 - slow_limit_transmission(&p)).abs()
            })
            .fold(0.0, f64::max)
    };
    for n in [2u32, 8] {
        let near = window_error(n, 6.0, 12.0);
        let far = window_error(n, 24.0, 48.0);
        assert!(far > 2.0 * near, "N={n}: {near:e} vs {far:e}");
    }
    assert!(window_error(2, 6.0, 12.0) > 1e-2);
}

#[test]
fn single_atom_slow_limit_reduces_to_lorentzian() {
    for s in grid(0.0, 12.0, 301) {
        let p = params(1, 0.03, s);
        let reduced = 1.0 / (4.0 + (s.sin() / 0.03).powi(2));
        assert!((slow_limit_transmission(&p) - reduced).abs() < 1e-15);
    }
}

#[test]
fn fast_limit_convergence() {
    for n in [1u32, 2, 4, 25, 100] {
        let u = 50.0 * f64::from(n).sqrt().sqrt();
        for s in grid(0.0, 50.0, 501) {
            let exact = probs(n, u, s);
            let fast = fast_limit_probabilities(&params(n, u, s));
            let phi = s * f64::from(n).sqrt() / (2.0 * u);
            assert!((fast.p0 - phi.sin().powi(2) / f64::from(n)).abs() < 1e-15);
            assert!((exact.p0 - fast.p0).abs() < 1e-2, "N={n} s={s}");
            assert!((exact.p1 - fast.p1).abs() < 1e-2, "N={n} s={s}");
            assert!((exact.pj - fast.pj).abs() < 1e-2, "N={n} s={s}");
        }
    }
}

#[test]
fn dark_state_limit() {
    for n in [100u32, 1000, 10_000] {
        let (_, min) = transmission_extrema(n).unwrap();
        let q = f64::from(n).sqrt().sqrt();
        for s in grid(6.0 / q, 12.0, 1201) {
            let p = probs(n, 0.03, s);
            assert!(p.p_t1 >= min, "N={n} s={s}: {} < {min}", p.p_t1);
        }
    }
    let big = (0..=120).map(|i| probs(10_000, 0.1, 0.6 + 0.1 * f64::from(i)));
    for p in big {
        assert!(p.p_t1 > 0.999 && p.p0 < 1e-3);
    }
}

#[test]
fn emission_vanishes_with_atom_number() {
    let mean_p0 = |n: u32| grid(1.0, 12.0, 221).map(|s| probs(n, 0.03, s).p0).sum::<f64>() / 221.0;
    let mut prev = mean_p0(2);
    for n in [8u32, 100, 2000, 10_000] {
        let cur = mean_p0(n);
        assert!(cur < prev, "N={n}: {cur} !< {prev}");
        prev = cur;
    }
    assert!(prev < 1e-4);
}
