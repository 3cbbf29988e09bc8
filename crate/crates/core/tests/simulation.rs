use srd_core::simulate::{empirical_char, indicator_cov, sample_field, FieldSample, SimConfig};
use srd_core::{Error, Kernel, LevyTriplet, Point, Spectral, SpectralOptions};

const N: usize = 100_000;

fn sample(name: &str, t: &LevyTriplet, step: f64, lags: &[f64], seed: u64) -> FieldSample {
    let k = Kernel::unit_box(1).unwrap();
    let cfg = SimConfig { step, window: 4.0, samples: N, seed, lags: lags.iter().map(|&x| Point::scalar(x)).collect() };
    sample_field(&k, t, name, &cfg).unwrap()
}

#[test]
fn empirical_char_tracks_char_x0_for_every_simulable_builtin() {
    let k = Kernel::unit_box(1).unwrap();
    let grid = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0];
    let band = 4.0 / (N as f64).sqrt();
    let mut simulated = 0;
    for (i, (name, t)) in LevyTriplet::builtins().into_iter().enumerate() {
        let cfg = SimConfig { step: 0.01, window: 3.0, samples: N, seed: 90 + i as u64, lags: vec![] };
        let s = match sample_field(&k, &t, name, &cfg) {
            Ok(s) => s,
            Err(Error::Rejected(_)) => continue,
            Err(e) => panic!("{name}: {e}"),
        };
        simulated += 1;
        let sp = Spectral::new(&k, &t, SpectralOptions::default()).unwrap();
        for &x in &grid {
            let d = (empirical_char(&s, 0.0, x, 0) - sp.char_x0(x).unwrap().value).norm();
            assert!(d <= band, "{name} at s = {x}: |φ̂ − φ| = {d:.3e} > {band:.3e}");
        }
    }
    // only the skewed stable integrator is outside the simulable families
    assert_eq!(simulated, LevyTriplet::builtins().len() - 1);
}

#[test]
fn halving_the_cell_keeps_the_char_within_noise() {
    let band = 4.0 / (N as f64).sqrt();
    for name in ["gaussian", "stable-1.0"] {
        let t = LevyTriplet::builtins().into_iter().find(|b| b.0 == name).unwrap().1;
        let coarse = empirical_char(&sample(name, &t, 0.02, &[], 5), 0.0, 1.0, 0);
        let fine = empirical_char(&sample(name, &t, 0.01, &[], 6), 0.0, 1.0, 0);
        // two independent estimates: the difference has twice the variance
        assert!((coarse - fine).norm() <= band * 2f64.sqrt(), "{name}: {coarse} vs {fine}");
    }
}

#[test]
fn joint_char_and_independent_lag_factorizes() {
    let t = LevyTriplet::calibrated_stable(1.0).unwrap();
    let s = sample("stable-1.0", &t, 0.01, &[0.5, 2.0], 12);
    let k = Kernel::unit_box(1).unwrap();
    let sp = Spectral::new(&k, &t, SpectralOptions::default()).unwrap();
    let band = 4.0 / (N as f64).sqrt();
    for (col, lag) in [(1usize, 0.5), (2, 2.0)] {
        let phi = sp.char_joint(&Point::scalar(lag), 0.7, -1.3).unwrap().value;
        assert!((empirical_char(&s, 0.7, -1.3, col) - phi).norm() <= band);
    }
    let product = empirical_char(&s, 0.7, 0.0, 2) * empirical_char(&s, 0.0, -1.3, 2);
    assert!((empirical_char(&s, 0.7, -1.3, 2) - product).norm() <= 2.0 * band);
}

#[test]
fn stable_indicator_covariance_matches_cauchy_decomposition() {
    // X(0.5) = A + C, X(0) = B + C with A, B, C independent Cauchy(1/2):
    // P(X(0.5) > 0, X(0) > 0) = ∫₀¹ u² du = 1/3, so Cov = 1/3 − 1/4 = 1/12
    let t = LevyTriplet::calibrated_stable(1.0).unwrap();
    let s = sample("stable-1.0", &t, 0.01, &[0.5], 33);
    let c = indicator_cov(&s, 1, 0.0, 0.0);
    assert!((c - 1.0 / 12.0).abs() <= 5.0 / (N as f64).sqrt(), "{c}");
    assert!((-0.25..=0.25).contains(&c));
}
