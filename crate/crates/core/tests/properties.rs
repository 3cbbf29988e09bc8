use proptest::prelude::*;

use srd_core::certify::{certify, srd_integral, CertifyConfig, SpectralProfile, Verdict};
use srd_core::kernels::Support;
use srd_core::simulate::{sample_field, SimConfig};
use srd_core::{Kernel, LevyTriplet, Point, QuadOptions, Spectral, SpectralOptions};

fn builtin() -> impl Strategy<Value = (String, LevyTriplet)> {
    let all = LevyTriplet::builtins();
    (0..all.len()).prop_map(move |i| (all[i].0.to_string(), all[i].1.clone()))
}

fn magnitude() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0, any::<bool>()).prop_map(|(e, neg)| if neg { -(10f64.powf(e)) } else { 10f64.powf(e) })
}

fn unit_box_spectral<'a>(k: &'a Kernel, t: &'a LevyTriplet) -> Spectral<'a> {
    Spectral::new(k, t, SpectralOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn re_k_is_nonnegative_and_even((_, t) in builtin(), s in magnitude()) {
        let a = t.eval_re_k(s).unwrap();
        let b = t.eval_re_k(-s).unwrap();
        prop_assert!(a >= 0.0);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn calibrated_stable_is_homogeneous(alpha in 0.1f64..1.95, e in -3.0f64..3.0) {
        let t = LevyTriplet::calibrated_stable(alpha).unwrap();
        let s = 10f64.powf(e);
        let scale = s.powf(alpha);
        let lhs = t.eval_re_k(s).unwrap();
        prop_assert!((lhs - scale * t.eval_re_k(1.0).unwrap()).abs() <= 1e-6 * scale);
    }

    #[test]
    fn indicator_norm_is_volume_power(w in 0.1f64..3.0, h in 0.1f64..2.0, p in 0.2f64..4.0) {
        // custom evaluator so the norm goes through quadrature, not the closed form
        let k = Kernel::custom(
            2,
            |_| 1.0,
            Support::Bounded { lo: [0.0; 3], hi: [w, h, 0.0] },
            "indicator",
        ).unwrap();
        let n = k.lp_norm(p, &QuadOptions::default()).unwrap().value;
        let expect = (w * h).powf(1.0 / p);
        prop_assert!((n - expect).abs() <= 1e-8 * expect, "{} vs {}", n, expect);
    }

    #[test]
    fn norm_is_monotone_on_nested_boxes(a in 0.1f64..2.0, extra in 0.0f64..2.0, p in 0.2f64..4.0) {
        let inner = Kernel::boxcar(&[0.0], &[a], 1.0).unwrap();
        let outer = Kernel::boxcar(&[-extra], &[a], 1.0).unwrap();
        let o = QuadOptions::default();
        prop_assert!(inner.lp_norm(p, &o).unwrap().value <= outer.lp_norm(p, &o).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rho_t_depends_on_frequency_moduli((_, t) in builtin(), lag in -1.5f64..1.5, s1 in magnitude(), s2 in magnitude()) {
        let k = Kernel::tent(1).unwrap();
        let sp = unit_box_spectral(&k, &t);
        let p = Point::scalar(lag);
        let a = sp.rho_t(&p, s1, s2).unwrap().value;
        let b = sp.rho_t(&p, s1.abs(), s2.abs()).unwrap().value;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn sigma_sq_is_minus_log_modulus((_, t) in builtin(), s in magnitude()) {
        let k = Kernel::unit_box(1).unwrap();
        let sp = unit_box_spectral(&k, &t);
        let v = sp.sigma_f_sq(s).unwrap().value;
        // beyond this |φ| underflows and −log|φ| is not representable
        prop_assume!(v < 700.0);
        let phi = sp.char_x0(s).unwrap().value;
        let back = -phi.norm().ln();
        prop_assert!((v - back).abs() <= 1e-8 * v.max(1e-300), "{} vs {}", v, back);
    }

    #[test]
    fn rho_numerator_obeys_cauchy_schwarz((_, t) in builtin(), lag in -2.0f64..2.0, s1 in magnitude(), s2 in magnitude()) {
        let k = Kernel::tent(1).unwrap();
        let sp = unit_box_spectral(&k, &t);
        let num = sp.rho_numerator(&Point::scalar(lag), s1, s2).unwrap().value;
        let bound = (sp.sigma_f_sq(s1).unwrap().value * sp.sigma_f_sq(s2).unwrap().value).sqrt();
        prop_assert!(num <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn stable_rho_t_is_frequency_free(alpha in 0.2f64..1.9, lag in -1.2f64..1.2, s1 in magnitude(), s2 in magnitude()) {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(alpha).unwrap();
        let sp = unit_box_spectral(&k, &t);
        let p = Point::scalar(lag);
        let a = sp.rho_t(&p, s1, s2).unwrap().value;
        let b = sp.rho_t(&p, 1.0, 1.0).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn larger_window_keeps_certification(alpha in 0.3f64..1.9, grow in 1.0f64..4.0) {
        let k = Kernel::unit_box(1).unwrap();
        let t = LevyTriplet::calibrated_stable(alpha).unwrap();
        let base = CertifyConfig { window: Some(1.25), ..Default::default() };
        let wide = CertifyConfig { window: Some(1.25 * grow), ..Default::default() };
        let a = certify(&k, &t, &base).unwrap();
        let b = certify(&k, &t, &wide).unwrap();
        prop_assert_eq!(a.verdict, Verdict::CertifiedSrd);
        prop_assert_eq!(b.verdict, Verdict::CertifiedSrd);
    }

    #[test]
    fn stable_srd_integral_matches_fubini(alpha in 0.3f64..1.9, w in 0.5f64..2.0) {
        // ∫ρ̃ = (∫|f|^{α/2})² / ∫|f|^α = w² / w for an indicator of width w
        let k = Kernel::boxcar(&[0.0], &[w], 1.7).unwrap();
        let t = LevyTriplet::calibrated_stable(alpha).unwrap();
        let sp = unit_box_spectral(&k, &t);
        let prof = SpectralProfile::build(&sp, &CertifyConfig::default()).unwrap();
        let s = srd_integral(&prof, &k);
        prop_assert!((s.total() - w).abs() <= 1e-3 * w, "{} vs {}", s.total(), w);
    }

    #[test]
    fn identical_seed_gives_identical_sample(seed in any::<u64>(), which in 0usize..3) {
        let names = ["gaussian", "stable-1.5", "mixed"];
        let t = LevyTriplet::builtins().into_iter().find(|b| b.0 == names[which]).unwrap().1;
        let k = Kernel::tent(1).unwrap();
        let cfg = SimConfig { step: 0.05, window: 4.0, samples: 64, seed, lags: vec![Point::scalar(0.35)] };
        let a = sample_field(&k, &t, names[which], &cfg).unwrap();
        let b = sample_field(&k, &t, names[which], &cfg).unwrap();
        prop_assert!(a.data.iter().zip(&b.data).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}
