use decoherence_core::decoherence::{gamma_factor, t_dec_harmonic_from};
use decoherence_core::diffusion::{diffusion, diffusion_series, DiffusionOptions, Method};
use decoherence_core::model::{case_kinds, CaseId, ModelParams};
use decoherence_core::numerics::{
    cumulative_integral, find_first_crossing, integrate, Direction, QuadratureSpec, TimeSeries,
};
use decoherence_core::trajectories::UnitResponse;
use proptest::prelude::*;

fn any_case() -> impl Strategy<Value = CaseId> {
    prop::sample::select(CaseId::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cumulative_is_linear(
        xs in prop::collection::vec(-10.0..10.0f64, 2..64),
        ys_seed in -3.0..3.0f64,
        a in -5.0..5.0f64,
        b in -5.0..5.0f64,
    ) {
        let ys: Vec<f64> = xs.iter().map(|x| (x * ys_seed).sin()).collect();
        let mixed: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| a * x + b * y).collect();
        let sx = cumulative_integral(&TimeSeries::new(0.0, 0.1, xs.clone()).unwrap());
        let sy = cumulative_integral(&TimeSeries::new(0.0, 0.1, ys).unwrap());
        let sm = cumulative_integral(&TimeSeries::new(0.0, 0.1, mixed).unwrap());
        for k in 0..xs.len() {
            let want = a * sx.values()[k] + b * sy.values()[k];
            prop_assert!((sm.values()[k] - want).abs() <= 1e-12 * (1.0 + want.abs()) * xs.len() as f64);
        }
    }

    #[test]
    fn cubics_are_exact(c in prop::array::uniform4(-5.0..5.0f64), lo in -3.0..0.0f64, w in 0.1..4.0f64) {
        let hi = lo + w;
        let f = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        let prim = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
        let got = integrate(f, lo, hi, &QuadratureSpec::default()).unwrap().value;
        let want = prim(hi) - prim(lo);
        let scale = c.iter().map(|v| v.abs()).sum::<f64>() * 100.0;
        prop_assert!((got - want).abs() <= 1e-13 * scale);
    }

    #[test]
    fn crossing_lies_in_range(xs in prop::collection::vec(0.0..1.0f64, 2..64), level in 0.05..0.95f64) {
        let s = TimeSeries::new(0.5, 0.25, xs.clone()).unwrap();
        let first = xs.windows(2).position(|w| w[0] > level && w[1] <= level);
        match (find_first_crossing(&s, level, Direction::Falling), first) {
            (Some(t), Some(k)) => {
                prop_assert!(t > s.time(k) - 1e-12 && t <= s.time(k + 1) + 1e-12);
            }
            (None, None) => {}
            (got, want) => prop_assert!(false, "{got:?} vs pair {want:?}"),
        }
    }

    #[test]
    fn diffusion_scales_with_coupling_squared(
        c in any_case(),
        t in 0.01..2.9f64,
        g in prop::sample::select(vec![0.0, 1.0, 100.0]),
        lambda in 0.01..1.0f64,
    ) {
        let p = ModelParams::default().with_gamma_kt(g).with_lambda(lambda);
        let d1 = diffusion(t, &p, c, Method::ClosedForm, &DiffusionOptions::default());
        prop_assume!(d1.is_ok());
        let d1 = d1.unwrap();
        let d2 = diffusion(t, &p.with_lambda(2.0 * lambda), c, Method::ClosedForm, &DiffusionOptions::default()).unwrap();
        prop_assert!((d2 - 4.0 * d1).abs() <= 1e-12 * d2.abs());
    }

    #[test]
    fn diffusion_depends_on_gamma_kt_product(
        c in any_case(),
        t in 0.01..2.9f64,
        scale in 0.01..100.0f64,
    ) {
        let p = ModelParams::default().with_gamma_kt(1.0);
        let q = ModelParams { gamma0: p.gamma0 * scale, kt: p.kt / scale, ..p };
        let d1 = diffusion(t, &p, c, Method::ClosedForm, &DiffusionOptions::default());
        prop_assume!(d1.is_ok());
        let d1 = d1.unwrap();
        let d2 = diffusion(t, &q, c, Method::ClosedForm, &DiffusionOptions::default()).unwrap();
        prop_assert!((d2 - d1).abs() <= 1e-12 * d1.abs());
    }

    #[test]
    fn response_vanishes_at_endpoints(c in any_case(), t in 0.05..3.0f64, w in 0.2..3.0f64, big in 0.2..3.0f64) {
        let u = UnitResponse::new(t, c, w, big, &QuadratureSpec::default());
        prop_assume!(u.is_ok());
        let u = u.unwrap();
        prop_assert!(u.g(0.0).unwrap().abs() <= 1e-12);
        prop_assert!(u.g(t).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn harmonic_time_shrinks_with_length(l in 0.01..1.0f64, factor in 1.01..10.0f64) {
        let p = ModelParams::default().with_gamma_kt(1.0);
        let d = diffusion_series(6.0, 257, &p, CaseId::D, Method::ClosedForm, &DiffusionOptions::default())
            .unwrap()
            .series;
        let short = t_dec_harmonic_from(&d, l).unwrap();
        let long = t_dec_harmonic_from(&d, l * factor).unwrap();
        if let (Some(s), Some(lg)) = (short, long) {
            prop_assert!(lg <= s);
        }
        prop_assert!(!(short.is_some() && long.is_none()));
    }
}

#[test]
fn case_kinds_is_a_bijection() {
    let mut seen: Vec<_> = CaseId::ALL.iter().map(|c| case_kinds(*c)).collect();
    seen.sort_by_key(|(a, b)| (*a as u8, *b as u8));
    seen.dedup();
    assert_eq!(seen.len(), 4);
}

#[test]
fn gamma_starts_at_one_and_decays_for_positive_diffusion() {
    let p = ModelParams::default().with_gamma_kt(1.0);
    for c in [CaseId::B, CaseId::D] {
        let g = gamma_factor(3.0, 301, &p, c).unwrap();
        assert_eq!(g.values()[0], 1.0);
        for w in g.values().windows(2).take(100) {
            assert!(w[1] <= w[0]);
        }
    }
    for c in CaseId::ALL {
        let g = gamma_factor(3.0, 301, &p.with_lambda(0.0), c).unwrap();
        assert!(g.values().iter().all(|v| v.is_nan() || *v == 1.0));
    }
}

#[test]
fn series_is_deterministic_and_matches_pointwise() {
    let p = ModelParams::default().with_gamma_kt(100.0);
    let opts = DiffusionOptions::default();
    for c in CaseId::ALL {
        for m in Method::ALL {
            let one = diffusion_series(2.5, 97, &p, c, m, &opts).unwrap();
            let two = diffusion_series(2.5, 97, &p, c, m, &opts).unwrap();
            for (k, (x, y)) in one.series.values().iter().zip(two.series.values()).enumerate() {
                assert_eq!(x.to_bits(), y.to_bits());
                let t = one.series.time(k);
                if let Ok(v) = diffusion(t, &p, c, m, &opts) {
                    assert_eq!(v.to_bits(), x.to_bits(), "{c} {m} k {k}");
                }
            }
        }
    }
}
