use dimerq_core::dimer::{discord, Correlator, DimerParameters};
use dimerq_core::numerics::{
    find_crossing, find_root, fit_bleaney_bowers, integrate_series_with_tail, lambert_w,
    maximize_scalar, propagate_uncertainty, Bracket, TailModel, ValueWithUncertainty,
};
use dimerq_core::thermo::{specific_heat, susceptibility};
use dimerq_core::Sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn unit_antiferro() -> DimerParameters {
    DimerParameters::new(-1.0).unwrap()
}

#[test]
fn lambert_w_defining_equation() {
    let e = std::f64::consts::E;
    let named = [1e-6, 1e-3, 0.1, 3.0 / e, 1.0, 10.0, 1e3];
    let swept = (0..1000).map(|i| 10f64.powf(-8.0 + 16.0 * i as f64 / 999.0));
    for x in named.into_iter().chain(swept) {
        let w = lambert_w(x).unwrap();
        assert!((w * w.exp() - x).abs() <= 1e-12 * x, "x = {x}");
    }
    assert!((lambert_w(3.0 / e).unwrap() - 0.603_545_739_535_836).abs() < 1e-12);
    assert!((lambert_w(e).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn lambert_w_is_monotone() {
    let mut prev = lambert_w(-1.0 / std::f64::consts::E).unwrap();
    for i in 1..=2000 {
        let x = -0.36787944 + 20.0 * i as f64 / 2000.0;
        let w = lambert_w(x).unwrap();
        assert!(w > prev, "x = {x}");
        prev = w;
    }
}

fn synthetic_specific_heat(n: usize, t_max: f64) -> Vec<Sample> {
    let p = unit_antiferro();
    (1..=n)
        .map(|i| {
            let t = t_max * i as f64 / n as f64;
            Sample::new(t, specific_heat(&p, t).unwrap().0)
        })
        .collect()
}

#[test]
fn trapezoid_converges_at_second_order() {
    // reference ∫₀⁵ c dT at J = -1, from 50-digit quadrature
    let exact = 1.335_760_053_848_65;
    let mut errors = Vec::new();
    for n in [50, 100, 200, 400] {
        let v = integrate_series_with_tail(&synthetic_specific_heat(n, 5.0), None)
            .unwrap()
            .value;
        errors.push((v - exact).abs());
    }
    for w in errors.windows(2) {
        assert!(w[0] / w[1] >= 3.5, "{errors:?}");
    }
}

#[test]
fn synthetic_integral_recovers_ground_energy_with_tail() {
    let p = unit_antiferro();
    let series: Vec<Sample> = (0..2000)
        .map(|i| {
            let t = 0.01 + (50.0 - 0.01) * i as f64 / 1999.0;
            Sample::new(t, specific_heat(&p, t).unwrap().0)
        })
        .collect();
    let truncated = integrate_series_with_tail(&series, None).unwrap().value;
    // ∫₀⁵⁰ c dT = 1.484850525 at J = -1
    assert!((truncated - 1.484_850_525).abs() < 1e-4, "{truncated}");
    let tail = TailModel::new(0.75, 50.0).unwrap();
    let full = integrate_series_with_tail(&series, Some(&tail))
        .unwrap()
        .value;
    assert!((full - 1.5).abs() < 0.002, "{full}");
}

#[test]
fn tail_only_and_trivial_integrals() {
    let tail = TailModel::new(6.6, 4.0).unwrap();
    let v = integrate_series_with_tail(&[], Some(&tail)).unwrap().value;
    assert!((v - 1.65).abs() < 1e-15);
    let zero = TailModel::new(0.0, 1.0).unwrap();
    let v = integrate_series_with_tail(&[Sample::new(1.0, 0.0)], Some(&zero))
        .unwrap()
        .value;
    assert_eq!(v, 0.0);
}

#[test]
fn negative_values_are_clamped_and_reported() {
    let series = [
        Sample::new(1.0, 0.5),
        Sample::new(2.0, -0.1),
        Sample::new(3.0, 0.5),
    ];
    let out = integrate_series_with_tail(&series, None).unwrap();
    assert_eq!(out.clamped_rows, vec![1]);
    assert!((out.value - (0.25 + 0.25 + 0.25)).abs() < 1e-15);
}

#[test]
fn unsorted_series_rejected() {
    let series = [Sample::new(2.0, 0.1), Sample::new(1.0, 0.1)];
    assert!(integrate_series_with_tail(&series, None).is_err());
    let dup = [Sample::new(1.0, 0.1), Sample::new(1.0, 0.1)];
    assert!(integrate_series_with_tail(&dup, None).is_err());
}

#[test]
fn root_invariant_under_bracket_widening() {
    let f = |x: f64| x.cos() - x;
    let narrow = find_root(f, Bracket::new(f, 0.7, 0.8).unwrap(), 1e-12).unwrap();
    for (lo, hi) in [(0.0, 1.0), (-1.0, 1.5), (0.5, 1.4)] {
        let wide = find_root(f, Bracket::new(f, lo, hi).unwrap(), 1e-12).unwrap();
        assert!((wide - narrow).abs() < 1e-9);
    }
}

#[test]
fn crossing_invariant_under_bracket_widening() {
    let a = |t: f64| (-t).exp();
    let b = |t: f64| t * t;
    let narrow = find_crossing(a, b, 0.6, 0.8, 1e-12).unwrap();
    for (lo, hi) in [(0.3, 1.0), (0.0, 2.0), (0.1, 5.0)] {
        let wide = find_crossing(a, b, lo, hi, 1e-12).unwrap();
        assert!((wide.t - narrow.t).abs() < 1e-9);
        assert!((wide.value - narrow.value).abs() < 1e-9);
    }
}

#[test]
fn schottky_maximum_by_golden_section() {
    let p = unit_antiferro();
    let m = maximize_scalar(|t| specific_heat(&p, t).unwrap().0, 0.1, 3.0).unwrap();
    assert!((m.x - 0.702_990).abs() < 1e-5);
    assert!((m.value - 1.023_490_554_386_505).abs() < 1e-10);
}

#[test]
fn linear_propagation_is_exact() {
    for (slope, x, sigma) in [(2.5, 1.0, 0.3), (-4.0, -3.0, 0.01), (0.1, 7.0, 2.0)] {
        let input = ValueWithUncertainty::new(x, sigma).unwrap();
        let out = propagate_uncertainty(|v| Ok(slope * v + 1.0), input).unwrap();
        // exact up to rounding of the two evaluations
        let expected = (slope * sigma).abs();
        assert!((out.result.sigma - expected).abs() <= 1e-13 * expected.max(1.0));
        assert_eq!(out.one_sided, None);
    }
}

#[test]
fn neutron_discord_with_error_bar() {
    let input = ValueWithUncertainty::new(-0.54, 0.09).unwrap();
    let out = propagate_uncertainty(|g| Ok(discord(Correlator::new(g)?)), input).unwrap();
    // Q(-0.54) = 0.301676, (Q(-0.63) - Q(-0.45))/2 = 0.091044
    assert!((out.result.value - 0.301_676).abs() < 1e-6);
    assert!((out.result.sigma - 0.091_044).abs() < 1e-5);
}

fn synthetic_chi(j: f64, g: f64, temps: &[f64]) -> Vec<Sample> {
    let p = DimerParameters::new(j).unwrap().with_g(g).unwrap();
    temps
        .iter()
        .map(|&t| Sample::new(t, susceptibility(&p, t).unwrap().chi))
        .collect()
}

fn acetate_grid() -> Vec<f64> {
    (0..32).map(|i| 90.0 + 310.0 * i as f64 / 31.0).collect()
}

#[test]
fn noiseless_fit_recovers_inputs() {
    let data = synthetic_chi(-204.0, 2.13, &acetate_grid());
    let init = DimerParameters::new(-150.0).unwrap().with_g(2.0).unwrap();
    let fit = fit_bleaney_bowers(&data, &init).unwrap();
    assert!(fit.converged);
    assert!((fit.j_over_kb + 204.0).abs() / 204.0 < 1e-6);
    assert!((fit.g_factor - 2.13).abs() / 2.13 < 1e-6);
    assert!(fit.residual_norm < 1e-10);
}

#[test]
fn fit_is_invariant_under_row_order() {
    let mut data = synthetic_chi(-216.0, 2.17, &acetate_grid());
    let init = DimerParameters::new(-180.0).unwrap().with_g(2.1).unwrap();
    let forward = fit_bleaney_bowers(&data, &init).unwrap();
    data.reverse();
    data.swap(3, 17);
    let shuffled = fit_bleaney_bowers(&data, &init).unwrap();
    assert!((forward.j_over_kb - shuffled.j_over_kb).abs() < 1e-9 * 216.0);
    assert!((forward.g_factor - shuffled.g_factor).abs() < 1e-9);
}

#[test]
fn noisy_fit_within_two_percent() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let noise = Normal::new(0.0, 0.01).unwrap();
    let data: Vec<Sample> = synthetic_chi(-204.0, 2.13, &acetate_grid())
        .into_iter()
        .map(|s| Sample::new(s.t, s.value * (1.0 + noise.sample(&mut rng))))
        .collect();
    let init = DimerParameters::new(-150.0).unwrap().with_g(2.0).unwrap();
    let fit = fit_bleaney_bowers(&data, &init).unwrap();
    assert!(fit.converged);
    assert!((fit.j_over_kb + 204.0).abs() / 204.0 < 0.02, "{fit:?}");
    assert!((fit.g_factor - 2.13).abs() / 2.13 < 0.02, "{fit:?}");
}

#[test]
fn fit_recovers_nitrate_and_ferro_parameters() {
    let nitrate: Vec<f64> = (0..40).map(|i| 1.0 + 0.25 * i as f64).collect();
    let data = synthetic_chi(-2.56, 2.11, &nitrate);
    let init = DimerParameters::new(-1.0).unwrap().with_g(2.0).unwrap();
    let fit = fit_bleaney_bowers(&data, &init).unwrap();
    assert!((fit.j_over_kb + 2.56).abs() / 2.56 < 1e-6);
    assert!((fit.g_factor - 2.11).abs() / 2.11 < 1e-6);

    let ferro: Vec<f64> = (0..30).map(|i| 10.0 + 10.0 * i as f64).collect();
    let data = synthetic_chi(35.4, 2.13, &ferro);
    let init = DimerParameters::new(20.0).unwrap().with_g(2.0).unwrap();
    let fit = fit_bleaney_bowers(&data, &init).unwrap();
    assert!((fit.j_over_kb - 35.4).abs() / 35.4 < 1e-6);
    assert!((fit.g_factor - 2.13).abs() / 2.13 < 1e-6);
}

#[test]
fn fit_rejects_underdetermined_and_degenerate_data() {
    let init = DimerParameters::new(-1.0).unwrap().with_g(2.0).unwrap();
    let two = synthetic_chi(-1.0, 2.0, &[1.0, 2.0]);
    assert!(fit_bleaney_bowers(&two, &init).is_err());
    let same = synthetic_chi(-1.0, 2.0, &[1.0, 1.0, 1.0]);
    assert!(fit_bleaney_bowers(&same, &init).is_err());
}
