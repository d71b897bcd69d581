use gm_quant::algebra::{rat, rat_int, LaurentPoly};
use gm_quant::convergence::{
    coeff_norm, default_lambdas, growth_check, operator_constant_check, parse_grid, radius_scan, ray_point,
    series_sum, structure_norm, truncate_entire, Verdict, DEFAULT_K, DEFAULT_M,
};
use gm_quant::models::{cone, matrices};
use gm_quant::suite::{random_homogeneous, rng_for};
use proptest::prelude::*;

#[test]
fn cone_structure_norm_is_eight() {
    let m = cone::model().unwrap();
    // 4*s3, 2*s1, -2*s2
    assert_eq!(structure_norm(&m.structure), rat_int(4 + 2 + 2));
}

#[test]
fn operator_norms() {
    let (checks, norms) = operator_constant_check().unwrap();
    assert!(checks.all_pass(), "{:?}", checks.failures().collect::<Vec<_>>());
    let ab = norms.iter().find(|n| n.name == "AB").unwrap();
    assert_eq!(ab.second_order_norm, "9");
    for n in &norms {
        let v: i64 = n.second_order_norm.parse().unwrap();
        assert!(v <= 9, "{}", n.name);
    }
}

#[test]
fn norms_of_small_polynomials() {
    let alg = cone::algebra();
    let e = coeff_norm(&LaurentPoly::zero(), &alg, 1, 100);
    assert_eq!((e.coeff_sum, e.sample_max), (0.0, 0.0));
    assert_eq!(coeff_norm(&alg.var("s1"), &alg, 1, 100).coeff_sum, 1.0);
    let malg = matrices::algebra();
    let r = coeff_norm(&malg.var("r"), &malg, 1, 10);
    assert!((r.coeff_sum - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn sample_max_never_exceeds_coefficient_sum() {
    let alg = cone::algebra();
    let mut rng = rng_for(1, "norm");
    for m in 1..=6 {
        let p = random_homogeneous(&mut rng, &[0, 1, 2], m, 5);
        let e = coeff_norm(&p, &alg, 42, 10_000);
        assert!(e.sample_max <= e.coeff_sum + 1e-9);
        assert_eq!(e.sample_count, 10_000);
        assert_eq!(coeff_norm(&p, &alg, 42, 10_000), e);
    }
}

#[test]
fn truncations() {
    assert_eq!(truncate_entire([rat_int(0), rat_int(0), rat_int(0)], 24), LaurentPoly::one());
    let alg = cone::algebra();
    assert_eq!(alg.format(&truncate_entire([rat_int(1), rat_int(0), rat_int(0)], 1)), "s1 + 1");
    let p = truncate_entire([rat(1, 3), rat(-1, 2), rat(1, 6)], 4);
    // exp(x) truncated: coefficient of s1^2 is (1/3)^2/2
    let c = p.coeff(&gm_quant::algebra::Monomial::power(0, 2.into()));
    assert_eq!(c, rat(1, 18));
    let (lf, lg) = default_lambdas(1.0);
    assert!(growth_check(lf, DEFAULT_M).all_pass());
    assert!(growth_check(lg, DEFAULT_M).all_pass());
}

#[test]
fn t_zero_is_pointwise_product() {
    let (lf, lg) = default_lambdas(1.0);
    let f = truncate_entire(lf, 10);
    let g = truncate_entire(lg, 10);
    let s = ray_point(0.2);
    let r = series_sum(&f, &g, s, 0.0, 10, None).unwrap();
    let ev = |p: &LaurentPoly| p.eval_f64(|i| s[i as usize]);
    assert!((r.value - ev(&f) * ev(&g)).abs() < 1e-13);
    assert!(series_sum(&f, &g, [0.0; 3], 0.1, 10, None).is_err());
    assert!(series_sum(&f, &g, [0.1, 0.2, 0.5], 0.1, 10, None).is_err());
}

#[test]
fn acceptance_point_converges() {
    let (lf, lg) = default_lambdas(1.0);
    let f = truncate_entire(lf, DEFAULT_M);
    let g = truncate_entire(lg, DEFAULT_M);
    let r = series_sum(&f, &g, ray_point(0.2), 0.1, DEFAULT_K, Some((1.0, DEFAULT_M))).unwrap();
    assert_eq!(r.verdict, Verdict::Converged);
    assert!(r.tail_bound < 1e-6 && r.ratio < 1.0);
}

#[test]
fn scan_is_monotone_and_clean_inside() {
    let rep = radius_scan(1.0, "0.05:0.3:6,0.02:0.2:5", DEFAULT_K, DEFAULT_M).unwrap();
    assert_eq!(rep.points.len(), 30);
    assert!(rep.monotone());
    assert!(rep.inside_failures().is_empty());
    let text = rep.to_text();
    assert_eq!(text.lines().count(), 32);
    let json: serde_json::Value = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(json["points"].as_array().unwrap().len(), 30);
}

#[test]
fn bad_grids() {
    assert!(parse_grid("0.1:0.2:3").is_err());
    assert!(parse_grid("0.3:0.2:3,0:1:2").is_err());
    assert!(parse_grid("a:b:c,0:1:2").is_err());
    assert!(radius_scan(0.0, "0.1:0.2:2,0:0.1:2", 8, 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn derivative_norm_lemma(seed in any::<u64>(), m in 1u32..=12) {
        let p = random_homogeneous(&mut rng_for(seed, "lemma"), &[0, 1, 2], m, 6);
        let n = p.coeff_abs_sum();
        for i in 0..3 {
            prop_assert!(p.partial(i).coeff_abs_sum() <= &n * rat_int(m as i64));
        }
    }

    #[test]
    fn norm_sub_multiplicative(seed in any::<u64>(), m in 0u32..=5, k in 0u32..=5) {
        let mut rng = rng_for(seed, "submult");
        let p = random_homogeneous(&mut rng, &[0, 1, 2], m, 4);
        let q = random_homogeneous(&mut rng, &[0, 1, 2], k, 4);
        prop_assert!((&p + &q).coeff_abs_sum() <= p.coeff_abs_sum() + q.coeff_abs_sum());
        prop_assert!((&p * &q).coeff_abs_sum() <= p.coeff_abs_sum() * q.coeff_abs_sum());
    }

    #[test]
    fn verdicts_shrink_toward_origin(s in 0.02f64..0.3, t in 0.01f64..0.25) {
        let (lf, lg) = default_lambdas(1.0);
        let f = truncate_entire(lf, 12);
        let g = truncate_entire(lg, 12);
        let outer = series_sum(&f, &g, ray_point(s), t, 12, Some((1.0, 12))).unwrap();
        let inner = series_sum(&f, &g, ray_point(s / 2.0), t / 2.0, 12, Some((1.0, 12))).unwrap();
        prop_assert!(inner.tail_bound <= outer.tail_bound);
        if outer.verdict == Verdict::Converged {
            prop_assert!(inner.verdict != Verdict::Growing);
        }
    }
}
