use gm_quant::algebra::{rat_int, rational_to_f64, Gen, LaurentPoly, Rational};
use gm_quant::convergence::{ray_point, series_sum};
use gm_quant::diffop::{moyal_bidiff, DiffOp};
use gm_quant::models::{build_model, cone, matrices};
use gm_quant::moyal::{MoyalConfig, MoyalQuantizer};
use gm_quant::suite::{model_atoms, random_element, rng_for};
use gm_quant::Error;
use proptest::prelude::*;
use rand::Rng;

/// `P^k (f (x) g)` with `P = sum_i (d_xi (x) d_ξi - d_ξi (x) d_xi)`, expanded
/// pair by pair.
fn flat_moyal_oracle(n: usize, k: usize, f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    let mut pairs = vec![(f.clone(), g.clone(), rat_int(1))];
    for _ in 0..k {
        let mut next = Vec::new();
        for (a, b, c) in &pairs {
            for i in 0..n {
                let (x, xi) = (i as Gen, (n + i) as Gen);
                next.push((a.partial(x), b.partial(xi), c.clone()));
                next.push((a.partial(xi), b.partial(x), -c.clone()));
            }
        }
        pairs = next.into_iter().filter(|(a, b, _)| !a.is_zero() && !b.is_zero()).collect();
    }
    let mut out = LaurentPoly::zero();
    for (a, b, c) in pairs {
        out.add_scaled(&(&a * &b), &c);
    }
    out
}

#[test]
fn flat_terms_match_oracle() {
    for n in [1usize, 2] {
        let m = build_model(&format!("flat{n}")).unwrap();
        let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
        let atoms = model_atoms(&m);
        let mut rng = rng_for(n as u64, "flat-oracle");
        for _ in 0..6 {
            let f = random_element(&mut rng, &atoms, 4, 3);
            let g = random_element(&mut rng, &atoms, 4, 3);
            for k in 0..=4 {
                assert_eq!(q.term(k, &f, &g).unwrap(), flat_moyal_oracle(n, k, &f, &g), "n {n} k {k}");
            }
        }
    }
}

#[test]
fn cone_first_orders() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let st = q.star(3, &m.parse("s1").unwrap(), &m.parse("s2").unwrap()).unwrap();
    let shown: Vec<String> = st.coefficients.iter().map(|c| m.format(c)).collect();
    assert_eq!(shown, ["s1*s2", "4*s3", "2", "0"]);
    let (a, b) = (m.parse("sqrt(s1)").unwrap(), m.parse("sqrt(s2)").unwrap());
    let st = q.star(3, &a, &b).unwrap();
    assert_eq!(m.format(&st.coefficients[1]), "1");
    assert!(st.coefficients[2].is_zero());
}

#[test]
fn closed_forms_agree() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let atoms = model_atoms(&m);
    let mut rng = rng_for(9, "closed");
    for k in 1..=5 {
        for _ in 0..3 {
            let f = random_element(&mut rng, &atoms, 3, 3);
            let g = random_element(&mut rng, &atoms, 3, 3);
            assert!(q.closed_form_crosscheck(k, &f, &g).unwrap(), "k {k}");
        }
    }
}

#[test]
fn cone_associativity_to_order_four() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let atoms = model_atoms(&m);
    let mut rng = rng_for(7, "assoc-cone");
    for _ in 0..20 {
        let [f, g, h] = [(); 3].map(|_| random_element(&mut rng, &atoms, 3, 3));
        assert!(q.associativity_defect(4, &f, &g, &h).unwrap().is_zero());
    }
}

#[test]
fn matrices_associativity_to_order_three() {
    let m = matrices::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let atoms = model_atoms(&m);
    let mut rng = rng_for(7, "assoc-matrices");
    for _ in 0..10 {
        let [f, g, h] = [(); 3].map(|_| random_element(&mut rng, &atoms, 2, 3));
        assert!(q.associativity_defect(3, &f, &g, &h).unwrap().is_zero());
    }
}

#[test]
fn order_guard() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let f = m.parse("s1").unwrap();
    assert!(matches!(q.term(9, &f, &f), Err(Error::OrderTooLarge { .. })));
    let tiny = MoyalQuantizer::with_config(
        m.darboux().unwrap().clone(),
        MoyalConfig { max_order: 8, term_budget: 3 },
    );
    let big = m.parse("s1^3 + s2^3 + s3^3 + s1*s2").unwrap();
    assert!(matches!(tiny.term(4, &big, &big), Err(Error::TermBudget { .. })));
}

#[test]
fn terminates_on_darboux_polynomials() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let (a, b) = (m.parse("sqrt(s1)").unwrap(), m.parse("sqrt(s2)").unwrap());
    let mut rng = rng_for(2, "terminate");
    for _ in 0..8 {
        let (dm, dn) = (rng.gen_range(1..=3u32), rng.gen_range(1..=3u32));
        let mono = |i: u32, d: u32| &a.pow_u32(i) * &b.pow_u32(d - i);
        let f = &mono(rng.gen_range(0..=dm), dm) + &mono(0, dm);
        let g = &mono(rng.gen_range(0..=dn), dn) + &mono(dn, dn);
        let k = (dm + dn) as usize + 1;
        if k <= 8 {
            assert!(q.term(k, &f, &g).unwrap().is_zero());
        }
    }
}

#[test]
fn vanishing_rule_with_raised_order() {
    let m = cone::model().unwrap();
    let cfg = MoyalConfig { max_order: 30, ..MoyalConfig::default() };
    let q = MoyalQuantizer::with_config(m.darboux().unwrap().clone(), cfg);
    let (a, b) = (m.parse("sqrt(s1)").unwrap(), m.parse("sqrt(s2)").unwrap());
    let hom = |i: u32, d: u32| m.algebra.normal_form(&(&a.pow_u32(i) * &b.pow_u32(2 * d - i))).unwrap();
    for (dm, dn) in [(1u32, 12u32), (12, 12), (5, 3), (2, 9)] {
        let f = &hom(dm, dm) + &hom(0, dm);
        let g = &hom(2 * dn, dn) + &hom(dn, dn);
        let edge = 2 * dm.min(dn) as usize;
        assert!(q.term(edge + 1, &f, &g).unwrap().is_zero(), "m {dm} n {dn}");
        if edge <= 8 {
            assert!(!q.term(edge, &f, &g).unwrap().is_zero(), "m {dm} n {dn} edge");
        }
    }
}

#[test]
fn degree_bound_through_six() {
    let m = cone::model().unwrap();
    let sys = m.darboux().unwrap();
    for k in 1..=6 {
        let op = moyal_bidiff(sys, k, &[0, 1, 2]).unwrap();
        for c in op.coefficients() {
            for (mono, _) in c.terms() {
                assert!(mono.is_integral() && !mono.has_negative(), "k {k}");
                assert!(mono.degree() <= gm_quant::algebra::Exp::from(k as i64), "k {k}");
            }
        }
        let (df, dg) = op.bidegree();
        assert!(df <= k as u32 && dg <= k as u32);
    }
}

#[test]
fn bidifferential_form_agrees_with_term() {
    let m = cone::model().unwrap();
    let sys = m.darboux().unwrap();
    let q = MoyalQuantizer::new(sys.clone());
    let s_atoms: Vec<LaurentPoly> = (0..3).map(LaurentPoly::var).collect();
    let mut rng = rng_for(4, "bidiff");
    for k in 1..=3 {
        let op = moyal_bidiff(sys, k, &[0, 1, 2]).unwrap();
        for _ in 0..4 {
            let f = m.algebra.normal_form(&random_element(&mut rng, &s_atoms, 3, 3)).unwrap();
            let g = m.parse("s1^2*s2 + s3").unwrap();
            let via_op = op.apply(&f, &g, &m.algebra).unwrap();
            assert!(m.algebra.poly_equal(&via_op, &q.term(k, &f, &g).unwrap()).unwrap(), "k {k}");
        }
    }
}

#[test]
fn composed_operators_act_as_iterated_fields() {
    let m = cone::model().unwrap();
    let sys = m.darboux().unwrap();
    let (a, b) = (sys.a_field(0), sys.b_field(0));
    let coords = [0, 1, 2];
    let ab = DiffOp::from_derivation(b, &coords).unwrap().compose_field(a, &m.algebra).unwrap();
    let s_atoms: Vec<LaurentPoly> = (0..3).map(LaurentPoly::var).collect();
    let mut rng = rng_for(6, "compose");
    for _ in 0..10 {
        let f = m.algebra.normal_form(&random_element(&mut rng, &s_atoms, 3, 3)).unwrap();
        let lhs = ab.apply(&f, &m.algebra).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        assert!(m.algebra.poly_equal(&lhs, &rhs).unwrap());
    }
}

#[test]
fn q2_probe_bounds() {
    let m = matrices::model().unwrap();
    let p1 = matrices::q_probe(&m, 1).unwrap();
    assert_eq!(p1.denominator_exponent, 0);
    let p2 = matrices::q_probe(&m, 2).unwrap();
    assert!(p2.bidegree.0 <= 2 && p2.bidegree.1 <= 2);
    assert!(p2.denominator_exponent <= 1);
}

/// The chart formula used for numerics against the exact engine.
#[test]
fn chart_sum_matches_exact_engine() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let f = m.parse("s1^2 + 3*s3 - s2 + 1").unwrap();
    let g = m.parse("s2*s3 + s1 - 2*s3^2").unwrap();
    let s = ray_point(0.7);
    let t: f64 = 0.3;
    let exact = q.star(8, &f, &g).unwrap();
    let mut want = 0.0;
    for (k, c) in exact.coefficients.iter().enumerate() {
        want += t.powi(k as i32) * c.eval_f64(|i| s[i as usize]);
    }
    let got = series_sum(&f, &g, s, t, 8, None).unwrap();
    assert!((got.value - want).abs() < 1e-10 * want.abs().max(1.0), "{} vs {want}", got.value);
    assert_eq!(got.tail_bound, 0.0);
}

#[test]
fn terminating_series_is_exact_at_rational_point() {
    let m = cone::model().unwrap();
    let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
    let f = m.parse("sqrt(s1)*s3 + s2").unwrap();
    let g = m.parse("s1*sqrt(s2) - s3").unwrap();
    let exact = q.star(6, &f, &g).unwrap();
    assert!(exact.coefficients[5].is_zero() && exact.coefficients[6].is_zero());
    // s = (1/4, 4, 1) lies on the cone; t = 1/2.
    let pt = [0.25, 4.0, 1.0];
    let t = Rational::new(1.into(), 2.into());
    let mut want = rat_int(0);
    let mut tk = rat_int(1);
    for c in &exact.coefficients {
        want += &tk * exact_eval(c, &[(0, 1, 4), (1, 4, 1), (2, 1, 1)]);
        tk *= &t;
    }
    let got = series_sum(&f, &g, pt, 0.5, 6, None).unwrap();
    assert!((got.value - rational_to_f64(&want)).abs() < 1e-12);
}

/// Evaluates at `s_i = (n_i/d_i)` where every needed square root is exact.
fn exact_eval(p: &LaurentPoly, point: &[(Gen, i64, i64)]) -> Rational {
    let sqrt = |x: i64| -> i64 {
        let r = (x as f64).sqrt().round() as i64;
        assert_eq!(r * r, x);
        r
    };
    let mut total = rat_int(0);
    for (mono, c) in p.terms() {
        let mut v = c.clone();
        for (g, e) in mono.iter() {
            let &(_, n, d) = point.iter().find(|(h, _, _)| *h == g).unwrap();
            let twice = e * gm_quant::algebra::Exp::from(2);
            assert!(twice.is_integer());
            let k = *twice.numer();
            let (base, k) = if k % 2 == 0 {
                (Rational::new(n.into(), d.into()), k / 2)
            } else {
                (Rational::new(sqrt(n).into(), sqrt(d).into()), k)
            };
            let pw = num_traits::pow::Pow::pow(&base, k as i32);
            v *= pw;
        }
        total += v;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn parity_and_unit(seed in any::<u64>(), name in prop::sample::select(vec!["cone", "flat2", "k3-II"])) {
        let m = build_model(name).unwrap();
        let q = MoyalQuantizer::new(m.darboux().unwrap().clone());
        let atoms = model_atoms(&m);
        let mut rng = rng_for(seed, "parity");
        let [f, g] = [(); 2].map(|_| m.algebra.normal_form(&random_element(&mut rng, &atoms, 3, 3)).unwrap());
        for k in 0..=3 {
            let lhs = q.term(k, &f, &g).unwrap();
            let rhs = q.term(k, &g, &f).unwrap();
            let rhs = if k % 2 == 0 { rhs } else { -rhs };
            prop_assert!(m.algebra.poly_equal(&lhs, &rhs).unwrap());
        }
        let one = LaurentPoly::one();
        let st = q.star(3, &one, &f).unwrap();
        prop_assert_eq!(st.coefficients[0].clone(), f.clone());
        prop_assert!(st.coefficients[1..].iter().all(|c| c.is_zero()));
        let q1 = q.term(1, &f, &g).unwrap();
        prop_assert!(m.algebra.poly_equal(&q1, &m.structure.bracket(&f, &g).unwrap()).unwrap());
    }
}
