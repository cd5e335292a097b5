use super::*;
use crate::fan::{builtin_fan, BuiltinFan};
use crate::rat;
use num_bigint::BigInt;
use proptest::prelude::*;

fn cp(n: usize) -> FanSpec {
    builtin_fan(&BuiltinFan::Cpn { n }).unwrap()
}

fn f1() -> FanSpec {
    builtin_fan(&BuiltinFan::HirzebruchF1).unwrap()
}

fn terms(s: &ClassSeries) -> Vec<(String, Rational)> {
    s.iter().map(|(c, v)| (c.pretty(), v.clone())).collect()
}

fn named(list: &[(&str, i64)]) -> Vec<(String, Rational)> {
    list.iter().map(|(s, v)| (s.to_string(), rat(*v))).collect()
}

#[test]
fn clifford_examples() {
    let w = clifford_superpotential(&cp(2), Ambient::Compact).unwrap();
    assert_eq!(
        terms(w.series()),
        named(&[("β̂", 1), ("β̂ + γ_1", 1), ("H_1 − 2β̂ − γ_1", 1)])
    );
    let w = clifford_superpotential(&cp(1), Ambient::Open).unwrap();
    assert_eq!(terms(w.series()), named(&[("β̂", 1)]));
    let w = clifford_superpotential(&f1(), Ambient::Compact).unwrap();
    assert_eq!(w.series().len(), 4);
    assert_eq!(
        w.series().coeff(&RelClass::new(-2, vec![-1], vec![1, 0])),
        rat(1)
    );
    assert_eq!(
        w.series().coeff(&RelClass::new(-1, vec![0], vec![0, 1])),
        rat(1)
    );
}

#[test]
fn compact_needs_extra_rays() {
    let bare = FanSpec::new(2, vec![], None).unwrap();
    assert_eq!(
        clifford_superpotential(&bare, Ambient::Compact),
        Err(WallcrossError::NoCompactification)
    );
    assert!(chekanov_superpotential(&bare, Ambient::Open).is_ok());
}

#[test]
fn factor_shapes() {
    assert_eq!(wall_crossing_factor(&cp(2)).factor().len(), 2);
    assert_eq!(
        wall_crossing_factor(&cp(1)).factor(),
        &ClassSeries::one(1, 1)
    );
    assert_eq!(wall_crossing_factor(&cp(4)).factor().len(), 4);
}

#[test]
fn open_clifford_glues_to_beta_hat() {
    for n in 1..=6 {
        let spec = cp(n);
        let w = clifford_superpotential(&spec, Ambient::Open).unwrap();
        let gd = wall_crossing_factor(&spec).with_trunc(GammaDegree(10));
        let out = apply_gluing(&spec, w.series(), &gd).unwrap();
        assert_eq!(terms(&out.series), named(&[("β̂", 1)]), "n = {n}");
        assert!(!out.incomplete);
    }
}

#[test]
fn gamma_monomials_are_fixed() {
    let spec = cp(3);
    let s = ClassSeries::monomial(RelClass::gamma(3, 1, 1), rat(5));
    for dir in [GluingDirection::PlusToMinus, GluingDirection::MinusToPlus] {
        let gd = wall_crossing_factor(&spec).with_direction(dir);
        assert_eq!(apply_gluing(&spec, &s, &gd).unwrap().series, s);
    }
}

#[test]
fn cp2_beta_prime_glues_to_square() {
    let spec = cp(2);
    let s = ClassSeries::monomial(RelClass::beta_prime(&spec, 1).unwrap(), rat(1));
    let out = apply_gluing(&spec, &s, &wall_crossing_factor(&spec)).unwrap();
    assert_eq!(
        terms(&out.series),
        named(&[
            ("H_1 − 2β̂ − γ_1", 1),
            ("H_1 − 2β̂", 2),
            ("H_1 − 2β̂ + γ_1", 1)
        ])
    );
    assert!(!out.incomplete);
}

#[test]
fn gluing_flags_cut_expansions() {
    let spec = cp(2);
    let s = ClassSeries::monomial(RelClass::beta_hat(2, 1), rat(1));
    let out = apply_gluing(
        &spec,
        &s,
        &wall_crossing_factor(&spec).with_trunc(GammaDegree(3)),
    )
    .unwrap();
    assert!(out.incomplete);
    assert_eq!(out.series.len(), 4);
    assert_eq!(
        out.series.coeff(&RelClass::new(1, vec![3], vec![0])),
        rat(-1)
    );
}

#[test]
fn gluing_dimension_mismatch() {
    let s = ClassSeries::one(3, 1);
    assert!(matches!(
        apply_gluing(&cp(2), &s, &wall_crossing_factor(&cp(2))),
        Err(WallcrossError::Series(
            SeriesError::DimensionMismatch { .. }
        ))
    ));
}

#[test]
fn chekanov_examples() {
    let w = chekanov_superpotential(&cp(2), Ambient::Compact).unwrap();
    assert_eq!(
        terms(w.series()),
        named(&[
            ("β̂", 1),
            ("H_1 − 2β̂ − γ_1", 1),
            ("H_1 − 2β̂", 2),
            ("H_1 − 2β̂ + γ_1", 1)
        ])
    );
    let p11 = builtin_fan(&BuiltinFan::CpProduct { n: 2, r: 1 }).unwrap();
    let w = chekanov_superpotential(&p11, Ambient::Compact).unwrap();
    assert_eq!(
        terms(w.series()),
        named(&[
            ("β̂", 1),
            ("H_2 − β̂", 1),
            ("H_2 − β̂ + γ_1", 1),
            ("H_1 − β̂ − γ_1", 1),
            ("H_1 − β̂", 1)
        ])
    );
    let w = chekanov_superpotential(&cp(3), Ambient::Open).unwrap();
    assert_eq!(terms(w.series()), named(&[("β̂", 1)]));
}

#[test]
fn f1_chekanov_carries_the_factor_on_both_rays() {
    // p_2 = 1, so the second ray contributes (H_2 − β̂)(1 + γ).
    let w = chekanov_superpotential(&f1(), Ambient::Compact).unwrap();
    assert_eq!(
        terms(w.series()),
        named(&[
            ("β̂", 1),
            ("H_2 − β̂", 1),
            ("H_2 − β̂ + γ_1", 1),
            ("H_1 − 2β̂ − γ_1", 1),
            ("H_1 − 2β̂", 2),
            ("H_1 − 2β̂ + γ_1", 1)
        ])
    );
}

#[test]
fn negative_p_is_rejected() {
    let spec = FanSpec::new(2, vec![vec![-1, -1]], None).unwrap();
    assert_eq!(
        chekanov_superpotential(&spec, Ambient::Compact),
        Err(WallcrossError::NegativePa { a: 1, p: -2 })
    );
    let zero = FanSpec::new(2, vec![vec![1, -1]], None).unwrap();
    let w = chekanov_superpotential(&zero, Ambient::Compact).unwrap();
    assert_eq!(w.series().len(), 2);
}

#[test]
fn invariant_tables() {
    let t = invariant_table(&chekanov_superpotential(&cp(2), Ambient::Compact).unwrap()).unwrap();
    assert_eq!(t.len(), 4);
    assert_eq!(t.rows[2].pretty_name, "H_1 − 2β̂");
    assert_eq!(t.rows[2].n_beta, rat(2));
    assert!(t.rows.iter().all(|r| r.maslov == 2));
    let t = invariant_table(&chekanov_superpotential(&cp(2), Ambient::Open).unwrap()).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!((t.rows[0].maslov, t.rows[0].n_beta.clone()), (2, rat(1)));
    let t = invariant_table(&chekanov_superpotential(&cp(3), Ambient::Compact).unwrap()).unwrap();
    assert_eq!(t.len(), 11);
    assert_eq!(
        t.get(&RelClass::new(-3, vec![0, 0], vec![1])),
        Some(&rat(6))
    );
}

#[test]
fn invariant_table_rejects_bad_terms() {
    let spec = cp(2);
    let mut w = chekanov_superpotential(&spec, Ambient::Open).unwrap();
    w.series = ClassSeries::monomial(RelClass::gamma(2, 1, 1), rat(1));
    assert!(matches!(
        invariant_table(&w),
        Err(WallcrossError::MaslovViolation { maslov: 0, .. })
    ));
    w.series = ClassSeries::monomial(RelClass::beta_hat(2, 1), Rational::new(1.into(), 2.into()));
    assert!(matches!(
        invariant_table(&w),
        Err(WallcrossError::NonIntegral { .. })
    ));
}

fn all_builtin_fano() -> Vec<FanSpec> {
    let mut v: Vec<FanSpec> = (1..=6).map(cp).collect();
    for n in 2..=6 {
        for r in 1..n {
            v.push(builtin_fan(&BuiltinFan::CpProduct { n, r }).unwrap());
        }
    }
    v.push(f1());
    v
}

#[test]
fn every_superpotential_has_maslov_two() {
    for spec in all_builtin_fano() {
        for ambient in [Ambient::Open, Ambient::Compact] {
            let ws = [
                clifford_superpotential(&spec, ambient).unwrap(),
                chekanov_superpotential(&spec, ambient).unwrap(),
            ];
            for w in ws {
                for (c, _) in w.series().iter() {
                    assert_eq!(class_maslov(&spec, c).unwrap(), 2, "{c}");
                }
            }
        }
    }
}

#[test]
fn compact_gluing_matches_chekanov_at_small_trunc() {
    for spec in all_builtin_fano().into_iter().filter(|s| s.n() <= 4) {
        let plus = clifford_superpotential(&spec, Ambient::Compact).unwrap();
        let minus = chekanov_superpotential(&spec, Ambient::Compact).unwrap();
        let d = GammaDegree(6);
        let out = apply_gluing(
            &spec,
            plus.series(),
            &wall_crossing_factor(&spec).with_trunc(d),
        )
        .unwrap();
        assert_eq!(out.series, minus.series().truncated(d));
    }
}

#[test]
fn exp_g_examples() {
    assert!(solve_exp_g(&cp(1), GammaDegree(5)).unwrap().is_empty());
    let g = solve_exp_g(&cp(2), GammaDegree(3)).unwrap();
    let x = |e: i64| RelClass::new(0, vec![e], vec![0]);
    let expected = ClassSeries::from_terms(
        2,
        1,
        [
            (x(1), rat(1)),
            (x(2), Rational::new((-1).into(), 2.into())),
            (x(3), Rational::new(1.into(), 3.into())),
        ],
    )
    .unwrap();
    assert_eq!(g, expected);
    for n in 1..=4 {
        let g = solve_exp_g(&cp(n), GammaDegree(6)).unwrap();
        assert!(g.constant_term().is_zero());
        assert!(g.iter().all(|(c, _)| c.gamma_degree() >= 1));
        assert_eq!(solve_n_beta_hat(&cp(n), GammaDegree(6)).unwrap(), rat(1));
    }
}

#[test]
fn identity_holds_for_cn() {
    assert!(verify_wall_cross_identity(&cp(2), GammaDegree(12)).unwrap());
    assert!(verify_wall_cross_identity(&cp(5), GammaDegree(8)).unwrap());
    assert!(verify_wall_cross_identity(&cp(1), GammaDegree(4)).unwrap());
}

#[test]
fn identity_detects_wrong_inputs() {
    let spec = cp(3);
    let d = GammaDegree(6);
    let ones = vec![ClassSeries::one(3, 1); 3];
    let f = solve_exp_g(&spec, d).unwrap().neg();
    assert!(
        !verify_wall_cross_identity_with(&spec, &rat(2), &ones, &vec![f.clone(); 3], d).unwrap()
    );
    let zero = vec![ClassSeries::zero(3, 1); 3];
    assert!(!verify_wall_cross_identity_with(&spec, &rat(1), &ones, &zero, d).unwrap());
    assert!(verify_wall_cross_identity_with(&spec, &rat(1), &ones, &[f], d).is_err());
}

/// Coefficient of `Π x_i^{α_i}` in `(1 + Σ x_i)^e`, straight from the
/// generalised multinomial theorem.
fn multinomial_coeff(e: i64, alpha: &[i64]) -> Rational {
    let total: i64 = alpha.iter().sum();
    let mut falling = Rational::one();
    for j in 0..total {
        falling *= rat(e - j);
    }
    let mut den = BigInt::one();
    for &a in alpha {
        for j in 1..=a {
            den *= j;
        }
    }
    falling / Rational::from_integer(den)
}

/// Brute-force image of one monomial: scan all multi-indices in a box.
fn naive_glue(class: &RelClass, coeff: &Rational, e: i64, d: u64) -> ClassSeries {
    let (n, m) = class.dims();
    let mut out = ClassSeries::zero(n, m);
    let reach = d as i64 + class.gamma_degree() as i64;
    let mut alpha = vec![0i64; n - 1];
    loop {
        let mut c = class.clone();
        for (k, a) in alpha.iter().enumerate() {
            c.g[k] += a;
        }
        if c.gamma_degree() <= d {
            out.add_term(c, coeff * multinomial_coeff(e, &alpha));
        }
        let mut i = 0;
        while i < alpha.len() {
            alpha[i] += 1;
            if alpha.iter().sum::<i64>() <= reach {
                break;
            }
            alpha[i] = 0;
            i += 1;
        }
        if i == alpha.len() {
            return out;
        }
    }
}

fn random_series() -> impl Strategy<Value = ClassSeries> {
    proptest::collection::vec(((-2i64..=2), (-2i64..=2, -2i64..=2), -3i64..=3), 0..4).prop_map(
        |ts| {
            ClassSeries::from_terms(
                3,
                1,
                ts.into_iter()
                    .map(|(b, (g1, g2), c)| (RelClass::new(b, vec![g1, g2], vec![0]), rat(c))),
            )
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gluing_matches_brute_force(s in random_series(), d in 0u64..=5) {
        let spec = cp(3);
        let gd = wall_crossing_factor(&spec).with_trunc(GammaDegree(d));
        let got = apply_gluing(&spec, &s, &gd).unwrap().series;
        let mut want = ClassSeries::zero(3, 1);
        for (c, v) in s.iter() {
            want = want.add(&naive_glue(c, v, -c.b, d)).unwrap();
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn gluing_round_trip(s in random_series(), d in 0u64..=5) {
        let spec = cp(3);
        let max_b = s.iter().map(|(c, _)| c.b.unsigned_abs()).max().unwrap_or(0);
        let max_g = s.max_gamma_degree().unwrap_or(0);
        let wide = GammaDegree(d + 2 * max_g + max_b);
        let there = apply_gluing(&spec, &s, &wall_crossing_factor(&spec).with_trunc(wide)).unwrap().series;
        let back_gd = wall_crossing_factor(&spec)
            .with_direction(GluingDirection::MinusToPlus)
            .with_trunc(GammaDegree(d));
        let back = apply_gluing(&spec, &there, &back_gd).unwrap().series;
        prop_assert_eq!(back, s.truncated(GammaDegree(d)));
    }
}
