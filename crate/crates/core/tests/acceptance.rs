//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion outside `KNOWN_FAILURES` fails, or if a known
//! failure starts passing.
//!
//! Run with `cargo test -p wallcross-core --test acceptance`.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wallcross::base::{
    affine_ray_wall, classify_point, monodromy_matrix, wall_component_tropical, CYFanRays, Chamber,
    ChamberPoint, WallComponent,
};
use wallcross::fan::{builtin_fan, validate_fan, BuiltinFan, FanSpec, RelClass};
use wallcross::lattice::{determinant, identity, mat_mul};
use wallcross::novikov::{gauss_valuation, NovikovLaurent, NovikovScalar, Valuation};
use wallcross::series::{multiply, series_exp, series_log, ClassSeries, GammaDegree};
use wallcross::wallcross::{
    apply_gluing, chekanov_superpotential, clifford_superpotential, closed_form_invariant,
    cp_product_support, cpn_support, f1_class, invariant_table, solve_n_beta_hat,
    verify_wall_cross_identity, wall_crossing_factor, Ambient, ClosedForm, F1Class, InvariantTable,
    ProductBranch,
};
use wallcross::Rational;

/// Criteria expected to fail, with the reason printed alongside.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    4,
    "p_2 = 1 for v_2 = e_2, so gluing also produces H_2 − β̂ + γ with count 1; \
     the five listed values are reproduced but the class list has six entries",
)];

type Outcome = Result<String, String>;

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fan(b: BuiltinFan) -> FanSpec {
    builtin_fan(&b).expect("builtin fan")
}

fn chekanov_table(spec: &FanSpec) -> Result<InvariantTable, String> {
    let w = chekanov_superpotential(spec, Ambient::Compact).map_err(|e| e.to_string())?;
    invariant_table(&w).map_err(|e| e.to_string())
}

fn builtin_fano() -> Vec<(String, FanSpec)> {
    let mut v: Vec<(String, FanSpec)> = (1..=6)
        .map(|n| (format!("cpn({n})"), fan(BuiltinFan::Cpn { n })))
        .collect();
    for n in 2..=6 {
        for r in 1..n {
            v.push((
                format!("cp_product({n},{r})"),
                fan(BuiltinFan::CpProduct { n, r }),
            ));
        }
    }
    v.push(("hirzebruch_f1".into(), fan(BuiltinFan::HirzebruchF1)));
    v
}

/// Compares a table against an expected `(class, value)` list exactly.
fn table_equals(t: &InvariantTable, mut expected: Vec<(RelClass, Rational)>) -> Result<(), String> {
    expected.sort();
    let got: Vec<(RelClass, Rational)> = t
        .rows
        .iter()
        .map(|r| (r.class.clone(), r.n_beta.clone()))
        .collect();
    if got == expected {
        return Ok(());
    }
    let missing: Vec<String> = expected
        .iter()
        .filter(|e| !got.contains(e))
        .map(|(c, v)| format!("{c}={v}"))
        .collect();
    let extra: Vec<String> = got
        .iter()
        .filter(|g| !expected.contains(g))
        .map(|(c, v)| format!("{c}={v}"))
        .collect();
    Err(format!("missing {missing:?}, unexpected {extra:?}"))
}

fn c1_cp2() -> Outcome {
    let spec = fan(BuiltinFan::Cpn { n: 2 });
    let t = chekanov_table(&spec)?;
    let expected = vec![
        (RelClass::new(1, vec![0], vec![0]), int(1)),
        (RelClass::new(-2, vec![-1], vec![1]), int(1)),
        (RelClass::new(-2, vec![0], vec![1]), int(2)),
        (RelClass::new(-2, vec![1], vec![1]), int(1)),
    ];
    table_equals(&t, expected)?;
    Ok(format!("{} rows, n_(H−2β̂) = 2", t.len()))
}

fn c2_cpn() -> Outcome {
    let mut rows = 0;
    for n in 2..=6 {
        let spec = fan(BuiltinFan::Cpn { n });
        let t = chekanov_table(&spec)?;
        let mut expected = vec![(RelClass::beta_hat(n, 1), int(1))];
        for k in cpn_support(n) {
            let q = ClosedForm::Cpn { n, k };
            let value = closed_form_invariant(&q).map_err(|e| e.to_string())?;
            ensure(!value.is_zero(), || {
                format!("closed form vanishes on {q:?}")
            })?;
            expected.push((q.class().map_err(|e| e.to_string())?, value));
        }
        table_equals(&t, expected).map_err(|e| format!("CP^{n}: {e}"))?;
        rows += t.len();
    }
    Ok(format!("{rows} rows over n = 2..6"))
}

fn c3_products() -> Outcome {
    let mut rows = 0;
    for n in 2..=6 {
        for r in 1..n {
            let spec = fan(BuiltinFan::CpProduct { n, r });
            let t = chekanov_table(&spec)?;
            let mut expected = vec![(RelClass::beta_hat(n, 2), int(1))];
            for branch in [ProductBranch::H1, ProductBranch::H2] {
                for k in cp_product_support(n, r, branch) {
                    let q = ClosedForm::CpProduct { n, r, branch, k };
                    let value = closed_form_invariant(&q).map_err(|e| e.to_string())?;
                    ensure(!value.is_zero(), || {
                        format!("closed form vanishes on {q:?}")
                    })?;
                    expected.push((q.class().map_err(|e| e.to_string())?, value));
                }
            }
            table_equals(&t, expected).map_err(|e| format!("CP^{r}×CP^{}: {e}", n - r))?;
            rows += t.len();
        }
    }
    let t = chekanov_table(&fan(BuiltinFan::CpProduct { n: 2, r: 1 }))?;
    let five = vec![
        (RelClass::new(1, vec![0], vec![0, 0]), int(1)),
        (RelClass::new(-1, vec![-1], vec![1, 0]), int(1)),
        (RelClass::new(-1, vec![0], vec![1, 0]), int(1)),
        (RelClass::new(-1, vec![0], vec![0, 1]), int(1)),
        (RelClass::new(-1, vec![1], vec![0, 1]), int(1)),
    ];
    table_equals(&t, five).map_err(|e| format!("CP^1×CP^1: {e}"))?;
    Ok(format!(
        "{rows} rows over 1 ≤ r < n ≤ 6; CP^1×CP^1 has five classes, all 1"
    ))
}

fn c4_f1() -> Outcome {
    let t = chekanov_table(&fan(BuiltinFan::HirzebruchF1))?;
    let mut listed = Vec::new();
    for tag in F1Class::ALL {
        let class = f1_class(tag);
        let want = closed_form_invariant(&ClosedForm::F1(tag)).map_err(|e| e.to_string())?;
        let got = t.get(&class).cloned().unwrap_or_else(Rational::zero);
        ensure(got == want, || {
            format!("{class}: got {got}, expected {want}")
        })?;
        listed.push(got.to_string());
    }
    let values = listed.join(",");
    let extra: Vec<String> = t
        .rows
        .iter()
        .filter(|r| !F1Class::ALL.iter().any(|&tag| f1_class(tag) == r.class))
        .map(|r| format!("{} = {}", r.pretty_name, r.n_beta))
        .collect();
    ensure(extra.is_empty(), || {
        format!(
            "listed classes have values {values}, but the table also has {}",
            extra.join(", ")
        )
    })?;
    Ok(format!("values {values} on exactly five classes"))
}

fn c5_gluing() -> Outcome {
    let mut checks = 0;
    for (name, spec) in builtin_fano() {
        let plus = clifford_superpotential(&spec, Ambient::Compact).map_err(|e| e.to_string())?;
        let minus = chekanov_superpotential(&spec, Ambient::Compact).map_err(|e| e.to_string())?;
        let open = clifford_superpotential(&spec, Ambient::Open).map_err(|e| e.to_string())?;
        for d in [4, 8, 16] {
            let gd = wall_crossing_factor(&spec).with_trunc(GammaDegree(d));
            let glued = apply_gluing(&spec, plus.series(), &gd).map_err(|e| e.to_string())?;
            let want = minus.series().truncated(GammaDegree(d));
            let residual = glued.series.sub(&want).map_err(|e| e.to_string())?;
            ensure(residual.is_empty(), || {
                format!("{name}, trunc {d}: residual has {} terms", residual.len())
            })?;
            let glued_open = apply_gluing(&spec, open.series(), &gd).map_err(|e| e.to_string())?;
            let (n, m) = spec.dims();
            let beta_hat = ClassSeries::monomial(RelClass::beta_hat(n, m), Rational::one());
            ensure(glued_open.series == beta_hat, || {
                format!("{name}, trunc {d}: open image is {}", glued_open.series)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} (fan, trunc) pairs with zero residual"))
}

fn c6_identities() -> Outcome {
    for n in 1..=6 {
        let spec = fan(BuiltinFan::Cpn { n });
        let ok = verify_wall_cross_identity(&spec, GammaDegree(12)).map_err(|e| e.to_string())?;
        ensure(ok, || format!("identity fails for n = {n}"))?;
        let n_hat = solve_n_beta_hat(&spec, GammaDegree(12)).map_err(|e| e.to_string())?;
        ensure(n_hat.is_one(), || format!("n = {n}: n_β̂ = {n_hat}"))?;
    }
    Ok("identity holds for n = 1..6 at trunc 12; n_β̂ = 1".into())
}

fn c7_coefficient_sum() -> Outcome {
    for n in 1..=8usize {
        let t = chekanov_table(&fan(BuiltinFan::Cpn { n }))?;
        let total: Rational = t
            .rows
            .iter()
            .filter(|r| r.class.h.iter().any(|h| *h != 0))
            .map(|r| r.n_beta.clone())
            .sum();
        let want = int((n as i64).pow(n as u32));
        ensure(total == want, || {
            format!("n = {n}: sum {total}, expected {want}")
        })?;
    }
    Ok("Σ n_β over H-classes = n^n for n = 1..8".into())
}

fn c8_validation() -> Outcome {
    let fans = builtin_fano();
    for (name, spec) in &fans {
        let r = validate_fan(spec).map_err(|e| e.to_string())?;
        ensure(r.smooth_ok && r.complete_ok && r.fano_ok, || {
            format!("{name}: {r:?}")
        })?;
    }
    let f2 = validate_fan(&fan(BuiltinFan::F2NonFano)).map_err(|e| e.to_string())?;
    ensure(
        f2.primitive_ok && f2.smooth_ok && f2.complete_ok && !f2.fano_ok,
        || format!("f2_nonfano: {f2:?}"),
    )?;
    for n in 1..=6 {
        let spec = fan(BuiltinFan::Cpn { n });
        let mut cones = spec.max_cones().expect("cones").to_vec();
        cones.remove(0);
        let cut = spec.with_cones(Some(cones)).map_err(|e| e.to_string())?;
        let r = validate_fan(&cut).map_err(|e| e.to_string())?;
        ensure(!r.complete_ok, || format!("cpn({n}) minus a cone: {r:?}"))?;
    }
    Ok(format!(
        "{} Fano builtins pass; f2 fails only fano_ok; truncated cpn incomplete",
        fans.len()
    ))
}

fn explicit_n3(l1: &Rational, l2: &Rational) -> Chamber {
    let z = Rational::zero();
    if *l1 < z && l1 < l2 {
        Chamber::Wall(1)
    } else if *l2 < z && l2 < l1 {
        Chamber::Wall(2)
    } else if *l1 > z && *l2 > z {
        Chamber::Wall(3)
    } else {
        Chamber::Discriminant
    }
}

fn c9_classification() -> Outcome {
    let rays = CYFanRays::affine_cn(3);
    let grid: Vec<Rational> = (-6..=6)
        .map(|k| Rational::new(k.into(), 3.into()))
        .collect();
    let mut points = 0;
    for l1 in &grid {
        for l2 in &grid {
            let lambda = vec![l1.clone(), l2.clone()];
            let got = classify_point(3, &ChamberPoint::new(lambda.clone(), Rational::zero()))
                .map_err(|e| e.to_string())?;
            ensure(got == explicit_n3(l1, l2), || {
                format!("({l1}, {l2}): {got}")
            })?;
            let trop = match wall_component_tropical(&rays, &lambda).map_err(|e| e.to_string())? {
                WallComponent::Index(i) => {
                    Chamber::Wall(affine_ray_wall(3, i).map_err(|e| e.to_string())?)
                }
                WallComponent::Pi => Chamber::Discriminant,
            };
            ensure(got == trop, || {
                format!("({l1}, {l2}): {got} vs tropical {trop}")
            })?;
            points += 1;
        }
    }
    Ok(format!(
        "{points} grid points agree with H_1, H_2, H_3 and the tropical rule"
    ))
}

const CASES: usize = 200;

fn random_series(rng: &mut ChaCha8Rng) -> ClassSeries {
    let terms = (0..rng.gen_range(0..5)).map(|_| {
        let class = RelClass::new(
            rng.gen_range(-2..=2),
            vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
            vec![rng.gen_range(0..=1)],
        );
        (
            class,
            Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into()),
        )
    });
    ClassSeries::from_terms(3, 1, terms).expect("dims")
}

/// `1 + u` with `u` positively filtered in two γ variables.
fn random_unit(rng: &mut ChaCha8Rng) -> ClassSeries {
    let mut terms = vec![(RelClass::zero(3, 0), Rational::one())];
    for _ in 0..rng.gen_range(0..4) {
        let g = vec![rng.gen_range(0..=2), rng.gen_range(0..=2)];
        if g == [0, 0] {
            continue;
        }
        terms.push((
            RelClass::new(0, g, vec![]),
            Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into()),
        ));
    }
    ClassSeries::from_terms(3, 0, terms).expect("dims")
}

fn random_scalar(rng: &mut ChaCha8Rng) -> NovikovScalar {
    let terms = (0..rng.gen_range(0..4)).map(|_| {
        (
            Rational::new(rng.gen_range(-6..=12).into(), rng.gen_range(1..=4).into()),
            Rational::from_integer(rng.gen_range(-4..=4).into()),
        )
    });
    NovikovScalar::from_terms(terms.collect::<Vec<_>>(), None)
}

fn random_laurent(rng: &mut ChaCha8Rng) -> NovikovLaurent {
    let terms = (0..rng.gen_range(0..4))
        .map(|_| {
            (
                vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
                random_scalar(rng),
            )
        })
        .collect::<Vec<_>>();
    NovikovLaurent::from_terms(2, terms).expect("dims")
}

fn c10_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let e = |x: wallcross::series::SeriesError| x.to_string();
    for _ in 0..CASES {
        let (a, b, c) = (
            random_series(&mut rng),
            random_series(&mut rng),
            random_series(&mut rng),
        );
        ensure(
            multiply(&a, &b).map_err(e)? == multiply(&b, &a).map_err(e)?,
            || "commutativity".into(),
        )?;
        let left = multiply(&multiply(&a, &b).map_err(e)?, &c).map_err(e)?;
        let right = multiply(&a, &multiply(&b, &c).map_err(e)?).map_err(e)?;
        ensure(left == right, || "associativity".into())?;
        let dist = multiply(&a, &b.add(&c).map_err(e)?).map_err(e)?;
        let split = multiply(&a, &b)
            .map_err(e)?
            .add(&multiply(&a, &c).map_err(e)?)
            .map_err(e)?;
        ensure(dist == split, || "distributivity".into())?;
        ensure(
            multiply(&a, &ClassSeries::one(3, 1)).map_err(e)? == a,
            || "unit".into(),
        )?;
    }
    let d = GammaDegree(12);
    for _ in 0..CASES {
        let f = random_unit(&mut rng);
        let log = series_log(&f, d).map_err(e)?;
        ensure(series_exp(&log, d).map_err(e)? == f.truncated(d), || {
            format!("exp(log f) ≠ f for {f}")
        })?;
        ensure(
            series_log(&series_exp(&log, d).map_err(e)?, d).map_err(e)? == log,
            || "log(exp g) ≠ g".into(),
        )?;
    }
    for _ in 0..CASES {
        let (x, y) = (random_scalar(&mut rng), random_scalar(&mut rng));
        let (vx, vy) = (x.valuation(), y.valuation());
        let vs = x.add(&y).valuation();
        ensure(vs >= vx.clone().min(vy.clone()), || {
            format!("ultrametric: {x}, {y}")
        })?;
        if vx != vy {
            ensure(vs == vx.clone().min(vy.clone()), || {
                format!("strict ultrametric: {x}, {y}")
            })?;
        }
        ensure(x.mul(&y).valuation() == vx.add(&vy), || {
            format!("multiplicativity: {x}, {y}")
        })?;
    }
    for _ in 0..CASES {
        let (f, g) = (random_laurent(&mut rng), random_laurent(&mut rng));
        let u = vec![
            Rational::new(rng.gen_range(-6..=6).into(), 3.into()),
            Rational::new(rng.gen_range(-6..=6).into(), 3.into()),
        ];
        let at = |h: &NovikovLaurent| -> Result<Valuation, String> {
            gauss_valuation(h, std::slice::from_ref(&u)).map_err(|x| x.to_string())
        };
        let fg = f.mul(&g).map_err(|x| x.to_string())?;
        ensure(at(&fg)? == at(&f)?.add(&at(&g)?), || {
            format!("Gauss multiplicativity at {u:?}")
        })?;
    }
    for _ in 0..CASES {
        let n = rng.gen_range(2..=5usize);
        let count = rng.gen_range(2..=6usize);
        let rays: Vec<Vec<i64>> = (0..count)
            .map(|_| {
                let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-4..=4)).collect();
                v.push(1);
                v
            })
            .collect();
        let mut m0 = vec![0; n];
        m0[n - 1] = 1;
        let rays = CYFanRays::new(rays, m0, None).map_err(|x| x.to_string())?;
        let (i, j, k) = (
            rng.gen_range(0..count),
            rng.gen_range(0..count),
            rng.gen_range(0..count),
        );
        let m = |a, b| monodromy_matrix(&rays, a, b).map_err(|x| x.to_string());
        let id = identity(n);
        ensure(m(i, i)? == id, || "M(i,i) ≠ I".into())?;
        ensure(mat_mul(&m(i, j)?, &m(j, i)?) == id, || {
            "M(i,j)M(j,i) ≠ I".into()
        })?;
        ensure(
            mat_mul(&mat_mul(&m(i, j)?, &m(j, k)?), &m(k, i)?) == id,
            || "cocycle".into(),
        )?;
        ensure(determinant(&m(i, j)?) == 1.into(), || "det ≠ 1".into())?;
    }
    Ok(format!("{CASES} seeded cases each for 5 suites"))
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            1,
            "CP^2 Chekanov invariants",
            c1_cp2,
            Duration::from_millis(100),
        ),
        (2, "CP^n oracle equivalence", c2_cpn, Duration::from_secs(5)),
        (
            3,
            "CP^r×CP^{n−r} oracle equivalence",
            c3_products,
            Duration::from_secs(10),
        ),
        (4, "F_1 invariants", c4_f1, Duration::from_millis(100)),
        (5, "gluing consistency", c5_gluing, Duration::from_secs(5)),
        (6, "wall-crossing identities", c6_identities, Duration::MAX),
        (7, "coefficient-sum law", c7_coefficient_sum, Duration::MAX),
        (8, "fan validation", c8_validation, Duration::MAX),
        (9, "base classification", c9_classification, Duration::MAX),
        (
            10,
            "property suites",
            c10_properties,
            Duration::from_secs(30),
        ),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run, bound) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > bound => {
                Err(format!("{detail}; took {elapsed:.2?}, bound {bound:.2?}"))
            }
            other => other,
        };
        let known = KNOWN_FAILURES
            .iter()
            .find(|(k, _)| *k == id)
            .map(|(_, why)| *why);
        match (&outcome, known) {
            (Ok(detail), None) => {
                println!("criterion {id:>2} PASS  {name} ({elapsed:.2?}): {detail}")
            }
            (Err(reason), Some(why)) => {
                println!("criterion {id:>2} FAIL  {name} ({elapsed:.2?}): {reason} [known: {why}]")
            }
            (Err(reason), None) => {
                println!("criterion {id:>2} FAIL  {name} ({elapsed:.2?}): {reason}");
                unexpected.push(id);
            }
            (Ok(detail), Some(_)) => {
                println!("criterion {id:>2} PASS  {name} ({elapsed:.2?}): {detail} [listed as a known failure]");
                unexpected.push(id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
