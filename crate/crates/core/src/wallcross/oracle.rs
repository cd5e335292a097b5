//! Closed-form counts for `CP^n`, `CP^r × CP^{n−r}` and `F_1`, computed
//! without any series arithmetic.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::WallcrossError;
use crate::fan::RelClass;
use crate::Rational;

/// Which sphere class a `CP^r × CP^{n−r}` count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductBranch {
    H1,
    H2,
}

/// The nonzero `F_1` classes named by the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum F1Class {
    BetaHat,
    H1Minus2BetaHatMinusGamma,
    H1Minus2BetaHat,
    H1Minus2BetaHatPlusGamma,
    H2MinusBetaHat,
}

impl F1Class {
    pub const ALL: [F1Class; 5] = [
        F1Class::BetaHat,
        F1Class::H1Minus2BetaHatMinusGamma,
        F1Class::H1Minus2BetaHat,
        F1Class::H1Minus2BetaHatPlusGamma,
        F1Class::H2MinusBetaHat,
    ];
}

impl FromStr for F1Class {
    type Err = WallcrossError;

    /// Accepts the pretty class name; `-`/`−`, spacing and `γ`/`γ_1` are interchangeable.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normal = |t: &str| -> String {
            t.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| if c == '−' { '-' } else { c })
                .collect::<String>()
                .replace("γ_1", "γ")
        };
        let key = normal(s);
        F1Class::ALL
            .into_iter()
            .find(|c| normal(&f1_class(*c).pretty()) == key)
            .ok_or_else(|| WallcrossError::BadParams(format!("unknown F_1 class `{s}`")))
    }
}

/// The class `tag` refers to, in the `F_1` fan (`n = 2`, `m = 2`).
pub fn f1_class(tag: F1Class) -> RelClass {
    let (b, g, h) = match tag {
        F1Class::BetaHat => (1, 0, [0, 0]),
        F1Class::H1Minus2BetaHatMinusGamma => (-2, -1, [1, 0]),
        F1Class::H1Minus2BetaHat => (-2, 0, [1, 0]),
        F1Class::H1Minus2BetaHatPlusGamma => (-2, 1, [1, 0]),
        F1Class::H2MinusBetaHat => (-1, 0, [0, 1]),
    };
    RelClass::new(b, vec![g], h.to_vec())
}

/// A closed-form query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    /// `H − nβ̂ + Σ k_i γ_i` in `CP^n`.
    Cpn {
        n: usize,
        k: Vec<i64>,
    },
    /// `H_1 − rβ̂ + Σ k_i γ_i` or `H_2 − (n−r)β̂ + Σ k_i γ_i` in `CP^r × CP^{n−r}`.
    CpProduct {
        n: usize,
        r: usize,
        branch: ProductBranch,
        k: Vec<i64>,
    },
    F1(F1Class),
}

impl ClosedForm {
    /// Checks a family name: `cpn`, `cp_product` (or `cp-product`), `f1`.
    pub fn check_family(name: &str) -> Result<(), WallcrossError> {
        match name {
            "cpn" | "cp_product" | "cp-product" | "f1" => Ok(()),
            other => Err(WallcrossError::UnknownFamily(other.to_string())),
        }
    }

    fn check(&self) -> Result<(), WallcrossError> {
        match self {
            ClosedForm::Cpn { n, k } if *n >= 1 && k.len() == n - 1 => Ok(()),
            ClosedForm::CpProduct { n, r, k, .. } if *r >= 1 && r < n && k.len() == n - 1 => Ok(()),
            ClosedForm::F1(_) => Ok(()),
            other => Err(WallcrossError::BadParams(format!("{other:?}"))),
        }
    }

    /// The relative class the query names.
    pub fn class(&self) -> Result<RelClass, WallcrossError> {
        self.check()?;
        Ok(match self {
            ClosedForm::Cpn { n, k } => RelClass::new(-(*n as i64), k.clone(), vec![1]),
            ClosedForm::CpProduct { n, r, branch, k } => match branch {
                ProductBranch::H1 => RelClass::new(-(*r as i64), k.clone(), vec![1, 0]),
                ProductBranch::H2 => RelClass::new(-((n - r) as i64), k.clone(), vec![0, 1]),
            },
            ClosedForm::F1(tag) => f1_class(*tag),
        })
    }
}

fn factorial(k: i64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `top! / Π d_i!`, or zero when some `d_i` is negative.
fn multinomial(top: i64, parts: impl IntoIterator<Item = i64>) -> Rational {
    let mut den = BigInt::one();
    for d in parts {
        if d < 0 {
            return Rational::zero();
        }
        den *= factorial(d);
    }
    Rational::new(factorial(top), den)
}

/// Evaluates the closed form; classes outside the admissible region give 0.
pub fn closed_form_invariant(q: &ClosedForm) -> Result<Rational, WallcrossError> {
    q.check()?;
    Ok(match q {
        ClosedForm::Cpn { n, k } => {
            let sum: i64 = k.iter().sum();
            multinomial(*n as i64, k.iter().map(|&ki| ki + 1).chain([1 - sum]))
        }
        ClosedForm::CpProduct { n, r, branch, k } => {
            let sum: i64 = k.iter().sum();
            let r = *r;
            match branch {
                ProductBranch::H1 => multinomial(
                    r as i64,
                    k.iter()
                        .enumerate()
                        .map(|(i, &ki)| if i < r { ki + 1 } else { ki })
                        .chain([-sum]),
                ),
                ProductBranch::H2 => multinomial(
                    (n - r) as i64,
                    k.iter()
                        .enumerate()
                        .map(|(i, &li)| if i < r { li } else { li + 1 })
                        .chain([1 - sum]),
                ),
            }
        }
        ClosedForm::F1(tag) => match tag {
            F1Class::H1Minus2BetaHat => Rational::from_integer(2.into()),
            _ => Rational::one(),
        },
    })
}

/// All integer vectors with `x_i ≥ lower_i` and `Σ x_i ≤ cap`, lexicographic.
fn lattice_simplex(lower: &[i64], cap: i64) -> Vec<Vec<i64>> {
    fn rec(lower: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let Some((&lo, rest)) = lower.split_first() else {
            out.push(prefix.clone());
            return;
        };
        let rest_min: i64 = rest.iter().sum();
        let mut x = lo;
        while x + rest_min <= budget {
            prefix.push(x);
            rec(rest, budget - x, prefix, out);
            prefix.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    if lower.iter().sum::<i64>() <= cap {
        rec(lower, cap, &mut Vec::new(), &mut out);
    }
    out
}

/// Admissible `k` for `CP^n`: `k_i ≥ −1` and `Σ k_i ≤ 1`.
pub fn cpn_support(n: usize) -> Vec<Vec<i64>> {
    lattice_simplex(&vec![-1; n.saturating_sub(1)], 1)
}

/// Admissible index vectors for one branch of `CP^r × CP^{n−r}`.
pub fn cp_product_support(n: usize, r: usize, branch: ProductBranch) -> Vec<Vec<i64>> {
    let lower: Vec<i64> = (0..n - 1)
        .map(|i| match (branch, i < r) {
            (ProductBranch::H1, true) | (ProductBranch::H2, false) => -1,
            _ => 0,
        })
        .collect();
    let cap = match branch {
        ProductBranch::H1 => 0,
        ProductBranch::H2 => 1,
    };
    lattice_simplex(&lower, cap)
}
