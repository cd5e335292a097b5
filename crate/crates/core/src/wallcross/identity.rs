//! The wall-crossing identities at the wall component across from `B_−`,
//! with sphere corrections `N_k` and Maslov-zero series `F_k` as inputs.
//!
//! In `C^n` every `N_k = 1` and every `F_k = −log(factor)`, so both sides
//! collapse to telescoping products of the factor.

use num_traits::{One, Zero};

use super::{factor_series, WallcrossError};
use crate::fan::{FanSpec, RelClass};
use crate::series::{mul_trunc, series_exp, series_log, ClassSeries, GammaDegree, SeriesError};
use crate::Rational;

fn check_len(what: &str, spec: &FanSpec, v: &[ClassSeries]) -> Result<(), WallcrossError> {
    if v.len() != spec.n() {
        return Err(WallcrossError::BadParams(format!(
            "{what} has {} entries, expected {}",
            v.len(),
            spec.n()
        )));
    }
    for s in v {
        if s.dims() != spec.dims() {
            return Err(SeriesError::DimensionMismatch {
                expected: spec.dims(),
                found: s.dims(),
            }
            .into());
        }
    }
    Ok(())
}

/// `G = log(1 + Σ_k γ_k)` through γ-degree `trunc`.
pub fn solve_exp_g(spec: &FanSpec, trunc: GammaDegree) -> Result<ClassSeries, WallcrossError> {
    let (n, m) = spec.dims();
    Ok(series_log(&factor_series(n, m), trunc)?)
}

/// `N_n + Σ_{ℓ<n} γ_ℓ · N_ℓ` for corrections `n_k[k-1] = N_k`.
pub fn identity_rhs(spec: &FanSpec, n_k: &[ClassSeries]) -> Result<ClassSeries, WallcrossError> {
    check_len("N", spec, n_k)?;
    let (n, m) = spec.dims();
    let mut out = n_k[n - 1].clone();
    for l in 1..n {
        out = out.add(&n_k[l - 1].shift(&RelClass::gamma(n, m, l)))?;
    }
    Ok(out)
}

/// Reads `n_β̂` off the energy-zero part of `n_β̂ · exp(G) = N_n + Σ γ_ℓ N_ℓ`
/// with `N_k = 1`, after checking the full identity through `trunc`.
pub fn solve_n_beta_hat(spec: &FanSpec, trunc: GammaDegree) -> Result<Rational, WallcrossError> {
    let (n, m) = spec.dims();
    let ones = vec![ClassSeries::one(n, m); n];
    let rhs = identity_rhs(spec, &ones)?;
    let exp_g = series_exp(&solve_exp_g(spec, trunc)?, trunc)?;
    let n_hat = rhs.constant_term() / exp_g.constant_term();
    if exp_g.scale(&n_hat) != rhs.truncated(trunc) {
        return Err(WallcrossError::BadParams(
            "n_β̂ · exp(G) does not reproduce the right-hand side".into(),
        ));
    }
    Ok(n_hat)
}

/// Checks `n_β̂ = N_n exp(F_n) + Σ_{ℓ<n} γ_ℓ N_ℓ exp(F_ℓ)` through γ-degree
/// `trunc`. Each `F_k` must have positively filtered terms.
pub fn verify_wall_cross_identity_with(
    spec: &FanSpec,
    n_beta_hat: &Rational,
    n_k: &[ClassSeries],
    f_k: &[ClassSeries],
    trunc: GammaDegree,
) -> Result<bool, WallcrossError> {
    check_len("N", spec, n_k)?;
    check_len("F", spec, f_k)?;
    let (n, m) = spec.dims();
    let mut rhs = ClassSeries::zero(n, m);
    for k in 1..=n {
        let term = mul_trunc(&n_k[k - 1], &series_exp(&f_k[k - 1], trunc)?, Some(trunc.0));
        let term = if k < n {
            term.shift(&RelClass::gamma(n, m, k))
        } else {
            term
        };
        rhs = rhs.add(&term)?;
    }
    let lhs = if n_beta_hat.is_zero() {
        ClassSeries::zero(n, m)
    } else {
        ClassSeries::monomial(RelClass::zero(n, m), n_beta_hat.clone())
    };
    Ok(rhs.truncated(trunc) == lhs)
}

/// The `C^n` case: `n_β̂ = 1`, `N_k = 1`, `F_k = −log(factor)`.
pub fn verify_wall_cross_identity(
    spec: &FanSpec,
    trunc: GammaDegree,
) -> Result<bool, WallcrossError> {
    let (n, m) = spec.dims();
    let f = solve_exp_g(spec, trunc)?.neg();
    let ones = vec![ClassSeries::one(n, m); n];
    verify_wall_cross_identity_with(spec, &Rational::one(), &ones, &vec![f; n], trunc)
}
