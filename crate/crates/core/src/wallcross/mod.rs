//! Superpotentials on both sides of the wall and the gluing map between them.
//!
//! Classes are written in the Chekanov-side basis `(β̂, γ_k, H_a)`. The
//! gluing map sends a monomial with β̂-coefficient `b` to itself times
//! `factor^{-b}` (Clifford to Chekanov) or `factor^{b}` (the inverse), where
//! `factor = 1 + Σ_{k<n} γ_k`. Novikov shifts are absorbed, so series carry
//! no energies.

mod identity;
mod oracle;

pub use identity::{
    identity_rhs, solve_exp_g, solve_n_beta_hat, verify_wall_cross_identity,
    verify_wall_cross_identity_with,
};
pub use oracle::{
    closed_form_invariant, cp_product_support, cpn_support, f1_class, ClosedForm, F1Class,
    ProductBranch,
};

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::fan::{class_maslov, FanError, FanSpec, RelClass};
use crate::series::{divide_trunc, mul_trunc, power, ClassSeries, GammaDegree, SeriesError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallcrossError {
    #[error("{0}")]
    Fan(#[from] FanError),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("NegativePa: extra ray {a} has p_a = {p} < 0")]
    NegativePa { a: usize, p: i64 },
    #[error("NoCompactification: the compact ambient needs at least one extra ray")]
    NoCompactification,
    #[error("MaslovViolation: class {class} has Maslov index {maslov}")]
    MaslovViolation { class: String, maslov: i64 },
    #[error("NonIntegral: class {class} has non-integral count {value}")]
    NonIntegral { class: String, value: String },
    #[error("UnknownFamily: `{0}`")]
    UnknownFamily(String),
    #[error("BadParams: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    Clifford,
    Chekanov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `C^n` itself.
    Open,
    /// The toric compactification described by the extra rays.
    Compact,
}

/// A superpotential together with the fan it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superpotential {
    spec: FanSpec,
    series: ClassSeries,
    chamber: Chamber,
    ambient: Ambient,
}

impl Superpotential {
    pub fn series(&self) -> &ClassSeries {
        &self.series
    }

    pub fn chamber(&self) -> Chamber {
        self.chamber
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn spec(&self) -> &FanSpec {
        &self.spec
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRow {
    pub class: RelClass,
    pub maslov: i64,
    pub n_beta: Rational,
    pub pretty_name: String,
}

/// Canonically sorted rows, all of Maslov index 2 and integral count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTable {
    pub rows: Vec<InvariantRow>,
}

impl InvariantTable {
    pub fn get(&self, class: &RelClass) -> Option<&Rational> {
        self.rows
            .binary_search_by(|r| r.class.cmp(class))
            .ok()
            .map(|i| &self.rows[i].n_beta)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GluingDirection {
    PlusToMinus,
    MinusToPlus,
}

/// The wall-crossing factor `1 + Σ_{k<n} γ_k` with a direction and truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingData {
    factor: ClassSeries,
    direction: GluingDirection,
    trunc: GammaDegree,
}

impl GluingData {
    pub fn factor(&self) -> &ClassSeries {
        &self.factor
    }

    pub fn direction(&self) -> GluingDirection {
        self.direction
    }

    pub fn trunc(&self) -> GammaDegree {
        self.trunc
    }

    pub fn with_direction(mut self, direction: GluingDirection) -> Self {
        self.direction = direction;
        self
    }

    pub fn with_trunc(mut self, trunc: GammaDegree) -> Self {
        self.trunc = trunc;
        self
    }
}

/// Output of [`apply_gluing`]. `incomplete` is set when the exact image has
/// nonzero terms at γ-degree `trunc` or `trunc + 1`, so the cut at `trunc`
/// may have discarded part of an infinite expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingResult {
    pub series: ClassSeries,
    pub incomplete: bool,
}

fn factor_series(n: usize, m: usize) -> ClassSeries {
    let mut s = ClassSeries::one(n, m);
    for k in 1..n {
        s.add_term(RelClass::gamma(n, m, k), Rational::one());
    }
    s
}

/// `Σ_i β_i` plus, for the compact ambient, `Σ_a β'_a`.
pub fn clifford_superpotential(
    spec: &FanSpec,
    ambient: Ambient,
) -> Result<Superpotential, WallcrossError> {
    let (n, m) = spec.dims();
    let mut series = ClassSeries::zero(n, m);
    for i in 1..=n {
        series.add_term(RelClass::beta(n, m, i), Rational::one());
    }
    if ambient == Ambient::Compact {
        if m == 0 {
            return Err(WallcrossError::NoCompactification);
        }
        for a in 1..=m {
            series.add_term(RelClass::beta_prime(spec, a)?, Rational::one());
        }
    }
    Ok(Superpotential {
        spec: spec.clone(),
        series,
        chamber: Chamber::Clifford,
        ambient,
    })
}

/// `β̂` plus, for the compact ambient, `Σ_a β'_a · factor^{p_a}` expanded exactly.
pub fn chekanov_superpotential(
    spec: &FanSpec,
    ambient: Ambient,
) -> Result<Superpotential, WallcrossError> {
    let (n, m) = spec.dims();
    let mut series = ClassSeries::monomial(RelClass::beta_hat(n, m), Rational::one());
    if ambient == Ambient::Compact {
        if m == 0 {
            return Err(WallcrossError::NoCompactification);
        }
        let p = spec.p_values();
        if let Some((a, &pa)) = p.iter().enumerate().find(|(_, &pa)| pa < 0) {
            return Err(WallcrossError::NegativePa { a: a + 1, p: pa });
        }
        let factor = factor_series(n, m);
        let mut powers: HashMap<i64, ClassSeries> = HashMap::new();
        for (a, &pa) in p.iter().enumerate() {
            let fp = match powers.get(&pa) {
                Some(s) => s.clone(),
                None => {
                    let s = power(&factor, pa, GammaDegree(0))?;
                    powers.insert(pa, s.clone());
                    s
                }
            };
            let shifted = fp.shift(&RelClass::beta_prime(spec, a + 1)?);
            series = series.add(&shifted)?;
        }
    }
    Ok(Superpotential {
        spec: spec.clone(),
        series,
        chamber: Chamber::Chekanov,
        ambient,
    })
}

/// Gluing data for `spec`, Clifford to Chekanov, at the default truncation.
pub fn wall_crossing_factor(spec: &FanSpec) -> GluingData {
    let (n, m) = spec.dims();
    GluingData {
        factor: factor_series(n, m),
        direction: GluingDirection::PlusToMinus,
        trunc: GammaDegree::default(),
    }
}

/// Applies the gluing map to `s`, keeping every term of γ-degree at most
/// `gd.trunc()`. Each retained term is exact.
pub fn apply_gluing(
    spec: &FanSpec,
    s: &ClassSeries,
    gd: &GluingData,
) -> Result<GluingResult, WallcrossError> {
    let dims = spec.dims();
    for found in [s.dims(), gd.factor.dims()] {
        if found != dims {
            return Err(SeriesError::DimensionMismatch {
                expected: dims,
                found,
            }
            .into());
        }
    }
    let d = gd.trunc.0;
    // Terms up to `look` are exact; those above `d` only feed the flag.
    let look = d + 1;
    let (n, m) = dims;
    // Monomials sharing an exponent are glued together, so cancellations
    // happen before any expansion.
    let mut groups: BTreeMap<i64, ClassSeries> = BTreeMap::new();
    for (class, coeff) in s.iter() {
        let exponent = match gd.direction {
            GluingDirection::PlusToMinus => -class.b,
            GluingDirection::MinusToPlus => class.b,
        };
        groups
            .entry(exponent)
            .or_insert_with(|| ClassSeries::zero(n, m))
            .add_term(class.clone(), coeff.clone());
    }
    let mut out = ClassSeries::zero(n, m);
    for (exponent, group) in groups {
        let image = if exponent >= 0 {
            let fp = power(&gd.factor, exponent, GammaDegree(0))?;
            mul_trunc(&group, &fp, Some(look))
        } else {
            // Shift to non-negative γ-coefficients, divide, shift back.
            let mut low = RelClass::zero(n, m);
            for (c, _) in group.iter() {
                for (lo, &x) in low.g.iter_mut().zip(&c.g) {
                    *lo = (*lo).min(x);
                }
            }
            let fp = power(&gd.factor, -exponent, GammaDegree(0))?;
            let q = divide_trunc(&group.shift(&-&low), &fp, look + low.gamma_degree())?;
            q.shift(&low).truncated(GammaDegree(look))
        };
        for (c, v) in image.iter() {
            out.add_term(c.clone(), v.clone());
        }
    }
    let incomplete = out
        .iter()
        .any(|(c, v)| c.gamma_degree() >= d && !v.is_zero());
    Ok(GluingResult {
        series: out.truncated(gd.trunc),
        incomplete,
    })
}

/// Tabulates `w` term by term, checking Maslov index 2 and integrality.
pub fn invariant_table(w: &Superpotential) -> Result<InvariantTable, WallcrossError> {
    let mut rows = Vec::with_capacity(w.series.len());
    for (class, value) in w.series.iter() {
        let maslov = class_maslov(&w.spec, class)?;
        if maslov != 2 {
            return Err(WallcrossError::MaslovViolation {
                class: class.pretty(),
                maslov,
            });
        }
        if !value.is_integer() {
            return Err(WallcrossError::NonIntegral {
                class: class.pretty(),
                value: crate::format_rational(value),
            });
        }
        rows.push(InvariantRow {
            class: class.clone(),
            maslov,
            n_beta: value.clone(),
            pretty_name: class.pretty(),
        });
    }
    Ok(InvariantTable { rows })
}

#[cfg(test)]
mod tests;
