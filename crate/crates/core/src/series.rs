//! The group ring `Q[π_2(X̄, L)]` restricted to finitely supported series,
//! with truncated exponential, logarithm and negative powers.
//!
//! Truncation is by γ-degree, the total absolute γ-coefficient of a class.
//! Inverse powers, `exp` and `log` only accept inputs whose non-constant
//! terms have non-negative γ-coefficients and positive γ-degree; on such
//! series γ-degree is additive, so truncating intermediate products is exact
//! on every retained term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::RelClass;
use crate::Rational;

/// Truncation grade: retained terms have γ-degree at most this value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaDegree(pub u64);

impl GammaDegree {
    pub const DEFAULT: GammaDegree = GammaDegree(16);
}

impl Default for GammaDegree {
    fn default() -> Self {
        GammaDegree::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("DimensionMismatch: expected (n, m) = {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("NotInvertible: {0}")]
    NotInvertible(String),
    #[error("NotFiltered: term {0} has no positive γ-filtration")]
    NotFiltered(String),
    #[error("BadRecord: {0}")]
    BadRecord(String),
}

/// Finitely supported `Σ c_β · β` with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSeries {
    n: usize,
    m: usize,
    terms: BTreeMap<RelClass, Rational>,
}

impl ClassSeries {
    pub fn zero(n: usize, m: usize) -> Self {
        ClassSeries {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, m: usize) -> Self {
        ClassSeries::monomial(RelClass::zero(n, m), Rational::one())
    }

    pub fn monomial(class: RelClass, coeff: Rational) -> Self {
        let (n, m) = class.dims();
        let mut s = ClassSeries::zero(n, m);
        s.add_term(class, coeff);
        s
    }

    /// Sums the given terms; repeated classes accumulate.
    pub fn from_terms<I>(n: usize, m: usize, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (RelClass, Rational)>,
    {
        let mut s = ClassSeries::zero(n, m);
        for (c, v) in terms {
            if c.dims() != (n, m) {
                return Err(SeriesError::DimensionMismatch {
                    expected: (n, m),
                    found: c.dims(),
                });
            }
            s.add_term(c, v);
        }
        Ok(s)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&RelClass, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, class: &RelClass) -> Rational {
        self.terms
            .get(class)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&RelClass::zero(self.n, self.m))
    }

    pub fn max_gamma_degree(&self) -> Option<u64> {
        self.terms.keys().map(RelClass::gamma_degree).max()
    }

    pub(crate) fn add_term(&mut self, class: RelClass, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(class) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &ClassSeries) -> Result<(), SeriesError> {
        if self.dims() != other.dims() {
            return Err(SeriesError::DimensionMismatch {
                expected: self.dims(),
                found: other.dims(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassSeries) -> Result<ClassSeries, SeriesError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (c, v) in &other.terms {
            out.add_term(c.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ClassSeries) -> Result<ClassSeries, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ClassSeries {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> ClassSeries {
        let mut out = ClassSeries::zero(self.n, self.m);
        for (c, v) in &self.terms {
            out.add_term(c.clone(), v * k);
        }
        out
    }

    /// Multiplies every class by the monomial `shift`.
    pub fn shift(&self, shift: &RelClass) -> ClassSeries {
        let terms = self
            .terms
            .iter()
            .map(|(c, v)| (c + shift, v.clone()))
            .collect();
        ClassSeries {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// Drops every term of γ-degree above `trunc`.
    pub fn truncated(&self, trunc: GammaDegree) -> ClassSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(c, _)| c.gamma_degree() <= trunc.0)
            .map(|(c, v)| (c.clone(), v.clone()))
            .collect();
        ClassSeries {
            n: self.n,
            m: self.m,
            terms,
        }
    }

    /// Canonical serialization, sorted.
    pub fn records(&self) -> Vec<SeriesRecord> {
        self.terms
            .iter()
            .map(|(c, v)| SeriesRecord {
                b: c.b,
                g: c.g.clone(),
                h: c.h.clone(),
                coeff_numerator: v.numer().to_string(),
                coeff_denominator: v.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(n: usize, m: usize, records: &[SeriesRecord]) -> Result<Self, SeriesError> {
        let terms = records
            .iter()
            .map(|r| {
                let num: BigInt = r.coeff_numerator.trim().parse().map_err(|_| {
                    SeriesError::BadRecord(format!("numerator `{}`", r.coeff_numerator))
                })?;
                let den: BigInt = r.coeff_denominator.trim().parse().map_err(|_| {
                    SeriesError::BadRecord(format!("denominator `{}`", r.coeff_denominator))
                })?;
                if den.is_zero() {
                    return Err(SeriesError::BadRecord("zero denominator".into()));
                }
                Ok((
                    RelClass::new(r.b, r.g.clone(), r.h.clone()),
                    Rational::new(num, den),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ClassSeries::from_terms(n, m, terms)
    }
}

impl fmt::Display for ClassSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative();
            let mag = v.abs();
            match (i, neg) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}·[{}]", crate::format_rational(&mag), c)?;
        }
        Ok(())
    }
}

/// One term of the canonical serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub b: i64,
    pub g: Vec<i64>,
    pub h: Vec<i64>,
    #[serde(deserialize_with = "int_or_string")]
    pub coeff_numerator: String,
    #[serde(deserialize_with = "int_or_string")]
    pub coeff_denominator: String,
}

fn int_or_string<'de, D: serde::Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Str(String),
    }
    Ok(match Raw::deserialize(d)? {
        Raw::Int(i) => i.to_string(),
        Raw::Str(s) => s,
    })
}

/// Product with every term of γ-degree above `trunc` discarded.
pub(crate) fn mul_trunc(f: &ClassSeries, g: &ClassSeries, trunc: Option<u64>) -> ClassSeries {
    let mut out = ClassSeries::zero(f.n, f.m);
    match trunc {
        // γ-degree is additive on classes with g ≥ 0, so whole degree
        // blocks can be skipped.
        Some(d) if non_negative(f) && non_negative(g) => {
            let (fb, gb) = (graded(f, d), graded(g, d));
            for (i, fi) in fb.iter().enumerate() {
                for gj in gb.iter().take(d as usize + 1 - i) {
                    accumulate(&mut out.terms, fi, gj, None);
                }
            }
        }
        _ => {
            for (c1, v1) in &f.terms {
                for (c2, v2) in &g.terms {
                    let c = c1 + c2;
                    if trunc.is_some_and(|d| c.gamma_degree() > d) {
                        continue;
                    }
                    out.add_term(c, v1 * v2);
                }
            }
        }
    }
    out
}

fn non_negative(f: &ClassSeries) -> bool {
    f.terms.keys().all(|c| c.g.iter().all(|&x| x >= 0))
}

type Block = Vec<(RelClass, Rational)>;

/// Terms of γ-degree `0..=d`, grouped by degree.
fn graded(f: &ClassSeries, d: u64) -> Vec<Block> {
    let mut blocks = vec![Vec::new(); d as usize + 1];
    for (c, v) in &f.terms {
        let k = c.gamma_degree();
        if k <= d {
            blocks[k as usize].push((c.clone(), v.clone()));
        }
    }
    blocks
}

/// `out += scale · a · b`.
fn accumulate(
    out: &mut BTreeMap<RelClass, Rational>,
    a: &[(RelClass, Rational)],
    b: &[(RelClass, Rational)],
    scale: Option<&Rational>,
) {
    for (c1, v1) in a {
        let v1 = match scale {
            Some(s) => v1 * s,
            None => v1.clone(),
        };
        for (c2, v2) in b {
            let v = &v1 * v2;
            match out.entry(c1 + c2) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += v;
                }
            }
        }
    }
}

fn into_block(map: BTreeMap<RelClass, Rational>, k: u64) -> Block {
    let inv = Rational::new(1.into(), (k as i64).into());
    map.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v * &inv))
        .collect()
}

fn collect(n: usize, m: usize, blocks: Vec<Block>) -> ClassSeries {
    let mut out = ClassSeries::zero(n, m);
    for (c, v) in blocks.into_iter().flatten() {
        out.add_term(c, v);
    }
    out
}

/// Bilinear convolution product.
pub fn multiply(f: &ClassSeries, g: &ClassSeries) -> Result<ClassSeries, SeriesError> {
    f.check_same(g)?;
    Ok(mul_trunc(f, g, None))
}

fn positively_filtered(c: &RelClass) -> bool {
    c.g.iter().all(|&x| x >= 0) && c.gamma_degree() >= 1
}

/// Checks `f = 1 + u` with every term of `u` positively filtered.
fn check_unit(f: &ClassSeries) -> Result<(), SeriesError> {
    if f.constant_term() != Rational::one() {
        return Err(SeriesError::NotInvertible(format!(
            "constant term is {}, expected 1",
            crate::format_rational(&f.constant_term())
        )));
    }
    let zero = RelClass::zero(f.n, f.m);
    if let Some((c, _)) = f
        .terms
        .iter()
        .find(|(c, _)| **c != zero && !positively_filtered(c))
    {
        return Err(SeriesError::NotInvertible(format!(
            "term {c} is not of positive γ-degree with non-negative γ-coefficients"
        )));
    }
    Ok(())
}

// The three expansions below solve `D(out) = …` degree by degree, where `D`
// multiplies a term by its γ-degree. `D` is a derivation on series with
// non-negative γ-coefficients, which the input checks guarantee.

/// `f^k`. Non-negative `k` is exact and ignores `trunc`; negative `k` needs
/// `f = 1 + u` with `u` positively filtered and is expanded through
/// γ-degree `trunc`.
pub fn power(f: &ClassSeries, k: i64, trunc: GammaDegree) -> Result<ClassSeries, SeriesError> {
    let (n, m) = f.dims();
    if k >= 0 {
        let mut result = ClassSeries::one(n, m);
        let mut base = f.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = mul_trunc(&result, &base, None);
            }
            e >>= 1;
            if e > 0 {
                base = mul_trunc(&base, &base, None);
            }
        }
        return Ok(result);
    }
    check_unit(f)?;
    // f·D(P) = k·D(f)·P, so  d·P_d = Σ_{j≥1} (k·j − (d − j)) f_j P_{d−j}.
    let d = trunc.0;
    let fb = graded(f, d);
    let mut pb: Vec<Block> = vec![vec![(RelClass::zero(n, m), Rational::one())]];
    for deg in 1..=d {
        let mut acc = BTreeMap::new();
        for j in 1..=deg {
            let w = crate::rat(k * j as i64 - (deg - j) as i64);
            if !w.is_zero() {
                accumulate(&mut acc, &fb[j as usize], &pb[(deg - j) as usize], Some(&w));
            }
        }
        pb.push(into_block(acc, deg));
    }
    Ok(collect(n, m, pb))
}

/// `s / f` through γ-degree `trunc`, for `f = 1 + u` with `u` positively
/// filtered and `s` with non-negative γ-coefficients.
pub(crate) fn divide_trunc(
    s: &ClassSeries,
    f: &ClassSeries,
    trunc: u64,
) -> Result<ClassSeries, SeriesError> {
    check_unit(f)?;
    debug_assert!(non_negative(s));
    let (n, m) = f.dims();
    // Q_d = S_d − Σ_{j≥1} f_j Q_{d−j}.
    let (sb, fb) = (graded(s, trunc), graded(f, trunc));
    let mut qb: Vec<Block> = Vec::with_capacity(sb.len());
    let minus_one = -Rational::one();
    for deg in 0..=trunc as usize {
        let mut acc: BTreeMap<RelClass, Rational> = sb[deg].iter().cloned().collect();
        for j in 1..=deg {
            accumulate(&mut acc, &fb[j], &qb[deg - j], Some(&minus_one));
        }
        qb.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }
    Ok(collect(n, m, qb))
}

/// `Σ_{j≥0} f^j / j!` through γ-degree `trunc`.
pub fn series_exp(f: &ClassSeries, trunc: GammaDegree) -> Result<ClassSeries, SeriesError> {
    if let Some((c, _)) = f.terms.iter().find(|(c, _)| !positively_filtered(c)) {
        return Err(SeriesError::NotFiltered(c.pretty()));
    }
    let (n, m) = f.dims();
    // D(E) = D(f)·E, so  d·E_d = Σ_{j≥1} j f_j E_{d−j}.
    let d = trunc.0;
    let fb = graded(f, d);
    let mut eb: Vec<Block> = vec![vec![(RelClass::zero(n, m), Rational::one())]];
    for deg in 1..=d {
        let mut acc = BTreeMap::new();
        for j in 1..=deg {
            accumulate(
                &mut acc,
                &fb[j as usize],
                &eb[(deg - j) as usize],
                Some(&crate::rat(j as i64)),
            );
        }
        eb.push(into_block(acc, deg));
    }
    Ok(collect(n, m, eb))
}

/// `log f = Σ_{j≥1} (−1)^{j+1} (f − 1)^j / j` through γ-degree `trunc`.
pub fn series_log(f: &ClassSeries, trunc: GammaDegree) -> Result<ClassSeries, SeriesError> {
    check_unit(f)?;
    let (n, m) = f.dims();
    // f·D(L) = D(f), so  d·L_d = d·f_d − Σ_{1≤j<d} (d − j) f_j L_{d−j}.
    let d = trunc.0;
    let fb = graded(f, d);
    let mut lb: Vec<Block> = vec![Vec::new()];
    for deg in 1..=d {
        let mut acc = BTreeMap::new();
        let own = [(RelClass::zero(n, m), crate::rat(deg as i64))];
        accumulate(&mut acc, &fb[deg as usize], &own, None);
        for j in 1..deg {
            let w = crate::rat(-((deg - j) as i64));
            accumulate(&mut acc, &fb[j as usize], &lb[(deg - j) as usize], Some(&w));
        }
        lb.push(into_block(acc, deg));
    }
    Ok(collect(n, m, lb))
}
