use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::NovikovError;
use crate::{format_rational, parse_rational, Rational};

/// `val` of a Novikov scalar; `Infinity` only for zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn add(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => f.write_str(&format_rational(v)),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// A finite Puiseux-type series `Σ a_i T^{E_i}`, known exactly below
/// `cutoff` (`None` means exact everywhere).
///
/// Terms are sorted by strictly increasing exponent, all coefficients are
/// nonzero and every exponent is below the cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovScalar {
    terms: Vec<(Rational, Rational)>,
    cutoff: Option<Rational>,
}

fn min_cutoff(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl NovikovScalar {
    pub fn zero() -> Self {
        NovikovScalar {
            terms: Vec::new(),
            cutoff: None,
        }
    }

    pub fn one() -> Self {
        NovikovScalar::monomial(Rational::one(), Rational::zero())
    }

    /// `coeff · T^exponent`, exact.
    pub fn monomial(coeff: Rational, exponent: Rational) -> Self {
        NovikovScalar::from_terms([(exponent, coeff)], None)
    }

    /// `T^exponent`, exact.
    pub fn t_pow(exponent: Rational) -> Self {
        NovikovScalar::monomial(Rational::one(), exponent)
    }

    pub fn constant(c: Rational) -> Self {
        NovikovScalar::monomial(c, Rational::zero())
    }

    /// Sums `(exponent, coeff)` pairs, then drops everything at or above `cutoff`.
    pub fn from_terms<I>(terms: I, cutoff: Option<Rational>) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        let terms = acc
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && cutoff.as_ref().is_none_or(|k| e < k))
            .collect();
        NovikovScalar { terms, cutoff }
    }

    /// Lowers the cutoff to `min(cutoff, c)`.
    pub fn with_cutoff(&self, c: Rational) -> Self {
        let cutoff = min_cutoff(self.cutoff.as_ref(), Some(&c));
        NovikovScalar::from_terms(self.terms.iter().cloned(), cutoff)
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    pub fn cutoff(&self) -> Option<&Rational> {
        self.cutoff.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    /// True when no known term is nonzero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        match self.terms.first() {
            Some((e, _)) => Valuation::Finite(e.clone()),
            None => Valuation::Infinity,
        }
    }

    /// Member of `Λ_+`: `val > 0`.
    pub fn in_lambda_plus(&self) -> bool {
        self.terms.first().is_none_or(|(e, _)| e.is_positive())
    }

    /// Member of `U_Λ`: `val = 0`.
    pub fn is_unit(&self) -> bool {
        self.terms.first().is_some_and(|(e, _)| e.is_zero())
    }

    /// Lower bound on the exponents of the unknown exact value.
    fn effective_val(&self) -> Option<Rational> {
        match (self.terms.first(), &self.cutoff) {
            (Some((e, _)), _) => Some(e.clone()),
            (None, Some(c)) => Some(c.clone()),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &NovikovScalar) -> NovikovScalar {
        let cutoff = min_cutoff(self.cutoff.as_ref(), other.cutoff.as_ref());
        NovikovScalar::from_terms(self.terms.iter().chain(&other.terms).cloned(), cutoff)
    }

    pub fn neg(&self) -> NovikovScalar {
        NovikovScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn sub(&self, other: &NovikovScalar) -> NovikovScalar {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> NovikovScalar {
        NovikovScalar::from_terms(
            self.terms.iter().map(|(e, c)| (e.clone(), c * k)),
            self.cutoff.clone(),
        )
    }

    /// Product; the result is known below `min(C_x + val y, C_y + val x)`.
    pub fn mul(&self, other: &NovikovScalar) -> NovikovScalar {
        let bound = |c: &Option<Rational>, v: Option<Rational>| match (c, v) {
            (Some(c), Some(v)) => Some(c + v),
            _ => None,
        };
        let cutoff = min_cutoff(
            bound(&self.cutoff, other.effective_val()).as_ref(),
            bound(&other.cutoff, self.effective_val()).as_ref(),
        );
        let products = self
            .terms
            .iter()
            .flat_map(|(e1, c1)| other.terms.iter().map(move |(e2, c2)| (e1 + e2, c1 * c2)));
        NovikovScalar::from_terms(products, cutoff)
    }

    /// Multiplicative inverse. Exact monomials invert exactly; otherwise the
    /// geometric series is summed below the cutoff `C − 2·val`.
    pub fn inverse(&self) -> Result<NovikovScalar, NovikovError> {
        let Some((e, a)) = self.terms.first().cloned() else {
            return Err(NovikovError::DivisionByZero);
        };
        let a_inv = a.recip();
        if self.terms.len() == 1 && self.cutoff.is_none() {
            return Ok(NovikovScalar::monomial(a_inv, -e));
        }
        let Some(c) = self.cutoff.clone() else {
            return Err(NovikovError::InfiniteExpansion(self.to_string()));
        };
        // self = a T^e (1 + u) with val(u) > 0, u known below c − e.
        let inner = &c - &e;
        let u = NovikovScalar::from_terms(
            self.terms[1..]
                .iter()
                .map(|(ei, ci)| (ei - &e, ci * &a_inv)),
            Some(inner.clone()),
        );
        let neg_u = u.neg();
        let mut sum = NovikovScalar::one().with_cutoff(inner.clone());
        let mut term = sum.clone();
        loop {
            term = term.mul(&neg_u).with_cutoff(inner.clone());
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
        }
        let scale = NovikovScalar::monomial(a_inv, -e.clone());
        Ok(sum
            .mul(&scale)
            .with_cutoff(c - e * Rational::from_integer(2.into())))
    }

    /// `self^k`; negative `k` goes through [`NovikovScalar::inverse`].
    pub fn pow(&self, k: i64) -> Result<NovikovScalar, NovikovError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = NovikovScalar::one();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn to_record(&self) -> ScalarRecord {
        ScalarRecord {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (format_rational(e), format_rational(c)))
                .collect(),
            cutoff: self.cutoff.as_ref().map(format_rational),
        }
    }

    pub fn from_record(r: &ScalarRecord) -> Result<NovikovScalar, NovikovError> {
        let q = |s: &str| parse_rational(s).ok_or_else(|| NovikovError::Parse(s.to_string()));
        let terms = r
            .terms
            .iter()
            .map(|(e, c)| Ok((q(e)?, q(c)?)))
            .collect::<Result<Vec<_>, NovikovError>>()?;
        let cutoff = r.cutoff.as_deref().map(q).transpose()?;
        Ok(NovikovScalar::from_terms(terms, cutoff))
    }
}

/// Serialized scalar: sorted `(exponent, coeff)` pairs and an optional cutoff.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRecord {
    pub terms: Vec<(String, String)>,
    pub cutoff: Option<String>,
}

/// Componentwise valuation of a point of `(Λ^*)^n`.
pub fn trop(point: &[NovikovScalar]) -> Result<Vec<Rational>, NovikovError> {
    point
        .iter()
        .enumerate()
        .map(|(i, z)| match z.valuation() {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinity => Err(NovikovError::ZeroCoordinate(i)),
        })
        .collect()
}

impl fmt::Display for NovikovScalar {
    /// Writes `3*T^1/2 + T^2`, with ` + O(T^c)` for a cutoff.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in &self.terms {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (e.is_zero(), mag.is_one(), e.is_one()) {
                (true, _, _) => format_rational(&mag),
                (false, true, true) => "T".to_string(),
                (false, true, false) => format!("T^{}", format_rational(e)),
                (false, false, true) => format!("{}*T", format_rational(&mag)),
                (false, false, false) => {
                    format!("{}*T^{}", format_rational(&mag), format_rational(e))
                }
            };
            parts.push(format!("{sign}{body}"));
        }
        if let Some(c) = &self.cutoff {
            parts.push(format!("+O(T^{})", format_rational(c)));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in parts.iter().enumerate() {
            let (sign, body) = p.split_at(1);
            match (i, sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => f.write_str(body)?,
                (_, s) => write!(f, " {s} {body}")?,
            }
        }
        Ok(())
    }
}

fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let separator = (ch == '+' || ch == '-')
            && depth == 0
            && !cur.is_empty()
            && !matches!(prev, Some('^') | Some('*') | Some('/'));
        if separator {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

impl FromStr for NovikovScalar {
    type Err = NovikovError;

    /// Parses sums of terms `c`, `T`, `c*T^e`, `T^(e)` and an optional `O(T^c)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NovikovError::Parse(s.to_string());
        let strip_parens = |t: &str| -> String {
            t.strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(t)
                .to_string()
        };
        let mut terms = Vec::new();
        let mut cutoff = None;
        let pieces = split_terms(s);
        if pieces.is_empty() {
            return Err(bad());
        }
        for piece in pieces {
            let (negative, body) = match piece.as_bytes()[0] {
                b'+' => (false, &piece[1..]),
                b'-' => (true, &piece[1..]),
                _ => (false, &piece[..]),
            };
            if let Some(inner) = body.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
                let e = inner.strip_prefix("T^").ok_or_else(bad)?;
                cutoff = Some(parse_rational(&strip_parens(e)).ok_or_else(bad)?);
                continue;
            }
            let (coeff, exponent) = match body.find('T') {
                None => (parse_rational(body).ok_or_else(bad)?, Rational::zero()),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coeff = if head.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(head).ok_or_else(bad)?
                    };
                    let tail = &body[pos + 1..];
                    let exponent = if tail.is_empty() {
                        Rational::one()
                    } else {
                        let e = tail.strip_prefix('^').ok_or_else(bad)?;
                        parse_rational(&strip_parens(e)).ok_or_else(bad)?
                    };
                    (coeff, exponent)
                }
            };
            terms.push((exponent, if negative { -coeff } else { coeff }));
        }
        Ok(NovikovScalar::from_terms(terms, cutoff))
    }
}
