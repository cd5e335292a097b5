use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{NovikovError, NovikovScalar, Valuation};
use crate::Rational;

/// `Σ_ν a_ν Y^ν` with `ν ∈ Z^n` and Novikov coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovLaurent {
    n: usize,
    terms: BTreeMap<Vec<i64>, NovikovScalar>,
}

impl NovikovLaurent {
    pub fn zero(n: usize) -> Self {
        NovikovLaurent {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(nu: Vec<i64>, coeff: NovikovScalar) -> Self {
        let mut f = NovikovLaurent::zero(nu.len());
        f.add_term(nu, coeff);
        f
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, NovikovError>
    where
        I: IntoIterator<Item = (Vec<i64>, NovikovScalar)>,
    {
        let mut f = NovikovLaurent::zero(n);
        for (nu, c) in terms {
            check_dim(n, nu.len())?;
            f.add_term(nu, c);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &NovikovScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, nu: &[i64]) -> Option<&NovikovScalar> {
        self.terms.get(nu)
    }

    /// Adds `c · Y^ν`; entries that become zero with no cutoff are dropped.
    pub(crate) fn add_term(&mut self, nu: Vec<i64>, c: NovikovScalar) {
        let sum = match self.terms.remove(&nu) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !(sum.is_zero() && sum.is_exact()) {
            self.terms.insert(nu, sum);
        }
    }

    pub fn add(&self, other: &NovikovLaurent) -> Result<NovikovLaurent, NovikovError> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (nu, c) in &other.terms {
            out.add_term(nu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &NovikovLaurent) -> Result<NovikovLaurent, NovikovError> {
        check_dim(self.n, other.n)?;
        let mut out = NovikovLaurent::zero(self.n);
        for (nu1, c1) in &self.terms {
            for (nu2, c2) in &other.terms {
                let nu = nu1.iter().zip(nu2).map(|(a, b)| a + b).collect();
                out.add_term(nu, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Substitutes `Y_i = point_i`.
    pub fn substitute(&self, point: &[NovikovScalar]) -> Result<NovikovScalar, NovikovError> {
        check_dim(self.n, point.len())?;
        if let Some(i) = point.iter().position(NovikovScalar::is_zero) {
            return Err(NovikovError::ZeroCoordinate(i));
        }
        let mut total = NovikovScalar::zero();
        for (nu, c) in &self.terms {
            let mut term = c.clone();
            for (y, &e) in point.iter().zip(nu) {
                term = term.mul(&y.pow(e)?);
            }
            total = total.add(&term);
        }
        Ok(total)
    }
}

impl fmt::Display for NovikovLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (nu, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (k, e) in nu.iter().enumerate().filter(|(_, e)| **e != 0) {
                if *e == 1 {
                    write!(f, "*Y_{}", k + 1)?;
                } else {
                    write!(f, "*Y_{}^{e}", k + 1)?;
                }
            }
        }
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), NovikovError> {
    if expected != found {
        return Err(NovikovError::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn pairing(nu: &[i64], u: &[Rational]) -> Rational {
    nu.iter()
        .zip(u)
        .map(|(&a, x)| x * Rational::from_integer(a.into()))
        .sum()
}

/// `min_ν [val(a_ν) + min_u ⟨ν, u⟩]` over the vertices `u` of `Δ`.
pub fn gauss_valuation(
    f: &NovikovLaurent,
    delta_vertices: &[Vec<Rational>],
) -> Result<Valuation, NovikovError> {
    if delta_vertices.is_empty() {
        return Err(NovikovError::EmptyPolytope);
    }
    for u in delta_vertices {
        check_dim(f.n, u.len())?;
    }
    let mut best = Valuation::Infinity;
    for (nu, c) in &f.terms {
        let Valuation::Finite(v) = c.valuation() else {
            continue;
        };
        for u in delta_vertices {
            let cand = Valuation::Finite(&v + pairing(nu, u));
            if cand < best {
                best = cand;
            }
        }
    }
    Ok(best)
}

/// `Y^ν ↦ T^{⟨ν, c⟩} Y^ν`; inverted by `−c`.
pub fn base_point_shift(
    f: &NovikovLaurent,
    c: &[Rational],
) -> Result<NovikovLaurent, NovikovError> {
    check_dim(f.n, c.len())?;
    let terms = f
        .terms
        .iter()
        .map(|(nu, a)| (nu.clone(), a.mul(&NovikovScalar::t_pow(pairing(nu, c)))));
    NovikovLaurent::from_terms(f.n, terms)
}

/// `Σ_i T^{⟨v_i, q⟩ − c_i} Y^{v_i}` for `q` strictly inside the polytope.
pub fn toric_superpotential(
    normals: &[Vec<i64>],
    constants: &[Rational],
    q: &[Rational],
) -> Result<NovikovLaurent, NovikovError> {
    let ones = vec![NovikovScalar::zero(); normals.len()];
    toric_superpotential_with_corrections(normals, constants, q, &ones)
}

/// As [`toric_superpotential`], with term `i` multiplied by `1 + corrections[i]`.
/// The corrections are caller-supplied sphere-bubble contributions.
pub fn toric_superpotential_with_corrections(
    normals: &[Vec<i64>],
    constants: &[Rational],
    q: &[Rational],
    corrections: &[NovikovScalar],
) -> Result<NovikovLaurent, NovikovError> {
    check_dim(normals.len(), constants.len())?;
    check_dim(normals.len(), corrections.len())?;
    let n = q.len();
    let mut out = NovikovLaurent::zero(n);
    for (i, ((v, c), corr)) in normals.iter().zip(constants).zip(corrections).enumerate() {
        check_dim(n, v.len())?;
        let ell = pairing(v, q) - c;
        if ell <= Rational::zero() {
            return Err(NovikovError::OutsidePolytope(i));
        }
        let coeff = NovikovScalar::t_pow(ell).mul(&NovikovScalar::one().add(corr));
        out.add_term(v.clone(), coeff);
    }
    Ok(out)
}
