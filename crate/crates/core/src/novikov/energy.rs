use num_traits::Signed;

use super::{NovikovError, NovikovLaurent, NovikovScalar};
use crate::fan::{class_boundary, ray_decomposition, EnergyValues, FanError, FanSpec, RelClass};
use crate::series::ClassSeries;
use crate::Rational;

/// Validated symplectic areas of the basis classes; extended linearly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyAssignment {
    beta_hat: Rational,
    gamma: Vec<Rational>,
    /// `None` for the open ambient.
    h: Option<Vec<Rational>>,
}

impl EnergyAssignment {
    pub fn beta_hat(&self) -> &Rational {
        &self.beta_hat
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn h(&self) -> Option<&[Rational]> {
        self.h.as_deref()
    }

    /// `E(c) = b·E(β̂) + Σ g_k E(γ_k) + Σ h_a E(H_a)`.
    pub fn energy(&self, c: &RelClass) -> Result<Rational, NovikovError> {
        if c.g.len() != self.gamma.len() {
            return Err(NovikovError::DimensionMismatch {
                expected: self.gamma.len(),
                found: c.g.len(),
            });
        }
        let mut e = &self.beta_hat * Rational::from_integer(c.b.into());
        for (g, eg) in c.g.iter().zip(&self.gamma) {
            e += eg * Rational::from_integer((*g).into());
        }
        match &self.h {
            Some(h) => {
                if c.h.len() != h.len() {
                    return Err(NovikovError::DimensionMismatch {
                        expected: h.len(),
                        found: c.h.len(),
                    });
                }
                for (k, eh) in c.h.iter().zip(h) {
                    e += eh * Rational::from_integer((*k).into());
                }
            }
            None if c.h.iter().any(|k| *k != 0) => {
                return Err(NovikovError::MissingEnergy(c.pretty()));
            }
            None => {}
        }
        Ok(e)
    }
}

/// Checks `E(β̂) > 0`, `E(γ_k) > 0`, `E(H_a) > 0` and `E(β'_a) > 0`.
/// An empty `H` list gives an open-ambient assignment.
pub fn assign_energies(
    spec: &FanSpec,
    values: &EnergyValues,
) -> Result<EnergyAssignment, NovikovError> {
    let spec = spec.clone().with_energies(values.clone())?;
    let m = spec.m();
    let violation = |name: String| Err(NovikovError::EnergyViolation(name));
    if !values.beta_hat.is_positive() {
        return violation("β̂".into());
    }
    if let Some(k) = values.gamma.iter().position(|e| !e.is_positive()) {
        return violation(format!("γ_{}", k + 1));
    }
    let h = if values.h.is_empty() && m > 0 {
        None
    } else {
        Some(values.h.clone())
    };
    let ea = EnergyAssignment {
        beta_hat: values.beta_hat.clone(),
        gamma: values.gamma.clone(),
        h,
    };
    if ea.h.is_some() {
        for a in 1..=m {
            if !values.h[a - 1].is_positive() {
                return violation(format!("H_{a}"));
            }
            ray_decomposition(&spec, a)?;
            let beta_prime = RelClass::beta_prime(&spec, a)?;
            if !ea.energy(&beta_prime)?.is_positive() {
                return violation(format!("β'_{a}"));
            }
        }
    }
    Ok(ea)
}

/// `Σ coeff · T^{E(c)} Y^{∂c}`.
pub fn to_laurent(
    spec: &FanSpec,
    s: &ClassSeries,
    ea: &EnergyAssignment,
) -> Result<NovikovLaurent, NovikovError> {
    let terms = s
        .iter()
        .map(|(c, v)| {
            let coeff = NovikovScalar::monomial(v.clone(), ea.energy(c)?);
            Ok((class_boundary(spec, c)?, coeff))
        })
        .collect::<Result<Vec<_>, NovikovError>>()?;
    NovikovLaurent::from_terms(spec.n(), terms)
}

/// `Σ coeff · T^{E(c)} Π point_i^{(∂c)_i}`.
pub fn evaluate(
    spec: &FanSpec,
    s: &ClassSeries,
    ea: &EnergyAssignment,
    point: &[NovikovScalar],
) -> Result<NovikovScalar, NovikovError> {
    if s.dims() != spec.dims() {
        return Err(FanError::DimensionMismatch {
            expected: spec.dims(),
            found: s.dims(),
        }
        .into());
    }
    to_laurent(spec, s, ea)?.substitute(point)
}
