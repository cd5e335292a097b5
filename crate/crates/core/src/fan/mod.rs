//! Fan data for toric compactifications of `C^n` and the relative homotopy
//! classes of a Gross fibre inside them.
//!
//! The fan of `C^n` is spanned by the base rays `-e_1, …, -e_n`; a
//! compactification adds primitive rays `v_1, …, v_m`. Ray indices
//! `0..n` denote the base rays and `n..n+m` the extra rays, in input order.

mod builtin;
mod class;
mod validate;

pub use builtin::{builtin_fan, BuiltinFan};
pub use class::{class_boundary, class_maslov, RelClass};
pub use validate::{validate_fan, Diagnostic, ValidationReport};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lattice;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ZeroDimension: the dimension n must be at least 1")]
    ZeroDimension,
    #[error("RayLength: extra ray {index} has {found} entries, expected {expected}")]
    RayLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("NonPrimitiveRay: extra ray {index} {ray:?} is not primitive")]
    NonPrimitiveRay { index: usize, ray: Vec<i64> },
    #[error("DuplicateRay: extra ray {index} {ray:?} repeats an existing ray")]
    DuplicateRay { index: usize, ray: Vec<i64> },
    #[error("ConeArity: cone {cone} has {found} rays, expected {expected}")]
    ConeArity {
        cone: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "ConeIndexOutOfRange: cone {cone} refers to ray {ray}, but there are only {rays} rays"
    )]
    ConeIndexOutOfRange {
        cone: usize,
        ray: usize,
        rays: usize,
    },
    #[error("MalformedCone: cone {cone} repeats a ray index")]
    MalformedCone { cone: usize },
    #[error("MissingCones: the fan has no maximal cones")]
    MissingCones,
    #[error("IndexOutOfRange: index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("DimensionMismatch: expected (n, m) = {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("EnergyArity: {what} has {found} entries, expected {expected}")]
    EnergyArity {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("UnknownName: no builtin fan called `{0}`")]
    UnknownName(String),
    #[error("BadParams: {0}")]
    BadParams(String),
}

/// Raw energy input: `E(β̂)`, `E(γ_1..γ_{n-1})` and `E(H_1..H_m)`.
///
/// An empty `h` means no compactification energies were given; such an
/// assignment can only be used for classes without `H` components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnergyValues {
    pub beta_hat: Rational,
    pub gamma: Vec<Rational>,
    pub h: Vec<Rational>,
}

/// A smooth toric compactification of `C^n`, given by its extra rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanSpec {
    n: usize,
    extra_rays: Vec<Vec<i64>>,
    max_cones: Option<Vec<Vec<usize>>>,
    energies: Option<EnergyValues>,
}

impl FanSpec {
    pub fn new(
        n: usize,
        extra_rays: Vec<Vec<i64>>,
        max_cones: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, FanError> {
        if n == 0 {
            return Err(FanError::ZeroDimension);
        }
        let mut seen: BTreeSet<Vec<i64>> = (0..n).map(|i| base_ray(n, i)).collect();
        for (index, ray) in extra_rays.iter().enumerate() {
            if ray.len() != n {
                return Err(FanError::RayLength {
                    index,
                    expected: n,
                    found: ray.len(),
                });
            }
            if !lattice::is_primitive(ray) {
                return Err(FanError::NonPrimitiveRay {
                    index,
                    ray: ray.clone(),
                });
            }
            if !seen.insert(ray.clone()) {
                return Err(FanError::DuplicateRay {
                    index,
                    ray: ray.clone(),
                });
            }
        }
        let rays = n + extra_rays.len();
        if let Some(cones) = &max_cones {
            for (cone, idx) in cones.iter().enumerate() {
                if idx.len() != n {
                    return Err(FanError::ConeArity {
                        cone,
                        expected: n,
                        found: idx.len(),
                    });
                }
                if let Some(&ray) = idx.iter().find(|&&r| r >= rays) {
                    return Err(FanError::ConeIndexOutOfRange { cone, ray, rays });
                }
                let distinct: BTreeSet<_> = idx.iter().collect();
                if distinct.len() != idx.len() {
                    return Err(FanError::MalformedCone { cone });
                }
            }
        }
        Ok(FanSpec {
            n,
            extra_rays,
            max_cones,
            energies: None,
        })
    }

    pub fn with_energies(mut self, energies: EnergyValues) -> Result<Self, FanError> {
        let checks = [
            ("gamma", self.n - 1, energies.gamma.len()),
            ("H", self.m(), energies.h.len()),
        ];
        for (what, expected, found) in checks {
            // An empty H list is allowed: it describes the open ambient space.
            if found != expected && !(what == "H" && found == 0) {
                return Err(FanError::EnergyArity {
                    what,
                    expected,
                    found,
                });
            }
        }
        self.energies = Some(energies);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of extra rays.
    pub fn m(&self) -> usize {
        self.extra_rays.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.m())
    }

    pub fn extra_rays(&self) -> &[Vec<i64>] {
        &self.extra_rays
    }

    pub fn max_cones(&self) -> Option<&[Vec<usize>]> {
        self.max_cones.as_deref()
    }

    pub fn energies(&self) -> Option<&EnergyValues> {
        self.energies.as_ref()
    }

    pub fn ray_count(&self) -> usize {
        self.n + self.m()
    }

    /// Ray by global index: base rays first, then extra rays.
    pub fn ray(&self, index: usize) -> Vec<i64> {
        if index < self.n {
            base_ray(self.n, index)
        } else {
            self.extra_rays[index - self.n].clone()
        }
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        (0..self.ray_count()).map(|i| self.ray(i)).collect()
    }

    /// The same fan with its maximal cones replaced (or removed).
    pub fn with_cones(&self, max_cones: Option<Vec<Vec<usize>>>) -> Result<Self, FanError> {
        let mut spec = FanSpec::new(self.n, self.extra_rays.clone(), max_cones)?;
        spec.energies = self.energies.clone();
        Ok(spec)
    }

    /// `p_a` for every extra ray, in order.
    pub fn p_values(&self) -> Vec<i64> {
        self.extra_rays.iter().map(|v| v.iter().sum()).collect()
    }
}

/// `-e_{i+1}` in dimension `n`.
fn base_ray(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| if j == i { -1 } else { 0 }).collect()
}

/// Coordinates `v_{a1}, …, v_{an}` of the extra ray `v_a` (1-based `a`) and
/// their sum `p_a`.
pub fn ray_decomposition(spec: &FanSpec, a: usize) -> Result<(Vec<i64>, i64), FanError> {
    if a == 0 || a > spec.m() {
        return Err(FanError::IndexOutOfRange {
            index: a,
            max: spec.m(),
        });
    }
    let v = spec.extra_rays[a - 1].clone();
    let p = v.iter().sum();
    Ok((v, p))
}
