//! The base `B = R^{n−1} × (−1, ∞)` of the Gross fibration: chambers, wall
//! components, tropical wall components and π_1 monodromy.
//!
//! A point is `(λ, q2)` with `λ ∈ Q^{n−1}`. The wall `q2 = 0` splits into
//! components `H_1..H_n`: `H_i` for `i < n` is where `λ_i` is the strict
//! minimum of `(λ_1, …, λ_{n−1}, 0)`, and `H_n` where `0` is.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{FanSpec, RelClass};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("OutsideBase: q2 = {0} is not above −1")]
    OutsideBase(String),
    #[error("DimensionMismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("IndexOutOfRange: index {index} is outside {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },
    #[error("NotAdapted: ray {index} pairs to {value} with m0, expected 1")]
    NotAdapted { index: usize, value: i64 },
    #[error("EmptyRays: at least one ray is required")]
    EmptyRays,
    #[error("Unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberPoint {
    pub lambda: Vec<Rational>,
    pub q2: Rational,
}

impl ChamberPoint {
    pub fn new(lambda: Vec<Rational>, q2: Rational) -> Self {
        ChamberPoint { lambda, q2 }
    }
}

/// Where a base point lies. Wall indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    BPlus,
    BMinus,
    Wall(usize),
    Discriminant,
}

impl std::fmt::Display for Chamber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Chamber::BPlus => f.write_str("BPlus"),
            Chamber::BMinus => f.write_str("BMinus"),
            Chamber::Wall(i) => write!(f, "Wall({i})"),
            Chamber::Discriminant => f.write_str("Discriminant"),
        }
    }
}

pub fn classify_point(n: usize, p: &ChamberPoint) -> Result<Chamber, BaseError> {
    if p.lambda.len() + 1 != n {
        return Err(BaseError::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: p.lambda.len(),
        });
    }
    if p.q2 <= -Rational::one() {
        return Err(BaseError::OutsideBase(crate::format_rational(&p.q2)));
    }
    if p.q2.is_positive() {
        return Ok(Chamber::BPlus);
    }
    if p.q2.is_negative() {
        return Ok(Chamber::BMinus);
    }
    let values = p.lambda.iter().cloned().chain([Rational::zero()]);
    Ok(match unique_extremum(values, |a, b| a < b) {
        Some(i) => Chamber::Wall(i + 1),
        None => Chamber::Discriminant,
    })
}

/// Index of the strictly best value under `better`, or `None` on a tie.
fn unique_extremum(
    values: impl IntoIterator<Item = Rational>,
    better: impl Fn(&Rational, &Rational) -> bool,
) -> Option<usize> {
    let mut best: Option<(usize, Rational)> = None;
    let mut tied = false;
    for (i, v) in values.into_iter().enumerate() {
        match &best {
            None => best = Some((i, v)),
            Some((_, b)) if better(&v, b) => {
                best = Some((i, v));
                tied = false;
            }
            Some((_, b)) if v == *b => tied = true,
            _ => {}
        }
    }
    match (best, tied) {
        (Some((i, _)), false) => Some(i),
        _ => None,
    }
}

/// Rays `v_0..v_d` of a Calabi–Yau fan with `⟨v_i, m0⟩ = 1`, and constants `c_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CYFanRays {
    rays: Vec<Vec<i64>>,
    m0: Vec<i64>,
    constants: Vec<Rational>,
}

impl CYFanRays {
    /// Missing constants default to zero.
    pub fn new(
        rays: Vec<Vec<i64>>,
        m0: Vec<i64>,
        constants: Option<Vec<Rational>>,
    ) -> Result<Self, BaseError> {
        if rays.is_empty() {
            return Err(BaseError::EmptyRays);
        }
        let n = m0.len();
        for (index, v) in rays.iter().enumerate() {
            if v.len() != n {
                return Err(BaseError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            let value = crate::lattice::dot(v, &m0);
            if value != 1 {
                return Err(BaseError::NotAdapted { index, value });
            }
        }
        let constants = constants.unwrap_or_else(|| vec![Rational::zero(); rays.len()]);
        if constants.len() != rays.len() {
            return Err(BaseError::DimensionMismatch {
                expected: rays.len(),
                found: constants.len(),
            });
        }
        Ok(CYFanRays {
            rays,
            m0,
            constants,
        })
    }

    /// The fan of `C^n` in adapted coordinates: `v_0 = e_n`, `v_i = e_i + e_n`.
    pub fn affine_cn(n: usize) -> Self {
        let mut rays = vec![unit(n, n - 1)];
        for i in 0..n - 1 {
            let mut v = unit(n, n - 1);
            v[i] = 1;
            rays.push(v);
        }
        CYFanRays::new(rays, unit(n, n - 1), None).expect("adapted by construction")
    }

    pub fn with_constants(mut self, constants: Vec<Rational>) -> Result<Self, BaseError> {
        if constants.len() != self.rays.len() {
            return Err(BaseError::DimensionMismatch {
                expected: self.rays.len(),
                found: constants.len(),
            });
        }
        self.constants = constants;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.m0.len()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn m0(&self) -> &[i64] {
        &self.m0
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// The region of the tropical polynomial `φ(ξ) = max_k(−⟨v_k, ξ⟩ − c_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WallComponent {
    /// The maximum is attained only by ray `index`.
    Index(usize),
    /// The maximum is attained at least twice.
    Pi,
}

/// `ξ` has `n` coordinates, or `n − 1` with the last taken as zero.
pub fn wall_component_tropical(
    rays: &CYFanRays,
    xi: &[Rational],
) -> Result<WallComponent, BaseError> {
    let n = rays.dim();
    if xi.len() != n && xi.len() + 1 != n {
        return Err(BaseError::DimensionMismatch {
            expected: n - 1,
            found: xi.len(),
        });
    }
    let values = rays.rays.iter().zip(&rays.constants).map(|(v, c)| {
        let pairing: Rational = v
            .iter()
            .zip(xi)
            .map(|(&a, x)| x * Rational::from_integer(a.into()))
            .sum();
        -pairing - c
    });
    Ok(match unique_extremum(values, |a, b| a > b) {
        Some(i) => WallComponent::Index(i),
        None => WallComponent::Pi,
    })
}

/// Wall component of ray `index` for [`CYFanRays::affine_cn`]: ray 0 is `H_n`.
pub fn affine_ray_wall(n: usize, index: usize) -> Result<usize, BaseError> {
    match index {
        0 => Ok(n),
        i if i < n => Ok(i),
        i => Err(BaseError::IndexOutOfRange {
            index: i,
            min: 0,
            max: n - 1,
        }),
    }
}

/// Shear on `π_1` for a loop through `H_i` then `H_j` (0-based ray indices):
/// the identity with last column `(v_j − v_i)_{1..n−1}, 1`.
/// `monodromy_matrix(r, j, i)` is the inverse.
pub fn monodromy_matrix(rays: &CYFanRays, i: usize, j: usize) -> Result<Vec<Vec<i64>>, BaseError> {
    let d = rays.rays.len();
    for index in [i, j] {
        if index >= d {
            return Err(BaseError::IndexOutOfRange {
                index,
                min: 0,
                max: d - 1,
            });
        }
    }
    let n = rays.dim();
    let mut m = crate::lattice::identity(n);
    for (k, row) in m.iter_mut().enumerate().take(n - 1) {
        row[n - 1] = rays.rays[j][k] - rays.rays[i][k];
    }
    Ok(m)
}

fn check_wall(spec: &FanSpec, i: usize) -> Result<(), BaseError> {
    if i == 0 || i > spec.n() {
        return Err(BaseError::IndexOutOfRange {
            index: i,
            min: 1,
            max: spec.n(),
        });
    }
    Ok(())
}

/// Image of `β̂` under transport across `H_i`: the Clifford class `β_i`.
pub fn transport_beta_hat(spec: &FanSpec, i: usize) -> Result<RelClass, BaseError> {
    check_wall(spec, i)?;
    let (n, m) = spec.dims();
    Ok(RelClass::beta(n, m, i))
}

/// Transport across `H_i`. Across `H_n` every class is fixed; across other
/// components only multiples of `β̂` are supported.
pub fn transport_class(spec: &FanSpec, class: &RelClass, i: usize) -> Result<RelClass, BaseError> {
    check_wall(spec, i)?;
    if class.dims() != spec.dims() {
        return Err(BaseError::DimensionMismatch {
            expected: spec.n(),
            found: class.dims().0,
        });
    }
    if i == spec.n() {
        return Ok(class.clone());
    }
    if class.g.iter().chain(&class.h).all(|x| *x == 0) {
        return Ok(transport_beta_hat(spec, i)?.scaled(class.b));
    }
    Err(BaseError::Unsupported(format!(
        "transport of {} across H_{i}",
        class.pretty()
    )))
}
