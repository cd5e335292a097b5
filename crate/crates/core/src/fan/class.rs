//! Relative classes in `π_2(X̄, L)` written in the Chekanov basis
//! `β̂, γ_1, …, γ_{n-1}, H_1, …, H_m`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{FanError, FanSpec};

/// `b·β̂ + Σ g_k γ_k + Σ h_a H_a`.
///
/// Field order gives the canonical ordering: lexicographic on `(h, b, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelClass {
    pub h: Vec<i64>,
    pub b: i64,
    pub g: Vec<i64>,
}

impl RelClass {
    pub fn new(b: i64, g: Vec<i64>, h: Vec<i64>) -> Self {
        RelClass { h, b, g }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        RelClass::new(0, vec![0; n - 1], vec![0; m])
    }

    pub fn beta_hat(n: usize, m: usize) -> Self {
        RelClass::new(1, vec![0; n - 1], vec![0; m])
    }

    /// `γ_k`, 1-based.
    pub fn gamma(n: usize, m: usize, k: usize) -> Self {
        let mut c = RelClass::zero(n, m);
        c.g[k - 1] = 1;
        c
    }

    /// `H_a`, 1-based.
    pub fn sphere(n: usize, m: usize, a: usize) -> Self {
        let mut c = RelClass::zero(n, m);
        c.h[a - 1] = 1;
        c
    }

    /// The Clifford disk class `β_i = β̂ + γ_i` for `i < n`, `β_n = β̂`.
    pub fn beta(n: usize, m: usize, i: usize) -> Self {
        let mut c = RelClass::beta_hat(n, m);
        if i < n {
            c.g[i - 1] = 1;
        }
        c
    }

    /// `β'_a = H_a − p_a β̂ − Σ_k v_{ak} γ_k`.
    pub fn beta_prime(spec: &FanSpec, a: usize) -> Result<Self, FanError> {
        let (v, p) = super::ray_decomposition(spec, a)?;
        let (n, m) = spec.dims();
        let mut c = RelClass::sphere(n, m, a);
        c.b = -p;
        for (g, vk) in c.g.iter_mut().zip(&v) {
            *g = -vk;
        }
        Ok(c)
    }

    /// `(n, m)` this class is shaped for.
    pub fn dims(&self) -> (usize, usize) {
        (self.g.len() + 1, self.h.len())
    }

    /// Total absolute γ-coefficient.
    pub fn gamma_degree(&self) -> u64 {
        self.g.iter().map(|x| x.unsigned_abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.b == 0 && self.g.iter().all(|&x| x == 0) && self.h.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        RelClass {
            h: self.h.iter().map(|x| x * k).collect(),
            b: self.b * k,
            g: self.g.iter().map(|x| x * k).collect(),
        }
    }

    pub(crate) fn add_assign_ref(&mut self, other: &RelClass) {
        self.b += other.b;
        for (x, y) in self.g.iter_mut().zip(&other.g) {
            *x += y;
        }
        for (x, y) in self.h.iter_mut().zip(&other.h) {
            *x += y;
        }
    }

    /// Human-readable form such as `H_1 − 2β̂ + γ_1`.
    pub fn pretty(&self) -> String {
        let mut parts: Vec<(i64, String)> = Vec::new();
        for (a, &c) in self.h.iter().enumerate() {
            parts.push((c, format!("H_{}", a + 1)));
        }
        parts.push((self.b, "β̂".to_string()));
        for (k, &c) in self.g.iter().enumerate() {
            parts.push((c, format!("γ_{}", k + 1)));
        }
        let mut out = String::new();
        for (c, sym) in parts.into_iter().filter(|(c, _)| *c != 0) {
            let mag = c.unsigned_abs();
            let body = if mag == 1 { sym } else { format!("{mag}{sym}") };
            if out.is_empty() {
                if c < 0 {
                    out.push('−');
                }
            } else {
                out.push_str(if c < 0 { " − " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &RelClass {
    type Output = RelClass;
    fn add(self, rhs: &RelClass) -> RelClass {
        let mut c = self.clone();
        c.add_assign_ref(rhs);
        c
    }
}

impl Add for RelClass {
    type Output = RelClass;
    fn add(mut self, rhs: RelClass) -> RelClass {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Neg for &RelClass {
    type Output = RelClass;
    fn neg(self) -> RelClass {
        self.scaled(-1)
    }
}

impl Sub for &RelClass {
    type Output = RelClass;
    fn sub(self, rhs: &RelClass) -> RelClass {
        self + &(-rhs)
    }
}

fn check_dims(spec: &FanSpec, c: &RelClass) -> Result<(), FanError> {
    if c.dims() != spec.dims() {
        return Err(FanError::DimensionMismatch {
            expected: spec.dims(),
            found: c.dims(),
        });
    }
    Ok(())
}

/// `∂c ∈ π_1(L) ≅ Z^n` in the frame `∂β̂ = −e_n`, `∂γ_k = e_n − e_k`;
/// sphere classes have no boundary.
pub fn class_boundary(spec: &FanSpec, c: &RelClass) -> Result<Vec<i64>, FanError> {
    check_dims(spec, c)?;
    let n = spec.n();
    let mut out = vec![0i64; n];
    out[n - 1] = -c.b;
    for (k, &gk) in c.g.iter().enumerate() {
        out[n - 1] += gk;
        out[k] -= gk;
    }
    Ok(out)
}

/// `μ(c) = 2b + Σ_a 2 h_a (1 + p_a)`.
pub fn class_maslov(spec: &FanSpec, c: &RelClass) -> Result<i64, FanError> {
    check_dims(spec, c)?;
    let p = spec.p_values();
    Ok(2 * c.b
        + c.h
            .iter()
            .zip(&p)
            .map(|(h, p)| 2 * h * (1 + p))
            .sum::<i64>())
}
