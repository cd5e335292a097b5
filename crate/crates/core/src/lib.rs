//! Exact computation of Landau–Ginzburg superpotentials and one-pointed open
//! Gromov–Witten invariants for Clifford- and Chekanov-type tori in smooth
//! toric Fano compactifications of `C^n`.
//!
//! The crate is organised bottom-up:
//!
//! - [`fan`]: fan data, smooth/complete/Fano validation and the relative
//!   homotopy classes `β̂, γ_k, H_a` with their boundaries and Maslov indices.
//! - [`series`]: the group ring of relative classes over `Q`, with truncated
//!   exponential, logarithm and negative powers.
//! - [`wallcross`]: superpotentials on both sides of the wall, the gluing map,
//!   invariant tables, closed-form oracles and the wall-crossing identities.
//! - [`base`]: chambers and wall components of the Gross fibration base,
//!   tropical wall components and monodromy.
//! - [`novikov`]: truncated Novikov-field scalars, valuations, Gauss
//!   valuations on polyhedral affinoid algebras and numeric evaluation.

pub mod base;
pub mod fan;
pub mod lattice;
pub mod novikov;
pub mod series;
pub mod wallcross;

/// Exact rational numbers used throughout.
pub type Rational = num_rational::BigRational;

/// Parses `"p/q"` or `"p"` into a [`Rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse::<Rational>().ok()
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}
