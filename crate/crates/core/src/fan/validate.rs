//! Smoothness, completeness and Fano checks for simplicial fans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{FanError, FanSpec};
use crate::lattice;
use crate::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    NonPrimitiveRay {
        ray: usize,
    },
    NotUnimodular {
        cone: usize,
        det: BigInt,
    },
    /// A facet lies in a number of maximal cones other than two.
    FacetNotShared {
        facet: Vec<usize>,
        cones: Vec<usize>,
    },
    /// The two cones on a facet do not lie on opposite sides of it.
    FacetSameSide {
        facet: Vec<usize>,
        cones: (usize, usize),
    },
    Disconnected {
        components: usize,
    },
    /// No integral `m_σ` pairs to 1 with every generator of the cone.
    NoSupportingHyperplane {
        cone: usize,
    },
    /// `⟨v_ray, m_σ⟩ ≥ 1` for a ray outside the cone.
    RayNotStrictlyBelow {
        cone: usize,
        ray: usize,
        value: Rational,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NonPrimitiveRay { ray } => write!(f, "ray {ray} is not primitive"),
            Diagnostic::NotUnimodular { cone, det } => {
                write!(f, "cone {cone} has determinant {det}")
            }
            Diagnostic::FacetNotShared { facet, cones } => {
                write!(
                    f,
                    "facet {facet:?} lies in cones {cones:?}, expected exactly two"
                )
            }
            Diagnostic::FacetSameSide { facet, cones } => write!(
                f,
                "cones {} and {} lie on the same side of facet {facet:?}",
                cones.0, cones.1
            ),
            Diagnostic::Disconnected { components } => {
                write!(f, "cone adjacency graph has {components} components")
            }
            Diagnostic::NoSupportingHyperplane { cone } => {
                write!(
                    f,
                    "cone {cone} has no integral m with <v, m> = 1 on its rays"
                )
            }
            Diagnostic::RayNotStrictlyBelow { cone, ray, value } => write!(
                f,
                "ray {ray} pairs to {} >= 1 with m of cone {cone}",
                format_rational(value)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub primitive_ok: bool,
    pub smooth_ok: bool,
    pub complete_ok: bool,
    /// Requires smoothness and completeness in addition to the per-cone
    /// reflexive-hyperplane criterion.
    pub fano_ok: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.primitive_ok && self.smooth_ok && self.complete_ok && self.fano_ok
    }
}

pub fn validate_fan(spec: &FanSpec) -> Result<ValidationReport, FanError> {
    let cones = spec.max_cones().ok_or(FanError::MissingCones)?;
    for (cone, idx) in cones.iter().enumerate() {
        let distinct: BTreeSet<_> = idx.iter().collect();
        if distinct.len() != idx.len() {
            return Err(FanError::MalformedCone { cone });
        }
    }
    let rays = spec.rays();
    let mut diagnostics = Vec::new();

    let mut primitive_ok = true;
    for (i, r) in rays.iter().enumerate() {
        if !lattice::is_primitive(r) {
            primitive_ok = false;
            diagnostics.push(Diagnostic::NonPrimitiveRay { ray: i });
        }
    }

    let mut smooth_ok = true;
    for (c, idx) in cones.iter().enumerate() {
        let det = lattice::determinant(&cone_matrix(&rays, idx));
        if det.abs() != BigInt::one() {
            smooth_ok = false;
            diagnostics.push(Diagnostic::NotUnimodular { cone: c, det });
        }
    }

    let complete_ok = check_complete(&rays, cones, &mut diagnostics);
    let criterion = check_fano(&rays, cones, &mut diagnostics);

    Ok(ValidationReport {
        primitive_ok,
        smooth_ok,
        complete_ok,
        fano_ok: criterion && smooth_ok && complete_ok,
        diagnostics,
    })
}

fn cone_matrix(rays: &[Vec<i64>], idx: &[usize]) -> Vec<Vec<i64>> {
    idx.iter().map(|&i| rays[i].clone()).collect()
}

fn check_complete(rays: &[Vec<i64>], cones: &[Vec<usize>], diags: &mut Vec<Diagnostic>) -> bool {
    // facet (sorted ray indices) -> [(cone, opposite ray)]
    let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, idx) in cones.iter().enumerate() {
        for skip in 0..idx.len() {
            let mut facet: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &r)| r)
                .collect();
            facet.sort_unstable();
            facets.entry(facet).or_default().push((c, idx[skip]));
        }
    }

    let mut ok = true;
    let mut parent: Vec<usize> = (0..cones.len()).collect();
    for (facet, owners) in &facets {
        if owners.len() != 2 {
            ok = false;
            diags.push(Diagnostic::FacetNotShared {
                facet: facet.clone(),
                cones: owners.iter().map(|&(c, _)| c).collect(),
            });
            continue;
        }
        let side = |w: usize| {
            let mut m = cone_matrix(rays, facet);
            m.push(rays[w].clone());
            lattice::orientation(&m)
        };
        let (s1, s2) = (side(owners[0].1), side(owners[1].1));
        if s1 == 0 || s2 == 0 || s1 == s2 {
            ok = false;
            diags.push(Diagnostic::FacetSameSide {
                facet: facet.clone(),
                cones: (owners[0].0, owners[1].0),
            });
        }
        union(&mut parent, owners[0].0, owners[1].0);
    }

    let roots: BTreeSet<usize> = (0..cones.len()).map(|c| find(&mut parent, c)).collect();
    if roots.len() != 1 {
        ok = false;
        diags.push(Diagnostic::Disconnected {
            components: roots.len(),
        });
    }
    ok
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra] = rb;
}

fn check_fano(rays: &[Vec<i64>], cones: &[Vec<usize>], diags: &mut Vec<Diagnostic>) -> bool {
    let mut ok = true;
    for (c, idx) in cones.iter().enumerate() {
        let ones = vec![1i64; idx.len()];
        let m = match lattice::solve_rational(&cone_matrix(rays, idx), &ones) {
            Some(m) if m.iter().all(Rational::is_integer) => m,
            _ => {
                ok = false;
                diags.push(Diagnostic::NoSupportingHyperplane { cone: c });
                continue;
            }
        };
        for (j, ray) in rays.iter().enumerate() {
            if idx.contains(&j) {
                continue;
            }
            let value: Rational = ray
                .iter()
                .zip(&m)
                .map(|(&x, y)| y * Rational::from_integer(x.into()))
                .sum();
            if value >= Rational::one() {
                ok = false;
                diags.push(Diagnostic::RayNotStrictlyBelow {
                    cone: c,
                    ray: j,
                    value,
                });
            }
        }
    }
    ok
}
