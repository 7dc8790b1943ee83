//! The two product-of-spheres hypersurfaces and the invariance test `χf = K f`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::vars::*;
use crate::poly::{Monomial, Poly, Var};
use crate::random::monomials_of_degree;
use crate::rational::{fmt_rational, Rational};
use crate::vector_field::VectorField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum SurfaceKind {
    /// `(x1²+x2²-a²)² + x3² + x4² - 1 = 0`
    #[serde(rename = "s1xs2")]
    S1xS2,
    /// `(x1²+x2²+x3²-b²)² + x4² - 1 = 0`
    #[serde(rename = "s2xs1")]
    S2xS1,
}

impl SurfaceKind {
    pub fn tag(self) -> &'static str {
        match self {
            SurfaceKind::S1xS2 => "s1xs2",
            SurfaceKind::S2xS1 => "s2xs1",
        }
    }
}

impl std::str::FromStr for SurfaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1xs2" => Ok(SurfaceKind::S1xS2),
            "s2xs1" => Ok(SurfaceKind::S2xS1),
            other => Err(Error::InvalidParameter(format!("unknown surface `{other}`"))),
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    kind: SurfaceKind,
    param: Rational,
    poly: Poly,
}

impl Hypersurface {
    pub fn new(kind: SurfaceKind, param: Rational) -> Result<Hypersurface> {
        if param <= Rational::one() {
            return Err(Error::SurfaceParam(fmt_rational(&param)));
        }
        let p2 = Poly::constant(&param * &param);
        let inner = match kind {
            SurfaceKind::S1xS2 => x1().pow(2) + x2().pow(2) - p2,
            SurfaceKind::S2xS1 => x1().pow(2) + x2().pow(2) + x3().pow(2) - p2,
        };
        let rest = match kind {
            SurfaceKind::S1xS2 => x3().pow(2) + x4().pow(2),
            SurfaceKind::S2xS1 => x4().pow(2),
        };
        let poly = inner.pow(2) + rest - Poly::one();
        Ok(Hypersurface { kind, param, poly })
    }

    pub fn s1xs2(a: Rational) -> Result<Hypersurface> {
        Hypersurface::new(SurfaceKind::S1xS2, a)
    }

    pub fn s2xs1(b: Rational) -> Result<Hypersurface> {
        Hypersurface::new(SurfaceKind::S2xS1, b)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    /// `a` for S¹×S², `b` for S²×S¹.
    pub fn param(&self) -> &Rational {
        &self.param
    }

    /// The expanded defining polynomial `G`.
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn cofactor(&self, field: &VectorField) -> CofactorResult {
        invariance_cofactor(field, &self.poly).expect("surface polynomial is nonzero")
    }
}

/// Outcome of testing `χf = K f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofactorResult {
    Invariant { cofactor: Poly },
    NotInvariant { remainder: Poly },
}

impl CofactorResult {
    pub fn is_invariant(&self) -> bool {
        matches!(self, CofactorResult::Invariant { .. })
    }

    pub fn cofactor(&self) -> Option<&Poly> {
        match self {
            CofactorResult::Invariant { cofactor } => Some(cofactor),
            CofactorResult::NotInvariant { .. } => None,
        }
    }

    pub fn into_cofactor(self) -> Option<Poly> {
        match self {
            CofactorResult::Invariant { cofactor } => Some(cofactor),
            CofactorResult::NotInvariant { .. } => None,
        }
    }
}

/// Divides `χf` by `f`; `{f = 0}` is invariant exactly when the remainder vanishes.
pub fn invariance_cofactor(field: &VectorField, f: &Poly) -> Result<CofactorResult> {
    if f.is_zero() {
        return Err(Error::ZeroHypersurface);
    }
    let (q, r) = field.lie_derivative(f).div_rem(f)?;
    Ok(if r.is_zero() {
        CofactorResult::Invariant { cofactor: q }
    } else {
        CofactorResult::NotInvariant { remainder: r }
    })
}

/// Necessary degree relations for nonzero homogeneous `P_i` of degrees `m`
/// to have the S¹×S² polynomial as a first integral.
pub fn degree_profile_admissible(m: [u32; 4]) -> bool {
    let [m1, m2, m3, m4] = m;
    let same_pair = |a: u32, b: u32| (m3 == a && m4 == b) || (m3 == b && m4 == a);
    if m1 != m2 {
        let (lo, hi) = (m1.min(m2), m1.max(m2));
        hi == lo + 2 && same_pair(hi + 2, lo)
    } else {
        m3 == m4 || same_pair(m1, m1 + 2)
    }
}

/// Basis of all `(χ, K)` with `χG = K G` where each `P_i` is homogeneous of
/// degree `degrees[i]` (`None` forces `P_i = 0`) and `K` has degree below the
/// largest `P_i` degree.
pub fn invariant_homogeneous_fields(
    surface: &Hypersurface,
    degrees: [Option<u32>; 4],
) -> Vec<(VectorField, Poly)> {
    let g = surface.poly();
    let grads = Var::ALL.map(|v| g.derivative(v));
    // one unknown per (component, monomial), then one per cofactor monomial
    let mut slots: Vec<(Option<usize>, Monomial)> = Vec::new();
    let mut contributions: Vec<Poly> = Vec::new();
    for (i, d) in degrees.iter().enumerate() {
        if let Some(d) = d {
            for m in monomials_of_degree(*d) {
                contributions.push(grads[i].mul_monomial(&m));
                slots.push((Some(i), m));
            }
        }
    }
    if let Some(top) = degrees.iter().flatten().max().filter(|&&t| t > 0) {
        for d in 0..*top {
            for m in monomials_of_degree(d) {
                contributions.push(-g.mul_monomial(&m));
                slots.push((None, m));
            }
        }
    }
    let rows = linalg::coefficient_columns(&contributions);
    linalg::nullspace(&rows, slots.len())
        .into_iter()
        .map(|v| {
            let mut comps: [Poly; 4] = Default::default();
            let mut k = Poly::zero();
            for ((slot, m), c) in slots.iter().zip(v) {
                match slot {
                    Some(i) => comps[*i].add_term(*m, c),
                    None => k.add_term(*m, c),
                }
            }
            (VectorField::from_components(comps), k)
        })
        .collect()
}
