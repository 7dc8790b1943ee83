//! Polynomial vector fields `χ = Σ P_i ∂/∂x_i` on R^4.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Var};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VectorField {
    components: [Poly; 4],
}

/// Per-component degrees; `None` marks a zero component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub components: [Option<u32>; 4],
    /// Maximum over the nonzero components, `None` for the zero field.
    pub degree: Option<u32>,
}

impl DegreeProfile {
    pub fn is_zero_component(&self, i: usize) -> bool {
        self.components[i].is_none()
    }
}

/// Structural predicates of a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    /// `ψ_i` with `P_i = x_i ψ_i`, when every `x_i` divides `P_i`.
    pub kolmogorov: Option<[Poly; 4]>,
    /// Kolmogorov with every `ψ_i` of degree at most one.
    pub lotka_volterra: bool,
    /// Common degree when all four components are nonzero homogeneous of one degree.
    pub type_n: Option<u32>,
    /// Common degree when `P1, P2, P3` are nonzero homogeneous of one degree and `P4 = 0`.
    pub pseudo_type_n: Option<u32>,
}

impl Predicates {
    pub fn is_kolmogorov(&self) -> bool {
        self.kolmogorov.is_some()
    }
}

impl VectorField {
    pub fn new(p1: Poly, p2: Poly, p3: Poly, p4: Poly) -> VectorField {
        VectorField { components: [p1, p2, p3, p4] }
    }

    pub fn from_components(components: [Poly; 4]) -> VectorField {
        VectorField { components }
    }

    pub fn zero() -> VectorField {
        VectorField::default()
    }

    /// Parses `"P1; P2; P3; P4"`.
    pub fn parse(text: &str) -> Result<VectorField> {
        let parts: Vec<&str> = text.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::FieldArity(parts.len()));
        }
        let mut comps: [Poly; 4] = Default::default();
        for (slot, part) in comps.iter_mut().zip(parts) {
            *slot = Poly::parse(part)?;
        }
        Ok(VectorField { components: comps })
    }

    pub fn components(&self) -> &[Poly; 4] {
        &self.components
    }

    pub fn component(&self, v: Var) -> &Poly {
        &self.components[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// `χf = Σ P_i ∂f/∂x_i`.
    pub fn lie_derivative(&self, f: &Poly) -> Poly {
        Var::ALL
            .iter()
            .filter(|v| !self.components[v.index()].is_zero())
            .map(|&v| &self.components[v.index()] * &f.derivative(v))
            .sum()
    }

    /// `χ^k f`; `k = 0` returns `f`.
    pub fn iterated_lie(&self, f: &Poly, k: usize) -> Poly {
        let mut out = f.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.lie_derivative(&out);
        }
        out
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let components = [0, 1, 2, 3].map(|i| self.components[i].degree());
        DegreeProfile { components, degree: components.iter().flatten().copied().max() }
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree_profile().degree
    }

    /// `ψ_i = P_i / x_i` for all `i`, when every division is exact.
    pub fn kolmogorov_factors(&self) -> Option<[Poly; 4]> {
        let mut psi: [Poly; 4] = Default::default();
        for v in Var::ALL {
            let p = &self.components[v.index()];
            psi[v.index()] = p.exact_div(&Poly::var(v)).expect("nonzero divisor")?;
        }
        Some(psi)
    }

    pub fn type_n(&self) -> Option<u32> {
        common_homogeneous_degree(&self.components)
    }

    pub fn pseudo_type_n(&self) -> Option<u32> {
        if !self.components[3].is_zero() {
            return None;
        }
        common_homogeneous_degree(&self.components[..3])
    }

    pub fn predicates(&self) -> Predicates {
        let kolmogorov = self.kolmogorov_factors();
        let lotka_volterra =
            kolmogorov.as_ref().is_some_and(|psi| psi.iter().all(|p| p.degree().unwrap_or(0) <= 1));
        Predicates { kolmogorov, lotka_volterra, type_n: self.type_n(), pseudo_type_n: self.pseudo_type_n() }
    }

    /// The Hamiltonian field `(-H_x2, H_x1, -H_x4, H_x3)`.
    pub fn hamiltonian_field_of(h: &Poly) -> VectorField {
        VectorField::new(
            -h.derivative(Var::X2),
            h.derivative(Var::X1),
            -h.derivative(Var::X4),
            h.derivative(Var::X3),
        )
    }

    pub fn scale(&self, c: &crate::rational::Rational) -> VectorField {
        VectorField { components: self.components.clone().map(|p| p.scale(c)) }
    }

    /// Field evaluated at a float point, each component summed in grlex order.
    pub fn eval_f64(&self, x: &[f64; 4]) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.components[i].eval_f64(x))
    }

    /// Monomials occurring in any component.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.components.iter().flat_map(|p| p.terms().map(|(m, _)| m))
    }
}

fn common_homogeneous_degree(ps: &[Poly]) -> Option<u32> {
    let mut common = None;
    for p in ps {
        if p.is_zero() || !p.is_homogeneous() {
            return None;
        }
        let d = p.degree()?;
        match common {
            None => common = Some(d),
            Some(c) if c != d => return None,
            Some(_) => {}
        }
    }
    common
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p1, p2, p3, p4] = &self.components;
        write!(f, "{p1}; {p2}; {p3}; {p4}")
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

impl std::str::FromStr for VectorField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        VectorField::parse(s)
    }
}
