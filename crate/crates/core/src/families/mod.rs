//! The characterized families of vector fields on S¹×S² and S²×S¹:
//! constructors, the inverse classifier, and the sharpness fixtures.
//!
//! Every family is a parameter struct with a `build` method returning the
//! field and a `cofactor` method returning the polynomial `K` with
//! `χG = K G`. [`FamilyRecord`] tags one of them.

mod classify;
mod fixtures;

use std::fmt;

use crate::error::{Error, Result};
use crate::hypersurface::{Hypersurface, SurfaceKind};
use crate::poly::vars::*;
use crate::poly::{Poly, Var};
use crate::rational::{fmt_rational, rat, Rational};
use crate::vector_field::VectorField;

pub use classify::{classify, Classification, NotMember};
pub use fixtures::{fixture, Fixture, FixtureFacts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    LinearS12,
    QuadS12,
    CubicKolmS12,
    TypeNS12,
    LinearS21,
    QuadS21,
    CubicKolmS21,
    PseudoTypeNS21,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::LinearS12,
        Family::QuadS12,
        Family::CubicKolmS12,
        Family::TypeNS12,
        Family::LinearS21,
        Family::QuadS21,
        Family::CubicKolmS21,
        Family::PseudoTypeNS21,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::LinearS12 => "linear-s12",
            Family::QuadS12 => "quad-s12",
            Family::CubicKolmS12 => "cubic-kolm-s12",
            Family::TypeNS12 => "type-n-s12",
            Family::LinearS21 => "linear-s21",
            Family::QuadS21 => "quad-s21",
            Family::CubicKolmS21 => "cubic-kolm-s21",
            Family::PseudoTypeNS21 => "pseudo-type-n-s21",
        }
    }

    pub fn surface_kind(self) -> SurfaceKind {
        match self {
            Family::LinearS12 | Family::QuadS12 | Family::CubicKolmS12 | Family::TypeNS12 => {
                SurfaceKind::S1xS2
            }
            _ => SurfaceKind::S2xS1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// `(αx2, -αx1, βx4, -βx3)` on S¹×S².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearS12 {
    pub param: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Quadratic fields on S¹×S² with cofactor `K = k3 x3 + k4 x4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadS12 {
    pub param: Rational,
    pub k3: Rational,
    pub k4: Rational,
    pub f: Poly,
    pub g: Poly,
}

/// Cubic Kolmogorov fields on S¹×S² with cofactor `K = k33 x3² + k44 x4²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicKolmS12 {
    pub param: Rational,
    pub k33: Rational,
    pub k44: Rational,
    pub alpha: Rational,
    pub beta: Rational,
}

/// `(A x2, -A x1, B x4, -B x3)` with `A`, `B` homogeneous of degree `n-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeNS12 {
    pub param: Rational,
    pub n: u32,
    pub a: Poly,
    pub b: Poly,
}

/// `(αx2+βx3, -αx1+γx3, -βx1-γx2, 0)` on S²×S¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearS21 {
    pub param: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

/// Quadratic fields on S²×S¹ with cofactor `K = c x4`.
///
/// `(f, g, h)` and `(f + λx3, g - λx2, h + λx1)` give the same field; the
/// canonical representative has no `x2` term in `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadS21 {
    pub param: Rational,
    pub c: Rational,
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
}

/// Cubic Kolmogorov fields on S²×S¹ with cofactor `K = c x4²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicKolmS21 {
    pub param: Rational,
    pub c: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

/// `(A x2 + B x3, -A x1 + C x3, -B x1 - C x2, 0)` with `A, B, C` homogeneous
/// of degree `n-1`. Canonical when no monomial of `B` contains `x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoTypeNS21 {
    pub param: Rational,
    pub n: u32,
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRecord {
    LinearS12(LinearS12),
    QuadS12(QuadS12),
    CubicKolmS12(CubicKolmS12),
    TypeNS12(TypeNS12),
    LinearS21(LinearS21),
    QuadS21(QuadS21),
    CubicKolmS21(CubicKolmS21),
    PseudoTypeNS21(PseudoTypeNS21),
}

fn check_param(param: &Rational) -> Result<()> {
    if *param <= rat(1, 1) {
        return Err(Error::SurfaceParam(fmt_rational(param)));
    }
    Ok(())
}

fn check_linear(name: &'static str, p: &Poly) -> Result<()> {
    match p.degree() {
        Some(d) if d > 1 => Err(Error::NotLinear { name, got: p.to_string() }),
        _ => Ok(()),
    }
}

fn check_homogeneous(name: &'static str, p: &Poly, expected: u32) -> Result<()> {
    let ok = p.is_zero() || (p.is_homogeneous() && p.degree() == Some(expected));
    if ok {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { name, expected })
    }
}

fn check_degree_index(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree n must be at least 1".into()));
    }
    Ok(())
}

fn c(r: &Rational) -> Poly {
    Poly::constant(r.clone())
}

/// `-a²(x1²+x2²) + x3² + x4² + a⁴ - 1`
pub(crate) fn template_s12(a: &Rational) -> Poly {
    let a2 = a * a;
    let r2 = x1().pow(2) + x2().pow(2);
    r2.scale(&-a2.clone()) + x3().pow(2) + x4().pow(2) + c(&(&a2 * &a2 - rat(1, 1)))
}

/// `-b²(x1²+x2²+x3²) + x4² + b⁴ - 1`
pub(crate) fn template_s21(b: &Rational) -> Poly {
    let b2 = b * b;
    let r2 = x1().pow(2) + x2().pow(2) + x3().pow(2);
    r2.scale(&-b2.clone()) + x4().pow(2) + c(&(&b2 * &b2 - rat(1, 1)))
}

/// Skew-triple field `(A x2 + B x3, -A x1 + C x3, -B x1 - C x2)` in the first
/// three slots; shared by the quadratic and Pseudo Type-n S²×S¹ families.
fn skew_triple(a: &Poly, b: &Poly, cc: &Poly) -> [Poly; 3] {
    [a * &x2() + b * &x3(), -(a * &x1()) + cc * &x3(), -(b * &x1()) - cc * &x2()]
}

/// Moves every `x2`-divisible part of `b` into `a` and `c` so that the
/// skew triple is unchanged and `b` is free of `x2`.
fn canonical_triple(a: &Poly, b: &Poly, cc: &Poly) -> (Poly, Poly, Poly) {
    let (shift, rest) = split_divisible(b, Var::X2);
    (a + &(&shift * &x3()), rest, cc + &(&shift * &x1()))
}

/// `p = v * quotient + rest` where no monomial of `rest` contains `v`.
pub(crate) fn split_divisible(p: &Poly, v: Var) -> (Poly, Poly) {
    let mut quotient = Poly::zero();
    let mut rest = Poly::zero();
    for (m, coef) in p.terms() {
        if m.exponent(v) > 0 {
            let mut q = *m;
            q.0[v.index()] -= 1;
            quotient.add_term(q, coef.clone());
        } else {
            rest.add_term(*m, coef.clone());
        }
    }
    (quotient, rest)
}

impl LinearS12 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        let (al, be) = (c(&self.alpha), c(&self.beta));
        Ok(VectorField::new(&al * &x2(), -(&al * &x1()), &be * &x4(), -(&be * &x3())))
    }

    pub fn cofactor(&self) -> Poly {
        Poly::zero()
    }
}

impl QuadS12 {
    pub fn k(&self) -> Poly {
        c(&self.k3) * x3() + c(&self.k4) * x4()
    }

    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        check_linear("f", &self.f)?;
        check_linear("g", &self.g)?;
        let quarter_k = self.k().scale(&rat(1, 4));
        let t = template_s12(&self.param);
        Ok(VectorField::new(
            &quarter_k * &x1() + &self.f * &x2(),
            &quarter_k * &x2() - &self.f * &x1(),
            t.scale(&(&self.k3 / rat(2, 1))) + &self.g * &x4(),
            t.scale(&(&self.k4 / rat(2, 1))) - &self.g * &x3(),
        ))
    }

    pub fn cofactor(&self) -> Poly {
        self.k()
    }
}

impl CubicKolmS12 {
    pub fn k(&self) -> Poly {
        c(&self.k33) * x3().pow(2) + c(&self.k44) * x4().pow(2)
    }

    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        let quarter_k = self.k().scale(&rat(1, 4));
        let t = template_s12(&self.param);
        let (al, be) = (c(&self.alpha), c(&self.beta));
        Ok(VectorField::new(
            x1() * (&quarter_k + &(&al * &x2().pow(2))),
            x2() * (&quarter_k - &(&al * &x1().pow(2))),
            x3() * (t.scale(&(&self.k33 / rat(2, 1))) + &be * &x4().pow(2)),
            x4() * (t.scale(&(&self.k44 / rat(2, 1))) - &be * &x3().pow(2)),
        ))
    }

    pub fn cofactor(&self) -> Poly {
        self.k()
    }
}

impl TypeNS12 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        check_degree_index(self.n)?;
        check_homogeneous("A", &self.a, self.n - 1)?;
        check_homogeneous("B", &self.b, self.n - 1)?;
        Ok(VectorField::new(&self.a * &x2(), -(&self.a * &x1()), &self.b * &x4(), -(&self.b * &x3())))
    }

    pub fn cofactor(&self) -> Poly {
        Poly::zero()
    }
}

impl LinearS21 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        let [p1, p2, p3] = skew_triple(&c(&self.alpha), &c(&self.beta), &c(&self.gamma));
        Ok(VectorField::new(p1, p2, p3, Poly::zero()))
    }

    pub fn cofactor(&self) -> Poly {
        Poly::zero()
    }
}

impl QuadS21 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        check_linear("f", &self.f)?;
        check_linear("g", &self.g)?;
        check_linear("h", &self.h)?;
        let quarter = c(&(&self.c / rat(4, 1))) * x4();
        let [s1, s2, s3] = skew_triple(&self.f, &self.g, &self.h);
        Ok(VectorField::new(
            &quarter * &x1() + s1,
            &quarter * &x2() + s2,
            &quarter * &x3() + s3,
            template_s21(&self.param).scale(&(&self.c / rat(2, 1))),
        ))
    }

    pub fn cofactor(&self) -> Poly {
        c(&self.c) * x4()
    }

    /// The equivalent parameter set whose `g` has no `x2` term.
    pub fn canonical(&self) -> QuadS21 {
        let (f, g, h) = canonical_triple(&self.f, &self.g, &self.h);
        QuadS21 { f, g, h, ..self.clone() }
    }
}

impl CubicKolmS21 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        let quarter = c(&(&self.c / rat(4, 1))) * x4().pow(2);
        let (al, be, ga) = (c(&self.alpha), c(&self.beta), c(&self.gamma));
        let (s1, s2, s3) = (x1().pow(2), x2().pow(2), x3().pow(2));
        Ok(VectorField::new(
            x1() * (&quarter + &(&al * &s2) + &be * &s3),
            x2() * (&quarter - &(&al * &s1) + &ga * &s3),
            x3() * (&quarter - &(&be * &s1) - &ga * &s2),
            x4() * template_s21(&self.param).scale(&(&self.c / rat(2, 1))),
        ))
    }

    pub fn cofactor(&self) -> Poly {
        c(&self.c) * x4().pow(2)
    }
}

impl PseudoTypeNS21 {
    pub fn build(&self) -> Result<VectorField> {
        check_param(&self.param)?;
        check_degree_index(self.n)?;
        check_homogeneous("A", &self.a, self.n - 1)?;
        check_homogeneous("B", &self.b, self.n - 1)?;
        check_homogeneous("C", &self.c, self.n - 1)?;
        let [p1, p2, p3] = skew_triple(&self.a, &self.b, &self.c);
        Ok(VectorField::new(p1, p2, p3, Poly::zero()))
    }

    pub fn cofactor(&self) -> Poly {
        Poly::zero()
    }

    /// The equivalent parameter set whose `B` has no monomial containing `x2`.
    pub fn canonical(&self) -> PseudoTypeNS21 {
        let (a, b, c) = canonical_triple(&self.a, &self.b, &self.c);
        PseudoTypeNS21 { a, b, c, ..self.clone() }
    }
}

impl FamilyRecord {
    pub fn family(&self) -> Family {
        match self {
            FamilyRecord::LinearS12(_) => Family::LinearS12,
            FamilyRecord::QuadS12(_) => Family::QuadS12,
            FamilyRecord::CubicKolmS12(_) => Family::CubicKolmS12,
            FamilyRecord::TypeNS12(_) => Family::TypeNS12,
            FamilyRecord::LinearS21(_) => Family::LinearS21,
            FamilyRecord::QuadS21(_) => Family::QuadS21,
            FamilyRecord::CubicKolmS21(_) => Family::CubicKolmS21,
            FamilyRecord::PseudoTypeNS21(_) => Family::PseudoTypeNS21,
        }
    }

    pub fn param(&self) -> &Rational {
        match self {
            FamilyRecord::LinearS12(r) => &r.param,
            FamilyRecord::QuadS12(r) => &r.param,
            FamilyRecord::CubicKolmS12(r) => &r.param,
            FamilyRecord::TypeNS12(r) => &r.param,
            FamilyRecord::LinearS21(r) => &r.param,
            FamilyRecord::QuadS21(r) => &r.param,
            FamilyRecord::CubicKolmS21(r) => &r.param,
            FamilyRecord::PseudoTypeNS21(r) => &r.param,
        }
    }

    pub fn surface(&self) -> Result<Hypersurface> {
        Hypersurface::new(self.family().surface_kind(), self.param().clone())
    }

    pub fn build(&self) -> Result<VectorField> {
        match self {
            FamilyRecord::LinearS12(r) => r.build(),
            FamilyRecord::QuadS12(r) => r.build(),
            FamilyRecord::CubicKolmS12(r) => r.build(),
            FamilyRecord::TypeNS12(r) => r.build(),
            FamilyRecord::LinearS21(r) => r.build(),
            FamilyRecord::QuadS21(r) => r.build(),
            FamilyRecord::CubicKolmS21(r) => r.build(),
            FamilyRecord::PseudoTypeNS21(r) => r.build(),
        }
    }

    /// The cofactor of the family's surface polynomial under the built field.
    pub fn cofactor(&self) -> Poly {
        match self {
            FamilyRecord::LinearS12(r) => r.cofactor(),
            FamilyRecord::QuadS12(r) => r.cofactor(),
            FamilyRecord::CubicKolmS12(r) => r.cofactor(),
            FamilyRecord::TypeNS12(r) => r.cofactor(),
            FamilyRecord::LinearS21(r) => r.cofactor(),
            FamilyRecord::QuadS21(r) => r.cofactor(),
            FamilyRecord::CubicKolmS21(r) => r.cofactor(),
            FamilyRecord::PseudoTypeNS21(r) => r.cofactor(),
        }
    }

    /// Named parameters as display strings, in a stable order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let q = fmt_rational;
        let s = |p: &Poly| p.to_string();
        let mut out = vec![("param", q(self.param()))];
        match self {
            FamilyRecord::LinearS12(r) => {
                out.extend([("alpha", q(&r.alpha)), ("beta", q(&r.beta))]);
            }
            FamilyRecord::QuadS12(r) => {
                out.extend([("k3", q(&r.k3)), ("k4", q(&r.k4)), ("f", s(&r.f)), ("g", s(&r.g))]);
            }
            FamilyRecord::CubicKolmS12(r) => out.extend([
                ("k33", q(&r.k33)),
                ("k44", q(&r.k44)),
                ("alpha", q(&r.alpha)),
                ("beta", q(&r.beta)),
            ]),
            FamilyRecord::TypeNS12(r) => {
                out.extend([("n", r.n.to_string()), ("A", s(&r.a)), ("B", s(&r.b))]);
            }
            FamilyRecord::LinearS21(r) => {
                out.extend([("alpha", q(&r.alpha)), ("beta", q(&r.beta)), ("gamma", q(&r.gamma))])
            }
            FamilyRecord::QuadS21(r) => {
                out.extend([("c", q(&r.c)), ("f", s(&r.f)), ("g", s(&r.g)), ("h", s(&r.h))]);
            }
            FamilyRecord::CubicKolmS21(r) => out.extend([
                ("c", q(&r.c)),
                ("alpha", q(&r.alpha)),
                ("beta", q(&r.beta)),
                ("gamma", q(&r.gamma)),
            ]),
            FamilyRecord::PseudoTypeNS21(r) => {
                out.extend([("n", r.n.to_string()), ("A", s(&r.a)), ("B", s(&r.b)), ("C", s(&r.c))])
            }
        }
        out
    }
}

pub fn build_quadratic_s1s2(
    a: Rational,
    k3: Rational,
    k4: Rational,
    f: Poly,
    g: Poly,
) -> Result<VectorField> {
    QuadS12 { param: a, k3, k4, f, g }.build()
}

pub fn build_cubic_kolmogorov_s1s2(
    a: Rational,
    k33: Rational,
    k44: Rational,
    alpha: Rational,
    beta: Rational,
) -> Result<VectorField> {
    CubicKolmS12 { param: a, k33, k44, alpha, beta }.build()
}

/// Type-n field on S¹×S²; the surface parameter does not enter the field.
pub fn build_type_n_s1s2(a_poly: Poly, b_poly: Poly, n: u32) -> Result<VectorField> {
    TypeNS12 { param: rat(2, 1), n, a: a_poly, b: b_poly }.build()
}

pub fn build_quadratic_s2s1(b: Rational, c: Rational, f: Poly, g: Poly, h: Poly) -> Result<VectorField> {
    QuadS21 { param: b, c, f, g, h }.build()
}

pub fn build_cubic_kolmogorov_s2s1(
    b: Rational,
    c: Rational,
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
) -> Result<VectorField> {
    CubicKolmS21 { param: b, c, alpha, beta, gamma }.build()
}

/// Pseudo Type-n field on S²×S¹; the surface parameter does not enter the field.
pub fn build_pseudo_type_n_s2s1(a: Poly, b: Poly, c: Poly, n: u32) -> Result<VectorField> {
    PseudoTypeNS21 { param: rat(2, 1), n, a, b, c }.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::Hypersurface;
    use crate::rational::int;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn field(s: &str) -> VectorField {
        VectorField::parse(s).unwrap()
    }

    fn s12() -> Hypersurface {
        Hypersurface::s1xs2(int(2)).unwrap()
    }

    fn s21() -> Hypersurface {
        Hypersurface::s2xs1(int(2)).unwrap()
    }

    #[test]
    fn quadratic_s12_examples() {
        let chi = build_quadratic_s1s2(int(2), int(1), int(0), p("0"), p("0")).unwrap();
        assert_eq!(chi, field("1/4*x1*x3; 1/4*x2*x3; 1/2*(-4*(x1^2+x2^2) + x3^2 + x4^2 + 15); 0"));
        assert_eq!(s12().cofactor(&chi).cofactor(), Some(&x3()));
        assert_eq!(chi.lie_derivative(s12().poly()), &x3() * s12().poly());
        assert_eq!(chi.degree_profile().components, [Some(2), Some(2), Some(2), None]);

        let lin = build_quadratic_s1s2(int(2), int(0), int(0), p("3"), p("-5")).unwrap();
        assert_eq!(lin, field("3*x2; -3*x1; -5*x4; 5*x3"));

        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("x1"), p("0")).unwrap();
        assert_eq!(chi, field("x1*x2; -x1^2; 0; 0"));
        assert_eq!(s12().cofactor(&chi).cofactor(), Some(&Poly::zero()));

        assert!(matches!(
            build_quadratic_s1s2(int(2), int(0), int(0), p("x1^2"), p("0")),
            Err(Error::NotLinear { .. })
        ));
        assert!(build_quadratic_s1s2(int(1), int(0), int(0), p("0"), p("0")).is_err());
    }

    #[test]
    fn cubic_kolmogorov_s12_examples() {
        let chi = build_cubic_kolmogorov_s1s2(int(2), int(0), int(0), int(1), int(0)).unwrap();
        assert_eq!(chi, field("x1*x2^2; -x2*x1^2; 0; 0"));
        let chi = build_cubic_kolmogorov_s1s2(int(2), int(1), int(0), int(0), int(0)).unwrap();
        assert_eq!(*chi.component(Var::X3), p("x3*1/2*(-4*(x1^2+x2^2) + x3^2 + x4^2 + 15)"));
        assert_eq!(s12().cofactor(&chi).cofactor(), Some(&x3().pow(2)));
        assert!(chi.predicates().is_kolmogorov());
    }

    #[test]
    fn type_n_s12_examples() {
        assert_eq!(build_type_n_s1s2(p("1"), p("1"), 1).unwrap(), field("x2; -x1; x4; -x3"));
        let chi = build_type_n_s1s2(p("x3"), p("x1"), 2).unwrap();
        assert_eq!(chi, field("x3*x2; -x3*x1; x1*x4; -x1*x3"));
        assert_eq!(s12().cofactor(&chi).cofactor(), Some(&Poly::zero()));
        assert!(matches!(build_type_n_s1s2(p("x3 + 1"), p("x1"), 2), Err(Error::NotHomogeneous { .. })));
    }

    #[test]
    fn quadratic_s21_examples() {
        let chi = build_quadratic_s2s1(int(2), int(2), p("0"), p("0"), p("0")).unwrap();
        assert_eq!(*chi.component(Var::X4), p("-4*(x1^2+x2^2+x3^2) + x4^2 + 15"));
        assert_eq!(s21().cofactor(&chi).cofactor(), Some(&p("2*x4")));

        let lin = build_quadratic_s2s1(int(2), int(0), p("1"), p("2"), p("3")).unwrap();
        assert_eq!(lin, field("x2 + 2*x3; -x1 + 3*x3; -2*x1 - 3*x2; 0"));

        let chi = build_quadratic_s2s1(int(2), int(0), p("x4"), p("0"), p("0")).unwrap();
        assert_eq!(s21().cofactor(&chi).cofactor(), Some(&Poly::zero()));
        assert!(build_quadratic_s2s1(int(2), int(0), p("0"), p("0"), p("x1*x2")).is_err());
    }

    #[test]
    fn cubic_kolmogorov_s21_examples() {
        let chi = build_cubic_kolmogorov_s2s1(int(2), int(0), int(1), int(2), int(3)).unwrap();
        assert_eq!(chi, field("x1*(x2^2 + 2*x3^2); x2*(-x1^2 + 3*x3^2); x3*(-2*x1^2 - 3*x2^2); 0"));
        let chi = build_cubic_kolmogorov_s2s1(int(2), int(2), int(0), int(0), int(0)).unwrap();
        assert_eq!(*chi.component(Var::X4), p("x4*(-4*(x1^2+x2^2+x3^2) + x4^2 + 15)"));
        assert_eq!(s21().cofactor(&chi).cofactor(), Some(&p("2*x4^2")));
        assert!(chi.predicates().is_kolmogorov());
    }

    #[test]
    fn pseudo_type_n_examples() {
        assert_eq!(
            build_pseudo_type_n_s2s1(p("1"), p("1"), p("1"), 1).unwrap(),
            field("x2 + x3; -x1 + x3; -x1 - x2; 0")
        );
        assert_eq!(build_pseudo_type_n_s2s1(p("1"), p("0"), p("0"), 1).unwrap(), field("x2; -x1; 0; 0"));
        let chi = build_pseudo_type_n_s2s1(p("x1"), p("x2"), p("x3"), 2).unwrap();
        assert_eq!(chi, field("x1*x2 + x2*x3; -x1^2 + x3^2; -x2*x1 - x3*x2; 0"));
        assert_eq!(s21().cofactor(&chi).cofactor(), Some(&Poly::zero()));
    }

    #[test]
    fn canonical_forms_preserve_field() {
        let r = PseudoTypeNS21 { param: int(2), n: 2, a: p("x1"), b: p("x2 + x4"), c: p("x3") };
        let canon = r.canonical();
        assert_eq!(canon.b, p("x4"));
        assert_eq!(canon.build().unwrap(), r.build().unwrap());

        let q = QuadS21 { param: int(3), c: int(1), f: p("1"), g: p("2*x2 + x1"), h: p("0") };
        let canon = q.canonical();
        assert_eq!(canon.g, p("x1"));
        assert_eq!(canon.build().unwrap(), q.build().unwrap());
    }

    #[test]
    fn family_tags_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
    }
}
