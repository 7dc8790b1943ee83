//! Recovering family parameters from a field invariant on a surface.

use std::fmt;

use crate::hypersurface::{Hypersurface, SurfaceKind};
use crate::poly::vars::*;
use crate::poly::{Monomial, Poly, Var};
use crate::rational::{rat, Rational};
use crate::vector_field::VectorField;

use super::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotMember {
    /// The surface is not invariant under the field.
    NotInvariant,
    /// Invariant, but of a degree or structure no family covers.
    UnsupportedShape(String),
    /// Shape fits a family but the residual after extraction is not of the family form.
    ResidualMismatch(String),
}

impl fmt::Display for NotMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotMember::NotInvariant => f.write_str("surface is not invariant"),
            NotMember::UnsupportedShape(s) => write!(f, "unsupported shape: {s}"),
            NotMember::ResidualMismatch(s) => write!(f, "residual mismatch: {s}"),
        }
    }
}

pub type Classification = std::result::Result<FamilyRecord, NotMember>;

/// Identifies which family `field` belongs to on `surface` and recovers its
/// parameters. Type-n (resp. Pseudo Type-n) membership takes precedence over
/// the degree-based families; every extraction is checked by rebuilding.
pub fn classify(field: &VectorField, surface: &Hypersurface) -> Classification {
    let cofactor = surface.cofactor(field).into_cofactor().ok_or(NotMember::NotInvariant)?;
    let record = match surface.kind() {
        SurfaceKind::S1xS2 => classify_s12(field, surface.param(), &cofactor)?,
        SurfaceKind::S2xS1 => classify_s21(field, surface.param(), &cofactor)?,
    };
    let rebuilt = record.build().map_err(|e| NotMember::ResidualMismatch(e.to_string()))?;
    if rebuilt != *field {
        return Err(NotMember::ResidualMismatch(format!(
            "{} parameters rebuild to {rebuilt}",
            record.family()
        )));
    }
    Ok(record)
}

fn divide(p: &Poly, by: &Poly, what: &str) -> std::result::Result<Poly, NotMember> {
    p.exact_div(by)
        .expect("divisor is a nonzero monomial")
        .ok_or_else(|| NotMember::ResidualMismatch(format!("{what} is not divisible by {by}")))
}

fn coeff(p: &Poly, exps: [u32; 4]) -> Rational {
    p.coeff(&Monomial(exps))
}

fn unsupported(field: &VectorField) -> NotMember {
    let deg = field.degree().map_or("zero".to_string(), |d| d.to_string());
    NotMember::UnsupportedShape(format!("invariant field of degree {deg} outside every family"))
}

fn classify_s12(field: &VectorField, a: &Rational, k: &Poly) -> Classification {
    let [p1, _, p3, _] = field.components();
    let param = a.clone();
    if let Some(n) = field.type_n() {
        return Ok(FamilyRecord::TypeNS12(TypeNS12 {
            param,
            n,
            a: divide(p1, &x2(), "P1")?,
            b: divide(p3, &x4(), "P3")?,
        }));
    }
    match field.degree() {
        None | Some(0) | Some(1) => Ok(FamilyRecord::LinearS12(LinearS12 {
            param,
            alpha: coeff(p1, [0, 1, 0, 0]),
            beta: coeff(p3, [0, 0, 0, 1]),
        })),
        Some(2) => {
            let k3 = coeff(k, [0, 0, 1, 0]);
            let k4 = coeff(k, [0, 0, 0, 1]);
            let quarter_k = k.scale(&rat(1, 4));
            let f = divide(&(p1 - &(&quarter_k * &x1())), &x2(), "P1 - K x1/4")?;
            let t = template_s12(a).scale(&(&k3 / rat(2, 1)));
            let g = divide(&(p3 - &t), &x4(), "P3 - k3 T/2")?;
            Ok(FamilyRecord::QuadS12(QuadS12 { param, k3, k4, f, g }))
        }
        Some(3) if field.kolmogorov_factors().is_some() => {
            let k33 = coeff(k, [0, 0, 2, 0]);
            // the x3 x4² term of P3 collects β and the x4² part of k33 T/2
            let beta = coeff(p3, [0, 0, 1, 2]) - &k33 / rat(2, 1);
            Ok(FamilyRecord::CubicKolmS12(CubicKolmS12 {
                param,
                k44: coeff(k, [0, 0, 0, 2]),
                k33,
                alpha: coeff(p1, [1, 2, 0, 0]),
                beta,
            }))
        }
        _ => Err(unsupported(field)),
    }
}

fn classify_s21(field: &VectorField, b: &Rational, k: &Poly) -> Classification {
    let [p1, p2, _, _] = field.components();
    let param = b.clone();
    if let Some(n) = field.pseudo_type_n() {
        let (a, bb, c) = skew_triple_parts(p1, p2)?;
        return Ok(FamilyRecord::PseudoTypeNS21(PseudoTypeNS21 { param, n, a, b: bb, c }));
    }
    match field.degree() {
        None | Some(0) | Some(1) => Ok(FamilyRecord::LinearS21(LinearS21 {
            param,
            alpha: coeff(p1, [0, 1, 0, 0]),
            beta: coeff(p1, [0, 0, 1, 0]),
            gamma: coeff(p2, [0, 0, 1, 0]),
        })),
        Some(2) => {
            let c = coeff(k, [0, 0, 0, 1]);
            let quarter = Poly::constant(&c / rat(4, 1)) * x4();
            let r1 = p1 - &(&quarter * &x1());
            let r2 = p2 - &(&quarter * &x2());
            let (f, g, h) = skew_triple_parts(&r1, &r2)?;
            Ok(FamilyRecord::QuadS21(QuadS21 { param, c, f, g, h }))
        }
        Some(3) if field.kolmogorov_factors().is_some() => Ok(FamilyRecord::CubicKolmS21(CubicKolmS21 {
            param,
            c: coeff(k, [0, 0, 0, 2]),
            alpha: coeff(p1, [1, 2, 0, 0]),
            beta: coeff(p1, [1, 0, 2, 0]),
            gamma: coeff(p2, [0, 1, 2, 0]),
        })),
        _ => Err(unsupported(field)),
    }
}

/// Canonical `(A, B, C)` with `P1 = A x2 + B x3`, `P2 = -A x1 + C x3` and
/// `B` free of `x2`.
fn skew_triple_parts(p1: &Poly, p2: &Poly) -> std::result::Result<(Poly, Poly, Poly), NotMember> {
    let (a, rest) = split_divisible(p1, Var::X2);
    let b = divide(&rest, &x3(), "P1 without its x2 part")?;
    let c = divide(&(p2 + &(&a * &x1())), &x3(), "P2 + A x1")?;
    Ok((a, b, c))
}
