//! Named fields with known invariant hyperplanes and extactic polynomials.
//!
//! Accepted names:
//! - `meridian-sharp(n,c)` on S¹×S², `n ≥ 2`, `c ≠ ±1`
//! - `parallel-sharp-s12(n,k1,...,k_{n-1})` on S¹×S², distinct `k_i`
//! - `parallel-sharp-s21(n,k1,...,k_{n-3})` on S²×S¹, distinct `k_i ≠ ±1`
//! - `pseudo-type1-meridian(A,B,C)` on S²×S¹, `A ≠ 0`
//!
//! Surfaces use parameter 2.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypersurface::Hypersurface;
use crate::poly::vars::*;
use crate::poly::Poly;
use crate::rational::{fmt_rational, int, parse_rational, Rational};
use crate::vector_field::VectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub field: VectorField,
    pub surface: Hypersurface,
    pub facts: FixtureFacts,
}

/// What is known in closed form about a fixture.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureFacts {
    /// Basis of the subspace and the extactic polynomial over it.
    pub extactic: Option<(Vec<Poly>, Poly)>,
    /// Invariant hyperplanes with their multiplicity in that extactic.
    pub multiplicities: Vec<(Poly, u32)>,
    /// Invariant planes `x4 = k` on the surface, sorted by `k`, with multiplicity.
    pub parallels: Vec<(Rational, u32)>,
    /// Invariant planes through the origin, as linear forms.
    pub meridians: Vec<Poly>,
}

/// Looks up a fixture by its textual name, e.g. `meridian-sharp(2,2)`.
pub fn fixture(name: &str) -> Result<Fixture> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, args) = compact.strip_suffix(')').and_then(|s| s.split_once('(')).ok_or_else(unknown)?;
    let args: Vec<Rational> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(parse_rational).collect::<Option<_>>().ok_or_else(unknown)?
    };
    let n_arg = || -> Result<u32> {
        let n = args.first().ok_or_else(unknown)?;
        if !n.is_integer() || n < &Rational::one() {
            return Err(Error::InvalidParameter(format!("n must be a positive integer, got {n}")));
        }
        n.to_integer().try_into().map_err(|_| Error::InvalidParameter("n too large".into()))
    };
    let mut fx = match head {
        "meridian-sharp" => {
            if args.len() != 2 {
                return Err(unknown());
            }
            meridian_sharp(n_arg()?, args[1].clone())?
        }
        "parallel-sharp-s12" => parallel_sharp_s12(n_arg()?, &args[1..])?,
        "parallel-sharp-s21" => parallel_sharp_s21(n_arg()?, &args[1..])?,
        "pseudo-type1-meridian" => {
            let [a, b, c] = <[Rational; 3]>::try_from(args).map_err(|_| unknown())?;
            pseudo_type1_meridian(a, b, c)?
        }
        _ => return Err(unknown()),
    };
    fx.name = compact;
    Ok(fx)
}

fn name_of(head: &str, args: impl IntoIterator<Item = String>) -> String {
    format!("{head}({})", args.into_iter().collect::<Vec<_>>().join(","))
}

/// `(x1^{n-1}x2x3, -x1^n x3, c x1^{n-1}x3x4, -c x1^{n-1}x3²)` on S¹×S².
///
/// Over the ordered basis `x1, x2, x3` its extactic is `(c²-1)(x1²+x2²) x1^{3n-3} x3⁴`.
pub fn meridian_sharp(n: u32, c: Rational) -> Result<Fixture> {
    if n < 2 {
        return Err(Error::InvalidParameter("meridian-sharp needs n >= 2".into()));
    }
    if c == int(1) || c == int(-1) {
        return Err(Error::InvalidParameter("meridian-sharp needs c != ±1".into()));
    }
    let lead = x1().pow(n - 1);
    let cp = Poly::constant(c.clone());
    let field = VectorField::new(
        &lead * &(x2() * x3()),
        -(x1().pow(n) * x3()),
        &cp * &(&lead * &(x3() * x4())),
        -(&cp * &(&lead * &x3().pow(2))),
    );
    let scale = &c * &c - int(1);
    let expected = (x1().pow(2) + x2().pow(2)).scale(&scale) * x1().pow(3 * n - 3) * x3().pow(4);
    Ok(Fixture {
        name: name_of("meridian-sharp", [n.to_string(), fmt_rational(&c)]),
        field,
        surface: Hypersurface::s1xs2(int(2))?,
        facts: FixtureFacts {
            extactic: Some((vec![x1(), x2(), x3()], expected)),
            multiplicities: vec![(x1(), 3 * n - 3), (x3(), 4)],
            parallels: Vec::new(),
            meridians: vec![x1(), x3()],
        },
    })
}

fn distinct(ks: &[Rational]) -> bool {
    ks.iter().collect::<BTreeSet<_>>().len() == ks.len()
}

fn product_x4_minus(ks: &[Rational]) -> Poly {
    ks.iter().map(|k| x4() - Poly::constant(k.clone())).fold(Poly::one(), |acc, f| acc * f)
}

/// `(A x2, -A x1, x4 Π(x4-k_i), -x3 Π(x4-k_i))` with `A = x1^{n-1}`, on S¹×S².
/// Exactly the planes `x4 = k_i` are invariant parallel hyperplanes.
pub fn parallel_sharp_s12(n: u32, ks: &[Rational]) -> Result<Fixture> {
    if n < 2 {
        return Err(Error::InvalidParameter("parallel-sharp-s12 needs n >= 2".into()));
    }
    if ks.len() != (n - 1) as usize || !distinct(ks) {
        return Err(Error::InvalidParameter(format!("parallel-sharp-s12 needs {} distinct values", n - 1)));
    }
    let prod = product_x4_minus(ks);
    let a = x1().pow(n - 1);
    let field = VectorField::new(&a * &x2(), -(&a * &x1()), x4() * prod.clone(), -(x3() * prod));
    let mut parallels: Vec<(Rational, u32)> = ks.iter().map(|k| (k.clone(), 1)).collect();
    parallels.sort();
    Ok(Fixture {
        name: name_of(
            "parallel-sharp-s12",
            std::iter::once(n.to_string()).chain(ks.iter().map(fmt_rational)),
        ),
        field,
        surface: Hypersurface::s1xs2(int(2))?,
        facts: FixtureFacts { parallels, ..Default::default() },
    })
}

/// On S²×S¹ with `s = x1²+x2²+x3²`, `Π = Π(x4-k_i)`:
/// `P1 = P2 = P3 = ¼ x4 (s - b²) Π`, `P4 = ½ (x1+x2+x3)(x4²-1) Π`.
/// The invariant parallel hyperplanes are `x4 = ±1` and `x4 = k_i`.
pub fn parallel_sharp_s21(n: u32, ks: &[Rational]) -> Result<Fixture> {
    if n < 3 {
        return Err(Error::InvalidParameter("parallel-sharp-s21 needs n >= 3".into()));
    }
    let bad = ks.iter().any(|k| *k == int(1) || *k == int(-1));
    if ks.len() != (n - 3) as usize || !distinct(ks) || bad {
        return Err(Error::InvalidParameter(format!(
            "parallel-sharp-s21 needs {} distinct values other than ±1",
            n - 3
        )));
    }
    let b = int(2);
    let prod = product_x4_minus(ks);
    let s = x1().pow(2) + x2().pow(2) + x3().pow(2);
    let common =
        (x4() * (s - Poly::constant(&b * &b)) * prod.clone()).scale(&Rational::new(1.into(), 4.into()));
    let p4 =
        ((x1() + x2() + x3()) * (x4().pow(2) - Poly::one()) * prod).scale(&Rational::new(1.into(), 2.into()));
    let field = VectorField::new(common.clone(), common.clone(), common, p4);
    let mut parallels: Vec<(Rational, u32)> = ks.iter().map(|k| (k.clone(), 1)).collect();
    parallels.extend([(int(-1), 1), (int(1), 1)]);
    parallels.sort();
    Ok(Fixture {
        name: name_of(
            "parallel-sharp-s21",
            std::iter::once(n.to_string()).chain(ks.iter().map(fmt_rational)),
        ),
        field,
        surface: Hypersurface::s2xs1(b)?,
        facts: FixtureFacts { parallels, ..Default::default() },
    })
}

/// `(A x2 + B x3, -A x1 + C x3, -B x1 - C x2, 0)` with constants; the only
/// invariant hyperplane through the origin is `C x1 - B x2 + A x3 = 0`.
pub fn pseudo_type1_meridian(a: Rational, b: Rational, c: Rational) -> Result<Fixture> {
    if a.is_zero() {
        return Err(Error::InvalidParameter("pseudo-type1-meridian needs A != 0".into()));
    }
    let k = |r: &Rational| Poly::constant(r.clone());
    let field = VectorField::new(
        k(&a) * x2() + k(&b) * x3(),
        -(k(&a) * x1()) + k(&c) * x3(),
        -(k(&b) * x1()) - k(&c) * x2(),
        Poly::zero(),
    );
    let meridian = k(&c) * x1() - k(&b) * x2() + k(&a) * x3();
    Ok(Fixture {
        name: name_of("pseudo-type1-meridian", [&a, &b, &c].map(fmt_rational)),
        field,
        surface: Hypersurface::s2xs1(int(2))?,
        facts: FixtureFacts { meridians: vec![meridian], ..Default::default() },
    })
}
