//! Sparse multivariate polynomials in `x1..x4` over arbitrary-precision rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x1 > x2 > x3 > x4`. The leading term is the
//! last entry of the map. Zero coefficients are never stored, so structural
//! equality of the map is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::rational::{fmt_rational, Rational};

mod parse;

pub use parse::{ParseError, ParseErrorKind};

/// One of the four coordinates of R^4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
    X3,
    X4,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X1, Var::X2, Var::X3, Var::X4];

    /// Zero-based slot of the variable in an exponent vector.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Variable from a one-based index (`1` is `x1`).
    pub fn from_index(i: usize) -> Result<Var, Error> {
        match i {
            1 => Ok(Var::X1),
            2 => Ok(Var::X2),
            3 => Ok(Var::X3),
            4 => Ok(Var::X4),
            _ => Err(Error::InvalidVariable(i)),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.index() + 1)
    }
}

/// Exponent vector `(e1, e2, e3, e4)` of `x1^e1 x2^e2 x3^e3 x4^e4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in `x1..x4` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::term(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(text: &str) -> Result<Poly, ParseError> {
        parse::parse(text)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// True when every term has the same total degree (the zero polynomial counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self -= c * m * g`, in place.
    fn sub_scaled_shifted(&mut self, g: &Poly, c: &Rational, m: &Monomial) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), -(gc * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division with remainder by a single divisor under graded-lex order.
    ///
    /// Returns `(q, r)` with `self = q*g + r` and no monomial of `r` divisible
    /// by the leading monomial of `g`. `r` is zero exactly when `g | self`.
    pub fn div_rem(&self, g: &Poly) -> Result<(Poly, Poly), Error> {
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (*lm, lc.recip());
        let mut p = self.clone();
        let mut q = Poly::zero();
        let mut r = Poly::zero();
        while let Some((m, c)) = p.terms.last_key_value() {
            let (m, c) = (*m, c.clone());
            match m.checked_div(&lm) {
                Some(shift) => {
                    let t = &c * &lc_inv;
                    p.sub_scaled_shifted(g, &t, &shift);
                    q.add_term(shift, t);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Poly) -> Result<Option<Poly>, Error> {
        let (q, r) = self.div_rem(g)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Substitutes `x_v := value`, leaving a polynomial in the other variables.
    pub fn substitute(&self, v: Var, value: &Rational) -> Poly {
        let i = v.index();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rm = *m;
            let e = rm.0[i];
            rm.0[i] = 0;
            out.add_term(rm, c * rational_pow(value, e));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.0) {
                if e > 0 {
                    t *= rational_pow(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating-point evaluation, summed in descending graded-lex order.
    pub fn eval_f64(&self, point: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in self.terms.iter().rev() {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (x, e) in point.iter().zip(m.0) {
                if e > 0 {
                    t *= x.powi(e as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients with denominators cleared and the leading coefficient
    /// made positive; two polynomials generate the same principal ideal
    /// exactly when their primitive parts agree.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading_term() else {
            return Poly::zero();
        };
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = Rational::new(den_lcm, num_gcd);
        if lc.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }
}

pub(crate) fn rational_pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Poly {
        Poly::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Shorthand constructors used throughout the crate and its tests.
pub mod vars {
    use super::{Poly, Var};

    pub fn x1() -> Poly {
        Poly::var(Var::X1)
    }
    pub fn x2() -> Poly {
        Poly::var(Var::X2)
    }
    pub fn x3() -> Poly {
        Poly::var(Var::X3)
    }
    pub fn x4() -> Poly {
        Poly::var(Var::X4)
    }
}

#[cfg(test)]
mod tests {
    use super::vars::*;
    use super::*;
    use crate::rational::rat;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial([2, 0, 0, 0]);
        let b = Monomial([1, 1, 0, 0]);
        let c = Monomial([0, 0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial([0, 1, 0, 0]) > Monomial([0, 0, 1, 0]));
        assert!(Monomial::ONE < Monomial([0, 0, 0, 1]));
    }

    #[test]
    fn ring_examples() {
        assert!((&x1() + &(-&x1())).is_zero());
        assert_eq!((x1() + x2()) * (x1() - x2()), p("x1^2 - x2^2"));
        assert_eq!(p("x1^2+x2^2-4").pow(2), p("x1^4 + 2*x1^2*x2^2 + x2^4 - 8*x1^2 - 8*x2^2 + 16"));
        assert_eq!(p("x1+1").pow(0), Poly::one());
    }

    #[test]
    fn division_examples() {
        let (q, r) = p("x1^2 - x2^2").div_rem(&p("x1 - x2")).unwrap();
        assert_eq!((q, r), (p("x1 + x2"), Poly::zero()));
        let (q, r) = p("x1^2").div_rem(&x2()).unwrap();
        assert_eq!((q, r), (Poly::zero(), p("x1^2")));
        assert!(matches!(x1().div_rem(&Poly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x1^2+x2^2").derivative(Var::X1), p("2*x1"));
        assert!(p("7/3").derivative(Var::X3).is_zero());
        assert!(Var::from_index(5).is_err());
        assert!(Var::from_index(0).is_err());
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
        assert_eq!(p("x1*x2^2 + x4").degree(), Some(3));
    }

    #[test]
    fn homogeneous_components() {
        let f = p("x1^3 + x2 - 5 + x3*x4");
        assert_eq!(f.homogeneous_component(2), p("x3*x4"));
        assert!(Poly::zero().homogeneous_component(3).is_zero());
        let sum: Poly = (0..=3).map(|d| f.homogeneous_component(d)).sum();
        assert_eq!(sum, f);
    }

    #[test]
    fn evaluation() {
        let pt = [rat(3, 1), rat(4, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(p("x1^2+x2^2").eval(&pt), rat(25, 1));
        assert_eq!(p("x1^2+x2^2").eval_f64(&[3.0, 4.0, 0.0, 0.0]), 25.0);
    }

    #[test]
    fn printing() {
        assert_eq!(p("x2^2 + x1^2 - 4").to_string(), "x1^2 + x2^2 - 4");
        assert_eq!(p("-x1 + 1/2*x3*x4").to_string(), "1/2*x3*x4 - x1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-3/4").to_string(), "-3/4");
    }

    #[test]
    fn substitution() {
        let f = p("x4^2*x1 - 3*x4 + 2");
        assert_eq!(f.substitute(Var::X4, &rat(2, 1)), p("4*x1 - 4"));
    }

    #[test]
    fn primitive_part() {
        assert_eq!(p("-1/2*x1 + 3/4*x2").primitive(), p("2*x1 - 3*x2"));
    }
}
