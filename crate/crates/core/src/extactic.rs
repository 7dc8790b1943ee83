//! Extactic polynomials and invariant hyperplanes.
//!
//! For a basis `v_1..v_ℓ` of a subspace `W` the extactic polynomial is the
//! determinant of the matrix whose row `i` holds `χ^i v_j`. Every invariant
//! hypersurface `f = 0` with `f ∈ W` divides it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypersurface::{invariance_cofactor, CofactorResult};
use crate::linalg;
use crate::poly::vars::*;
use crate::poly::{Monomial, Poly, Var};
use crate::rational::{int, Rational};
use crate::vector_field::VectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    basis: Vec<Poly>,
}

impl SubspaceBasis {
    pub fn new(basis: Vec<Poly>) -> Result<SubspaceBasis> {
        if basis.len() < 2 {
            return Err(Error::BasisTooSmall);
        }
        let (_, rows) = linalg::coefficient_rows(&basis);
        if linalg::rank(&rows) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(SubspaceBasis { basis })
    }

    /// Parses a comma-separated list such as `"x1,x2,x3"`.
    pub fn parse(text: &str) -> Result<SubspaceBasis> {
        let polys = text.split(',').map(Poly::parse).collect::<Result<Vec<_>, _>>()?;
        SubspaceBasis::new(polys)
    }

    pub fn elements(&self) -> &[Poly] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether `f` is a linear combination of the basis.
    pub fn contains(&self, f: &Poly) -> bool {
        let mut all = self.basis.clone();
        all.push(f.clone());
        let (_, rows) = linalg::coefficient_rows(&all);
        linalg::rank(&rows) == self.basis.len()
    }
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn poly_determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("previous pivot is nonzero")
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub fn extactic(field: &VectorField, w: &SubspaceBasis) -> Poly {
    let l = w.len();
    let mut rows = vec![w.basis.clone()];
    for i in 1..l {
        let next = rows[i - 1].iter().map(|p| field.lie_derivative(p)).collect();
        rows.push(next);
    }
    poly_determinant(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// Largest `k` with `f^k | E`; zero when `f` is not a factor.
    Finite(u32),
    /// The extactic polynomial vanishes identically.
    Infinite,
}

/// Largest `k` with `f^k | p`, for nonzero `p`.
fn divisor_power(p: &Poly, f: &Poly) -> u32 {
    let mut k = 0;
    let mut rest = p.clone();
    while let Some(q) = rest.exact_div(f).expect("nonzero divisor") {
        if f.is_constant() {
            break;
        }
        rest = q;
        k += 1;
    }
    k
}

pub fn multiplicity(field: &VectorField, w: &SubspaceBasis, f: &Poly) -> Result<Multiplicity> {
    if f.is_zero() {
        return Err(Error::ZeroHypersurface);
    }
    if !w.contains(f) {
        return Err(Error::NotInSpan(f.to_string()));
    }
    let e = extactic(field, w);
    if e.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    Ok(Multiplicity::Finite(divisor_power(&e, f)))
}

pub fn check_hyperplane(field: &VectorField, l: &Poly) -> Result<CofactorResult> {
    if l.degree() != Some(1) {
        return Err(Error::NotAHyperplane(l.to_string()));
    }
    invariance_cofactor(field, l)
}

/// Either every member of a family of planes is invariant or the listed ones are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneSet<T> {
    AllInvariant,
    Planes(Vec<(T, u32)>),
}

impl<T> PlaneSet<T> {
    pub fn planes(&self) -> Option<&[(T, u32)]> {
        match self {
            PlaneSet::AllInvariant => None,
            PlaneSet::Planes(p) => Some(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelReport {
    /// Planes `x4 = k` with multiplicity as factors of `P4`, sorted by `k`.
    pub planes: PlaneSet<Rational>,
    /// Set when `P4` vanished at every probe point, so candidates could not be
    /// generated, or when a coefficient was too large to factor completely.
    pub indeterminate: bool,
}

/// Probe points `(x1, x2, x3)` used to specialize `P4` to a polynomial in `x4`.
pub const PARALLEL_PROBES: [(i64, i64, i64, i64, i64, i64); 3] =
    [(1, 1, 1, 2, 1, 3), (2, 1, 1, 3, 1, 5), (3, 1, 1, 5, 1, 7)];

/// Invariant parallel hyperplanes `x4 = k`, `k ∈ Q`.
pub fn enumerate_parallel(field: &VectorField) -> ParallelReport {
    let p4 = field.component(Var::X4);
    if p4.is_zero() {
        return ParallelReport { planes: PlaneSet::AllInvariant, indeterminate: false };
    }
    let mut specialized = None;
    for (a, ad, b, bd, c, cd) in PARALLEL_PROBES {
        let q = p4
            .substitute(Var::X1, &Rational::new(a.into(), ad.into()))
            .substitute(Var::X2, &Rational::new(b.into(), bd.into()))
            .substitute(Var::X3, &Rational::new(c.into(), cd.into()));
        if !q.is_zero() {
            specialized = Some(q);
            break;
        }
    }
    let Some(q) = specialized else {
        return ParallelReport { planes: PlaneSet::Planes(Vec::new()), indeterminate: true };
    };
    let coeffs = univariate_coefficients(&q, Var::X4);
    let (candidates, complete) = rational_roots(&coeffs);
    let mut planes = Vec::new();
    for k in candidates {
        if !p4.substitute(Var::X4, &k).is_zero() {
            continue;
        }
        let plane = x4() - Poly::constant(k.clone());
        let invariant = check_hyperplane(field, &plane).expect("degree one").is_invariant();
        debug_assert!(invariant);
        if invariant {
            planes.push((k, divisor_power(p4, &plane)));
        }
    }
    planes.sort();
    ParallelReport { planes: PlaneSet::Planes(planes), indeterminate: !complete }
}

/// Coordinate pencils `a x1 + b x2` and `a x3 + b x4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pencil {
    X1X2,
    X3X4,
}

impl Pencil {
    pub fn vars(self) -> (Var, Var) {
        match self {
            Pencil::X1X2 => (Var::X1, Var::X2),
            Pencil::X3X4 => (Var::X3, Var::X4),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Pencil::X1X2 => "x1x2",
            Pencil::X3X4 => "x3x4",
        }
    }

    /// The linear form `a u + b v`.
    pub fn form(self, a: &Rational, b: &Rational) -> Poly {
        let (u, v) = self.vars();
        Poly::var(u).scale(a) + Poly::var(v).scale(b)
    }
}

impl std::str::FromStr for Pencil {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x1x2" => Ok(Pencil::X1X2),
            "x3x4" => Ok(Pencil::X3X4),
            other => Err(Error::InvalidParameter(format!("unknown pencil `{other}`"))),
        }
    }
}

/// Ratio `(a:b)` in lowest integer terms with `a ≥ 0`, and `(0:1)` when `a = 0`.
pub fn normalize_ratio(a: &Rational, b: &Rational) -> (Rational, Rational) {
    if a.is_zero() {
        return (int(0), int(1));
    }
    let l = a.denom().lcm(b.denom());
    let (mut ia, mut ib) =
        ((a * Rational::from_integer(l.clone())).to_integer(), (b * Rational::from_integer(l)).to_integer());
    let g = ia.gcd(&ib);
    ia /= &g;
    ib /= &g;
    if ia.is_negative() {
        ia = -ia;
        ib = -ib;
    }
    (Rational::from_integer(ia), Rational::from_integer(ib))
}

/// Invariant members `a u + b v = 0` of a coordinate pencil, as normalized
/// ratios `(a:b)` with their multiplicity in the extactic over `⟨u, v⟩`.
pub fn enumerate_pencil(field: &VectorField, pencil: Pencil) -> PlaneSet<(Rational, Rational)> {
    let (u, v) = pencil.vars();
    let w = SubspaceBasis::new(vec![Poly::var(u), Poly::var(v)]).expect("independent");
    let e = extactic(field, &w);
    if e.is_zero() {
        return PlaneSet::AllInvariant;
    }
    // Any binary form in (u, v) inside E carries every linear factor of E in
    // the pencil; take the one with fewest terms.
    let forms = binary_forms(&e, u, v);
    let form = forms.iter().min_by_key(|(d, f)| (f.len(), *d)).expect("nonzero extactic");
    let (d, coeffs) = form;
    let mut candidates: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    // u - r v with F(r, 1) = 0
    let dehomog: Vec<Rational> =
        (0..=*d).map(|i| coeffs.get(&i).cloned().unwrap_or_else(|| int(0))).collect();
    for r in rational_roots(&dehomog).0 {
        candidates.insert(normalize_ratio(&int(1), &-r));
    }
    if !coeffs.contains_key(d) {
        candidates.insert((int(0), int(1)));
    }
    let mut out = Vec::new();
    for (a, b) in candidates {
        let l = pencil.form(&a, &b);
        if e.exact_div(&l).expect("nonzero").is_none() {
            continue;
        }
        if check_hyperplane(field, &l).expect("degree one").is_invariant() {
            out.push(((a, b), divisor_power(&e, &l)));
        }
    }
    PlaneSet::Planes(out)
}

/// Splits `p` by its monomial in the variables other than `u, v` and by
/// `(u, v)`-degree; each part is a binary form `Σ c_i u^i v^{d-i}` keyed by `i`.
fn binary_forms(p: &Poly, u: Var, v: Var) -> Vec<(u32, std::collections::BTreeMap<u32, Rational>)> {
    let mut groups: std::collections::BTreeMap<(Monomial, u32), std::collections::BTreeMap<u32, Rational>> =
        Default::default();
    for (m, c) in p.terms() {
        let (eu, ev) = (m.exponent(u), m.exponent(v));
        let mut rest = *m;
        rest.0[u.index()] = 0;
        rest.0[v.index()] = 0;
        groups.entry((rest, eu + ev)).or_default().insert(eu, c.clone());
    }
    groups.into_iter().map(|((_, d), f)| (d, f)).collect()
}

/// Coefficients of `p` as a polynomial in `v` alone (index = power).
fn univariate_coefficients(p: &Poly, v: Var) -> Vec<Rational> {
    let deg = p.degree_in(v).unwrap_or(0) as usize;
    let mut out = vec![int(0); deg + 1];
    for (m, c) in p.terms() {
        out[m.exponent(v) as usize] += c;
    }
    out
}

fn horner(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(int(0), |acc, c| acc * x + c)
}

/// Trial division bound for factoring coefficients.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n ≠ 0`, and whether the factorization was complete.
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let limit_sq = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
    let complete = n <= limit_sq;
    if !n.is_one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    (divs, complete)
}

/// Distinct rational roots of `Σ c_i x^i`, sorted, and whether the search was
/// complete. The zero polynomial has no roots reported.
pub fn rational_roots(coeffs: &[Rational]) -> (Vec<Rational>, bool) {
    let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return (Vec::new(), true);
    };
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(int(0));
    }
    let trimmed = &coeffs[low..=top];
    if trimmed.len() == 1 {
        return (roots, true);
    }
    let l = trimmed.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> =
        trimmed.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let (ps, c0) = divisors(&ints[0]);
    let (qs, c1) = divisors(ints.last().expect("nonempty"));
    let lead = trimmed.last().expect("nonempty").abs();
    // Cauchy bound on root magnitude
    let bound =
        trimmed.iter().map(|c| c.abs() / &lead).fold(int(0), |a, b| if b > a { b } else { a }) + int(1);
    let mut seen = BTreeSet::new();
    for q in &qs {
        for p in &ps {
            let r = Rational::new(p.clone(), q.clone());
            if r > bound || !seen.insert(r.clone()) {
                continue;
            }
            for cand in [r.clone(), -r] {
                if horner(trimmed, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    (roots, c0 && c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_cubic_kolmogorov_s1s2, build_quadratic_s1s2, fixture};
    use crate::rational::rat;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn field(s: &str) -> VectorField {
        VectorField::parse(s).unwrap()
    }

    fn basis(s: &str) -> SubspaceBasis {
        SubspaceBasis::parse(s).unwrap()
    }

    #[test]
    fn basis_validation() {
        assert!(matches!(SubspaceBasis::parse("x1"), Err(Error::BasisTooSmall)));
        assert!(matches!(SubspaceBasis::parse("x1, 2*x1"), Err(Error::DependentBasis)));
        let w = basis("x1,x2,x3");
        assert!(w.contains(&p("x1 - 3*x3")));
        assert!(!w.contains(&x4()));
    }

    #[test]
    fn extactic_examples() {
        let chi = field("x1*x2; x3^2 - 1; x4; x1*x4^3 + 2");
        assert_eq!(extactic(&chi, &basis("1,x4")), chi.component(Var::X4).clone());
        assert!(extactic(&VectorField::zero(), &basis("x1,x2,x3")).is_zero());
        let fx = fixture("meridian-sharp(2,2)").unwrap();
        // (c² - 1)(x1² + x2²) x1^{3n-3} x3⁴ at n = 2, c = 2
        assert_eq!(extactic(&fx.field, &basis("x1,x2,x3")), p("3*x1^3*x3^4*(x1^2+x2^2)"));
        let swapped = extactic(&fx.field, &basis("x2,x1,x3"));
        assert_eq!(swapped, p("-3*x1^3*x3^4*(x1^2+x2^2)"));
    }

    #[test]
    fn determinant_against_expansion() {
        let m = vec![
            vec![p("x1"), p("x2"), p("1")],
            vec![p("x2^2"), p("x1 + x3"), p("x4")],
            vec![p("3"), p("x1*x2"), p("x3 - 1")],
        ];
        let expanded = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
            - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])))
            + &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
        assert_eq!(poly_determinant(m), expanded);
        let swap = vec![vec![p("0"), p("x1")], vec![p("x2"), p("5")]];
        assert_eq!(poly_determinant(swap), p("-x1*x2"));
    }

    #[test]
    fn multiplicity_examples() {
        let fx = fixture("meridian-sharp(2,2)").unwrap();
        let w = basis("x1,x2,x3");
        assert_eq!(multiplicity(&fx.field, &w, &x1()).unwrap(), Multiplicity::Finite(3));
        assert_eq!(multiplicity(&fx.field, &w, &x3()).unwrap(), Multiplicity::Finite(4));
        assert_eq!(multiplicity(&fx.field, &w, &x2()).unwrap(), Multiplicity::Finite(0));
        assert!(matches!(multiplicity(&fx.field, &w, &x4()), Err(Error::NotInSpan(_))));
        assert!(multiplicity(&fx.field, &w, &Poly::zero()).is_err());
        let radial = field("x1; x2; 0; 0");
        assert_eq!(multiplicity(&radial, &basis("x1,x2"), &x1()).unwrap(), Multiplicity::Infinite);
    }

    #[test]
    fn hyperplane_checks() {
        let fx = fixture("pseudo-type1-meridian(1,2,3)").unwrap();
        let got = check_hyperplane(&fx.field, &p("3*x1 - 2*x2 + x3")).unwrap();
        assert_eq!(got.cofactor(), Some(&Poly::zero()));
        let cubic = build_cubic_kolmogorov_s1s2(int(2), int(1), int(2), int(3), int(0)).unwrap();
        let got = check_hyperplane(&cubic, &x1()).unwrap();
        assert_eq!(got.cofactor(), Some(&p("1/4*(x3^2 + 2*x4^2) + 3*x2^2")));
        assert!(!check_hyperplane(&field("x2; -x1; x4; -x3"), &x1()).unwrap().is_invariant());
        assert!(matches!(
            check_hyperplane(&field("x2; -x1; x4; -x3"), &p("x1^2")),
            Err(Error::NotAHyperplane(_))
        ));
        assert!(check_hyperplane(&field("x2; -x1; x4; -x3"), &p("3")).is_err());
    }

    #[test]
    fn parallel_examples() {
        let fx = fixture("parallel-sharp-s12(3,1,2)").unwrap();
        let rep = enumerate_parallel(&fx.field);
        assert_eq!(rep.planes, PlaneSet::Planes(vec![(int(1), 1), (int(2), 1)]));
        assert!(!rep.indeterminate);
        let fx = fixture("parallel-sharp-s21(4,3)").unwrap();
        assert_eq!(
            enumerate_parallel(&fx.field).planes,
            PlaneSet::Planes(vec![(int(-1), 1), (int(1), 1), (int(3), 1)])
        );
        let pseudo = field("x2 + x3; -x1 + x3; -x1 - x2; 0");
        assert_eq!(enumerate_parallel(&pseudo).planes, PlaneSet::AllInvariant);
        let repeated = field("0; 0; 0; x1*(x4 - 1/2)^2*(x4 + 3)");
        assert_eq!(
            enumerate_parallel(&repeated).planes,
            PlaneSet::Planes(vec![(int(-3), 1), (rat(1, 2), 2)])
        );
    }

    #[test]
    fn parallel_probe_fallback() {
        // P4 vanishes at the first probe (x1 = 1) but not at the second
        let chi = field("0; 0; 0; (x1 - 1)*(x4 - 2)");
        assert_eq!(enumerate_parallel(&chi).planes, PlaneSet::Planes(vec![(int(2), 1)]));
        let chi = field("0; 0; 0; (x1 - 1)*(x1 - 2)*(x1 - 3)*x4");
        let rep = enumerate_parallel(&chi);
        assert!(rep.indeterminate);
    }

    #[test]
    fn pencil_examples() {
        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("x1"), p("0")).unwrap();
        let w = basis("x1,x2");
        assert_eq!(extactic(&chi, &w), p("-x1*(x1^2+x2^2)"));
        assert_eq!(enumerate_pencil(&chi, Pencil::X1X2), PlaneSet::Planes(vec![((int(1), int(0)), 1)]));
        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("0"), p("0")).unwrap();
        assert_eq!(enumerate_pencil(&chi, Pencil::X1X2), PlaneSet::AllInvariant);
        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("x3"), p("0")).unwrap();
        assert_eq!(enumerate_pencil(&chi, Pencil::X1X2), PlaneSet::Planes(vec![]));
        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("2*x1 - 3*x2"), p("0")).unwrap();
        assert_eq!(enumerate_pencil(&chi, Pencil::X1X2), PlaneSet::Planes(vec![((int(2), int(-3)), 1)]));
        let chi = build_quadratic_s1s2(int(2), int(0), int(0), p("x2"), p("0")).unwrap();
        assert_eq!(enumerate_pencil(&chi, Pencil::X1X2), PlaneSet::Planes(vec![((int(0), int(1)), 1)]));
    }

    #[test]
    fn ratios() {
        assert_eq!(normalize_ratio(&int(-2), &int(4)), (int(1), int(-2)));
        assert_eq!(normalize_ratio(&int(0), &int(-5)), (int(0), int(1)));
        assert_eq!(normalize_ratio(&rat(1, 2), &rat(1, 3)), (int(3), int(2)));
    }

    #[test]
    fn roots() {
        // 6x^3 - 5x^2 - 2x + 1 = (x - 1)(2x + 1)(3x - 1)
        let c = [int(1), int(-2), int(-5), int(6)];
        assert_eq!(rational_roots(&c).0, vec![rat(-1, 2), rat(1, 3), int(1)]);
        assert_eq!(rational_roots(&[int(0), int(0), int(1)]).0, vec![int(0)]);
        assert_eq!(rational_roots(&[int(2), int(0), int(1)]).0, Vec::<Rational>::new());
        assert!(rational_roots(&[int(0)]).0.is_empty());
    }
}
