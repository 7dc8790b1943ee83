//! Hamiltonians, Darboux power products and independence of first integrals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::families::FamilyRecord;
use crate::hypersurface::{invariance_cofactor, Hypersurface, SurfaceKind};
use crate::linalg;
use crate::poly::vars::*;
use crate::poly::{Monomial, Poly, Var};
use crate::random::Sampler;
use crate::rational::{int, Rational};
use crate::vector_field::VectorField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianResult {
    /// Non-constant `H` with zero constant term, when one exists.
    pub hamiltonian: Option<Poly>,
}

impl HamiltonianResult {
    pub fn exists(&self) -> bool {
        self.hamiltonian.is_some()
    }
}

/// Coefficients of `ω = P2 dx1 - P1 dx2 + P4 dx3 - P3 dx4`; `dH = ω` exactly
/// when `χ` is the Hamiltonian field of `H`.
fn one_form(field: &VectorField) -> [Poly; 4] {
    let [p1, p2, p3, p4] = field.components();
    [p2.clone(), -p1, p4.clone(), -p3]
}

/// Decides whether `χ = (-H_x2, H_x1, -H_x4, H_x3)` for some non-constant
/// polynomial `H` by testing closedness of the associated 1-form, then
/// integrates along rays from the origin.
pub fn hamiltonian_solve(field: &VectorField) -> HamiltonianResult {
    let w = one_form(field);
    for i in 0..4 {
        for j in i + 1..4 {
            let (vi, vj) = (Var::ALL[i], Var::ALL[j]);
            if w[i].derivative(vj) != w[j].derivative(vi) {
                return HamiltonianResult { hamiltonian: None };
            }
        }
    }
    // H(x) = ∫_0^1 Σ x_i w_i(t x) dt
    let mut h = Poly::zero();
    for (v, wi) in Var::ALL.iter().zip(&w) {
        for (m, c) in wi.terms() {
            let shifted = m.mul(&Monomial::var(*v));
            h.add_term(shifted, c / int(i64::from(m.degree()) + 1));
        }
    }
    if h.is_constant() {
        return HamiltonianResult { hamiltonian: None };
    }
    debug_assert_eq!(VectorField::hamiltonian_field_of(&h), *field);
    HamiltonianResult { hamiltonian: Some(h) }
}

/// Formal product `Π f_i^{λ_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxProduct {
    pub factors: Vec<(Poly, Rational)>,
}

impl DarbouxProduct {
    pub fn new(factors: Vec<(Poly, Rational)>) -> DarbouxProduct {
        DarbouxProduct { factors }
    }

    pub fn from_exponents(factors: &[Poly], exponents: &[Rational]) -> DarbouxProduct {
        DarbouxProduct { factors: factors.iter().cloned().zip(exponents.iter().cloned()).collect() }
    }
}

/// Scales to a primitive integer vector whose first nonzero entry is positive.
fn canonical_vector(v: &[Rational]) -> Vec<Rational> {
    let denom_lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> =
        v.iter().map(|r| (r * Rational::from_integer(denom_lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return v.to_vec();
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &content * &sign)).collect()
}

/// Basis of `{ λ : Σ λ_i K_i = 0 }`, each vector canonicalized.
pub fn darboux_kernel(cofactors: &[Poly]) -> Result<Vec<Vec<Rational>>> {
    if cofactors.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let rows = linalg::coefficient_columns(cofactors);
    Ok(linalg::nullspace(&rows, cofactors.len()).iter().map(|v| canonical_vector(v)).collect())
}

/// A nonzero `λ` with `Σ λ_i K_i = 0` for pairs `(f_i, K_i)`, or `None` when
/// the cofactors are independent. When the kernel has several dimensions the
/// first basis vector is returned; [`darboux_kernel`] gives all of them.
pub fn darboux_exponents(pairs: &[(Poly, Poly)]) -> Result<Option<Vec<Rational>>> {
    let cofactors: Vec<Poly> = pairs.iter().map(|(_, k)| k.clone()).collect();
    Ok(darboux_kernel(&cofactors)?.into_iter().next())
}

/// Checks `χ F = 0` through `Σ λ_i K_i = 0`; a factor that is not invariant
/// is an error.
pub fn verify_first_integral(field: &VectorField, product: &DarbouxProduct) -> Result<bool> {
    if product.factors.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let mut total = Poly::zero();
    for (index, (f, lambda)) in product.factors.iter().enumerate() {
        let k = invariance_cofactor(field, f)?
            .into_cofactor()
            .ok_or_else(|| Error::NotInvariantFactor { index, factor: f.to_string() })?;
        total += &k.scale(lambda);
    }
    Ok(total.is_zero())
}

/// The two polynomial first integrals known in closed form for Type-n fields
/// on S¹×S² and Pseudo Type-n fields on S²×S¹, linear members included.
pub fn known_first_integrals(field: &VectorField, record: &FamilyRecord) -> Result<Vec<Poly>> {
    let integrals = match record {
        FamilyRecord::TypeNS12(_) | FamilyRecord::LinearS12(_) => {
            vec![x1().pow(2) + x2().pow(2), x3().pow(2) + x4().pow(2)]
        }
        FamilyRecord::PseudoTypeNS21(_) | FamilyRecord::LinearS21(_) => {
            vec![x1().pow(2) + x2().pow(2) + x3().pow(2), x4()]
        }
        other => return Err(Error::UnsupportedFamily(other.family().to_string())),
    };
    if let Some(bad) = integrals.iter().find(|h| !field.lie_derivative(h).is_zero()) {
        return Err(Error::RecordMismatch(format!("{bad} is not conserved by the field")));
    }
    Ok(integrals)
}

/// `r (cos, sin)` of a rational angle parameter `t`: `r((1-t²)/(1+t²), 2t/(1+t²))`.
fn circle_point(r: &Rational, t: &Rational) -> (Rational, Rational) {
    let t2 = t * t;
    let d = int(1) + &t2;
    (r * (int(1) - &t2) / &d, r * (int(2) * t) / &d)
}

/// Point on the sphere of radius `r` by inverse stereographic projection of `(p, q)`.
fn sphere_point(r: &Rational, p: &Rational, q: &Rational) -> [Rational; 3] {
    let n = p * p + q * q;
    let d = &n + int(1);
    [r * (int(2) * p) / &d, r * (int(2) * q) / &d, r * (&n - int(1)) / &d]
}

/// A rational point of the surface. For S¹×S² it lies on the torus
/// `x1²+x2² = a², x3²+x4² = 1`; for S²×S¹ on the spheres `x1²+x2²+x3² = b², x4 = ±1`.
pub fn rational_surface_point(surface: &Hypersurface, sampler: &mut Sampler) -> [Rational; 4] {
    let r = surface.param();
    match surface.kind() {
        SurfaceKind::S1xS2 => {
            let (x1, x2) = circle_point(r, &sampler.rational());
            let (x3, x4) = circle_point(&int(1), &sampler.rational());
            [x1, x2, x3, x4]
        }
        SurfaceKind::S2xS1 => {
            let [x1, x2, x3] = sphere_point(r, &sampler.rational(), &sampler.rational());
            let x4 = if sampler.coin() { int(1) } else { int(-1) };
            [x1, x2, x3, x4]
        }
    }
}

/// Largest rank of the gradient matrix of `integrals` over `trials` sampled
/// rational surface points; trial `i` draws from seed `seed + i`.
pub fn independence_rank(integrals: &[Poly], surface: &Hypersurface, trials: usize, seed: u64) -> usize {
    let grads: Vec<[Poly; 4]> = integrals.iter().map(|h| Var::ALL.map(|v| h.derivative(v))).collect();
    let mut best = 0;
    for i in 0..trials {
        let mut sampler = Sampler::for_instance(seed, crate::random::stream_id("independence"), i as u64);
        let point = rational_surface_point(surface, &mut sampler);
        debug_assert!(surface.poly().eval(&point).is_zero());
        let rows: Vec<Vec<Rational>> =
            grads.iter().map(|g| g.iter().map(|p| p.eval(&point)).collect()).collect();
        best = best.max(linalg::rank(&rows));
        if best == integrals.len().min(4) {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_quadratic_s1s2;
    use crate::rational::rat;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    fn field(s: &str) -> VectorField {
        VectorField::parse(s).unwrap()
    }

    #[test]
    fn hamiltonian_examples() {
        let h = hamiltonian_solve(&field("x2; -x1; x4; -x3"));
        assert_eq!(h.hamiltonian, Some(p("-1/2*(x1^2+x2^2) - 1/2*(x3^2+x4^2)")));
        let quad = build_quadratic_s1s2(int(2), int(1), int(0), p("x1"), p("0")).unwrap();
        assert!(!hamiltonian_solve(&quad).exists());
        assert!(!hamiltonian_solve(&VectorField::zero()).exists());
        let h0 = p("x1^3*x4 - 2*x2*x3 + x1");
        let got = hamiltonian_solve(&VectorField::hamiltonian_field_of(&h0)).hamiltonian.unwrap();
        assert_eq!(got, h0);
    }

    #[test]
    fn darboux_examples() {
        let g = Hypersurface::s1xs2(int(2)).unwrap().poly().clone();
        let pairs = vec![(g, x3()), (p("x1^2+x2^2"), p("1/2*x3"))];
        assert_eq!(darboux_exponents(&pairs).unwrap(), Some(vec![int(1), int(-2)]));
        assert_eq!(darboux_exponents(&[(x1(), Poly::zero())]).unwrap(), Some(vec![int(1)]));
        assert_eq!(darboux_exponents(&[(x1(), x3())]).unwrap(), None);
        assert!(matches!(darboux_exponents(&[]), Err(Error::EmptyFactors)));
    }

    #[test]
    fn darboux_kernel_with_free_directions() {
        // cubic Kolmogorov on S²×S¹ with c = 0: the sphere factor has cofactor 0
        let pairs = [
            (x1(), p("x2^2 + 2*x3^2")),
            (x2(), p("-x1^2 + 3*x3^2")),
            (x3(), p("-2*x1^2 - 3*x2^2")),
            (p("x1^2+x2^2+x3^2"), Poly::zero()),
        ];
        let cof: Vec<Poly> = pairs.iter().map(|(_, k)| k.clone()).collect();
        let ker = darboux_kernel(&cof).unwrap();
        assert_eq!(ker.len(), 2);
        let lambda = darboux_exponents(&pairs).unwrap().unwrap();
        let sum: Poly = cof.iter().zip(&lambda).map(|(k, l)| k.scale(l)).sum();
        assert!(sum.is_zero());
        let target = [int(3), int(-2), int(1), int(-1)];
        let sum: Poly = cof.iter().zip(&target).map(|(k, l)| k.scale(l)).sum();
        assert!(sum.is_zero());
    }

    #[test]
    fn verification() {
        let chi = build_quadratic_s1s2(int(2), int(1), int(0), p("0"), p("0")).unwrap();
        let g = Hypersurface::s1xs2(int(2)).unwrap().poly().clone();
        let r2 = p("x1^2+x2^2");
        let good = DarbouxProduct::new(vec![(g.clone(), int(1)), (r2.clone(), int(-2))]);
        assert!(verify_first_integral(&chi, &good).unwrap());
        let bad = DarbouxProduct::new(vec![(g.clone(), int(1)), (r2, int(-1))]);
        assert!(!verify_first_integral(&chi, &bad).unwrap());
        let rot = field("x2; -x1; x4; -x3");
        assert!(verify_first_integral(&rot, &DarbouxProduct::new(vec![(g, int(1))])).unwrap());
        let not_inv = DarbouxProduct::new(vec![(x1(), int(1))]);
        assert!(matches!(
            verify_first_integral(&rot, &not_inv),
            Err(Error::NotInvariantFactor { index: 0, .. })
        ));
    }

    #[test]
    fn independence_examples() {
        let s12 = Hypersurface::s1xs2(int(2)).unwrap();
        let s21 = Hypersurface::s2xs1(rat(5, 2)).unwrap();
        assert_eq!(independence_rank(&[p("x1^2+x2^2"), p("x3^2+x4^2")], &s12, 5, 1), 2);
        assert_eq!(independence_rank(&[p("x1^2+x2^2"), p("2*x1^2+2*x2^2")], &s12, 5, 1), 1);
        assert_eq!(independence_rank(&[x4()], &s21, 5, 1), 1);
        assert_eq!(independence_rank(&[p("x1^2+x2^2+x3^2"), x4()], &s21, 5, 1), 2);
    }

    #[test]
    fn surface_points_are_exact() {
        for s in [Hypersurface::s1xs2(rat(7, 3)).unwrap(), Hypersurface::s2xs1(int(3)).unwrap()] {
            let mut sampler = Sampler::new(3);
            for _ in 0..20 {
                let pt = rational_surface_point(&s, &mut sampler);
                assert!(s.poly().eval(&pt).is_zero());
            }
        }
    }

    #[test]
    fn canonicalization() {
        assert_eq!(canonical_vector(&[rat(-1, 2), int(1)]), vec![int(1), int(-2)]);
        assert_eq!(canonical_vector(&[int(0), rat(4, 3), rat(2, 3)]), vec![int(0), int(2), int(1)]);
    }
}
