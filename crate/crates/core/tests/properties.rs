use proptest::prelude::*;

use spherefield::extactic::{
    check_hyperplane, enumerate_parallel, enumerate_pencil, extactic, multiplicity, poly_determinant,
    Multiplicity, Pencil, PlaneSet, SubspaceBasis,
};
use spherefield::families::build_type_n_s1s2;
use spherefield::hypersurface::invariance_cofactor;
use spherefield::integrability::hamiltonian_solve;
use spherefield::poly::vars::*;
use spherefield::rational::{int, rat};
use spherefield::{CofactorResult, Monomial, Poly, Rational, Var, VectorField};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn poly_with(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform4(0..=max_exp), small_rational()), 0..=max_terms)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|(e, c)| (Monomial(e), c))))
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_with(2, 6)
}

fn field(max_exp: u32) -> impl Strategy<Value = VectorField> {
    prop::array::uniform4(poly_with(max_exp, 4)).prop_map(VectorField::from_components)
}

fn hamiltonian_field(h: &Poly) -> VectorField {
    VectorField::new(
        -h.derivative(Var::X2),
        h.derivative(Var::X1),
        -h.derivative(Var::X4),
        h.derivative(Var::X3),
    )
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn division_round_trip(a in poly(), g in poly()) {
        prop_assume!(!g.is_zero());
        let (quot, rem) = a.div_rem(&g).unwrap();
        prop_assert_eq!(&(&quot * &g) + &rem, a.clone());
        // no remainder term is divisible by the leading monomial of g
        let (lead, _) = g.leading_term().unwrap();
        prop_assert!(rem.terms().all(|(m, _)| !lead.divides(m)));
        prop_assert_eq!((&a * &g).exact_div(&g).unwrap(), Some(a));
    }

    #[test]
    fn parse_print_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(Poly::parse(&text).unwrap(), a);
    }

    #[test]
    fn field_text_round_trip(f in field(2)) {
        prop_assert_eq!(VectorField::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn lie_derivative_is_a_derivation(f in field(2), a in poly_with(2, 4), b in poly_with(2, 4)) {
        let lhs = f.lie_derivative(&(&a * &b));
        let rhs = &(&a * &f.lie_derivative(&b)) + &(&b * &f.lie_derivative(&a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cofactor_identity(f in field(2), g in poly_with(2, 4)) {
        prop_assume!(!g.is_constant());
        if let CofactorResult::Invariant { cofactor } = invariance_cofactor(&f, &g).unwrap() {
            prop_assert!((&f.lie_derivative(&g) - &(&cofactor * &g)).is_zero());
        }
        // a field whose components are all multiples of g leaves g invariant
        let scaled = VectorField::from_components(f.components().clone().map(|p| &p * &g));
        prop_assert!(invariance_cofactor(&scaled, &g).unwrap().is_invariant());
    }

    #[test]
    fn hamiltonian_recovered(h in poly_with(3, 6)) {
        let h = &h - &Poly::constant(h.constant_term());
        prop_assume!(!h.is_zero());
        let res = hamiltonian_solve(&hamiltonian_field(&h));
        prop_assert_eq!(res.hamiltonian, Some(h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn extactic_basis_covariance(
        f in field(1),
        m in prop::array::uniform3(prop::array::uniform3(-3i64..=3)),
    ) {
        let basis = [x1(), x2(), x3()];
        let mat: Vec<Vec<Poly>> = m.iter().map(|r| r.iter().map(|&c| Poly::from_int(c)).collect()).collect();
        let det = poly_determinant(mat.clone());
        prop_assume!(!det.is_zero());
        let transformed: Vec<Poly> = mat
            .iter()
            .map(|row| row.iter().zip(&basis).fold(Poly::zero(), |acc, (c, b)| acc + c * b))
            .collect();
        let e = extactic(&f, &SubspaceBasis::new(basis.to_vec()).unwrap());
        let e2 = extactic(&f, &SubspaceBasis::new(transformed).unwrap());
        prop_assert_eq!(e2, &det * &e);
    }

    #[test]
    fn invariant_planes_divide_the_extactic(f in field(2), coeffs in prop::array::uniform3(-2i64..=2)) {
        let plane = Poly::from_terms((0..3).map(|i| {
            let mut e = [0; 4];
            e[i] = 1;
            (Monomial(e), int(coeffs[i]))
        }));
        prop_assume!(!plane.is_zero());
        let w = SubspaceBasis::new(vec![x1(), x2(), x3()]).unwrap();
        let e = extactic(&f, &w);
        if check_hyperplane(&f, &plane).unwrap().is_invariant() {
            prop_assert!(e.exact_div(&plane).unwrap().is_some());
        }
        // planted: a field multiplied by the plane leaves it invariant
        let planted = VectorField::from_components(f.components().clone().map(|p| &p * &plane));
        prop_assert!(check_hyperplane(&planted, &plane).unwrap().is_invariant());
        prop_assert!(extactic(&planted, &w).exact_div(&plane).unwrap().is_some());
    }

    #[test]
    fn parallel_enumeration_matches_brute_force(
        n in 2u32..=4,
        ks in prop::collection::btree_set(-6i64..=6, 1..=3),
        a_coeff in nonzero_rational(),
    ) {
        let ks: Vec<Rational> = ks.into_iter().take((n - 1) as usize).map(int).collect();
        let prod = ks.iter().fold(Poly::one(), |acc, k| acc * (x4() - Poly::constant(k.clone())));
        let a = x1().pow(n - 1).scale(&a_coeff);
        let f = VectorField::new(&a * &x2(), -(&a * &x1()), x4() * prod.clone(), -(x3() * prod));
        let report = enumerate_parallel(&f);
        prop_assert!(!report.indeterminate);
        let found: Vec<Rational> = report.planes.planes().unwrap().iter().map(|(k, _)| k.clone()).collect();
        // every k = p/q with small p, q, checked directly
        let mut brute = std::collections::BTreeSet::new();
        for p in -12i64..=12 {
            for q in 1i64..=4 {
                let k = rat(p, q);
                if check_hyperplane(&f, &(x4() - Poly::constant(k.clone()))).unwrap().is_invariant() {
                    brute.insert(k);
                }
            }
        }
        prop_assert_eq!(found.clone(), brute.into_iter().collect::<Vec<_>>());
        prop_assert!((found.len() as u32) < n);
    }

    #[test]
    fn type_n_meridian_bound(
        n in 1u32..=4,
        lines in prop::collection::vec((-3i64..=3, -3i64..=3), 3),
        b_coeff in nonzero_rational(),
        x3_factor in any::<bool>(),
    ) {
        let mut a = Poly::one();
        for (i, (p, q)) in lines.iter().take((n - 1) as usize).enumerate() {
            let l = if x3_factor && i == 0 { x3() } else { x1().scale(&int(*p)) + x2().scale(&int(*q)) };
            a = a * l;
        }
        prop_assume!(!a.is_zero());
        let b = x2().pow(n - 1).scale(&b_coeff);
        let f = build_type_n_s1s2(a, b, n).unwrap();
        let w = SubspaceBasis::new(vec![x1(), x2(), x3()]).unwrap();
        prop_assume!(!extactic(&f, &w).is_zero());
        if let PlaneSet::Planes(planes) = enumerate_pencil(&f, Pencil::X1X2) {
            let mut total = 0;
            for ((p, q), _) in &planes {
                let l = Pencil::X1X2.form(p, q);
                match multiplicity(&f, &w, &l).unwrap() {
                    Multiplicity::Finite(k) => total += k,
                    Multiplicity::Infinite => prop_assert!(false, "nonzero extactic"),
                }
            }
            prop_assert!(total <= 3 * n - 2, "total {} for n {}", total, n);
        }
    }
}
