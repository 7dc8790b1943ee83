//! Randomized property suites over the family theorems.
//!
//! Each suite draws `instances` seeded instances (instance `i` uses seed
//! `seed + i` on the suite's own stream), checks one statement on each, and
//! keeps the first few counterexamples.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{classify, Family, FamilyRecord, TypeNS12};
use crate::hypersurface::{invariant_homogeneous_fields, Hypersurface};
use crate::integrability::{
    darboux_exponents, hamiltonian_solve, independence_rank, known_first_integrals, verify_first_integral,
    DarbouxProduct,
};
use crate::poly::vars::*;
use crate::poly::{Poly, Var};
use crate::random::{stream_id, Sampler};
use crate::rational::{int, rat, Rational};
use crate::vector_field::VectorField;

/// Counterexamples kept per suite.
const MAX_COUNTEREXAMPLES: usize = 5;

pub const SUITES: [&str; 15] = [
    "quad-s12-cofactor",
    "cubic-kolm-s12-cofactor",
    "type-n-s12-cofactor",
    "quad-s21-cofactor",
    "cubic-kolm-s21-cofactor",
    "pseudo-type-n-s21-cofactor",
    "classify-roundtrip",
    "no-lotka-volterra",
    "no-hamiltonian",
    "hamiltonian-type1",
    "darboux",
    "first-integrals",
    "degree-window",
    "no-type-n-s21",
    "no-pseudo-type-n-s12",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub index: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub suites: Vec<SuiteOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::ok)
    }
}

type Check = fn(&mut Sampler) -> std::result::Result<(), String>;

fn check_for(name: &str) -> Option<Check> {
    Some(match name {
        "quad-s12-cofactor" => |s| cofactor_matches(s, Family::QuadS12),
        "cubic-kolm-s12-cofactor" => |s| cofactor_matches(s, Family::CubicKolmS12),
        "type-n-s12-cofactor" => |s| cofactor_matches(s, Family::TypeNS12),
        "quad-s21-cofactor" => |s| cofactor_matches(s, Family::QuadS21),
        "cubic-kolm-s21-cofactor" => |s| cofactor_matches(s, Family::CubicKolmS21),
        "pseudo-type-n-s21-cofactor" => |s| cofactor_matches(s, Family::PseudoTypeNS21),
        "classify-roundtrip" => classify_roundtrip,
        "no-lotka-volterra" => no_lotka_volterra,
        "no-hamiltonian" => no_hamiltonian,
        "hamiltonian-type1" => hamiltonian_type1,
        "darboux" => darboux,
        "first-integrals" => first_integrals,
        "degree-window" => degree_window,
        "no-type-n-s21" => no_type_n_s21,
        "no-pseudo-type-n-s12" => no_pseudo_type_n_s12,
        _ => return None,
    })
}

/// Runs one named suite.
pub fn run_suite(name: &str, seed: u64, instances: usize) -> Result<SuiteOutcome> {
    if instances == 0 {
        return Err(Error::InvalidParameter("at least one instance is required".into()));
    }
    let check = check_for(name).ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{name}`")))?;
    let stream = stream_id(name);
    let results: Vec<(u64, std::result::Result<(), String>)> = (0..instances as u64)
        .into_par_iter()
        .map(|i| (i, check(&mut Sampler::for_instance(seed, stream, i))))
        .collect();
    let passed = results.iter().filter(|(_, r)| r.is_ok()).count();
    let counterexamples = results
        .into_iter()
        .filter_map(|(index, r)| r.err().map(|detail| Counterexample { index, detail }))
        .take(MAX_COUNTEREXAMPLES)
        .collect();
    Ok(SuiteOutcome { name: name.to_string(), instances, passed, counterexamples })
}

/// Runs the named suites, or all of them for `"all"`.
pub fn property_suite(names: &[&str], seed: u64, instances: usize) -> Result<SuiteReport> {
    let selected: Vec<&str> = if names.contains(&"all") { SUITES.to_vec() } else { names.to_vec() };
    let suites = selected.iter().map(|n| run_suite(n, seed, instances)).collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport { seed, suites })
}

fn describe(rec: &FamilyRecord) -> String {
    let params: Vec<String> = rec.params().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} [{}]", rec.family(), params.join(", "))
}

fn built(rec: &FamilyRecord) -> std::result::Result<(VectorField, Hypersurface), String> {
    let field = rec.build().map_err(|e| format!("{}: {e}", describe(rec)))?;
    let surface = rec.surface().map_err(|e| e.to_string())?;
    Ok((field, surface))
}

fn cofactor_matches(s: &mut Sampler, family: Family) -> std::result::Result<(), String> {
    let rec = s.record(family);
    let (field, surface) = built(&rec)?;
    match surface.cofactor(&field).into_cofactor() {
        Some(k) if k == rec.cofactor() => Ok(()),
        Some(k) => Err(format!("{}: cofactor {k}, expected {}", describe(&rec), rec.cofactor())),
        None => Err(format!("{}: surface not invariant", describe(&rec))),
    }
}

fn classify_roundtrip(s: &mut Sampler) -> std::result::Result<(), String> {
    for family in Family::ALL {
        let rec = s.record(family);
        let (field, surface) = built(&rec)?;
        match classify(&field, &surface) {
            Ok(got) if got == rec && got.build().ok().as_ref() == Some(&field) => {}
            Ok(got) => return Err(format!("{} classified as {}", describe(&rec), describe(&got))),
            Err(e) => return Err(format!("{}: {e}", describe(&rec))),
        }
    }
    Ok(())
}

fn no_lotka_volterra(s: &mut Sampler) -> std::result::Result<(), String> {
    for family in [Family::QuadS12, Family::QuadS21] {
        let rec = s.record(family);
        let (field, _) = built(&rec)?;
        if field.predicates().lotka_volterra {
            return Err(format!("{} is Lotka-Volterra", describe(&rec)));
        }
    }
    Ok(())
}

fn no_hamiltonian(s: &mut Sampler) -> std::result::Result<(), String> {
    for family in
        [Family::QuadS12, Family::CubicKolmS12, Family::QuadS21, Family::CubicKolmS21, Family::PseudoTypeNS21]
    {
        let rec = s.record(family);
        let (field, _) = built(&rec)?;
        if let Some(h) = hamiltonian_solve(&field).hamiltonian {
            return Err(format!("{} has Hamiltonian {h}", describe(&rec)));
        }
    }
    Ok(())
}

fn hamiltonian_type1(s: &mut Sampler) -> std::result::Result<(), String> {
    let (a, b) = (s.nonzero(), s.nonzero());
    let rec = TypeNS12 { param: s.param(), n: 1, a: Poly::constant(a.clone()), b: Poly::constant(b.clone()) };
    let field = rec.build().map_err(|e| e.to_string())?;
    let half = rat(-1, 2);
    let expected =
        (x1().pow(2) + x2().pow(2)).scale(&(&half * &a)) + (x3().pow(2) + x4().pow(2)).scale(&(&half * &b));
    match hamiltonian_solve(&field).hamiltonian {
        Some(h) if h == expected => Ok(()),
        other => Err(format!("A={a}, B={b}: got {other:?}, expected {expected}")),
    }
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    a.len() == b.len()
        && (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
        && a.iter().any(|x| *x != int(0))
}

fn darboux(s: &mut Sampler) -> std::result::Result<(), String> {
    let pick = s.below(3);
    let (rec, factors, expected) = loop {
        match pick {
            0 | 1 => {
                let family = if pick == 0 { Family::QuadS12 } else { Family::CubicKolmS12 };
                let rec = s.record(family);
                if rec.cofactor().is_zero() {
                    continue;
                }
                let g = rec.surface().map_err(|e| e.to_string())?.poly().clone();
                break (rec, vec![g, x1().pow(2) + x2().pow(2)], vec![int(1), int(-2)]);
            }
            _ => {
                let rec = s.record(Family::CubicKolmS21);
                let FamilyRecord::CubicKolmS21(p) = &rec else { unreachable!() };
                let zero = int(0);
                if p.c == zero || (p.alpha == zero && p.beta == zero && p.gamma == zero) {
                    continue;
                }
                let last = -(&p.gamma - &p.beta + &p.alpha) / int(2);
                let expected = vec![p.gamma.clone(), -p.beta.clone(), p.alpha.clone(), last];
                let sphere = x1().pow(2) + x2().pow(2) + x3().pow(2);
                break (rec.clone(), vec![x1(), x2(), x3(), sphere], expected);
            }
        }
    };
    let (field, _) = built(&rec)?;
    let mut pairs = Vec::new();
    for f in &factors {
        let k = crate::hypersurface::invariance_cofactor(&field, f)
            .map_err(|e| e.to_string())?
            .into_cofactor()
            .ok_or_else(|| format!("{}: {f} not invariant", describe(&rec)))?;
        pairs.push((f.clone(), k));
    }
    let lambda = darboux_exponents(&pairs)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{}: no exponents", describe(&rec)))?;
    if !proportional(&lambda, &expected) {
        return Err(format!("{}: exponents {lambda:?}, expected multiple of {expected:?}", describe(&rec)));
    }
    let product = DarbouxProduct::from_exponents(&factors, &lambda);
    match verify_first_integral(&field, &product) {
        Ok(true) => Ok(()),
        other => Err(format!("{}: verification {other:?}", describe(&rec))),
    }
}

fn first_integrals(s: &mut Sampler) -> std::result::Result<(), String> {
    let family = if s.coin() { Family::TypeNS12 } else { Family::PseudoTypeNS21 };
    let rec = s.record(family);
    let (field, surface) = built(&rec)?;
    let integrals = known_first_integrals(&field, &rec).map_err(|e| format!("{}: {e}", describe(&rec)))?;
    if integrals.iter().any(|h| !field.lie_derivative(h).is_zero()) {
        return Err(format!("{}: integral not conserved", describe(&rec)));
    }
    let seed = u64::from(s.below(1 << 16));
    let rank = independence_rank(&integrals, &surface, 8, seed);
    if rank != 2 {
        return Err(format!("{}: independence rank {rank}", describe(&rec)));
    }
    Ok(())
}

fn degree_window(s: &mut Sampler) -> std::result::Result<(), String> {
    let m = s.below(3);
    let n = (m + s.below(5)).saturating_sub(1);
    let surface = Hypersurface::s1xs2(s.param()).map_err(|e| e.to_string())?;
    for (field, k) in invariant_homogeneous_fields(&surface, [Some(m), Some(m), Some(n), Some(n)]) {
        if !k.is_zero() {
            return Err(format!("m={m}, n={n}, a={}: {field} has cofactor {k}", surface.param()));
        }
    }
    Ok(())
}

fn no_type_n_s21(s: &mut Sampler) -> std::result::Result<(), String> {
    let n = 1 + s.below(3);
    let surface = Hypersurface::s2xs1(s.param()).map_err(|e| e.to_string())?;
    for (field, _) in invariant_homogeneous_fields(&surface, [Some(n); 4]) {
        if !field.component(Var::X4).is_zero() {
            return Err(format!("n={n}, b={}: invariant field {field} has P4 != 0", surface.param()));
        }
    }
    Ok(())
}

fn no_pseudo_type_n_s12(s: &mut Sampler) -> std::result::Result<(), String> {
    let n = 1 + s.below(3);
    let surface = Hypersurface::s1xs2(s.param()).map_err(|e| e.to_string())?;
    let basis = invariant_homogeneous_fields(&surface, [Some(n), Some(n), Some(n), None]);
    // a generic member has P_i != 0 for every i that is nonzero somewhere in the basis
    let forced_zero = (0..3).any(|i| basis.iter().all(|(f, _)| f.components()[i].is_zero()));
    if forced_zero {
        Ok(())
    } else {
        Err(format!("n={n}, a={}: invariant space admits Pseudo Type-n members", surface.param()))
    }
}
