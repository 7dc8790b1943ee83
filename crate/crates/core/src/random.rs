//! Seeded random rationals, polynomials and family instances.
//!
//! Numerators are uniform in `[-9, 9]` and denominators in `[1, 9]`; values
//! violating a precondition are resampled. Instance `i` of a run with seed `s`
//! uses a ChaCha8 generator seeded with `s + i` on a per-purpose stream, so
//! instances are independent of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_bigint::BigInt;

use crate::families::{
    CubicKolmS12, CubicKolmS21, Family, FamilyRecord, LinearS12, LinearS21, PseudoTypeNS21, QuadS12, QuadS21,
    TypeNS12,
};
use crate::poly::{Monomial, Poly, Var};
use crate::rational::{int, Rational};
use crate::vector_field::VectorField;

pub struct Sampler {
    rng: ChaCha8Rng,
    numer_max: i64,
    denom_max: i64,
}

/// All monomials of total degree `d`, ascending.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e1 in 0..=d {
        for e2 in 0..=d - e1 {
            for e3 in 0..=d - e1 - e2 {
                out.push(Monomial([e1, e2, e3, d - e1 - e2 - e3]));
            }
        }
    }
    out.sort();
    out
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), numer_max: 9, denom_max: 9 }
    }

    /// Generator for instance `index` of a run, on stream `stream`.
    pub fn for_instance(seed: u64, stream: u64, index: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
        rng.set_stream(stream);
        Sampler { rng, numer_max: 9, denom_max: 9 }
    }

    /// Narrows the numerator and denominator ranges.
    pub fn with_bounds(mut self, numer_max: i64, denom_max: i64) -> Sampler {
        assert!(numer_max >= 1 && denom_max >= 1);
        self.numer_max = numer_max;
        self.denom_max = denom_max;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.numer_max..=self.numer_max);
        let d = self.rng.gen_range(1..=self.denom_max);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != int(0) {
                return r;
            }
        }
    }

    /// A surface parameter, greater than one.
    pub fn param(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r > int(1) {
                return r;
            }
        }
    }

    /// `c0 + c1 x1 + ... + c4 x4` with every coefficient drawn.
    pub fn linear(&mut self) -> Poly {
        let mut p = Poly::constant(self.rational());
        for v in Var::ALL {
            p.add_term(Monomial::var(v), self.rational());
        }
        p
    }

    /// Homogeneous of degree `d`; each monomial is kept with probability one half.
    pub fn homogeneous(&mut self, d: u32) -> Poly {
        let mut p = Poly::zero();
        for m in monomials_of_degree(d) {
            if self.coin() {
                p.add_term(m, self.rational());
            }
        }
        p
    }

    pub fn nonzero_homogeneous(&mut self, d: u32) -> Poly {
        loop {
            let p = self.homogeneous(d);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Dense polynomial of degree at most `d`.
    pub fn poly(&mut self, d: u32) -> Poly {
        (0..=d).map(|k| self.homogeneous(k)).sum()
    }

    pub fn field(&mut self, d: u32) -> VectorField {
        VectorField::new(self.poly(d), self.poly(d), self.poly(d), self.poly(d))
    }

    /// A member of `family` that the classifier attributes to that family:
    /// degree-based families exclude Type-n / Pseudo Type-n fields and have
    /// their exact degree, linear families exclude Type-1 / Pseudo Type-1.
    pub fn record(&mut self, family: Family) -> FamilyRecord {
        loop {
            let rec = self.candidate(family);
            let field = rec.build().expect("sampled parameters satisfy the builder");
            let ok = match family {
                Family::LinearS12 => field.type_n().is_none(),
                Family::LinearS21 => field.pseudo_type_n().is_none(),
                Family::QuadS12 => field.degree() == Some(2) && field.type_n().is_none(),
                Family::CubicKolmS12 => field.degree() == Some(3) && field.type_n().is_none(),
                Family::QuadS21 => field.degree() == Some(2) && field.pseudo_type_n().is_none(),
                Family::CubicKolmS21 => field.degree() == Some(3) && field.pseudo_type_n().is_none(),
                Family::TypeNS12 => field.type_n().is_some(),
                Family::PseudoTypeNS21 => field.pseudo_type_n().is_some(),
            };
            if ok {
                return rec;
            }
        }
    }

    /// Type-n / Pseudo Type-n degree drawn from `1..=4`.
    fn degree_index(&mut self) -> u32 {
        1 + self.below(4)
    }

    fn candidate(&mut self, family: Family) -> FamilyRecord {
        let param = self.param();
        match family {
            Family::LinearS12 => {
                let (mut alpha, mut beta) = (self.rational(), self.rational());
                if self.coin() {
                    alpha = int(0);
                } else {
                    beta = int(0);
                }
                FamilyRecord::LinearS12(LinearS12 { param, alpha, beta })
            }
            Family::QuadS12 => FamilyRecord::QuadS12(QuadS12 {
                param,
                k3: self.rational(),
                k4: self.rational(),
                f: self.linear(),
                g: self.linear(),
            }),
            Family::CubicKolmS12 => FamilyRecord::CubicKolmS12(CubicKolmS12 {
                param,
                k33: self.rational(),
                k44: self.rational(),
                alpha: self.rational(),
                beta: self.rational(),
            }),
            Family::TypeNS12 => {
                let n = self.degree_index();
                FamilyRecord::TypeNS12(TypeNS12 {
                    param,
                    n,
                    a: self.nonzero_homogeneous(n - 1),
                    b: self.nonzero_homogeneous(n - 1),
                })
            }
            Family::LinearS21 => {
                let mut coef = [self.rational(), self.rational(), self.rational()];
                // P1, P2, P3 vanish when (α,β), (α,γ), (β,γ) vanish respectively
                let pairs = [(0, 1), (0, 2), (1, 2)];
                let (i, j) = pairs[self.below(3) as usize];
                coef[i] = int(0);
                coef[j] = int(0);
                let [alpha, beta, gamma] = coef;
                FamilyRecord::LinearS21(LinearS21 { param, alpha, beta, gamma })
            }
            Family::QuadS21 => FamilyRecord::QuadS21(
                QuadS21 { param, c: self.rational(), f: self.linear(), g: self.linear(), h: self.linear() }
                    .canonical(),
            ),
            Family::CubicKolmS21 => FamilyRecord::CubicKolmS21(CubicKolmS21 {
                param,
                c: self.rational(),
                alpha: self.rational(),
                beta: self.rational(),
                gamma: self.rational(),
            }),
            Family::PseudoTypeNS21 => {
                let n = self.degree_index();
                FamilyRecord::PseudoTypeNS21(
                    PseudoTypeNS21 {
                        param,
                        n,
                        a: self.homogeneous(n - 1),
                        b: self.homogeneous(n - 1),
                        c: self.homogeneous(n - 1),
                    }
                    .canonical(),
                )
            }
        }
    }
}

/// Stable 64-bit stream id for a purpose label (FNV-1a).
pub fn stream_id(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::classify;

    #[test]
    fn deterministic_per_seed() {
        let a: Vec<Rational> = {
            let mut s = Sampler::new(7);
            (0..20).map(|_| s.rational()).collect()
        };
        let b: Vec<Rational> = {
            let mut s = Sampler::new(7);
            (0..20).map(|_| s.rational()).collect()
        };
        assert_eq!(a, b);
        let mut s = Sampler::for_instance(7, stream_id("x"), 3);
        let mut t = Sampler::for_instance(7, stream_id("x"), 3);
        assert_eq!(s.linear(), t.linear());
    }

    #[test]
    fn ranges() {
        let mut s = Sampler::new(1);
        for _ in 0..500 {
            let r = s.rational();
            assert!(r.numer().magnitude() <= &9u32.into());
            assert!(r.denom() <= &BigInt::from(9));
            assert!(s.param() > int(1));
        }
        assert_eq!(monomials_of_degree(2).len(), 10);
        assert_eq!(monomials_of_degree(0), vec![Monomial::ONE]);
    }

    #[test]
    fn records_classify_to_their_family() {
        for family in Family::ALL {
            for i in 0..10 {
                let mut s = Sampler::for_instance(11, stream_id(family.tag()), i);
                let rec = s.record(family);
                let field = rec.build().unwrap();
                let got = classify(&field, &rec.surface().unwrap()).unwrap();
                assert_eq!(got, rec, "{family} instance {i}");
            }
        }
    }
}
