//! Fixed-step RK4 integration of polynomial fields and drift monitoring.

use std::f64::consts::TAU;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::hypersurface::{Hypersurface, SurfaceKind};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::vector_field::VectorField;

/// A polynomial flattened for repeated float evaluation; terms are kept in
/// graded-lex descending order so sums are reproducible.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    terms: Vec<([i32; 4], f64)>,
}

impl CompiledPoly {
    pub fn new(p: &Poly) -> CompiledPoly {
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| {
                let e = m.exponents().map(|x| x as i32);
                (e, c.to_f64().expect("finite coefficient"))
            })
            .collect();
        CompiledPoly { terms }
    }

    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        let mut sum = 0.0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for i in 0..4 {
                if e[i] != 0 {
                    t *= x[i].powi(e[i]);
                }
            }
            sum += t;
        }
        sum
    }
}

#[derive(Clone, Debug)]
pub struct CompiledField {
    components: [CompiledPoly; 4],
}

impl CompiledField {
    pub fn new(field: &VectorField) -> CompiledField {
        let c = field.components();
        CompiledField { components: [0, 1, 2, 3].map(|i| CompiledPoly::new(&c[i])) }
    }

    pub fn eval(&self, x: &[f64; 4]) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.components[i].eval(x))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 4]>,
    pub step: f64,
}

impl Trajectory {
    pub fn last(&self) -> &[f64; 4] {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Point on the surface for angles `(θ, α, β)` given in turns.
///
/// S¹×S²: `u = cos 2πα`, `x3 = sin 2πα cos 2πβ`, `x4 = sin 2πα sin 2πβ`,
/// `r = √(a² + u)`, point `(r cos 2πθ, r sin 2πθ, x3, x4)`.
///
/// S²×S¹: `ρ = √(b² + cos 2πβ)`, `(x1, x2, x3) = ρ (cos 2πα cos 2πθ,
/// cos 2πα sin 2πθ, sin 2πα)`, `x4 = sin 2πβ`.
pub fn sample_point(surface: &Hypersurface, angles: &[Rational; 3]) -> [f64; 4] {
    let [theta, alpha, beta] = angles.clone().map(|r| r.to_f64().expect("finite angle") * TAU);
    let p = surface.param().to_f64().expect("finite parameter");
    match surface.kind() {
        SurfaceKind::S1xS2 => {
            let u = alpha.cos();
            let r = (p * p + u).sqrt();
            [r * theta.cos(), r * theta.sin(), alpha.sin() * beta.cos(), alpha.sin() * beta.sin()]
        }
        SurfaceKind::S2xS1 => {
            let rho = (p * p + beta.cos()).sqrt();
            [rho * alpha.cos() * theta.cos(), rho * alpha.cos() * theta.sin(), rho * alpha.sin(), beta.sin()]
        }
    }
}

fn axpy(x: &[f64; 4], h: f64, k: &[f64; 4]) -> [f64; 4] {
    [0, 1, 2, 3].map(|i| x[i] + h * k[i])
}

/// Classical fourth-order Runge-Kutta with `round(t_end / dt)` fixed steps.
pub fn integrate_rk4(field: &VectorField, x0: [f64; 4], dt: f64, t_end: f64) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite() && t_end >= dt && t_end.is_finite()) {
        return Err(Error::BadStep { dt, t_end });
    }
    let f = CompiledField::new(field);
    let steps = (t_end / dt).round() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(0.0);
    states.push(x0);
    let mut x = x0;
    for i in 1..=steps {
        let k1 = f.eval(&x);
        let k2 = f.eval(&axpy(&x, dt / 2.0, &k1));
        let k3 = f.eval(&axpy(&x, dt / 2.0, &k2));
        let k4 = f.eval(&axpy(&x, dt, &k3));
        x = [0, 1, 2, 3].map(|j| x[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { last_valid_index: i - 1 });
        }
        times.push(i as f64 * dt);
        states.push(x);
    }
    Ok(Trajectory { times, states, step: dt })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantityDrift {
    pub name: String,
    pub initial: f64,
    /// `max_t |q(x(t)) - q(x(0))|`
    pub max_drift: f64,
    pub final_drift: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    pub quantities: Vec<QuantityDrift>,
}

impl ConservationReport {
    pub fn max_drift(&self) -> f64 {
        self.quantities.iter().map(|q| q.max_drift).fold(0.0, f64::max)
    }
}

pub fn conservation_report(traj: &Trajectory, quantities: &[(String, Poly)]) -> ConservationReport {
    let quantities = quantities
        .iter()
        .map(|(name, p)| {
            let q = CompiledPoly::new(p);
            let initial = q.eval(&traj.states[0]);
            let drifts: Vec<f64> = traj.states.iter().map(|x| (q.eval(x) - initial).abs()).collect();
            QuantityDrift {
                name: name.clone(),
                initial,
                max_drift: drifts.iter().copied().fold(0.0, f64::max),
                final_drift: *drifts.last().expect("nonempty"),
            }
        })
        .collect();
    ConservationReport { quantities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn field(s: &str) -> VectorField {
        VectorField::parse(s).unwrap()
    }

    #[test]
    fn sample_points_lie_on_surfaces() {
        let s = Hypersurface::s1xs2(int(2)).unwrap();
        let pt = sample_point(&s, &[int(0), int(0), int(0)]);
        assert!((pt[0] - 5f64.sqrt()).abs() < 1e-15 && pt[1..].iter().all(|v| v.abs() < 1e-15));
        let pt = sample_point(&s, &[int(0), rat(1, 4), rat(1, 8)]);
        assert!((pt[0] - 2.0).abs() < 1e-12);
        assert!((pt[2] * pt[2] + pt[3] * pt[3] - 1.0).abs() < 1e-12);
        let t = Hypersurface::s2xs1(int(2)).unwrap();
        let pt = sample_point(&t, &[int(0), int(0), int(0)]);
        assert!((pt[0] - 5f64.sqrt()).abs() < 1e-15);
        for surface in [s, t, Hypersurface::s2xs1(rat(7, 3)).unwrap()] {
            let g = CompiledPoly::new(surface.poly());
            for (i, j, k) in [(1, 3, 5), (2, 7, 1), (5, 2, 9)] {
                let pt = sample_point(&surface, &[rat(i, 11), rat(j, 13), rat(k, 17)]);
                assert!(g.eval(&pt).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn zero_field_is_constant() {
        let tr = integrate_rk4(&VectorField::zero(), [1.0, 2.0, 3.0, 4.0], 0.1, 1.0).unwrap();
        assert_eq!(tr.states.len(), 11);
        assert!(tr.states.iter().all(|x| *x == [1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn rotation_half_turn() {
        let rot = field("x2; -x1; x4; -x3");
        let tr = integrate_rk4(&rot, [1.0, 0.0, 0.0, 0.0], 1e-3, std::f64::consts::PI).unwrap();
        // round(π / 1e-3) steps stop at t = 3.142, not π; compare with the exact rotation there
        let t = *tr.times.last().unwrap();
        let x = tr.last();
        assert!((x[0] - t.cos()).abs() < 1e-9 && (x[1] + t.sin()).abs() < 1e-9);
        assert!((x[0] + 1.0).abs() < 1e-6);
    }

    #[test]
    fn step_validation() {
        let rot = field("x2; -x1; x4; -x3");
        assert!(matches!(integrate_rk4(&rot, [0.0; 4], 0.0, 1.0), Err(Error::BadStep { .. })));
        assert!(matches!(integrate_rk4(&rot, [0.0; 4], 0.5, 0.1), Err(Error::BadStep { .. })));
        let blow = field("x1^2; 0; 0; 0");
        assert!(matches!(
            integrate_rk4(&blow, [1.0, 0.0, 0.0, 0.0], 0.1, 100.0),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn drift_relative_to_start() {
        let rot = field("x2; -x1; x4; -x3");
        let tr = integrate_rk4(&rot, [1.0, 0.0, 0.5, 0.0], 1e-3, 10.0).unwrap();
        let r2 = Poly::parse("x1^2 + x2^2").unwrap();
        let rep = conservation_report(&tr, &[("r2".into(), r2)]);
        assert!(rep.quantities[0].max_drift <= 1e-10);
        let off = Hypersurface::s1xs2(int(2)).unwrap().poly().clone();
        let tr = integrate_rk4(&rot, [2.0, 0.0, 0.5, 0.0], 1e-3, 1.0).unwrap();
        let rep = conservation_report(&tr, &[("G".into(), off)]);
        assert!((rep.quantities[0].initial - (-0.75)).abs() < 1e-15);
        assert!(rep.quantities[0].max_drift < 1e-10);
    }

    #[test]
    fn deterministic() {
        let f = field("x1*x2 - x3; x4^2; -x1; x2*x3");
        let a = integrate_rk4(&f, [0.1, 0.2, 0.3, 0.4], 1e-2, 1.0).unwrap();
        let b = integrate_rk4(&f, [0.1, 0.2, 0.3, 0.4], 1e-2, 1.0).unwrap();
        assert_eq!(a, b);
    }
}
