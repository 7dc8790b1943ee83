//! Exact polynomial vector fields on the hypersurfaces S¹×S² and S²×S¹ of R⁴:
//! invariance tests, the characterized families, first integrals, extactic
//! polynomials and a fixed-step integrator.

pub mod error;
pub mod extactic;
pub mod families;
pub mod hypersurface;
pub mod integrability;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod random;
pub mod rational;
pub mod suite;
pub mod vector_field;

pub use error::{Error, Result};
pub use hypersurface::{CofactorResult, Hypersurface, SurfaceKind};
pub use poly::{Monomial, Poly, Var};
pub use rational::Rational;
pub use vector_field::VectorField;
