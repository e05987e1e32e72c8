//! Exact rational polynomial arithmetic over named families of vector variables.
//!
//! Everything else in the crate is built on [`Poly`]: bracket coefficients, light-cone
//! mode data, kernels. Values are immutable once built and freely shareable across threads.

pub mod linalg;
pub mod poly;
pub mod rational;

pub use poly::{Family, Monomial, Poly, Substitution, Var, VarSpace};
pub use rational::Rational;

use crate::error::Result;

pub fn poly_add(p: &Poly, q: &Poly) -> Result<Poly> {
    p.try_add(q)
}

pub fn poly_mul(p: &Poly, q: &Poly) -> Result<Poly> {
    p.try_mul(q)
}

pub fn poly_diff(p: &Poly, family: Family, index: usize) -> Result<Poly> {
    p.diff(Var::new(family, index))
}

pub fn poly_subst(p: &Poly, assignment: &Substitution) -> Result<Poly> {
    p.subst(assignment)
}

pub fn laplacian(p: &Poly, family: Family) -> Poly {
    p.laplacian(family)
}
