//! Dense real linear algebra, a simplex LP solver, and polyhedral conversions.

mod eig;
mod lp;
mod matrix;
pub mod polyhedral;

pub use eig::{nuclear_norm, singular_values, spectral_norm, svd, sym_eig, sym_eigvals, Svd, SymEig};
pub use lp::{lp_solve, LpProblem, LpSolution};
pub use matrix::{axpy, dot, norm2, rank, Matrix};
pub use polyhedral::{cone_dualize, polytope_dual_ball, PolyhedralConeRep};
