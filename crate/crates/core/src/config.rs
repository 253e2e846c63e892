//! Numerical tolerances shared by every module.
//!
//! Acceptance checks compare against these values rather than against
//! printed precision.

/// Tolerance set used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Constraint satisfaction for LP solutions and cone membership.
    pub feas: f64,
    /// Equality of computed quantities (duplicates, symmetry checks).
    pub eq: f64,
    /// Agreement of reported values with golden constants.
    pub report: f64,
}

pub const TOL: Tolerances = Tolerances {
    feas: 1e-9,
    eq: 1e-9,
    report: 1e-7,
};

/// Pivot threshold inside the simplex tableau.
pub(crate) const PIVOT_EPS: f64 = 1e-11;

/// Largest dimension accepted by the double-description routine for cones.
pub const MAX_CONE_DIM: usize = 12;

/// Largest dimension accepted for polytopal unit balls.
pub const MAX_BALL_DIM: usize = 8;

/// `Linf` vertex enumeration produces `2^dim` points.
pub const MAX_LINF_VERTEX_DIM: usize = 20;

/// Upper limit on stored polytope vertices.
pub const MAX_POLYTOPE_VERTICES: usize = 512;

/// Upper limit on enumerated dual-vertex pairs in tensor norm evaluation.
pub const MAX_VERTEX_PAIRS: usize = 1 << 22;

/// Upper limit on LP columns generated from vertex products.
pub const MAX_LP_COLUMNS: usize = 20_000;

/// Upper limit on product generators in a minimal composite.
pub const MAX_COMPOSITE_GENERATORS: usize = 10_000;

/// Largest matrix size `n` (and `m`) for the Hermitian tensor routines.
pub const MAX_QUANTUM_DIM: usize = 8;

/// Largest dimension accepted for any space descriptor.
pub const MAX_SPACE_DIM: usize = 1024;
