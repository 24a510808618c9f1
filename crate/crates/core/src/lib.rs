//! Physical degrees of freedom for the complete polynomial families
//! `P_{r-k}Λ^k` on a triangle.
//!
//! The degrees of freedom are *weights*: integrals of a `k`-form over the
//! `k`-cells of a small cellular complex built inside the triangle. Vertices
//! are the principal lattice `L_r(T)`, two-dimensional cells are set
//! differences of homothetic triangles `τ_ξ(T)` anchored at a point set
//! `Γ_r`, and edges are the lattice edges on the cell boundaries. All
//! constructions and the unisolvence certificates are exact; only
//! conditioning and smooth-function quadrature use floating point.
//!
//! ```
//! use feec_weights::{build_complex, vandermonde, BasisKind, Triangle};
//!
//! let complex = build_complex(&Triangle::unit_right(), 4).unwrap();
//! assert_eq!(complex.counts(), [15, 20, 6]);
//! let v = vandermonde(&complex, 1, BasisKind::Barycentric).unwrap();
//! assert_eq!(v.rank(), 20);
//! ```

pub mod barypoly;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod interp;
pub mod linalg;
pub mod quadrature;
pub mod rational;
pub mod weights;

pub use barypoly::{affine_pullback, integrate_monomial_over_triangle, BaryPoint, BaryPolynomial, MultiIndex};
pub use error::{Error, Result};
pub use forms::{exterior_derivative, monomial_basis, space_dim, BasisKind, PolyForm, SpaceDescriptor};
pub use geometry::{
    build_cells, build_complex, certify_poised, principal_lattice, render_svg, small_simplices, tau_map, AffineMap,
    Cell, DofComplex, FaceCell, GammaSet, Point2, Segment, Triangle,
};
pub use interp::{
    check_commuting, convergence_experiment, interpolate, verify_all, ConvergenceTable, ExperimentConfig,
    Interpolant, Interpolator, NormEstimate, VerifyReport,
};
pub use linalg::{cond2, RationalMatrix};
pub use rational::{format_rational, parse_rational, Q};
pub use weights::{
    condition_table, de_rham_matrix, derivative_matrix, vandermonde, weight, weight_numeric, FormField, WeightMatrix,
};
