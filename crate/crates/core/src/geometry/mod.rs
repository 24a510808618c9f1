//! The reference triangle, lattices, the maps `τ_ξ` and `z_α`, the point
//! sets `Γ_r`, and the cell complex built from them.

pub mod cells;
pub mod complex;
pub mod gamma;
pub mod homothetic;
pub mod lattice;
pub mod svg;
mod triangle;

pub use cells::{build_cells, build_cells_with, overlap_area, Cell, FaceCell, Segment};
pub use complex::{build_complex, DofComplex};
pub use gamma::{certify_poised, tau_bary, GammaSet};
pub use homothetic::{HomotheticTriangle, SignedTriangles};
pub use lattice::{lattice_coords, principal_lattice, small_simplices, tiles, unit_edges, Tile};
pub use svg::render_svg;
pub use triangle::{orient, AffineMap, Point2, Triangle};

/// `τ_ξ` on the plane of `tri`.
pub fn tau_map(tri: &Triangle, xi: &crate::barypoly::BaryPoint) -> AffineMap {
    AffineMap::tau(tri, xi)
}
