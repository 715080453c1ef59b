//! Lattice geometry in the plane: polyhedra, integer hulls, two-variable integer linear
//! programming, lines through thin polygons and line-arrangement cells.

mod arrangement;
mod hull;
mod ilp;
mod polyhedron;
mod thin;

pub use arrangement::{arrangement_cells, Cell};
pub use hull::{convex_hull, integer_hull, integer_hull_bounded, polygon_polyhedron, LatticeLine};
pub use ilp::{ilp_min_linear, ilp_point, orthant_pieces};
pub use polyhedron::{double_area, Polyhedron2, RecessionCone, Row};
pub use thin::line_in_thin_polytope;

pub(crate) use polyhedron::primitive_dir;
