//! Essential self-intersections and connectors of primitive geodesics on the
//! pair of pants, and their generalization to quasi-Fuchsian deformations.

pub mod config;
pub mod connector;
pub mod error;
pub mod esi;
pub mod farey;
pub mod frame;
pub mod geodesic;
pub mod isometry;
pub mod labeling;
pub mod records;
pub mod svg;
pub mod tol;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use farey::{continued_fraction, farey_parents, primitive_word, PrimitiveWord, RationalLabel};
pub use frame::{build_frame, GroupFrame};
pub use geodesic::{Geodesic, PlanePoint, SpacePoint};
pub use isometry::{BoundaryPoint, IsometryClass, MobiusMap, C64};
pub use words::{GroupWord, HalfTurnWord, Letter, Seam};
