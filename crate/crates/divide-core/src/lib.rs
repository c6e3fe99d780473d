//! Invariants of generic plane curves and of the knots associated with divides.
//!
//! A divide is the image of a generic relative immersion of a compact
//! 1-manifold into the unit disc: endpoints on the boundary circle, only
//! transversal double points inside. Divides with a single non-closed
//! component carry a knot, and this crate computes the degree-2 Vassiliev
//! (Casson) invariant of that knot along two independent routes:
//!
//! * a closed formula in terms of the Arnold invariants `St`, `J⁺`, `J⁻`
//!   of pieces of the divide ([`divide::casson_formula`]), and
//! * the Alexander polynomial of the planar diagram obtained by doubling
//!   the divide ([`hirasawa::build_diagram`] + [`alexander`]).
//!
//! Everything is exact: coordinates are arbitrary-precision rationals and
//! all geometric predicates are decided without rounding.

pub mod alexander;
pub mod arnold;
pub mod corpus;
pub mod curve;
pub mod diagram;
pub mod divide;
pub mod error;
pub mod exec;
pub mod gauss;
pub mod num;
pub mod diagonal;
pub mod formats;
pub mod hirasawa;
pub mod perestroika;
pub mod svg;
pub mod verify;

pub use crate::curve::{CurveKind, DoublePoint, GenericityReport, PLCurve};
pub use crate::divide::Divide;
pub use crate::error::{Error, Result};
pub use crate::num::{frac, rat, Point, Rat};
