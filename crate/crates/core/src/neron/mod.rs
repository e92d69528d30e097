//! Elliptic curves over Q and quadratic fields, Tate's algorithm, Néron
//! component groups and the component of a point.
mod component;
mod curve;
mod kodaira;
mod tate;

pub use component::{reduction_component, ComponentIndex};
pub use curve::{CurvePoint, EllipticCurve, TORSION_SEARCH_BOUND};
pub use kodaira::{
    component_group_from_matrix, fiber_geometry, ComponentGroup, FiberGeometry, KodairaType,
};
pub use tate::{bad_primes, bad_reduction, tate, ReductionData};
