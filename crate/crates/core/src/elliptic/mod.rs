//! Weierstrass models over Q, reduction types, group law and formal logarithms.

mod formal;
mod model;
mod point;
mod registry;
mod tate;

pub use formal::{formal_log, formal_log_coeffs, formal_w, invariant_differential};
pub use model::{Invariants, WeierstrassModel};
pub use point::{point_add, point_mul, point_neg, EllPoint, FieldElem};
pub use registry::{
    label_conductor, reference_curve, registry_entries, registry_from_json, registry_labels, registry_to_json,
    CurveEntry, CurveRecord, InertialTag, SEVEN_CURVES,
};
pub use tate::{tate_algorithm, tate_generic, Kodaira, ReductionClass, ReductionData};
