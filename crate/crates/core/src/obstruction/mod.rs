//! Representations into jet groups and the obstruction to lifting them one
//! order higher.

pub mod cochain;
pub mod lifting;
pub mod representation;

pub use cochain::{cochain_delta1, cochain_delta_eval, layer_act};
pub use lifting::{
    adjust_images, enumerate_lifts, kernel_element, lift_difference, lift_obstruction,
    lift_obstruction_with, relator_defects, twisted_h1, ExtensionSpace, H1Data, LiftReport,
    Section,
};
pub use representation::{
    conjugate_rep, transport_rep, validate_rep, Representation, Transport, ValidationReport,
};
