//! Finite commutative differential graded algebra models.

pub mod bridge;
pub mod mc;
pub mod model;

pub use bridge::{surface_mc_data, surface_quadric, surface_rep_bridge, Periods};
pub use mc::{ext_class_rep, is_exact, is_exact_field, mc_check, Exactness, FormField, McData};
pub use model::{
    exterior, exterior_model, heisenberg, mapping_torus, surface, trivial_rank2, BasisSymbol, CdgaModel, Element,
    Twist,
};
