//! The jet group `G_{k,l}`: Levy splitting, exponential coordinates,
//! brackets, the canonical section and closed-form charts.

pub mod charts;
pub mod levy;
pub mod polyvector;

pub use charts::{chart_g2l, chart_g31, e41_closed_form, G2l, G31};
pub use levy::{
    alpha_cocycle, dilation_conjugate, dilation_homotopy, exp_jet, log_jet, section_sk, LevyCoords,
};
pub use polyvector::{layer_basis, PolyVector};
