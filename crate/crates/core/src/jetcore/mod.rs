//! Jets, scalars and the exact linear algebra underneath everything else.

mod fast;
pub mod jet;
pub mod linalg;
pub mod monomial;
pub mod scalar;

pub use jet::{JetDiffeo, JetMap};
pub use linalg::{AffineSolution, Matrix};
pub use monomial::MultiIndex;
pub use scalar::{q, FieldKind, Rational, Scalar};
