//! Boundary algebra of the unilateral shift on the half-lattice.
//!
//! * [`algebra`]: exact symbolic elements and their products.
//! * [`cohomology`]: site functionals, boundary cocycles, Chevalley–Eilenberg
//!   differentials and central extensions.
//! * [`oracle`]: dense complex truncations used as numeric ground truth.
//! * [`audit`]: a registry of checkable claims and their reports.

pub mod algebra;
pub mod audit;
pub mod cohomology;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod sample;

pub use algebra::{BasisSymbol, Element, GaussRational, Scalar, ShiftVariant};
pub use error::{Error, Result};
