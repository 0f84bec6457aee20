//! Exact arithmetic in the algebra spanned by shift powers, adjoint shift
//! powers and the matrix units `|e_a><e_b|` on the half-lattice.
//!
//! Products are evaluated from closed-form structure constants in
//! [`symbol`]; every coefficient is a polynomial in the formal coupling `eps`
//! over the Gaussian rationals, so identities hold for all `eps` at once.

mod element;
mod literal;
mod scalar;
mod shift;
pub mod symbol;

pub use element::{CornerSupport, Element, RankScope};
pub use literal::parse_element;
pub use scalar::{GaussRational, Scalar};
pub use shift::{
    boundary_projector, build_t, delta, first_order_coefficient, jacobiator, telescoping_residual, FirstOrder,
    ShiftVariant,
};
pub use symbol::{BasisSymbol, INDEX_CAP};
