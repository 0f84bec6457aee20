use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

use super::element::Element;
use super::scalar::Scalar;
use super::symbol::{Bwd, Corner, Fwd};

/// Orientation of the boundary-deformed shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftVariant {
    /// `T = S + eps E`
    Forward,
    /// `T = S* + eps E`; upper triangular truncations.
    Backward,
    /// `H = S + S* + eps E`, the tight-binding chain with a boundary potential.
    Hermitian,
}

impl ShiftVariant {
    pub const ALL: [ShiftVariant; 3] = [ShiftVariant::Forward, ShiftVariant::Backward, ShiftVariant::Hermitian];

    /// The undeformed operator, i.e. `T` at `eps = 0`.
    pub fn bare(self) -> Element {
        match self {
            ShiftVariant::Forward => Fwd(1).into(),
            ShiftVariant::Backward => Bwd(1).into(),
            ShiftVariant::Hermitian => &Element::from(Fwd(1)) + &Element::from(Bwd(1)),
        }
    }

    /// `U^k` for this orientation, with `U` the bare operator.
    pub fn bare_pow(self, k: u32) -> Element {
        match self {
            ShiftVariant::Forward => Fwd(k).into(),
            ShiftVariant::Backward if k == 0 => Element::identity(),
            ShiftVariant::Backward => Bwd(k).into(),
            ShiftVariant::Hermitian => self.bare().pow(k),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftVariant::Forward => "forward",
            ShiftVariant::Backward => "backward",
            ShiftVariant::Hermitian => "hermitian",
        }
    }
}

impl fmt::Display for ShiftVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShiftVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "forward" => Ok(ShiftVariant::Forward),
            "backward" => Ok(ShiftVariant::Backward),
            "hermitian" => Ok(ShiftVariant::Hermitian),
            other => Err(Error::Invalid(format!("unknown shift variant `{other}` (forward|backward|hermitian)"))),
        }
    }
}

/// The boundary projector `E = C(0,0)`.
pub fn boundary_projector() -> Element {
    Corner(0, 0).into()
}

/// The deformed operator with symbolic `eps`.
pub fn build_t(v: ShiftVariant) -> Element {
    &v.bare() + &Element::term(Scalar::eps(), Corner(0, 0))
}

/// `T^m - U^m - eps * sum_j U^(m-1-j) E T^j`; identically zero.
pub fn telescoping_residual(m: u32, v: ShiftVariant) -> Element {
    let t = build_t(v);
    let e = boundary_projector();
    let mut t_pow = Element::identity();
    let mut sum = Element::zero();
    for j in 0..m {
        sum = &sum + &v.bare_pow(m - 1 - j).mul(&e).mul(&t_pow);
        t_pow = t_pow.mul(&t);
    }
    // t_pow is now T^m
    &(&t_pow - &v.bare_pow(m)) - &sum.scale(&Scalar::eps())
}

/// `T^m - U^m`.
pub fn delta(m: u32, v: ShiftVariant) -> Element {
    &build_t(v).pow(m) - &v.bare_pow(m)
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobiator(x: &Element, y: &Element, z: &Element) -> Element {
    let a = x.commutator(&y.commutator(z));
    let b = y.commutator(&z.commutator(x));
    let c = z.commutator(&x.commutator(y));
    &(&a + &b) + &c
}

/// First-order data for `[T^m, T^n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrder {
    /// The `eps^1` coefficient of `[T^m, T^n]` computed in the algebra.
    pub coefficient: Element,
    /// `sum_j [U^m, U^(n-1-j) E U^j] + sum_i [U^(m-1-i) E U^i, U^n]` with each
    /// `U^a E U^b` read as the corner `C(a,b)`.
    pub corner_reading: Element,
    /// The same sum with `U^a E U^b` read as an operator product.
    pub literal_reading: Element,
}

pub fn first_order_coefficient(m: u32, n: u32, v: ShiftVariant) -> FirstOrder {
    let t = build_t(v);
    let coefficient = t.pow(m).commutator(&t.pow(n)).eps_order(1);
    let um = v.bare_pow(m);
    let un = v.bare_pow(n);
    let e = boundary_projector();
    let literal = |a: u32, b: u32| v.bare_pow(a).mul(&e).mul(&v.bare_pow(b));
    let corner = |a: u32, b: u32| Element::from(Corner(a, b));
    let rhs = |unit: &dyn Fn(u32, u32) -> Element| -> Element {
        let left: Element = (0..n).map(|j| um.commutator(&unit(n - 1 - j, j))).sum();
        let right: Element = (0..m).map(|i| unit(m - 1 - i, i).commutator(&un)).sum();
        &left + &right
    };
    FirstOrder { coefficient, corner_reading: rhs(&corner), literal_reading: rhs(&literal) }
}
