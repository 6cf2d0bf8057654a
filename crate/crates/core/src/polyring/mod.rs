//! Sparse homogeneous polynomial arithmetic over Q and prime fields.
//!
//! The global monomial order is graded lexicographic with
//! `x0 > x1 > ... > xn`; "leading", "monic" and every canonical coefficient
//! layout refer to it.

mod gcd;
mod jacobian;
mod monomial;
mod poly;
mod scalar;

pub use gcd::{gcd, gcd_tuple};
pub use jacobian::jacobian_det;
pub use monomial::Monomial;
pub use poly::HomogeneousPoly;
pub use scalar::{FieldKind, Scalar};
