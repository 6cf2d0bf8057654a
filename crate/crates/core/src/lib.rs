//! Exact arithmetic for birational transformations of projective n-space.
//!
//! The central objects are projective classes of (n+1)-tuples of homogeneous
//! forms of a common degree d. Such a tuple determines a rational self-map of
//! P^n; the library decides birationality by producing an explicit inverse
//! tuple together with a cofactor certificate, entirely in exact arithmetic
//! over Q or a prime field F_p.
//!
//! Modules:
//! - [`polyring`]: sparse multivariate homogeneous polynomials over Q / F_p.
//! - [`linalg`]: exact kernels and solves (fraction-free over Q).
//! - [`wspace`]: projective tuple classes, reduction, chordal metrics.
//! - [`cremona`]: certified birational maps (inverse + cofactor).
//! - [`families`]: one-parameter families of tuples and degree profiles.
//! - [`census`]: exhaustive / sampled birationality counts over F_p.
//! - [`text`]: the shared textual grammar for polynomials and tuples.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod census;
pub mod cremona;
mod error;
pub mod families;
pub mod linalg;
pub mod polyring;
pub mod text;
pub mod wspace;

pub use error::Error;
