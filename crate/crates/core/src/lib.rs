//! Group rings of the lamplighter groups `Z/dZ wr Z`, Fox calculus on the
//! standard presentation, zerodivisor certificates and a finite-window
//! search for common multiples of `1 - a` and `1 - x`.

pub mod certificates;
pub mod error;
pub mod foxwords;
pub mod groupring;
pub mod json;
pub mod linalg;
pub mod oresearch;
pub mod ring;
pub mod sample;
pub mod selftest;
pub mod wreath;

pub use error::{Error, Result};
pub use groupring::{GroupRingElement, LaurentElement};
pub use ring::{Scalar, ScalarRing};
pub use wreath::{BaseVector, GroupParams, WreathElement};
