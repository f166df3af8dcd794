//! SL(2,C) character variety of the 3-chain link exterior.
//!
//! The link group is presented as
//! `<x1, x2, x3 | [x1, x3 x1^-1 x2] = 1, [x2, x1 x2^-1 x3] = 1>` with one
//! meridian generator per component. Irreducible characters are stored as
//! `(t1, t2, t3, r12, r13, r23, beta)`; see [`chars::CharacterPoint`].

// `!(x < tol)` is used on purpose so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chars;
pub mod components;
pub mod error;
pub mod laurent;
pub mod mat2;
pub mod reconstruct;
pub mod roots;
pub mod selftest;
pub mod tap;
pub mod tol;

pub use chars::{CharacterPoint, Pair};
pub use components::{ComponentId, MembershipReport, Sign};
pub use error::{Error, Result};
pub use mat2::{Mat2, C64};
pub use reconstruct::Representation;
pub use tol::Tolerance;
