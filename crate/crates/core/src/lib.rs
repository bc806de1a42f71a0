//! Exact invariant theory for the orthogonal groups O2+(F_q) and O2-(F_q)
//! over fields of characteristic 2, acting diagonally on m copies of their
//! natural two-dimensional representation.

#![no_std]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod families;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod poly;
pub mod series;

pub use error::{Error, Result};
pub use field::{Fe, FieldContext};
pub use groups::{GroupKind, GroupTable, Matrix2};
pub use poly::{Monomial, Polynomial, Ring};
