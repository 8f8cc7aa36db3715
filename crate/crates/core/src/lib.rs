//! Exact graded commutative algebra over Artinian quotients of weighted polynomial rings.

pub mod complex;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homological;
pub mod identities;
pub mod io;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod powers;
pub mod random;
pub mod resolution;
pub mod ring;
pub mod series;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use ring::{Ring, RingElem};
