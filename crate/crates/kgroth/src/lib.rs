//! Exact computation of type A, symplectic and orthogonal Grothendieck polynomials
//! and their stable symmetric limits.

pub mod error;
pub mod hecke;
pub mod ortho;
pub mod perm;
pub mod poly;
pub mod raising;
pub mod ring;
pub mod stable;
pub mod typea;

pub use error::{Error, Result};
