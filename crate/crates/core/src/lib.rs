//! Exact computation of freeness for two-generator subalgebras `k{a tⁿ, b tⁿ}` of skew
//! polynomial rings `k[x,y][t;σ]` and `k[x^±1,y^±1][t;σ]` over `k = ℚ`.

pub mod autom;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod freeness;
pub mod growth;
pub mod linalg;
pub mod monomial;
pub mod ring;
pub mod skew;

pub use error::{Error, Result};
