//! Sparse polynomials and Laurent polynomials in `x`, `y` over ℚ.

mod parse;
mod poly;

pub use parse::parse_poly;
pub use poly::{
    poly_add, poly_mul, substitute, weighted_degree, ExpVec, Mode, Poly, WeightedDegree,
};
