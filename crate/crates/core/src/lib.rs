//! Exact computation of topological and twisted topological zeta functions,
//! monodromy zeta functions and characteristic polynomials for suspensions
//! `z^k + f`, generalized suspensions `z^m (z^k + f)` and k-Lê-Yomdin
//! surface singularities, plus checkers for the monodromy and holomorphy
//! conjectures on concrete data.

pub mod arith;
pub mod binomial;
pub mod checks;
pub mod cyclo;
pub mod error;
mod json;
pub mod lys;
pub mod par;
pub mod poly;
pub mod ratfun;
pub mod resolution;
pub mod suspension;

pub use cyclo::{CycloProduct, OrderSet};
pub use error::{Error, Result};
pub use par::Exec;
pub use poly::Poly;
pub use ratfun::RatFun;
