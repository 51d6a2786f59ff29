//! Sparse multivariate polynomials over the rationals and the elimination
//! toolkit built on them.

mod coeff;
mod format;
pub mod gcd;
mod modp;
mod monomial;
mod mpoly;
mod rational;
pub mod resultant;
pub mod univariate;

pub use coeff::{Coeff, Field};
pub use format::{from_json, parse_poly, to_json, to_text, PolyJson, TermJson};
pub use gcd::{content_in_vars, gcd, gcd_all, squarefree_decomposition, squarefree_part};
pub use monomial::Monomial;
pub use mpoly::{var_list, MPoly};
pub use rational::{QPoly, ZPoly};
pub use resultant::{eliminate_two, eliminate_two_raw, sylvester_resultant, SylvesterMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPoly,
    #[error("division by the zero polynomial")]
    DivByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("both polynomials are constant in `{0}`")]
    BothConstantInV(String),
    #[error("resultant vanishes identically (positive-dimensional projection)")]
    ZeroResultant,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
