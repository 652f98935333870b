//! Exact arithmetic: fields, univariate polynomials, forms, resultants and
//! factorization.

pub mod factor;
pub mod field;
pub mod forms;
pub mod linalg;
pub mod poly;
pub mod resultant;

pub use factor::{factor_over, factor_rational, squarefree_decomposition, squarefree_factor, squarefree_part};
pub use field::{
    is_prime_u64, BaseField, ExtField, Field, Integer, PrimeField, PrimeFieldElt, QuotientRingElt, Rational,
    Rationals,
};
pub use forms::{disc_binary_quartic, is_geometric_square, is_square_binform, BinForm, TernForm};
pub use poly::{Poly, PolyOps};
pub use resultant::{poly_gcd_q, resultant};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("a form of odd degree {0} cannot be a square")]
    OddDegree(usize),
    #[error("exponent {exps:?} does not have total degree {degree}")]
    BadExponent { exps: [u32; 3], degree: u32 },
}
