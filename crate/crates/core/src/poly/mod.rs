//! Exact sparse multivariate polynomial arithmetic over the rationals.

mod divide;
mod monomial;
mod order;
#[allow(clippy::module_inception)]
mod polynomial;
mod text;
mod twoterms;

pub use divide::{coprime_leading, divide, remainder, s_polynomial, DivisionTranscript};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{coeff, Coeff, Polynomial};
pub use text::parse_polynomial;
pub use twoterms::{
    classify_two_terms, decompose_interlacing, interlaced_spair, InterlacingDecomposition,
    MajorityTag, Term, TermPair, TwoTermsClass, TwoTermsTag,
};
