//! Sparse multivariate polynomials over ℚ and zero-dimensional ideals.

mod groebner;
mod monomial;
mod order;
mod parse;
mod polynomial;

pub use groebner::{colength, groebner, normal_form, s_polynomial, satisfies_buchberger_criterion, IdealPresentation};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{max_variable_index, parse_poly};
pub use polynomial::Poly;
