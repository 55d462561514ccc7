pub mod field;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod qpoly;
pub mod ratfunc;
pub mod series;

pub use field::{is_prime, Fp, PrimeField};
pub use laurent::LaurentPolynomialL;
pub use parse::parse_polynomial;
pub use poly::{Monomial, MultiPolynomial, ReducedPolynomial};
pub use qpoly::QPoly;
pub use ratfunc::RationalFunctionS;
pub use series::{TruncatedSeries, Valuation};
