//! Exact ratios and reals, multiplicative dependence, and the Moran
//! equation.

mod bases;
mod dimension;
mod expr;
mod factor;
mod ratio;
mod real;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use bases::{BaseSymbol, BaseTable};
pub use dimension::{moran_dimension, DEFAULT_TOL};
pub use expr::parse_real;
pub use factor::{factorize, is_probable_prime, FactorConfig};
pub use ratio::{
    mult_dependence, parallel, ratio_cmp, to_exponent_vector, BaseKey, ExactRatio, ExponentVector,
};
pub use real::{Mono, Real, SymPoly};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot certify the sign of {0} from the declared digits")]
    Uncertifiable(String),
    #[error("factorization of {0} exceeds the configured bound")]
    FactorTimeout(String),
    #[error("{0} is not a single monomial")]
    NotMonomial(String),
    #[error("{0} is not positive")]
    NotPositive(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no similarity dimension: {0}")]
    NoDimension(String),
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || num_traits::Zero::is_zero(r)) {
            return v;
        }
    }
    let ln = ratio::ln_big(&num_traits::Signed::abs(r.numer())) - ratio::ln_big(r.denom());
    let sign = if num_traits::Signed::is_negative(r) { -1.0 } else { 1.0 };
    sign * ln.exp()
}

/// Parses a contraction ratio: a positive monomial strictly below one.
pub fn parse_ratio(
    s: &str,
    table: Option<&std::sync::Arc<BaseTable>>,
) -> Result<ExactRatio, NumError> {
    let r = ExactRatio::new(parse_real(s, table)?)?;
    if !r.is_contraction()? {
        return Err(NumError::Parse(format!("ratio {s} is not below one")));
    }
    Ok(r)
}
