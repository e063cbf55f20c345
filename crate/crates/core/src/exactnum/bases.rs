use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumError;

/// Digit counts at which enclosures are tried, coarse to fine. The last
/// level is always the full declared precision.
const LEVELS: [usize; 4] = [18, 36, 72, 144];

/// A declared positive real base, known through a decimal expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSymbol {
    pub name: String,
    pub digits: String,
    enclosures: Vec<(BigRational, BigRational)>,
}

impl BaseSymbol {
    pub fn new(name: &str, digits: &str) -> Result<Self, NumError> {
        if !is_identifier(name) {
            return Err(NumError::Parse(format!("invalid base name `{name}`")));
        }
        let (value, frac_digits) = parse_decimal(digits)?;
        let mut enclosures = Vec::new();
        for &d in LEVELS.iter().filter(|&&d| d < frac_digits) {
            let truncated = truncate(&value, d);
            let eps = BigRational::new(BigInt::from(2), ten_pow(d));
            enclosures.push((&truncated - &eps, &truncated + &eps));
        }
        let eps = BigRational::new(BigInt::one(), ten_pow(frac_digits));
        enclosures.push((&value - &eps, &value + &eps));
        if !enclosures.last().unwrap().0.is_positive() {
            return Err(NumError::Parse(format!(
                "base `{name}` must be certified positive by its digits"
            )));
        }
        // coarse levels may dip below zero for tiny bases; drop those
        enclosures.retain(|(lo, _)| lo.is_positive());
        Ok(BaseSymbol {
            name: name.to_string(),
            digits: digits.to_string(),
            enclosures,
        })
    }

    pub(crate) fn levels(&self) -> usize {
        self.enclosures.len()
    }

    pub(crate) fn enclosure(&self, level: usize) -> &(BigRational, BigRational) {
        &self.enclosures[level.min(self.enclosures.len() - 1)]
    }

    pub fn approx(&self) -> f64 {
        let (lo, hi) = self.enclosure(usize::MAX);
        super::rat_to_f64(&((lo + hi) / BigRational::from_integer(BigInt::from(2))))
    }
}

/// The set of declared bases shared by every value of one system.
///
/// Bases are assumed multiplicatively independent of each other and of the
/// positive rationals; that assumption is carried into every report.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseTable {
    symbols: Vec<BaseSymbol>,
}

impl BaseTable {
    pub fn new(symbols: Vec<BaseSymbol>) -> Result<Self, NumError> {
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(NumError::Parse(format!("base `{}` declared twice", s.name)));
            }
        }
        Ok(BaseTable { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[BaseSymbol] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.symbols[i].name
    }

    pub(crate) fn max_levels(&self) -> usize {
        self.symbols.iter().map(BaseSymbol::levels).max().unwrap_or(1)
    }
}

impl fmt::Display for BaseTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.symbols.iter().map(|s| s.name.as_str()).collect();
        write!(f, "[{}]", names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn ten_pow(d: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), d)
}

fn truncate(v: &BigRational, d: usize) -> BigRational {
    let scale = ten_pow(d);
    let scaled = (v * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

/// Parses `[-]digits[.digits]` exactly, returning the value and the number
/// of fractional digits.
pub(crate) fn parse_decimal(s: &str) -> Result<(BigRational, usize), NumError> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    let ok = |p: &str| p.chars().all(|c| c.is_ascii_digit());
    if int_part.is_empty() && frac_part.is_empty() || !ok(int_part) || !ok(frac_part) {
        return Err(NumError::Parse(format!("invalid decimal `{s}`")));
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| NumError::Parse(format!("invalid decimal `{s}`")))?
    };
    let mut value = BigRational::new(numer, ten_pow(frac_part.len()));
    if neg {
        value = -value;
    }
    Ok((value, frac_part.len()))
}
