use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::bases::BaseTable;
use super::factor::{factorize, FactorConfig};
use super::{NumError, Real};

/// A positive real that is a single monomial: a positive rational times a
/// product of integer powers of declared bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRatio(Real);

impl ExactRatio {
    pub fn new(value: Real) -> Result<Self, NumError> {
        match value.as_monomial() {
            Some((c, _)) if c.is_positive() => {
                if value.sign()? != Ordering::Greater {
                    return Err(NumError::NotPositive(value.to_string()));
                }
                Ok(ExactRatio(value))
            }
            Some(_) => Err(NumError::NotPositive(value.to_string())),
            None => Err(NumError::NotMonomial(value.to_string())),
        }
    }

    pub fn from_rational(r: BigRational) -> Result<Self, NumError> {
        ExactRatio::new(Real::Rat(r))
    }

    /// `num/den`; panics unless positive.
    pub fn frac(num: i64, den: i64) -> Self {
        ExactRatio::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            .expect("positive ratio")
    }

    pub fn one() -> Self {
        ExactRatio(Real::one())
    }

    pub fn value(&self) -> &Real {
        &self.0
    }

    pub fn into_real(self) -> Real {
        self.0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.0.as_rational()
    }

    pub fn table(&self) -> Option<&Arc<BaseTable>> {
        self.0.table()
    }

    pub fn mul(&self, other: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &other.0)
    }

    pub fn div(&self, other: &ExactRatio) -> ExactRatio {
        ExactRatio(self.0.checked_div(&other.0).expect("monomial division"))
    }

    pub fn pow(&self, e: u32) -> ExactRatio {
        ExactRatio(self.0.pow(e))
    }

    pub fn product<'a>(items: impl IntoIterator<Item = &'a ExactRatio>) -> ExactRatio {
        items
            .into_iter()
            .fold(ExactRatio::one(), |acc, r| acc.mul(r))
    }

    /// Whether the value lies strictly inside (0, 1).
    pub fn is_contraction(&self) -> Result<bool, NumError> {
        self.0.lt(&Real::one())
    }

    pub fn ln(&self) -> f64 {
        let (c, m) = self.0.as_monomial().expect("monomial");
        let mut v = ln_big(c.numer()) - ln_big(c.denom());
        if let Some(table) = self.table() {
            for (i, &e) in m.iter().enumerate() {
                v += f64::from(e) * table.symbols()[i].approx().ln();
            }
        }
        v
    }

    /// `self^s` in floating point.
    pub fn powf(&self, s: f64) -> f64 {
        (s * self.ln()).exp()
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    pub fn exponent_vector(&self, cfg: &FactorConfig) -> Result<ExponentVector, NumError> {
        to_exponent_vector(self, cfg)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// A coordinate of the exponent lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseKey {
    Prime(BigUint),
    Symbol(String),
}

impl fmt::Display for BaseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKey::Prime(p) => write!(f, "{p}"),
            BaseKey::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Exponents of a ratio over primes and declared bases; never stores zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector(BTreeMap<BaseKey, i64>);

impl ExponentVector {
    pub fn from_map(map: BTreeMap<BaseKey, i64>) -> Self {
        ExponentVector(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn get(&self, key: &BaseKey) -> i64 {
        self.0.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BaseKey, &i64)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BaseKey> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, k: i64) -> ExponentVector {
        ExponentVector::from_map(self.0.iter().map(|(b, e)| (b.clone(), e * k)).collect())
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let mut m = self.0.clone();
        for (b, e) in &other.0 {
            *m.entry(b.clone()).or_insert(0) += e;
        }
        ExponentVector::from_map(m)
    }

    /// The rational product this vector denotes, when every key is a prime.
    pub fn to_rational(&self) -> Option<BigRational> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (b, &e) in &self.0 {
            let BaseKey::Prime(p) = b else { return None };
            let pw = num_traits::pow(BigInt::from_biguint(Sign::Plus, p.clone()), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pw;
            } else {
                den *= pw;
            }
        }
        Some(BigRational::new(num, den))
    }
}

fn rational_exponents(
    r: &BigRational,
    cfg: &FactorConfig,
    out: &mut BTreeMap<BaseKey, i64>,
) -> Result<(), NumError> {
    for (p, e) in factorize(r.numer().magnitude(), cfg)? {
        *out.entry(BaseKey::Prime(p)).or_insert(0) += i64::from(e);
    }
    for (p, e) in factorize(r.denom().magnitude(), cfg)? {
        *out.entry(BaseKey::Prime(p)).or_insert(0) -= i64::from(e);
    }
    Ok(())
}

pub fn to_exponent_vector(r: &ExactRatio, cfg: &FactorConfig) -> Result<ExponentVector, NumError> {
    let (c, m) = r.value().as_monomial().expect("monomial");
    let mut map = BTreeMap::new();
    rational_exponents(&c, cfg, &mut map)?;
    if let Some(table) = r.table() {
        for (i, &e) in m.iter().enumerate() {
            if e != 0 {
                map.insert(BaseKey::Symbol(table.name(i).to_string()), i64::from(e));
            }
        }
    }
    Ok(ExponentVector::from_map(map))
}

/// The minimal `(p, q)` with `a^p = b^q`, if any.
pub fn mult_dependence(
    a: &ExactRatio,
    b: &ExactRatio,
    cfg: &FactorConfig,
) -> Result<Option<(u64, u64)>, NumError> {
    let va = a.exponent_vector(cfg)?;
    let vb = b.exponent_vector(cfg)?;
    Ok(parallel(&va, &vb))
}

/// Minimal positive `(p, q)` with `p·va = q·vb`.
pub fn parallel(va: &ExponentVector, vb: &ExponentVector) -> Option<(u64, u64)> {
    if va.is_zero() || vb.is_zero() {
        return None;
    }
    let (key, &ea) = va.iter().next()?;
    let eb = vb.get(key);
    if eb == 0 || (ea > 0) != (eb > 0) {
        return None;
    }
    // p·ea = q·eb
    let g = ea.abs().gcd(&eb.abs());
    let p = (eb.abs() / g) as u64;
    let q = (ea.abs() / g) as u64;
    if va.scaled(p as i64) == vb.scaled(q as i64) {
        Some((p, q))
    } else {
        None
    }
}

pub fn ratio_cmp(a: &ExactRatio, b: &ExactRatio) -> Result<Ordering, NumError> {
    a.value().try_cmp(b.value())
}
