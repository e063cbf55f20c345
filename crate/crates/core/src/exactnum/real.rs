use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bases::BaseTable;
use super::NumError;

/// Exponents of a monomial over the declared bases, trailing zeros trimmed.
pub type Mono = Vec<i32>;

/// An exact real: a rational, or a Laurent polynomial with rational
/// coefficients in the declared bases.
///
/// `==` compares representations. Numerical order goes through
/// [`Real::try_cmp`], which certifies signs by interval enclosures and
/// fails instead of guessing.
#[derive(Clone, Debug)]
pub enum Real {
    Rat(BigRational),
    Sym(Arc<SymPoly>),
}

#[derive(Clone, Debug)]
pub struct SymPoly {
    table: Arc<BaseTable>,
    terms: Vec<(Mono, BigRational)>,
}

impl SymPoly {
    pub fn table(&self) -> &Arc<BaseTable> {
        &self.table
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Real::Rat(a), Real::Rat(b)) => a == b,
            (Real::Sym(a), Real::Sym(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Real {}

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[i32], b: &[i32]) -> Mono {
    let len = a.len().max(b.len());
    let m = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(m)
}

impl Real {
    pub fn zero() -> Real {
        Real::Rat(BigRational::zero())
    }

    pub fn one() -> Real {
        Real::Rat(BigRational::one())
    }

    pub fn int(v: i64) -> Real {
        Real::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(num: i64, den: i64) -> Real {
        Real::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The single base `index` of `table`, to the first power.
    pub fn base(table: &Arc<BaseTable>, index: usize) -> Real {
        let mut m = vec![0; index + 1];
        m[index] = 1;
        Real::from_terms(Some(table.clone()), vec![(m, BigRational::one())])
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Real::Rat(r) => Some(r),
            Real::Sym(_) => None,
        }
    }

    pub fn table(&self) -> Option<&Arc<BaseTable>> {
        match self {
            Real::Rat(_) => None,
            Real::Sym(p) => Some(&p.table),
        }
    }

    /// A size measure: total coefficient bits plus term count.
    pub fn complexity(&self) -> u64 {
        let rat = |r: &BigRational| r.numer().bits() + r.denom().bits() + 1;
        match self {
            Real::Rat(r) => rat(r),
            Real::Sym(p) => p.terms.iter().map(|(m, c)| rat(c) + m.len() as u64).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Real::Rat(r) if r.is_zero())
    }

    fn terms(&self) -> Vec<(Mono, BigRational)> {
        match self {
            Real::Rat(r) if r.is_zero() => Vec::new(),
            Real::Rat(r) => vec![(Vec::new(), r.clone())],
            Real::Sym(p) => p.terms.clone(),
        }
    }

    fn from_terms(table: Option<Arc<BaseTable>>, raw: Vec<(Mono, BigRational)>) -> Real {
        let mut raw: Vec<(Mono, BigRational)> =
            raw.into_iter().map(|(m, c)| (trim(m), c)).collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Mono, BigRational)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        match (table, terms.as_slice()) {
            (_, []) => Real::zero(),
            (_, [(m, c)]) if m.is_empty() => Real::Rat(c.clone()),
            (Some(table), _) => Real::Sym(Arc::new(SymPoly { table, terms })),
            (None, _) => unreachable!("symbolic terms without a base table"),
        }
    }

    fn joint_table(a: &Real, b: &Real) -> Option<Arc<BaseTable>> {
        match (a.table(), b.table()) {
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x == y,
                    "values from different base tables were combined"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    /// `Some((coefficient, exponents))` when the value is a single term.
    pub fn as_monomial(&self) -> Option<(BigRational, Mono)> {
        match self {
            Real::Rat(r) if r.is_zero() => None,
            Real::Rat(r) => Some((r.clone(), Vec::new())),
            Real::Sym(p) if p.terms.len() == 1 => Some((p.terms[0].1.clone(), p.terms[0].0.clone())),
            Real::Sym(_) => None,
        }
    }

    /// Multiplicative inverse; defined for nonzero monomials only.
    pub fn recip(&self) -> Result<Real, NumError> {
        match self.as_monomial() {
            Some((c, m)) => Ok(Real::from_terms(
                self.table().cloned(),
                vec![(m.iter().map(|e| -e).collect(), c.recip())],
            )),
            None if self.is_zero() => Err(NumError::DivisionByZero),
            None => Err(NumError::NotMonomial(self.to_string())),
        }
    }

    pub fn checked_div(&self, other: &Real) -> Result<Real, NumError> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Real {
        if let Real::Rat(r) = self {
            return Real::Rat(num_traits::pow(r.clone(), e as usize));
        }
        let mut acc = Real::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A rational enclosure at the given precision level.
    fn enclosure(&self, level: usize) -> (BigRational, BigRational) {
        match self {
            Real::Rat(r) => (r.clone(), r.clone()),
            Real::Sym(p) => {
                let mut lo = BigRational::zero();
                let mut hi = BigRational::zero();
                for (m, c) in &p.terms {
                    let mut mlo = BigRational::one();
                    let mut mhi = BigRational::one();
                    for (i, &e) in m.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        let (blo, bhi) = p.table.symbols()[i].enclosure(level);
                        let (l, h) = if e > 0 {
                            (blo.clone(), bhi.clone())
                        } else {
                            (bhi.recip(), blo.recip())
                        };
                        let k = e.unsigned_abs() as usize;
                        mlo *= num_traits::pow(l, k);
                        mhi *= num_traits::pow(h, k);
                    }
                    if c.is_positive() {
                        lo += c * &mlo;
                        hi += c * &mhi;
                    } else {
                        lo += c * &mhi;
                        hi += c * &mlo;
                    }
                }
                (lo, hi)
            }
        }
    }

    /// The sign, certified by refining enclosures.
    pub fn sign(&self) -> Result<Ordering, NumError> {
        match self {
            Real::Rat(r) => Ok(r.cmp(&BigRational::zero())),
            Real::Sym(p) => {
                for level in 0..p.table.max_levels() {
                    let (lo, hi) = self.enclosure(level);
                    if lo.is_positive() {
                        return Ok(Ordering::Greater);
                    }
                    if hi.is_negative() {
                        return Ok(Ordering::Less);
                    }
                }
                Err(NumError::Uncertifiable(self.to_string()))
            }
        }
    }

    pub fn try_cmp(&self, other: &Real) -> Result<Ordering, NumError> {
        if let (Real::Rat(a), Real::Rat(b)) = (self, other) {
            return Ok(a.cmp(b));
        }
        if self == other {
            return Ok(Ordering::Equal);
        }
        (self - other).sign()
    }

    pub fn lt(&self, other: &Real) -> Result<bool, NumError> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Real) -> Result<bool, NumError> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    /// Numerical equality: identical representations are equal, anything
    /// else must be certified different.
    pub fn exact_eq(&self, other: &Real) -> Result<bool, NumError> {
        Ok(self.try_cmp(other)? == Ordering::Equal)
    }

    pub fn try_min<'a>(&'a self, other: &'a Real) -> Result<&'a Real, NumError> {
        Ok(if self.le(other)? { self } else { other })
    }

    pub fn try_max<'a>(&'a self, other: &'a Real) -> Result<&'a Real, NumError> {
        Ok(if self.le(other)? { other } else { self })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rat(r) => super::rat_to_f64(r),
            Real::Sym(p) => p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = super::rat_to_f64(c);
                    for (i, &e) in m.iter().enumerate() {
                        v *= p.table.symbols()[i].approx().powi(e);
                    }
                    v
                })
                .sum(),
        }
    }
}

impl From<BigRational> for Real {
    fn from(r: BigRational) -> Real {
        Real::Rat(r)
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        if let (Real::Rat(a), Real::Rat(b)) = (self, rhs) {
            return Real::Rat(a + b);
        }
        let mut t = self.terms();
        t.extend(rhs.terms());
        Real::from_terms(Real::joint_table(self, rhs), t)
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        if let (Real::Rat(a), Real::Rat(b)) = (self, rhs) {
            return Real::Rat(a - b);
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        if let (Real::Rat(a), Real::Rat(b)) = (self, rhs) {
            return Real::Rat(a * b);
        }
        let a = self.terms();
        let b = rhs.terms();
        let mut t = Vec::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                t.push((mono_mul(ma, mb), ca * cb));
            }
        }
        Real::from_terms(Real::joint_table(self, rhs), t)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Rat(r) => Real::Rat(-r),
            Real::Sym(p) => Real::Sym(Arc::new(SymPoly {
                table: p.table.clone(),
                terms: p.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            })),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Real> for Real {
            type Output = Real;
            fn $f(self, rhs: Real) -> Real {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $f(self, rhs: &Real) -> Real {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rat(r) => write_rat(f, r),
            Real::Sym(p) => {
                for (idx, (m, c)) in p.terms.iter().enumerate() {
                    let mag = c.abs();
                    if idx == 0 {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let mut parts: Vec<String> = Vec::new();
                    if !mag.is_one() || m.iter().all(|&e| e == 0) {
                        parts.push(if mag.is_integer() {
                            mag.numer().to_string()
                        } else {
                            format!("{}/{}", mag.numer(), mag.denom())
                        });
                    }
                    for (i, &e) in m.iter().enumerate() {
                        match e {
                            0 => {}
                            1 => parts.push(p.table.name(i).to_string()),
                            _ => parts.push(format!("{}^{}", p.table.name(i), e)),
                        }
                    }
                    write!(f, "{}", parts.join("*"))?;
                }
                Ok(())
            }
        }
    }
}
