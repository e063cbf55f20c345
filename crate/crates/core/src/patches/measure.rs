use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ifscore::{canonical, CylinderUnion, Ifs};

/// `ℋ^s` of a cylinder union with `ℋ^s(T)` normalised to 1, i.e.
/// `Σ_w μ_w` with `μ_i = ρ_i^s`.
pub fn measure(ifs: &Ifs, set: &CylinderUnion, s: f64) -> f64 {
    let mu: Vec<f64> = ifs.spec.ratios().iter().map(|r| r.powf(s)).collect();
    canonical(set.words(), ifs.n())
        .iter()
        .map(|w| w.letters().map(|l| mu[l - 1]).product::<f64>())
        .sum()
}

/// The exact normalised measure when all ratios are equal, where every
/// `μ_i` is `1/n`.
pub fn equal_ratio_measure(ifs: &Ifs, set: &CylinderUnion) -> Option<BigRational> {
    if !ifs.spec.is_equal_ratio() {
        return None;
    }
    let n = BigInt::from(ifs.n());
    let mut total = BigRational::zero();
    for w in set.words() {
        total += BigRational::new(BigInt::one(), num_traits::pow(n.clone(), w.len()));
    }
    Some(total)
}

/// `μ_L = Σ_{j ≤ α} μ_j`.
pub fn measure_left(ifs: &Ifs, s: f64) -> f64 {
    (1..=ifs.ts.alpha).map(|j| ifs.spec.ratio(j).powf(s)).sum()
}

/// `μ_R = Σ_{j > n − β} μ_j`.
pub fn measure_right(ifs: &Ifs, s: f64) -> f64 {
    let n = ifs.n();
    (n - ifs.ts.beta + 1..=n).map(|j| ifs.spec.ratio(j).powf(s)).sum()
}

/// A polynomial with integer coefficients in formal variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Vec<u32>, BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64, vars: usize) -> Self {
        let mut p = Poly::zero();
        if c != 0 {
            p.0.insert(vec![0; vars], BigInt::from(c));
        }
        p
    }

    pub fn var(i: usize, vars: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Poly(BTreeMap::from([(e, BigInt::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(e, c)| {
                let term: f64 = e.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product();
                c.to_f64().unwrap_or(f64::NAN) * term
            })
            .sum()
    }

    /// Whether `a/b = c/d` as rational functions.
    pub fn same_ratio(a: &Poly, b: &Poly, c: &Poly, d: &Poly) -> bool {
        a * d == c * b
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (e, c) in &other.0 {
            let slot = out.entry(e.clone()).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                out.remove(e);
            }
        }
        Poly(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &other.0 {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly(out)
    }
}

/// Measures as polynomials in formal variables `μ`, one variable per
/// distinct ratio value.
#[derive(Clone, Debug)]
pub struct FormalMeasure {
    letter_var: Vec<usize>,
    vars: usize,
}

impl FormalMeasure {
    pub fn new(ifs: &Ifs) -> Self {
        let ratios = ifs.spec.ratios();
        let mut letter_var = Vec::with_capacity(ratios.len());
        let mut reps: Vec<usize> = Vec::new();
        for (i, r) in ratios.iter().enumerate() {
            match reps.iter().position(|&j| ratios[j] == *r) {
                Some(v) => letter_var.push(v),
                None => {
                    letter_var.push(reps.len());
                    reps.push(i);
                }
            }
        }
        FormalMeasure {
            letter_var,
            vars: reps.len(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// The variable standing for `μ_l`.
    pub fn var_of(&self, l: usize) -> usize {
        self.letter_var[l - 1]
    }

    pub fn mu(&self, l: usize) -> Poly {
        Poly::var(self.var_of(l), self.vars)
    }

    pub fn of(&self, set: &CylinderUnion) -> Poly {
        let mut total: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for w in set.words() {
            let mut e = vec![0u32; self.vars];
            for l in w.letters() {
                e[self.letter_var[l - 1]] += 1;
            }
            *total.entry(e).or_insert_with(BigInt::zero) += 1;
        }
        Poly(total)
    }
}
