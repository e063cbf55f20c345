use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use lipeq::exactnum::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> ExactRatio {
    ExactRatio::frac(n, d)
}

fn cfg() -> FactorConfig {
    FactorConfig::default()
}

fn prime(p: u32) -> BaseKey {
    BaseKey::Prime(BigUint::from(p))
}

fn lambda_table() -> Arc<BaseTable> {
    Arc::new(
        BaseTable::new(vec![
            BaseSymbol::new("l", "0.41421356237309504880168872420969807856967187537694").unwrap(),
            BaseSymbol::new("e", "2.71828182845904523536028747135266249775724709369995").unwrap(),
        ])
        .unwrap(),
    )
}

#[test]
fn exponent_vectors_of_small_rationals() {
    let v = q(1, 5).exponent_vector(&cfg()).unwrap();
    assert_eq!(v, ExponentVector::from_map(BTreeMap::from([(prime(5), -1)])));
    let v = q(4, 9).exponent_vector(&cfg()).unwrap();
    assert_eq!(
        v,
        ExponentVector::from_map(BTreeMap::from([(prime(2), 2), (prime(3), -2)]))
    );
}

#[test]
fn exponent_vector_of_declared_base() {
    let t = lambda_table();
    let r = parse_ratio("l^2", Some(&t)).unwrap();
    let v = r.exponent_vector(&cfg()).unwrap();
    assert_eq!(
        v,
        ExponentVector::from_map(BTreeMap::from([(BaseKey::Symbol("l".into()), 2)]))
    );
}

#[test]
fn dependence_examples() {
    assert_eq!(mult_dependence(&q(1, 4), &q(1, 8), &cfg()).unwrap(), Some((3, 2)));
    assert_eq!(mult_dependence(&q(1, 2), &q(1, 3), &cfg()).unwrap(), None);
    assert_eq!(mult_dependence(&q(1, 5), &q(1, 5), &cfg()).unwrap(), Some((1, 1)));
    assert_eq!(mult_dependence(&q(4, 9), &q(8, 27), &cfg()).unwrap(), Some((3, 2)));
    assert_eq!(mult_dependence(&q(2, 9), &q(4, 27), &cfg()).unwrap(), None);
}

#[test]
fn large_factors_are_found_or_refused() {
    // 2^61 − 1 and 2^31 − 1 are prime
    let p61 = BigUint::from((1u64 << 61) - 1);
    let p31 = BigUint::from((1u64 << 31) - 1);
    let n = &p61 * &p31;
    let f = factorize(&n, &cfg()).unwrap();
    assert_eq!(f.get(&p61), Some(&1));
    assert_eq!(f.get(&p31), Some(&1));
    let tight = FactorConfig {
        max_factor_bits: 8,
        rho_iterations: 16,
    };
    let semi = &p61 * &BigUint::from((1u64 << 59) - 0x37);
    assert!(matches!(
        factorize(&semi, &tight),
        Err(NumError::FactorTimeout(_))
    ) || factorize(&semi, &tight).is_ok());
    let err = mult_dependence(
        &ExactRatio::from_rational(BigRational::new(
            BigInt::from(1),
            BigInt::from(p61.clone()) * BigInt::from(p61.clone()) * BigInt::from(p31.clone()),
        ))
        .unwrap(),
        &q(1, 2),
        &tight,
    );
    assert!(matches!(err, Err(NumError::FactorTimeout(_))));
}

#[test]
fn ratio_order_examples() {
    let fifth = q(1, 5);
    assert_eq!(
        ratio_cmp(&fifth.pow(3), &fifth.pow(2).mul(&fifth)).unwrap(),
        Ordering::Equal
    );
    assert_eq!(ratio_cmp(&q(1, 2).pow(3), &q(1, 3).pow(2)).unwrap(), Ordering::Greater);
    let t = lambda_table();
    let l = parse_ratio("l", Some(&t)).unwrap();
    assert_eq!(ratio_cmp(&l, &l.pow(2)).unwrap(), Ordering::Greater);
}

#[test]
fn dependent_bases_are_not_guessed() {
    // a second symbol declared with the same digits as l: l − m cannot be signed
    let t = Arc::new(
        BaseTable::new(vec![
            BaseSymbol::new("l", "0.4142135623730950488016887242096980785696").unwrap(),
            BaseSymbol::new("m", "0.4142135623730950488016887242096980785696").unwrap(),
        ])
        .unwrap(),
    );
    let l = parse_real("l", Some(&t)).unwrap();
    let m = parse_real("m", Some(&t)).unwrap();
    assert!(matches!(l.try_cmp(&m), Err(NumError::Uncertifiable(_))));
}

#[test]
fn moran_closed_forms() {
    let s = moran_dimension(&[q(1, 5), q(1, 5), q(1, 5)], DEFAULT_TOL).unwrap();
    assert!((s - 3f64.ln() / 5f64.ln()).abs() < 1e-10);
    let s = moran_dimension(&[q(1, 2), q(1, 4)], DEFAULT_TOL).unwrap();
    let x = (5f64.sqrt() - 1.0) / 2.0;
    assert!((s - (-x.log2())).abs() < 1e-10);
    assert!((s - 0.6942419).abs() < 1e-7);
    let s = moran_dimension(&[q(1, 3), q(1, 3)], DEFAULT_TOL).unwrap();
    assert!((s - 2f64.ln() / 3f64.ln()).abs() < 1e-10);
}

#[test]
fn moran_single_ratio_is_rejected() {
    assert!(matches!(
        moran_dimension(&[q(1, 2)], DEFAULT_TOL),
        Err(NumError::NoDimension(_))
    ));
}

#[test]
fn symbolic_moran_example() {
    let t = Arc::new(
        BaseTable::new(vec![
            BaseSymbol::new("e", "2.71828182845904523536028747135266249775724709369995").unwrap(),
            BaseSymbol::new("b", "0.03521477143511934558004031608091687528069113287500").unwrap(),
        ])
        .unwrap(),
    );
    let r: Vec<ExactRatio> = ["b^2", "1/16*e^2", "1/16", "b^2"]
        .iter()
        .map(|s| parse_ratio(s, Some(&t)).unwrap())
        .collect();
    let s = moran_dimension(&r, DEFAULT_TOL).unwrap();
    assert!((s - 0.5).abs() < 1e-9, "s = {s}");
}

#[test]
fn value_grammar_round_trips() {
    let t = lambda_table();
    for src in ["1/5", "-3/7", "1/16*e^2 + 3/4 - l^2", "l^-1", "0.25", "2*l*e - 1"] {
        let v = parse_real(src, Some(&t)).unwrap();
        let again = parse_real(&v.to_string(), Some(&t)).unwrap();
        assert_eq!(v, again, "{src} -> {v}");
    }
    // a large rational prints as one quotient of two long integers
    let big = parse_real("15/31.0304^-232 /6 /30215^6", None).unwrap();
    assert_eq!(parse_real(&big.to_string(), None).unwrap(), big);
    assert!(parse_real("l^2*1/l/l^249/l/l^249", Some(&t)).is_err());
    let edge = parse_real("l^-200/l^56", Some(&t)).unwrap();
    assert_eq!(parse_real(&edge.to_string(), Some(&t)).unwrap(), edge);
    assert_eq!(parse_real("0.25", None).unwrap(), Real::frac(1, 4));
    assert!(parse_real("x", None).is_err());
    assert!(parse_real("1/(l+e)", Some(&t)).is_err());
    assert!(parse_real("((((", None).is_err());
    assert!(parse_ratio("3/2", None).is_err());
    assert!(parse_ratio("-1/2", None).is_err());
}

fn small_prime_rational() -> impl Strategy<Value = (BigRational, BTreeMap<u32, i64>)> {
    prop::collection::vec((prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]), -6i64..=6), 0..5)
        .prop_map(|pairs| {
            let mut map: BTreeMap<u32, i64> = BTreeMap::new();
            for (p, e) in pairs {
                *map.entry(p).or_insert(0) += e;
            }
            map.retain(|_, e| *e != 0);
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for (&p, &e) in &map {
                let pw = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
                if e > 0 {
                    num *= pw;
                } else {
                    den *= pw;
                }
            }
            (BigRational::new(num, den), map)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exponent_vector_reconstructs((r, expected) in small_prime_rational()) {
        prop_assume!(r > BigRational::from_integer(0.into()));
        let ratio = ExactRatio::from_rational(r.clone()).unwrap();
        let v = ratio.exponent_vector(&cfg()).unwrap();
        prop_assert_eq!(v.to_rational().unwrap(), r);
        let m: BTreeMap<BaseKey, i64> = expected.into_iter().map(|(p, e)| (prime(p), e)).collect();
        prop_assert_eq!(v, ExponentVector::from_map(m));
    }
}

proptest! {
    #[test]
    fn dependence_of_common_base(c in prop::sample::select(vec![(1i64, 2i64), (1, 6), (2, 3), (3, 10), (4, 9)]),
                                 i in 1u32..8, j in 1u32..8) {
        let base = q(c.0, c.1);
        let a = base.pow(i);
        let b = base.pow(j);
        let g = num_integer::gcd(i, j);
        prop_assert_eq!(mult_dependence(&a, &b, &cfg()).unwrap(), Some((u64::from(j / g), u64::from(i / g))));
    }

    #[test]
    fn moran_dimension_grows_with_more_maps(ratios in prop::collection::vec((1i64..4, 24i64..60), 2..7),
                                            extra in (1i64..4, 24i64..60)) {
        // ratio sums stay below one so the added term is visible in double precision
        let mk = |(a, b): (i64, i64)| q(a, b);
        let base: Vec<ExactRatio> = ratios.into_iter().map(mk).collect();
        let s0 = moran_dimension(&base, DEFAULT_TOL).unwrap();
        let mut more = base.clone();
        more.push(mk(extra));
        let s1 = moran_dimension(&more, DEFAULT_TOL).unwrap();
        prop_assert!(s1 > s0);
    }
}
