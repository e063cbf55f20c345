#![allow(dead_code)]

use lipeq::exactnum::{ExactRatio, Real};
use lipeq::ifscore::{validate, Ifs, Role, Word};

pub fn q(n: i64, d: i64) -> ExactRatio {
    ExactRatio::frac(n, d)
}

pub fn r(n: i64, d: i64) -> Real {
    Real::frac(n, d)
}

pub fn w(s: &str) -> Word {
    Word::from_letters(&s.bytes().map(|b| (b - b'0') as usize).collect::<Vec<_>>())
}

pub fn ifs(ratios: &[(i64, i64)], translations: &[(i64, i64)]) -> Ifs {
    let spec = validate(
        ratios.iter().map(|&(a, b)| q(a, b)).collect(),
        translations.iter().map(|&(a, b)| r(a, b)).collect(),
        Role::Touching,
    )
    .expect("valid system");
    Ifs::new(spec)
}

/// The {1,4,5}-set.
pub fn set145() -> Ifs {
    ifs(&[(1, 5), (1, 5), (1, 5)], &[(0, 1), (3, 5), (4, 5)])
}

/// Three maps touching only between the second and third:
/// `t = (0, 1 − ρ_2 − ρ_3, 1 − ρ_3)`.
pub fn three_map(r1: (i64, i64), r2: (i64, i64), r3: (i64, i64)) -> Ifs {
    let (a, b) = r2;
    let (c, d) = r3;
    let t2 = (b * d - a * d - c * b, b * d);
    let t3 = (d - c, d);
    ifs(&[r1, r2, r3], &[(0, 1), t2, t3])
}

/// Six maps of ratio 1/10 touching at (1,2) and (4,5).
pub fn six_two_touches() -> Ifs {
    ifs(
        &[(1, 10); 6],
        &[(0, 1), (1, 10), (3, 10), (5, 10), (6, 10), (9, 10)],
    )
}

/// Six maps of ratio 1/8 in three blocks {1,2}, {3}, {4,5,6}.
pub fn six_three_blocks() -> Ifs {
    ifs(
        &[(1, 8); 6],
        &[(0, 1), (1, 8), (3, 8), (5, 8), (6, 8), (7, 8)],
    )
}

/// Four maps with equal first and last ratios touching only at 2.
pub fn four_map(r1: (i64, i64), r2: (i64, i64), r3: (i64, i64)) -> Ifs {
    let (a, b) = r1;
    let (c, d) = r2;
    let (e, f) = r3;
    // place the touching pair in the middle with equal side gaps
    let rest = Real::one() - Real::frac(2 * a, b) - Real::frac(c, d) - Real::frac(e, f);
    let g = rest.checked_div(&Real::int(2)).unwrap();
    let t2 = &Real::frac(a, b) + &g;
    let t3 = &t2 + &Real::frac(c, d);
    let t4 = Real::one() - Real::frac(a, b);
    let spec = validate(
        vec![q(a, b), q(c, d), q(e, f), q(a, b)],
        vec![Real::zero(), t2, t3, t4],
        Role::Touching,
    )
    .expect("valid system");
    Ifs::new(spec)
}

/// An equal-ratio system with `n` maps of ratio `1/m` touching exactly at
/// the letters flagged in `touch`; the leftover length is spread evenly
/// over the remaining gaps.
pub fn equal_ratio(n: usize, m: i64, touch: &[bool]) -> Ifs {
    assert_eq!(touch.len(), n - 1);
    let gaps = touch.iter().filter(|&&t| !t).count() as i64;
    assert!(gaps > 0 && (n as i64) < m);
    let g = Real::frac(m - n as i64, m * gaps);
    let mut t = Real::zero();
    let mut ts = Vec::with_capacity(n);
    for i in 0..n {
        ts.push(t.clone());
        t = &t + &Real::frac(1, m);
        if i + 1 < n && !touch[i] {
            t = &t + &g;
        }
    }
    let spec = validate(vec![q(1, m); n], ts, Role::Touching).expect("valid system");
    Ifs::new(spec)
}

pub const E_DIGITS: &str = "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759";
pub const B_DIGITS: &str = "0.035214771442619345579964066080917187780344113287505053129129046534490421205806551";

/// Four maps with `μ_2 = e/4`, `μ_3 = 1/4`, `μ_1 = μ_4 = b = (3 − e)/8` and
/// `ρ_i = μ_i²`, touching at 2, remaining length split evenly.
pub fn branch4_example() -> Ifs {
    use lipeq::exactnum::{parse_ratio, BaseSymbol, BaseTable};
    let table = std::sync::Arc::new(
        BaseTable::new(vec![
            BaseSymbol::new("e", E_DIGITS).unwrap(),
            BaseSymbol::new("b", B_DIGITS).unwrap(),
        ])
        .unwrap(),
    );
    let ratios: Vec<ExactRatio> = ["b^2", "e^2/16", "1/16", "b^2"]
        .iter()
        .map(|s| parse_ratio(s, Some(&table)).unwrap())
        .collect();
    let sum = ratios.iter().fold(Real::zero(), |acc, r| &acc + r.value());
    let g = (Real::one() - sum).checked_div(&Real::int(2)).unwrap();
    let t2 = ratios[0].value() + &g;
    let t3 = &t2 + ratios[1].value();
    let t4 = Real::one() - ratios[3].value().clone();
    let spec = validate(ratios, vec![Real::zero(), t2, t3, t4], Role::Touching).expect("valid system");
    Ifs::new(spec)
}
