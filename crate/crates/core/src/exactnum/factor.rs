use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::NumError;

/// Limits for integer factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Largest prime factor, in bits, that Pollard rho is expected to find.
    pub max_factor_bits: u64,
    /// Iterations allowed per rho attempt.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            max_factor_bits: 64,
            rho_iterations: 1 << 22,
        }
    }
}

const SMALL_PRIMES_BOUND: u32 = 1 << 12;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> Vec<u32> {
    let n = SMALL_PRIMES_BOUND as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
}

/// Miller-Rabin with fixed bases: deterministic below 3.3e24, and a strong
/// probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigUint, c: u64, budget: u64) -> Option<BigUint> {
    // Brent's cycle detection with batched gcds
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128u64;
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            spent += m;
            if spent > budget {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split(n: BigUint, cfg: &FactorConfig, out: &mut BTreeMap<BigUint, u32>) -> Result<(), NumError> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return Ok(());
    }
    // rho is only trusted on cofactors a few times the factor cap
    if n.bits() > 4 * cfg.max_factor_bits.max(1) {
        return Err(NumError::FactorTimeout(n.to_string()));
    }
    for c in 1..=8u64 {
        if let Some(d) = rho(&n, c, cfg.rho_iterations) {
            let other = &n / &d;
            split(d, cfg, out)?;
            split(other, cfg, out)?;
            return Ok(());
        }
    }
    Err(NumError::FactorTimeout(n.to_string()))
}

/// Prime factorization of a positive integer.
pub fn factorize(n: &BigUint, cfg: &FactorConfig) -> Result<BTreeMap<BigUint, u32>, NumError> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    for p in small_primes() {
        let pb = BigUint::from(p);
        if rest.is_one() {
            break;
        }
        if rest.to_u64().is_some_and(|r| r < u64::from(p) * u64::from(p)) {
            break;
        }
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    split(rest, cfg, &mut out)?;
    Ok(out)
}
