use num_integer::Integer;

use crate::exactnum::{mult_dependence, FactorConfig, NumError};
use crate::ifscore::{Ifs, Word};

use super::witness::{SubstitutabilityWitness, WitnessSide};
use super::DecideError;

/// Which of the two pairwise-dependence conditions produced the witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FastPathCondition {
    /// All of `{1, n, α} ∪ (Σ_T + 1)` pairwise dependent.
    First,
    /// All of `{1, n, n − β + 1} ∪ Σ_T` pairwise dependent.
    Second,
}

/// `(p, q)` with `ρ_a^p = ρ_b^q` for each `a` in `letters`, or `None` as
/// soon as one pair is independent.
fn dependences(
    ifs: &Ifs,
    letters: &[usize],
    b: usize,
    cfg: &FactorConfig,
) -> Result<Option<Vec<(u64, u64)>>, NumError> {
    let rb = ifs.spec.ratio(b);
    let mut out = Vec::with_capacity(letters.len());
    for &a in letters {
        match mult_dependence(ifs.spec.ratio(a), rb, cfg)? {
            Some(pq) => out.push(pq),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Exponents `(u, v, w)` with `ρ_x^u = ρ_b^v = ρ_y^w` given the dependences
/// of `x` and `y` on `b`.
fn common(dx: (u64, u64), dy: (u64, u64)) -> (u64, u64, u64) {
    let v = dx.1.lcm(&dy.1);
    (dx.0 * v / dx.1, v, dy.0 * v / dy.1)
}

fn exp(e: u64) -> Result<u32, DecideError> {
    u32::try_from(e).map_err(|_| DecideError::Overflow(e))
}

/// The explicit witnesses for every touching letter when either condition
/// holds, the first condition tried first.
pub fn corollary_fastpath(
    ifs: &Ifs,
    cfg: &FactorConfig,
) -> Result<Option<(FastPathCondition, Vec<SubstitutabilityWitness>)>, DecideError> {
    let n = ifs.n();
    let ts = &ifs.ts;
    let touching: Vec<usize> = ts.sigma_t.iter().copied().collect();

    // condition (1): relative to ρ_n, right witnesses
    let mut first = vec![1, n, ts.alpha];
    first.extend(touching.iter().map(|i| i + 1));
    if dependences(ifs, &first, n, cfg)?.is_some() {
        let mut out = Vec::new();
        for &i in &touching {
            let dx = mult_dependence(ifs.spec.ratio(ts.alpha), ifs.spec.ratio(n), cfg)?.expect("dependent");
            let dy = mult_dependence(ifs.spec.ratio(i + 1), ifs.spec.ratio(n), cfg)?.expect("dependent");
            let (u, v, w) = common(dx, dy);
            let j = Word::letter(i)
                .push_repeat(i + 1, (w - 1) as usize)
                .push_repeat(ts.alpha, u as usize);
            out.push(SubstitutabilityWitness {
                side: WitnessSide::Right,
                letter: i,
                k: exp(2 * v)?,
                k_prime: 0,
                j,
            });
        }
        return finish(ifs, FastPathCondition::First, out);
    }

    // condition (2): relative to ρ_1, left witnesses
    let x = n - ts.beta + 1;
    let mut second = vec![1, n, x];
    second.extend(touching.iter().copied());
    if dependences(ifs, &second, 1, cfg)?.is_some() {
        let mut out = Vec::new();
        for &i in &touching {
            let dx = mult_dependence(ifs.spec.ratio(x), ifs.spec.ratio(1), cfg)?.expect("dependent");
            let dy = mult_dependence(ifs.spec.ratio(i), ifs.spec.ratio(1), cfg)?.expect("dependent");
            let (u, v, w) = common(dx, dy);
            let j = Word::letter(i + 1)
                .push_repeat(i, (w - 1) as usize)
                .push_repeat(x, u as usize);
            out.push(SubstitutabilityWitness {
                side: WitnessSide::Left,
                letter: i,
                k: exp(2 * v)?,
                k_prime: 0,
                j,
            });
        }
        return finish(ifs, FastPathCondition::Second, out);
    }
    Ok(None)
}

fn finish(
    ifs: &Ifs,
    cond: FastPathCondition,
    out: Vec<SubstitutabilityWitness>,
) -> Result<Option<(FastPathCondition, Vec<SubstitutabilityWitness>)>, DecideError> {
    if let Some(bad) = out.iter().find(|w| !w.verify(ifs)) {
        return Err(DecideError::Unverified(bad.clone()));
    }
    Ok(Some((cond, out)))
}
