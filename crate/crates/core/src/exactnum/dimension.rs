use super::{ExactRatio, NumError};

pub const DEFAULT_TOL: f64 = 1e-12;

fn moran_sum(logs: &[f64], s: f64) -> f64 {
    logs.iter().map(|l| (s * l).exp()).sum::<f64>() - 1.0
}

/// The unique `s` with `Σ ρ_i^s = 1`, by bisection.
///
/// The root lies in (0, 1] whenever `Σ ρ_i ≤ 1`; for larger sums the
/// bracket is widened upwards. A single ratio has no root.
pub fn moran_dimension(ratios: &[ExactRatio], tol: f64) -> Result<f64, NumError> {
    if ratios.is_empty() {
        return Err(NumError::NoDimension("empty ratio list".into()));
    }
    let logs: Vec<f64> = ratios.iter().map(ExactRatio::ln).collect();
    if logs.iter().any(|l| !l.is_finite() || *l >= 0.0) {
        return Err(NumError::NoDimension("ratios must lie in (0, 1)".into()));
    }
    if ratios.len() == 1 {
        return Err(NumError::NoDimension(
            "a single ratio gives ρ^s < 1 for every s > 0".into(),
        ));
    }
    let mut lo = 1e-9;
    let mut hi = 1.0;
    while moran_sum(&logs, lo) <= 0.0 {
        lo /= 2.0;
    }
    while moran_sum(&logs, hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut best = hi;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = moran_sum(&logs, mid);
        if f.abs() < moran_sum(&logs, best).abs() {
            best = mid;
        }
        if f == 0.0 {
            break;
        }
        if f > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    for cand in [lo, hi] {
        if moran_sum(&logs, cand).abs() < moran_sum(&logs, best).abs() {
            best = cand;
        }
    }
    if moran_sum(&logs, best).abs() > tol {
        return Err(NumError::NoDimension(format!(
            "tolerance {tol:e} not reachable in double precision"
        )));
    }
    Ok(best)
}
