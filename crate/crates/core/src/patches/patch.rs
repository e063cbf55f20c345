use std::cmp::Ordering;

use crate::exactnum::{ratio_cmp, ExactRatio, Real};
use crate::ifscore::{CylinderUnion, Ifs, Side, Word};

use super::PatchError;

/// `L_k(T_w)`: the first `α` cylinders below `w·1^k`.
pub fn left_patch(ifs: &Ifs, w: &Word, k: usize) -> CylinderUnion {
    let base = w.push_repeat(1, k);
    let words = (1..=ifs.ts.alpha).map(|j| base.push(j)).collect();
    CylinderUnion::new(Side::T, words).expect("siblings form an antichain")
}

/// `R_k(T_w)`: the last `β` cylinders below `w·n^k`.
pub fn right_patch(ifs: &Ifs, w: &Word, k: usize) -> CylinderUnion {
    let n = ifs.n();
    let base = w.push_repeat(n, k);
    let words = (n - ifs.ts.beta + 1..=n).map(|j| base.push(j)).collect();
    CylinderUnion::new(Side::T, words).expect("siblings form an antichain")
}

pub(crate) fn check_orientation(ifs: &Ifs) -> Result<(), PatchError> {
    let n = ifs.n();
    if ratio_cmp(ifs.spec.ratio(1), ifs.spec.ratio(n))? == Ordering::Less {
        return Err(PatchError::Orientation);
    }
    Ok(())
}

/// `τ(k)`, the unique `m` with `ρ_n^k ρ_1 < ρ_1^m ≤ ρ_n^k`.
pub fn tau(ifs: &Ifs, k: usize) -> Result<usize, PatchError> {
    check_orientation(ifs)?;
    let r1 = ifs.spec.ratio(1);
    let target = ifs.spec.ratio(ifs.n()).pow(k as u32);
    // start just below the floating estimate and walk up
    let est = (k as f64 * ifs.spec.ratio(ifs.n()).ln() / r1.ln()).floor() as usize;
    let mut m = est.saturating_sub(2).max(k);
    let mut pw = r1.pow(m as u32);
    while ratio_cmp(&pw, &target)? == Ordering::Greater {
        pw = pw.mul(r1);
        m += 1;
    }
    Ok(m)
}

/// `C^k = R_k(T_{i0}) ∪ L_{τ(k)}(T_{i0+1})`.
pub fn c_set(ifs: &Ifs, i0: usize, k: usize) -> Result<CylinderUnion, PatchError> {
    if !ifs.ts.is_touching(i0) {
        return Err(PatchError::NotTouching(i0));
    }
    let right = right_patch(ifs, &Word::letter(i0), k);
    let left = left_patch(ifs, &Word::letter(i0 + 1), tau(ifs, k)?);
    Ok(right.union(&left, ifs.n()))
}

/// A member `Ψ_w(C^j)` of `𝒞_{|w|+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSet {
    pub prefix: Word,
    pub level: usize,
    pub set: CylinderUnion,
}

pub(crate) fn words_of_length(n: usize, m: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..m {
        out = out
            .iter()
            .flat_map(|w| (1..=n).map(move |l| w.push(l)))
            .collect();
    }
    out
}

/// `𝒞_k = {Ψ_w(C^j) : |w| + j = k, j ≥ 1}`.
pub fn c_family(ifs: &Ifs, i0: usize, k: usize) -> Result<Vec<CSet>, PatchError> {
    let mut out = Vec::new();
    for j in 1..=k {
        let c = c_set(ifs, i0, j)?;
        for w in words_of_length(ifs.n(), k - j) {
            out.push(CSet {
                set: c.prefixed(&w),
                prefix: w,
                level: j,
            });
        }
    }
    Ok(out)
}

/// `δ_k`, the largest diameter in `𝒞_k`.
pub fn delta(ifs: &Ifs, i0: usize, k: usize) -> Result<Real, PatchError> {
    let rmax = max_ratio(ifs)?;
    let mut best: Option<Real> = None;
    for j in 1..=k {
        let d = c_set(ifs, i0, j)?.diameter(ifs)?;
        let scaled = &d * rmax.pow((k - j) as u32).value();
        best = Some(match best {
            Some(b) => b.try_max(&scaled)?.clone(),
            None => scaled,
        });
    }
    best.ok_or(PatchError::Empty)
}

pub(crate) fn max_ratio(ifs: &Ifs) -> Result<ExactRatio, PatchError> {
    let mut rmax = ifs.spec.ratio(1).clone();
    for r in ifs.spec.ratios() {
        if ratio_cmp(r, &rmax)? == Ordering::Greater {
            rmax = r.clone();
        }
    }
    Ok(rmax)
}
