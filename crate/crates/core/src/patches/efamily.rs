use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::exactnum::ratio_cmp;
use crate::ifscore::{CylinderUnion, Ifs, Side, Word};

use super::PatchError;

fn check_shape(ifs: &Ifs) -> Result<(), PatchError> {
    if ifs.n() != 4 {
        return Err(PatchError::Shape(format!("need 4 maps, got {}", ifs.n())));
    }
    if ratio_cmp(ifs.spec.ratio(1), ifs.spec.ratio(4))? != Ordering::Equal {
        return Err(PatchError::Shape("need ρ_1 = ρ_4".into()));
    }
    if ifs.ts.sigma_t != BTreeSet::from([2]) {
        return Err(PatchError::Shape("need Σ_T = {2}".into()));
    }
    Ok(())
}

/// `E_k = T_{2·4^k} ∪ T_{3·1^k}`.
pub fn e_set(k: usize) -> CylinderUnion {
    CylinderUnion::new(
        Side::T,
        vec![Word::letter(2).push_repeat(4, k), Word::letter(3).push_repeat(1, k)],
    )
    .expect("disjoint words")
}

/// `ℰ_1, ..., ℰ_k` for a four-map system with `ρ_1 = ρ_4` and `Σ_T = {2}`.
pub fn e_family_levels(ifs: &Ifs, k: usize) -> Result<Vec<Vec<CylinderUnion>>, PatchError> {
    check_shape(ifs)?;
    if k == 0 {
        return Err(PatchError::Shape("levels start at 1".into()));
    }
    let cyl = |w: Word| CylinderUnion::new(Side::T, vec![w]).expect("single word");
    let mut cur = vec![cyl(Word::letter(1)), cyl(Word::letter(4)), e_set(0)];
    let mut out = vec![cur.clone()];
    for level in 1..k {
        let fours = cyl(Word::repeat(4, level));
        let ones = cyl(Word::repeat(1, level));
        let mut next = Vec::with_capacity(4 * cur.len());
        for l in [1, 4] {
            next.extend(cur.iter().map(|a| a.prefixed(&Word::letter(l))));
        }
        next.extend(cur.iter().filter(|a| **a != fours).map(|a| a.prefixed(&Word::letter(2))));
        next.extend(cur.iter().filter(|a| **a != ones).map(|a| a.prefixed(&Word::letter(3))));
        next.push(e_set(level));
        out.push(next.clone());
        cur = next;
    }
    Ok(out)
}

/// `ℰ_k`.
pub fn e_family(ifs: &Ifs, k: usize) -> Result<Vec<CylinderUnion>, PatchError> {
    Ok(e_family_levels(ifs, k)?.pop().expect("k ≥ 1"))
}
