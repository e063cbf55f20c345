use std::cmp::Ordering;

use crate::exactnum::Real;
use crate::ifscore::{canonical, intersect, range_cover, words_touch, CylinderUnion, Ifs, Word};

use super::PatchError;

/// A bounded complementary interval `(lo, hi)` of a set.
///
/// `left` is the cylinder whose right endpoint is `lo` and `right` the one
/// whose left endpoint is `hi`; both cylinders lie in the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub lo: Real,
    pub hi: Real,
    pub left: Word,
    pub right: Word,
}

impl Gap {
    pub fn length(&self) -> Real {
        &self.hi - &self.lo
    }
}

struct Search<'a> {
    ifs: &'a Ifs,
    delta: &'a Real,
    gmax: Real,
    max_depth: usize,
    out: Vec<Gap>,
}

impl Search<'_> {
    fn at_least_delta(&self, len: &Real) -> Result<bool, PatchError> {
        Ok(len.try_cmp(self.delta)? != Ordering::Less)
    }

    fn boundary(&mut self, u: &Word, v: &Word) -> Result<(), PatchError> {
        let lo = self.ifs.spec.cylinder_interval(u)?.1;
        let hi = self.ifs.spec.cylinder_interval(v)?.0;
        if self.at_least_delta(&(&hi - &lo))? {
            self.out.push(Gap {
                lo,
                hi,
                left: u.clone(),
                right: v.clone(),
            });
        }
        Ok(())
    }

    fn inside(&mut self, x: &Word, depth: usize) -> Result<(), PatchError> {
        let rx = self.ifs.spec.word_ratio(x);
        if !self.at_least_delta(&(rx.value() * &self.gmax))? {
            return Ok(());
        }
        if depth >= self.max_depth {
            return Err(PatchError::GapDepth(self.max_depth));
        }
        let n = self.ifs.n();
        for a in 1..=n {
            self.inside(&x.push(a), depth + 1)?;
            if a < n && !self.ifs.ts.is_touching(a) {
                self.boundary(&x.push(a), &x.push(a + 1))?;
            }
        }
        Ok(())
    }
}

/// All gaps of `set` of length at least `delta`, left to right.
pub fn gaps(
    ifs: &Ifs,
    set: &CylinderUnion,
    delta: &Real,
    max_depth: usize,
) -> Result<Vec<Gap>, PatchError> {
    let n = ifs.n();
    let words = canonical(set.words(), n);
    if words.is_empty() {
        return Err(PatchError::Empty);
    }
    let mut gmax = Real::zero();
    for a in (1..n).filter(|&a| !ifs.ts.is_touching(a)) {
        gmax = gmax.try_max(ifs.spec.gap(a))?.clone();
    }
    let mut s = Search {
        ifs,
        delta,
        gmax,
        max_depth,
        out: Vec::new(),
    };
    for (i, w) in words.iter().enumerate() {
        s.inside(w, 0)?;
        if let Some(next) = words.get(i + 1) {
            if !words_touch(&ifs.ts, w, next) {
                s.boundary(w, next)?;
            }
        }
    }
    Ok(s.out)
}

/// `𝒫(E, δ)`: the traces of `E` on the pieces of its hull left after
/// removing every gap of length at least `δ`.
pub fn gap_partition(
    ifs: &Ifs,
    set: &CylinderUnion,
    delta: &Real,
    max_depth: usize,
) -> Result<Vec<CylinderUnion>, PatchError> {
    let n = ifs.n();
    let gs = gaps(ifs, set, delta, max_depth)?;
    let words = canonical(set.words(), n);
    let mut out = Vec::with_capacity(gs.len() + 1);
    let mut from = Word::empty();
    for g in gs.iter().map(Some).chain(std::iter::once(None)) {
        let to = g.map(|g| g.left.clone()).unwrap_or_default();
        // only the words whose cylinders meet the range can contribute
        let lo = words.partition_point(|w| *w < from && !w.is_prefix_of(&from));
        let hi = words.partition_point(|w| *w <= to || to.is_prefix_of(w));
        let slice = &words[lo..hi.max(lo)];
        let piece = canonical(&intersect(slice, &range_cover(&from, &to, n)), n);
        out.push(CylinderUnion::new(set.side(), piece).expect("canonical words"));
        if let Some(g) = g {
            from = g.right.clone();
        }
    }
    Ok(out)
}
