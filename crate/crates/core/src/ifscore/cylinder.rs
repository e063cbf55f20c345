use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::exactnum::Real;

use super::{Ifs, SpecError, TouchingStructure, Word};

/// Which attractor a set of words is read on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    T,
    D,
}

/// A finite union of cylinders, stored as a sorted antichain of words.
///
/// Two cylinders of an antichain share at most a touching point, and the
/// lexicographic order of the words is the left-to-right order of the
/// cylinders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderUnion {
    side: Side,
    words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("words {0} and {1} overlap")]
pub struct NotAntichain(pub Word, pub Word);

impl CylinderUnion {
    pub fn new(side: Side, mut words: Vec<Word>) -> Result<Self, NotAntichain> {
        words.sort();
        words.dedup();
        if let Some(w) = words.windows(2).find(|w| w[0].is_prefix_of(&w[1])) {
            return Err(NotAntichain(w[0].clone(), w[1].clone()));
        }
        Ok(CylinderUnion { side, words })
    }

    pub fn whole(side: Side) -> Self {
        CylinderUnion {
            side,
            words: vec![Word::empty()],
        }
    }

    pub fn empty(side: Side) -> Self {
        CylinderUnion {
            side,
            words: Vec::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn with_side(&self, side: Side) -> Self {
        CylinderUnion {
            side,
            words: self.words.clone(),
        }
    }

    /// The image under `Ψ_prefix`.
    pub fn prefixed(&self, prefix: &Word) -> Self {
        CylinderUnion {
            side: self.side,
            words: self.words.iter().map(|w| prefix.concat(w)).collect(),
        }
    }

    pub fn canonical(&self, n: usize) -> Self {
        CylinderUnion {
            side: self.side,
            words: canonical(&self.words, n),
        }
    }

    /// Equality as point sets.
    pub fn same_set(&self, other: &CylinderUnion, n: usize) -> bool {
        canonical(&self.words, n) == canonical(&other.words, n)
    }

    pub fn union(&self, other: &CylinderUnion, n: usize) -> Self {
        let mut all = self.words.clone();
        all.extend(other.words.iter().cloned());
        CylinderUnion {
            side: self.side,
            words: canonical(&all, n),
        }
    }

    pub fn difference(&self, other: &CylinderUnion, n: usize) -> Self {
        CylinderUnion {
            side: self.side,
            words: difference(&self.words, &other.words, n),
        }
    }

    pub fn intersection(&self, other: &CylinderUnion) -> Self {
        CylinderUnion {
            side: self.side,
            words: intersect(&self.words, &other.words),
        }
    }

    /// Containment of the coded sets; for unions of cylinders this is
    /// containment of point sets.
    pub fn is_subset(&self, other: &CylinderUnion, n: usize) -> bool {
        difference(&self.words, &other.words, n).is_empty()
    }

    pub fn mirrored(&self, n: usize) -> Self {
        let mut words: Vec<Word> = self.words.iter().map(|w| w.mirrored(n)).collect();
        words.sort();
        CylinderUnion {
            side: self.side,
            words,
        }
    }

    /// The smallest closed interval containing the set.
    pub fn hull(&self, ifs: &Ifs) -> Result<(Real, Real), SpecError> {
        let first = self.words.first().expect("nonempty union");
        let last = self.words.last().expect("nonempty union");
        Ok((
            ifs.spec.cylinder_interval(first)?.0,
            ifs.spec.cylinder_interval(last)?.1,
        ))
    }

    pub fn diameter(&self, ifs: &Ifs) -> Result<Real, SpecError> {
        let (lo, hi) = self.hull(ifs)?;
        Ok(&hi - &lo)
    }
}

/// Removes words covered by a shorter word and merges complete families of
/// siblings into their parent, repeatedly.
pub fn canonical(words: &[Word], n: usize) -> Vec<Word> {
    let mut sorted: Vec<Word> = words.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut stack: Vec<Word> = Vec::with_capacity(sorted.len());
    for w in sorted {
        if stack.last().is_some_and(|top| top.is_prefix_of(&w)) {
            continue;
        }
        stack.push(w);
        while let Some(top) = stack.last() {
            if top.last() != Some(n) || stack.len() < n {
                break;
            }
            let parent = top.parent().unwrap();
            let base = stack.len() - n;
            let complete = (0..n).all(|i| {
                let s = &stack[base + i];
                s.len() == parent.len() + 1 && s.last() == Some(i + 1) && parent.is_prefix_of(s)
            });
            if !complete {
                break;
            }
            stack.truncate(base);
            stack.push(parent);
        }
    }
    stack
}

fn has_prefix_in(w: &Word, set: &HashSet<&Word>) -> bool {
    (0..=w.len()).any(|k| set.contains(&w.prefix(k)))
}

/// Words of `sorted` having `w` as a proper prefix.
fn extensions<'a>(w: &Word, sorted: &'a [Word]) -> &'a [Word] {
    let start = sorted.partition_point(|x| x <= w);
    let len = sorted[start..].partition_point(|x| w.is_prefix_of(x));
    &sorted[start..start + len]
}

pub fn intersect(a: &[Word], b: &[Word]) -> Vec<Word> {
    let mut bs = b.to_vec();
    bs.sort();
    let bset: HashSet<&Word> = bs.iter().collect();
    let mut out = Vec::new();
    for w in a {
        if has_prefix_in(w, &bset) {
            out.push(w.clone());
        } else {
            out.extend(extensions(w, &bs).iter().cloned());
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn difference(a: &[Word], b: &[Word], n: usize) -> Vec<Word> {
    let mut bs = b.to_vec();
    bs.sort();
    let bset: HashSet<&Word> = bs.iter().collect();
    let mut out = Vec::new();
    fn go(w: Word, bs: &[Word], bset: &HashSet<&Word>, n: usize, out: &mut Vec<Word>) {
        if has_prefix_in(&w, bset) {
            return;
        }
        let ext = extensions(&w, bs);
        if ext.is_empty() {
            out.push(w);
            return;
        }
        for l in 1..=n {
            go(w.push(l), ext, bset, n, out);
        }
    }
    for w in a {
        go(w.clone(), &bs, &bset, n, &mut out);
    }
    canonical(&out, n)
}

/// The complement of an antichain in the full shift.
pub fn complement(a: &[Word], n: usize) -> Vec<Word> {
    difference(&[Word::empty()], a, n)
}

/// Cylinder cover of all codings between `u·1^∞` and `v·n^∞` inclusive,
/// i.e. of `[Ψ_u(0), Ψ_v(1)] ∩ T` when `u ≤ v`.
pub fn range_cover(u: &Word, v: &Word, n: usize) -> Vec<Word> {
    if v < u && !v.is_prefix_of(u) {
        return Vec::new();
    }
    let c = u.common_prefix_len(v);
    let prefix = u.prefix(c);
    if c == u.len() || c == v.len() {
        // one word is a prefix of the other
        let mut out = Vec::new();
        if c == u.len() && c == v.len() {
            return vec![prefix];
        }
        if c == u.len() {
            // from the left end of T_u up to the end of v
            let rest = v.strip_prefix(&prefix).unwrap();
            to_cover(&rest, n, &prefix, &mut out);
        } else {
            let rest = u.strip_prefix(&prefix).unwrap();
            from_cover(&rest, n, &prefix, &mut out);
        }
        return canonical(&out, n);
    }
    let a = u.0[c] as usize;
    let b = v.0[c] as usize;
    let mut out = Vec::new();
    from_cover(&u.strip_prefix(&prefix.push(a)).unwrap(), n, &prefix.push(a), &mut out);
    for l in a + 1..b {
        out.push(prefix.push(l));
    }
    to_cover(&v.strip_prefix(&prefix.push(b)).unwrap(), n, &prefix.push(b), &mut out);
    canonical(&out, n)
}

/// Codings in `T_base` at or after `base·rest·1^∞`.
fn from_cover(rest: &Word, n: usize, base: &Word, out: &mut Vec<Word>) {
    let mut cur = base.clone();
    for l in rest.letters() {
        for m in l + 1..=n {
            out.push(cur.push(m));
        }
        cur = cur.push(l);
    }
    out.push(cur);
}

/// Codings in `T_base` at or before `base·rest·n^∞`.
fn to_cover(rest: &Word, _n: usize, base: &Word, out: &mut Vec<Word>) {
    let mut cur = base.clone();
    for l in rest.letters() {
        for m in 1..l {
            out.push(cur.push(m));
        }
        cur = cur.push(l);
    }
    out.push(cur);
}

/// Whether `T_u` and `T_v` (with `u` before `v`) share a touching point.
pub fn words_touch(ts: &TouchingStructure, u: &Word, v: &Word) -> bool {
    let c = u.common_prefix_len(v);
    if c == u.len() || c == v.len() {
        return false;
    }
    let a = u.0[c] as usize;
    let b = v.0[c] as usize;
    b == a + 1
        && ts.is_touching(a)
        && u.0[c + 1..].iter().all(|&l| l as usize == ts.n)
        && v.0[c + 1..].iter().all(|&l| l == 1)
}

/// Disjointness as point sets on the attractor described by `ts`.
pub fn point_disjoint(ts: &TouchingStructure, a: &[Word], b: &[Word]) -> bool {
    if !intersect(a, b).is_empty() {
        return false;
    }
    let mut tagged: Vec<(&Word, bool)> = a.iter().map(|w| (w, false)).collect();
    tagged.extend(b.iter().map(|w| (w, true)));
    tagged.sort();
    tagged
        .windows(2)
        .all(|p| p[0].1 == p[1].1 || !words_touch(ts, p[0].0, p[1].0))
}

/// Result of a separation query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub separate: bool,
    /// `d(A, T∖A)`; `None` when `A` is all of `T`.
    pub distance: Option<Real>,
    pub diameter: Real,
}

/// `d(A, T∖A)` and `diam A` for a cylinder union on the attractor of `ifs`.
pub fn is_separate(ifs: &Ifs, a: &CylinderUnion) -> Result<Separation, SpecError> {
    let n = ifs.spec.n();
    let diameter = a.diameter(ifs)?;
    let words = canonical(a.words(), n);
    let comp = complement(&words, n);
    let mut tagged: Vec<(&Word, bool)> = words.iter().map(|w| (w, true)).collect();
    tagged.extend(comp.iter().map(|w| (w, false)));
    tagged.sort();
    let mut distance: Option<Real> = None;
    for p in tagged.windows(2) {
        if p[0].1 == p[1].1 {
            continue;
        }
        let d = if words_touch(&ifs.ts, p[0].0, p[1].0) {
            Real::zero()
        } else {
            let hi = ifs.spec.cylinder_interval(p[0].0)?.1;
            let lo = ifs.spec.cylinder_interval(p[1].0)?.0;
            &lo - &hi
        };
        distance = Some(match distance {
            Some(cur) => cur.try_min(&d)?.clone(),
            None => d,
        });
    }
    let separate = match &distance {
        Some(d) => d.sign()? == std::cmp::Ordering::Greater,
        None => true,
    };
    Ok(Separation {
        separate,
        distance,
        diameter,
    })
}
