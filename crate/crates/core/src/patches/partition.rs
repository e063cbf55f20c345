use crate::exactnum::Real;
use crate::ifscore::{
    canonical, difference, intersect, words_touch, CylinderUnion, Ifs, Side, Word,
};

use super::patch::{c_family, c_set, check_orientation, delta};
use super::{gap_partition, PatchConfig, PatchError};

/// A finite family of pairwise disjoint sets covering a parent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub level: usize,
    pub pieces: Vec<CylinderUnion>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `‖𝒫‖`, the largest piece diameter.
    pub fn norm(&self, ifs: &Ifs) -> Result<Real, PatchError> {
        let mut best = Real::zero();
        for p in &self.pieces {
            best = best.try_max(&p.diameter(ifs)?)?.clone();
        }
        Ok(best)
    }

    /// Whether the pieces are nonempty, pairwise disjoint as point sets and
    /// together make up `parent`.
    pub fn is_partition_of(&self, ifs: &Ifs, parent: &CylinderUnion) -> bool {
        let n = ifs.n();
        if self.pieces.iter().any(|p| p.is_empty()) {
            return false;
        }
        let mut tagged: Vec<(&Word, usize)> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            tagged.extend(p.words().iter().map(|w| (w, i)));
        }
        tagged.sort();
        let overlap = tagged.windows(2).any(|w| {
            w[0].0.is_prefix_of(w[1].0)
                || (w[0].1 != w[1].1 && words_touch(&ifs.ts, w[0].0, w[1].0))
        });
        if overlap {
            return false;
        }
        let all: Vec<Word> = tagged.into_iter().map(|(w, _)| w.clone()).collect();
        canonical(&all, n) == canonical(parent.words(), n)
    }

    /// Whether every piece of `self` lies inside a piece of `coarser`.
    pub fn refines(&self, ifs: &Ifs, coarser: &Partition) -> bool {
        let loc = Locator::new(coarser);
        self.pieces.iter().all(|p| loc.container(ifs, p).is_some())
    }
}

/// Finds the piece of a partition containing a given set.
struct Locator<'a> {
    partition: &'a Partition,
    index: Vec<(&'a Word, usize)>,
}

impl<'a> Locator<'a> {
    fn new(partition: &'a Partition) -> Self {
        let mut index: Vec<(&Word, usize)> = Vec::new();
        for (i, p) in partition.pieces.iter().enumerate() {
            index.extend(p.words().iter().map(|w| (w, i)));
        }
        index.sort();
        Locator { partition, index }
    }

    fn container(&self, ifs: &Ifs, set: &CylinderUnion) -> Option<usize> {
        let a = set.words().first()?;
        let pos = self.index.partition_point(|(w, _)| *w <= a);
        let hit = if pos > 0 && self.index[pos - 1].0.is_prefix_of(a) {
            Some(self.index[pos - 1].1)
        } else {
            self.index
                .get(pos)
                .filter(|(w, _)| a.is_prefix_of(w))
                .map(|&(_, i)| i)
        }?;
        set.is_subset(&self.partition.pieces[hit], ifs.n())
            .then_some(hit)
    }
}

/// The simple decomposition of `a` by `marked`: the coarsest family of sets
/// with pairwise disjoint hulls that covers `a` and contains every marked
/// set as a member.
pub fn simple_decomposition(
    ifs: &Ifs,
    a: &CylinderUnion,
    marked: &[CylinderUnion],
) -> Result<Vec<CylinderUnion>, PatchError> {
    let n = ifs.n();
    let side = a.side();
    let base = canonical(a.words(), n);
    if marked.is_empty() {
        return Ok(vec![CylinderUnion::new(side, base).expect("canonical words")]);
    }
    let bad = |index: usize, reason: &str| PatchError::Marked {
        index,
        reason: reason.to_string(),
    };
    let mut all_marked: Vec<Word> = Vec::new();
    let mut tagged: Vec<(Word, Option<usize>)> = Vec::new();
    for (i, m) in marked.iter().enumerate() {
        let words = canonical(m.words(), n);
        if words.is_empty() {
            return Err(bad(i, "empty"));
        }
        if !difference(&words, &base, n).is_empty() {
            return Err(bad(i, "not contained in the decomposed set"));
        }
        if !intersect(&words, &all_marked).is_empty() {
            return Err(bad(i, "overlaps another marked set"));
        }
        all_marked.extend(words.iter().cloned());
        tagged.extend(words.into_iter().map(|w| (w, Some(i))));
    }
    let rest = difference(&base, &all_marked, n);
    tagged.extend(rest.into_iter().map(|w| (w, None)));
    tagged.sort();

    let mut seen = vec![false; marked.len()];
    let mut pieces: Vec<(Option<usize>, Vec<Word>)> = Vec::new();
    for (idx, (w, tag)) in tagged.iter().enumerate() {
        if idx > 0 {
            let (prev, ptag) = &tagged[idx - 1];
            if ptag != tag && words_touch(&ifs.ts, prev, w) {
                let i = tag.or(*ptag).expect("one side is marked");
                return Err(bad(i, "touches the rest of the set"));
            }
        }
        match pieces.last_mut() {
            Some((t, ws)) if t == tag => ws.push(w.clone()),
            _ => {
                if let Some(i) = tag {
                    if seen[*i] {
                        return Err(bad(*i, "its hull meets other parts of the set"));
                    }
                    seen[*i] = true;
                }
                pieces.push((*tag, vec![w.clone()]));
            }
        }
    }
    Ok(pieces
        .into_iter()
        .map(|(_, ws)| CylinderUnion::new(side, canonical(&ws, n)).expect("canonical words"))
        .collect())
}

/// One level of the two partition sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionLevel {
    pub k: usize,
    /// `δ_k`.
    pub delta: Real,
    /// `𝒮_k`.
    pub s: Partition,
    /// `𝒯_k`, the refinement of `𝒮_k` cut at every gap of length `≥ δ_k`.
    pub t: Partition,
}

/// `𝒮_1, ..., 𝒮_k` and `𝒯_1, ..., 𝒯_k`.
pub fn partition_levels(
    ifs: &Ifs,
    cfg: &PatchConfig,
    k: usize,
) -> Result<Vec<PartitionLevel>, PatchError> {
    if k == 0 || k > cfg.depth_cap {
        return Err(PatchError::DepthCap {
            k,
            cap: cfg.depth_cap,
        });
    }
    check_orientation(ifs)?;
    let i0 = cfg.resolve_i0(ifs)?;
    let whole = CylinderUnion::whole(Side::T);
    let mut s = Partition {
        level: 1,
        pieces: simple_decomposition(ifs, &whole, &[c_set(ifs, i0, 1)?])?,
    };
    let mut out = Vec::with_capacity(k);
    for level in 1..=k {
        if level > 1 {
            s = refine(ifs, &s, i0, level)?;
        }
        let d = delta(ifs, i0, level)?;
        let mut pieces = Vec::new();
        for e in &s.pieces {
            pieces.extend(gap_partition(ifs, e, &d, cfg.gap_depth)?);
        }
        out.push(PartitionLevel {
            k: level,
            delta: d,
            t: Partition { level, pieces },
            s: s.clone(),
        });
    }
    Ok(out)
}

/// `𝒮_{k} = ⋃_{F ∈ 𝒮_{k−1}} SD(F, 𝒞_k(F))`.
fn refine(ifs: &Ifs, prev: &Partition, i0: usize, k: usize) -> Result<Partition, PatchError> {
    let loc = Locator::new(prev);
    let mut marked: Vec<Vec<CylinderUnion>> = vec![Vec::new(); prev.len()];
    for c in c_family(ifs, i0, k)? {
        if let Some(i) = loc.container(ifs, &c.set) {
            marked[i].push(c.set);
        }
    }
    let mut pieces = Vec::new();
    for (f, m) in prev.pieces.iter().zip(&marked) {
        pieces.extend(simple_decomposition(ifs, f, m)?);
    }
    Ok(Partition { level: k, pieces })
}

pub fn partition_s(ifs: &Ifs, cfg: &PatchConfig, k: usize) -> Result<Partition, PatchError> {
    Ok(partition_levels(ifs, cfg, k)?.pop().expect("k ≥ 1").s)
}

pub fn partition_t(ifs: &Ifs, cfg: &PatchConfig, k: usize) -> Result<Partition, PatchError> {
    Ok(partition_levels(ifs, cfg, k)?.pop().expect("k ≥ 1").t)
}
