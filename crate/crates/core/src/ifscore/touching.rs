use std::collections::BTreeSet;

use crate::exactnum::Real;

use super::{IfsSpec, SpecError, Word};

/// The touching letters of a system and the lengths of its touching runs
/// at either end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TouchingStructure {
    pub n: usize,
    pub sigma_t: BTreeSet<usize>,
    pub alpha: usize,
    pub beta: usize,
    /// Maximal runs of touching letters at level one, left to right.
    pub blocks: Vec<Vec<usize>>,
}

impl TouchingStructure {
    pub fn is_touching(&self, a: usize) -> bool {
        self.sigma_t.contains(&a)
    }

    /// `c_1`, the number of level-one components.
    pub fn c1(&self) -> usize {
        self.blocks.len()
    }

    /// The index of the block containing letter `l`, counted from 1.
    pub fn block_of(&self, l: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&l)).expect("letter in range") + 1
    }

    pub fn block(&self, c: usize) -> &[usize] {
        &self.blocks[c - 1]
    }

    /// The structure of the mirrored system.
    pub fn mirror(&self) -> TouchingStructure {
        let n = self.n;
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .rev()
            .map(|b| b.iter().rev().map(|&l| n + 1 - l).collect())
            .collect();
        blocks.iter_mut().for_each(|b: &mut Vec<usize>| b.sort_unstable());
        TouchingStructure {
            n,
            sigma_t: self.sigma_t.iter().map(|&a| n - a).collect(),
            alpha: self.beta,
            beta: self.alpha,
            blocks,
        }
    }
}

pub fn touching_structure(spec: &IfsSpec) -> TouchingStructure {
    let n = spec.n();
    let sigma_t: BTreeSet<usize> = (1..n).filter(|&a| spec.touches(a)).collect();
    let alpha = (1..=n).take_while(|&a| a == 1 || sigma_t.contains(&(a - 1))).count();
    let beta = (1..=n)
        .take_while(|&b| b == 1 || sigma_t.contains(&(n - b + 1)))
        .count();
    let mut blocks: Vec<Vec<usize>> = vec![vec![1]];
    for l in 2..=n {
        if sigma_t.contains(&(l - 1)) {
            blocks.last_mut().unwrap().push(l);
        } else {
            blocks.push(vec![l]);
        }
    }
    TouchingStructure {
        n,
        sigma_t,
        alpha,
        beta,
        blocks,
    }
}

/// Connected components of the union of level-`m` intervals, with the
/// words each one contains.
pub fn components(spec: &IfsSpec, m: usize) -> Result<Vec<((Real, Real), Vec<Word>)>, SpecError> {
    let n = spec.n();
    let mut words = vec![Word::empty()];
    for _ in 0..m {
        words = words
            .iter()
            .flat_map(|w| (1..=n).map(move |l| w.push(l)))
            .collect();
    }
    let mut out: Vec<((Real, Real), Vec<Word>)> = Vec::new();
    for w in words {
        let (lo, hi) = spec.cylinder_interval(&w)?;
        match out.last_mut() {
            Some(((_, h), ws)) if h.exact_eq(&lo)? => {
                *h = hi;
                ws.push(w);
            }
            _ => out.push(((lo, hi), vec![w])),
        }
    }
    Ok(out)
}

/// Membership of `w` in the left and right touching word classes: words
/// ending in `j·1^k` with `j − 1` touching, and in `j·n^k` with `j`
/// touching.
pub fn sigma_lr_membership(ts: &TouchingStructure, w: &Word) -> (bool, bool) {
    let (head, _) = w.strip_trailing(1);
    let in_l = head.last().is_some_and(|j| j >= 2 && ts.is_touching(j - 1));
    let (head, _) = w.strip_trailing(ts.n);
    let in_r = head.last().is_some_and(|j| ts.is_touching(j));
    (in_l, in_r)
}
