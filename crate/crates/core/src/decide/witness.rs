use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::ExactRatio;
use crate::ifscore::{Ifs, Word};

/// Which side of a touching point a witness substitutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSide {
    Left,
    Right,
}

impl fmt::Display for WitnessSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessSide::Left => "left",
            WitnessSide::Right => "right",
        })
    }
}

/// Exponents and word showing that touching letter `letter` is left or
/// right substitutable.
///
/// Left: `ρ_{i+1} ρ_1^k = ρ_i ρ_1^{k'} ρ_j`, right:
/// `ρ_i ρ_n^k = ρ_{i+1} ρ_n^{k'} ρ_j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubstitutabilityWitness {
    pub side: WitnessSide,
    pub letter: usize,
    pub k: u32,
    pub k_prime: u32,
    pub j: Word,
}

impl fmt::Display for SubstitutabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: k = {}, k' = {}, j = {}",
            self.side, self.letter, self.k, self.k_prime, self.j
        )
    }
}

/// Whether `l` may end the word `j` of a witness on `side`.
pub fn admissible_last(ifs: &Ifs, side: WitnessSide, l: usize) -> bool {
    let n = ifs.n();
    match side {
        WitnessSide::Left => l != 1 && !(l > 1 && ifs.ts.is_touching(l - 1)),
        WitnessSide::Right => l != n && !ifs.ts.is_touching(l),
    }
}

impl SubstitutabilityWitness {
    /// The anchor letter whose powers appear: 1 on the left, `n` on the right.
    pub fn anchor(&self, n: usize) -> usize {
        match self.side {
            WitnessSide::Left => 1,
            WitnessSide::Right => n,
        }
    }

    /// `k' + |j|`, the quantity the decomposition exponents must exceed.
    pub fn size(&self) -> usize {
        self.k_prime as usize + self.j.len()
    }

    /// Re-checks the defining identity by exact multiplication.
    pub fn verify(&self, ifs: &Ifs) -> bool {
        let n = ifs.n();
        let i = self.letter;
        if !ifs.ts.is_touching(i) || !self.j.in_range(n) {
            return false;
        }
        match self.j.last() {
            Some(l) if admissible_last(ifs, self.side, l) => {}
            _ => return false,
        }
        let spec = &ifs.spec;
        let anchor = spec.ratio(self.anchor(n));
        let (lhs_letter, rhs_letter) = match self.side {
            WitnessSide::Left => (i + 1, i),
            WitnessSide::Right => (i, i + 1),
        };
        let lhs = spec.ratio(lhs_letter).mul(&anchor.pow(self.k));
        let rhs = ExactRatio::product([
            spec.ratio(rhs_letter),
            &anchor.pow(self.k_prime),
            &spec.word_ratio(&self.j),
        ]);
        lhs == rhs
    }
}
