use std::cmp::Ordering;
use std::sync::Arc;

use crate::exactnum::{BaseTable, ExactRatio, NumError, Real};

use super::{Similarity, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// First-level intervals may touch; at least one pair does.
    Touching,
    /// First-level intervals are pairwise disjoint.
    Dust,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("at least 3 maps are required, got {0}")]
    TooFewMaps(usize),
    #[error("{ratios} ratios but {translations} translations")]
    LengthMismatch { ratios: usize, translations: usize },
    #[error("ratio {index} is not in (0, 1)")]
    RatioRange { index: usize },
    #[error("map 1 must send 0 to 0")]
    LeftEndpoint,
    #[error("map {index} must send 1 to 1")]
    RightEndpoint { index: usize },
    #[error("the intervals of maps {index} and {} overlap or are out of order", index + 1)]
    Overlap { index: usize },
    #[error("no touching letter: the system is dust-like")]
    NoTouching,
    #[error("every neighbouring pair touches, so the ratios sum to 1 and no gap is left")]
    NoGap,
    #[error("maps {index} and {} touch in a dust-like system", index + 1)]
    TouchingInDust { index: usize },
    #[error("ratios sum to at least 1, so no dust-like system exists")]
    RatioSum,
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A validated system of increasing similarities `x ↦ ρ_i x + t_i` on [0, 1].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IfsSpec {
    ratios: Vec<ExactRatio>,
    translations: Vec<Real>,
    role: Role,
    table: Option<Arc<BaseTable>>,
    maps: Vec<Similarity>,
    gaps: Vec<Real>,
    touching: Vec<bool>,
}

fn table_of(ratios: &[ExactRatio], translations: &[Real]) -> Option<Arc<BaseTable>> {
    ratios
        .iter()
        .filter_map(ExactRatio::table)
        .chain(translations.iter().filter_map(Real::table))
        .next()
        .cloned()
}

/// Checks the geometry of a system and returns it in validated form.
pub fn validate(
    ratios: Vec<ExactRatio>,
    translations: Vec<Real>,
    role: Role,
) -> Result<IfsSpec, SpecError> {
    let n = ratios.len();
    if n < 3 {
        return Err(SpecError::TooFewMaps(n));
    }
    if translations.len() != n {
        return Err(SpecError::LengthMismatch {
            ratios: n,
            translations: translations.len(),
        });
    }
    for (i, r) in ratios.iter().enumerate() {
        if !r.is_contraction()? {
            return Err(SpecError::RatioRange { index: i + 1 });
        }
    }
    if translations[0].sign()? != Ordering::Equal {
        return Err(SpecError::LeftEndpoint);
    }
    let right = &translations[n - 1] + ratios[n - 1].value();
    if !right.exact_eq(&Real::one())? {
        return Err(SpecError::RightEndpoint { index: n });
    }
    let mut gaps = Vec::with_capacity(n - 1);
    let mut touching = Vec::with_capacity(n - 1);
    for a in 0..n - 1 {
        let g = &(&translations[a + 1] - &translations[a]) - ratios[a].value();
        match g.sign()? {
            Ordering::Less => return Err(SpecError::Overlap { index: a + 1 }),
            Ordering::Equal => {
                if role == Role::Dust {
                    return Err(SpecError::TouchingInDust { index: a + 1 });
                }
                touching.push(true);
            }
            Ordering::Greater => touching.push(false),
        }
        gaps.push(if touching[a] { Real::zero() } else { g });
    }
    if role == Role::Touching {
        if !touching.iter().any(|&t| t) {
            return Err(SpecError::NoTouching);
        }
        if touching.iter().all(|&t| t) {
            return Err(SpecError::NoGap);
        }
    }
    let table = table_of(&ratios, &translations);
    let maps = ratios
        .iter()
        .zip(&translations)
        .map(|(r, t)| Similarity::new(r.value().clone(), t.clone()))
        .collect();
    Ok(IfsSpec {
        ratios,
        translations,
        role,
        table,
        maps,
        gaps,
        touching,
    })
}

/// The equally spaced dust-like system with the given ratios.
pub fn canonical_dust(ratios: &[ExactRatio]) -> Result<IfsSpec, SpecError> {
    let n = ratios.len();
    if n < 3 {
        return Err(SpecError::TooFewMaps(n));
    }
    let sum = ratios.iter().fold(Real::zero(), |acc, r| &acc + r.value());
    if !sum.lt(&Real::one())? {
        return Err(SpecError::RatioSum);
    }
    let gap = (&Real::one() - &sum).checked_div(&Real::int(n as i64 - 1))?;
    let mut translations = Vec::with_capacity(n);
    let mut t = Real::zero();
    for r in ratios {
        translations.push(t.clone());
        t = &(&t + r.value()) + &gap;
    }
    validate(ratios.to_vec(), translations, Role::Dust)
}

impl IfsSpec {
    pub fn n(&self) -> usize {
        self.ratios.len()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn ratios(&self) -> &[ExactRatio] {
        &self.ratios
    }

    /// `ρ_l` for a letter `l ∈ 1..=n`.
    pub fn ratio(&self, l: usize) -> &ExactRatio {
        &self.ratios[l - 1]
    }

    pub fn translations(&self) -> &[Real] {
        &self.translations
    }

    pub fn table(&self) -> Option<&Arc<BaseTable>> {
        self.table.as_ref()
    }

    pub fn map(&self, l: usize) -> &Similarity {
        &self.maps[l - 1]
    }

    /// Whether `Ψ_a(1) = Ψ_{a+1}(0)`.
    pub fn touches(&self, a: usize) -> bool {
        a >= 1 && a < self.n() && self.touching[a - 1]
    }

    /// Length of the gap between the intervals of `a` and `a + 1`.
    pub fn gap(&self, a: usize) -> &Real {
        &self.gaps[a - 1]
    }

    pub fn is_equal_ratio(&self) -> bool {
        self.ratios.windows(2).all(|w| w[0] == w[1])
    }

    pub fn check_word(&self, w: &Word) -> Result<(), SpecError> {
        match w.letters().find(|&l| l == 0 || l > self.n()) {
            Some(letter) => Err(SpecError::LetterOutOfRange { letter, n: self.n() }),
            None => Ok(()),
        }
    }

    /// `ρ_w`.
    pub fn word_ratio(&self, w: &Word) -> ExactRatio {
        ExactRatio::product(w.letters().map(|l| self.ratio(l)))
    }

    /// The similarity `Ψ_w = Ψ_{w_1} ∘ ... ∘ Ψ_{w_m}`.
    pub fn word_map(&self, w: &Word) -> Similarity {
        let mut scale = Real::one();
        let mut offset = Real::zero();
        for l in w.letters() {
            let m = self.map(l);
            offset = &offset + &(&scale * &m.offset);
            scale = &scale * &m.scale;
        }
        Similarity { scale, offset }
    }

    /// `[Ψ_w(0), Ψ_w(1)]`.
    pub fn cylinder_interval(&self, w: &Word) -> Result<(Real, Real), SpecError> {
        self.check_word(w)?;
        let m = self.word_map(w);
        let hi = &m.offset + &m.scale;
        Ok((m.offset, hi))
    }

    /// The same system reflected about 1/2, letters reversed.
    pub fn mirror(&self) -> IfsSpec {
        let n = self.n();
        let ratios: Vec<ExactRatio> = (1..=n).rev().map(|l| self.ratio(l).clone()).collect();
        let translations: Vec<Real> = (1..=n)
            .rev()
            .map(|l| &(&Real::one() - &self.translations[l - 1]) - self.ratio(l).value())
            .collect();
        validate(ratios, translations, self.role).expect("mirror of a valid system")
    }

    /// `Σ ρ_i`.
    pub fn ratio_sum(&self) -> Real {
        self.ratios.iter().fold(Real::zero(), |acc, r| &acc + r.value())
    }
}
