use crate::exactnum::{NumError, Real};

/// An increasing similarity `x ↦ offset + scale·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Similarity {
    pub scale: Real,
    pub offset: Real,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity {
            scale: Real::one(),
            offset: Real::zero(),
        }
    }

    pub fn new(scale: Real, offset: Real) -> Self {
        Similarity { scale, offset }
    }

    pub fn apply(&self, x: &Real) -> Real {
        &self.offset + &(&self.scale * x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            scale: &self.scale * &other.scale,
            offset: self.apply(&other.offset),
        }
    }

    pub fn inverse(&self) -> Result<Similarity, NumError> {
        let inv = self.scale.recip()?;
        Ok(Similarity {
            offset: -(&inv * &self.offset),
            scale: inv,
        })
    }
}
