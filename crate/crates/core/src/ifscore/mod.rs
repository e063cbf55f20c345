//! System specifications, words, cylinders and exact interval geometry.

mod affine;
mod cylinder;
mod spec;
mod touching;
mod word;

pub use affine::Similarity;
pub use cylinder::{
    canonical, complement, difference, intersect, is_separate, point_disjoint, range_cover,
    words_touch, CylinderUnion, NotAntichain, Separation, Side,
};
pub use spec::{canonical_dust, validate, IfsSpec, Role, SpecError};
pub use touching::{components, sigma_lr_membership, touching_structure, TouchingStructure};
pub use word::Word;

/// A validated system together with its touching structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ifs {
    pub spec: IfsSpec,
    pub ts: TouchingStructure,
}

impl Ifs {
    pub fn new(spec: IfsSpec) -> Self {
        let ts = touching_structure(&spec);
        Ifs { spec, ts }
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn mirror(&self) -> Ifs {
        Ifs::new(self.spec.mirror())
    }
}
