//! The subcategory generated by `Δ`-images under kernels, and projectivity.

use super::{AbCat, AbMor, FreydError, Presentation};
use crate::additive::AddMor;

/// How an object is built from `Δ`-images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatStep {
    Generator(usize),
    Sum(Vec<FlatStep>),
    /// Kernel of a morphism between two built objects, given on the envelope.
    Kernel {
        map: AddMor,
        src: Box<FlatStep>,
        dst: Box<FlatStep>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatWitness {
    /// `iso` goes from the object built by `tree` to the queried object.
    InFlat {
        tree: FlatStep,
        iso: AbMor,
    },
    NotShown,
}

fn sum_of(x: &[usize]) -> FlatStep {
    if x.len() == 1 {
        FlatStep::Generator(x[0])
    } else {
        FlatStep::Sum(x.iter().map(|&v| FlatStep::Generator(v)).collect())
    }
}

impl AbCat {
    /// Object built by a construction tree.
    pub fn build_flat(&self, t: &FlatStep) -> Presentation {
        match t {
            FlatStep::Generator(v) => self.delta(*v),
            FlatStep::Sum(parts) => {
                let xs: Vec<Presentation> = parts.iter().map(|p| self.build_flat(p)).collect();
                self.direct_sum(&xs)
            }
            FlatStep::Kernel { map, .. } => self.ker_of(map),
        }
    }

    /// Sound but incomplete membership test: looks for `x ≅ ker Δ(b)` through the
    /// canonical comparison map, which is always epi.
    pub fn flat_membership(&self, x: &Presentation) -> FlatWitness {
        let k = self.ker_of(&x.b);
        let z = self.add.zero_obj();
        let cmp = AbMor {
            src: k,
            dst: x.clone(),
            beta: self.add.identity(x.mid()),
            alpha: self.add.zero(&z, x.top()),
            gamma: self.add.identity(x.bottom()),
        };
        if !self.is_mono(&cmp) {
            return FlatWitness::NotShown;
        }
        let tree = if x.bottom().is_empty() {
            sum_of(x.mid())
        } else {
            FlatStep::Kernel {
                map: x.b.clone(),
                src: Box::new(sum_of(x.mid())),
                dst: Box::new(sum_of(x.bottom())),
            }
        };
        FlatWitness::InFlat { tree, iso: cmp }
    }

    /// Does every map `x -> dst(e)` lift along the epimorphism `e`?
    pub fn is_projective_against(&self, x: &Presentation, e: &AbMor) -> Result<bool, FreydError> {
        if !self.is_epi(e) {
            return Err(FreydError::NotEpi);
        }
        let h = self.hom(x, &e.dst)?;
        Ok(h.gens.iter().all(|g| self.lift(e, g).is_some()))
    }
}
