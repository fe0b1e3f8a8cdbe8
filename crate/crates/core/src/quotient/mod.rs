//! Thick subcategories, membership certificates and Serre quotients.

mod search;
mod serre;

pub use serre::{quotient_by_gens, Answer, Evidence, Formal, Mode, QuotientHom, SerreQuotient};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freyd::{AbCat, AbMor, FreydError, Presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("operation needs a quotient given by a realization")]
    FormalModeUnsupported,
    #[error("hom module did not stabilize within {0} stages")]
    NonStabilized(usize),
    #[error("realization does not kill generator {0}")]
    NotSeparating(String),
    #[error(transparent)]
    Freyd(#[from] FreydError),
}

/// Generators of a thick subcategory, with display labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickGens {
    pub objects: Vec<Presentation>,
    pub labels: Vec<String>,
}

impl ThickGens {
    pub fn new() -> ThickGens {
        ThickGens {
            objects: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, x: Presentation) -> usize {
        self.objects.push(x);
        self.labels.push(label.into());
        self.objects.len() - 1
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
}

impl Default for ThickGens {
    fn default() -> Self {
        ThickGens::new()
    }
}

/// Proof tree that an object lies in the thick subcategory generated by a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Certificate {
    Gen {
        index: usize,
    },
    Zero {
        object: Presentation,
    },
    /// `iso: X -> Y` with `Y` certified.
    IsoTo {
        iso: AbMor,
        of: Box<Certificate>,
    },
    /// `mono: X -> Y` with `Y` certified.
    SubOf {
        mono: AbMor,
        of: Box<Certificate>,
    },
    /// `epi: Y -> X` with `Y` certified.
    QuotOf {
        epi: AbMor,
        of: Box<Certificate>,
    },
    /// `0 -> A --mono--> X --epi--> B -> 0` with `A` and `B` certified.
    ExtOf {
        mono: AbMor,
        epi: AbMor,
        sub: Box<Certificate>,
        quot: Box<Certificate>,
    },
}

impl Certificate {
    /// The object this certificate is about.
    pub fn subject(&self, gens: &ThickGens) -> Option<Presentation> {
        Some(match self {
            Certificate::Gen { index } => gens.objects.get(*index)?.clone(),
            Certificate::Zero { object } => object.clone(),
            Certificate::IsoTo { iso, .. } => iso.src.clone(),
            Certificate::SubOf { mono, .. } => mono.src.clone(),
            Certificate::QuotOf { epi, .. } => epi.dst.clone(),
            Certificate::ExtOf { mono, .. } => mono.dst.clone(),
        })
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Certificate::Gen { .. } | Certificate::Zero { .. } => 1,
            Certificate::IsoTo { of, .. }
            | Certificate::SubOf { of, .. }
            | Certificate::QuotOf { of, .. } => 1 + of.size(),
            Certificate::ExtOf { sub, quot, .. } => 1 + sub.size() + quot.size(),
        }
    }

    pub fn uses_generator(&self, i: usize) -> bool {
        match self {
            Certificate::Gen { index } => *index == i,
            Certificate::Zero { .. } => false,
            Certificate::IsoTo { of, .. }
            | Certificate::SubOf { of, .. }
            | Certificate::QuotOf { of, .. } => of.uses_generator(i),
            Certificate::ExtOf { sub, quot, .. } => sub.uses_generator(i) || quot.uses_generator(i),
        }
    }
}

fn well_formed(cat: &AbCat, f: &AbMor) -> bool {
    let shapes =
        |m: &crate::additive::AddMor, s: &Vec<usize>, d: &Vec<usize>| m.src == *s && m.dst == *d;
    shapes(&f.beta, f.src.mid(), f.dst.mid())
        && shapes(&f.alpha, f.src.top(), f.dst.top())
        && shapes(&f.gamma, f.src.bottom(), f.dst.bottom())
        && cat.validate(f).is_ok()
}

/// Check every node of a certificate; false on anything malformed.
pub fn verify_certificate(cat: &AbCat, gens: &ThickGens, cert: &Certificate) -> bool {
    let sub_is = |c: &Certificate, x: &Presentation| c.subject(gens).as_ref() == Some(x);
    match cert {
        Certificate::Gen { index } => *index < gens.len(),
        Certificate::Zero { object } => cat.is_zero_obj(object),
        Certificate::IsoTo { iso, of } => {
            well_formed(cat, iso)
                && sub_is(of, &iso.dst)
                && cat.is_iso(iso)
                && verify_certificate(cat, gens, of)
        }
        Certificate::SubOf { mono, of } => {
            well_formed(cat, mono)
                && sub_is(of, &mono.dst)
                && cat.is_mono(mono)
                && verify_certificate(cat, gens, of)
        }
        Certificate::QuotOf { epi, of } => {
            well_formed(cat, epi)
                && sub_is(of, &epi.src)
                && cat.is_epi(epi)
                && verify_certificate(cat, gens, of)
        }
        Certificate::ExtOf {
            mono,
            epi,
            sub,
            quot,
        } => {
            well_formed(cat, mono)
                && well_formed(cat, epi)
                && mono.dst == epi.src
                && sub_is(sub, &mono.src)
                && sub_is(quot, &epi.dst)
                && cat.is_mono(mono)
                && cat.is_epi(epi)
                && cat.is_null(&cat.compose(epi, mono))
                && cat.lift(mono, &cat.kernel(epi)).is_some()
                && verify_certificate(cat, gens, sub)
                && verify_certificate(cat, gens, quot)
        }
    }
}

#[cfg(test)]
mod tests;
