//! The free abelian category `Ab_R(D)` on an additive envelope.
//!
//! An object is a pair of composable envelope morphisms `A --a--> B --b--> C`;
//! it stands for the image of `ker b -> B -> coker a` (no condition on `b ∘ a`).
//! A morphism is represented by `β: B -> B'` admitting witnesses `α: A -> A'`
//! and `γ: C -> C'` with `a' α = β a` and `γ b = b' β`; it is zero exactly when
//! `β = σ b + a' τ` for some `σ`, `τ`.

mod enumerate;
mod flat;
mod hom;
mod limits;
mod point;
mod realize;

pub use flat::{FlatStep, FlatWitness};
pub use hom::HomPresentation;
pub use point::functor_category_oracle;
pub use realize::{Exact, ModCat, RealObj, Realization};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::additive::{AddCat, AddMor, AddObj, AddSystem, Base};
use crate::coeff::{Ring, Scalar};
use crate::diagram::FinCat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreydError {
    #[error("operation needs finite hom-sets, but the base is a free category with cycles")]
    UnsupportedBase,
    #[error("operation needs the one-point base category")]
    WrongBase,
    #[error("operation needs coefficients in {0}")]
    WrongRing(Ring),
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error("assignment violates a relation of the base: {0}")]
    RelationViolation(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Object of the free abelian category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub a: AddMor,
    pub b: AddMor,
}

impl Presentation {
    pub fn top(&self) -> &AddObj {
        &self.a.src
    }

    pub fn mid(&self) -> &AddObj {
        &self.a.dst
    }

    pub fn bottom(&self) -> &AddObj {
        &self.b.dst
    }

    /// Total number of base objects involved, a rough size measure.
    pub fn size(&self) -> usize {
        self.top().len() + self.mid().len() + self.bottom().len()
    }
}

/// Morphism of the free abelian category with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbMor {
    pub src: Presentation,
    pub dst: Presentation,
    pub beta: AddMor,
    pub alpha: AddMor,
    pub gamma: AddMor,
}

/// `Ab_R(D)` for the envelope `add`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbCat {
    pub add: AddCat,
}

impl AbCat {
    pub fn new(add: AddCat) -> AbCat {
        AbCat { add }
    }

    pub fn over(ring: Ring, base: Base) -> AbCat {
        AbCat {
            add: AddCat::new(ring, base),
        }
    }

    /// `Ab_R`, the free abelian category on the point.
    pub fn point(ring: Ring) -> AbCat {
        AbCat::over(ring, Base::fin(FinCat::point()))
    }

    pub fn ring(&self) -> Ring {
        self.add.ring
    }

    pub fn base(&self) -> &Base {
        &self.add.base
    }

    pub fn is_point_base(&self) -> bool {
        match self.base() {
            Base::Fin(c) => c.num_objects() == 1 && c.num_mors() == 1,
            Base::Free { quiver, .. } => quiver.vertices.len() == 1 && quiver.edges.is_empty(),
        }
    }

    pub fn presentation(&self, a: AddMor, b: AddMor) -> Result<Presentation, FreydError> {
        if a.dst != b.src {
            return Err(FreydError::Malformed("a and b are not composable".into()));
        }
        Ok(Presentation { a, b })
    }

    /// The object `0 -> x -> 0`.
    pub fn embed(&self, x: &AddObj) -> Presentation {
        let z = self.add.zero_obj();
        Presentation {
            a: self.add.zero(&z, x),
            b: self.add.zero(x, &z),
        }
    }

    /// `Δ(v)`, the universal representation at a base object.
    pub fn delta(&self, v: usize) -> Presentation {
        self.embed(&vec![v])
    }

    /// Envelope morphism `f: x -> y` as a morphism `Δ(x) -> Δ(y)`.
    pub fn delta_mor(&self, f: &AddMor) -> AbMor {
        let (x, y) = (self.embed(&f.src), self.embed(&f.dst));
        let z = self.add.zero_obj();
        AbMor {
            alpha: self.add.zero(&z, &z),
            gamma: self.add.zero(&z, &z),
            beta: f.clone(),
            src: x,
            dst: y,
        }
    }

    pub fn zero_obj(&self) -> Presentation {
        self.embed(&Vec::new())
    }

    /// Cokernel-type object `x --f--> y --> 0`, the universal cokernel of `Δ(f)`.
    pub fn coker_of(&self, f: &AddMor) -> Presentation {
        Presentation {
            a: f.clone(),
            b: self.add.zero(&f.dst, &Vec::new()),
        }
    }

    /// Kernel-type object `0 --> x --f--> y`, the universal kernel of `Δ(f)`.
    pub fn ker_of(&self, f: &AddMor) -> Presentation {
        Presentation {
            a: self.add.zero(&Vec::new(), &f.src),
            b: f.clone(),
        }
    }

    pub fn identity(&self, x: &Presentation) -> AbMor {
        AbMor {
            src: x.clone(),
            dst: x.clone(),
            beta: self.add.identity(x.mid()),
            alpha: self.add.identity(x.top()),
            gamma: self.add.identity(x.bottom()),
        }
    }

    pub fn zero(&self, x: &Presentation, y: &Presentation) -> AbMor {
        AbMor {
            src: x.clone(),
            dst: y.clone(),
            beta: self.add.zero(x.mid(), y.mid()),
            alpha: self.add.zero(x.top(), y.top()),
            gamma: self.add.zero(x.bottom(), y.bottom()),
        }
    }

    /// Check the witness squares; used on external input.
    pub fn validate(&self, f: &AbMor) -> Result<(), FreydError> {
        let ad = &self.add;
        let sq1 = ad.sub(
            &ad.compose(&f.dst.a, &f.alpha),
            &ad.compose(&f.beta, &f.src.a),
        );
        let sq2 = ad.sub(
            &ad.compose(&f.gamma, &f.src.b),
            &ad.compose(&f.dst.b, &f.beta),
        );
        if !sq1.is_zero() || !sq2.is_zero() {
            return Err(FreydError::Malformed(
                "witness squares do not commute".into(),
            ));
        }
        Ok(())
    }

    /// Build a morphism from `β` alone, solving for the witnesses.
    pub fn morphism(
        &self,
        src: &Presentation,
        dst: &Presentation,
        beta: &AddMor,
    ) -> Result<AbMor, FreydError> {
        let ad = &self.add;
        let alpha = ad
            .factor_right(&ad.compose(beta, &src.a), &dst.a)
            .map_err(|e| FreydError::Malformed(e.to_string()))?
            .ok_or_else(|| FreydError::Malformed("β does not preserve the first layer".into()))?;
        let gamma = ad
            .factor_left(&ad.compose(&dst.b, beta), &src.b)
            .map_err(|e| FreydError::Malformed(e.to_string()))?
            .ok_or_else(|| FreydError::Malformed("β does not preserve the second layer".into()))?;
        Ok(AbMor {
            src: src.clone(),
            dst: dst.clone(),
            beta: beta.clone(),
            alpha,
            gamma,
        })
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &AbMor, f: &AbMor) -> AbMor {
        let ad = &self.add;
        AbMor {
            src: f.src.clone(),
            dst: g.dst.clone(),
            beta: ad.compose(&g.beta, &f.beta),
            alpha: ad.compose(&g.alpha, &f.alpha),
            gamma: ad.compose(&g.gamma, &f.gamma),
        }
    }

    /// Composite of a chain in traversal order.
    pub fn chain(&self, maps: &[&AbMor]) -> AbMor {
        let mut cur = maps[0].clone();
        for m in &maps[1..] {
            cur = self.compose(m, &cur);
        }
        cur
    }

    pub fn add(&self, f: &AbMor, g: &AbMor) -> AbMor {
        let ad = &self.add;
        AbMor {
            src: f.src.clone(),
            dst: f.dst.clone(),
            beta: ad.add(&f.beta, &g.beta),
            alpha: ad.add(&f.alpha, &g.alpha),
            gamma: ad.add(&f.gamma, &g.gamma),
        }
    }

    pub fn scale(&self, f: &AbMor, s: &Scalar) -> AbMor {
        let ad = &self.add;
        AbMor {
            src: f.src.clone(),
            dst: f.dst.clone(),
            beta: ad.scale(&f.beta, s),
            alpha: ad.scale(&f.alpha, s),
            gamma: ad.scale(&f.gamma, s),
        }
    }

    pub fn neg(&self, f: &AbMor) -> AbMor {
        self.scale(f, &self.ring().from_i64(-1))
    }

    pub fn sub(&self, f: &AbMor, g: &AbMor) -> AbMor {
        self.add(f, &self.neg(g))
    }

    /// Is `β = σ b + a' τ` for some `σ`, `τ`?
    pub fn is_null(&self, f: &AbMor) -> bool {
        self.null_witness(&f.src, &f.dst, &f.beta).is_some()
    }

    pub(crate) fn null_witness(
        &self,
        x: &Presentation,
        y: &Presentation,
        beta: &AddMor,
    ) -> Option<(AddMor, AddMor)> {
        if beta.is_zero() {
            return Some((
                self.add.zero(x.bottom(), y.mid()),
                self.add.zero(x.mid(), y.top()),
            ));
        }
        let mut sys = AddSystem::new(&self.add);
        let s = sys.unknown(x.bottom(), y.mid());
        let t = sys.unknown(x.mid(), y.top());
        let e = sys.equation(x.mid(), y.mid());
        sys.term(e, None, s, Some(&x.b));
        sys.term(e, Some(&y.a), t, None);
        sys.rhs(e, beta);
        sys.solve().map(|mut v| {
            let t = v.pop().unwrap();
            (v.pop().unwrap(), t)
        })
    }

    pub fn equal(&self, f: &AbMor, g: &AbMor) -> bool {
        self.is_null(&self.sub(f, g))
    }

    pub fn is_zero_obj(&self, x: &Presentation) -> bool {
        self.is_null(&self.identity(x))
    }

    /// Biproduct of a list of objects.
    pub fn direct_sum(&self, xs: &[Presentation]) -> Presentation {
        let ad = &self.add;
        let mut out = self.zero_obj();
        for x in xs {
            out = Presentation {
                a: ad.direct_sum(&out.a, &x.a),
                b: ad.direct_sum(&out.b, &x.b),
            };
        }
        out
    }

    pub fn injection(&self, xs: &[Presentation], k: usize) -> AbMor {
        let ad = &self.add;
        let tops: Vec<AddObj> = xs.iter().map(|x| x.top().clone()).collect();
        let mids: Vec<AddObj> = xs.iter().map(|x| x.mid().clone()).collect();
        let bots: Vec<AddObj> = xs.iter().map(|x| x.bottom().clone()).collect();
        AbMor {
            src: xs[k].clone(),
            dst: self.direct_sum(xs),
            beta: ad.injection(&mids, k),
            alpha: ad.injection(&tops, k),
            gamma: ad.injection(&bots, k),
        }
    }

    pub fn projection(&self, xs: &[Presentation], k: usize) -> AbMor {
        let ad = &self.add;
        let tops: Vec<AddObj> = xs.iter().map(|x| x.top().clone()).collect();
        let mids: Vec<AddObj> = xs.iter().map(|x| x.mid().clone()).collect();
        let bots: Vec<AddObj> = xs.iter().map(|x| x.bottom().clone()).collect();
        AbMor {
            src: self.direct_sum(xs),
            dst: xs[k].clone(),
            beta: ad.projection(&mids, k),
            alpha: ad.projection(&tops, k),
            gamma: ad.projection(&bots, k),
        }
    }

    /// Morphism between biproducts from a matrix of components, `maps[j][i]: xs[i] -> ys[j]`.
    pub fn matrix(&self, xs: &[Presentation], ys: &[Presentation], maps: &[Vec<AbMor>]) -> AbMor {
        let mut total = self.zero(&self.direct_sum(xs), &self.direct_sum(ys));
        for (j, row) in maps.iter().enumerate() {
            for (i, m) in row.iter().enumerate() {
                let piece = self.chain(&[&self.projection(xs, i), m, &self.injection(ys, j)]);
                total = self.add(&total, &piece);
            }
        }
        total
    }

    /// The same object and morphisms over the dual base, with arrows reversed.
    pub fn dual(&self) -> AbCat {
        AbCat {
            add: self.add.dual(),
        }
    }

    pub fn dual_obj(&self, x: &Presentation) -> Presentation {
        Presentation {
            a: self.add.dual_mor(&x.b),
            b: self.add.dual_mor(&x.a),
        }
    }

    pub fn dual_mor(&self, f: &AbMor) -> AbMor {
        AbMor {
            src: self.dual_obj(&f.dst),
            dst: self.dual_obj(&f.src),
            beta: self.add.dual_mor(&f.beta),
            alpha: self.add.dual_mor(&f.gamma),
            gamma: self.add.dual_mor(&f.alpha),
        }
    }

    /// Coefficient extension, e.g. from `Z` to `Q`.
    pub fn change_ring(&self, ring: Ring) -> AbCat {
        AbCat::over(ring, self.base().clone())
    }

    pub fn change_ring_obj(&self, x: &Presentation, ring: Ring) -> Presentation {
        Presentation {
            a: self.add.change_ring(&x.a, ring),
            b: self.add.change_ring(&x.b, ring),
        }
    }

    pub fn change_ring_mor(&self, f: &AbMor, ring: Ring) -> AbMor {
        let c = |m: &AddMor| self.add.change_ring(m, ring);
        AbMor {
            src: self.change_ring_obj(&f.src, ring),
            dst: self.change_ring_obj(&f.dst, ring),
            beta: c(&f.beta),
            alpha: c(&f.alpha),
            gamma: c(&f.gamma),
        }
    }

    /// `Z -> Q` base change; rejects other rings.
    pub fn base_change_to_rationals(&self, x: &Presentation) -> Result<Presentation, FreydError> {
        if self.ring() != Ring::Integers {
            return Err(FreydError::WrongRing(Ring::Integers));
        }
        Ok(self.change_ring_obj(x, Ring::Rationals))
    }

    /// JSON-friendly description of an object.
    pub fn describe_obj(&self, x: &Presentation) -> serde_json::Value {
        serde_json::json!({
            "top": self.add.format_obj(x.top()),
            "mid": self.add.format_obj(x.mid()),
            "bottom": self.add.format_obj(x.bottom()),
            "a": self.add.format_mor(&x.a),
            "b": self.add.format_mor(&x.b),
        })
    }
}

#[cfg(test)]
mod tests;
