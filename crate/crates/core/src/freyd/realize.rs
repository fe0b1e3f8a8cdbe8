use std::fmt::Debug;

use num_traits::Zero;

use super::{AbCat, AbMor, FreydError, Presentation};
use crate::additive::{AddMor, AddObj, Arrow, Base};
use crate::coeff::{FpModule, ModMap, Ring, Scalar};

/// An exact `R`-linear target category, as much of it as realizations need.
pub trait Exact {
    type Obj: Clone + Debug + PartialEq;
    type Mor: Clone + Debug;

    fn ring(&self) -> Ring;
    fn src(&self, f: &Self::Mor) -> Self::Obj;
    fn dst(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn zero(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn scale(&self, f: &Self::Mor, s: &Scalar) -> Self::Mor;
    fn direct_sum(&self, xs: &[Self::Obj]) -> Self::Obj;
    fn injection(&self, xs: &[Self::Obj], k: usize) -> Self::Mor;
    fn projection(&self, xs: &[Self::Obj], k: usize) -> Self::Mor;
    /// Mono into the source.
    fn kernel(&self, f: &Self::Mor) -> Self::Mor;
    /// Epi out of the target.
    fn cokernel(&self, f: &Self::Mor) -> Self::Mor;
    /// `u` with `k ∘ u = t`.
    fn lift(&self, k: &Self::Mor, t: &Self::Mor) -> Option<Self::Mor>;
    /// `v` with `v ∘ p = t`.
    fn colift(&self, p: &Self::Mor, t: &Self::Mor) -> Option<Self::Mor>;
    fn is_zero_mor(&self, f: &Self::Mor) -> bool;

    fn is_zero_obj(&self, x: &Self::Obj) -> bool {
        self.is_zero_mor(&self.identity(x))
    }

    fn sub(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.add(f, &self.scale(g, &self.ring().from_i64(-1)))
    }
}

/// Finitely presented modules over a principal ideal ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModCat {
    pub ring: Ring,
}

impl Exact for ModCat {
    type Obj = FpModule;
    type Mor = ModMap;

    fn ring(&self) -> Ring {
        self.ring
    }
    fn src(&self, f: &ModMap) -> FpModule {
        f.src.clone()
    }
    fn dst(&self, f: &ModMap) -> FpModule {
        f.dst.clone()
    }
    fn identity(&self, x: &FpModule) -> ModMap {
        ModMap::identity(x)
    }
    fn zero(&self, x: &FpModule, y: &FpModule) -> ModMap {
        ModMap::zero(x, y)
    }
    fn compose(&self, g: &ModMap, f: &ModMap) -> ModMap {
        f.compose(g)
    }
    fn add(&self, f: &ModMap, g: &ModMap) -> ModMap {
        f.add(g)
    }
    fn scale(&self, f: &ModMap, s: &Scalar) -> ModMap {
        f.scale(&self.ring.reduce(s.clone()).expect("scalar in ring"))
    }
    fn direct_sum(&self, xs: &[FpModule]) -> FpModule {
        xs.iter()
            .fold(FpModule::zero(self.ring), |acc, x| acc.direct_sum(x))
    }
    fn injection(&self, xs: &[FpModule], k: usize) -> ModMap {
        let total = self.direct_sum(xs);
        let off: usize = xs[..k].iter().map(FpModule::gens).sum();
        let mut m = crate::coeff::Mat::zero(self.ring, total.gens(), xs[k].gens());
        for i in 0..xs[k].gens() {
            m.set(off + i, i, self.ring.one());
        }
        ModMap {
            src: xs[k].clone(),
            dst: total,
            mat: m,
        }
    }
    fn projection(&self, xs: &[FpModule], k: usize) -> ModMap {
        let total = self.direct_sum(xs);
        let off: usize = xs[..k].iter().map(FpModule::gens).sum();
        let mut m = crate::coeff::Mat::zero(self.ring, xs[k].gens(), total.gens());
        for i in 0..xs[k].gens() {
            m.set(i, off + i, self.ring.one());
        }
        ModMap {
            src: total,
            dst: xs[k].clone(),
            mat: m,
        }
    }
    fn kernel(&self, f: &ModMap) -> ModMap {
        let k = f.kernel();
        let (_, _, from) = k.src.simplify();
        from.compose(&k)
    }
    fn cokernel(&self, f: &ModMap) -> ModMap {
        let c = f.cokernel();
        let (_, to, _) = c.dst.simplify();
        c.compose(&to)
    }
    fn lift(&self, k: &ModMap, t: &ModMap) -> Option<ModMap> {
        k.lift(t)
    }
    fn colift(&self, p: &ModMap, t: &ModMap) -> Option<ModMap> {
        p.colift(t)
    }
    fn is_zero_mor(&self, f: &ModMap) -> bool {
        f.is_zero()
    }
    fn is_zero_obj(&self, x: &FpModule) -> bool {
        x.is_zero()
    }
}

impl Exact for AbCat {
    type Obj = Presentation;
    type Mor = AbMor;

    fn ring(&self) -> Ring {
        AbCat::ring(self)
    }
    fn src(&self, f: &AbMor) -> Presentation {
        f.src.clone()
    }
    fn dst(&self, f: &AbMor) -> Presentation {
        f.dst.clone()
    }
    fn identity(&self, x: &Presentation) -> AbMor {
        AbCat::identity(self, x)
    }
    fn zero(&self, x: &Presentation, y: &Presentation) -> AbMor {
        AbCat::zero(self, x, y)
    }
    fn compose(&self, g: &AbMor, f: &AbMor) -> AbMor {
        AbCat::compose(self, g, f)
    }
    fn add(&self, f: &AbMor, g: &AbMor) -> AbMor {
        AbCat::add(self, f, g)
    }
    fn scale(&self, f: &AbMor, s: &Scalar) -> AbMor {
        AbCat::scale(
            self,
            f,
            &AbCat::ring(self).reduce(s.clone()).expect("scalar in ring"),
        )
    }
    fn direct_sum(&self, xs: &[Presentation]) -> Presentation {
        AbCat::direct_sum(self, xs)
    }
    fn injection(&self, xs: &[Presentation], k: usize) -> AbMor {
        AbCat::injection(self, xs, k)
    }
    fn projection(&self, xs: &[Presentation], k: usize) -> AbMor {
        AbCat::projection(self, xs, k)
    }
    fn kernel(&self, f: &AbMor) -> AbMor {
        AbCat::kernel(self, f)
    }
    fn cokernel(&self, f: &AbMor) -> AbMor {
        AbCat::cokernel(self, f)
    }
    fn lift(&self, k: &AbMor, t: &AbMor) -> Option<AbMor> {
        AbCat::lift(self, k, t)
    }
    fn colift(&self, p: &AbMor, t: &AbMor) -> Option<AbMor> {
        AbCat::colift(self, p, t)
    }
    fn is_zero_mor(&self, f: &AbMor) -> bool {
        self.is_null(f)
    }
}

/// Image of an object under a realization, with the maps that define it:
/// `ker F(b) --e->> value >--i--> coker F(a)`.
#[derive(Clone, Debug)]
pub struct RealObj<T: Exact> {
    pub value: T::Obj,
    pub ker_b: T::Mor,
    pub coker_a: T::Mor,
    pub e: T::Mor,
    pub i: T::Mor,
}

/// The exact functor `Ab_R(D) -> T` extending an assignment on the base.
#[derive(Clone, Debug)]
pub struct Realization<T: Exact> {
    pub source: AbCat,
    pub target: T,
    pub objects: Vec<T::Obj>,
    /// One value per generator: edges of a free base, `generators` of a finite one.
    pub generators: Vec<T::Mor>,
}

impl<T: Exact> Realization<T> {
    /// Check shapes and, over a finite base, every composition relation.
    pub fn new(
        source: AbCat,
        target: T,
        objects: Vec<T::Obj>,
        generators: Vec<T::Mor>,
    ) -> Result<Self, FreydError> {
        let base = source.base().clone();
        if objects.len() != base.num_objects() {
            return Err(FreydError::Malformed(format!(
                "{} object values for {} base objects",
                objects.len(),
                base.num_objects()
            )));
        }
        let gen_arrows: Vec<Arrow> = match &base {
            Base::Fin(c) => c.generators.iter().map(|&m| Arrow::Mor(m)).collect(),
            Base::Free { quiver, .. } => {
                (0..quiver.edges.len()).map(|e| base.generator(e)).collect()
            }
        };
        if generators.len() != gen_arrows.len() {
            return Err(FreydError::Malformed(format!(
                "{} generator values for {} generators",
                generators.len(),
                gen_arrows.len()
            )));
        }
        for (a, v) in gen_arrows.iter().zip(&generators) {
            if target.src(v) != objects[base.src(a)] || target.dst(v) != objects[base.dst(a)] {
                return Err(FreydError::Malformed(format!(
                    "value of {} has the wrong shape",
                    base.arrow_name(a)
                )));
            }
        }
        let r = Realization {
            source,
            target,
            objects,
            generators,
        };
        if let Base::Fin(c) = &base {
            for f in 0..c.num_mors() {
                for g in 0..c.num_mors() {
                    let Some(h) = c.then(f, g) else { continue };
                    let lhs = r.arrow(&Arrow::Mor(h));
                    let rhs = r
                        .target
                        .compose(&r.arrow(&Arrow::Mor(g)), &r.arrow(&Arrow::Mor(f)));
                    if !r.target.is_zero_mor(&r.target.sub(&lhs, &rhs)) {
                        return Err(FreydError::RelationViolation(format!(
                            "{} ∘ {} = {}",
                            c.mors[g].name, c.mors[f].name, c.mors[h].name
                        )));
                    }
                }
            }
        }
        Ok(r)
    }

    fn gen_value(&self, m: usize) -> &T::Mor {
        match self.source.base() {
            Base::Fin(c) => {
                let k = c
                    .generators
                    .iter()
                    .position(|&g| g == m)
                    .expect("word letters are generators");
                &self.generators[k]
            }
            Base::Free { .. } => &self.generators[m],
        }
    }

    /// Value on a single base arrow.
    pub fn arrow(&self, a: &Arrow) -> T::Mor {
        let base = self.source.base();
        let letters: Vec<usize> = match (base, a) {
            (Base::Fin(c), Arrow::Mor(m)) => c.words[*m].clone(),
            (_, Arrow::Path(p)) => p.edges.clone(),
            _ => unreachable!("arrow kind matches base"),
        };
        let mut cur = self.target.identity(&self.objects[base.src(a)]);
        for l in letters {
            cur = self.target.compose(self.gen_value(l), &cur);
        }
        cur
    }

    pub fn add_obj(&self, x: &AddObj) -> T::Obj {
        let parts: Vec<T::Obj> = x.iter().map(|&v| self.objects[v].clone()).collect();
        self.target.direct_sum(&parts)
    }

    pub fn add_mor(&self, f: &AddMor) -> T::Mor {
        let t = &self.target;
        let srcs: Vec<T::Obj> = f.src.iter().map(|&v| self.objects[v].clone()).collect();
        let dsts: Vec<T::Obj> = f.dst.iter().map(|&v| self.objects[v].clone()).collect();
        let mut out = t.zero(&t.direct_sum(&srcs), &t.direct_sum(&dsts));
        for j in 0..f.dst.len() {
            for i in 0..f.src.len() {
                let c = f.get(j, i);
                if c.is_empty() {
                    continue;
                }
                let mut entry = t.zero(&srcs[i], &dsts[j]);
                for (a, s) in c {
                    if !s.is_zero() {
                        entry = t.add(&entry, &t.scale(&self.arrow(a), s));
                    }
                }
                let piece = t.compose(
                    &t.injection(&dsts, j),
                    &t.compose(&entry, &t.projection(&srcs, i)),
                );
                out = t.add(&out, &piece);
            }
        }
        out
    }

    pub fn realize_obj(&self, x: &Presentation) -> RealObj<T> {
        let t = &self.target;
        let fa = self.add_mor(&x.a);
        let fb = self.add_mor(&x.b);
        let ker_b = t.kernel(&fb);
        let coker_a = t.cokernel(&fa);
        let m = t.compose(&coker_a, &ker_b);
        let i = t.kernel(&t.cokernel(&m));
        let e = t.lift(&i, &m).expect("a map factors through its image");
        RealObj {
            value: t.src(&i),
            ker_b,
            coker_a,
            e,
            i,
        }
    }

    pub fn obj(&self, x: &Presentation) -> T::Obj {
        self.realize_obj(x).value
    }

    /// Value on a morphism, given the realized endpoints.
    pub fn mor_between(&self, rx: &RealObj<T>, ry: &RealObj<T>, f: &AbMor) -> T::Mor {
        let t = &self.target;
        let fb = self.add_mor(&f.beta);
        let phi = t.compose(&ry.coker_a, &t.compose(&fb, &rx.ker_b));
        let psi = t.lift(&ry.i, &phi).expect("image lands in the image");
        t.colift(&rx.e, &psi).expect("well defined on the image")
    }

    pub fn mor(&self, f: &AbMor) -> T::Mor {
        let rx = self.realize_obj(&f.src);
        let ry = self.realize_obj(&f.dst);
        self.mor_between(&rx, &ry, f)
    }

    /// The canonical isomorphism from the assigned value at `v` to the realization of `Δ(v)`.
    pub fn unit(&self, v: usize) -> T::Mor {
        let t = &self.target;
        let rx = self.realize_obj(&self.source.delta(v));
        let inj = t.injection(std::slice::from_ref(&self.objects[v]), 0);
        let u = t
            .lift(&rx.ker_b, &inj)
            .expect("the kernel of a zero map is everything");
        t.compose(&rx.e, &u)
    }

    /// Component at `x` of the natural transformation `self -> other` given on base objects
    /// by `comps`; `None` if `comps` is not natural on the arrows `x` uses.
    pub fn transform(
        &self,
        other: &Realization<T>,
        comps: &[T::Mor],
        x: &Presentation,
    ) -> Option<T::Mor> {
        let t = &self.target;
        let mid = x.mid();
        let srcs: Vec<T::Obj> = mid.iter().map(|&v| self.objects[v].clone()).collect();
        let dsts: Vec<T::Obj> = mid.iter().map(|&v| other.objects[v].clone()).collect();
        let mut phi = t.zero(&t.direct_sum(&srcs), &t.direct_sum(&dsts));
        for (k, &v) in mid.iter().enumerate() {
            let piece = t.compose(
                &t.injection(&dsts, k),
                &t.compose(&comps[v], &t.projection(&srcs, k)),
            );
            phi = t.add(&phi, &piece);
        }
        let rx = self.realize_obj(x);
        let ry = other.realize_obj(x);
        let through = t.compose(&ry.coker_a, &t.compose(&phi, &rx.ker_b));
        let psi = t.lift(&ry.i, &through)?;
        t.colift(&rx.e, &psi)
    }

    /// Whether `F(Δ(a))` corresponds to `value` under the units at both ends.
    pub fn matches_arrow(&self, a: &Arrow, value: &T::Mor) -> bool {
        let base = self.source.base();
        let (u, v) = (base.src(a), base.dst(a));
        let t = &self.target;
        let fa = self.mor(&self.source.delta_mor(&self.source.add.arrow(a)));
        let lhs = t.compose(&fa, &self.unit(u));
        let rhs = t.compose(&self.unit(v), value);
        t.is_zero_mor(&t.sub(&lhs, &rhs))
    }
}

impl AbCat {
    /// The tautological realization of `Ab_R(D)` in itself, sending `v` to `Δ(v)`.
    pub fn tautological(&self) -> Realization<AbCat> {
        let base = self.base().clone();
        let objects = (0..base.num_objects()).map(|v| self.delta(v)).collect();
        let arrows: Vec<Arrow> = match &base {
            Base::Fin(c) => c.generators.iter().map(|&m| Arrow::Mor(m)).collect(),
            Base::Free { quiver, .. } => {
                (0..quiver.edges.len()).map(|e| base.generator(e)).collect()
            }
        };
        let generators = arrows
            .iter()
            .map(|a| self.delta_mor(&self.add.arrow(a)))
            .collect();
        Realization {
            source: self.clone(),
            target: self.clone(),
            objects,
            generators,
        }
    }
}
