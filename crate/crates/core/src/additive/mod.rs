//! The R-linear additive envelope of a path category or finite category.

mod solver;

pub use solver::{AddSystem, Flat, Var};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Ring, Scalar};
use crate::diagram::{FinCat, Path, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdditiveError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("operation needs finite hom-sets, but the base is a free category with cycles")]
    UnsupportedBase,
}

/// Base category of an envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Fin(Arc<FinCat>),
    /// Free category on a quiver; hom-sets of cyclic quivers are truncated at `bound`.
    Free {
        quiver: Arc<Quiver>,
        bound: usize,
    },
}

/// A basis morphism of the base category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arrow {
    Mor(usize),
    Path(Path),
}

impl Base {
    pub fn fin(c: FinCat) -> Base {
        Base::Fin(Arc::new(c))
    }

    pub fn free(q: Quiver, bound: usize) -> Base {
        Base::Free {
            quiver: Arc::new(q),
            bound,
        }
    }

    pub fn num_objects(&self) -> usize {
        match self {
            Base::Fin(c) => c.num_objects(),
            Base::Free { quiver, .. } => quiver.vertices.len(),
        }
    }

    pub fn object_name(&self, v: usize) -> &str {
        match self {
            Base::Fin(c) => &c.objects[v],
            Base::Free { quiver, .. } => &quiver.vertices[v],
        }
    }

    /// Whether every hom-set is finite and enumerated exactly.
    pub fn exact_homs(&self) -> bool {
        match self {
            Base::Fin(_) => true,
            Base::Free { quiver, .. } => quiver.is_acyclic(),
        }
    }

    pub fn hom_basis(&self, u: usize, v: usize) -> Vec<Arrow> {
        match self {
            Base::Fin(c) => c.hom(u, v).iter().map(|&m| Arrow::Mor(m)).collect(),
            Base::Free { quiver, bound } => {
                let len = if quiver.is_acyclic() {
                    quiver.vertices.len()
                } else {
                    *bound
                };
                quiver
                    .paths_between(u, v, len)
                    .into_iter()
                    .map(Arrow::Path)
                    .collect()
            }
        }
    }

    pub fn identity(&self, v: usize) -> Arrow {
        match self {
            Base::Fin(c) => Arrow::Mor(c.identity(v)),
            Base::Free { .. } => Arrow::Path(Path::identity(v)),
        }
    }

    pub fn src(&self, a: &Arrow) -> usize {
        match (self, a) {
            (Base::Fin(c), Arrow::Mor(m)) => c.mors[*m].src,
            (_, Arrow::Path(p)) => p.src,
            _ => unreachable!("arrow kind matches base"),
        }
    }

    pub fn dst(&self, a: &Arrow) -> usize {
        match (self, a) {
            (Base::Fin(c), Arrow::Mor(m)) => c.mors[*m].dst,
            (_, Arrow::Path(p)) => p.dst,
            _ => unreachable!("arrow kind matches base"),
        }
    }

    /// `b ∘ a` (first `a`, then `b`).
    pub fn then(&self, a: &Arrow, b: &Arrow) -> Arrow {
        match (self, a, b) {
            (Base::Fin(c), Arrow::Mor(x), Arrow::Mor(y)) => {
                Arrow::Mor(c.then(*x, *y).expect("composable arrows"))
            }
            (_, Arrow::Path(p), Arrow::Path(q)) => {
                Arrow::Path(p.then(q).expect("composable paths"))
            }
            _ => unreachable!("arrow kind matches base"),
        }
    }

    pub fn arrow_name(&self, a: &Arrow) -> String {
        match (self, a) {
            (Base::Fin(c), Arrow::Mor(m)) => c.mors[*m].name.clone(),
            (Base::Free { quiver, .. }, Arrow::Path(p)) => quiver.path_name(p),
            _ => unreachable!("arrow kind matches base"),
        }
    }

    /// Arrow for a generating edge (free base) or a morphism (finite base).
    pub fn generator(&self, k: usize) -> Arrow {
        match self {
            Base::Fin(_) => Arrow::Mor(k),
            Base::Free { quiver, .. } => Arrow::Path(Path::edge(quiver, k)),
        }
    }

    pub fn dual(&self) -> Base {
        match self {
            Base::Fin(c) => Base::Fin(Arc::new(c.dual())),
            Base::Free { quiver, bound } => Base::Free {
                quiver: Arc::new(quiver.dual()),
                bound: *bound,
            },
        }
    }

    /// The arrow corresponding to `a` in the dual base.
    pub fn dual_arrow(&self, a: &Arrow) -> Arrow {
        match a {
            Arrow::Mor(m) => Arrow::Mor(*m),
            Arrow::Path(p) => Arrow::Path(p.reversed()),
        }
    }
}

/// Finite R-linear combination of basis arrows.
pub type Comb = BTreeMap<Arrow, Scalar>;

/// Objects are finite tuples of base objects; the empty tuple is zero.
pub type AddObj = Vec<usize>;

/// Matrix of combinations; entry `(j, i)` goes from `src[i]` to `dst[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AddMor {
    pub src: AddObj,
    pub dst: AddObj,
    #[serde(with = "comb_serde")]
    pub entries: Vec<Comb>,
}

/// Combinations as lists of `[arrow, "scalar"]` pairs in arrow order.
mod comb_serde {
    use std::str::FromStr;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{Arrow, Comb};
    use crate::coeff::Scalar;

    pub fn serialize<S: Serializer>(v: &[Comb], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Vec<(&Arrow, String)>> = v
            .iter()
            .map(|c| c.iter().map(|(a, x)| (a, x.to_string())).collect())
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Comb>, D::Error> {
        let raw: Vec<Vec<(Arrow, String)>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|c| {
                c.into_iter()
                    .map(|(a, x)| {
                        Scalar::from_str(&x)
                            .map(|x| (a, x))
                            .map_err(D::Error::custom)
                    })
                    .collect()
            })
            .collect()
    }
}

impl AddMor {
    pub fn get(&self, j: usize, i: usize) -> &Comb {
        &self.entries[j * self.src.len() + i]
    }

    fn get_mut(&mut self, j: usize, i: usize) -> &mut Comb {
        let n = self.src.len();
        &mut self.entries[j * n + i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }
}

/// `R C^+` over a base category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddCat {
    pub ring: Ring,
    pub base: Base,
}

fn add_into(ring: Ring, c: &mut Comb, a: Arrow, v: Scalar) {
    if v.is_zero() {
        return;
    }
    let s = match c.get(&a) {
        Some(e) => ring.add(e, &v),
        None => v,
    };
    if s.is_zero() {
        c.remove(&a);
    } else {
        c.insert(a, s);
    }
}

impl AddCat {
    pub fn new(ring: Ring, base: Base) -> AddCat {
        AddCat { ring, base }
    }

    pub fn zero_obj(&self) -> AddObj {
        Vec::new()
    }

    pub fn zero(&self, src: &AddObj, dst: &AddObj) -> AddMor {
        AddMor {
            src: src.clone(),
            dst: dst.clone(),
            entries: vec![Comb::new(); src.len() * dst.len()],
        }
    }

    pub fn identity(&self, x: &AddObj) -> AddMor {
        let mut m = self.zero(x, x);
        for (i, &v) in x.iter().enumerate() {
            m.get_mut(i, i)
                .insert(self.base.identity(v), self.ring.one());
        }
        m
    }

    /// A single basis arrow as a `1 x 1` morphism.
    pub fn arrow(&self, a: &Arrow) -> AddMor {
        self.comb(
            self.base.src(a),
            self.base.dst(a),
            [(a.clone(), self.ring.one())].into_iter().collect(),
        )
    }

    pub fn comb(&self, src: usize, dst: usize, c: Comb) -> AddMor {
        let c = c.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        AddMor {
            src: vec![src],
            dst: vec![dst],
            entries: vec![c],
        }
    }

    /// Scalar multiple of the identity on a single object.
    pub fn scalar(&self, v: usize, s: Scalar) -> AddMor {
        self.comb(v, v, [(self.base.identity(v), s)].into_iter().collect())
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &AddMor, f: &AddMor) -> AddMor {
        assert_eq!(f.dst, g.src, "compose: middle objects differ");
        let mut out = self.zero(&f.src, &g.dst);
        for k in 0..g.dst.len() {
            for i in 0..f.src.len() {
                let mut acc = Comb::new();
                for j in 0..f.dst.len() {
                    let (a, b) = (f.get(j, i), g.get(k, j));
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    for (x, cx) in a {
                        for (y, cy) in b {
                            add_into(
                                self.ring,
                                &mut acc,
                                self.base.then(x, y),
                                self.ring.mul(cx, cy),
                            );
                        }
                    }
                }
                *out.get_mut(k, i) = acc;
            }
        }
        out
    }

    /// Composite of a chain given in traversal order.
    pub fn chain(&self, maps: &[&AddMor]) -> AddMor {
        let mut cur = maps[0].clone();
        for m in &maps[1..] {
            cur = self.compose(m, &cur);
        }
        cur
    }

    pub fn add(&self, f: &AddMor, g: &AddMor) -> AddMor {
        assert!(f.src == g.src && f.dst == g.dst, "add: shapes differ");
        let mut out = f.clone();
        for (e, o) in out.entries.iter_mut().zip(&g.entries) {
            for (a, v) in o {
                add_into(self.ring, e, a.clone(), v.clone());
            }
        }
        out
    }

    pub fn neg(&self, f: &AddMor) -> AddMor {
        self.scale(f, &self.ring.from_i64(-1))
    }

    pub fn sub(&self, f: &AddMor, g: &AddMor) -> AddMor {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &AddMor, s: &Scalar) -> AddMor {
        let mut out = f.clone();
        for e in out.entries.iter_mut() {
            let scaled: Comb = e
                .iter()
                .map(|(a, v)| (a.clone(), self.ring.mul(s, v)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            *e = scaled;
        }
        out
    }

    /// `[f g]: src(f) ⊕ src(g) -> dst`.
    pub fn hcat(&self, f: &AddMor, g: &AddMor) -> AddMor {
        assert_eq!(f.dst, g.dst, "hcat: targets differ");
        let mut src = f.src.clone();
        src.extend(&g.src);
        let mut out = self.zero(&src, &f.dst);
        for j in 0..f.dst.len() {
            for i in 0..f.src.len() {
                *out.get_mut(j, i) = f.get(j, i).clone();
            }
            for i in 0..g.src.len() {
                *out.get_mut(j, f.src.len() + i) = g.get(j, i).clone();
            }
        }
        out
    }

    /// `[f; g]: src -> dst(f) ⊕ dst(g)`.
    pub fn vcat(&self, f: &AddMor, g: &AddMor) -> AddMor {
        assert_eq!(f.src, g.src, "vcat: sources differ");
        let mut dst = f.dst.clone();
        dst.extend(&g.dst);
        let mut entries = f.entries.clone();
        entries.extend(g.entries.iter().cloned());
        AddMor {
            src: f.src.clone(),
            dst,
            entries,
        }
    }

    pub fn direct_sum(&self, f: &AddMor, g: &AddMor) -> AddMor {
        let top = self.hcat(f, &self.zero(&g.src, &f.dst));
        let bot = self.hcat(&self.zero(&f.src, &g.dst), g);
        self.vcat(&top, &bot)
    }

    /// Block matrix from rows of blocks; all blocks in a row share a target.
    pub fn block(&self, rows: &[Vec<&AddMor>]) -> AddMor {
        let mut out: Option<AddMor> = None;
        for r in rows {
            let mut row = r[0].clone();
            for b in &r[1..] {
                row = self.hcat(&row, b);
            }
            out = Some(match out {
                None => row,
                Some(o) => self.vcat(&o, &row),
            });
        }
        out.expect("non-empty block matrix")
    }

    pub fn injection(&self, parts: &[AddObj], k: usize) -> AddMor {
        let total: AddObj = parts.concat();
        let off: usize = parts[..k].iter().map(Vec::len).sum();
        let mut m = self.zero(&parts[k], &total);
        for (i, &v) in parts[k].iter().enumerate() {
            m.get_mut(off + i, i)
                .insert(self.base.identity(v), self.ring.one());
        }
        m
    }

    pub fn projection(&self, parts: &[AddObj], k: usize) -> AddMor {
        let total: AddObj = parts.concat();
        let off: usize = parts[..k].iter().map(Vec::len).sum();
        let mut m = self.zero(&total, &parts[k]);
        for (i, &v) in parts[k].iter().enumerate() {
            m.get_mut(i, off + i)
                .insert(self.base.identity(v), self.ring.one());
        }
        m
    }

    /// Transpose into the envelope of the dual base.
    pub fn dual_mor(&self, f: &AddMor) -> AddMor {
        let mut out = AddMor {
            src: f.dst.clone(),
            dst: f.src.clone(),
            entries: vec![Comb::new(); f.src.len() * f.dst.len()],
        };
        for j in 0..f.dst.len() {
            for i in 0..f.src.len() {
                let c: Comb = f
                    .get(j, i)
                    .iter()
                    .map(|(a, v)| (self.base.dual_arrow(a), v.clone()))
                    .collect();
                *out.get_mut(i, j) = c;
            }
        }
        out
    }

    pub fn dual(&self) -> AddCat {
        AddCat {
            ring: self.ring,
            base: self.base.dual(),
        }
    }

    /// Change coefficients; entries must make sense in the new ring.
    pub fn change_ring(&self, f: &AddMor, ring: Ring) -> AddMor {
        let mut out = f.clone();
        for e in out.entries.iter_mut() {
            let c: Comb = e
                .iter()
                .map(|(a, v)| {
                    (
                        a.clone(),
                        ring.reduce(v.clone()).expect("coefficient in target ring"),
                    )
                })
                .filter(|(_, v)| !v.is_zero())
                .collect();
            *e = c;
        }
        out
    }

    /// `h` with `g ∘ h = f`, if one exists.
    pub fn factor_right(&self, f: &AddMor, g: &AddMor) -> Result<Option<AddMor>, AdditiveError> {
        if f.dst != g.dst {
            return Err(AdditiveError::Shape("factor_right: targets differ".into()));
        }
        let mut sys = AddSystem::new(self);
        let h = sys.unknown(&f.src, &g.src);
        let e = sys.equation(&f.src, &f.dst);
        sys.term(e, Some(g), h, None);
        sys.rhs(e, f);
        Ok(sys.solve().map(|mut v| v.remove(0)))
    }

    /// `h` with `h ∘ g = f`, if one exists.
    pub fn factor_left(&self, f: &AddMor, g: &AddMor) -> Result<Option<AddMor>, AdditiveError> {
        if f.src != g.src {
            return Err(AdditiveError::Shape("factor_left: sources differ".into()));
        }
        let mut sys = AddSystem::new(self);
        let h = sys.unknown(&g.dst, &f.dst);
        let e = sys.equation(&f.src, &f.dst);
        sys.term(e, None, h, Some(g));
        sys.rhs(e, f);
        Ok(sys.solve().map(|mut v| v.remove(0)))
    }

    pub fn format_comb(&self, c: &Comb) -> String {
        if c.is_empty() {
            return "0".into();
        }
        c.iter()
            .map(|(a, v)| format!("{}*{}", self.ring.format(v), self.base.arrow_name(a)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Rows of formatted entries, used for JSON output.
    pub fn format_mor(&self, f: &AddMor) -> Vec<Vec<String>> {
        (0..f.dst.len())
            .map(|j| {
                (0..f.src.len())
                    .map(|i| self.format_comb(f.get(j, i)))
                    .collect()
            })
            .collect()
    }

    pub fn format_obj(&self, x: &AddObj) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|&v| self.base.object_name(v))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arrow::Mor(m) => write!(f, "m{m}"),
            Arrow::Path(p) => write!(f, "{:?}", p.edges),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::FinCat;

    fn c2(ring: Ring) -> AddCat {
        AddCat::new(ring, Base::fin(FinCat::cyclic_group(2)))
    }

    #[test]
    fn group_ring_relation() {
        let a = c2(Ring::Integers);
        let one = a.identity(&vec![0]);
        let g = a.arrow(&Arrow::Mor(1));
        let p = a.add(&one, &g);
        let m = a.sub(&one, &g);
        assert!(a.compose(&p, &m).is_zero());
        assert_eq!(a.base.hom_basis(0, 0).len(), 2);
    }

    #[test]
    fn free_loop_squares_are_new() {
        let mut q = Quiver::new();
        q.add_vertex("*").unwrap();
        q.add_edge("e", 0, 0).unwrap();
        let a = AddCat::new(Ring::Integers, Base::free(q.clone(), 4));
        let e = a.arrow(&Arrow::Path(Path::edge(&q, 0)));
        let ee = a.compose(&e, &e);
        assert_ne!(ee, e);
        assert_eq!(
            ee.get(0, 0).keys().next(),
            Some(&Arrow::Path(q.parse_path("e.e").unwrap()))
        );
    }

    #[test]
    fn biproduct_identities() {
        let a = AddCat::new(Ring::Integers, Base::fin(FinCat::chain(2)));
        let parts = vec![vec![0], vec![1, 0]];
        let total = parts.concat();
        let mut sum = a.zero(&total, &total);
        for k in 0..2 {
            for l in 0..2 {
                let pi = a.compose(&a.projection(&parts, k), &a.injection(&parts, l));
                if k == l {
                    assert_eq!(pi, a.identity(&parts[k]));
                } else {
                    assert!(pi.is_zero());
                }
            }
            sum = a.add(
                &sum,
                &a.compose(&a.injection(&parts, k), &a.projection(&parts, k)),
            );
        }
        assert_eq!(sum, a.identity(&total));
    }

    #[test]
    fn factorizations() {
        let z = Ring::Integers;
        let a = AddCat::new(z, Base::fin(FinCat::point()));
        let two = a.scalar(0, z.from_i64(2));
        let four = a.scalar(0, z.from_i64(4));
        assert_eq!(a.factor_right(&two, &four).unwrap(), None);
        assert_eq!(a.factor_right(&four, &two).unwrap(), Some(two.clone()));
        assert_eq!(
            a.factor_right(&two, &two).unwrap(),
            Some(a.identity(&vec![0]))
        );
        let c = c2(z);
        let p = c.add(&c.identity(&vec![0]), &c.arrow(&Arrow::Mor(1)));
        let h = c.factor_right(&p, &p).unwrap().unwrap();
        assert_eq!(c.compose(&p, &h), p);
        let h = c.factor_left(&p, &p).unwrap().unwrap();
        assert_eq!(c.compose(&h, &p), p);
    }
}
