//! Finitely presented modules `R^g / im(rels)` and their homomorphisms.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linsys::{unvec, vec_of, LinSystem};
use super::mat::Mat;
use super::ring::{Ring, Scalar};
use super::smith::{kernel_gens, normal_form, solve_right};
use super::CoeffError;

/// The cokernel of `rels: R^m -> R^g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpModule {
    pub rels: Mat,
}

/// A homomorphism given on generators: `mat` is `dst.gens x src.gens`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMap {
    pub src: FpModule,
    pub dst: FpModule,
    pub mat: Mat,
}

/// Free rank plus non-trivial torsion coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub ring: Ring,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl Invariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Human-readable decomposition, e.g. `Z^2 + Z/2`, `F_2`, `0`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(self.ring.symbol()),
            k => parts.push(format!("{}^{k}", self.ring.symbol())),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Invariant-factor summary, e.g. `free rank 1` or `free rank 0, torsion 2, 4`.
    pub fn factors(&self) -> String {
        if self.torsion.is_empty() {
            format!("free rank {}", self.free_rank)
        } else {
            format!(
                "free rank {}, torsion {}",
                self.free_rank,
                self.torsion.join(", ")
            )
        }
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl FpModule {
    pub fn new(rels: Mat) -> FpModule {
        FpModule { rels }
    }

    pub fn free(ring: Ring, n: usize) -> FpModule {
        FpModule {
            rels: Mat::zero(ring, n, 0),
        }
    }

    pub fn zero(ring: Ring) -> FpModule {
        FpModule::free(ring, 0)
    }

    /// `R / (d)`.
    pub fn cyclic(ring: Ring, d: i64) -> FpModule {
        FpModule {
            rels: Mat::from_i64(ring, &[&[d]]),
        }
    }

    pub fn ring(&self) -> Ring {
        self.rels.ring()
    }

    pub fn gens(&self) -> usize {
        self.rels.rows()
    }

    pub fn invariants(&self) -> Invariants {
        let ring = self.ring();
        let nf = normal_form(&self.rels);
        let mut torsion = Vec::new();
        let mut free_rank = self.gens() - nf.rank;
        if !ring.is_field() {
            for i in 0..nf.rank {
                let d = nf.form.get(i, i);
                if ring.is_unit(d) {
                    continue;
                }
                if d.is_zero() {
                    free_rank += 1;
                } else {
                    torsion.push(d.numer().to_string());
                }
            }
        }
        Invariants {
            ring,
            free_rank,
            torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    pub fn describe(&self) -> String {
        self.invariants().describe()
    }

    /// Element-wise test: does the column `x` represent zero?
    pub fn is_zero_element(&self, x: &Mat) -> bool {
        solve_right(&self.rels, x).expect("shapes").is_some()
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        FpModule {
            rels: self.rels.direct_sum(&other.rels),
        }
    }

    /// An isomorphic presentation with the fewest generators, with inverse isomorphisms.
    pub fn simplify(&self) -> (FpModule, ModMap, ModMap) {
        let ring = self.ring();
        let g = self.gens();
        let nf = normal_form(&self.rels);
        let u_inv = solve_right(&nf.u, &Mat::identity(ring, g))
            .expect("shapes")
            .expect("normal-form transform is invertible");
        let mut keep = Vec::new();
        let mut new_rels = Vec::new();
        for i in 0..g {
            if ring.is_field() {
                if i >= nf.rank {
                    keep.push(i);
                }
                continue;
            }
            let d = if i < nf.rank {
                nf.form.get(i, i).clone()
            } else {
                Scalar::zero()
            };
            if ring.is_unit(&d) {
                continue;
            }
            keep.push(i);
            if !d.is_zero() {
                new_rels.push((keep.len() - 1, d));
            }
        }
        let k = keep.len();
        let mut rels = Mat::zero(ring, k, new_rels.len());
        for (c, (r, d)) in new_rels.into_iter().enumerate() {
            rels.set(r, c, d);
        }
        let small = FpModule { rels };
        let mut to = Mat::zero(ring, k, g);
        let mut from = Mat::zero(ring, g, k);
        for (r, &i) in keep.iter().enumerate() {
            for j in 0..g {
                to.set(r, j, nf.u.get(i, j).clone());
                from.set(j, r, u_inv.get(j, i).clone());
            }
        }
        let to = ModMap {
            src: self.clone(),
            dst: small.clone(),
            mat: to,
        };
        let from = ModMap {
            src: small.clone(),
            dst: self.clone(),
            mat: from,
        };
        (small, to, from)
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `Hom(M, N)` as a presented module together with decoding data.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FpModule,
    /// The map represented by the `k`-th generator.
    pub gens: Vec<ModMap>,
    src: FpModule,
    dst: FpModule,
}

impl HomModule {
    pub fn invariants(&self) -> Invariants {
        self.module.invariants()
    }

    /// Map represented by a coordinate vector on the generators.
    pub fn decode(&self, coords: &[Scalar]) -> ModMap {
        let ring = self.module.ring();
        let mut mat = Mat::zero(ring, self.dst.gens(), self.src.gens());
        for (c, g) in coords.iter().zip(&self.gens) {
            mat = mat.add(&g.mat.scale(c));
        }
        ModMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat,
        }
    }

    /// Coordinates of `f` on the generators.
    pub fn encode(&self, f: &ModMap) -> Option<Vec<Scalar>> {
        let ring = self.module.ring();
        let mut basis = Mat::zero(ring, self.dst.gens() * self.src.gens(), 0);
        for g in &self.gens {
            basis = basis.hstack(&vec_of(&g.mat));
        }
        let kron = kron_identity_left(&self.dst.rels, self.src.gens());
        let a = basis.hstack(&kron);
        let x = solve_right(&a, &vec_of(&f.mat)).expect("shapes")?;
        Some((0..self.gens.len()).map(|i| x.get(i, 0).clone()).collect())
    }
}

/// `I_n ⊗ a`, so that `vec(a X) = (I ⊗ a) vec(X)`.
pub(crate) fn kron_identity_left(a: &Mat, n: usize) -> Mat {
    let mut out = Mat::zero(a.ring(), a.rows() * n, a.cols() * n);
    for k in 0..n {
        out.paste(k * a.rows(), k * a.cols(), a);
    }
    out
}

/// Presentation of `span(g) / span(n)` for column generators with `span(n) ⊆ span(g)`.
pub(crate) fn subquotient(g: &Mat, n: &Mat) -> FpModule {
    let s = g.cols();
    let k = kernel_gens(&g.hstack(&n.neg()));
    FpModule {
        rels: k.submatrix(0..s, 0..k.cols()),
    }
}

impl ModMap {
    pub fn new(src: FpModule, dst: FpModule, mat: Mat) -> Result<ModMap, CoeffError> {
        if mat.rows() != dst.gens() || mat.cols() != src.gens() {
            return Err(CoeffError::Dimension(format!(
                "map matrix {}x{} between modules on {} and {} generators",
                mat.rows(),
                mat.cols(),
                src.gens(),
                dst.gens()
            )));
        }
        if solve_right(&dst.rels, &mat.mul(&src.rels))?.is_none() {
            return Err(CoeffError::NotAMap("relations are not preserved".into()));
        }
        Ok(ModMap { src, dst, mat })
    }

    pub fn identity(m: &FpModule) -> ModMap {
        ModMap {
            src: m.clone(),
            dst: m.clone(),
            mat: Mat::identity(m.ring(), m.gens()),
        }
    }

    pub fn zero(src: &FpModule, dst: &FpModule) -> ModMap {
        ModMap {
            src: src.clone(),
            dst: dst.clone(),
            mat: Mat::zero(src.ring(), dst.gens(), src.gens()),
        }
    }

    pub fn ring(&self) -> Ring {
        self.mat.ring()
    }

    pub fn compose(&self, after: &ModMap) -> ModMap {
        assert_eq!(self.dst.gens(), after.src.gens(), "compose: shape");
        ModMap {
            src: self.src.clone(),
            dst: after.dst.clone(),
            mat: after.mat.mul(&self.mat),
        }
    }

    /// `g ∘ f` written in the usual order.
    pub fn then(f: &ModMap, g: &ModMap) -> ModMap {
        f.compose(g)
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        ModMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn neg(&self) -> ModMap {
        ModMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.neg(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModMap {
        ModMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            mat: self.mat.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dst.is_zero_element(&self.mat)
    }

    pub fn equals(&self, other: &ModMap) -> bool {
        self.add(&other.neg()).is_zero()
    }

    /// Inclusion of the kernel.
    pub fn kernel(&self) -> ModMap {
        let gs = self.src.gens();
        let k = kernel_gens(&self.mat.hstack(&self.dst.rels));
        let g = k.submatrix(0..gs, 0..k.cols());
        let module = subquotient(&g, &self.src.rels);
        ModMap {
            src: module,
            dst: self.src.clone(),
            mat: g,
        }
    }

    /// Projection onto the cokernel.
    pub fn cokernel(&self) -> ModMap {
        let q = FpModule {
            rels: self.dst.rels.hstack(&self.mat),
        };
        ModMap {
            src: self.dst.clone(),
            dst: q,
            mat: Mat::identity(self.ring(), self.dst.gens()),
        }
    }

    /// Inclusion of the image.
    pub fn image(&self) -> ModMap {
        let module = subquotient(&self.mat, &self.dst.rels);
        ModMap {
            src: module,
            dst: self.dst.clone(),
            mat: self.mat.clone(),
        }
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().src.is_zero()
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel().dst.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// `h` with `self ∘ h = f`, for `f` with the same target.
    pub fn lift(&self, f: &ModMap) -> Option<ModMap> {
        let ring = self.ring();
        let a = &f.src;
        let b = &self.src;
        let c = &self.dst;
        let mut sys = LinSystem::new(ring);
        let h = sys.unknown(b.gens(), a.gens());
        let lam = sys.unknown(c.rels.cols(), a.gens());
        let th = sys.unknown(b.rels.cols(), a.rels.cols());
        let e1 = sys.equation(c.gens(), a.gens());
        sys.term(e1, Some(&self.mat), h, None);
        sys.term(e1, Some(&c.rels), lam, None);
        sys.rhs(e1, &f.mat);
        let e2 = sys.equation(b.gens(), a.rels.cols());
        sys.term(e2, None, h, Some(&a.rels));
        sys.term(e2, Some(&b.rels.neg()), th, None);
        let sol = sys.solve()?;
        Some(ModMap {
            src: a.clone(),
            dst: b.clone(),
            mat: sol[0].clone(),
        })
    }

    /// `h` with `h ∘ self = f`, for `f` with the same source.
    pub fn colift(&self, f: &ModMap) -> Option<ModMap> {
        let ring = self.ring();
        let a = &self.src;
        let b = &self.dst;
        let c = &f.dst;
        let mut sys = LinSystem::new(ring);
        let h = sys.unknown(c.gens(), b.gens());
        let lam = sys.unknown(c.rels.cols(), a.gens());
        let th = sys.unknown(c.rels.cols(), b.rels.cols());
        let e1 = sys.equation(c.gens(), a.gens());
        sys.term(e1, None, h, Some(&self.mat));
        sys.term(e1, Some(&c.rels), lam, None);
        sys.rhs(e1, &f.mat);
        let e2 = sys.equation(c.gens(), b.rels.cols());
        sys.term(e2, None, h, Some(&b.rels));
        sys.term(e2, Some(&c.rels.neg()), th, None);
        let sol = sys.solve()?;
        Some(ModMap {
            src: b.clone(),
            dst: c.clone(),
            mat: sol[0].clone(),
        })
    }

    pub fn inverse(&self) -> Option<ModMap> {
        if !self.is_iso() {
            return None;
        }
        self.lift(&ModMap::identity(&self.dst))
    }
}

/// `Hom(m, n)` as a finitely presented module.
pub fn hom(m: &FpModule, n: &FpModule) -> HomModule {
    let ring = m.ring();
    let (gm, gn) = (m.gens(), n.gens());
    let mut sys = LinSystem::new(ring);
    let phi = sys.unknown(gn, gm);
    let lam = sys.unknown(n.rels.cols(), m.rels.cols());
    let e = sys.equation(gn, m.rels.cols());
    sys.term(e, None, phi, Some(&m.rels));
    sys.term(e, Some(&n.rels.neg()), lam, None);
    let sols = sys.kernel();
    let mut g = Mat::zero(ring, gn * gm, 0);
    for s in &sols {
        g = g.hstack(&vec_of(&s[0]));
    }
    let null = kron_identity_left(&n.rels, gm);
    let module = subquotient(&g, &null);
    let gens = (0..g.cols())
        .map(|c| ModMap {
            src: m.clone(),
            dst: n.clone(),
            mat: unvec(&g, c, gn, gm),
        })
        .collect();
    HomModule {
        module,
        gens,
        src: m.clone(),
        dst: n.clone(),
    }
}

/// Homology `ker g / im f` of `a --f--> b --g--> c`.
pub fn homology(f: &ModMap, g: &ModMap) -> FpModule {
    let k = g.kernel();
    let into = k.lift(f).expect("g ∘ f = 0");
    into.cokernel().dst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptions() {
        let z = Ring::Integers;
        assert_eq!(FpModule::free(z, 1).describe(), "Z");
        assert_eq!(FpModule::cyclic(z, 2).describe(), "Z/2");
        assert_eq!(FpModule::cyclic(z, 1).describe(), "0");
        let m = FpModule::free(z, 2).direct_sum(&FpModule::cyclic(z, 2));
        assert_eq!(m.describe(), "Z^2 + Z/2");
        assert_eq!(FpModule::free(Ring::PrimeField(2), 1).describe(), "F_2");
        assert_eq!(FpModule::free(z, 1).invariants().factors(), "free rank 1");
    }

    #[test]
    fn hom_between_cyclic_groups() {
        let z = Ring::Integers;
        let h = hom(&FpModule::cyclic(z, 4), &FpModule::cyclic(z, 6));
        assert_eq!(h.invariants().describe(), "Z/2");
        let h = hom(&FpModule::cyclic(z, 2), &FpModule::cyclic(z, 3));
        assert!(h.module.is_zero());
        let h = hom(&FpModule::free(z, 1), &FpModule::free(z, 1));
        assert_eq!(h.invariants().describe(), "Z");
    }

    #[test]
    fn kernel_cokernel_image() {
        let z = Ring::Integers;
        let zz = FpModule::free(z, 1);
        let two = ModMap::new(zz.clone(), zz.clone(), Mat::from_i64(z, &[&[2]])).unwrap();
        assert!(two.kernel().src.is_zero());
        assert_eq!(two.cokernel().dst.describe(), "Z/2");
        assert_eq!(two.image().src.describe(), "Z");
        let z4 = FpModule::cyclic(z, 4);
        let mul2 = ModMap::new(z4.clone(), z4.clone(), Mat::from_i64(z, &[&[2]])).unwrap();
        assert_eq!(mul2.kernel().src.describe(), "Z/2");
        assert_eq!(homology(&mul2, &mul2).describe(), "0");
    }

    #[test]
    fn simplify_is_an_isomorphism() {
        let z = Ring::Integers;
        let m = FpModule::new(Mat::from_i64(z, &[&[2, 0], &[1, 3]]));
        let (s, to, from) = m.simplify();
        assert_eq!(s.gens(), 1);
        assert!(to.compose(&from).equals(&ModMap::identity(&m)));
        assert!(from.compose(&to).equals(&ModMap::identity(&s)));
        let q = Ring::Rationals;
        let m = FpModule::new(Mat::from_i64(q, &[&[1], &[1]]));
        let (s, to, from) = m.simplify();
        assert_eq!(s.gens(), 1);
        assert!(to.compose(&from).equals(&ModMap::identity(&m)));
    }

    #[test]
    fn lifting_and_encoding() {
        let z = Ring::Integers;
        let zz = FpModule::free(z, 1);
        let two = ModMap::new(zz.clone(), zz.clone(), Mat::from_i64(z, &[&[2]])).unwrap();
        let four = two.compose(&two);
        assert_eq!(two.lift(&four).unwrap().mat, Mat::from_i64(z, &[&[2]]));
        assert!(four.lift(&two).is_none());
        let h = hom(&zz, &zz);
        let c = h.encode(&four).unwrap();
        assert!(h.decode(&c).equals(&four));
    }
}
