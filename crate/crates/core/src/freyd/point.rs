//! `Ab_R` over the one-point base: evaluation, representables and simples.

use num_traits::Zero;

use super::{AbCat, AbMor, FreydError, ModCat, Presentation, Realization};
use crate::additive::AddMor;
use crate::coeff::{hom, FpModule, Invariants, Mat, ModMap, Ring};

impl AbCat {
    fn require_point(&self) -> Result<(), FreydError> {
        if self.is_point_base() {
            Ok(())
        } else {
            Err(FreydError::WrongBase)
        }
    }

    /// `R`-matrix as an envelope morphism over the point.
    pub fn point_matrix(&self, m: &Mat) -> AddMor {
        let id = self.base().identity(0);
        let mut f = self.add.zero(&vec![0; m.cols()], &vec![0; m.rows()]);
        for j in 0..m.rows() {
            for i in 0..m.cols() {
                let c = m.get(j, i);
                if !c.is_zero() {
                    f.entries[j * m.cols() + i].insert(id.clone(), c.clone());
                }
            }
        }
        f
    }

    /// Inverse of [`point_matrix`](Self::point_matrix).
    pub fn matrix_of(&self, f: &AddMor) -> Mat {
        let id = self.base().identity(0);
        let mut m = Mat::zero(self.ring(), f.dst.len(), f.src.len());
        for j in 0..f.dst.len() {
            for i in 0..f.src.len() {
                if let Some(c) = f.get(j, i).get(&id) {
                    m.set(j, i, c.clone());
                }
            }
        }
        m
    }

    /// `|R|`, the universal object.
    pub fn universal(&self) -> Presentation {
        self.delta(0)
    }

    /// Realization into `R'`-modules sending `|R|` to `m`.
    pub fn point_realization(&self, m: FpModule) -> Result<Realization<ModCat>, FreydError> {
        self.require_point()?;
        let target = ModCat { ring: m.ring() };
        Realization::new(self.clone(), target, vec![m], Vec::new())
    }

    /// The evaluation functor `r_R`, sending `|R|` to `R`.
    pub fn evaluate_at_ring(&self, x: &Presentation) -> Result<FpModule, FreydError> {
        Ok(self
            .point_realization(FpModule::free(self.ring(), 1))?
            .obj(x))
    }

    pub fn evaluate_mor_at_ring(&self, f: &AbMor) -> Result<ModMap, FreydError> {
        Ok(self
            .point_realization(FpModule::free(self.ring(), 1))?
            .mor(f))
    }

    /// Representable object at a module `M = R^g / im P`: the kernel of `|P^T|`.
    /// Evaluation sends it to `Hom(M, R)`.
    pub fn yoneda(&self, m: &FpModule) -> Result<Presentation, FreydError> {
        self.require_point()?;
        Ok(self.ker_of(&self.point_matrix(&m.rels.transpose())))
    }

    /// `h: M -> N` induces `Y(N) -> Y(M)`.
    pub fn yoneda_map(&self, h: &ModMap) -> Result<AbMor, FreydError> {
        self.require_point()?;
        let src = self.yoneda(&h.dst)?;
        let dst = self.yoneda(&h.src)?;
        let beta = self.point_matrix(&h.mat.transpose());
        self.morphism(&src, &dst, &beta)
    }

    /// The representable at `Z/p^n` modulo its radical, in `Ab_Z`.
    pub fn simple_candidate(p: u64, n: u32) -> Presentation {
        let cat = AbCat::point(Ring::Integers);
        let (h, _) = radical_source_map(p, n);
        let y = cat.yoneda_map(&h).expect("point base");
        cat.cokernel(&y).dst
    }
}

fn cyclic(p: u64, k: u32) -> FpModule {
    FpModule::cyclic(Ring::Integers, p.pow(k) as i64)
}

/// `Z/p^n -> Z/p^(n+1) + Z/p^(n-1) + Z/p^n` with components `p`, `1`, `p`,
/// together with `Z/p^n`.
fn radical_source_map(p: u64, n: u32) -> (ModMap, FpModule) {
    let z = Ring::Integers;
    let m = cyclic(p, n);
    let target = cyclic(p, n + 1)
        .direct_sum(&cyclic(p, n - 1))
        .direct_sum(&m);
    let mat = Mat::from_i64(z, &[&[p as i64], &[1], &[p as i64]]);
    (
        ModMap::new(m.clone(), target, mat).expect("well-defined maps"),
        m,
    )
}

/// Value at `x` of the functor `Hom(Z/p^n, -) / rad`, computed directly in `Z`-modules.
pub fn functor_category_oracle(p: u64, n: u32, x: &FpModule) -> Invariants {
    let (h, m) = radical_source_map(p, n);
    let full = hom(&m, x);
    let through = hom(&h.dst, x);
    let mut rad = Mat::zero(Ring::Integers, full.module.gens(), 0);
    for g in &through.gens {
        let c = full
            .encode(&h.compose(g))
            .expect("composite is a homomorphism");
        let col = Mat::from_scalars(Ring::Integers, c.len(), 1, c).expect("column");
        rad = rad.hstack(&col);
    }
    FpModule::new(full.module.rels.hstack(&rad)).invariants()
}
