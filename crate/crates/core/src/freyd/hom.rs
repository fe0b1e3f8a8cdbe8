use num_traits::Zero;

use super::{AbCat, AbMor, FreydError, Presentation};
use crate::additive::{AddSystem, Var};
use crate::coeff::{solve_right, subquotient, FpModule, Invariants, Mat, Scalar};

/// `Hom(X, Y)` in `Ab_R(D)` as a finitely presented `R`-module.
#[derive(Clone, Debug)]
pub struct HomPresentation {
    pub module: FpModule,
    /// Morphism represented by each generator of `module`.
    pub gens: Vec<AbMor>,
    pub src: Presentation,
    pub dst: Presentation,
    beta_vars: Vec<Var>,
    raw_beta: Mat,
    null: Mat,
    to: Mat,
}

fn beta_coords(
    vars: &[Var],
    beta: &crate::additive::AddMor,
    ring: crate::coeff::Ring,
) -> Option<Mat> {
    let mut x = Mat::zero(ring, vars.len(), 1);
    let mut used = 0;
    for (r, v) in vars.iter().enumerate() {
        if let Some(c) = beta.get(v.j, v.i).get(&v.arrow) {
            x.set(r, 0, c.clone());
            used += 1;
        }
    }
    let total: usize = beta.entries.iter().map(|c| c.len()).sum();
    (used == total).then_some(x)
}

impl HomPresentation {
    pub fn invariants(&self) -> Invariants {
        self.module.invariants()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn decode(&self, cat: &AbCat, coords: &[Scalar]) -> AbMor {
        let mut out = cat.zero(&self.src, &self.dst);
        for (c, g) in coords.iter().zip(&self.gens) {
            if !c.is_zero() {
                out = cat.add(&out, &cat.scale(g, c));
            }
        }
        out
    }

    /// Coordinates of `f` on `gens`.
    pub fn encode(&self, f: &AbMor) -> Option<Vec<Scalar>> {
        let ring = self.raw_beta.ring();
        let v = beta_coords(&self.beta_vars, &f.beta, ring)?;
        let a = self.raw_beta.hstack(&self.null);
        let x = solve_right(&a, &v).expect("shapes")?;
        let raw = x.submatrix(0..self.raw_beta.cols(), 0..1);
        let c = self.to.mul(&raw);
        Some((0..c.rows()).map(|i| c.get(i, 0).clone()).collect())
    }
}

impl AbCat {
    /// `Hom(x, y)`; needs exact finite hom-sets in the base.
    pub fn hom(&self, x: &Presentation, y: &Presentation) -> Result<HomPresentation, FreydError> {
        if !self.base().exact_homs() {
            return Err(FreydError::UnsupportedBase);
        }
        let ad = &self.add;
        let ring = self.ring();
        let m1 = ring.from_i64(-1);
        let mut sys = AddSystem::new(ad);
        let b = sys.unknown(x.mid(), y.mid());
        let a = sys.unknown(x.top(), y.top());
        let g = sys.unknown(x.bottom(), y.bottom());
        let e1 = sys.equation(x.top(), y.mid());
        sys.term(e1, Some(&y.a), a, None);
        sys.term_scaled(e1, &m1, None, b, Some(&x.a));
        let e2 = sys.equation(x.mid(), y.bottom());
        sys.term(e2, None, g, Some(&x.b));
        sys.term_scaled(e2, &m1, Some(&y.b), b, None);
        let flat = sys.flatten();
        let k = crate::coeff::kernel_gens(&flat.a);
        let nb = flat.vars.iter().filter(|v| v.unknown == b).count();
        debug_assert!(flat.vars[..nb].iter().all(|v| v.unknown == b));
        let beta_vars: Vec<Var> = flat.vars[..nb].to_vec();
        let raw_beta = k.submatrix(0..nb, 0..k.cols());
        let raw_gens: Vec<AbMor> = (0..k.cols())
            .map(|c| {
                let v = sys.decode(&flat.vars, &k, c);
                AbMor {
                    src: x.clone(),
                    dst: y.clone(),
                    beta: v[b].clone(),
                    alpha: v[a].clone(),
                    gamma: v[g].clone(),
                }
            })
            .collect();

        // β = σ b + a' τ spans the null morphisms
        let mut ns = AddSystem::new(ad);
        let s = ns.unknown(x.bottom(), y.mid());
        let t = ns.unknown(x.mid(), y.top());
        let nvars = ns.vars();
        let mut null = Mat::zero(ring, nb, 0);
        for r in 0..nvars.len() {
            let mut unit = Mat::zero(ring, nvars.len(), 1);
            unit.set(r, 0, ring.one());
            let v = ns.decode(&nvars, &unit, 0);
            let beta = ad.add(&ad.compose(&v[s], &x.b), &ad.compose(&y.a, &v[t]));
            let col = beta_coords(&beta_vars, &beta, ring).expect("exact base");
            null = null.hstack(&col);
        }

        let raw = subquotient(&raw_beta, &null);
        let (small, to, from) = raw.simplify();
        let gens = (0..small.gens())
            .map(|r| {
                let mut out = self.zero(x, y);
                for (c, gm) in raw_gens.iter().enumerate() {
                    let coef = from.mat.get(c, r);
                    if !coef.is_zero() {
                        out = self.add(&out, &self.scale(gm, coef));
                    }
                }
                out
            })
            .collect();
        Ok(HomPresentation {
            module: small,
            gens,
            src: x.clone(),
            dst: y.clone(),
            beta_vars,
            raw_beta,
            null,
            to: to.mat,
        })
    }

    /// `End(x)`.
    pub fn end(&self, x: &Presentation) -> Result<HomPresentation, FreydError> {
        self.hom(x, x)
    }
}
