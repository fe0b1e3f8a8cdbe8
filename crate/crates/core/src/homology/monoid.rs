use super::graded::{point_quotient, universal_homology, PointQuotient};
use super::HomologyError;
use crate::additive::Arrow;
use crate::coeff::{ModMap, Ring};
use crate::diagram::FinCat;
use crate::freyd::{AbCat, AbMor, HomPresentation, ModCat, Realization};

/// `A^point(N)` for a finite monoid `N`, with `h: R[N] -> End(H_0(*))`.
#[derive(Clone, Debug)]
pub struct MonoidUniversal {
    pub point: PointQuotient,
    pub end: HomPresentation,
    /// `h(n)` for every element `n`, in the order of the monoid's morphisms.
    pub h: Vec<AbMor>,
}

pub fn monoid_universal(
    n: FinCat,
    ring: Ring,
    bound: usize,
) -> Result<MonoidUniversal, HomologyError> {
    if n.num_objects() != 1 {
        return Err(HomologyError::Malformed(
            "a monoid has exactly one object".into(),
        ));
    }
    let g = universal_homology(n, ring, (0, 0))?;
    let point = point_quotient(&g, &[0], bound)?;
    let c = &g.component;
    let end = c.end(&c.delta(0))?;
    let h = (0..g.category.num_mors())
        .map(|m| c.delta_mor(&c.add.arrow(&Arrow::Mor(m))))
        .collect();
    Ok(MonoidUniversal { point, end, h })
}

impl MonoidUniversal {
    pub fn cat(&self) -> &AbCat {
        &self.point.graded.component
    }

    pub fn monoid(&self) -> &FinCat {
        &self.point.graded.category
    }

    /// `h(a) h(b) = h(ab)` for all elements.
    pub fn h_is_multiplicative(&self) -> bool {
        let n = self.monoid();
        let c = self.cat();
        (0..n.num_mors()).all(|a| {
            (0..n.num_mors()).all(|b| {
                let ab = n.compose(a, b).expect("one object");
                c.equal(&c.compose(&self.h[a], &self.h[b]), &self.h[ab])
            })
        })
    }

    /// `r_ρ` for a representation given on the monoid generators.
    pub fn realize(
        &self,
        module: crate::coeff::FpModule,
        rho: Vec<ModMap>,
    ) -> Result<Realization<ModCat>, HomologyError> {
        let ring = self.cat().ring();
        Ok(Realization::new(
            self.cat().clone(),
            ModCat { ring },
            vec![module],
            rho,
        )?)
    }

    /// `r_ρ(h(n)) = ρ(n)` for every element `n`.
    pub fn factors(&self, r: &Realization<ModCat>) -> bool {
        (0..self.monoid().num_mors()).all(|m| {
            let rho = r.arrow(&Arrow::Mor(m));
            r.matches_arrow(&Arrow::Mor(m), &rho)
        })
    }
}
