use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::data::HomologyData;
use super::HomologyError;
use crate::additive::{Arrow, Base};
use crate::coeff::{FpModule, Ring};
use crate::diagram::{DiagramError, FinCat};
use crate::freyd::{AbCat, AbMor, ModCat, Presentation, Realization};
use crate::quotient::{quotient_by_gens, Answer, SerreQuotient, ThickGens};

/// An object of a graded component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedObj {
    pub object: Presentation,
    pub degree: i64,
}

/// `Z`-indexed copies of `Ab_R(C)` restricted to a window, with no maps between degrees.
#[derive(Clone, Debug)]
pub struct GradedAbCat {
    pub window: (i64, i64),
    pub category: Arc<FinCat>,
    pub component: AbCat,
}

pub fn universal_homology(
    c: FinCat,
    ring: Ring,
    window: (i64, i64),
) -> Result<GradedAbCat, HomologyError> {
    if window.0 > window.1 {
        return Err(DiagramError::EmptyWindow(window.0, window.1).into());
    }
    let category = Arc::new(c);
    let component = AbCat::over(ring, Base::Fin(category.clone()));
    Ok(GradedAbCat {
        window,
        category,
        component,
    })
}

impl GradedAbCat {
    pub fn ring(&self) -> Ring {
        self.component.ring()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.window.0..=self.window.1
    }

    pub fn check_degree(&self, i: i64) -> Result<(), HomologyError> {
        if i < self.window.0 || i > self.window.1 {
            return Err(HomologyError::OutOfWindow(i, self.window.0, self.window.1));
        }
        Ok(())
    }

    /// `H_i(X) = (Δ(X), i)`.
    pub fn h(&self, x: usize, i: i64) -> Result<GradedObj, HomologyError> {
        self.check_degree(i)?;
        Ok(GradedObj {
            object: self.component.delta(x),
            degree: i,
        })
    }

    /// `H_i(f)`; the same map in every degree.
    pub fn h_mor(&self, f: usize) -> AbMor {
        self.component
            .delta_mor(&self.component.add.arrow(&Arrow::Mor(f)))
    }

    /// Hom-module between graded objects; zero across degrees.
    pub fn hom_module(&self, x: &GradedObj, y: &GradedObj) -> Result<FpModule, HomologyError> {
        if x.degree != y.degree {
            return Ok(FpModule::zero(self.ring()));
        }
        Ok(self.component.hom(&x.object, &y.object)?.module)
    }

    /// One realization per degree of the window.
    pub fn realize(&self, k: &HomologyData) -> Result<Vec<Realization<ModCat>>, HomologyError> {
        if k.window != self.window || k.values.len() != self.degrees().count() {
            return Err(HomologyError::Malformed(
                "homology data window differs".into(),
            ));
        }
        let target = ModCat { ring: self.ring() };
        let mut out = Vec::new();
        for (vals, maps) in k.values.iter().zip(&k.maps) {
            out.push(Realization::new(
                self.component.clone(),
                target,
                vals.clone(),
                maps.clone(),
            )?);
        }
        Ok(out)
    }

    /// `r_K(H_i(f)) = K_i(f)` for every generator `f` and degree, up to the canonical units.
    pub fn verify_factorization(&self, k: &HomologyData) -> Result<bool, HomologyError> {
        let rs = self.realize(k)?;
        for (r, maps) in rs.iter().zip(&k.maps) {
            for x in 0..self.category.num_objects() {
                let u = r.unit(x);
                if !u.is_iso()
                    || r.obj(&self.component.delta(x)).invariants() != r.objects[x].invariants()
                {
                    return Ok(false);
                }
            }
            for (&g, m) in self.category.generators.iter().zip(maps) {
                if !r.matches_arrow(&Arrow::Mor(g), m) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Formal quotient killing `H_i(*)` for `i != 0` and every point `*`, degree by degree.
#[derive(Clone, Debug)]
pub struct PointQuotient {
    pub graded: GradedAbCat,
    pub points: Vec<usize>,
    pub components: Vec<SerreQuotient>,
}

pub fn point_quotient(
    g: &GradedAbCat,
    points: &[usize],
    bound: usize,
) -> Result<PointQuotient, HomologyError> {
    if points.is_empty() {
        return Err(HomologyError::Malformed("no point objects".into()));
    }
    if let Some(&p) = points.iter().find(|&&p| p >= g.category.num_objects()) {
        return Err(HomologyError::Malformed(format!("no object {p}")));
    }
    let components = g
        .degrees()
        .map(|i| {
            let mut gens = ThickGens::new();
            if i != 0 {
                for &p in points {
                    gens.push(
                        format!("H{}({})", i, g.category.objects[p]),
                        g.component.delta(p),
                    );
                }
            }
            quotient_by_gens(g.component.clone(), gens, bound)
        })
        .collect();
    Ok(PointQuotient {
        graded: g.clone(),
        points: points.to_vec(),
        components,
    })
}

impl PointQuotient {
    pub fn component(&self, i: i64) -> Result<&SerreQuotient, HomologyError> {
        self.graded.check_degree(i)?;
        Ok(&self.components[(i - self.graded.window.0) as usize])
    }

    pub fn is_zero(&self, x: &GradedObj) -> Result<Answer, HomologyError> {
        Ok(self.component(x.degree)?.is_zero(&x.object))
    }

    /// Whether the whole component of degree `i` vanishes: it does when every object of
    /// `C` is a point, since each object is a subquotient of a sum of `Δ(v)`.
    pub fn kills_component(&self, i: i64) -> bool {
        i != 0 && (0..self.graded.category.num_objects()).all(|v| self.points.contains(&v))
    }

    /// Hom-module in the quotient where it is determined exactly; `None` otherwise.
    pub fn hom_module(
        &self,
        x: &GradedObj,
        y: &GradedObj,
    ) -> Result<Option<FpModule>, HomologyError> {
        self.graded.check_degree(x.degree)?;
        self.graded.check_degree(y.degree)?;
        if x.degree != y.degree || self.kills_component(x.degree) {
            return Ok(Some(FpModule::zero(self.graded.ring())));
        }
        if x.degree == 0 {
            return Ok(Some(self.graded.hom_module(x, y)?));
        }
        Ok(None)
    }
}
