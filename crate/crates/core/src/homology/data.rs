use serde::{Deserialize, Serialize};

use super::relative::nori_base;
use super::HomologyError;
use crate::coeff::{FpModule, ModMap, Ring};
use crate::diagram::{enumerate_cubes, NoriDiagram, NoriEdge};
use crate::freyd::{AbCat, ModCat, Presentation, Realization};
use crate::quotient::{Answer, QuotientError, QuotientHom, SerreQuotient};

/// A homology on a finite category: per degree, a module per object and a map per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyData {
    pub window: (i64, i64),
    pub values: Vec<Vec<FpModule>>,
    pub maps: Vec<Vec<ModMap>>,
}

/// Candidate relative homology: a module per Nori vertex and a map per Nori edge.
#[derive(Clone, Debug)]
pub struct RelHomologyData {
    pub nori: NoriDiagram,
    pub ring: Ring,
    pub values: Vec<FpModule>,
    pub maps: Vec<ModMap>,
}

/// A failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// One of `shape`, `functoriality`, `chain`, `exactness`, `naturality`.
    pub condition: String,
    /// The triple, cube, composite or edge concerned.
    pub place: String,
    pub degree: i64,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} at {} in degree {}: {}",
            self.condition, self.place, self.degree, self.detail
        )
    }
}

impl RelHomologyData {
    /// The zero homology.
    pub fn zero(nori: &NoriDiagram, ring: Ring) -> RelHomologyData {
        let z = FpModule::zero(ring);
        RelHomologyData {
            nori: nori.clone(),
            ring,
            values: vec![z.clone(); nori.quiver.vertices.len()],
            maps: vec![ModMap::zero(&z, &z); nori.quiver.edges.len()],
        }
    }

    /// `H_0(X, 0) = a` for `X != 0`; every other value is zero and every map is an
    /// identity or zero. Needs a strictly initial object `0`.
    pub fn almost_trivial(
        nori: &NoriDiagram,
        a: &FpModule,
    ) -> Result<RelHomologyData, HomologyError> {
        let p = &nori.pairs;
        let c = &p.base;
        let zero = c
            .initial_object()
            .filter(|&o| c.is_strictly_initial(o))
            .ok_or(HomologyError::NoInitial)?;
        let ring = a.ring();
        let is_zero_obj = |x: usize| !c.hom(x, zero).is_empty();
        let live = |pair: usize, i: i64| {
            let (x, y) = p.xy(pair);
            i == 0 && y == zero && !is_zero_obj(x)
        };
        let values: Vec<FpModule> = (0..nori.quiver.vertices.len())
            .map(|v| {
                let (pair, i) = nori.vertex_info(v);
                if live(pair, i) {
                    a.clone()
                } else {
                    FpModule::zero(ring)
                }
            })
            .collect();
        let maps = nori
            .quiver
            .edges
            .iter()
            .zip(&nori.edge_kinds)
            .map(|(e, kind)| {
                let (s, t) = (&values[e.src], &values[e.dst]);
                match kind {
                    NoriEdge::Gamma { mor, degree } => {
                        let m = &p.cat.mors[*mor];
                        if live(m.src, *degree) && live(m.dst, *degree) {
                            ModMap::identity(a)
                        } else {
                            ModMap::zero(s, t)
                        }
                    }
                    NoriEdge::Boundary { .. } => ModMap::zero(s, t),
                }
            })
            .collect();
        Ok(RelHomologyData {
            nori: nori.clone(),
            ring,
            values,
            maps,
        })
    }

    fn value(&self, pair: usize, i: i64) -> &FpModule {
        &self.values[self.nori.vertex(pair, i).expect("degree in window")]
    }

    /// `K_i(m)` for a pair morphism, identities included.
    pub fn pair_map(&self, m: usize, i: i64) -> ModMap {
        let p = &self.nori.pairs;
        if p.cat.is_identity(m) {
            return ModMap::identity(self.value(p.cat.mors[m].src, i));
        }
        self.maps[self
            .nori
            .gamma_edge(m, i)
            .expect("non-identity pair morphism has an edge")]
        .clone()
    }

    fn boundary(&self, t: usize, i: i64) -> Option<&ModMap> {
        self.nori.boundary_edge(t, i).map(|e| &self.maps[e])
    }

    /// Every violated axiom instance; empty when the data is a relative homology.
    pub fn check_axioms(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = &self.nori;
        let shape = |place: String, degree: i64, detail: &str| Violation {
            condition: "shape".into(),
            place,
            degree,
            detail: detail.into(),
        };
        if self.values.len() != n.quiver.vertices.len() || self.maps.len() != n.quiver.edges.len() {
            out.push(shape(
                "diagram".into(),
                n.window.0,
                "wrong number of values or maps",
            ));
            return out;
        }
        for (k, (e, m)) in n.quiver.edges.iter().zip(&self.maps).enumerate() {
            let deg = match n.edge_kinds[k] {
                NoriEdge::Gamma { degree, .. } | NoriEdge::Boundary { degree, .. } => degree,
            };
            if m.src != self.values[e.src] || m.dst != self.values[e.dst] {
                out.push(shape(
                    e.label.clone(),
                    deg,
                    "endpoints differ from the vertex values",
                ));
            } else if ModMap::new(m.src.clone(), m.dst.clone(), m.mat.clone()).is_err() {
                out.push(shape(e.label.clone(), deg, "not a module homomorphism"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        self.check_functoriality(&mut out);
        self.check_triples(&mut out);
        self.check_naturality(&mut out);
        out
    }

    fn check_functoriality(&self, out: &mut Vec<Violation>) {
        let n = &self.nori;
        let pc = &n.pairs.cat;
        for i in n.window.0..=n.window.1 {
            for m1 in 0..pc.num_mors() {
                for m2 in 0..pc.num_mors() {
                    if pc.is_identity(m1) || pc.is_identity(m2) {
                        continue;
                    }
                    let Some(m3) = pc.then(m1, m2) else { continue };
                    let lhs = self.pair_map(m1, i).compose(&self.pair_map(m2, i));
                    if !lhs.equals(&self.pair_map(m3, i)) {
                        out.push(Violation {
                            condition: "functoriality".into(),
                            place: format!("{} ∘ {}", pc.mors[m2].name, pc.mors[m1].name),
                            degree: i,
                            detail: format!("differs from {}", pc.mors[m3].name),
                        });
                    }
                }
            }
        }
    }

    fn check_triples(&self, out: &mut Vec<Violation>) {
        let n = &self.nori;
        let p = &n.pairs;
        let (a, b) = n.window;
        for (ti, t) in n.triples.iter().enumerate() {
            let name = t.name(p);
            for i in a..=b {
                let alpha = self.pair_map(t.alpha, i);
                let beta = self.pair_map(t.beta, i);
                let mut chain = |what: &str, f: &ModMap, g: &ModMap| {
                    if !f.compose(g).is_zero() {
                        out.push(Violation {
                            condition: "chain".into(),
                            place: name.clone(),
                            degree: i,
                            detail: format!("{what} is not zero"),
                        });
                    }
                };
                chain("β∘α", &alpha, &beta);
                let d = self.boundary(ti, i);
                if let Some(d) = d {
                    chain("∂∘β", &beta, d);
                    chain("α∘∂", d, &self.pair_map(t.alpha, i - 1));
                }
                let mut exact = |spot: usize, f: &ModMap, g: &ModMap| {
                    if !f.compose(g).is_zero() {
                        return;
                    }
                    if f.lift(&g.kernel()).is_none() {
                        out.push(Violation {
                            condition: "exactness".into(),
                            place: name.clone(),
                            degree: i,
                            detail: format!("at H{}{}", i, p.name(spot)),
                        });
                    }
                };
                exact(t.xz, &alpha, &beta);
                if let Some(d) = d {
                    exact(t.xy, &beta, d);
                }
                if let Some(d) = self.boundary(ti, i + 1) {
                    exact(t.yz, d, &alpha);
                }
            }
        }
    }

    fn check_naturality(&self, out: &mut Vec<Violation>) {
        let n = &self.nori;
        let p = &n.pairs;
        for c in enumerate_cubes(p, &n.triples) {
            for i in n.window.0 + 1..=n.window.1 {
                let (Some(ds), Some(dt)) = (self.boundary(c.src, i), self.boundary(c.dst, i))
                else {
                    continue;
                };
                let lhs = ds.compose(&self.pair_map(c.gamma, i - 1));
                let rhs = self.pair_map(c.delta, i).compose(dt);
                if !lhs.equals(&rhs) {
                    out.push(Violation {
                        condition: "naturality".into(),
                        place: format!(
                            "{} → {}",
                            n.triples[c.src].name(p),
                            n.triples[c.dst].name(p)
                        ),
                        degree: i,
                        detail: format!("γ∘∂ differs from ∂'∘δ along {}", p.cat.mors[c.delta].name),
                    });
                }
            }
        }
    }
}

/// `A(K)`: the quotient of the free abelian category on the Nori diagram by the kernel of `r_K`.
#[derive(Clone, Debug)]
pub struct UniversalFrom {
    pub nori: NoriDiagram,
    pub cat: AbCat,
    pub quotient: SerreQuotient,
}

impl RelHomologyData {
    pub fn realization(&self) -> Result<Realization<ModCat>, HomologyError> {
        let cat = AbCat::over(self.ring, nori_base(&self.nori));
        Ok(Realization::new(
            cat,
            ModCat { ring: self.ring },
            self.values.clone(),
            self.maps.clone(),
        )?)
    }

    pub fn universal_from(&self) -> Result<UniversalFrom, HomologyError> {
        let v = self.check_axioms();
        if !v.is_empty() {
            return Err(HomologyError::AxiomFailure(
                v.iter().map(|x| x.to_string()).collect(),
            ));
        }
        let r = self.realization()?;
        let cat = r.source.clone();
        Ok(UniversalFrom {
            nori: self.nori.clone(),
            quotient: SerreQuotient::realization(cat.clone(), r),
            cat,
        })
    }
}

impl UniversalFrom {
    /// The projected `H_i(X, Y)`, named by its pair index.
    pub fn h(&self, pair: usize, i: i64) -> Result<Presentation, HomologyError> {
        let v = self.nori.vertex(pair, i).ok_or(HomologyError::OutOfWindow(
            i,
            self.nori.window.0,
            self.nori.window.1,
        ))?;
        Ok(self.cat.delta(v))
    }

    pub fn is_zero(&self, x: &Presentation) -> Answer {
        self.quotient.is_zero(x)
    }

    pub fn quotient_hom(
        &self,
        x: &Presentation,
        y: &Presentation,
        stages: usize,
    ) -> Result<QuotientHom, QuotientError> {
        self.quotient.quotient_hom(x, y, stages)
    }

    /// `r_K(H) = K` on every vertex and edge, up to the canonical units.
    pub fn verify_factorization(&self) -> bool {
        let crate::quotient::Mode::Realization(r) = &self.quotient.mode else {
            return false;
        };
        let units_ok = (0..self.nori.quiver.vertices.len()).all(|v| r.unit(v).is_iso());
        units_ok
            && r.generators
                .iter()
                .enumerate()
                .all(|(e, m)| r.matches_arrow(&self.cat.base().generator(e), m))
    }

    /// Value of `r_K` on an object.
    pub fn realize(&self, x: &Presentation) -> Option<FpModule> {
        match &self.quotient.mode {
            crate::quotient::Mode::Realization(r) => Some(r.obj(x)),
            _ => None,
        }
    }
}
