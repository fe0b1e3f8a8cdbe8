use serde::{Deserialize, Serialize};

use super::{HomologyError, RelHomologyData};
use crate::additive::{AddMor, Base};
use crate::coeff::{FpModule, Ring};
use crate::diagram::{enumerate_cubes, nori_diagram, pairs_category, Cube, FinCat, NoriDiagram};
use crate::freyd::{AbCat, AbMor, Presentation};
use crate::quotient::{quotient_by_gens, Answer, Certificate, SerreQuotient, ThickGens};

pub(crate) fn nori_base(n: &NoriDiagram) -> Base {
    Base::free(n.quiver.clone(), n.quiver.vertices.len() + 1)
}

/// Where a generator of the thick subcategory comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenKind {
    /// `im(Δ_{m2 m1} - Δ_{m2} Δ_{m1})`.
    Functoriality {
        first: usize,
        second: usize,
        degree: i64,
    },
    /// `im(Δ_γ Δ_∂ - Δ_∂' Δ_δ)` for a `∂`-cube.
    Naturality { cube: usize, degree: i64 },
    /// `im(Δ_β Δ_α)`.
    BetaAlpha { triple: usize, degree: i64 },
    /// `im(Δ_∂ Δ_β)`.
    BoundaryBeta { triple: usize, degree: i64 },
    /// `im(Δ_α Δ_∂)`, with `α` in degree `degree - 1`.
    AlphaBoundary { triple: usize, degree: i64 },
    /// Homology of the triple complex at the vertex of `pair` in `degree`.
    Homology {
        triple: usize,
        pair: usize,
        degree: i64,
    },
}

/// The universal relative homology category: the free abelian category on the Nori
/// diagram modulo the thick subcategory of the homology axioms.
#[derive(Clone, Debug)]
pub struct RelUniversalCat {
    pub nori: NoriDiagram,
    pub cat: AbCat,
    pub cubes: Vec<Cube>,
    pub kinds: Vec<GenKind>,
    pub quotient: SerreQuotient,
}

/// One row of a coproduct table: `coproduct = ∐ summands` with the given injections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoproductRow {
    pub summands: Vec<usize>,
    pub coproduct: usize,
    pub injections: Vec<usize>,
}

/// `X ↦ (X, 0)` along a strictly initial object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedHomology {
    pub zero: usize,
    /// The pair `(X, 0)` for each object `X`.
    pub pairs: Vec<usize>,
}

pub fn universal_relative(
    c: &FinCat,
    distinguished: &[bool],
    ring: Ring,
    window: (i64, i64),
    bound: usize,
) -> Result<RelUniversalCat, HomologyError> {
    let p = pairs_category(c, distinguished)?;
    let nori = nori_diagram(&p, window)?;
    let cat = AbCat::over(ring, nori_base(&nori));
    let cubes = enumerate_cubes(&p, &nori.triples);
    let mut ru = RelUniversalCat {
        quotient: quotient_by_gens(cat.clone(), ThickGens::new(), bound),
        nori,
        cat,
        cubes,
        kinds: Vec::new(),
    };
    let (gens, kinds) = ru.generators()?;
    ru.kinds = kinds;
    ru.quotient = quotient_by_gens(ru.cat.clone(), gens, bound);
    if let Ok(k) = RelHomologyData::almost_trivial(&ru.nori, &FpModule::free(ring, 1)) {
        if k.check_axioms().is_empty() {
            ru.quotient.register_separator(k.realization()?).ok();
        }
    }
    Ok(ru)
}

impl RelUniversalCat {
    pub fn window(&self) -> (i64, i64) {
        self.nori.window
    }

    fn check_degree(&self, i: i64) -> Result<usize, HomologyError> {
        let (a, b) = self.window();
        if i < a || i > b {
            return Err(HomologyError::OutOfWindow(i, a, b));
        }
        Ok((i - a) as usize)
    }

    fn vertex(&self, pair: usize, i: i64) -> usize {
        self.nori.vertex(pair, i).expect("degree in window")
    }

    /// `H_i(X, Y)` for pair object `pair`.
    pub fn h(&self, pair: usize, i: i64) -> Result<Presentation, HomologyError> {
        self.check_degree(i)?;
        Ok(self.cat.delta(self.vertex(pair, i)))
    }

    /// `Δ` of a pair morphism in degree `i`; identities give identities.
    pub fn delta_pair(&self, m: usize, i: i64) -> AddMor {
        let pc = &self.nori.pairs.cat;
        if pc.is_identity(m) {
            return self.cat.add.identity(&vec![self.vertex(pc.mors[m].src, i)]);
        }
        let e = self
            .nori
            .gamma_edge(m, i)
            .expect("non-identity pair morphism has an edge");
        self.cat.add.arrow(&self.cat.base().generator(e))
    }

    /// `Δ` of the connecting edge `∂_i` of a triple, if degree `i - 1` is in the window.
    pub fn delta_boundary(&self, t: usize, i: i64) -> Option<AddMor> {
        let e = self.nori.boundary_edge(t, i)?;
        Some(self.cat.add.arrow(&self.cat.base().generator(e)))
    }

    /// `im Δ(f)`; the image of an identity is its object.
    pub fn image_obj(&self, f: &AddMor) -> Presentation {
        if f.src == f.dst && *f == self.cat.add.identity(&f.src) {
            return self.cat.embed(&f.src);
        }
        self.cat.image(&self.cat.delta_mor(f)).src
    }

    fn generators(&self) -> Result<(ThickGens, Vec<GenKind>), HomologyError> {
        let ad = &self.cat.add;
        let p = &self.nori.pairs;
        let pc = &p.cat;
        let (a, b) = self.window();
        let mut gens = ThickGens::new();
        let mut kinds = Vec::new();
        let mut push = |label: String, x: Presentation, kind: GenKind| {
            gens.push(label, x);
            kinds.push(kind);
        };
        for i in a..=b {
            for m1 in 0..pc.num_mors() {
                for m2 in 0..pc.num_mors() {
                    if pc.is_identity(m1) || pc.is_identity(m2) {
                        continue;
                    }
                    let Some(m3) = pc.then(m1, m2) else { continue };
                    let d = ad.sub(
                        &self.delta_pair(m3, i),
                        &ad.compose(&self.delta_pair(m2, i), &self.delta_pair(m1, i)),
                    );
                    if d.is_zero() {
                        continue;
                    }
                    push(
                        format!(
                            "functoriality {} ∘ {} @{}",
                            pc.mors[m2].name, pc.mors[m1].name, i
                        ),
                        self.image_obj(&d),
                        GenKind::Functoriality {
                            first: m1,
                            second: m2,
                            degree: i,
                        },
                    );
                }
            }
            for (ci, c) in self.cubes.iter().enumerate() {
                let (Some(ds), Some(dt)) =
                    (self.delta_boundary(c.src, i), self.delta_boundary(c.dst, i))
                else {
                    continue;
                };
                let lhs = ad.compose(&self.delta_pair(c.gamma, i - 1), &ds);
                let rhs = ad.compose(&dt, &self.delta_pair(c.delta, i));
                let d = ad.sub(&lhs, &rhs);
                if d.is_zero() {
                    continue;
                }
                push(
                    format!(
                        "naturality {} → {} @{}",
                        self.nori.triples[c.src].name(p),
                        self.nori.triples[c.dst].name(p),
                        i
                    ),
                    self.image_obj(&d),
                    GenKind::Naturality {
                        cube: ci,
                        degree: i,
                    },
                );
            }
            for (ti, t) in self.nori.triples.iter().enumerate() {
                let name = t.name(p);
                let alpha = self.delta_pair(t.alpha, i);
                let beta = self.delta_pair(t.beta, i);
                push(
                    format!("βα {name} @{i}"),
                    self.image_obj(&ad.compose(&beta, &alpha)),
                    GenKind::BetaAlpha {
                        triple: ti,
                        degree: i,
                    },
                );
                let d = self.delta_boundary(ti, i);
                if let Some(d) = &d {
                    push(
                        format!("∂β {name} @{i}"),
                        self.image_obj(&ad.compose(d, &beta)),
                        GenKind::BoundaryBeta {
                            triple: ti,
                            degree: i,
                        },
                    );
                    push(
                        format!("α∂ {name} @{i}"),
                        self.image_obj(&ad.compose(&self.delta_pair(t.alpha, i - 1), d)),
                        GenKind::AlphaBoundary {
                            triple: ti,
                            degree: i,
                        },
                    );
                }
                let spot = |f: &AddMor, g: &AddMor| Presentation {
                    a: f.clone(),
                    b: g.clone(),
                };
                push(
                    format!("homology {name} at H{i}{}", p.name(t.xz)),
                    spot(&alpha, &beta),
                    GenKind::Homology {
                        triple: ti,
                        pair: t.xz,
                        degree: i,
                    },
                );
                if let Some(d) = &d {
                    push(
                        format!("homology {name} at H{i}{}", p.name(t.xy)),
                        spot(&beta, d),
                        GenKind::Homology {
                            triple: ti,
                            pair: t.xy,
                            degree: i,
                        },
                    );
                }
                if let Some(d) = self.delta_boundary(ti, i + 1) {
                    push(
                        format!("homology {name} at H{i}{}", p.name(t.yz)),
                        spot(&d, &alpha),
                        GenKind::Homology {
                            triple: ti,
                            pair: t.yz,
                            degree: i,
                        },
                    );
                }
            }
        }
        Ok((gens, kinds))
    }

    pub fn gens(&self) -> &ThickGens {
        self.quotient.gens().expect("formal quotient")
    }

    /// Triples other than `(X, X, X)`.
    pub fn non_identity_triples(&self) -> Vec<usize> {
        let p = &self.nori.pairs;
        (0..self.nori.triples.len())
            .filter(|&t| !self.nori.triples[t].is_identity_only(p))
            .collect()
    }

    fn gen_index(&self, kind: &GenKind) -> usize {
        self.kinds
            .iter()
            .position(|k| k == kind)
            .expect("generator enumerated")
    }

    pub fn is_zero(&self, x: &Presentation) -> Answer {
        self.quotient.is_zero(x)
    }

    /// Certificate that `H_i(X, Y) = 0` for a pair whose distinguished morphism is an
    /// isomorphism. For `Y = X` it is the generator `im Δ_β Δ_α` of the identity triple.
    pub fn purity_certificate(&self, pair: usize, i: i64) -> Result<Certificate, HomologyError> {
        self.check_degree(i)?;
        let p = &self.nori.pairs;
        let c = &p.base;
        let u = p.pairs[pair];
        if !c.is_iso(u) {
            return Err(HomologyError::NotDistinguished(format!(
                "{} as an isomorphism",
                p.name(pair)
            )));
        }
        let (x, y) = p.xy(pair);
        let xx = p
            .pair_of(c.identity(x))
            .expect("identities are distinguished");
        let id_triple = self
            .nori
            .triples
            .iter()
            .position(|t| t.f == c.identity(x) && t.g == c.identity(x))
            .expect("identity triple");
        let own = Certificate::Gen {
            index: self.gen_index(&GenKind::BetaAlpha {
                triple: id_triple,
                degree: i,
            }),
        };
        if c.is_identity(u) {
            return Ok(own);
        }
        // (X,Y) is a retract of (X,X) up to the functoriality generator of t ∘ s = id
        let inv = (0..c.num_mors())
            .find(|&v| c.then(u, v) == Some(c.identity(y)) && c.then(v, u) == Some(c.identity(x)))
            .expect("isomorphism has an inverse");
        let s = p
            .square(pair, xx, c.identity(x), u)
            .expect("(id, u) is a pair morphism");
        let t = p
            .square(xx, pair, c.identity(x), inv)
            .expect("(id, u⁻¹) is a pair morphism");
        let ad = &self.cat.add;
        let e = ad.compose(&self.delta_pair(t, i), &self.delta_pair(s, i));
        let d = ad.sub(&ad.identity(&e.src), &e);
        let func = self.gen_index(&GenKind::Functoriality {
            first: s,
            second: t,
            degree: i,
        });
        let im = self.cat.image(&self.cat.delta_mor(&d));
        let corestrict = self
            .cat
            .lift(&im, &self.cat.delta_mor(&d))
            .expect("a map factors through its image");
        let hxx = self.cat.delta(self.vertex(xx, i));
        let parts = [hxx.clone(), im.src.clone()];
        let mono = self.cat.matrix(
            &[self.cat.delta(self.vertex(pair, i))],
            &parts,
            &[
                vec![self.cat.delta_mor(&self.delta_pair(s, i))],
                vec![corestrict],
            ],
        );
        let sum = Certificate::ExtOf {
            mono: self.cat.injection(&parts, 0),
            epi: self.cat.projection(&parts, 1),
            sub: Box::new(own),
            quot: Box::new(Certificate::Gen { index: func }),
        };
        Ok(Certificate::SubOf {
            mono,
            of: Box::new(sum),
        })
    }

    pub fn verify(&self, cert: &Certificate) -> bool {
        self.quotient.verify(cert)
    }

    /// Restriction along `X ↦ (X, 0)`.
    pub fn restricted_homology(&self) -> Result<RestrictedHomology, HomologyError> {
        let p = &self.nori.pairs;
        let c = &p.base;
        let zero = c
            .initial_object()
            .filter(|&o| c.is_strictly_initial(o))
            .ok_or(HomologyError::NoInitial)?;
        let pairs = (0..c.num_objects())
            .map(|x| {
                let f = c.hom(zero, x)[0];
                p.pair_of(f).ok_or_else(|| {
                    HomologyError::NotDistinguished(format!(
                        "({},{})",
                        c.objects[x], c.objects[zero]
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RestrictedHomology { zero, pairs })
    }

    /// `r_∂(H_i(X)) = H_i(X, 0)`.
    pub fn restricted_h(
        &self,
        r: &RestrictedHomology,
        x: usize,
        i: i64,
    ) -> Result<Presentation, HomologyError> {
        self.h(r.pairs[x], i)
    }

    /// `r_∂(H_i(f))` for a morphism `f: X -> X'` of the base category.
    pub fn restricted_mor(
        &self,
        r: &RestrictedHomology,
        f: usize,
        i: i64,
    ) -> Result<AbMor, HomologyError> {
        self.check_degree(i)?;
        let p = &self.nori.pairs;
        let m = &p.base.mors[f];
        let sq = p
            .square(r.pairs[m.src], r.pairs[m.dst], f, p.base.identity(r.zero))
            .expect("(f, id_0) is a pair morphism");
        Ok(self.cat.delta_mor(&self.delta_pair(sq, i)))
    }

    /// The triple `(X, Y, 0)` whose sequence is the long exact sequence of the pair `(X, Y)`.
    pub fn pair_sequence(&self, r: &RestrictedHomology, pair: usize) -> Option<usize> {
        let p = &self.nori.pairs;
        let (_, y) = p.xy(pair);
        let f = p.pairs[r.pairs[y]];
        let g = p.pairs[pair];
        self.nori.triples.iter().position(|t| t.f == f && t.g == g)
    }

    /// Add kernels and cokernels of `⊕ H_i(X_k) -> H_i(∐ X_k)` for each row and degree.
    pub fn additive_quotient(
        &self,
        rows: &[CoproductRow],
        bound: usize,
    ) -> Result<SerreQuotient, HomologyError> {
        let r = self.restricted_homology()?;
        let p = &self.nori.pairs;
        let c = &p.base;
        for row in rows {
            check_coproduct(c, row)?;
        }
        let mut gens = self.gens().clone();
        let ad = &self.cat.add;
        let (a, b) = self.window();
        for (n, row) in rows.iter().enumerate() {
            for i in a..=b {
                let dst = vec![self.vertex(r.pairs[row.coproduct], i)];
                let src: Vec<usize> = row
                    .summands
                    .iter()
                    .map(|&x| self.vertex(r.pairs[x], i))
                    .collect();
                let mut map = ad.zero(&src, &dst);
                for (k, &inj) in row.injections.iter().enumerate() {
                    let sq = p
                        .square(
                            r.pairs[row.summands[k]],
                            r.pairs[row.coproduct],
                            inj,
                            c.identity(r.zero),
                        )
                        .expect("(ι, id_0) is a pair morphism");
                    let piece = ad.compose(
                        &self.delta_pair(sq, i),
                        &ad.projection(&single_parts(&src), k),
                    );
                    map = ad.add(&map, &piece);
                }
                let f = self.cat.delta_mor(&map);
                gens.push(format!("ker add[{n}] @{i}"), self.cat.kernel(&f).src);
                gens.push(format!("coker add[{n}] @{i}"), self.cat.cokernel(&f).dst);
            }
        }
        Ok(quotient_by_gens(self.cat.clone(), gens, bound))
    }

    /// The opposite construction: the dual category with dual generators.
    pub fn dual(&self) -> (AbCat, ThickGens) {
        let gens = self.gens();
        let objects = gens.objects.iter().map(|x| self.cat.dual_obj(x)).collect();
        (
            self.cat.dual(),
            ThickGens {
                objects,
                labels: gens.labels.clone(),
            },
        )
    }
}

fn single_parts(xs: &[usize]) -> Vec<Vec<usize>> {
    xs.iter().map(|&v| vec![v]).collect()
}

/// Whether `row` is a coproduct diagram in `c`.
pub fn check_coproduct(c: &FinCat, row: &CoproductRow) -> Result<(), HomologyError> {
    let bad = |msg: String| Err(HomologyError::NotACoproduct(msg));
    if row.injections.len() != row.summands.len() {
        return bad("one injection per summand".into());
    }
    for (k, &f) in row.injections.iter().enumerate() {
        let m = c
            .mors
            .get(f)
            .ok_or_else(|| HomologyError::NotACoproduct(format!("no morphism {f}")))?;
        if m.src != row.summands[k] || m.dst != row.coproduct {
            return bad(format!(
                "{} is not an injection into {}",
                m.name, c.objects[row.coproduct]
            ));
        }
    }
    for w in 0..c.num_objects() {
        let mut seen = std::collections::BTreeSet::new();
        for &h in c.hom(row.coproduct, w) {
            let legs: Vec<usize> = row
                .injections
                .iter()
                .map(|&f| c.then(f, h).expect("composable"))
                .collect();
            if !seen.insert(legs) {
                return bad(format!(
                    "two maps to {} agree on the injections",
                    c.objects[w]
                ));
            }
        }
        let cones: usize = row.summands.iter().map(|&x| c.hom(x, w).len()).product();
        if seen.len() != cones {
            return bad(format!(
                "some family of maps to {} does not factor",
                c.objects[w]
            ));
        }
    }
    Ok(())
}
