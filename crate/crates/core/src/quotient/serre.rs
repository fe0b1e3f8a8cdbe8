use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::search::Searcher;
use super::{verify_certificate, Certificate, QuotientError, ThickGens};
use crate::coeff::{hom, solve_right, subquotient, FpModule, Mat, ModMap};
use crate::freyd::{AbCat, AbMor, ModCat, Presentation, Realization};

/// Why an answer was given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Certificate {
        certificate: Certificate,
    },
    /// Value of the defining realization.
    Realized {
        value: String,
    },
    /// A registered realization that kills every generator but not the object.
    Separated {
        separator: usize,
        value: String,
    },
    /// No generators, and the object is not zero.
    NonzeroInBase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Answer {
    Yes { evidence: Evidence },
    No { evidence: Evidence },
    Unknown,
}

impl Answer {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Answer::No { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Answer::Yes { .. } => "yes",
            Answer::No { .. } => "no",
            Answer::Unknown => "unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Answer::Yes {
                evidence: Evidence::Certificate { certificate },
            } => Some(certificate),
            _ => None,
        }
    }
}

/// Formal quotient data: generators, search depth, separating realizations and a
/// shared append-only table of verified certificates.
#[derive(Clone, Debug)]
pub struct Formal {
    pub gens: ThickGens,
    pub bound: usize,
    separators: Vec<Realization<ModCat>>,
    db: Arc<RwLock<Vec<(Presentation, Certificate)>>>,
}

#[derive(Clone, Debug)]
pub enum Mode {
    /// Quotient by the kernel of an exact functor to modules.
    Realization(Box<Realization<ModCat>>),
    Formal(Formal),
}

#[derive(Clone, Debug)]
pub struct SerreQuotient {
    pub base: AbCat,
    pub mode: Mode,
}

/// Hom-module in a realization quotient and the saturation stage it was found at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientHom {
    pub module: FpModule,
    pub stage: usize,
}

pub fn quotient_by_gens(base: AbCat, gens: ThickGens, bound: usize) -> SerreQuotient {
    SerreQuotient {
        base,
        mode: Mode::Formal(Formal {
            gens,
            bound,
            separators: Vec::new(),
            db: Arc::new(RwLock::new(Vec::new())),
        }),
    }
}

impl SerreQuotient {
    pub fn realization(base: AbCat, f: Realization<ModCat>) -> SerreQuotient {
        SerreQuotient {
            base,
            mode: Mode::Realization(Box::new(f)),
        }
    }

    pub fn gens(&self) -> Option<&ThickGens> {
        match &self.mode {
            Mode::Formal(f) => Some(&f.gens),
            Mode::Realization(_) => None,
        }
    }

    /// Register a realization used to answer `No`; it must kill every generator.
    pub fn register_separator(&mut self, r: Realization<ModCat>) -> Result<usize, QuotientError> {
        let Mode::Formal(f) = &mut self.mode else {
            return Err(QuotientError::FormalModeUnsupported);
        };
        for (x, l) in f.gens.objects.iter().zip(&f.gens.labels) {
            if !r.obj(x).is_zero() {
                return Err(QuotientError::NotSeparating(l.clone()));
            }
        }
        f.separators.push(r);
        Ok(f.separators.len() - 1)
    }

    /// A certificate for `x`, if the bounded search finds one.
    pub fn certify(&self, x: &Presentation) -> Option<Certificate> {
        let Mode::Formal(f) = &self.mode else {
            return None;
        };
        let known = f.db.read().expect("certificate table").clone();
        let mut s = Searcher {
            cat: &self.base,
            gens: &f.gens,
            known,
        };
        let c = s.find(x, f.bound)?;
        if !verify_certificate(&self.base, &f.gens, &c) {
            return None;
        }
        let mut db = f.db.write().expect("certificate table");
        for (y, cy) in s.known {
            if !db.iter().any(|(z, _)| *z == y) {
                db.push((y, cy));
            }
        }
        Some(c)
    }

    pub fn verify(&self, cert: &Certificate) -> bool {
        match &self.mode {
            Mode::Formal(f) => verify_certificate(&self.base, &f.gens, cert),
            Mode::Realization(_) => false,
        }
    }

    pub fn is_zero(&self, x: &Presentation) -> Answer {
        match &self.mode {
            Mode::Realization(r) => {
                let v = r.obj(x);
                let evidence = Evidence::Realized {
                    value: v.describe(),
                };
                if v.is_zero() {
                    Answer::Yes { evidence }
                } else {
                    Answer::No { evidence }
                }
            }
            Mode::Formal(f) => {
                for (i, r) in f.separators.iter().enumerate() {
                    let v = r.obj(x);
                    if !v.is_zero() {
                        return Answer::No {
                            evidence: Evidence::Separated {
                                separator: i,
                                value: v.describe(),
                            },
                        };
                    }
                }
                if let Some(c) = self.certify(x) {
                    return Answer::Yes {
                        evidence: Evidence::Certificate { certificate: c },
                    };
                }
                if f.gens.is_empty() {
                    return Answer::No {
                        evidence: Evidence::NonzeroInBase,
                    };
                }
                Answer::Unknown
            }
        }
    }

    /// `Hom(x, y)` in a realization quotient, by saturating source subobjects and
    /// target quotients that the realization does not see. A stage is accepted once
    /// the classes found exhaust `Hom(F x, F y)`, which contains the quotient hom.
    pub fn quotient_hom(
        &self,
        x: &Presentation,
        y: &Presentation,
        stages: usize,
    ) -> Result<QuotientHom, QuotientError> {
        let Mode::Realization(r) = &self.mode else {
            return Err(QuotientError::FormalModeUnsupported);
        };
        let cat = &self.base;
        let rx = r.realize_obj(x);
        let ry = r.realize_obj(y);
        let target = hom(&rx.value, &ry.value);
        let ring = cat.ring();
        let mut cols = Mat::zero(ring, target.module.gens(), 0);
        let push = |m: &ModMap, cols: &mut Mat| {
            let c = target.encode(m).expect("realized map is a homomorphism");
            let col = Mat::from_scalars(ring, c.len(), 1, c).expect("column");
            *cols = cols.hstack(&col);
        };
        for g in &cat.hom(x, y)?.gens {
            push(&r.mor_between(&rx, &ry, g), &mut cols);
        }
        let full = |cols: &Mat| {
            let a = cols.hstack(&target.module.rels);
            let n = target.module.gens();
            solve_right(&a, &Mat::identity(ring, n))
                .expect("shapes")
                .is_some()
        };
        let mut stage = 0;
        while !full(&cols) {
            stage += 1;
            if stage > stages {
                return Err(QuotientError::NonStabilized(stages));
            }
            for (i, fi) in self.saturating_subobjects(r, x, stage)? {
                for (q, fq) in self.saturating_quotients(r, y, stage)? {
                    for g in &cat.hom(&i.src, &q.dst)?.gens {
                        let v = r.mor(g);
                        let m = fi.compose(&v).compose(&fq);
                        push(&m, &mut cols);
                    }
                }
            }
        }
        Ok(QuotientHom {
            module: subquotient(&cols, &target.module.rels).simplify().0,
            stage,
        })
    }

    /// Monos `i: x' -> x` with `F(i)` invertible, built from images of `stage` maps out of `Δ`-objects;
    /// paired with `F(i)^{-1}`.
    fn saturating_subobjects(
        &self,
        r: &Realization<ModCat>,
        x: &Presentation,
        stage: usize,
    ) -> Result<Vec<(AbMor, ModMap)>, QuotientError> {
        let cat = &self.base;
        let mut maps = Vec::new();
        for v in 0..cat.base().num_objects() {
            maps.extend(cat.hom(&cat.delta(v), x)?.gens);
        }
        let mut out = Vec::new();
        for combo in combinations(maps.len(), stage) {
            let srcs: Vec<Presentation> = combo.iter().map(|&k| maps[k].src.clone()).collect();
            let parts: Vec<Vec<AbMor>> = vec![combo.iter().map(|&k| maps[k].clone()).collect()];
            let f = cat.matrix(&srcs, std::slice::from_ref(x), &parts);
            let i = cat.image(&f);
            if let Some(inv) = r.mor(&i).inverse() {
                out.push((i, inv));
            }
        }
        Ok(out)
    }

    /// Epis `q: y -> y''` with `F(q)` invertible, from coimages of maps into `Δ`-objects.
    fn saturating_quotients(
        &self,
        r: &Realization<ModCat>,
        y: &Presentation,
        stage: usize,
    ) -> Result<Vec<(AbMor, ModMap)>, QuotientError> {
        let cat = &self.base;
        let mut maps = Vec::new();
        for v in 0..cat.base().num_objects() {
            maps.extend(cat.hom(y, &cat.delta(v))?.gens);
        }
        let mut out = Vec::new();
        for combo in combinations(maps.len(), stage) {
            let dsts: Vec<Presentation> = combo.iter().map(|&k| maps[k].dst.clone()).collect();
            let parts: Vec<Vec<AbMor>> = combo.iter().map(|&k| vec![maps[k].clone()]).collect();
            let f = cat.matrix(std::slice::from_ref(y), &dsts, &parts);
            let q = cat.coimage(&f);
            if let Some(inv) = r.mor(&q).inverse() {
                out.push((q, inv));
            }
        }
        Ok(out)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
