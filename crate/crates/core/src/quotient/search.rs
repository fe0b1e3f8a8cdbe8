use super::{Certificate, ThickGens};
use crate::additive::AddObj;
use crate::freyd::{AbCat, AbMor, Presentation};

/// Bounded search for membership certificates.
pub(crate) struct Searcher<'a> {
    pub cat: &'a AbCat,
    pub gens: &'a ThickGens,
    pub known: Vec<(Presentation, Certificate)>,
}

impl<'a> Searcher<'a> {
    pub fn find(&mut self, x: &Presentation, depth: usize) -> Option<Certificate> {
        if let Some(c) = self.lookup(x) {
            return Some(c);
        }
        let found = self.search(x, depth);
        if let Some(c) = &found {
            self.known.push((x.clone(), c.clone()));
        }
        found
    }

    fn lookup(&self, x: &Presentation) -> Option<Certificate> {
        if let Some(i) = self.gens.objects.iter().position(|g| g == x) {
            return Some(Certificate::Gen { index: i });
        }
        self.known
            .iter()
            .find(|(y, _)| y == x)
            .map(|(_, c)| c.clone())
    }

    fn search(&mut self, x: &Presentation, depth: usize) -> Option<Certificate> {
        let cat = self.cat;
        if cat.is_zero_obj(x) {
            return Some(Certificate::Zero { object: x.clone() });
        }
        if depth == 0 || self.gens.is_empty() {
            return None;
        }
        let exact = cat.base().exact_homs();
        if exact {
            if let Some(c) = self.against_generators(x) {
                return Some(c);
            }
        }
        if let Some(c) = self.structural(x, depth) {
            return Some(c);
        }
        if exact {
            return self.extensions(x, depth);
        }
        None
    }

    /// Iso, sub or quotient of a generator through a hom generator.
    fn against_generators(&self, x: &Presentation) -> Option<Certificate> {
        let cat = self.cat;
        for (i, g) in self.gens.objects.iter().enumerate() {
            let gen = || Box::new(Certificate::Gen { index: i });
            let out = cat.hom(x, g).ok()?;
            for f in &out.gens {
                if cat.is_mono(f) {
                    return Some(if cat.is_epi(f) {
                        Certificate::IsoTo {
                            iso: f.clone(),
                            of: gen(),
                        }
                    } else {
                        Certificate::SubOf {
                            mono: f.clone(),
                            of: gen(),
                        }
                    });
                }
            }
            let into = cat.hom(g, x).ok()?;
            for f in &into.gens {
                if cat.is_epi(f) {
                    return Some(Certificate::QuotOf {
                        epi: f.clone(),
                        of: gen(),
                    });
                }
            }
        }
        None
    }

    /// `x` is a quotient of `ker Δ(b)`, a subobject of `Δ(mid)`, a sum of `Δ(v)`.
    fn structural(&mut self, x: &Presentation, depth: usize) -> Option<Certificate> {
        let cat = self.cat;
        if x.top().is_empty() && x.bottom().is_empty() {
            return self.sum(x.mid(), depth - 1);
        }
        let mid = cat.embed(x.mid());
        let sum = self.sum(x.mid(), depth - 1)?;
        let k = cat.ker_of(&x.b);
        let z = cat.add.zero_obj();
        let ks = if x.bottom().is_empty() {
            sum
        } else {
            let incl = AbMor {
                src: k.clone(),
                dst: mid,
                beta: cat.add.identity(x.mid()),
                alpha: cat.add.zero(&z, &z),
                gamma: cat.add.zero(x.bottom(), &z),
            };
            Certificate::SubOf {
                mono: incl,
                of: Box::new(sum),
            }
        };
        if x.top().is_empty() {
            return Some(ks);
        }
        let cmp = AbMor {
            src: k,
            dst: x.clone(),
            beta: cat.add.identity(x.mid()),
            alpha: cat.add.zero(&z, x.top()),
            gamma: cat.add.identity(x.bottom()),
        };
        Some(Certificate::QuotOf {
            epi: cmp,
            of: Box::new(ks),
        })
    }

    /// `Δ(v_1) ⊕ ... ⊕ Δ(v_k)` as an iterated extension.
    fn sum(&mut self, vs: &AddObj, depth: usize) -> Option<Certificate> {
        let cat = self.cat;
        match vs.len() {
            0 => Some(Certificate::Zero {
                object: cat.zero_obj(),
            }),
            1 => {
                let d = cat.delta(vs[0]);
                if let Some(c) = self.lookup(&d) {
                    return Some(c);
                }
                if depth == 0 {
                    return None;
                }
                let c = self.against_generators_or_extensions(&d, depth)?;
                self.known.push((d, c.clone()));
                Some(c)
            }
            _ => {
                let head = self.sum(&vs[..1].to_vec(), depth)?;
                let tail = self.sum(&vs[1..].to_vec(), depth)?;
                let parts = [cat.delta(vs[0]), cat.embed(&vs[1..].to_vec())];
                Some(Certificate::ExtOf {
                    mono: cat.injection(&parts, 0),
                    epi: cat.projection(&parts, 1),
                    sub: Box::new(head),
                    quot: Box::new(tail),
                })
            }
        }
    }

    fn against_generators_or_extensions(
        &mut self,
        d: &Presentation,
        depth: usize,
    ) -> Option<Certificate> {
        if !self.cat.base().exact_homs() {
            return None;
        }
        self.against_generators(d)
            .or_else(|| self.extensions(d, depth))
    }

    /// Split `x` along a map to or from a generator.
    fn extensions(&mut self, x: &Presentation, depth: usize) -> Option<Certificate> {
        let cat = self.cat;
        for (i, g) in self.gens.objects.iter().enumerate() {
            let gen = || Box::new(Certificate::Gen { index: i });
            let out = cat.hom(x, g).ok()?;
            for f in &out.gens {
                if cat.is_null(f) {
                    continue;
                }
                let k = cat.kernel(f);
                let p = cat.coimage(f);
                let m = cat.colift(&p, f).expect("f vanishes on its kernel");
                let Some(sub) = self.find(&k.src, depth - 1) else {
                    continue;
                };
                return Some(Certificate::ExtOf {
                    mono: k,
                    epi: p,
                    sub: Box::new(sub),
                    quot: Box::new(Certificate::SubOf { mono: m, of: gen() }),
                });
            }
            let into = cat.hom(g, x).ok()?;
            for f in &into.gens {
                if cat.is_null(f) {
                    continue;
                }
                let im = cat.image(f);
                let q = cat.cokernel(f);
                let e = cat.lift(&im, f).expect("f factors through its image");
                let Some(quot) = self.find(&q.dst, depth - 1) else {
                    continue;
                };
                return Some(Certificate::ExtOf {
                    mono: im,
                    epi: q,
                    sub: Box::new(Certificate::QuotOf { epi: e, of: gen() }),
                    quot: Box::new(quot),
                });
            }
        }
        None
    }
}
