use super::graded::{GradedAbCat, GradedObj};
use super::relative::RelUniversalCat;
use super::HomologyError;
use crate::additive::Base;
use crate::diagram::NoriEdge;
use crate::freyd::{AbCat, AbMor, Exact, Presentation, Realization};

/// The quotient `π_k` onto `Ab_R` and its section `ι_k`, both as realizations.
#[derive(Clone, Debug)]
pub struct KProjection {
    pub k: i64,
    /// `π_k`; for a graded source it acts on the degree-`k` component and kills the others.
    pub pi: Realization<AbCat>,
    /// `ι_k`, sending `|R|` to `H_k(1)`.
    pub iota: Realization<AbCat>,
    /// Base object of the source that `ι_k(|R|)` is built on.
    pub anchor: usize,
    graded: bool,
}

pub fn k_projection(g: &GradedAbCat, k: i64) -> Result<KProjection, HomologyError> {
    g.check_degree(k)?;
    let c = &g.category;
    let one = c.final_object().ok_or(HomologyError::NoFinalObject)?;
    let ab = AbCat::point(g.ring());
    let r = ab.universal();
    let objects = vec![r.clone(); c.num_objects()];
    let generators = c.generators.iter().map(|_| ab.identity(&r)).collect();
    let pi = Realization::new(g.component.clone(), ab.clone(), objects, generators)?;
    let iota = Realization::new(
        ab,
        g.component.clone(),
        vec![g.component.delta(one)],
        vec![],
    )?;
    Ok(KProjection {
        k,
        pi,
        iota,
        anchor: one,
        graded: true,
    })
}

/// `π_k` on the universal relative category: `H_k(X, 0) ↦ |R|` for `X != 0`, all else zero.
pub fn relative_k_projection(ru: &RelUniversalCat, k: i64) -> Result<KProjection, HomologyError> {
    let (a, b) = ru.window();
    if k < a || k > b {
        return Err(HomologyError::OutOfWindow(k, a, b));
    }
    let n = &ru.nori;
    let p = &n.pairs;
    let c = &p.base;
    let zero = c
        .initial_object()
        .filter(|&o| c.is_strictly_initial(o))
        .ok_or(HomologyError::NoInitial)?;
    let one = c.final_object().ok_or(HomologyError::NoFinalObject)?;
    if one == zero {
        return Err(HomologyError::FinalIsInitial);
    }
    let restricted = ru.restricted_homology()?;
    let ab = AbCat::point(ru.cat.ring());
    let r = ab.universal();
    let live = |pair: usize, i: i64| {
        let (x, y) = p.xy(pair);
        i == k && y == zero && c.hom(x, zero).is_empty()
    };
    let objects: Vec<Presentation> = (0..n.quiver.vertices.len())
        .map(|v| {
            let (pair, i) = n.vertex_info(v);
            if live(pair, i) {
                r.clone()
            } else {
                ab.zero_obj()
            }
        })
        .collect();
    let generators = n
        .quiver
        .edges
        .iter()
        .zip(&n.edge_kinds)
        .map(|(e, kind)| match kind {
            NoriEdge::Gamma { mor, degree }
                if live(p.cat.mors[*mor].src, *degree) && live(p.cat.mors[*mor].dst, *degree) =>
            {
                ab.identity(&r)
            }
            _ => ab.zero(&objects[e.src], &objects[e.dst]),
        })
        .collect();
    let pi = Realization::new(ru.cat.clone(), ab.clone(), objects, generators)?;
    let anchor = n
        .vertex(restricted.pairs[one], k)
        .expect("degree in window");
    let iota = Realization::new(ab, ru.cat.clone(), vec![ru.cat.delta(anchor)], vec![])?;
    Ok(KProjection {
        k,
        pi,
        iota,
        anchor,
        graded: false,
    })
}

impl KProjection {
    pub fn target(&self) -> &AbCat {
        &self.pi.target
    }

    /// `π_k` on a graded object.
    pub fn pi_graded(&self, x: &GradedObj) -> Presentation {
        if !self.graded || x.degree != self.k {
            return self.target().zero_obj();
        }
        self.pi.obj(&x.object)
    }

    /// The comparison `|R| -> π_k(ι_k(|R|))`; it is an isomorphism.
    pub fn section_comparison(&self) -> AbMor {
        let t = self.target();
        let back = self.pi.mor(&self.iota.unit(0));
        t.compose(&back, &self.pi.unit(self.anchor))
    }

    /// `π_k ∘ ι_k ≅ id` at `|R|`.
    pub fn section_holds(&self) -> bool {
        self.target().is_iso(&self.section_comparison())
    }

    /// `π_k ∘ ι_k` as a realization of `Ab_R` in itself: its value at `|R|`.
    pub fn composite(&self) -> Realization<AbCat> {
        let t = self.target().clone();
        let p = t.dst(&self.section_comparison());
        Realization {
            source: t.clone(),
            target: t,
            objects: vec![p],
            generators: vec![],
        }
    }

    /// `π_k ∘ ι_k ≅ id` at `x`, through the transformation induced by the comparison at `|R|`.
    pub fn section_holds_at(&self, x: &Presentation) -> bool {
        let t = self.target();
        let id = t.tautological();
        let u = self.section_comparison();
        match id.transform(&self.composite(), &[u], x) {
            Some(f) => t.is_iso(&f),
            None => false,
        }
    }

    pub fn kills(&self, x: &Presentation) -> bool {
        self.target().is_zero_obj(&self.pi.obj(x))
    }

    pub fn is_iso_under_pi(&self, f: &AbMor) -> bool {
        self.target().is_iso(&self.pi.mor(f))
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn source_base(&self) -> &Base {
        self.pi.source.base()
    }
}
