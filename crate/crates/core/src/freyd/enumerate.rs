use super::{AbCat, Presentation};
use crate::additive::{AddMor, AddObj, Comb};
use crate::coeff::Scalar;

/// Non-decreasing lists of base objects of the given length.
fn layers(objects: usize, len: usize) -> Vec<AddObj> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|l: AddObj| {
                let lo = l.last().copied().unwrap_or(0);
                (lo..objects).map(move |v| {
                    let mut l = l.clone();
                    l.push(v);
                    l
                })
            })
            .collect();
    }
    out
}

impl AbCat {
    /// `0, 1, 2` reduced into the coefficient ring, without repeats.
    fn small_scalars(&self) -> Vec<Scalar> {
        let ring = self.ring();
        let mut out: Vec<Scalar> = Vec::new();
        for k in 1..=2 {
            let s = ring.from_i64(k);
            if !out.contains(&s) && s != ring.zero() {
                out.push(s);
            }
        }
        out
    }

    /// Envelope morphisms `s -> t` whose entries are zero or a small scalar times one basis arrow.
    pub fn small_morphisms(&self, s: &AddObj, t: &AddObj) -> Vec<AddMor> {
        let scalars = self.small_scalars();
        let base = self.base();
        let mut out = vec![self.add.zero(s, t)];
        for j in 0..t.len() {
            for i in 0..s.len() {
                let mut options: Vec<Comb> = vec![Comb::new()];
                for arrow in base.hom_basis(s[i], t[j]) {
                    for c in &scalars {
                        options.push(Comb::from([(arrow.clone(), c.clone())]));
                    }
                }
                out = out
                    .into_iter()
                    .flat_map(|m| {
                        options.iter().map(move |e| {
                            let mut m = m.clone();
                            m.entries[j * s.len() + i] = e.clone();
                            m
                        })
                    })
                    .collect();
            }
        }
        out
    }

    /// Every presentation `A -> B -> C` with `|A| + |B| + |C| <= size` and `B` nonempty,
    /// each layer listed in non-decreasing order and every entry from
    /// [`small_morphisms`](Self::small_morphisms).
    pub fn small_presentations(&self, size: usize) -> Vec<Presentation> {
        let n = self.base().num_objects();
        let mut out = Vec::new();
        for mid in 1..=size {
            for top in 0..=size - mid {
                for bottom in 0..=size - mid - top {
                    for b_obj in layers(n, mid) {
                        for a_obj in layers(n, top) {
                            for c_obj in layers(n, bottom) {
                                for a in self.small_morphisms(&a_obj, &b_obj) {
                                    for b in self.small_morphisms(&b_obj, &c_obj) {
                                        out.push(Presentation { a: a.clone(), b });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
