use super::{AbCat, AbMor, FreydError, Presentation};
use crate::additive::AddSystem;

impl AbCat {
    /// Kernel inclusion `ker f -> src f`.
    pub fn kernel(&self, f: &AbMor) -> AbMor {
        let ad = &self.add;
        let (x, y) = (&f.src, &f.dst);
        let (ta, tb, tc) = (x.top(), x.mid(), x.bottom());
        let (sa, sb) = (y.top(), y.mid());
        let id_sa = ad.identity(sa);
        let a = ad.direct_sum(&x.a, &id_sa);
        let z = ad.zero(sa, tc);
        let neg = ad.neg(&y.a);
        let b = ad.block(&[vec![&x.b, &z], vec![&f.beta, &neg]]);
        let k = Presentation { a, b };
        AbMor {
            beta: ad.projection(&[tb.clone(), sa.clone()], 0),
            alpha: ad.projection(&[ta.clone(), sa.clone()], 0),
            gamma: ad.projection(&[tc.clone(), sb.clone()], 0),
            src: k,
            dst: x.clone(),
        }
    }

    /// Cokernel projection `dst f -> coker f`.
    pub fn cokernel(&self, f: &AbMor) -> AbMor {
        let ad = &self.add;
        let (x, y) = (&f.src, &f.dst);
        let (tb, tc) = (x.mid(), x.bottom());
        let (sa, sb, sc) = (y.top(), y.mid(), y.bottom());
        let z = ad.zero(sa, tc);
        let neg = ad.neg(&x.b);
        let a = ad.block(&[vec![&y.a, &f.beta], vec![&z, &neg]]);
        let b = ad.direct_sum(&y.b, &ad.identity(tc));
        let q = Presentation { a, b };
        AbMor {
            beta: ad.injection(&[sb.clone(), tc.clone()], 0),
            alpha: ad.injection(&[sa.clone(), tb.clone()], 0),
            gamma: ad.injection(&[sc.clone(), tc.clone()], 0),
            src: y.clone(),
            dst: q,
        }
    }

    /// `u` with `k ∘ u = t`, if it exists.
    pub fn lift(&self, k: &AbMor, t: &AbMor) -> Option<AbMor> {
        assert_eq!(k.dst, t.dst, "lift: targets differ");
        let ad = &self.add;
        let one = self.ring().one();
        let m1 = self.ring().from_i64(-1);
        let (kk, tt, xx) = (&k.src, &t.src, &k.dst);
        let mut sys = AddSystem::new(ad);
        let u = sys.unknown(tt.mid(), kk.mid());
        let au = sys.unknown(tt.top(), kk.top());
        let gu = sys.unknown(tt.bottom(), kk.bottom());
        let s = sys.unknown(tt.bottom(), xx.mid());
        let r = sys.unknown(tt.mid(), xx.top());
        let e1 = sys.equation(tt.top(), kk.mid());
        sys.term(e1, Some(&kk.a), au, None);
        sys.term_scaled(e1, &m1, None, u, Some(&tt.a));
        let e2 = sys.equation(tt.mid(), kk.bottom());
        sys.term(e2, None, gu, Some(&tt.b));
        sys.term_scaled(e2, &m1, Some(&kk.b), u, None);
        let e3 = sys.equation(tt.mid(), xx.mid());
        sys.term_scaled(e3, &one, Some(&k.beta), u, None);
        sys.term_scaled(e3, &m1, None, s, Some(&tt.b));
        sys.term_scaled(e3, &m1, Some(&xx.a), r, None);
        sys.rhs(e3, &t.beta);
        let v = sys.solve()?;
        Some(AbMor {
            src: tt.clone(),
            dst: kk.clone(),
            beta: v[u].clone(),
            alpha: v[au].clone(),
            gamma: v[gu].clone(),
        })
    }

    /// `v` with `v ∘ p = t`, if it exists.
    pub fn colift(&self, p: &AbMor, t: &AbMor) -> Option<AbMor> {
        assert_eq!(p.src, t.src, "colift: sources differ");
        let ad = &self.add;
        let m1 = self.ring().from_i64(-1);
        let (qq, tt, xx) = (&p.dst, &t.dst, &p.src);
        let mut sys = AddSystem::new(ad);
        let v = sys.unknown(qq.mid(), tt.mid());
        let av = sys.unknown(qq.top(), tt.top());
        let gv = sys.unknown(qq.bottom(), tt.bottom());
        let s = sys.unknown(xx.bottom(), tt.mid());
        let r = sys.unknown(xx.mid(), tt.top());
        let e1 = sys.equation(qq.top(), tt.mid());
        sys.term(e1, Some(&tt.a), av, None);
        sys.term_scaled(e1, &m1, None, v, Some(&qq.a));
        let e2 = sys.equation(qq.mid(), tt.bottom());
        sys.term(e2, None, gv, Some(&qq.b));
        sys.term_scaled(e2, &m1, Some(&tt.b), v, None);
        let e3 = sys.equation(xx.mid(), tt.mid());
        sys.term(e3, None, v, Some(&p.beta));
        sys.term_scaled(e3, &m1, None, s, Some(&xx.b));
        sys.term_scaled(e3, &m1, Some(&tt.a), r, None);
        sys.rhs(e3, &t.beta);
        let w = sys.solve()?;
        Some(AbMor {
            src: qq.clone(),
            dst: tt.clone(),
            beta: w[v].clone(),
            alpha: w[av].clone(),
            gamma: w[gv].clone(),
        })
    }

    /// Image inclusion `im f -> dst f`, computed as `ker(coker f)`.
    pub fn image(&self, f: &AbMor) -> AbMor {
        self.kernel(&self.cokernel(f))
    }

    /// Coimage projection `src f -> coim f`, computed as `coker(ker f)`.
    pub fn coimage(&self, f: &AbMor) -> AbMor {
        self.cokernel(&self.kernel(f))
    }

    /// The canonical map `coim f -> im f`.
    pub fn coimage_to_image(&self, f: &AbMor) -> AbMor {
        let i = self.image(f);
        let e = self.lift(&i, f).expect("f factors through its image");
        let p = self.coimage(f);
        self.colift(&p, &e).expect("f vanishes on its kernel")
    }

    pub fn is_mono(&self, f: &AbMor) -> bool {
        self.is_null(&self.kernel(f))
    }

    pub fn is_epi(&self, f: &AbMor) -> bool {
        self.is_null(&self.cokernel(f))
    }

    pub fn is_iso(&self, f: &AbMor) -> bool {
        self.is_mono(f) && self.is_epi(f)
    }

    pub fn inverse(&self, f: &AbMor) -> Option<AbMor> {
        if !self.is_iso(f) {
            return None;
        }
        self.lift(f, &self.identity(&f.dst))
    }

    /// Homology `ker g / im f` of `X --f--> Y --g--> Z` with `g ∘ f = 0`, as a quotient of `ker g`.
    pub fn homology(&self, f: &AbMor, g: &AbMor) -> Result<AbMor, FreydError> {
        if !self.is_null(&self.compose(g, f)) {
            return Err(FreydError::Malformed("composite is not zero".into()));
        }
        let k = self.kernel(g);
        let into = self.lift(&k, f).expect("f lands in ker g");
        Ok(self.cokernel(&into))
    }
}
