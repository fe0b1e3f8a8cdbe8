use serde::{Deserialize, Serialize};

use super::fincat::{FinCat, Mor};
use super::quiver::Quiver;
use super::DiagramError;

/// Morphisms of pairs are commuting squares `(h, k)` with `h ∘ f = f' ∘ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub h: usize,
    pub k: usize,
}

/// The category of distinguished morphisms of a finite category.
///
/// Object `p` is the distinguished morphism `pairs[p]: Y -> X`, written `(X, Y)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairCat {
    pub base: FinCat,
    pub distinguished: Vec<bool>,
    pub pairs: Vec<usize>,
    pub squares: Vec<Square>,
    pub cat: FinCat,
}

impl PairCat {
    /// `(X, Y)` coordinates of pair object `p`.
    pub fn xy(&self, p: usize) -> (usize, usize) {
        let m = &self.base.mors[self.pairs[p]];
        (m.dst, m.src)
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn name(&self, p: usize) -> &str {
        &self.cat.objects[p]
    }

    /// Pair object whose distinguished morphism is `f`.
    pub fn pair_of(&self, f: usize) -> Option<usize> {
        self.pairs.iter().position(|&g| g == f)
    }

    pub fn find(&self, name: &str) -> Result<usize, DiagramError> {
        self.cat.object(name)
    }

    /// Pair morphism with the given components.
    pub fn square(&self, src: usize, dst: usize, h: usize, k: usize) -> Option<usize> {
        self.cat
            .hom(src, dst)
            .iter()
            .copied()
            .find(|&m| self.squares[m].h == h && self.squares[m].k == k)
    }
}

/// Build the category of pairs; the distinguished set must be a subcategory.
pub fn pairs_category(c: &FinCat, distinguished: &[bool]) -> Result<PairCat, DiagramError> {
    let n = c.num_mors();
    if distinguished.len() != n {
        return Err(DiagramError::NotSubcategory(format!(
            "distinguished flags for {} of {n} morphisms",
            distinguished.len()
        )));
    }
    for o in 0..c.num_objects() {
        if !distinguished[c.identity(o)] {
            return Err(DiagramError::NotSubcategory(
                c.mors[c.identity(o)].name.clone(),
            ));
        }
    }
    for f in 0..n {
        for g in 0..n {
            if !(distinguished[f] && distinguished[g]) {
                continue;
            }
            if let Some(gf) = c.then(f, g) {
                if !distinguished[gf] {
                    return Err(DiagramError::NotSubcategory(format!(
                        "{} (composite of {} then {})",
                        c.mors[gf].name, c.mors[f].name, c.mors[g].name
                    )));
                }
            }
        }
    }
    let pairs: Vec<usize> = (0..n).filter(|&f| distinguished[f]).collect();
    let names: Vec<String> = pairs
        .iter()
        .map(|&f| {
            let m = &c.mors[f];
            let unique = c
                .hom(m.src, m.dst)
                .iter()
                .filter(|&&g| distinguished[g])
                .count()
                == 1;
            if unique {
                format!("({},{})", c.objects[m.dst], c.objects[m.src])
            } else {
                format!("({},{})[{}]", c.objects[m.dst], c.objects[m.src], m.name)
            }
        })
        .collect();
    let mut mors = Vec::new();
    let mut squares = Vec::new();
    for (pi, &f) in pairs.iter().enumerate() {
        for (qi, &g) in pairs.iter().enumerate() {
            let (fm, gm) = (&c.mors[f], &c.mors[g]);
            for &h in c.hom(fm.dst, gm.dst) {
                for &k in c.hom(fm.src, gm.src) {
                    if c.then(f, h) == c.then(k, g) {
                        let name = if c.is_identity(h) && c.is_identity(k) {
                            format!("id:{}", names[pi])
                        } else {
                            format!("({},{})", c.mors[h].name, c.mors[k].name)
                        };
                        mors.push(Mor {
                            name,
                            src: pi,
                            dst: qi,
                        });
                        squares.push(Square { h, k });
                    }
                }
            }
        }
    }
    let ids: Vec<usize> = (0..pairs.len())
        .map(|p| {
            let f = &c.mors[pairs[p]];
            (0..mors.len())
                .find(|&m| {
                    mors[m].src == p
                        && mors[m].dst == p
                        && squares[m].h == c.identity(f.dst)
                        && squares[m].k == c.identity(f.src)
                })
                .expect("identity square")
        })
        .collect();
    let lookup = |src: usize, dst: usize, h: usize, k: usize| -> usize {
        (0..mors.len())
            .find(|&m| {
                mors[m].src == src && mors[m].dst == dst && squares[m].h == h && squares[m].k == k
            })
            .expect("pasted square commutes")
    };
    let generators: Vec<usize> = (0..mors.len()).filter(|m| !ids.contains(m)).collect();
    let words = (0..mors.len())
        .map(|m| if ids.contains(&m) { vec![] } else { vec![m] })
        .collect();
    let cat = FinCat::from_parts(
        names,
        mors.clone(),
        ids,
        |a, b| {
            let h = c.then(squares[a].h, squares[b].h).unwrap();
            let k = c.then(squares[a].k, squares[b].k).unwrap();
            lookup(mors[a].src, mors[b].dst, h, k)
        },
        generators,
        words,
    )?;
    Ok(PairCat {
        base: c.clone(),
        distinguished: distinguished.to_vec(),
        pairs,
        squares,
        cat,
    })
}

/// Distinguished set given by morphism names (identities are added implicitly).
pub fn distinguished_by_names(c: &FinCat, names: &[&str]) -> Result<Vec<bool>, DiagramError> {
    let mut d = vec![false; c.num_mors()];
    for o in 0..c.num_objects() {
        d[c.identity(o)] = true;
    }
    for n in names {
        d[c.mor(n)?] = true;
    }
    Ok(d)
}

/// Monomorphisms of a finite category.
pub fn monos(c: &FinCat) -> Vec<bool> {
    (0..c.num_mors())
        .map(|f| {
            let m = &c.mors[f];
            (0..c.num_objects()).all(|w| {
                let hs = c.hom(w, m.src);
                hs.iter()
                    .all(|&a| hs.iter().all(|&b| a == b || c.then(a, f) != c.then(b, f)))
            })
        })
        .collect()
}

/// A composable pair `f: Z -> Y`, `g: Y -> X` of distinguished morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub f: usize,
    pub g: usize,
    /// Pair objects `(Y,Z)`, `(X,Z)`, `(X,Y)`.
    pub yz: usize,
    pub xz: usize,
    pub xy: usize,
    /// `α = (g, id_Z): (Y,Z) -> (X,Z)` and `β = (id_X, f): (X,Z) -> (X,Y)`.
    pub alpha: usize,
    pub beta: usize,
}

impl Triple {
    pub fn is_identity_only(&self, p: &PairCat) -> bool {
        p.base.is_identity(self.f) && p.base.is_identity(self.g)
    }

    pub fn name(&self, p: &PairCat) -> String {
        let b = &p.base;
        let (x, y, z) = (b.mors[self.g].dst, b.mors[self.g].src, b.mors[self.f].src);
        format!("({},{},{})", b.objects[x], b.objects[y], b.objects[z])
    }
}

pub fn enumerate_triples(p: &PairCat) -> Vec<Triple> {
    let c = &p.base;
    let mut out = Vec::new();
    for &f in &p.pairs {
        for &g in &p.pairs {
            let Some(gf) = c.then(f, g) else { continue };
            let (yz, xz, xy) = (
                p.pair_of(f).unwrap(),
                p.pair_of(gf).unwrap(),
                p.pair_of(g).unwrap(),
            );
            let fm = &c.mors[f];
            let gm = &c.mors[g];
            let alpha = p
                .square(yz, xz, g, c.identity(fm.src))
                .expect("alpha commutes");
            let beta = p
                .square(xz, xy, c.identity(gm.dst), f)
                .expect("beta commutes");
            out.push(Triple {
                f,
                g,
                yz,
                xz,
                xy,
                alpha,
                beta,
            });
        }
    }
    out
}

/// A morphism of triples: `δ = (h_X, h_Y)` on `(X,Y)` and `γ = (h_Y, h_Z)` on `(Y,Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cube {
    pub src: usize,
    pub dst: usize,
    pub delta: usize,
    pub gamma: usize,
}

pub fn enumerate_cubes(p: &PairCat, triples: &[Triple]) -> Vec<Cube> {
    let c = &p.base;
    let mut out = Vec::new();
    for (si, s) in triples.iter().enumerate() {
        for (ti, t) in triples.iter().enumerate() {
            let (sx, sy, sz) = (c.mors[s.g].dst, c.mors[s.g].src, c.mors[s.f].src);
            let (tx, ty, tz) = (c.mors[t.g].dst, c.mors[t.g].src, c.mors[t.f].src);
            for &hx in c.hom(sx, tx) {
                for &hy in c.hom(sy, ty) {
                    if c.then(s.g, hx) != c.then(hy, t.g) {
                        continue;
                    }
                    for &hz in c.hom(sz, tz) {
                        if c.then(s.f, hy) != c.then(hz, t.f) {
                            continue;
                        }
                        let delta = p.square(s.xy, t.xy, hx, hy).expect("delta commutes");
                        let gamma = p.square(s.yz, t.yz, hy, hz).expect("gamma commutes");
                        out.push(Cube {
                            src: si,
                            dst: ti,
                            delta,
                            gamma,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoriEdge {
    /// Pair morphism `m` in degree `i`.
    Gamma { mor: usize, degree: i64 },
    /// Connecting edge of triple `t` from degree `i` to `i - 1`.
    Boundary { triple: usize, degree: i64 },
}

/// The Nori diagram of a category of pairs over a finite degree window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NoriDiagram {
    pub window: (i64, i64),
    pub pairs: PairCat,
    pub triples: Vec<Triple>,
    pub quiver: Quiver,
    pub edge_kinds: Vec<NoriEdge>,
}

impl NoriDiagram {
    pub fn degrees(&self) -> usize {
        (self.window.1 - self.window.0 + 1) as usize
    }

    /// Vertex index of `(pair, degree)`.
    pub fn vertex(&self, pair: usize, degree: i64) -> Option<usize> {
        if degree < self.window.0 || degree > self.window.1 {
            return None;
        }
        Some((degree - self.window.0) as usize * self.pairs.num_pairs() + pair)
    }

    pub fn vertex_info(&self, v: usize) -> (usize, i64) {
        let n = self.pairs.num_pairs();
        (v % n, self.window.0 + (v / n) as i64)
    }

    /// The edge for pair morphism `mor` in `degree`, `None` for identities.
    pub fn gamma_edge(&self, mor: usize, degree: i64) -> Option<usize> {
        self.edge_kinds
            .iter()
            .position(|k| *k == NoriEdge::Gamma { mor, degree })
    }

    pub fn boundary_edge(&self, triple: usize, degree: i64) -> Option<usize> {
        self.edge_kinds
            .iter()
            .position(|k| *k == NoriEdge::Boundary { triple, degree })
    }
}

pub fn nori_diagram(p: &PairCat, window: (i64, i64)) -> Result<NoriDiagram, DiagramError> {
    let (a, b) = window;
    if a > b {
        return Err(DiagramError::EmptyWindow(a, b));
    }
    let triples = enumerate_triples(p);
    let mut q = Quiver::new();
    for i in a..=b {
        for pi in 0..p.num_pairs() {
            q.add_vertex(&format!("H{}{}", i, p.name(pi)))?;
        }
    }
    let n = p.num_pairs();
    let vtx = |pair: usize, i: i64| (i - a) as usize * n + pair;
    let mut kinds = Vec::new();
    for i in a..=b {
        for m in 0..p.cat.num_mors() {
            if p.cat.is_identity(m) {
                continue;
            }
            let mm = &p.cat.mors[m];
            q.add_edge(
                &format!("{}@{}", mm.name, i),
                vtx(mm.src, i),
                vtx(mm.dst, i),
            )?;
            kinds.push(NoriEdge::Gamma { mor: m, degree: i });
        }
        if i - 1 >= a {
            for (ti, t) in triples.iter().enumerate() {
                q.add_edge(
                    &format!("d{}@{}", t.name(p), i),
                    vtx(t.xy, i),
                    vtx(t.yz, i - 1),
                )?;
                kinds.push(NoriEdge::Boundary {
                    triple: ti,
                    degree: i,
                });
            }
        }
    }
    Ok(NoriDiagram {
        window,
        pairs: p.clone(),
        triples,
        quiver: q,
        edge_kinds: kinds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(c: &FinCat) -> Vec<bool> {
        vec![true; c.num_mors()]
    }

    #[test]
    fn pairs_of_two() {
        let c = FinCat::chain(2);
        let p = pairs_category(&c, &all(&c)).unwrap();
        assert_eq!(p.num_pairs(), 3);
        let mut names: Vec<&str> = (0..3).map(|i| p.name(i)).collect();
        names.sort();
        assert_eq!(names, vec!["(0,0)", "(1,0)", "(1,1)"]);
        let non_id = (0..p.cat.num_mors())
            .filter(|&m| !p.cat.is_identity(m))
            .count();
        assert_eq!(non_id, 3);
    }

    #[test]
    fn pairs_of_point_and_chain() {
        let c = FinCat::point();
        assert_eq!(pairs_category(&c, &all(&c)).unwrap().num_pairs(), 1);
        let c = FinCat::chain(3);
        let p = pairs_category(&c, &monos(&c)).unwrap();
        assert_eq!(p.num_pairs(), 6);
    }

    #[test]
    fn square_count_matches_brute_force() {
        let c = FinCat::chain(3);
        let p = pairs_category(&c, &all(&c)).unwrap();
        let mut count = 0;
        for &f in &p.pairs {
            for &g in &p.pairs {
                for h in 0..c.num_mors() {
                    for k in 0..c.num_mors() {
                        if c.then(f, h).is_some() && c.then(f, h) == c.then(k, g) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(p.cat.num_mors(), count);
    }

    #[test]
    fn non_closed_set_is_rejected() {
        let c = FinCat::chain(3);
        let d = distinguished_by_names(&c, &["0<1", "1<2"]).unwrap();
        match pairs_category(&c, &d) {
            Err(DiagramError::NotSubcategory(m)) => assert!(m.starts_with("0<2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triples_of_two() {
        let c = FinCat::chain(2);
        let p = pairs_category(&c, &all(&c)).unwrap();
        let t = enumerate_triples(&p);
        assert_eq!(t.len(), 4);
        let mut non_id: Vec<String> = t
            .iter()
            .filter(|t| !t.is_identity_only(&p))
            .map(|t| t.name(&p))
            .collect();
        non_id.sort();
        assert_eq!(non_id, vec!["(1,0,0)", "(1,1,0)"]);
        let p1 = pairs_category(&FinCat::point(), &[true]).unwrap();
        assert_eq!(enumerate_triples(&p1).len(), 1);
        let c3 = FinCat::chain(3);
        let p3 = pairs_category(&c3, &all(&c3)).unwrap();
        assert!(enumerate_triples(&p3)
            .iter()
            .any(|t| t.name(&p3) == "(2,1,0)"));
    }

    #[test]
    fn nori_counts() {
        let c = FinCat::chain(2);
        let p = pairs_category(&c, &all(&c)).unwrap();
        let d = nori_diagram(&p, (0, 0)).unwrap();
        assert_eq!(d.quiver.vertices.len(), 3);
        assert!(d
            .edge_kinds
            .iter()
            .all(|k| matches!(k, NoriEdge::Gamma { .. })));
        let d = nori_diagram(&p, (-1, 1)).unwrap();
        assert_eq!(d.quiver.vertices.len(), 9);
        let bds: Vec<i64> = d
            .edge_kinds
            .iter()
            .filter_map(|k| match k {
                NoriEdge::Boundary { degree, .. } => Some(*degree),
                _ => None,
            })
            .collect();
        assert_eq!(bds.len(), 8);
        assert!(bds.iter().all(|&i| i == 0 || i == 1));
        for (e, k) in d.edge_kinds.iter().enumerate() {
            if let NoriEdge::Boundary { .. } = k {
                let (_, i) = d.vertex_info(d.quiver.edges[e].src);
                let (_, j) = d.vertex_info(d.quiver.edges[e].dst);
                assert_eq!(j, i - 1);
            }
        }
        assert!(d.quiver.is_acyclic());
        assert!(matches!(
            nori_diagram(&p, (1, 0)),
            Err(DiagramError::EmptyWindow(1, 0))
        ));
        let p1 = pairs_category(&FinCat::point(), &[true]).unwrap();
        let d1 = nori_diagram(&p1, (0, 2)).unwrap();
        assert_eq!(d1.quiver.vertices.len(), 3);
        assert_eq!(d1.quiver.edges.len(), 2);
    }

    #[test]
    fn cubes_include_identities() {
        let c = FinCat::chain(2);
        let p = pairs_category(&c, &all(&c)).unwrap();
        let t = enumerate_triples(&p);
        let cubes = enumerate_cubes(&p, &t);
        for i in 0..t.len() {
            assert!(cubes
                .iter()
                .any(|k| k.src == i && k.dst == i && p.cat.is_identity(k.delta)));
        }
    }
}
