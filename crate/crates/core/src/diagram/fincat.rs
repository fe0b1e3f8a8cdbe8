use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::quiver::{Path, Quiver};
use super::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mor {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category with an explicit composition table.
///
/// Every morphism also records a factorization into generating morphisms
/// (`words[f]`, in traversal order), used to extend assignments on generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub mors: Vec<Mor>,
    ids: Vec<usize>,
    /// `table[f * n + g] = g ∘ f` when `dst(f) = src(g)`.
    table: Vec<Option<usize>>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    pub generators: Vec<usize>,
    pub words: Vec<Vec<usize>>,
}

impl FinCat {
    /// Build and verify a category from a composition function `then(f, g) = g ∘ f`.
    pub fn from_parts(
        objects: Vec<String>,
        mors: Vec<Mor>,
        ids: Vec<usize>,
        then: impl Fn(usize, usize) -> usize,
        generators: Vec<usize>,
        words: Vec<Vec<usize>>,
    ) -> Result<FinCat, DiagramError> {
        let n = mors.len();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if mors[f].dst == mors[g].src {
                    let h = then(f, g);
                    if h >= n || mors[h].src != mors[f].src || mors[h].dst != mors[g].dst {
                        return Err(DiagramError::BadComposition(format!(
                            "{} then {} has the wrong type",
                            mors[f].name, mors[g].name
                        )));
                    }
                    table[f * n + g] = Some(h);
                }
            }
        }
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, m) in mors.iter().enumerate() {
            homs.entry((m.src, m.dst)).or_default().push(i);
        }
        let c = FinCat {
            objects,
            mors,
            ids,
            table,
            homs,
            generators,
            words,
        };
        c.verify()?;
        Ok(c)
    }

    fn verify(&self) -> Result<(), DiagramError> {
        let n = self.mors.len();
        if self.ids.len() != self.objects.len() {
            return Err(DiagramError::BadComposition(
                "one identity per object required".into(),
            ));
        }
        for (o, &i) in self.ids.iter().enumerate() {
            if self.mors[i].src != o || self.mors[i].dst != o {
                return Err(DiagramError::BadComposition(format!(
                    "identity of {} has wrong type",
                    self.objects[o]
                )));
            }
        }
        for f in 0..n {
            let m = &self.mors[f];
            if self.then(self.ids[m.src], f) != Some(f) || self.then(f, self.ids[m.dst]) != Some(f)
            {
                return Err(DiagramError::BadComposition(format!(
                    "unit law fails at {}",
                    m.name
                )));
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(fg) = self.then(f, g) else { continue };
                for h in 0..n {
                    let Some(gh) = self.then(g, h) else { continue };
                    if self.then(fg, h) != self.then(f, gh) {
                        return Err(DiagramError::BadComposition(format!(
                            "associativity fails at ({}, {}, {})",
                            self.mors[f].name, self.mors[g].name, self.mors[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_mors(&self) -> usize {
        self.mors.len()
    }

    pub fn identity(&self, o: usize) -> usize {
        self.ids[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.ids[self.mors[f].src] == f
    }

    /// `g ∘ f` (first `f`, then `g`).
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.table[f * self.mors.len() + g]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.then(f, g)
    }

    pub fn hom(&self, u: usize, v: usize) -> &[usize] {
        self.homs.get(&(u, v)).map_or(&[], Vec::as_slice)
    }

    pub fn object(&self, name: &str) -> Result<usize, DiagramError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| DiagramError::UnknownVertex(name.to_string()))
    }

    pub fn mor(&self, name: &str) -> Result<usize, DiagramError> {
        self.mors
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| DiagramError::UnknownEdge(name.to_string()))
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let m = &self.mors[f];
        self.hom(m.dst, m.src).iter().any(|&g| {
            self.then(f, g) == Some(self.ids[m.src]) && self.then(g, f) == Some(self.ids[m.dst])
        })
    }

    /// A final object, if one exists (unique morphism from every object).
    pub fn final_object(&self) -> Option<usize> {
        (0..self.objects.len())
            .find(|&t| (0..self.objects.len()).all(|o| self.hom(o, t).len() == 1))
    }

    pub fn initial_object(&self) -> Option<usize> {
        (0..self.objects.len())
            .find(|&s| (0..self.objects.len()).all(|o| self.hom(s, o).len() == 1))
    }

    /// Initial, and every morphism into it is an isomorphism.
    pub fn is_strictly_initial(&self, o: usize) -> bool {
        self.initial_object() == Some(o)
            && (0..self.objects.len()).all(|x| self.hom(x, o).iter().all(|&f| self.is_iso(f)))
    }

    /// The terminal category `1`.
    pub fn point() -> FinCat {
        FinCat::chain(1)
    }

    /// The ordinal `n` as a category: objects `0..n`, a unique arrow `i -> j` for `i <= j`.
    pub fn chain(n: usize) -> FinCat {
        let leq: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinCat::poset(n, &leq).expect("chains are posets")
    }

    /// The poset on `0..n` generated by the listed relations `a <= b`.
    pub fn poset(n: usize, leq: &[(usize, usize)]) -> Result<FinCat, DiagramError> {
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in leq {
            if a >= n || b >= n {
                return Err(DiagramError::UnknownVertex(format!("{}", a.max(b))));
            }
            reach[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && reach[i][j] && reach[j][i] {
                    return Err(DiagramError::BadComposition(format!(
                        "{i} and {j} form a cycle"
                    )));
                }
            }
        }
        let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut mors = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if reach[i][j] {
                    let name = if i == j {
                        format!("id:{i}")
                    } else {
                        format!("{i}<{j}")
                    };
                    index.insert((i, j), mors.len());
                    mors.push(Mor {
                        name,
                        src: i,
                        dst: j,
                    });
                }
            }
        }
        let ids = (0..n).map(|i| index[&(i, i)]).collect();
        let generators: Vec<usize> = (0..mors.len())
            .filter(|&f| mors[f].src != mors[f].dst)
            .collect();
        let words = (0..mors.len())
            .map(|f| {
                if mors[f].src == mors[f].dst {
                    vec![]
                } else {
                    vec![f]
                }
            })
            .collect();
        let m2 = mors.clone();
        FinCat::from_parts(
            objects,
            mors,
            ids,
            |f, g| index[&(m2[f].src, m2[g].dst)],
            generators,
            words,
        )
    }

    /// A finite monoid as a one-object category. `mult[a][b]` is the product `a·b`
    /// (apply `b` first, then `a`); element `unit` is the identity.
    pub fn monoid(
        names: &[&str],
        mult: &[Vec<usize>],
        unit: usize,
    ) -> Result<FinCat, DiagramError> {
        let n = names.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(DiagramError::BadComposition(
                "multiplication table must be square".into(),
            ));
        }
        let mors: Vec<Mor> = names
            .iter()
            .map(|s| Mor {
                name: s.to_string(),
                src: 0,
                dst: 0,
            })
            .collect();
        let generators: Vec<usize> = (0..n).filter(|&a| a != unit).collect();
        let words = (0..n)
            .map(|a| if a == unit { vec![] } else { vec![a] })
            .collect();
        FinCat::from_parts(
            vec!["*".into()],
            mors,
            vec![unit],
            |f, g| mult[g][f],
            generators,
            words,
        )
    }

    /// The cyclic group of order `n` with generator `g`.
    pub fn cyclic_group(n: usize) -> FinCat {
        let names: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mult: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let mut c = FinCat::monoid(&refs, &mult, 0).expect("cyclic groups are monoids");
        // every element is a power of g
        c.generators = if n > 1 { vec![1] } else { vec![] };
        c.words = (0..n).map(|k| vec![1; k]).collect();
        c
    }

    /// The opposite category; morphism names are kept.
    pub fn dual(&self) -> FinCat {
        let n = self.mors.len();
        let mors: Vec<Mor> = self
            .mors
            .iter()
            .map(|m| Mor {
                name: m.name.clone(),
                src: m.dst,
                dst: m.src,
            })
            .collect();
        let mut table = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                table[f * n + g] = self.then(g, f);
            }
        }
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, m) in mors.iter().enumerate() {
            homs.entry((m.src, m.dst)).or_default().push(i);
        }
        let words = self
            .words
            .iter()
            .map(|w| w.iter().rev().copied().collect())
            .collect();
        FinCat {
            objects: self.objects.clone(),
            mors,
            ids: self.ids.clone(),
            table,
            homs,
            generators: self.generators.clone(),
            words,
        }
    }

    /// The composite of a word of morphisms in traversal order.
    pub fn eval_word(&self, word: &[usize], at: usize) -> Option<usize> {
        let mut cur = self.ids[at];
        for &w in word {
            cur = self.then(cur, w)?;
        }
        Some(cur)
    }

    /// Quotient of the path category of `q` by the relations, when finite.
    pub fn from_decoration(
        q: &Quiver,
        relations: &[(Path, Path)],
        bound: usize,
    ) -> Result<FinCat, DiagramError> {
        for (p, r) in relations {
            if p.src != r.src || p.dst != r.dst {
                return Err(DiagramError::NotParallel(q.path_name(p), q.path_name(r)));
            }
        }
        let mut len = relations
            .iter()
            .map(|(p, r)| p.len().max(r.len()))
            .max()
            .unwrap_or(0)
            + 1;
        loop {
            match Closure::build(q, relations, len, bound)? {
                Some(c) => return c.into_fincat(q),
                None => len += 1,
            }
        }
    }

    /// The (finite) path category of an acyclic quiver.
    pub fn from_acyclic_quiver(q: &Quiver, bound: usize) -> Result<FinCat, DiagramError> {
        if !q.is_acyclic() {
            return Err(DiagramError::NonFinite(vec!["quiver has a cycle".into()]));
        }
        FinCat::from_decoration(q, &[], bound)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }
}

/// Congruence closure on all paths up to a fixed length.
struct Closure {
    len: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    class_of: Vec<usize>,
    reps: Vec<usize>,
    relations: Vec<(Path, Path)>,
    edge_dst: Vec<usize>,
}

impl Closure {
    fn build(
        q: &Quiver,
        relations: &[(Path, Path)],
        len: usize,
        bound: usize,
    ) -> Result<Option<Closure>, DiagramError> {
        let mut paths = Vec::new();
        for l in 0..=len {
            paths.extend(q.paths_of_length(l));
            if paths.len() > bound {
                let growing: Vec<String> = q
                    .paths_of_length(l)
                    .iter()
                    .take(5)
                    .map(|p| q.path_name(p))
                    .collect();
                return Err(DiagramError::NonFinite(growing));
            }
        }
        let index: HashMap<Path, usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut uf = UnionFind::new(paths.len());
        for (p, r) in relations {
            if let (Some(&a), Some(&b)) = (index.get(p), index.get(r)) {
                uf.union(a, b);
            }
        }
        loop {
            let mut changed = false;
            let mut right: HashMap<(usize, usize), usize> = HashMap::new();
            let mut left: HashMap<(usize, usize), usize> = HashMap::new();
            for (i, p) in paths.iter().enumerate() {
                if p.len() >= len {
                    continue;
                }
                let c = uf.find(i);
                for e in q.out_edges(p.dst) {
                    let t = index[&p.then_edge(q, e)];
                    match right.get(&(c, e)) {
                        Some(&o) => changed |= uf.union(o, t),
                        None => {
                            right.insert((c, e), t);
                        }
                    }
                }
                for e in q.in_edges(p.src) {
                    let t = index[&Path::edge(q, e).then(p).unwrap()];
                    match left.get(&(c, e)) {
                        Some(&o) => changed |= uf.union(o, t),
                        None => {
                            left.insert((c, e), t);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let roots: Vec<usize> = (0..paths.len()).map(|i| uf.find(i)).collect();
        // best (shortest, then smallest) representative per root
        let mut best: HashMap<usize, usize> = HashMap::new();
        for (i, &r) in roots.iter().enumerate() {
            let e = best.entry(r).or_insert(i);
            if paths[i] < paths[*e] {
                *e = i;
            }
        }
        if roots.iter().any(|r| paths[best[r]].len() >= len) {
            return Ok(None);
        }
        let mut rep_list: Vec<usize> = best.values().copied().collect();
        rep_list.sort_by(|&a, &b| paths[a].cmp(&paths[b]));
        let class_idx: HashMap<usize, usize> = rep_list
            .iter()
            .enumerate()
            .map(|(k, &p)| (roots[p], k))
            .collect();
        let class_of = roots.iter().map(|r| class_idx[r]).collect();
        let c = Closure {
            len,
            paths,
            index,
            class_of,
            reps: rep_list,
            relations: relations.to_vec(),
            edge_dst: q.edges.iter().map(|e| e.dst).collect(),
        };
        if !c.consistent(q) {
            return Ok(None);
        }
        Ok(Some(c))
    }

    fn reduce(&self, p: &Path) -> usize {
        let mut cur = p.clone();
        while cur.len() >= self.len {
            let head = &cur.edges[..self.len];
            let prefix = Path {
                src: cur.src,
                dst: self.edge_dst[head[self.len - 1]],
                edges: head.to_vec(),
            };
            let rep = &self.paths[self.reps[self.class_of[self.index[&prefix]]]];
            let mut edges = rep.edges.clone();
            edges.extend_from_slice(&cur.edges[self.len..]);
            cur = Path {
                src: cur.src,
                dst: cur.dst,
                edges,
            };
        }
        self.class_of[self.index[&cur]]
    }

    fn rep(&self, class: usize) -> &Path {
        &self.paths[self.reps[class]]
    }

    fn consistent(&self, q: &Quiver) -> bool {
        let k = self.reps.len();
        let act = |a: usize, w: &Path| -> usize { self.reduce(&self.rep(a).then(w).unwrap()) };
        for b in 0..k {
            let rb = self.rep(b);
            for e in q.out_edges(rb.dst) {
                let be = rb.then_edge(q, e);
                let c = self.reduce(&be);
                let rc = self.rep(c).clone();
                for a in 0..k {
                    if self.rep(a).dst != be.src {
                        continue;
                    }
                    if act(a, &be) != act(a, &rc) {
                        return false;
                    }
                }
            }
        }
        self.relations
            .iter()
            .all(|(p, r)| self.reduce(p) == self.reduce(r))
    }

    fn into_fincat(self, q: &Quiver) -> Result<FinCat, DiagramError> {
        let k = self.reps.len();
        let mors: Vec<Mor> = (0..k)
            .map(|c| {
                let p = self.rep(c);
                Mor {
                    name: q.path_name(p),
                    src: p.src,
                    dst: p.dst,
                }
            })
            .collect();
        let ids = (0..q.vertices.len())
            .map(|v| self.reduce(&Path::identity(v)))
            .collect();
        let mut table = HashMap::new();
        for f in 0..k {
            for g in 0..k {
                if let Some(p) = self.rep(f).then(self.rep(g)) {
                    table.insert((f, g), self.reduce(&p));
                }
            }
        }
        let generators: Vec<usize> = (0..q.edges.len())
            .map(|e| self.reduce(&Path::edge(q, e)))
            .collect();
        let words = (0..k)
            .map(|c| self.rep(c).edges.iter().map(|&e| generators[e]).collect())
            .collect();
        FinCat::from_parts(
            q.vertices.clone(),
            mors,
            ids,
            |f, g| table[&(f, g)],
            generators,
            words,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_quiver() -> Quiver {
        let mut q = Quiver::new();
        q.add_vertex("*").unwrap();
        q.add_edge("e", 0, 0).unwrap();
        q
    }

    #[test]
    fn loop_with_identity_relation_is_point() {
        let q = loop_quiver();
        let rel = (q.parse_path("e").unwrap(), q.parse_path("id:*").unwrap());
        let c = FinCat::from_decoration(&q, &[rel], 1000).unwrap();
        assert_eq!(c.num_mors(), 1);
    }

    #[test]
    fn idempotent_loop_has_two_morphisms() {
        let q = loop_quiver();
        let rel = (q.parse_path("e.e").unwrap(), q.parse_path("e").unwrap());
        let c = FinCat::from_decoration(&q, &[rel], 1000).unwrap();
        assert_eq!(c.num_mors(), 2);
        let e = c.mor("e").unwrap();
        assert_eq!(c.then(e, e), Some(e));
    }

    #[test]
    fn cyclic_relation_gives_group() {
        let q = loop_quiver();
        let rel = (
            q.parse_path("e.e.e").unwrap(),
            q.parse_path("id:*").unwrap(),
        );
        let c = FinCat::from_decoration(&q, &[rel], 1000).unwrap();
        assert_eq!(c.num_mors(), 3);
        assert!(c.is_iso(c.mor("e").unwrap()));
    }

    #[test]
    fn free_loop_is_not_finite() {
        let q = loop_quiver();
        match FinCat::from_decoration(&q, &[], 50) {
            Err(DiagramError::NonFinite(paths)) => {
                assert!(paths.iter().any(|p| p.starts_with("e.e")))
            }
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn ordinal_two_from_quiver() {
        let mut q = Quiver::discrete(2);
        q.add_edge("a", 0, 1).unwrap();
        let c = FinCat::from_decoration(&q, &[], 1000).unwrap();
        assert_eq!(c.num_mors(), 3);
        assert_eq!(FinCat::chain(2).num_mors(), 3);
    }

    #[test]
    fn commutative_square() {
        let mut q = Quiver::discrete(4);
        q.add_edge("a", 0, 1).unwrap();
        q.add_edge("b", 1, 3).unwrap();
        q.add_edge("c", 0, 2).unwrap();
        q.add_edge("d", 2, 3).unwrap();
        let rel = (q.parse_path("a.b").unwrap(), q.parse_path("c.d").unwrap());
        let c = FinCat::from_decoration(&q, &[rel], 1000).unwrap();
        assert_eq!(c.hom(0, 3).len(), 1);
        assert_eq!(c.num_mors(), 9);
    }

    #[test]
    fn dual_of_chain() {
        let c = FinCat::chain(2);
        let d = c.dual();
        assert_eq!(d.hom(1, 0).len(), 1);
        assert_eq!(d.hom(0, 1).len(), 0);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn group_structure() {
        let c2 = FinCat::cyclic_group(2);
        let g = c2.mor("g").unwrap();
        assert_eq!(c2.then(g, g), Some(c2.identity(0)));
        assert!(FinCat::point().final_object().is_some());
        assert_eq!(FinCat::chain(3).final_object(), Some(2));
        assert!(FinCat::chain(3).is_strictly_initial(0));
    }
}
