//! Linear equations between matrices of combinations, expanded on hom bases.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::{AddCat, AddMor, AddObj, Arrow, Comb};
use crate::coeff::{kernel_gens, solve_right, Mat, Scalar};

struct Term {
    left: AddMor,
    unknown: usize,
    right: AddMor,
}

struct Equation {
    src: AddObj,
    dst: AddObj,
    terms: Vec<Term>,
    rhs: Option<AddMor>,
}

/// One scalar unknown: the coefficient of `arrow` in entry `(j, i)` of unknown `unknown`.
#[derive(Clone, Debug)]
pub struct Var {
    pub unknown: usize,
    pub j: usize,
    pub i: usize,
    pub arrow: Arrow,
}

type RowKey = (usize, usize, usize, Arrow);

/// Unknown morphisms `X_k: S_k -> T_k` subject to `Σ L ∘ X_k ∘ R = D`.
pub struct AddSystem<'a> {
    cat: &'a AddCat,
    unknowns: Vec<(AddObj, AddObj)>,
    equations: Vec<Equation>,
}

/// The flattened system `a x = b` with the meaning of each column.
pub struct Flat {
    pub a: Mat,
    pub b: Mat,
    pub vars: Vec<Var>,
}

impl<'a> AddSystem<'a> {
    pub fn new(cat: &'a AddCat) -> AddSystem<'a> {
        AddSystem {
            cat,
            unknowns: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn unknown(&mut self, src: &AddObj, dst: &AddObj) -> usize {
        self.unknowns.push((src.clone(), dst.clone()));
        self.unknowns.len() - 1
    }

    pub fn equation(&mut self, src: &AddObj, dst: &AddObj) -> usize {
        self.equations.push(Equation {
            src: src.clone(),
            dst: dst.clone(),
            terms: Vec::new(),
            rhs: None,
        });
        self.equations.len() - 1
    }

    /// Add `left ∘ X ∘ right`; `None` means identity.
    pub fn term(
        &mut self,
        eq: usize,
        left: Option<&AddMor>,
        unknown: usize,
        right: Option<&AddMor>,
    ) {
        let (s, t) = &self.unknowns[unknown];
        let left = left.cloned().unwrap_or_else(|| self.cat.identity(t));
        let right = right.cloned().unwrap_or_else(|| self.cat.identity(s));
        let e = &self.equations[eq];
        assert_eq!(
            left.src, *t,
            "left factor must start at the unknown's target"
        );
        assert_eq!(
            right.dst, *s,
            "right factor must end at the unknown's source"
        );
        assert_eq!(left.dst, e.dst, "term target differs from equation target");
        assert_eq!(right.src, e.src, "term source differs from equation source");
        self.equations[eq].terms.push(Term {
            left,
            unknown,
            right,
        });
    }

    /// Like [`term`](Self::term) with a scalar factor.
    pub fn term_scaled(
        &mut self,
        eq: usize,
        s: &Scalar,
        left: Option<&AddMor>,
        unknown: usize,
        right: Option<&AddMor>,
    ) {
        let (_, t) = &self.unknowns[unknown];
        let l = left.cloned().unwrap_or_else(|| self.cat.identity(t));
        let l = self.cat.scale(&l, s);
        self.term(eq, Some(&l), unknown, right);
    }

    pub fn rhs(&mut self, eq: usize, d: &AddMor) {
        let e = &self.equations[eq];
        assert!(d.src == e.src && d.dst == e.dst, "rhs shape");
        self.equations[eq].rhs = Some(d.clone());
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for (k, (s, t)) in self.unknowns.iter().enumerate() {
            for (j, &tv) in t.iter().enumerate() {
                for (i, &sv) in s.iter().enumerate() {
                    for arrow in self.cat.base.hom_basis(sv, tv) {
                        out.push(Var {
                            unknown: k,
                            j,
                            i,
                            arrow,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn flatten(&self) -> Flat {
        let ring = self.cat.ring;
        let base = &self.cat.base;
        let vars = self.vars();
        let mut cols: Vec<BTreeMap<RowKey, Scalar>> = Vec::with_capacity(vars.len());
        for v in &vars {
            let mut col: BTreeMap<RowKey, Scalar> = BTreeMap::new();
            for (ei, e) in self.equations.iter().enumerate() {
                for t in e.terms.iter().filter(|t| t.unknown == v.unknown) {
                    for q in 0..e.dst.len() {
                        let l = t.left.get(q, v.j);
                        if l.is_empty() {
                            continue;
                        }
                        for p in 0..e.src.len() {
                            let r = t.right.get(v.i, p);
                            for (ra, rc) in r {
                                let rb = base.then(ra, &v.arrow);
                                for (la, lc) in l {
                                    let arrow = base.then(&rb, la);
                                    let key = (ei, q, p, arrow);
                                    let val = ring.mul(rc, lc);
                                    let s = match col.get(&key) {
                                        Some(x) => ring.add(x, &val),
                                        None => val,
                                    };
                                    col.insert(key, s);
                                }
                            }
                        }
                    }
                }
            }
            col.retain(|_, s| !s.is_zero());
            cols.push(col);
        }
        let mut rhs: BTreeMap<RowKey, Scalar> = BTreeMap::new();
        for (ei, e) in self.equations.iter().enumerate() {
            if let Some(d) = &e.rhs {
                for q in 0..e.dst.len() {
                    for p in 0..e.src.len() {
                        for (a, c) in d.get(q, p) {
                            rhs.insert((ei, q, p, a.clone()), c.clone());
                        }
                    }
                }
            }
        }
        let mut keys: BTreeSet<&RowKey> = rhs.keys().collect();
        for c in &cols {
            keys.extend(c.keys());
        }
        let index: BTreeMap<&RowKey, usize> =
            keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut a = Mat::zero(ring, index.len(), vars.len());
        for (ci, c) in cols.iter().enumerate() {
            for (k, v) in c {
                a.set(index[k], ci, v.clone());
            }
        }
        let mut b = Mat::zero(ring, index.len(), 1);
        for (k, v) in &rhs {
            b.set(index[k], 0, v.clone());
        }
        Flat { a, b, vars }
    }

    /// Rebuild the unknown morphisms from column `col` of `x`.
    pub fn decode(&self, vars: &[Var], x: &Mat, col: usize) -> Vec<AddMor> {
        let mut out: Vec<AddMor> = self
            .unknowns
            .iter()
            .map(|(s, t)| self.cat.zero(s, t))
            .collect();
        for (r, v) in vars.iter().enumerate() {
            let c = x.get(r, col);
            if c.is_zero() {
                continue;
            }
            let m = &mut out[v.unknown];
            let n = m.src.len();
            m.entries[v.j * n + v.i].insert(v.arrow.clone(), c.clone());
        }
        out
    }

    /// Coordinates of given values of the unknowns; `None` if some support lies outside the basis.
    pub fn encode(&self, vars: &[Var], values: &[&AddMor]) -> Option<Mat> {
        let mut x = Mat::zero(self.cat.ring, vars.len(), 1);
        let mut used = 0usize;
        for (r, v) in vars.iter().enumerate() {
            if let Some(c) = values[v.unknown].get(v.j, v.i).get(&v.arrow) {
                x.set(r, 0, c.clone());
                used += 1;
            }
        }
        let total: usize = values
            .iter()
            .map(|m| m.entries.iter().map(Comb::len).sum::<usize>())
            .sum();
        (used == total).then_some(x)
    }

    pub fn solve(&self) -> Option<Vec<AddMor>> {
        let flat = self.flatten();
        let ring = flat.a.ring();
        let (blocks, empty_rows) = blocks(&flat.a);
        if empty_rows.iter().any(|&r| !flat.b.get(r, 0).is_zero()) {
            return None;
        }
        let mut x = Mat::zero(ring, flat.a.cols(), 1);
        for (rows, cols) in &blocks {
            if rows.is_empty() {
                continue;
            }
            let sub = pick(&flat.a, rows, cols);
            let rhs = pick(&flat.b, rows, &[0]);
            let y = solve_right(&sub, &rhs).expect("consistent system")?;
            for (k, &c) in cols.iter().enumerate() {
                x.set(c, 0, y.get(k, 0).clone());
            }
        }
        Some(self.decode(&flat.vars, &x, 0))
    }

    /// Generators of the solutions of the homogeneous system.
    pub fn kernel(&self) -> Vec<Vec<AddMor>> {
        let flat = self.flatten();
        let ring = flat.a.ring();
        let n = flat.a.cols();
        let mut out = Vec::new();
        for (rows, cols) in blocks(&flat.a).0 {
            let k = if rows.is_empty() {
                Mat::identity(ring, cols.len())
            } else {
                kernel_gens(&pick(&flat.a, &rows, &cols))
            };
            for g in 0..k.cols() {
                let mut x = Mat::zero(ring, n, 1);
                for (i, &c) in cols.iter().enumerate() {
                    x.set(c, 0, k.get(i, g).clone());
                }
                out.push(self.decode(&flat.vars, &x, 0));
            }
        }
        out
    }
}

fn pick(a: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    let mut out = Mat::zero(a.ring(), rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.set(i, j, a.get(r, c).clone());
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Independent blocks `(rows, cols)` of `a`, plus the rows with no nonzero entry.
fn blocks(a: &Mat) -> (Vec<(Vec<usize>, Vec<usize>)>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..a.cols()).collect();
    let mut first = vec![None; a.rows()];
    for (r, f) in first.iter_mut().enumerate() {
        for c in 0..a.cols() {
            if a.get(r, c).is_zero() {
                continue;
            }
            match *f {
                None => *f = Some(c),
                Some(c0) => {
                    let (x, y) = (find(&mut parent, c0), find(&mut parent, c));
                    parent[x] = y;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for c in 0..a.cols() {
        let root = find(&mut parent, c);
        groups.entry(root).or_default().1.push(c);
    }
    let mut empty = Vec::new();
    for (r, f) in first.into_iter().enumerate() {
        match f {
            Some(c) => {
                let root = find(&mut parent, c);
                groups.get_mut(&root).expect("column group").0.push(r);
            }
            None => empty.push(r),
        }
    }
    (groups.into_values().collect(), empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::Base;
    use crate::coeff::Ring;
    use crate::diagram::{FinCat, Quiver};

    fn kronecker() -> Quiver {
        let mut q = Quiver::discrete(2);
        q.add_edge("a", 0, 1).unwrap();
        q.add_edge("b", 0, 1).unwrap();
        q
    }

    #[test]
    fn hom_ranks_match_path_counts() {
        let a = AddCat::new(Ring::Integers, Base::free(kronecker(), 5));
        assert_eq!(a.base.hom_basis(0, 1).len(), 2);
        assert_eq!(a.base.hom_basis(1, 0).len(), 0);
        assert_eq!(a.base.hom_basis(0, 0).len(), 1);
    }

    #[test]
    fn factor_right_is_complete_over_f2() {
        // brute force every h: (0) -> (0, 1) over F_2 on the Kronecker quiver
        let r = Ring::PrimeField(2);
        let a = AddCat::new(r, Base::free(kronecker(), 5));
        let q = kronecker();
        let pa = a.arrow(&Arrow::Path(crate::diagram::Path::edge(&q, 0)));
        let pb = a.arrow(&Arrow::Path(crate::diagram::Path::edge(&q, 1)));
        let g = a.hcat(&pa, &a.identity(&vec![1]));
        let g = a.vcat(&g, &a.hcat(&pb, &a.zero(&vec![1], &vec![1])));
        // g: (0,1) -> (1,1)
        let mut sys = AddSystem::new(&a);
        let h = sys.unknown(&vec![0], &vec![0, 1]);
        let vars = sys.vars();
        assert_eq!(vars.len(), 3);
        let _ = h;
        for bits in 0..8u32 {
            let mut x = Mat::zero(r, 3, 1);
            for k in 0..3 {
                x.set(k, 0, r.from_i64(((bits >> k) & 1) as i64));
            }
            let hm = sys.decode(&vars, &x, 0).remove(0);
            let f = a.compose(&g, &hm);
            let found = a.factor_right(&f, &g).unwrap().unwrap();
            assert_eq!(a.compose(&g, &found), f);
        }
        let target = a.vcat(&a.zero(&vec![0], &vec![1]), &pa);
        assert!(a.factor_right(&target, &g).unwrap().is_none());
    }

    #[test]
    fn encode_round_trip() {
        let a = AddCat::new(Ring::Integers, Base::fin(FinCat::cyclic_group(2)));
        let mut sys = AddSystem::new(&a);
        sys.unknown(&vec![0], &vec![0]);
        let vars = sys.vars();
        let m = a.add(
            &a.identity(&vec![0]),
            &a.scale(&a.arrow(&Arrow::Mor(1)), &Ring::Integers.from_i64(3)),
        );
        let x = sys.encode(&vars, &[&m]).unwrap();
        assert_eq!(sys.decode(&vars, &x, 0)[0], m);
    }
}
