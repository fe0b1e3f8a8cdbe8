//! Matrix equations `Σ L·X_k·R = D` flattened into one linear system.

use super::mat::Mat;
use super::ring::Ring;
use super::smith::{kernel_gens, solve_right};

struct Term {
    unknown: usize,
    left: Option<Mat>,
    right: Option<Mat>,
}

struct Equation {
    rows: usize,
    cols: usize,
    terms: Vec<Term>,
    rhs: Option<Mat>,
}

/// Unknown matrices with fixed shapes and linear equations between them.
pub struct LinSystem {
    ring: Ring,
    unknowns: Vec<(usize, usize)>,
    equations: Vec<Equation>,
}

impl LinSystem {
    pub fn new(ring: Ring) -> LinSystem {
        LinSystem {
            ring,
            unknowns: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        self.unknowns.push((rows, cols));
        self.unknowns.len() - 1
    }

    /// Start an equation whose value is a `rows x cols` matrix.
    pub fn equation(&mut self, rows: usize, cols: usize) -> usize {
        self.equations.push(Equation {
            rows,
            cols,
            terms: Vec::new(),
            rhs: None,
        });
        self.equations.len() - 1
    }

    /// Add `left * X * right` to equation `eq`; `None` stands for an identity.
    pub fn term(&mut self, eq: usize, left: Option<&Mat>, unknown: usize, right: Option<&Mat>) {
        let (p, q) = self.unknowns[unknown];
        let e = &self.equations[eq];
        let a = left.map_or(p, Mat::rows);
        let b = right.map_or(q, Mat::cols);
        assert_eq!(
            (a, b),
            (e.rows, e.cols),
            "term shape does not match equation"
        );
        if let Some(l) = left {
            assert_eq!(l.cols(), p, "left factor shape");
        }
        if let Some(r) = right {
            assert_eq!(r.rows(), q, "right factor shape");
        }
        self.equations[eq].terms.push(Term {
            unknown,
            left: left.cloned(),
            right: right.cloned(),
        });
    }

    pub fn rhs(&mut self, eq: usize, d: &Mat) {
        let e = &self.equations[eq];
        assert_eq!((d.rows(), d.cols()), (e.rows, e.cols), "rhs shape");
        self.equations[eq].rhs = Some(d.clone());
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.unknowns.len() + 1);
        let mut acc = 0;
        for &(r, c) in &self.unknowns {
            out.push(acc);
            acc += r * c;
        }
        out.push(acc);
        out
    }

    /// Flattened coefficient matrix and right-hand side (column-major `vec`).
    pub fn flatten(&self) -> (Mat, Mat) {
        let offs = self.offsets();
        let n = *offs.last().unwrap();
        let m: usize = self.equations.iter().map(|e| e.rows * e.cols).sum();
        let ring = self.ring;
        let mut a = Mat::zero(ring, m, n);
        let mut d = Mat::zero(ring, m, 1);
        let mut base = 0;
        for e in &self.equations {
            for t in &e.terms {
                let (p, q) = self.unknowns[t.unknown];
                let off = offs[t.unknown];
                for jo in 0..e.cols {
                    for j in 0..q {
                        let rv = match &t.right {
                            Some(r) => r.get(j, jo).clone(),
                            None if j == jo => ring.one(),
                            None => continue,
                        };
                        if num_traits::Zero::is_zero(&rv) {
                            continue;
                        }
                        for io in 0..e.rows {
                            for i in 0..p {
                                let lv = match &t.left {
                                    Some(l) => l.get(io, i).clone(),
                                    None if i == io => ring.one(),
                                    None => continue,
                                };
                                if num_traits::Zero::is_zero(&lv) {
                                    continue;
                                }
                                let row = base + jo * e.rows + io;
                                let col = off + j * p + i;
                                let v = ring.add(a.get(row, col), &ring.mul(&rv, &lv));
                                a.set(row, col, v);
                            }
                        }
                    }
                }
            }
            if let Some(r) = &e.rhs {
                for jo in 0..e.cols {
                    for io in 0..e.rows {
                        d.set(base + jo * e.rows + io, 0, r.get(io, jo).clone());
                    }
                }
            }
            base += e.rows * e.cols;
        }
        (a, d)
    }

    /// Split a flattened solution vector back into the unknown matrices.
    pub fn decode(&self, x: &Mat, col: usize) -> Vec<Mat> {
        let offs = self.offsets();
        self.unknowns
            .iter()
            .enumerate()
            .map(|(k, &(p, q))| {
                let mut m = Mat::zero(self.ring, p, q);
                for j in 0..q {
                    for i in 0..p {
                        m.set(i, j, x.get(offs[k] + j * p + i, col).clone());
                    }
                }
                m
            })
            .collect()
    }

    pub fn solve(&self) -> Option<Vec<Mat>> {
        let (a, d) = self.flatten();
        let x = solve_right(&a, &d).expect("consistent system shapes")?;
        Some(self.decode(&x, 0))
    }

    /// Generators of the solution space of the homogeneous system.
    pub fn kernel(&self) -> Vec<Vec<Mat>> {
        let (a, _) = self.flatten();
        let k = kernel_gens(&a);
        (0..k.cols()).map(|c| self.decode(&k, c)).collect()
    }

    pub fn num_vars(&self) -> usize {
        *self.offsets().last().unwrap()
    }
}

/// Column-major flattening of a matrix into a column vector.
pub fn vec_of(m: &Mat) -> Mat {
    let mut out = Mat::zero(m.ring(), m.rows() * m.cols(), 1);
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            out.set(j * m.rows() + i, 0, m.get(i, j).clone());
        }
    }
    out
}

/// Inverse of [`vec_of`] for a given shape.
pub fn unvec(v: &Mat, col: usize, rows: usize, cols: usize) -> Mat {
    let mut m = Mat::zero(v.ring(), rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m.set(i, j, v.get(j * rows + i, col).clone());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_style_system() {
        // find X with A X - X B = C over Q
        let q = Ring::Rationals;
        let a = Mat::from_i64(q, &[&[1, 0], &[0, 2]]);
        let b = Mat::from_i64(q, &[&[3]]);
        let x0 = Mat::from_i64(q, &[&[1], &[5]]);
        let c = a.mul(&x0).sub(&x0.mul(&b));
        let mut sys = LinSystem::new(q);
        let x = sys.unknown(2, 1);
        let e = sys.equation(2, 1);
        sys.term(e, Some(&a), x, None);
        sys.term(e, None, x, Some(&b.neg()));
        sys.rhs(e, &c);
        let sol = sys.solve().unwrap();
        assert_eq!(sol[0], x0);
    }
}
