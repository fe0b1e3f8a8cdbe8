//! Normal forms: Smith form over `Z` and `Z/n`, reduced row echelon form over fields.

use num_traits::Zero;

use super::mat::Mat;
use super::ring::Ring;
use super::CoeffError;

/// `u * a * v == form`, with `u` and `v` invertible.
///
/// The first `rank` rows of `form` carry a pivot in column `pivots[i]`; over
/// `Z` and `Z/n` the form is diagonal (`pivots[i] == i`) with each diagonal
/// entry dividing the next, over fields it is the reduced row echelon form and
/// `v` is the identity.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub form: Mat,
    pub u: Mat,
    pub v: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn normal_form(a: &Mat) -> NormalForm {
    if a.ring().is_field() {
        rref(a)
    } else {
        smith(a)
    }
}

fn rref(a: &Mat) -> NormalForm {
    let ring = a.ring();
    let mut m = a.clone();
    let mut u = Mat::identity(ring, a.rows());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        u.swap_rows(r, p);
        let inv = ring.normalizing_unit(m.get(r, c));
        m.scale_row(r, &inv);
        u.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r && !m.get(i, c).is_zero() {
                let f = ring.neg(m.get(i, c));
                m.add_row(i, r, &f);
                u.add_row(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    NormalForm {
        form: m,
        u,
        v: Mat::identity(ring, a.cols()),
        rank: r,
        pivots,
    }
}

fn smith(a: &Mat) -> NormalForm {
    let ring = a.ring();
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = Mat::identity(ring, rows);
    let mut v = Mat::identity(ring, cols);
    let mut t = 0;
    let mut search = true;
    while t < rows.min(cols) {
        if search {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = m.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => ring.size(e) < ring.size(m.get(bi, bj)),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            u.swap_rows(t, pi);
            m.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        search = true;
        loop {
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let x = ring.xgcd(m.get(t, t), m.get(i, t));
                m.row_op(t, i, &x.s, &x.t, &x.u, &x.v);
                u.row_op(t, i, &x.s, &x.t, &x.u, &x.v);
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let x = ring.xgcd(m.get(t, t), m.get(t, j));
                m.col_op(t, j, &x.s, &x.t, &x.u, &x.v);
                v.col_op(t, j, &x.s, &x.t, &x.u, &x.v);
            }
            if (t + 1..rows).all(|i| m.get(i, t).is_zero()) {
                break;
            }
        }
        // the pivot must divide every remaining entry
        let d = m.get(t, t).clone();
        let bad =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| ring.divide(&d, m.get(i, j)).is_none()));
        if let Some(i) = bad {
            let one = ring.one();
            m.add_row(t, i, &one);
            u.add_row(t, i, &one);
            search = false;
            continue;
        }
        let w = ring.normalizing_unit(&d);
        m.scale_row(t, &w);
        u.scale_row(t, &w);
        t += 1;
    }
    let pivots: Vec<usize> = (0..t).collect();
    NormalForm {
        form: m,
        u,
        v,
        rank: t,
        pivots,
    }
}

/// Canonical `x` with `a x = b`, or `None` when no solution exists.
pub fn solve_right(a: &Mat, b: &Mat) -> Result<Option<Mat>, CoeffError> {
    if a.ring() != b.ring() {
        return Err(CoeffError::RingMismatch(a.ring(), b.ring()));
    }
    if a.rows() != b.rows() {
        return Err(CoeffError::Dimension(format!(
            "solve_right: A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let nf = normal_form(a);
    let c = nf.u.mul(b);
    let mut y = Mat::zero(ring, a.cols(), b.cols());
    for (i, &p) in nf.pivots.iter().enumerate() {
        let d = nf.form.get(i, p);
        for k in 0..b.cols() {
            match ring.divide(d, c.get(i, k)) {
                Some(q) => y.set(p, k, q),
                None => return Ok(None),
            }
        }
    }
    let x = nf.v.mul(&y);
    // remaining rows of the transformed system must be consistent
    if a.mul(&x) != *b {
        return Ok(None);
    }
    Ok(Some(x))
}

/// Columns generating `{x : a x = 0}`.
pub fn kernel_gens(a: &Mat) -> Mat {
    let ring = a.ring();
    let n = a.cols();
    let nf = normal_form(a);
    let mut gens: Vec<Mat> = Vec::new();
    if ring.is_field() {
        for j in 0..n {
            if nf.pivots.contains(&j) {
                continue;
            }
            let mut x = Mat::zero(ring, n, 1);
            x.set(j, 0, ring.one());
            for (i, &p) in nf.pivots.iter().enumerate() {
                x.set(p, 0, ring.neg(nf.form.get(i, j)));
            }
            gens.push(x);
        }
    } else {
        for i in 0..n {
            let d = if i < nf.rank {
                nf.form.get(i, i).clone()
            } else {
                ring.zero()
            };
            let ann = ring.annihilator(&d);
            if ann.is_zero() {
                continue;
            }
            gens.push(nf.v.column(i).scale(&ann));
        }
    }
    let mut k = Mat::zero(ring, n, 0);
    for g in gens {
        k = k.hstack(&g);
    }
    k
}

impl Ring {
    /// Shorthand used by higher layers.
    pub fn solve(&self, a: &Mat, b: &Mat) -> Option<Mat> {
        solve_right(a, b).expect("well-formed system")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(Ring::Integers, rows)
    }

    #[test]
    fn smith_of_diag_2_3() {
        let nf = normal_form(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(nf.form, z(&[&[1, 0], &[0, 6]]));
        assert_eq!(nf.u.mul(&z(&[&[2, 0], &[0, 3]])).mul(&nf.v), nf.form);
    }

    #[test]
    fn identity_is_fixed() {
        for r in [
            Ring::Integers,
            Ring::Rationals,
            Ring::IntegersMod(6),
            Ring::PrimeField(3),
        ] {
            assert_eq!(normal_form(&Mat::identity(r, 3)).form, Mat::identity(r, 3));
        }
    }

    #[test]
    fn two_vanishes_over_f2() {
        let a = Mat::from_i64(Ring::PrimeField(2), &[&[2]]);
        assert_eq!(
            normal_form(&a).form,
            Mat::from_i64(Ring::PrimeField(2), &[&[0]])
        );
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve_right(&z(&[&[2]]), &z(&[&[4]])).unwrap(),
            Some(z(&[&[2]]))
        );
        assert_eq!(solve_right(&z(&[&[2]]), &z(&[&[3]])).unwrap(), None);
        let r = Ring::IntegersMod(4);
        let x = solve_right(&Mat::from_i64(r, &[&[2]]), &Mat::from_i64(r, &[&[2]])).unwrap();
        assert_eq!(x, Some(Mat::from_i64(r, &[&[1]])));
        assert!(solve_right(&z(&[&[1]]), &Mat::from_i64(r, &[&[1]])).is_err());
        assert!(solve_right(&z(&[&[1, 2]]), &z(&[&[1], &[1]])).is_err());
    }

    #[test]
    fn kernel_examples() {
        let q = Ring::Rationals;
        assert_eq!(
            kernel_gens(&Mat::from_i64(q, &[&[1, 1]])),
            Mat::from_i64(q, &[&[-1], &[1]])
        );
        let r = Ring::IntegersMod(4);
        assert_eq!(
            kernel_gens(&Mat::from_i64(r, &[&[2]])),
            Mat::from_i64(r, &[&[2]])
        );
        assert_eq!(
            kernel_gens(&Mat::zero(Ring::Integers, 0, 3)),
            Mat::identity(Ring::Integers, 3)
        );
    }

    fn det_is_unit(m: &Mat) -> bool {
        // invertibility check: m x = I solvable
        let id = Mat::identity(m.ring(), m.rows());
        solve_right(m, &id).unwrap().is_some()
    }

    fn ring_strategy() -> impl Strategy<Value = Ring> {
        prop_oneof![
            Just(Ring::Integers),
            Just(Ring::Rationals),
            Just(Ring::IntegersMod(4)),
            Just(Ring::IntegersMod(6)),
            Just(Ring::IntegersMod(12)),
            Just(Ring::PrimeField(3)),
        ]
    }

    fn mat_strategy() -> impl Strategy<Value = Mat> {
        (ring_strategy(), 0usize..4, 0usize..4).prop_flat_map(|(r, m, n)| {
            proptest::collection::vec(-9i64..10, m * n).prop_map(move |v| {
                let data = v.into_iter().map(|x| r.from_i64(x)).collect();
                Mat::from_scalars(r, m, n, data).unwrap()
            })
        })
    }

    fn vectors(ring: Ring, n: usize) -> Vec<Mat> {
        let elems = ring.elements().unwrap();
        let mut out = vec![Mat::zero(ring, n, 1)];
        for i in 0..n {
            let mut next = Vec::new();
            for v in &out {
                for e in &elems {
                    let mut w = v.clone();
                    w.set(i, 0, e.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn transforms_reproduce_form(a in mat_strategy()) {
            let nf = normal_form(&a);
            prop_assert_eq!(nf.u.mul(&a).mul(&nf.v), nf.form.clone());
            prop_assert!(det_is_unit(&nf.u));
            prop_assert!(det_is_unit(&nf.v));
        }

        #[test]
        fn solutions_are_sound(a in mat_strategy(), x in proptest::collection::vec(-5i64..6, 16)) {
            let r = a.ring();
            let cols = a.cols();
            let data = (0..cols).map(|i| r.from_i64(x[i])).collect();
            let x0 = Mat::from_scalars(r, cols, 1, data).unwrap();
            let b = a.mul(&x0);
            let sol = solve_right(&a, &b).unwrap();
            prop_assert!(sol.is_some());
            prop_assert_eq!(a.mul(&sol.unwrap()), b);
        }

        #[test]
        fn kernels_are_complete(a in mat_strategy()) {
            let r = a.ring();
            let k = kernel_gens(&a);
            prop_assert!(a.mul(&k).is_zero());
            if r.modulus().is_some() {
                for x in vectors(r, a.cols()) {
                    if a.mul(&x).is_zero() {
                        prop_assert!(solve_right(&k, &x).unwrap().is_some());
                    }
                }
            }
        }

        #[test]
        fn unsolvable_means_no_solution(a in mat_strategy(), b in proptest::collection::vec(-5i64..6, 4)) {
            let r = a.ring();
            if r.modulus().is_some() && a.cols() > 0 {
                let data = (0..a.rows()).map(|i| r.from_i64(b[i])).collect();
                let b = Mat::from_scalars(r, a.rows(), 1, data).unwrap();
                let found = vectors(r, a.cols()).into_iter().any(|x| a.mul(&x) == b);
                prop_assert_eq!(solve_right(&a, &b).unwrap().is_some(), found);
            }
        }
    }

    #[test]
    fn smith_diagonal_divisibility() {
        let nf = normal_form(&z(&[&[4, 6], &[10, 15]]));
        assert_eq!(nf.form, z(&[&[1, 0], &[0, 0]]));
        let nf = normal_form(&z(&[&[2, 4], &[6, 9]]));
        assert_eq!(nf.form, z(&[&[1, 0], &[0, 6]]));
    }
}
