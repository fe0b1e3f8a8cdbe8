use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::{Ring, Scalar};
use super::CoeffError;

/// Dense matrix over a supported ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        Mat {
            ring,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// Build from row vectors of already-canonical scalars.
    pub fn from_scalars(
        ring: Ring,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Mat, CoeffError> {
        if data.len() != rows * cols {
            return Err(CoeffError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data
            .into_iter()
            .map(|v| ring.reduce(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Mat::zero(ring, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = ring.from_i64(*v);
            }
        }
        m
    }

    pub fn scalar(ring: Ring, v: Scalar) -> Mat {
        Mat::from_scalars(ring, 1, 1, vec![v]).expect("scalar in ring")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.ring.reduce(v).expect("entry in ring");
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_ring(&self, other: &Mat) -> Result<(), CoeffError> {
        if self.ring != other.ring {
            return Err(CoeffError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, CoeffError> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(CoeffError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = self.ring;
        let mut out = Mat::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.try_mul(other).expect("matrix product")
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat, CoeffError> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.map(|r, v| r.neg(v))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        self.map(|r, v| r.mul(c, v))
    }

    fn map(&self, f: impl Fn(Ring, &Scalar) -> Scalar) -> Mat {
        Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| f(self.ring, v)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Mat::zero(self.ring, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut out = Mat::zero(self.ring, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r, c)`.
    pub fn paste(&mut self, r: usize, c: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut out = Mat::zero(self.ring, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zero(self.ring, self.rows, cols.len());
        for i in 0..self.rows {
            for (oj, &j) in cols.iter().enumerate() {
                out.data[i * out.cols + oj] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    pub(crate) fn row_op(
        &mut self,
        i: usize,
        k: usize,
        s: &Scalar,
        t: &Scalar,
        u: &Scalar,
        v: &Scalar,
    ) {
        // rows (i, k) <- (s r_i + t r_k, u r_i + v r_k)
        let r = self.ring;
        for j in 0..self.cols {
            let a = self.get(i, j).clone();
            let b = self.get(k, j).clone();
            self.data[i * self.cols + j] = r.add(&r.mul(s, &a), &r.mul(t, &b));
            self.data[k * self.cols + j] = r.add(&r.mul(u, &a), &r.mul(v, &b));
        }
    }

    pub(crate) fn col_op(
        &mut self,
        i: usize,
        k: usize,
        s: &Scalar,
        t: &Scalar,
        u: &Scalar,
        v: &Scalar,
    ) {
        let r = self.ring;
        for row in 0..self.rows {
            let a = self.get(row, i).clone();
            let b = self.get(row, k).clone();
            self.data[row * self.cols + i] = r.add(&r.mul(s, &a), &r.mul(t, &b));
            self.data[row * self.cols + k] = r.add(&r.mul(u, &a), &r.mul(v, &b));
        }
    }

    pub(crate) fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for row in 0..self.rows {
            self.data.swap(row * self.cols + i, row * self.cols + k);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.get(i, j));
            self.data[i * self.cols + j] = v;
        }
    }

    /// Add `c` times row `k` to row `i`.
    pub(crate) fn add_row(&mut self, i: usize, k: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self
                .ring
                .add(self.get(i, j), &self.ring.mul(c, self.get(k, j)));
            self.data[i * self.cols + j] = v;
        }
    }

    /// Coerce entries into another ring (e.g. `Z -> Q` or `Z -> Z/n`).
    pub fn change_ring(&self, ring: Ring) -> Result<Mat, CoeffError> {
        Mat::from_scalars(ring, self.rows, self.cols, self.data.clone())
    }

    /// Rows of canonical entry strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ring.format(self.get(i, j)))
                    .collect()
            })
            .collect()
    }

    pub fn from_strings(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: &[Vec<String>],
    ) -> Result<Mat, CoeffError> {
        if entries.len() != rows {
            return Err(CoeffError::Dimension(format!(
                "expected {rows} rows, got {}",
                entries.len()
            )));
        }
        let mut m = Mat::zero(ring, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(CoeffError::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                m.data[i * cols + j] = ring.parse_scalar(e)?;
            }
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatRepr {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Mat, D::Error> {
        let r = MatRepr::deserialize(d)?;
        Mat::from_strings(r.ring, r.rows, r.cols, &r.entries).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = Mat::from_i64(Ring::Integers, &[&[1, 2], &[3, 4]]);
        let b = Mat::from_i64(Ring::Integers, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.mul(&b),
            Mat::from_i64(Ring::Integers, &[&[2, 1], &[4, 3]])
        );
        assert_eq!(a.transpose().transpose(), a);
        let e = Mat::zero(Ring::Integers, 0, 3);
        assert_eq!(e.transpose().mul(&e), Mat::zero(Ring::Integers, 3, 3));
    }

    #[test]
    fn json_round_trip() {
        let a = Mat::from_i64(Ring::IntegersMod(6), &[&[-1, 7]]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(
            js,
            r#"{"ring":"Z/6","rows":1,"cols":2,"entries":[["5","1"]]}"#
        );
        assert_eq!(serde_json::from_str::<Mat>(&js).unwrap(), a);
    }
}
