use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::round::{add_down, add_up, mul_down, mul_up};

pub type RealVector = Vec<f64>;

/// Max absolute row sum, evaluated in plain floating point (diagnostic
/// and tolerance use only).
pub fn inf_norm(m: &RealMatrix) -> f64 {
    (0..m.n_rows())
        .map(|i| m.row(i).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        RealMatrix {
            n_rows,
            n_cols,
            data: vec![0.0; n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(RealMatrix {
            n_rows,
            n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    /// Plain round-to-nearest matrix-vector product.
    pub fn matvec(&self, x: &[f64]) -> Result<RealVector> {
        if x.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "matvec: {}x{} by {}",
                self.n_rows,
                self.n_cols,
                x.len()
            )));
        }
        Ok((0..self.n_rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Directed product with an interval vector; encloses every
    /// real-vector image.
    pub fn matvec_interval(&self, x: &IntervalVector) -> Result<IntervalVector> {
        if x.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "matvec: {}x{} by {}",
                self.n_rows,
                self.n_cols,
                x.len()
            )));
        }
        let mut out = Vec::with_capacity(self.n_rows);
        for i in 0..self.n_rows {
            let mut lo = 0.0f64;
            let mut hi = 0.0f64;
            for (j, &r) in self.row(i).iter().enumerate() {
                let e = &x[j];
                if r >= 0.0 {
                    lo = add_down(lo, mul_down(r, e.lo()));
                    hi = add_up(hi, mul_up(r, e.hi()));
                } else {
                    lo = add_down(lo, mul_down(r, e.hi()));
                    hi = add_up(hi, mul_up(r, e.lo()));
                }
            }
            out.push(Interval::new(lo, hi)?);
        }
        Ok(IntervalVector::new(out))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n_cols + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Fixed-length vector of intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalVector {
    data: Vec<Interval>,
}

impl IntervalVector {
    pub fn new(data: Vec<Interval>) -> Self {
        IntervalVector { data }
    }

    /// The symmetric box [-u, u] for a nonnegative bound vector u.
    pub fn symmetric_box(u: &[f64]) -> Result<Self> {
        let mut data = Vec::with_capacity(u.len());
        for &b in u {
            if !(b >= 0.0) {
                return Err(Error::Domain(format!(
                    "symmetric box needs nonnegative bounds, got {b}"
                )));
            }
            data.push(Interval::new(-b, b)?);
        }
        Ok(IntervalVector { data })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.data.iter()
    }

    pub fn mid(&self) -> RealVector {
        self.data.iter().map(Interval::mid).collect()
    }

    pub fn rad(&self) -> RealVector {
        self.data.iter().map(Interval::rad).collect()
    }

    pub fn mag(&self) -> RealVector {
        self.data.iter().map(Interval::mag).collect()
    }

    /// Componentwise intersection; `None` if any component is disjoint.
    pub fn intersect(&self, other: &IntervalVector) -> Option<IntervalVector> {
        if self.len() != other.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.data.iter().zip(other.iter()) {
            out.push(a.intersect(b)?);
        }
        Some(IntervalVector::new(out))
    }

    /// Componentwise subset test (equal lengths required).
    pub fn is_subset(&self, other: &IntervalVector) -> bool {
        self.len() == other.len()
            && self
                .data
                .iter()
                .zip(other.iter())
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        self.len() == x.len()
            && self.data.iter().zip(x).all(|(a, &v)| a.contains(v))
    }
}

impl Index<usize> for IntervalVector {
    type Output = Interval;

    #[inline]
    fn index(&self, i: usize) -> &Interval {
        &self.data[i]
    }
}

impl From<Vec<Interval>> for IntervalVector {
    fn from(data: Vec<Interval>) -> Self {
        IntervalVector::new(data)
    }
}

impl<'a> IntoIterator for &'a IntervalVector {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.data.iter()
    }
}

/// Dense row-major interval matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<Interval>,
}

impl IntervalMatrix {
    pub fn new(n_rows: usize, n_cols: usize, data: Vec<Interval>) -> Result<Self> {
        if data.len() != n_rows * n_cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix from {} entries",
                n_rows,
                n_cols,
                data.len()
            )));
        }
        Ok(IntervalMatrix {
            n_rows,
            n_cols,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Interval>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntervalMatrix {
            n_rows,
            n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Point identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Interval::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = Interval::ONE;
        }
        IntervalMatrix {
            n_rows: n,
            n_cols: n,
            data,
        }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Interval] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn mid(&self) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                m[(i, j)] = self[(i, j)].mid();
            }
        }
        m
    }

    pub fn rad(&self) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                m[(i, j)] = self[(i, j)].rad();
            }
        }
        m
    }

    pub fn mag(&self) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                m[(i, j)] = self[(i, j)].mag();
            }
        }
        m
    }

    /// Comparison matrix: diagonal entries are mignitudes, off-diagonal
    /// entries negated magnitudes. Both selections are exact endpoint
    /// picks, so the result needs no rounding and is a valid pessimistic
    /// input for M-matrix reasoning.
    pub fn comparison_matrix(&self) -> Result<RealMatrix> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        let mut m = RealMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                m[(i, j)] = if i == j {
                    self[(i, j)].mig()
                } else {
                    -self[(i, j)].mag()
                };
            }
        }
        Ok(m)
    }

    /// Interval matrix-vector product, outward-rounded row dots.
    pub fn matvec(&self, x: &IntervalVector) -> Result<IntervalVector> {
        if x.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "matvec: {}x{} by {}",
                self.n_rows,
                self.n_cols,
                x.len()
            )));
        }
        let mut out = Vec::with_capacity(self.n_rows);
        for i in 0..self.n_rows {
            let mut acc = Interval::ZERO;
            for j in 0..self.n_cols {
                acc = acc.add(&self[(i, j)].mul(&x[j])?)?;
            }
            out.push(acc);
        }
        Ok(IntervalVector::new(out))
    }

    /// Interval matrix product.
    pub fn matmul(&self, other: &IntervalMatrix) -> Result<IntervalMatrix> {
        if self.n_cols != other.n_rows {
            return Err(Error::Dimension(format!(
                "matmul: {}x{} by {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let mut data = Vec::with_capacity(self.n_rows * other.n_cols);
        for i in 0..self.n_rows {
            for j in 0..other.n_cols {
                let mut acc = Interval::ZERO;
                for k in 0..self.n_cols {
                    acc = acc.add(&self[(i, k)].mul(&other[(k, j)])?)?;
                }
                data.push(acc);
            }
        }
        IntervalMatrix::new(self.n_rows, other.n_cols, data)
    }

    /// R * self for a real matrix R, with directed rounding per entry.
    pub fn premul_real(&self, r: &RealMatrix) -> Result<IntervalMatrix> {
        if r.n_cols() != self.n_rows {
            return Err(Error::Dimension(format!(
                "premul: {}x{} by {}x{}",
                r.n_rows(),
                r.n_cols(),
                self.n_rows,
                self.n_cols
            )));
        }
        let mut data = Vec::with_capacity(r.n_rows() * self.n_cols);
        for i in 0..r.n_rows() {
            for j in 0..self.n_cols {
                let mut lo = 0.0f64;
                let mut hi = 0.0f64;
                for k in 0..self.n_rows {
                    let c = r[(i, k)];
                    let e = &self[(k, j)];
                    if c >= 0.0 {
                        lo = add_down(lo, mul_down(c, e.lo()));
                        hi = add_up(hi, mul_up(c, e.hi()));
                    } else {
                        lo = add_down(lo, mul_down(c, e.hi()));
                        hi = add_up(hi, mul_up(c, e.lo()));
                    }
                }
                data.push(Interval::new(lo, hi)?);
            }
        }
        IntervalMatrix::new(r.n_rows(), self.n_cols, data)
    }
}

impl Index<(usize, usize)> for IntervalMatrix {
    type Output = Interval;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Interval {
        &self.data[i * self.n_cols + j]
    }
}
