use std::fmt;

use super::LinalgError;
use crate::exactmath::Field;

/// Dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    params: F::Params,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, params: &F::Params) -> Self {
        ExactMatrix {
            rows,
            cols,
            params: params.clone(),
            data: vec![F::zero(params); rows * cols],
        }
    }

    pub fn identity(n: usize, params: &F::Params) -> Self {
        let mut m = Self::zeros(n, n, params);
        for i in 0..n {
            m.data[i * n + i] = F::one(params);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        params: &F::Params,
        mut f: impl FnMut(usize, usize) -> F,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            params: params.clone(),
            data,
        }
    }

    pub fn from_rows(params: &F::Params, rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<F> = rows.into_iter().flatten().collect();
        let z = F::zero(params);
        for v in &data {
            v.check_compatible(&z)?;
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            params: params.clone(),
            data,
        })
    }

    pub fn from_i64_rows(params: &F::Params, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_rows(
            params,
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v, params)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn params(&self) -> &F::Params {
        &self.params
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.params, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), &self.params, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        F::zero(&self.params).check_compatible(&F::zero(&other.params))?;
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.params, |i, j| {
            self.get(i, j).add(other.get(i, j))
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.params, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        }))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_fn(self.rows, self.cols, &self.params, |i, j| {
            self.get(i, j).mul(c)
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        F::zero(&self.params).check_compatible(&F::zero(&other.params))?;
        let mut out = Self::zeros(self.rows, other.cols, &self.params);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} columns, vector of length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(&self.params), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    /// Reduced row echelon form and its pivot columns. Among the candidate
    /// pivots in a column the entry with the smallest size hint is used.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| m.get(i, c).size_hint());
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(&self.params); self.cols];
                v[fc] = F::one(&self.params);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(i, fc).neg();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} rows, right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, &self.params, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(&self.params); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<F, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::BadSize(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let mut acc = F::one(&self.params);
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(F::zero(&self.params));
            };
            if p != c {
                m.swap_rows(p, c);
                acc = acc.neg();
            }
            let piv = m.get(c, c).clone();
            acc = acc.mul(&piv);
            let inv = piv.inv()?;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).mul(&inv);
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(acc)
    }
}
