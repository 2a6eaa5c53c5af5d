use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMatrix, LinalgError};
use crate::exactmath::Rational;

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), c, |i, j| {
            BigInt::from(rows[i][j])
        }))
    }

    /// `k · I_n`.
    pub fn scalar(n: usize, k: i64) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(k)
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch("matrix difference".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        }))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn to_rational(&self) -> ExactMatrix<Rational> {
        ExactMatrix::from_fn(self.rows, self.cols, &(), |i, j| {
            Rational::from_integer(self.get(i, j).clone())
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            *self.at(r, j) = v;
        }
    }
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `d`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by_key(|&(i, j)| d.get(i, j).abs());
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                }
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let bad =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(d.get(t, t))));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    SmithForm {
        u,
        d,
        v,
        invariant_factors,
    }
}

/// `N − N²/2` with `N = m − I`, valid when `N³ = 0`.
pub fn unipotent_log(m: &IntMatrix) -> Result<ExactMatrix<Rational>, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::BadSize(format!(
            "logarithm of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.sub(&IntMatrix::identity(m.rows))?;
    let n2 = n.mul(&n)?;
    if !n2.mul(&n)?.is_zero() {
        return Err(LinalgError::NotUnipotent);
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    n.to_rational().sub(&n2.to_rational().scale(&half))
}

/// Number of `v ∈ (ℤ/k)ⁿ` with `m·v ≡ v (mod k)`, by enumeration.
pub fn count_fixed_vectors_mod(m: &IntMatrix, k: u32) -> Result<u64, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::BadSize(
            "fixed vectors of a non-square matrix".into(),
        ));
    }
    let n = m.rows;
    let total = (k as u64)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| LinalgError::BadSize(format!("{k}^{n} vectors is too many to enumerate")))?;
    let km = BigInt::from(k);
    let mut count = 0;
    let mut v = vec![BigInt::zero(); n];
    for idx in 0..total {
        let mut r = idx;
        for slot in v.iter_mut() {
            *slot = BigInt::from(r % k as u64);
            r /= k as u64;
        }
        let w = m.mul_vec(&v);
        if w.iter()
            .zip(&v)
            .all(|(a, b)| (a - b).mod_floor(&km).is_zero())
        {
            count += 1;
        }
    }
    Ok(count)
}
