use super::{PolyError, SparsePoly};
use crate::exactmath::Field;

/// All `k`-element subsets of `0..n`, each sorted, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rectangular matrix of polynomials sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<SparsePoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> SparsePoly<F>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        let m = PolyMatrix {
            rows,
            cols,
            entries,
        };
        m.check_ring().expect("entries must share one ring");
        m
    }

    pub fn from_rows(rows: Vec<Vec<SparsePoly<F>>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::BadSize("ragged rows".into()));
        }
        let m = PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        };
        m.check_ring()?;
        Ok(m)
    }

    fn check_ring(&self) -> Result<(), PolyError> {
        if let Some(first) = self.entries.first() {
            for e in &self.entries[1..] {
                if e.nvars() != first.nvars() {
                    return Err(PolyError::ArityMismatch {
                        left: first.nvars(),
                        right: e.nvars(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let pick = |i: usize| {
            if i == a {
                b
            } else if i == b {
                a
            } else {
                i
            }
        };
        Self::from_fn(self.rows, self.cols, |i, j| self.get(pick(i), j).clone())
    }

    pub fn map(
        &self,
        f: impl Fn(&SparsePoly<F>) -> Result<SparsePoly<F>, PolyError>,
    ) -> Result<Self, PolyError> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        let m = PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        };
        m.check_ring()?;
        Ok(m)
    }

    /// `m + mᵀ = 0`, which also forces a zero diagonal outside characteristic 2.
    pub fn is_skew_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (0..i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero())
            })
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> Result<SparsePoly<F>, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::BadSize(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor_det(&rows, &cols)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<SparsePoly<F>, PolyError> {
        let template = self.entries.first().expect("non-empty matrix");
        match rows.len() {
            0 => Ok(SparsePoly::one(template.nvars(), template.params())),
            1 => Ok(self.get(rows[0], cols[0]).clone()),
            2 => (self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]))
                .checked_sub(&(self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]))),
            _ => {
                let mut acc = SparsePoly::zero(template.nvars(), template.params());
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.checked_mul(&self.minor_det(&rows[1..], &sub_cols)?)?;
                    acc = if k % 2 == 0 {
                        acc.checked_add(&term)?
                    } else {
                        acc.checked_sub(&term)?
                    };
                }
                Ok(acc)
            }
        }
    }

    /// All `k × k` minors, ordered by row subset then column subset, each
    /// lexicographically.
    pub fn minors(&self, k: usize) -> Result<Vec<SparsePoly<F>>, PolyError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(PolyError::BadSize(format!(
                "{k}x{k} minors of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let row_sets = k_subsets(self.rows, k);
        let col_sets = k_subsets(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.minor_det(rs, cs)?);
            }
        }
        Ok(out)
    }

    /// `m01·m23 − m02·m13 + m03·m12` for a skew-symmetric 4×4 matrix.
    pub fn pfaffian4(&self) -> Result<SparsePoly<F>, PolyError> {
        if self.rows != 4 || self.cols != 4 {
            return Err(PolyError::BadSize(format!(
                "Pfaffian of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if !self.is_skew_symmetric() {
            return Err(PolyError::NotSkewSymmetric);
        }
        let g = |i, j| self.get(i, j);
        let a = g(0, 1) * g(2, 3);
        let b = g(0, 2) * g(1, 3);
        let c = g(0, 3) * g(1, 2);
        Ok(&(&a - &b) + &c)
    }

    /// Evaluates every entry; returns rows of field values.
    pub fn eval_at(&self, point: &[F]) -> Result<Vec<Vec<F>>, PolyError> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rational, Rational};

    fn c(v: i64) -> SparsePoly<Rational> {
        SparsePoly::constant(rational(v, 1), 2)
    }

    fn consts(rows: &[[i64; 4]; 4]) -> PolyMatrix<Rational> {
        PolyMatrix::from_fn(4, 4, |i, j| c(rows[i][j]))
    }

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(4, 2)[0], vec![0, 1]);
        assert_eq!(k_subsets(4, 2)[5], vec![2, 3]);
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn symplectic_pfaffian() {
        let j = consts(&[[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);
        assert_eq!(j.pfaffian4().unwrap(), c(1));
        assert_eq!(j.det().unwrap(), c(1));
    }

    #[test]
    fn non_skew_rejected() {
        let m = consts(&[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);
        assert_eq!(m.pfaffian4(), Err(PolyError::NotSkewSymmetric));
        let d = consts(&[[1, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);
        assert_eq!(d.pfaffian4(), Err(PolyError::NotSkewSymmetric));
    }

    #[test]
    fn minors_of_identity() {
        let id = consts(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        let m2 = id.minors(2).unwrap();
        assert_eq!(m2.len(), 36);
        let ones = m2.iter().filter(|p| **p == c(1)).count();
        assert_eq!(ones, 6);
        assert!(m2.iter().all(|p| p.is_zero() || *p == c(1)));
        assert!(id.minors(5).is_err());
        assert_eq!(id.minors(4).unwrap(), vec![c(1)]);
    }

    #[test]
    fn determinant_of_small_integer_matrix() {
        let m = consts(&[[2, 0, 1, 3], [1, 1, 0, 0], [0, 4, 1, 2], [3, 0, 0, 1]]);
        // cofactor expansion along row 1 gives 3
        assert_eq!(m.det().unwrap(), c(3));
    }
}
