use std::collections::{BTreeSet, HashMap, HashSet};

use sha2::{Digest, Sha256};

use super::LinalgError;
use crate::exactmath::Field;
use crate::multipoly::{monomials_of_degree, Monomial, SparsePoly};

type Row<F> = Vec<(usize, F)>;

/// Sparse linear system `A·x = b`, rows kept sorted by column.
#[derive(Clone, Debug)]
pub struct SparseSystem<F: Field> {
    ncols: usize,
    params: F::Params,
    rows: Vec<Row<F>>,
    rhs: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSolution<F: Field> {
    pub rank: usize,
    /// `None` when the system is inconsistent.
    pub solution: Option<Vec<F>>,
    /// Largest number of stored entries seen during elimination.
    pub peak_fill: usize,
}

/// `row_k - f * row_i` by sorted merge.
fn axpy<F: Field>(row_k: &[(usize, F)], f: &F, row_i: &[(usize, F)]) -> Row<F> {
    let mut out = Vec::with_capacity(row_k.len() + row_i.len());
    let (mut a, mut b) = (0, 0);
    while a < row_k.len() || b < row_i.len() {
        let ca = row_k.get(a).map_or(usize::MAX, |e| e.0);
        let cb = row_i.get(b).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(row_k[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, row_i[b].1.mul(f).neg()));
            b += 1;
        } else {
            let v = row_k[a].1.sub(&row_i[b].1.mul(f));
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

impl<F: Field> SparseSystem<F> {
    pub fn new(ncols: usize, params: &F::Params) -> Self {
        SparseSystem {
            ncols,
            params: params.clone(),
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds one equation; entries may come in any order and repeat.
    pub fn push_row(
        &mut self,
        entries: impl IntoIterator<Item = (usize, F)>,
        rhs: F,
    ) -> Result<(), LinalgError> {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (c, v) in entries {
            if c >= self.ncols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column {c} of {}",
                    self.ncols
                )));
            }
            let e = acc.entry(c).or_insert_with(|| F::zero(&self.params));
            *e = e.add(&v);
        }
        let mut row: Row<F> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|e| e.0);
        self.rows.push(row);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Gaussian elimination picking the shortest remaining row, then its
    /// entry with the smallest size hint.
    pub fn solve(self) -> SparseSolution<F> {
        let SparseSystem {
            ncols,
            params,
            mut rows,
            mut rhs,
        } = self;
        let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
        let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut fill = 0;
        let mut consistent = true;
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                consistent &= rhs[i].is_zero();
                continue;
            }
            for (c, _) in row {
                col_rows[*c].insert(i);
            }
            queue.insert((row.len(), i));
            fill += row.len();
        }
        let mut peak_fill = fill;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        while let Some((_, i)) = queue.pop_first() {
            let (pc, piv) = rows[i]
                .iter()
                .min_by_key(|(c, v)| (v.size_hint(), *c))
                .map(|(c, v)| (*c, v.clone()))
                .expect("queued rows are non-empty");
            for (c, _) in &rows[i] {
                col_rows[*c].remove(&i);
            }
            let inv = piv.inv().expect("nonzero pivot");
            let mut targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            targets.sort_unstable();
            let pivot_row = std::mem::take(&mut rows[i]);
            for k in targets {
                let pos = rows[k]
                    .binary_search_by_key(&pc, |e| e.0)
                    .expect("column index is current");
                let f = rows[k][pos].1.mul(&inv);
                let new_row = axpy(&rows[k], &f, &pivot_row);
                queue.remove(&(rows[k].len(), k));
                for (c, _) in &rows[k] {
                    col_rows[*c].remove(&k);
                }
                for (c, _) in &new_row {
                    col_rows[*c].insert(k);
                }
                fill = fill + new_row.len() - rows[k].len();
                rhs[k] = rhs[k].sub(&f.mul(&rhs[i]));
                if new_row.is_empty() {
                    consistent &= rhs[k].is_zero();
                } else {
                    queue.insert((new_row.len(), k));
                }
                rows[k] = new_row;
            }
            peak_fill = peak_fill.max(fill);
            rows[i] = pivot_row;
            pivots.push((i, pc));
        }
        if !consistent {
            return SparseSolution {
                rank: pivots.len(),
                solution: None,
                peak_fill,
            };
        }
        let mut x = vec![F::zero(&params); ncols];
        for &(i, pc) in pivots.iter().rev() {
            let mut s = rhs[i].clone();
            let mut piv = None;
            for (c, v) in &rows[i] {
                if *c == pc {
                    piv = Some(v);
                } else if !x[*c].is_zero() {
                    s = s.sub(&v.mul(&x[*c]));
                }
            }
            x[pc] = s
                .div(piv.expect("pivot entry present"))
                .expect("nonzero pivot");
        }
        SparseSolution {
            rank: pivots.len(),
            solution: Some(x),
            peak_fill,
        }
    }
}

/// `target = Σ coeff · multiplier · generators[index]`, found in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate<F: Field> {
    pub target_fingerprint: String,
    pub generators_fingerprint: String,
    pub degree: u32,
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// `(generator index, multiplier, coefficient)` in column order.
    pub terms: Vec<(usize, Monomial, F)>,
}

impl<F: Field> MembershipCertificate<F> {
    /// Multiplies out and sums the certificate.
    pub fn replay(&self, generators: &[SparsePoly<F>]) -> Result<SparsePoly<F>, LinalgError> {
        let first = generators
            .first()
            .ok_or_else(|| LinalgError::BadSize("no generators".into()))?;
        let mut acc = SparsePoly::zero(first.nvars(), first.params());
        for (gi, mu, c) in &self.terms {
            let g = generators.get(*gi).ok_or_else(|| {
                LinalgError::BadSize(format!("generator index {gi} out of range"))
            })?;
            acc = acc.checked_add(&g.mul_term(mu, c)?)?;
        }
        Ok(acc)
    }

    /// Text triples `(index, multiplier, coefficient)` for reports.
    pub fn canonical_terms(&self, names: &[&str]) -> Vec<(usize, String, String)> {
        self.terms
            .iter()
            .map(|(gi, mu, c)| {
                let m = mu.render(names);
                (
                    *gi,
                    if m.is_empty() { "1".to_string() } else { m },
                    c.to_string(),
                )
            })
            .collect()
    }
}

/// SHA-256 over the fingerprints of a polynomial list, in order.
pub fn generators_fingerprint<F: Field>(generators: &[SparsePoly<F>]) -> String {
    let mut h = Sha256::new();
    for g in generators {
        h.update(g.fingerprint().as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Looks for `target` in the ideal of `generators` using only multipliers
/// of the exact complementary degree. A zero generator is treated as having
/// the common degree of the others, so it contributes empty columns.
///
/// `NotInDegree` only says no representation exists in this degree.
pub fn graded_membership<F: Field>(
    generators: &[SparsePoly<F>],
    target: &SparsePoly<F>,
) -> Result<MembershipCertificate<F>, LinalgError> {
    let nvars = target.nvars();
    for g in generators {
        if g.nvars() != nvars {
            return Err(crate::multipoly::PolyError::ArityMismatch {
                left: nvars,
                right: g.nvars(),
            }
            .into());
        }
        if !g.is_homogeneous() {
            return Err(LinalgError::InhomogeneousInput);
        }
    }
    if !target.is_homogeneous() {
        return Err(LinalgError::InhomogeneousInput);
    }
    let degree = target.degree().unwrap_or(0);
    let nonzero: BTreeSet<u32> = generators.iter().filter_map(SparsePoly::degree).collect();
    let common = (nonzero.len() == 1).then(|| *nonzero.first().unwrap());

    let row_monos = monomials_of_degree(nvars, degree);
    let row_of: HashMap<Monomial, usize> =
        row_monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    let mut col_entries: Vec<Vec<(usize, F)>> = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let Some(dg) = g.degree().or(common) else {
            continue;
        };
        if dg > degree {
            continue;
        }
        for mu in monomials_of_degree(nvars, degree - dg) {
            let mut entries = Vec::with_capacity(g.num_terms());
            for (m, c) in g.terms() {
                let prod = m
                    .checked_mul(&mu)
                    .ok_or(crate::multipoly::PolyError::ExponentOverflow)?;
                entries.push((row_of[&prod], c.clone()));
            }
            columns.push((gi, mu));
            col_entries.push(entries);
        }
    }

    let params = target.params().clone();
    let mut by_row: Vec<Vec<(usize, F)>> = vec![Vec::new(); row_monos.len()];
    for (j, entries) in col_entries.into_iter().enumerate() {
        for (r, c) in entries {
            by_row[r].push((j, c));
        }
    }
    let mut system = SparseSystem::new(columns.len(), &params);
    for (r, entries) in by_row.into_iter().enumerate() {
        system.push_row(entries, target.coeff(&row_monos[r]))?;
    }
    let (rows, cols) = (system.nrows(), system.ncols());
    let sol = system.solve();
    let x = sol.solution.ok_or(LinalgError::NotInDegree { degree })?;
    let terms = columns
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .map(|((gi, mu), c)| (gi, mu, c))
        .collect();
    let cert = MembershipCertificate {
        target_fingerprint: target.fingerprint(),
        generators_fingerprint: generators_fingerprint(generators),
        degree,
        field: F::field_name(&params),
        rows,
        cols,
        rank: sol.rank,
        terms,
    };
    if cert.replay(generators)? != *target {
        return Err(LinalgError::ReplayMismatch);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rational, Fp, Modulus, Rational};

    fn x(i: usize, n: usize) -> SparsePoly<Rational> {
        SparsePoly::var(i, n, &())
    }

    #[test]
    fn generator_is_its_own_certificate() {
        let g = vec![&x(0, 2) * &x(1, 2), x(1, 2).pow(2)];
        let cert = graded_membership(&g, &g[0]).unwrap();
        assert_eq!(cert.terms, vec![(0, Monomial::one(), rational(1, 1))]);
    }

    #[test]
    fn square_in_linear_ideal() {
        let g = vec![x(0, 2), x(1, 2)];
        let cert = graded_membership(&g, &x(0, 2).pow(2)).unwrap();
        assert_eq!(cert.terms, vec![(0, Monomial::var(0), rational(1, 1))]);
        assert_eq!(
            cert.canonical_terms(&["x0", "x1"]),
            vec![(0, "x0".to_string(), "1".to_string())]
        );
    }

    #[test]
    fn not_in_degree_and_inhomogeneous() {
        let g = vec![x(0, 2).pow(2)];
        assert_eq!(
            graded_membership(&g, &x(1, 2).pow(2)),
            Err(LinalgError::NotInDegree { degree: 2 })
        );
        let bad = &x(0, 2) + &x(1, 2).pow(2);
        assert_eq!(
            graded_membership(std::slice::from_ref(&bad), &x(0, 2)),
            Err(LinalgError::InhomogeneousInput)
        );
        assert_eq!(
            graded_membership(&g, &bad),
            Err(LinalgError::InhomogeneousInput)
        );
    }

    #[test]
    fn sparse_matches_dense_solution_over_gf() {
        let p = Modulus::new(73).unwrap();
        let f = |v: i64| Fp::with_modulus(v, p);
        let a = [[1, 2, 0, 5], [0, 3, 3, 1], [1, 5, 3, 6], [2, 0, 0, 1]];
        let x0 = [3, 1, 4, 1];
        let mut sys = SparseSystem::new(4, &p);
        for r in &a {
            let b: i64 = r.iter().zip(&x0).map(|(u, v)| u * v).sum();
            sys.push_row(r.iter().enumerate().map(|(j, &v)| (j, f(v))), f(b))
                .unwrap();
        }
        let sol = sys.solve();
        assert_eq!(sol.rank, 3);
        let x = sol.solution.unwrap();
        for r in &a {
            let lhs = r
                .iter()
                .zip(&x)
                .fold(f(0), |acc, (u, v)| acc.add(&f(*u).mul(v)));
            let b: i64 = r.iter().zip(&x0).map(|(u, v)| u * v).sum();
            assert_eq!(lhs, f(b));
        }
    }

    #[test]
    fn inconsistent_sparse_system() {
        let mut sys = SparseSystem::<Rational>::new(1, &());
        sys.push_row([(0, rational(1, 1))], rational(1, 1)).unwrap();
        sys.push_row([(0, rational(2, 1))], rational(3, 1)).unwrap();
        assert_eq!(sys.solve().solution, None);
    }
}
