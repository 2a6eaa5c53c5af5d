//! Sparse multivariate polynomials over any [`Field`], matrices of them,
//! and truncated univariate series for Chern and Hilbert bookkeeping.

mod matrix;
mod monomial;
mod series;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactmath::{ArithError, Field};

pub use matrix::{k_subsets, PolyMatrix};
pub use monomial::{monomials_of_degree, Monomial, MAX_VARS};
pub use series::{ci_invariants, hilbert_numerator, CiInvariants, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("variable map is not invertible: {0}")]
    NonInvertibleMap(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("series has zero constant term")]
    NonUnitSeries,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Polynomial in `nvars` variables. Zero coefficients are never stored;
/// terms are kept in graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly<F: Field> {
    nvars: usize,
    params: F::Params,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> SparsePoly<F> {
    pub fn zero(nvars: usize, params: &F::Params) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        SparsePoly {
            nvars,
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, nvars: usize) -> Self {
        let mut p = Self::zero(nvars, &c.params());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(nvars: usize, params: &F::Params) -> Self {
        Self::constant(F::one(params), nvars)
    }

    /// The variable `x_i`.
    pub fn var(i: usize, nvars: usize, params: &F::Params) -> Self {
        assert!(
            i < nvars,
            "variable index {i} out of range for {nvars} variables"
        );
        Self::term(Monomial::var(i), F::one(params), nvars)
    }

    pub fn term(m: Monomial, c: F, nvars: usize) -> Self {
        debug_assert!(m.support_within(nvars));
        let mut p = Self::zero(nvars, &c.params());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(
        nvars: usize,
        params: &F::Params,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Self {
        let mut p = Self::zero(nvars, params);
        for (m, c) in terms {
            assert!(
                m.support_within(nvars),
                "monomial uses a variable beyond x{}",
                nvars - 1
            );
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn params(&self) -> &F::Params {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading (grevlex-largest) monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.params))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.params != other.params {
            let (a, b) = (F::zero(&self.params), F::zero(&other.params));
            a.check_compatible(&b)?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SparsePoly {
            nvars: self.nvars,
            params: self.params.clone(),
            terms: acc,
        })
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Result<Self, PolyError> {
        if c.is_zero() {
            return Ok(Self::zero(self.nvars, &self.params));
        }
        let mut terms = BTreeMap::new();
        for (mm, cc) in &self.terms {
            terms.insert(
                mm.checked_mul(m).ok_or(PolyError::ExponentOverflow)?,
                cc.mul(c),
            );
        }
        Ok(SparsePoly {
            nvars: self.nvars,
            params: self.params.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, &self.params);
        }
        SparsePoly {
            nvars: self.nvars,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, &self.params);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn eval(&self, point: &[F]) -> Result<F, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        if let Some(v) = point.first() {
            v.check_compatible(&F::zero(&self.params))?;
        }
        let mut acc = F::zero(&self.params);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents(self.nvars).iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]`. All images must share one arity, which
    /// becomes the arity of the result.
    pub fn substitute(&self, images: &[SparsePoly<F>]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let target = images.first().map_or(self.nvars, |p| p.nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::ArityMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        // cache powers per variable
        let mut powers: Vec<Vec<SparsePoly<F>>> = images
            .iter()
            .map(|p| vec![Self::one(target, &self.params), p.clone()])
            .collect();
        let mut acc = Self::zero(target, &self.params);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), target);
            for (i, &e) in m.exponents(self.nvars).iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][e as usize])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars, &self.params);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let c = c.mul(&F::from_i64(e as i64, &self.params));
            out.add_term(m.with_exp(i, e - 1), &c);
        }
        out
    }

    /// Maps coefficients into another field, e.g. reduction mod p.
    pub fn map_coeffs<G: Field>(
        &self,
        params: &G::Params,
        f: impl Fn(&F) -> Result<G, ArithError>,
    ) -> Result<SparsePoly<G>, ArithError> {
        let mut out = SparsePoly::<G>::zero(self.nvars, params);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a ring with more variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self, PolyError> {
        if nvars < self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: nvars,
            });
        }
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        Ok(SparsePoly {
            nvars,
            params: self.params.clone(),
            terms: self.terms.clone(),
        })
    }

    pub fn apply_variable_map(&self, map: &VariableMap<F>) -> Result<Self, PolyError> {
        if map.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: map.len(),
            });
        }
        let mut out = Self::zero(self.nvars, &self.params);
        for (m, c) in &self.terms {
            let mut exps = [0u8; MAX_VARS];
            let mut coeff = c.clone();
            for (i, &e) in m.exponents(self.nvars).iter().enumerate() {
                if e > 0 {
                    exps[map.perm[i]] = e;
                    coeff = coeff.mul(&map.scalars[i].pow(e as u64));
                }
            }
            out.add_term(Monomial::from_array(exps), &coeff);
        }
        Ok(out)
    }

    /// Canonical text: grevlex-descending terms, `*` products, `^` powers.
    pub fn render(&self, names: &[&str]) -> String {
        assert!(names.len() >= self.nvars, "need a name for each variable");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let mono = m.render(&names[..self.nvars]);
            let cs = c.to_string();
            let piece = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            if k == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }

    /// SHA-256 of the canonical rendering with default variable names.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Default variable names `x0, x1, …`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

impl<F: Field> fmt::Display for SparsePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

impl<F: Field> Add for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn add(self, rhs: Self) -> SparsePoly<F> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<F: Field> Sub for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn sub(self, rhs: Self) -> SparsePoly<F> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<F: Field> Mul for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn mul(self, rhs: Self) -> SparsePoly<F> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<F: Field> Neg for &SparsePoly<F> {
    type Output = SparsePoly<F>;
    fn neg(self) -> SparsePoly<F> {
        SparsePoly {
            nvars: self.nvars,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }
}

/// Monomial substitution `x_i ↦ scalars[i] · x_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableMap<F: Field> {
    perm: Vec<usize>,
    scalars: Vec<F>,
}

impl<F: Field> VariableMap<F> {
    pub fn new(perm: Vec<usize>, scalars: Vec<F>) -> Result<Self, PolyError> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(PolyError::ArityMismatch {
                left: n,
                right: scalars.len(),
            });
        }
        let mut seen = vec![false; n];
        for &j in &perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(PolyError::NonInvertibleMap(format!(
                    "{perm:?} is not a permutation"
                )));
            }
        }
        if let Some(i) = scalars.iter().position(Field::is_zero) {
            return Err(PolyError::NonInvertibleMap(format!(
                "scalar for x{i} is zero"
            )));
        }
        Ok(VariableMap { perm, scalars })
    }

    pub fn identity(n: usize, params: &F::Params) -> Self {
        VariableMap {
            perm: (0..n).collect(),
            scalars: vec![F::one(params); n],
        }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> (usize, &F) {
        (self.perm[i], &self.scalars[i])
    }

    /// `self ∘ other` as ring maps: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, PolyError> {
        if self.len() != other.len() {
            return Err(PolyError::ArityMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let scalars = other
            .scalars
            .iter()
            .zip(&other.perm)
            .map(|(s, &j)| s.mul(&self.scalars[j]))
            .collect();
        Ok(VariableMap { perm, scalars })
    }

    /// Extends the map by the identity on `extra` trailing variables.
    pub fn extended(&self, extra: usize, params: &F::Params) -> Self {
        let n = self.len();
        let mut perm = self.perm.clone();
        perm.extend(n..n + extra);
        let mut scalars = self.scalars.clone();
        scalars.extend(std::iter::repeat_n(F::one(params), extra));
        VariableMap { perm, scalars }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rational, Fp, Modulus, Rational};

    type P = SparsePoly<Rational>;

    fn x(i: usize, n: usize) -> P {
        P::var(i, n, &())
    }

    #[test]
    fn square_of_binomial() {
        let s = &x(0, 2) + &x(1, 2);
        let sq = s.pow(2);
        assert_eq!(sq.to_string(), "x0^2 + 2*x0*x1 + x1^2");
        assert_eq!(sq.degree(), Some(2));
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn rendering_signs_and_constants() {
        let p =
            &(&x(0, 3).scale(&rational(-3, 2)) - &x(2, 3).pow(3)) + &P::constant(rational(5, 1), 3);
        assert_eq!(p.to_string(), "-x2^3 - 3/2*x0 + 5");
        assert_eq!(P::zero(3, &()).to_string(), "0");
        assert_eq!(p.render(&["a", "b", "c"]), "-c^3 - 3/2*a + 5");
    }

    #[test]
    fn arity_mismatch() {
        assert_eq!(
            x(0, 2).checked_add(&x(0, 3)),
            Err(PolyError::ArityMismatch { left: 2, right: 3 })
        );
        assert!(x(0, 2).eval(&[rational(1, 1)]).is_err());
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = SparsePoly::constant(Fp::new(1, 17).unwrap(), 2);
        let b = SparsePoly::constant(Fp::new(1, 41).unwrap(), 2);
        assert!(matches!(
            a.checked_mul(&b),
            Err(PolyError::Arith(ArithError::ModulusMismatch { .. }))
        ));
    }

    #[test]
    fn substitution_and_partials() {
        // f = x0^2 x1 ; substitute x0 -> x0 + x1, x1 -> 2 x1
        let f = &x(0, 2).pow(2) * &x(1, 2);
        let g = f
            .substitute(&[&x(0, 2) + &x(1, 2), x(1, 2).scale(&rational(2, 1))])
            .unwrap();
        assert_eq!(g.to_string(), "2*x0^2*x1 + 4*x0*x1^2 + 2*x1^3");
        assert_eq!(f.partial(0).to_string(), "2*x0*x1");
        assert_eq!(f.partial(1).to_string(), "x0^2");
        assert!(f.partial(0).partial(0).partial(0).is_zero());
    }

    #[test]
    fn variable_maps() {
        let n = 3;
        let shift = VariableMap::new(vec![2, 0, 1], vec![rational(1, 1); 3]).unwrap();
        let f = &x(0, n) * &x(1, n).pow(2);
        assert_eq!(
            f.apply_variable_map(&shift).unwrap(),
            &x(2, n) * &x(0, n).pow(2)
        );
        let thrice = shift.compose(&shift).unwrap().compose(&shift).unwrap();
        assert_eq!(thrice, VariableMap::identity(n, &()));
        assert!(VariableMap::new(vec![0, 0, 1], vec![rational(1, 1); 3]).is_err());
        assert!(VariableMap::new(
            vec![0, 1, 2],
            vec![rational(1, 1), rational(0, 1), rational(1, 1)]
        )
        .is_err());
    }

    #[test]
    fn composition_matches_sequential_application() {
        let n = 3;
        let a = VariableMap::new(
            vec![1, 2, 0],
            vec![rational(2, 1), rational(1, 1), rational(-1, 1)],
        )
        .unwrap();
        let b = VariableMap::new(
            vec![0, 2, 1],
            vec![rational(1, 3), rational(5, 1), rational(1, 1)],
        )
        .unwrap();
        let f = &(&x(0, n).pow(2) * &x(1, n)) + &x(2, n).scale(&rational(7, 1));
        // a(b(f)) = (a∘b)(f)
        let seq = f
            .apply_variable_map(&b)
            .unwrap()
            .apply_variable_map(&a)
            .unwrap();
        let comp = f.apply_variable_map(&a.compose(&b).unwrap()).unwrap();
        assert_eq!(seq, comp);
        for i in 0..n {
            let xi = x(i, n);
            let lhs = xi.apply_variable_map(&a.compose(&b).unwrap()).unwrap();
            let (j, s) = b.image(i);
            let rhs = x(j, n).apply_variable_map(&a).unwrap().scale(s);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eval_over_prime_field() {
        let m = Modulus::new(41).unwrap();
        let f = SparsePoly::<Fp>::var(0, 2, &m).pow(3);
        let v = [Fp::new(5, 41).unwrap(), Fp::new(1, 41).unwrap()];
        assert_eq!(f.eval(&v).unwrap().value(), 125 % 41);
    }

    #[test]
    fn fingerprint_is_stable() {
        let f = &x(0, 2) + &x(1, 2);
        assert_eq!(f.fingerprint(), (&x(1, 2) + &x(0, 2)).fingerprint());
        assert_eq!(f.fingerprint().len(), 64);
    }
}
