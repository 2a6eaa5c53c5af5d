use std::fmt;

use num_bigint::BigInt;

use super::PolyError;
use crate::exactmath::{rational, Field, Rational};

/// `a₀ + a₁h + … + a_N h^N` modulo `h^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

fn q(n: i64) -> Rational {
    rational(n, 1)
}

impl TruncatedSeries {
    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn new(order: usize, coeffs: &[Rational]) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, q(0));
        TruncatedSeries { coeffs: c }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        let c: Vec<Rational> = coeffs.iter().map(|&v| q(v)).collect();
        Self::new(order, &c)
    }

    pub fn one(order: usize) -> Self {
        Self::from_ints(order, &[1])
    }

    /// `1 + d·h`.
    pub fn linear(order: usize, d: i64) -> Self {
        Self::from_ints(order, &[1, d])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(|| q(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<(), PolyError> {
        if self.order() != other.order() {
            return Err(PolyError::BadSize(format!(
                "series orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = vec![q(0); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Field::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, PolyError> {
        let a0 = &self.coeffs[0];
        if Field::is_zero(a0) {
            return Err(PolyError::NonUnitSeries);
        }
        let inv0 = Field::inv(a0)?;
        let n = self.order();
        let mut b = vec![q(0); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut s = q(0);
            for i in 1..=k {
                s += &self.coeffs[i] * &b[k - i];
            }
            b[k] = -(s * &inv0);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// Integer power; negative exponents go through [`Self::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Value at `h = 1` of the truncated polynomial.
    pub fn coefficient_sum(&self) -> Rational {
        self.coeffs.iter().fold(q(0), |acc, c| acc + c)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*h"),
                _ => format!("{c}*h^{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Numerical invariants of a smooth complete intersection in `ℙⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiInvariants {
    pub dimension: usize,
    pub degree: BigInt,
    /// `c_i` as multiples of `h^i`, for `i = 0..=dimension`.
    pub chern_classes: Vec<Rational>,
    /// `c_i · h^{dim-i}` integrated over the variety.
    pub chern_numbers: Vec<Rational>,
    /// `c₂ · h^{dim-2}`; absent below dimension 2.
    pub c2_degree: Option<Rational>,
    pub euler: Rational,
    /// Only for curves.
    pub genus: Option<Rational>,
}

/// Reads the Chern data off `(1+h)^{n+1} · Π(1+dᵢh)^{-1}`.
pub fn ci_invariants(n: usize, degrees: &[u32]) -> Result<CiInvariants, PolyError> {
    if degrees.is_empty() || degrees.len() > n {
        return Err(PolyError::BadDimension(format!(
            "{} hypersurfaces in P^{n}",
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(PolyError::BadDimension("degree 0 hypersurface".into()));
    }
    let dim = n - degrees.len();
    let mut c = TruncatedSeries::linear(dim, 1).pow(n as i64 + 1)?;
    for &d in degrees {
        c = c.mul(&TruncatedSeries::linear(dim, d as i64).inverse()?)?;
    }
    let degree: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let deg_q = Rational::from_integer(degree.clone());
    let chern_numbers: Vec<Rational> = c.coeffs().iter().map(|ci| ci * &deg_q).collect();
    let euler = chern_numbers[dim].clone();
    let genus = (dim == 1).then(|| (q(2) - &euler) / q(2));
    Ok(CiInvariants {
        dimension: dim,
        degree,
        c2_degree: chern_numbers.get(2).cloned(),
        chern_classes: c.coeffs().to_vec(),
        chern_numbers,
        euler,
        genus,
    })
}

/// Numerator of the Hilbert series `Π(1 − t^{dᵢ}) / (1 − t)^{n+1}` once the
/// denominator is reduced to `(1 − t)^{dim+1}`. Its value at `t = 1` is the
/// degree.
pub fn hilbert_numerator(degrees: &[u32]) -> Result<TruncatedSeries, PolyError> {
    let top: usize = degrees.iter().map(|&d| d.saturating_sub(1) as usize).sum();
    let mut num = TruncatedSeries::one(top);
    for &d in degrees {
        if d == 0 {
            return Err(PolyError::BadDimension("degree 0 hypersurface".into()));
        }
        let mut f = vec![1i64];
        f.resize(d as usize + 1, 0);
        f[d as usize] = -1;
        num = num.mul(&TruncatedSeries::from_ints(top, &f))?;
    }
    num.mul(&TruncatedSeries::from_ints(top, &[1, -1]).pow(-(degrees.len() as i64))?)
}
