//! The Heisenberg group H₈ of order 512 and its actions on variables,
//! polynomials and points of ℙ⁷.
//!
//! `σᵃτᵇξᶜ` acts on the coordinate ring by `xᵢ ↦ ξ^{c−b·i} x_{i−a}`, indices
//! mod 8. Points transform by the inverse substitution, so that
//! `eval(g·q, g·v) = eval(q, v)` holds exactly.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactmath::Field;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::multipoly::{PolyError, SparsePoly, VariableMap};

pub const N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisError {
    #[error("{field} does not contain xi^{power}")]
    MissingRootOfUnity { field: String, power: u8 },
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `σᵃ τᵇ ξᶜ` with exponents mod 8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergElement {
    a: u8,
    b: u8,
    c: u8,
}

impl HeisenbergElement {
    pub const IDENTITY: Self = HeisenbergElement { a: 0, b: 0, c: 0 };
    pub const SIGMA: Self = HeisenbergElement { a: 1, b: 0, c: 0 };
    pub const TAU: Self = HeisenbergElement { a: 0, b: 1, c: 0 };
    pub const XI: Self = HeisenbergElement { a: 0, b: 0, c: 1 };

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        let r = |v: i64| v.rem_euclid(N as i64) as u8;
        HeisenbergElement {
            a: r(a),
            b: r(b),
            c: r(c),
        }
    }

    pub fn exponents(&self) -> (u8, u8, u8) {
        (self.a, self.b, self.c)
    }

    pub fn is_central(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        let (a2, b2, c2) = (other.a as i64, other.b as i64, other.c as i64);
        Self::new(a + a2, b + b2, c + c2 + b * a2)
    }

    pub fn inverse(&self) -> Self {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        Self::new(-a, -b, -c + a * b)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::IDENTITY;
        for _ in 0..e % 512 {
            acc = acc.compose(self);
        }
        acc
    }

    /// `g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Exponent of `ξ` multiplying `x_{i−a}` in the image of `xᵢ`.
    fn scalar_exponent(&self, i: usize) -> i64 {
        self.c as i64 - self.b as i64 * i as i64
    }

    /// The substitution on `x₀..x₇`.
    pub fn variable_map<F: Field>(&self, params: &F::Params) -> Result<VariableMap<F>, HeisError> {
        let mut perm = Vec::with_capacity(N);
        let mut scalars = Vec::with_capacity(N);
        for i in 0..N {
            perm.push((i + N - self.a as usize) % N);
            scalars.push(xi::<F>(self.scalar_exponent(i), params)?);
        }
        Ok(VariableMap::new(perm, scalars)?)
    }

    /// `g·p`. Variables past the eighth are left alone.
    pub fn act_on_poly<F: Field>(&self, p: &SparsePoly<F>) -> Result<SparsePoly<F>, HeisError> {
        if p.nvars() < N {
            return Err(HeisError::ArityMismatch {
                expected: N,
                got: p.nvars(),
            });
        }
        let map = self
            .variable_map::<F>(p.params())?
            .extended(p.nvars() - N, p.params());
        Ok(p.apply_variable_map(&map)?)
    }

    /// `(g·v)_j = ξ^{−(c − b(j+a))} v_{j+a}`.
    pub fn act_on_point<F: Field>(&self, v: &ProjPoint<F>) -> Result<ProjPoint<F>, HeisError> {
        let params = v.coords[0].params();
        let mut out = Vec::with_capacity(N);
        for j in 0..N {
            let src = (j + self.a as usize) % N;
            let s = xi::<F>(-self.scalar_exponent(src), &params)?;
            out.push(s.mul(&v.coords[src]));
        }
        ProjPoint::new(out)
    }
}

impl fmt::Display for HeisenbergElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma^{} tau^{} xi^{}", self.a, self.b, self.c)
    }
}

fn xi<F: Field>(k: i64, params: &F::Params) -> Result<F, HeisError> {
    F::xi_pow(k, params).ok_or_else(|| HeisError::MissingRootOfUnity {
        field: F::field_name(params),
        power: k.rem_euclid(8) as u8,
    })
}

/// All 512 normal forms, ordered by `(a, b, c)`.
pub fn enumerate_group() -> Vec<HeisenbergElement> {
    let mut out = Vec::with_capacity(512);
    for a in 0..N as i64 {
        for b in 0..N as i64 {
            for c in 0..N as i64 {
                out.push(HeisenbergElement::new(a, b, c));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterQuotient {
    pub center: Vec<HeisenbergElement>,
    pub commutators_central: bool,
    /// Invariant factors of the quotient by the center.
    pub invariant_factors: Vec<BigInt>,
}

impl CenterQuotient {
    pub fn quotient_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// The center by exhaustive commutation, and the quotient structure from
/// the relation lattice `{(a, b) : σᵃτᵇ central}` of the map `ℤ² → H₈/Z`.
pub fn center_and_quotient() -> CenterQuotient {
    let group = enumerate_group();
    let center: Vec<HeisenbergElement> = group
        .iter()
        .copied()
        .filter(|z| group.iter().all(|g| z.compose(g) == g.compose(z)))
        .collect();
    let central: HashSet<HeisenbergElement> = center.iter().copied().collect();
    let commutators_central = group
        .iter()
        .all(|g| group.iter().all(|h| central.contains(&g.commutator(h))));
    let mut relations = vec![vec![N as i64, 0], vec![0, N as i64]];
    for a in 0..N as i64 {
        for b in 0..N as i64 {
            let g = HeisenbergElement::SIGMA
                .pow(a as u64)
                .compose(&HeisenbergElement::TAU.pow(b as u64));
            if (a, b) != (0, 0) && central.contains(&g) {
                relations.push(vec![a, b]);
            }
        }
    }
    let m = IntMatrix::from_i64_rows(&relations).expect("rectangular relations");
    let invariant_factors = smith_normal_form(&m).invariant_factors;
    CenterQuotient {
        center,
        commutators_central,
        invariant_factors,
    }
}

/// Point of ℙ⁷; equality and hashing are projective.
#[derive(Clone, Debug)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(coords: Vec<F>) -> Result<Self, HeisError> {
        if coords.len() != N {
            return Err(HeisError::ArityMismatch {
                expected: N,
                got: coords.len(),
            });
        }
        if coords.iter().all(Field::is_zero) {
            return Err(HeisError::ZeroPoint);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn canonical(&self) -> Vec<F> {
        let lead = self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero point");
        let inv = lead.inv().expect("nonzero lead");
        self.coords.iter().map(|c| c.mul(&inv)).collect()
    }
}

impl<F: Field> PartialEq for ProjPoint<F> {
    /// `vᵢwⱼ = vⱼwᵢ` for all `i < j`.
    fn eq(&self, other: &Self) -> bool {
        let (v, w) = (&self.coords, &other.coords);
        (0..N).all(|i| (i + 1..N).all(|j| v[i].mul(&w[j]) == v[j].mul(&w[i])))
    }
}

impl<F: Field> Eq for ProjPoint<F> {}

impl<F: Field> Hash for ProjPoint<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state)
    }
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.canonical().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// Distinct points of the H₈-orbit, in order of first appearance over
/// [`enumerate_group`].
pub fn orbit<F: Field>(v: &ProjPoint<F>) -> Result<Vec<ProjPoint<F>>, HeisError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in enumerate_group() {
        let w = g.act_on_point(v)?;
        if seen.insert(w.clone()) {
            out.push(w);
        }
    }
    Ok(out)
}
