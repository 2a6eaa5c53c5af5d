use std::fmt;

use num_traits::Signed;

use super::rational::{q0, q1};
use super::{ArithError, Field, Fp, Modulus, Rational};

/// Element `c0 + c1 ξ + c2 ξ² + c3 ξ³` of ℚ(ξ) = ℚ[t]/(t⁴ + 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNum {
    c: [Rational; 4],
}

impl CycloNum {
    pub fn new(c: [Rational; 4]) -> Self {
        CycloNum { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        CycloNum {
            c: c.map(|x| Rational::from_integer(x.into())),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycloNum {
            c: [q, q0(), q0(), q0()],
        }
    }

    /// The generator ξ.
    pub fn xi() -> Self {
        Self::xi_power(1)
    }

    /// `ξ^k` for any integer `k`, reduced with `ξ⁴ = -1`.
    pub fn xi_power(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [q0(), q0(), q0(), q0()];
        if k < 4 {
            c[k] = q1();
        } else {
            c[k - 4] = -q1();
        }
        CycloNum { c }
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    /// The rational value if the ξ-components vanish.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.c[1..]
            .iter()
            .all(|x| x.is_zero())
            .then_some(&self.c[0])
    }

    /// Galois automorphism `ξ ↦ ξ^k` for odd `k`.
    pub fn conjugate(&self, k: i64) -> Self {
        assert!(
            k.rem_euclid(2) == 1,
            "ξ ↦ ξ^k is an automorphism only for odd k"
        );
        let mut out = [q0(), q0(), q0(), q0()];
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let e = (k * j as i64).rem_euclid(8) as usize;
            if e < 4 {
                out[e] += cj;
            } else {
                out[e - 4] -= cj;
            }
        }
        CycloNum { c: out }
    }

    /// Field norm to ℚ, the product of the four conjugates.
    pub fn norm(&self) -> Rational {
        let prod = self
            .mul(&self.conjugate(3))
            .mul(&self.conjugate(5))
            .mul(&self.conjugate(7));
        prod.as_rational()
            .cloned()
            .expect("norm of a cyclotomic element is rational")
    }
}

/// Reduces `c` modulo `p`, sending ξ to `root`.
pub fn embed_cyclo_mod_p(c: &CycloNum, p: u64, root: &Fp) -> Result<Fp, ArithError> {
    let m = Modulus::new(p)?;
    if p % 8 != 1 {
        return Err(ArithError::BadPrime(p));
    }
    if root.modulus() != p {
        return Err(ArithError::ModulusMismatch {
            left: p,
            right: root.modulus(),
        });
    }
    if root.order() != 8 {
        return Err(ArithError::BadRoot {
            root: root.value(),
            p,
        });
    }
    let mut acc = Fp::zero(&m);
    let mut power = Fp::one(&m);
    for cj in &c.c {
        acc = acc.add(&Fp::from_rational(cj, &m)?.mul(&power));
        power = power.mul(root);
    }
    Ok(acc)
}

impl Field for CycloNum {
    type Params = ();

    fn params(&self) {}

    fn zero(_: &()) -> Self {
        CycloNum::from_rational(q0())
    }

    fn one(_: &()) -> Self {
        CycloNum::from_rational(q1())
    }

    fn from_i64(n: i64, _: &()) -> Self {
        CycloNum::from_rational(Rational::from_integer(n.into()))
    }

    fn from_rational(q: &Rational, _: &()) -> Result<Self, ArithError> {
        Ok(CycloNum::from_rational(q.clone()))
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn add(&self, rhs: &Self) -> Self {
        CycloNum {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        CycloNum {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = [q0(), q0(), q0(), q0()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                if i + j < 4 {
                    out[i + j] += t;
                } else {
                    out[i + j - 4] -= t;
                }
            }
        }
        CycloNum { c: out }
    }

    fn neg(&self) -> Self {
        CycloNum {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // a * (σ3 a)(σ5 a)(σ7 a) = N(a) ∈ ℚ
        let cofactor = self
            .conjugate(3)
            .mul(&self.conjugate(5))
            .mul(&self.conjugate(7));
        let n = self.mul(&cofactor);
        let n = n
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        let scale = n.recip();
        Ok(CycloNum {
            c: cofactor.c.map(|x| x * &scale),
        })
    }

    fn xi_pow(k: i64, _: &()) -> Option<Self> {
        Some(CycloNum::xi_power(k))
    }

    fn field_name(_: &()) -> String {
        "Q(xi8)".to_string()
    }

    fn size_hint(&self) -> usize {
        self.c.iter().map(Field::size_hint).sum()
    }

    fn is_one(&self) -> bool {
        Field::is_one(&self.c[0]) && self.c[1..].iter().all(|x| x.is_zero())
    }
}

impl fmt::Display for CycloNum {
    /// Rational values print bare; others as `(a + b*xi + c*xi^2 + d*xi^3)`
    /// with zero components omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        write!(f, "(")?;
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let mag = cj.abs();
            if first {
                if cj.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if cj.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (j, Field::is_one(&mag)) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "xi")?,
                (1, false) => write!(f, "{mag}*xi")?,
                (_, true) => write!(f, "xi^{j}")?,
                (_, false) => write!(f, "{mag}*xi^{j}")?,
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational;

    fn q(n: i64) -> Rational {
        rational(n, 1)
    }

    /// Extended Euclid in ℚ[t] modulo t⁴ + 1, dense coefficient vectors
    /// (ascending degree). Independent of the norm-based inverse.
    fn euclid_inverse(a: &[Rational; 4]) -> [Rational; 4] {
        fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
            while v.len() > 1 && v.last().unwrap().is_zero() {
                v.pop();
            }
            v
        }
        fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
            let mut r = a.to_vec();
            let db = b.len() - 1;
            let mut quo = vec![q0(); a.len().saturating_sub(db).max(1)];
            while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
                let dr = r.len() - 1;
                if dr < db {
                    break;
                }
                let c = r[dr].clone() / b[db].clone();
                quo[dr - db] = c.clone();
                for i in 0..=db {
                    r[dr - db + i] = r[dr - db + i].clone() - c.clone() * b[i].clone();
                }
                r = trim(r);
                if dr == 0 {
                    break;
                }
            }
            (trim(quo), r)
        }
        fn mulp(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
            let mut out = vec![q0(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = out[i + j].clone() + x.clone() * y.clone();
                }
            }
            trim(out)
        }
        fn subp(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
            let n = a.len().max(b.len());
            trim(
                (0..n)
                    .map(|i| {
                        a.get(i).cloned().unwrap_or_else(q0) - b.get(i).cloned().unwrap_or_else(q0)
                    })
                    .collect(),
            )
        }
        let modulus = vec![q(1), q(0), q(0), q(0), q(1)];
        let (mut r0, mut r1) = (modulus, trim(a.to_vec()));
        let (mut s0, mut s1) = (vec![q(0)], vec![q(1)]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (quo, rem) = divrem(&r0, &r1);
            let s2 = subp(&s0, &mulp(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant gcd
        let c = r0[0].clone();
        let mut out = [q(0), q(0), q(0), q(0)];
        for (i, x) in s0.iter().enumerate() {
            out[i] = x.clone() / c.clone();
        }
        out
    }

    #[test]
    fn basic_identities() {
        let xi = CycloNum::xi();
        assert_eq!(
            xi.mul(&CycloNum::xi_power(3)),
            CycloNum::from_ints([-1, 0, 0, 0])
        );
        let one = CycloNum::one(&());
        let lhs = one.add(&xi).mul(&one.sub(&xi));
        assert_eq!(lhs, CycloNum::from_ints([1, 0, -1, 0]));
        assert_eq!(xi.inv().unwrap(), CycloNum::from_ints([0, 0, 0, -1]));
        assert_eq!(euclid_inverse(xi.coeffs()), [q(0), q(0), q(0), q(-1)]);
    }

    #[test]
    fn inverse_matches_euclid() {
        let samples = [
            CycloNum::from_ints([1, 1, 0, 0]),
            CycloNum::from_ints([2, -3, 5, 7]),
            CycloNum::new([rational(1, 2), rational(-2, 3), q(0), rational(5, 7)]),
            CycloNum::from_ints([0, 0, 3, 0]),
        ];
        for a in samples {
            let inv = a.inv().unwrap();
            assert_eq!(inv.coeffs(), &euclid_inverse(a.coeffs()));
            assert!(a.mul(&inv).is_one());
        }
        assert_eq!(CycloNum::zero(&()).inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn embedding_examples() {
        let root = Fp::new(2, 17).unwrap();
        let e = |c: &CycloNum| embed_cyclo_mod_p(c, 17, &root).unwrap().value();
        assert_eq!(e(&CycloNum::xi_power(4)), 16);
        assert_eq!(e(&CycloNum::one(&())), 1);
        assert_eq!(e(&CycloNum::xi_power(2)), 4);
        assert_eq!(
            embed_cyclo_mod_p(&CycloNum::xi(), 7, &root),
            Err(ArithError::BadPrime(7))
        );
        let bad = Fp::new(4, 17).unwrap();
        assert_eq!(
            embed_cyclo_mod_p(&CycloNum::xi(), 17, &bad),
            Err(ArithError::BadRoot { root: 4, p: 17 })
        );
        let half = CycloNum::from_rational(rational(1, 17));
        assert_eq!(
            embed_cyclo_mod_p(&half, 17, &root),
            Err(ArithError::DenominatorVanishes(17))
        );
    }

    #[test]
    fn display() {
        assert_eq!(CycloNum::from_ints([1, 0, -1, 0]).to_string(), "(1 - xi^2)");
        assert_eq!(
            CycloNum::from_ints([0, -2, 0, 1]).to_string(),
            "(-2*xi + xi^3)"
        );
        assert_eq!(CycloNum::from_rational(rational(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn norm_of_one_plus_xi() {
        // Φ8(-1) = 2
        assert_eq!(CycloNum::from_ints([1, 1, 0, 0]).norm(), q(2));
    }
}
