use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{xi_pow_trivial, ArithError, Field, Rational};

/// Primes used for randomized corroboration. All are ≡ 1 (mod 8).
pub const CERT_PRIMES: [u64; 5] = [17, 41, 73, 89, 97];

/// Trial division; adequate for the moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Smallest positive residue of exact multiplicative order 8 modulo `p`.
pub fn find_order8_root(p: u64) -> Result<Fp, ArithError> {
    let m = Modulus::new(p)?;
    let root = m.root8.ok_or(ArithError::BadPrime(p))?;
    Ok(Fp {
        value: root,
        modulus: m,
    })
}

fn smallest_order8(p: u64) -> Option<u64> {
    if p % 8 != 1 {
        return None;
    }
    // order exactly 8 <=> g^4 = -1
    (2..p).find(|&g| pow_mod(g, 4, p) == p - 1)
}

/// A validated prime modulus, together with its smallest order-8 root when
/// `p ≡ 1 (mod 8)`.
#[derive(Clone, Copy, Debug)]
pub struct Modulus {
    p: u64,
    root8: Option<u64>,
}

impl Modulus {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Modulus {
            p,
            root8: smallest_order8(p),
        })
    }

    pub fn value(&self) -> u64 {
        self.p
    }

    pub fn root8(&self) -> Option<u64> {
        self.root8
    }
}

impl PartialEq for Modulus {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for Modulus {}

impl Hash for Modulus {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state)
    }
}

/// Element of GF(p). Carries its modulus so that mixing fields is detectable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: Modulus,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Result<Self, ArithError> {
        Ok(Self::with_modulus(value, Modulus::new(p)?))
    }

    pub fn with_modulus(value: i64, modulus: Modulus) -> Self {
        let p = modulus.p as i128;
        Fp {
            value: (value as i128).rem_euclid(p) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.p
    }

    /// Multiplicative order (0 for the zero element).
    pub fn order(&self) -> u64 {
        if self.value == 0 {
            return 0;
        }
        let p = self.modulus.p;
        let mut k = 1;
        let mut x = self.value;
        while x != 1 {
            x = ((x as u128 * self.value as u128) % p as u128) as u64;
            k += 1;
        }
        k
    }

    fn same(&self, rhs: &Self) {
        assert_eq!(
            self.modulus.p, rhs.modulus.p,
            "mixed GF({}) and GF({}) operands",
            self.modulus.p, rhs.modulus.p
        );
    }

    fn raw(&self, value: u64) -> Self {
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Params = Modulus;

    fn params(&self) -> Modulus {
        self.modulus
    }

    fn zero(m: &Modulus) -> Self {
        Fp {
            value: 0,
            modulus: *m,
        }
    }

    fn one(m: &Modulus) -> Self {
        Fp {
            value: 1 % m.p,
            modulus: *m,
        }
    }

    fn from_i64(n: i64, m: &Modulus) -> Self {
        Fp::with_modulus(n, *m)
    }

    fn from_rational(q: &Rational, m: &Modulus) -> Result<Self, ArithError> {
        let p = BigInt::from(m.p);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_u64().expect("residue fits in u64");
        let den = reduce(q.denom());
        if den == 0 {
            return Err(ArithError::DenominatorVanishes(m.p));
        }
        let num = Fp {
            value: reduce(q.numer()),
            modulus: *m,
        };
        num.div(&Fp {
            value: den,
            modulus: *m,
        })
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let s = self.value as u128 + rhs.value as u128;
        self.raw((s % self.modulus.p as u128) as u64)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.same(rhs);
        let p = self.modulus.p;
        self.raw(if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            p - (rhs.value - self.value)
        })
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.same(rhs);
        self.raw(((self.value as u128 * rhs.value as u128) % self.modulus.p as u128) as u64)
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            self.raw(self.modulus.p - self.value)
        }
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if self.value == 0 {
            return Err(ArithError::DivisionByZero);
        }
        let g = BigInt::from(self.value).extended_gcd(&BigInt::from(self.modulus.p));
        debug_assert!(g.gcd.abs() == BigInt::from(1));
        let x = g.x.mod_floor(&BigInt::from(self.modulus.p));
        Ok(self.raw(x.to_u64().expect("residue fits in u64")))
    }

    fn xi_pow(k: i64, m: &Modulus) -> Option<Self> {
        match m.root8 {
            Some(r) => Some(Fp {
                value: pow_mod(r, k.rem_euclid(8) as u64, m.p),
                modulus: *m,
            }),
            None if m.p != 2 => xi_pow_trivial(k, m),
            None => None,
        }
    }

    fn field_name(m: &Modulus) -> String {
        format!("GF({})", m.p)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ArithError> {
        if self.modulus.p == other.modulus.p {
            Ok(())
        } else {
            Err(ArithError::ModulusMismatch {
                left: self.modulus.p,
                right: other.modulus.p,
            })
        }
    }

    fn pow(&self, e: u64) -> Self {
        self.raw(pow_mod(self.value, e, self.modulus.p))
    }
}
