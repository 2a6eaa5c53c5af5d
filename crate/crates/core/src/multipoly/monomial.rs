use std::cmp::Ordering;

/// Largest supported number of variables (x₀..x₇ and y₀..y₇).
pub const MAX_VARS: usize = 16;

/// Exponent vector with `u8` exponents; unused trailing slots are zero.
///
/// `Ord` is graded reverse lexicographic with `x0 > x1 > …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    degree: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut exps = [0; MAX_VARS];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_array(exps: [u8; MAX_VARS]) -> Self {
        Monomial {
            exps,
            degree: exps.iter().map(|&e| e as u16).sum(),
        }
    }

    /// Panics if there are more than [`MAX_VARS`] entries or an exponent
    /// exceeds 255.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut a = [0u8; MAX_VARS];
        for (slot, &e) in a.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent overflow");
        }
        Self::from_array(a)
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u8] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn support_within(&self, nvars: usize) -> bool {
        self.exps[nvars..].iter().all(|&e| e == 0)
    }

    pub fn with_exp(&self, i: usize, e: u8) -> Self {
        let mut exps = self.exps;
        exps[i] = e;
        Self::from_array(exps)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut exps = [0u8; MAX_VARS];
        for (i, slot) in exps.iter_mut().enumerate() {
            *slot = self.exps[i].checked_add(other.exps[i])?;
        }
        Some(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `x0^2*x3` style; empty string for the unit monomial.
    pub fn render(&self, names: &[&str]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push((*name).to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.exps[i] != other.exps[i] {
                    // smaller exponent in the last differing variable wins
                    return other.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, ascending
/// in grevlex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    assert!(nvars <= MAX_VARS);
    let mut out = Vec::new();
    let mut exps = [0u8; MAX_VARS];
    fn rec(i: usize, nvars: usize, left: u32, exps: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            exps[i] = left as u8;
            out.push(Monomial::from_array(*exps));
            exps[i] = 0;
            return;
        }
        for e in 0..=left {
            exps[i] = e as u8;
            rec(i + 1, nvars, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, nvars, degree, &mut exps, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0*x2 < x1^2 in grevlex (x0 > x1 > x2)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        // x0^2 > x0*x1 > x1^2 > x0*x2
        let mut v = vec![m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[2, 0, 0]), m(&[1, 1, 0])];
        v.sort();
        assert_eq!(
            v,
            vec![m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[1, 1, 0]), m(&[2, 0, 0])]
        );
    }

    #[test]
    fn monomial_counts() {
        // C(n+d-1, d)
        assert_eq!(monomials_of_degree(8, 4).len(), 330);
        assert_eq!(monomials_of_degree(8, 8).len(), 6435);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        let ms = monomials_of_degree(3, 2);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn overflow_detected() {
        let big = m(&[200]);
        assert!(big.checked_mul(&big).is_none());
        assert_eq!(big.checked_mul(&m(&[55])).unwrap().exp(0), 255);
    }
}
