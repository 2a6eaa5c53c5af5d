use super::{ExactMatrix, LinalgError};
use crate::exactmath::Field;
use crate::multipoly::k_subsets;

/// Matrix of `∧ᵏm` in the lexicographic basis of `k`-subsets.
pub fn exterior_power<F: Field>(
    m: &ExactMatrix<F>,
    k: usize,
) -> Result<ExactMatrix<F>, LinalgError> {
    let n = m.rows();
    if m.cols() != n || k > n {
        return Err(LinalgError::BadSize(format!(
            "exterior power {k} of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let basis = k_subsets(n, k);
    let mut out = ExactMatrix::zeros(basis.len(), basis.len(), m.params());
    for (i, rs) in basis.iter().enumerate() {
        for (j, cs) in basis.iter().enumerate() {
            out.set(i, j, m.submatrix(rs, cs).det()?);
        }
    }
    Ok(out)
}

/// Outcome of the exhaustive check over `𝔽₂⁴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeLemmaReport {
    pub pairs: usize,
    pub cases: usize,
    /// First `(e₁, e₂, f)` with `e₁∧f = e₂∧f = 0`, as bit masks.
    pub counterexample: Option<(u8, u8, u8)>,
}

impl WedgeLemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// 2-subsets of `0..4` in lexicographic order; bit `s` of a `∧²` mask.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `e ∧ f` over 𝔽₂ as a 4-bit mask indexed by the omitted basis vector.
fn wedge_1_2(e: u8, f: u8) -> u8 {
    let mut out = 0u8;
    for i in 0..4 {
        if e >> i & 1 == 0 {
            continue;
        }
        for (s, &(a, b)) in PAIRS.iter().enumerate() {
            if f >> s & 1 == 1 && a != i && b != i {
                let missing = 6 - i - a - b;
                out ^= 1 << missing;
            }
        }
    }
    out
}

/// `e₁ ∧ e₂` over 𝔽₂ as a 6-bit mask.
fn wedge_1_1(e1: u8, e2: u8) -> u8 {
    let mut out = 0u8;
    for (s, &(a, b)) in PAIRS.iter().enumerate() {
        let c = (e1 >> a & e2 >> b ^ e1 >> b & e2 >> a) & 1;
        out |= c << s;
    }
    out
}

/// For every ordered pair of independent `e₁, e₂ ∈ 𝔽₂⁴` and every
/// `f ∈ ∧²𝔽₂⁴` outside `{0, e₁∧e₂}`, checks `e₁∧f ≠ 0` or `e₂∧f ≠ 0`.
pub fn wedge_lemma_exhaustive() -> WedgeLemmaReport {
    let mut pairs = 0;
    let mut cases = 0;
    let mut counterexample = None;
    for e1 in 1u8..16 {
        for e2 in 1u8..16 {
            if e1 == e2 {
                continue;
            }
            pairs += 1;
            let span = wedge_1_1(e1, e2);
            for f in 0u8..64 {
                if f == 0 || f == span {
                    continue;
                }
                cases += 1;
                if wedge_1_2(e1, f) == 0 && wedge_1_2(e2, f) == 0 && counterexample.is_none() {
                    counterexample = Some((e1, e2, f));
                }
            }
        }
    }
    WedgeLemmaReport {
        pairs,
        cases,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Fp, Modulus, Rational};

    #[test]
    fn identity_and_top_power() {
        let id = ExactMatrix::<Rational>::identity(4, &());
        assert_eq!(
            exterior_power(&id, 2).unwrap(),
            ExactMatrix::identity(6, &())
        );
        let m = ExactMatrix::<Rational>::from_i64_rows(
            &(),
            &[
                vec![2, 0, 1, 3],
                vec![1, 1, 0, 0],
                vec![0, 4, 1, 2],
                vec![3, 0, 0, 1],
            ],
        )
        .unwrap();
        let top = exterior_power(&m, 4).unwrap();
        assert_eq!((top.rows(), top.cols()), (1, 1));
        assert_eq!(top.get(0, 0), &m.det().unwrap());
        assert!(exterior_power(&m, 5).is_err());
    }

    #[test]
    fn basis_wedges() {
        // e1 = b0, e2 = b1, f = b2∧b3
        let f = 1 << 5;
        assert_ne!(wedge_1_2(0b0001, f), 0);
        assert_eq!(wedge_1_1(0b0001, 0b0010), 1);
        // e∧e = 0
        assert_eq!(wedge_1_1(0b0111, 0b0111), 0);
    }

    #[test]
    fn unipotent_square_fixed_space_over_gf2() {
        let p = Modulus::new(2).unwrap();
        let m = ExactMatrix::<Fp>::from_i64_rows(
            &p,
            &[
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
            ],
        )
        .unwrap();
        let w = exterior_power(&m, 2).unwrap();
        let fixed = w.sub(&ExactMatrix::identity(6, &p)).unwrap().nullity();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn full_sweep() {
        let r = wedge_lemma_exhaustive();
        assert_eq!((r.pairs, r.cases), (210, 13020));
        assert!(r.passed());
    }
}
