use super::{CertificateResult, GeometryError};
use crate::exactmath::{rational, Field, Fp, Modulus, Rational};
use crate::linalg::ExactMatrix;
use crate::multipoly::{ci_invariants, hilbert_numerator, Monomial, SparsePoly};

type P = SparsePoly<Rational>;

/// `C = ŵ₁⁴ − 8ŵ₀³ŵ₂ − 8ŵ₀ŵ₂³` in `ŵ₀, ŵ₁, ŵ₂`.
pub fn quartic_curve() -> P {
    let w = |i| P::var(i, 3, &());
    let eight = rational(8, 1);
    &(&w(1).pow(4) - &(&w(0).pow(3) * &w(2)).scale(&eight)) - &(&w(0) * &w(2).pow(3)).scale(&eight)
}

/// Sylvester resultant of two binary forms given by coefficient lists in
/// descending powers of the first variable.
pub fn binary_resultant(f: &[Rational], g: &[Rational]) -> Result<Rational, GeometryError> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut s = ExactMatrix::<Rational>::zeros(size, size, &());
    for r in 0..n {
        for (k, c) in f.iter().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in g.iter().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    Ok(s.det()?)
}

/// Coefficients of a form in `ŵ₀, ŵ₂` (with `ŵ₁` absent), descending in `ŵ₀`.
fn binary_coeffs(p: &P, degree: u32) -> Vec<Rational> {
    (0..=degree)
        .map(|k| p.coeff(&Monomial::from_exponents(&[degree - k, 0, k])))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticReport {
    pub gradient: [String; 3],
    /// Resultant of `∂₀C` and `∂₂C` as binary cubics in `ŵ₀, ŵ₂`.
    pub resultant: Rational,
    /// `(p, points checked, common zeros of the gradient)`.
    pub sweeps: Vec<(u64, u64, u64)>,
    pub genus: Rational,
}

/// `C` is smooth: `∂₁C = 4ŵ₁³` forces `ŵ₁ = 0`, and then `∂₀C, ∂₂C` are
/// binary cubics with nonzero resultant. Exhaustive gradient sweeps over
/// `ℙ²(GF(p))` corroborate. Errors if the resultant vanishes.
pub fn quartic_curve_certificate(primes: &[u64]) -> Result<QuarticReport, GeometryError> {
    let c = quartic_curve();
    let grad: Vec<P> = (0..3).map(|i| c.partial(i)).collect();
    let names = ["w0", "w1", "w2"];
    // ∂₀ and ∂₂ do not involve ŵ₁
    if grad[0]
        .terms()
        .chain(grad[2].terms())
        .any(|(m, _)| m.exp(1) != 0)
    {
        return Err(GeometryError::SmoothnessUndetermined);
    }
    let resultant = binary_resultant(&binary_coeffs(&grad[0], 3), &binary_coeffs(&grad[2], 3))?;
    if Field::is_zero(&resultant) {
        return Err(GeometryError::SmoothnessUndetermined);
    }
    let mut sweeps = Vec::new();
    for &p in primes {
        let m = Modulus::new(p)?;
        let gp: Vec<SparsePoly<Fp>> = grad
            .iter()
            .map(|g| g.map_coeffs(&m, |q| Fp::from_rational(q, &m)))
            .collect::<Result<_, _>>()?;
        let f = |v: u64| Fp::with_modulus(v as i64, m);
        let mut pts: Vec<[u64; 3]> = Vec::new();
        for a in 0..p {
            for b in 0..p {
                pts.push([1, a, b]);
            }
        }
        for b in 0..p {
            pts.push([0, 1, b]);
        }
        pts.push([0, 0, 1]);
        let mut zeros = 0;
        for pt in &pts {
            let v = pt.map(f);
            if gp
                .iter()
                .map(|g| g.eval(&v))
                .collect::<Result<Vec<_>, _>>()?
                .iter()
                .all(Field::is_zero)
            {
                zeros += 1;
            }
        }
        sweeps.push((p, pts.len() as u64, zeros));
    }
    let genus = ci_invariants(2, &[4])?.genus.expect("plane curve");
    Ok(QuarticReport {
        gradient: [
            grad[0].render(&names),
            grad[1].render(&names),
            grad[2].render(&names),
        ],
        resultant,
        sweeps,
        genus,
    })
}

/// Degree, `c₂·H`, Euler characteristic of the smooth (2,2,2,2) complete
/// intersection, the node count identity, and the Hilbert numerator.
pub fn topology_certificate() -> Result<CertificateResult, GeometryError> {
    let mut r = CertificateResult::new("topology-numbers", "Q");
    let v = ci_invariants(7, &[2, 2, 2, 2])?;
    let c2 = v.c2_degree.clone().expect("threefold");
    let series: Vec<String> = v.chern_classes.iter().map(ToString::to_string).collect();
    r.put("chern_series", series.join(","));
    r.put("degree", &v.degree);
    r.put("c2_degree", &c2);
    r.put("euler_smooth", &v.euler);
    let nodes = rational(64, 1);
    let small = &v.euler + rational(2, 1) * &nodes;
    r.put("euler_small_resolution", &small);
    r.check("degree_16", v.degree == 16.into());
    r.check("c2_degree_64", c2 == rational(64, 1));
    r.check("euler_minus_128", v.euler == rational(-128, 1));
    r.check("c1_zero", Field::is_zero(&v.chern_classes[1]));
    r.check("euler_plus_nodes_zero", Field::is_zero(&small));
    let h = hilbert_numerator(&[2, 2, 2, 2])?;
    let coeffs: Vec<String> = h.coeffs().iter().map(ToString::to_string).collect();
    r.put("hilbert_numerator", coeffs.join(","));
    r.put("hilbert_value_at_1", h.coefficient_sum());
    r.check("hilbert_degree_16", h.coefficient_sum() == rational(16, 1));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradient_at_a_point() {
        let c = quartic_curve();
        let v = [rational(1, 1), rational(0, 1), rational(0, 1)];
        let g: Vec<Rational> = (0..3).map(|i| c.partial(i).eval(&v).unwrap()).collect();
        assert_eq!(g, vec![rational(0, 1), rational(0, 1), rational(-8, 1)]);
    }

    #[test]
    fn resultant_of_simple_forms() {
        // Res(t - a, t - b) = a - b
        let q = |v| rational(v, 1);
        assert_eq!(
            binary_resultant(&[q(1), q(-2)], &[q(1), q(-5)]).unwrap(),
            q(-3)
        );
        assert!(Field::is_zero(
            &binary_resultant(&[q(1), q(-2)], &[q(2), q(-4)]).unwrap()
        ));
    }

    #[test]
    fn quartic_is_smooth() {
        let r = quartic_curve_certificate(&[17]).unwrap();
        assert_eq!(r.resultant, rational(-16_777_216, 1));
        assert_eq!(r.sweeps, vec![(17, 307, 0)]);
        assert_eq!(r.genus, rational(3, 1));
        assert_eq!(r.gradient[1], "4*w1^3");
    }

    #[test]
    fn topology() {
        let r = topology_certificate().unwrap();
        assert!(r.passed(), "{:?}", r.payload);
        assert_eq!(r.payload["chern_series"], "1,0,4,-8");
    }
}
