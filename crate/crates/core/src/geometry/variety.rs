use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::GeometryError;
use crate::exactmath::{CycloNum, Field, Fp, Modulus, Rational};
use crate::heisenberg::{orbit, HeisenbergElement as H, ProjPoint, N};
use crate::linalg::ExactMatrix;
use crate::multipoly::{monomials_of_degree, PolyMatrix, SparsePoly};

/// `(y₁ : y₂ : y₃)` on `ℙ²₋`, embedded as `(0 : y₁ : y₂ : y₃ : 0 : −y₃ : −y₂ : −y₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusPlanePoint<F: Field> {
    y: [F; 3],
}

impl<F: Field> MinusPlanePoint<F> {
    pub fn new(y: [F; 3]) -> Result<Self, GeometryError> {
        if y.iter().all(Field::is_zero) {
            return Err(GeometryError::ZeroPoint);
        }
        Ok(MinusPlanePoint { y })
    }

    pub fn from_ints(y: [i64; 3], params: &F::Params) -> Result<Self, GeometryError> {
        Self::new(y.map(|v| F::from_i64(v, params)))
    }

    pub fn coords(&self) -> &[F; 3] {
        &self.y
    }

    pub fn embed(&self) -> ProjPoint<F> {
        let [y1, y2, y3] = &self.y;
        let z = F::zero(&y1.params());
        ProjPoint::new(vec![
            z.clone(),
            y1.clone(),
            y2.clone(),
            y3.clone(),
            z,
            y3.neg(),
            y2.neg(),
            y1.neg(),
        ])
        .expect("nonzero by construction")
    }

    /// Inverse of [`Self::embed`] for points satisfying the five linear
    /// equations of `ℙ²₋`.
    pub fn from_embedded(v: &ProjPoint<F>) -> Option<Self> {
        let c = v.coords();
        let on_plane =
            c[0].is_zero() && c[4].is_zero() && (1..4).all(|i| c[i].add(&c[8 - i]).is_zero());
        if on_plane {
            Self::new([c[1].clone(), c[2].clone(), c[3].clone()]).ok()
        } else {
            None
        }
    }
}

/// `f₀ = x₀² + x₄²`, `f₁ = x₁x₇ + x₃x₅`, `f₂ = x₂x₆` in `nvars ≥ 8` variables.
fn base_quadrics<F: Field>(nvars: usize, params: &F::Params) -> [SparsePoly<F>; 3] {
    let x = |i| SparsePoly::<F>::var(i, nvars, params);
    [
        &x(0).pow(2) + &x(4).pow(2),
        &(&x(1) * &x(7)) + &(&x(3) * &x(5)),
        &x(2) * &x(6),
    ]
}

/// `f = y₁y₃f₀ − y₂²f₁ + (y₁² + y₃²)f₂` for given coefficients.
fn quadric_f<F: Field>(y: [&SparsePoly<F>; 3], nvars: usize, params: &F::Params) -> SparsePoly<F> {
    let [f0, f1, f2] = base_quadrics::<F>(nvars, params);
    let [y1, y2, y3] = y;
    let a = &(y1 * y3) * &f0;
    let b = &y2.pow(2) * &f1;
    let c = &(&y1.pow(2) + &y3.pow(2)) * &f2;
    &(&a - &b) + &c
}

/// The four quadrics `f, σf, σ²f, σ³f` at a fixed base point.
#[derive(Clone, Debug)]
pub struct VarietySystem<F: Field> {
    y: MinusPlanePoint<F>,
    quadrics: Vec<SparsePoly<F>>,
    jacobian: PolyMatrix<F>,
    hessians: Vec<ExactMatrix<F>>,
}

pub fn build_system<F: Field>(y: &MinusPlanePoint<F>) -> Result<VarietySystem<F>, GeometryError> {
    let params = y.y[0].params();
    let c: Vec<SparsePoly<F>> =
        y.y.iter()
            .map(|v| SparsePoly::constant(v.clone(), N))
            .collect();
    let f = quadric_f([&c[0], &c[1], &c[2]], N, &params);
    let mut quadrics = Vec::with_capacity(4);
    for k in 0..4 {
        quadrics.push(H::SIGMA.pow(k).act_on_poly(&f)?);
    }
    let jacobian = PolyMatrix::from_fn(4, N, |i, j| quadrics[i].partial(j));
    let origin = vec![F::zero(&params); N];
    let hessians = quadrics
        .iter()
        .map(|q| {
            let rows = (0..N)
                .map(|i| {
                    (0..N)
                        .map(|j| q.partial(i).partial(j).eval(&origin))
                        .collect::<Result<Vec<F>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ExactMatrix::from_rows(&params, rows)?)
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    Ok(VarietySystem {
        y: y.clone(),
        quadrics,
        jacobian,
        hessians,
    })
}

impl<F: Field> VarietySystem<F> {
    pub fn base_point(&self) -> &MinusPlanePoint<F> {
        &self.y
    }

    pub fn quadrics(&self) -> &[SparsePoly<F>] {
        &self.quadrics
    }

    pub fn jacobian(&self) -> &PolyMatrix<F> {
        &self.jacobian
    }

    pub fn contains(&self, v: &ProjPoint<F>) -> Result<bool, GeometryError> {
        for q in &self.quadrics {
            if !q.eval(v.coords())?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn jacobian_at(&self, v: &ProjPoint<F>) -> Result<ExactMatrix<F>, GeometryError> {
        let params = v.coords()[0].params();
        Ok(ExactMatrix::from_rows(
            &params,
            self.jacobian.eval_at(v.coords())?,
        )?)
    }

    /// Rank of the 4×8 Jacobian at a point of the variety: 4 at smooth
    /// points, 3 at the orbit singularities.
    pub fn jacobian_rank_at(&self, v: &ProjPoint<F>) -> Result<usize, GeometryError> {
        if !self.contains(v)? {
            return Err(GeometryError::PointNotOnVariety);
        }
        Ok(self.jacobian_at(v)?.rank())
    }

    /// Rank of the quadratic cone at a corank-one point: with `λ` spanning
    /// the left kernel of `J` and `T` a basis of its right kernel, the rank
    /// of `Tᵀ(Σ λᵢ Hess qᵢ)T`. The point itself lies in the kernel, so 4 is
    /// the maximum and marks an ordinary double point.
    pub fn cone_rank_at(&self, v: &ProjPoint<F>) -> Result<usize, GeometryError> {
        if !self.contains(v)? {
            return Err(GeometryError::PointNotOnVariety);
        }
        let j = self.jacobian_at(v)?;
        let left = j.transpose().kernel();
        if left.len() != 1 {
            return Err(GeometryError::DegeneratePoint(format!(
                "Jacobian corank {} at {v}",
                left.len()
            )));
        }
        let lambda = &left[0];
        let params = v.coords()[0].params();
        let mut h = ExactMatrix::zeros(N, N, &params);
        for (l, hess) in lambda.iter().zip(&self.hessians) {
            h = h.add(&hess.scale(l))?;
        }
        let t_rows = j.kernel();
        let t = ExactMatrix::from_rows(&params, t_rows)?;
        let cone = t.mul(&h)?.mul(&t.transpose())?;
        Ok(cone.rank())
    }
}

/// Residues of `σᵏf` at the embedded base point with `y₁, y₂, y₃` kept
/// symbolic (variables 8, 9, 10), for `k = 0..3`, followed by `σ⁴f − f`.
/// All five vanish identically.
pub fn base_point_residues() -> Result<Vec<SparsePoly<Rational>>, GeometryError> {
    let n = N + 3;
    let var = |i| SparsePoly::<Rational>::var(i, n, &());
    let (y1, y2, y3) = (var(8), var(9), var(10));
    let f = quadric_f([&y1, &y2, &y3], n, &());
    let zero = SparsePoly::zero(n, &());
    let mut images = vec![
        zero.clone(),
        y1.clone(),
        y2.clone(),
        y3.clone(),
        zero,
        -&y3,
        -&y2,
        -&y1,
    ];
    images.extend([y1, y2, y3]);
    let mut out = Vec::new();
    for k in 0..4 {
        out.push(H::SIGMA.pow(k).act_on_poly(&f)?.substitute(&images)?);
    }
    out.push(&H::SIGMA.pow(4).act_on_poly(&f)? - &f);
    Ok(out)
}

/// Result of the orbit computation at one base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub field: String,
    pub orbit_size: usize,
    pub on_variety: usize,
    /// Jacobian rank → number of orbit points.
    pub jacobian_ranks: BTreeMap<usize, usize>,
    /// Quadratic-cone rank → number of orbit points.
    pub cone_ranks: BTreeMap<usize, usize>,
}

/// Checks that the H₈-orbit of the base point has 64 points, all on the
/// variety with Jacobian rank 3 and a rank-4 quadratic cone.
pub fn orbit_singularity<F: Field>(sys: &VarietySystem<F>) -> Result<OrbitReport, GeometryError> {
    let points = orbit(&sys.y.embed())?;
    let mut report = OrbitReport {
        field: F::field_name(&sys.y.y[0].params()),
        orbit_size: points.len(),
        on_variety: 0,
        jacobian_ranks: BTreeMap::new(),
        cone_ranks: BTreeMap::new(),
    };
    if points.len() != 64 {
        return Err(GeometryError::DegeneratePoint(format!(
            "orbit has {} points",
            points.len()
        )));
    }
    for v in &points {
        if !sys.contains(v)? {
            return Err(GeometryError::DegeneratePoint(format!(
                "orbit point {v} is off the variety"
            )));
        }
        report.on_variety += 1;
        let r = sys.jacobian_rank_at(v)?;
        *report.jacobian_ranks.entry(r).or_default() += 1;
        if r != 3 {
            return Err(GeometryError::DegeneratePoint(format!(
                "Jacobian rank {r} at {v}"
            )));
        }
        let c = sys.cone_rank_at(v)?;
        *report.cone_ranks.entry(c).or_default() += 1;
        if c != 4 {
            return Err(GeometryError::DegeneratePoint(format!(
                "cone rank {c} at {v}"
            )));
        }
    }
    Ok(report)
}

/// Draws `count` integer base points with coordinates in `[-10, 10]` whose
/// orbit passes [`orbit_singularity`] over `ℚ(ξ₈)`. Returns the accepted
/// draws with their reports and the rejected draws.
#[allow(clippy::type_complexity)]
pub fn draw_generic_y(
    seed: u64,
    count: usize,
    exclude: &[[i64; 3]],
) -> Result<(Vec<([i64; 3], OrbitReport)>, Vec<[i64; 3]>), GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    let mut seen: BTreeSet<[i64; 3]> = exclude.iter().copied().collect();
    while accepted.len() < count {
        if rejected.len() > 100 {
            return Err(GeometryError::DegeneratePoint(
                "too many rejected draws".into(),
            ));
        }
        let y = [
            rng.random_range(-10..=10),
            rng.random_range(-10..=10),
            rng.random_range(-10..=10),
        ];
        if y == [0, 0, 0] || !seen.insert(y) {
            continue;
        }
        let sys = build_system(&MinusPlanePoint::<CycloNum>::from_ints(y, &())?)?;
        match orbit_singularity(&sys) {
            Ok(r) => accepted.push((y, r)),
            Err(GeometryError::DegeneratePoint(_)) => rejected.push(y),
            Err(e) => return Err(e),
        }
    }
    Ok((accepted, rejected))
}

/// For `g ∈ {σ, τ}` and each quadric `qᵢ`, coefficients expressing `g·qᵢ`
/// in the span of `q₀..q₃`, or `None` when it is not in the span. Order:
/// `σq₀..σq₃, τq₀..τq₃`.
pub fn ideal_invariance<F: Field>(
    sys: &VarietySystem<F>,
) -> Result<Vec<Option<Vec<F>>>, GeometryError> {
    let params = sys.y.y[0].params();
    let monos = monomials_of_degree(N, 2);
    let a = ExactMatrix::from_fn(monos.len(), 4, &params, |r, c| {
        sys.quadrics[c].coeff(&monos[r])
    });
    let mut out = Vec::new();
    for g in [H::SIGMA, H::TAU] {
        for q in &sys.quadrics {
            let image = g.act_on_poly(q)?;
            let b: Vec<F> = monos.iter().map(|m| image.coeff(m)).collect();
            out.push(a.solve(&b)?);
        }
    }
    Ok(out)
}

/// Outcome of the exhaustive search on `ℙ²₋` modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinusPlaneReport {
    pub prime: u64,
    pub points_enumerated: u64,
    /// Canonical solutions in `ℙ²(GF(p))`, first nonzero coordinate 1.
    pub solutions: Vec<[u64; 3]>,
    /// Reductions of `y, σ⁴y, τ⁴y, σ⁴τ⁴y`.
    pub named: Vec<[u64; 3]>,
    /// The four named points lie on `ℙ²₋` and on all four quadrics over ℚ.
    pub named_exact: bool,
}

fn canonical_mod(v: [i128; 3], p: u64) -> Option<[u64; 3]> {
    let r = v.map(|c| c.rem_euclid(p as i128) as u64);
    let lead = *r.iter().find(|&&c| c != 0)?;
    let inv = Fp::new(lead as i64, p).ok()?.inv().ok()?.value();
    Some(r.map(|c| c * inv % p))
}

/// The four named points of `V ∩ ℙ²₋` over ℚ, as integer triples.
fn named_points(y: [i64; 3]) -> Result<(Vec<[Rational; 3]>, bool), GeometryError> {
    let base = MinusPlanePoint::<Rational>::from_ints(y, &())?;
    let sys = build_system(&base)?;
    let v = base.embed();
    let n = 3;
    let u = |i| SparsePoly::<Rational>::var(i, n, &());
    let zero = SparsePoly::zero(n, &());
    let images = [zero.clone(), u(0), u(1), u(2), zero, -&u(2), -&u(1), -&u(0)];
    let conics = sys
        .quadrics
        .iter()
        .map(|q| q.substitute(&images))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pts = Vec::new();
    let mut exact = true;
    for g in [
        H::IDENTITY,
        H::SIGMA.pow(4),
        H::TAU.pow(4),
        H::SIGMA.pow(4).compose(&H::TAU.pow(4)),
    ] {
        let w = g.act_on_point(&v)?;
        exact &= sys.contains(&w)?;
        match MinusPlanePoint::from_embedded(&w) {
            Some(m) => {
                for c in &conics {
                    exact &= c.eval(m.coords())?.is_zero();
                }
                pts.push(m.coords().clone());
            }
            None => exact = false,
        }
    }
    Ok((pts, exact))
}

/// Exhaustive solution of the four quadrics restricted to `ℙ²₋` over
/// `GF(p)`, compared with the reductions of the four named points.
pub fn minus_plane_intersection(y: [i64; 3], p: u64) -> Result<MinusPlaneReport, GeometryError> {
    let m = Modulus::new(p)?;
    if p % 8 != 1 {
        return Err(GeometryError::BadPrime(p));
    }
    let (named_q, named_exact) = named_points(y)?;
    let mut named = Vec::new();
    for pt in &named_q {
        let ints = pt.clone().map(|c| {
            debug_assert!(c.is_integer());
            i128::try_from(c.to_integer()).expect("small integer coordinates")
        });
        named.push(canonical_mod(ints, p).ok_or(GeometryError::UnluckyPrime(p))?);
    }
    let sys = build_system(&MinusPlanePoint::<Fp>::from_ints(y, &m)?)?;
    let fp = |v: u64| Fp::with_modulus(v as i64, m);
    let mut candidates: Vec<[u64; 3]> = Vec::with_capacity((p * p + p + 1) as usize);
    for a in 0..p {
        for b in 0..p {
            candidates.push([1, a, b]);
        }
    }
    for b in 0..p {
        candidates.push([0, 1, b]);
    }
    candidates.push([0, 0, 1]);
    let mut solutions = Vec::new();
    for c in &candidates {
        let pt = MinusPlanePoint::new(c.map(fp))?.embed();
        if sys.contains(&pt)? {
            solutions.push(*c);
        }
    }
    let report = MinusPlaneReport {
        prime: p,
        points_enumerated: candidates.len() as u64,
        solutions,
        named,
        named_exact,
    };
    let sol_set: BTreeSet<_> = report.solutions.iter().collect();
    let named_set: BTreeSet<_> = report.named.iter().collect();
    if named_set.len() != 4 || sol_set != named_set {
        return Err(GeometryError::UnluckyPrime(p));
    }
    Ok(report)
}

/// Quadric as `(i, j, coefficient)` with `i ≤ j`, for fast evaluation.
fn compile(q: &SparsePoly<Fp>) -> Vec<(usize, usize, u64)> {
    q.terms()
        .map(|(m, c)| {
            let vars: Vec<usize> = (0..N)
                .flat_map(|i| std::iter::repeat_n(i, m.exp(i) as usize))
                .collect();
            (vars[0], vars[1], c.value())
        })
        .collect()
}

/// Rejection samples `n` uniform vectors of `GF(p)⁸ \ 0` and keeps the
/// projective points lying on the variety, deduplicated and sorted. Chunk
/// `k` uses ChaCha stream `k` of `seed`, so the output does not depend on
/// the thread count.
pub fn sample_points(
    sys: &VarietySystem<Fp>,
    n: u64,
    seed: u64,
) -> Result<Vec<ProjPoint<Fp>>, GeometryError> {
    let m = sys.y.y[0].params();
    let p = m.value();
    if p % 8 != 1 {
        return Err(GeometryError::BadPrime(p));
    }
    let compiled: Vec<_> = sys.quadrics.iter().map(compile).collect();
    const CHUNK: u64 = 1 << 16;
    let chunks = n.div_ceil(CHUNK);
    let hits: Vec<Vec<[u64; N]>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let len = CHUNK.min(n - k * CHUNK);
            let mut found = Vec::new();
            for _ in 0..len {
                let v: [u64; N] = std::array::from_fn(|_| rng.random_range(0..p));
                if v.iter().all(|&c| c == 0) {
                    continue;
                }
                let on = compiled.iter().all(|q| {
                    q.iter()
                        .fold(0u64, |acc, &(i, j, c)| (acc + c * (v[i] * v[j] % p)) % p)
                        == 0
                });
                if on {
                    found.push(v);
                }
            }
            found
        })
        .collect();
    let mut canon = BTreeSet::new();
    for v in hits.into_iter().flatten() {
        let lead = *v.iter().find(|&&c| c != 0).expect("nonzero");
        let inv = Fp::with_modulus(lead as i64, m).inv()?.value();
        canon.insert(v.map(|c| c * inv % p));
    }
    canon
        .into_iter()
        .map(|v| {
            Ok(ProjPoint::new(
                v.iter().map(|&c| Fp::with_modulus(c as i64, m)).collect(),
            )?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f0_vanishes_on_the_plane_and_degrees() {
        let [f0, _, f2] = base_quadrics::<Rational>(N, &());
        assert_eq!(f0.degree(), Some(2));
        let y = MinusPlanePoint::<Rational>::from_ints([1, 2, 3], &()).unwrap();
        assert!(f0.eval(y.embed().coords()).unwrap().is_zero());
        // f₂ at the embedded point is −y₂²
        assert_eq!(
            f2.eval(y.embed().coords()).unwrap(),
            Rational::from_i64(-4, &())
        );
    }

    #[test]
    fn sigma_on_f0() {
        let [f0, f1, _] = base_quadrics::<CycloNum>(N, &());
        let x = |i| SparsePoly::<CycloNum>::var(i, N, &());
        assert_eq!(
            H::SIGMA.act_on_poly(&f0).unwrap(),
            &x(7).pow(2) + &x(3).pow(2)
        );
        assert_eq!(H::TAU.act_on_poly(&f1).unwrap(), f1);
    }

    #[test]
    fn symbolic_base_point() {
        assert!(base_point_residues()
            .unwrap()
            .iter()
            .all(SparsePoly::is_zero));
    }

    #[test]
    fn zero_point_rejected() {
        assert_eq!(
            MinusPlanePoint::<Rational>::from_ints([0, 0, 0], &()),
            Err(GeometryError::ZeroPoint)
        );
    }

    #[test]
    fn orbit_mod_17() {
        let m = Modulus::new(17).unwrap();
        let sys = build_system(&MinusPlanePoint::<Fp>::from_ints([1, 2, 3], &m).unwrap()).unwrap();
        let r = orbit_singularity(&sys).unwrap();
        assert_eq!(r.orbit_size, 64);
        assert_eq!(r.jacobian_ranks, BTreeMap::from([(3, 64)]));
        assert_eq!(r.cone_ranks, BTreeMap::from([(4, 64)]));
    }

    #[test]
    fn special_point_is_degenerate() {
        let sys =
            build_system(&MinusPlanePoint::<CycloNum>::from_ints([1, 0, 0], &()).unwrap()).unwrap();
        assert!(matches!(
            orbit_singularity(&sys),
            Err(GeometryError::DegeneratePoint(_))
        ));
    }

    #[test]
    fn minus_plane_mod_17() {
        let r = minus_plane_intersection([1, 2, 3], 17).unwrap();
        assert_eq!(r.points_enumerated, 307);
        assert_eq!(
            r.solutions,
            vec![[1, 2, 3], [1, 5, 6], [1, 12, 6], [1, 15, 3]]
        );
        assert!(r.named_exact);
        assert_eq!(
            minus_plane_intersection([1, 2, 3], 7),
            Err(GeometryError::BadPrime(7))
        );
    }

    #[test]
    fn invariance_over_cyclotomic_field() {
        let sys =
            build_system(&MinusPlanePoint::<CycloNum>::from_ints([1, 2, 3], &()).unwrap()).unwrap();
        let r = ideal_invariance(&sys).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(Option::is_some));
    }

    #[test]
    fn sampling_is_deterministic_and_on_variety() {
        let m = Modulus::new(17).unwrap();
        let sys = build_system(&MinusPlanePoint::<Fp>::from_ints([1, 2, 3], &m).unwrap()).unwrap();
        let a = sample_points(&sys, 200_000, 1).unwrap();
        let b = sample_points(&sys, 200_000, 1).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        for v in &a {
            assert!(sys.contains(v).unwrap());
        }
    }
}
