use super::GeometryError;
use crate::exactmath::{rational, Field, Rational};
use crate::linalg::{graded_membership, MembershipCertificate};
use crate::multipoly::{PolyMatrix, SparsePoly};

/// Sign relating the computed Pfaffian of the row-swapped restricted
/// matrix to the closed-form expression. Frozen after the first run.
pub const PFAFFIAN_SIGN: i64 = 1;

/// `x₀..x₇` are variables 0..7 and `y₀..y₇` are variables 8..15.
const NV: usize = 16;

type P = SparsePoly<Rational>;

fn xv(i: usize) -> P {
    P::var(i % 8, NV, &())
}

fn yv(i: usize) -> P {
    P::var(8 + i % 8, NV, &())
}

fn c(v: i64) -> Rational {
    rational(v, 1)
}

/// `(a_{i+j} b_{i−j} + a_{i+j+4} b_{i−j+4})`, indices mod 8.
fn moore_from(a: &[P], b: &[P]) -> PolyMatrix<Rational> {
    let m = |k: i64| k.rem_euclid(8) as usize;
    PolyMatrix::from_fn(4, 4, |i, j| {
        let (i, j) = (i as i64, j as i64);
        &(&a[m(i + j)] * &b[m(i - j)]) + &(&a[m(i + j + 4)] * &b[m(i - j + 4)])
    })
}

/// `M₄(x, y)` in 16 variables.
pub fn moore_matrix() -> PolyMatrix<Rational> {
    let xs: Vec<P> = (0..8).map(xv).collect();
    let ys: Vec<P> = (0..8).map(yv).collect();
    moore_from(&xs, &ys)
}

/// The 36 2×2 minors of `M₄(y, y)`, as polynomials in `y₀..y₇` only
/// (variables 0..7), in lexicographic (row set, column set) order.
pub fn moore_minors_yy() -> Result<Vec<P>, GeometryError> {
    let ys: Vec<P> = (0..8).map(|i| P::var(i, 8, &())).collect();
    Ok(moore_from(&ys, &ys).minors(2)?)
}

/// `(coefficient, x index, y index)` terms of one entry.
type Entry = &'static [(i64, usize, usize)];

/// The restricted matrix as printed, transcribed term by term.
const DISPLAYED: [[Entry; 4]; 4] = [
    [
        &[],
        &[(-1, 3, 3), (1, 1, 7)],
        &[(-1, 2, 2), (1, 2, 6)],
        &[(-1, 1, 1), (1, 3, 5)],
    ],
    [
        &[(1, 1, 1), (-1, 3, 5)],
        &[(1, 2, 0), (-1, 2, 4)],
        &[(-1, 1, 3), (1, 3, 7)],
        &[],
    ],
    [
        &[(1, 2, 2), (-1, 2, 6)],
        &[(1, 3, 1), (-1, 1, 5)],
        &[],
        &[(1, 1, 3), (-1, 3, 7)],
    ],
    [
        &[(1, 3, 3), (-1, 1, 7)],
        &[],
        &[(-1, 3, 1), (1, 1, 5)],
        &[(-1, 2, 0), (1, 2, 4)],
    ],
];

pub fn displayed_restricted_matrix() -> PolyMatrix<Rational> {
    PolyMatrix::from_fn(4, 4, |i, j| {
        DISPLAYED[i][j]
            .iter()
            .fold(P::zero(NV, &()), |acc, &(k, a, b)| {
                &acc + &(&xv(a) * &yv(b)).scale(&c(k))
            })
    })
}

/// `ψ*(ŵ₀), ψ*(ŵ₁), ψ*(ŵ₂)` in `nvars` variables with `y₀` at `offset`.
fn pullbacks_in(nvars: usize, offset: usize) -> [P; 3] {
    let y = |i: usize| P::var(offset + i, nvars, &());
    let w0 =
        (&(&(&y(1).pow(2) - &y(3).pow(2)) + &y(5).pow(2)) - &y(7).pow(2)).scale(&rational(1, 2));
    let w1 = &(&y(0) - &y(4)) * &(&y(2) - &y(6));
    let w2 = &(&y(3) * &y(7)) - &(&y(1) * &y(5));
    [w0, w1, w2]
}

/// `ψ*(ŵᵢ)` as polynomials in `y₀..y₇` (variables 0..7).
pub fn psi_pullbacks() -> [P; 3] {
    pullbacks_in(8, 0)
}

/// The conics `w₀ = 2x₁x₃`, `w₁ = −x₂²`, `w₂ = x₁² + x₃²` in 16 variables.
fn conics() -> [P; 3] {
    [
        (&xv(1) * &xv(3)).scale(&c(2)),
        -&xv(2).pow(2),
        &xv(1).pow(2) + &xv(3).pow(2),
    ]
}

/// `w₀ψ*(ŵ₀) + w₁ψ*(ŵ₁) + w₂ψ*(ŵ₂)` in 16 variables.
pub fn displayed_pfaffian() -> P {
    let w = conics();
    let psi = pullbacks_in(NV, 8);
    w.iter()
        .zip(&psi)
        .fold(P::zero(NV, &()), |acc, (a, b)| &acc + &(a * b))
}

/// `ŵ₁⁴ − 8ŵ₀³ŵ₂ − 8ŵ₀ŵ₂³` pulled back along ψ; degree 8 in `y₀..y₇`.
pub fn psi_quartic_target() -> P {
    let [w0, w1, w2] = psi_pullbacks();
    let a = w1.pow(4);
    let b = (&w0.pow(3) * &w2).scale(&c(8));
    let d = (&w0 * &w2.pow(3)).scale(&c(8));
    &(&a - &b) - &d
}

/// Certificate that the pulled-back quartic lies in the ideal of the 2×2
/// minors of `M₄(y, y)`, computed over the field given by `params`.
pub fn psi_membership<F: Field>(
    params: &F::Params,
) -> Result<MembershipCertificate<F>, GeometryError> {
    let conv = |p: &P| p.map_coeffs(params, |q| F::from_rational(q, params));
    let gens = moore_minors_yy()?
        .iter()
        .map(conv)
        .collect::<Result<Vec<_>, _>>()?;
    let target = conv(&psi_quartic_target())?;
    Ok(graded_membership(&gens, &target)?)
}

#[derive(Clone, Debug)]
pub struct MooreData {
    pub full: PolyMatrix<Rational>,
    pub restricted: PolyMatrix<Rational>,
    /// `"x"` when restricting the first slot reproduces the printed matrix.
    pub slot_convention: &'static str,
    pub swapped: PolyMatrix<Rational>,
    pub pfaffian: P,
    pub expected_pfaffian: P,
    /// `pfaffian = sign · expected_pfaffian`.
    pub sign: i64,
    pub pf_squared_is_det: bool,
    pub conics: [P; 3],
    pub pullbacks: [P; 3],
}

/// Restricts to `x₀ = x₄ = 0, x₅ = −x₃, x₆ = −x₂, x₇ = −x₁`, swaps rows 1
/// and 3, and compares the Pfaffian with the closed form.
pub fn moore_pipeline() -> Result<MooreData, GeometryError> {
    let zero = P::zero(NV, &());
    let mut images: Vec<P> = (0..NV).map(|i| P::var(i, NV, &())).collect();
    images[0] = zero.clone();
    images[4] = zero;
    images[5] = -&xv(3);
    images[6] = -&xv(2);
    images[7] = -&xv(1);
    let restrict = |m: &PolyMatrix<Rational>| m.map(|e| e.substitute(&images));

    let displayed = displayed_restricted_matrix();
    let full = moore_matrix();
    let mut restricted = restrict(&full)?;
    let mut slot_convention = "x";
    if restricted != displayed {
        // the other slot: M₄(y, x) restricted in x
        let xs: Vec<P> = (0..8).map(xv).collect();
        let ys: Vec<P> = (0..8).map(yv).collect();
        let alt = restrict(&moore_from(&ys, &xs))?;
        if alt != displayed {
            let bad: Vec<String> = (0..4)
                .flat_map(|i| (0..4).map(move |j| (i, j)))
                .filter(|&(i, j)| restricted.get(i, j) != displayed.get(i, j))
                .map(|(i, j)| format!("({i},{j})"))
                .collect();
            return Err(GeometryError::MooreMismatch(format!(
                "entries {} differ",
                bad.join(" ")
            )));
        }
        restricted = alt;
        slot_convention = "y";
    }
    let swapped = restricted.swap_rows(1, 3);
    if !swapped.is_skew_symmetric() {
        return Err(GeometryError::MooreMismatch(
            "row-swapped matrix is not skew-symmetric".into(),
        ));
    }
    let pfaffian = swapped.pfaffian4()?;
    let expected_pfaffian = displayed_pfaffian();
    let sign = if pfaffian == expected_pfaffian {
        1
    } else if pfaffian == -&expected_pfaffian {
        -1
    } else {
        return Err(GeometryError::MooreMismatch(
            "Pfaffian differs from the closed form".into(),
        ));
    };
    let pf_squared_is_det = pfaffian.pow(2) == swapped.det()?;
    Ok(MooreData {
        full,
        restricted,
        slot_convention,
        swapped,
        pfaffian,
        expected_pfaffian,
        sign,
        pf_squared_is_det,
        conics: conics(),
        pullbacks: psi_pullbacks(),
    })
}

/// Default names `x0..x7, y0..y7` for the 16-variable ring.
pub(crate) fn xy_names() -> Vec<String> {
    (0..8)
        .map(|i| format!("x{i}"))
        .chain((0..8).map(|i| format!("y{i}")))
        .collect()
}

pub(crate) fn render_xy(p: &P) -> String {
    let names = xy_names();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.render(&refs)
}

pub(crate) fn render_y(p: &P) -> String {
    let names: Vec<String> = (0..8).map(|i| format!("y{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.render(&refs)
}
