use crate::linalg::IntMatrix;

/// Local monodromy around an `I₁` fibre acting on `H³` of a smooth fibre,
/// in the basis used in the text.
pub const MONODROMY_ROWS: [[i64; 4]; 4] = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

pub fn monodromy_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&MONODROMY_ROWS.map(|r| r.to_vec())).expect("square")
}
