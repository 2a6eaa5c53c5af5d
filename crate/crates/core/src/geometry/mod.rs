//! Constructions specific to the (2,2,2,2) complete intersection `V₈,y`:
//! the four quadrics and their singular orbit, the plane `ℙ²₋`, the Moore
//! matrix pipeline, the plane quartic `C` and the numerical invariants.

mod curves;
mod lattice;
mod moore;
mod variety;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactmath::ArithError;
use crate::heisenberg::HeisError;
use crate::linalg::LinalgError;
use crate::multipoly::PolyError;

pub use curves::{
    binary_resultant, quartic_curve, quartic_curve_certificate, topology_certificate, QuarticReport,
};
pub use lattice::{monodromy_matrix, MONODROMY_ROWS};
pub use moore::{
    displayed_pfaffian, displayed_restricted_matrix, moore_matrix, moore_minors_yy, moore_pipeline,
    psi_membership, psi_pullbacks, psi_quartic_target, MooreData, PFAFFIAN_SIGN,
};
pub(crate) use moore::{render_xy, render_y};
pub use variety::{
    base_point_residues, build_system, draw_generic_y, ideal_invariance, minus_plane_intersection,
    orbit_singularity, sample_points, MinusPlanePoint, MinusPlaneReport, OrbitReport,
    VarietySystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("base point is zero")]
    ZeroPoint,
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("degenerate base point: {0}")]
    DegeneratePoint(String),
    #[error("prime {0} is not congruent to 1 mod 8")]
    BadPrime(u64),
    #[error("prime {0} is unlucky for this base point")]
    UnluckyPrime(u64),
    #[error("smoothness could not be decided")]
    SmoothnessUndetermined,
    #[error("Moore pipeline mismatch: {0}")]
    MooreMismatch(String),
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Outcome of one claim. The status is `pass` exactly when every recorded
/// check holds; each check appears in the payload as `check.<name>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateResult {
    pub id: String,
    pub status: Status,
    pub field: String,
    pub prime: Option<u64>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    pub payload: BTreeMap<String, String>,
}

impl CertificateResult {
    pub fn new(id: &str, field: impl Into<String>) -> Self {
        CertificateResult {
            id: id.to_string(),
            status: Status::Pass,
            field: field.into(),
            prime: None,
            seed: None,
            elapsed_ms: 0,
            payload: BTreeMap::new(),
        }
    }

    pub fn skipped(id: &str, reason: &str) -> Self {
        let mut r = Self::new(id, "");
        r.status = Status::Skipped;
        r.put("reason", reason);
        r
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.payload.insert(key.to_string(), value.to_string());
    }

    /// Records a predicate; any false check fails the certificate.
    pub fn check(&mut self, name: &str, ok: bool) -> bool {
        self.put(&format!("check.{name}"), ok);
        if !ok && self.status != Status::Skipped {
            self.status = Status::Fail;
        }
        ok
    }

    /// Turns an error into a failed check rather than aborting the run.
    pub fn fail_with(&mut self, name: &str, err: &dyn std::fmt::Display) {
        self.put(&format!("error.{name}"), err);
        self.check(name, false);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
