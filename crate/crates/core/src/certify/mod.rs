//! The certificate runner behind `heis8-certify`: a fixed registry of claim
//! ids, run configuration, and the text and JSON reports.

mod checks;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::is_prime;
use crate::geometry::{CertificateResult, Status};

/// Claim ids in execution order, each with the phrase it certifies.
pub const REGISTRY: [(&str, &str); 18] = [
    (
        "group-order-512",
        "These automorphisms generate the Heisenberg group H₈",
    ),
    ("center-mu8", "a central extension of (ℤ/8ℤ)² by μ₈"),
    ("quotient-Z8-squared", "G≅H₈/Z(H₈)≅(ℤ/8ℤ)²"),
    ("commutator-xi", "σ(x_i)=x_{i-1} and τ(x_i)=ξ^{-i}x_i"),
    ("ideal-invariance", "f=σ(f)=σ²(f)=σ³(f)=0"),
    ("base-point-on-V", "y=(0:y₁:y₂:y₃:0:−y₃:−y₂:−y₁)"),
    ("orbit-64-singular", "singular only at 64 points"),
    (
        "odp-proxy",
        "each singularity being an ordinary double point",
    ),
    ("minus-plane-4points", "V₈,y∩P²₋={y,σ⁴(y),τ⁴(y),σ⁴τ⁴(y)}"),
    ("moore-skew", "it becomes skew-symmetric"),
    ("pfaffian-formula", "The Pfaffian can be computed as"),
    (
        "psi-quartic-membership",
        "is contained in the ideal generated by the 2×2 minors",
    ),
    ("quartic-smooth-genus3", "the genus of C is 3"),
    ("topology-numbers", "This degree is 64"),
    (
        "monodromy-nilpotent",
        "three independent monodromy invariant sections",
    ),
    ("unipotent-log", "log α* = (α*−I)−½(α*−I)²"),
    ("wedge-lemma", "either e₁∧f≠0 or e₂∧f≠0"),
    ("torsion-counting", "Λ/8Λ≅⅛Λ/Λ"),
];

/// Deliberately broken check used to exercise the failure exit code. It is
/// not listed and not part of `all`; it runs only when named explicitly.
pub const DEBUG_FAILING_CHECK: &str = "debug-corrupted-pfaffian";

pub const DEFAULT_PRIMES: [u64; 3] = [17, 41, 73];
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_Y: [i64; 3] = [1, 2, 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown check id `{0}` (see `heis8-certify list`)")]
    UnknownCheckId(String),
    #[error("invalid prime {0}: primes must be odd primes congruent to 1 mod 8")]
    InvalidPrime(u64),
    #[error("the prime list is empty")]
    NoPrimes,
    #[error("the base point y must be nonzero")]
    ZeroBasePoint,
    #[error("--jobs must be positive")]
    ZeroJobs,
}

/// Validated run configuration. `checks` holds resolved ids in registry
/// order; `jobs = None` means one worker per logical processor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub checks: Vec<String>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub y: [i64; 3],
    pub fast: bool,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            checks: REGISTRY.iter().map(|(id, _)| id.to_string()).collect(),
            primes: DEFAULT_PRIMES.to_vec(),
            seed: DEFAULT_SEED,
            y: DEFAULT_Y,
            fast: false,
            jobs: None,
        }
    }
}

impl RunConfig {
    /// `checks` may contain `all`. Duplicates are dropped and the selection
    /// is put in registry order, with the hidden debug check last.
    pub fn new(
        checks: &[String],
        primes: &[u64],
        seed: u64,
        y: [i64; 3],
        fast: bool,
        jobs: Option<usize>,
    ) -> Result<Self, ConfigError> {
        let mut wanted = BTreeSet::new();
        for c in checks {
            let c = c.trim();
            if c == "all" {
                wanted.extend(REGISTRY.iter().map(|(id, _)| *id));
            } else if c == DEBUG_FAILING_CHECK {
                wanted.insert(DEBUG_FAILING_CHECK);
            } else if let Some((id, _)) = REGISTRY.iter().find(|(id, _)| *id == c) {
                wanted.insert(id);
            } else {
                return Err(ConfigError::UnknownCheckId(c.to_string()));
            }
        }
        if checks.is_empty() {
            wanted.extend(REGISTRY.iter().map(|(id, _)| *id));
        }
        let mut ordered: Vec<String> = REGISTRY
            .iter()
            .filter(|(id, _)| wanted.contains(id))
            .map(|(id, _)| id.to_string())
            .collect();
        if wanted.contains(DEBUG_FAILING_CHECK) {
            ordered.push(DEBUG_FAILING_CHECK.to_string());
        }
        if primes.is_empty() {
            return Err(ConfigError::NoPrimes);
        }
        for &p in primes {
            if p <= 2 || p % 8 != 1 || !is_prime(p) {
                return Err(ConfigError::InvalidPrime(p));
            }
        }
        let mut ps = primes.to_vec();
        ps.dedup();
        if y == [0, 0, 0] {
            return Err(ConfigError::ZeroBasePoint);
        }
        if jobs == Some(0) {
            return Err(ConfigError::ZeroJobs);
        }
        Ok(RunConfig {
            checks: ordered,
            primes: ps,
            seed,
            y,
            fast,
            jobs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub results: Vec<CertificateResult>,
    pub status: Status,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// 0 when every selected certificate passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &self.results {
            let tag = r.status.as_str().to_uppercase();
            let _ = write!(out, "{tag:<7} {:<width$}  {}", r.id, r.field);
            if let Some(p) = r.prime {
                let _ = write!(out, " p={p}");
            }
            let _ = writeln!(out, "  [{} ms]", r.elapsed_ms);
            if r.status != Status::Pass {
                for (k, v) in r
                    .payload
                    .iter()
                    .filter(|(k, _)| k.starts_with("error.") || k == &"reason")
                {
                    let _ = writeln!(out, "        {k}: {v}");
                }
                for (k, _) in r
                    .payload
                    .iter()
                    .filter(|(k, v)| k.starts_with("check.") && v.as_str() == "false")
                {
                    let _ = writeln!(out, "        failed {}", &k["check.".len()..]);
                }
            }
        }
        let passed = self.results.iter().filter(|r| r.passed()).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} certificates passed in {} ms",
            self.status.as_str().to_uppercase(),
            self.results.len(),
            self.elapsed_ms
        );
        out
    }
}

/// Lines `id<TAB>anchor` for every public claim.
pub fn list_checks() -> String {
    REGISTRY
        .iter()
        .map(|(id, anchor)| format!("{id}\t{anchor}\n"))
        .collect()
}

/// Runs one certificate by id. Unknown ids come back as a failed result.
pub fn run_check(id: &str, config: &RunConfig) -> CertificateResult {
    let start = Instant::now();
    let mut r = checks::run(id, config);
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

/// Runs the selected certificates on a pool of `config.jobs` workers and
/// collects the results in registry order.
pub fn run(config: &RunConfig) -> Report {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let results: Vec<CertificateResult> = match builder.build() {
        Ok(pool) => pool.install(|| {
            config
                .checks
                .par_iter()
                .map(|id| run_check(id, config))
                .collect()
        }),
        Err(_) => config
            .checks
            .iter()
            .map(|id| run_check(id, config))
            .collect(),
    };
    let status = if results.iter().all(CertificateResult::passed) {
        Status::Pass
    } else {
        Status::Fail
    };
    Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        results,
        status,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let all = vec!["all".to_string()];
        assert_eq!(
            RunConfig::new(&["no-such-check".into()], &[17], 1, [1, 2, 3], false, None),
            Err(ConfigError::UnknownCheckId("no-such-check".into()))
        );
        assert_eq!(
            RunConfig::new(&all, &[7], 1, [1, 2, 3], false, None),
            Err(ConfigError::InvalidPrime(7))
        );
        assert_eq!(
            RunConfig::new(&all, &[33], 1, [1, 2, 3], false, None),
            Err(ConfigError::InvalidPrime(33))
        );
        let c = RunConfig::new(
            &["wedge-lemma".into(), "center-mu8".into()],
            &[17],
            1,
            [1, 2, 3],
            false,
            None,
        )
        .unwrap();
        assert_eq!(c.checks, vec!["center-mu8", "wedge-lemma"]);
        assert_eq!(
            RunConfig::new(&all, &[17], 1, [1, 2, 3], false, None)
                .unwrap()
                .checks
                .len(),
            18
        );
    }

    #[test]
    fn listing_has_every_id_once() {
        let text = list_checks();
        assert_eq!(text.lines().count(), 18);
        assert!(text.contains("pfaffian-formula\tThe Pfaffian can be computed as"));
        assert!(!text.contains(DEBUG_FAILING_CHECK));
    }
}
