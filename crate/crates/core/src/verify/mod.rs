//! Exact verification of the relation suites on graded truncations.
//!
//! Every suite produces a [`SuiteReport`]. Relation families resolve one
//! global sign `ς` for their right-hand side: a family passes when a single
//! `ς ∈ {+1, -1}` validates every tested instance at every sampled point.
//! Families marked diagnostic are reported alongside but never decide a
//! suite's outcome.

pub mod relations;
pub mod residue;
pub mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::ModelConfig;
use crate::fock::{Fault, FockError, FockSpace};
use crate::scalars::{
    derive_seed, sample_point, Backend, Field, PrimeField, RationalField, ScalarError,
};

pub use relations::{
    compare, current_families, eval_side, eval_term, presentation_families, Family, Letter, QtPoly,
    RelationInstance, Term, Verdict,
};
pub use residue::{residue_lhs, residue_rhs, ResiduePoint};
pub use suites::{
    check_boundary_identity, check_cross_check, check_current_relations, check_grading,
    check_residue_identity, check_structural, check_twisted_presentation, Orientation,
};

/// Attempts per point before a degenerate sample is reported as an error.
pub const RESAMPLE_BUDGET: u64 = 8;

/// Failures recorded per family; the total is always counted.
pub const FAILURE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid run configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("point {index} stayed degenerate after {attempts} samples: {last}")]
    Degenerate {
        index: usize,
        attempts: u64,
        last: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Boundary,
    CrossCheck,
    Currents,
    Presentation,
    Residue,
    Structural,
    Grading,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Boundary,
        Suite::CrossCheck,
        Suite::Currents,
        Suite::Presentation,
        Suite::Residue,
        Suite::Structural,
        Suite::Grading,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Boundary => "boundary",
            Suite::CrossCheck => "cross-check",
            Suite::Currents => "currents",
            Suite::Presentation => "presentation",
            Suite::Residue => "residue",
            Suite::Structural => "structural",
            Suite::Grading => "grading",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a verification run depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub model: ModelConfig,
    /// Basis vectors with at most this many boxes are tested.
    pub truncation: u32,
    /// Box bound for the exact (non-evaluating) checks.
    pub exact_boxes: u32,
    /// Mode window `|s| ≤ modes`.
    pub modes: i64,
    /// Θ series order; at least `2 · modes + 2`.
    pub order: usize,
    pub prime: u64,
    pub seed: u64,
    pub prime_points: usize,
    pub rational_points: usize,
    /// Use the rational points in the operator relation suites as well.
    pub rational_relations: bool,
    pub residue_size: usize,
    pub residue_modes: i64,
    pub residue_points: usize,
    pub random_characters: usize,
    pub suites: Vec<Suite>,
    /// Record wall-clock times; off by default so reports are byte-stable.
    pub timing: bool,
    /// Test hook: corrupt one operator matrix element.
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(model: ModelConfig) -> Self {
        VerifyConfig {
            model,
            truncation: 5,
            exact_boxes: 6,
            modes: 2,
            order: 6,
            prime: crate::scalars::MERSENNE_61,
            seed: 42,
            prime_points: 3,
            rational_points: 1,
            rational_relations: false,
            residue_size: 6,
            residue_modes: 3,
            residue_points: 5,
            random_characters: 1000,
            suites: Suite::ALL.to_vec(),
            timing: false,
            fault: None,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: String| Err(VerifyError::Config(m));
        if self.truncation < 1 {
            return bad("truncation must be at least 1".into());
        }
        if self.modes < 0 {
            return bad("mode window must be nonnegative".into());
        }
        if self.order < 2 * self.modes as usize + 2 {
            return bad(format!(
                "series order {} must be at least 2*modes+2 = {}",
                self.order,
                2 * self.modes + 2
            ));
        }
        if self.prime_points + self.rational_points == 0 {
            return bad("at least one parameter point is required".into());
        }
        PrimeField::new(self.prime)?;
        Ok(())
    }

    fn needs_spaces(&self) -> bool {
        self.suites.iter().any(|s| {
            matches!(
                s,
                Suite::CrossCheck
                    | Suite::Currents
                    | Suite::Presentation
                    | Suite::Structural
                    | Suite::Grading
            )
        })
    }
}

/// How a parameter point was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointInfo {
    pub index: usize,
    pub backend: Backend,
    pub seed: u64,
    pub attempts: u64,
    /// `q, t, X_1, …` as serialized field values.
    pub values: Vec<String>,
}

/// Resolved right-hand-side sign of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignResolution {
    /// `None` when no instance distinguishes the signs.
    pub sign: Option<i8>,
    pub consistent: bool,
}

/// One failing instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub family: String,
    pub colors: Vec<u32>,
    pub lambda: String,
    pub modes: Vec<i64>,
    pub point: usize,
    pub detail: String,
}

/// Tally of one family over all points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub name: String,
    pub statement: String,
    pub diagnostic: bool,
    pub instances: u64,
    pub trivial: u64,
    pub plus: u64,
    pub minus: u64,
    pub mismatches: u64,
    pub sign: SignResolution,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl FamilyReport {
    pub fn new(name: &str, statement: &str, diagnostic: bool) -> Self {
        FamilyReport {
            name: name.to_string(),
            statement: statement.to_string(),
            diagnostic,
            instances: 0,
            trivial: 0,
            plus: 0,
            minus: 0,
            mismatches: 0,
            sign: SignResolution {
                sign: None,
                consistent: true,
            },
            passed: true,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, verdict: Verdict, failure: impl FnOnce() -> Failure) {
        self.instances += 1;
        match verdict {
            Verdict::Trivial => self.trivial += 1,
            Verdict::Plus => self.plus += 1,
            Verdict::Minus => self.minus += 1,
            Verdict::Mismatch => {
                self.mismatches += 1;
                if self.failures.len() < FAILURE_CAP {
                    self.failures.push(failure());
                }
            }
        }
    }

    /// Records an evaluation error as a failing instance.
    pub fn record_error(&mut self, failure: Failure) {
        self.instances += 1;
        self.mismatches += 1;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(failure);
        }
    }

    pub fn merge(&mut self, other: FamilyReport) {
        self.instances += other.instances;
        self.trivial += other.trivial;
        self.plus += other.plus;
        self.minus += other.minus;
        self.mismatches += other.mismatches;
        for f in other.failures {
            if self.failures.len() < FAILURE_CAP {
                self.failures.push(f);
            }
        }
    }

    /// Resolves the sign and pass flag from the tallies.
    pub fn finish(mut self) -> Self {
        let consistent = !(self.plus > 0 && self.minus > 0);
        let sign = match (self.plus > 0, self.minus > 0) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        };
        self.sign = SignResolution { sign, consistent };
        self.passed = consistent && self.mismatches == 0;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub points: usize,
    pub instances: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    /// Resolved sign per gating family.
    pub sign: BTreeMap<String, SignResolution>,
    pub families: Vec<FamilyReport>,
    /// Matching index orientation, for the cross-check suite.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orientation: Option<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl SuiteReport {
    pub fn from_families(name: &str, points: usize, families: Vec<FamilyReport>) -> Self {
        let gating: Vec<&FamilyReport> = families.iter().filter(|f| !f.diagnostic).collect();
        let passed = gating.iter().all(|f| f.passed);
        let instances = gating.iter().map(|f| f.instances).sum();
        let failure_count = gating.iter().map(|f| f.mismatches).sum();
        let failures = gating
            .iter()
            .flat_map(|f| f.failures.iter().cloned())
            .take(FAILURE_CAP * 4)
            .collect();
        let sign = gating.iter().map(|f| (f.name.clone(), f.sign)).collect();
        SuiteReport {
            name: name.to_string(),
            passed,
            points,
            instances,
            failure_count,
            failures,
            sign,
            families,
            orientation: None,
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// Gating families that failed.
    pub fn failed_families(&self) -> Vec<&FamilyReport> {
        self.families
            .iter()
            .filter(|f| !f.diagnostic && !f.passed)
            .collect()
    }

    pub fn family(&self, name: &str) -> Option<&FamilyReport> {
        self.families.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub n: u32,
    pub w: usize,
    pub colors: Vec<u32>,
    pub truncation: u32,
    pub exact_boxes: u32,
    pub modes: i64,
    pub order: usize,
}

/// Full report of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ConfigSummary,
    pub backend: String,
    pub seed: u64,
    pub points: Vec<PointInfo>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Sampled points with their fully built operator spaces.
pub struct Spaces {
    pub prime: Vec<FockSpace<PrimeField>>,
    pub rational: Vec<FockSpace<RationalField>>,
    pub info: Vec<PointInfo>,
}

/// Samples one point, resampling degenerate draws, and builds its tables.
pub fn sample_space<F: Field>(
    cfg: &VerifyConfig,
    field: &F,
    index: usize,
    seed: u64,
) -> Result<(FockSpace<F>, PointInfo), VerifyError> {
    let mut last = String::new();
    for attempt in 0..RESAMPLE_BUDGET {
        let s = if attempt == 0 {
            seed
        } else {
            derive_seed(seed, attempt)
        };
        let point = sample_point(&cfg.model, field, s)?;
        let values = point.describe();
        let space = FockSpace::new(&cfg.model, point, cfg.truncation + 3, cfg.order)
            .with_fault(cfg.fault.clone());
        match space.build_all() {
            Ok(()) => {
                let info = PointInfo {
                    index,
                    backend: field.backend(),
                    seed: s,
                    attempts: attempt + 1,
                    values,
                };
                return Ok((space, info));
            }
            Err(e) if e.is_resamplable() => last = e.to_string(),
            Err(e) => return Err(e.into()),
        }
    }
    Err(VerifyError::Degenerate {
        index,
        attempts: RESAMPLE_BUDGET,
        last,
    })
}

/// Samples every configured point and builds its operator tables.
pub fn build_spaces(cfg: &VerifyConfig) -> Result<Spaces, VerifyError> {
    let prime = PrimeField::new(cfg.prime)?;
    let rational = RationalField::default();
    let p: Vec<_> = (0..cfg.prime_points)
        .into_par_iter()
        .map(|i| sample_space(cfg, &prime, i, derive_seed(cfg.seed, i as u64)))
        .collect::<Result<_, _>>()?;
    let r: Vec<_> = (0..cfg.rational_points)
        .into_par_iter()
        .map(|i| {
            let index = cfg.prime_points + i;
            sample_space(
                cfg,
                &rational,
                index,
                derive_seed(cfg.seed, 1000 + i as u64),
            )
        })
        .collect::<Result<_, _>>()?;
    let mut info = Vec::new();
    let mut prime_spaces = Vec::new();
    for (s, i) in p {
        prime_spaces.push(s);
        info.push(i);
    }
    let mut rational_spaces = Vec::new();
    for (s, i) in r {
        rational_spaces.push(s);
        info.push(i);
    }
    Ok(Spaces {
        prime: prime_spaces,
        rational: rational_spaces,
        info,
    })
}

fn backend_label(cfg: &VerifyConfig) -> String {
    let mut parts = Vec::new();
    if cfg.prime_points > 0 {
        parts.push(format!("prime({})x{}", cfg.prime, cfg.prime_points));
    }
    if cfg.rational_points > 0 {
        parts.push(format!("rational x{}", cfg.rational_points));
    }
    parts.join(" + ")
}

/// Runs the selected suites for one configuration.
pub fn run(cfg: &VerifyConfig) -> Result<Report, VerifyError> {
    cfg.validate()?;
    let spaces = if cfg.needs_spaces() {
        Some(build_spaces(cfg)?)
    } else {
        None
    };
    let mut suites = Vec::new();
    for &suite in &cfg.suites {
        let start = Instant::now();
        let mut report = match (suite, &spaces) {
            (Suite::Boundary, _) => check_boundary_identity(&cfg.model, cfg.exact_boxes),
            (Suite::Residue, _) => check_residue_identity(
                cfg.residue_size,
                cfg.residue_modes,
                cfg.residue_points,
                cfg.prime,
                cfg.seed,
            )?,
            (Suite::CrossCheck, Some(sp)) => check_cross_check(&cfg.model, cfg.truncation, sp),
            (Suite::Currents, Some(sp)) => check_current_relations(
                &cfg.model,
                cfg.truncation,
                cfg.modes,
                sp,
                cfg.rational_relations,
            ),
            (Suite::Presentation, Some(sp)) => check_twisted_presentation(
                &cfg.model,
                cfg.truncation,
                cfg.modes,
                sp,
                cfg.rational_relations,
            ),
            (Suite::Structural, Some(sp)) => check_structural(
                &cfg.model,
                cfg.exact_boxes,
                cfg.random_characters,
                cfg.seed,
                sp,
            ),
            (Suite::Grading, Some(sp)) => check_grading(&cfg.model, cfg.truncation, cfg.modes, sp),
            (_, None) => unreachable!("spaces are built for every suite that needs them"),
        };
        if cfg.timing {
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        suites.push(report);
    }
    Ok(Report {
        config: ConfigSummary {
            n: cfg.model.n(),
            w: cfg.model.w(),
            colors: cfg.model.colors().to_vec(),
            truncation: cfg.truncation,
            exact_boxes: cfg.exact_boxes,
            modes: cfg.modes,
            order: cfg.order,
        },
        backend: backend_label(cfg),
        seed: cfg.seed,
        points: spaces.map(|s| s.info).unwrap_or_default(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

/// Runs every configuration in order.
pub fn run_all(configs: &[VerifyConfig]) -> Result<Vec<Report>, VerifyError> {
    configs.iter().map(run).collect()
}

/// The four model configurations used for acceptance.
pub fn default_models() -> Vec<ModelConfig> {
    [(3, vec![0]), (3, vec![0, 1]), (4, vec![0, 2]), (5, vec![3])]
        .into_iter()
        .map(|(n, c)| ModelConfig::new(n, c).expect("valid default model"))
        .collect()
}
