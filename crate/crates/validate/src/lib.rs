//! Acceptance criteria evaluated over the standard configuration grid.
//!
//! Each criterion maps to one or more verification suites run on the four
//! grid configurations at their default sizes (truncation 5, exact checks
//! up to 6 boxes, modes `|s| ≤ 2`, three prime points and one rational
//! point). Reports are produced once and shared between criteria.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use qtor_core::verify::{default_models, run, Report, SuiteReport, VerifyConfig, VerifyError};

/// Result of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub summary: String,
    /// One line per violated requirement.
    pub problems: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {}: {} ({:.1}s, budget {}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.summary,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        for p in &self.problems {
            write!(f, "\n        {p}")?;
        }
        Ok(())
    }
}

/// The grid configurations at acceptance sizes.
pub fn grid() -> Vec<VerifyConfig> {
    default_models()
        .into_iter()
        .map(VerifyConfig::new)
        .collect()
}

fn label(r: &Report) -> String {
    format!("n={} colors={:?}", r.config.n, r.config.colors)
}

fn suite_time(reports: &[Report], name: &str) -> Duration {
    let ms = reports
        .iter()
        .filter_map(|r| r.suite(name))
        .filter_map(|s| s.elapsed_ms)
        .sum();
    Duration::from_millis(ms)
}

fn suites<'a>(reports: &'a [Report], name: &str) -> Vec<(String, &'a SuiteReport)> {
    reports
        .iter()
        .map(|r| (label(r), r.suite(name).expect("every suite is selected")))
        .collect()
}

fn failed_families(config: &str, s: &SuiteReport) -> Vec<String> {
    s.failed_families()
        .into_iter()
        .map(|f| {
            let sign = if f.sign.consistent {
                ""
            } else {
                ", both signs seen"
            };
            format!(
                "{config}: {} ({} of {} instances mismatch{sign})",
                f.name, f.mismatches, f.instances
            )
        })
        .collect()
}

/// Resolved signs must agree across configurations.
fn sign_conflicts(per_config: &[(String, &SuiteReport)]) -> Vec<String> {
    let mut seen: BTreeMap<&str, BTreeMap<i8, Vec<&str>>> = BTreeMap::new();
    for (cfg, s) in per_config {
        for (family, res) in &s.sign {
            if let Some(sign) = res.sign {
                seen.entry(family)
                    .or_default()
                    .entry(sign)
                    .or_default()
                    .push(cfg);
            }
        }
    }
    seen.into_iter()
        .filter(|(_, by_sign)| by_sign.len() > 1)
        .map(|(family, by_sign)| format!("{family}: sign differs across configs {by_sign:?}"))
        .collect()
}

fn instances(per_config: &[(String, &SuiteReport)]) -> u64 {
    per_config.iter().map(|(_, s)| s.instances).sum()
}

fn relation_criterion(
    id: u8,
    title: &'static str,
    reports: &[Report],
    name: &str,
    required: &[&str],
) -> Outcome {
    let per = suites(reports, name);
    let mut problems: Vec<String> = per
        .iter()
        .flat_map(|(c, s)| failed_families(c, s))
        .collect();
    problems.extend(sign_conflicts(&per));
    for fam in required {
        for (c, s) in &per {
            if s.family(fam).is_none() {
                problems.push(format!("{c}: required family {fam} was not checked"));
            }
        }
    }
    let families = per.first().map_or(0, |(_, s)| {
        s.families.iter().filter(|f| !f.diagnostic).count()
    });
    let signs: Vec<String> = per
        .first()
        .map(|(_, s)| {
            s.sign
                .iter()
                .filter(|&(_f, r)| r.sign == Some(-1))
                .map(|(f, _r)| f.clone())
                .collect()
        })
        .unwrap_or_default();
    Outcome {
        id,
        title,
        passed: problems.is_empty(),
        summary: format!(
            "{} configs, {families} families, {} instances, sign -1 resolved for {signs:?}",
            per.len(),
            instances(&per)
        ),
        problems,
        elapsed: suite_time(reports, name),
        budget: Duration::from_secs(300),
    }
}

fn simple_criterion(
    id: u8,
    title: &'static str,
    reports: &[Report],
    name: &str,
    budget: u64,
) -> Outcome {
    let per = suites(reports, name);
    let problems: Vec<String> = per
        .iter()
        .flat_map(|(c, s)| failed_families(c, s))
        .collect();
    Outcome {
        id,
        title,
        passed: problems.is_empty(),
        summary: format!("{} configs, {} instances", per.len(), instances(&per)),
        problems,
        elapsed: suite_time(reports, name),
        budget: Duration::from_secs(budget),
    }
}

fn cross_check_criterion(reports: &[Report]) -> Outcome {
    let per = suites(reports, "cross-check");
    let mut problems: Vec<String> = per
        .iter()
        .flat_map(|(c, s)| failed_families(c, s))
        .collect();
    let orientations: Vec<Option<&str>> =
        per.iter().map(|(_, s)| s.orientation.as_deref()).collect();
    if orientations.iter().any(Option::is_none) {
        problems.push("no orientation matches every pair".into());
    } else if orientations.windows(2).any(|w| w[0] != w[1]) {
        problems.push(format!(
            "orientation differs across configs: {orientations:?}"
        ));
    }
    Outcome {
        id: 2,
        title: "Coefficient cross-check",
        passed: problems.is_empty(),
        summary: format!(
            "{} configs, {} pairs x points, orientation {}",
            per.len(),
            instances(&per),
            orientations.first().copied().flatten().unwrap_or("none")
        ),
        problems,
        elapsed: suite_time(reports, "cross-check"),
        budget: Duration::from_secs(60),
    }
}

fn determinism_criterion(cfg: &VerifyConfig) -> Result<Outcome, VerifyError> {
    let start = std::time::Instant::now();
    let a = run(cfg)?.to_json();
    let b = run(cfg)?.to_json();
    let same = a == b;
    Ok(Outcome {
        id: 7,
        title: "Determinism",
        passed: same,
        summary: format!(
            "two runs of n={} colors={:?} seed {}: {} bytes each",
            cfg.model.n(),
            cfg.model.colors(),
            cfg.seed,
            a.len()
        ),
        problems: if same {
            Vec::new()
        } else {
            vec!["reports differ".into()]
        },
        elapsed: start.elapsed(),
        budget: Duration::from_secs(60),
    })
}

/// Runs every suite on the grid and evaluates all eight criteria in order.
pub fn evaluate() -> Result<Vec<Outcome>, VerifyError> {
    let configs = grid();
    let timed: Vec<VerifyConfig> = configs
        .iter()
        .cloned()
        .map(|c| VerifyConfig { timing: true, ..c })
        .collect();
    let reports: Vec<Report> = timed.iter().map(run).collect::<Result<_, _>>()?;
    Ok(vec![
        simple_criterion(1, "Boundary identity, exact", &reports, "boundary", 10),
        cross_check_criterion(&reports),
        relation_criterion(3, "Current relations", &reports, "currents", &[]),
        relation_criterion(
            4,
            "Twisted presentation",
            &reports,
            "presentation",
            &["presentation/h0 inverse", "presentation/[h,h]"],
        ),
        simple_criterion(5, "Residue identity", &reports, "residue", 10),
        simple_criterion(6, "Structural properties", &reports, "structural", 60),
        determinism_criterion(&configs[0])?,
        simple_criterion(8, "Grading", &reports, "grading", 60),
    ])
}
