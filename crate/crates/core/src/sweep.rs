//! Verification sweeps over parameter ranges.
//!
//! Checks fan out over rayon; results come back in job order, which within
//! a suite is ascending by identity, then by parameters.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::ladder::{susy_partner_check, verify_identity, IdentityId, IdentityReport, PartnerKind};
use crate::ring::{fraction_string, int, rat, HalfPower, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Ode,
    Identities,
    Partners,
    Orthogonality,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: u32,
    pub max_k: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_n: 10,
            max_k: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkippedCheck {
    pub identity: IdentityId,
    #[serde(with = "crate::serde_fraction::params")]
    pub params: Vec<Rational>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErroredCheck {
    pub identity: IdentityId,
    #[serde(with = "crate::serde_fraction::params")]
    pub params: Vec<Rational>,
    pub error: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub reports: Vec<IdentityReport>,
    pub skipped: Vec<SkippedCheck>,
    pub errors: Vec<ErroredCheck>,
}

impl SweepOutcome {
    pub fn summary(&self) -> Summary {
        let passed = self.reports.iter().filter(|r| r.holds).count();
        let failed = self.reports.len() - passed + self.errors.len();
        Summary {
            total: self.reports.len() + self.errors.len() + self.skipped.len(),
            passed,
            failed,
            skipped: self.skipped.len(),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.summary().failed == 0
    }
}

#[derive(Clone, Debug)]
enum Job {
    Identity(IdentityId, Vec<Rational>),
    /// `a_0† P_0 = 0`: the Legendre pair at level zero.
    LegendreZeroMode,
}

enum JobResult {
    Report(IdentityReport),
    Skipped(SkippedCheck),
    Errored(ErroredCheck),
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&i| int(i)).collect()
}

fn jobs(suite: Suite, bounds: Bounds) -> Vec<Job> {
    let n_max = bounds.max_n as i64;
    let k_max = bounds.max_k as i64;
    let id = |id: IdentityId, p: Vec<Rational>| Job::Identity(id, p);
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for s in [
                Suite::Ode,
                Suite::Identities,
                Suite::Partners,
                Suite::Orthogonality,
            ] {
                out.extend(jobs(s, bounds));
            }
        }
        Suite::Ode => {
            out.extend((0..=n_max).map(|n| id(IdentityId::Eq8, ints(&[n]))));
            for n in 0..=n_max {
                out.extend((0..=n).map(|m| id(IdentityId::Eq25, ints(&[n, m]))));
            }
        }
        Suite::Identities => {
            out.extend((1..=n_max).map(|n| id(IdentityId::Eq11, ints(&[n]))));
            out.extend((2..=n_max).map(|n| id(IdentityId::Eq14, ints(&[n]))));
            out.extend((1..=k_max).map(|k| id(IdentityId::Eq18, ints(&[k]))));
            for n in 1..=n_max {
                out.extend((-n..=n).map(|j| id(IdentityId::Eq19, vec![int(n), rat(j, 2)])));
            }
            for eq in [IdentityId::Eq20, IdentityId::Eq21, IdentityId::Eq22] {
                out.extend((1..=k_max).map(|k| id(eq, ints(&[k]))));
            }
            for eq in [IdentityId::Eq27, IdentityId::Eq30] {
                out.extend((0..=k_max).map(|m| id(eq, ints(&[m]))));
            }
            for n in 1..=n_max {
                out.extend((1..=n).map(|m| id(IdentityId::Eq33, ints(&[n, m]))));
            }
            out.extend((1..=k_max).map(|k| id(IdentityId::Eq3Generic, vec![rat(k, 2)])));
        }
        Suite::Partners => {
            out.push(Job::LegendreZeroMode);
            out.extend((1..=n_max).map(|n| id(IdentityId::Eq17, ints(&[n]))));
            out.extend((0..=n_max).map(|m| id(IdentityId::Eq29, ints(&[n_max, m]))));
        }
        Suite::Orthogonality => {
            for n in 0..=n_max {
                for n2 in n + 1..=n_max {
                    out.extend((0..=n).map(|m| id(IdentityId::Ortho, ints(&[n, n2, m]))));
                }
            }
        }
    }
    out
}

fn run_job(job: &Job) -> JobResult {
    let (identity, params, result) = match job {
        Job::Identity(identity, params) => (
            *identity,
            params.clone(),
            verify_identity(*identity, params),
        ),
        Job::LegendreZeroMode => {
            let err = match susy_partner_check(0, PartnerKind::Legendre, &HalfPower::one()) {
                Ok(_) => Error::Parse("level-zero Legendre pair was not a zero mode".into()),
                Err(e) => e,
            };
            (IdentityId::Eq17, vec![int(0)], Err(err))
        }
    };
    match result {
        Ok(report) => JobResult::Report(report),
        Err(Error::ZeroModeSkipped) => JobResult::Skipped(SkippedCheck {
            identity,
            params,
            reason: Error::ZeroModeSkipped.to_string(),
        }),
        Err(e) => JobResult::Errored(ErroredCheck {
            identity,
            params,
            error: e.to_string(),
        }),
    }
}

pub fn run_suite(suite: Suite, bounds: Bounds) -> SweepOutcome {
    let results: Vec<JobResult> = jobs(suite, bounds).par_iter().map(run_job).collect();
    let mut out = SweepOutcome::default();
    for r in results {
        match r {
            JobResult::Report(r) => out.reports.push(r),
            JobResult::Skipped(s) => out.skipped.push(s),
            JobResult::Errored(e) => out.errors.push(e),
        }
    }
    out
}

pub fn describe_params(params: &[Rational]) -> String {
    params
        .iter()
        .map(fraction_string)
        .collect::<Vec<_>>()
        .join(", ")
}
