use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use super::PreorderSource;
use crate::finite::CayleyTable;

/// Where the instance behind a report came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    Finite {
        order: usize,
        monoid_index: usize,
        table: CayleyTable,
        preorder: Vec<Vec<bool>>,
        source: PreorderSource,
    },
    Family {
        description: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, rhs: Counts) {
        self.pass += rhs.pass;
        self.fail += rhs.fail;
        self.skipped += rhs.skipped;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub provenance: Provenance,
    pub claims: Vec<Claim>,
    pub counts: Counts,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, provenance: Provenance) -> Self {
        VerificationReport {
            suite: suite.into(),
            provenance,
            claims: Vec::new(),
            counts: Counts::default(),
        }
    }

    pub fn record(&mut self, claim: impl Into<String>, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.counts.pass += 1,
            Verdict::Fail { .. } => self.counts.fail += 1,
            Verdict::Skipped { .. } => self.counts.skipped += 1,
        }
        self.claims.push(Claim { claim: claim.into(), verdict });
    }

    pub fn pass(&mut self, claim: impl Into<String>) {
        self.record(claim, Verdict::Pass);
    }

    pub fn fail(&mut self, claim: impl Into<String>, witness: impl Into<String>) {
        self.record(claim, Verdict::Fail { witness: witness.into() });
    }

    pub fn skip(&mut self, claim: impl Into<String>, reason: impl Into<String>) {
        self.record(claim, Verdict::Skipped { reason: reason.into() });
    }

    /// Records `Pass` when `ok`, otherwise a failure carrying `witness()`.
    pub fn check(&mut self, claim: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(claim);
        } else {
            self.fail(claim, witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims
            .iter()
            .filter(|c| matches!(c.verdict, Verdict::Fail { .. }))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// Sum of the counts of many reports.
    pub fn total<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Counts {
        let mut c = Counts::default();
        for r in reports {
            c += r.counts;
        }
        c
    }
}
