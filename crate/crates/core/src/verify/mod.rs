//! Named property suites over named corpora, with structured reports.
//!
//! A suite is a predicate over a corpus case. Each case ends in `pass` or
//! `fail`, and carries up to a few witnesses when it fails. Some cases are
//! expected to fail (the d-vector analogue of exchangeability outside finite
//! type); a report is ok when every case met its expectation.

pub mod corpus;
pub mod golden;
mod report;
mod suites;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{builtin_corpora, corpus, Corpus, CorpusCase, PairExpectation, WordPolicy};
pub use report::to_junit;
pub use suites::SUITES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub expected: Outcome,
    pub actual: Outcome,
    /// Number of individual comparisons made.
    pub checks: usize,
    pub message: String,
    /// Up to [`MAX_WITNESSES`] failing instances.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<serde_json::Value>,
}

impl CaseResult {
    pub fn met(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub corpus: String,
    pub ok: bool,
    pub cases: Vec<CaseResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub ok: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(suites: Vec<SuiteReport>) -> Report {
        Report {
            ok: suites.iter().all(|s| s.ok),
            suites,
        }
    }
}

pub const MAX_WITNESSES: usize = 5;

/// What a suite found on one case.
#[derive(Default)]
pub(crate) struct Findings {
    pub checks: usize,
    pub failures: usize,
    pub witnesses: Vec<serde_json::Value>,
    pub notes: Vec<String>,
}

impl Findings {
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> serde_json::Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

/// A named property with its default corpora.
pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub default_corpora: &'static [&'static str],
    pub(crate) applies: fn(&CorpusCase) -> bool,
    pub(crate) run: fn(&CorpusCase) -> Result<Findings>,
    pub(crate) expect_fail: fn(&CorpusCase) -> bool,
}

pub fn suite(name: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.into()))
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite on one corpus. Cases run in parallel; the report keeps
/// corpus order.
pub fn run_suite_on(s: &Suite, corpus: &Corpus) -> SuiteReport {
    let cases: Vec<CaseResult> = corpus
        .cases
        .par_iter()
        .filter(|c| (s.applies)(c))
        .map(|c| {
            let expected = if (s.expect_fail)(c) { Outcome::Fail } else { Outcome::Pass };
            match (s.run)(c) {
                Ok(f) => {
                    let actual = if f.failures == 0 { Outcome::Pass } else { Outcome::Fail };
                    let mut message = format!("{} checks, {} failed", f.checks, f.failures);
                    for n in &f.notes {
                        message.push_str("; ");
                        message.push_str(n);
                    }
                    CaseResult {
                        case: c.label.clone(),
                        expected,
                        actual,
                        checks: f.checks,
                        message,
                        witnesses: f.witnesses,
                    }
                }
                Err(e) => CaseResult {
                    case: c.label.clone(),
                    expected,
                    actual: Outcome::Fail,
                    checks: 0,
                    message: format!("error: {e}"),
                    witnesses: Vec::new(),
                },
            }
        })
        .collect();
    let ok = !cases.is_empty() && cases.iter().all(CaseResult::met);
    SuiteReport {
        suite: s.name.into(),
        corpus: corpus.name.clone(),
        ok,
        cases,
    }
}

/// Runs a suite (or `all`) on its default corpora, or on `corpus_name`.
pub fn run_suite(name: &str, corpus_name: Option<&str>) -> Result<Report> {
    let selected: Vec<&Suite> = if name == "all" {
        SUITES.iter().collect()
    } else {
        vec![suite(name)?]
    };
    let mut reports = Vec::new();
    for s in selected {
        let names: Vec<&str> = match corpus_name {
            Some(c) => vec![c],
            None => s.default_corpora.to_vec(),
        };
        for cname in names {
            let c = corpus(cname)?;
            let report = run_suite_on(s, &c);
            if corpus_name.is_some() && name == "all" && report.cases.is_empty() {
                continue;
            }
            reports.push(report);
        }
    }
    Ok(Report::new(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names() {
        assert!(matches!(run_suite("nope", None), Err(Error::UnknownSuite(_))));
        assert!(matches!(
            run_suite("constant-term-1", Some("nope")),
            Err(Error::UnknownCorpus(_))
        ));
    }

    #[test]
    fn suite_names_are_unique() {
        let mut names = suite_names();
        names.sort_unstable();
        let len = names.len();
        names.dedup();
        assert_eq!(names.len(), len);
    }

    #[test]
    fn inapplicable_corpus_is_not_ok() {
        let r = run_suite("classical-vs-f", Some("random")).unwrap();
        assert!(!r.ok);
        assert!(r.suites[0].cases.is_empty());
    }
}
