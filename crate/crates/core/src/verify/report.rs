use std::fmt::Write as _;

use super::{Outcome, Report};

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// JUnit XML: one test suite per (suite, corpus), one test case per corpus
/// case. Cases whose outcome differs from the expectation are failures.
pub fn to_junit(report: &Report) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<testsuites>\n");
    for s in &report.suites {
        let failures = s.cases.iter().filter(|c| !c.met()).count();
        let _ = writeln!(
            out,
            "  <testsuite name=\"{}/{}\" tests=\"{}\" failures=\"{}\">",
            escape(&s.suite),
            escape(&s.corpus),
            s.cases.len(),
            failures
        );
        if s.cases.is_empty() {
            let _ = writeln!(
                out,
                "    <testcase name=\"(no applicable cases)\" classname=\"{}\"><failure message=\"no applicable cases\"/></testcase>",
                escape(&s.suite)
            );
        }
        for c in &s.cases {
            let _ = write!(
                out,
                "    <testcase name=\"{}\" classname=\"{}\"",
                escape(&c.case),
                escape(&s.suite)
            );
            if c.met() {
                if c.expected == Outcome::Fail {
                    let _ = writeln!(
                        out,
                        "><system-out>{}</system-out></testcase>",
                        escape(&format!("failed as expected: {}", c.message))
                    );
                } else {
                    out.push_str("/>\n");
                }
            } else {
                let witnesses = serde_json::to_string(&c.witnesses).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "><failure message=\"{}\">{}</failure></testcase>",
                    escape(&c.message),
                    escape(&witnesses)
                );
            }
        }
        out.push_str("  </testsuite>\n");
    }
    out.push_str("</testsuites>\n");
    out
}
