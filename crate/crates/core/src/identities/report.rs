use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// One checked instance: a case at a prime (or a symbolic check with no prime).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub case: String,
    pub prime: Option<u64>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CaseRow {
    pub fn numeric(case: impl Into<String>, prime: u64, lhs: u64, rhs: u64) -> Self {
        CaseRow { case: case.into(), prime: Some(prime), lhs: lhs.to_string(), rhs: rhs.to_string(), pass: lhs == rhs }
    }

    pub fn symbolic(case: impl Into<String>, lhs: String, rhs: String) -> Self {
        let pass = lhs == rhs;
        CaseRow { case: case.into(), prime: None, lhs, rhs, pass }
    }
}

/// Extra per-case information (reconstructed constants, prime splits).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub case: String,
    pub key: String,
    pub value: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub summary: Summary,
    pub cases: Vec<CaseRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

impl Report {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseRow>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        Report {
            suite: suite.into(),
            summary: Summary { total: cases.len(), passed, failed: cases.len() - passed },
            cases,
            annotations: Vec::new(),
        }
    }

    pub fn with_annotations(mut self, annotations: Vec<Annotation>) -> Self {
        self.annotations = annotations;
        self
    }

    /// A suite passes iff every case passes.
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRow> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Concatenates reports of sub-suites under one name.
    pub fn merge(suite: impl Into<String>, parts: Vec<Report>) -> Report {
        let mut cases = Vec::new();
        let mut annotations = Vec::new();
        for part in parts {
            cases.extend(part.cases);
            annotations.extend(part.annotations);
        }
        Report::new(suite, cases).with_annotations(annotations)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("case,prime,lhs,rhs,pass\n");
        for c in &self.cases {
            let prime = c.prime.map(|p| p.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&c.case),
                prime,
                csv_field(&c.lhs),
                csv_field(&c.rhs),
                c.pass
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let headers = ["case", "prime", "lhs", "rhs", "pass"];
        let rows: Vec<[String; 5]> = self
            .cases
            .iter()
            .map(|c| {
                [
                    c.case.clone(),
                    c.prime.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                    c.lhs.clone(),
                    c.rhs.clone(),
                    if c.pass { "ok".into() } else { "FAIL".into() },
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = format!("suite {}\n", self.suite);
        let line = |cells: [&str; 5]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let pad = w - cell.chars().count();
                if i == 1 {
                    s.push_str(&" ".repeat(pad));
                    s.push_str(cell);
                } else {
                    s.push_str(cell);
                    if i < 4 {
                        s.push_str(&" ".repeat(pad));
                    }
                }
            }
            s.push('\n');
            s
        };
        out.push_str(&line(headers));
        for r in &rows {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4]]));
        }
        for a in &self.annotations {
            let _ = writeln!(out, "# {} {} = {}", a.case, a.key, a.value);
        }
        let _ = writeln!(
            out,
            "{}: {} cases, {} passed, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.summary.total,
            self.summary.passed,
            self.summary.failed
        );
        out
    }
}

/// Quotes a CSV field when it contains a comma, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Splits one CSV record produced by [`Report::to_csv`].
pub fn parse_csv_record(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => fields.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    fields.push(cur);
    fields
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let r = Report::new("x", vec![CaseRow::numeric("(1,2)", 7, 3, 3), CaseRow::symbolic("g", "0".into(), "1".into())]);
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "case,prime,lhs,rhs,pass");
        assert_eq!(lines[1], "\"(1,2)\",7,3,3,true");
        assert_eq!(parse_csv_record(lines[1]), ["(1,2)", "7", "3", "3", "true"]);
        assert_eq!(parse_csv_record(lines[2]), ["g", "", "0", "1", "false"]);
        assert!(!r.passed());
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
    }

    #[test]
    fn text_has_summary() {
        let r = Report::new("demo", vec![CaseRow::numeric("k=1", 7, 3, 3)]);
        let t = r.to_text();
        assert!(t.starts_with("suite demo\n"));
        assert!(t.ends_with("PASS: 1 cases, 1 passed, 0 failed\n"));
    }
}
