use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::groups::CACHE_VERSION;
use crate::lie::TableFormat;
use crate::perm::GroupHandle;

/// Report schema version; bumped together with the cache layout.
pub const REPORT_VERSION: u32 = CACHE_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMeta {
    pub name: String,
    pub degree: usize,
    pub order: u128,
    pub excluded: Option<String>,
}

impl GroupMeta {
    pub fn of(handle: &GroupHandle) -> Self {
        GroupMeta {
            name: handle.name().to_string(),
            degree: handle.degree(),
            order: handle.order(),
            excluded: handle.info().excluded.clone(),
        }
    }
}

/// One comparison between an expected and an observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckOutcome {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    /// A failed check that has no expected/actual pair, such as an unmatched class.
    pub fn failure(name: impl Into<String>, diagnostic: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            expected: "match".into(),
            actual: diagnostic.into(),
            pass: false,
        }
    }
}

/// Output of one command. Timing is kept out so that reruns are byte-identical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub group: Option<GroupMeta>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            version: REPORT_VERSION,
            command: command.into(),
            group: None,
            columns: Vec::new(),
            rows: Vec::new(),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn columns(mut self, cols: &[&str]) -> Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn group(mut self, handle: &GroupHandle) -> Self {
        self.group = Some(GroupMeta::of(handle));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn check(&mut self, c: CheckOutcome) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Markdown => self.markdown(),
            TableFormat::Csv => self.csv(),
            TableFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(g) = &self.group {
            write!(
                out,
                "group: {}, degree {}, order {}",
                g.name, g.degree, g.order
            )
            .unwrap();
            if let Some(r) = &g.excluded {
                write!(out, ", excluded ({r})").unwrap();
            }
            out.push('\n');
        }
        if !self.columns.is_empty() {
            out.push('\n');
            let line = |cells: &[String]| {
                let esc: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
                format!("| {} |\n", esc.join(" | "))
            };
            out.push_str(&line(&self.columns));
            out.push_str(&format!("|{}\n", "---|".repeat(self.columns.len())));
            for r in &self.rows {
                out.push_str(&line(r));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks:\n");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "- {mark} {}: expected {}, actual {}",
                    c.name, c.expected, c.actual
                )
                .unwrap();
            }
        }
        writeln!(out, "\nresult: {}", if self.pass { "pass" } else { "fail" }).unwrap();
        out
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| {
            cells
                .iter()
                .map(|c| csv_field(c))
                .collect::<Vec<_>>()
                .join(",")
                + "\n"
        };
        if !self.columns.is_empty() {
            out.push_str(&line(&self.columns));
            for r in &self.rows {
                out.push_str(&line(r));
            }
        }
        if !self.checks.is_empty() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("check,expected,actual,pass\n");
            for c in &self.checks {
                out.push_str(&line(&[
                    c.name.clone(),
                    c.expected.clone(),
                    c.actual.clone(),
                    c.pass.to_string(),
                ]));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("check X").columns(&["a", "b"]);
        r.row(vec!["(0 1 2)".into(), "x,y".into()]);
        r.check(CheckOutcome::new("count", 1, 1));
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        assert_eq!(Report::from_json(&r.render(TableFormat::Json)).unwrap(), r);
    }

    #[test]
    fn failing_check_fails_report() {
        let mut r = sample();
        assert!(r.pass);
        r.check(CheckOutcome::new("other", "a", "b"));
        assert!(!r.pass);
        assert!(r
            .render(TableFormat::Markdown)
            .contains("- FAIL other: expected a, actual b"));
    }

    #[test]
    fn csv_quotes_commas() {
        let csv = sample().render(TableFormat::Csv);
        assert!(
            csv.starts_with("a,b\n(0 1 2),\"x,y\"\n\ncheck,expected,actual,pass\ncount,1,1,true\n"),
            "{csv}"
        );
    }
}
