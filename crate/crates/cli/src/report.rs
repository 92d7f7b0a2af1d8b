//! Enumeration reports: deterministic CSV/JSON bodies plus a timestamped
//! envelope.
//!
//! The body carries everything that should be byte-stable across reruns —
//! schema version, code version, the exact pattern-set string, and the rows
//! sorted by `(n, quantity)`. The generation timestamp lives only in the
//! envelope so archived results hash identically no matter when or with how
//! many threads they were produced.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: &str = "n,patterns,quantity,value,verdict,counterexample";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub n: usize,
    pub patterns: String,
    pub quantity: String,
    pub value: String,
    pub verdict: String,
    pub counterexample: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub code_version: String,
    pub target: String,
    pub patterns: String,
    pub rows: Vec<Row>,
}

/// Quotes a CSV field when it holds commas or quotes.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn new(target: &str, patterns: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            target: target.to_string(),
            patterns: patterns.to_string(),
            rows: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        n: usize,
        patterns: &str,
        quantity: &str,
        value: impl ToString,
        verdict: &str,
        counterexample: &str,
    ) {
        self.rows.push(Row {
            n,
            patterns: patterns.to_string(),
            quantity: quantity.to_string(),
            value: value.to_string(),
            verdict: verdict.to_string(),
            counterexample: counterexample.to_string(),
        });
    }

    /// Stable sort by `(n, quantity)`; ties keep insertion order.
    pub fn finish(&mut self) {
        self.rows
            .sort_by(|a, b| (a.n, &a.quantity).cmp(&(b.n, &b.quantity)));
    }

    pub fn any_fail(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == "fail")
    }

    /// Summary verdict over every row: `pass-up-to-<n>`, `fail`, or `skipped`.
    pub fn overall_verdict(&self) -> String {
        if self.any_fail() {
            return "fail".to_string();
        }
        let max_n = self.rows.iter().map(|r| r.n).max();
        match max_n {
            Some(n) if self.rows.iter().any(|r| r.verdict.starts_with("pass")) => {
                format!("pass-up-to-{n}")
            }
            _ => "skipped".to_string(),
        }
    }

    /// Deterministic CSV body: metadata comments, header, rows.
    pub fn body_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# schema_version: {}\n", self.schema_version));
        out.push_str(&format!("# code_version: {}\n", self.code_version));
        out.push_str(&format!("# target: {}\n", self.target));
        out.push_str(&format!("# patterns: {}\n", self.patterns));
        out.push_str(&format!("# verdict: {}\n", self.overall_verdict()));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                csv_field(&r.patterns),
                csv_field(&r.quantity),
                csv_field(&r.value),
                r.verdict,
                csv_field(&r.counterexample),
            ));
        }
        out
    }

    /// Deterministic JSON body.
    pub fn body_json(&self) -> String {
        #[derive(Serialize)]
        struct JsonBody<'a> {
            schema_version: u32,
            code_version: &'a str,
            target: &'a str,
            patterns: &'a str,
            verdict: String,
            rows: &'a [Row],
        }
        let body = JsonBody {
            schema_version: self.schema_version,
            code_version: &self.code_version,
            target: &self.target,
            patterns: &self.patterns,
            verdict: self.overall_verdict(),
            rows: &self.rows,
        };
        let mut text = serde_json::to_string_pretty(&body).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn body(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.body_csv(),
            OutputFormat::Json => self.body_json(),
        }
    }

    /// Body wrapped with the generation timestamp.
    pub fn render(&self, format: OutputFormat) -> String {
        let ts = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        match format {
            OutputFormat::Csv => format!("# generated_at: {ts}\n{}", self.body_csv()),
            OutputFormat::Json => {
                format!(
                    "{{\"generated_at\":{ts},\"report\":{}}}\n",
                    self.body_json().trim_end()
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("theorem-1-2", "123,132");
        r.push(2, "123,132", "ord-sn", 0, "pass", "");
        r.push(1, "123,132", "ord-sn", 0, "pass", "");
        r.finish();
        r
    }

    #[test]
    fn rows_sort_by_n_then_quantity() {
        let r = sample();
        assert_eq!(r.rows[0].n, 1);
        assert_eq!(r.rows[1].n, 2);
        assert_eq!(r.overall_verdict(), "pass-up-to-2");
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(csv_field("123,132"), "\"123,132\"");
        assert_eq!(csv_field("plain"), "plain");
        let r = sample();
        let body = r.body_csv();
        assert!(body.contains("1,\"123,132\",ord-sn,0,pass,\n"));
        assert!(body.starts_with("# schema_version: 1\n"));
        assert!(body.contains(CSV_HEADER));
    }

    #[test]
    fn bodies_are_deterministic_and_envelope_adds_timestamp() {
        let r = sample();
        assert_eq!(r.body_csv(), r.body_csv());
        assert_eq!(r.body_json(), r.body_json());
        assert!(r.render(OutputFormat::Csv).contains("# generated_at: "));
        assert!(r
            .render(OutputFormat::Json)
            .starts_with("{\"generated_at\":"));
        let parsed: serde_json::Value = serde_json::from_str(&r.body_json()).unwrap();
        assert_eq!(parsed["schema_version"], 1);
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn fail_rows_dominate_the_verdict() {
        let mut r = Report::new("x", "21");
        r.push(3, "21", "q", 1, "pass", "");
        r.push(4, "21", "q", 0, "fail", "2,1,4,3");
        r.finish();
        assert!(r.any_fail());
        assert_eq!(r.overall_verdict(), "fail");
    }
}
