use anyhow::Result;
use clap::ValueEnum;
use qhl::report::Report;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// One command result in all three renderings.
pub struct Emit {
    pub json: Value,
    pub pretty: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
}

fn report_header() -> Vec<String> {
    ["suite", "checked", "verdict", "condition", "indices", "lhs", "rhs"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn report_rows(r: &Report) -> Vec<Vec<String>> {
    if r.failures.is_empty() {
        let mut row = vec![r.suite.clone(), r.checked.to_string(), "pass".to_string()];
        row.extend(std::iter::repeat(String::new()).take(4));
        return vec![row];
    }
    r.failures
        .iter()
        .map(|f| {
            vec![
                r.suite.clone(),
                r.checked.to_string(),
                "fail".to_string(),
                f.condition.clone(),
                f.indices.join(" "),
                f.lhs.clone(),
                f.rhs.clone(),
            ]
        })
        .collect()
}

fn pretty_report(r: &Report) -> String {
    let mut out = r.to_string();
    if !r.params.is_empty() {
        let p: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("\n  params: {}", p.join(", ")));
    }
    for n in &r.notes {
        out.push_str(&format!("\n  note: {n}"));
    }
    out
}

impl Emit {
    pub fn report(r: &Report) -> Self {
        Emit {
            json: serde_json::to_value(r).expect("reports serialize"),
            pretty: pretty_report(r),
            header: report_header(),
            rows: report_rows(r),
            passed: r.passed(),
        }
    }

    /// `head` (an object) plus `"reports": [...]`; CSV and pretty output carry the reports.
    pub fn with_reports(head: Value, pretty_head: String, reports: &[Report]) -> Self {
        let mut obj = match head {
            Value::Object(o) => o,
            _ => Map::new(),
        };
        obj.insert(
            "reports".to_string(),
            Value::Array(reports.iter().map(|r| serde_json::to_value(r).expect("reports serialize")).collect()),
        );
        let mut pretty = pretty_head;
        for r in reports {
            if !pretty.is_empty() {
                pretty.push('\n');
            }
            pretty.push_str(&pretty_report(r));
        }
        Emit {
            json: Value::Object(obj),
            pretty,
            header: report_header(),
            rows: reports.iter().flat_map(report_rows).collect(),
            passed: reports.iter().all(Report::passed),
        }
    }

    pub fn render(&self, format: Format, elapsed_ms: Option<u128>) -> Result<String> {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let (Some(ms), Value::Object(o)) = (elapsed_ms, &mut json) {
                    o.insert("elapsed_ms".to_string(), Value::from(ms as u64));
                }
                Ok(serde_json::to_string_pretty(&json)? + "\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                Ok(String::from_utf8(w.into_inner()?)?)
            }
            Format::Pretty => {
                let mut out = self.pretty.clone();
                if let Some(ms) = elapsed_ms {
                    out.push_str(&format!("\nelapsed: {ms} ms"));
                }
                out.push('\n');
                Ok(out)
            }
        }
    }
}
