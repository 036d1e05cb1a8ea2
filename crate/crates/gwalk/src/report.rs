//! Tabular experiment reports with CSV and JSON round trips.
//!
//! Reports are plain tables of strings so every experiment shares one
//! emitter and one parser. Exact quantities are printed as decimal integers
//! or `p/q` rationals and are bit-identical across runs; sampled columns
//! depend only on the seed recorded in the header.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub all_pass: bool,
}

impl Report {
    pub fn new(experiment: impl Into<String>, seed: u64, columns: &[&str]) -> Self {
        Report {
            experiment: experiment.into(),
            seed,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            all_pass: true,
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row shape mismatch");
        for cell in &row {
            assert!(
                !cell.contains(',') && !cell.contains('\n'),
                "cell `{cell}` needs escaping"
            );
        }
        self.rows.push(row);
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// CSV with a `#` header line carrying the experiment id, seed, and
    /// overall verdict.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# experiment={} seed={} all_pass={}\n",
            self.experiment, self.seed, self.all_pass
        );
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Report> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty report".into()))?;
        let header = header
            .strip_prefix("# ")
            .ok_or_else(|| Error::Parse("missing report header line".into()))?;
        let mut experiment = None;
        let mut seed = None;
        let mut all_pass = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed header field `{field}`")))?;
            match key {
                "experiment" => experiment = Some(value.to_string()),
                "seed" => {
                    seed = Some(
                        value
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad seed `{value}`")))?,
                    )
                }
                "all_pass" => {
                    all_pass = Some(
                        value
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad verdict `{value}`")))?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown header field `{key}`"))),
            }
        }
        let columns: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Parse("missing column line".into()))?
            .split(',')
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let row: Vec<String> = line.split(',').map(str::to_string).collect();
            if row.len() != columns.len() {
                return Err(Error::Parse(format!(
                    "row has {} cells, expected {}",
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        Ok(Report {
            experiment: experiment.ok_or_else(|| Error::Parse("missing experiment id".into()))?,
            seed: seed.ok_or_else(|| Error::Parse("missing seed".into()))?,
            columns,
            rows,
            all_pass: all_pass.ok_or_else(|| Error::Parse("missing verdict".into()))?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn parse_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Formats a float for report cells: full shortest-round-trip precision,
/// stable across runs.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        let mut r = Report::new("bridge-range", 7, &["m", "alpha", "pass"]);
        r.push_row(vec!["100".into(), "0.5".into(), "true".into()]);
        r.push_row(vec!["400".into(), "0.25".into(), "true".into()]);
        r
    }

    #[test]
    fn csv_round_trip() {
        let r = sample_report();
        let parsed = Report::parse_csv(&r.to_csv()).unwrap();
        assert_eq!(parsed, r);
        assert_eq!(parsed.to_csv(), r.to_csv());
    }

    #[test]
    fn json_round_trip() {
        let r = sample_report();
        assert_eq!(Report::parse_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn csv_parse_rejects_garbage() {
        assert!(Report::parse_csv("").is_err());
        assert!(Report::parse_csv("no header\nm\n1\n").is_err());
        assert!(Report::parse_csv("# experiment=x seed=0 all_pass=true\nm,b\n1\n").is_err());
    }

    #[test]
    fn column_lookup() {
        let r = sample_report();
        assert_eq!(r.column("alpha"), Some(1));
        assert_eq!(r.column("zeta"), None);
    }
}
