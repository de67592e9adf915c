//! Result reports: a `#`-prefixed header block followed by one TSV row per
//! ranked solution.
//!
//! ```text
//! # ecii-results v1
//! # kb.hash=…
//! # time.parse=0.120
//! # time.enrich=…
//! # time.materialize=…
//! # time.induce=…
//! # time.total=…
//! # materializer.invocations=1
//! # define _ECII_4 = hasChild some Female
//! 1	1.0	1	Female
//! ```

use std::fmt::Write as _;

use super::ParseError;

pub const REPORT_HEADER: &str = "# ecii-results v1";

/// Phase wall-clock times in milliseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub parse: f64,
    pub enrich: f64,
    pub materialize: f64,
    pub induce: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub rank: usize,
    pub alpha2: f64,
    pub length: usize,
    pub expression: String,
    pub alpha3: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultReport {
    pub rows: Vec<ReportRow>,
    pub timings: Timings,
    pub materializer_invocations: usize,
    pub kb_hash: Option<String>,
    /// Fresh enrichment names used in `rows`, with their definitions rendered.
    pub definitions: Vec<(String, String)>,
}

/// Shortest decimal that round-trips, always with a fractional part (`1.0`, `0.5`).
pub(crate) fn format_ratio(x: f64) -> String {
    format!("{x:?}")
}

impl ResultReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        if let Some(hash) = &self.kb_hash {
            let _ = writeln!(out, "# kb.hash={hash}");
        }
        let t = &self.timings;
        for (phase, ms) in [
            ("parse", t.parse),
            ("enrich", t.enrich),
            ("materialize", t.materialize),
            ("induce", t.induce),
            ("total", t.total),
        ] {
            let _ = writeln!(out, "# time.{phase}={ms:.3}");
        }
        let _ = writeln!(out, "# materializer.invocations={}", self.materializer_invocations);
        for (name, def) in &self.definitions {
            let _ = writeln!(out, "# define {name} = {def}");
        }
        for row in &self.rows {
            let _ = write!(
                out,
                "{}\t{}\t{}\t{}",
                row.rank,
                format_ratio(row.alpha2),
                row.length,
                row.expression
            );
            if let Some(a3) = row.alpha3 {
                let _ = write!(out, "\t{}", format_ratio(a3));
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_report(text: &str) -> Result<ResultReport, ParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == REPORT_HEADER => {}
        _ => return Err(ParseError::syntax(1, format!("missing `{REPORT_HEADER}` header"))),
    }
    let mut report = ResultReport::default();
    let mut saw_invocations = false;
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(meta) = raw.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(def) = meta.strip_prefix("define ") {
                let (name, body) = def
                    .split_once(" = ")
                    .ok_or_else(|| ParseError::syntax(line, "malformed `define` line"))?;
                report.definitions.push((name.trim().to_string(), body.trim().to_string()));
                continue;
            }
            let Some((key, value)) = meta.split_once('=') else {
                continue;
            };
            let ms = || {
                value
                    .parse::<f64>()
                    .map_err(|_| ParseError::syntax(line, format!("bad number `{value}`")))
            };
            match key {
                "kb.hash" => report.kb_hash = Some(value.to_string()),
                "time.parse" => report.timings.parse = ms()?,
                "time.enrich" => report.timings.enrich = ms()?,
                "time.materialize" => report.timings.materialize = ms()?,
                "time.induce" => report.timings.induce = ms()?,
                "time.total" => report.timings.total = ms()?,
                "materializer.invocations" => {
                    saw_invocations = true;
                    report.materializer_invocations = value
                        .parse()
                        .map_err(|_| ParseError::syntax(line, "bad invocation count"))?;
                }
                _ => {}
            }
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        if !(4..=5).contains(&fields.len()) {
            return Err(ParseError::syntax(line, "expected 4 or 5 tab-separated fields"));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| ParseError::syntax(line, format!("bad number `{s}`")))
        };
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| ParseError::syntax(line, format!("bad integer `{s}`")))
        };
        report.rows.push(ReportRow {
            rank: int(fields[0])?,
            alpha2: num(fields[1])?,
            length: int(fields[2])?,
            expression: fields[3].to_string(),
            alpha3: fields.get(4).map(|s| num(s)).transpose()?,
        });
    }
    if !saw_invocations {
        return Err(ParseError::syntax(1, "missing `materializer.invocations` line"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultReport {
        ResultReport {
            rows: vec![
                ReportRow {
                    rank: 1,
                    alpha2: 1.0,
                    length: 1,
                    expression: "Female".into(),
                    alpha3: Some(1.0),
                },
                ReportRow {
                    rank: 2,
                    alpha2: 2.0 / 3.0,
                    length: 2,
                    expression: "Person and (hasChild some _ECII_0)".into(),
                    alpha3: Some(0.5),
                },
            ],
            timings: Timings {
                parse: 0.25,
                ..Timings::default()
            },
            materializer_invocations: 1,
            kb_hash: Some("abc".into()),
            definitions: vec![("_ECII_0".into(), "hasChild some Female".into())],
        }
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], REPORT_HEADER);
        assert!(lines.contains(&"# materializer.invocations=1"));
        assert!(lines.contains(&"# time.parse=0.250"));
        assert!(lines.contains(&"1\t1.0\t1\tFemale\t1.0"));
    }

    #[test]
    fn parse_inverts_to_text() {
        let r = sample();
        assert_eq!(parse_report(&r.to_text()).unwrap(), r);
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(parse_report("").is_err());
        assert!(parse_report("1\t1.0\t1\tFemale\n").is_err());
    }
}
