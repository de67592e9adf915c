//! Job configuration: `key = value` lines, sets written as `{ a, b }`.
//!
//! ```text
//! kb = family.kb
//! positives = { alice }
//! negatives = { bob }
//! k4 = 20
//! keepCommonTypes = true
//! ```

use std::collections::HashSet;
use std::path::PathBuf;

use thiserror::Error;

use super::strip_comment;
use crate::induce::SearchConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        line: usize,
        key: String,
        value: String,
        reason: &'static str,
    },
    #[error("`{0}` must name at least one individual")]
    EmptyExampleSet(&'static str),
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("individual `{0}` is both a positive and a negative example")]
    Overlap(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub kb_path: PathBuf,
    pub positives: Vec<String>,
    pub negatives: Vec<String>,
    pub search: SearchConfig,
}

const KEYS: [&str; 14] = [
    "kb",
    "positives",
    "negatives",
    "n1",
    "n2",
    "k1",
    "k2",
    "k3",
    "k4",
    "k5",
    "keepCommonTypes",
    "maxSolutions",
    "computeAlpha3",
    "maxExpressions",
];

pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    let mut kb_path = None;
    let mut positives = None;
    let mut negatives = None;
    let mut search = SearchConfig::default();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, v)| !k.is_empty() && !v.is_empty())
            .ok_or_else(|| ConfigError::Malformed {
                line,
                text: content.to_string(),
            })?;
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            });
        }
        if !seen.insert(key) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        let invalid = |reason| ConfigError::InvalidValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
            reason,
        };
        let natural = || value.parse::<usize>().map_err(|_| invalid("expected a natural number"));
        let boolean = || match value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(invalid("expected `true` or `false`")),
        };
        match key {
            "kb" => kb_path = Some(PathBuf::from(value)),
            "positives" => positives = Some(parse_set(value).ok_or_else(|| invalid("expected `{ a, b, ... }`"))?),
            "negatives" => negatives = Some(parse_set(value).ok_or_else(|| invalid("expected `{ a, b, ... }`"))?),
            "n1" => search.n1 = natural()?,
            "n2" => search.n2 = natural()?,
            "k1" => {
                search.k1 = natural()?;
                if search.k1 == 0 {
                    return Err(invalid("k1 must be at least 1"));
                }
            }
            "k2" => search.k2 = natural()?,
            "k3" => search.k3 = natural()?,
            "k4" => search.k4 = natural()?,
            "k5" => search.k5 = natural()?,
            "keepCommonTypes" => search.keep_common_types = boolean()?,
            "maxSolutions" => {
                search.max_solutions = natural()?;
                if search.max_solutions == 0 {
                    return Err(invalid("maxSolutions must be at least 1"));
                }
            }
            "computeAlpha3" => search.compute_alpha3 = boolean()?,
            "maxExpressions" => search.max_expressions = natural()?,
            _ => unreachable!(),
        }
    }

    let positives: Vec<String> = positives.ok_or(ConfigError::MissingKey("positives"))?;
    let negatives: Vec<String> = negatives.ok_or(ConfigError::MissingKey("negatives"))?;
    if positives.is_empty() {
        return Err(ConfigError::EmptyExampleSet("positives"));
    }
    if negatives.is_empty() {
        return Err(ConfigError::EmptyExampleSet("negatives"));
    }
    if let Some(shared) = negatives.iter().find(|n| positives.contains(n)) {
        return Err(ConfigError::Overlap(shared.clone()));
    }
    Ok(JobConfig {
        kb_path: kb_path.ok_or(ConfigError::MissingKey("kb"))?,
        positives,
        negatives,
        search,
    })
}

fn parse_set(value: &str) -> Option<Vec<String>> {
    let inner = value.strip_prefix('{')?.strip_suffix('}')?;
    let mut out: Vec<String> = Vec::new();
    for item in inner.split(',').map(str::trim) {
        if item.is_empty() {
            continue;
        }
        if item.contains(char::is_whitespace) {
            return None;
        }
        if !out.iter().any(|o| o == item) {
            out.push(item.to_string());
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "kb = fam.kb\npositives = { alice }\nnegatives = { bob }\n";

    #[test]
    fn defaults_match_published_values() {
        let cfg = parse_config(MINIMAL).unwrap();
        let s = &cfg.search;
        assert_eq!((s.k1, s.k2, s.k3), (3, 3, 3));
        assert_eq!((s.k4, s.k5), (50, 50));
        assert_eq!((s.n1, s.n2), (3, 3));
        assert!(!s.keep_common_types);
        assert_eq!(s.max_solutions, 10);
        assert!(!s.compute_alpha3);
        assert_eq!(cfg.positives, vec!["alice"]);
        assert_eq!(cfg.kb_path, PathBuf::from("fam.kb"));
    }

    #[test]
    fn overrides_and_comments() {
        let text = format!("{MINIMAL}# tuning\nk4 = 1   # narrow\nkeepCommonTypes = true\npositives2 = {{}}\n");
        assert!(matches!(parse_config(&text), Err(ConfigError::UnknownKey { line: 7, .. })));
        let text = format!("{MINIMAL}k4 = 1\nkeepCommonTypes = true\n");
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.search.k4, 1);
        assert!(cfg.search.keep_common_types);
    }

    #[test]
    fn k1_zero_is_rejected() {
        let err = parse_config(&format!("{MINIMAL}k1 = 0\n")).unwrap_err();
        assert!(matches!(err, ConfigError::InvalidValue { .. }));
    }

    #[test]
    fn empty_example_set_is_rejected() {
        let err = parse_config("kb = x\npositives = { }\nnegatives = { bob }\n").unwrap_err();
        assert_eq!(err, ConfigError::EmptyExampleSet("positives"));
    }

    #[test]
    fn malformed_and_non_numeric() {
        assert!(matches!(
            parse_config("kb fam.kb"),
            Err(ConfigError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_config(&format!("{MINIMAL}k2 = three\n")),
            Err(ConfigError::InvalidValue { .. })
        ));
        assert!(matches!(
            parse_config(&format!("{MINIMAL}k2 = 1\nk2 = 2\n")),
            Err(ConfigError::DuplicateKey { .. })
        ));
        assert!(matches!(
            parse_config("kb = x\npositives = { a }\nnegatives = { a, b }\n"),
            Err(ConfigError::Overlap(_))
        ));
        assert!(matches!(
            parse_config("positives = { a }\nnegatives = { b }\n"),
            Err(ConfigError::MissingKey("kb"))
        ));
    }
}
