//! The JSON automaton document.
//!
//! ```json
//! {
//!   "states": 3,
//!   "alphabet": ["a", "b"],
//!   "delta": [[1, 0], [1, 2], [2, 2]],
//!   "initial": 0,
//!   "finals": [2]
//! }
//! ```
//!
//! Row `q` of `delta` is `[q·a, q·b]`. `initial` and `finals` are optional.

use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    states: usize,
    alphabet: Vec<String>,
    delta: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    finals: Option<Vec<usize>>,
}

fn document_of(d: &Dfa) -> Document {
    Document {
        states: d.state_count(),
        alphabet: vec!["a".into(), "b".into()],
        delta: d.rows().iter().map(|r| r.to_vec()).collect(),
        initial: d.initial(),
        finals: d.finals().map(|f| f.iter().copied().collect()),
    }
}

/// Serializes `d` as a pretty-printed automaton document.
pub fn to_json(d: &Dfa) -> String {
    let mut rows = String::new();
    // One row per line keeps transition tables readable in diffs.
    for (q, r) in d.rows().iter().enumerate() {
        let sep = if q + 1 == d.state_count() { "" } else { "," };
        rows.push_str(&format!("\n    [{}, {}]{sep}", r[0], r[1]));
    }
    let mut out = format!(
        "{{\n  \"states\": {},\n  \"alphabet\": [\"a\", \"b\"],\n  \"delta\": [{rows}\n  ]",
        d.state_count()
    );
    if let Some(q0) = d.initial() {
        out.push_str(&format!(",\n  \"initial\": {q0}"));
    }
    if let Some(finals) = d.finals() {
        let list: Vec<String> = finals.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!(",\n  \"finals\": [{}]", list.join(", ")));
    }
    out.push_str("\n}\n");
    out
}

/// The document as a JSON value, for embedding in larger reports.
pub fn to_value(d: &Dfa) -> serde_json::Value {
    serde_json::to_value(document_of(d)).expect("automaton document is always serializable")
}

fn structural(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// Parses an automaton document, validating totality and state ranges.
pub fn from_json(text: &str) -> Result<Dfa> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    from_document(doc)
}

/// Parses an already decoded JSON value.
pub fn from_value(value: serde_json::Value) -> Result<Dfa> {
    let doc: Document =
        serde_json::from_value(value).map_err(|e| structural("document", e.to_string()))?;
    from_document(doc)
}

fn from_document(doc: Document) -> Result<Dfa> {
    let m = doc.states;
    if m == 0 {
        return Err(structural("states", "state count must be positive"));
    }
    if doc.alphabet != ["a", "b"] {
        return Err(structural(
            "alphabet",
            format!("expected [\"a\", \"b\"], found {:?}", doc.alphabet),
        ));
    }
    if doc.delta.len() != m {
        return Err(structural(
            format!("delta[{}]", doc.delta.len().min(m)),
            format!(
                "delta has {} rows but there are {m} states",
                doc.delta.len()
            ),
        ));
    }
    let mut rows = Vec::with_capacity(m);
    for (q, row) in doc.delta.iter().enumerate() {
        if row.len() != 2 {
            return Err(structural(
                format!("delta[{q}]"),
                format!("row must have exactly 2 entries, found {}", row.len()),
            ));
        }
        for (x, &t) in row.iter().enumerate() {
            if t >= m {
                return Err(structural(
                    format!("delta[{q}][{x}]"),
                    format!("target {t} is not a state (0..{m})"),
                ));
            }
        }
        rows.push([row[0], row[1]]);
    }
    let mut d = Dfa::from_rows(rows)?;
    if let Some(q0) = doc.initial {
        if q0 >= m {
            return Err(structural(
                "initial",
                format!("{q0} is not a state (0..{m})"),
            ));
        }
        d = d.with_initial(q0)?;
    }
    if let Some(finals) = doc.finals {
        if let Some((i, f)) = finals.iter().enumerate().find(|(_, &f)| f >= m) {
            return Err(structural(
                format!("finals[{i}]"),
                format!("{f} is not a state (0..{m})"),
            ));
        }
        d = d.with_finals(finals)?;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_decorations() {
        let d = Dfa::from_rows(vec![[1, 0], [1, 2], [2, 2]])
            .unwrap()
            .with_initial(0)
            .unwrap()
            .with_finals([2])
            .unwrap();
        let text = to_json(&d);
        assert_eq!(from_json(&text).unwrap(), d);
        assert_eq!(from_value(to_value(&d)).unwrap(), d);
    }

    #[test]
    fn missing_row_is_rejected() {
        let text = r#"{"states": 3, "alphabet": ["a","b"], "delta": [[1,0],[1,2]]}"#;
        match from_json(text) {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "delta[2]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_line_and_column() {
        let text = "{\n  \"states\": 2,\n  \"delta\": [[0,1],\n}";
        match from_json(text) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 4")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_and_short_rows() {
        let bad_target = r#"{"states": 2, "alphabet": ["a","b"], "delta": [[0,1],[2,0]]}"#;
        assert!(
            matches!(from_json(bad_target), Err(Error::Parse { location, .. }) if location == "delta[1][0]")
        );
        let short = r#"{"states": 1, "alphabet": ["a","b"], "delta": [[0]]}"#;
        assert!(
            matches!(from_json(short), Err(Error::Parse { location, .. }) if location == "delta[0]")
        );
        let alphabet = r#"{"states": 1, "alphabet": ["a","c"], "delta": [[0,0]]}"#;
        assert!(from_json(alphabet).is_err());
        let finals = r#"{"states": 1, "alphabet": ["a","b"], "delta": [[0,0]], "finals": [3]}"#;
        assert!(from_json(finals).is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"states": 1, "alphabet": ["a","b"], "delta": [[0,0]], "colour": 1}"#;
        assert!(from_json(text).is_err());
    }
}
