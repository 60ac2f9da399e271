//! JSON instance files.

use thiserror::Error;

use crate::instance::{InstanceError, RawInstance, ScvInstance};
use crate::set_cover::{RawSetCover, SetCoverError, SetCoverInstance};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Semantic(#[from] InstanceError),
    #[error(transparent)]
    SetCover(#[from] SetCoverError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub fn parse_raw_instance(text: &str) -> Result<RawInstance, ParseError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_instance(text: &str) -> Result<ScvInstance, ParseError> {
    Ok(ScvInstance::validate(&parse_raw_instance(text)?)?)
}

/// Canonical pretty-printed JSON for an instance.
pub fn serialize_instance(inst: &ScvInstance) -> String {
    let mut out = serde_json::to_string_pretty(&inst.to_raw()).expect("instance serializes");
    out.push('\n');
    out
}

pub fn parse_set_cover(text: &str) -> Result<SetCoverInstance, ParseError> {
    let raw: RawSetCover = serde_json::from_str(text)?;
    Ok(SetCoverInstance::new(raw.ground, raw.subsets, raw.budget)?)
}

pub fn serialize_set_cover(sc: &SetCoverInstance) -> String {
    let mut out = serde_json::to_string_pretty(&sc.to_raw()).expect("set cover serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::instance::InstanceIssue;

    #[test]
    fn fixture_round_trips() {
        let inst = fixtures::no_sw_jr();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn undeclared_candidate_is_semantic() {
        let text = r#"{"voters": 1,
            "subsets": [{"name": "C1", "candidates": ["a"], "quota": 1}],
            "ballots": [["b"]]}"#;
        match parse_instance(text) {
            Err(ParseError::Semantic(e)) => {
                assert!(matches!(e.issues[0], InstanceIssue::BadBallot { .. }))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_quota_is_syntax_naming_field() {
        let text = r#"{"voters": 1,
            "subsets": [{"name": "C1", "candidates": ["a"]}],
            "ballots": [["a"]]}"#;
        match parse_instance(text) {
            Err(ParseError::Syntax { message, line, .. }) => {
                assert!(message.contains("quota"), "{message}");
                assert!(line >= 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_instance("{\"voters\": 1,\n  \"subsets\": [,]}").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ballots_are_sorted_by_name_on_output() {
        let text = r#"{"voters": 1,
            "subsets": [{"name": "C1", "candidates": ["z", "b"], "quota": 1}],
            "ballots": [["z", "b"]]}"#;
        let inst = parse_instance(text).unwrap();
        let raw = inst.to_raw();
        assert_eq!(raw.ballots[0], vec!["b".to_string(), "z".to_string()]);
        assert_eq!(raw.subsets[0].candidates, vec!["z".to_string(), "b".to_string()]);
    }
}
