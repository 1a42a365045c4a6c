//! Built-in fixture documents, embedded at compile time.

use crate::error::{Error, Result};
use crate::input::InputDocument;

pub const FIXTURES: &[(&str, &str)] = &[
    ("ex1.2.1-m2", include_str!("../fixtures/ex1.2.1-m2.json")),
    ("ex1.2.1-m3", include_str!("../fixtures/ex1.2.1-m3.json")),
    ("ex1.2.1-m4", include_str!("../fixtures/ex1.2.1-m4.json")),
    ("ex1.2.1-m5", include_str!("../fixtures/ex1.2.1-m5.json")),
    ("ex1.2.3", include_str!("../fixtures/ex1.2.3.json")),
    ("ex1.3", include_str!("../fixtures/ex1.3.json")),
    ("ex3.4", include_str!("../fixtures/ex3.4.json")),
    ("ex3.6-m4", include_str!("../fixtures/ex3.6-m4.json")),
    ("ex3.6-m5", include_str!("../fixtures/ex3.6-m5.json")),
    ("ex3.7", include_str!("../fixtures/ex3.7.json")),
    (
        "ex3.7-bad-integral",
        include_str!("../fixtures/ex3.7-bad-integral.json"),
    ),
    (
        "quasi-reflection",
        include_str!("../fixtures/quasi-reflection.json"),
    ),
    ("sign-kx", include_str!("../fixtures/sign-kx.json")),
];

pub const SCHEMA: &str = include_str!("../fixtures/schema.json");

/// Resolves a fixture id; `ex1.2.1` and `ex3.6` take a parameter `m`.
pub fn lookup(id: &str, m: Option<usize>) -> Result<&'static str> {
    let key = match (id, m) {
        ("ex1.2.1", m) => format!("ex1.2.1-m{}", m.unwrap_or(2)),
        ("ex3.6", m) => format!("ex3.6-m{}", m.unwrap_or(4)),
        (id, _) => id.to_string(),
    };
    FIXTURES
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::schema("", format!("unknown fixture id '{key}'")))
}

pub fn load(id: &str, m: Option<usize>) -> Result<InputDocument> {
    InputDocument::parse(lookup(id, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse_and_round_trip() {
        for (id, text) in FIXTURES {
            let doc = InputDocument::parse(text).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(InputDocument::parse(&doc.to_json()).unwrap(), doc, "{id}");
            let compiled = doc.compile();
            if id.contains("bad") {
                assert_eq!(compiled.unwrap_err().exit_code(), 2, "{id}");
            } else {
                compiled.unwrap_or_else(|e| panic!("{id}: {e}"));
            }
        }
    }

    #[test]
    fn parameterised_ids() {
        assert!(lookup("ex1.2.1", Some(5)).is_ok());
        assert!(lookup("ex3.6", Some(6)).is_err());
        assert!(lookup("nope", None).is_err());
    }
}
