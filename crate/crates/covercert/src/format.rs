//! Text and JSON encodings of congruence systems.
//!
//! Text: one `R mod D` per line (several may share a line, separated by
//! commas), blank lines and `#` comments ignored. JSON:
//! `{"classes":[{"r":R,"d":D},...]}`. Residues need not be reduced.

use covercert_core::{CongruenceSystem, Error as CoreError, ResidueClass};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: modulus must be at least 1, got {modulus}")]
    InvalidModulus { line: usize, modulus: i128 },
    #[error("invalid JSON system: {0}")]
    Json(String),
}

#[derive(Serialize, Deserialize)]
struct JsonClass {
    r: i128,
    d: i128,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSystem {
    classes: Vec<JsonClass>,
}

fn make_class(r: i128, d: i128, line: usize) -> Result<ResidueClass, FormatError> {
    ResidueClass::new(r, d).map_err(|e| match e {
        CoreError::InvalidModulus(modulus) => FormatError::InvalidModulus { line, modulus },
        other => FormatError::Syntax {
            line,
            message: other.to_string(),
        },
    })
}

fn parse_class(item: &str, line: usize) -> Result<ResidueClass, FormatError> {
    let syntax = |message: String| FormatError::Syntax { line, message };
    let tokens: Vec<&str> = item.split_whitespace().collect();
    let [r, kw, d] = tokens[..] else {
        return Err(syntax(format!("expected `R mod D`, found `{item}`")));
    };
    if kw != "mod" {
        return Err(syntax(format!("expected `mod`, found `{kw}`")));
    }
    let r: i128 = r.parse().map_err(|_| syntax(format!("bad residue `{r}`")))?;
    let d: i128 = d.parse().map_err(|_| syntax(format!("bad modulus `{d}`")))?;
    make_class(r, d, line)
}

pub fn parse_text(text: &str) -> Result<CongruenceSystem, FormatError> {
    let mut classes = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for item in line.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            classes.push(parse_class(item, i + 1)?);
        }
    }
    Ok(CongruenceSystem::new(classes))
}

pub fn parse_json(text: &str) -> Result<CongruenceSystem, FormatError> {
    let parsed: JsonSystem = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    parsed
        .classes
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            ResidueClass::new(c.r, c.d).map_err(|e| match e {
                CoreError::InvalidModulus(modulus) => {
                    FormatError::Json(format!("class {i}: modulus must be at least 1, got {modulus}"))
                }
                other => FormatError::Json(format!("class {i}: {other}")),
            })
        })
        .collect()
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_system(text: &str) -> Result<CongruenceSystem, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// One class per line, in the order given.
pub fn emit_text(sys: &CongruenceSystem) -> String {
    sys.classes().iter().map(|c| format!("{c}\n")).collect()
}

pub fn emit_json(sys: &CongruenceSystem) -> String {
    let doc = JsonSystem {
        classes: sys
            .classes()
            .iter()
            .map(|c| JsonClass {
                r: c.residue().into(),
                d: c.modulus().into(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("systems always serialize")
}
