//! JSON tuple files: `{"vars": [...], "entries": [...], "meta": {...}}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{Direction, MixedDirection, PolyTuple};
use crate::polyring::{parse_rational, validate_vars, Rational};

/// On-disk form of a tuple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleFile {
    /// Variable names; their order fixes the variable indices.
    pub vars: Vec<String>,
    /// Entries in the polynomial text format.
    pub entries: Vec<String>,
    /// Free-form provenance, carried through untouched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl TupleFile {
    /// Renders a tuple with the given variable names.
    #[must_use]
    pub fn from_tuple(vars: &[String], t: &PolyTuple) -> Self {
        Self { vars: vars.to_vec(), entries: t.format(vars), meta: None }
    }

    /// Parses the entries.
    pub fn to_tuple(&self) -> Result<PolyTuple> {
        validate_vars(&self.vars)?;
        PolyTuple::parse(&self.vars, &self.entries)
    }

    /// Reads and parses a JSON file.
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Input(format!("{}: not a tuple file: {e}", path.display())))
    }
}

/// Resolves a direction given as a variable name or a numeric index.
pub fn parse_direction(text: &str, vars: &[String]) -> Result<Direction> {
    let text = text.trim();
    if let Some(i) = vars.iter().position(|v| v == text) {
        return Ok(i);
    }
    match text.parse::<usize>() {
        Ok(i) if i < vars.len() => Ok(i),
        Ok(i) => Err(Error::VariableOutOfRange { index: i, arity: vars.len() }),
        Err(_) => Err(Error::UnknownVariable { name: text.to_string(), pos: 0 }),
    }
}

/// Parses a comma-separated path such as `x,y,x`.
pub fn parse_path(text: &str, vars: &[String]) -> Result<MixedDirection> {
    let dirs = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_direction(s, vars))
        .collect::<Result<Vec<_>>>()?;
    MixedDirection::new(dirs)
}

/// Parses a box such as `x:0:1,y:-1/2:3` into `(direction, lo, hi)` triples.
pub fn parse_box(text: &str, vars: &[String]) -> Result<Vec<(Direction, Rational, Rational)>> {
    text.split(',')
        .map(|part| {
            let f: Vec<&str> = part.split(':').collect();
            if f.len() != 3 {
                return Err(Error::Input(format!("box component `{part}` is not dir:lo:hi")));
            }
            Ok((parse_direction(f[0], vars)?, parse_rational(f[1])?, parse_rational(f[2])?))
        })
        .collect()
}

/// Parses spots such as `(1,0,0);(0,1,0)`.
pub fn parse_spots(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.split(';')
        .map(|s| {
            let s = s.trim();
            let inner = s
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Input(format!("spot `{s}` must be parenthesized")))?;
            inner.split(',').map(parse_rational).collect()
        })
        .collect()
}

/// Parses assignments such as `y=2,z=-1/2`.
pub fn parse_assignments(text: &str, vars: &[String]) -> Result<Vec<(Direction, Rational)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|a| {
            let (k, v) = a
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("assignment `{a}` is not var=value")))?;
            Ok((parse_direction(k, vars)?, parse_rational(v)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn directions_by_name_or_index() {
        assert_eq!(parse_direction("y", &vars()).unwrap(), 1);
        assert_eq!(parse_direction("0", &vars()).unwrap(), 0);
        assert!(parse_direction("2", &vars()).is_err());
        assert!(parse_direction("q", &vars()).is_err());
        assert_eq!(parse_path("x,y,x", &vars()).unwrap().dirs(), &[0, 1, 0]);
    }

    #[test]
    fn boxes_and_spots() {
        let b = parse_box("x:0:1,y:-1/2:3", &vars()).unwrap();
        assert_eq!(b, vec![(0, int(0), int(1)), (1, rat(-1, 2), int(3))]);
        let s = parse_spots("(1,0,0);(0,1/2,0)").unwrap();
        assert_eq!(s[1], vec![int(0), rat(1, 2), int(0)]);
        assert!(parse_spots("1,0").is_err());
        assert!(parse_box("x:0", &vars()).is_err());
    }

    #[test]
    fn tuple_file_round_trip() {
        let json = r#"{"vars":["x","y"],"entries":["x^2*y","x*y^2"],"meta":{"source":"worked"}}"#;
        let f: TupleFile = serde_json::from_str(json).unwrap();
        let t = f.to_tuple().unwrap();
        let back = TupleFile::from_tuple(&f.vars, &t);
        assert_eq!(back.entries, f.entries);
    }
}
