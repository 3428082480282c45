//! Square files: CSV grids, or JSON objects with `order`, `cells` (flat
//! row-major or nested rows) and an optional `name`.

use std::io::Read;
use std::path::Path;

use franklin::format::{parse_csv, to_csv};
use franklin::{Error, Square, Value};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareFile {
    order: usize,
    cells: Cells,
    #[allow(dead_code)]
    name: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Cells {
    Flat(Vec<Value>),
    Nested(Vec<Vec<Value>>),
}

/// Reads a square from `path`, or from stdin when `path` is `-`.
pub fn read_square(path: &Path) -> Result<Square, CliError> {
    let text = if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Io(format!("stdin: {e}")))?;
        text
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    parse_square(&text)
}

pub fn parse_square(text: &str) -> Result<Square, CliError> {
    if !text.trim_start().starts_with('{') {
        return Ok(parse_csv(text)?);
    }
    let file: SquareFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let sq = match file.cells {
        Cells::Flat(cells) => Square::new(file.order, cells)?,
        Cells::Nested(rows) => {
            let sq = Square::from_rows(&rows)?;
            if sq.order() != file.order {
                return Err(Error::CellCount {
                    order: file.order,
                    expected: file.order * file.order,
                    actual: sq.cells().len(),
                }
                .into());
            }
            sq
        }
    };
    Ok(sq)
}

pub fn square_json(sq: &Square, name: Option<&str>) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "order": sq.order(),
        "cells": sq.to_rows(),
    });
    if let Some(name) = name {
        obj["name"] = name.into();
    }
    obj
}

/// Writes `sq` to `path` as JSON when the extension is `.json`, CSV
/// otherwise.
pub fn write_square(path: &Path, sq: &Square, name: Option<&str>) -> Result<(), CliError> {
    let text = if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
    {
        let mut text = serde_json::to_string_pretty(&square_json(sq, name)).expect("plain json");
        text.push('\n');
        text
    } else {
        to_csv(sq)
    };
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let flat = parse_square(r#"{"order":2,"cells":[1,2,3,4],"name":"x"}"#).unwrap();
        let nested = parse_square(r#"{"order":2,"cells":[[1,2],[3,4]]}"#).unwrap();
        assert_eq!(flat, nested);
        assert!(parse_square(r#"{"order":3,"cells":[[1,2],[3,4]]}"#).is_err());
        assert!(parse_square(r#"{"order":2,"cells":[[1,2],[3]]}"#).is_err());
        assert!(parse_square(r#"{"order":2}"#).is_err());
    }

    #[test]
    fn csv_default() {
        assert_eq!(parse_square("1,2\n3,4\n").unwrap().cells(), &[1, 2, 3, 4]);
    }
}
