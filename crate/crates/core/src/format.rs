//! CSV grid format: one grid row per line, comma-separated decimal
//! integers, no header. Emitted files end with a single newline.

use crate::error::{Error, Result};
use crate::square::{Square, Value};

/// Parses a CSV grid. Blank lines are ignored and whitespace around values
/// is allowed.
pub fn parse_csv(text: &str) -> Result<Square> {
    let mut rows: Vec<Vec<Value>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                let field = field.trim();
                field.parse::<Value>().map_err(|e| Error::Parse {
                    line: i + 1,
                    message: format!("`{field}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no rows".to_string(),
        });
    }
    Square::from_rows(&rows)
}

pub fn to_csv(sq: &Square) -> String {
    let mut out = String::new();
    for row in sq.rows() {
        let fields: Vec<String> = row.iter().map(Value::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
