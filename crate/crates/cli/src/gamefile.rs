//! JSON game files.
//!
//! Two layouts are accepted. The star shorthand for deterministic games:
//!
//! ```json
//! {"stars": [["1*", "0*"], ["0", "1"]]}
//! ```
//!
//! and the general entry form, one `{"g", "q", "w"}` object per cell:
//!
//! ```json
//! {"entries": [[{"g": 0, "q": "1/2", "w": 2}]]}
//! ```
//!
//! Numbers are exact: strings `"p/q"` or JSON integers. Floating-point
//! literals are rejected. `w` may be omitted where `q = 0`.

use absorbing::exactalg::parse_rational;
use absorbing::game::Violation;
use absorbing::{AbsorbingGame, Error as GameError, Rational, StarCell};
use num_traits::Zero;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GameFileError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Layout(String),
    #[error("cell ({row},{col}): {message}")]
    Cell { row: usize, col: usize, message: String },
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("{}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn cell_err(row: usize, col: usize, message: impl Into<String>) -> GameFileError {
    GameFileError::Cell { row: row + 1, col: col + 1, message: message.into() }
}

fn exact_number(v: &Value, row: usize, col: usize, field: &str) -> Result<Rational, GameFileError> {
    let prefix = if field.is_empty() { String::new() } else { format!("{field}: ") };
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| cell_err(row, col, format!("{prefix}{}", e))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(cell_err(row, col, format!("{prefix}floating-point literal {n} is not allowed; write it as \"p/q\"")))
            }
        }
        other => Err(cell_err(row, col, format!("{prefix}expected a rational, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn grid(v: &Value, name: &str) -> Result<Vec<Vec<Value>>, GameFileError> {
    let rows = v.as_array().ok_or_else(|| GameFileError::Layout(format!("\"{name}\" must be an array of rows")))?;
    if rows.is_empty() {
        return Err(GameFileError::Layout(format!("\"{name}\" has no rows")));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| GameFileError::Layout(format!("row {} of \"{name}\" is not an array", r + 1)))?;
        out.push(cells.clone());
    }
    let expected = out[0].len();
    if expected == 0 {
        return Err(GameFileError::Layout(format!("\"{name}\" has an empty row")));
    }
    if let Some(r) = out.iter().position(|row| row.len() != expected) {
        return Err(GameFileError::Ragged { row: r + 1, expected, found: out[r].len() });
    }
    Ok(out)
}

fn star_cell(v: &Value, row: usize, col: usize) -> Result<StarCell, GameFileError> {
    match v {
        Value::String(s) => {
            let t = s.trim();
            let (body, starred) = match t.strip_suffix('*') {
                Some(b) => (b, true),
                None => (t, false),
            };
            let value = parse_rational(body).map_err(|e| cell_err(row, col, e.to_string()))?;
            Ok(StarCell::new(value, starred))
        }
        other => Ok(StarCell::new(exact_number(other, row, col, "")?, false)),
    }
}

fn entry_cell(v: &Value, row: usize, col: usize) -> Result<(Rational, Rational, Rational), GameFileError> {
    let obj = v.as_object().ok_or_else(|| cell_err(row, col, format!("expected {{\"g\", \"q\", \"w\"}}, found {}", kind(v))))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "g" | "q" | "w")) {
        return Err(cell_err(row, col, format!("unknown field \"{k}\"")));
    }
    let field = |name: &str| obj.get(name).map(|v| exact_number(v, row, col, name)).transpose();
    let g = field("g")?.ok_or_else(|| cell_err(row, col, "missing \"g\""))?;
    let q = field("q")?.ok_or_else(|| cell_err(row, col, "missing \"q\""))?;
    let w = match field("w")? {
        Some(w) => w,
        None if q.is_zero() => Rational::zero(),
        None => return Err(cell_err(row, col, "missing \"w\" for an absorbing cell")),
    };
    Ok((g, q, w))
}

fn invalid(e: GameError) -> GameFileError {
    match e {
        GameError::InvalidGame(v) => GameFileError::Invalid(v),
        other => GameFileError::Layout(other.to_string()),
    }
}

/// Parses a game document. Star grids go through
/// [`AbsorbingGame::from_star_matrix`].
pub fn parse_game_file(text: &str) -> Result<AbsorbingGame, GameFileError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| GameFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    let obj: &Map<String, Value> =
        doc.as_object().ok_or_else(|| GameFileError::Layout("a game file is a JSON object".into()))?;
    if let Some(k) = obj.keys().find(|k| !matches!(k.as_str(), "stars" | "entries")) {
        return Err(GameFileError::Layout(format!("unknown key \"{k}\"")));
    }
    match (obj.get("stars"), obj.get("entries")) {
        (Some(s), None) => {
            let cells = grid(s, "stars")?
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, v)| star_cell(v, i, j)).collect())
                .collect::<Result<Vec<Vec<StarCell>>, _>>()?;
            AbsorbingGame::from_star_matrix(&cells).map_err(invalid)
        }
        (None, Some(e)) => {
            let cells = grid(e, "entries")?
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, v)| entry_cell(v, i, j)).collect())
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            let pick = |f: fn(&(Rational, Rational, Rational)) -> &Rational| -> Vec<Vec<Rational>> {
                cells.iter().map(|r| r.iter().map(|c| f(c).clone()).collect()).collect()
            };
            AbsorbingGame::new(pick(|c| &c.0), pick(|c| &c.1), pick(|c| &c.2)).map_err(invalid)
        }
        (Some(_), Some(_)) => Err(GameFileError::Layout("give either \"stars\" or \"entries\", not both".into())),
        (None, None) => Err(GameFileError::Layout("expected a \"stars\" or \"entries\" grid".into())),
    }
}

fn quoted(s: String) -> String {
    Value::String(s).to_string()
}

/// Renders a game in the star layout when it has one, the entry layout
/// otherwise. [`parse_game_file`] reads the output back to an equal game.
pub fn serialize_game(game: &AbsorbingGame) -> String {
    let rows: Vec<String> = match game.to_star_matrix() {
        Some(stars) => stars
            .iter()
            .map(|row| {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| quoted(format!("{}{}", c.value, if c.starred { "*" } else { "" })))
                    .collect();
                format!("    [{}]", cells.join(", "))
            })
            .collect(),
        None => (0..game.rows())
            .map(|i| {
                let cells: Vec<String> = (0..game.cols())
                    .map(|j| {
                        format!(
                            "{{\"g\": {}, \"q\": {}, \"w\": {}}}",
                            quoted(game.g()[i][j].to_string()),
                            quoted(game.q()[i][j].to_string()),
                            quoted(game.w()[i][j].to_string())
                        )
                    })
                    .collect();
                format!("    [{}]", cells.join(", "))
            })
            .collect(),
    };
    let key = if game.to_star_matrix().is_some() { "stars" } else { "entries" };
    format!("{{\n  \"{key}\": [\n{}\n  ]\n}}\n", rows.join(",\n"))
}
