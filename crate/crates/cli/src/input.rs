//! Point documents in text or JSON form.
//!
//! Text: one point per line, integers separated by spaces, an optional
//! `" : w"` weight suffix, `#` comment lines. JSON: `{"dim": d, "points":
//! [[..], ..]}` or `{"dim": d, "terms": [{"exp": [..], "coef": w}, ..]}`.

use latcanon::{Int, LaurentPoly, Point, PointSet, WeightedPointSet};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Points(PointSet),
    Weighted(WeightedPointSet),
}

impl Document {
    pub fn dim(&self) -> usize {
        match self {
            Document::Points(s) => s.dim(),
            Document::Weighted(s) => s.dim(),
        }
    }
}

/// Reads either format; JSON is recognised by a leading `{`.
pub fn parse_document(text: &str) -> Result<Document> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub fn parse_text(text: &str) -> Result<Document> {
    let mut dim = None;
    let mut weighted = None;
    let mut items: Vec<(Point, Int)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (coords_part, weight_part) = match raw.split_once(':') {
            Some((c, w)) => (c, Some((w, c.chars().count() + 2))),
            None => (raw, None),
        };
        match weighted {
            None => weighted = Some(weight_part.is_some()),
            Some(w) if w != weight_part.is_some() => {
                return Err(CliError::parse(
                    line,
                    1,
                    "mixed weighted and unweighted lines",
                ));
            }
            Some(_) => {}
        }
        let coords: Vec<Int> = tokens(coords_part)
            .map(|(col, tok)| integer(tok, line, col))
            .collect::<Result<_>>()?;
        let expected = *dim.get_or_insert(coords.len());
        if coords.is_empty() || coords.len() != expected {
            return Err(CliError::parse(
                line,
                1,
                format!("expected {expected} coordinates, found {}", coords.len()),
            ));
        }
        let weight = match weight_part {
            None => Int::one(),
            Some((w, offset)) => {
                let mut toks = tokens(w);
                let (col, tok) = toks
                    .next()
                    .ok_or_else(|| CliError::parse(line, offset, "missing weight"))?;
                if let Some((extra, _)) = toks.next() {
                    return Err(CliError::parse(
                        line,
                        offset + extra - 1,
                        "trailing text after weight",
                    ));
                }
                integer(tok, line, offset + col - 1)?
            }
        };
        items.push((Point::new(coords), weight));
    }
    let dim = dim.ok_or_else(|| CliError::parse(1, 1, "no points"))?;
    if weighted == Some(true) {
        Ok(Document::Weighted(WeightedPointSet::from_items(
            dim, items,
        )?))
    } else {
        Ok(Document::Points(PointSet::new(
            dim,
            items.into_iter().map(|(p, _)| p),
        )?))
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in s.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                out.push((c, &s[b..byte]));
                start = None;
            }
            (false, None) => start = Some((byte, col + 1)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        out.push((c, &s[b..]));
    }
    out.into_iter()
}

fn integer(tok: &str, line: usize, column: usize) -> Result<Int> {
    tok.parse::<Int>()
        .map_err(|_| CliError::parse(line, column, format!("not an integer: {tok:?}")))
}

pub fn parse_json(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::parse(e.line(), e.column(), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::parse(1, 1, "expected a JSON object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| CliError::parse(1, 1, "missing or invalid \"dim\""))? as usize;
    match (obj.get("points"), obj.get("terms")) {
        (Some(points), None) => {
            let pts = array(points, "points")?
                .iter()
                .map(|p| json_point(p, dim))
                .collect::<Result<Vec<_>>>()?;
            Ok(Document::Points(PointSet::new(dim, pts)?))
        }
        (None, Some(terms)) => Ok(Document::Weighted(json_terms(terms, dim)?)),
        _ => Err(CliError::parse(
            1,
            1,
            "expected exactly one of \"points\" or \"terms\"",
        )),
    }
}

fn json_terms(terms: &Value, dim: usize) -> Result<WeightedPointSet> {
    let items = array(terms, "terms")?
        .iter()
        .map(|t| {
            let exp = t
                .get("exp")
                .ok_or_else(|| CliError::parse(1, 1, "term without \"exp\""))?;
            let coef = t
                .get("coef")
                .ok_or_else(|| CliError::parse(1, 1, "term without \"coef\""))?;
            Ok((json_point(exp, dim)?, json_int(coef)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedPointSet::from_items(dim, items)?)
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| CliError::parse(1, 1, format!("\"{what}\" must be an array")))
}

fn json_point(v: &Value, dim: usize) -> Result<Point> {
    let coords = array(v, "point")?
        .iter()
        .map(json_int)
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != dim {
        return Err(CliError::parse(
            1,
            1,
            format!("expected {dim} coordinates, found {}", coords.len()),
        ));
    }
    Ok(Point::new(coords))
}

fn json_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| CliError::parse(1, 1, format!("not an integer: {n}"))),
        other => Err(CliError::parse(1, 1, format!("not an integer: {other}"))),
    }
}

/// A Laurent polynomial, as JSON terms or in the text grammar. `dim` fixes
/// the number of variables; otherwise the largest index used decides.
pub fn parse_polynomial(text: &str, dim: Option<usize>) -> Result<LaurentPoly> {
    if text.trim_start().starts_with('{') {
        let terms = match parse_json(text)? {
            Document::Weighted(t) => t,
            Document::Points(_) => {
                return Err(CliError::parse(1, 1, "a polynomial needs \"terms\""));
            }
        };
        if let Some(d) = dim.filter(|&d| d != terms.dim()) {
            return Err(latcanon::Error::DimensionMismatch {
                expected: d,
                found: terms.dim(),
            }
            .into());
        }
        return Ok(LaurentPoly::new(terms)?);
    }
    // comments and line breaks are dropped; columns refer to the joined text
    let joined: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let expr = joined.join(" ");
    let parsed = match dim {
        Some(d) => latcanon::parse_laurent_in(&expr, d),
        None => latcanon::parse_laurent(&expr),
    };
    parsed.map_err(|e| match e {
        latcanon::Error::Syntax { column, message } => CliError::parse(1, column, message),
        other => other.into(),
    })
}
