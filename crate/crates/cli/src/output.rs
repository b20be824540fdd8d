//! Deterministic printing of sets, witnesses and polynomials.

use std::fmt::Write;

use latcanon::{Affinity, Int, LatticeSet, Mark, Point, PointSet, WeightedPointSet};
use serde_json::{json, Number, Value};

use crate::input::Document;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn join(coords: &[Int]) -> String {
    coords
        .iter()
        .map(Int::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn points_text(set: &PointSet) -> String {
    set.points().map(|p| join(p.coords()) + "\n").collect()
}

pub fn weighted_text(set: &WeightedPointSet) -> String {
    set.items()
        .iter()
        .map(|(p, w)| format!("{} : {w}\n", join(p.coords())))
        .collect()
}

pub fn document_text(doc: &Document) -> String {
    match doc {
        Document::Points(s) => points_text(s),
        Document::Weighted(s) => weighted_text(s),
    }
}

/// `A:` followed by the rows of the matrix, then `b:` and the offset.
pub fn witness_text(phi: &Affinity) -> String {
    let mut out = String::from("A:\n");
    for row in phi.matrix().to_rows() {
        writeln!(out, "{}", join(&row)).unwrap();
    }
    writeln!(out, "b:\n{}", join(phi.offset())).unwrap();
    out
}

fn number(x: &Int) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

fn point_json(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(number).collect())
}

fn set_json<W: Mark>(set: &LatticeSet<W>, weight: impl Fn(&W) -> Option<Value>) -> Value {
    let mut items = Vec::new();
    let mut terms = Vec::new();
    for (p, w) in set.items() {
        match weight(w) {
            Some(c) => terms.push(json!({"exp": point_json(p), "coef": c})),
            None => items.push(point_json(p)),
        }
    }
    if terms.is_empty() {
        json!({"dim": set.dim(), "points": items})
    } else {
        json!({"dim": set.dim(), "terms": terms})
    }
}

pub fn document_json(doc: &Document, witness: Option<&Affinity>) -> String {
    let mut v = match doc {
        Document::Points(s) => set_json(s, |_| None),
        Document::Weighted(s) => set_json(s, |w| Some(number(w))),
    };
    if let Some(phi) = witness {
        v["witness"] = json!({
            "A": phi.matrix().to_rows().iter().map(|r| r.iter().map(number).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": phi.offset().iter().map(number).collect::<Vec<_>>(),
        });
    }
    serde_json::to_string(&v).expect("serializable") + "\n"
}
