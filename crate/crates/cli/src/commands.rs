//! The `canon`, `equiv` and `laurent` commands, as text in and text out.

use latcanon::{
    canonicalize, canonicalize_laurent, equivalence_witness, print_laurent, Affinity, CanonOptions,
    Int, LaurentPoly, WeightedPointSet,
};

use crate::error::Result;
use crate::input::Document;
use crate::output::{document_json, document_text, witness_text, Format};

/// Canonical form of a document, optionally followed by the affinity that
/// produces it from the input.
pub fn canon(doc: &Document, format: Format, witness: bool) -> Result<String> {
    let opts = CanonOptions::default();
    let (omega, psi) = match doc {
        Document::Points(s) => {
            let c = canonicalize(s, &opts)?;
            (Document::Points(c.omega), c.psi)
        }
        Document::Weighted(s) => {
            let c = canonicalize(s, &opts)?;
            (Document::Weighted(c.omega), c.psi)
        }
    };
    let witness = witness.then_some(&psi);
    Ok(match format {
        Format::Json => document_json(&omega, witness),
        Format::Text => {
            let mut out = document_text(&omega);
            if let Some(phi) = witness {
                out += &witness_text(phi);
            }
            out
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(Affinity),
    NotEquivalent,
}

/// Decides whether an affinity maps `a` onto `b`. A plain point set
/// compared with a weighted one counts as having unit weights.
pub fn equiv(a: &Document, b: &Document) -> Result<Verdict> {
    let found = match (a, b) {
        (Document::Points(x), Document::Points(y)) => {
            equivalence_witness(x, y, &CanonOptions::default())?
        }
        _ => equivalence_witness(&weighted(a), &weighted(b), &CanonOptions::default())?,
    };
    Ok(found.map_or(Verdict::NotEquivalent, Verdict::Equivalent))
}

fn weighted(doc: &Document) -> WeightedPointSet {
    match doc {
        Document::Points(s) => WeightedPointSet::uniform(s, Int::one()),
        Document::Weighted(s) => s.clone(),
    }
}

pub fn verdict_text(v: &Verdict, witness: bool) -> String {
    match v {
        Verdict::Equivalent(phi) if witness => format!("EQUIVALENT\n{}", witness_text(phi)),
        Verdict::Equivalent(_) => "EQUIVALENT\n".into(),
        Verdict::NotEquivalent => "NOT EQUIVALENT\n".into(),
    }
}

pub fn laurent(p: &LaurentPoly, format: Format) -> Result<String> {
    let c = canonicalize_laurent(p)?;
    Ok(match format {
        Format::Text => print_laurent(&c) + "\n",
        Format::Json => document_json(&Document::Weighted(c.terms().clone()), None),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{parse_document, parse_polynomial};

    #[test]
    fn singleton_goes_to_origin() {
        let doc = parse_document("3 0\n").unwrap();
        assert_eq!(canon(&doc, Format::Text, false).unwrap(), "0 0\n");
    }

    #[test]
    fn unit_weights_match_plain_points() {
        let plain = parse_document("0 0\n4 1\n1 3\n").unwrap();
        let ones = parse_document("0 0 : 1\n4 1 : 1\n1 3 : 1\n").unwrap();
        assert!(matches!(
            equiv(&plain, &ones).unwrap(),
            Verdict::Equivalent(_)
        ));
        let heavy = parse_document("0 0 : 2\n4 1 : 1\n1 3 : 1\n").unwrap();
        assert_eq!(equiv(&plain, &heavy).unwrap(), Verdict::NotEquivalent);
    }

    #[test]
    fn laurent_sign_and_unit() {
        let p = parse_polynomial("-t1^3*t2", None).unwrap();
        assert_eq!(laurent(&p, Format::Text).unwrap(), "1\n");
    }
}
