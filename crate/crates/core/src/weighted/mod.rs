//! Weighted sets and Laurent polynomials.

mod text;

use std::fmt;

use crate::affinity::{Affinity, Transform};
use crate::canon::{canonicalize, CanonOptions};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::point::Point;
use crate::set::{cmp_sets, LatticeSet, WeightedPointSet};

pub use text::{parse_laurent, parse_laurent_in, print_laurent};

/// Canonical form of a weighted set; weights only enter the comparisons.
pub fn canonical_form_weighted(set: &WeightedPointSet) -> WeightedPointSet {
    canonicalize(set, &CanonOptions::default())
        .expect("canonical form of a well-formed set")
        .omega
}

/// A nonzero Laurent polynomial in `t1..td`, stored as exponent vectors with
/// their coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: WeightedPointSet,
}

impl LaurentPoly {
    pub fn new(terms: WeightedPointSet) -> Result<LaurentPoly> {
        if terms.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(LaurentPoly { terms })
    }

    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (Point, Int)>,
    ) -> Result<LaurentPoly> {
        LaurentPoly::new(LatticeSet::from_items(dim, terms)?)
    }

    pub fn dim(&self) -> usize {
        self.terms.dim()
    }

    pub fn terms(&self) -> &WeightedPointSet {
        &self.terms
    }

    /// Term with the lexicographically greatest exponent.
    pub fn leading(&self) -> &(Point, Int) {
        self.terms.items().last().expect("nonzero polynomial")
    }

    pub fn negated(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.negated(),
        }
    }

    /// `P(t)` with exponents mapped by `phi`: variable change plus monomial
    /// factor.
    pub fn substitute(&self, phi: &Affinity) -> Result<LaurentPoly> {
        crate::error::check_dim(phi.dim(), self.dim())?;
        Ok(LaurentPoly {
            terms: self.terms.transform(phi),
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_laurent(self))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", print_laurent(self))
    }
}

/// Canonical representative of `±t^λ P(t^A)`: the smaller canonical form of
/// `P` and `-P`, with the sign then fixed so the leading coefficient is
/// positive.
pub fn canonicalize_laurent(p: &LaurentPoly) -> Result<LaurentPoly> {
    if p.terms.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let plus = canonical_form_weighted(&p.terms);
    let minus = canonical_form_weighted(&p.terms.negated());
    let best = if cmp_sets(&plus, &minus).is_le() {
        plus
    } else {
        minus
    };
    let out = LaurentPoly { terms: best };
    Ok(if out.leading().1.is_negative() {
        out.negated()
    } else {
        out
    })
}
