use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::rational::parse_rational;
use super::{NullConstraint, Tract};
use crate::error::{Error, Result};

/// An element of the tropical hyperfield, identified with its valuation.
/// The additive zero has valuation +∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropicalElem {
    Infinity,
    Finite(BigRational),
}

impl TropicalElem {
    pub fn valuation(&self) -> Option<&BigRational> {
        match self {
            Self::Infinity => None,
            Self::Finite(v) => Some(v),
        }
    }
}

impl fmt::Display for TropicalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// The tropical hyperfield in the min convention: a sum is null when its
/// minimum valuation is attained at least twice (or it has no finite term).
/// Multiplication adds valuations, and `-1 = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tropical;

impl Tropical {
    pub fn from_valuation(v: i64) -> TropicalElem {
        TropicalElem::Finite(BigRational::from_integer(v.into()))
    }
}

impl Tract for Tropical {
    type Elem = TropicalElem;

    fn name(&self) -> String {
        "Tropical".into()
    }

    fn zero(&self) -> TropicalElem {
        TropicalElem::Infinity
    }

    fn one(&self) -> TropicalElem {
        TropicalElem::Finite(BigRational::zero())
    }

    fn minus_one(&self) -> TropicalElem {
        self.one()
    }

    fn is_zero(&self, a: &TropicalElem) -> bool {
        *a == TropicalElem::Infinity
    }

    fn mul(&self, a: &TropicalElem, b: &TropicalElem) -> TropicalElem {
        match (a, b) {
            (TropicalElem::Finite(x), TropicalElem::Finite(y)) => TropicalElem::Finite(x + y),
            _ => TropicalElem::Infinity,
        }
    }

    fn inv(&self, a: &TropicalElem) -> Result<TropicalElem> {
        match a {
            TropicalElem::Infinity => Err(Error::ZeroInverse),
            TropicalElem::Finite(x) => Ok(TropicalElem::Finite(-x)),
        }
    }

    fn neg(&self, a: &TropicalElem) -> TropicalElem {
        a.clone()
    }

    fn is_null(&self, terms: &[TropicalElem]) -> bool {
        let mut min: Option<&BigRational> = None;
        let mut count = 0;
        for v in terms.iter().filter_map(TropicalElem::valuation) {
            match min {
                Some(m) if v > m => {}
                Some(m) if v == m => count += 1,
                _ => {
                    min = Some(v);
                    count = 1;
                }
            }
        }
        count != 1
    }

    fn solve_unit(&self, constraints: &[NullConstraint<TropicalElem>]) -> Option<TropicalElem> {
        let mut exact: Option<BigRational> = None;
        let mut lower: Option<BigRational> = None;
        for k in constraints {
            let Some(w) = k.z.valuation() else {
                if !self.is_null(&k.partial) {
                    return None;
                }
                continue;
            };
            let vals: Vec<&BigRational> = k
                .partial
                .iter()
                .filter_map(TropicalElem::valuation)
                .collect();
            let m = vals.iter().min()?;
            let target = *m - w;
            if vals.iter().filter(|v| **v == *m).count() == 1 {
                // c*z must tie the unique minimum
                match &exact {
                    Some(e) if *e != target => return None,
                    _ => exact = Some(target),
                }
            } else if lower.as_ref().is_none_or(|l| target > *l) {
                // c*z must not undercut the tied minimum
                lower = Some(target);
            }
        }
        let c = match (exact, lower) {
            (Some(e), Some(l)) if e < l => return None,
            (Some(e), _) => e,
            (None, Some(l)) => l,
            (None, None) => BigRational::zero(),
        };
        let c = TropicalElem::Finite(c);
        constraints.iter().all(|k| self.meets(k, &c)).then_some(c)
    }

    fn parse_elem(&self, s: &str) -> Result<TropicalElem> {
        match s.trim() {
            "inf" | "∞" | "Infinity" => Ok(TropicalElem::Infinity),
            t => parse_rational(t).map(TropicalElem::Finite),
        }
    }

    fn format_elem(&self, a: &TropicalElem) -> String {
        a.to_string()
    }
}
