use std::fmt;

use super::Tract;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn from_i64(v: i64) -> Self {
        match v.signum() {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => Sign::Zero,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// The sign hyperfield {0, +1, -1}: a sum is null when it is empty after
/// dropping zeros or contains both signs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SignHyperfield;

impl Tract for SignHyperfield {
    type Elem = Sign;

    fn name(&self) -> String {
        "Sign".into()
    }

    fn zero(&self) -> Sign {
        Sign::Zero
    }

    fn one(&self) -> Sign {
        Sign::Pos
    }

    fn minus_one(&self) -> Sign {
        Sign::Neg
    }

    fn is_zero(&self, a: &Sign) -> bool {
        *a == Sign::Zero
    }

    fn mul(&self, a: &Sign, b: &Sign) -> Sign {
        Sign::from_i64(i64::from(a.to_i8()) * i64::from(b.to_i8()))
    }

    fn inv(&self, a: &Sign) -> Result<Sign> {
        match a {
            Sign::Zero => Err(Error::ZeroInverse),
            s => Ok(*s),
        }
    }

    fn is_null(&self, terms: &[Sign]) -> bool {
        let pos = terms.contains(&Sign::Pos);
        let neg = terms.contains(&Sign::Neg);
        pos == neg
    }

    fn elements(&self) -> Option<Vec<Sign>> {
        Some(vec![Sign::Zero, Sign::Pos, Sign::Neg])
    }

    fn parse_elem(&self, s: &str) -> Result<Sign> {
        match s.trim() {
            "0" => Ok(Sign::Zero),
            "1" | "+1" | "+" => Ok(Sign::Pos),
            "-1" | "-" => Ok(Sign::Neg),
            _ => Err(Error::ParseElem(s.to_string())),
        }
    }

    fn format_elem(&self, a: &Sign) -> String {
        a.to_string()
    }
}
