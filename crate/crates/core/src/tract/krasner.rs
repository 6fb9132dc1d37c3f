use super::Tract;
use crate::error::{Error, Result};

/// The Krasner hyperfield {0, 1}: a sum is null unless it has exactly one
/// nonzero term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Krasner;

impl Tract for Krasner {
    type Elem = bool;

    fn name(&self) -> String {
        "Krasner".into()
    }

    fn zero(&self) -> bool {
        false
    }

    fn one(&self) -> bool {
        true
    }

    fn minus_one(&self) -> bool {
        true
    }

    fn is_zero(&self, a: &bool) -> bool {
        !a
    }

    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn inv(&self, a: &bool) -> Result<bool> {
        if *a {
            Ok(true)
        } else {
            Err(Error::ZeroInverse)
        }
    }

    fn is_null(&self, terms: &[bool]) -> bool {
        terms.iter().filter(|t| **t).count() != 1
    }

    fn elements(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }

    fn parse_elem(&self, s: &str) -> Result<bool> {
        match s.trim() {
            "0" => Ok(false),
            "1" | "-1" => Ok(true),
            _ => Err(Error::ParseElem(s.to_string())),
        }
    }

    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }
}
