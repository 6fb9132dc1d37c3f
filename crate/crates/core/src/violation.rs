use std::fmt;

use serde::Serialize;

use crate::groundset::{Element, Subset};

/// Witness for a failed verification. Tract values are carried as their
/// formatted strings so witnesses serialize uniformly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Violation {
    /// Strong exchange fails for `b1`, `b2` at the skew pair of `i`.
    Exchange {
        b1: Subset,
        b2: Subset,
        i: usize,
    },
    /// Exactly one `i ∈ S∖S'` has both `S∖{i}` and `S'∪{i}` as bases.
    AntisymmetricSingle {
        s: Subset,
        s_prime: Subset,
        i: Element,
    },
    /// `T∖{i,i*}∪{j,j*}` and `T∪{i,i*}∖{j,j*}` disagree on being bases.
    AntisymmetricPair {
        t: Subset,
        i: usize,
        j: usize,
    },
    /// Transversal bases of both parities.
    NotEven {
        b0: Subset,
        b1: Subset,
    },
    /// A member of a family or function domain has the wrong shape.
    Shape {
        subset: Subset,
        expected: String,
    },
    /// The function vanishes everywhere.
    IdenticallyZero,
    /// The support fails the matroid axioms.
    Support {
        reason: Box<Violation>,
    },
    WickRelation {
        t: Subset,
        t_prime: Subset,
        terms: Vec<String>,
    },
    RgpRelation {
        s: Subset,
        s_prime: Subset,
        terms: Vec<String>,
    },
    /// Nonzero transversal outside the parity class `sigma`.
    RgpSigma {
        sigma: u8,
        offending: Subset,
    },
    Rgp4 {
        b: Subset,
        i: usize,
        j: usize,
        left: String,
        right: String,
    },
    Rgp4Consequence {
        a: Subset,
        i: usize,
        j: usize,
        left: String,
        right: String,
    },
    /// Signature supports differ from the circuits.
    CircuitSupports {
        missing: Vec<Subset>,
        extra: Vec<Subset>,
    },
    Pairing {
        x: String,
        y: String,
        terms: Vec<String>,
    },
    /// Two vectors with the same support are not proportional.
    NotProportional {
        x: String,
        y: String,
    },
    LOne {
        x1: String,
        x2: String,
        f: Element,
    },
    LTwo {
        x1: String,
        x2: String,
        x3: String,
        basis: Subset,
    },
    Cayley {
        rows: Subset,
        cols: Subset,
        det: String,
        expected: String,
    },
    LinearRelation {
        b: Subset,
        i: usize,
        j: usize,
        left: String,
        right: String,
    },
    /// A Plücker coordinate outside the expected component is nonzero.
    WrongComponent {
        subset: Subset,
        value: String,
    },
    GpRelation {
        case: u8,
        s: Subset,
        s_prime: Subset,
        terms: Vec<String>,
    },
    CaseSixEquality {
        s: Subset,
        s_prime: Subset,
        equality: String,
    },
    /// A case-3/5 relation does not rewrite to a case-1 relation.
    Rewrite {
        case: u8,
        s: Subset,
        s_prime: Subset,
    },
    Unclassified {
        s: Subset,
        s_prime: Subset,
        matches: Vec<u8>,
    },
    RoundTrip {
        stage: String,
    },
}

pub type Verdict = std::result::Result<(), Violation>;

impl Violation {
    pub fn label(&self) -> &'static str {
        match self {
            Violation::Exchange { .. } => "exchange",
            Violation::AntisymmetricSingle { .. } => "antisymmetric (1)",
            Violation::AntisymmetricPair { .. } => "antisymmetric (2)",
            Violation::NotEven { .. } => "even",
            Violation::Shape { .. } => "shape",
            Violation::IdenticallyZero => "nonzero",
            Violation::Support { .. } => "support",
            Violation::WickRelation { .. } => "W2",
            Violation::RgpRelation { .. } => "rGP2",
            Violation::RgpSigma { .. } => "rGP3",
            Violation::Rgp4 { .. } => "rGP4",
            Violation::Rgp4Consequence { .. } => "rGP4 consequence",
            Violation::CircuitSupports { .. } => "supports",
            Violation::Pairing { .. } => "O",
            Violation::NotProportional { .. } => "scalar uniqueness",
            Violation::LOne { .. } => "L-i'",
            Violation::LTwo { .. } => "L-ii'",
            Violation::Cayley { .. } => "Cayley",
            Violation::LinearRelation { .. } => "linear relation",
            Violation::WrongComponent { .. } => "component",
            Violation::GpRelation { .. } => "GP relation",
            Violation::CaseSixEquality { .. } => "case 6 equality",
            Violation::Rewrite { .. } => "rewrite",
            Violation::Unclassified { .. } => "classification",
            Violation::RoundTrip { .. } => "round trip",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        write!(f, "{}: {json}", self.label())
    }
}

impl std::error::Error for Violation {}
