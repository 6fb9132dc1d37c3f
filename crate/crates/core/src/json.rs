//! JSON interchange for matroids, functions, signatures and matrices.
//! Raw forms carry tract values as strings and are converted once the
//! tract is known.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{RgpFunction, Table, WickFunction};
use crate::groundset::{check_n, Element, Subset};
use crate::matroid::{Bases, OrthogonalMatroid};
use crate::realization::SkewMatrix;
use crate::signature::{CircuitVector, Signature};
use crate::tract::{Field, Tract, TractKind};

/// `{"n": 2, "bases": [["1","2"],["1*","2*"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMatroid {
    pub n: usize,
    pub bases: Vec<Vec<String>>,
}

impl RawMatroid {
    pub fn bases(&self) -> Result<Bases> {
        check_n(self.n)?;
        self.bases
            .iter()
            .map(|b| Subset::from_strings(b, self.n))
            .collect()
    }

    pub fn to_matroid(&self) -> Result<OrthogonalMatroid> {
        OrthogonalMatroid::new(self.n, self.bases()?)
    }

    pub fn from_bases(n: usize, bases: &Bases) -> Self {
        Self {
            n,
            bases: bases.iter().map(|b| b.to_strings()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Wick,
    Rgp,
}

/// `{"n":2, "tract":"Q", "kind":"wick", "values":{"1,2":"1"}}`; absent keys
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunction {
    pub n: usize,
    pub tract: String,
    pub kind: FunctionKind,
    pub values: BTreeMap<String, String>,
}

fn parse_entries<T: Tract>(
    n: usize,
    tract: &T,
    values: &BTreeMap<String, String>,
) -> Result<Vec<(Subset, T::Elem)>> {
    check_n(n)?;
    values
        .iter()
        .map(|(k, v)| Ok((Subset::parse_key(k, n)?, tract.parse_elem(v)?)))
        .collect()
}

fn format_entries<T: Tract>(table: &Table<T>) -> BTreeMap<String, String> {
    table
        .entries()
        .into_iter()
        .map(|(s, v)| (s.key(), table.tract().format_elem(v)))
        .collect()
}

impl RawFunction {
    pub fn tract_kind(&self) -> Result<TractKind> {
        self.tract.parse()
    }

    fn expect_kind(&self, kind: FunctionKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidInput(format!(
                "expected a {kind:?} function, found {:?}",
                self.kind
            )));
        }
        Ok(())
    }

    pub fn to_wick<T: Tract>(&self, tract: T) -> Result<WickFunction<T>> {
        self.expect_kind(FunctionKind::Wick)?;
        let entries = parse_entries(self.n, &tract, &self.values)?;
        WickFunction::new(self.n, tract, entries)
    }

    pub fn to_rgp<T: Tract>(&self, tract: T) -> Result<RgpFunction<T>> {
        self.expect_kind(FunctionKind::Rgp)?;
        let entries = parse_entries(self.n, &tract, &self.values)?;
        RgpFunction::new(self.n, tract, entries)
    }

    pub fn from_wick<T: Tract>(psi: &WickFunction<T>) -> Self {
        Self {
            n: psi.n(),
            tract: psi.tract().name(),
            kind: FunctionKind::Wick,
            values: format_entries(psi),
        }
    }

    pub fn from_rgp<T: Tract>(phi: &RgpFunction<T>) -> Self {
        Self {
            n: phi.n(),
            tract: phi.tract().name(),
            kind: FunctionKind::Rgp,
            values: format_entries(phi),
        }
    }
}

/// `{"n":2, "tract":"Q", "vectors":[{"1*":"-1","2":"-3"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSignature {
    pub n: usize,
    pub tract: String,
    pub vectors: Vec<BTreeMap<String, String>>,
}

impl RawSignature {
    pub fn tract_kind(&self) -> Result<TractKind> {
        self.tract.parse()
    }

    pub fn to_signature<T: Tract>(&self, tract: T) -> Result<Signature<T>> {
        check_n(self.n)?;
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for raw in &self.vectors {
            let mut v = CircuitVector::zero(&tract, self.n);
            for (k, x) in raw {
                v.set(Element::parse(k, self.n)?, tract.parse_elem(x)?);
            }
            vectors.push(v);
        }
        Signature::new(self.n, tract, vectors)
    }

    pub fn from_signature<T: Tract>(sig: &Signature<T>) -> Self {
        let t = sig.tract();
        let vectors = sig
            .rays()
            .iter()
            .map(|r| {
                r.support(t)
                    .iter()
                    .map(|e| (e.to_string(), t.format_elem(r.get(e))))
                    .collect()
            })
            .collect();
        Self {
            n: sig.n(),
            tract: t.name(),
            vectors,
        }
    }
}

/// `{"n":4, "upper":[["1","2","3"],["4","5"],["6"]]}`, optional `"tract"`
/// (a field, default `"Q"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMatrix {
    pub n: usize,
    pub upper: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tract: Option<String>,
}

impl RawMatrix {
    pub fn tract_kind(&self) -> Result<TractKind> {
        self.tract.as_deref().unwrap_or("Q").parse()
    }

    pub fn to_skew<F: Field>(&self, field: F) -> Result<SkewMatrix<F>> {
        let upper = self
            .upper
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| field.parse_elem(v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SkewMatrix::from_upper(field, self.n, &upper)
    }

    pub fn from_skew<F: Field>(a: &SkewMatrix<F>) -> Self {
        let f = a.field();
        Self {
            n: a.n(),
            upper: a
                .upper()
                .iter()
                .map(|r| r.iter().map(|v| f.format_elem(v)).collect())
                .collect(),
            tract: Some(f.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tract::{Rational, RationalField, Tropical};

    const N2: &str = r#"{"n":2,"tract":"Q","kind":"wick","values":{"1,2":"1","1*,2*":"3"}}"#;

    #[test]
    fn function_round_trip() {
        let raw: RawFunction = serde_json::from_str(N2).unwrap();
        assert_eq!(raw.tract_kind().unwrap(), TractKind::Rational);
        let psi = raw.to_wick(RationalField).unwrap();
        assert_eq!(
            *psi.get(Subset::parse_key("1*,2*", 2).unwrap()),
            Rational::from_integer(3.into())
        );
        assert_eq!(RawFunction::from_wick(&psi), raw);
        assert!(raw.to_rgp(RationalField).is_err());
        let bad: RawFunction =
            serde_json::from_str(r#"{"n":2,"tract":"Q","kind":"wick","values":{"1,1*":"1"}}"#)
                .unwrap();
        assert!(matches!(
            bad.to_wick(RationalField),
            Err(Error::WrongShape { .. })
        ));
    }

    #[test]
    fn signature_round_trip() {
        let text = r#"{"n":2,"tract":"Q","vectors":[{"1*":"-1","2":"-3"},{"1":"3","2*":"-1"}]}"#;
        let raw: RawSignature = serde_json::from_str(text).unwrap();
        let sig = raw.to_signature(RationalField).unwrap();
        let back = RawSignature::from_signature(&sig)
            .to_signature(RationalField)
            .unwrap();
        assert!(sig.same_rays(&back));
    }

    #[test]
    fn matrix_and_matroid() {
        let raw: RawMatrix =
            serde_json::from_str(r#"{"n":4,"upper":[["1","2","3"],["4","5"],["6"]]}"#).unwrap();
        let a = raw.to_skew(RationalField).unwrap();
        assert_eq!(a.pfaffian(0b1111), Rational::from_integer(8.into()));
        assert_eq!(RawMatrix::from_skew(&a).upper, raw.upper);
        let m: RawMatroid =
            serde_json::from_str(r#"{"n":2,"bases":[["1","2"],["1*","2*"]]}"#).unwrap();
        assert_eq!(m.to_matroid().unwrap().bases().len(), 2);
        let bad: RawMatroid =
            serde_json::from_str(r#"{"n":2,"bases":[["1","2"],["1*","2"]]}"#).unwrap();
        assert!(bad.to_matroid().is_err());
    }

    #[test]
    fn tropical_values() {
        let raw: RawFunction = serde_json::from_str(
            r#"{"n":1,"tract":"Tropical","kind":"wick","values":{"1":"0","1*":"inf"}}"#,
        )
        .unwrap();
        let psi = raw.to_wick(Tropical).unwrap();
        assert_eq!(psi.support().len(), 1);
    }
}
