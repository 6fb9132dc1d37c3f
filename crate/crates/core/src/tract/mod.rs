//! Tracts: a multiplicative group with zero together with a set of "null"
//! formal sums. Fields, the Krasner hyperfield, the sign hyperfield and the
//! tropical hyperfield are all tracts; the rest of the crate is generic over
//! the [`Tract`] trait.

mod krasner;
mod prime;
mod rational;
mod sign;
mod tropical;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use krasner::Krasner;
pub use prime::PrimeField;
pub use rational::{parse_rational, Rational, RationalField};
pub use sign::{Sign, SignHyperfield};
pub use tropical::{Tropical, TropicalElem};

/// A constraint `partial + c * z ∈ N_F` on an unknown unit `c`.
#[derive(Clone, Debug)]
pub struct NullConstraint<E> {
    pub partial: Vec<E>,
    pub z: E,
}

pub trait Tract: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    /// Name used in JSON configs ("Q", "Fp:5", ...).
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// The unique unit `x` with `1 + x` null.
    fn minus_one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Membership of a formal sum in the null set. Zero terms are ignored.
    fn is_null(&self, terms: &[Self::Elem]) -> bool;

    /// Every element, zero included, when the tract is finite and small.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.minus_one(), a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `(-1)^negate * a`.
    fn signed(&self, negate: bool, a: &Self::Elem) -> Self::Elem {
        if negate {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// Finds a unit `c` meeting every constraint, if one exists.
    ///
    /// The default searches the finite unit group; tracts with infinite unit
    /// groups override it.
    fn solve_unit(&self, constraints: &[NullConstraint<Self::Elem>]) -> Option<Self::Elem> {
        let elements = self
            .elements()
            .expect("tract with infinite unit group must override solve_unit");
        elements
            .into_iter()
            .filter(|c| !self.is_zero(c))
            .find(|c| constraints.iter().all(|k| self.meets(k, c)))
    }

    /// Whether `c` satisfies one constraint.
    fn meets(&self, k: &NullConstraint<Self::Elem>, c: &Self::Elem) -> bool {
        let mut terms = k.partial.clone();
        terms.push(self.mul(c, &k.z));
        self.is_null(&terms)
    }
}

/// A tract whose null set comes from an honest addition.
pub trait Field: Tract {
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn sum(&self, terms: &[Self::Elem]) -> Self::Elem {
        terms.iter().fold(self.zero(), |acc, t| self.add(&acc, t))
    }
}

/// Unit solving shared by the field tracts: the first constraint with a
/// nonzero coefficient pins `c`, the rest are checked.
pub(crate) fn field_solve_unit<F: Field>(
    field: &F,
    constraints: &[NullConstraint<F::Elem>],
) -> Option<F::Elem> {
    let candidate = match constraints.iter().find(|k| !field.is_zero(&k.z)) {
        Some(k) => {
            let s = field.sum(&k.partial);
            field.div(&field.neg(&s), &k.z).ok()?
        }
        None => field.one(),
    };
    if field.is_zero(&candidate) {
        return None;
    }
    constraints
        .iter()
        .all(|k| field.meets(k, &candidate))
        .then_some(candidate)
}

/// A multiset of tract elements. Tracts have no addition, so sums are never
/// simplified beyond dropping zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<E> {
    terms: Vec<E>,
}

impl<E: Clone> FormalSum<E> {
    pub fn new() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<E>) -> Self {
        Self { terms }
    }

    pub fn push(&mut self, term: E) {
        self.terms.push(term);
    }

    pub fn terms(&self) -> &[E] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_null<T: Tract<Elem = E>>(&self, tract: &T) -> bool {
        tract.is_null(&self.terms)
    }

    pub fn scaled<T: Tract<Elem = E>>(&self, tract: &T, c: &E) -> Self {
        Self {
            terms: self.terms.iter().map(|t| tract.mul(c, t)).collect(),
        }
    }

    pub fn without_zeros<T: Tract<Elem = E>>(&self, tract: &T) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|t| !tract.is_zero(t))
                .cloned()
                .collect(),
        }
    }

    /// Number of nonzero terms.
    pub fn support_len<T: Tract<Elem = E>>(&self, tract: &T) -> usize {
        self.terms.iter().filter(|t| !tract.is_zero(t)).count()
    }
}

impl<E: Clone> Default for FormalSum<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// The tract instances the crate ships, as named in JSON configs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TractKind {
    Rational,
    Prime(u64),
    Krasner,
    Sign,
    Tropical,
}

impl FromStr for TractKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Q" => Ok(Self::Rational),
            "Krasner" | "K" => Ok(Self::Krasner),
            "Sign" | "S" => Ok(Self::Sign),
            "Tropical" | "T" => Ok(Self::Tropical),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnknownTract(s.to_string()))?;
                PrimeField::new(p)?;
                Ok(Self::Prime(p))
            }
        }
    }
}

impl fmt::Display for TractKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational => write!(f, "Q"),
            Self::Prime(p) => write!(f, "Fp:{p}"),
            Self::Krasner => write!(f, "Krasner"),
            Self::Sign => write!(f, "Sign"),
            Self::Tropical => write!(f, "Tropical"),
        }
    }
}

/// Expands `$body` once per tract kind with `$t` bound to the concrete tract.
#[macro_export]
macro_rules! with_tract {
    ($kind:expr, |$t:ident| $body:expr) => {
        match $kind {
            $crate::tract::TractKind::Rational => {
                let $t = $crate::tract::RationalField;
                $body
            }
            $crate::tract::TractKind::Prime(p) => {
                let $t = $crate::tract::PrimeField::new(p).expect("validated prime");
                $body
            }
            $crate::tract::TractKind::Krasner => {
                let $t = $crate::tract::Krasner;
                $body
            }
            $crate::tract::TractKind::Sign => {
                let $t = $crate::tract::SignHyperfield;
                $body
            }
            $crate::tract::TractKind::Tropical => {
                let $t = $crate::tract::Tropical;
                $body
            }
        }
    };
}

/// Outcome of [`validate_tract`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TractReport {
    pub passed: bool,
    pub sums_checked: usize,
    /// Axiom label ("T1".."T4") and description of the first violation.
    pub violation: Option<(String, String)>,
}

/// Checks the tract axioms T1-T4 on a finite domain: all elements of a finite
/// tract, or the supplied sample otherwise. Sums are enumerated as multisets
/// of length at most `max_len`.
pub fn validate_tract<T: Tract>(tract: &T, sample: &[T::Elem], max_len: usize) -> TractReport {
    let domain: Vec<T::Elem> = match tract.elements() {
        Some(all) => all,
        None => {
            let mut d = sample.to_vec();
            for e in [tract.zero(), tract.one(), tract.minus_one()] {
                if !d.contains(&e) {
                    d.push(e);
                }
            }
            d
        }
    };
    let units: Vec<T::Elem> = domain
        .iter()
        .filter(|a| !tract.is_zero(a))
        .cloned()
        .collect();
    let fail = |axiom: &str, detail: String, sums_checked| TractReport {
        passed: false,
        sums_checked,
        violation: Some((axiom.to_string(), detail)),
    };

    // T1: abelian group with absorbing zero
    let zero = tract.zero();
    let one = tract.one();
    for a in &domain {
        if !tract.is_zero(&tract.mul(&zero, a)) || !tract.is_zero(&tract.mul(a, &zero)) {
            return fail("T1", format!("0 * {a:?} is not 0"), 0);
        }
    }
    for a in &units {
        if tract.mul(&one, a) != *a {
            return fail("T1", format!("1 * {a:?} != {a:?}"), 0);
        }
        match tract.inv(a) {
            Ok(b) if tract.mul(a, &b) == one => {}
            _ => return fail("T1", format!("{a:?} has no inverse"), 0),
        }
        for b in &units {
            let ab = tract.mul(a, b);
            if tract.is_zero(&ab) {
                return fail("T1", format!("{a:?} * {b:?} = 0"), 0);
            }
            if ab != tract.mul(b, a) {
                return fail("T1", format!("{a:?} * {b:?} not commutative"), 0);
            }
            for c in &units {
                if tract.mul(&ab, c) != tract.mul(a, &tract.mul(b, c)) {
                    return fail("T1", format!("({a:?} {b:?}) {c:?} not associative"), 0);
                }
            }
        }
    }

    // T2: F ∩ N_F = {0}
    for a in &domain {
        if tract.is_null(std::slice::from_ref(a)) != tract.is_zero(a) {
            return fail("T2", format!("single-term sum [{a:?}] misclassified"), 0);
        }
    }

    // T3: exactly one x with 1 + x null, and it is -1
    let negs: Vec<&T::Elem> = units
        .iter()
        .filter(|x| tract.is_null(&[one.clone(), (*x).clone()]))
        .collect();
    if negs.len() != 1 || *negs[0] != tract.minus_one() {
        return fail("T3", format!("units x with 1 + x null: {negs:?}"), 0);
    }

    // T4 and zero-removal over all multisets of the domain
    let mut checked = 0;
    let mut stack: Vec<(usize, Vec<T::Elem>)> = vec![(0, Vec::new())];
    while let Some((start, sum)) = stack.pop() {
        if !sum.is_empty() {
            checked += 1;
            let null = tract.is_null(&sum);
            for c in &units {
                let scaled: Vec<T::Elem> = sum.iter().map(|t| tract.mul(c, t)).collect();
                if tract.is_null(&scaled) != null {
                    return fail("T4", format!("{sum:?} scaled by {c:?}"), checked);
                }
            }
            let mut padded = sum.clone();
            padded.push(zero.clone());
            if tract.is_null(&padded) != null {
                return fail(
                    "T4",
                    format!("adding 0 to {sum:?} changes nullity"),
                    checked,
                );
            }
        }
        if sum.len() < max_len {
            for (k, a) in domain.iter().enumerate().skip(start) {
                let mut next = sum.clone();
                next.push(a.clone());
                stack.push((k, next));
            }
        }
    }
    TractReport {
        passed: true,
        sums_checked: checked,
        violation: None,
    }
}
