//! Wick functions on transversals and restricted Grassmann-Plücker functions
//! on transversals and almost-transversals, with strong and weak verifiers.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groundset::{self, check_n, Subset};
use crate::matroid::{self, Bases, EvenAntisymmetricMatroid, OrthogonalMatroid};
use crate::tract::{FormalSum, Tract};
use crate::violation::{Verdict, Violation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    #[default]
    Strong,
    Weak,
}

impl FromStr for Strength {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Self::Strong),
            "weak" => Ok(Self::Weak),
            _ => Err(Error::InvalidInput(format!("unknown strength {s:?}"))),
        }
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strong => "strong",
            Self::Weak => "weak",
        })
    }
}

/// A finite map from subsets to tract elements; absent keys are zero.
#[derive(Clone, Debug)]
pub struct Table<T: Tract> {
    n: usize,
    tract: T,
    values: HashMap<Subset, T::Elem>,
    zero: T::Elem,
}

impl<T: Tract> Table<T> {
    fn build<I>(
        n: usize,
        tract: T,
        entries: I,
        accept: fn(Subset, usize) -> bool,
        expected: &'static str,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, T::Elem)>,
    {
        check_n(n)?;
        let mut values = HashMap::new();
        for (s, v) in entries {
            if !accept(s, n) {
                return Err(Error::WrongShape {
                    subset: s,
                    expected,
                });
            }
            if !tract.is_zero(&v) {
                values.insert(s, v);
            }
        }
        let zero = tract.zero();
        Ok(Self {
            n,
            tract,
            values,
            zero,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tract(&self) -> &T {
        &self.tract
    }

    pub fn get(&self, s: Subset) -> &T::Elem {
        self.values.get(&s).unwrap_or(&self.zero)
    }

    pub fn is_nonzero(&self, s: Subset) -> bool {
        self.values.contains_key(&s)
    }

    pub fn support(&self) -> Bases {
        self.values.keys().copied().collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries in ascending subset order.
    pub fn entries(&self) -> Vec<(Subset, &T::Elem)> {
        let mut out: Vec<_> = self.values.iter().map(|(s, v)| (*s, v)).collect();
        out.sort_by_key(|(s, _)| *s);
        out
    }

    fn map_values(&self, f: impl Fn(&T::Elem) -> T::Elem) -> Self {
        Self {
            n: self.n,
            tract: self.tract.clone(),
            values: self.values.iter().map(|(s, v)| (*s, f(v))).collect(),
            zero: self.zero.clone(),
        }
    }

    fn set(&mut self, s: Subset, v: T::Elem) {
        if self.tract.is_zero(&v) {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
    }

    /// Whether `other = c * self` for a unit `c`.
    pub fn projectively_equal(&self, other: &Table<T>) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::IncompatibleDomains);
        }
        if self.support() != other.support() {
            return Ok(false);
        }
        let Some((s0, v0)) = self.entries().first().map(|(s, v)| (*s, (*v).clone())) else {
            return Ok(true);
        };
        let t = &self.tract;
        let c = t.div(other.get(s0), &v0)?;
        Ok(self
            .values
            .iter()
            .all(|(s, v)| t.mul(&c, v) == *other.get(*s)))
    }

    fn format(&self, v: &T::Elem) -> String {
        self.tract.format_elem(v)
    }

    fn format_terms(&self, sum: &FormalSum<T::Elem>) -> Vec<String> {
        sum.terms().iter().map(|v| self.format(v)).collect()
    }
}

/// A tract-valued function on transversals.
#[derive(Clone, Debug)]
pub struct WickFunction<T: Tract>(Table<T>);

/// A tract-valued function on transversals and almost-transversals.
#[derive(Clone, Debug)]
pub struct RgpFunction<T: Tract>(Table<T>);

impl<T: Tract> Deref for WickFunction<T> {
    type Target = Table<T>;
    fn deref(&self) -> &Table<T> {
        &self.0
    }
}

impl<T: Tract> Deref for RgpFunction<T> {
    type Target = Table<T>;
    fn deref(&self) -> &Table<T> {
        &self.0
    }
}

impl<T: Tract> WickFunction<T> {
    pub fn new<I: IntoIterator<Item = (Subset, T::Elem)>>(
        n: usize,
        tract: T,
        entries: I,
    ) -> Result<Self> {
        Table::build(n, tract, entries, |s, n| s.is_transversal(n), "transversal").map(Self)
    }

    /// The indicator function of a basis family.
    pub fn indicator(tract: T, m: &OrthogonalMatroid) -> Self {
        let one = tract.one();
        Self::new(m.n(), tract, m.bases().iter().map(|b| (*b, one.clone())))
            .expect("transversal bases")
    }

    pub fn scaled(&self, c: &T::Elem) -> Self {
        Self(self.0.map_values(|v| self.tract.mul(c, v)))
    }

    /// Replaces one value.
    pub fn with_value(&self, s: Subset, v: T::Elem) -> Self {
        let mut t = self.0.clone();
        t.set(s, v);
        Self(t)
    }

    pub fn projectively_equal(&self, other: &Self) -> Result<bool> {
        self.0.projectively_equal(&other.0)
    }

    pub fn support_matroid(&self) -> Result<OrthogonalMatroid> {
        OrthogonalMatroid::new(self.n, self.support())
    }
}

impl<T: Tract> RgpFunction<T> {
    pub fn new<I: IntoIterator<Item = (Subset, T::Elem)>>(
        n: usize,
        tract: T,
        entries: I,
    ) -> Result<Self> {
        Table::build(
            n,
            tract,
            entries,
            |s, n| s.in_domain(n),
            "transversal or almost-transversal",
        )
        .map(Self)
    }

    /// The indicator function of a basis family.
    pub fn indicator(tract: T, m: &EvenAntisymmetricMatroid) -> Self {
        let one = tract.one();
        Self::new(m.n(), tract, m.bases().iter().map(|b| (*b, one.clone()))).expect("domain bases")
    }

    pub fn scaled(&self, c: &T::Elem) -> Self {
        Self(self.0.map_values(|v| self.tract.mul(c, v)))
    }

    pub fn with_value(&self, s: Subset, v: T::Elem) -> Self {
        let mut t = self.0.clone();
        t.set(s, v);
        Self(t)
    }

    pub fn projectively_equal(&self, other: &Self) -> Result<bool> {
        self.0.projectively_equal(&other.0)
    }

    /// Parity class of the first nonzero transversal value.
    pub fn sigma(&self) -> Option<u8> {
        groundset::transversals(self.n, None)
            .into_iter()
            .find(|t| self.is_nonzero(*t))
            .map(Subset::parity)
    }

    pub fn support_matroid(&self) -> Result<EvenAntisymmetricMatroid> {
        EvenAntisymmetricMatroid::new(self.n, self.support())
    }
}

/// `Σ_{i ∈ (T△T')∩[n]} (-1)^{|(T△T')∩[n] < i|} ψ(T△{i,i*}) ψ(T'△{i,i*})`.
pub fn wick_relation_terms<T: Tract>(
    psi: &WickFunction<T>,
    t: Subset,
    t2: Subset,
) -> FormalSum<T::Elem> {
    let tract = psi.tract();
    let d = t.sym_diff(t2).plain_part();
    let mut sum = FormalSum::new();
    for i in d.iter() {
        let p = Subset::pair(i.index());
        let term = tract.mul(psi.get(t.sym_diff(p)), psi.get(t2.sym_diff(p)));
        sum.push(tract.signed(d.count_less(i) % 2 == 1, &term));
    }
    sum
}

/// Strong: not identically zero and every Wick relation null. Weak: the
/// support is an orthogonal matroid and every 4-term relation is null.
pub fn check_wick<T: Tract>(psi: &WickFunction<T>, strength: Strength) -> Verdict {
    if psi.is_identically_zero() {
        return Err(Violation::IdenticallyZero);
    }
    let n = psi.n();
    if strength == Strength::Weak {
        let verdict =
            matroid::check_strong_exchange(n, &psi.support()).expect("nonempty transversal family");
        verdict.map_err(|v| Violation::Support {
            reason: Box::new(v),
        })?;
    }
    let ts = groundset::transversals(n, None);
    for (a, &t) in ts.iter().enumerate() {
        for &t2 in &ts[a + 1..] {
            let width = t.sym_diff(t2).plain_part().len();
            if strength == Strength::Weak && width != 4 {
                continue;
            }
            let sum = wick_relation_terms(psi, t, t2);
            if !sum.is_null(psi.tract()) {
                return Err(Violation::WickRelation {
                    t,
                    t_prime: t2,
                    terms: psi.format_terms(&sum),
                });
            }
        }
    }
    Ok(())
}

/// `Σ_{i ∈ S∖S'} (-1)^{|S△S' < i|} φ(S∖{i}) φ(S'∪{i})`.
pub fn rgp_relation_terms<T: Tract>(
    phi: &RgpFunction<T>,
    s: Subset,
    s2: Subset,
) -> FormalSum<T::Elem> {
    let tract = phi.tract();
    let d = s.sym_diff(s2);
    let mut sum = FormalSum::new();
    for i in s.difference(s2).iter() {
        let term = tract.mul(phi.get(s.without(i)), phi.get(s2.with(i)));
        sum.push(tract.signed(d.count_less(i) % 2 == 1, &term));
    }
    sum
}

fn check_rgp3<T: Tract>(phi: &RgpFunction<T>, sigma: u8) -> Verdict {
    match groundset::transversals(phi.n(), Some(1 - sigma))
        .into_iter()
        .find(|t| phi.is_nonzero(*t))
    {
        Some(offending) => Err(Violation::RgpSigma { sigma, offending }),
        None => Ok(()),
    }
}

/// `φ(B∖{i,i*}∪{j,j*}) = (-1)^{[i∈B]+[j∈B]} φ(B∪{i,i*}∖{j,j*})` for all
/// `B ∈ T_n^σ` and distinct `i, j`.
fn check_rgp4_with<T: Tract>(phi: &RgpFunction<T>, sigma: u8) -> Verdict {
    let n = phi.n();
    let tract = phi.tract();
    for b in groundset::transversals(n, Some(sigma)) {
        let plain = b.plain_part();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let (pi, pj) = (Subset::pair(i), Subset::pair(j));
                let left = phi.get(b.difference(pi).union(pj));
                let right = phi.get(b.union(pi).difference(pj));
                let m = plain.intersection(pi).len() + plain.intersection(pj).len();
                if *left != tract.signed(m % 2 == 1, right) {
                    return Err(Violation::Rgp4 {
                        b,
                        i,
                        j,
                        left: phi.format(left),
                        right: phi.format(right),
                    });
                }
            }
        }
    }
    Ok(())
}

/// rGP3 and rGP4 together. Without a nonzero transversal value both parity
/// classes are admissible and either may witness rGP4.
fn check_rgp34<T: Tract>(phi: &RgpFunction<T>) -> Verdict {
    match phi.sigma() {
        Some(sigma) => {
            check_rgp3(phi, sigma)?;
            check_rgp4_with(phi, sigma)
        }
        None => check_rgp4_with(phi, 0).or_else(|e| check_rgp4_with(phi, 1).map_err(|_| e)),
    }
}

fn check_rgp2<T: Tract>(phi: &RgpFunction<T>, max_width: usize) -> Verdict {
    let n = phi.n();
    let hypos = groundset::hypo_transversals(n);
    for s in groundset::hyper_transversals(n) {
        for &s2 in &hypos {
            if s.difference(s2).len() > max_width {
                continue;
            }
            let sum = rgp_relation_terms(phi, s, s2);
            if !sum.is_null(phi.tract()) {
                return Err(Violation::RgpRelation {
                    s,
                    s_prime: s2,
                    terms: phi.format_terms(&sum),
                });
            }
        }
    }
    Ok(())
}

/// Strong: rGP1, rGP3, rGP4, then every relation rGP2. Weak: rGP1, the
/// support is an even antisymmetric matroid, rGP3, rGP4, and the relations
/// with `|S∖S'| ≤ 4`.
pub fn check_rgp<T: Tract>(phi: &RgpFunction<T>, strength: Strength) -> Verdict {
    if phi.is_identically_zero() {
        return Err(Violation::IdenticallyZero);
    }
    let n = phi.n();
    if strength == Strength::Weak {
        let support = phi.support();
        let wrap = |v| Violation::Support {
            reason: Box::new(v),
        };
        matroid::check_antisymmetric_axioms(n, &support)
            .expect("nonempty domain family")
            .map_err(wrap)?;
        matroid::transversal_parity(n, &support).map_err(wrap)?;
    }
    check_rgp34(phi)?;
    let width = match strength {
        Strength::Strong => usize::MAX,
        Strength::Weak => 4,
    };
    check_rgp2(phi, width)
}

/// `φ(A) = (-1)^{|A∩[n]*|+1-σ} φ(A∪{i,i*}∖{j,j*})` for every
/// almost-transversal `A` missing the pair `i` and containing the pair `j`.
pub fn check_rgp4_consequence<T: Tract>(phi: &RgpFunction<T>) -> Verdict {
    let n = phi.n();
    let sigma = phi.sigma().unwrap_or(0) as usize;
    let tract = phi.tract();
    for a in groundset::almost_transversals(n) {
        let j = a.skew_pairs().next().expect("one skew pair");
        let i = (1..=n)
            .find(|&i| a.intersection(Subset::pair(i)).is_empty())
            .expect("one missing pair");
        let other = a.union(Subset::pair(i)).difference(Subset::pair(j));
        let e = a.starred_part().len() + 1 + 2 - sigma;
        let (left, right) = (phi.get(a), phi.get(other));
        if *left != tract.signed(e % 2 == 1, right) {
            return Err(Violation::Rgp4Consequence {
                a,
                i,
                j,
                left: phi.format(left),
                right: phi.format(right),
            });
        }
    }
    Ok(())
}

/// Equality of classes by comparing `φ(A)/φ(B)` along every edge of the
/// basis graph (transversal `B`, almost-transversal `A = B∖{i,i*}∪{j,j*}`).
/// Both functions must share the support.
pub fn rgp_equal_by_edge_ratios<T: Tract>(
    phi: &RgpFunction<T>,
    other: &RgpFunction<T>,
) -> Result<bool> {
    if phi.n() != other.n() {
        return Err(Error::IncompatibleDomains);
    }
    if phi.support() != other.support() {
        return Ok(false);
    }
    let n = phi.n();
    let t = phi.tract();
    for b in phi.support().into_iter().filter(|b| b.is_transversal(n)) {
        for i in b.iter() {
            for j in b.iter() {
                if i == j {
                    continue;
                }
                let a = b
                    .difference(Subset::pair(i.index()))
                    .union(Subset::pair(j.index()));
                if !phi.is_nonzero(a) {
                    continue;
                }
                // cross-multiplied ratio equality
                let lhs = t.mul(phi.get(a), other.get(b));
                let rhs = t.mul(other.get(a), phi.get(b));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
