//! Circuit signatures: scaling-closed sets of tract vectors on
//! `[n] ∪ [n]*`, stored as one normalized representative per ray.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::groundset::{Element, Subset};
use crate::matroid::{ModularKind, OrthogonalMatroid};
use crate::tract::{FormalSum, NullConstraint, Tract};
use crate::violation::{Verdict, Violation};

/// A vector indexed by element rank (`1, 1*, 2, 2*, ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircuitVector<E> {
    coords: Vec<E>,
}

impl<E: Clone + Eq> CircuitVector<E> {
    pub fn zero<T: Tract<Elem = E>>(tract: &T, n: usize) -> Self {
        Self {
            coords: vec![tract.zero(); 2 * n],
        }
    }

    pub fn from_coords(coords: Vec<E>) -> Self {
        Self { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn get(&self, e: Element) -> &E {
        &self.coords[e.rank()]
    }

    pub fn set(&mut self, e: Element, v: E) {
        self.coords[e.rank()] = v;
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn support<T: Tract<Elem = E>>(&self, tract: &T) -> Subset {
        Subset::from_elements(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, v)| !tract.is_zero(v))
                .map(|(r, _)| Element::from_rank(r)),
        )
    }

    pub fn is_zero<T: Tract<Elem = E>>(&self, tract: &T) -> bool {
        self.coords.iter().all(|v| tract.is_zero(v))
    }

    pub fn scaled<T: Tract<Elem = E>>(&self, tract: &T, c: &E) -> Self {
        Self {
            coords: self.coords.iter().map(|v| tract.mul(c, v)).collect(),
        }
    }

    pub fn negated<T: Tract<Elem = E>>(&self, tract: &T) -> Self {
        Self {
            coords: self.coords.iter().map(|v| tract.neg(v)).collect(),
        }
    }

    /// The representative of the ray whose first nonzero coordinate is 1.
    pub fn normalized<T: Tract<Elem = E>>(&self, tract: &T) -> Self {
        match self.coords.iter().find(|v| !tract.is_zero(v)) {
            Some(lead) => {
                let inv = tract.inv(lead).expect("nonzero lead");
                self.scaled(tract, &inv)
            }
            None => self.clone(),
        }
    }

    /// `{1*: -1, 2: -3}`.
    pub fn format<T: Tract<Elem = E>>(&self, tract: &T) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, v)| !tract.is_zero(v))
            .map(|(r, v)| format!("{}: {}", Element::from_rank(r), tract.format_elem(v)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `⟨X, Y⟩ = Σ X(e) Y(e*)`, one term per `e` with both factors nonzero.
pub fn pairing<T: Tract>(
    tract: &T,
    x: &CircuitVector<T::Elem>,
    y: &CircuitVector<T::Elem>,
) -> FormalSum<T::Elem> {
    let mut sum = FormalSum::new();
    for r in 0..x.coords.len() {
        let e = Element::from_rank(r);
        let (a, b) = (x.get(e), y.get(e.star()));
        if !tract.is_zero(a) && !tract.is_zero(b) {
            sum.push(tract.mul(a, b));
        }
    }
    sum
}

#[derive(Clone, Debug)]
pub struct Signature<T: Tract> {
    n: usize,
    tract: T,
    rays: Vec<CircuitVector<T::Elem>>,
}

impl<T: Tract> Signature<T> {
    /// Normalizes and deduplicates the given vectors; zero vectors are
    /// rejected.
    pub fn new(
        n: usize,
        tract: T,
        vectors: impl IntoIterator<Item = CircuitVector<T::Elem>>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut rays = Vec::new();
        for v in vectors {
            if v.n() != n {
                return Err(Error::InvalidSignature(format!(
                    "vector of length {} for n = {n}",
                    v.coords.len()
                )));
            }
            if v.is_zero(&tract) {
                return Err(Error::InvalidSignature("zero vector".into()));
            }
            let r = v.normalized(&tract);
            if seen.insert(r.clone()) {
                rays.push(r);
            }
        }
        rays.sort_by_key(|r| r.support(&tract));
        Ok(Self { n, tract, rays })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tract(&self) -> &T {
        &self.tract
    }

    pub fn rays(&self) -> &[CircuitVector<T::Elem>] {
        &self.rays
    }

    /// Distinct supports, ascending.
    pub fn supports(&self) -> Vec<Subset> {
        let set: BTreeSet<Subset> = self.rays.iter().map(|r| r.support(&self.tract)).collect();
        set.into_iter().collect()
    }

    pub fn rays_on(&self, support: Subset) -> impl Iterator<Item = &CircuitVector<T::Elem>> {
        self.rays
            .iter()
            .filter(move |r| r.support(&self.tract) == support)
    }

    fn by_support(&self) -> BTreeMap<Subset, Vec<&CircuitVector<T::Elem>>> {
        let mut map: BTreeMap<Subset, Vec<_>> = BTreeMap::new();
        for r in &self.rays {
            map.entry(r.support(&self.tract)).or_default().push(r);
        }
        map
    }

    /// Equality as sets of rays.
    pub fn same_rays(&self, other: &Signature<T>) -> bool {
        if self.n != other.n || self.rays.len() != other.rays.len() {
            return false;
        }
        let mine: HashSet<_> = self.rays.iter().collect();
        other.rays.iter().all(|r| mine.contains(r))
    }

    /// Adds one more vector (used to build corrupted instances).
    pub fn with_vector(&self, v: CircuitVector<T::Elem>) -> Result<Self> {
        Self::new(
            self.n,
            self.tract.clone(),
            self.rays.iter().cloned().chain([v]),
        )
    }

    /// Replaces ray `index` by `v`.
    pub fn with_replaced(&self, index: usize, v: CircuitVector<T::Elem>) -> Result<Self> {
        let mut rays = self.rays.clone();
        rays[index] = v;
        Self::new(self.n, self.tract.clone(), rays)
    }

    fn fmt(&self, v: &CircuitVector<T::Elem>) -> String {
        v.format(&self.tract)
    }

    fn require_supports(&self, m: &OrthogonalMatroid) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::IncompatibleDomains);
        }
        if self.supports() != m.circuits() {
            return Err(Error::SupportMismatch);
        }
        Ok(())
    }

    /// Compares supports against the circuits of `m`, as a witness.
    pub fn support_verdict(&self, m: &OrthogonalMatroid) -> Verdict {
        let (mine, theirs): (BTreeSet<Subset>, BTreeSet<Subset>) = (
            self.supports().into_iter().collect(),
            m.circuits().into_iter().collect(),
        );
        if mine == theirs {
            return Ok(());
        }
        Err(Violation::CircuitSupports {
            missing: theirs.difference(&mine).copied().collect(),
            extra: mine.difference(&theirs).copied().collect(),
        })
    }

    fn pairing_verdict(&self, x: &CircuitVector<T::Elem>, y: &CircuitVector<T::Elem>) -> Verdict {
        let sum = pairing(&self.tract, x, y);
        if sum.is_null(&self.tract) {
            return Ok(());
        }
        Err(Violation::Pairing {
            x: self.fmt(x),
            y: self.fmt(y),
            terms: sum
                .terms()
                .iter()
                .map(|v| self.tract.format_elem(v))
                .collect(),
        })
    }

    /// (O): supports are the circuits of `m` and all pairings are null.
    pub fn check_orthogonal(&self, m: &OrthogonalMatroid) -> Result<Verdict> {
        self.require_supports(m)?;
        for (a, x) in self.rays.iter().enumerate() {
            for y in &self.rays[a..] {
                if let Err(v) = self.pairing_verdict(x, y) {
                    return Ok(Err(v));
                }
            }
        }
        Ok(Ok(()))
    }

    /// Any two vectors with the same support are proportional, i.e. each
    /// support carries a single ray.
    pub fn check_scalar_uniqueness(&self) -> Verdict {
        for rays in self.by_support().values() {
            if rays.len() > 1 {
                return Err(Violation::NotProportional {
                    x: self.fmt(rays[0]),
                    y: self.fmt(rays[1]),
                });
            }
        }
        Ok(())
    }

    /// (O4'): pairing null for every pair of vectors with 4-modular supports.
    pub fn check_weak_orthogonal(&self, m: &OrthogonalMatroid) -> Result<Verdict> {
        self.require_supports(m)?;
        let groups = self.by_support();
        let supports: Vec<Subset> = groups.keys().copied().collect();
        let carriers: Vec<Vec<Subset>> = supports.iter().map(|&c| m.carriers(c)).collect();
        for (a, &c1) in supports.iter().enumerate() {
            for (b, &c2) in supports.iter().enumerate().skip(a) {
                let four_modular = carriers[a].iter().any(|t1| {
                    carriers[b]
                        .iter()
                        .any(|t2| t1.intersection(t2.star()).len() <= 4)
                });
                if !four_modular {
                    continue;
                }
                for x in &groups[&c1] {
                    for y in &groups[&c2] {
                        if let Err(v) = self.pairing_verdict(x, y) {
                            return Ok(Err(v));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    /// Weak circuit set: (O2'), (L-i') and (L-ii').
    pub fn check_weak_circuit_set(&self, m: &OrthogonalMatroid) -> Result<Verdict> {
        self.require_supports(m)?;
        Ok(self
            .check_o2_prime(m)
            .and_then(|_| self.check_l1(m))
            .and_then(|_| self.check_l2(m)))
    }

    /// (O2'): pairing null on modular pairs of the second kind.
    pub fn check_o2_prime(&self, m: &OrthogonalMatroid) -> Verdict {
        let groups = self.by_support();
        for (c1, c2) in modular_pairs(m, ModularKind::Second) {
            for x in groups.get(&c1).into_iter().flatten() {
                for y in groups.get(&c2).into_iter().flatten() {
                    self.pairing_verdict(x, y)?;
                }
            }
        }
        Ok(())
    }

    /// Unit `c` making `partials[e] + c * z[e]` null at every coordinate.
    fn complete(&self, partials: &[Vec<T::Elem>], z: &CircuitVector<T::Elem>) -> Option<T::Elem> {
        let constraints: Vec<NullConstraint<T::Elem>> = partials
            .iter()
            .zip(&z.coords)
            .map(|(p, zv)| NullConstraint {
                partial: p.clone(),
                z: zv.clone(),
            })
            .collect();
        self.tract.solve_unit(&constraints)
    }

    /// The coordinatewise formal sum of scaled vectors.
    fn partials(&self, vs: &[CircuitVector<T::Elem>]) -> Vec<Vec<T::Elem>> {
        (0..2 * self.n)
            .map(|r| vs.iter().map(|v| v.coords[r].clone()).collect())
            .collect()
    }

    /// Whether some `c * Z` with `Z` a ray vanishing on `zeros` completes
    /// `vs` to a coordinatewise null sum.
    fn has_completion(&self, vs: &[CircuitVector<T::Elem>], zeros: Subset) -> bool {
        let partials = self.partials(vs);
        self.rays
            .iter()
            .filter(|z| zeros.iter().all(|e| self.tract.is_zero(z.get(e))))
            .any(|z| self.complete(&partials, z).is_some())
    }

    /// (L-i') for modular pairs of the first kind. `X1` is fixed as a ray
    /// representative; the premise `X1(f) + X2(f) ∈ N` forces the scalar on
    /// `X2`.
    pub fn check_l1(&self, m: &OrthogonalMatroid) -> Verdict {
        let groups = self.by_support();
        let t = &self.tract;
        for (c1, c2) in modular_pairs(m, ModularKind::First) {
            for (x1, r2) in ordered_rays(&groups, c1, c2) {
                for f in c1.intersection(c2).iter() {
                    let b = forced_scalar(t, x1.get(f), r2.get(f));
                    let x2 = r2.scaled(t, &b);
                    if !self.has_completion(&[x1.clone(), x2.clone()], Subset::EMPTY.with(f)) {
                        return Err(Violation::LOne {
                            x1: self.fmt(x1),
                            x2: self.fmt(&x2),
                            f,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// (L-ii') for modular triples of the second kind.
    pub fn check_l2(&self, m: &OrthogonalMatroid) -> Verdict {
        let groups = self.by_support();
        let t = &self.tract;
        for (b, cs, es) in modular_triples(m) {
            let stars: Vec<Element> = es.iter().map(|e| e.star()).collect();
            for x1 in groups.get(&cs[0]).into_iter().flatten() {
                for r2 in groups.get(&cs[1]).into_iter().flatten() {
                    for r3 in groups.get(&cs[2]).into_iter().flatten() {
                        // premises at e3* and e2* pin the scalars on X2, X3
                        if t.is_zero(r2.get(stars[2])) || t.is_zero(r3.get(stars[1])) {
                            continue;
                        }
                        let x2 =
                            r2.scaled(t, &forced_scalar(t, x1.get(stars[2]), r2.get(stars[2])));
                        let x3 =
                            r3.scaled(t, &forced_scalar(t, x1.get(stars[1]), r3.get(stars[1])));
                        let premises = (0..3).all(|i| {
                            let vs = [x1, &x2, &x3];
                            let e = stars[i];
                            let (p, q) = (vs[(i + 1) % 3].get(e), vs[(i + 2) % 3].get(e));
                            t.is_null(&[p.clone(), q.clone()])
                        });
                        if !premises {
                            continue;
                        }
                        let zeros = Subset::from_elements(stars.iter().copied());
                        if !self.has_completion(&[(*x1).clone(), x2.clone(), x3.clone()], zeros) {
                            return Err(Violation::LTwo {
                                x1: self.fmt(x1),
                                x2: self.fmt(&x2),
                                x3: self.fmt(&x3),
                                basis: b,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The unit `x` with `a + x z` null: `x = -a/z`. Zero factors yield 1.
fn forced_scalar<T: Tract>(t: &T, a: &T::Elem, z: &T::Elem) -> T::Elem {
    if t.is_zero(a) || t.is_zero(z) {
        return t.one();
    }
    t.neg(&t.div(a, z).expect("nonzero"))
}

/// `(X1, R2)` over both orders of the pair, with `X1` and `R2` rays.
fn ordered_rays<'a, E>(
    groups: &'a BTreeMap<Subset, Vec<&'a CircuitVector<E>>>,
    c1: Subset,
    c2: Subset,
) -> Vec<(&'a CircuitVector<E>, &'a CircuitVector<E>)> {
    let mut out = Vec::new();
    for (a, b) in [(c1, c2), (c2, c1)] {
        for x in groups.get(&a).into_iter().flatten() {
            for y in groups.get(&b).into_iter().flatten() {
                out.push((*x, *y));
            }
        }
    }
    out
}

/// Fundamental circuits `FC(B, e)` for every `e ∈ B*`.
fn fundamental_circuits(m: &OrthogonalMatroid, b: Subset) -> Vec<(Element, Subset)> {
    b.star()
        .iter()
        .map(|e| {
            (
                e,
                m.fundamental_circuit(b, e)
                    .expect("basis and outside element"),
            )
        })
        .collect()
}

/// Unordered modular pairs of the given kind, ascending.
pub fn modular_pairs(m: &OrthogonalMatroid, kind: ModularKind) -> Vec<(Subset, Subset)> {
    let mut out = BTreeSet::new();
    for &b in m.bases() {
        let fcs = fundamental_circuits(m, b);
        for (a, &(_, c1)) in fcs.iter().enumerate() {
            for &(_, c2) in &fcs[a + 1..] {
                if c1 == c2 {
                    continue;
                }
                let first = c1.union(c2).is_subtransversal();
                if (kind == ModularKind::First) == first {
                    out.insert((c1.min(c2), c1.max(c2)));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Modular triples of the second kind as `(B, [C1, C2, C3], [e1, e2, e3])`.
pub fn modular_triples(m: &OrthogonalMatroid) -> Vec<(Subset, [Subset; 3], [Element; 3])> {
    let mut out = Vec::new();
    for &b in m.bases() {
        let fcs = fundamental_circuits(m, b);
        let k = fcs.len();
        for x in 0..k {
            for y in x + 1..k {
                for z in y + 1..k {
                    let cs = [fcs[x].1, fcs[y].1, fcs[z].1];
                    let distinct = cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2];
                    let second = (0..3).all(|i| !cs[i].union(cs[(i + 1) % 3]).is_subtransversal());
                    if distinct && second {
                        out.push((b, cs, [fcs[x].0, fcs[y].0, fcs[z].0]));
                    }
                }
            }
        }
    }
    out
}
