//! Orthogonal matroids (even delta-matroids) and even antisymmetric
//! matroids, their bijection, circuits and modularity.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groundset::{self, check_n, Element, Subset};
use crate::violation::{Verdict, Violation};

pub type Bases = BTreeSet<Subset>;

/// A nonempty family of transversals satisfying strong exchange.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrthogonalMatroid {
    n: usize,
    bases: Bases,
}

/// Transversal bases of one parity plus almost-transversal bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenAntisymmetricMatroid {
    n: usize,
    sigma: u8,
    bases: Bases,
}

fn check_shape(n: usize, bases: &Bases, transversal_only: bool) -> Result<()> {
    check_n(n)?;
    if bases.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for &b in bases {
        let ok = if transversal_only {
            b.is_transversal(n)
        } else {
            b.in_domain(n)
        };
        if !ok {
            let expected = if transversal_only {
                "transversal"
            } else {
                "transversal or almost-transversal"
            };
            return Err(Error::WrongShape {
                subset: b,
                expected,
            });
        }
    }
    Ok(())
}

/// Strong exchange: for bases `B1, B2` and `{i,i*} ⊆ B1△B2` there is
/// `{j,j*} ⊆ (B1△B2)∖{i,i*}` with `B1△{i,i*,j,j*}` and `B2△{i,i*,j,j*}`
/// both bases.
pub fn check_strong_exchange(n: usize, bases: &Bases) -> Result<Verdict> {
    check_shape(n, bases, true)?;
    for &b1 in bases {
        for &b2 in bases {
            let diff = b1.sym_diff(b2).plain_part();
            for i in diff.iter().map(Element::index) {
                let found = diff.iter().map(Element::index).any(|j| {
                    if j == i {
                        return false;
                    }
                    let swap = Subset::pair(i).union(Subset::pair(j));
                    bases.contains(&b1.sym_diff(swap)) && bases.contains(&b2.sym_diff(swap))
                });
                if !found {
                    return Ok(Err(Violation::Exchange { b1, b2, i }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// The two antisymmetric-matroid axioms on a family of transversals and
/// almost-transversals.
pub fn check_antisymmetric_axioms(n: usize, bases: &Bases) -> Result<Verdict> {
    check_shape(n, bases, false)?;
    for s in groundset::hyper_transversals(n) {
        for s_prime in groundset::hypo_transversals(n) {
            let hits: Vec<Element> = s
                .difference(s_prime)
                .iter()
                .filter(|&i| bases.contains(&s.without(i)) && bases.contains(&s_prime.with(i)))
                .collect();
            if hits.len() == 1 {
                return Ok(Err(Violation::AntisymmetricSingle {
                    s,
                    s_prime,
                    i: hits[0],
                }));
            }
        }
    }
    for t in groundset::transversals(n, None) {
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let (pi, pj) = (Subset::pair(i), Subset::pair(j));
                let a = t.difference(pi).union(pj);
                let b = t.union(pi).difference(pj);
                if bases.contains(&a) != bases.contains(&b) {
                    return Ok(Err(Violation::AntisymmetricPair { t, i, j }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Parity shared by all transversal members, or a witness pair of both.
pub fn transversal_parity(n: usize, bases: &Bases) -> std::result::Result<Option<u8>, Violation> {
    let mut seen: [Option<Subset>; 2] = [None, None];
    for &b in bases.iter().filter(|b| b.is_transversal(n)) {
        seen[b.parity() as usize].get_or_insert(b);
    }
    match seen {
        [Some(b0), Some(b1)] => Err(Violation::NotEven { b0, b1 }),
        [Some(_), None] => Ok(Some(0)),
        [None, Some(_)] => Ok(Some(1)),
        [None, None] => Ok(None),
    }
}

/// Whether `x` lies in some member of `bases`.
fn independent(bases: &Bases, x: Subset) -> bool {
    bases.iter().any(|b| x.is_subset_of(*b))
}

/// Minimal dependent sets among `candidates`, which must be sorted by size.
fn minimal_dependent(bases: &Bases, candidates: impl Iterator<Item = Subset>) -> Vec<Subset> {
    let mut found: Vec<Subset> = Vec::new();
    for x in candidates {
        if found.iter().any(|c| c.is_subset_of(x)) || independent(bases, x) {
            continue;
        }
        found.push(x);
    }
    found.sort();
    found
}

impl OrthogonalMatroid {
    pub fn new(n: usize, bases: Bases) -> Result<Self> {
        match check_strong_exchange(n, &bases)? {
            Ok(()) => Ok(Self { n, bases }),
            Err(v) => Err(Error::InvalidInput(v.to_string())),
        }
    }

    /// The matroid whose bases are the transversals containing none of
    /// `circuits`; validated, and its circuits must match the input.
    pub fn from_circuits(n: usize, circuits: &[Subset]) -> Result<Self> {
        check_n(n)?;
        let bases: Bases = groundset::transversals(n, None)
            .into_iter()
            .filter(|t| !circuits.iter().any(|c| c.is_subset_of(*t)))
            .collect();
        let m = Self::new(n, bases)?;
        let mut given = circuits.to_vec();
        given.sort();
        given.dedup();
        if m.circuits() != given {
            return Err(Error::NotAMatroid);
        }
        Ok(m)
    }

    /// Skips the exchange check; callers guarantee validity.
    pub fn new_unchecked(n: usize, bases: Bases) -> Self {
        Self { n, bases }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &Bases {
        &self.bases
    }

    pub fn is_basis(&self, b: Subset) -> bool {
        self.bases.contains(&b)
    }

    /// Parity of `|B ∩ [n]*|`, common to all bases.
    pub fn sigma(&self) -> u8 {
        self.bases.iter().next().map_or(0, |b| b.parity())
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        independent(&self.bases, x)
    }

    /// Minimal subtransversals contained in no basis.
    pub fn circuits(&self) -> Vec<Subset> {
        minimal_dependent(&self.bases, groundset::subtransversals(self.n).into_iter())
    }

    /// `FC(B, e)` for a basis `B` and `e ∉ B`.
    pub fn fundamental_circuit(&self, b: Subset, e: Element) -> Result<Subset> {
        if !self.is_basis(b) {
            return Err(Error::NotABasis(b));
        }
        if b.contains(e) || e.index() > self.n {
            return Err(Error::ElementInBasis {
                basis: b,
                element: e.to_string(),
            });
        }
        let t = b.sym_diff(Subset::pair(e.index()));
        Ok(Subset::from_elements(t.iter().filter(|j| {
            self.is_basis(t.sym_diff(Subset::pair(j.index())))
        })))
    }

    /// `T△(R∪R*)` applied to every basis; `r` is read through its indices.
    pub fn twist(&self, r: Subset) -> Self {
        let swap = r.union(r.star());
        Self {
            n: self.n,
            bases: self.bases.iter().map(|b| b.sym_diff(swap)).collect(),
        }
    }

    /// Adds the almost-transversals singled out by the support bijection.
    pub fn to_even_antisymmetric(&self) -> EvenAntisymmetricMatroid {
        let mut bases = self.bases.clone();
        for a in groundset::almost_transversals(self.n) {
            let i = a.skew_pairs().next().expect("one skew pair");
            let j = (1..=self.n)
                .find(|&j| a.intersection(Subset::pair(j)).is_empty())
                .expect("one missing pair");
            let (ip, is) = (Element::plain(i), Element::starred(i));
            let (jp, js) = (Element::plain(j), Element::starred(j));
            let clause1 =
                self.is_basis(a.without(ip).with(jp)) && self.is_basis(a.without(is).with(js));
            let clause2 =
                self.is_basis(a.without(is).with(jp)) && self.is_basis(a.without(ip).with(js));
            if clause1 || clause2 {
                bases.insert(a);
            }
        }
        EvenAntisymmetricMatroid {
            n: self.n,
            sigma: self.sigma(),
            bases,
        }
    }

    /// Bases `B△{i,i*,j,j*}` adjacent to `b` under a double swap.
    pub fn exchange_neighbours(&self, b: Subset) -> Vec<Subset> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let c = b.sym_diff(Subset::pair(i).union(Subset::pair(j)));
                if self.is_basis(c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Whether transversal `t` carries circuit `c`.
    pub fn carries(&self, t: Subset, c: Subset) -> bool {
        c.is_subset_of(t)
            && c.iter()
                .all(|x| self.is_basis(t.sym_diff(Subset::pair(x.index()))))
    }

    /// Transversals carrying `c`.
    pub fn carriers(&self, c: Subset) -> Vec<Subset> {
        groundset::transversals(self.n, None)
            .into_iter()
            .filter(|&t| self.carries(t, c))
            .collect()
    }

    fn require_circuit(&self, c: Subset, circuits: &[Subset]) -> Result<()> {
        if circuits.binary_search(&c).is_ok() {
            Ok(())
        } else {
            Err(Error::NotACircuit(c))
        }
    }

    /// Searches for a common basis making the circuits fundamental.
    pub fn modular_info(&self, cs: &[Subset]) -> Result<ModularInfo> {
        let circuits = self.circuits();
        for &c in cs {
            self.require_circuit(c, &circuits)?;
        }
        Ok(self.modular_info_unchecked(cs))
    }

    /// As [`Self::modular_info`] for inputs already known to be circuits.
    pub fn modular_info_unchecked(&self, cs: &[Subset]) -> ModularInfo {
        let distinct = cs.iter().collect::<BTreeSet<_>>().len() == cs.len();
        let kind = pair_kind(cs);
        if distinct {
            for &b in &self.bases {
                if let Some(elements) = self.fundamental_elements(b, cs) {
                    return ModularInfo {
                        modular: true,
                        kind,
                        basis: Some(b),
                        elements,
                    };
                }
            }
        }
        ModularInfo {
            modular: false,
            kind: ModularKind::Neither,
            basis: None,
            elements: Vec::new(),
        }
    }

    /// The `e_i` with `C_i = FC(B, e_i)`, if every circuit is fundamental
    /// with respect to `b`. `e_i` is forced: it is the one element of `C_i∖B`.
    pub fn fundamental_elements(&self, b: Subset, cs: &[Subset]) -> Option<Vec<Element>> {
        let mut out = Vec::with_capacity(cs.len());
        for &c in cs {
            let outside = c.difference(b);
            if outside.len() != 1 {
                return None;
            }
            let e = outside.iter().next()?;
            if self.fundamental_circuit(b, e).ok()? != c {
                return None;
            }
            out.push(e);
        }
        Some(out)
    }

    /// Carrier pair `(T1, T2)` with `|T1 ∩ T2*| ≤ k`, minimizing that size.
    pub fn k_modular(&self, c1: Subset, c2: Subset, k: usize) -> Result<Option<(Subset, Subset)>> {
        let circuits = self.circuits();
        self.require_circuit(c1, &circuits)?;
        self.require_circuit(c2, &circuits)?;
        Ok(self.k_modular_unchecked(c1, c2, k))
    }

    pub fn k_modular_unchecked(
        &self,
        c1: Subset,
        c2: Subset,
        k: usize,
    ) -> Option<(Subset, Subset)> {
        let (t1s, t2s) = (self.carriers(c1), self.carriers(c2));
        let mut best: Option<(usize, Subset, Subset)> = None;
        for &t1 in &t1s {
            for &t2 in &t2s {
                let d = t1.intersection(t2.star()).len();
                if d <= k && best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, t1, t2));
                }
            }
        }
        best.map(|(_, t1, t2)| (t1, t2))
    }
}

/// Whether every pairwise union is a subtransversal, none is, or mixed.
fn pair_kind(cs: &[Subset]) -> ModularKind {
    let mut sub = 0;
    let mut total = 0;
    for (a, &x) in cs.iter().enumerate() {
        for &y in &cs[a + 1..] {
            total += 1;
            if x.union(y).is_subtransversal() {
                sub += 1;
            }
        }
    }
    match (sub, total) {
        (_, 0) => ModularKind::Neither,
        (s, t) if s == t => ModularKind::First,
        (0, _) => ModularKind::Second,
        _ => ModularKind::Neither,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModularKind {
    First,
    Second,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularInfo {
    pub modular: bool,
    pub kind: ModularKind,
    pub basis: Option<Subset>,
    pub elements: Vec<Element>,
}

impl EvenAntisymmetricMatroid {
    pub fn new(n: usize, bases: Bases) -> Result<Self> {
        let invalid = |v: Violation| Error::InvalidInput(v.to_string());
        check_antisymmetric_axioms(n, &bases)?.map_err(invalid)?;
        let sigma = transversal_parity(n, &bases).map_err(invalid)?.unwrap_or(0);
        Ok(Self { n, sigma, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    pub fn bases(&self) -> &Bases {
        &self.bases
    }

    pub fn is_basis(&self, b: Subset) -> bool {
        self.bases.contains(&b)
    }

    /// Restricts to transversal bases, validating the result.
    pub fn from_even_antisymmetric(&self) -> Result<OrthogonalMatroid> {
        let bases: Bases = self
            .bases
            .iter()
            .copied()
            .filter(|b| b.is_transversal(self.n))
            .collect();
        if bases.is_empty() {
            return Err(Error::InvalidInput("no transversal bases".into()));
        }
        OrthogonalMatroid::new(self.n, bases)
    }

    /// Minimal sets with at most one skew pair contained in no basis.
    pub fn circuits(&self) -> Vec<Subset> {
        let mut candidates: Vec<Subset> = (0u32..1 << (2 * self.n))
            .map(Subset)
            .filter(|s| s.skew_pair_count() <= 1)
            .collect();
        candidates.sort_by_key(|s| (s.len(), s.0));
        minimal_dependent(&self.bases, candidates.into_iter())
    }

    /// `FC'(B, e) = {j ∈ S : S∖{j} a basis}` with `S = B ∪ {e}`.
    pub fn fundamental_circuit(&self, b: Subset, e: Element) -> Result<Subset> {
        if !self.is_basis(b) || !b.is_transversal(self.n) {
            return Err(Error::NotABasis(b));
        }
        if b.contains(e) || e.index() > self.n {
            return Err(Error::ElementInBasis {
                basis: b,
                element: e.to_string(),
            });
        }
        let s = b.with(e);
        Ok(Subset::from_elements(
            s.iter().filter(|&j| self.is_basis(s.without(j))),
        ))
    }

    pub fn basis_graph(&self) -> BasisGraph {
        let vertices: Vec<Subset> = self.bases.iter().copied().collect();
        let mut edges = Vec::new();
        for (a, &x) in vertices.iter().enumerate() {
            for (b, &y) in vertices.iter().enumerate().skip(a + 1) {
                if x.difference(y).len() == 1
                    && (x.is_transversal(self.n) || y.is_transversal(self.n))
                {
                    edges.push((a, b));
                }
            }
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        BasisGraph {
            connected: seen.iter().all(|&s| s),
            vertices,
            edges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisGraph {
    pub vertices: Vec<Subset>,
    /// Index pairs into `vertices`.
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
}

/// `{B ∪ ([n]∖B)* : B ∈ family}` for a classical matroid on `[n]`, given as
/// subsets of the unstarred elements.
pub fn lift_matroid(n: usize, family: &[Subset]) -> Result<OrthogonalMatroid> {
    check_n(n)?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let full = Subset::unstarred(n);
    if family.iter().any(|b| !b.is_subset_of(full)) {
        return Err(Error::NotAMatroid);
    }
    let set: BTreeSet<Subset> = family.iter().copied().collect();
    // classical basis exchange
    for &b1 in &set {
        for &b2 in &set {
            for x in b1.difference(b2).iter() {
                let ok = b2
                    .difference(b1)
                    .iter()
                    .any(|y| set.contains(&b1.without(x).with(y)));
                if !ok {
                    return Err(Error::NotAMatroid);
                }
            }
        }
    }
    let bases = set
        .iter()
        .map(|&b| b.union(full.difference(b).star()))
        .collect();
    Ok(OrthogonalMatroid::new_unchecked(n, bases))
}
