//! The ground set `[n] ∪ [n]*` under the interleaved order
//! `1 < 1* < 2 < 2* < ... < n < n*`.
//!
//! Subsets are bitmasks where element `i` sits at bit `2(i-1)` and `i*` at
//! bit `2(i-1)+1`, so every "number of elements below e" is a masked popcount.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_N: usize = 16;

/// Bits of all unstarred elements.
const UNSTARRED: u32 = 0x5555_5555;

pub fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadGroundSize(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    rank: u8,
}

impl Element {
    /// `index` is 1-based.
    pub fn new(index: usize, starred: bool) -> Self {
        debug_assert!((1..=MAX_N).contains(&index));
        Self {
            rank: (2 * (index - 1) + starred as usize) as u8,
        }
    }

    pub fn plain(index: usize) -> Self {
        Self::new(index, false)
    }

    pub fn starred(index: usize) -> Self {
        Self::new(index, true)
    }

    pub fn from_rank(rank: usize) -> Self {
        Self { rank: rank as u8 }
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    pub fn index(self) -> usize {
        self.rank as usize / 2 + 1
    }

    pub fn is_starred(self) -> bool {
        self.rank & 1 == 1
    }

    pub fn star(self) -> Self {
        Self {
            rank: self.rank ^ 1,
        }
    }

    /// The unstarred partner.
    pub fn bar(self) -> Self {
        Self {
            rank: self.rank & !1,
        }
    }

    pub fn bit(self) -> u32 {
        1 << self.rank
    }

    /// Parses `"3"` or `"3*"` and checks the index against `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let e: Element = s.parse()?;
        if e.index() > n {
            return Err(Error::ElementOutOfRange {
                index: e.index(),
                n,
            });
        }
        Ok(e)
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (digits, starred) = match t.strip_suffix('*') {
            Some(d) => (d, true),
            None => (t, false),
        };
        let index: usize = digits
            .parse()
            .map_err(|_| Error::ParseElement(s.to_string()))?;
        if !(1..=MAX_N).contains(&index) {
            return Err(Error::ElementOutOfRange { index, n: MAX_N });
        }
        Ok(Element::new(index, starred))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.index(),
            if self.is_starred() { "*" } else { "" }
        )
    }
}

/// Structural flags of a subset relative to a ground size `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub transversal: bool,
    /// `|S ∩ [n]*| mod 2`, set for transversals only.
    pub sigma: Option<u8>,
    pub almost_transversal: bool,
    pub hyper: bool,
    pub hypo: bool,
    pub subtransversal: bool,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elements<I: IntoIterator<Item = Element>>(elems: I) -> Self {
        Subset(elems.into_iter().fold(0, |m, e| m | e.bit()))
    }

    /// Every element of `[n] ∪ [n]*`.
    pub fn full(n: usize) -> Self {
        Subset(((1u64 << (2 * n)) - 1) as u32)
    }

    /// `[n]`.
    pub fn unstarred(n: usize) -> Self {
        Subset(Self::full(n).0 & UNSTARRED)
    }

    /// The skew pair `{i, i*}`.
    pub fn pair(index: usize) -> Self {
        Subset(0b11 << (2 * (index - 1)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: Element) -> bool {
        self.0 & e.bit() != 0
    }

    pub fn with(self, e: Element) -> Self {
        Subset(self.0 | e.bit())
    }

    pub fn without(self, e: Element) -> Self {
        Subset(self.0 & !e.bit())
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn sym_diff(self, o: Subset) -> Self {
        Subset(self.0 ^ o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    /// `S* = {e* : e ∈ S}`.
    pub fn star(self) -> Self {
        Subset(((self.0 & UNSTARRED) << 1) | ((self.0 >> 1) & UNSTARRED))
    }

    /// `S ∩ [n]`.
    pub fn plain_part(self) -> Self {
        Subset(self.0 & UNSTARRED)
    }

    /// `S ∩ [n]*`.
    pub fn starred_part(self) -> Self {
        Subset(self.0 & !UNSTARRED)
    }

    /// Number of members strictly below `e`.
    pub fn count_less(self, e: Element) -> usize {
        (self.0 & (e.bit() - 1)).count_ones() as usize
    }

    /// Number of members at or below `e`.
    pub fn count_at_most(self, e: Element) -> usize {
        (self.0 & ((e.bit() << 1).wrapping_sub(1))).count_ones() as usize
    }

    /// Number of members `>= e`.
    pub fn count_at_least(self, e: Element) -> usize {
        (self.0 & !(e.bit() - 1)).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Element> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let r = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(Element::from_rank(r))
        })
    }

    /// Indices `i` with `{i, i*} ⊆ S`.
    pub fn skew_pairs(self) -> impl Iterator<Item = usize> {
        let both = self.0 & (self.0 >> 1) & UNSTARRED;
        Subset(both).iter().map(Element::index)
    }

    pub fn skew_pair_count(self) -> usize {
        (self.0 & (self.0 >> 1) & UNSTARRED).count_ones() as usize
    }

    /// Number of indices `i` with `S ∩ {i, i*}` nonempty.
    fn indices_touched(self) -> usize {
        ((self.0 | (self.0 >> 1)) & UNSTARRED).count_ones() as usize
    }

    pub fn is_subtransversal(self) -> bool {
        self.skew_pair_count() == 0
    }

    pub fn is_transversal(self, n: usize) -> bool {
        self.is_subtransversal() && self.len() == n && self.is_subset_of(Subset::full(n))
    }

    /// `|S ∩ [n]*| mod 2`.
    pub fn parity(self) -> u8 {
        (self.starred_part().len() % 2) as u8
    }

    pub fn is_almost_transversal(self, n: usize) -> bool {
        self.len() == n && self.skew_pair_count() == 1 && self.is_subset_of(Subset::full(n))
    }

    pub fn is_hyper(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
            && self.len() == n + 1
            && self.skew_pair_count() == 1
            && self.indices_touched() == n
    }

    pub fn is_hypo(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n)) && self.len() + 1 == n && self.is_subtransversal()
    }

    /// Transversal or almost-transversal.
    pub fn in_domain(self, n: usize) -> bool {
        self.is_transversal(n) || self.is_almost_transversal(n)
    }

    pub fn classify(self, n: usize) -> Classification {
        let transversal = self.is_transversal(n);
        Classification {
            transversal,
            sigma: transversal.then(|| self.parity()),
            almost_transversal: self.is_almost_transversal(n),
            hyper: self.is_hyper(n),
            hypo: self.is_hypo(n),
            subtransversal: self.is_subtransversal() && self.is_subset_of(Subset::full(n)),
        }
    }

    /// Comma-joined elements, the key format of function tables: `"1,2*"`.
    pub fn key(self) -> String {
        self.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let mut out = Subset::EMPTY;
        for part in s.split(',') {
            out = out.with(Element::parse(part, n)?);
        }
        Ok(out)
    }

    pub fn to_strings(self) -> Vec<String> {
        self.iter().map(|e| e.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S], n: usize) -> Result<Self> {
        let mut out = Subset::EMPTY;
        for s in items {
            out = out.with(Element::parse(s.as_ref(), n)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Subset::from_strings(&items, MAX_N).map_err(serde::de::Error::custom)
    }
}

/// All transversals in ascending bitmask order, optionally of one parity.
pub fn transversals(n: usize, sigma: Option<u8>) -> Vec<Subset> {
    (0u32..1 << n)
        .map(|m| Subset((0..n).fold(0, |acc, i| acc | (1 << (2 * i + ((m >> i) & 1) as usize)))))
        .filter(|t| sigma.is_none_or(|s| t.parity() == s))
        .collect()
}

/// All almost-transversals in ascending bitmask order.
pub fn almost_transversals(n: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    for t in transversals(n, None) {
        for e in t.iter() {
            for j in 1..=n {
                if j != e.index() {
                    // replace e by a full pair {j, j*}
                    let a = t.without(e).union(Subset::pair(j));
                    if a.len() == n {
                        out.push(a);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Transversals plus almost-transversals, ascending.
pub fn domain(n: usize) -> Vec<Subset> {
    let mut d = transversals(n, None);
    d.extend(almost_transversals(n));
    d.sort();
    d
}

/// Transversals with one extra element.
pub fn hyper_transversals(n: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = transversals(n, None)
        .into_iter()
        .flat_map(|t| t.iter().map(move |e| t.with(e.star())))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Transversals with one element removed.
pub fn hypo_transversals(n: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = transversals(n, None)
        .into_iter()
        .flat_map(|t| t.iter().map(move |e| t.without(e)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All subtransversals (`3^n` of them), ascending by size then bitmask.
pub fn subtransversals(n: usize) -> Vec<Subset> {
    let mut out = vec![Subset::EMPTY];
    for i in 1..=n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for s in &out {
            next.push(*s);
            next.push(s.with(Element::plain(i)));
            next.push(s.with(Element::starred(i)));
        }
        out = next;
    }
    out.sort_by_key(|s| (s.len(), s.0));
    out
}
