//! Skew-symmetric matrices over fields: Pfaffians, determinants, Wick and
//! Plücker coordinates, Cayley identities and Pfaffian positivity.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{RgpFunction, WickFunction};
use crate::groundset::{self, check_n, Element, Subset};
use crate::matroid::{Bases, OrthogonalMatroid};
use crate::tract::{Field, RationalField};
use crate::violation::{Verdict, Violation};

/// Square skew-symmetric matrix, indices `0..n` standing for `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix<F: Field> {
    field: F,
    entries: Vec<Vec<F::Elem>>,
}

impl<F: Field> SkewMatrix<F> {
    /// From the strict upper triangle, row by row.
    pub fn from_upper(field: F, n: usize, upper: &[Vec<F::Elem>]) -> Result<Self> {
        check_n(n)?;
        if upper.len() != n.saturating_sub(1)
            || upper.iter().enumerate().any(|(i, r)| r.len() != n - 1 - i)
        {
            return Err(Error::InvalidInput(format!(
                "upper triangle has the wrong shape for n = {n}"
            )));
        }
        let mut entries = vec![vec![field.zero(); n]; n];
        for (i, row) in upper.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let j = i + 1 + k;
                entries[i][j] = v.clone();
                entries[j][i] = field.neg(v);
            }
        }
        Ok(Self { field, entries })
    }

    /// From a full matrix, which must satisfy `Aᵀ = -A` with zero diagonal.
    pub fn from_rows(field: F, entries: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = entries.len();
        check_n(n)?;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput("matrix is not square".into()));
            }
            for j in 0..n {
                if row[j] != field.neg(&entries[j][i]) || (i == j && !field.is_zero(&row[j])) {
                    return Err(Error::InvalidInput(format!(
                        "not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { field, entries })
    }

    pub fn zero(field: F, n: usize) -> Self {
        let entries = vec![vec![field.zero(); n]; n];
        Self { field, entries }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Entry `a_{ij}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.entries
    }

    pub fn upper(&self) -> Vec<Vec<F::Elem>> {
        let n = self.n();
        (0..n.saturating_sub(1))
            .map(|i| self.entries[i][i + 1..].to_vec())
            .collect()
    }

    /// The submatrix with rows `rows` and columns `cols` (index bitmasks over
    /// `0..n`, ascending).
    fn submatrix(&self, rows: u32, cols: u32) -> Vec<Vec<F::Elem>> {
        bits(rows)
            .map(|r| bits(cols).map(|c| self.entries[r][c].clone()).collect())
            .collect()
    }

    /// `pf(A_I)` for an index mask `I` over `0..n`; odd sizes give 0.
    pub fn pfaffian(&self, mask: u32) -> F::Elem {
        let mut memo = vec![None; 1 << self.n()];
        self.pf_memo(mask, &mut memo)
    }

    /// `pf(A_I)` for every mask, indexed by mask.
    pub fn all_pfaffians(&self) -> Vec<F::Elem> {
        let mut memo = vec![None; 1 << self.n()];
        (0..1u32 << self.n())
            .map(|m| self.pf_memo(m, &mut memo))
            .collect()
    }

    fn pf_memo(&self, mask: u32, memo: &mut Vec<Option<F::Elem>>) -> F::Elem {
        if let Some(v) = &memo[mask as usize] {
            return v.clone();
        }
        let f = &self.field;
        let v = if mask.count_ones() % 2 == 1 {
            f.zero()
        } else if mask == 0 {
            f.one()
        } else {
            let first = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut acc = f.zero();
            // (-1)^j with j the 1-based position of i_j in I, starting at 2
            for (pos, j) in bits(rest).enumerate() {
                let a = &self.entries[first][j];
                if f.is_zero(a) {
                    continue;
                }
                let sub = self.pf_memo(rest & !(1 << j), memo);
                let term = f.signed(pos % 2 == 1, &f.mul(a, &sub));
                acc = f.add(&acc, &term);
            }
            acc
        };
        memo[mask as usize] = Some(v.clone());
        v
    }

    /// `det(A[rows, cols])` for equal-size index masks.
    pub fn minor(&self, rows: u32, cols: u32) -> F::Elem {
        determinant(&self.field, self.submatrix(rows, cols))
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask >> b & 1 == 1)
}

/// The index set `{i+1 : bit i of mask}` as plain elements.
fn plain_subset(mask: u32) -> Subset {
    Subset::from_elements(bits(mask).map(|b| Element::plain(b + 1)))
}

/// Transversal `([n]∖I) ∪ I*`.
pub fn transversal_of(n: usize, mask: u32) -> Subset {
    Subset::from_elements((0..n).map(|b| Element::new(b + 1, mask >> b & 1 == 1)))
}

/// Determinant by fraction-free (Bareiss) elimination; exact over any field.
pub fn determinant<F: Field>(f: &F, mut m: Vec<Vec<F::Elem>>) -> F::Elem {
    let k = m.len();
    if k == 0 {
        return f.one();
    }
    let mut negate = false;
    let mut prev = f.one();
    for p in 0..k - 1 {
        if f.is_zero(&m[p][p]) {
            let Some(r) = (p + 1..k).find(|&r| !f.is_zero(&m[r][p])) else {
                return f.zero();
            };
            m.swap(p, r);
            negate = !negate;
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let num = f.sub(&f.mul(&m[i][j], &m[p][p]), &f.mul(&m[i][p], &m[p][j]));
                m[i][j] = f.div(&num, &prev).expect("nonzero pivot");
            }
        }
        prev = m[p][p].clone();
    }
    f.signed(negate, &m[k - 1][k - 1])
}

/// `ψ(([n]∖I) ∪ I*) = pf(A_I)`.
pub fn wick_coordinates<F: Field>(a: &SkewMatrix<F>) -> WickFunction<F> {
    let n = a.n();
    let pfs = a.all_pfaffians();
    let entries = pfs
        .into_iter()
        .enumerate()
        .map(|(m, v)| (transversal_of(n, m as u32), v));
    WickFunction::new(n, a.field.clone(), entries).expect("transversal keys")
}

/// The support matroid `{([n]∖X) ∪ X* : A_X nonsingular}`, twisted by the
/// indices of `r`.
pub fn matroid_from_matrix<F: Field>(a: &SkewMatrix<F>, r: Subset) -> OrthogonalMatroid {
    let n = a.n();
    let bases: Bases = (0..1u32 << n)
        .filter(|&m| !a.field.is_zero(&a.minor(m, m)))
        .map(|m| transversal_of(n, m))
        .collect();
    OrthogonalMatroid::new_unchecked(n, bases).twist(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Plus,
    Minus,
}

/// An `n × 2n` matrix with columns ordered `1, 1*, 2, 2*, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedMatrix<F: Field> {
    field: F,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> AugmentedMatrix<F> {
    pub fn new(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        check_n(n)?;
        if rows.iter().any(|r| r.len() != 2 * n) {
            return Err(Error::InvalidInput(format!(
                "expected {n} rows of length {}",
                2 * n
            )));
        }
        Ok(Self { field, rows })
    }

    /// `(I | A)`: identity on unstarred columns, `A` on starred ones.
    pub fn from_skew(a: &SkewMatrix<F>) -> Self {
        let f = &a.field;
        let n = a.n();
        let rows = (0..n)
            .map(|r| {
                (0..2 * n)
                    .map(|c| {
                        let e = Element::from_rank(c);
                        if e.is_starred() {
                            a.entries[r][e.index() - 1].clone()
                        } else if e.index() - 1 == r {
                            f.one()
                        } else {
                            f.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            field: f.clone(),
            rows,
        }
    }

    /// `(I | A)` with columns `1` and `1*` exchanged, a point of the other
    /// component.
    pub fn minus_from_skew(a: &SkewMatrix<F>) -> Self {
        let mut m = Self::from_skew(a);
        for row in &mut m.rows {
            row.swap(0, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// `⟨X, Y⟩ = Σ X(i)Y(i*) + X(i*)Y(i)` vanishes on all row pairs.
    pub fn is_isotropic(&self) -> bool {
        let f = &self.field;
        let n = self.n();
        for x in &self.rows {
            for y in &self.rows {
                let terms: Vec<F::Elem> = (0..n)
                    .flat_map(|i| {
                        [
                            f.mul(&x[2 * i], &y[2 * i + 1]),
                            f.mul(&x[2 * i + 1], &y[2 * i]),
                        ]
                    })
                    .collect();
                if !f.is_zero(&f.sum(&terms)) {
                    return false;
                }
            }
        }
        true
    }

    /// `p(I) = det` of the columns in `I`, for an `n`-subset `I`.
    pub fn plucker(&self, cols: Subset) -> Result<F::Elem> {
        let n = self.n();
        if cols.len() != n || !cols.is_subset_of(Subset::full(n)) {
            return Err(Error::WrongShape {
                subset: cols,
                expected: "n-subset",
            });
        }
        Ok(self.plucker_unchecked(cols))
    }

    fn plucker_unchecked(&self, cols: Subset) -> F::Elem {
        let m = self
            .rows
            .iter()
            .map(|row| cols.iter().map(|e| row[e.rank()].clone()).collect())
            .collect();
        determinant(&self.field, m)
    }

    /// Plücker coordinates on transversals and almost-transversals.
    pub fn restricted_plucker(&self) -> RgpFunction<F> {
        let n = self.n();
        let entries = groundset::domain(n)
            .into_iter()
            .map(|s| (s, self.plucker_unchecked(s)));
        RgpFunction::new(n, self.field.clone(), entries).expect("domain keys")
    }

    /// The linear relations `p(B∖{i,i*}∪{j,j*}) = (-1)^m p(B∪{i,i*}∖{j,j*})`,
    /// `m = 1_{i∈B} + 1_{j∈B}`, over `B` of the component's parity, and
    /// `p = 0` on transversals of the other parity.
    pub fn check_linear_relations(&self, component: Component) -> Result<Verdict> {
        if !self.is_isotropic() {
            return Err(Error::NotIsotropic);
        }
        let n = self.n();
        let f = &self.field;
        let (sigma, other) = match component {
            Component::Plus => (0, 1),
            Component::Minus => (1, 0),
        };
        for b in groundset::transversals(n, Some(other)) {
            let v = self.plucker_unchecked(b);
            if !f.is_zero(&v) {
                return Ok(Err(Violation::WrongComponent {
                    subset: b,
                    value: f.format_elem(&v),
                }));
            }
        }
        for b in groundset::transversals(n, Some(sigma)) {
            for i in 1..=n {
                for j in (1..=n).filter(|&j| j != i) {
                    let (pi, pj) = (Subset::pair(i), Subset::pair(j));
                    let left = self.plucker_unchecked(b.difference(pi).union(pj));
                    let m = usize::from(b.contains(Element::plain(i)))
                        + usize::from(b.contains(Element::plain(j)));
                    let right = f.signed(
                        m % 2 == 1,
                        &self.plucker_unchecked(b.union(pi).difference(pj)),
                    );
                    if left != right {
                        return Ok(Err(Violation::LinearRelation {
                            b,
                            i,
                            j,
                            left: f.format_elem(&left),
                            right: f.format_elem(&right),
                        }));
                    }
                }
            }
        }
        Ok(Ok(()))
    }
}

/// `det(A_I) = pf(A_I)²` for even `I`, and for `i ≠ j ∉ I`
/// `det(A[Ii, Ij]) = (-1)^{1_{i>j}} pf(A[I,I]) pf(A[Iij,Iij])` (`|I|` even) or
/// `pf(A[Ii,Ii]) pf(A[Ij,Ij])` (`|I|` odd).
pub fn check_cayley<F: Field>(a: &SkewMatrix<F>) -> Verdict {
    let n = a.n();
    let f = &a.field;
    let pf = a.all_pfaffians();
    let fail = |rows: u32, cols: u32, det: &F::Elem, expected: &F::Elem| Violation::Cayley {
        rows: plain_subset(rows),
        cols: plain_subset(cols),
        det: f.format_elem(det),
        expected: f.format_elem(expected),
    };
    for m in 0..1u32 << n {
        if m.count_ones() % 2 == 0 {
            let det = a.minor(m, m);
            let sq = f.mul(&pf[m as usize], &pf[m as usize]);
            if det != sq {
                return Err(fail(m, m, &det, &sq));
            }
        }
        for i in (0..n).filter(|i| m >> i & 1 == 0) {
            for j in (0..n).filter(|&j| j != i && m >> j & 1 == 0) {
                let (ri, cj) = (m | 1 << i, m | 1 << j);
                let det = a.minor(ri, cj);
                let expected = if m.count_ones() % 2 == 0 {
                    f.signed(
                        i > j,
                        &f.mul(&pf[m as usize], &pf[(m | 1 << i | 1 << j) as usize]),
                    )
                } else {
                    f.mul(&pf[ri as usize], &pf[cj as usize])
                };
                if det != expected {
                    return Err(fail(ri, cj, &det, &expected));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityMode {
    Positive,
    Nonnegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub pf_side: bool,
    pub minor_side: bool,
}

/// Even principal Pfaffians against odd top-right almost-principal minors
/// `det A[I∪{i}, I∪{j}]`, `i < j`.
pub fn pfaffian_positivity_equivalence(
    a: &SkewMatrix<RationalField>,
    mode: PositivityMode,
) -> PositivityReport {
    let n = a.n();
    let ok = |v: &num_rational::BigRational| match mode {
        PositivityMode::Positive => v.is_positive(),
        PositivityMode::Nonnegative => !v.is_negative(),
    };
    let pfs = a.all_pfaffians();
    let pf_side = (0..1u32 << n)
        .filter(|m| m.count_ones() % 2 == 0)
        .all(|m| ok(&pfs[m as usize]));
    let mut minor_side = true;
    'outer: for m in (0..1u32 << n).filter(|m| m.count_ones() % 2 == 0) {
        for i in (0..n).filter(|i| m >> i & 1 == 0) {
            for j in (i + 1..n).filter(|j| m >> j & 1 == 0) {
                if !ok(&a.minor(m | 1 << i, m | 1 << j)) {
                    minor_side = false;
                    break 'outer;
                }
            }
        }
    }
    PositivityReport {
        pf_side,
        minor_side,
    }
}

/// Whether every entry is zero (used for the degenerate cases).
pub fn is_zero_matrix(a: &SkewMatrix<RationalField>) -> bool {
    a.entries.iter().flatten().all(Zero::is_zero)
}
