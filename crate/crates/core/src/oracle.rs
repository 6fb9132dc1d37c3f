//! Brute-force generators and reference implementations used to check the
//! main code paths. Nothing here shares code with the Pfaffian, determinant
//! or circuit routines it is compared against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groundset::{self, check_n, Subset};
use crate::matroid::{check_strong_exchange, Bases, OrthogonalMatroid};
use crate::realization::SkewMatrix;
use crate::tract::{Field, Rational, RationalField};

/// Largest ground set size for exhaustive enumeration.
pub const MAX_ENUMERATION_N: usize = 4;

/// Every nonempty family of transversals satisfying strong exchange, in
/// ascending order of the family's bitmask over the transversal list.
pub fn enumerate_orthogonal_matroids(n: usize) -> Result<Vec<OrthogonalMatroid>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::GroundSetTooLarge(n));
    }
    check_n(n)?;
    let ts = groundset::transversals(n, None);
    let mut out = Vec::new();
    for family in 1u64..1u64 << ts.len() {
        let bases: Bases = ts
            .iter()
            .enumerate()
            .filter(|(k, _)| family >> k & 1 == 1)
            .map(|(_, t)| *t)
            .collect();
        if check_strong_exchange(n, &bases)?.is_ok() {
            out.push(OrthogonalMatroid::new_unchecked(n, bases));
        }
    }
    Ok(out)
}

/// Entry distribution for [`random_skew_matrix`]: `p/q` with `|p| <= max_num`,
/// `1 <= q <= max_den`, each entry forced to zero with probability
/// `zero_density`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntryDistribution {
    pub max_num: i64,
    pub max_den: i64,
    pub zero_density: f64,
}

impl Default for EntryDistribution {
    fn default() -> Self {
        Self {
            max_num: 5,
            max_den: 3,
            zero_density: 0.0,
        }
    }
}

impl EntryDistribution {
    pub fn sparse(zero_density: f64) -> Self {
        Self {
            zero_density,
            ..Self::default()
        }
    }
}

pub fn random_skew_matrix(
    n: usize,
    seed: u64,
    dist: EntryDistribution,
) -> SkewMatrix<RationalField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper: Vec<Vec<Rational>> = (0..n.saturating_sub(1))
        .map(|i| {
            (i + 1..n)
                .map(|_| {
                    if rng.random_bool(dist.zero_density.clamp(0.0, 1.0)) {
                        return Rational::from_integer(0.into());
                    }
                    let p = rng.random_range(-dist.max_num..=dist.max_num);
                    let q = rng.random_range(1..=dist.max_den.max(1));
                    Rational::new(p.into(), q.into())
                })
                .collect()
        })
        .collect();
    SkewMatrix::from_upper(RationalField, n, &upper).expect("shape")
}

/// Near the all-ones matrix: `a_ij = 1 + p/q` with `|p| <= 1`, `4 <= q <= 8`
/// for `i < j`, optionally with row/column `zero_row` cleared.
pub fn positivized_skew_matrix(
    n: usize,
    seed: u64,
    zero_row: Option<usize>,
) -> SkewMatrix<RationalField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper: Vec<Vec<Rational>> = (0..n.saturating_sub(1))
        .map(|i| {
            (i + 1..n)
                .map(|j| {
                    if zero_row == Some(i) || zero_row == Some(j) {
                        return Rational::from_integer(0.into());
                    }
                    let p: i64 = rng.random_range(-1..=1);
                    let q: i64 = rng.random_range(4..=8);
                    Rational::new((q + p).into(), q.into())
                })
                .collect()
        })
        .collect();
    SkewMatrix::from_upper(RationalField, n, &upper).expect("shape")
}

/// `pf(A_I)` as the signed sum over perfect matchings of `I`. The sign of a
/// matching `{(i1,j1), (i2,j2), ...}` (each `ik < jk`) is the parity of the
/// permutation `i1 j1 i2 j2 ...`.
pub fn pfaffian_matching_sum<F: Field>(a: &SkewMatrix<F>, mask: u32) -> F::Elem {
    let f = a.field();
    let idx: Vec<usize> = (0..a.n()).filter(|b| mask >> b & 1 == 1).collect();
    if idx.len() % 2 == 1 {
        return f.zero();
    }
    let mut total = f.zero();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    matchings(&idx, &mut stack, &mut |m| {
        let seq: Vec<usize> = m.iter().flat_map(|&(x, y)| [x, y]).collect();
        let inversions = (0..seq.len())
            .flat_map(|p| (p + 1..seq.len()).map(move |r| (p, r)))
            .filter(|&(p, r)| seq[p] > seq[r])
            .count();
        let prod = m
            .iter()
            .fold(f.one(), |acc, &(x, y)| f.mul(&acc, a.get(x + 1, y + 1)));
        total = f.add(&total, &f.signed(inversions % 2 == 1, &prod));
    });
    total
}

fn matchings(
    rest: &[usize],
    stack: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if rest.is_empty() {
        visit(stack);
        return;
    }
    let first = rest[0];
    for k in 1..rest.len() {
        let others: Vec<usize> = rest[1..]
            .iter()
            .copied()
            .filter(|&x| x != rest[k])
            .collect();
        stack.push((first, rest[k]));
        matchings(&others, stack, visit);
        stack.pop();
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let k = m.len();
    if k == 0 {
        return f.one();
    }
    let mut acc = f.zero();
    for c in 0..k {
        if f.is_zero(&m[0][c]) {
            continue;
        }
        let minor: Vec<Vec<F::Elem>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = f.mul(&m[0][c], &laplace_det(f, &minor));
        acc = f.add(&acc, &f.signed(c % 2 == 1, &term));
    }
    acc
}

/// Circuits straight from the definition: nonempty subtransversals lying in
/// no basis, every one-element deletion of which lies in some basis.
pub fn brute_circuits(m: &OrthogonalMatroid) -> Vec<Subset> {
    let n = m.n();
    let in_basis = |x: u32| m.bases().iter().any(|b| x & !b.bits() == 0);
    let mut out: Vec<Subset> = (1u32..1 << (2 * n))
        .filter(|&x| Subset(x).is_subtransversal())
        .filter(|&x| !in_basis(x))
        .filter(|&x| {
            (0..2 * n)
                .filter(|b| x >> b & 1 == 1)
                .all(|b| in_basis(x & !(1 << b)))
        })
        .map(Subset)
        .collect();
    out.sort();
    out
}
