//! Grassmann-Plücker relations whose terms all lie on transversals and
//! almost-transversals: their six-case classification and verification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{rgp_relation_terms, RgpFunction};
use crate::groundset::{Element, Subset};
use crate::tract::Tract;
use crate::violation::Violation;

/// Every `(n+1)`-subset `S` and `(n-1)`-subset `S'` of `[n] ∪ [n]*`.
fn subsets_of_size(n: usize, k: usize) -> Vec<Subset> {
    (0..1u32 << (2 * n))
        .filter(|m| m.count_ones() as usize == k)
        .map(Subset)
        .collect()
}

/// Whether all terms of the relation for `(S, S')` lie in the domain.
pub fn is_applicable(n: usize, s: Subset, s2: Subset) -> bool {
    let full = Subset::full(n);
    s.len() == n + 1
        && s2.len() + 1 == n
        && s.is_subset_of(full)
        && s2.is_subset_of(full)
        && s.difference(s2)
            .iter()
            .all(|e| s.without(e).in_domain(n) && s2.with(e).in_domain(n))
}

fn the_pair(s: Subset) -> Option<usize> {
    let mut it = s.skew_pairs();
    let i = it.next()?;
    it.next().is_none().then_some(i)
}

fn two_pairs(s: Subset) -> Option<(usize, usize)> {
    let v: Vec<usize> = s.skew_pairs().collect();
    (v.len() == 2).then(|| (v[0], v[1]))
}

/// Indices not touched by `s`.
fn missing(n: usize, s: Subset) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |&k| s.intersection(Subset::pair(k)).is_empty())
}

/// All case labels whose pattern `(S, S')` matches.
pub fn matching_cases(n: usize, s: Subset, s2: Subset) -> Vec<u8> {
    let mut out = Vec::new();
    if s.is_hyper(n) && s2.is_hypo(n) {
        out.push(1);
    }
    if let Some(i) = the_pair(s).filter(|_| s.is_hyper(n)) {
        let pi = Subset::pair(i);
        if pi.is_subset_of(s2) && s2.is_subset_of(s) {
            out.push(2);
        }
        let rest = s.difference(pi);
        let case3 = rest.iter().any(|k| {
            rest.iter()
                .any(|j| j != k && rest.without(k).with(j.star()) == s2)
        });
        if case3 {
            out.push(3);
        }
    }
    if let Some((i, j)) = two_pairs(s) {
        let quad = Subset::pair(i).union(Subset::pair(j));
        let removed = s.difference(s2);
        if s2.is_subset_of(s) && removed.len() == 2 && removed.is_subset_of(quad) {
            out.push(4);
        }
        let mut case5 = false;
        let mut case6 = false;
        for k in missing(n, s) {
            let pk = Subset::pair(k);
            for (a, b) in [(i, j), (j, i)] {
                let base = s.difference(Subset::pair(a));
                for x in Subset::pair(b).iter() {
                    for y in pk.iter() {
                        case5 |= base.without(x).with(y) == s2;
                    }
                }
            }
            case6 |= s.difference(quad).union(pk) == s2;
        }
        if case5 {
            out.push(5);
        }
        if case6 {
            out.push(6);
        }
    }
    out
}

/// The unique case of an applicable pair; `Ok(None)` when not applicable.
pub fn classify_gp_relation(
    n: usize,
    s: Subset,
    s2: Subset,
) -> std::result::Result<Option<u8>, Violation> {
    if !is_applicable(n, s, s2) {
        return Ok(None);
    }
    match matching_cases(n, s, s2).as_slice() {
        [c] => Ok(Some(*c)),
        other => Err(Violation::Unclassified {
            s,
            s_prime: s2,
            matches: other.to_vec(),
        }),
    }
}

/// A relation term with its value left symbolic: sign and the two subsets.
type SymbolicTerm = (bool, Subset, Subset);

fn symbolic_terms(s: Subset, s2: Subset) -> Vec<SymbolicTerm> {
    let d = s.sym_diff(s2);
    let mut out: Vec<SymbolicTerm> = s
        .difference(s2)
        .iter()
        .map(|e| {
            let (a, b) = (s.without(e), s2.with(e));
            (d.count_less(e) % 2 == 1, a.min(b), a.max(b))
        })
        .collect();
    out.sort();
    out
}

/// The hyper/hypo pair `(S2, S2')` a case-3 or case-5 relation rewrites to.
pub fn rewrite_target(n: usize, case: u8, s: Subset, s2: Subset) -> Option<(Subset, Subset)> {
    // S2 = i j j* k Z and S2' = i* j Z
    let (i, j, k, z) = match case {
        3 => {
            let i = the_pair(s)?;
            let jj = the_pair(s2)?;
            let j = s.intersection(Subset::pair(jj)).iter().next()?;
            let k = s.difference(Subset::pair(i)).difference(s2).iter().next()?;
            (i, j, k, s2.difference(Subset::pair(jj)))
        }
        5 => {
            let (p, q) = two_pairs(s)?;
            let (i, jj) = if s2.intersection(Subset::pair(p)).is_empty() {
                (p, q)
            } else {
                (q, p)
            };
            let j = s2.intersection(Subset::pair(jj)).iter().next()?;
            let kk = missing(n, s).next()?;
            let k = s2.intersection(Subset::pair(kk)).iter().next()?;
            (i, j, k, s2.without(j).without(k))
        }
        _ => return None,
    };
    let ii = Element::plain(i);
    let s_two = z.union(Subset::pair(j.index())).with(ii).with(k);
    let s_two_prime = z.with(ii.star()).with(j);
    Some((s_two, s_two_prime))
}

/// Whether the relation of `(S, S')` equals that of its rewrite target as a
/// set of signed symbolic terms, up to a global sign.
pub fn rewrite_matches(n: usize, case: u8, s: Subset, s2: Subset) -> bool {
    let Some((t, t2)) = rewrite_target(n, case, s, s2) else {
        return false;
    };
    if !(t.is_hyper(n) && t2.is_hypo(n)) {
        return false;
    }
    let a = symbolic_terms(s, s2);
    let b = symbolic_terms(t, t2);
    let flipped: Vec<SymbolicTerm> = {
        let mut v: Vec<_> = b.iter().map(|(neg, x, y)| (!neg, *x, *y)).collect();
        v.sort();
        v
    };
    a == b || a == flipped
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EnvelopeReport {
    /// Relations checked per case, index 0 holding case 1.
    pub case_counts: [usize; 6],
    /// Applicable relations matching none (or several) of the six cases;
    /// they are still checked for nullness.
    pub unclassified: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_unclassified: Option<Violation>,
    pub not_applicable: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Violation>,
}

/// Term equalities behind a case-6 relation: with `i, j` the unstarred
/// members of the two skew pairs of `S`, the `i` and `j` terms cancel, the
/// `i*` and `j*` terms cancel, and the `i` and `i*` terms coincide.
fn check_case_six<T: Tract>(
    phi: &RgpFunction<T>,
    s: Subset,
    s2: Subset,
) -> std::result::Result<(), Violation> {
    let t = phi.tract();
    let (pi, pj) = two_pairs(s).expect("case 6");
    let w = s.sym_diff(s2);
    let term = |e: Element| {
        t.signed(
            w.count_less(e) % 2 == 1,
            &t.mul(phi.get(s.without(e)), phi.get(s2.with(e))),
        )
    };
    let (i, j) = (Element::plain(pi), Element::plain(pj));
    let checks = [
        ("i = -j", term(i), t.neg(&term(j))),
        ("i* = -j*", term(i.star()), t.neg(&term(j.star()))),
        ("i = i*", term(i), term(i.star())),
    ];
    for (name, left, right) in checks {
        if left != right {
            return Err(Violation::CaseSixEquality {
                s,
                s_prime: s2,
                equality: format!(
                    "{name}: {} != {}",
                    t.format_elem(&left),
                    t.format_elem(&right)
                ),
            });
        }
    }
    Ok(())
}

/// Checks every applicable relation; requires `1 + 1 - 1 - 1 ∈ N`.
pub fn check_enveloping_relations<T: Tract>(phi: &RgpFunction<T>) -> Result<EnvelopeReport> {
    check_enveloping_relations_with(phi, true)
}

/// As [`check_enveloping_relations`]; `case_six_equalities = false` skips the
/// case-6 term comparisons, which rely on rGP4.
pub fn check_enveloping_relations_with<T: Tract>(
    phi: &RgpFunction<T>,
    case_six_equalities: bool,
) -> Result<EnvelopeReport> {
    let t = phi.tract();
    let (one, m1) = (t.one(), t.minus_one());
    if !t.is_null(&[one.clone(), one, m1.clone(), m1]) {
        return Err(Error::TractConditionFailed(
            "1 + 1 - 1 - 1 is not null".into(),
        ));
    }
    let n = phi.n();
    let mut report = EnvelopeReport {
        passed: true,
        ..Default::default()
    };
    let hypos = subsets_of_size(n, n - 1);
    for s in subsets_of_size(n, n + 1) {
        for &s2 in &hypos {
            let case = match classify_gp_relation(n, s, s2) {
                Ok(Some(c)) => {
                    report.case_counts[c as usize - 1] += 1;
                    c
                }
                Ok(None) => {
                    report.not_applicable += 1;
                    continue;
                }
                Err(v) => {
                    report.unclassified += 1;
                    report.first_unclassified.get_or_insert(v);
                    0
                }
            };
            if !report.passed {
                continue;
            }
            let failure = if (case == 3 || case == 5) && !rewrite_matches(n, case, s, s2) {
                Some(Violation::Rewrite {
                    case,
                    s,
                    s_prime: s2,
                })
            } else if case == 6 && case_six_equalities {
                check_case_six(phi, s, s2).err()
            } else {
                None
            };
            let failure = failure.or_else(|| {
                let sum = rgp_relation_terms(phi, s, s2);
                (!sum.is_null(t)).then(|| Violation::GpRelation {
                    case,
                    s,
                    s_prime: s2,
                    terms: sum.terms().iter().map(|v| t.format_elem(v)).collect(),
                })
            });
            if let Some(v) = failure {
                report.passed = false;
                report.first_failure = Some(v);
            }
        }
    }
    Ok(report)
}

/// Every applicable pair at `n` that does not match exactly one case.
pub fn classification_exceptions(n: usize) -> Vec<Violation> {
    let hypos = subsets_of_size(n, n - 1);
    subsets_of_size(n, n + 1)
        .into_iter()
        .flat_map(|s| {
            hypos
                .iter()
                .filter_map(move |&s2| classify_gp_relation(n, s, s2).err())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::wick_to_rgp;
    use crate::functions::{Strength, WickFunction};
    use crate::groundset::{self, MAX_N};
    use crate::matroid::OrthogonalMatroid;
    use crate::realization::{wick_coordinates, SkewMatrix};
    use crate::tract::{Krasner, Rational, RationalField, SignHyperfield};

    fn s(items: &[&str]) -> Subset {
        Subset::from_strings(items, MAX_N).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_gp_relation(2, s(&["1", "1*", "2"]), s(&["2*"])),
            Ok(Some(1))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "3"]), s(&["1", "1*"])),
            Ok(Some(2))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "2*"]), s(&["3", "3*"])),
            Ok(Some(6))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "3"]), s(&["2", "2*"])),
            Ok(Some(3))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "2*"]), s(&["1", "2"])),
            Ok(Some(4))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "2*"]), s(&["2", "3*"])),
            Ok(Some(5))
        );
        assert_eq!(
            classify_gp_relation(3, s(&["1", "1*", "2", "2*"]), s(&["1", "1*"])),
            Ok(Some(4))
        );
        // S∖{1} has two skew pairs
        assert_eq!(
            classify_gp_relation(
                5,
                s(&["1", "1*", "2", "2*", "3", "3*"]),
                s(&["4", "4*", "5"])
            ),
            Ok(None)
        );
    }

    #[test]
    fn four_has_pairs_outside_the_six_cases() {
        // S = ii*jj*lZ, S' = ll*kZ: every term lies in the domain
        let (a, b) = (s(&["1", "1*", "2", "2*", "3"]), s(&["3", "3*", "4"]));
        assert!(is_applicable(4, a, b));
        assert!(matching_cases(4, a, b).is_empty());
        assert_eq!(classification_exceptions(4).len(), 48);
        assert!(classification_exceptions(3).is_empty());
    }

    #[test]
    fn exactly_one_case_up_to_three() {
        for n in 2..=3 {
            let mut seen = [0usize; 6];
            for a in subsets_of_size(n, n + 1) {
                for b in subsets_of_size(n, n - 1) {
                    if let Some(c) = classify_gp_relation(n, a, b).unwrap() {
                        seen[c as usize - 1] += 1;
                        if c == 3 || c == 5 {
                            assert!(rewrite_matches(n, c, a, b), "{a} {b}");
                        }
                    }
                }
            }
            assert!(seen[0] > 0);
            if n >= 3 {
                assert!(seen.iter().all(|&c| c > 0), "n = {n}: {seen:?}");
            }
        }
    }

    #[test]
    fn realizable_functions_pass() {
        let up = vec![vec![q(1), q(2), q(3)], vec![q(4), q(5)], vec![q(6)]];
        let a = SkewMatrix::from_upper(RationalField, 4, &up).unwrap();
        let phi = wick_to_rgp(&wick_coordinates(&a), Strength::Strong).unwrap();
        let report = check_enveloping_relations(&phi).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.case_counts.iter().all(|&c| c > 0));
        assert_eq!(report.unclassified, 48);
        let bad = phi.with_value(s(&["1", "1*", "3", "4"]), q(7));
        assert!(!check_enveloping_relations(&bad).unwrap().passed);
    }

    #[test]
    fn krasner_and_sign_conditions() {
        let bases = groundset::transversals(3, Some(0)).into_iter().collect();
        let m = OrthogonalMatroid::new(3, bases).unwrap();
        let phi = wick_to_rgp(&WickFunction::indicator(Krasner, &m), Strength::Strong).unwrap();
        assert!(check_enveloping_relations(&phi).unwrap().passed);
        let sphi = crate::functions::RgpFunction::new(2, SignHyperfield, []).unwrap();
        assert!(check_enveloping_relations(&sphi).is_ok());
    }
}
