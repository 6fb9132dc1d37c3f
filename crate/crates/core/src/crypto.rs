//! Conversions between Wick functions, restricted GP functions and
//! circuit signatures, and round-trip verification.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{
    check_rgp, check_wick, rgp_equal_by_edge_ratios, RgpFunction, Strength, WickFunction,
};
use crate::groundset::{self, Element, Subset};
use crate::matroid::{transversal_parity, OrthogonalMatroid};
use crate::signature::{CircuitVector, Signature};
use crate::tract::Tract;

/// One sign exponent used while building `φ(A)` from `ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub subset: Subset,
    pub basis: Subset,
    pub exponent: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Wick,
    Rgp,
    Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripStep {
    pub identity: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConversionReport {
    pub input_kind: ObjectKind,
    pub strength: Strength,
    pub sigma: Option<u8>,
    pub steps: Vec<RoundTripStep>,
    pub passed: bool,
    pub audit: Vec<AuditEntry>,
}

/// Any of the three equivalent presentations.
#[derive(Clone, Debug)]
pub enum Presentation<T: Tract> {
    Wick(WickFunction<T>),
    Rgp(RgpFunction<T>),
    Signature(Signature<T>),
}

fn require_wick<T: Tract>(psi: &WickFunction<T>, strength: Strength) -> Result<()> {
    check_wick(psi, strength).map_err(|v| Error::InvalidWick(v.to_string()))
}

fn require_rgp<T: Tract>(phi: &RgpFunction<T>, strength: Strength) -> Result<()> {
    check_rgp(phi, strength).map_err(|v| Error::InvalidRgp(v.to_string()))
}

fn require_signature<T: Tract>(
    sig: &Signature<T>,
    m: &OrthogonalMatroid,
    strength: Strength,
) -> Result<()> {
    let verdict = match strength {
        Strength::Strong => sig.check_orthogonal(m)?,
        Strength::Weak => sig.check_weak_orthogonal(m)?,
    };
    verdict.map_err(|v| Error::InvalidSignature(v.to_string()))
}

/// Exponent of the sign in `φ(A) = ± ψ(B) ψ(B△{i,i*,j,j*})`, where `i` is
/// the index missing from `A` and `j` its skew pair.
pub fn rgp_sign_exponent(b: Subset, i: usize, j: usize) -> u8 {
    let plain = b.plain_part();
    let e = plain.count_less(Element::plain(i))
        + plain.count_less(Element::plain(j))
        + usize::from(b.contains(Element::plain(i)))
        + 1;
    (e % 2) as u8
}

/// The two transversals `B` of parity `sigma` with `B∖{i,i*}∪{j,j*} = A`.
fn admissible_bases(a: Subset, i: usize, j: usize, sigma: u8) -> [Subset; 2] {
    let core = a.difference(Subset::pair(j));
    let mut out = [Subset::EMPTY; 2];
    let mut k = 0;
    for xi in [Element::plain(i), Element::starred(i)] {
        for xj in [Element::plain(j), Element::starred(j)] {
            let b = core.with(xi).with(xj);
            if b.parity() == sigma {
                out[k] = b;
                k += 1;
            }
        }
    }
    out
}

/// `(missing index, skew index)` of an almost-transversal.
fn almost_indices(a: Subset, n: usize) -> (usize, usize) {
    let j = a.skew_pairs().next().expect("one skew pair");
    let i = (1..=n)
        .find(|&i| a.intersection(Subset::pair(i)).is_empty())
        .expect("one missing index");
    (i, j)
}

/// `ψ ↦ φ` with the sign audit; both admissible bases are evaluated and
/// must agree.
pub fn wick_to_rgp_audited<T: Tract>(
    psi: &WickFunction<T>,
    strength: Strength,
) -> Result<(RgpFunction<T>, Vec<AuditEntry>)> {
    require_wick(psi, strength)?;
    wick_to_rgp_unchecked(psi)
}

pub fn wick_to_rgp<T: Tract>(psi: &WickFunction<T>, strength: Strength) -> Result<RgpFunction<T>> {
    wick_to_rgp_audited(psi, strength).map(|(phi, _)| phi)
}

pub(crate) fn wick_to_rgp_unchecked<T: Tract>(
    psi: &WickFunction<T>,
) -> Result<(RgpFunction<T>, Vec<AuditEntry>)> {
    let n = psi.n();
    let t = psi.tract();
    let sigma = transversal_parity(n, &psi.support())
        .map_err(|v| Error::InvalidWick(v.to_string()))?
        .ok_or_else(|| Error::InvalidWick("identically zero".into()))?;
    let mut entries = Vec::new();
    let mut audit = Vec::new();
    for (b, v) in psi.entries() {
        entries.push((b, t.mul(v, v)));
    }
    for a in groundset::almost_transversals(n) {
        let (i, j) = almost_indices(a, n);
        let swap = Subset::pair(i).union(Subset::pair(j));
        let mut values = Vec::with_capacity(2);
        for b in admissible_bases(a, i, j, sigma) {
            let exponent = rgp_sign_exponent(b, i, j);
            audit.push(AuditEntry {
                subset: a,
                basis: b,
                exponent,
            });
            let prod = t.mul(psi.get(b), psi.get(b.sym_diff(swap)));
            values.push(t.signed(exponent == 1, &prod));
        }
        if values[0] != values[1] {
            return Err(Error::InvalidWick(format!(
                "the two admissible bases disagree at {a}"
            )));
        }
        entries.push((a, values.swap_remove(0)));
    }
    Ok((RgpFunction::new(n, t.clone(), entries)?, audit))
}

/// `X_S(i) = (-1)^{|S<i|} φ(S∖{i})` for a hyper-transversal `S`.
pub fn hyper_vector<T: Tract>(phi: &RgpFunction<T>, s: Subset) -> CircuitVector<T::Elem> {
    let t = phi.tract();
    let mut v = CircuitVector::zero(t, phi.n());
    for i in s.iter() {
        v.set(i, t.signed(s.count_less(i) % 2 == 1, phi.get(s.without(i))));
    }
    v
}

/// `Y_{S'}(i) = (-1)^{|S'<i*|} φ(S'∪{i*})` for `i ∉ S'*`.
pub fn hypo_vector<T: Tract>(
    phi: &RgpFunction<T>,
    s_prime: Subset,
) -> Result<CircuitVector<T::Elem>> {
    let n = phi.n();
    if !s_prime.is_hypo(n) {
        return Err(Error::WrongShape {
            subset: s_prime,
            expected: "hypo-transversal",
        });
    }
    let t = phi.tract();
    let mut v = CircuitVector::zero(t, n);
    for i in Subset::full(n).difference(s_prime.star()).iter() {
        let is = i.star();
        v.set(
            i,
            t.signed(s_prime.count_less(is) % 2 == 1, phi.get(s_prime.with(is))),
        );
    }
    Ok(v)
}

pub fn rgp_to_signature<T: Tract>(
    phi: &RgpFunction<T>,
    strength: Strength,
) -> Result<Signature<T>> {
    require_rgp(phi, strength)?;
    rgp_to_signature_unchecked(phi)
}

pub(crate) fn rgp_to_signature_unchecked<T: Tract>(phi: &RgpFunction<T>) -> Result<Signature<T>> {
    let n = phi.n();
    let vectors = groundset::hyper_transversals(n)
        .into_iter()
        .filter(|s| {
            let p = s.skew_pairs().next().expect("hyper");
            let pair = Subset::pair(p);
            phi.is_nonzero(s.difference(pair).with(Element::plain(p)))
                || phi.is_nonzero(s.difference(pair).with(Element::starred(p)))
        })
        .map(|s| hyper_vector(phi, s));
    Signature::new(n, phi.tract().clone(), vectors)
}

/// Whether `(-1)^{|T*∩[n] ≤ ē|}` is negative.
fn xt_negative(t: Subset, e: Element) -> bool {
    t.starred_part().count_at_most(Element::starred(e.index())) % 2 == 1
}

/// `X_T(e) = (-1)^{|T*∩[n] ≤ ē|} ψ(T△{e,e*})` for `e ∈ T`.
pub fn transversal_vector<T: Tract>(psi: &WickFunction<T>, t: Subset) -> CircuitVector<T::Elem> {
    let tr = psi.tract();
    let mut v = CircuitVector::zero(tr, psi.n());
    for e in t.iter() {
        v.set(
            e,
            tr.signed(
                xt_negative(t, e),
                psi.get(t.sym_diff(Subset::pair(e.index()))),
            ),
        );
    }
    v
}

pub fn wick_to_signature<T: Tract>(
    psi: &WickFunction<T>,
    strength: Strength,
) -> Result<Signature<T>> {
    require_wick(psi, strength)?;
    wick_to_signature_unchecked(psi)
}

pub(crate) fn wick_to_signature_unchecked<T: Tract>(psi: &WickFunction<T>) -> Result<Signature<T>> {
    let n = psi.n();
    let vectors = groundset::transversals(n, None)
        .into_iter()
        .map(|t| transversal_vector(psi, t))
        .filter(|v| !v.is_zero(psi.tract()));
    Signature::new(n, psi.tract().clone(), vectors)
}

/// Rebuilds `ψ` (up to a unit) from a signature of `m`: `ψ(B₀) = 1` at the
/// smallest basis, then breadth-first along exchange edges using the ray
/// supported inside `T = B△{i,i*}`.
pub fn signature_to_wick<T: Tract>(
    sig: &Signature<T>,
    m: &OrthogonalMatroid,
    strength: Strength,
) -> Result<WickFunction<T>> {
    require_signature(sig, m, strength)?;
    let psi = signature_to_wick_unchecked(sig, m)?;
    check_wick(&psi, strength)
        .map_err(|v| Error::InconsistentRatios(format!("rebuilt function fails: {v}")))?;
    Ok(psi)
}

pub(crate) fn signature_to_wick_unchecked<T: Tract>(
    sig: &Signature<T>,
    m: &OrthogonalMatroid,
) -> Result<WickFunction<T>> {
    let n = m.n();
    let tr = sig.tract();
    let rays: HashMap<Subset, &CircuitVector<T::Elem>> =
        sig.rays().iter().map(|r| (r.support(tr), r)).collect();
    let b0 = *m.bases().iter().next().ok_or(Error::EmptyFamily)?;
    let mut values: HashMap<Subset, T::Elem> = HashMap::from([(b0, tr.one())]);
    let mut queue = VecDeque::from([b0]);
    while let Some(b) = queue.pop_front() {
        let vb = values[&b].clone();
        for i in 1..=n {
            let t = b.sym_diff(Subset::pair(i));
            let support = Subset::from_elements(
                t.iter()
                    .filter(|e| m.is_basis(t.sym_diff(Subset::pair(e.index())))),
            );
            let ray = rays.get(&support).ok_or_else(|| {
                Error::InvalidSignature(format!("no vector supported on {support}"))
            })?;
            let ei = t.iter().find(|e| e.index() == i).expect("transversal");
            for ej in support.iter().filter(|e| e.index() != i) {
                let b2 = t.sym_diff(Subset::pair(ej.index()));
                // X_T(ej)/X_T(ei) = ± ψ(B2)/ψ(B)
                let ratio = tr.div(ray.get(ej), ray.get(ei))?;
                let sign = xt_negative(t, ei) != xt_negative(t, ej);
                let v2 = tr.signed(sign, &tr.mul(&vb, &ratio));
                match values.get(&b2) {
                    Some(old) if *old != v2 => {
                        return Err(Error::InconsistentRatios(format!(
                            "{b2} reached as {} and {}",
                            tr.format_elem(old),
                            tr.format_elem(&v2)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        values.insert(b2, v2);
                        queue.push_back(b2);
                    }
                }
            }
        }
    }
    let psi = WickFunction::new(n, tr.clone(), values)?;
    if !wick_to_signature_unchecked(&psi)?.same_rays(sig) {
        return Err(Error::InconsistentRatios(
            "rebuilt function has a different signature".into(),
        ));
    }
    Ok(psi)
}

fn step(identity: &str, outcome: Result<bool>) -> RoundTripStep {
    match outcome {
        Ok(passed) => RoundTripStep {
            identity: identity.into(),
            passed,
            error: None,
        },
        Err(e) => RoundTripStep {
            identity: identity.into(),
            passed: false,
            error: Some(e.to_string()),
        },
    }
}

fn rgp_same<T: Tract>(a: &RgpFunction<T>, b: &RgpFunction<T>) -> Result<bool> {
    Ok(a.projectively_equal(b)? && rgp_equal_by_edge_ratios(a, b)?)
}

/// Runs the composite identities starting from `object`. Input validity is
/// reported as the first step.
pub fn verify_roundtrips<T: Tract>(
    object: &Presentation<T>,
    strength: Strength,
) -> ConversionReport {
    let mut steps = Vec::new();
    let mut audit = Vec::new();
    let mut sigma = None;
    let kind = match object {
        Presentation::Wick(psi) => {
            steps.push(step(
                "input is a Wick function",
                require_wick(psi, strength).map(|_| true),
            ));
            if steps[0].passed {
                let out = (|| {
                    let (phi, trail) = wick_to_rgp_unchecked(psi)?;
                    sigma = phi.sigma();
                    audit = trail;
                    let via_rgp = rgp_to_signature_unchecked(&phi)?;
                    let direct = wick_to_signature_unchecked(psi)?;
                    steps.push(step("W->GP->O = W->O", Ok(via_rgp.same_rays(&direct))));
                    let m = psi.support_matroid()?;
                    steps.push(step(
                        "O->W after W->O",
                        signature_to_wick_unchecked(&direct, &m)
                            .and_then(|back| back.projectively_equal(psi)),
                    ));
                    steps.push(step(
                        "output is an rGP function",
                        Ok(check_rgp(&phi, strength).is_ok()),
                    ));
                    Ok::<(), Error>(())
                })();
                if let Err(e) = out {
                    steps.push(step("conversion", Err(e)));
                }
            }
            ObjectKind::Wick
        }
        Presentation::Rgp(phi) => {
            sigma = phi.sigma();
            steps.push(step(
                "input is an rGP function",
                require_rgp(phi, strength).map(|_| true),
            ));
            if steps[0].passed {
                let out = (|| {
                    let sig = rgp_to_signature_unchecked(phi)?;
                    let m = OrthogonalMatroid::from_circuits(phi.n(), &sig.supports())?;
                    let psi = signature_to_wick_unchecked(&sig, &m)?;
                    let (back, trail) = wick_to_rgp_unchecked(&psi)?;
                    audit = trail;
                    steps.push(step("W->GP . O->W . GP->O = id", rgp_same(phi, &back)));
                    steps.push(step(
                        "W->O . O->W = id on signatures",
                        wick_to_signature_unchecked(&psi).map(|s| s.same_rays(&sig)),
                    ));
                    Ok::<(), Error>(())
                })();
                if let Err(e) = out {
                    steps.push(step("conversion", Err(e)));
                }
            }
            ObjectKind::Rgp
        }
        Presentation::Signature(sig) => {
            let m = OrthogonalMatroid::from_circuits(sig.n(), &sig.supports())
                .and_then(|m| require_signature(sig, &m, strength).map(|_| m));
            let m = match m {
                Ok(m) => {
                    steps.push(step("input is a signature", Ok(true)));
                    Some(m)
                }
                Err(e) => {
                    steps.push(step("input is a signature", Err(e)));
                    None
                }
            };
            if let Some(m) = m {
                sigma = Some(m.sigma());
                let out = (|| {
                    let psi = signature_to_wick_unchecked(sig, &m)?;
                    steps.push(step(
                        "W->O . O->W = id",
                        wick_to_signature_unchecked(&psi).map(|s| s.same_rays(sig)),
                    ));
                    let (phi, trail) = wick_to_rgp_unchecked(&psi)?;
                    audit = trail;
                    steps.push(step(
                        "GP->O . W->GP . O->W = id",
                        rgp_to_signature_unchecked(&phi).map(|s| s.same_rays(sig)),
                    ));
                    Ok::<(), Error>(())
                })();
                if let Err(e) = out {
                    steps.push(step("conversion", Err(e)));
                }
            }
            ObjectKind::Signature
        }
    };
    let passed = steps.iter().all(|s| s.passed);
    ConversionReport {
        input_kind: kind,
        strength,
        sigma,
        steps,
        passed,
        audit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groundset::MAX_N;
    use crate::tract::{Krasner, RationalField};
    use num_rational::BigRational;

    fn s(items: &[&str]) -> Subset {
        Subset::from_strings(items, MAX_N).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn psi2() -> WickFunction<RationalField> {
        WickFunction::new(
            2,
            RationalField,
            [(s(&["1", "2"]), q(1)), (s(&["1*", "2*"]), q(3))],
        )
        .unwrap()
    }

    /// Wick coordinates of the 4x4 skew matrix with a12..a34 = 1..6.
    fn psi4() -> WickFunction<RationalField> {
        let a = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]];
        let entries = groundset::transversals(4, Some(0)).into_iter().map(|b| {
            let idx: Vec<usize> = b.starred_part().iter().map(|e| e.index() - 1).collect();
            let v = match idx.len() {
                0 => 1,
                2 => a[idx[0]][idx[1]],
                _ => a[0][1] * a[2][3] - a[0][2] * a[1][3] + a[0][3] * a[1][2],
            };
            (b, q(v))
        });
        WickFunction::new(4, RationalField, entries).unwrap()
    }

    #[test]
    fn wick_to_rgp_example() {
        let (phi, audit) = wick_to_rgp_audited(&psi2(), Strength::Strong).unwrap();
        assert_eq!(*phi.get(s(&["1", "2"])), q(1));
        assert_eq!(*phi.get(s(&["1*", "2*"])), q(9));
        assert_eq!(*phi.get(s(&["1", "1*"])), q(-3));
        assert_eq!(*phi.get(s(&["2", "2*"])), q(-3));
        assert_eq!(*phi.get(s(&["1", "2*"])), q(0));
        assert_eq!(audit.len(), 4);
        let scaled = wick_to_rgp(&psi2().scaled(&q(5)), Strength::Strong).unwrap();
        assert!(scaled.projectively_equal(&phi).unwrap());
        assert_eq!(*scaled.get(s(&["1", "2"])), q(25));
    }

    #[test]
    fn signature_examples() {
        let phi = wick_to_rgp(&psi2(), Strength::Strong).unwrap();
        let x = hyper_vector(&phi, s(&["1", "1*", "2"]));
        assert_eq!(x.coords(), &[q(0), q(-1), q(-3), q(0)]);
        let y = hypo_vector(&phi, s(&["2"])).unwrap();
        assert_eq!(y, x.negated(&RationalField));
        let xt = transversal_vector(&psi2(), s(&["1*", "2"]));
        assert_eq!(xt.coords(), &[q(0), q(-1), q(-3), q(0)]);
        let a = rgp_to_signature(&phi, Strength::Strong).unwrap();
        let b = wick_to_signature(&psi2(), Strength::Strong).unwrap();
        assert!(a.same_rays(&b));
        assert_eq!(a.rays().len(), 2);
    }

    #[test]
    fn signature_to_wick_recovers_psi() {
        for psi in [psi2(), psi4()] {
            let m = psi.support_matroid().unwrap();
            let sig = wick_to_signature(&psi, Strength::Strong).unwrap();
            let back = signature_to_wick(&sig, &m, Strength::Strong).unwrap();
            assert!(back.projectively_equal(&psi).unwrap());
        }
    }

    #[test]
    fn krasner_single_basis_gives_indicator() {
        let bases = [s(&["1", "2*", "3*"])].into_iter().collect();
        let m = OrthogonalMatroid::new(3, bases).unwrap();
        let psi = WickFunction::indicator(Krasner, &m);
        let sig = wick_to_signature(&psi, Strength::Strong).unwrap();
        let back = signature_to_wick(&sig, &m, Strength::Strong).unwrap();
        assert_eq!(back.support(), *m.bases());
    }

    #[test]
    fn round_trips_from_each_presentation() {
        let psi = psi4();
        let phi = wick_to_rgp(&psi, Strength::Strong).unwrap();
        let sig = wick_to_signature(&psi, Strength::Strong).unwrap();
        for obj in [
            Presentation::Wick(psi),
            Presentation::Rgp(phi),
            Presentation::Signature(sig),
        ] {
            for strength in [Strength::Strong, Strength::Weak] {
                let report = verify_roundtrips(&obj, strength);
                assert!(report.passed, "{report:?}");
                assert_eq!(report.sigma, Some(0));
            }
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let bad = psi4().with_value(s(&["1*", "2*", "3", "4"]), q(2));
        assert!(matches!(
            wick_to_rgp(&bad, Strength::Strong),
            Err(Error::InvalidWick(_))
        ));
        assert!(!verify_roundtrips(&Presentation::Wick(bad), Strength::Strong).passed);
    }

    #[test]
    fn sign_exponent_reduces_to_square() {
        // with i = j the product is ψ(B)², the exponent 2|B∩[n]<i| + 1_{i∈B} + 1
        for b in groundset::transversals(3, None) {
            for i in 1..=3 {
                let plain = b.plain_part();
                let e = 2 * plain.count_less(Element::plain(i))
                    + usize::from(b.contains(Element::plain(i)))
                    + 1;
                assert_eq!(rgp_sign_exponent(b, i, i), (e % 2) as u8);
            }
        }
    }
}
