use std::collections::BTreeSet;

use orthomat::groundset::{self, Element, Subset};
use orthomat::matroid::{
    check_antisymmetric_axioms, check_strong_exchange, EvenAntisymmetricMatroid, OrthogonalMatroid,
};
use orthomat::oracle::{brute_circuits, enumerate_orthogonal_matroids};

fn small() -> Vec<OrthogonalMatroid> {
    (1..=3)
        .flat_map(|n| enumerate_orthogonal_matroids(n).unwrap())
        .collect()
}

/// Every 7th matroid at n = 4, to keep the run short.
fn sampled_four() -> Vec<OrthogonalMatroid> {
    enumerate_orthogonal_matroids(4)
        .unwrap()
        .into_iter()
        .step_by(7)
        .collect()
}

fn set(v: Vec<Subset>) -> BTreeSet<Subset> {
    v.into_iter().collect()
}

#[test]
fn enumeration_is_sorted_deduplicated_and_valid() {
    for n in 1..=4 {
        let ms = enumerate_orthogonal_matroids(n).unwrap();
        let bases: BTreeSet<_> = ms.iter().map(|m| m.bases().clone()).collect();
        assert_eq!(bases.len(), ms.len());
        for m in &ms {
            assert!(check_strong_exchange(n, m.bases()).unwrap().is_ok());
        }
    }
}

#[test]
fn antisymmetric_bijection_and_shared_circuits() {
    for m in small().into_iter().chain(sampled_four()) {
        let e = m.to_even_antisymmetric();
        assert!(check_antisymmetric_axioms(m.n(), e.bases())
            .unwrap()
            .is_ok());
        let e = EvenAntisymmetricMatroid::new(m.n(), e.bases().clone()).unwrap();
        assert_eq!(e.from_even_antisymmetric().unwrap(), m);
        assert_eq!(set(e.circuits()), set(m.circuits()));
        assert_eq!(set(brute_circuits(&m)), set(m.circuits()));
    }
}

#[test]
fn every_antisymmetric_circuit_is_fundamental() {
    for m in small() {
        let e = m.to_even_antisymmetric();
        let n = m.n();
        let mut fundamental = BTreeSet::new();
        for &b in e.bases().iter().filter(|b| b.is_transversal(n)) {
            for r in 0..2 * n {
                let x = Element::from_rank(r);
                if !b.contains(x) {
                    fundamental.insert(e.fundamental_circuit(b, x).unwrap());
                }
            }
        }
        assert_eq!(fundamental, set(e.circuits()), "{m:?}");
    }
}

#[test]
fn circuits_never_meet_a_dual_in_one_element() {
    for m in small().into_iter().chain(sampled_four()) {
        let cs = m.circuits();
        for &c1 in &cs {
            for &c2 in &cs {
                assert_ne!(c1.intersection(c2.star()).len(), 1, "{c1} {c2}");
            }
        }
    }
}

#[test]
fn two_modular_iff_modular() {
    for m in small() {
        let cs = m.circuits();
        for (a, &c1) in cs.iter().enumerate() {
            for &c2 in &cs[a + 1..] {
                let modular = m.modular_info(&[c1, c2]).unwrap().modular;
                let two = m.k_modular(c1, c2, 2).unwrap().is_some();
                assert_eq!(modular, two, "{m:?}: {c1} {c2}");
                // carrier intersections have even size
                if let Some((t1, t2)) = m.k_modular(c1, c2, 2 * m.n()).unwrap() {
                    assert_eq!(t1.intersection(t2.star()).len() % 2, 0);
                }
            }
        }
    }
}

#[test]
fn basis_graphs_are_connected() {
    for n in 1..=4 {
        for m in enumerate_orthogonal_matroids(n).unwrap() {
            assert!(m.to_even_antisymmetric().basis_graph().connected, "{m:?}");
        }
    }
}

#[test]
fn almost_transversal_bases_extend_to_transversal_bases() {
    // S a hyper-transversal with skew pair {i, i*}: if some S∖{x} is a basis
    // then so is S∖{i} or S∖{i*}.
    for m in small().into_iter().chain(sampled_four()) {
        let n = m.n();
        let e = m.to_even_antisymmetric();
        for s in groundset::hyper_transversals(n) {
            let i = s.skew_pairs().next().unwrap();
            let (pi, si) = (Element::plain(i), Element::starred(i));
            let some_basis = s.iter().any(|x| e.is_basis(s.without(x)));
            if some_basis {
                assert!(
                    e.is_basis(s.without(pi)) || e.is_basis(s.without(si)),
                    "{m:?}: {s}"
                );
            }
        }
    }
}
