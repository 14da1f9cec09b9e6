//! Every built-in monoid with at most 16 elements, at every element `L`.

use cosym::constructions::{basepoint_adjoin, induced_cyclic_on_nerve, nerve, phi_action, simplex_level, simplex_set, PhiMorphism};
use cosym::pmonoid::{
    make_cyclic_group, make_powerset_disjoint, make_powerset_monoid, make_powerset_union, make_trunc_add,
};
use cosym::simplicial::{
    check_cosymmetric_relations, check_cyclic, check_extra_degeneracy_pullback, check_stautheta_identities,
    check_two_segal, check_unitality,
};
use cosym::PartialMonoid;

/// Largest level kept at the full truncation; bigger instances stop one
/// level lower to bound debug-build runtime.
const LEVEL_BUDGET: usize = 8_000;

fn builtins() -> Vec<(String, PartialMonoid)> {
    let mut out = Vec::new();
    for l in 0..16 {
        out.push((format!("trunc:{l}"), make_trunc_add(l).unwrap()));
    }
    for m in 1..=16 {
        out.push((format!("zmod:{m}"), make_cyclic_group(m).unwrap()));
    }
    for k in 0..=4 {
        out.push((format!("pset-disjoint:{k}"), make_powerset_disjoint(k).unwrap()));
        out.push((format!("pset-union:{k}"), make_powerset_union(k).unwrap()));
        out.push((format!("powerset:{k}"), make_powerset_monoid(k).unwrap()));
    }
    out
}

/// Every element of small carriers; the identity, a neighbour and the last
/// element of larger ones.
fn sample_elements(m: &PartialMonoid) -> Vec<usize> {
    if m.size() <= 8 {
        (0..m.size()).collect()
    } else {
        let mut v = vec![m.identity(), 1, m.size() / 2, m.size() - 1];
        v.dedup();
        v
    }
}

#[test]
fn simplex_sets_of_small_builtins_are_two_segal_cosymmetric() {
    for (name, m) in builtins() {
        for top in sample_elements(&m) {
            let n = if simplex_level(&m, top, 4).len() <= LEVEL_BUDGET { 4 } else { 3 };
            let x = simplex_set(&m, top, n).unwrap();
            let ctx = format!("{name} L={} N={n}", m.label(top));
            assert!(check_two_segal(&x).passed, "{ctx}");
            assert!(check_cosymmetric_relations(&x).unwrap().passed, "{ctx}");
            assert!(check_stautheta_identities(&x).unwrap().passed, "{ctx}");
            assert!(check_extra_degeneracy_pullback(&x).unwrap().passed, "{ctx}");
            assert!(check_unitality(&x).passed, "{ctx}");
        }
    }
}

#[test]
fn induced_tau_has_finite_order_with_orthocomplements() {
    for (name, m) in builtins().into_iter().filter(|(_, m)| m.size() <= 8) {
        for top in 0..m.size() {
            if m.has_orthocomplement_property(top) {
                let x = induced_cyclic_on_nerve(&m, top, 3).unwrap();
                assert!(check_cyclic(&x).unwrap().passed, "{name} L={top}");
            }
        }
    }
}

#[test]
fn adjoin_examples() {
    let trivial = make_trunc_add(0).unwrap();
    let x = basepoint_adjoin(&nerve(&trivial, 4).unwrap()).unwrap();
    assert_eq!(x.level_sizes(), vec![1; 4]);
    let t1 = make_trunc_add(1).unwrap();
    let y = basepoint_adjoin(&nerve(&t1, 4).unwrap()).unwrap();
    assert_eq!(y.level(1).labels().unwrap(), &["(0,0)", "(0,1)", "(1,0)"]);
    assert!(check_cosymmetric_relations(&y).unwrap().passed);
    assert!(check_two_segal(&y).passed);
}

#[test]
fn tau_squared_on_level_two_matches_tables() {
    let m = make_trunc_add(3).unwrap();
    let x = simplex_set(&m, 3, 2).unwrap();
    let elems = simplex_level(&m, 3, 2);
    let t2 = PhiMorphism::tau(2).then(&PhiMorphism::tau(2)).unwrap();
    let tau = x.tau(2).unwrap();
    for (k, t) in elems.iter().enumerate() {
        let expect = &elems[tau.apply(tau.apply(k))];
        assert_eq!(&phi_action(&t2, t, &m).unwrap(), expect);
    }
}
