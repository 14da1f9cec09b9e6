//! Constructions checked against closed-form counts and brute-force recounts
//! that share no code with the library.

mod common;

use common::{corpus, small_corpus, Instance};
use cosym::constructions::{
    induced_cyclic_on_nerve, nerve, simplex_level, simplex_set, simplex_to_nerve_morphism, ConstructionError,
};
use cosym::hall::{check_frobenius, check_unit, counit, hall_algebra};
use cosym::linalg::rational;
use cosym::monoid_spec::MonoidKind;
use cosym::simplicial::{check_gamma_relations, check_simplicial_relations};
use cosym::tqft::{
    closed_surface_alternative, closed_surface_word, closed_word_routes, compare_decompositions, dual_moves,
    evaluate_linear, evaluate_span, generator_spans, linearize, standard_moves, CobordismWord,
    DEFAULT_APEX_LIMIT,
};
use cosym::FinMap;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|X_n|` for the corpus families: compositions of `L` into `n + 1` parts,
/// `m^n` for the group, `(n+1)^k` disjoint colourings, `(2^{n+1} - 1)^k`
/// covers.
fn expected_size(kind: &MonoidKind, n: u32) -> u64 {
    match *kind {
        MonoidKind::Trunc(l) => binomial(l as u64 + n as u64, n as u64),
        MonoidKind::ZMod(m) => (m as u64).pow(n),
        MonoidKind::PsetDisjoint(k) => (n as u64 + 1).pow(k as u32),
        MonoidKind::PsetUnion(k) => ((1u64 << (n + 1)) - 1).pow(k as u32),
        MonoidKind::Table(_) => unreachable!(),
    }
}

#[test]
fn level_sizes_match_closed_forms() {
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(x.level_size(n) as u64, expected_size(&inst.kind, n as u32), "{} n={n}", inst.name());
        }
    }
}

/// `c[x][y][z]` recounted from tuples: `ω = (a, b, c)` has `d_2 ω = (ac, b)`,
/// `d_0 ω = (ab, c)`, `d_1 ω = (a, bc)`.
#[test]
fn structure_constants_match_tuple_recount() {
    for inst in small_corpus() {
        let m = &inst.monoid;
        let a = hall_algebra(&simplex_set(m, inst.top, 2).unwrap()).unwrap();
        let edges = simplex_level(m, inst.top, 1);
        let idx = |p: usize, q: usize| edges.iter().position(|e| e == &vec![p, q]).unwrap();
        let dim = edges.len();
        let mut c = vec![0i64; dim * dim * dim];
        for p in 0..m.size() {
            for q in 0..m.size() {
                for r in 0..m.size() {
                    if m.product([p, q, r]) != Some(inst.top) {
                        continue;
                    }
                    let x = idx(m.op(p, r).unwrap(), q);
                    let y = idx(m.op(p, q).unwrap(), r);
                    let z = idx(p, m.op(q, r).unwrap());
                    c[(x * dim + y) * dim + z] += 1;
                }
            }
        }
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    assert_eq!(a.structure_constant(x, y, z), c[(x * dim + y) * dim + z], "{}", inst.name());
                }
            }
        }
        assert!(check_unit(&a).passed);
    }
}

#[test]
fn counit_picks_out_e_then_l() {
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
        let eps = counit(&x).unwrap();
        let edges = simplex_level(&inst.monoid, inst.top, 1);
        for (v, e) in eps.iter().zip(&edges) {
            let hit = e == &vec![inst.monoid.identity(), inst.top];
            assert_eq!(*v, rational(i64::from(hit)), "{}", inst.name());
        }
    }
}

#[test]
fn trunc_pairing_is_antidiagonal() {
    for l in 1..=5 {
        let inst = Instance::new(&format!("trunc:{l}"));
        let a = hall_algebra(&simplex_set(&inst.monoid, l, 2).unwrap()).unwrap();
        let beta = a.pairing().unwrap();
        let edges = simplex_level(&inst.monoid, l, 1);
        for (i, x) in edges.iter().enumerate() {
            for (j, y) in edges.iter().enumerate() {
                // (L - g, g) pairs to 1 with (L - h, h) iff g + h = L
                assert_eq!(*beta.get(i, j), rational(i64::from(x[1] + y[1] == l)));
            }
        }
        let d = a.pairing_determinant().unwrap();
        assert!(d == rational(1) || d == rational(-1));
    }
}

#[test]
fn group_pairing_is_a_permutation() {
    for m in 2..=6 {
        for l in 0..m {
            let g = cosym::pmonoid::make_cyclic_group(m).unwrap();
            let a = hall_algebra(&simplex_set(&g, l, 2).unwrap()).unwrap();
            assert!(check_frobenius(&a).passed);
            let beta = a.pairing().unwrap();
            for r in 0..m {
                let ones = (0..m).filter(|&c| *beta.get(r, c) == rational(1)).count();
                let zeros = (0..m).filter(|&c| *beta.get(r, c) == rational(0)).count();
                assert_eq!((ones, zeros), (1, m - 1));
            }
        }
    }
}

#[test]
fn simplex_to_nerve_is_bijective_exactly_with_orthocomplements() {
    for inst in corpus() {
        let maps = simplex_to_nerve_morphism(&inst.monoid, inst.top, 3).unwrap();
        let bijective = maps.iter().all(FinMap::is_bijective);
        assert_eq!(bijective, inst.monoid.has_orthocomplement_property(inst.top), "{}", inst.name());
        match induced_cyclic_on_nerve(&inst.monoid, inst.top, 3) {
            Ok(x) => assert!(check_simplicial_relations(&x).passed),
            Err(ConstructionError::NoOrthocomplement(_)) => assert!(!bijective),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn nerves_are_gamma_sets() {
    for inst in corpus() {
        let x = nerve(&inst.monoid, 3).unwrap();
        assert!(check_simplicial_relations(&x).passed);
        assert!(check_gamma_relations(&x).unwrap().passed);
    }
}

#[test]
fn alternative_surface_words_agree() {
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
        let (g, a) = (generator_spans(&x).unwrap(), hall_algebra(&x).unwrap());
        for genus in 0..=2 {
            let w = closed_surface_word(genus);
            let alt = closed_surface_alternative(genus);
            assert_eq!(w.pants(), 2 * genus);
            assert_eq!(alt.pants(), if genus == 0 { 1 } else { 2 * genus });
            let r1 = closed_word_routes(&w, &g, &a, DEFAULT_APEX_LIMIT).unwrap();
            let r2 = closed_word_routes(&alt, &g, &a, DEFAULT_APEX_LIMIT).unwrap();
            assert!(r1.agree() && r2.agree(), "{} g={genus}", inst.name());
            assert_eq!(r1.matrix_value, r2.matrix_value, "{} g={genus}", inst.name());
        }
    }
}

#[test]
fn linear_evaluation_matches_span_linearization() {
    let words = [
        "unit", "counit", "mult", "comult", "ident", "swap", "mult;comult", "comult;mult", "mult,ident;mult",
        "comult,ident;ident,mult", "ident,comult;mult,ident", "unit,ident;mult", "comult;swap;mult",
    ];
    for inst in small_corpus().into_iter().filter(|i| simplex_level(&i.monoid, i.top, 1).len() <= 9) {
        let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
        let (g, a) = (generator_spans(&x).unwrap(), hall_algebra(&x).unwrap());
        for s in words {
            let w = CobordismWord::parse(s).unwrap();
            let span = evaluate_span(&w, &g, DEFAULT_APEX_LIMIT).unwrap();
            assert_eq!(linearize(&span), evaluate_linear(&w, &a).unwrap(), "{} {s}", inst.name());
        }
    }
}

#[test]
fn co_side_moves_hold() {
    for inst in corpus() {
        let g = generator_spans(&simplex_set(&inst.monoid, inst.top, 2).unwrap()).unwrap();
        for (name, w1, w2) in dual_moves().into_iter().chain(standard_moves()) {
            assert!(compare_decompositions(&w1, &w2, &g, DEFAULT_APEX_LIMIT).unwrap(), "{} {name}", inst.name());
        }
    }
}
