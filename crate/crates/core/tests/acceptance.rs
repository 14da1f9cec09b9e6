//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are always printed; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{corpus, Instance};
use cosym::constructions::{
    plasmic_nerve_crosscheck, segal_map_collisions, simplex_level, simplex_set, simplex_set_via_adjoin,
};
use cosym::hall::{
    check_associativity, check_commutativity, check_union_identities, hall_algebra, standard_presentation,
    verify_presentation, HallAlgebra,
};
use cosym::linalg::rational;
use cosym::monoid_spec::MonoidKind;
use cosym::simplicial::{
    check_cosymmetric_relations, check_cyclic, check_extra_degeneracy_pullback, check_gamma_relations,
    check_nn_pullbacks, check_paracyclic_relations, check_simplicial_relations, check_stautheta_identities,
    check_two_segal, check_unitality, synthesize_cosymmetric,
};
use cosym::tqft::{
    closed_surface_word, closed_word_routes, compare_decompositions, generator_spans, standard_moves,
    DEFAULT_APEX_LIMIT,
};
use cosym::{CheckReport, StructuredSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(name: &str, inst: &Instance, r: CheckReport) -> Result<(), String> {
    ensure(r.passed, || {
        format!("{}: {name} has {} violations, first {:?}", inst.name(), r.violations.len(), r.violations.first())
    })
}

fn algebra(inst: &Instance) -> HallAlgebra {
    hall_algebra(&simplex_set(&inst.monoid, inst.top, 2).unwrap()).unwrap()
}

fn relation_suites() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 4).map_err(|e| e.to_string())?;
        let e = |r: Result<CheckReport, cosym::SimplicialError>| r.map_err(|e| e.to_string());
        let reports = [
            ("simplicial", check_simplicial_relations(&x)),
            ("gamma", e(check_gamma_relations(&x))?),
            ("paracyclic", e(check_paracyclic_relations(&x))?),
            ("cyclic", e(check_cyclic(&x))?),
            ("cosymmetric", e(check_cosymmetric_relations(&x))?),
            ("stautheta", e(check_stautheta_identities(&x))?),
            ("extra_degeneracy_pullback", e(check_extra_degeneracy_pullback(&x))?),
            ("unitality", check_unitality(&x)),
            ("two_segal", check_two_segal(&x)),
            ("nn_pullbacks", check_nn_pullbacks(&x)),
        ];
        for (name, r) in reports {
            clean(name, &inst, r)?;
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{count} suites clean at N=4 in {secs:.1}s"))
}

fn counting() -> Outcome {
    let mut sizes = Vec::new();
    for k in 1..=3 {
        let inst = Instance::new(&format!("pset-union:{k}"));
        let n = simplex_set(&inst.monoid, inst.top, 2).unwrap().level_size(1);
        ensure(n == 3usize.pow(k), || format!("pset-union:{k} has |X_1| = {n}"))?;
        sizes.push(n);
    }
    Ok(format!("|X_1| = {sizes:?}"))
}

fn presentations() -> Outcome {
    let mut specs: Vec<String> = (1..=5).map(|l| format!("trunc:{l}")).collect();
    specs.extend((2..=6).map(|m| format!("zmod:{m}")));
    specs.extend((1..=3).map(|k| format!("pset-disjoint:{k}")));
    specs.extend((1..=3).map(|k| format!("pset-union:{k}")));
    for spec in &specs {
        let inst = Instance::new(spec);
        let a = algebra(&inst);
        let (p, images) = standard_presentation(&inst.kind, &inst.monoid, inst.top)
            .ok_or_else(|| format!("{spec}: no presentation"))?;
        clean(&format!("presentation {p}"), &inst, verify_presentation(&a, &p, &images))?;
        if matches!(inst.kind, MonoidKind::PsetUnion(_)) {
            clean("union identities", &inst, check_union_identities(&a, &inst.monoid, inst.top))?;
        }
    }
    Ok(format!("{} presentations verified", specs.len()))
}

fn frobenius() -> Outcome {
    let mut dets = BTreeMap::new();
    for inst in corpus() {
        let a = algebra(&inst);
        let d = a.pairing_determinant().ok_or_else(|| format!("{}: no counit", inst.name()))?;
        ensure(d.is_integer() && d != rational(0), || format!("{}: det β = {d}", inst.name()))?;
        clean("associativity", &inst, check_associativity(&a))?;
        clean("commutativity", &inst, check_commutativity(&a))?;
        dets.insert(d.to_string(), ());
    }
    Ok(format!("det β ∈ {{{}}}", dets.keys().cloned().collect::<Vec<_>>().join(", ")))
}

fn tau_has_order(x: &StructuredSet, n: usize) -> bool {
    let t = x.tau(n).unwrap();
    (0..x.level_size(n)).all(|e| (0..=n).fold(e, |acc, _| t.apply(acc)) == e)
}

fn round_trip() -> Outcome {
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 4).unwrap();
        let s = synthesize_cosymmetric(&x.paracyclic_part().unwrap(), &x.gamma_part().unwrap())
            .map_err(|e| format!("{}: {e}", inst.name()))?;
        ensure(s.set == x, || format!("{}: tables differ", inst.name()))?;
        for n in 0..=3 {
            ensure(tau_has_order(&s.set, n), || format!("{}: (τ^{n})^{} ≠ id", inst.name(), n + 1))?;
        }
    }
    Ok("all corpus tables reproduced".into())
}

fn non_nerve() -> Outcome {
    for k in 1..=3 {
        let inst = Instance::new(&format!("pset-union:{k}"));
        let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
        let level = simplex_level(&inst.monoid, inst.top, 2);
        let s = inst.top;
        let family: Vec<usize> = (0..=s)
            .map(|a| level.binary_search(&vec![a, s, s]).expect("(A,S,S) is a 2-simplex"))
            .collect();
        let groups = segal_map_collisions(&x);
        ensure(groups.iter().any(|g| family.iter().all(|w| g.contains(w))), || {
            format!("pset-union:{k}: family (A,S,S) not found among {} collision groups", groups.len())
        })?;
    }
    let mut effect = 0;
    for inst in corpus() {
        if inst.monoid.is_effect_algebra(inst.top) {
            let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
            ensure(segal_map_collisions(&x).is_empty(), || format!("{}: collision", inst.name()))?;
            effect += 1;
        }
    }
    Ok(format!("(A,S,S) family found for k=1..3; {effect} effect algebras collision-free"))
}

fn decompositions() -> Outcome {
    let mut count = 0;
    for inst in corpus() {
        let g = generator_spans(&simplex_set(&inst.monoid, inst.top, 2).unwrap()).unwrap();
        for (name, w1, w2) in standard_moves() {
            let same = compare_decompositions(&w1, &w2, &g, DEFAULT_APEX_LIMIT).map_err(|e| e.to_string())?;
            ensure(same, || format!("{}: {name} differs", inst.name()))?;
            count += 1;
        }
    }
    Ok(format!("{count} word pairs isomorphic"))
}

fn dual_route() -> Outcome {
    let mut values = Vec::new();
    for inst in corpus() {
        let x = simplex_set(&inst.monoid, inst.top, 2).unwrap();
        let a = hall_algebra(&x).unwrap();
        if a.pairing_determinant().is_none_or(|d| d == rational(0)) {
            continue;
        }
        let g = generator_spans(&x).unwrap();
        let mut row = Vec::new();
        for genus in 0..=2 {
            let r = closed_word_routes(&closed_surface_word(genus), &g, &a, DEFAULT_APEX_LIMIT)
                .map_err(|e| format!("{} g={genus}: {e}", inst.name()))?;
            ensure(r.agree(), || format!("{} g={genus}: {} vs {}", inst.name(), r.span_value, r.matrix_value))?;
            row.push(r.matrix_value.to_string());
            if genus == 1 {
                ensure(r.matrix_value == rational(a.dimension() as i64), || {
                    format!("{}: torus {} ≠ dim {}", inst.name(), r.matrix_value, a.dimension())
                })?;
            }
            if genus == 0 && inst.top != inst.monoid.identity() {
                ensure(r.matrix_value == rational(0), || format!("{}: sphere {}", inst.name(), r.matrix_value))?;
            }
        }
        values.push(format!("{}=[{}]", inst.spec, row.join(",")));
    }
    Ok(values.join(" "))
}

fn constructions() -> Outcome {
    for inst in corpus() {
        for n in 2..=3 {
            clean(
                &format!("plasmic N={n}"),
                &inst,
                plasmic_nerve_crosscheck(&inst.monoid, n).map_err(|e| e.to_string())?,
            )?;
        }
        let direct = simplex_set(&inst.monoid, inst.top, 4).unwrap();
        let adjoined = simplex_set_via_adjoin(&inst.monoid, inst.top, 4).map_err(|e| e.to_string())?;
        ensure(direct == adjoined, || format!("{}: adjoin component differs", inst.name()))?;
    }
    Ok("plasmic and adjoin routes agree on the corpus".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("relation suites", relation_suites),
        ("union edge count 3^k", counting),
        ("algebra presentations", presentations),
        ("Frobenius pairing", frobenius),
        ("cosymmetric synthesis round trip", round_trip),
        ("non-nerve witness", non_nerve),
        ("decomposition independence", decompositions),
        ("dual-route closed surfaces", dual_route),
        ("construction oracles", constructions),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
