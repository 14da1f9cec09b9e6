//! The full verification suite for the `L`-simplex set of a partial monoid.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::constructions::{
    plasmic_nerve_crosscheck, segal_map_collisions, simplex_set, simplex_set_via_adjoin,
    simplex_to_nerve_morphism, ConstructionError,
};
use crate::export::{report_json, to_pretty};
use crate::finset::FinMap;
use crate::hall::{
    check_associativity, check_commutativity, check_frobenius, check_union_identities, check_unit,
    hall_algebra, standard_presentation, verify_presentation, HallAlgebra, HallError,
};
use crate::monoid_spec::{MonoidKind, SpecError};
use crate::pmonoid::PartialMonoid;
use crate::report::{CheckReport, Violation};
use crate::simplicial::{
    check_cosymmetric_relations, check_cyclic, check_extra_degeneracy_pullback, check_gamma_relations,
    check_nn_pullbacks, check_paracyclic_relations, check_simplicial_relations, check_stautheta_identities,
    check_two_segal, check_unitality, synthesize_cosymmetric, SimplicialError, StructuredSet,
};

/// Largest truncation at which the plasmic comparison is run.
pub const PLASMIC_MAX_TRUNCATION: usize = 3;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("no element labelled {0:?}")]
    UnknownElement(String),
    #[error("the suite needs truncation at least 2, got {0}")]
    Truncation(usize),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Hall(#[from] HallError),
}

/// Looks an element up by its exact label.
pub fn resolve_element(m: &PartialMonoid, label: &str) -> Result<usize, SuiteError> {
    m.element(label).ok_or_else(|| SuiteError::UnknownElement(label.to_string()))
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub set: StructuredSet,
    pub algebra: HallAlgebra,
    pub checks: BTreeMap<String, CheckReport>,
    pub json: Value,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|r| r.passed)
    }

    pub fn to_json_string(&self) -> String {
        to_pretty(&self.json)
    }
}

/// Round trip through separate paracyclic and Γ data.
pub fn synthesis_round_trip(x: &StructuredSet) -> Result<CheckReport, SuiteError> {
    match synthesize_cosymmetric(&x.paracyclic_part()?, &x.gamma_part()?) {
        Ok(s) if &s.set == x => Ok(s.report),
        Ok(_) => Ok(CheckReport::from_violations(vec![Violation::new("synthesis_round_trip", 0, vec![], 0)])),
        Err(SimplicialError::Relations(r)) => Ok(r),
        Err(e) => Err(e.into()),
    }
}

/// Levelwise equality of the direct construction with the component of the
/// basepoint-adjoined nerve.
pub fn adjoin_comparison(m: &PartialMonoid, top: usize, x: &StructuredSet) -> Result<CheckReport, SuiteError> {
    let y = simplex_set_via_adjoin(m, top, x.truncation())?;
    let mut report = CheckReport::new();
    for n in 0..=x.truncation() {
        let (a, b) = (x.parts(), y.parts());
        let same = a.levels[n] == b.levels[n]
            && a.face[n] == b.face[n]
            && a.degeneracy.get(n) == b.degeneracy.get(n)
            && a.tau.as_ref().map(|t| &t[n]) == b.tau.as_ref().map(|t| &t[n])
            && a.theta.as_ref().map(|t| &t[n]) == b.theta.as_ref().map(|t| &t[n]);
        if !same {
            report.push(Violation::new("adjoin_component", n, vec![], 0));
        }
    }
    Ok(report.finished())
}

fn labels_of(x: &StructuredSet, n: usize, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&e| x.level(n).label(e)).collect()
}

/// Builds the `L`-simplex set and runs every relation, pullback, synthesis,
/// construction-equivalence and Hall-algebra check on it.
pub fn run_check_suite(
    kind: Option<&MonoidKind>,
    m: &PartialMonoid,
    top: usize,
    truncation: usize,
) -> Result<SuiteOutcome, SuiteError> {
    if truncation < 2 {
        return Err(SuiteError::Truncation(truncation));
    }
    let x = simplex_set(m, top, truncation)?;
    let mut checks = BTreeMap::new();
    checks.insert("simplicial_relations".to_string(), check_simplicial_relations(&x));
    checks.insert("paracyclic_relations".into(), check_paracyclic_relations(&x)?);
    checks.insert("cyclic".into(), check_cyclic(&x)?);
    checks.insert("gamma_relations".into(), check_gamma_relations(&x)?);
    checks.insert("cosymmetric_relations".into(), check_cosymmetric_relations(&x)?);
    checks.insert("stautheta_identities".into(), check_stautheta_identities(&x)?);
    checks.insert("extra_degeneracy_pullback".into(), check_extra_degeneracy_pullback(&x)?);
    checks.insert("unitality".into(), check_unitality(&x));
    checks.insert("two_segal".into(), check_two_segal(&x));
    checks.insert("nn_pullbacks".into(), check_nn_pullbacks(&x));
    checks.insert("synthesis_round_trip".into(), synthesis_round_trip(&x)?);
    checks.insert("adjoin_component".into(), adjoin_comparison(m, top, &x)?);
    checks.insert(
        "plasmic_crosscheck".into(),
        plasmic_nerve_crosscheck(m, truncation.min(PLASMIC_MAX_TRUNCATION))?,
    );
    let to_nerve = match simplex_to_nerve_morphism(m, top, truncation) {
        Ok(maps) => {
            checks.insert("simplex_to_nerve".into(), CheckReport::new());
            Some(maps)
        }
        Err(ConstructionError::Postcondition(r)) => {
            checks.insert("simplex_to_nerve".into(), r);
            None
        }
        Err(e) => return Err(e.into()),
    };

    let algebra = hall_algebra(&x)?;
    checks.insert("hall_associativity".into(), check_associativity(&algebra));
    checks.insert("hall_commutativity".into(), check_commutativity(&algebra));
    checks.insert("hall_unit".into(), check_unit(&algebra));
    checks.insert("hall_frobenius".into(), check_frobenius(&algebra));
    let presentation = kind.and_then(|k| standard_presentation(k, m, top));
    if let Some((p, images)) = &presentation {
        checks.insert("hall_presentation".into(), verify_presentation(&algebra, p, images));
    }
    if matches!(kind, Some(MonoidKind::PsetUnion(_))) {
        checks.insert("hall_union_identities".into(), check_union_identities(&algebra, m, top));
    }

    let collisions = segal_map_collisions(&x);
    let witness = json!({
        "collision_groups": collisions.len(),
        "is_nerve_like": collisions.is_empty(),
        "example": collisions.first().map(|g| labels_of(&x, 2, g)),
    });
    let nerve_info = to_nerve.as_ref().map(|maps| {
        json!({
            "injective": maps.iter().all(FinMap::is_injective),
            "bijective": maps.iter().all(FinMap::is_bijective),
        })
    });
    let passed = checks.values().all(|r| r.passed);
    let json = json!({
        "monoid": kind.map(|k| k.to_string()),
        "L": m.label(top),
        "level": truncation,
        "passed": passed,
        "level_sizes": x.level_sizes(),
        "effect_algebra": m.is_effect_algebra(top),
        "orthocomplements": m.has_orthocomplement_property(top),
        "presentation": presentation.as_ref().map(|(p, _)| p.to_string()),
        "algebra": {
            "dimension": algebra.dimension(),
            "pairing_determinant": algebra.pairing_determinant().map(|d| d.to_string()),
        },
        "simplex_to_nerve": nerve_info,
        "non_nerve_witness": witness,
        "checks": checks.iter().map(|(k, r)| (k.clone(), report_json(r))).collect::<serde_json::Map<_, _>>(),
    });
    Ok(SuiteOutcome {
        set: x,
        algebra,
        checks,
        json,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid_spec::parse_monoid_kind;

    #[test]
    fn small_suites_pass() {
        for (spec, label) in [("trunc:2", "2"), ("pset-union:1", "{a}"), ("zmod:3", "1")] {
            let kind = parse_monoid_kind(spec).unwrap();
            let m = kind.build().unwrap();
            let top = resolve_element(&m, label).unwrap();
            let out = run_check_suite(Some(&kind), &m, top, 3).unwrap();
            let failed: Vec<_> = out.checks.iter().filter(|(_, r)| !r.passed).map(|(k, _)| k).collect();
            assert!(failed.is_empty(), "{spec}: {failed:?}");
        }
    }

    #[test]
    fn union_report_has_witness() {
        let kind = parse_monoid_kind("pset-union:1").unwrap();
        let m = kind.build().unwrap();
        let out = run_check_suite(Some(&kind), &m, 1, 2).unwrap();
        assert_eq!(out.json["non_nerve_witness"]["is_nerve_like"], false);
        assert!(matches!(resolve_element(&m, "{b}"), Err(SuiteError::UnknownElement(_))));
        assert!(matches!(run_check_suite(None, &m, 1, 1), Err(SuiteError::Truncation(1))));
    }
}
