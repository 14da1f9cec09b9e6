use super::{
    check_cosymmetric_relations, check_two_segal, Flavor, Result, SimplicialError, StructuredParts,
    StructuredSet,
};
use crate::report::CheckReport;

/// A cosymmetric set assembled from paracyclic and Γ data, with the relation
/// report that certified it.
#[derive(Debug, Clone)]
pub struct Synthesized {
    pub set: StructuredSet,
    pub report: CheckReport,
}

/// Combines the τ tables of `paracyclic` with the θ tables of `gamma` over a
/// shared 2-Segal simplicial set into a cosymmetric set.
///
/// The result is returned only if every cosymmetric relation holds; when the
/// inputs are genuinely paracyclic and Γ over a 2-Segal set this is
/// guaranteed, so a failure means the input data was not what it claimed.
pub fn synthesize_cosymmetric(
    paracyclic: &StructuredSet,
    gamma: &StructuredSet,
) -> Result<Synthesized> {
    let tau = paracyclic
        .parts()
        .tau
        .clone()
        .ok_or(SimplicialError::MissingTau(paracyclic.flavor()))?;
    let theta = gamma
        .parts()
        .theta
        .clone()
        .ok_or(SimplicialError::MissingTheta(gamma.flavor()))?;
    if !paracyclic.same_underlying(gamma) {
        return Err(SimplicialError::UnderlyingMismatch);
    }
    let segal = check_two_segal(paracyclic);
    if !segal.passed {
        return Err(SimplicialError::Precondition(format!(
            "underlying simplicial set is not 2-Segal ({} violations)",
            segal.violations.len()
        )));
    }
    let base = paracyclic.parts();
    let set = StructuredSet::from_parts(StructuredParts {
        truncation: base.truncation,
        levels: base.levels.clone(),
        face: base.face.clone(),
        degeneracy: base.degeneracy.clone(),
        tau: Some(tau),
        theta: Some(theta),
        flavor: Flavor::Cosymmetric,
    })?;
    let report = check_cosymmetric_relations(&set)?;
    if !report.passed {
        return Err(SimplicialError::Relations(report));
    }
    Ok(Synthesized { set, report })
}
