//! Truncated simplicial sets carrying paracyclic, Γ or cosymmetric structure,
//! stored as explicit tables, together with exhaustive relation checkers.
//!
//! All maps act covariantly on elements and are composed right to left, so a
//! relation such as `d_i τ = τ d_{i+1}` is checked as
//! `face(n, i)(tau(n)(x)) == tau(n-1)(face(n, i+1)(x))` for every `x ∈ X_n`.

mod relations;
mod segal;
mod synthesis;

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::{FinMap, FinSet, FinSetError};
use crate::report::CheckReport;

pub use relations::{
    check_cosymmetric_relations, check_cyclic, check_gamma_relations, check_paracyclic_relations,
    check_simplicial_relations, check_stautheta_identities,
};
pub use segal::{
    check_extra_degeneracy_pullback, check_nn_pullbacks, check_two_segal, check_unitality,
};
pub use synthesis::{synthesize_cosymmetric, Synthesized};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("truncation {0} is below the minimum of 2")]
    TruncationTooSmall(usize),
    #[error("expected {expected} levels, got {got}")]
    LevelCount { expected: usize, got: usize },
    #[error("{table} table has the wrong shape at level {n}")]
    TableShape { table: &'static str, n: usize },
    #[error("{table} map at level {n}, index {i} has the wrong domain or codomain")]
    TableType {
        table: &'static str,
        n: usize,
        i: usize,
    },
    #[error("flavor {0:?} requires a tau table")]
    MissingTau(Flavor),
    #[error("flavor {0:?} requires a theta table")]
    MissingTheta(Flavor),
    #[error("tau at level {0} is not invertible")]
    TauNotInvertible(usize),
    #[error("level {n} out of range for truncation {truncation}")]
    LevelOutOfRange { n: usize, truncation: usize },
    #[error("structured sets do not share their underlying simplicial data")]
    UnderlyingMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("relation check failed with {} violations", .0.violations.len())]
    Relations(CheckReport),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

pub type Result<T> = std::result::Result<T, SimplicialError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Plain,
    Paracyclic,
    Cyclic,
    Gamma,
    Cosymmetric,
}

impl Flavor {
    pub fn needs_tau(self) -> bool {
        matches!(self, Flavor::Paracyclic | Flavor::Cyclic | Flavor::Cosymmetric)
    }

    pub fn needs_theta(self) -> bool {
        matches!(self, Flavor::Gamma | Flavor::Cosymmetric)
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Plain => "plain",
            Flavor::Paracyclic => "paracyclic",
            Flavor::Cyclic => "cyclic",
            Flavor::Gamma => "gamma",
            Flavor::Cosymmetric => "cosymmetric",
        }
    }
}

/// Raw tables of a structured set. `face[n][i]` is `d_i^n` (empty at
/// `n = 0`), `degeneracy[n][i]` is `s_i^n` for `n < N`, `tau[n]` is `τ^n`,
/// and `theta[n][i - 1]` is `θ_i^n` for `1 ≤ i ≤ n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredParts {
    pub truncation: usize,
    pub levels: Vec<FinSet>,
    pub face: Vec<Vec<FinMap>>,
    pub degeneracy: Vec<Vec<FinMap>>,
    pub tau: Option<Vec<FinMap>>,
    pub theta: Option<Vec<Vec<FinMap>>>,
    pub flavor: Flavor,
}

/// A simplicial set truncated at level `N`, with optional τ and θ tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSet {
    parts: StructuredParts,
}

impl StructuredSet {
    /// Validates table shapes and types; for flavors with τ, each `τ^n` must
    /// be a bijection.
    pub fn from_parts(parts: StructuredParts) -> Result<Self> {
        let n_max = parts.truncation;
        if n_max < 2 {
            return Err(SimplicialError::TruncationTooSmall(n_max));
        }
        if parts.levels.len() != n_max + 1 {
            return Err(SimplicialError::LevelCount {
                expected: n_max + 1,
                got: parts.levels.len(),
            });
        }
        let lv = &parts.levels;
        let typed = |m: &FinMap, dom: &FinSet, cod: &FinSet| {
            m.domain().matches(dom) && m.codomain().matches(cod)
        };
        if parts.face.len() != n_max + 1 {
            return Err(SimplicialError::TableShape { table: "face", n: parts.face.len() });
        }
        for (n, row) in parts.face.iter().enumerate() {
            let expected = if n == 0 { 0 } else { n + 1 };
            if row.len() != expected {
                return Err(SimplicialError::TableShape { table: "face", n });
            }
            for (i, m) in row.iter().enumerate() {
                if !typed(m, &lv[n], &lv[n - 1]) {
                    return Err(SimplicialError::TableType { table: "face", n, i });
                }
            }
        }
        if parts.degeneracy.len() != n_max {
            return Err(SimplicialError::TableShape {
                table: "degeneracy",
                n: parts.degeneracy.len(),
            });
        }
        for (n, row) in parts.degeneracy.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(SimplicialError::TableShape { table: "degeneracy", n });
            }
            for (i, m) in row.iter().enumerate() {
                if !typed(m, &lv[n], &lv[n + 1]) {
                    return Err(SimplicialError::TableType { table: "degeneracy", n, i });
                }
            }
        }
        if let Some(tau) = &parts.tau {
            if tau.len() != n_max + 1 {
                return Err(SimplicialError::TableShape { table: "tau", n: tau.len() });
            }
            for (n, m) in tau.iter().enumerate() {
                if !typed(m, &lv[n], &lv[n]) {
                    return Err(SimplicialError::TableType { table: "tau", n, i: 0 });
                }
            }
        } else if parts.flavor.needs_tau() {
            return Err(SimplicialError::MissingTau(parts.flavor));
        }
        if let Some(theta) = &parts.theta {
            if theta.len() != n_max + 1 {
                return Err(SimplicialError::TableShape { table: "theta", n: theta.len() });
            }
            for (n, row) in theta.iter().enumerate() {
                if row.len() != n.saturating_sub(1) {
                    return Err(SimplicialError::TableShape { table: "theta", n });
                }
                for (i, m) in row.iter().enumerate() {
                    if !typed(m, &lv[n], &lv[n]) {
                        return Err(SimplicialError::TableType { table: "theta", n, i: i + 1 });
                    }
                }
            }
        } else if parts.flavor.needs_theta() {
            return Err(SimplicialError::MissingTheta(parts.flavor));
        }
        if parts.flavor.needs_tau() {
            if let Some(tau) = &parts.tau {
                if let Some(n) = tau.iter().position(|m| !m.is_bijective()) {
                    return Err(SimplicialError::TauNotInvertible(n));
                }
            }
        }
        Ok(StructuredSet { parts })
    }

    pub fn parts(&self) -> &StructuredParts {
        &self.parts
    }

    pub fn into_parts(self) -> StructuredParts {
        self.parts
    }

    pub fn truncation(&self) -> usize {
        self.parts.truncation
    }

    pub fn flavor(&self) -> Flavor {
        self.parts.flavor
    }

    pub fn level(&self, n: usize) -> &FinSet {
        &self.parts.levels[n]
    }

    pub fn level_size(&self, n: usize) -> usize {
        self.parts.levels[n].size()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.parts.levels.iter().map(FinSet::size).collect()
    }

    /// `d_i^n : X_n → X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &FinMap {
        &self.parts.face[n][i]
    }

    /// `s_i^n : X_n → X_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &FinMap {
        &self.parts.degeneracy[n][i]
    }

    pub fn has_tau(&self) -> bool {
        self.parts.tau.is_some()
    }

    pub fn has_theta(&self) -> bool {
        self.parts.theta.is_some()
    }

    /// `τ^n`, if present.
    pub fn tau(&self, n: usize) -> Option<&FinMap> {
        self.parts.tau.as_ref().map(|t| &t[n])
    }

    /// `θ_i^n` for `1 ≤ i ≤ n - 1`, if present.
    pub fn theta(&self, n: usize, i: usize) -> Option<&FinMap> {
        self.parts.theta.as_ref().map(|t| &t[n][i - 1])
    }

    /// The extra degeneracy `s_{n+1}^n = τ^{n+1} ∘ s_0^n : X_n → X_{n+1}`.
    pub fn extra_degeneracy(&self, n: usize) -> Result<FinMap> {
        let tau = self
            .parts
            .tau
            .as_ref()
            .ok_or(SimplicialError::MissingTau(self.flavor()))?;
        if n >= self.truncation() {
            return Err(SimplicialError::LevelOutOfRange {
                n,
                truncation: self.truncation(),
            });
        }
        Ok(self.degeneracy(n, 0).then(&tau[n + 1])?)
    }

    /// The underlying simplicial set.
    pub fn plain(&self) -> StructuredSet {
        self.with_structure(None, None, Flavor::Plain)
    }

    /// The paracyclic part: same simplicial data and τ, no θ.
    pub fn paracyclic_part(&self) -> Result<StructuredSet> {
        let tau = self
            .parts
            .tau
            .clone()
            .ok_or(SimplicialError::MissingTau(self.flavor()))?;
        Ok(self.with_structure(Some(tau), None, Flavor::Paracyclic))
    }

    /// The Γ part: same simplicial data and θ, no τ.
    pub fn gamma_part(&self) -> Result<StructuredSet> {
        let theta = self
            .parts
            .theta
            .clone()
            .ok_or(SimplicialError::MissingTheta(self.flavor()))?;
        Ok(self.with_structure(None, Some(theta), Flavor::Gamma))
    }

    fn with_structure(
        &self,
        tau: Option<Vec<FinMap>>,
        theta: Option<Vec<Vec<FinMap>>>,
        flavor: Flavor,
    ) -> StructuredSet {
        StructuredSet {
            parts: StructuredParts {
                truncation: self.parts.truncation,
                levels: self.parts.levels.clone(),
                face: self.parts.face.clone(),
                degeneracy: self.parts.degeneracy.clone(),
                tau,
                theta,
                flavor,
            },
        }
    }

    fn same_underlying(&self, other: &StructuredSet) -> bool {
        self.parts.truncation == other.parts.truncation
            && self.parts.levels == other.parts.levels
            && self.parts.face == other.parts.face
            && self.parts.degeneracy == other.parts.degeneracy
    }

    /// The sub-structured set lying over `u ∈ X_0`. Every structure map
    /// preserves components, so the restriction is again structured.
    pub fn component(&self, u: usize) -> Result<StructuredSet> {
        let n_max = self.truncation();
        if u >= self.level_size(0) {
            return Err(SimplicialError::Precondition(format!("{u} is not an element of X_0")));
        }
        // Vertex of each element: iterate d_0 down to level 0.
        let mut keep: Vec<Vec<usize>> = vec![vec![u]];
        let mut base: Vec<usize> = (0..self.level_size(0)).collect();
        for n in 1..=n_max {
            let d0 = self.face(n, 0);
            let mut vertex = Vec::with_capacity(self.level_size(n));
            for x in 0..self.level_size(n) {
                vertex.push(base[d0.apply(x)]);
            }
            keep.push((0..self.level_size(n)).filter(|&x| vertex[x] == u).collect());
            base = vertex;
        }
        let mut reindex: Vec<HashMap<usize, usize>> = Vec::with_capacity(n_max + 1);
        let mut levels = Vec::with_capacity(n_max + 1);
        for (n, k) in keep.iter().enumerate() {
            reindex.push(k.iter().enumerate().map(|(new, &old)| (old, new)).collect());
            levels.push(match self.level(n).labels() {
                Some(l) => FinSet::labeled(k.iter().map(|&x| l[x].clone()).collect())?,
                None => FinSet::new(k.len()),
            });
        }
        let restrict = |m: &FinMap, src: usize, dst: usize| -> Result<FinMap> {
            let image = keep[src]
                .iter()
                .map(|&x| {
                    reindex[dst].get(&m.apply(x)).copied().ok_or_else(|| {
                        SimplicialError::Precondition(format!(
                            "a structure map at level {src} leaves the component of {u}"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FinMap::new(levels[src].clone(), levels[dst].clone(), image)?)
        };
        let mut face = vec![Vec::new()];
        for n in 1..=n_max {
            face.push(
                (0..=n)
                    .map(|i| restrict(self.face(n, i), n, n - 1))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let degeneracy = (0..n_max)
            .map(|n| {
                (0..=n)
                    .map(|i| restrict(self.degeneracy(n, i), n, n + 1))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = match &self.parts.tau {
            Some(t) => Some(
                t.iter()
                    .enumerate()
                    .map(|(n, m)| restrict(m, n, n))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let theta = match &self.parts.theta {
            Some(t) => Some(
                t.iter()
                    .enumerate()
                    .map(|(n, row)| {
                        row.iter().map(|m| restrict(m, n, n)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        StructuredSet::from_parts(StructuredParts {
            truncation: n_max,
            levels,
            face,
            degeneracy,
            tau,
            theta,
            flavor: self.flavor(),
        })
    }
}

/// Elementwise structure map on level `n` indexed by `i`.
pub(crate) type LevelFn<'a, T> = &'a dyn Fn(usize, usize, &T) -> T;
pub(crate) type PermutationFn<'a, T> = LevelFn<'a, T>;
pub(crate) type CyclicFn<'a, T> = &'a dyn Fn(usize, &T) -> T;

/// Builds a structured set whose level `n` is a sorted list of values of
/// type `T` and whose structure maps are given elementwise.
pub(crate) struct TupleModel<'a, T> {
    pub truncation: usize,
    pub levels: Vec<Vec<T>>,
    pub label: &'a dyn Fn(&T) -> String,
    pub face: LevelFn<'a, T>,
    pub degeneracy: LevelFn<'a, T>,
    pub tau: Option<CyclicFn<'a, T>>,
    pub theta: Option<PermutationFn<'a, T>>,
    pub flavor: Flavor,
}

impl<T: Eq + Hash + Clone> TupleModel<'_, T> {
    pub fn build(self) -> Result<StructuredSet> {
        let n_max = self.truncation;
        let index: Vec<HashMap<&T, usize>> = self
            .levels
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(k, t)| (t, k)).collect())
            .collect();
        let sets = self
            .levels
            .iter()
            .map(|lv| FinSet::labeled(lv.iter().map(|t| (self.label)(t)).collect()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let table = |src: usize, dst: usize, f: &dyn Fn(&T) -> T| -> Result<FinMap> {
            let image = self.levels[src]
                .iter()
                .map(|t| {
                    let y = f(t);
                    index[dst].get(&y).copied().ok_or_else(|| {
                        SimplicialError::Precondition(format!(
                            "structure map leaves level {dst}: {}",
                            (self.label)(&y)
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FinMap::new(sets[src].clone(), sets[dst].clone(), image)?)
        };
        let mut face = vec![Vec::new()];
        for n in 1..=n_max {
            face.push(
                (0..=n)
                    .map(|i| table(n, n - 1, &|t| (self.face)(n, i, t)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let degeneracy = (0..n_max)
            .map(|n| {
                (0..=n)
                    .map(|i| table(n, n + 1, &|t| (self.degeneracy)(n, i, t)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let tau = match self.tau {
            Some(f) => Some(
                (0..=n_max)
                    .map(|n| table(n, n, &|t| f(n, t)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        let theta = match self.theta {
            Some(f) => Some(
                (0..=n_max)
                    .map(|n| {
                        (1..n)
                            .map(|i| table(n, n, &|t| f(n, i, t)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        StructuredSet::from_parts(StructuredParts {
            truncation: n_max,
            levels: sets,
            face,
            degeneracy,
            tau,
            theta,
            flavor: self.flavor,
        })
    }
}

/// The structured set with a single point at every level; every relation
/// holds trivially.
pub fn point_set(truncation: usize, flavor: Flavor) -> Result<StructuredSet> {
    let id: LevelFn<()> = &|_, _, _| ();
    let tau: CyclicFn<()> = &|_, _| ();
    TupleModel {
        truncation,
        levels: vec![vec![()]; truncation + 1],
        label: &|_| "*".to_string(),
        face: id,
        degeneracy: id,
        tau: flavor.needs_tau().then_some(tau),
        theta: flavor.needs_theta().then_some(id),
        flavor,
    }
    .build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_shapes() {
        let p = point_set(3, Flavor::Cosymmetric).unwrap();
        assert_eq!(p.level_sizes(), vec![1, 1, 1, 1]);
        assert_eq!(p.extra_degeneracy(0).unwrap().image(), &[0]);
        assert!(p.theta(3, 2).is_some());
    }

    #[test]
    fn truncation_minimum() {
        assert_eq!(
            point_set(1, Flavor::Plain).unwrap_err(),
            SimplicialError::TruncationTooSmall(1)
        );
    }

    #[test]
    fn flavors_require_tables() {
        let p = point_set(2, Flavor::Plain).unwrap();
        let mut parts = p.into_parts();
        parts.flavor = Flavor::Paracyclic;
        assert_eq!(
            StructuredSet::from_parts(parts.clone()).unwrap_err(),
            SimplicialError::MissingTau(Flavor::Paracyclic)
        );
        parts.flavor = Flavor::Gamma;
        assert_eq!(
            StructuredSet::from_parts(parts).unwrap_err(),
            SimplicialError::MissingTheta(Flavor::Gamma)
        );
    }

    #[test]
    fn extra_degeneracy_needs_tau_and_range() {
        let p = point_set(2, Flavor::Plain).unwrap();
        assert!(matches!(p.extra_degeneracy(0), Err(SimplicialError::MissingTau(_))));
        let q = point_set(2, Flavor::Paracyclic).unwrap();
        assert!(matches!(
            q.extra_degeneracy(2),
            Err(SimplicialError::LevelOutOfRange { n: 2, truncation: 2 })
        ));
    }
}
