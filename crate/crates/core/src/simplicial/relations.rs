//! Elementwise checkers for the simplicial, paracyclic, cyclic, Γ and
//! cosymmetric relation families.

use super::{Result, SimplicialError, StructuredSet};
use crate::finset::FinMap;
use crate::report::{CheckReport, Violation};

/// Evaluates both sides of a relation on every element of a level and
/// records the elements where they differ.
pub(super) struct Relations<'a> {
    pub x: &'a StructuredSet,
    pub report: CheckReport,
}

/// Applies maps in order: `chain(&[f, g], x) = g(f(x))`.
#[inline]
pub(super) fn chain(maps: &[&FinMap], x: usize) -> usize {
    maps.iter().fold(x, |acc, m| m.apply(acc))
}

impl<'a> Relations<'a> {
    pub fn new(x: &'a StructuredSet) -> Self {
        Relations {
            x,
            report: CheckReport::new(),
        }
    }

    /// Checks `lhs = rhs` on `X_n`; both paths are written in application
    /// order (first map first).
    pub fn equal(&mut self, relation: &str, n: usize, indices: &[usize], lhs: &[&FinMap], rhs: &[&FinMap]) {
        for e in 0..self.x.level_size(n) {
            if chain(lhs, e) != chain(rhs, e) {
                self.report
                    .push(Violation::new(relation, n, indices.to_vec(), e));
            }
        }
    }

    pub fn d(&self, n: usize, i: usize) -> &'a FinMap {
        self.x.face(n, i)
    }

    pub fn s(&self, n: usize, i: usize) -> &'a FinMap {
        self.x.degeneracy(n, i)
    }

    pub fn t(&self, n: usize) -> &'a FinMap {
        self.x.tau(n).expect("tau presence checked by caller")
    }

    pub fn th(&self, n: usize, i: usize) -> &'a FinMap {
        self.x.theta(n, i).expect("theta presence checked by caller")
    }

    pub fn finish(self) -> CheckReport {
        self.report.finished()
    }
}

fn require_tau(x: &StructuredSet) -> Result<()> {
    if x.has_tau() {
        Ok(())
    } else {
        Err(SimplicialError::MissingTau(x.flavor()))
    }
}

fn require_theta(x: &StructuredSet) -> Result<()> {
    if x.has_theta() {
        Ok(())
    } else {
        Err(SimplicialError::MissingTheta(x.flavor()))
    }
}

/// `d d`, `d s` and `s s` identities at every level where both sides exist.
pub fn check_simplicial_relations(x: &StructuredSet) -> CheckReport {
    let n_max = x.truncation();
    let mut r = Relations::new(x);
    // d_i^{n-1} d_j^n = d_{j-1}^{n-1} d_i^n, i < j
    for n in 2..=n_max {
        for j in 1..=n {
            for i in 0..j {
                r.equal("dd", n, &[i, j], &[r.d(n, j), r.d(n - 1, i)], &[r.d(n, i), r.d(n - 1, j - 1)]);
            }
        }
    }
    // d_i^{n+1} s_j^n on X_n
    for n in 0..n_max {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = [r.s(n, j), r.d(n + 1, i)];
                if i < j {
                    r.equal("ds", n, &[i, j], &lhs, &[r.d(n, i), r.s(n - 1, j - 1)]);
                } else if i == j || i == j + 1 {
                    r.equal("ds", n, &[i, j], &lhs, &[]);
                } else {
                    r.equal("ds", n, &[i, j], &lhs, &[r.d(n, i - 1), r.s(n - 1, j)]);
                }
            }
        }
    }
    // s_i^{n+1} s_j^n = s_{j+1}^{n+1} s_i^n, i <= j
    for n in 0..n_max.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                r.equal(
                    "ss",
                    n,
                    &[i, j],
                    &[r.s(n, j), r.s(n + 1, i)],
                    &[r.s(n, i), r.s(n + 1, j + 1)],
                );
            }
        }
    }
    r.finish()
}

/// `d τ` and `s τ` relations, including `d_n τ = d_0` and `s_n τ = τ² s_0`.
pub fn check_paracyclic_relations(x: &StructuredSet) -> Result<CheckReport> {
    require_tau(x)?;
    let n_max = x.truncation();
    let mut r = Relations::new(x);
    for n in 0..=n_max {
        if !r.t(n).is_bijective() {
            for e in 0..x.level_size(n) {
                r.report.push(Violation::new("tau_invertible", n, vec![], e));
            }
        }
    }
    for n in 1..=n_max {
        for i in 0..n {
            r.equal("d_tau", n, &[i], &[r.t(n), r.d(n, i)], &[r.d(n, i + 1), r.t(n - 1)]);
        }
        r.equal("d_tau", n, &[n], &[r.t(n), r.d(n, n)], &[r.d(n, 0)]);
    }
    for n in 0..n_max {
        for i in 0..n {
            r.equal("s_tau", n, &[i], &[r.t(n), r.s(n, i)], &[r.s(n, i + 1), r.t(n + 1)]);
        }
        r.equal(
            "s_tau",
            n,
            &[n],
            &[r.t(n), r.s(n, n)],
            &[r.s(n, 0), r.t(n + 1), r.t(n + 1)],
        );
    }
    Ok(r.finish())
}

/// `(τ^n)^{n+1} = id` for every level.
pub fn check_cyclic(x: &StructuredSet) -> Result<CheckReport> {
    require_tau(x)?;
    let mut r = Relations::new(x);
    for n in 0..=x.truncation() {
        let power = vec![r.t(n); n + 1];
        r.equal("tau_cyclic", n, &[], &power, &[]);
    }
    Ok(r.finish())
}

/// Moore relations and the mixed θ/face/degeneracy relations.
pub fn check_gamma_relations(x: &StructuredSet) -> Result<CheckReport> {
    require_theta(x)?;
    let n_max = x.truncation();
    let mut r = Relations::new(x);
    for n in 2..=n_max {
        for i in 1..n {
            r.equal("theta_square", n, &[i], &[r.th(n, i), r.th(n, i)], &[]);
        }
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (r.th(n, i), r.th(n, i + 1));
            r.equal("theta_braid", n, &[i, i + 1], &[a, b, a], &[b, a, b]);
        }
        for j in 1..n {
            for i in 1..j.saturating_sub(1) {
                let (a, b) = (r.th(n, i), r.th(n, j));
                r.equal("theta_commute", n, &[i, j], &[b, a], &[a, b]);
            }
        }
    }
    // θ_i^{n+1} s_j^n on X_n, 1 <= i <= n
    for n in 0..n_max {
        for j in 0..=n {
            for i in 1..=n {
                let lhs = [r.s(n, j), r.th(n + 1, i)];
                if i < j {
                    r.equal("theta_s", n, &[i, j], &lhs, &[r.th(n, i), r.s(n, j)]);
                } else if i == j {
                    r.equal("theta_s", n, &[i, j], &lhs, &[r.s(n, i - 1)]);
                } else if i == j + 1 {
                    r.equal("theta_s", n, &[i, j], &lhs, &[r.s(n, i)]);
                } else {
                    r.equal("theta_s", n, &[i, j], &lhs, &[r.th(n, i - 1), r.s(n, j)]);
                }
            }
        }
    }
    // θ_i^{n-1} d_j^n on X_n, 1 <= i <= n - 2
    for n in 3..=n_max {
        for j in 0..=n {
            for i in 1..=n - 2 {
                let lhs = [r.d(n, j), r.th(n - 1, i)];
                if i + 1 < j {
                    r.equal("theta_d", n, &[i, j], &lhs, &[r.th(n, i), r.d(n, j)]);
                } else if i + 1 == j {
                    r.equal(
                        "theta_d",
                        n,
                        &[i, j],
                        &lhs,
                        &[r.th(n, i), r.th(n, i + 1), r.d(n, i)],
                    );
                } else if i == j {
                    r.equal(
                        "theta_d",
                        n,
                        &[i, j],
                        &lhs,
                        &[r.th(n, i + 1), r.th(n, i), r.d(n, i + 1)],
                    );
                } else {
                    r.equal("theta_d", n, &[i, j], &lhs, &[r.th(n, i + 1), r.d(n, j)]);
                }
            }
        }
    }
    for n in 2..=n_max {
        for i in 1..n {
            r.equal("d_theta", n, &[i], &[r.th(n, i), r.d(n, i)], &[r.d(n, i)]);
        }
    }
    // d_n^n = d_0^n θ_1^n ⋯ θ_{n-1}^n
    for n in 1..=n_max {
        let mut rhs: Vec<&FinMap> = (1..n).rev().map(|i| r.th(n, i)).collect();
        rhs.push(r.d(n, 0));
        r.equal("d_last", n, &[n], &[r.d(n, n)], &rhs);
    }
    Ok(r.finish())
}

/// All simplicial, paracyclic, cyclic and Γ relations together with the
/// θ/τ compatibility `θ_i τ = τ θ_{i+1}` and `θ_{n-1} τ = τ² θ_1 ⋯ θ_{n-1}`.
pub fn check_cosymmetric_relations(x: &StructuredSet) -> Result<CheckReport> {
    require_tau(x)?;
    require_theta(x)?;
    let mut report = check_simplicial_relations(x);
    report.merge(check_paracyclic_relations(x)?);
    report.merge(check_cyclic(x)?);
    report.merge(check_gamma_relations(x)?);
    let mut r = Relations::new(x);
    for n in 2..=x.truncation() {
        for i in 1..n - 1 {
            r.equal(
                "theta_tau",
                n,
                &[i],
                &[r.t(n), r.th(n, i)],
                &[r.th(n, i + 1), r.t(n)],
            );
        }
        let mut rhs: Vec<&FinMap> = (1..n).rev().map(|i| r.th(n, i)).collect();
        rhs.push(r.t(n));
        rhs.push(r.t(n));
        r.equal("theta_tau", n, &[n - 1], &[r.t(n), r.th(n, n - 1)], &rhs);
    }
    report.merge(r.finish());
    Ok(report)
}

/// The three identity families relating the extra degeneracy to θ and τ:
///
/// 1. `θ_i s_{n+1} = s_{n+1} d_{n+1} θ_i s_{n+1}` for `1 ≤ i ≤ n`,
/// 2. `θ_i s_{n+1} = s_{n+1} θ_i` for `1 ≤ i ≤ n - 1`,
/// 3. `θ_n ⋯ θ_1 s_{n+1} = s_{n+1} τ`.
pub fn check_stautheta_identities(x: &StructuredSet) -> Result<CheckReport> {
    require_tau(x)?;
    require_theta(x)?;
    let mut r = Relations::new(x);
    let extra: Vec<FinMap> = (0..x.truncation())
        .map(|n| x.extra_degeneracy(n))
        .collect::<Result<_>>()?;
    for n in 0..x.truncation() {
        let sx = &extra[n];
        for i in 1..=n {
            let th = r.th(n + 1, i);
            let d = r.d(n + 1, n + 1);
            r.equal("stautheta_1", n, &[i], &[sx, th], &[sx, th, d, sx]);
        }
        for i in 1..n {
            r.equal("stautheta_2", n, &[i], &[sx, r.th(n + 1, i)], &[r.th(n, i), sx]);
        }
        let mut lhs: Vec<&FinMap> = vec![sx];
        lhs.extend((1..=n).map(|i| r.th(n + 1, i)));
        r.equal("stautheta_3", n, &[], &lhs, &[r.t(n), sx]);
    }
    Ok(r.finish())
}
