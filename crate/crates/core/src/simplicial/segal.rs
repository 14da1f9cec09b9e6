//! Pullback conditions: 2-Segal squares, the `(d_i, d_j)` squares, the
//! unitors, and the extra-degeneracy squares of a paracyclic 2-Segal set.

use super::{Result, SimplicialError, StructuredSet};
use crate::finset::{pullback_square_verdict, FinMap, SquareVerdict};
use crate::report::{CheckReport, Violation};

#[allow(clippy::too_many_arguments)]
fn square(
    report: &mut CheckReport,
    relation: &str,
    n: usize,
    indices: &[usize],
    top: &FinMap,
    left: &FinMap,
    right: &FinMap,
    bottom: &FinMap,
) {
    let verdict = pullback_square_verdict(top, left, right, bottom)
        .expect("structure maps of a validated set line up");
    let element = match verdict {
        SquareVerdict::Pullback => return,
        SquareVerdict::DoesNotCommute { corner } => corner,
        SquareVerdict::NotInjective { second, .. } => second,
        // Not surjective: report the missing pair as an index into the
        // canonical pullback's ambient product `A × B`.
        SquareVerdict::NotSurjective { a, b } => a * top.codomain().size() + b,
    };
    let kind = match verdict {
        SquareVerdict::DoesNotCommute { .. } => "commute",
        SquareVerdict::NotInjective { .. } => "injective",
        _ => "surjective",
    };
    report.push(Violation::new(format!("{relation}:{kind}"), n, indices.to_vec(), element));
}

/// For `0 < i < n` and `n + 1 ≤ N`, the squares
/// `(top d_0, left d_{i+1}, right d_i, bottom d_0)` and
/// `(top d_{n+1}, left d_i, right d_i, bottom d_n)` out of `X_{n+1}` are
/// pullbacks. A pass means "2-Segal up to the truncation".
pub fn check_two_segal(x: &StructuredSet) -> CheckReport {
    let mut report = CheckReport::new();
    for n in 2..x.truncation() {
        for i in 1..n {
            square(
                &mut report,
                "two_segal_d0",
                n,
                &[i],
                x.face(n + 1, 0),
                x.face(n + 1, i + 1),
                x.face(n, i),
                x.face(n, 0),
            );
            square(
                &mut report,
                "two_segal_dlast",
                n,
                &[i],
                x.face(n + 1, n + 1),
                x.face(n + 1, i),
                x.face(n, i),
                x.face(n, n),
            );
        }
    }
    report.finished()
}

/// The squares `(top d_i, left d_{j+1}, right d_j, bottom d_i)` for
/// `0 ≤ i < j < n` or `0 < i < j ≤ n`, with `n + 1 ≤ N`.
pub fn check_nn_pullbacks(x: &StructuredSet) -> CheckReport {
    let mut report = CheckReport::new();
    for n in 2..x.truncation() {
        for j in 1..=n {
            for i in 0..j {
                if (j < n) || i > 0 {
                    square(
                        &mut report,
                        "nn_pullback",
                        n,
                        &[i, j],
                        x.face(n + 1, i),
                        x.face(n + 1, j + 1),
                        x.face(n, j),
                        x.face(n, i),
                    );
                }
            }
        }
    }
    report.finished()
}

/// `(d_1, s_0): X_1 → X_0 ×_{s_0,d_2} X_2` and
/// `(s_1, d_0): X_1 → X_2 ×_{d_0,s_0} X_0` are bijections.
pub fn check_unitality(x: &StructuredSet) -> CheckReport {
    let mut report = CheckReport::new();
    square(
        &mut report,
        "unitor_left",
        1,
        &[],
        x.degeneracy(1, 0),
        x.face(1, 1),
        x.face(2, 2),
        x.degeneracy(0, 0),
    );
    square(
        &mut report,
        "unitor_right",
        1,
        &[],
        x.degeneracy(1, 1),
        x.face(1, 0),
        x.face(2, 0),
        x.degeneracy(0, 0),
    );
    report.finished()
}

/// The squares `(top s_{n+1}, left d_i, right d_i, bottom s_n)` for
/// `1 ≤ i ≤ n`, `n + 1 ≤ N`, where `s_{n+1}` and `s_n` are extra
/// degeneracies.
pub fn check_extra_degeneracy_pullback(x: &StructuredSet) -> Result<CheckReport> {
    if !x.has_tau() {
        return Err(SimplicialError::MissingTau(x.flavor()));
    }
    let mut report = CheckReport::new();
    for n in 1..x.truncation() {
        let top = x.extra_degeneracy(n)?;
        let bottom = x.extra_degeneracy(n - 1)?;
        for i in 1..=n {
            square(
                &mut report,
                "extra_degeneracy_pullback",
                n,
                &[i],
                &top,
                x.face(n, i),
                x.face(n + 1, i),
                &bottom,
            );
        }
    }
    Ok(report.finished())
}
