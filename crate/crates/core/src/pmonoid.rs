//! Finite partial monoids and the built-in example families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::{FinSet, FinSetError};
use crate::report::{CheckReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("operation table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("operation table entry {value} at ({x}, {y}) is outside the carrier")]
    EntryOutOfRange { x: usize, y: usize, value: usize },
    #[error("identity {0} is outside the carrier")]
    IdentityOutOfRange(usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("axioms fail: {}", describe(.0))]
    Axioms(CheckReport),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

fn describe(r: &CheckReport) -> String {
    match r.violations.first() {
        Some(v) => format!("{} at {:?} ({} total)", v.relation, v.indices, r.violations.len()),
        None => "none".into(),
    }
}

pub type Result<T> = std::result::Result<T, MonoidError>;

/// A finite set with a partially defined binary operation. `op[x * size + y]`
/// is `None` where `x · y` is undefined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    carrier: FinSet,
    op: Vec<Option<usize>>,
    identity: usize,
}

/// Result of searching for `y` with `x · y = L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orthocomplement {
    Unique(usize),
    Missing,
    Multiple(Vec<usize>),
}

impl Orthocomplement {
    pub fn unique(&self) -> Option<usize> {
        match self {
            Orthocomplement::Unique(y) => Some(*y),
            _ => None,
        }
    }
}

impl PartialMonoid {
    /// Checks the table's shape only; use [`PartialMonoid::validate_axioms`]
    /// or [`PartialMonoid::validated`] for the monoid laws.
    pub fn new(carrier: FinSet, op: Vec<Option<usize>>, identity: usize) -> Result<Self> {
        let n = carrier.size();
        if op.len() != n * n {
            return Err(MonoidError::TableSize {
                expected: n * n,
                got: op.len(),
            });
        }
        for (k, v) in op.iter().enumerate() {
            if let Some(v) = *v {
                if v >= n {
                    return Err(MonoidError::EntryOutOfRange {
                        x: k / n,
                        y: k % n,
                        value: v,
                    });
                }
            }
        }
        if identity >= n {
            return Err(MonoidError::IdentityOutOfRange(identity));
        }
        Ok(PartialMonoid {
            carrier,
            op,
            identity,
        })
    }

    /// As [`PartialMonoid::new`], but rejects tables failing the axioms.
    pub fn validated(carrier: FinSet, op: Vec<Option<usize>>, identity: usize) -> Result<Self> {
        let m = PartialMonoid::new(carrier, op, identity)?;
        let report = m.validate_axioms();
        if report.passed {
            Ok(m)
        } else {
            Err(MonoidError::Axioms(report))
        }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, x: usize) -> String {
        self.carrier.label(x)
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.carrier.index_of(label)
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> Option<usize> {
        self.op[x * self.size() + y]
    }

    pub fn table(&self) -> &[Option<usize>] {
        &self.op
    }

    /// Product of a sequence, `e` for the empty sequence.
    pub fn product<I: IntoIterator<Item = usize>>(&self, xs: I) -> Option<usize> {
        xs.into_iter()
            .try_fold(self.identity, |acc, x| self.op(acc, x))
    }

    /// Identity law for every element and both-or-neither associativity for
    /// every triple.
    pub fn validate_axioms(&self) -> CheckReport {
        let n = self.size();
        let e = self.identity;
        let mut report = CheckReport::new();
        for x in 0..n {
            if self.op(e, x) != Some(x) {
                report.push(Violation::new("identity_left", 1, vec![x], x));
            }
            if self.op(x, e) != Some(x) {
                report.push(Violation::new("identity_right", 1, vec![x], x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    let left = xy.and_then(|p| self.op(p, z));
                    let right = self.op(y, z).and_then(|q| self.op(x, q));
                    if left != right {
                        report.push(Violation::new("associativity", 3, vec![x, y, z], x));
                    }
                }
            }
        }
        report.finished()
    }

    /// A pair with `x · y ≠ y · x` (both-or-neither), if any.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.op(x, y) != self.op(y, x))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// For each `x`, the elements `y` with `x · y = top`.
    pub fn orthocomplement(&self, top: usize) -> Vec<Orthocomplement> {
        (0..self.size())
            .map(|x| {
                let ys: Vec<usize> = (0..self.size())
                    .filter(|&y| self.op(x, y) == Some(top))
                    .collect();
                match ys.len() {
                    0 => Orthocomplement::Missing,
                    1 => Orthocomplement::Unique(ys[0]),
                    _ => Orthocomplement::Multiple(ys),
                }
            })
            .collect()
    }

    /// Every element has exactly one complement relative to `top`.
    pub fn has_orthocomplement_property(&self, top: usize) -> bool {
        self.orthocomplement(top)
            .iter()
            .all(|c| matches!(c, Orthocomplement::Unique(_)))
    }

    /// The orthocomplement map `x ↦ x^⊥`, when total and unique.
    pub fn orthocomplement_map(&self, top: usize) -> Option<Vec<usize>> {
        self.orthocomplement(top)
            .iter()
            .map(Orthocomplement::unique)
            .collect()
    }

    /// Commutative, unique orthocomplements relative to `top`, and the
    /// zero-one law: `x · top` defined implies `x = e`.
    pub fn is_effect_algebra(&self, top: usize) -> bool {
        self.is_commutative()
            && self.has_orthocomplement_property(top)
            && (0..self.size()).all(|x| self.op(x, top).is_none() || x == self.identity)
    }

    /// The JSON table form `{size, identity, op, labels}`.
    pub fn to_table(&self) -> MonoidTable {
        let n = self.size();
        MonoidTable {
            size: n,
            identity: self.identity,
            op: (0..n).map(|x| (0..n).map(|y| self.op(x, y)).collect()).collect(),
            labels: self.carrier.labels().map(<[String]>::to_vec),
        }
    }

    pub fn from_table(table: &MonoidTable) -> Result<Self> {
        let n = table.size;
        if table.op.len() != n || table.op.iter().any(|row| row.len() != n) {
            return Err(MonoidError::TableSize {
                expected: n * n,
                got: table.op.iter().map(Vec::len).sum(),
            });
        }
        let carrier = match &table.labels {
            Some(l) if l.len() != n => {
                return Err(FinSetError::LabelCount {
                    size: n,
                    labels: l.len(),
                }
                .into())
            }
            Some(l) => FinSet::labeled(l.clone())?,
            None => FinSet::labeled((0..n).map(|x| x.to_string()).collect())?,
        };
        PartialMonoid::validated(carrier, table.op.concat(), table.identity)
    }
}

/// Serialized operation table; `null` entries are undefined products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidTable {
    pub size: usize,
    pub identity: usize,
    pub op: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn from_fn(labels: Vec<String>, identity: usize, f: impl Fn(usize, usize) -> Option<usize>) -> PartialMonoid {
    let n = labels.len();
    let op = (0..n * n).map(|k| f(k / n, k % n)).collect();
    PartialMonoid::validated(FinSet::labeled(labels).expect("distinct labels"), op, identity)
        .expect("built-in constructions satisfy the axioms")
}

/// Largest power-set exponent accepted by the constructors.
pub const MAX_POWERSET: usize = 12;

/// `{0, .., top}` with addition defined when the sum is at most `top`.
pub fn make_trunc_add(top: usize) -> Result<PartialMonoid> {
    if top > 4096 {
        return Err(MonoidError::Parameter(format!("truncated addition bound {top} is too large")));
    }
    let labels = (0..=top).map(|x| x.to_string()).collect();
    Ok(from_fn(labels, 0, |x, y| (x + y <= top).then_some(x + y)))
}

/// `Z/m` under addition.
pub fn make_cyclic_group(m: usize) -> Result<PartialMonoid> {
    if m == 0 || m > 4096 {
        return Err(MonoidError::Parameter(format!("cyclic group order must be in 1..=4096, got {m}")));
    }
    let labels = (0..m).map(|x| x.to_string()).collect();
    Ok(from_fn(labels, 0, |x, y| Some((x + y) % m)))
}

/// Renders a bitmask over the given element names as `{a,c}`.
pub fn subset_label(mask: usize, names: &[String]) -> String {
    let parts: Vec<&str> = (0..names.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| names[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn check_power(k: usize) -> Result<()> {
    if k > MAX_POWERSET {
        Err(MonoidError::Parameter(format!(
            "power set exponent must be at most {MAX_POWERSET}, got {k}"
        )))
    } else {
        Ok(())
    }
}

/// Subsets of a `k`-letter set under disjoint union.
pub fn make_powerset_disjoint(k: usize) -> Result<PartialMonoid> {
    check_power(k)?;
    let names = letters(k);
    let labels = (0..1usize << k).map(|m| subset_label(m, &names)).collect();
    Ok(from_fn(labels, 0, |a, b| (a & b == 0).then_some(a | b)))
}

/// Subsets of a `k`-letter set under ordinary union (a total monoid).
pub fn make_powerset_union(k: usize) -> Result<PartialMonoid> {
    check_power(k)?;
    let names = letters(k);
    let labels = (0..1usize << k).map(|m| subset_label(m, &names)).collect();
    Ok(from_fn(labels, 0, |a, b| Some(a | b)))
}

/// `P({1, .., n})` under disjoint union, labeled with the numbers `1..=n`.
pub fn make_powerset_monoid(n: usize) -> Result<PartialMonoid> {
    check_power(n)?;
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let labels = (0..1usize << n).map(|m| subset_label(m, &names)).collect();
    Ok(from_fn(labels, 0, |a, b| (a & b == 0).then_some(a | b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid_and_commutative() {
        let all = [
            make_trunc_add(0).unwrap(),
            make_trunc_add(3).unwrap(),
            make_cyclic_group(5).unwrap(),
            make_powerset_disjoint(2).unwrap(),
            make_powerset_union(2).unwrap(),
            make_powerset_monoid(3).unwrap(),
        ];
        for m in &all {
            assert!(m.validate_axioms().passed);
            assert!(m.is_commutative());
        }
        let sizes: Vec<_> = all.iter().map(PartialMonoid::size).collect();
        assert_eq!(sizes, vec![1, 4, 5, 4, 4, 8]);
    }

    #[test]
    fn constructor_parameters() {
        assert!(make_cyclic_group(0).is_err());
        assert!(make_powerset_union(MAX_POWERSET + 1).is_err());
    }

    #[test]
    fn disjoint_union_table() {
        let m = make_powerset_disjoint(2).unwrap();
        let a = m.element("{a}").unwrap();
        let b = m.element("{b}").unwrap();
        let ab = m.element("{a,b}").unwrap();
        assert_eq!(m.op(a, b), Some(ab));
        assert_eq!(m.op(a, a), None);
        assert_eq!(m.label(m.identity()), "{}");
    }

    #[test]
    fn union_is_idempotent() {
        let m = make_powerset_union(1).unwrap();
        let a = m.element("{a}").unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.op(a, a), Some(a));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // 0 = e, 1 with 1·1 = 2 and 1·2 undefined, 2·1 defined.
        let op = vec![
            Some(0), Some(1), Some(2),
            Some(1), Some(2), None,
            Some(2), Some(2), None,
        ];
        let m = PartialMonoid::new(FinSet::new(3), op, 0).unwrap();
        let r = m.validate_axioms();
        assert!(!r.passed);
        assert!(r
            .violations
            .iter()
            .any(|v| v.relation == "associativity" && v.indices == vec![1, 1, 1]));
    }

    #[test]
    fn left_zero_table_is_not_commutative() {
        // e = 0; 1 and 2 are left zeros: x·y = x for x ∈ {1, 2}.
        let op = vec![
            Some(0), Some(1), Some(2),
            Some(1), Some(1), Some(1),
            Some(2), Some(2), Some(2),
        ];
        let m = PartialMonoid::validated(FinSet::new(3), op, 0).unwrap();
        assert_eq!(m.commutativity_witness(), Some((1, 2)));
        assert!(!m.is_commutative());
    }

    #[test]
    fn orthocomplements() {
        let z6 = make_cyclic_group(6).unwrap();
        let oc = z6.orthocomplement_map(2).unwrap();
        assert_eq!(oc, (0..6).map(|x| (8 - x) % 6).collect::<Vec<_>>());

        let t = make_trunc_add(4).unwrap();
        assert_eq!(t.orthocomplement_map(4).unwrap(), vec![4, 3, 2, 1, 0]);

        let u = make_powerset_union(1).unwrap();
        let oc = u.orthocomplement(1);
        assert_eq!(oc[1], Orthocomplement::Multiple(vec![0, 1]));
        assert_eq!(oc[0], Orthocomplement::Unique(1));
    }

    #[test]
    fn orthocomplement_property() {
        for m in 1..6 {
            let g = make_cyclic_group(m).unwrap();
            assert!((0..m).all(|l| g.has_orthocomplement_property(l)));
        }
        let d = make_powerset_disjoint(3).unwrap();
        assert!(d.has_orthocomplement_property(7));
        let u = make_powerset_union(2).unwrap();
        assert!(!u.has_orthocomplement_property(3));
        let t = make_trunc_add(3).unwrap();
        assert_eq!(t.orthocomplement(2)[3], Orthocomplement::Missing);
    }

    #[test]
    fn effect_algebra_classification() {
        for l in 1..5 {
            assert!(make_trunc_add(l).unwrap().is_effect_algebra(l));
        }
        for k in 0..4 {
            assert!(make_powerset_disjoint(k).unwrap().is_effect_algebra((1 << k) - 1));
        }
        for m in 2..7 {
            let g = make_cyclic_group(m).unwrap();
            assert!((0..m).all(|l| !g.is_effect_algebra(l)));
        }
        for k in 1..4 {
            assert!(!make_powerset_union(k).unwrap().is_effect_algebra((1 << k) - 1));
        }
        assert!(make_trunc_add(0).unwrap().is_effect_algebra(0));
    }

    #[test]
    fn defined_products_match_the_examples() {
        let t = make_trunc_add(3).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(t.op(x, y).is_some(), x + y <= 3);
            }
        }
        let d = make_powerset_disjoint(3).unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(d.op(x, y).is_some(), x & y == 0);
            }
        }
    }

    #[test]
    fn table_round_trip() {
        let m = make_powerset_disjoint(2).unwrap();
        let json = serde_json::to_string(&m.to_table()).unwrap();
        let back: MonoidTable = serde_json::from_str(&json).unwrap();
        assert_eq!(PartialMonoid::from_table(&back).unwrap(), m);
    }
}
