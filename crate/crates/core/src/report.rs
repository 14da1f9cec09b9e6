use serde::{Deserialize, Serialize};

/// One failed instance of a relation or condition.
///
/// `n` is the simplicial level the relation was evaluated at, `indices` are
/// the relation's operator indices, and `element` is the witness element of
/// the level the relation was evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub relation: String,
    pub n: usize,
    pub indices: Vec<usize>,
    pub element: usize,
}

impl Violation {
    pub fn new(relation: impl Into<String>, n: usize, indices: Vec<usize>, element: usize) -> Self {
        Violation {
            relation: relation.into(),
            n,
            indices,
            element,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport::new()
    }
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport {
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        CheckReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.passed = false;
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.violations.extend(other.violations);
        self.finish();
    }

    /// Sorts by relation, level, indices, element and recomputes `passed`.
    pub fn finish(&mut self) {
        self.violations.sort();
        self.violations.dedup();
        self.passed = self.violations.is_empty();
    }

    pub fn finished(mut self) -> Self {
        self.finish();
        self
    }

    pub fn has_relation(&self, relation: &str) -> bool {
        self.violations.iter().any(|v| v.relation == relation)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_and_passed_flag() {
        let mut r = CheckReport::new();
        assert!(r.passed);
        r.push(Violation::new("b", 1, vec![0], 3));
        r.push(Violation::new("a", 2, vec![1], 0));
        r.push(Violation::new("a", 1, vec![1], 5));
        r.finish();
        assert!(!r.passed);
        let rel: Vec<_> = r.violations.iter().map(|v| (v.relation.as_str(), v.n)).collect();
        assert_eq!(rel, vec![("a", 1), ("a", 2), ("b", 1)]);
    }

    #[test]
    fn json_field_order_is_stable() {
        let r = CheckReport::from_violations(vec![Violation::new("dd", 2, vec![0, 1], 4)]);
        assert_eq!(
            r.to_json(),
            r#"{"passed":false,"violations":[{"relation":"dd","n":2,"indices":[0,1],"element":4}]}"#
        );
    }
}
