#![allow(dead_code)]

use cosym::monoid_spec::{parse_monoid_kind, MonoidKind};
use cosym::PartialMonoid;

pub struct Instance {
    pub spec: String,
    pub kind: MonoidKind,
    pub monoid: PartialMonoid,
    pub top: usize,
}

impl Instance {
    pub fn new(spec: &str) -> Self {
        let kind = parse_monoid_kind(spec).unwrap();
        let monoid = kind.build().unwrap();
        let top = match kind {
            MonoidKind::Trunc(l) => l,
            MonoidKind::ZMod(m) => 1 % m,
            MonoidKind::PsetDisjoint(k) | MonoidKind::PsetUnion(k) => (1 << k) - 1,
            MonoidKind::Table(_) => unreachable!(),
        };
        Instance {
            spec: spec.to_string(),
            kind,
            monoid,
            top,
        }
    }

    pub fn name(&self) -> String {
        format!("{} (L={})", self.spec, self.monoid.label(self.top))
    }
}

/// trunc:1..4, zmod:2..6 with L = 1, and both power-set monoids for
/// k = 1..3 with L the full set.
pub fn corpus() -> Vec<Instance> {
    let mut specs: Vec<String> = (1..=4).map(|l| format!("trunc:{l}")).collect();
    specs.extend((2..=6).map(|m| format!("zmod:{m}")));
    specs.extend((1..=3).map(|k| format!("pset-disjoint:{k}")));
    specs.extend((1..=3).map(|k| format!("pset-union:{k}")));
    specs.iter().map(|s| Instance::new(s)).collect()
}

/// The corpus minus its largest members, for quadratic-cost tests.
pub fn small_corpus() -> Vec<Instance> {
    corpus()
        .into_iter()
        .filter(|i| !matches!(i.spec.as_str(), "pset-union:3" | "pset-disjoint:3" | "zmod:6"))
        .collect()
}
