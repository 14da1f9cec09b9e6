//! Finite sets, maps between them and spans composed by pullback.
//!
//! Elements of a [`FinSet`] are the indices `0..size`. Every construction in
//! this module enumerates its output in lexicographic order so that results
//! are reproducible bit for bit.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinSetError {
    #[error("label count {labels} does not match set size {size}")]
    LabelCount { size: usize, labels: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("image has length {got}, expected domain size {expected}")]
    ImageLength { expected: usize, got: usize },
    #[error("image entry {value} at position {position} is outside a codomain of size {size}")]
    ImageOutOfRange {
        position: usize,
        value: usize,
        size: usize,
    },
    #[error("cannot compose: codomain of size {left} does not match domain of size {right}")]
    Mismatch { left: usize, right: usize },
    #[error("square is not composable: {0}")]
    NotComposable(&'static str),
    #[error("span feet do not match")]
    FeetMismatch,
    #[error("apex of size {size} exceeds the limit {limit}")]
    ApexLimit { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, FinSetError>;

/// A finite set `{0, .., size-1}` with optional display labels.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FinSet {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn point() -> Self {
        FinSet::new(1)
    }

    pub fn empty() -> Self {
        FinSet::new(0)
    }

    pub fn labeled(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(labels.len());
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(FinSetError::DuplicateLabel(l.clone()));
            }
        }
        Ok(FinSet {
            size: labels.len(),
            labels: Some(labels.into()),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn unlabeled(&self) -> Self {
        FinSet::new(self.size)
    }

    /// Two sets are compatible when they have the same size and, if both
    /// carry labels, the same labels.
    pub fn matches(&self, other: &FinSet) -> bool {
        if self.size != other.size {
            return false;
        }
        match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    /// Cartesian product in lexicographic order: `(a, b)` has index
    /// `a * other.size + b`.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let mut out = Vec::with_capacity(self.size * other.size);
                for x in a.iter() {
                    for y in b.iter() {
                        out.push(join_labels(x, y));
                    }
                }
                Some(out.into())
            }
            _ => None,
        };
        FinSet {
            size: self.size * other.size,
            labels,
        }
    }

    /// `self^k`, with the empty power being the one-point set.
    pub fn power(&self, k: usize) -> FinSet {
        let mut out = FinSet::point();
        for _ in 0..k {
            out = out.product(self);
        }
        out
    }
}

// Joining with a flat separator keeps products associative at the label level.
fn join_labels(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ => format!("{a}⊗{b}"),
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.labels {
            Some(l) => write!(f, "FinSet{:?}", l),
            None => write!(f, "FinSet({})", self.size),
        }
    }
}

/// A function between finite sets stored as its table of values.
#[derive(Clone, PartialEq, Eq)]
pub struct FinMap {
    domain: FinSet,
    codomain: FinSet,
    image: Vec<usize>,
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinMap({} -> {}: {:?})",
            self.domain.size, self.codomain.size, self.image
        )
    }
}

impl FinMap {
    pub fn new(domain: FinSet, codomain: FinSet, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.size() {
            return Err(FinSetError::ImageLength {
                expected: domain.size(),
                got: image.len(),
            });
        }
        if let Some((position, &value)) = image
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= codomain.size())
        {
            return Err(FinSetError::ImageOutOfRange {
                position,
                value,
                size: codomain.size(),
            });
        }
        Ok(FinMap {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            domain: set.clone(),
            codomain: set.clone(),
            image: (0..set.size()).collect(),
        }
    }

    pub fn constant(domain: &FinSet, codomain: &FinSet, value: usize) -> Result<Self> {
        FinMap::new(domain.clone(), codomain.clone(), vec![value; domain.size()])
    }

    /// The unique map into the one-point set.
    pub fn to_point(domain: &FinSet) -> Self {
        FinMap {
            domain: domain.clone(),
            codomain: FinSet::point(),
            image: vec![0; domain.size()],
        }
    }

    pub fn domain(&self) -> &FinSet {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSet {
        &self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        self.image.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.size()];
        let mut count = 0;
        for &y in &self.image {
            if !std::mem::replace(&mut hit[y], true) {
                count += 1;
            }
        }
        count == self.codomain.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(FinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            image: inv,
        })
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &FinMap) -> Result<FinMap> {
        compose_maps(self, next)
    }

    /// Componentwise product map `A × C → B × D`.
    pub fn product(&self, other: &FinMap) -> FinMap {
        let cod = other.codomain.size();
        let mut image = Vec::with_capacity(self.image.len() * other.image.len());
        for &a in &self.image {
            for &b in &other.image {
                image.push(a * cod + b);
            }
        }
        FinMap {
            domain: self.domain.product(&other.domain),
            codomain: self.codomain.product(&other.codomain),
            image,
        }
    }

    /// The pairing `x ↦ (self(x), other(x))` into the product of codomains.
    pub fn pair(&self, other: &FinMap) -> Result<FinMap> {
        if self.domain.size() != other.domain.size() {
            return Err(FinSetError::Mismatch {
                left: self.domain.size(),
                right: other.domain.size(),
            });
        }
        let cod = other.codomain.size();
        Ok(FinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.product(&other.codomain),
            image: self
                .image
                .iter()
                .zip(&other.image)
                .map(|(&a, &b)| a * cod + b)
                .collect(),
        })
    }
}

/// Returns `g ∘ f`.
pub fn compose_maps(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    if !f.codomain.matches(&g.domain) {
        return Err(FinSetError::Mismatch {
            left: f.codomain.size(),
            right: g.domain.size(),
        });
    }
    Ok(FinMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        image: f.image.iter().map(|&x| g.image[x]).collect(),
    })
}

/// The canonical pullback of a cospan `X → Z ← Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub apex: FinSet,
    pub proj_x: FinMap,
    pub proj_y: FinMap,
}

/// Enumerates `{(x, y) : f(x) = g(y)}` in lexicographic order of `(x, y)`.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    pullback_limited(f, g, usize::MAX)
}

pub(crate) fn pullback_limited(f: &FinMap, g: &FinMap, limit: usize) -> Result<Pullback> {
    if !f.codomain.matches(&g.codomain) {
        return Err(FinSetError::Mismatch {
            left: f.codomain.size(),
            right: g.codomain.size(),
        });
    }
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); g.codomain.size()];
    for (y, &z) in g.image.iter().enumerate() {
        fibers[z].push(y);
    }
    let size: usize = f.image.iter().map(|&z| fibers[z].len()).sum();
    if size > limit {
        return Err(FinSetError::ApexLimit { size, limit });
    }
    let mut px = Vec::with_capacity(size);
    let mut py = Vec::with_capacity(size);
    for (x, &z) in f.image.iter().enumerate() {
        for &y in &fibers[z] {
            px.push(x);
            py.push(y);
        }
    }
    let apex = FinSet::new(size);
    Ok(Pullback {
        proj_x: FinMap {
            domain: apex.clone(),
            codomain: f.domain.clone(),
            image: px,
        },
        proj_y: FinMap {
            domain: apex.clone(),
            codomain: g.domain.clone(),
            image: py,
        },
        apex,
    })
}

/// Outcome of testing a commuting square against the pullback property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareVerdict {
    Pullback,
    /// `bottom(left(c)) != right(top(c))` for this corner element.
    DoesNotCommute { corner: usize },
    /// Two corner elements have the same image in the canonical pullback.
    NotInjective { first: usize, second: usize },
    /// A pair `(a, b)` with `bottom(a) = right(b)` and no preimage in the corner.
    NotSurjective { a: usize, b: usize },
}

impl SquareVerdict {
    pub fn is_pullback(&self) -> bool {
        matches!(self, SquareVerdict::Pullback)
    }
}

/// Classifies the square
///
/// ```text
///   C --top--> B
///   |          |
/// left       right
///   v          v
///   A -bottom-> D
/// ```
pub fn pullback_square_verdict(
    top: &FinMap,
    left: &FinMap,
    right: &FinMap,
    bottom: &FinMap,
) -> Result<SquareVerdict> {
    if top.domain.size() != left.domain.size() {
        return Err(FinSetError::NotComposable("top and left have different domains"));
    }
    if !top.codomain.matches(&right.domain) {
        return Err(FinSetError::NotComposable("top does not land in the domain of right"));
    }
    if !left.codomain.matches(&bottom.domain) {
        return Err(FinSetError::NotComposable("left does not land in the domain of bottom"));
    }
    if !right.codomain.matches(&bottom.codomain) {
        return Err(FinSetError::NotComposable("right and bottom have different codomains"));
    }
    for c in 0..top.domain.size() {
        if bottom.apply(left.apply(c)) != right.apply(top.apply(c)) {
            return Ok(SquareVerdict::DoesNotCommute { corner: c });
        }
    }
    let b_size = top.codomain.size();
    let mut seen: HashMap<usize, usize> = HashMap::with_capacity(top.domain.size());
    for c in 0..top.domain.size() {
        let key = left.apply(c) * b_size + top.apply(c);
        if let Some(&first) = seen.get(&key) {
            return Ok(SquareVerdict::NotInjective { first, second: c });
        }
        seen.insert(key, c);
    }
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); right.codomain.size()];
    for (b, &d) in right.image.iter().enumerate() {
        fibers[d].push(b);
    }
    let canonical: usize = bottom.image.iter().map(|&d| fibers[d].len()).sum();
    if canonical != seen.len() {
        for (a, &d) in bottom.image.iter().enumerate() {
            for &b in &fibers[d] {
                if !seen.contains_key(&(a * b_size + b)) {
                    return Ok(SquareVerdict::NotSurjective { a, b });
                }
            }
        }
    }
    Ok(SquareVerdict::Pullback)
}

/// True iff the square commutes and its corner is the pullback of
/// `(bottom, right)`. A square that does not commute is reported as `false`;
/// a square whose maps do not line up is an error.
pub fn is_pullback_square(
    top: &FinMap,
    left: &FinMap,
    right: &FinMap,
    bottom: &FinMap,
) -> Result<bool> {
    pullback_square_verdict(top, left, right, bottom).map(|v| v.is_pullback())
}

/// A span `left_foot ← apex → right_foot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    left_leg: FinMap,
    right_leg: FinMap,
}

/// Fiber cardinalities of a span, keyed by `(left, right)` foot elements.
pub type FiberMatrix = BTreeMap<(usize, usize), usize>;

impl Span {
    pub fn new(left_leg: FinMap, right_leg: FinMap) -> Result<Self> {
        if !left_leg.domain.matches(&right_leg.domain) {
            return Err(FinSetError::Mismatch {
                left: left_leg.domain.size(),
                right: right_leg.domain.size(),
            });
        }
        Ok(Span {
            left_leg,
            right_leg,
        })
    }

    /// The identity span `S ← S → S`.
    pub fn identity(set: &FinSet) -> Self {
        Span {
            left_leg: FinMap::identity(set),
            right_leg: FinMap::identity(set),
        }
    }

    /// The span `A ← A → B` of a function.
    pub fn from_map(f: &FinMap) -> Self {
        Span {
            left_leg: FinMap::identity(f.domain()),
            right_leg: f.clone(),
        }
    }

    pub fn apex(&self) -> &FinSet {
        self.left_leg.domain()
    }

    pub fn left_foot(&self) -> &FinSet {
        self.left_leg.codomain()
    }

    pub fn right_foot(&self) -> &FinSet {
        self.right_leg.codomain()
    }

    pub fn left_leg(&self) -> &FinMap {
        &self.left_leg
    }

    pub fn right_leg(&self) -> &FinMap {
        &self.right_leg
    }

    pub fn fiber_matrix(&self) -> FiberMatrix {
        let mut out = FiberMatrix::new();
        for x in 0..self.apex().size() {
            *out.entry((self.left_leg.apply(x), self.right_leg.apply(x)))
                .or_insert(0) += 1;
        }
        out
    }

    /// Row-major `left_foot × right_foot` array of fiber sizes.
    pub fn fiber_matrix_dense(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0; self.right_foot().size()]; self.left_foot().size()];
        for x in 0..self.apex().size() {
            out[self.left_leg.apply(x)][self.right_leg.apply(x)] += 1;
        }
        out
    }
}

/// Composite `A ← X ×_B Y → C`, apex in the pullback's lexicographic order.
pub fn compose_spans(s1: &Span, s2: &Span) -> Result<Span> {
    compose_spans_limited(s1, s2, usize::MAX)
}

/// As [`compose_spans`], failing with [`FinSetError::ApexLimit`] when the
/// composite apex would exceed `limit` elements.
pub fn compose_spans_limited(s1: &Span, s2: &Span, limit: usize) -> Result<Span> {
    if !s1.right_foot().matches(s2.left_foot()) {
        return Err(FinSetError::FeetMismatch);
    }
    let pb = pullback_limited(&s1.right_leg, &s2.left_leg, limit)?;
    Ok(Span {
        left_leg: compose_maps(&pb.proj_x, &s1.left_leg)?,
        right_leg: compose_maps(&pb.proj_y, &s2.right_leg)?,
    })
}

/// Monoidal product; feet and apex are cartesian products in lexicographic order.
pub fn tensor_spans(s1: &Span, s2: &Span) -> Span {
    Span {
        left_leg: s1.left_leg.product(&s2.left_leg),
        right_leg: s1.right_leg.product(&s2.right_leg),
    }
}

/// Decides isomorphism of spans over common feet by comparing fiber counts.
pub fn spans_isomorphic(s1: &Span, s2: &Span) -> Result<bool> {
    if !s1.left_foot().matches(s2.left_foot()) || !s1.right_foot().matches(s2.right_foot()) {
        return Err(FinSetError::FeetMismatch);
    }
    if s1.apex().size() != s2.apex().size() {
        return Ok(false);
    }
    Ok(s1.fiber_matrix() == s2.fiber_matrix())
}
