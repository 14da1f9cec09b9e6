//! Nerves of partial monoids, the basepoint-adjoining functor, `L`-simplex
//! sets, the simplex-to-nerve comparison, the cyclic structure induced on a
//! nerve by orthocomplements, and the plasmic description of the nerve.

use std::collections::HashMap;

use thiserror::Error;

use crate::finset::{FinMap, FinSet};
use crate::pmonoid::PartialMonoid;
use crate::report::{CheckReport, Violation};
use crate::simplicial::{
    Flavor, SimplicialError, StructuredParts, StructuredSet, PermutationFn, TupleModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("monoid is not commutative: witness ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("element {0} is outside the carrier")]
    ElementOutOfRange(usize),
    #[error("monoid lacks unique orthocomplements relative to {0}")]
    NoOrthocomplement(usize),
    #[error("product of the fiber over {0} is undefined")]
    ProductUndefined(usize),
    #[error("invalid Φ morphism: {0}")]
    BadMorphism(String),
    #[error("input must be a Γ-set at truncation at least 3")]
    NotGamma,
    #[error("postcondition failed with {} violations", .0.violations.len())]
    Postcondition(CheckReport),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

pub type Tuple = Vec<usize>;

fn require_commutative(m: &PartialMonoid) -> Result<()> {
    match m.commutativity_witness() {
        Some((x, y)) => Err(ConstructionError::NotCommutative(x, y)),
        None => Ok(()),
    }
}

fn require_element(m: &PartialMonoid, x: usize) -> Result<()> {
    if x < m.size() {
        Ok(())
    } else {
        Err(ConstructionError::ElementOutOfRange(x))
    }
}

fn tuple_label(m: &PartialMonoid, t: &Tuple) -> String {
    let parts: Vec<String> = t.iter().map(|&x| m.label(x)).collect();
    format!("({})", parts.join(","))
}

/// All tuples of length `len` whose running product stays defined, in
/// lexicographic order, together with that product.
fn composable_tuples(m: &PartialMonoid, len: usize) -> Vec<(Tuple, usize)> {
    fn go(m: &PartialMonoid, len: usize, cur: &mut Tuple, acc: usize, out: &mut Vec<(Tuple, usize)>) {
        if cur.len() == len {
            out.push((cur.clone(), acc));
            return;
        }
        for x in 0..m.size() {
            if let Some(p) = m.op(acc, x) {
                cur.push(x);
                go(m, len, cur, p, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, len, &mut Vec::with_capacity(len), m.identity(), &mut out);
    out
}

/// Level `n` of the nerve: `n`-tuples with defined product.
pub fn nerve_level(m: &PartialMonoid, n: usize) -> Vec<Tuple> {
    composable_tuples(m, n).into_iter().map(|(t, _)| t).collect()
}

/// Level `n` of the `L`-simplex set: `(n+1)`-tuples with product `L`.
pub fn simplex_level(m: &PartialMonoid, top: usize, n: usize) -> Vec<Tuple> {
    composable_tuples(m, n + 1)
        .into_iter()
        .filter(|(_, p)| *p == top)
        .map(|(t, _)| t)
        .collect()
}

fn mul(m: &PartialMonoid, x: usize, y: usize) -> usize {
    m.op(x, y).expect("sub-products of a composable tuple are defined")
}

fn nerve_face(m: &PartialMonoid, n: usize, i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    if i == 0 {
        out.remove(0);
    } else if i == n {
        out.pop();
    } else {
        let p = mul(m, t[i - 1], t[i]);
        out[i - 1] = p;
        out.remove(i);
    }
    out
}

fn nerve_degeneracy(m: &PartialMonoid, i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    out.insert(i, m.identity());
    out
}

fn nerve_theta(i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    out.swap(i - 1, i);
    out
}

/// The nerve of a commutative partial monoid with `S_n` acting on `N_n` by
/// permuting entries.
pub fn nerve(m: &PartialMonoid, truncation: usize) -> Result<StructuredSet> {
    require_commutative(m)?;
    build_nerve(m, truncation, true)
}

/// The nerve as a plain simplicial set; commutativity is not required.
pub fn plain_nerve(m: &PartialMonoid, truncation: usize) -> Result<StructuredSet> {
    build_nerve(m, truncation, false)
}

fn build_nerve(m: &PartialMonoid, truncation: usize, gamma: bool) -> Result<StructuredSet> {
    let levels = (0..=truncation).map(|n| nerve_level(m, n)).collect();
    let label = |t: &Tuple| tuple_label(m, t);
    let face = |n: usize, i: usize, t: &Tuple| nerve_face(m, n, i, t);
    let degeneracy = |_: usize, i: usize, t: &Tuple| nerve_degeneracy(m, i, t);
    let theta = |_: usize, i: usize, t: &Tuple| nerve_theta(i, t);
    let (theta, flavor): (Option<PermutationFn<Tuple>>, _) = if gamma {
        (Some(&theta), Flavor::Gamma)
    } else {
        (None, Flavor::Plain)
    };
    let model = TupleModel {
        truncation,
        levels,
        label: &label,
        face: &face,
        degeneracy: &degeneracy,
        tau: None,
        theta,
        flavor,
    };
    Ok(model.build()?)
}

fn simplex_face(m: &PartialMonoid, n: usize, i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    if i < n {
        out[i] = mul(m, t[i], t[i + 1]);
        out.remove(i + 1);
    } else {
        out[0] = mul(m, t[0], t[n]);
        out.pop();
    }
    out
}

fn simplex_degeneracy(m: &PartialMonoid, i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    out.insert(i + 1, m.identity());
    out
}

fn rotate_left(t: &Tuple) -> Tuple {
    let mut out = t.clone();
    out.rotate_left(1);
    out
}

fn swap_at(i: usize, t: &Tuple) -> Tuple {
    let mut out = t.clone();
    out.swap(i, i + 1);
    out
}

/// The `L`-simplex set: tuples `(x_0, .., x_n)` with `x_0 ⋯ x_n = L`, faces
/// multiplying adjacent entries (`d_n` multiplies `x_0 · x_n` into the front),
/// degeneracies inserting `e` after position `i`, and `S_{n+1}` permuting
/// entries (`τ` rotates left, `θ_i` swaps `x_i` and `x_{i+1}`).
pub fn simplex_set(m: &PartialMonoid, top: usize, truncation: usize) -> Result<StructuredSet> {
    require_commutative(m)?;
    require_element(m, top)?;
    let levels = (0..=truncation).map(|n| simplex_level(m, top, n)).collect();
    let label = |t: &Tuple| tuple_label(m, t);
    let face = |n: usize, i: usize, t: &Tuple| simplex_face(m, n, i, t);
    let degeneracy = |_: usize, i: usize, t: &Tuple| simplex_degeneracy(m, i, t);
    let theta = |_: usize, i: usize, t: &Tuple| swap_at(i, t);
    let tau = |_: usize, t: &Tuple| rotate_left(t);
    Ok(TupleModel {
        truncation,
        levels,
        label: &label,
        face: &face,
        degeneracy: &degeneracy,
        tau: Some(&tau),
        theta: Some(&theta),
        flavor: Flavor::Cosymmetric,
    }
    .build()?)
}

/// Applies maps in order, left to right.
fn compose_chain(maps: &[&FinMap]) -> FinMap {
    let mut out = maps[0].clone();
    for m in &maps[1..] {
        out = out.then(m).expect("chain of structure maps lines up");
    }
    out
}

/// Precomposes a Γ-set with the basepoint-adjoining functor `Φ → Φ_*`.
/// A Γ-set truncated at `N + 1` yields a cosymmetric set truncated at `N`.
pub fn basepoint_adjoin(x: &StructuredSet) -> Result<StructuredSet> {
    if !x.has_theta() || x.truncation() < 3 {
        return Err(ConstructionError::NotGamma);
    }
    let n_max = x.truncation() - 1;
    let th = |n: usize, i: usize| x.theta(n, i).expect("Γ-set has theta");
    let levels: Vec<FinSet> = (0..=n_max).map(|n| x.level(n + 1).clone()).collect();
    let mut face = vec![Vec::new()];
    for n in 1..=n_max {
        let mut row: Vec<FinMap> = (0..n).map(|i| x.face(n + 1, i + 1).clone()).collect();
        // d̂_n = d_1 θ_2 ⋯ θ_n
        let mut chain: Vec<&FinMap> = (2..=n).rev().map(|i| th(n + 1, i)).collect();
        chain.push(x.face(n + 1, 1));
        row.push(compose_chain(&chain));
        face.push(row);
    }
    let degeneracy = (0..n_max)
        .map(|n| (0..=n).map(|i| x.degeneracy(n + 1, i + 1).clone()).collect())
        .collect();
    let theta = (0..=n_max)
        .map(|n| (1..n).map(|i| th(n + 1, i + 1).clone()).collect())
        .collect();
    // τ̂ = θ_n ⋯ θ_1
    let tau = (0..=n_max)
        .map(|n| {
            if n == 0 {
                FinMap::identity(x.level(1))
            } else {
                let chain: Vec<&FinMap> = (1..=n).map(|i| th(n + 1, i)).collect();
                compose_chain(&chain)
            }
        })
        .collect();
    Ok(StructuredSet::from_parts(StructuredParts {
        truncation: n_max,
        levels,
        face,
        degeneracy,
        tau: Some(tau),
        theta: Some(theta),
        flavor: Flavor::Cosymmetric,
    })?)
}

/// The `L`-component of `basepoint_adjoin(nerve(M, N + 1))`, computed through
/// table composition rather than the direct tuple formulas.
pub fn simplex_set_via_adjoin(m: &PartialMonoid, top: usize, truncation: usize) -> Result<StructuredSet> {
    require_element(m, top)?;
    let adjoined = basepoint_adjoin(&nerve(m, truncation + 1)?)?;
    // X̂_0 = N_1 M is the carrier in order; the 1-tuple (L) has index L.
    Ok(adjoined.component(top)?)
}

/// A map `[m] → [n]` of finite cardinals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiMorphism {
    source: usize,
    target: usize,
    image: Vec<usize>,
}

impl PhiMorphism {
    pub fn new(source: usize, target: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != source + 1 {
            return Err(ConstructionError::BadMorphism(format!(
                "image has {} entries, expected {}",
                image.len(),
                source + 1
            )));
        }
        if let Some(&v) = image.iter().find(|&&v| v > target) {
            return Err(ConstructionError::BadMorphism(format!("{v} is outside [{target}]")));
        }
        Ok(PhiMorphism {
            source,
            target,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        PhiMorphism {
            source: n,
            target: n,
            image: (0..=n).collect(),
        }
    }

    /// Collapses `i` and `i + 1` for `i < n`; `d_n^n` collapses `0` and `n`.
    pub fn face(n: usize, i: usize) -> Self {
        let image = (0..=n)
            .map(|k| {
                if i == n {
                    if k == n { 0 } else { k }
                } else if k <= i {
                    k
                } else {
                    k - 1
                }
            })
            .collect();
        PhiMorphism {
            source: n,
            target: n - 1,
            image,
        }
    }

    /// Skips `i + 1`.
    pub fn degeneracy(n: usize, i: usize) -> Self {
        PhiMorphism {
            source: n,
            target: n + 1,
            image: (0..=n).map(|k| if k <= i { k } else { k + 1 }).collect(),
        }
    }

    /// Swaps `i` and `i + 1`.
    pub fn theta(n: usize, i: usize) -> Self {
        let mut image: Vec<usize> = (0..=n).collect();
        image.swap(i, i + 1);
        PhiMorphism {
            source: n,
            target: n,
            image,
        }
    }

    /// The cyclic permutation `0 ↦ n`, `k ↦ k - 1`.
    pub fn tau(n: usize) -> Self {
        PhiMorphism {
            source: n,
            target: n,
            image: (0..=n).map(|k| if k == 0 { n } else { k - 1 }).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Fixes the basepoint `0`.
    pub fn is_pointed(&self) -> bool {
        self.image[0] == 0
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PhiMorphism) -> Result<PhiMorphism> {
        if self.target != next.source {
            return Err(ConstructionError::BadMorphism("morphisms do not compose".into()));
        }
        Ok(PhiMorphism {
            source: self.source,
            target: next.target,
            image: self.image.iter().map(|&k| next.image[k]).collect(),
        })
    }
}

/// `f_*(x_0, .., x_m) = (y_0, .., y_n)` with `y_i` the product of the `x_j`
/// over `j ∈ f⁻¹(i)` (empty products are `e`).
pub fn phi_action(f: &PhiMorphism, t: &[usize], m: &PartialMonoid) -> Result<Tuple> {
    if t.len() != f.source + 1 {
        return Err(ConstructionError::BadMorphism(format!(
            "tuple has {} entries, morphism expects {}",
            t.len(),
            f.source + 1
        )));
    }
    (0..=f.target)
        .map(|i| {
            m.product((0..=f.source).filter(|&j| f.image[j] == i).map(|j| t[j]))
                .ok_or(ConstructionError::ProductUndefined(i))
        })
        .collect()
}

/// Which parts of the structure a levelwise map must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Respect {
    pub tau: bool,
    pub theta: bool,
}

/// Checks that `maps[n]: X_n → Y_n` commute with faces, degeneracies and,
/// as requested, τ and θ.
pub fn check_morphism(x: &StructuredSet, y: &StructuredSet, maps: &[FinMap], respect: Respect) -> CheckReport {
    let mut report = CheckReport::new();
    let n_max = x.truncation().min(y.truncation());
    if maps.len() <= n_max {
        report.push(Violation::new("morphism_levels", maps.len(), vec![], 0));
        return report;
    }
    for n in 0..=n_max {
        if maps[n].domain().size() != x.level_size(n) || maps[n].codomain().size() != y.level_size(n) {
            report.push(Violation::new("morphism_type", n, vec![], 0));
            return report.finished();
        }
    }
    let eq = |report: &mut CheckReport, rel: &str, n: usize, idx: Vec<usize>, lhs: &[&FinMap], rhs: &[&FinMap]| {
        for e in 0..x.level_size(n) {
            let a = lhs.iter().fold(e, |acc, f| f.apply(acc));
            let b = rhs.iter().fold(e, |acc, f| f.apply(acc));
            if a != b {
                report.push(Violation::new(rel, n, idx.clone(), e));
            }
        }
    };
    for n in 1..=n_max {
        for i in 0..=n {
            eq(&mut report, "morphism_face", n, vec![i], &[x.face(n, i), &maps[n - 1]], &[&maps[n], y.face(n, i)]);
        }
    }
    for n in 0..n_max {
        for i in 0..=n {
            eq(&mut report, 
                "morphism_degeneracy",
                n,
                vec![i],
                &[x.degeneracy(n, i), &maps[n + 1]],
                &[&maps[n], y.degeneracy(n, i)],
            );
        }
    }
    if respect.tau {
        match (x.tau(0), y.tau(0)) {
            (Some(_), Some(_)) => {
                for n in 0..=n_max {
                    let (tx, ty) = (x.tau(n).unwrap(), y.tau(n).unwrap());
                    eq(&mut report, "morphism_tau", n, vec![], &[tx, &maps[n]], &[&maps[n], ty]);
                }
            }
            _ => report.push(Violation::new("morphism_tau_missing", 0, vec![], 0)),
        }
    }
    if respect.theta {
        if x.has_theta() && y.has_theta() {
            for n in 2..=n_max {
                for i in 1..n {
                    let (a, b) = (x.theta(n, i).unwrap(), y.theta(n, i).unwrap());
                    eq(&mut report, "morphism_theta", n, vec![i], &[a, &maps[n]], &[&maps[n], b]);
                }
            }
        } else {
            report.push(Violation::new("morphism_theta_missing", 0, vec![], 0));
        }
    }
    report.finished()
}

/// [`check_morphism`] plus levelwise bijectivity.
pub fn check_isomorphism(x: &StructuredSet, y: &StructuredSet, maps: &[FinMap], respect: Respect) -> CheckReport {
    let mut report = check_morphism(x, y, maps, respect);
    for (n, m) in maps.iter().enumerate().take(x.truncation().min(y.truncation()) + 1) {
        if !m.is_bijective() {
            report.push(Violation::new("isomorphism_bijective", n, vec![], 0));
        }
    }
    report.finished()
}

fn index_of(levels: &[Tuple], t: &[usize]) -> Option<usize> {
    levels.binary_search_by(|probe| probe.as_slice().cmp(t)).ok()
}

/// The levelwise maps `(x_0, .., x_n) ↦ (x_1, .., x_n)` from the `L`-simplex
/// set to the nerve, verified to commute with faces, degeneracies and θ.
pub fn simplex_to_nerve_morphism(m: &PartialMonoid, top: usize, truncation: usize) -> Result<Vec<FinMap>> {
    let simplex = simplex_set(m, top, truncation)?;
    let nerve_set = nerve(m, truncation)?;
    let maps = (0..=truncation)
        .map(|n| {
            let targets = nerve_level(m, n);
            let image = simplex_level(m, top, n)
                .iter()
                .map(|t| index_of(&targets, &t[1..]).expect("dropping x_0 keeps products defined"))
                .collect();
            Ok(FinMap::new(simplex.level(n).clone(), nerve_set.level(n).clone(), image)
                .map_err(SimplicialError::from)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let report = check_morphism(&simplex, &nerve_set, &maps, Respect { tau: false, theta: true });
    if !report.passed {
        return Err(ConstructionError::Postcondition(report));
    }
    Ok(maps)
}

/// The nerve with `τ(x_1, .., x_n) = (x_2, .., x_n, (x_1 ⋯ x_n)^⊥)` and the
/// permutation θ action. Verified isomorphic to the `L`-simplex set through
/// `(x_1, .., x_n) ↦ ((x_1 ⋯ x_n)^⊥, x_1, .., x_n)`.
pub fn induced_cyclic_on_nerve(m: &PartialMonoid, top: usize, truncation: usize) -> Result<StructuredSet> {
    require_commutative(m)?;
    require_element(m, top)?;
    let perp = m
        .orthocomplement_map(top)
        .ok_or(ConstructionError::NoOrthocomplement(top))?;
    let complement = |t: &[usize]| perp[m.product(t.iter().copied()).expect("composable tuple")];
    let levels: Vec<Vec<Tuple>> = (0..=truncation).map(|n| nerve_level(m, n)).collect();
    let label = |t: &Tuple| tuple_label(m, t);
    let face = |n: usize, i: usize, t: &Tuple| nerve_face(m, n, i, t);
    let degeneracy = |_: usize, i: usize, t: &Tuple| nerve_degeneracy(m, i, t);
    let theta = |_: usize, i: usize, t: &Tuple| nerve_theta(i, t);
    let tau = |_: usize, t: &Tuple| {
        if t.is_empty() {
            return Vec::new();
        }
        let mut out = t[1..].to_vec();
        out.push(complement(t));
        out
    };
    let set = TupleModel {
        truncation,
        levels: levels.clone(),
        label: &label,
        face: &face,
        degeneracy: &degeneracy,
        tau: Some(&tau),
        theta: Some(&theta),
        flavor: Flavor::Cosymmetric,
    }
    .build()?;

    let simplex = simplex_set(m, top, truncation)?;
    let maps = (0..=truncation)
        .map(|n| {
            let targets = simplex_level(m, top, n);
            let image = levels[n]
                .iter()
                .map(|t| {
                    let mut full = vec![complement(t)];
                    full.extend_from_slice(t);
                    index_of(&targets, &full).expect("complemented tuple has product L")
                })
                .collect();
            Ok(FinMap::new(set.level(n).clone(), simplex.level(n).clone(), image)
                .map_err(SimplicialError::from)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let report = check_isomorphism(&set, &simplex, &maps, Respect { tau: true, theta: true });
    if !report.passed {
        return Err(ConstructionError::Postcondition(report));
    }
    Ok(set)
}

/// Action of a pointed map `f: [m] → [n]` on a morphism `φ: P_m → M`
/// stored as its table over subsets of `{1, .., m}` (bit `k - 1` for `k`):
/// the result sends `B ⊆ {1, .., n}` to `φ(f⁻¹(B))`.
fn plasmic_pushforward(f: &PhiMorphism, phi: &[usize]) -> Vec<usize> {
    (0..1usize << f.target)
        .map(|b| {
            let pre = (1..=f.source)
                .filter(|&k| f.image[k] >= 1 && b >> (f.image[k] - 1) & 1 == 1)
                .fold(0usize, |acc, k| acc | 1 << (k - 1));
            phi[pre]
        })
        .collect()
}

/// All partial-monoid morphisms `P_n → M` with `∅ ↦ e`, found by
/// backtracking over subsets in increasing bitmask order; a candidate value
/// for `A` must satisfy `φ(B) · φ(C) = φ(A)` for every split `A = B ⊔ C`.
pub fn plasmic_level(m: &PartialMonoid, n: usize) -> Vec<Vec<usize>> {
    fn go(m: &PartialMonoid, a: usize, full: usize, phi: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a == full {
            out.push(phi.clone());
            return;
        }
        'candidates: for v in 0..m.size() {
            // every split B ⊔ C = A, B ranging over submasks of A
            let mut b = a;
            loop {
                let c = a & !b;
                let bv = if b == a { v } else { phi[b] };
                let cv = if c == a { v } else { phi[c] };
                if m.op(bv, cv) != Some(v) {
                    continue 'candidates;
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & a;
            }
            phi.push(v);
            go(m, a + 1, full, phi, out);
            phi.pop();
        }
    }
    let mut out = Vec::new();
    let mut phi = vec![m.identity()];
    go(m, 1, 1usize << n, &mut phi, &mut out);
    out
}

/// Builds the Γ-set `[n] ↦ Hom(P_n, M)` with structure maps acting by
/// preimage, and checks it is levelwise isomorphic to the nerve through
/// `φ ↦ (φ({1}), .., φ({n}))`, respecting faces, degeneracies and θ.
pub fn plasmic_nerve_crosscheck(m: &PartialMonoid, truncation: usize) -> Result<CheckReport> {
    require_commutative(m)?;
    let levels: Vec<Vec<Vec<usize>>> = (0..=truncation).map(|n| plasmic_level(m, n)).collect();
    let label = |phi: &Vec<usize>| {
        let parts: Vec<String> = phi.iter().map(|&x| m.label(x)).collect();
        format!("[{}]", parts.join(","))
    };
    let face = |n: usize, i: usize, phi: &Vec<usize>| plasmic_pushforward(&PhiMorphism::face(n, i), phi);
    let degeneracy =
        |n: usize, i: usize, phi: &Vec<usize>| plasmic_pushforward(&PhiMorphism::degeneracy(n, i), phi);
    let theta = |n: usize, i: usize, phi: &Vec<usize>| plasmic_pushforward(&PhiMorphism::theta(n, i), phi);
    let plasmic = TupleModel {
        truncation,
        levels: levels.clone(),
        label: &label,
        face: &face,
        degeneracy: &degeneracy,
        tau: None,
        theta: Some(&theta),
        flavor: Flavor::Gamma,
    }
    .build()?;
    let nerve_set = nerve(m, truncation)?;
    let mut maps = Vec::with_capacity(truncation + 1);
    let mut report = CheckReport::new();
    for n in 0..=truncation {
        let targets = nerve_level(m, n);
        let mut image = Vec::with_capacity(levels[n].len());
        for (k, phi) in levels[n].iter().enumerate() {
            let t: Tuple = (0..n).map(|i| phi[1 << i]).collect();
            match index_of(&targets, &t) {
                Some(idx) => image.push(idx),
                None => {
                    report.push(Violation::new("plasmic_not_in_nerve", n, vec![], k));
                    image.push(0);
                }
            }
        }
        if nerve_set.level_size(n) == 0 {
            // nothing to map into
            maps.push(FinMap::new(plasmic.level(n).clone(), nerve_set.level(n).clone(), vec![])
                .map_err(SimplicialError::from)?);
            continue;
        }
        maps.push(
            FinMap::new(plasmic.level(n).clone(), nerve_set.level(n).clone(), image)
                .map_err(SimplicialError::from)?,
        );
    }
    report.merge(check_isomorphism(&plasmic, &nerve_set, &maps, Respect { tau: false, theta: true }));
    Ok(report)
}

/// Groups of at least two elements of `X_2` sharing `(d_2, d_0)`. A nerve of
/// a partial monoid has none.
pub fn segal_map_collisions(x: &StructuredSet) -> Vec<Vec<usize>> {
    let (d2, d0) = (x.face(2, 2), x.face(2, 0));
    let mut fibers: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for w in 0..x.level_size(2) {
        fibers.entry((d2.apply(w), d0.apply(w))).or_default().push(w);
    }
    let mut out: Vec<Vec<usize>> = fibers.into_values().filter(|f| f.len() > 1).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmonoid::{make_cyclic_group, make_powerset_disjoint, make_powerset_union, make_trunc_add};

    fn labels(x: &StructuredSet, n: usize) -> Vec<String> {
        x.level(n).labels().unwrap().to_vec()
    }

    #[test]
    fn nerve_sizes() {
        let t = nerve(&make_trunc_add(0).unwrap(), 3).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 1, 1, 1]);
        let t2 = nerve(&make_trunc_add(2).unwrap(), 2).unwrap();
        assert_eq!(t2.level_sizes(), vec![1, 3, 6]);
        let z = nerve(&make_cyclic_group(3).unwrap(), 3).unwrap();
        assert_eq!(z.level_sizes(), vec![1, 3, 9, 27]);
    }

    #[test]
    fn nerve_requires_commutativity() {
        let op = vec![
            Some(0), Some(1), Some(2),
            Some(1), Some(1), Some(1),
            Some(2), Some(2), Some(2),
        ];
        let m = PartialMonoid::validated(FinSet::new(3), op, 0).unwrap();
        assert_eq!(nerve(&m, 2).unwrap_err(), ConstructionError::NotCommutative(1, 2));
        assert_eq!(plain_nerve(&m, 2).unwrap().level_size(2), 9);
    }

    #[test]
    fn simplex_levels_for_trunc_one() {
        let s = simplex_set(&make_trunc_add(1).unwrap(), 1, 2).unwrap();
        assert_eq!(labels(&s, 1), vec!["(0,1)", "(1,0)"]);
        assert_eq!(labels(&s, 2), vec!["(0,0,1)", "(0,1,0)", "(1,0,0)"]);
    }

    #[test]
    fn union_simplex_level_one_has_three_elements() {
        let s = simplex_set(&make_powerset_union(1).unwrap(), 1, 2).unwrap();
        assert_eq!(s.level_size(1), 3);
    }

    #[test]
    fn effect_algebra_simplex_over_e_is_a_point() {
        for m in [make_trunc_add(3).unwrap(), make_powerset_disjoint(2).unwrap()] {
            let s = simplex_set(&m, m.identity(), 3).unwrap();
            assert_eq!(s.level_sizes(), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn extra_degeneracy_on_trunc_one() {
        let s = simplex_set(&make_trunc_add(1).unwrap(), 1, 2).unwrap();
        let s10 = s.extra_degeneracy(0).unwrap();
        // s_0 (1) = (1,0), then τ rotates to (0,1).
        assert_eq!(s.level(1).label(s10.apply(0)), "(0,1)");
        let d = s.face(1, 1);
        for n in 0..2 {
            let sx = s.extra_degeneracy(n).unwrap();
            let dl = s.face(n + 1, n + 1);
            assert!((0..s.level_size(n)).all(|x| dl.apply(sx.apply(x)) == x));
        }
        assert_eq!(d.apply(s10.apply(0)), 0);
    }

    #[test]
    fn phi_action_basics() {
        let m = make_trunc_add(3).unwrap();
        let id = PhiMorphism::identity(2);
        assert_eq!(phi_action(&id, &[1, 0, 2], &m).unwrap(), vec![1, 0, 2]);
        let collapse = PhiMorphism::new(1, 0, vec![0, 0]).unwrap();
        assert_eq!(phi_action(&collapse, &[1, 2], &m).unwrap(), vec![3]);
        let tau = PhiMorphism::tau(2);
        assert_eq!(phi_action(&tau, &[1, 0, 2], &m).unwrap(), vec![0, 2, 1]);
        assert!(matches!(
            phi_action(&collapse, &[2, 2], &m),
            Err(ConstructionError::ProductUndefined(0))
        ));
    }

    #[test]
    fn phi_generators_match_tables() {
        let m = make_trunc_add(3).unwrap();
        let s = simplex_set(&m, 3, 3).unwrap();
        for n in 0..=3 {
            let elems = simplex_level(&m, 3, n);
            let check = |f: PhiMorphism, table: &FinMap| {
                let targets = simplex_level(&m, 3, f.target());
                for (k, t) in elems.iter().enumerate() {
                    let y = phi_action(&f, t, &m).unwrap();
                    assert_eq!(targets[table.apply(k)], y, "{f:?}");
                }
            };
            check(PhiMorphism::tau(n), s.tau(n).unwrap());
            for i in 1..n {
                check(PhiMorphism::theta(n, i), s.theta(n, i).unwrap());
            }
            if n > 0 {
                for i in 0..=n {
                    check(PhiMorphism::face(n, i), s.face(n, i));
                }
            }
            if n < 3 {
                for i in 0..=n {
                    check(PhiMorphism::degeneracy(n, i), s.degeneracy(n, i));
                }
            }
        }
    }

    #[test]
    fn simplex_to_nerve_examples() {
        let t = make_trunc_add(0).unwrap();
        assert!(simplex_to_nerve_morphism(&t, 0, 2).unwrap().iter().all(FinMap::is_bijective));
        let t2 = make_trunc_add(2).unwrap();
        let maps = simplex_to_nerve_morphism(&t2, 2, 3).unwrap();
        assert!(maps.iter().all(FinMap::is_bijective));
        assert_eq!(maps[1].image(), &[2, 1, 0]);
        let u = make_powerset_union(1).unwrap();
        let maps = simplex_to_nerve_morphism(&u, 1, 2).unwrap();
        assert_eq!((maps[1].domain().size(), maps[1].codomain().size()), (3, 2));
        assert!(!maps[1].is_injective());
    }

    #[test]
    fn induced_tau_examples() {
        let z3 = make_cyclic_group(3).unwrap();
        let x = induced_cyclic_on_nerve(&z3, 0, 2).unwrap();
        assert_eq!(x.tau(1).unwrap().image(), &[0, 2, 1]);
        let t1 = make_trunc_add(1).unwrap();
        let y = induced_cyclic_on_nerve(&t1, 1, 2).unwrap();
        assert_eq!(y.tau(1).unwrap().image(), &[1, 0]);
        let u = make_powerset_union(1).unwrap();
        assert_eq!(
            induced_cyclic_on_nerve(&u, 1, 2).unwrap_err(),
            ConstructionError::NoOrthocomplement(1)
        );
    }

    #[test]
    fn induced_tau_on_groups_matches_closed_form() {
        for order in 2..5 {
            let g = make_cyclic_group(order).unwrap();
            for top in 0..order {
                let x = induced_cyclic_on_nerve(&g, top, 3).unwrap();
                let elems = nerve_level(&g, 2);
                for (k, t) in elems.iter().enumerate() {
                    let inv = (order * 4 + top - t[0] - t[1]) % order;
                    let expect = vec![t[1], inv];
                    assert_eq!(elems[x.tau(2).unwrap().apply(k)], expect);
                }
            }
        }
    }

    #[test]
    fn plasmic_levels_match_counts() {
        let m = make_trunc_add(2).unwrap();
        for n in 0..=3 {
            assert_eq!(plasmic_level(&m, n).len(), nerve_level(&m, n).len());
        }
        assert!(plasmic_nerve_crosscheck(&make_trunc_add(0).unwrap(), 3).unwrap().passed);
        assert!(plasmic_nerve_crosscheck(&m, 3).unwrap().passed);
        assert!(plasmic_nerve_crosscheck(&make_powerset_disjoint(2).unwrap(), 3).unwrap().passed);
    }

    #[test]
    fn adjoin_matches_direct_formulas() {
        let m = make_trunc_add(2).unwrap();
        assert_eq!(simplex_set_via_adjoin(&m, 2, 3).unwrap(), simplex_set(&m, 2, 3).unwrap());
    }

    #[test]
    fn union_collision_family() {
        let m = make_powerset_union(2).unwrap();
        let s = simplex_set(&m, 3, 2).unwrap();
        let groups = segal_map_collisions(&s);
        let family: Vec<usize> = (0..4)
            .map(|a| simplex_level(&m, 3, 2).iter().position(|t| t == &vec![a, 3, 3]).unwrap())
            .collect();
        assert!(groups.iter().any(|g| family.iter().all(|w| g.contains(w))));
        let d = make_powerset_disjoint(2).unwrap();
        assert!(segal_map_collisions(&simplex_set(&d, 3, 2).unwrap()).is_empty());
    }
}
