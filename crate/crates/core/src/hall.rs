//! Hall algebras of finite 2-Segal sets over the rationals: structure
//! constants from `X_2`, unit, counit, the pairing `ε(xy)`, and checks
//! against polynomial presentations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::constructions::simplex_level;
use crate::finset::FinSet;
use crate::linalg::{bareiss_determinant, rational, EchelonBasis, Rational, RationalMatrix};
use crate::monoid_spec::MonoidKind;
use crate::pmonoid::PartialMonoid;
use crate::report::{CheckReport, Violation};
use crate::simplicial::StructuredSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error("Hall algebras need truncation at least 2, got {0}")]
    TruncationTooSmall(usize),
    #[error("the counit needs τ to form the extra degeneracy s_1^0")]
    MissingTau,
    #[error("the pairing ε(xy) is degenerate")]
    DegeneratePairing,
    #[error("basis index {0} out of range")]
    BasisIndex(usize),
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, HallError>;

pub type Vector = Vec<Rational>;

/// The algebra `k[X_1]` with `m(x, y) = Σ_z c[x][y][z] z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallAlgebra {
    basis: FinSet,
    /// Nonzero `(z, c[x][y][z])` for each `x * dim + y`, sorted by `z`.
    products: Vec<Vec<(usize, i64)>>,
    unit: Vector,
    counit: Option<Vector>,
}

/// Counts `ω ∈ X_2` by `(d_2 ω, d_0 ω, d_1 ω)`.
pub fn hall_algebra(x: &StructuredSet) -> Result<HallAlgebra> {
    if x.truncation() < 2 {
        return Err(HallError::TruncationTooSmall(x.truncation()));
    }
    let dim = x.level_size(1);
    let (d0, d1, d2) = (x.face(2, 0), x.face(2, 1), x.face(2, 2));
    let mut counts: BTreeMap<(usize, usize, usize), i64> = BTreeMap::new();
    for w in 0..x.level_size(2) {
        *counts.entry((d2.apply(w), d0.apply(w), d1.apply(w))).or_insert(0) += 1;
    }
    let triples: Vec<(usize, usize, usize, i64)> = counts.into_iter().map(|((a, b, c), n)| (a, b, c, n)).collect();
    let mut unit = vec![Rational::zero(); dim];
    let s0 = x.degeneracy(0, 0);
    for u in 0..x.level_size(0) {
        unit[s0.apply(u)] += Rational::one();
    }
    let counit = counit(x).ok();
    HallAlgebra::from_parts(x.level(1).clone(), &triples, unit, counit)
}

/// `ε(x) = 1` on the image of `s_1^0 = τ s_0`, else `0`.
pub fn counit(x: &StructuredSet) -> Result<Vector> {
    let s = x.extra_degeneracy(0).map_err(|_| HallError::MissingTau)?;
    let mut v = vec![Rational::zero(); x.level_size(1)];
    for u in 0..x.level_size(0) {
        v[s.apply(u)] = Rational::one();
    }
    Ok(v)
}

impl HallAlgebra {
    /// Assembles an algebra from sparse structure constants `(x, y, z, c)`;
    /// repeated triples add up.
    pub fn from_parts(
        basis: FinSet,
        constants: &[(usize, usize, usize, i64)],
        unit: Vector,
        counit: Option<Vector>,
    ) -> Result<Self> {
        let dim = basis.size();
        let mut products = vec![Vec::new(); dim * dim];
        for &(x, y, z, c) in constants {
            if let Some(&bad) = [x, y, z].iter().find(|&&i| i >= dim) {
                return Err(HallError::BasisIndex(bad));
            }
            let row: &mut Vec<(usize, i64)> = &mut products[x * dim + y];
            match row.binary_search_by_key(&z, |e| e.0) {
                Ok(k) => row[k].1 += c,
                Err(k) => row.insert(k, (z, c)),
            }
        }
        for row in &mut products {
            row.retain(|e| e.1 != 0);
        }
        let check = |v: &Vector| {
            if v.len() == dim {
                Ok(())
            } else {
                Err(HallError::VectorLength {
                    expected: dim,
                    got: v.len(),
                })
            }
        };
        check(&unit)?;
        if let Some(c) = &counit {
            check(c)?;
        }
        Ok(HallAlgebra {
            basis,
            products,
            unit,
            counit,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.size()
    }

    pub fn basis(&self) -> &FinSet {
        &self.basis
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn counit(&self) -> Option<&Vector> {
        self.counit.as_ref()
    }

    pub fn with_counit(mut self, counit: Option<Vector>) -> Result<Self> {
        if let Some(c) = &counit {
            if c.len() != self.dimension() {
                return Err(HallError::VectorLength {
                    expected: self.dimension(),
                    got: c.len(),
                });
            }
        }
        self.counit = counit;
        Ok(self)
    }

    pub fn structure_constant(&self, x: usize, y: usize, z: usize) -> i64 {
        let row = &self.products[x * self.dimension() + y];
        row.binary_search_by_key(&z, |e| e.0).map_or(0, |k| row[k].1)
    }

    /// Nonzero constants `(x, y, z, c)` in lexicographic order.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, i64)> {
        let dim = self.dimension();
        let mut out = Vec::new();
        for (k, row) in self.products.iter().enumerate() {
            for &(z, c) in row {
                out.push((k / dim, k % dim, z, c));
            }
        }
        out
    }

    /// Nonzero `(z, c)` with `m(x, y) = Σ c z`.
    pub fn product_terms(&self, x: usize, y: usize) -> &[(usize, i64)] {
        &self.products[x * self.dimension() + y]
    }

    pub fn basis_vector(&self, i: usize) -> Result<Vector> {
        if i >= self.dimension() {
            return Err(HallError::BasisIndex(i));
        }
        let mut v = vec![Rational::zero(); self.dimension()];
        v[i] = Rational::one();
        Ok(v)
    }

    pub fn zero_vector(&self) -> Vector {
        vec![Rational::zero(); self.dimension()]
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() == self.dimension() {
            Ok(())
        } else {
            Err(HallError::VectorLength {
                expected: self.dimension(),
                got: v.len(),
            })
        }
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Result<Vector> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut out = self.zero_vector();
        for (x, ax) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (y, by) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = ax * by;
                for &(z, c) in self.product_terms(x, y) {
                    out[z] += &coeff * rational(c);
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, a: &[Rational], k: u32) -> Result<Vector> {
        let mut out = self.unit.clone();
        for _ in 0..k {
            out = self.multiply(&out, a)?;
        }
        Ok(out)
    }

    pub fn apply_counit(&self, a: &[Rational]) -> Option<Rational> {
        let c = self.counit.as_ref()?;
        Some(a.iter().zip(c).map(|(x, y)| x * y).sum())
    }

    /// `β[x][y] = ε(m(x, y))`.
    pub fn pairing(&self) -> Option<RationalMatrix> {
        let c = self.counit.as_ref()?;
        let dim = self.dimension();
        Some(RationalMatrix::from_fn(dim, dim, |x, y| {
            self.product_terms(x, y)
                .iter()
                .map(|&(z, n)| &c[z] * rational(n))
                .sum()
        }))
    }

    /// `det β`, computed fraction-free after clearing denominators.
    pub fn pairing_determinant(&self) -> Option<Rational> {
        let beta = self.pairing()?;
        let dim = self.dimension();
        let denom = (0..dim)
            .flat_map(|r| beta.row(r).iter().map(|v| v.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let scaled: Vec<Vec<BigInt>> = (0..dim)
            .map(|r| {
                beta.row(r)
                    .iter()
                    .map(|v| (v * Rational::from_integer(denom.clone())).to_integer())
                    .collect()
            })
            .collect();
        let det = bareiss_determinant(&scaled);
        Some(Rational::new(det, num_traits::pow(denom, dim)))
    }

    /// `Δ(x) = Σ_{ij} (β⁻¹)_{ij} m(x, e_i) ⊗ e_j`, the comultiplication dual
    /// to `m` under `β`; columns are indexed by `x`, rows by `(a, b)` in
    /// lexicographic order.
    pub fn comultiplication(&self) -> Result<Vec<Vector>> {
        let beta_inv = self
            .pairing()
            .and_then(|b| b.inverse())
            .ok_or(HallError::DegeneratePairing)?;
        let dim = self.dimension();
        let mut out = Vec::with_capacity(dim);
        for x in 0..dim {
            let mut v = vec![Rational::zero(); dim * dim];
            for i in 0..dim {
                let terms = self.product_terms(x, i);
                if terms.is_empty() {
                    continue;
                }
                for j in 0..dim {
                    let b = beta_inv.get(i, j);
                    if b.is_zero() {
                        continue;
                    }
                    for &(z, c) in terms {
                        v[z * dim + j] += b * rational(c);
                    }
                }
            }
            out.push(v);
        }
        Ok(out)
    }
}

fn first_difference(a: &[Rational], b: &[Rational]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

fn first_nonzero(a: &[Rational]) -> Option<usize> {
    a.iter().position(|x| !x.is_zero())
}

/// `(xy)z = x(yz)` on basis triples.
pub fn check_associativity(a: &HallAlgebra) -> CheckReport {
    let dim = a.dimension();
    let mut report = CheckReport::new();
    let e = |i| a.basis_vector(i).expect("index in range");
    for x in 0..dim {
        for y in 0..dim {
            let xy = a.multiply(&e(x), &e(y)).expect("lengths match");
            for z in 0..dim {
                let lhs = a.multiply(&xy, &e(z)).expect("lengths match");
                let yz = a.multiply(&e(y), &e(z)).expect("lengths match");
                let rhs = a.multiply(&e(x), &yz).expect("lengths match");
                if let Some(w) = first_difference(&lhs, &rhs) {
                    report.push(Violation::new("associativity", 1, vec![x, y, z], w));
                }
            }
        }
    }
    report.finished()
}

pub fn check_commutativity(a: &HallAlgebra) -> CheckReport {
    let dim = a.dimension();
    let mut report = CheckReport::new();
    for x in 0..dim {
        for y in x + 1..dim {
            let (p, q) = (a.product_terms(x, y), a.product_terms(y, x));
            if p != q {
                let z = p
                    .iter()
                    .chain(q)
                    .map(|e| e.0)
                    .find(|&z| a.structure_constant(x, y, z) != a.structure_constant(y, x, z))
                    .unwrap_or(0);
                report.push(Violation::new("commutativity", 1, vec![x, y], z));
            }
        }
    }
    report.finished()
}

pub fn check_unit(a: &HallAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    for x in 0..a.dimension() {
        let e = a.basis_vector(x).expect("index in range");
        let left = a.multiply(a.unit(), &e).expect("lengths match");
        if let Some(w) = first_difference(&left, &e) {
            report.push(Violation::new("unit_left", 1, vec![x], w));
        }
        let right = a.multiply(&e, a.unit()).expect("lengths match");
        if let Some(w) = first_difference(&right, &e) {
            report.push(Violation::new("unit_right", 1, vec![x], w));
        }
    }
    report.finished()
}

/// Nondegeneracy of `β[x][y] = ε(m(x, y))`.
pub fn check_frobenius(a: &HallAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    match a.pairing_determinant() {
        None => report.push(Violation::new("frobenius_counit", 1, vec![], 0)),
        Some(d) if d.is_zero() => report.push(Violation::new("frobenius_degenerate", 1, vec![], 0)),
        Some(_) => {}
    }
    report.finished()
}

/// A polynomial with integer coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(vars: usize, terms: &[(i64, Vec<u32>)]) -> Self {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars, "exponent vector length");
            *p.terms.entry(e.clone()).or_insert_with(BigInt::zero) += BigInt::from(*c);
        }
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    /// `c · x_i^k`.
    pub fn monomial(vars: usize, c: i64, i: usize, k: u32) -> Self {
        let mut e = vec![0; vars];
        e[i] = k;
        Self::from_terms(vars, &[(c, e)])
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        Self::from_terms(vars, &[(c, vec![0; vars])])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            *out.terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Evaluates in `a` with `x_i ↦ images[i]`.
    pub fn evaluate(&self, a: &HallAlgebra, images: &[Vector]) -> Result<Vector> {
        let mut out = a.zero_vector();
        for (e, c) in &self.terms {
            let mut v = a.unit().clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    v = a.multiply(&v, &a.power(&images[i], k)?)?;
                }
            }
            let c = Rational::from_integer(c.clone());
            for (o, x) in out.iter_mut().zip(v) {
                *o += &c * x;
            }
        }
        Ok(out)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{p}", names[i]) })
                .collect();
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                }
                s.push_str(&mono.join(""));
            }
        }
        s
    }
}

/// A commutative algebra `k[x_1, .., x_r] / ⟨relations⟩` of known dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generator_names: Vec<String>,
    pub relations: Vec<Polynomial>,
    pub expected_dimension: usize,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(|r| r.display_with(&self.generator_names)).collect();
        write!(f, "k[{}]/<{}>", self.generator_names.join(","), rels.join(", "))
    }
}

fn indexed_names(prefix: &str, count: usize) -> Vec<String> {
    if count == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }
}

impl Presentation {
    /// `k[x] / ⟨x^{L+1}⟩`.
    pub fn truncated(top: usize) -> Self {
        Presentation {
            generator_names: vec!["x".into()],
            relations: vec![Polynomial::monomial(1, 1, 0, top as u32 + 1)],
            expected_dimension: top + 1,
        }
    }

    /// `k[x] / ⟨x^m - 1⟩`.
    pub fn cyclic(m: usize) -> Self {
        Presentation {
            generator_names: vec!["x".into()],
            relations: vec![Polynomial::monomial(1, 1, 0, m as u32).add(&Polynomial::constant(1, -1))],
            expected_dimension: m,
        }
    }

    /// `k[x_1, .., x_k] / ⟨x_i^2⟩`.
    pub fn square_zero(k: usize) -> Self {
        Presentation {
            generator_names: indexed_names("x", k),
            relations: (0..k).map(|i| Polynomial::monomial(k, 1, i, 2)).collect(),
            expected_dimension: 1 << k,
        }
    }

    /// `k[x_1, .., x_k] / ⟨x_i^3 - x_i^2⟩`.
    pub fn cubic_idempotent(k: usize) -> Self {
        Presentation {
            generator_names: indexed_names("x", k),
            relations: (0..k)
                .map(|i| Polynomial::monomial(k, 1, i, 3).add(&Polynomial::monomial(k, -1, i, 2)))
                .collect(),
            expected_dimension: 3usize.pow(k as u32),
        }
    }
}

/// Checks that the relations vanish on the images, that monomials in the
/// images span `A`, and that `dim A` is the expected dimension.
pub fn verify_presentation(a: &HallAlgebra, p: &Presentation, images: &BTreeMap<String, Vector>) -> CheckReport {
    let mut report = CheckReport::new();
    let dim = a.dimension();
    if dim != p.expected_dimension {
        report.push(Violation::new("presentation_dimension", 1, vec![p.expected_dimension], dim));
    }
    let mut gens = Vec::with_capacity(p.generator_names.len());
    for (i, name) in p.generator_names.iter().enumerate() {
        match images.get(name) {
            Some(v) if v.len() == dim => gens.push(v.clone()),
            _ => report.push(Violation::new("presentation_image", 1, vec![i], 0)),
        }
    }
    if gens.len() != p.generator_names.len() {
        return report.finished();
    }
    for (r, rel) in p.relations.iter().enumerate() {
        let value = rel.evaluate(a, &gens).expect("images have the algebra's dimension");
        if let Some(w) = first_nonzero(&value) {
            report.push(Violation::new("presentation_relation", 1, vec![r], w));
        }
    }
    // V_0 = span{1}; V_{d+1} = V_d + Σ g_i V_d, so only vectors new at
    // degree d need multiplying at step d + 1.
    let mut span = EchelonBasis::new(dim);
    let mut frontier = Vec::new();
    if span.insert(a.unit()) {
        frontier.push(a.unit().clone());
    }
    let mut degree = 0;
    while !frontier.is_empty() && span.rank() < dim && degree < dim {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &gens {
                let w = a.multiply(v, g).expect("lengths match");
                if span.insert(&w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
        degree += 1;
    }
    if span.rank() != dim {
        report.push(Violation::new("presentation_rank", 1, vec![dim], span.rank()));
    }
    report.finished()
}

/// Index of the 1-simplex `(x_0, x_1)` in the `L`-simplex set.
pub fn edge_index(m: &PartialMonoid, top: usize, x0: usize, x1: usize) -> Option<usize> {
    simplex_level(m, top, 1).binary_search(&vec![x0, x1]).ok()
}

fn edge_vector(m: &PartialMonoid, top: usize, dim: usize, x0: usize, x1: usize) -> Option<Vector> {
    let i = edge_index(m, top, x0, x1)?;
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    Some(v)
}

fn atoms(top: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&b| top >> b & 1 == 1).map(|b| 1 << b).collect()
}

/// The presentation expected for the Hall algebra of the `L`-simplex set of a
/// built-in monoid, with generator images:
///
/// * `trunc:L`: `x ↦ (L-1, 1)`, or `0` when `L = 0`;
/// * `zmod:m`: `x ↦ (L-1, 1)`;
/// * `pset-disjoint:k`: `x_i ↦ (L ∖ {a_i}, {a_i})` for the atoms `a_i ⊆ L`;
/// * `pset-union:k`: `x_i ↦ (L, {a_i})`.
pub fn standard_presentation(
    kind: &MonoidKind,
    m: &PartialMonoid,
    top: usize,
) -> Option<(Presentation, BTreeMap<String, Vector>)> {
    let dim = simplex_level(m, top, 1).len();
    let single = |p: Presentation, v: Vector| Some((p, BTreeMap::from([("x".to_string(), v)])));
    match kind {
        MonoidKind::Trunc(_) => {
            if top == 0 {
                return single(Presentation::truncated(0), vec![Rational::zero(); dim]);
            }
            single(Presentation::truncated(top), edge_vector(m, top, dim, top - 1, 1)?)
        }
        MonoidKind::ZMod(order) => {
            let x0 = (top + order - 1) % order;
            single(Presentation::cyclic(*order), edge_vector(m, top, dim, x0, 1 % order)?)
        }
        MonoidKind::PsetDisjoint(_) | MonoidKind::PsetUnion(_) => {
            let atoms = atoms(top);
            let union = matches!(kind, MonoidKind::PsetUnion(_));
            let p = if union {
                Presentation::cubic_idempotent(atoms.len())
            } else {
                Presentation::square_zero(atoms.len())
            };
            let mut images = BTreeMap::new();
            for (name, &a) in p.generator_names.iter().zip(&atoms) {
                let x0 = if union { top } else { top & !a };
                images.insert(name.clone(), edge_vector(m, top, dim, x0, a)?);
            }
            Some((p, images))
        }
        MonoidKind::Table(_) => None,
    }
}

/// For the union monoid with `L = S`: `x_i^2 = x_i + y_i` and `x_i y_i = 0`
/// where `x_i = (S, {a_i})` and `y_i = (S ∖ {a_i}, {a_i})`.
pub fn check_union_identities(a: &HallAlgebra, m: &PartialMonoid, top: usize) -> CheckReport {
    let mut report = CheckReport::new();
    let dim = a.dimension();
    for (i, atom) in atoms(top).into_iter().enumerate() {
        let (Some(x), Some(y)) = (
            edge_vector(m, top, dim, top, atom),
            edge_vector(m, top, dim, top & !atom, atom),
        ) else {
            report.push(Violation::new("union_generators", 1, vec![i], 0));
            continue;
        };
        let xx = a.multiply(&x, &x).expect("lengths match");
        let sum: Vector = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        if let Some(w) = first_difference(&xx, &sum) {
            report.push(Violation::new("union_square", 1, vec![i], w));
        }
        let xy = a.multiply(&x, &y).expect("lengths match");
        if let Some(w) = first_nonzero(&xy) {
            report.push(Violation::new("union_orthogonal", 1, vec![i], w));
        }
    }
    report.finished()
}
