//! Open 2D cobordisms presented as layered words in pants, disks, cylinders
//! and the swap, evaluated as spans of finite sets and as matrices over the
//! Hall algebra.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::finset::{compose_spans_limited, spans_isomorphic, tensor_spans, FinMap, FinSet, FinSetError, Span};
use crate::hall::{HallAlgebra, HallError};
use crate::linalg::{rational, Rational, RationalMatrix};
use crate::simplicial::StructuredSet;

/// Default bound on intermediate apex sizes.
pub const DEFAULT_APEX_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TqftError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("layer {layer} expects {expected} inputs but the previous layer has {got} outputs")]
    Width { layer: usize, expected: usize, got: usize },
    #[error("boundary profiles differ: {0:?} vs {1:?}")]
    ProfileMismatch((usize, usize), (usize, usize)),
    #[error("generator spans need truncation at least 2 and τ")]
    MissingStructure,
    #[error("span and matrix routes disagree: {} vs {}", .0.span_value, .0.matrix_value)]
    RouteMismatch(Box<SurfaceRoutes>),
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    FinSet(#[from] FinSetError),
}

pub type Result<T> = std::result::Result<T, TqftError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Unit,
    Counit,
    Mult,
    Comult,
    Ident,
    Swap,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Unit,
        Generator::Counit,
        Generator::Mult,
        Generator::Comult,
        Generator::Ident,
        Generator::Swap,
    ];

    /// `(inputs, outputs)`.
    pub fn profile(self) -> (usize, usize) {
        match self {
            Generator::Unit => (0, 1),
            Generator::Counit => (1, 0),
            Generator::Mult => (2, 1),
            Generator::Comult => (1, 2),
            Generator::Ident => (1, 1),
            Generator::Swap => (2, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Unit => "unit",
            Generator::Counit => "counit",
            Generator::Mult => "mult",
            Generator::Comult => "comult",
            Generator::Ident => "ident",
            Generator::Swap => "swap",
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unit" => Ok(Generator::Unit),
            "counit" => Ok(Generator::Counit),
            "mult" => Ok(Generator::Mult),
            "comult" => Ok(Generator::Comult),
            "ident" | "identity" | "id" => Ok(Generator::Ident),
            "swap" => Ok(Generator::Swap),
            _ => Err(format!("unknown generator {s:?}")),
        }
    }
}

/// Layers applied first to last; generators within a layer are tensored left
/// to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CobordismWord {
    layers: Vec<Vec<Generator>>,
}

fn layer_profile(layer: &[Generator]) -> (usize, usize) {
    layer
        .iter()
        .map(|g| g.profile())
        .fold((0, 0), |(a, b), (i, o)| (a + i, b + o))
}

impl CobordismWord {
    pub fn new(layers: Vec<Vec<Generator>>) -> Result<Self> {
        if layers.is_empty() || layers.iter().any(Vec::is_empty) {
            return Err(TqftError::Parse {
                position: 0,
                message: "words need at least one generator per layer".into(),
            });
        }
        for k in 1..layers.len() {
            let got = layer_profile(&layers[k - 1]).1;
            let expected = layer_profile(&layers[k]).0;
            if got != expected {
                return Err(TqftError::Width { layer: k, expected, got });
            }
        }
        Ok(CobordismWord { layers })
    }

    /// Parses `"unit;comult;mult;counit"`: layers split on `;`, generators on `,`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut layers = Vec::new();
        let mut pos = 0;
        for layer in s.split(';') {
            let mut gens = Vec::new();
            let mut gpos = pos;
            for g in layer.split(',') {
                let lead = g.len() - g.trim_start().len();
                let name = g.trim();
                if name.is_empty() {
                    return Err(TqftError::Parse {
                        position: gpos + lead,
                        message: "empty generator".into(),
                    });
                }
                gens.push(name.parse().map_err(|message| TqftError::Parse {
                    position: gpos + lead,
                    message,
                })?);
                gpos += g.len() + 1;
            }
            layers.push(gens);
            pos += layer.len() + 1;
        }
        Self::new(layers)
    }

    pub fn layers(&self) -> &[Vec<Generator>] {
        &self.layers
    }

    /// `(inputs, outputs)` of the whole word.
    pub fn profile(&self) -> (usize, usize) {
        (
            layer_profile(&self.layers[0]).0,
            layer_profile(self.layers.last().expect("nonempty")).1,
        )
    }

    /// Number of pants (`mult` and `comult`).
    pub fn pants(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .filter(|g| matches!(g, Generator::Mult | Generator::Comult))
            .count()
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let layers: Vec<String> = self
            .layers
            .iter()
            .map(|l| l.iter().map(|g| g.name()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", layers.join(";"))
    }
}

impl FromStr for CobordismWord {
    type Err = TqftError;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The six generating spans of a cosymmetric set.
#[derive(Debug, Clone)]
pub struct GeneratorSpans {
    pub edges: FinSet,
    pub mult: Span,
    pub unit: Span,
    pub comult: Span,
    pub counit: Span,
    pub ident: Span,
    pub swap: Span,
}

/// `mult = (X_1 × X_1 ← X_2 → X_1)` with legs `(d_2, d_0)` and `d_1`;
/// `unit = (pt ← X_0 → X_1)` via `s_0`; `comult = (X_1 ← X_2 → X_1 × X_1)`
/// with legs `d_0` and `(τ d_2, d_1)`; `counit = (X_1 ← X_0 → pt)` via the
/// extra degeneracy `s_1^0`.
pub fn generator_spans(x: &StructuredSet) -> Result<GeneratorSpans> {
    if x.truncation() < 2 || !x.has_tau() {
        return Err(TqftError::MissingStructure);
    }
    let edges = x.level(1).clone();
    let (d0, d1, d2) = (x.face(2, 0), x.face(2, 1), x.face(2, 2));
    let tau1 = x.tau(1).expect("τ present");
    let mult = Span::new(d2.pair(d0)?, d1.clone())?;
    let unit = Span::new(FinMap::to_point(x.level(0)), x.degeneracy(0, 0).clone())?;
    let comult = Span::new(d0.clone(), d2.then(tau1)?.pair(d1)?)?;
    let s10 = x.extra_degeneracy(0).map_err(|_| TqftError::MissingStructure)?;
    let counit = Span::new(s10, FinMap::to_point(x.level(0)))?;
    let square = edges.product(&edges);
    let n = edges.size();
    let swap_map = FinMap::new(square.clone(), square.clone(), (0..n * n).map(|k| (k % n) * n + k / n).collect())?;
    Ok(GeneratorSpans {
        ident: Span::identity(&edges),
        swap: Span::from_map(&swap_map),
        edges,
        mult,
        unit,
        comult,
        counit,
    })
}

impl GeneratorSpans {
    pub fn get(&self, g: Generator) -> &Span {
        match g {
            Generator::Unit => &self.unit,
            Generator::Counit => &self.counit,
            Generator::Mult => &self.mult,
            Generator::Comult => &self.comult,
            Generator::Ident => &self.ident,
            Generator::Swap => &self.swap,
        }
    }
}

fn check_limit(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(FinSetError::ApexLimit { size, limit }.into())
    } else {
        Ok(())
    }
}

/// Evaluates `w` in spans, aborting if an apex exceeds `apex_limit`.
pub fn evaluate_span(w: &CobordismWord, g: &GeneratorSpans, apex_limit: usize) -> Result<Span> {
    let mut total: Option<Span> = None;
    for layer in w.layers() {
        let mut acc = g.get(layer[0]).clone();
        for gen in &layer[1..] {
            let next = g.get(*gen);
            check_limit(acc.apex().size().saturating_mul(next.apex().size()), apex_limit)?;
            acc = tensor_spans(&acc, next);
        }
        total = Some(match total {
            None => acc,
            Some(t) => compose_spans_limited(&t, &acc, apex_limit)?,
        });
    }
    Ok(total.expect("words are nonempty"))
}

/// `M[b][a] = #{s : left(s) = a, right(s) = b}`, so composition of spans
/// becomes matrix multiplication.
pub fn linearize(s: &Span) -> RationalMatrix {
    let mut counts = vec![0u64; s.right_foot().size() * s.left_foot().size()];
    let cols = s.left_foot().size();
    for x in 0..s.apex().size() {
        counts[s.right_leg().apply(x) * cols + s.left_leg().apply(x)] += 1;
    }
    RationalMatrix::from_fn(s.right_foot().size(), cols, |r, c| {
        Rational::from_integer(counts[r * cols + c].into())
    })
}

/// A linear map on tensor powers stored column by column, sparsely.
struct LocalMap {
    inputs: usize,
    outputs: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

fn sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn local_maps(a: &HallAlgebra) -> Result<[LocalMap; 6]> {
    let dim = a.dimension();
    let unit = LocalMap {
        inputs: 0,
        outputs: 1,
        columns: vec![sparse(a.unit())],
    };
    let counit_vec = a.counit().ok_or(HallError::MissingTau)?;
    let counit = LocalMap {
        inputs: 1,
        outputs: 0,
        columns: counit_vec
            .iter()
            .map(|c| if c.is_zero() { vec![] } else { vec![(0, c.clone())] })
            .collect(),
    };
    let mult = LocalMap {
        inputs: 2,
        outputs: 1,
        columns: (0..dim * dim)
            .map(|k| {
                a.product_terms(k / dim, k % dim)
                    .iter()
                    .map(|&(z, c)| (z, rational(c)))
                    .collect()
            })
            .collect(),
    };
    let comult = LocalMap {
        inputs: 1,
        outputs: 2,
        columns: a.comultiplication()?.iter().map(|v| sparse(v)).collect(),
    };
    let ident = LocalMap {
        inputs: 1,
        outputs: 1,
        columns: (0..dim).map(|x| vec![(x, Rational::one())]).collect(),
    };
    let swap = LocalMap {
        inputs: 2,
        outputs: 2,
        columns: (0..dim * dim)
            .map(|k| vec![((k % dim) * dim + k / dim, Rational::one())])
            .collect(),
    };
    Ok([unit, counit, mult, comult, ident, swap])
}

fn local_index(g: Generator) -> usize {
    Generator::ALL.iter().position(|&h| h == g).expect("listed")
}

/// Applies `g` to tensor factors `off .. off + g.inputs` of `v ∈ A^{⊗k}`.
fn apply_local(v: &[Rational], dim: usize, k: usize, off: usize, g: &LocalMap) -> Vec<Rational> {
    let post = dim.pow((k - off - g.inputs) as u32);
    let mid_in = dim.pow(g.inputs as u32);
    let mid_out = dim.pow(g.outputs as u32);
    let pre = dim.pow(off as u32);
    let mut out = vec![Rational::zero(); pre * mid_out * post];
    for (idx, val) in v.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        let (p, rem) = (idx / (mid_in * post), idx % (mid_in * post));
        let (mi, q) = (rem / post, rem % post);
        for (mo, c) in &g.columns[mi] {
            out[(p * mid_out + mo) * post + q] += val * c;
        }
    }
    out
}

/// Evaluates `w` as a `dim^out × dim^in` matrix; the comultiplication is the
/// `β`-dual of the multiplication. Layers are applied factor by factor so
/// Kronecker products are never formed.
pub fn evaluate_linear(w: &CobordismWord, a: &HallAlgebra) -> Result<RationalMatrix> {
    let maps = local_maps(a)?;
    let dim = a.dimension();
    let (inputs, outputs) = w.profile();
    let cols = dim.pow(inputs as u32);
    let mut result = RationalMatrix::zeros(dim.pow(outputs as u32), cols);
    for col in 0..cols {
        let mut v = vec![Rational::zero(); cols];
        v[col] = Rational::one();
        let mut width = inputs;
        for layer in w.layers() {
            let mut off = 0;
            for gen in layer {
                let g = &maps[local_index(*gen)];
                v = apply_local(&v, dim, width, off, g);
                width = width - g.inputs + g.outputs;
                off += g.outputs;
            }
        }
        for (r, x) in v.into_iter().enumerate() {
            result.set(r, col, x);
        }
    }
    Ok(result)
}

/// `unit; (comult; mult)^g; counit`.
pub fn closed_surface_word(genus: usize) -> CobordismWord {
    let mut layers = vec![vec![Generator::Unit]];
    for _ in 0..genus {
        layers.push(vec![Generator::Comult]);
        layers.push(vec![Generator::Mult]);
    }
    layers.push(vec![Generator::Counit]);
    CobordismWord::new(layers).expect("well-formed")
}

/// A different pants decomposition of the same closed surface: two caps
/// merged for the sphere, a twisted handle for the torus, and handles
/// threaded through a chain of Frobenius moves for higher genus.
pub fn closed_surface_alternative(genus: usize) -> CobordismWord {
    use Generator::*;
    let layers = match genus {
        0 => vec![vec![Unit, Unit], vec![Mult], vec![Counit]],
        1 => vec![vec![Unit], vec![Comult], vec![Swap], vec![Mult], vec![Counit]],
        _ => {
            let mut l = vec![vec![Unit], vec![Comult]];
            for _ in 1..genus {
                l.push(vec![Comult, Ident]);
                l.push(vec![Ident, Mult]);
            }
            l.push(vec![Mult]);
            l.push(vec![Counit]);
            l
        }
    };
    CobordismWord::new(layers).expect("well-formed")
}

/// Values of a closed word computed both ways.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRoutes {
    pub span_apex: usize,
    pub span_value: Rational,
    pub matrix_value: Rational,
}

impl SurfaceRoutes {
    pub fn agree(&self) -> bool {
        self.span_value == self.matrix_value
    }
}

/// Evaluates a closed word (profile `0 → 0`) in spans and as a matrix.
pub fn closed_word_routes(
    w: &CobordismWord,
    g: &GeneratorSpans,
    a: &HallAlgebra,
    apex_limit: usize,
) -> Result<SurfaceRoutes> {
    if w.profile() != (0, 0) {
        return Err(TqftError::ProfileMismatch(w.profile(), (0, 0)));
    }
    let span = evaluate_span(w, g, apex_limit)?;
    let span_value = linearize(&span).get(0, 0).clone();
    let matrix_value = evaluate_linear(w, a)?.get(0, 0).clone();
    Ok(SurfaceRoutes {
        span_apex: span.apex().size(),
        span_value,
        matrix_value,
    })
}

/// The genus-`g` invariant `ε (m Δ)^g η`, confirmed by the span route.
pub fn closed_surface_invariant(
    genus: usize,
    g: &GeneratorSpans,
    a: &HallAlgebra,
    apex_limit: usize,
) -> Result<Rational> {
    let routes = closed_word_routes(&closed_surface_word(genus), g, a, apex_limit)?;
    if !routes.agree() {
        return Err(TqftError::RouteMismatch(Box::new(routes)));
    }
    Ok(routes.matrix_value)
}

/// Whether two decompositions give isomorphic spans.
pub fn compare_decompositions(
    w1: &CobordismWord,
    w2: &CobordismWord,
    g: &GeneratorSpans,
    apex_limit: usize,
) -> Result<bool> {
    if w1.profile() != w2.profile() {
        return Err(TqftError::ProfileMismatch(w1.profile(), w2.profile()));
    }
    let (s1, s2) = (evaluate_span(w1, g, apex_limit)?, evaluate_span(w2, g, apex_limit)?);
    Ok(spans_isomorphic(&s1, &s2)?)
}

/// Pairs of words presenting the same cobordism: associativity, the two
/// unitors, commutativity, and the Frobenius relation.
pub fn standard_moves() -> Vec<(&'static str, CobordismWord, CobordismWord)> {
    let w = |s: &str| CobordismWord::parse(s).expect("well-formed");
    vec![
        ("associator", w("mult,ident;mult"), w("ident,mult;mult")),
        ("left_unitor", w("unit,ident;mult"), w("ident")),
        ("right_unitor", w("ident,unit;mult"), w("ident")),
        ("commutativity", w("swap;mult"), w("mult")),
        ("frobenius_left", w("comult,ident;ident,mult"), w("mult;comult")),
        ("frobenius_right", w("ident,comult;mult,ident"), w("mult;comult")),
        ("frobenius_sides", w("comult,ident;ident,mult"), w("ident,comult;mult,ident")),
    ]
}

/// The co-side counterparts: coassociativity, counitors, cocommutativity.
pub fn dual_moves() -> Vec<(&'static str, CobordismWord, CobordismWord)> {
    let w = |s: &str| CobordismWord::parse(s).expect("well-formed");
    vec![
        ("coassociator", w("comult;comult,ident"), w("comult;ident,comult")),
        ("left_counitor", w("comult;counit,ident"), w("ident")),
        ("right_counitor", w("comult;ident,counit"), w("ident")),
        ("cocommutativity", w("comult;swap"), w("comult")),
    ]
}
