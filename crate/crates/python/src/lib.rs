//! Python bindings: monoids, their `L`-simplex sets, Hall algebras and
//! closed-surface invariants. Rationals cross the boundary as
//! `fractions.Fraction`; bulky reports as JSON strings.

use std::collections::BTreeMap;
use std::fmt::Display;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cosym::constructions::simplex_set;
use cosym::export::{algebra_json, linear_json, span_json, structured_set_json, to_pretty};
use cosym::hall::{check_associativity, check_commutativity, check_frobenius, check_unit, hall_algebra};
use cosym::linalg::{rational, Rational};
use cosym::monoid_spec::{parse_monoid_kind, MonoidKind};
use cosym::simplicial::{
    check_cosymmetric_relations, check_nn_pullbacks, check_simplicial_relations, check_two_segal, check_unitality,
};
use cosym::suite::{resolve_element, run_check_suite};
use cosym::tqft::{
    closed_surface_word, closed_word_routes, evaluate_linear, evaluate_span, generator_spans, CobordismWord,
    DEFAULT_APEX_LIMIT,
};
use cosym::{FinMap, PartialMonoid, StructuredSet};

create_exception!(cosym_py, CosymError, PyValueError);

fn err<E: Display>(e: E) -> PyErr {
    CosymError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    // BigRational prints as `n/d` or `n`, both accepted by Fraction
    cls.call1((q.to_string(),))
}

fn images(f: &FinMap) -> Vec<usize> {
    (0..f.domain().size()).map(|i| f.apply(i)).collect()
}

/// A finite partial monoid built from a spec such as `trunc:3` or `zmod:4`.
#[pyclass(name = "Monoid", module = "cosym_py", frozen)]
struct PyMonoid {
    kind: MonoidKind,
    inner: PartialMonoid,
}

impl PyMonoid {
    fn element(&self, label: &str) -> PyResult<usize> {
        resolve_element(&self.inner, label).map_err(err)
    }
}

#[pymethods]
impl PyMonoid {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let kind = parse_monoid_kind(spec).map_err(err)?;
        let inner = kind.build().map_err(err)?;
        Ok(PyMonoid { kind, inner })
    }

    #[getter]
    fn spec(&self) -> String {
        self.kind.to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn identity(&self) -> String {
        self.inner.label(self.inner.identity())
    }

    fn labels(&self) -> Vec<String> {
        (0..self.inner.size()).map(|x| self.inner.label(x)).collect()
    }

    /// The product of two labelled elements, or `None` when undefined.
    fn op(&self, x: &str, y: &str) -> PyResult<Option<String>> {
        Ok(self.inner.op(self.element(x)?, self.element(y)?).map(|z| self.inner.label(z)))
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_effect_algebra(&self, top: &str) -> PyResult<bool> {
        Ok(self.inner.is_effect_algebra(self.element(top)?))
    }

    fn has_orthocomplements(&self, top: &str) -> PyResult<bool> {
        Ok(self.inner.has_orthocomplement_property(self.element(top)?))
    }

    #[pyo3(signature = (top, level = 4))]
    fn simplex_set(&self, top: &str, level: usize) -> PyResult<PySimplexSet> {
        let x = simplex_set(&self.inner, self.element(top)?, level).map_err(err)?;
        Ok(PySimplexSet { inner: x })
    }

    /// Runs the full check suite; returns `(passed, report_json)`.
    #[pyo3(signature = (top, level = 4))]
    fn check(&self, top: &str, level: usize) -> PyResult<(bool, String)> {
        let out = run_check_suite(Some(&self.kind), &self.inner, self.element(top)?, level).map_err(err)?;
        Ok((out.passed(), out.to_json_string()))
    }

    fn __repr__(&self) -> String {
        format!("Monoid('{}')", self.kind)
    }
}

/// A truncated cosymmetric set with its structure maps as index tables.
#[pyclass(name = "SimplexSet", module = "cosym_py", frozen)]
struct PySimplexSet {
    inner: StructuredSet,
}

impl PySimplexSet {
    fn level_index(&self, n: usize) -> PyResult<()> {
        if n > self.inner.truncation() {
            return Err(err(format!("level {n} exceeds truncation {}", self.inner.truncation())));
        }
        Ok(())
    }
}

#[pymethods]
impl PySimplexSet {
    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation()
    }

    fn level_sizes(&self) -> Vec<usize> {
        self.inner.level_sizes()
    }

    fn level(&self, n: usize) -> PyResult<Vec<String>> {
        self.level_index(n)?;
        let l = self.inner.level(n);
        Ok((0..l.size()).map(|e| l.label(e)).collect())
    }

    fn face(&self, n: usize, i: usize) -> PyResult<Vec<usize>> {
        self.level_index(n)?;
        if n == 0 || i > n {
            return Err(err(format!("no face d_{i} on level {n}")));
        }
        Ok(images(self.inner.face(n, i)))
    }

    fn degeneracy(&self, n: usize, i: usize) -> PyResult<Vec<usize>> {
        if n >= self.inner.truncation() || i > n {
            return Err(err(format!("no degeneracy s_{i} on level {n}")));
        }
        Ok(images(self.inner.degeneracy(n, i)))
    }

    fn tau(&self, n: usize) -> PyResult<Vec<usize>> {
        self.level_index(n)?;
        self.inner.tau(n).map(images).ok_or_else(|| err("no cyclic operator"))
    }

    fn theta(&self, n: usize, i: usize) -> PyResult<Vec<usize>> {
        self.level_index(n)?;
        self.inner.theta(n, i).map(images).ok_or_else(|| err(format!("no theta_{i} on level {n}")))
    }

    /// Pass/fail of the main relation and Segal checks, keyed by name.
    fn checks(&self) -> PyResult<BTreeMap<&'static str, bool>> {
        let x = &self.inner;
        Ok(BTreeMap::from([
            ("simplicial", check_simplicial_relations(x).passed),
            ("cosymmetric", check_cosymmetric_relations(x).map_err(err)?.passed),
            ("unitality", check_unitality(x).passed),
            ("two_segal", check_two_segal(x).passed),
            ("nn_pullbacks", check_nn_pullbacks(x).passed),
        ]))
    }

    fn hall_algebra(&self) -> PyResult<PyHallAlgebra> {
        Ok(PyHallAlgebra {
            inner: hall_algebra(&self.inner).map_err(err)?,
        })
    }

    /// Closed genus-`g` surface invariant; both evaluation routes must agree.
    #[pyo3(signature = (genus, apex_limit = DEFAULT_APEX_LIMIT))]
    fn surface_invariant<'py>(&self, py: Python<'py>, genus: usize, apex_limit: usize) -> PyResult<Bound<'py, PyAny>> {
        let g = generator_spans(&self.inner).map_err(err)?;
        let a = hall_algebra(&self.inner).map_err(err)?;
        let r = closed_word_routes(&closed_surface_word(genus), &g, &a, apex_limit).map_err(err)?;
        if !r.agree() {
            return Err(err(format!("routes disagree: span {} vs matrix {}", r.span_value, r.matrix_value)));
        }
        fraction(py, &r.matrix_value)
    }

    /// Evaluates a cobordism word such as `"comult;mult"` to JSON with the
    /// span data and, when the pairing is nondegenerate, the matrix.
    #[pyo3(signature = (word, apex_limit = DEFAULT_APEX_LIMIT))]
    fn evaluate_word(&self, word: &str, apex_limit: usize) -> PyResult<String> {
        let w = CobordismWord::parse(word).map_err(err)?;
        let span = evaluate_span(&w, &generator_spans(&self.inner).map_err(err)?, apex_limit).map_err(err)?;
        let mut v = span_json(&w, &span);
        let a = hall_algebra(&self.inner).map_err(err)?;
        if let Ok(m) = evaluate_linear(&w, &a) {
            v["matrix"] = linear_json(&w, &m)["matrix"].clone();
        }
        Ok(to_pretty(&v))
    }

    fn to_json(&self) -> String {
        to_pretty(&structured_set_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("SimplexSet(level_sizes={:?})", self.inner.level_sizes())
    }
}

/// The Hall algebra on the edges of a simplex set.
#[pyclass(name = "HallAlgebra", module = "cosym_py", frozen)]
struct PyHallAlgebra {
    inner: cosym::hall::HallAlgebra,
}

#[pymethods]
impl PyHallAlgebra {
    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn basis(&self) -> Vec<String> {
        let b = self.inner.basis();
        (0..b.size()).map(|i| b.label(i)).collect()
    }

    /// Coefficient of basis element `z` in the product of `x` and `y`.
    fn structure_constant(&self, x: usize, y: usize, z: usize) -> PyResult<i64> {
        let d = self.inner.dimension();
        if x >= d || y >= d || z >= d {
            return Err(err(format!("basis index out of range for dimension {d}")));
        }
        Ok(self.inner.structure_constant(x, y, z))
    }

    /// Product of two integer coordinate vectors.
    fn multiply<'py>(&self, py: Python<'py>, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let to_q = |v: Vec<i64>| v.into_iter().map(rational).collect::<Vec<_>>();
        let c = self.inner.multiply(&to_q(a), &to_q(b)).map_err(err)?;
        c.iter().map(|q| fraction(py, q)).collect()
    }

    fn pairing_determinant<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.inner.pairing_determinant().map(|d| fraction(py, &d)).transpose()
    }

    fn checks(&self) -> BTreeMap<&'static str, bool> {
        let a = &self.inner;
        BTreeMap::from([
            ("associativity", check_associativity(a).passed),
            ("commutativity", check_commutativity(a).passed),
            ("unit", check_unit(a).passed),
            ("frobenius", check_frobenius(a).passed),
        ])
    }

    fn to_json(&self) -> String {
        to_pretty(&algebra_json(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("HallAlgebra(dimension={})", self.inner.dimension())
    }
}

#[pymodule]
fn cosym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CosymError", m.py().get_type::<CosymError>())?;
    m.add("DEFAULT_APEX_LIMIT", DEFAULT_APEX_LIMIT)?;
    m.add_class::<PyMonoid>()?;
    m.add_class::<PySimplexSet>()?;
    m.add_class::<PyHallAlgebra>()?;
    Ok(())
}
