//! Python bindings: group models, trigonometric polynomials, the algebra
//! norms, the coset maps and the verification suites.
//!
//! Irrep labels cross the boundary as the dicts of the coefficient file
//! format, e.g. `{"label": {"two_j": 1}}`. Group elements are an `int` on
//! finite models, an angle on the circle, a pair `(a, b)` of complex numbers
//! on SU(2) and a 2-tuple on products.

use cfourier_core::coset::{gamma_conv, gamma_twisted, lift_n, lift_n_check};
use cfourier_core::experiments::point_derivation;
use cfourier_core::group::{Element, GroupModel, IrrepLabel, Su2Element};
use cfourier_core::suites::{self, SuiteConfig};
use cfourier_core::trig::{
    algebra_norm, check_involution, convolve, evaluate, multiply, random_trig_poly, tensor, translate,
    AlgebraNormKind, GroupSpec, Side,
};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_python<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(err)
}

fn to_element(g: &GroupModel, obj: &Bound<'_, PyAny>) -> PyResult<Element> {
    let element = match g {
        GroupModel::Finite(_) => Element::Finite(obj.extract()?),
        GroupModel::Torus { .. } => Element::Torus(obj.extract()?),
        GroupModel::Su2 { .. } => {
            let (a, b): (Complex64, Complex64) = obj.extract()?;
            if a.norm_sqr() + b.norm_sqr() == 0.0 {
                return Err(PyValueError::new_err("(a, b) must be nonzero"));
            }
            Element::Su2(Su2Element::from_ab(a, b))
        }
        GroupModel::Product(left, right) => {
            let pair = obj.cast::<PyTuple>()?;
            if pair.len() != 2 {
                return Err(PyValueError::new_err("product elements are 2-tuples"));
            }
            Element::pair(to_element(left, &pair.get_item(0)?)?, to_element(right, &pair.get_item(1)?)?)
        }
    };
    g.validate_element(&element).map_err(err)?;
    Ok(element)
}

fn from_element<'py>(py: Python<'py>, s: &Element) -> PyResult<Bound<'py, PyAny>> {
    Ok(match s {
        Element::Finite(i) => i.into_pyobject(py)?.into_any(),
        Element::Torus(t) => t.into_pyobject(py)?.into_any(),
        Element::Su2(u) => {
            let m = u.matrix();
            (m[0][0], m[1][0]).into_pyobject(py)?.into_any()
        }
        Element::Pair(a, b) => (from_element(py, a)?, from_element(py, b)?).into_pyobject(py)?.into_any(),
    })
}

/// A group model with a finite cutoff on its dual.
#[pyclass(name = "Group", module = "cfourier", frozen)]
struct PyGroup {
    inner: GroupModel,
}

#[pymethods]
impl PyGroup {
    /// A built-in name (`z2`..`z12`, `s3`, `d4`, `q8`, `su2`, `torus`,
    /// products such as `s3xs3`). `max_spin` bounds SU(2) spins and sets the
    /// circle cutoff to `2 * max_spin`.
    #[new]
    #[pyo3(signature = (name, max_spin = 2.0))]
    fn new(name: &str, max_spin: f64) -> PyResult<Self> {
        let two_j = 2.0 * max_spin;
        if !(0.0..=64.0).contains(&two_j) || two_j.fract() != 0.0 {
            return Err(PyValueError::new_err("max_spin must be a half-integer in [0, 32]"));
        }
        Ok(PyGroup { inner: GroupModel::named(name, two_j as u32).map_err(err)? })
    }

    /// A group from its JSON description.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: GroupSpec = serde_json::from_str(text).map_err(err)?;
        Ok(PyGroup { inner: spec.resolve().map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&GroupSpec::of(&self.inner)).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    #[getter]
    fn is_finite(&self) -> bool {
        self.inner.is_finite()
    }

    #[getter]
    fn order(&self) -> Option<usize> {
        self.inner.order()
    }

    fn squared(&self) -> Self {
        PyGroup { inner: self.inner.squared() }
    }

    fn identity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        from_element(py, &self.inner.identity())
    }

    fn multiply<'py>(&self, a: &Bound<'py, PyAny>, b: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let g = &self.inner;
        from_element(a.py(), &g.multiply(&to_element(g, a)?, &to_element(g, b)?).map_err(err)?)
    }

    fn inverse<'py>(&self, a: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let g = &self.inner;
        from_element(a.py(), &g.inverse(&to_element(g, a)?).map_err(err)?)
    }

    fn irreps<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.enumerate_irreps().iter().map(|l| to_python(py, l)).collect()
    }

    fn irrep_dim(&self, label: &Bound<'_, PyAny>) -> PyResult<usize> {
        self.inner.irrep_dim(&from_python(label)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.inner.name())
    }
}

/// A finite sum of matrix coefficients, stored as one coefficient matrix
/// per irrep label.
#[pyclass(name = "TrigPoly", module = "cfourier", frozen)]
struct PyTrigPoly {
    inner: cfourier_core::trig::TrigPoly,
}

type Poly = cfourier_core::trig::TrigPoly;
type Rows = Vec<Vec<Complex64>>;

fn wrap(inner: Poly) -> PyTrigPoly {
    PyTrigPoly { inner }
}

#[pymethods]
impl PyTrigPoly {
    #[staticmethod]
    fn zero(group: &PyGroup) -> Self {
        wrap(Poly::zero(&group.inner))
    }

    #[staticmethod]
    fn constant(group: &PyGroup, c: Complex64) -> Self {
        wrap(Poly::constant(&group.inner, c))
    }

    #[staticmethod]
    fn matrix_coefficient(group: &PyGroup, label: &Bound<'_, PyAny>, i: usize, j: usize) -> PyResult<Self> {
        Poly::matrix_coefficient(&group.inner, &from_python(label)?, i, j).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn character(group: &PyGroup, label: &Bound<'_, PyAny>) -> PyResult<Self> {
        Poly::character(&group.inner, &from_python(label)?).map(wrap).map_err(err)
    }

    /// Seeded random coefficients on every irrep up to the cutoff, or on
    /// `support` when given. `central` gives scalar blocks.
    #[staticmethod]
    #[pyo3(signature = (group, seed, support = None, central = false))]
    fn random(group: &PyGroup, seed: u64, support: Option<Vec<Bound<'_, PyAny>>>, central: bool) -> PyResult<Self> {
        let labels: Vec<IrrepLabel> = match support {
            Some(s) => s.iter().map(from_python).collect::<PyResult<_>>()?,
            None => group.inner.enumerate_irreps(),
        };
        random_trig_poly(&group.inner, &labels, seed, central).map(wrap).map_err(err)
    }

    /// Builds a polynomial from `[(label, matrix), ...]`.
    #[staticmethod]
    fn from_coeffs(group: &PyGroup, coeffs: Vec<(Bound<'_, PyAny>, Rows)>) -> PyResult<Self> {
        let mut blocks = Vec::new();
        for (label, rows) in coeffs {
            let label: IrrepLabel = from_python(&label)?;
            let ncols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != ncols) {
                return Err(PyValueError::new_err("ragged matrix"));
            }
            let m = cfourier_core::linalg::CMat::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
            blocks.push((label, m));
        }
        Poly::new(&group.inner, blocks).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Poly::from_json_str(text).map(wrap).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup { inner: self.inner.group().clone() }
    }

    /// `[(label, matrix), ...]` in label order.
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyAny>, Rows)>> {
        self.inner
            .coeffs()
            .iter()
            .map(|(label, m)| {
                let rows = m.row_iter().map(|r| r.iter().copied().collect()).collect();
                Ok((to_python(py, label)?, rows))
            })
            .collect()
    }

    fn canonical(&self) -> PyResult<Self> {
        self.inner.canonical().map(wrap).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __call__(&self, s: &Bound<'_, PyAny>) -> PyResult<Complex64> {
        evaluate(&self.inner, &to_element(self.inner.group(), s)?).map_err(err)
    }

    /// `a`, `adelta`, `adelta:n` or `agamma`.
    #[pyo3(signature = (kind = "a"))]
    fn norm(&self, kind: &str) -> PyResult<f64> {
        let kind: AlgebraNormKind = kind.parse().map_err(err)?;
        algebra_norm(&self.inner, kind).map_err(err)
    }

    fn max_abs_diff(&self, other: &PyTrigPoly) -> PyResult<f64> {
        self.inner.max_abs_diff(&other.inner).map_err(err)
    }

    fn __add__(&self, other: &PyTrigPoly) -> PyResult<Self> {
        self.inner.add(&other.inner).map(wrap).map_err(err)
    }

    fn __sub__(&self, other: &PyTrigPoly) -> PyResult<Self> {
        self.inner.sub(&other.inner).map(wrap).map_err(err)
    }

    fn scale(&self, c: Complex64) -> Self {
        wrap(self.inner.scale(c))
    }

    /// Pointwise product.
    fn __mul__(&self, other: &PyTrigPoly) -> PyResult<Self> {
        multiply(&self.inner, &other.inner).map(wrap).map_err(err)
    }

    fn convolve(&self, other: &PyTrigPoly) -> PyResult<Self> {
        convolve(&self.inner, &other.inner).map(wrap).map_err(err)
    }

    /// `s -> f(s^-1)`.
    fn check(&self) -> PyResult<Self> {
        check_involution(&self.inner).map(wrap).map_err(err)
    }

    /// `t -> f(s^-1 t)` for `side="left"`, `t -> f(t s)` for `side="right"`.
    #[pyo3(signature = (s, side = "left"))]
    fn translate(&self, s: &Bound<'_, PyAny>, side: &str) -> PyResult<Self> {
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            _ => return Err(PyValueError::new_err("side is 'left' or 'right'")),
        };
        let s = to_element(self.inner.group(), s)?;
        translate(&self.inner, side, &s).map(wrap).map_err(err)
    }

    /// `(s, t) -> f(s) g(t)` on the product group.
    fn tensor(&self, other: &PyTrigPoly) -> Self {
        wrap(tensor(&self.inner, &other.inner))
    }

    /// `(s, t) -> f(s t^-1)`.
    fn lift_n(&self) -> PyResult<Self> {
        lift_n(&self.inner).map(wrap).map_err(err)
    }

    /// `(s, t) -> f(s t)`.
    fn lift_n_check(&self) -> PyResult<Self> {
        lift_n_check(&self.inner).map(wrap).map_err(err)
    }

    /// Left inverse of `lift_n` on the product group.
    fn gamma(&self) -> PyResult<Self> {
        gamma_twisted(&self.inner).map(wrap).map_err(err)
    }

    /// Left inverse of `lift_n_check` on the product group.
    fn gamma_check(&self) -> PyResult<Self> {
        gamma_conv(&self.inner).map(wrap).map_err(err)
    }

    /// The point derivation at the identity of SU(2), with its norm bound
    /// and forward differences.
    fn derivation<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &point_derivation(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("TrigPoly(group='{}', terms={})", self.inner.group().name(), self.inner.coeffs().len())
    }
}

/// Runs a suite (or `all`) and returns its report as dicts.
#[pyfunction]
#[pyo3(signature = (suite, group, seed = 0, samples = 100, tol = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    group: &PyGroup,
    seed: u64,
    samples: usize,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = SuiteConfig { group: group.inner.clone(), seed, tol, samples };
    let results = py.detach(|| suites::run(suite, &cfg)).map_err(err)?;
    to_python(py, &results)
}

#[pymodule]
fn cfourier(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyTrigPoly>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
