use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use magicstar_core::algebra::ALGEBRA_LIMIT;
use magicstar_core::star::{self, Axes};
use magicstar_core::verify::{run, Suite};
use magicstar_core::{AlgebraElement, AlgebraId, BasisIndex, Family, MagicStarAlgebra, Mode};
use num_rational::Rational64;

fn err(e: magicstar_core::Error) -> PyErr {
    match e {
        magicstar_core::Error::Io(e) => PyOSError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn algebra_id(family: &str, level: u32) -> PyResult<AlgebraId> {
    let f: Family = family.parse().map_err(PyValueError::new_err)?;
    AlgebraId::new(f, level).map_err(err)
}

fn fraction<'py>(py: Python<'py>, q: Rational64) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*q.numer(), *q.denom()))
}

/// Root set of one family and level; coordinates are stored scaled to integers.
#[pyclass(name = "RootSystem", module = "magicstar", frozen)]
struct PyRootSystem {
    inner: magicstar_core::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    #[pyo3(signature = (family, level = 1))]
    fn new(family: &str, level: u32) -> PyResult<Self> {
        let inner = magicstar_core::RootSystem::generate(algebra_id(family, level)?).map_err(err)?;
        Ok(PyRootSystem { inner })
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.id().family().to_string()
    }

    #[getter]
    fn level(&self) -> u32 {
        self.inner.id().level()
    }

    /// Stored coordinate = scale × coefficient of `k_i`.
    #[getter]
    fn scale(&self) -> i32 {
        self.inner.id().coord_scale()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn root(&self, i: usize) -> PyResult<Vec<i32>> {
        self.check(i)?;
        Ok(self.inner.root(i).coords().to_vec())
    }

    fn roots(&self) -> Vec<Vec<i32>> {
        self.inner.roots().iter().map(|r| r.coords().to_vec()).collect()
    }

    fn sector(&self, i: usize) -> PyResult<String> {
        self.check(i)?;
        Ok(format!("{:?}", self.inner.sector(i)).to_lowercase())
    }

    fn index_of(&self, coords: Vec<i32>) -> Option<usize> {
        self.inner.index_of(&coords)
    }

    fn inner_product<'py>(&self, py: Python<'py>, a: usize, b: usize) -> PyResult<Bound<'py, PyAny>> {
        self.check(a)?;
        self.check(b)?;
        fraction(py, self.inner.inner(a, b))
    }

    fn to_tsv(&self) -> String {
        self.inner.to_tsv()
    }

    /// `{(r, s): {"orth", "spin", "roots"}}` for axes `"123"` or `"456"` (nested).
    #[pyo3(signature = (axes = "123"))]
    fn star<'py>(&self, py: Python<'py>, axes: &str) -> PyResult<Bound<'py, PyDict>> {
        let cells = self.cells(axes)?;
        let out = PyDict::new(py);
        for (k, c) in cells {
            let d = PyDict::new(py);
            d.set_item("orth", c.orth)?;
            d.set_item("spin", c.spin)?;
            d.set_item("roots", c.roots)?;
            out.set_item(k, d)?;
        }
        Ok(out)
    }

    #[pyo3(signature = (axes = "123"))]
    fn star_svg(&self, axes: &str) -> PyResult<String> {
        let cells = self.cells(axes)?;
        let id = self.inner.id();
        Ok(star::star_svg(&format!("{} n={} axes={axes}", id.family(), id.level()), &cells))
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}', {}) with {} roots", self.family(), self.level(), self.inner.len())
    }
}

impl PyRootSystem {
    fn check(&self, i: usize) -> PyResult<()> {
        if i < self.inner.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("root index {i} out of range 0..{}", self.inner.len())))
        }
    }

    fn cells(&self, axes: &str) -> PyResult<star::Star> {
        let axes: Axes = axes.parse().map_err(PyValueError::new_err)?;
        match axes {
            Axes::K123 => star::project_axes(&self.inner, axes),
            Axes::K456 => star::project_nested(&self.inner),
        }
        .map_err(err)
    }
}

/// Element of an algebra: a sparse rational combination of `h_i` and `x[a]`.
#[pyclass(name = "Element", module = "magicstar", frozen)]
struct PyElement {
    inner: AlgebraElement,
}

#[pymethods]
impl PyElement {
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `[(label, Fraction)]` in basis order, labels `h1…` and `x[a]`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        self.inner.terms().iter().map(|(b, &c)| Ok((b.to_string(), fraction(py, c)?))).collect()
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.add(&other.inner.neg()).map_err(err)? })
    }

    fn __neg__(&self) -> PyElement {
        PyElement { inner: self.inner.neg() }
    }

    fn __mul__(&self, k: i64) -> PyElement {
        PyElement { inner: self.inner.scale(Rational64::from(k)) }
    }

    fn __rmul__(&self, k: i64) -> PyElement {
        self.__mul__(k)
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }
}

/// The algebra `H ⊕ ⊕ L_α` of an `e6`, `e7` or `e8` family at one level.
#[pyclass(name = "Algebra", module = "magicstar", frozen)]
struct PyAlgebra {
    inner: MagicStarAlgebra,
}

#[pymethods]
impl PyAlgebra {
    #[new]
    #[pyo3(signature = (family, level = 1))]
    fn new(family: &str, level: u32) -> PyResult<Self> {
        Ok(PyAlgebra { inner: MagicStarAlgebra::new(algebra_id(family, level)?).map_err(err)? })
    }

    #[classattr]
    fn root_limit() -> usize {
        ALGEBRA_LIMIT
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn root_system(&self) -> PyRootSystem {
        PyRootSystem { inner: self.inner.system().clone() }
    }

    /// Basis element `k`: Cartan generators first, then roots in root order.
    fn basis(&self, k: usize) -> PyResult<PyElement> {
        if k >= self.inner.dim() {
            return Err(PyValueError::new_err(format!("basis index {k} out of range 0..{}", self.inner.dim())));
        }
        Ok(PyElement { inner: self.inner.element(self.inner.basis_at(k)) })
    }

    /// `h_i`, zero-based.
    fn cartan(&self, i: usize) -> PyResult<PyElement> {
        if i >= self.inner.rank() {
            return Err(PyValueError::new_err(format!("Cartan index {i} out of range 0..{}", self.inner.rank())));
        }
        Ok(PyElement { inner: self.inner.element(BasisIndex::Cartan(i)) })
    }

    /// `x_α` for a root given by its stored coordinates.
    fn root(&self, coords: Vec<i32>) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.root_element(&coords).map_err(err)? })
    }

    fn root_at(&self, a: usize) -> PyResult<PyElement> {
        if a >= self.inner.system().len() {
            return Err(PyValueError::new_err(format!("root index {a} out of range")));
        }
        Ok(PyElement { inner: self.inner.element(BasisIndex::Root(a)) })
    }

    fn bracket(&self, x: &PyElement, y: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.bracket(&x.inner, &y.inner).map_err(err)? })
    }

    fn jacobiator(&self, x: &PyElement, y: &PyElement, z: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.jacobiator(&x.inner, &y.inner, &z.inner).map_err(err)? })
    }

    /// `ε(a, b)` for two root indices.
    fn epsilon(&self, a: usize, b: usize) -> PyResult<i32> {
        let len = self.inner.system().len();
        if a >= len || b >= len {
            return Err(PyValueError::new_err(format!("root index out of range 0..{len}")));
        }
        Ok(self.inner.eps(a, b))
    }

    fn decomposition(&self, a: usize) -> PyResult<Vec<i64>> {
        if a >= self.inner.system().len() {
            return Err(PyValueError::new_err(format!("root index {a} out of range")));
        }
        Ok(self.inner.decomposition(a).coeffs.clone())
    }

    /// Witness triple for a spinorial root; indices select six free coordinates.
    #[pyo3(signature = (alpha, indices = [0, 1, 2, 3, 4, 5]))]
    fn jacobi_witness<'py>(&self, py: Python<'py>, alpha: usize, indices: [usize; 6]) -> PyResult<Bound<'py, PyDict>> {
        let w = self.inner.jacobi_witness(alpha, indices).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("alpha", w.alpha)?;
        d.set_item("beta", w.beta)?;
        d.set_item("gamma", w.gamma)?;
        d.set_item("sum", w.sum)?;
        d.set_item("expected_sign", w.expected_sign)?;
        d.set_item("value", PyElement { inner: w.value.clone() })?;
        d.set_item("is_expected", w.is_expected())?;
        Ok(d)
    }

    fn structure_constants(&self) -> String {
        self.inner.structure_constants().to_text()
    }

    fn __repr__(&self) -> String {
        let id = self.inner.id();
        format!("Algebra('{}', {}) of dimension {}", id.family(), id.level(), self.inner.dim())
    }
}

/// Runs verification suites; returns `[(suite, passed, report_text)]`.
#[pyfunction]
#[pyo3(signature = (family, level = 1, suites = "all", mode = None, samples = 1_000_000, seed = 0))]
fn verify(
    py: Python<'_>,
    family: &str,
    level: u32,
    suites: &str,
    mode: Option<&str>,
    samples: u64,
    seed: u64,
) -> PyResult<Vec<(String, bool, String)>> {
    let id = algebra_id(family, level)?;
    let suites = Suite::parse_list(suites).map_err(PyValueError::new_err)?;
    let mode = match mode {
        None => Mode::default_for(level, samples, seed),
        Some("exhaustive") => Mode::Exhaustive,
        Some("sampled") => Mode::Sampled { samples, seed },
        Some(m) => return Err(PyValueError::new_err(format!("unknown mode `{m}`"))),
    };
    let reports = py.detach(|| run(id, &suites, mode, seed)).map_err(err)?;
    Ok(reports.into_iter().map(|r| (r.suite.clone(), r.passed(), r.to_string())).collect())
}

#[pymodule]
fn magicstar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
