//! Python bindings for the `ordlex` toolkit.
//!
//! The module exposes the ordinal arithmetic type ([`Cnf`]) plus text-level
//! entry points that mirror the command-line verbs: classify an automaton
//! file, evaluate it to an ordinal, synthesize an automaton from an ordinal,
//! and query minimal sizes.  Automata travel as `ordaut v1` text, ordinals
//! as `Cnf` objects or normal-form strings, and every library error maps to
//! `ValueError`.

use num_bigint::BigUint;
use ordlex::automaton::{normalize_to_cpa, parse_ordaut, Dfa};
use ordlex::extract::{ordinal_of, ordinal_of_recursive};
use ordlex::synthesis::{min_size_bounded, size_upper_bound, synthesize, DEFAULT_SEARCH_BOUND};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn to_py_err(e: ordlex::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An ordinal below `w^w` in Cantor normal form.
///
/// Construct one by parsing normal-form text (`Cnf("w^3*2 + w")`) or with
/// the `zero`/`from_nat`/`omega_power` factories.  Values are immutable;
/// `+` is ordinal addition (not commutative), and comparisons follow the
/// ordinal order.
#[pyclass(name = "Cnf", frozen, eq, ord, hash, str, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PyCnf {
    inner: ordlex::Cnf,
}

impl From<ordlex::Cnf> for PyCnf {
    fn from(inner: ordlex::Cnf) -> Self {
        Self { inner }
    }
}

impl std::fmt::Display for PyCnf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

#[pymethods]
impl PyCnf {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        ordlex::Cnf::parse(text).map(Self::from).map_err(to_py_err)
    }

    /// The ordinal 0.
    #[staticmethod]
    fn zero() -> Self {
        ordlex::Cnf::ZERO.into()
    }

    /// The finite ordinal `n` (a non-negative integer of any size).
    #[staticmethod]
    fn from_nat(n: BigUint) -> Self {
        ordlex::Cnf::from_nat(n).into()
    }

    /// The ordinal `w^exp`.
    #[staticmethod]
    fn omega_power(exp: usize) -> Self {
        ordlex::Cnf::omega_power(exp).into()
    }

    fn __repr__(&self) -> String {
        format!("Cnf({:?})", self.inner.to_string())
    }

    /// Ordinal addition; also available as the `+` operator.
    fn __add__(&self, other: &Self) -> Self {
        self.inner.add(&other.inner).into()
    }

    /// This ordinal multiplied by `w` on the right.
    fn mul_omega(&self) -> Self {
        self.inner.mul_omega().into()
    }

    /// Whether this is the ordinal 0.
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The exponent of the leading term; raises `ValueError` for 0.
    fn degree(&self) -> PyResult<usize> {
        self.inner.degree().map_err(to_py_err)
    }

    /// The normal form as a list of `(exponent, coefficient)` pairs with
    /// strictly decreasing exponents and positive coefficients.
    fn terms(&self) -> Vec<(usize, BigUint)> {
        self.inner.terms().to_vec()
    }
}

/// Parse `ordaut v1` text and normalize the machine to a trim complete
/// prefix automaton; `Ok(None)` means the language is empty.
fn load_cpa(text: &str) -> Result<Option<Dfa>, ordlex::Error> {
    let parsed = parse_ordaut(text)?;
    match normalize_to_cpa(&parsed) {
        Ok(cpa) => Ok(Some(cpa)),
        Err(ordlex::Error::EmptyLanguage) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Classify the lexicographic order type of the automaton's language:
/// returns `"ordinal"`, `"scattered"`, or `"neither"`.  The empty language
/// counts as `"ordinal"`.
#[pyfunction]
fn check(text: &str) -> PyResult<String> {
    let Some(cpa) = load_cpa(text).map_err(to_py_err)? else {
        return Ok("ordinal".to_owned());
    };
    let kind = if cpa.is_ordinal_automaton().map_err(to_py_err)? {
        "ordinal"
    } else if cpa.is_scattered_automaton().map_err(to_py_err)? {
        "scattered"
    } else {
        "neither"
    };
    Ok(kind.to_owned())
}

/// Evaluate an automaton file's language to its ordinal.  Raises
/// `ValueError` unless the order type is an ordinal; the empty language
/// evaluates to 0.
#[pyfunction]
fn cnf_of(text: &str) -> PyResult<PyCnf> {
    let Some(cpa) = load_cpa(text).map_err(to_py_err)? else {
        return Ok(ordlex::Cnf::ZERO.into());
    };
    let (alpha, _) = ordinal_of(&cpa).map_err(to_py_err)?;
    Ok(alpha.into())
}

/// Independent slow evaluator (bottom-up over states); same contract as
/// `cnf_of`, useful for cross-checking.
#[pyfunction]
fn oracle_of(text: &str) -> PyResult<PyCnf> {
    let Some(cpa) = load_cpa(text).map_err(to_py_err)? else {
        return Ok(ordlex::Cnf::ZERO.into());
    };
    ordinal_of_recursive(&cpa).map(PyCnf::from).map_err(to_py_err)
}

/// Whether the two automaton files have order-isomorphic languages.
#[pyfunction]
fn isomorphic(text_a: &str, text_b: &str) -> PyResult<bool> {
    Ok(cnf_of(text_a)? == cnf_of(text_b)?)
}

/// Build an automaton whose language has order type `alpha` (> 0), with
/// `size_upper_bound(alpha)` states, returned as `ordaut v1` text.
#[pyfunction(name = "synthesize")]
fn synthesize_py(alpha: &PyCnf) -> PyResult<String> {
    let built = synthesize(&alpha.inner).map_err(to_py_err)?;
    Ok(built.to_ordaut_string())
}

/// The exact minimal number of states of any ordinal automaton realizing
/// `alpha` (> 0).  `bound` caps the underlying exhaustive search (default
/// 9 states per block pattern); raises `ValueError` when exceeded.
#[pyfunction(name = "min_size")]
#[pyo3(signature = (alpha, bound = None))]
fn min_size_py(alpha: &PyCnf, bound: Option<usize>) -> PyResult<u64> {
    min_size_bounded(&alpha.inner, bound.unwrap_or(DEFAULT_SEARCH_BOUND)).map_err(to_py_err)
}

/// The state count of `synthesize(alpha)`: an upper bound on the minimum.
#[pyfunction(name = "size_upper_bound")]
fn size_upper_bound_py(alpha: &PyCnf) -> PyResult<u64> {
    size_upper_bound(&alpha.inner).map_err(to_py_err)
}

/// The constructive block size `g(m)` for a positive integer `m`.
#[pyfunction(name = "g_size")]
fn g_size_py(m: BigUint) -> PyResult<u64> {
    ordlex::synthesis::g_size(&m).map_err(to_py_err)
}

/// Renumber and normalize an automaton file to trim complete-prefix form,
/// returned as canonical `ordaut v1` text.  Raises `ValueError` for an
/// empty language.
#[pyfunction]
fn normalize(text: &str) -> PyResult<String> {
    let parsed = parse_ordaut(text).map_err(to_py_err)?;
    let cpa = normalize_to_cpa(&parsed).map_err(to_py_err)?;
    Ok(cpa.to_ordaut_string())
}

#[pymodule]
#[pyo3(name = "ordlex")]
fn ordlex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCnf>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(cnf_of, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_of, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_py, m)?)?;
    m.add_function(wrap_pyfunction!(min_size_py, m)?)?;
    m.add_function(wrap_pyfunction!(size_upper_bound_py, m)?)?;
    m.add_function(wrap_pyfunction!(g_size_py, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    Ok(())
}
