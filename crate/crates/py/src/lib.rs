//! Python bindings. Structured results (certificates, symbolic matrices,
//! bound reports) cross the boundary as JSON strings.

use std::time::Duration;

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use engelcert::certsearch::{
    counterexample_search, theoretical_bounds as bounds, verify_certificate_json, CertError, SearchBudget,
};
use engelcert::dynamics;
use engelcert::freegroup::{self, Generator, WordSystem};
use engelcert::gfield::{self, Field};
use engelcert::polyring::{self, Poly, PrimeField, TwistedBasis};
use engelcert::symbolic::{self, IntMatrix2};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(text: &str, alphabet: Option<usize>) -> PyResult<freegroup::Word> {
    let m = alphabet.unwrap_or_else(|| freegroup::Word::infer_alphabet(text));
    freegroup::Word::parse(text, m).map_err(value_err)
}

/// A word in a free group: lowercase letters are generators, uppercase
/// their inverses.
#[pyclass(name = "Word", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWord {
    inner: freegroup::Word,
}

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (text, alphabet = None))]
    fn new(text: &str, alphabet: Option<usize>) -> PyResult<Self> {
        Ok(PyWord {
            inner: parse(text, alphabet)?,
        })
    }

    fn reduce(&self) -> PyWord {
        PyWord {
            inner: self.inner.reduce(),
        }
    }

    fn inverse(&self) -> PyWord {
        PyWord {
            inner: self.inner.inverse(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    #[getter]
    fn alphabet_size(&self) -> usize {
        self.inner.alphabet_size()
    }

    fn exponent_sum(&self, generator: usize) -> i64 {
        self.inner.exponent_sum(Generator(generator))
    }

    fn substitute(&self, images: Vec<PyRef<'_, PyWord>>) -> PyResult<PyWord> {
        let images: Vec<_> = images.iter().map(|w| w.inner.clone()).collect();
        Ok(PyWord {
            inner: self.inner.substitute(&images).map_err(value_err)?,
        })
    }

    fn iterate_first(&self, n: usize) -> PyResult<PyWord> {
        Ok(PyWord {
            inner: self.inner.iterate_first(n).map_err(value_err)?,
        })
    }

    fn two_letter_reduction(&self) -> PyResult<PyWord> {
        Ok(PyWord {
            inner: self.inner.two_letter_reduction().map_err(value_err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', alphabet={})", self.inner, self.inner.alphabet_size())
    }

    fn __eq__(&self, other: PyRef<'_, PyWord>) -> bool {
        self.inner == other.inner
    }
}

/// Freely reduced form of a word.
#[pyfunction]
fn free_reduce(word: &str) -> PyResult<String> {
    Ok(parse(word, None)?.reduce().to_string())
}

/// Rank of the subgroup generated by the words.
#[pyfunction]
fn subgroup_rank(words: Vec<String>) -> PyResult<usize> {
    let m = words.iter().map(|w| freegroup::Word::infer_alphabet(w)).max().unwrap_or(1);
    let ws = words
        .iter()
        .map(|w| parse(w, Some(m)))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(freegroup::subgroup_rank(&ws))
}

/// The `n`-th iterate of a word system, with a triviality flag per coordinate.
#[pyfunction]
fn iterate_system(words: Vec<String>, n: usize) -> PyResult<(Vec<String>, Vec<bool>)> {
    let ws = WordSystem::parse(&words.join(",")).map_err(value_err)?;
    let (it, flags) = ws.iterate(n).map_err(value_err)?;
    Ok((it.words().iter().map(|w| w.to_string()).collect(), flags))
}

/// Modulus (low degree first) of the canonical `F_{q^k}`.
#[pyfunction]
fn field_modulus(q: u64, k: usize) -> PyResult<Vec<u64>> {
    Ok(Field::build(q, k).map_err(value_err)?.modulus().to_vec())
}

/// `|SL(2, F_n)| = n^3 - n`.
#[pyfunction]
fn sl2_order(n: u64) -> u128 {
    gfield::sl2_order(n)
}

fn int_matrix(v: Option<Vec<i64>>, default: IntMatrix2) -> PyResult<IntMatrix2> {
    match v {
        None => Ok(default),
        Some(v) => {
            let e: [i64; 4] = v
                .as_slice()
                .try_into()
                .map_err(|_| value_err(format!("need 4 entries, got {}", v.len())))?;
            Ok(IntMatrix2::from_i64(e))
        }
    }
}

/// JSON `{entries, s, y, word}` with `w(x, y) = H / det(x)^s`.
#[pyfunction]
#[pyo3(signature = (word, y = None))]
fn word_to_h(word: &str, y: Option<Vec<i64>>) -> PyResult<String> {
    let w = parse(word, Some(2))?;
    let y = int_matrix(y, IntMatrix2::default_y())?;
    let rm = symbolic::word_to_h(&w, &y).map_err(value_err)?;
    Ok(rm.to_json().to_string())
}

/// Exact product of the word's letters at integer matrices `x`, `y`.
#[pyfunction]
#[pyo3(signature = (word, x, y = None))]
fn eval_int(word: &str, x: Vec<i64>, y: Option<Vec<i64>>) -> PyResult<Vec<BigInt>> {
    let w = parse(word, Some(2))?;
    let x = int_matrix(Some(x), IntMatrix2::identity())?;
    let y = int_matrix(y, IntMatrix2::default_y())?;
    let m = symbolic::eval_int(&w, &x, &y).map_err(value_err)?;
    Ok(m.entries.to_vec())
}

/// Non-identity periodic points of `x -> w(x, y)` on `SL(2, F_{q^k})`, as
/// (entries as coefficient vectors, period) pairs.
#[pyfunction]
#[pyo3(signature = (word, q, k = 1, y = None))]
fn cycle_search_sl2(py: Python<'_>, word: &str, q: u64, k: usize, y: Option<Vec<i64>>) -> PyResult<Vec<(Vec<Vec<u64>>, u64)>> {
    let w = parse(word, Some(2))?;
    let y = int_matrix(y, IntMatrix2::default_y())?;
    let field = Field::build(q, k).map_err(value_err)?;
    let found = py
        .detach(|| dynamics::cycle_search_sl2(&w, &y, &field, gfield::DEFAULT_SL2_BUDGET))
        .map_err(value_err)?;
    Ok(found
        .into_iter()
        .map(|(m, p)| (m.entries.iter().map(|e| e.coeffs().to_vec()).collect(), p))
        .collect())
}

/// Certificate JSON for `word`. Raises `RuntimeError` when the budget runs
/// out and `ValueError` on bad input.
#[pyfunction]
#[pyo3(signature = (word, max_order = 10_000, max_prime = 10_000, max_degree = 4, time_limit = 60.0))]
fn search(
    py: Python<'_>,
    word: &str,
    max_order: u64,
    max_prime: u64,
    max_degree: usize,
    time_limit: f64,
) -> PyResult<String> {
    let w = parse(word, None)?;
    let budget = SearchBudget {
        max_field_order: max_order,
        max_prime,
        max_extension_degree: max_degree,
        time_limit: Duration::from_secs_f64(time_limit),
        ..SearchBudget::default()
    };
    match py.detach(|| counterexample_search(&w, &budget)) {
        Ok(c) => Ok(c.to_json_pretty()),
        Err(e @ CertError::BudgetExhausted { .. }) => Err(PyRuntimeError::new_err(e.to_string())),
        Err(e) => Err(value_err(e)),
    }
}

/// `True` when every claim of the certificate checks out.
#[pyfunction]
fn verify_certificate(json: &str) -> PyResult<bool> {
    verify_certificate_json(json).map_err(value_err)
}

/// Bound report JSON for a word and system size `s`.
#[pyfunction]
#[pyo3(signature = (word, s = 1))]
fn theoretical_bounds(word: &str, s: u64) -> PyResult<String> {
    let report = bounds(&parse(word, None)?, s).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

fn polys(q: u64, texts: &[String], nvars: usize) -> PyResult<Vec<Poly<PrimeField>>> {
    let field = PrimeField::new(q).map_err(value_err)?;
    texts.iter().map(|t| Poly::parse(t, field, nvars).map_err(value_err)).collect()
}

/// Whether `f_i - x_i^Q` (with `f_i` given as text over `F_q`) is a
/// Groebner basis in graded-lex order.
#[pyfunction]
fn check_groebner_xq(q: u64, fs: Vec<String>, q_power: u64) -> PyResult<bool> {
    let tb = TwistedBasis::new(polys(q, &fs, fs.len())?, q_power).map_err(value_err)?;
    Ok(tb.check_groebner())
}

/// A nonzero `psi` with `psi(f_1, ..., f_{n+1}) = 0`, as text.
#[pyfunction]
fn algebraic_dependence(q: u64, fs: Vec<String>, d: u32) -> PyResult<String> {
    let n = fs.len().saturating_sub(1).max(1);
    let dep = polyring::algebraic_dependence(&polys(q, &fs, n)?, d).map_err(value_err)?;
    Ok(dep.psi.to_text())
}

#[pymodule]
#[pyo3(name = "engelcert")]
fn engelcert_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(free_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup_rank, m)?)?;
    m.add_function(wrap_pyfunction!(iterate_system, m)?)?;
    m.add_function(wrap_pyfunction!(field_modulus, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_order, m)?)?;
    m.add_function(wrap_pyfunction!(word_to_h, m)?)?;
    m.add_function(wrap_pyfunction!(eval_int, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_search_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(theoretical_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(check_groebner_xq, m)?)?;
    m.add_function(wrap_pyfunction!(algebraic_dependence, m)?)?;
    Ok(())
}
