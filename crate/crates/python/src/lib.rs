//! Python bindings. Exact shares cross the boundary as `fractions.Fraction`.

use onlineshare::{
    check_critical_support, decompose_layers, expected_metrics, format_rational, is_solvable, minimal_critical_prefix,
    online_run, order_structure, parse_game, parse_rational, shapley_permutation, shapley_subset, Allocation,
    ArrivalOrder, Error, Game, I4eaMode, Layered, Mechanism, MechanismKind, OrderTable, PlayerSet, Property, Rational,
    Solvability, MAX_ORDER_PLAYERS,
};
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    if e.is_size_guard() {
        PyOverflowError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(r),))
}

/// Accepts a Fraction, int, float or string such as `"1/2"`.
fn rational_arg(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&value.str()?.to_cow()?).map_err(to_py)
}

fn mechanism(game: &Game, name: &str, weights: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<Box<dyn Mechanism>> {
    let weights = weights
        .map(|ws| ws.iter().map(|w| rational_arg(w).map(|r| format_rational(&r))).collect::<PyResult<Vec<_>>>())
        .transpose()?
        .map(|ws| ws.join(","));
    let kind = MechanismKind::parse(name, weights.as_deref()).map_err(to_py)?;
    Ok(if game.is_zero_one_monotone() { Box::new(kind) } else { Box::new(Layered(kind)) })
}

fn order_arg(game: &Game, order: Vec<String>) -> PyResult<ArrivalOrder> {
    ArrivalOrder::parse(game, &order.join(",")).map_err(to_py)
}

fn shares<'py>(py: Python<'py>, game: &Game, alloc: &Allocation) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for p in game.players() {
        d.set_item(game.label(p), fraction(py, alloc.share(p))?)?;
    }
    Ok(d)
}

fn labels(game: &Game, players: &[onlineshare::PlayerId]) -> Vec<String> {
    players.iter().map(|&p| game.label(p).to_string()).collect()
}

/// A cooperative game with exact rational values.
#[pyclass(name = "Game", module = "onlineshare", frozen)]
struct PyGame {
    inner: Game,
}

#[pymethods]
impl PyGame {
    /// Parses a JSON game document (`minimal` or `table` form).
    #[staticmethod]
    fn from_json(document: &str) -> PyResult<Self> {
        Ok(PyGame { inner: parse_game(document).map_err(to_py)? })
    }

    /// Simple game whose winning coalitions contain one of `minimal_winning`.
    #[staticmethod]
    fn simple(players: Vec<String>, minimal_winning: Vec<Vec<String>>) -> PyResult<Self> {
        let zero = Game::zero(&players).map_err(to_py)?;
        let sets = minimal_winning
            .iter()
            .map(|c| zero.parse_set(&c.join(",")))
            .collect::<Result<Vec<PlayerSet>, _>>()
            .map_err(to_py)?;
        Ok(PyGame { inner: Game::from_minimal_winning(zero.labels(), &sets).map_err(to_py)? })
    }

    #[getter]
    fn players(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn value<'py>(&self, py: Python<'py>, coalition: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let s = self.inner.parse_set(&coalition.join(",")).map_err(to_py)?;
        fraction(py, self.inner.value(s))
    }

    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }

    fn is_zero_one_monotone(&self) -> bool {
        self.inner.is_zero_one_monotone()
    }

    fn minimal_winning(&self) -> Vec<Vec<String>> {
        self.inner
            .minimal_winning()
            .into_iter()
            .map(|s| s.iter().map(|p| self.inner.label(p).to_string()).collect())
            .collect()
    }

    /// `None` when solvable, else `(player, coalition)` witnessing unsolvability.
    fn unsolvable_witness(&self) -> PyResult<Option<(String, Vec<String>)>> {
        Ok(match is_solvable(&self.inner).map_err(to_py)? {
            Solvability::Solvable => None,
            Solvability::Unsolvable { player, coalition } => {
                Some((self.inner.label(player).to_string(), labels(&self.inner, &coalition.iter().collect::<Vec<_>>())))
            }
        })
    }

    fn is_solvable(&self) -> PyResult<bool> {
        Ok(is_solvable(&self.inner).map_err(to_py)?.is_solvable())
    }

    fn to_json(&self) -> String {
        self.inner.to_document().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Game(players={:?})", self.inner.labels())
    }
}

/// Shapley value; both oracles are compared when the game is small enough.
#[pyfunction]
fn shapley<'py>(py: Python<'py>, game: &PyGame) -> PyResult<Bound<'py, PyDict>> {
    let g = &game.inner;
    let sv = shapley_subset(g);
    if g.n() <= MAX_ORDER_PLAYERS && shapley_permutation(g).map_err(to_py)? != sv {
        return Err(PyValueError::new_err("Shapley oracles disagree"));
    }
    shares(py, g, &Allocation::from_shares(sv.0))
}

/// Final shares of `mechanism` (`rfc`, `evs`, `wvs`) once `order` has arrived.
#[pyfunction]
#[pyo3(signature = (game, mechanism, order, weights=None))]
fn allocate<'py>(
    py: Python<'py>,
    game: &PyGame,
    mechanism: &str,
    order: Vec<String>,
    weights: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &game.inner;
    let m = self::mechanism(g, mechanism, weights)?;
    let order = order_arg(g, order)?;
    shares(py, g, &m.allocate(g, order.players()).map_err(to_py)?)
}

/// Cumulative shares after each arrival, as `(arrived, shares)` pairs.
#[pyfunction]
#[pyo3(signature = (game, mechanism, order, weights=None))]
fn run<'py>(
    py: Python<'py>,
    game: &PyGame,
    mechanism: &str,
    order: Vec<String>,
    weights: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Vec<(String, Bound<'py, PyDict>)>> {
    let g = &game.inner;
    let m = self::mechanism(g, mechanism, weights)?;
    let trace = online_run(g, &order_arg(g, order)?, m.as_ref()).map_err(to_py)?;
    trace.steps.iter().map(|s| Ok((g.label(s.arrived).to_string(), shares(py, g, &s.allocation)?))).collect()
}

/// Critical players, marginal player and minimal critical prefix of an order.
#[pyfunction]
fn structure<'py>(py: Python<'py>, game: &PyGame, order: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
    let g = &game.inner;
    let order = order_arg(g, order)?;
    let s = order_structure(g, &order).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("critical", labels(g, &s.critical))?;
    d.set_item("marginal", s.marginal.map(|p| g.label(p).to_string()))?;
    if s.creates_value() {
        let prefix = minimal_critical_prefix(g, &order).map_err(to_py)?;
        d.set_item("minimal_critical_prefix", labels(g, &prefix.players))?;
        d.set_item("local_critical_count", prefix.local_critical_count)?;
    }
    Ok(d)
}

/// `{property: counterexample or None}`; `None` means the property holds.
#[pyfunction]
#[pyo3(signature = (game, mechanism, properties=None, weights=None, strict_i4ea=false))]
fn verify<'py>(
    py: Python<'py>,
    game: &PyGame,
    mechanism: &str,
    properties: Option<Vec<String>>,
    weights: Option<Vec<Bound<'py, PyAny>>>,
    strict_i4ea: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &game.inner;
    let m = self::mechanism(g, mechanism, weights)?;
    let names = properties.unwrap_or_else(|| ["efficiency", "oir", "sf", "i4ea", "mos"].map(String::from).to_vec());
    let mode = if strict_i4ea { I4eaMode::FullPairs } else { I4eaMode::AdjacentSwaps };
    let table = OrderTable::build(g, m.as_ref()).map_err(to_py)?;
    let d = PyDict::new(py);
    for name in names {
        let p = Property::parse(&name).ok_or_else(|| PyValueError::new_err(format!("unknown property `{name}`")))?;
        let report = table.check(p, mode).map_err(to_py)?;
        d.set_item(p.name(), report.counterexample().map(|c| c.describe(g)))?;
    }
    Ok(d)
}

/// Whether every order allocates exactly the unit value to critical players.
#[pyfunction]
#[pyo3(signature = (game, mechanism, weights=None))]
fn critical_support(game: &PyGame, mechanism: &str, weights: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
    let m = self::mechanism(&game.inner, mechanism, weights)?;
    Ok(check_critical_support(&game.inner, m.as_ref()).map_err(to_py)?.holds())
}

/// Expected total Shapley distance and expected egalitarian welfare over all orders.
#[pyfunction]
#[pyo3(signature = (game, mechanism, weights=None))]
fn metrics<'py>(
    py: Python<'py>,
    game: &PyGame,
    mechanism: &str,
    weights: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyDict>> {
    let m = self::mechanism(&game.inner, mechanism, weights)?;
    let report = expected_metrics(&game.inner, m.as_ref()).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("mechanism", &report.mechanism)?;
    d.set_item("expected_sd", fraction(py, &report.expected_distance)?)?;
    d.set_item("expected_ew", report.expected_welfare.as_ref().map(|w| fraction(py, w)).transpose()?)?;
    Ok(d)
}

/// `(coefficient, threshold, minimal_winning)`.
type LayerTuple<'py> = (Bound<'py, PyAny>, Bound<'py, PyAny>, Vec<Vec<String>>);

/// Threshold layers as `(coefficient, threshold, minimal_winning)` triples.
#[pyfunction]
fn decompose<'py>(py: Python<'py>, game: &PyGame) -> PyResult<Vec<LayerTuple<'py>>> {
    let g = &game.inner;
    decompose_layers(g)
        .map_err(to_py)?
        .layers
        .iter()
        .map(|l| {
            let winning =
                l.game.minimal_winning().into_iter().map(|s| labels(g, &s.iter().collect::<Vec<_>>())).collect();
            Ok((fraction(py, &l.coefficient)?, fraction(py, &l.threshold)?, winning))
        })
        .collect()
}

#[pymodule(name = "onlineshare")]
fn python_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGame>()?;
    m.add_function(wrap_pyfunction!(shapley, m)?)?;
    m.add_function(wrap_pyfunction!(allocate, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(structure, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(critical_support, m)?)?;
    m.add_function(wrap_pyfunction!(metrics, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    Ok(())
}
