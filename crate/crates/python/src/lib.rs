//! Python bindings over the core engine: the taxonomy, the probability
//! and co-occurrence models, and the similarity / disambiguation
//! operations, exposed with plain Python types.

use std::collections::HashMap;

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use taxsim_core::coordination::{
    apply_default, default_strategy_order, resolve_backoff, resolve_vote, Choice, CoordContext,
    CoordinationPhrase, NumberTag, Thresholds,
};
use taxsim_core::error::Error as CoreError;
use taxsim_core::evalharness::{self, WordMeasure};
use taxsim_core::probmodel::{
    count_corpus, load_probabilities_str, to_probability, ProbabilityModel as CoreModel,
};
use taxsim_core::selection::{self, CoocModel as CoreCooc};
use taxsim_core::sensegroup::{self, NounGroup};
use taxsim_core::similarity::{self, ConceptMeasure, EdgeVariant, WeightFunction};
use taxsim_core::taxonomy::{ConceptId, LoadOptions, Taxonomy as CoreTaxonomy};

fn to_py_err(e: CoreError) -> PyErr {
    if e.is_vocabulary_error() {
        PyKeyError::new_err(e.to_string())
    } else if e.is_load_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn ids_to_strings(ids: impl IntoIterator<Item = ConceptId>) -> Vec<String> {
    ids.into_iter().map(|c| c.as_str().to_string()).collect()
}

/// An immutable IS-A concept DAG.
#[pyclass(frozen, name = "Taxonomy")]
struct PyTaxonomy {
    inner: CoreTaxonomy,
}

#[pymethods]
impl PyTaxonomy {
    /// Parses the tab-separated taxonomy format from a string.
    #[staticmethod]
    #[pyo3(signature = (text, virtual_root=false, fallback=None))]
    fn from_text(text: &str, virtual_root: bool, fallback: Option<String>) -> PyResult<Self> {
        let options = LoadOptions {
            virtual_root,
            fallback,
        };
        Ok(PyTaxonomy {
            inner: CoreTaxonomy::from_str(text, &options).map_err(to_py_err)?,
        })
    }

    /// Loads the taxonomy file format from a path.
    #[staticmethod]
    #[pyo3(signature = (path, virtual_root=false, fallback=None))]
    fn load(path: &str, virtual_root: bool, fallback: Option<String>) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_text(&text, virtual_root, fallback)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn contains(&self, id: &str) -> bool {
        self.inner.contains(id)
    }

    fn senses(&self, word: &str) -> Vec<String> {
        ids_to_strings(self.inner.senses(word))
    }

    fn subsumers(&self, id: &str) -> PyResult<Vec<String>> {
        Ok(ids_to_strings(self.inner.subsumers(id).map_err(to_py_err)?))
    }

    fn common_subsumers(&self, c1: &str, c2: &str) -> PyResult<Vec<String>> {
        Ok(ids_to_strings(
            self.inner.common_subsumers(c1, c2).map_err(to_py_err)?,
        ))
    }

    fn shortest_path_edges(&self, c1: &str, c2: &str) -> PyResult<Option<u32>> {
        self.inner.shortest_path_edges(c1, c2).map_err(to_py_err)
    }

    fn depth_edges(&self, id: &str) -> PyResult<u32> {
        self.inner.depth_edges(id).map_err(to_py_err)
    }

    fn max_depth(&self) -> u32 {
        self.inner.max_depth()
    }

    fn roots(&self) -> Vec<String> {
        ids_to_strings(self.inner.roots())
    }

    fn virtual_root(&self) -> Option<String> {
        self.inner.virtual_root().map(|c| c.as_str().to_string())
    }
}

/// Per-concept probability and information content.
#[pyclass(frozen, name = "ProbabilityModel")]
struct PyModel {
    inner: CoreModel,
}

#[pymethods]
impl PyModel {
    /// Loads `concept<TAB>p=<v>` / `concept<TAB>ic=<v>` records.
    #[staticmethod]
    #[pyo3(signature = (taxonomy, path, log_base=2.0))]
    fn load(taxonomy: PyRef<'_, PyTaxonomy>, path: &str, log_base: f64) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Ok(PyModel {
            inner: load_probabilities_str(&taxonomy.inner, &text, log_base)
                .map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (taxonomy, text, log_base=2.0))]
    fn from_text(taxonomy: PyRef<'_, PyTaxonomy>, text: &str, log_base: f64) -> PyResult<Self> {
        Ok(PyModel {
            inner: load_probabilities_str(&taxonomy.inner, text, log_base).map_err(to_py_err)?,
        })
    }

    /// Estimates probabilities from a token list (relative frequencies).
    #[staticmethod]
    #[pyo3(signature = (taxonomy, tokens, lemma_map=None, log_base=2.0))]
    fn from_tokens(
        taxonomy: PyRef<'_, PyTaxonomy>,
        tokens: Vec<String>,
        lemma_map: Option<HashMap<String, String>>,
        log_base: f64,
    ) -> PyResult<Self> {
        let table = count_corpus(
            &taxonomy.inner,
            tokens.iter().map(|t| (t.as_str(), 1.0)),
            lemma_map.as_ref(),
        );
        Ok(PyModel {
            inner: to_probability(&table, log_base).map_err(to_py_err)?,
        })
    }

    fn p(&self, taxonomy: PyRef<'_, PyTaxonomy>, id: &str) -> PyResult<f64> {
        self.inner.p(&taxonomy.inner, id).map_err(to_py_err)
    }

    fn ic(&self, taxonomy: PyRef<'_, PyTaxonomy>, id: &str) -> PyResult<f64> {
        self.inner.ic(&taxonomy.inner, id).map_err(to_py_err)
    }

    fn log_base(&self) -> f64 {
        self.inner.log_base()
    }
}

/// Directed modifier-head co-occurrence statistics.
#[pyclass(frozen, name = "CoocModel")]
struct PyCooc {
    inner: CoreCooc,
}

#[pymethods]
impl PyCooc {
    /// Ingests (predicate, argument, count) triples.
    #[staticmethod]
    fn from_pairs(
        taxonomy: PyRef<'_, PyTaxonomy>,
        pairs: Vec<(String, String, f64)>,
    ) -> PyResult<Self> {
        Ok(PyCooc {
            inner: selection::ingest_pairs(&taxonomy.inner, pairs),
        })
    }

    #[staticmethod]
    fn load(taxonomy: PyRef<'_, PyTaxonomy>, path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        let pairs = selection::load_pairs(&text).map_err(to_py_err)?;
        Ok(PyCooc {
            inner: selection::ingest_pairs(&taxonomy.inner, pairs),
        })
    }

    /// A(word, class): selectional association with a concept class.
    fn assoc_class(
        &self,
        taxonomy: PyRef<'_, PyTaxonomy>,
        word: &str,
        class: &str,
    ) -> PyResult<f64> {
        selection::sel_assoc_class(&taxonomy.inner, &self.inner, word, class).map_err(to_py_err)
    }

    /// A(w1, w2): the maximum association over w2's classes.
    fn assoc_word(
        &self,
        taxonomy: PyRef<'_, PyTaxonomy>,
        w1: &str,
        w2: &str,
    ) -> PyResult<f64> {
        selection::sel_assoc_word(&taxonomy.inner, &self.inner, w1, w2).map_err(to_py_err)
    }
}

fn parse_concept_measure(name: &str) -> PyResult<ConceptMeasure> {
    Ok(match name {
        "resnik" => ConceptMeasure::Resnik,
        "prob" => ConceptMeasure::Prob,
        "lin" => ConceptMeasure::Lin,
        "wup" => ConceptMeasure::WuPalmer,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown measure {other:?}: expected resnik, prob, lin, or wup"
            )))
        }
    })
}

/// Concept-level similarity; returns (value, subsumers).
#[pyfunction]
#[pyo3(signature = (taxonomy, model, c1, c2, measure="resnik"))]
fn sim(
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    c1: &str,
    c2: &str,
    measure: &str,
) -> PyResult<(f64, Vec<String>)> {
    let t = &taxonomy.inner;
    let m = &model.inner;
    match parse_concept_measure(measure)? {
        ConceptMeasure::Resnik => {
            let r = similarity::sim_resnik(t, m, c1, c2).map_err(to_py_err)?;
            Ok((r.value, ids_to_strings(r.subsumers)))
        }
        ConceptMeasure::Prob => {
            let r = similarity::sim_prob(t, m, c1, c2).map_err(to_py_err)?;
            Ok((r.value, ids_to_strings(r.subsumers)))
        }
        ConceptMeasure::Lin => {
            let v = similarity::sim_lin(t, m, c1, c2).map_err(to_py_err)?;
            Ok((v, Vec::new()))
        }
        ConceptMeasure::WuPalmer => {
            let v = similarity::sim_wupalmer(t, c1, c2).map_err(to_py_err)?;
            Ok((v, Vec::new()))
        }
    }
}

/// Word-level similarity maximized over sense pairs; returns a dict with
/// value, subsumers, and sense_pair.
#[pyfunction]
#[pyo3(signature = (taxonomy, model, w1, w2, measure="resnik"))]
fn wsim<'py>(
    py: Python<'py>,
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    w1: &str,
    w2: &str,
    measure: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let r = similarity::wsim(
        &taxonomy.inner,
        &model.inner,
        w1,
        w2,
        parse_concept_measure(measure)?,
    );
    let out = PyDict::new(py);
    out.set_item("value", r.value)?;
    out.set_item("subsumers", ids_to_strings(r.subsumers))?;
    out.set_item(
        "sense_pair",
        r.sense_pair
            .map(|(a, b)| (a.as_str().to_string(), b.as_str().to_string())),
    )?;
    Ok(out)
}

/// Edge-counting similarity (2*MAX − min path length).
#[pyfunction]
#[pyo3(signature = (taxonomy, w1, w2, virtual_top=false))]
fn wsim_edge(
    taxonomy: PyRef<'_, PyTaxonomy>,
    w1: &str,
    w2: &str,
    virtual_top: bool,
) -> f64 {
    let variant = if virtual_top {
        EdgeVariant::VirtualTop
    } else {
        EdgeVariant::AssertZero
    };
    similarity::wsim_edge(&taxonomy.inner, w1, w2, variant)
}

/// Normalized path-length similarity.
#[pyfunction]
#[pyo3(signature = (taxonomy, w1, w2, log_base=2.0))]
fn wsim_lc(
    taxonomy: PyRef<'_, PyTaxonomy>,
    w1: &str,
    w2: &str,
    log_base: f64,
) -> PyResult<f64> {
    similarity::wsim_lc(&taxonomy.inner, w1, w2, log_base).map_err(to_py_err)
}

/// Weighted word similarity under a {concept: weight} relevance map;
/// returns (value, used_uniform_fallback).
#[pyfunction]
fn wsim_weighted(
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    w1: &str,
    w2: &str,
    weights: HashMap<String, f64>,
) -> PyResult<(f64, bool)> {
    let mut pairs = Vec::with_capacity(weights.len());
    for (id, w) in weights {
        pairs.push((ConceptId::new(id).map_err(to_py_err)?, w));
    }
    let alpha = WeightFunction::new(pairs);
    let r = similarity::wsim_weighted(&taxonomy.inner, &model.inner, w1, w2, &alpha);
    Ok((r.value, r.uniform_fallback))
}

/// Sense confidences for a noun group; returns a dict with "phi" and
/// "support" ({word: {sense: value}}), "normalization" ({word: value}),
/// and "excluded" (words with no senses).
#[pyfunction]
fn disambiguate_group<'py>(
    py: Python<'py>,
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    words: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let group = NounGroup::new(words).map_err(to_py_err)?;
    let r = sensegroup::disambiguate_group(&taxonomy.inner, &model.inner, &group);
    let phi = PyDict::new(py);
    let support = PyDict::new(py);
    for (i, word) in r.words.iter().enumerate() {
        let by_sense = PyDict::new(py);
        let support_by_sense = PyDict::new(py);
        for s in &r.senses[i] {
            by_sense.set_item(s.sense.as_str(), s.phi)?;
            support_by_sense.set_item(s.sense.as_str(), s.support)?;
        }
        phi.set_item(word, by_sense)?;
        support.set_item(word, support_by_sense)?;
    }
    let normalization = PyDict::new(py);
    for (i, word) in r.words.iter().enumerate() {
        normalization.set_item(word, r.normalization[i])?;
    }
    let out = PyDict::new(py);
    out.set_item("phi", phi)?;
    out.set_item("support", support)?;
    out.set_item("normalization", normalization)?;
    out.set_item("excluded", r.excluded_words.clone())?;
    Ok(out)
}

/// Linear confidence scaling from [0, 1] to the discrete levels 1..5.
#[pyfunction]
fn scale_confidence(phi: f64) -> PyResult<u8> {
    sensegroup::scale_confidence(phi).map_err(to_py_err)
}

fn parse_tag(tag: &str) -> PyResult<NumberTag> {
    NumberTag::parse(tag).map_err(to_py_err)
}

/// Resolves one coordination phrase; returns a dict with choice, fired_by,
/// defaulted, and per-strategy evidence.
#[pyfunction]
#[pyo3(signature = (
    taxonomy, model, cooc, n1, n2, n3, n0=None, numbers=None,
    combiner="backoff", default=None, tau=2.0, sigma=0.0,
))]
#[allow(clippy::too_many_arguments)]
fn resolve_coordination<'py>(
    py: Python<'py>,
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    cooc: PyRef<'_, PyCooc>,
    n1: &str,
    n2: &str,
    n3: &str,
    n0: Option<String>,
    numbers: Option<(String, String, String)>,
    combiner: &str,
    default: Option<&str>,
    tau: f64,
    sigma: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let tags = match numbers {
        Some((a, b, c)) => [parse_tag(&a)?, parse_tag(&b)?, parse_tag(&c)?],
        None => [NumberTag::Unknown; 3],
    };
    let phrase = CoordinationPhrase::new(n0, n1, n2, n3, tags).map_err(to_py_err)?;
    let ctx = CoordContext {
        taxonomy: &taxonomy.inner,
        model: &model.inner,
        cooc: &cooc.inner,
        thresholds: Thresholds::new(tau, sigma).map_err(to_py_err)?,
    };
    let mut decision = match combiner {
        "backoff" => resolve_backoff(&ctx, &phrase, &default_strategy_order(&phrase)),
        "vote" => resolve_vote(&ctx, &phrase),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown combiner {other:?}: expected backoff or vote"
            )))
        }
    };
    match default {
        Some("12") => decision = apply_default(decision, Choice::Conjoin12),
        Some("13") => decision = apply_default(decision, Choice::Conjoin13),
        Some(other) => {
            return Err(PyValueError::new_err(format!(
                "unknown default {other:?}: expected 12 or 13"
            )))
        }
        None => {}
    }
    let out = PyDict::new(py);
    out.set_item("choice", decision.choice.as_str())?;
    out.set_item("fired_by", decision.fired_by.map(|s| s.as_str()))?;
    out.set_item("defaulted", decision.defaulted)?;
    let evidence = PyList::empty(py);
    for ev in &decision.evidence {
        let e = PyDict::new(py);
        e.set_item("strategy", ev.strategy.as_str())?;
        e.set_item("evaluated", ev.evaluated)?;
        e.set_item("choice", ev.choice.as_str())?;
        let scores = PyDict::new(py);
        for (name, value) in &ev.scores {
            scores.set_item(name, value)?;
        }
        e.set_item("scores", scores)?;
        evidence.append(e)?;
    }
    out.set_item("evidence", evidence)?;
    Ok(out)
}

/// Sample Pearson correlation.
#[pyfunction]
fn pearson(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<f64> {
    evalharness::pearson(&xs, &ys).map_err(to_py_err)
}

/// Correlations of the embedded benchmark's published rating columns
/// against its human means: {measure: r}.
#[pyfunction]
fn eval_published(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let report = evalharness::eval_published().map_err(to_py_err)?;
    let out = PyDict::new(py);
    for e in &report.entries {
        out.set_item(&e.measure, e.r)?;
    }
    Ok(out)
}

type LiveEvalOutcome = (f64, usize, Vec<(String, String)>);

/// Rates (w1, w2, gold) pairs live and correlates against gold; returns
/// (r, items, excluded_pairs).
#[pyfunction]
#[pyo3(signature = (taxonomy, model, pairs, measure="resnik"))]
fn eval_live(
    taxonomy: PyRef<'_, PyTaxonomy>,
    model: PyRef<'_, PyModel>,
    pairs: Vec<(String, String, f64)>,
    measure: &str,
) -> PyResult<LiveEvalOutcome> {
    let m = WordMeasure::parse(measure)
        .ok_or_else(|| PyValueError::new_err(format!("unknown measure {measure:?}")))?;
    let report =
        evalharness::eval_live(&taxonomy.inner, &model.inner, &pairs, m).map_err(to_py_err)?;
    Ok((report.entries[0].r, report.item_count, report.excluded))
}

#[pymodule]
fn taxsim(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTaxonomy>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyCooc>()?;
    m.add_function(wrap_pyfunction!(sim, m)?)?;
    m.add_function(wrap_pyfunction!(wsim, m)?)?;
    m.add_function(wrap_pyfunction!(wsim_edge, m)?)?;
    m.add_function(wrap_pyfunction!(wsim_lc, m)?)?;
    m.add_function(wrap_pyfunction!(wsim_weighted, m)?)?;
    m.add_function(wrap_pyfunction!(disambiguate_group, m)?)?;
    m.add_function(wrap_pyfunction!(scale_confidence, m)?)?;
    m.add_function(wrap_pyfunction!(resolve_coordination, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(eval_published, m)?)?;
    m.add_function(wrap_pyfunction!(eval_live, m)?)?;
    Ok(())
}
