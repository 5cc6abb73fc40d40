//! Correlation of similarity ratings against human benchmark means, both
//! on the embedded published per-item table and live on a user taxonomy.

use crate::error::{Error, Result};
use crate::probmodel::ProbabilityModel;
use crate::similarity::{
    wsim, wsim_edge, wsim_lc, ConceptMeasure, EdgeVariant,
};
use crate::taxonomy::Taxonomy;

/// One benchmark row: a word pair with its human means and the published
/// ratings of the three compared measures.
#[derive(Clone, Debug)]
pub struct EvalPair {
    pub word1: String,
    pub word2: String,
    pub mc_mean: f64,
    pub repl_mean: f64,
    pub wsim: f64,
    pub wsim_edge: f64,
    pub wsim_p: f64,
}

const BENCHMARK_CSV: &str = include_str!("../fixtures/miller_charles.csv");

/// The 28 scorable benchmark pairs shipped with the crate.
pub fn embedded_pairs() -> Vec<EvalPair> {
    parse_benchmark_csv(BENCHMARK_CSV).expect("embedded fixture parses")
}

fn parse_benchmark_csv(text: &str) -> Result<Vec<EvalPair>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') || line.starts_with("word1,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::Malformed {
                line: lineno,
                reason: format!("expected 7 comma-separated fields, got {}", f.len()),
            });
        }
        let num = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Malformed {
                line: lineno,
                reason: format!("bad number {s:?}"),
            })
        };
        out.push(EvalPair {
            word1: f[0].to_string(),
            word2: f[1].to_string(),
            mc_mean: num(f[2])?,
            repl_mean: num(f[3])?,
            wsim: num(f[4])?,
            wsim_edge: num(f[5])?,
            wsim_p: num(f[6])?,
        });
    }
    Ok(out)
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::UndefinedCorrelation(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::UndefinedCorrelation(
            "need at least two observations".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

#[derive(Clone, Debug)]
pub struct CorrelationEntry {
    pub measure: String,
    pub r: f64,
}

#[derive(Clone, Debug)]
pub struct CorrelationReport {
    pub entries: Vec<CorrelationEntry>,
    pub item_count: usize,
    /// Pairs left out because a word was missing from the taxonomy.
    pub excluded: Vec<(String, String)>,
}

/// Correlates each published rating column of the embedded benchmark
/// against the benchmark means.
pub fn eval_published() -> Result<CorrelationReport> {
    let pairs = embedded_pairs();
    let mc: Vec<f64> = pairs.iter().map(|p| p.mc_mean).collect();
    let columns: [(&str, Vec<f64>); 4] = [
        ("replication", pairs.iter().map(|p| p.repl_mean).collect()),
        ("information-content", pairs.iter().map(|p| p.wsim).collect()),
        ("probability", pairs.iter().map(|p| p.wsim_p).collect()),
        ("edge", pairs.iter().map(|p| p.wsim_edge).collect()),
    ];
    let mut entries = Vec::new();
    for (name, xs) in columns {
        entries.push(CorrelationEntry {
            measure: name.to_string(),
            r: pearson(&xs, &mc)?,
        });
    }
    Ok(CorrelationReport {
        entries,
        item_count: pairs.len(),
        excluded: Vec::new(),
    })
}

/// Word-level measures available to the live evaluation and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMeasure {
    Resnik,
    Edge,
    EdgeVtop,
    Prob,
    Lc,
    Lin,
    Wup,
}

impl WordMeasure {
    pub fn parse(s: &str) -> Option<WordMeasure> {
        Some(match s {
            "resnik" => WordMeasure::Resnik,
            "edge" => WordMeasure::Edge,
            "edge-vtop" => WordMeasure::EdgeVtop,
            "prob" => WordMeasure::Prob,
            "lc" => WordMeasure::Lc,
            "lin" => WordMeasure::Lin,
            "wup" => WordMeasure::Wup,
            _ => return None,
        })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            WordMeasure::Resnik => "resnik",
            WordMeasure::Edge => "edge",
            WordMeasure::EdgeVtop => "edge-vtop",
            WordMeasure::Prob => "prob",
            WordMeasure::Lc => "lc",
            WordMeasure::Lin => "lin",
            WordMeasure::Wup => "wup",
        }
    }

    pub fn needs_probabilities(&self) -> bool {
        matches!(
            self,
            WordMeasure::Resnik | WordMeasure::Prob | WordMeasure::Lin
        )
    }
}

/// Computes one word-level rating; disconnected pairs rate zero.
pub fn rate_pair(
    taxonomy: &Taxonomy,
    model: &ProbabilityModel,
    w1: &str,
    w2: &str,
    measure: WordMeasure,
) -> f64 {
    match measure {
        WordMeasure::Resnik => wsim(taxonomy, model, w1, w2, ConceptMeasure::Resnik).value,
        WordMeasure::Prob => wsim(taxonomy, model, w1, w2, ConceptMeasure::Prob).value,
        WordMeasure::Lin => wsim(taxonomy, model, w1, w2, ConceptMeasure::Lin).value,
        WordMeasure::Wup => wsim(taxonomy, model, w1, w2, ConceptMeasure::WuPalmer).value,
        WordMeasure::Edge => wsim_edge(taxonomy, w1, w2, EdgeVariant::AssertZero),
        WordMeasure::EdgeVtop => wsim_edge(taxonomy, w1, w2, EdgeVariant::VirtualTop),
        WordMeasure::Lc => wsim_lc(taxonomy, w1, w2, model.log_base()).unwrap_or(0.0),
    }
}

/// Rates the supplied pairs on a live taxonomy and correlates against the
/// gold ratings; pairs with out-of-vocabulary words are excluded and
/// reported.
pub fn eval_live(
    taxonomy: &Taxonomy,
    model: &ProbabilityModel,
    pairs: &[(String, String, f64)],
    measure: WordMeasure,
) -> Result<CorrelationReport> {
    let mut xs = Vec::new();
    let mut gold = Vec::new();
    let mut excluded = Vec::new();
    for (w1, w2, g) in pairs {
        let scorable = (taxonomy.word_in_vocabulary(w1) || taxonomy.fallback_concept().is_some())
            && (taxonomy.word_in_vocabulary(w2) || taxonomy.fallback_concept().is_some());
        if !scorable {
            excluded.push((w1.clone(), w2.clone()));
            continue;
        }
        xs.push(rate_pair(taxonomy, model, w1, w2, measure));
        gold.push(*g);
    }
    if xs.len() < 2 {
        return Err(Error::UndefinedCorrelation(format!(
            "only {} scorable pairs",
            xs.len()
        )));
    }
    let r = pearson(&xs, &gold)?;
    Ok(CorrelationReport {
        entries: vec![CorrelationEntry {
            measure: measure.as_str().to_string(),
            r,
        }],
        item_count: xs.len(),
        excluded,
    })
}

/// Parses `word1,word2,gold` lines (the first three benchmark columns).
pub fn load_gold_pairs(text: &str) -> Result<Vec<(String, String, f64)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') || line.starts_with("word1,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() < 3 {
            return Err(Error::Malformed {
                line: lineno,
                reason: "expected word1,word2,gold".into(),
            });
        }
        let g: f64 = f[2].parse().map_err(|_| Error::Malformed {
            line: lineno,
            reason: format!("bad gold rating {:?}", f[2]),
        })?;
        out.push((f[0].to_string(), f[1].to_string(), g));
    }
    Ok(out)
}
