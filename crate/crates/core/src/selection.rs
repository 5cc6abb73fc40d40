//! Selectional association: how strongly a predicate word predicts a
//! concept class, measured as that class's share of the relative entropy
//! between the predicate's class distribution and the class prior.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptId, Taxonomy};

/// Directed modifier-head co-occurrence model.
///
/// Ingestion splits each argument's count evenly across its senses and
/// credits every subsumer of each sense, so a predicate's conditional
/// class distribution and the corpus-wide prior are both normalizable
/// over the same class inventory.
#[derive(Debug)]
pub struct CoocModel {
    /// Per predicate: class index -> credited mass.
    class_freq: HashMap<String, BTreeMap<u32, f64>>,
    /// Per predicate: total argument count.
    word_total: HashMap<String, f64>,
    /// Raw (predicate, argument) counts as ingested.
    pair_counts: HashMap<(String, String), f64>,
    /// Normalized class prior over the inventory.
    prior: BTreeMap<u32, f64>,
    skipped_pairs: u64,
}

impl CoocModel {
    pub fn word_total(&self, predicate: &str) -> f64 {
        self.word_total.get(predicate).copied().unwrap_or(0.0)
    }

    pub fn pair_count(&self, predicate: &str, argument: &str) -> f64 {
        self.pair_counts
            .get(&(predicate.to_string(), argument.to_string()))
            .copied()
            .unwrap_or(0.0)
    }

    /// Pairs whose argument had no senses and no fallback.
    pub fn skipped_pairs(&self) -> u64 {
        self.skipped_pairs
    }

    pub fn prior(&self, t: &Taxonomy, id: &str) -> Result<f64> {
        Ok(self.prior.get(&t.resolve(id)?).copied().unwrap_or(0.0))
    }

    /// p(c|w) over the class inventory.
    pub fn conditional(&self, t: &Taxonomy, predicate: &str, id: &str) -> Result<f64> {
        let i = t.resolve(id)?;
        let freq = self
            .class_freq
            .get(predicate)
            .ok_or_else(|| Error::UnseenWord(predicate.to_string()))?;
        let total: f64 = freq.values().sum();
        Ok(freq.get(&i).copied().unwrap_or(0.0) / total)
    }
}

/// Builds the model from (predicate, argument, count) records.
pub fn ingest_pairs<I, S>(taxonomy: &Taxonomy, pairs: I) -> CoocModel
where
    I: IntoIterator<Item = (S, S, f64)>,
    S: Into<String>,
{
    let mut class_freq: HashMap<String, BTreeMap<u32, f64>> = HashMap::new();
    let mut word_total: HashMap<String, f64> = HashMap::new();
    let mut pair_counts: HashMap<(String, String), f64> = HashMap::new();
    let mut prior_raw: BTreeMap<u32, f64> = BTreeMap::new();
    let mut skipped = 0u64;

    for (pred, arg, count) in pairs {
        let pred: String = pred.into();
        let arg: String = arg.into();
        let senses = taxonomy.sense_idx(&arg);
        if senses.is_empty() {
            skipped += 1;
            continue;
        }
        *pair_counts.entry((pred.clone(), arg)).or_default() += count;
        *word_total.entry(pred.clone()).or_default() += count;
        let share = count / senses.len() as f64;
        let freq = class_freq.entry(pred).or_default();
        for s in senses {
            for &a in taxonomy.ancestors_idx(s) {
                *freq.entry(a).or_default() += share;
                *prior_raw.entry(a).or_default() += share;
            }
        }
    }

    let z: f64 = prior_raw.values().sum();
    let prior = if z > 0.0 {
        prior_raw.into_iter().map(|(c, v)| (c, v / z)).collect()
    } else {
        BTreeMap::new()
    };

    CoocModel {
        class_freq,
        word_total,
        pair_counts,
        prior,
        skipped_pairs: skipped,
    }
}

/// Parses `predicate<TAB>argument<TAB>count` lines (count optional,
/// defaulting to one).
pub fn load_pairs(text: &str) -> Result<Vec<(String, String, f64)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (pred, arg, count) = match fields.len() {
            2 => (fields[0], fields[1], 1.0),
            3 => {
                let c: f64 = fields[2].parse().map_err(|_| Error::Malformed {
                    line: lineno,
                    reason: format!("bad count {:?}", fields[2]),
                })?;
                (fields[0], fields[1], c)
            }
            n => {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: format!("expected 2 or 3 fields, got {n}"),
                })
            }
        };
        out.push((pred.to_string(), arg.to_string(), count));
    }
    Ok(out)
}

/// A(w, c): the class's share of the relative entropy between p(C|w) and
/// the prior p(C). Zero when the two distributions coincide.
pub fn sel_assoc_class(
    taxonomy: &Taxonomy,
    model: &CoocModel,
    predicate: &str,
    class: &str,
) -> Result<f64> {
    let target = taxonomy.resolve(class)?;
    sel_assoc_class_idx(model, predicate, target)
}

fn sel_assoc_class_idx(model: &CoocModel, predicate: &str, target: u32) -> Result<f64> {
    let freq = model
        .class_freq
        .get(predicate)
        .filter(|_| model.word_total(predicate) > 0.0)
        .ok_or_else(|| Error::UnseenWord(predicate.to_string()))?;
    let total: f64 = freq.values().sum();

    let mut divergence = 0.0;
    let mut target_term = 0.0;
    for (&c, &prior) in &model.prior {
        let q = freq.get(&c).copied().unwrap_or(0.0) / total;
        if q == 0.0 {
            continue;
        }
        if prior == 0.0 {
            return Err(Error::InconsistentModel(format!("class index {c}")));
        }
        let term = q * (q / prior).ln();
        divergence += term;
        if c == target {
            target_term = term;
        }
    }
    if divergence == 0.0 {
        return Ok(0.0);
    }
    Ok(target_term / divergence)
}

/// A(w1, w2): the maximum A(w1, c) over every class to which w2 belongs,
/// reading "belongs" as the subsumer closure of w2's senses.
pub fn sel_assoc_word(
    taxonomy: &Taxonomy,
    model: &CoocModel,
    predicate: &str,
    argument: &str,
) -> Result<f64> {
    let senses = taxonomy.sense_idx(argument);
    if senses.is_empty() {
        return Ok(0.0);
    }
    let mut classes: std::collections::BTreeSet<u32> = std::collections::BTreeSet::new();
    for s in senses {
        classes.extend(taxonomy.ancestors_idx(s).iter().copied());
    }
    let mut best = f64::NEG_INFINITY;
    for c in classes {
        best = best.max(sel_assoc_class_idx(model, predicate, c)?);
    }
    Ok(best)
}

/// The classes with nonzero prior, with their A(w, c) values; used to
/// build relevance weights for the weighted similarity comparison.
pub fn assoc_profile(
    taxonomy: &Taxonomy,
    model: &CoocModel,
    predicate: &str,
) -> Result<Vec<(ConceptId, f64)>> {
    let freq = model
        .class_freq
        .get(predicate)
        .filter(|_| model.word_total(predicate) > 0.0)
        .ok_or_else(|| Error::UnseenWord(predicate.to_string()))?;
    let total: f64 = freq.values().sum();
    let mut terms = Vec::with_capacity(model.prior.len());
    let mut divergence = 0.0;
    for (&c, &prior) in &model.prior {
        let q = freq.get(&c).copied().unwrap_or(0.0) / total;
        let term = if q == 0.0 {
            0.0
        } else {
            if prior == 0.0 {
                return Err(Error::InconsistentModel(format!("class index {c}")));
            }
            q * (q / prior).ln()
        };
        divergence += term;
        terms.push((c, term));
    }
    Ok(terms
        .into_iter()
        .map(|(c, term)| {
            let a = if divergence == 0.0 { 0.0 } else { term / divergence };
            (taxonomy.id_of(c).clone(), a)
        })
        .collect())
}
