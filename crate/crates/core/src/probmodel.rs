//! Concept frequency estimation and the derived probability / information
//! content model.
//!
//! Counting follows the class-inclusion rule: a token of word `w` counts
//! once toward every concept that subsumes any sense of `w`. Probabilities
//! are plain relative frequencies; nothing is smoothed.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::taxonomy::{ConceptId, Taxonomy};

/// Per-concept frequency mass plus the token total N.
#[derive(Clone, Debug)]
pub struct FrequencyTable {
    freq: Vec<f64>,
    total_n: f64,
    skipped_tokens: u64,
}

impl FrequencyTable {
    pub fn total_n(&self) -> f64 {
        self.total_n
    }

    /// Tokens that matched no sense and no fallback.
    pub fn skipped_tokens(&self) -> u64 {
        self.skipped_tokens
    }

    pub fn freq(&self, t: &Taxonomy, id: &str) -> Result<f64> {
        Ok(self.freq[t.resolve(id)? as usize])
    }

    /// Fieldwise addition of a table built from a disjoint stream.
    pub fn merge(&mut self, other: &FrequencyTable) {
        assert_eq!(self.freq.len(), other.freq.len(), "tables from different taxonomies");
        for (a, b) in self.freq.iter_mut().zip(&other.freq) {
            *a += b;
        }
        self.total_n += other.total_n;
        self.skipped_tokens += other.skipped_tokens;
    }
}

/// Counts a weighted token stream against the taxonomy.
///
/// Each accepted token adds its weight to every concept subsuming any of
/// its senses (the union over senses, so one token never double-counts a
/// shared ancestor) and to N. Unknown tokens are skipped and tallied.
pub fn count_corpus<I, S>(
    taxonomy: &Taxonomy,
    tokens: I,
    lemma_map: Option<&HashMap<String, String>>,
) -> FrequencyTable
where
    I: IntoIterator<Item = (S, f64)>,
    S: AsRef<str>,
{
    let mut freq = vec![0.0; taxonomy.len()];
    let mut total_n = 0.0;
    let mut skipped = 0u64;
    for (token, weight) in tokens {
        let token = token.as_ref();
        let token = lemma_map
            .and_then(|m| m.get(token))
            .map_or(token, String::as_str);
        let senses = taxonomy.sense_idx(token);
        if senses.is_empty() {
            skipped += 1;
            continue;
        }
        let mut credited: BTreeSet<u32> = BTreeSet::new();
        for s in senses {
            credited.extend(taxonomy.ancestors_idx(s).iter().copied());
        }
        for c in credited {
            freq[c as usize] += weight;
        }
        total_n += weight;
    }
    FrequencyTable {
        freq,
        total_n,
        skipped_tokens: skipped,
    }
}

/// Splits raw text into unit-weight tokens for [`count_corpus`].
pub fn raw_tokens(text: &str) -> impl Iterator<Item = (&str, f64)> {
    text.split_whitespace().map(|w| (w, 1.0))
}

/// Parses `word<TAB>count` lines into weighted tokens.
pub fn counted_tokens(text: &str) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split('\t');
        let word = it.next().unwrap_or_default();
        let count = it.next().ok_or_else(|| Error::Malformed {
            line: lineno,
            reason: "expected word<TAB>count".into(),
        })?;
        if it.next().is_some() {
            return Err(Error::Malformed {
                line: lineno,
                reason: "too many fields".into(),
            });
        }
        let count: f64 = count.parse().map_err(|_| Error::Malformed {
            line: lineno,
            reason: format!("bad count {count:?}"),
        })?;
        out.push((word.to_string(), count));
    }
    Ok(out)
}

/// Parses `surface<TAB>lemma` lines.
pub fn load_lemma_map(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::Malformed {
                line: lineno,
                reason: "expected surface<TAB>lemma".into(),
            });
        }
        map.insert(fields[0].to_string(), fields[1].to_string());
    }
    Ok(map)
}

/// p(c) and −log p(c) per concept, in a fixed log base.
#[derive(Debug)]
pub struct ProbabilityModel {
    p: Vec<f64>,
    ic: Vec<f64>,
    log_base: f64,
}

impl ProbabilityModel {
    pub fn log_base(&self) -> f64 {
        self.log_base
    }

    pub fn p(&self, t: &Taxonomy, id: &str) -> Result<f64> {
        Ok(self.p_idx(t.resolve(id)?))
    }

    /// Information content; +infinity for zero-frequency concepts.
    pub fn ic(&self, t: &Taxonomy, id: &str) -> Result<f64> {
        Ok(self.ic_idx(t.resolve(id)?))
    }

    pub(crate) fn p_idx(&self, i: u32) -> f64 {
        self.p[i as usize]
    }

    pub(crate) fn ic_idx(&self, i: u32) -> f64 {
        self.ic[i as usize]
    }
}

/// Converts counted frequencies to relative-frequency probabilities.
pub fn to_probability(table: &FrequencyTable, log_base: f64) -> Result<ProbabilityModel> {
    if table.total_n <= 0.0 {
        return Err(Error::EmptyModel);
    }
    assert!(log_base > 0.0 && log_base != 1.0, "log base must be positive and != 1");
    let p: Vec<f64> = table.freq.iter().map(|f| f / table.total_n).collect();
    let ic = p.iter().map(|&p| ic_from_p(p, log_base)).collect();
    Ok(ProbabilityModel { p, ic, log_base })
}

fn ic_from_p(p: f64, base: f64) -> f64 {
    if p == 0.0 {
        f64::INFINITY
    } else {
        -(p.ln() / base.ln())
    }
}

/// Loads a probability model from `concept<TAB>p=<v>` / `concept<TAB>ic=<v>`
/// records, bypassing corpus counting.
///
/// Concepts absent from the file get p = 0 (infinite IC) and are exempt from
/// the monotonicity check; among assigned concepts, p may not exceed the p
/// of any assigned ancestor.
pub fn load_probabilities(
    taxonomy: &Taxonomy,
    reader: impl BufRead,
    log_base: f64,
) -> Result<ProbabilityModel> {
    let mut text = String::new();
    let mut reader = reader;
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::Malformed {
            line: 0,
            reason: e.to_string(),
        })?;
    load_probabilities_str(taxonomy, &text, log_base)
}

pub fn load_probabilities_str(
    taxonomy: &Taxonomy,
    text: &str,
    log_base: f64,
) -> Result<ProbabilityModel> {
    assert!(log_base > 0.0 && log_base != 1.0, "log base must be positive and != 1");
    let mut p = vec![0.0; taxonomy.len()];
    let mut ic = vec![f64::INFINITY; taxonomy.len()];
    let mut assigned = vec![false; taxonomy.len()];
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::Malformed {
                line: lineno,
                reason: "expected concept_id<TAB>p=<real> or concept_id<TAB>ic=<real>".into(),
            });
        }
        let idx = taxonomy.resolve(fields[0])?;
        let value = fields[1];
        let (kind, raw) = value
            .split_once('=')
            .or_else(|| value.split_once(':'))
            .ok_or_else(|| Error::Malformed {
                line: lineno,
                reason: format!("bad value field {value:?}"),
            })?;
        let number: f64 = raw.parse().map_err(|_| Error::Malformed {
            line: lineno,
            reason: format!("bad number {raw:?}"),
        })?;
        if assigned[idx as usize] {
            return Err(Error::Malformed {
                line: lineno,
                reason: format!("duplicate assignment for {}", fields[0]),
            });
        }
        let (pv, icv) = match kind {
            "p" => {
                if !(0.0..=1.0).contains(&number) {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: format!("p = {number} outside [0, 1]"),
                    });
                }
                (number, ic_from_p(number, log_base))
            }
            "ic" => {
                if number < 0.0 {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: format!("ic = {number} is negative"),
                    });
                }
                (log_base.powf(-number), number)
            }
            other => {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: format!("unknown key {other:?}, expected p or ic"),
                })
            }
        };
        assigned[idx as usize] = true;
        p[idx as usize] = pv;
        ic[idx as usize] = icv;
    }

    // p must be nondecreasing walking up, checked over assigned pairs only
    for i in 0..taxonomy.len() as u32 {
        if !assigned[i as usize] {
            continue;
        }
        for &a in taxonomy.ancestors_idx(i) {
            if a != i && assigned[a as usize] && p[i as usize] > p[a as usize] + 1e-12 {
                return Err(Error::NotMonotone {
                    child: taxonomy.id_of(i).as_str().to_string(),
                    ancestor: taxonomy.id_of(a).as_str().to_string(),
                    child_p: p[i as usize],
                    ancestor_p: p[a as usize],
                });
            }
        }
    }
    Ok(ProbabilityModel { p, ic, log_base })
}

/// Word-level IC lookup used by a few callers; senses resolve through the
/// taxonomy fallback rule.
pub fn word_class_ids(taxonomy: &Taxonomy, word: &str) -> Vec<ConceptId> {
    let mut out: BTreeSet<u32> = BTreeSet::new();
    for s in taxonomy.sense_idx(word) {
        out.extend(taxonomy.ancestors_idx(s).iter().copied());
    }
    out.into_iter().map(|i| taxonomy.id_of(i).clone()).collect()
}
