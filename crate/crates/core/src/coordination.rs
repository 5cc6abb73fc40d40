//! Bracketing decisions for ambiguous noun-phrase coordinations of the
//! forms `n1 and n2 n3` and `n0 n1 and n2 n3`.
//!
//! Three independent evidence sources (number agreement, noun-noun
//! modification strength, semantic similarity) plus the context-weighted
//! similarity comparison for the four-noun form, combined by backing off
//! or voting.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::probmodel::ProbabilityModel;
use crate::selection::{assoc_profile, CoocModel};
use crate::similarity::{wsim, wsim_weighted, ConceptMeasure, WeightFunction};
use crate::taxonomy::Taxonomy;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberTag {
    Singular,
    Plural,
    Unknown,
}

impl NumberTag {
    pub fn parse(s: &str) -> Result<NumberTag> {
        match s {
            "sg" => Ok(NumberTag::Singular),
            "pl" => Ok(NumberTag::Plural),
            "?" | "-" => Ok(NumberTag::Unknown),
            other => Err(Error::Malformed {
                line: 0,
                reason: format!("bad number tag {other:?}, expected sg, pl, ?, or -"),
            }),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NumberTag::Singular => "sg",
            NumberTag::Plural => "pl",
            NumberTag::Unknown => "?",
        }
    }
}

/// An ambiguous phrase; `numbers` tags n1, n2, n3 in order.
#[derive(Clone, Debug)]
pub struct CoordinationPhrase {
    pub n0: Option<String>,
    pub n1: String,
    pub n2: String,
    pub n3: String,
    pub numbers: [NumberTag; 3],
}

impl CoordinationPhrase {
    pub fn new(
        n0: Option<String>,
        n1: impl Into<String>,
        n2: impl Into<String>,
        n3: impl Into<String>,
        numbers: [NumberTag; 3],
    ) -> Result<Self> {
        let p = CoordinationPhrase {
            n0,
            n1: n1.into(),
            n2: n2.into(),
            n3: n3.into(),
            numbers,
        };
        if p.n1.is_empty() || p.n2.is_empty() || p.n3.is_empty() {
            return Err(Error::Malformed {
                line: 0,
                reason: "n1, n2, n3 must be non-empty".into(),
            });
        }
        Ok(p)
    }

    /// Parses `n0?<TAB>n1<TAB>n2<TAB>n3<TAB>numbers`; the first field may be
    /// `-` (or the line may have only four fields) when there is no n0, and
    /// numbers is either `-` or a comma list of sg/pl/? for n1, n2, n3.
    pub fn parse_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        let (n0, rest) = match fields.len() {
            4 => (None, &fields[0..]),
            5 => {
                let n0 = match fields[0] {
                    "-" | "" => None,
                    w => Some(w.to_string()),
                };
                (n0, &fields[1..])
            }
            n => {
                return Err(Error::Malformed {
                    line: 0,
                    reason: format!("expected 4 or 5 tab-separated fields, got {n}"),
                })
            }
        };
        let numbers = parse_numbers(rest[3])?;
        CoordinationPhrase::new(n0, rest[0], rest[1], rest[2], numbers)
    }

    /// Fills unknown tags from a number lexicon and, optionally, a final
    /// `-s` means plural guess.
    pub fn resolve_numbers(&mut self, lexicon: Option<&HashMap<String, NumberTag>>, guess: bool) {
        let words = [&self.n1, &self.n2, &self.n3];
        for (tag, word) in self.numbers.iter_mut().zip(words) {
            if *tag != NumberTag::Unknown {
                continue;
            }
            if let Some(found) = lexicon.and_then(|l| l.get(word.as_str())) {
                *tag = *found;
            } else if guess {
                *tag = if word.ends_with('s') {
                    NumberTag::Plural
                } else {
                    NumberTag::Singular
                };
            }
        }
    }
}

fn parse_numbers(field: &str) -> Result<[NumberTag; 3]> {
    if field == "-" {
        return Ok([NumberTag::Unknown; 3]);
    }
    let parts: Vec<&str> = field.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Malformed {
            line: 0,
            reason: format!("numbers field {field:?} must be `-` or three comma-separated tags"),
        });
    }
    Ok([
        NumberTag::parse(parts[0])?,
        NumberTag::parse(parts[1])?,
        NumberTag::parse(parts[2])?,
    ])
}

/// Parses `word<TAB>sg|pl` lines.
pub fn load_number_lexicon(text: &str) -> Result<HashMap<String, NumberTag>> {
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
                reason: "expected word<TAB>sg|pl".into(),
            });
        }
        let tag = NumberTag::parse(fields[1]).map_err(|_| Error::Malformed {
            line: lineno,
            reason: format!("bad tag {:?}", fields[1]),
        })?;
        map.insert(fields[0].to_string(), tag);
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Conjoin12,
    Conjoin13,
    Undecided,
}

impl Choice {
    pub fn as_str(&self) -> &'static str {
        match self {
            Choice::Conjoin12 => "12",
            Choice::Conjoin13 => "13",
            Choice::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Number,
    Modification,
    Similarity,
    WeightedSimilarity,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Number => "number",
            Strategy::Modification => "modification",
            Strategy::Similarity => "similarity",
            Strategy::WeightedSimilarity => "weighted-sim",
        }
    }
}

/// One strategy's contribution to a decision. Scores with `None` values
/// were not computable (for example an unseen predicate).
#[derive(Clone, Debug)]
pub struct Evidence {
    pub strategy: Strategy,
    pub evaluated: bool,
    pub choice: Choice,
    pub scores: Vec<(&'static str, Option<f64>)>,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub choice: Choice,
    /// Strategy whose verdict became the choice; `None` when undecided or
    /// when the default was applied.
    pub fired_by: Option<Strategy>,
    pub defaulted: bool,
    pub evidence: Vec<Evidence>,
}

impl Decision {
    fn from_single(ev: Evidence) -> Decision {
        Decision {
            choice: ev.choice,
            fired_by: (ev.choice != Choice::Undecided).then_some(ev.strategy),
            defaulted: false,
            evidence: vec![ev],
        }
    }
}

/// Cutoffs for "strong" and "weak" modification affinity.
#[derive(Clone, Copy, Debug)]
pub struct Thresholds {
    tau: f64,
    sigma: f64,
}

impl Thresholds {
    pub fn new(tau: f64, sigma: f64) -> Result<Thresholds> {
        if tau < sigma {
            return Err(Error::InvalidThresholds { tau, sigma });
        }
        Ok(Thresholds { tau, sigma })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            tau: 2.0,
            sigma: 0.0,
        }
    }
}

/// Number agreement: conjoin the two heads that agree when the third
/// differs; any unknown tag leaves the rule undecided.
pub fn number_rule(phrase: &CoordinationPhrase) -> Decision {
    use NumberTag::Unknown;
    let [t1, t2, t3] = phrase.numbers;
    let choice = if t1 == Unknown || t2 == Unknown || t3 == Unknown {
        Choice::Undecided
    } else if t1 == t2 && t1 != t3 {
        Choice::Conjoin12
    } else if t1 == t3 && t1 != t2 {
        Choice::Conjoin13
    } else {
        Choice::Undecided
    };
    Decision::from_single(Evidence {
        strategy: Strategy::Number,
        evaluated: true,
        choice,
        scores: Vec::new(),
    })
}

/// Semantic similarity: compare wsim(n1, n2) against wsim(n1, n3) under
/// the information-content measure; equality is undecided.
pub fn similarity_rule(
    taxonomy: &Taxonomy,
    model: &ProbabilityModel,
    phrase: &CoordinationPhrase,
) -> Decision {
    let s12 = wsim(taxonomy, model, &phrase.n1, &phrase.n2, ConceptMeasure::Resnik).value;
    let s13 = wsim(taxonomy, model, &phrase.n1, &phrase.n3, ConceptMeasure::Resnik).value;
    let choice = if s12 > s13 {
        Choice::Conjoin12
    } else if s13 > s12 {
        Choice::Conjoin13
    } else {
        Choice::Undecided
    };
    Decision::from_single(Evidence {
        strategy: Strategy::Similarity,
        evaluated: true,
        choice,
        scores: vec![("wsim12", Some(s12)), ("wsim13", Some(s13))],
    })
}

/// Noun-noun modification: a strong association between n1 and n3 (in
/// either direction) favors conjoining n1 and n2; a weak one favors
/// conjoining n1 and n3. Unseen-predicate failures are treated as
/// missing evidence.
pub fn modification_rule(
    taxonomy: &Taxonomy,
    cooc: &CoocModel,
    phrase: &CoordinationPhrase,
    thresholds: Thresholds,
) -> Decision {
    let assoc = |pred: &str, arg: &str| -> Option<f64> {
        crate::selection::sel_assoc_word(taxonomy, cooc, pred, arg).ok()
    };
    let a13 = assoc(&phrase.n1, &phrase.n3);
    let a31 = assoc(&phrase.n3, &phrase.n1);
    let exceeds = |v: Option<f64>| v.is_some_and(|x| x > thresholds.tau);
    let below = |v: Option<f64>| v.is_some_and(|x| x < thresholds.sigma);
    let choice = if exceeds(a13) || exceeds(a31) {
        Choice::Conjoin12
    } else if below(a13) || below(a31) {
        Choice::Conjoin13
    } else {
        Choice::Undecided
    };
    Decision::from_single(Evidence {
        strategy: Strategy::Modification,
        evaluated: true,
        choice,
        scores: vec![("a13", a13), ("a31", a31)],
    })
}

/// Builds the relevance weights for one candidate pair: each class is
/// weighted by the stronger of the two context words' associations with
/// it. Context words that are missing or unseen contribute nothing.
fn context_weights(
    taxonomy: &Taxonomy,
    cooc: &CoocModel,
    contexts: [Option<&str>; 2],
) -> WeightFunction {
    let mut weights: std::collections::BTreeMap<crate::taxonomy::ConceptId, f64> =
        std::collections::BTreeMap::new();
    for ctx in contexts.into_iter().flatten() {
        let Ok(profile) = assoc_profile(taxonomy, cooc, ctx) else {
            continue;
        };
        for (id, a) in profile {
            let w = weights.entry(id).or_insert(f64::NEG_INFINITY);
            *w = w.max(a);
        }
    }
    WeightFunction::new(weights.into_iter().filter(|(_, w)| w.is_finite()))
}

/// Weighted semantic similarity for the four-noun form: compare the two
/// candidate conjunctions under context-derived relevance weights.
pub fn weighted_similarity_rule(
    taxonomy: &Taxonomy,
    model: &ProbabilityModel,
    cooc: &CoocModel,
    phrase: &CoordinationPhrase,
) -> Decision {
    let n0 = phrase.n0.as_deref();
    let alpha12 = context_weights(taxonomy, cooc, [n0, Some(&phrase.n3)]);
    let alpha13 = context_weights(taxonomy, cooc, [n0, Some(&phrase.n2)]);
    let w12 = wsim_weighted(taxonomy, model, &phrase.n1, &phrase.n2, &alpha12);
    let w13 = wsim_weighted(taxonomy, model, &phrase.n1, &phrase.n3, &alpha13);
    let choice = if w12.value > w13.value {
        Choice::Conjoin12
    } else if w13.value > w12.value {
        Choice::Conjoin13
    } else {
        Choice::Undecided
    };
    Decision::from_single(Evidence {
        strategy: Strategy::WeightedSimilarity,
        evaluated: true,
        choice,
        scores: vec![("w12", Some(w12.value)), ("w13", Some(w13.value))],
    })
}

/// Everything the combined resolvers need to evaluate any strategy.
pub struct CoordContext<'a> {
    pub taxonomy: &'a Taxonomy,
    pub model: &'a ProbabilityModel,
    pub cooc: &'a CoocModel,
    pub thresholds: Thresholds,
}

impl CoordContext<'_> {
    fn run(&self, strategy: Strategy, phrase: &CoordinationPhrase) -> Evidence {
        let d = match strategy {
            Strategy::Number => number_rule(phrase),
            Strategy::Modification => {
                modification_rule(self.taxonomy, self.cooc, phrase, self.thresholds)
            }
            Strategy::Similarity => similarity_rule(self.taxonomy, self.model, phrase),
            Strategy::WeightedSimilarity => {
                weighted_similarity_rule(self.taxonomy, self.model, self.cooc, phrase)
            }
        };
        d.evidence.into_iter().next().expect("single evidence")
    }
}

/// The strategy order used by backing off: number first, then the
/// modification and similarity rules for three-noun phrases, or the
/// weighted comparison for four-noun phrases.
pub fn default_strategy_order(phrase: &CoordinationPhrase) -> Vec<Strategy> {
    if phrase.n0.is_some() {
        vec![Strategy::Number, Strategy::WeightedSimilarity]
    } else {
        vec![
            Strategy::Number,
            Strategy::Modification,
            Strategy::Similarity,
        ]
    }
}

/// Backing off: the first strategy that decides wins; later strategies
/// are left unevaluated in the evidence trail.
pub fn resolve_backoff(
    ctx: &CoordContext<'_>,
    phrase: &CoordinationPhrase,
    order: &[Strategy],
) -> Decision {
    let mut evidence: Vec<Evidence> = Vec::with_capacity(order.len());
    let mut fired: Option<(Choice, Strategy)> = None;
    for &strategy in order {
        if fired.is_some() {
            evidence.push(Evidence {
                strategy,
                evaluated: false,
                choice: Choice::Undecided,
                scores: Vec::new(),
            });
            continue;
        }
        let ev = ctx.run(strategy, phrase);
        if ev.choice != Choice::Undecided {
            fired = Some((ev.choice, strategy));
        }
        evidence.push(ev);
    }
    match fired {
        Some((choice, strategy)) => Decision {
            choice,
            fired_by: Some(strategy),
            defaulted: false,
            evidence,
        },
        None => Decision {
            choice: Choice::Undecided,
            fired_by: None,
            defaulted: false,
            evidence,
        },
    }
}

/// Voting across the three-noun strategies: the majority of decided
/// votes wins; ties (including all-undecided) stay undecided.
pub fn resolve_vote(ctx: &CoordContext<'_>, phrase: &CoordinationPhrase) -> Decision {
    resolve_vote_ordered(
        ctx,
        phrase,
        &[
            Strategy::Number,
            Strategy::Modification,
            Strategy::Similarity,
        ],
    )
}

/// Voting over an explicit strategy list; the outcome does not depend on
/// the order.
pub fn resolve_vote_ordered(
    ctx: &CoordContext<'_>,
    phrase: &CoordinationPhrase,
    order: &[Strategy],
) -> Decision {
    let evidence: Vec<Evidence> = order.iter().map(|&s| ctx.run(s, phrase)).collect();
    let votes12 = evidence
        .iter()
        .filter(|e| e.choice == Choice::Conjoin12)
        .count();
    let votes13 = evidence
        .iter()
        .filter(|e| e.choice == Choice::Conjoin13)
        .count();
    let choice = match votes12.cmp(&votes13) {
        std::cmp::Ordering::Greater => Choice::Conjoin12,
        std::cmp::Ordering::Less => Choice::Conjoin13,
        std::cmp::Ordering::Equal => Choice::Undecided,
    };
    Decision {
        choice,
        fired_by: None,
        defaulted: false,
        evidence,
    }
}

/// Replaces an undecided choice with the default, marking the decision.
pub fn apply_default(decision: Decision, default_choice: Choice) -> Decision {
    assert!(
        default_choice != Choice::Undecided,
        "default must be a concrete choice"
    );
    if decision.choice != Choice::Undecided {
        return decision;
    }
    Decision {
        choice: default_choice,
        fired_by: None,
        defaulted: true,
        evidence: decision.evidence,
    }
}
