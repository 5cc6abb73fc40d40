//! Sense disambiguation for groups of related nouns.
//!
//! Every unordered word pair contributes support to the senses lying under
//! the pair's most informative subsumer; a sense's confidence is its share
//! of the support its word could have received. Words whose pairings carry
//! no information fall back to a uniform confidence over their senses.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::probmodel::ProbabilityModel;
use crate::similarity::{wsim, ConceptMeasure};
use crate::taxonomy::{ConceptId, Taxonomy};

/// An ordered group of distinct nouns.
#[derive(Clone, Debug)]
pub struct NounGroup {
    words: Vec<String>,
    had_duplicates: bool,
}

impl NounGroup {
    /// Collapses duplicates (keeping first occurrence); needs at least two
    /// distinct words.
    pub fn new(words: impl IntoIterator<Item = String>) -> Result<NounGroup> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut had_duplicates = false;
        for w in words {
            if seen.insert(w.clone()) {
                out.push(w);
            } else {
                had_duplicates = true;
            }
        }
        if out.len() < 2 {
            return Err(Error::GroupTooSmall(out.len()));
        }
        Ok(NounGroup {
            words: out,
            had_duplicates,
        })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn had_duplicates(&self) -> bool {
        self.had_duplicates
    }
}

/// Support and confidence for one sense of one grouped word.
#[derive(Clone, Debug)]
pub struct SenseScore {
    pub sense: ConceptId,
    pub support: f64,
    pub phi: f64,
}

/// Diagnostics for one evaluated word pair.
#[derive(Clone, Debug)]
pub struct PairScore {
    pub word_i: usize,
    pub word_j: usize,
    pub value: f64,
    pub subsumers: Vec<ConceptId>,
}

/// Result of disambiguating one noun group.
#[derive(Clone, Debug)]
pub struct GroupResult {
    /// Words that participated in pairing, in input order.
    pub words: Vec<String>,
    /// Senses (lexicographic) with support and confidence, per word.
    pub senses: Vec<Vec<SenseScore>>,
    /// Total pair similarity each word could have drawn support from.
    pub normalization: Vec<f64>,
    pub pairs: Vec<PairScore>,
    /// Words dropped for having no senses and no fallback.
    pub excluded_words: Vec<String>,
}

impl GroupResult {
    pub fn phi(&self, word: &str, sense: &str) -> Option<f64> {
        let i = self.words.iter().position(|w| w == word)?;
        self.senses[i]
            .iter()
            .find(|s| s.sense.as_str() == sense)
            .map(|s| s.phi)
    }
}

/// Runs the pairwise support algorithm over the group.
pub fn disambiguate_group(
    taxonomy: &Taxonomy,
    model: &ProbabilityModel,
    group: &NounGroup,
) -> GroupResult {
    let mut words = Vec::new();
    let mut excluded = Vec::new();
    let mut senses_idx: Vec<Vec<u32>> = Vec::new();
    for w in group.words() {
        let mut s = taxonomy.sense_idx(w);
        if s.is_empty() {
            excluded.push(w.clone());
        } else {
            s.sort_by(|&a, &b| taxonomy.id_of(a).cmp(taxonomy.id_of(b)));
            words.push(w.clone());
            senses_idx.push(s);
        }
    }

    let n = words.len();
    let mut support: Vec<Vec<f64>> = senses_idx.iter().map(|s| vec![0.0; s.len()]).collect();
    let mut normalization = vec![0.0; n];
    let mut pairs = Vec::new();

    for i in 0..n {
        for j in (i + 1)..n {
            let r = wsim(taxonomy, model, &words[i], &words[j], ConceptMeasure::Resnik);
            pairs.push(PairScore {
                word_i: i,
                word_j: j,
                value: r.value,
                subsumers: r.subsumers.clone(),
            });
            if r.subsumers.is_empty() {
                // no shared ancestry: contributes nothing to either side
                continue;
            }
            let mis: Vec<u32> = r
                .subsumers
                .iter()
                .map(|c| taxonomy.resolve(c.as_str()).expect("subsumer exists"))
                .collect();
            // a sense qualifies if any tied subsumer is its ancestor; the
            // pair's value is credited once per qualifying sense and once
            // per normalization slot, so support stays within bounds
            for (word, senses) in [(i, &senses_idx[i]), (j, &senses_idx[j])] {
                for (k, &s) in senses.iter().enumerate() {
                    let anc = taxonomy.ancestors_idx(s);
                    if mis.iter().any(|c| anc.contains(c)) {
                        support[word][k] += r.value;
                    }
                }
                normalization[word] += r.value;
            }
        }
    }

    let senses = senses_idx
        .iter()
        .enumerate()
        .map(|(i, senses)| {
            senses
                .iter()
                .enumerate()
                .map(|(k, &s)| {
                    let phi = if normalization[i] > 0.0 {
                        support[i][k] / normalization[i]
                    } else {
                        1.0 / senses.len() as f64
                    };
                    SenseScore {
                        sense: taxonomy.id_of(s).clone(),
                        support: support[i][k],
                        phi,
                    }
                })
                .collect()
        })
        .collect();

    GroupResult {
        words,
        senses,
        normalization,
        pairs,
        excluded_words: excluded,
    }
}

/// Linear scaling of confidence in [0, 1] to the discrete levels 1..=5,
/// equal-width bins with the top bin closed.
pub fn scale_confidence(phi: f64) -> Result<u8> {
    if !(0.0..=1.0).contains(&phi) {
        return Err(Error::ConfidenceOutOfRange(phi));
    }
    Ok(((1.0 + (phi * 5.0).floor()) as u8).min(5))
}

/// One sense's filtering outcome.
#[derive(Clone, Debug)]
pub struct PartitionEntry {
    pub word: String,
    pub sense: ConceptId,
    pub phi: f64,
    pub level: u8,
    pub included: bool,
}

/// Included/excluded split of every scored sense.
#[derive(Clone, Debug, Default)]
pub struct Partition {
    pub entries: Vec<PartitionEntry>,
}

/// Includes a sense iff its confidence passes both the raw threshold and
/// the discrete level floor.
pub fn filter_senses(result: &GroupResult, threshold: f64, min_level: u8) -> Result<Partition> {
    let mut entries = Vec::new();
    for (i, word) in result.words.iter().enumerate() {
        for s in &result.senses[i] {
            let level = scale_confidence(s.phi)?;
            entries.push(PartitionEntry {
                word: word.clone(),
                sense: s.sense.clone(),
                phi: s.phi,
                level,
                included: s.phi >= threshold && level >= min_level,
            });
        }
    }
    Ok(Partition { entries })
}

/// Default filter for presenting senses to a reader.
pub const PRESENTATION_FILTER: (f64, u8) = (0.1, 1);
/// Default filter for scoring against an annotation.
pub const EVALUATION_FILTER: (f64, u8) = (0.0, 3);

/// Correct/incorrect labels for the senses of one item, with the
/// annotator's familiarity flag.
#[derive(Clone, Debug, Default)]
pub struct SenseAnnotation {
    pub known: bool,
    pub correct: BTreeSet<(String, String)>,
    pub incorrect: BTreeSet<(String, String)>,
}

impl SenseAnnotation {
    fn label(&self, word: &str, sense: &str) -> Result<bool> {
        let key = (word.to_string(), sense.to_string());
        if self.correct.contains(&key) {
            Ok(true)
        } else if self.incorrect.contains(&key) {
            Ok(false)
        } else {
            Err(Error::Unannotated {
                word: word.to_string(),
                sense: sense.to_string(),
            })
        }
    }
}

/// Precision/recall with explicit absence for undefined (0/0) cases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrPair {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    included: u64,
    correct: u64,
    correctly_included: u64,
    excluded: u64,
    incorrect: u64,
    correctly_excluded: u64,
}

impl Tally {
    fn add(&mut self, included: bool, correct: bool) {
        if included {
            self.included += 1;
            if correct {
                self.correctly_included += 1;
            }
        } else {
            self.excluded += 1;
            if !correct {
                self.correctly_excluded += 1;
            }
        }
        if correct {
            self.correct += 1;
        } else {
            self.incorrect += 1;
        }
    }

    fn merge(&mut self, partition: &Partition, ann: &SenseAnnotation) -> Result<()> {
        for e in &partition.entries {
            self.add(e.included, ann.label(&e.word, e.sense.as_str())?);
        }
        Ok(())
    }

    fn selection(&self) -> PrPair {
        PrPair {
            precision: ratio(self.correctly_included, self.included),
            recall: ratio(self.correctly_included, self.correct),
        }
    }

    fn filtering(&self) -> PrPair {
        PrPair {
            precision: ratio(self.correctly_excluded, self.excluded),
            recall: ratio(self.correctly_excluded, self.incorrect),
        }
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Selection scoring: of what was included, how much was right; of what
/// was right, how much was included.
pub fn score_selection(partition: &Partition, ann: &SenseAnnotation) -> Result<PrPair> {
    let mut t = Tally::default();
    t.merge(partition, ann)?;
    Ok(t.selection())
}

/// Filtering scoring: the dual of selection over the excluded senses and
/// the incorrect labels.
pub fn score_filtering(partition: &Partition, ann: &SenseAnnotation) -> Result<PrPair> {
    let mut t = Tally::default();
    t.merge(partition, ann)?;
    Ok(t.filtering())
}

/// Micro-averaged scoring over several items; unknown items are skipped.
pub fn score_pooled(items: &[(Partition, SenseAnnotation)]) -> Result<(PrPair, PrPair)> {
    let mut t = Tally::default();
    for (partition, ann) in items {
        if !ann.known {
            continue;
        }
        t.merge(partition, ann)?;
    }
    Ok((t.selection(), t.filtering()))
}

/// One item fed to the random baseline: its senses and their labels.
#[derive(Clone, Debug)]
pub struct BaselineItem {
    pub senses: Vec<(String, String)>,
    pub ann: SenseAnnotation,
}

/// Averages over the baseline runs.
#[derive(Clone, Debug)]
pub struct BaselineReport {
    pub selection: PrPair,
    pub filtering: PrPair,
    /// Mean number of included senses per run.
    pub avg_included: f64,
    /// Per-sense inclusion probability actually used.
    pub q: f64,
    pub runs: u32,
}

/// Random baseline: includes each sense independently with the probability
/// that makes the expected senses-per-item match `target_avg`, averaged
/// over seeded runs.
pub fn random_baseline(
    items: &[BaselineItem],
    target_avg: f64,
    runs: u32,
    seed: u64,
) -> Result<BaselineReport> {
    assert!(target_avg > 0.0, "target_avg must be positive");
    assert!(runs > 0, "need at least one run");
    let total_senses: usize = items.iter().map(|i| i.senses.len()).sum();
    if items.is_empty() || total_senses == 0 {
        return Err(Error::UndefinedCorrelation("no senses to sample".into()));
    }
    let mean_senses = total_senses as f64 / items.len() as f64;
    let q = (target_avg / mean_senses).min(1.0);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sel_p = Vec::new();
    let mut sel_r = Vec::new();
    let mut fil_p = Vec::new();
    let mut fil_r = Vec::new();
    let mut included_total = 0u64;
    for _ in 0..runs {
        let mut t = Tally::default();
        for item in items {
            if !item.ann.known {
                continue;
            }
            for (word, sense) in &item.senses {
                let included = rng.random::<f64>() < q;
                t.add(included, item.ann.label(word, sense)?);
            }
        }
        included_total += t.included;
        let s = t.selection();
        let f = t.filtering();
        sel_p.extend(s.precision);
        sel_r.extend(s.recall);
        fil_p.extend(f.precision);
        fil_r.extend(f.recall);
    }
    let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    Ok(BaselineReport {
        selection: PrPair {
            precision: mean(&sel_p),
            recall: mean(&sel_r),
        },
        filtering: PrPair {
            precision: mean(&fil_p),
            recall: mean(&fil_r),
        },
        avg_included: included_total as f64 / runs as f64,
        q,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probmodel::load_probabilities_str;
    use crate::taxonomy::LoadOptions;
    use approx::assert_relative_eq;

    fn medical() -> (Taxonomy, ProbabilityModel) {
        let t = Taxonomy::from_str(
            include_str!("../fixtures/medical.tax"),
            &LoadOptions::default(),
        )
        .unwrap();
        let m = load_probabilities_str(&t, include_str!("../fixtures/medical.prob"), 2.0).unwrap();
        (t, m)
    }

    fn group(words: &[&str]) -> NounGroup {
        NounGroup::new(words.iter().map(|s| s.to_string())).unwrap()
    }

    #[test]
    fn doctor_nurse_actor_walkthrough() {
        let (t, m) = medical();
        let r = disambiguate_group(&t, &m, &group(&["doctor", "nurse", "actor"]));
        assert_eq!(r.phi("doctor", "DOCTOR1").unwrap(), 1.0);
        assert_eq!(r.phi("nurse", "NURSE1").unwrap(), 1.0);
        assert_eq!(r.phi("actor", "ACTOR1").unwrap(), 1.0);
        assert_relative_eq!(
            r.phi("doctor", "DOCTOR2").unwrap(),
            0.1848096598764863,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            r.phi("nurse", "NURSE2").unwrap(),
            0.1848096598764863,
            max_relative = 1e-9
        );
        // normalization is the sum of the word's pair values
        assert_relative_eq!(r.normalization[0], 8.844 + 2.005, max_relative = 1e-12);
    }

    #[test]
    fn monosemous_word_gets_full_confidence() {
        let (t, m) = medical();
        let r = disambiguate_group(&t, &m, &group(&["doctor", "actor"]));
        assert_eq!(r.phi("actor", "ACTOR1").unwrap(), 1.0);
    }

    #[test]
    fn disjoint_words_fall_back_to_uniform() {
        let t = Taxonomy::from_str(
            "A\t\t\nB\tA\tleft\nX\t\t\nY1\tX\tright\nY2\tX\tright\n",
            &LoadOptions::default(),
        )
        .unwrap();
        let m = load_probabilities_str(&t, "A\tic=0\nB\tic=2\nX\tic=0\nY1\tic=2\nY2\tic=2\n", 2.0)
            .unwrap();
        let r = disambiguate_group(&t, &m, &group(&["left", "right"]));
        assert_eq!(r.normalization, vec![0.0, 0.0]);
        assert_eq!(r.phi("left", "B").unwrap(), 1.0);
        assert_eq!(r.phi("right", "Y1").unwrap(), 0.5);
        assert_eq!(r.phi("right", "Y2").unwrap(), 0.5);
    }

    #[test]
    fn senseless_words_are_excluded_and_reported() {
        let (t, m) = medical();
        let r = disambiguate_group(&t, &m, &group(&["doctor", "nurse", "zebra"]));
        assert_eq!(r.excluded_words, vec!["zebra".to_string()]);
        assert_eq!(r.words.len(), 2);
    }

    #[test]
    fn group_ingest_rules() {
        let g = NounGroup::new(["a", "b", "a"].map(String::from)).unwrap();
        assert!(g.had_duplicates());
        assert_eq!(g.words(), &["a", "b"]);
        assert!(matches!(
            NounGroup::new(["a", "a"].map(String::from)),
            Err(Error::GroupTooSmall(1))
        ));
    }

    #[test]
    fn permutation_invariance() {
        let (t, m) = medical();
        let a = disambiguate_group(&t, &m, &group(&["doctor", "nurse", "actor"]));
        let b = disambiguate_group(&t, &m, &group(&["actor", "doctor", "nurse"]));
        for word in ["doctor", "nurse", "actor"] {
            for sense in ["DOCTOR1", "DOCTOR2", "NURSE1", "NURSE2", "ACTOR1"] {
                assert_eq!(a.phi(word, sense), b.phi(word, sense), "{word}/{sense}");
            }
        }
    }

    #[test]
    fn confidence_scaling_bins() {
        assert_eq!(scale_confidence(0.0).unwrap(), 1);
        assert_eq!(scale_confidence(1.0).unwrap(), 5);
        assert_eq!(scale_confidence(0.185).unwrap(), 1);
        assert_eq!(scale_confidence(0.2).unwrap(), 2);
        assert_eq!(scale_confidence(0.999).unwrap(), 5);
        assert!(scale_confidence(1.5).is_err());
        assert!(scale_confidence(-0.1).is_err());
    }

    #[test]
    fn filtering_thresholds() {
        let (t, m) = medical();
        let r = disambiguate_group(&t, &m, &group(&["doctor", "nurse", "actor"]));
        let p = filter_senses(&r, 0.1, 1).unwrap();
        let find = |w: &str, s: &str| {
            p.entries
                .iter()
                .find(|e| e.word == w && e.sense.as_str() == s)
                .unwrap()
        };
        assert!(find("doctor", "DOCTOR1").included);
        // 0.1848 passes the raw threshold at level 1
        assert!(find("doctor", "DOCTOR2").included);
        // evaluation mode requires level 3
        let p = filter_senses(&r, EVALUATION_FILTER.0, EVALUATION_FILTER.1).unwrap();
        assert!(!filter_entry(&p, "doctor", "DOCTOR2").included);
        assert!(filter_entry(&p, "doctor", "DOCTOR1").included);
        // 0.05 fails the presentation threshold of 0.1
        let mut r2 = r.clone();
        r2.senses[0][1].phi = 0.05;
        let p = filter_senses(&r2, PRESENTATION_FILTER.0, PRESENTATION_FILTER.1).unwrap();
        assert!(!filter_entry(&p, "doctor", "DOCTOR2").included);
    }

    fn filter_entry<'a>(p: &'a Partition, w: &str, s: &str) -> &'a PartitionEntry {
        p.entries
            .iter()
            .find(|e| e.word == w && e.sense.as_str() == s)
            .unwrap()
    }

    fn hand_fixture() -> (Partition, SenseAnnotation) {
        // six senses, two correct; three included of which two correct
        let senses = [
            ("x", "X1", true, true),
            ("x", "X2", true, false),
            ("x", "X3", false, false),
            ("y", "Y1", true, true),
            ("y", "Y2", false, false),
            ("y", "Y3", false, false),
        ];
        let mut partition = Partition::default();
        let mut ann = SenseAnnotation {
            known: true,
            ..Default::default()
        };
        for (w, s, included, correct) in senses {
            partition.entries.push(PartitionEntry {
                word: w.into(),
                sense: ConceptId::new(s).unwrap(),
                phi: 1.0,
                level: 5,
                included,
            });
            let key = (w.to_string(), s.to_string());
            if correct {
                ann.correct.insert(key);
            } else {
                ann.incorrect.insert(key);
            }
        }
        (partition, ann)
    }

    #[test]
    fn selection_and_filtering_hand_counts() {
        let (partition, ann) = hand_fixture();
        let sel = score_selection(&partition, &ann).unwrap();
        assert_relative_eq!(sel.precision.unwrap(), 2.0 / 3.0);
        assert_eq!(sel.recall.unwrap(), 1.0);
        let fil = score_filtering(&partition, &ann).unwrap();
        assert_eq!(fil.precision.unwrap(), 1.0);
        assert_relative_eq!(fil.recall.unwrap(), 3.0 / 4.0);
    }

    #[test]
    fn degenerate_partitions_give_undefined_ratios() {
        let (mut partition, ann) = hand_fixture();
        // include everything: filtering precision is undefined
        for e in &mut partition.entries {
            e.included = true;
        }
        let sel = score_selection(&partition, &ann).unwrap();
        assert_eq!(sel.recall.unwrap(), 1.0);
        assert_relative_eq!(sel.precision.unwrap(), 2.0 / 6.0);
        let fil = score_filtering(&partition, &ann).unwrap();
        assert_eq!(fil.precision, None);
        assert_eq!(fil.recall.unwrap(), 0.0);
    }

    #[test]
    fn unannotated_sense_is_an_error() {
        let (mut partition, ann) = hand_fixture();
        partition.entries.push(PartitionEntry {
            word: "z".into(),
            sense: ConceptId::new("Z1").unwrap(),
            phi: 1.0,
            level: 5,
            included: true,
        });
        assert!(matches!(
            score_selection(&partition, &ann),
            Err(Error::Unannotated { .. })
        ));
    }

    #[test]
    fn baseline_q_saturates_and_zero_limit() {
        let items: Vec<BaselineItem> = (0..3)
            .map(|i| BaselineItem {
                senses: vec![(format!("w{i}"), "S".into())],
                ann: SenseAnnotation {
                    known: true,
                    correct: BTreeSet::from([(format!("w{i}"), "S".to_string())]),
                    ..Default::default()
                },
            })
            .collect();
        // one sense per item, generous target: q = 1, everything included
        let r = random_baseline(&items, 2.0, 5, 7).unwrap();
        assert_eq!(r.q, 1.0);
        assert_eq!(r.avg_included, 3.0);
        assert_eq!(r.selection.recall.unwrap(), 1.0);

        // vanishing target: nothing gets in, so selection recall is zero
        // and selection precision is undefined
        let r = random_baseline(&items, 1e-12, 5, 7).unwrap();
        assert_eq!(r.avg_included, 0.0);
        assert_eq!(r.selection.recall.unwrap(), 0.0);
        assert_eq!(r.selection.precision, None);
        // every sense in this fixture is correct, so excluding them all
        // leaves filtering precision at zero and its recall undefined
        assert_eq!(r.filtering.precision.unwrap(), 0.0);
        assert_eq!(r.filtering.recall, None);
    }

    #[test]
    fn baseline_average_within_binomial_band() {
        // five items with 3, 2, 4, 1, 2 senses: 12 senses, mean 2.4
        let sizes = [3usize, 2, 4, 1, 2];
        let items: Vec<BaselineItem> = sizes
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let senses: Vec<(String, String)> =
                    (0..n).map(|k| (format!("w{i}"), format!("S{k}"))).collect();
                let mut ann = SenseAnnotation {
                    known: true,
                    ..Default::default()
                };
                for (k, key) in senses.iter().enumerate() {
                    if k == 0 {
                        ann.correct.insert(key.clone());
                    } else {
                        ann.incorrect.insert(key.clone());
                    }
                }
                BaselineItem { senses, ann }
            })
            .collect();
        let r = random_baseline(&items, 1.3, 10, 42).unwrap();
        assert_relative_eq!(r.q, 1.3 / 2.4, max_relative = 1e-12);
        // binomial: mean 6.5, two-sigma band for the 10-run average
        assert!(
            (r.avg_included - 6.5).abs() <= 1.091634859587521,
            "avg_included = {}",
            r.avg_included
        );
        // determinism under the seed
        let again = random_baseline(&items, 1.3, 10, 42).unwrap();
        assert_eq!(r.avg_included, again.avg_included);
        assert_eq!(r.selection, again.selection);
    }
}
