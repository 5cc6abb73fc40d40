//! Similarity measures over concepts and words: shared information content,
//! probability, edge counting, normalized path length, and depth ratios,
//! plus the weighted word-similarity generalization.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::probmodel::ProbabilityModel;
use crate::taxonomy::{ConceptId, Taxonomy};

/// Outcome of a concept- or word-level similarity query.
#[derive(Clone, Debug)]
pub struct SimilarityResult {
    pub value: f64,
    /// Concepts realizing the optimum (most informative subsumers),
    /// lexicographically ordered. Empty exactly when the arguments share
    /// no usable ancestor.
    pub subsumers: Vec<ConceptId>,
    /// Winning sense pair for word-level queries.
    pub sense_pair: Option<(ConceptId, ConceptId)>,
}

impl SimilarityResult {
    fn zero() -> Self {
        SimilarityResult {
            value: 0.0,
            subsumers: Vec::new(),
            sense_pair: None,
        }
    }
}

/// Concept-level measures usable under the sense-pair maximization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConceptMeasure {
    Resnik,
    Prob,
    Lin,
    WuPalmer,
}

/// Handling of disconnected sense pairs in edge-based word similarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeVariant {
    /// Disconnected pairs score zero.
    AssertZero,
    /// Paths may route through a synthetic top above all roots.
    VirtualTop,
}

/// Shared IC maximization over common subsumers. Subsumers with infinite
/// IC (zero frequency) are unusable; if every candidate is, that is a
/// degenerate model rather than a similarity of infinity.
fn best_subsumers<F>(
    t: &Taxonomy,
    m: &ProbabilityModel,
    a: u32,
    b: u32,
    objective: F,
) -> Result<Option<(f64, Vec<u32>)>>
where
    F: Fn(f64, f64) -> f64, // (p, ic) -> score
{
    let common = t.common_subsumers_idx(a, b);
    if common.is_empty() {
        return Ok(None);
    }
    let mut best: Option<(f64, Vec<u32>)> = None;
    let mut usable = false;
    for c in common {
        let ic = m.ic_idx(c);
        if !ic.is_finite() {
            continue;
        }
        usable = true;
        let score = objective(m.p_idx(c), ic);
        match &mut best {
            None => best = Some((score, vec![c])),
            Some((cur, set)) => {
                if score > *cur {
                    *cur = score;
                    set.clear();
                    set.push(c);
                } else if score == *cur {
                    set.push(c);
                }
            }
        }
    }
    if !usable {
        return Err(Error::DegenerateModel(
            t.id_of(a).as_str().to_string(),
            t.id_of(b).as_str().to_string(),
        ));
    }
    Ok(best)
}

fn to_result(t: &Taxonomy, found: Option<(f64, Vec<u32>)>) -> SimilarityResult {
    match found {
        None => SimilarityResult::zero(),
        Some((value, set)) => {
            let mut subsumers: Vec<ConceptId> =
                set.into_iter().map(|i| t.id_of(i).clone()).collect();
            subsumers.sort();
            SimilarityResult {
                value,
                subsumers,
                sense_pair: None,
            }
        }
    }
}

/// Information-content similarity: the maximum IC over common subsumers.
pub fn sim_resnik(
    t: &Taxonomy,
    m: &ProbabilityModel,
    c1: &str,
    c2: &str,
) -> Result<SimilarityResult> {
    let a = t.resolve(c1)?;
    let b = t.resolve(c2)?;
    Ok(to_result(t, best_subsumers(t, m, a, b, |_, ic| ic)?))
}

/// Probability similarity: the maximum of 1 − p(c) over common subsumers.
pub fn sim_prob(
    t: &Taxonomy,
    m: &ProbabilityModel,
    c1: &str,
    c2: &str,
) -> Result<SimilarityResult> {
    let a = t.resolve(c1)?;
    let b = t.resolve(c2)?;
    Ok(to_result(t, best_subsumers(t, m, a, b, |p, _| 1.0 - p)?))
}

/// Normalized shared-information similarity: 2·ic(best common subsumer)
/// divided by the summed IC of the two concepts. Self-similarity is 1 by
/// construction, including at the top concept.
pub fn sim_lin(t: &Taxonomy, m: &ProbabilityModel, c1: &str, c2: &str) -> Result<f64> {
    let a = t.resolve(c1)?;
    let b = t.resolve(c2)?;
    let ic1 = m.ic_idx(a);
    let ic2 = m.ic_idx(b);
    if !ic1.is_finite() || !ic2.is_finite() {
        return Err(Error::DegenerateModel(c1.to_string(), c2.to_string()));
    }
    if ic1 + ic2 == 0.0 {
        // both arguments are the top concept
        return Ok(1.0);
    }
    match best_subsumers(t, m, a, b, |_, ic| ic)? {
        None => Err(Error::NoPath(c1.to_string(), c2.to_string())),
        Some((best_ic, _)) => Ok(2.0 * best_ic / (ic1 + ic2)),
    }
}

/// Depth-ratio similarity: 2·d(c3) / (d(c1) + d(c2)) where d counts nodes
/// from the root (root = 1) and the depths of c1 and c2 are measured along
/// their paths through the chosen subsumer c3.
///
/// In a tree, taking the deepest common subsumer and taking the subsumer
/// that maximizes the ratio coincide. Under multiple inheritance an
/// ancestor can sit deeper than the concept itself, and depth alone would
/// break self-similarity; the ratio is maximized instead.
pub fn sim_wupalmer(t: &Taxonomy, c1: &str, c2: &str) -> Result<f64> {
    let a = t.resolve(c1)?;
    let b = t.resolve(c2)?;
    let common = t.common_subsumers_idx(a, b);
    if common.is_empty() {
        return Err(Error::NoPath(c1.to_string(), c2.to_string()));
    }
    let up_a = t.ascent_distances(a);
    let up_b = t.ascent_distances(b);
    let mut best = 0.0f64;
    for c in common {
        let d3 = (t.depth_idx(c) + 1) as f64;
        let climb = (up_a[&c] + up_b[&c]) as f64;
        best = best.max(2.0 * d3 / (2.0 * d3 + climb));
    }
    Ok(best)
}

fn concept_similarity(
    t: &Taxonomy,
    m: &ProbabilityModel,
    a: u32,
    b: u32,
    measure: ConceptMeasure,
) -> Result<Option<(f64, Vec<u32>)>> {
    match measure {
        ConceptMeasure::Resnik => best_subsumers(t, m, a, b, |_, ic| ic),
        ConceptMeasure::Prob => best_subsumers(t, m, a, b, |p, _| 1.0 - p),
        ConceptMeasure::Lin => {
            let ic1 = m.ic_idx(a);
            let ic2 = m.ic_idx(b);
            if !ic1.is_finite() || !ic2.is_finite() {
                return Err(Error::DegenerateModel(
                    t.id_of(a).as_str().to_string(),
                    t.id_of(b).as_str().to_string(),
                ));
            }
            if ic1 + ic2 == 0.0 {
                let top = t.common_subsumers_idx(a, b);
                return Ok(Some((1.0, top)));
            }
            Ok(best_subsumers(t, m, a, b, |_, ic| ic)?
                .map(|(ic, set)| (2.0 * ic / (ic1 + ic2), set)))
        }
        ConceptMeasure::WuPalmer => {
            let ca = t.id_of(a).as_str();
            let cb = t.id_of(b).as_str();
            match sim_wupalmer(t, ca, cb) {
                Ok(v) => Ok(Some((v, Vec::new()))),
                Err(Error::NoPath(..)) => Ok(None),
                Err(e) => Err(e),
            }
        }
    }
}

/// Word similarity: the chosen concept measure maximized over all sense
/// pairs. Sense pairs whose computation degenerates (for example every
/// shared ancestor has zero frequency) are skipped; if nothing is
/// scorable the result is zero with no subsumers, mirroring the treatment
/// of words in disjoint subtaxonomies.
pub fn wsim(
    t: &Taxonomy,
    m: &ProbabilityModel,
    w1: &str,
    w2: &str,
    measure: ConceptMeasure,
) -> SimilarityResult {
    let mut s1 = t.sense_idx(w1);
    let mut s2 = t.sense_idx(w2);
    if s1.is_empty() || s2.is_empty() {
        return SimilarityResult::zero();
    }
    // lexicographic sense order makes the winning pair deterministic on ties
    s1.sort_by(|&a, &b| t.id_of(a).cmp(t.id_of(b)));
    s2.sort_by(|&a, &b| t.id_of(a).cmp(t.id_of(b)));
    let mut best: Option<(f64, Vec<u32>, (u32, u32))> = None;
    for &a in &s1 {
        for &b in &s2 {
            let found = match concept_similarity(t, m, a, b, measure) {
                Ok(Some(f)) => f,
                Ok(None) => continue,
                Err(_) => continue,
            };
            let replace = match &best {
                None => true,
                Some((v, _, _)) => found.0 > *v,
            };
            if replace {
                best = Some((found.0, found.1, (a, b)));
            }
        }
    }
    match best {
        None => SimilarityResult::zero(),
        Some((value, set, (a, b))) => {
            let mut subsumers: Vec<ConceptId> =
                set.into_iter().map(|i| t.id_of(i).clone()).collect();
            subsumers.sort();
            SimilarityResult {
                value,
                subsumers,
                sense_pair: Some((t.id_of(a).clone(), t.id_of(b).clone())),
            }
        }
    }
}

/// Minimum path length over sense pairs, plus the effective taxonomy depth,
/// under the chosen variant. `None` length means no connecting path.
fn min_sense_path(
    t: &Taxonomy,
    w1: &str,
    w2: &str,
    variant: EdgeVariant,
) -> (Option<u32>, u32) {
    let synthesize_top = variant == EdgeVariant::VirtualTop && t.virtual_root_idx().is_none();
    let max = t.max_depth() + u32::from(synthesize_top);
    let s1 = t.sense_idx(w1);
    let s2 = t.sense_idx(w2);
    let mut best: Option<u32> = None;
    for &a in &s1 {
        for &b in &s2 {
            let mut len = t.shortest_path_idx(a, b);
            if synthesize_top {
                let via_top = t.min_root_distance(a) + t.min_root_distance(b) + 2;
                len = Some(len.map_or(via_top, |l| l.min(via_top)));
            }
            if let Some(l) = len {
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
    }
    (best, max)
}

/// Edge-counting similarity: (2·MAX) − min path length over sense pairs.
pub fn wsim_edge(t: &Taxonomy, w1: &str, w2: &str, variant: EdgeVariant) -> f64 {
    let (len, max) = min_sense_path(t, w1, w2, variant);
    match len {
        None => 0.0,
        Some(l) => (2 * max) as f64 - l as f64,
    }
}

/// Normalized path-length similarity: −log(len / (2·MAX)) with the length
/// clamped at one edge so synonyms stay finite.
pub fn wsim_lc(t: &Taxonomy, w1: &str, w2: &str, log_base: f64) -> Result<f64> {
    let (len, max) = min_sense_path(t, w1, w2, EdgeVariant::AssertZero);
    let len = len.ok_or_else(|| Error::NoPath(w1.to_string(), w2.to_string()))?;
    let len = len.max(1) as f64;
    Ok(-((len / (2.0 * max as f64)).ln() / log_base.ln()))
}

/// Relevance weights over concepts; normalized per query so that the
/// applied weights sum to one.
#[derive(Clone, Debug, Default)]
pub struct WeightFunction {
    weights: BTreeMap<ConceptId, f64>,
}

impl WeightFunction {
    pub fn new(weights: impl IntoIterator<Item = (ConceptId, f64)>) -> Self {
        WeightFunction {
            weights: weights.into_iter().collect(),
        }
    }

    pub fn raw(&self, id: &ConceptId) -> f64 {
        self.weights.get(id).copied().unwrap_or(0.0)
    }
}

/// Weighted word similarity with its degeneracy diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct WeightedSimilarity {
    pub value: f64,
    /// True when every raw weight over the shared-concept set was zero and
    /// the uniform completion was applied.
    pub uniform_fallback: bool,
}

/// Weighted word similarity: a weighted average of IC over every concept
/// dominating both words in any sense. Negative raw weights are treated
/// as zero relevance; concepts with infinite IC are unusable and excluded.
pub fn wsim_weighted(
    t: &Taxonomy,
    m: &ProbabilityModel,
    w1: &str,
    w2: &str,
    alpha: &WeightFunction,
) -> WeightedSimilarity {
    let set = shared_class_set(t, m, w1, w2);
    if set.is_empty() {
        return WeightedSimilarity {
            value: 0.0,
            uniform_fallback: false,
        };
    }
    let raw: Vec<f64> = set
        .iter()
        .map(|&i| alpha.raw(t.id_of(i)).max(0.0))
        .collect();
    let total: f64 = raw.iter().sum();
    let (weights, fallback) = if total > 0.0 {
        (raw.iter().map(|w| w / total).collect::<Vec<_>>(), false)
    } else {
        (vec![1.0 / set.len() as f64; set.len()], true)
    };
    let value = set
        .iter()
        .zip(&weights)
        .map(|(&i, w)| w * m.ic_idx(i))
        .sum();
    WeightedSimilarity {
        value,
        uniform_fallback: fallback,
    }
}

/// Concepts dominating both words in any sense of either word, restricted
/// to finite IC; ordered by node index.
pub(crate) fn shared_class_set(
    t: &Taxonomy,
    m: &ProbabilityModel,
    w1: &str,
    w2: &str,
) -> Vec<u32> {
    use std::collections::BTreeSet;
    let closure = |word: &str| -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for s in t.sense_idx(word) {
            out.extend(t.ancestors_idx(s).iter().copied());
        }
        out
    };
    let c1 = closure(w1);
    let c2 = closure(w2);
    c1.intersection(&c2)
        .copied()
        .filter(|&i| m.ic_idx(i).is_finite())
        .collect()
}

/// The same set as [`shared_class_set`], lexicographically ordered ids.
pub fn shared_classes(
    t: &Taxonomy,
    m: &ProbabilityModel,
    w1: &str,
    w2: &str,
) -> Vec<ConceptId> {
    let mut out: Vec<ConceptId> = shared_class_set(t, m, w1, w2)
        .into_iter()
        .map(|i| t.id_of(i).clone())
        .collect();
    out.sort();
    out
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

    fn narcotics() -> (Taxonomy, ProbabilityModel) {
        let t = Taxonomy::from_str(
            include_str!("../fixtures/narcotics.tax"),
            &LoadOptions::default(),
        )
        .unwrap();
        let m =
            load_probabilities_str(&t, include_str!("../fixtures/narcotics.prob"), 2.0).unwrap();
        (t, m)
    }

    #[test]
    fn doctor_nurse_meet_at_health_professional() {
        let (t, m) = medical();
        let r = sim_resnik(&t, &m, "DOCTOR1", "NURSE1").unwrap();
        assert_eq!(r.value, 8.844);
        assert_eq!(r.subsumers.len(), 1);
        assert_eq!(r.subsumers[0].as_str(), "HEALTH_PROFESSIONAL");
    }

    #[test]
    fn word_level_picks_the_best_sense_pair() {
        let (t, m) = medical();
        let r = wsim(&t, &m, "doctor", "nurse", ConceptMeasure::Resnik);
        assert_eq!(r.value, 8.844);
        let (a, b) = r.sense_pair.unwrap();
        assert_eq!((a.as_str(), b.as_str()), ("DOCTOR1", "NURSE1"));
    }

    #[test]
    fn spurious_sense_wins_for_tobacco_horse() {
        let (t, m) = narcotics();
        let th = wsim(&t, &m, "tobacco", "horse", ConceptMeasure::Resnik);
        assert_eq!(th.value, 8.26);
        assert_eq!(th.subsumers[0].as_str(), "NARCOTIC");
        let ta = wsim(&t, &m, "tobacco", "alcohol", ConceptMeasure::Resnik);
        assert_eq!(ta.value, 7.63);
        assert_eq!(ta.subsumers[0].as_str(), "DRUG");
        let ts = wsim(&t, &m, "tobacco", "sugar", ConceptMeasure::Resnik);
        assert_eq!(ts.value, 3.56);
        assert_eq!(ts.subsumers[0].as_str(), "SUBSTANCE");
        assert!(th.value > ta.value && ta.value > ts.value);
    }

    #[test]
    fn monosemous_self_similarity_is_own_ic() {
        let (t, m) = medical();
        let r = wsim(&t, &m, "actor", "actor", ConceptMeasure::Resnik);
        assert_eq!(r.value, 12.0);
        assert_eq!(r.subsumers[0].as_str(), "ACTOR1");
    }

    #[test]
    fn missing_word_scores_zero_without_fallback() {
        let (t, m) = medical();
        let r = wsim(&t, &m, "doctor", "zebra", ConceptMeasure::Resnik);
        assert_eq!(r.value, 0.0);
        assert!(r.subsumers.is_empty());
        assert!(r.sense_pair.is_none());
    }

    #[test]
    fn degenerate_model_is_an_error_not_infinity() {
        let t = Taxonomy::from_str("A\t\t\nB\tA\tb\nC\tA\tc\n", &LoadOptions::default()).unwrap();
        // nothing assigned: every subsumer has zero frequency
        let m = load_probabilities_str(&t, "", 2.0).unwrap();
        assert!(matches!(
            sim_resnik(&t, &m, "B", "C"),
            Err(Error::DegenerateModel(..))
        ));
        // word level absorbs the degenerate pair
        let r = wsim(&t, &m, "b", "c", ConceptMeasure::Resnik);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn pairs_sharing_only_the_top() {
        // two subtrees under a counted root: the top is the only shared
        // ancestor, carrying p = 1 and ic = 0
        let t = Taxonomy::from_str(
            include_str!("../fixtures/coin.tax"),
            &LoadOptions {
                virtual_root: true,
                fallback: None,
            },
        )
        .unwrap();
        let ft = crate::probmodel::count_corpus(
            &t,
            crate::probmodel::raw_tokens(include_str!("../fixtures/coin_corpus.txt")),
            None,
        );
        let m = crate::probmodel::to_probability(&ft, 2.0).unwrap();
        let r = sim_resnik(&t, &m, "DIME", "NICKEL_METAL").unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.subsumers[0].as_str(), "__TOP__");
        let r = sim_prob(&t, &m, "DIME", "NICKEL_METAL").unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn leacock_chodorow_worst_case_is_zero() {
        // two chains of depth two meeting at the root: len = 2 * MAX
        let t = Taxonomy::from_str(
            "R\t\t\nA1\tR\t\nA2\tA1\ta\nB1\tR\t\nB2\tB1\tb\n",
            &LoadOptions::default(),
        )
        .unwrap();
        assert_eq!(t.max_depth(), 2);
        assert_relative_eq!(wsim_lc(&t, "a", "b", 2.0).unwrap(), 0.0);
    }

    #[test]
    fn prob_measure_matches_resnik_argmax() {
        let (t, m) = medical();
        let a = sim_resnik(&t, &m, "DOCTOR1", "NURSE1").unwrap();
        let b = sim_prob(&t, &m, "DOCTOR1", "NURSE1").unwrap();
        assert_eq!(a.subsumers, b.subsumers);
        assert_relative_eq!(b.value, 1.0 - 2f64.powf(-8.844), max_relative = 1e-12);
    }

    #[test]
    fn lin_on_pinned_leaf_ics() {
        let (t, m) = medical();
        assert_relative_eq!(
            sim_lin(&t, &m, "DOCTOR1", "NURSE1").unwrap(),
            2.0 * 8.844 / 24.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(sim_lin(&t, &m, "DOCTOR1", "DOCTOR1").unwrap(), 1.0);
        // sharing only a zero-IC top gives zero
        let t2 = Taxonomy::from_str("A\t\t\nB\tA\tb\nC\tA\tc\n", &LoadOptions::default()).unwrap();
        let m2 = load_probabilities_str(&t2, "A\tic=0\nB\tic=4\nC\tic=4\n", 2.0).unwrap();
        assert_eq!(sim_lin(&t2, &m2, "B", "C").unwrap(), 0.0);
    }

    #[test]
    fn wupalmer_depths_count_nodes() {
        // root -> A -> {B, B2}
        let t = Taxonomy::from_str(
            "ROOT\t\t\nA\tROOT\t\nB\tA\t\nB2\tA\t\n",
            &LoadOptions::default(),
        )
        .unwrap();
        assert_relative_eq!(sim_wupalmer(&t, "B", "B2").unwrap(), 2.0 / 3.0);
        assert_relative_eq!(sim_wupalmer(&t, "B", "B").unwrap(), 1.0);
        // children of the root
        let t = Taxonomy::from_str("R\t\t\nX\tR\t\nY\tR\t\n", &LoadOptions::default()).unwrap();
        assert_relative_eq!(sim_wupalmer(&t, "X", "Y").unwrap(), 0.5);
        assert!(matches!(
            sim_wupalmer(
                &Taxonomy::from_str("A\t\t\nB\t\t\n", &LoadOptions::default()).unwrap(),
                "A",
                "B"
            ),
            Err(Error::NoPath(..))
        ));
    }

    #[test]
    fn edge_similarity_chain_case() {
        // A -> B -> C, D under A; MAX = 2; len(c, d) = 3
        let t = Taxonomy::from_str(
            "A\t\t\nB\tA\t\nC\tB\tc\nD\tA\td\n",
            &LoadOptions::default(),
        )
        .unwrap();
        assert_eq!(wsim_edge(&t, "c", "d", EdgeVariant::AssertZero), 1.0);
        assert_eq!(wsim_edge(&t, "c", "c", EdgeVariant::AssertZero), 4.0);
    }

    #[test]
    fn edge_similarity_disconnected_and_virtual_top() {
        let t = Taxonomy::from_str(
            "A\t\t\nB\tA\tb\nX\t\t\nY\tX\ty\n",
            &LoadOptions::default(),
        )
        .unwrap();
        assert_eq!(wsim_edge(&t, "b", "y", EdgeVariant::AssertZero), 0.0);
        // synthesized top: len = 1 + 1 + 2 = 4, MAX = 2, value = 0
        assert_eq!(wsim_edge(&t, "b", "y", EdgeVariant::VirtualTop), 0.0);
        // same words, shallower: b against a root word
        let t = Taxonomy::from_str(
            "A\t\t\nB\tA\tb\nX\t\tx\n",
            &LoadOptions::default(),
        )
        .unwrap();
        // len via top = 1 + 0 + 2 = 3, MAX = 1 + 1, value = 4 - 3 = 1
        assert_eq!(wsim_edge(&t, "b", "x", EdgeVariant::VirtualTop), 1.0);
    }

    #[test]
    fn leacock_chodorow_values() {
        // chain of depth 4 under R gives MAX = 4
        let t = Taxonomy::from_str(
            "R\t\t\nA\tR\ta\nB\tA\tb\nC\tB\tc\nD\tC\td\n",
            &LoadOptions::default(),
        )
        .unwrap();
        assert_eq!(t.max_depth(), 4);
        // len(a, d) = 3
        assert_relative_eq!(
            wsim_lc(&t, "a", "d", 2.0).unwrap(),
            1.415037499278844,
            max_relative = 1e-12
        );
        // synonyms clamp to one edge
        assert_relative_eq!(
            wsim_lc(&t, "a", "a", 2.0).unwrap(),
            -(1.0f64 / 8.0).log2(),
            max_relative = 1e-12
        );
        let t2 = Taxonomy::from_str("A\t\ta\nB\t\tb\n", &LoadOptions::default()).unwrap();
        assert!(matches!(wsim_lc(&t2, "a", "b", 2.0), Err(Error::NoPath(..))));
    }

    #[test]
    fn weighted_similarity_hand_values() {
        let (t, m) = medical();
        let hp = ConceptId::new("HEALTH_PROFESSIONAL").unwrap();
        let person = ConceptId::new("PERSON").unwrap();

        // uniform over the two shared classes
        let uniform = WeightFunction::new([(hp.clone(), 1.0), (person.clone(), 1.0)]);
        let r = wsim_weighted(&t, &m, "doctor", "nurse", &uniform);
        assert_relative_eq!(r.value, 5.4245, max_relative = 1e-12);
        assert!(!r.uniform_fallback);

        let skewed = WeightFunction::new([(hp.clone(), 0.9), (person.clone(), 0.1)]);
        let r = wsim_weighted(&t, &m, "doctor", "nurse", &skewed);
        assert_relative_eq!(r.value, 8.1601, max_relative = 1e-12);

        // all mass on the most informative subsumer reduces to wsim
        let point = WeightFunction::new([(hp, 1.0)]);
        let r = wsim_weighted(&t, &m, "doctor", "nurse", &point);
        assert_relative_eq!(r.value, 8.844, max_relative = 1e-12);

        // all-zero raw weights fall back to uniform, flagged
        let zero = WeightFunction::default();
        let r = wsim_weighted(&t, &m, "doctor", "nurse", &zero);
        assert!(r.uniform_fallback);
        assert_relative_eq!(r.value, 5.4245, max_relative = 1e-12);
    }

    #[test]
    fn weighted_alpha_can_suppress_the_spurious_reading() {
        let (t, m) = narcotics();
        // everyday weighting: drugs are barely relevant, narcotics not at all
        let alpha = WeightFunction::new([
            (ConceptId::new("NARCOTIC").unwrap(), 0.0),
            (ConceptId::new("DRUG").unwrap(), 0.2),
            (ConceptId::new("SUBSTANCE").unwrap(), 1.0),
            (ConceptId::new("LIFE_FORM").unwrap(), 1.0),
            (ConceptId::new("ENTITY").unwrap(), 1.0),
        ]);
        let th = wsim_weighted(&t, &m, "tobacco", "horse", &alpha);
        let ta = wsim_weighted(&t, &m, "tobacco", "alcohol", &alpha);
        // the unweighted anomaly (horse > alcohol) reverses
        assert!(th.value < ta.value, "{} vs {}", th.value, ta.value);
        let th_expect = (0.2 * 7.63 + 3.56 + 2.0 + 0.2) / 3.2;
        let ta_expect = (0.2 * 7.63 + 3.56 + 0.2) / 2.2;
        assert_relative_eq!(th.value, th_expect, max_relative = 1e-12);
        assert_relative_eq!(ta.value, ta_expect, max_relative = 1e-12);
    }

    #[test]
    fn shared_class_set_unions_over_senses() {
        let (t, m) = narcotics();
        let set = shared_classes(&t, &m, "tobacco", "horse");
        let names: Vec<&str> = set.iter().map(|c| c.as_str()).collect();
        assert_eq!(
            names,
            vec!["DRUG", "ENTITY", "LIFE_FORM", "NARCOTIC", "SUBSTANCE"]
        );
    }
}
