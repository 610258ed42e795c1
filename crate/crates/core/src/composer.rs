//! Dataset assembly: runs the enabled transforms and composite recipes
//! over every premise, adds swapped pairs, deduplicates, balances and
//! counts.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::{BufRead, Write};

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conllu::ParsedSentence;
use crate::label::{Label, LabelCounts};
use crate::rng::keyed_rng;
use crate::transform::{self, parse_chain, Params, Resources, Transform, TransformError, TransformOutcome};

/// Tag carried by pseudo-labelled triplets.
pub const PSEUDO_TAG: &str = "pseudo";

/// One (premise, hypothesis, label) instance with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhlTriplet {
    pub premise: String,
    pub hypothesis: String,
    pub label: Label,
    pub transform: String,
    pub source_id: String,
    pub swapped: bool,
}

impl PhlTriplet {
    pub fn from_outcome(s: &ParsedSentence, o: &TransformOutcome) -> Self {
        PhlTriplet {
            premise: s.text.clone(),
            hypothesis: o.hypothesis.clone(),
            label: o.label,
            transform: o.tag.clone(),
            source_id: s.id.clone(),
            swapped: false,
        }
    }
}

/// Composite recipes enabled by default.
pub fn default_recipes() -> Vec<Vec<Transform>> {
    use Transform::*;
    vec![
        vec![Paraphrase, Snippet],
        vec![Paraphrase, ContraWord],
        vec![Paraphrase, Modifier],
        vec![Paraphrase, Snippet, Hypernym],
    ]
}

#[derive(Clone, Debug)]
pub struct GenerationConfig {
    pub enabled: BTreeSet<Transform>,
    /// Per-premise cap applied to every transform and recipe.
    pub max_per_transform: usize,
    /// Overrides of `max_per_transform` for single transforms.
    pub caps: BTreeMap<Transform, usize>,
    pub recipes: Vec<Vec<Transform>>,
    pub balance: bool,
    /// Per-class size when balancing; the smallest class wins if lower.
    pub balance_target: Option<usize>,
    pub seed: u64,
    pub swap: bool,
    pub retrieve_k: usize,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        GenerationConfig {
            enabled: Transform::ALL.into_iter().collect(),
            max_per_transform: 10,
            caps: BTreeMap::new(),
            recipes: default_recipes(),
            balance: false,
            balance_target: None,
            seed: 13,
            swap: true,
            retrieve_k: 3,
        }
    }
}

impl GenerationConfig {
    pub fn params(&self) -> Params {
        Params {
            seed: self.seed,
            retrieve_k: self.retrieve_k,
        }
    }

    pub fn cap(&self, t: Transform) -> usize {
        self.caps.get(&t).copied().unwrap_or(self.max_per_transform)
    }

    /// Recipes of two or more steps whose steps are all enabled.
    pub fn active_recipes(&self) -> impl Iterator<Item = &Vec<Transform>> {
        self.recipes
            .iter()
            .filter(|r| r.len() > 1 && r.iter().all(|t| self.enabled.contains(t)))
    }

    /// Disables a transform, which also drops every recipe using it.
    pub fn disable(&mut self, t: Transform) {
        self.enabled.remove(&t);
    }
}

/// Failure counts keyed by `"<tag>: <kind>"`.
pub type Issues = BTreeMap<String, usize>;

fn note(issues: &mut Issues, tag: &str, err: &TransformError) {
    log::debug!("{tag}: {err}");
    *issues.entry(format!("{tag}: {}", err.kind())).or_default() += 1;
}

/// Outcomes of one premise together with the failures met on the way.
#[derive(Clone, Debug, Default)]
pub struct Applied {
    pub outcomes: Vec<TransformOutcome>,
    pub issues: Issues,
}

/// Every enabled transform on `s`, in registry order, each capped. A
/// failing transform is counted and contributes nothing.
pub fn apply_all(s: &ParsedSentence, res: &Resources, config: &GenerationConfig) -> Applied {
    let mut applied = Applied::default();
    for t in Transform::ALL.into_iter().filter(|t| config.enabled.contains(t)) {
        match transform::run(t, s, res, config.params()) {
            Ok(mut outs) => {
                outs.truncate(config.cap(t));
                applied.outcomes.extend(outs);
            }
            Err(e) => note(&mut applied.issues, t.tag(), &e),
        }
    }
    applied
}

/// Adds the swapped pair for each swap-eligible outcome.
pub fn swap_triplets(s: &ParsedSentence, outcomes: &[TransformOutcome]) -> Vec<PhlTriplet> {
    let mut out = Vec::new();
    for o in outcomes {
        let t = PhlTriplet::from_outcome(s, o);
        if let Some(label) = o.swap_label {
            out.push(t.clone());
            out.push(PhlTriplet {
                premise: t.hypothesis,
                hypothesis: t.premise,
                label,
                swapped: true,
                ..t
            });
        } else {
            out.push(t);
        }
    }
    out
}

/// Checks that only the last step of a recipe may change the label.
pub fn check_recipe(recipe: &[Transform]) -> Result<(), TransformError> {
    let Some((_, init)) = recipe.split_last() else {
        return Err(TransformError::EmptyRecipe);
    };
    match init.iter().position(|t| !t.preserves_entailment()) {
        Some(step) => Err(TransformError::RecipeLabelViolation {
            step,
            tag: init[step].tag(),
        }),
        None => Ok(()),
    }
}

/// Applies a recipe left to right. Intermediate hypotheses are parsed by
/// the re-parse hook when it knows the text, otherwise by the parse the
/// edit produced; hypotheses with neither end their chain.
pub fn apply_composite(
    s: &ParsedSentence,
    recipe: &[Transform],
    res: &Resources,
    config: &GenerationConfig,
) -> Result<Vec<TransformOutcome>, TransformError> {
    check_recipe(recipe)?;
    if let [single] = recipe {
        return transform::run(*single, s, res, config.params());
    }
    let tag = recipe.iter().map(|t| t.tag()).collect::<Vec<_>>().join("+");
    let all_entailing = recipe.iter().all(|t| t.preserves_entailment());
    let mut frontier = vec![s.clone()];
    let mut last = Vec::new();
    for (i, &step) in recipe.iter().enumerate() {
        let mut produced = Vec::new();
        for current in &frontier {
            let mut outs = transform::run(step, current, res, config.params())?;
            outs.truncate(config.cap(step));
            produced.extend(outs);
        }
        produced.truncate(config.max_per_transform);
        if i + 1 == recipe.len() {
            last = produced;
            break;
        }
        frontier = produced
            .into_iter()
            .filter_map(|o| {
                let mut parse = res.reparse.reparse(&o.hypothesis).or(o.parse)?;
                parse.id = s.id.clone();
                Some(parse)
            })
            .collect();
    }
    let mut out: Vec<TransformOutcome> = last
        .into_iter()
        .map(|o| TransformOutcome {
            label: if all_entailing { Label::Entailment } else { o.label },
            tag: tag.clone(),
            swap_label: None,
            ..o
        })
        .collect();
    let mut seen = HashSet::new();
    out.retain(|o| o.hypothesis != s.text && seen.insert(o.hypothesis.clone()));
    Ok(out)
}

/// Labels a triplet with this tag may carry.
pub fn expected_labels(tag: &str, swapped: bool) -> Option<Vec<Label>> {
    if tag == PSEUDO_TAG {
        return (!swapped).then(|| Label::ALL.to_vec());
    }
    let chain = parse_chain(tag).ok()?;
    let (&last, init) = chain.split_last()?;
    if swapped {
        return match init {
            [] => last.swap_label().map(|l| vec![l]),
            _ => None,
        };
    }
    if init.iter().any(|t| !t.preserves_entailment()) {
        return None;
    }
    if !init.is_empty() && last.preserves_entailment() {
        return Some(vec![Label::Entailment]);
    }
    Some(last.labels().to_vec())
}

/// True when the triplet's label is one its tag allows.
pub fn label_consistent(t: &PhlTriplet) -> bool {
    expected_labels(&t.transform, t.swapped).is_some_and(|ls| ls.contains(&t.label))
}

/// A named premise source, e.g. one corpus file.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    pub sentences: Vec<ParsedSentence>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub premises: usize,
    /// Premises per source.
    pub raw_sentences: BTreeMap<String, usize>,
    pub per_transform: BTreeMap<String, LabelCounts>,
    /// Triplets per source and transform tag.
    pub per_source: BTreeMap<String, BTreeMap<String, usize>>,
    pub labels: LabelCounts,
    pub dedup_dropped: usize,
    pub balance_dropped: usize,
    pub issues: Issues,
}

impl DatasetStats {
    pub fn count(&self, tag: &str) -> usize {
        self.per_transform.get(tag).map_or(0, LabelCounts::total)
    }
}

/// Runs the whole pipeline. Output order is fixed by sorting, so it does
/// not depend on thread scheduling.
pub fn generate_dataset(
    corpora: &[Corpus],
    res: &Resources,
    config: &GenerationConfig,
) -> (Vec<PhlTriplet>, DatasetStats) {
    let mut stats = DatasetStats::default();
    let mut source_of: BTreeMap<&str, &str> = BTreeMap::new();
    let premises: Vec<&ParsedSentence> = corpora
        .iter()
        .flat_map(|c| {
            *stats.raw_sentences.entry(c.name.clone()).or_default() += c.sentences.len();
            c.sentences.iter()
        })
        .collect();
    for c in corpora {
        for s in &c.sentences {
            source_of.entry(s.id.as_str()).or_insert(c.name.as_str());
        }
    }
    stats.premises = premises.len();

    let per_premise: Vec<(Vec<PhlTriplet>, Issues)> = premises
        .par_iter()
        .map(|s| {
            let Applied { mut outcomes, mut issues } = apply_all(s, res, config);
            for recipe in config.active_recipes() {
                match apply_composite(s, recipe, res, config) {
                    Ok(outs) => outcomes.extend(outs),
                    Err(e) => {
                        let tag = recipe.iter().map(|t| t.tag()).collect::<Vec<_>>().join("+");
                        note(&mut issues, &tag, &e);
                    }
                }
            }
            let triplets = if config.swap {
                swap_triplets(s, &outcomes)
            } else {
                outcomes.iter().map(|o| PhlTriplet::from_outcome(s, o)).collect()
            };
            (triplets, issues)
        })
        .collect();

    let mut triplets = Vec::new();
    for (ts, issues) in per_premise {
        triplets.extend(ts);
        for (k, v) in issues {
            *stats.issues.entry(k).or_default() += v;
        }
    }
    triplets.retain(|t| t.premise != t.hypothesis);
    triplets.sort_by(|a, b| {
        (&a.source_id, &a.transform, &a.hypothesis, a.swapped, &a.premise, a.label).cmp(&(
            &b.source_id,
            &b.transform,
            &b.hypothesis,
            b.swapped,
            &b.premise,
            b.label,
        ))
    });
    let before = triplets.len();
    let mut seen = HashSet::new();
    triplets.retain(|t| seen.insert((t.premise.clone(), t.hypothesis.clone())));
    stats.dedup_dropped = before - triplets.len();

    if config.balance {
        let before = triplets.len();
        triplets = balance(triplets, config.balance_target, config.seed);
        stats.balance_dropped = before - triplets.len();
    }

    for t in &triplets {
        stats.per_transform.entry(t.transform.clone()).or_default().add(t.label);
        stats.labels.add(t.label);
        let source = source_of.get(t.source_id.as_str()).copied().unwrap_or("");
        *stats
            .per_source
            .entry(source.to_owned())
            .or_default()
            .entry(t.transform.clone())
            .or_default() += 1;
    }
    (triplets, stats)
}

/// Seeded per-class downsampling to the smallest class size (or `target`
/// if smaller). Kept triplets retain their relative order.
pub fn balance(triplets: Vec<PhlTriplet>, target: Option<usize>, seed: u64) -> Vec<PhlTriplet> {
    let mut counts = LabelCounts::default();
    for t in &triplets {
        counts.add(t.label);
    }
    let size = Label::ALL
        .iter()
        .map(|&l| counts.get(l))
        .min()
        .unwrap_or(0)
        .min(target.unwrap_or(usize::MAX));
    let mut keep = vec![false; triplets.len()];
    for label in Label::ALL {
        let positions: Vec<usize> = (0..triplets.len()).filter(|&i| triplets[i].label == label).collect();
        let mut rng = keyed_rng(seed, "balance", label.name());
        for k in sample(&mut rng, positions.len(), size.min(positions.len())) {
            keep[positions[k]] = true;
        }
    }
    triplets
        .into_iter()
        .zip(keep)
        .filter_map(|(t, k)| k.then_some(t))
        .collect()
}

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("line {line}: {source}")]
    Row { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn write_jsonl<W: Write, T: Serialize>(mut w: W, rows: &[T]) -> std::io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut w, row)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// Reads one JSON object per non-blank line.
pub fn read_jsonl<R: BufRead, T: serde::de::DeserializeOwned>(reader: R) -> Result<Vec<T>, JsonlError> {
    let mut rows = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(serde_json::from_str(&line).map_err(|source| JsonlError::Row { line: n + 1, source })?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triplet(label: Label, hyp: &str) -> PhlTriplet {
        PhlTriplet {
            premise: "p".into(),
            hypothesis: hyp.into(),
            label,
            transform: "HS".into(),
            source_id: "s".into(),
            swapped: false,
        }
    }

    #[test]
    fn recipe_rule() {
        use Transform::*;
        assert!(check_recipe(&[Paraphrase, Snippet, Hypernym]).is_ok());
        assert!(check_recipe(&[Paraphrase, ContraWord]).is_ok());
        assert!(matches!(
            check_recipe(&[ContraWord, Snippet]),
            Err(TransformError::RecipeLabelViolation { step: 0, tag: "CW" })
        ));
        assert!(matches!(check_recipe(&[]), Err(TransformError::EmptyRecipe)));
    }

    #[test]
    fn expected_label_table() {
        assert_eq!(expected_labels("PA+ES+HS", false), Some(vec![Label::Entailment]));
        assert_eq!(expected_labels("PA+CW", false), Some(vec![Label::Contradiction]));
        assert_eq!(expected_labels("HS", true), Some(vec![Label::Neutral]));
        assert_eq!(expected_labels("AM", true), Some(vec![Label::Entailment]));
        assert_eq!(expected_labels("CW", true), Some(vec![Label::Contradiction]));
        assert_eq!(expected_labels("PS", true), None);
        assert_eq!(expected_labels("CW+ES", false), None);
        assert_eq!(expected_labels("bogus", false), None);
    }

    #[test]
    fn balance_equalizes() {
        let mut ts = Vec::new();
        for i in 0..5 {
            ts.push(triplet(Label::Entailment, &format!("e{i}")));
        }
        for i in 0..3 {
            ts.push(triplet(Label::Contradiction, &format!("c{i}")));
        }
        for i in 0..4 {
            ts.push(triplet(Label::Neutral, &format!("n{i}")));
        }
        let b = balance(ts.clone(), None, 1);
        assert_eq!(b.len(), 9);
        assert_eq!(balance(ts.clone(), None, 1), b);
        assert_eq!(balance(ts, Some(2), 1).len(), 6);
    }
}
