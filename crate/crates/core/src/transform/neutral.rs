//! Neutral-producing transforms: added modifiers, ConceptNet facts and
//! same-subject retrieval.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use super::entailment::substitutable_nouns;
use super::{dedup_outcomes, Transform, TransformError, TransformOutcome};
use crate::conllu::ParsedSentence;
use crate::edit::{Draft, NewToken};
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::pool::{sample_ids, PremisePool};
use crate::rng::keyed_rng;

/// First token of the compound run directly before a noun, or the noun.
fn phrase_insertion_point(s: &ParsedSentence, noun: usize) -> usize {
    let mut at = noun;
    while at > 1 {
        let prev = s.token(at - 1);
        if prev.head == noun && prev.base_rel() == "compound" {
            at -= 1;
        } else {
            break;
        }
    }
    at
}

/// One sampled adjective added to each noun that has modifier entries.
pub fn am(s: &ParsedSentence, lex: &Lexicon, seed: u64) -> Vec<TransformOutcome> {
    let mut rng = keyed_rng(seed, "AM", &s.id);
    let mut out = Vec::new();
    for t in substitutable_nouns(s) {
        let existing: BTreeSet<String> = s
            .children(t.index)
            .filter(|c| c.base_rel() == "amod")
            .map(|c| c.lemma_key())
            .collect();
        let excluded: BTreeSet<String> = existing
            .iter()
            .flat_map(|a| lex.antonyms(a).iter().map(|x| x.to_lowercase()))
            .chain(existing.iter().cloned())
            .collect();
        let candidates: Vec<&String> = lex
            .modifiers(&t.lemma_key())
            .iter()
            .filter(|m| !excluded.contains(&m.to_lowercase()))
            .collect();
        let Some(modifier) = candidates.choose(&mut rng) else {
            continue;
        };
        let mut draft = Draft::new(s);
        let at = phrase_insertion_point(s, t.index);
        draft.insert(at, false, t.index, vec![NewToken::new(modifier.as_str(), "ADJ", "amod")]);
        draft.repair_articles();
        let (text, parse) = draft.finish(Transform::Modifier.surface());
        out.push(TransformOutcome::new(Transform::Modifier, Label::Neutral, text, Some(parse)));
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Phrase attached after a noun for a ConceptNet relation.
pub fn concept_template(relation: &str, target: &str) -> Option<String> {
    Some(match relation {
        "AtLocation" => format!("at {target}"),
        "MadeOf" => format!("which is made of {target}"),
        "DefinedAs" => format!("which is {target}"),
        _ => return None,
    })
}

/// One hypothesis per (noun, relation, target) fact, the relation's phrase
/// attached right after the noun. Facts without a template are skipped;
/// if nothing else was produced the first such relation is reported.
pub fn con(s: &ParsedSentence, lex: &Lexicon) -> Result<Vec<TransformOutcome>, TransformError> {
    let mut out = Vec::new();
    let mut unknown = None;
    for t in substitutable_nouns(s) {
        for (relation, target) in lex.concept_facts(&t.lemma_key()) {
            let Some(phrase) = concept_template(relation, target) else {
                unknown.get_or_insert_with(|| relation.to_owned());
                continue;
            };
            let words: Vec<NewToken> = phrase.split_whitespace().map(|w| NewToken::new(w, "X", "dep")).collect();
            let mut draft = Draft::new(s);
            draft.insert(t.index, true, t.index, words);
            let (text, parse) = draft.finish(Transform::ConceptNet.surface());
            out.push(TransformOutcome::new(Transform::ConceptNet, Label::Neutral, text, Some(parse)));
        }
    }
    dedup_outcomes(&s.text, &mut out);
    match unknown {
        Some(relation) if out.is_empty() => Err(TransformError::UnknownRelationTemplate(relation)),
        _ => Ok(out),
    }
}

/// Pool sentences with the same subject that add new nouns and no
/// contradictory verb.
pub fn ssncv(
    s: &ParsedSentence,
    pool: &PremisePool,
    lex: &Lexicon,
    k: usize,
    seed: u64,
) -> Result<Vec<TransformOutcome>, TransformError> {
    let ids = pool.neutral_same_subject_sentences(s, lex)?;
    let ids = sample_ids(ids, k, seed, "SSNCV", &s.id);
    let mut out: Vec<TransformOutcome> = ids
        .iter()
        .filter_map(|id| pool.get(id))
        .map(|p| TransformOutcome::new(Transform::SameSubject, Label::Neutral, p.text.clone(), Some(p.clone())))
        .collect();
    dedup_outcomes(&s.text, &mut out);
    Ok(out)
}
