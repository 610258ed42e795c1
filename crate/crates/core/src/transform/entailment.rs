//! Entailment-producing transforms: paraphrase attachment, snippet
//! extraction, hypernym and pronoun substitution, counting.

use std::collections::BTreeSet;

use rand::Rng;

use super::{dedup_outcomes, ParaphraseTable, Transform, TransformOutcome};
use crate::conllu::{ParsedSentence, Token};
use crate::edit::{Draft, NewToken};
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::morph;
use crate::rng::keyed_rng;
use crate::syntax;

/// Paraphrases attached per premise.
pub const MAX_PARAPHRASES: usize = 10;

/// Paraphrases from the sidecar become entailed hypotheses, first ten in
/// file order.
pub fn pa(s: &ParsedSentence, sidecar: &ParaphraseTable) -> Vec<TransformOutcome> {
    let mut out: Vec<TransformOutcome> = sidecar
        .get(&s.id)
        .iter()
        .take(MAX_PARAPHRASES)
        .map(|p| TransformOutcome::new(Transform::Paraphrase, Label::Entailment, p.clone(), None))
        .collect();
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Snippet-extraction techniques, applied in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsTechnique {
    /// Drop childless `amod` tokens, singly and in combination.
    DropAdjectivalModifiers,
    /// Drop childless `advmod` tokens other than negations.
    DropAdverbialModifiers,
    /// Drop every childless attributive adjective not in a coordination.
    DropAdjectives,
    /// Keep the root and its left dependents.
    RootPrefix,
    /// Drop prepositional phrases on the predicate or the subject.
    DropPrepositionalPhrases,
}

impl EsTechnique {
    pub const ALL: [EsTechnique; 5] = [
        EsTechnique::DropAdjectivalModifiers,
        EsTechnique::DropAdverbialModifiers,
        EsTechnique::DropAdjectives,
        EsTechnique::RootPrefix,
        EsTechnique::DropPrepositionalPhrases,
    ];

    /// Token sets to delete, one per candidate hypothesis.
    fn deletions(self, s: &ParsedSentence) -> Vec<BTreeSet<usize>> {
        match self {
            EsTechnique::DropAdjectivalModifiers => {
                let leaves: Vec<usize> = s
                    .tokens
                    .iter()
                    .filter(|t| t.base_rel() == "amod" && !s.has_children(t.index))
                    .map(|t| t.index)
                    .collect();
                subsets(&leaves, 4)
                    .into_iter()
                    .map(|set| set.into_iter().collect())
                    .collect()
            }
            EsTechnique::DropAdverbialModifiers => {
                let leaves: Vec<usize> = s
                    .tokens
                    .iter()
                    .filter(|t| {
                        t.base_rel() == "advmod" && !s.has_children(t.index) && !syntax::is_negation(t) && !is_polarity_adverb(&t.form)
                    })
                    .map(|t| t.index)
                    .collect();
                subsets(&leaves, 4)
                    .into_iter()
                    .map(|set| set.into_iter().collect())
                    .collect()
            }
            EsTechnique::DropAdjectives => {
                let adjs: BTreeSet<usize> = s
                    .tokens
                    .iter()
                    .filter(|t| {
                        syntax::is_adjective(t)
                            && !s.has_children(t.index)
                            && !matches!(
                                t.base_rel(),
                                "conj" | "root" | "acomp" | "xcomp" | "attr" | "ccomp" | "advcl" | "cop"
                            )
                            && t.head != 0
                    })
                    .map(|t| t.index)
                    .collect();
                if adjs.is_empty() {
                    Vec::new()
                } else {
                    vec![adjs]
                }
            }
            EsTechnique::RootPrefix => {
                let Some(root) = s.root() else {
                    return Vec::new();
                };
                let keep: BTreeSet<usize> = std::iter::once(root)
                    .chain(
                        s.children(root)
                            .filter(|t| t.index < root && t.upos != "PUNCT")
                            .map(|t| t.index),
                    )
                    .collect();
                let has_verb = keep.iter().any(|&i| matches!(s.token(i).upos.as_str(), "VERB" | "AUX"));
                if keep.len() < 3 || !has_verb {
                    return Vec::new();
                }
                vec![(1..=s.len()).filter(|i| !keep.contains(i)).collect()]
            }
            EsTechnique::DropPrepositionalPhrases => {
                let Some(root) = s.root() else {
                    return Vec::new();
                };
                let anchors: BTreeSet<usize> = std::iter::once(root).chain(syntax::subjects(s)).collect();
                let phrases: Vec<usize> = s
                    .tokens
                    .iter()
                    .filter(|t| syntax::is_prepositional(t) && anchors.contains(&t.head))
                    .map(|t| t.index)
                    .collect();
                subsets(&phrases, 3)
                    .into_iter()
                    .map(|set| set.into_iter().flat_map(|p| s.subtree_tokens(p)).collect())
                    .collect()
            }
        }
    }
}

fn is_polarity_adverb(form: &str) -> bool {
    matches!(
        form.to_lowercase().as_str(),
        "no" | "hardly" | "barely" | "rarely" | "seldom" | "scarcely" | "only" | "almost" | "nearly"
    )
}

/// Non-empty subsets in order of size then position. Above `max_all`
/// items only singletons and the full set are produced.
fn subsets(items: &[usize], max_all: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    if n == 0 {
        return Vec::new();
    }
    if n > max_all {
        let mut out: Vec<Vec<usize>> = items.iter().map(|&i| vec![i]).collect();
        out.push(items.to_vec());
        return out;
    }
    let mut all: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|b| mask & (1 << b) != 0).map(|b| items[b]).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b: &Vec<usize>| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Snippets extracted with every registered technique.
pub fn es(s: &ParsedSentence) -> Vec<TransformOutcome> {
    es_with(s, &EsTechnique::ALL)
}

pub fn es_with(s: &ParsedSentence, techniques: &[EsTechnique]) -> Vec<TransformOutcome> {
    let mut out = Vec::new();
    for technique in techniques {
        for deletion in technique.deletions(s) {
            if deletion.is_empty() || deletion.len() >= s.len() {
                continue;
            }
            let mut draft = Draft::new(s);
            draft.remove_all(deletion);
            let (text, parse) = draft.finish(Transform::Snippet.surface());
            out.push(TransformOutcome::new(Transform::Snippet, Label::Entailment, text, Some(parse)));
        }
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Nouns eligible for word substitution: common nouns heading their own
/// phrase.
pub(crate) fn substitutable_nouns(s: &ParsedSentence) -> impl Iterator<Item = &crate::conllu::Token> {
    s.tokens
        .iter()
        .filter(|t| syntax::is_noun(t) && t.base_rel() != "compound")
}

/// Replaces a noun token by `replacement`, matching its number.
pub(crate) fn substitute_noun(draft: &mut Draft<'_>, token: &crate::conllu::Token, replacement: &str) {
    let form = if syntax::is_plural(token) {
        morph::pluralize(replacement)
    } else {
        replacement.to_owned()
    };
    draft.replace(token.index, &form, replacement);
}

/// One hypothesis per (noun, hypernym) pair.
pub fn hs(s: &ParsedSentence, lex: &Lexicon) -> Vec<TransformOutcome> {
    let mut out = Vec::new();
    for t in substitutable_nouns(s) {
        let lemma = t.lemma_key();
        for h in lex.hypernyms(&lemma) {
            if h.to_lowercase() == lemma {
                continue;
            }
            let mut draft = Draft::new(s);
            substitute_noun(&mut draft, t, h);
            draft.repair_articles();
            let (text, parse) = draft.finish(Transform::Hypernym.surface());
            out.push(TransformOutcome::new(Transform::Hypernym, Label::Entailment, text, Some(parse)));
        }
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

fn contiguous(ids: &[usize]) -> bool {
    ids.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Each nominal subject phrase replaced by its pronoun. Subjects of
/// "there is" clauses are skipped: "there is it" is not English.
pub fn ps(s: &ParsedSentence, lex: &Lexicon) -> Vec<TransformOutcome> {
    let mut out = Vec::new();
    let existential = |t: &Token| t.head != 0 && s.children(t.head).any(|c| c.base_rel() == "expl");
    for t in s
        .tokens
        .iter()
        .filter(|t| syntax::is_subject(t) && syntax::is_nominal(t) && !existential(t))
    {
        let Some(pronoun) = lex.pronoun_for(&t.lemma_key(), syntax::is_plural(t)) else {
            continue;
        };
        let span = s.subtree_tokens(t.index);
        if !contiguous(&span) {
            continue;
        }
        let mut draft = Draft::new(s);
        draft.replace_span(&span, vec![NewToken::new(pronoun, "PRON", &t.deprel)], 0);
        let (text, parse) = draft.finish(Transform::Pronoun.surface());
        out.push(TransformOutcome::new(Transform::Pronoun, Label::Entailment, text, Some(parse)));
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Count contributed by a noun: its numeric modifier, 1 if singular,
/// unknown for a bare plural.
fn noun_count(s: &ParsedSentence, lex: &Lexicon, index: usize) -> Option<(u32, Option<usize>)> {
    let t = s.token(index);
    if let Some(num) = s.children(index).find(|c| c.base_rel() == "nummod") {
        return lex.number_value(&num.form).map(|v| (v, Some(num.index)));
    }
    (!syntax::is_plural(t)).then_some((1, None))
}

/// Contiguous span that enumerates the counted nouns and can be replaced
/// by "<count> <hypernym>s".
fn count_span(s: &ParsedSentence, members: &[(usize, Option<usize>)]) -> Option<Vec<usize>> {
    let first = members[0].0;
    let last = members.last()?.0;
    let subtree: BTreeSet<usize> = s.subtree_tokens(first).into_iter().collect();
    let start = if members.len() == 1 {
        members[0].1.filter(|&n| n < first)?
    } else {
        // Every later member must hang off the first through conj links.
        for &(m, _) in &members[1..] {
            let mut cur = m;
            while cur != first {
                let t = s.token(cur);
                if t.base_rel() != "conj" {
                    return None;
                }
                cur = t.head;
            }
        }
        *subtree.iter().next()?
    };
    let span: Vec<usize> = (start..=last).collect();
    span.iter().all(|i| subtree.contains(i)).then_some(span)
}

/// Hypernym with the (noun index, stated count) of each noun under it.
type HypernymGroup = (String, Vec<(usize, Option<usize>)>);

/// Counting hypotheses for nouns that share a hypernym. True counts give
/// entailments; a sampled wrong count gives contradictions.
pub fn ct(s: &ParsedSentence, lex: &Lexicon, seed: u64) -> Vec<TransformOutcome> {
    let mut groups: Vec<HypernymGroup> = Vec::new();
    for t in substitutable_nouns(s) {
        let lemma = t.lemma_key();
        let Some((_, num)) = noun_count(s, lex, t.index) else {
            continue;
        };
        for h in lex.hypernyms(&lemma) {
            let key = h.to_lowercase();
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push((t.index, num)),
                None => groups.push((key, vec![(t.index, num)])),
            }
        }
    }

    let mut rng = keyed_rng(seed, "CT", &s.id);
    let mut out = Vec::new();
    for (hypernym, members) in groups {
        let total: u32 = members
            .iter()
            .filter_map(|&(i, _)| noun_count(s, lex, i).map(|(v, _)| v))
            .sum();
        let counted = members.len() >= 2 || members[0].1.is_some();
        if total < 2 || !counted {
            continue;
        }
        let plural = morph::pluralize(&hypernym);
        let span = count_span(s, &members);
        let wrong = loop {
            let m = rng.gen_range(2..=10u32);
            if m != total {
                break m;
            }
        };

        let emit = |out: &mut Vec<TransformOutcome>, label: Label, text: String| {
            out.push(TransformOutcome::new(Transform::Count, label, text, None));
        };
        let substituted = |count: u32| -> Option<(String, ParsedSentence)> {
            let span = span.as_ref()?;
            let top_rel = s.token(members[0].0).deprel.clone();
            let mut draft = Draft::new(s);
            draft.replace_span(
                span,
                vec![
                    NewToken::new(lex.number_word(count), "NUM", "nummod"),
                    NewToken::new(plural.clone(), "NOUN", &top_rel).with_lemma(hypernym.clone()),
                ],
                1,
            );
            Some(draft.finish(Transform::Count.surface()))
        };

        let n = lex.number_word(total);
        if let Some((text, parse)) = substituted(total) {
            out.push(TransformOutcome::new(Transform::Count, Label::Entailment, text, Some(parse)));
        }
        emit(&mut out, Label::Entailment, format!("There are {n} {plural} present"));
        emit(&mut out, Label::Entailment, format!("{} {plural} are present", morph::capitalize_first(&n)));
        emit(&mut out, Label::Entailment, format!("There are multiple {plural} present"));
        emit(&mut out, Label::Entailment, format!("Several {plural} are present"));
        emit(&mut out, Label::Entailment, format!("There are at least {n} {plural} present"));

        let m = lex.number_word(wrong);
        if let Some((text, parse)) = substituted(wrong) {
            out.push(TransformOutcome::new(Transform::Count, Label::Contradiction, text, Some(parse)));
        }
        emit(&mut out, Label::Contradiction, format!("There are {m} {plural} present"));
        emit(&mut out, Label::Contradiction, format!("{} {plural} are present", morph::capitalize_first(&m)));
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(&[2, 7], 4), vec![vec![2], vec![7], vec![2, 7]]);
        assert!(subsets(&[], 4).is_empty());
        assert_eq!(subsets(&[1, 2, 3, 4, 5], 4).len(), 6);
    }
}
