//! Relation classes and clause-level lookups shared by the transforms and
//! the premise pool.
//!
//! Both Universal Dependencies v2 labels and the English labels produced by
//! spaCy (`dobj`, `pobj`, `prep`, `nsubjpass`, ...) are accepted.

use crate::conllu::{ParsedSentence, Token};

pub fn is_subject(t: &Token) -> bool {
    matches!(t.deprel.as_str(), "nsubj" | "nsubjpass" | "nsubj:pass")
}

pub fn is_object(t: &Token) -> bool {
    matches!(t.deprel.as_str(), "obj" | "dobj" | "pobj")
}

/// Heads of prepositional attachments: spaCy `prep`, UD `obl`/`nmod`.
pub fn is_prepositional(t: &Token) -> bool {
    matches!(t.base_rel(), "prep" | "obl" | "nmod")
}

pub fn is_auxiliary(t: &Token) -> bool {
    matches!(t.base_rel(), "aux" | "auxpass" | "cop")
}

pub fn is_noun(t: &Token) -> bool {
    t.upos == "NOUN"
}

pub fn is_nominal(t: &Token) -> bool {
    matches!(t.upos.as_str(), "NOUN" | "PROPN")
}

pub fn is_adjective(t: &Token) -> bool {
    t.upos == "ADJ"
}

pub fn is_verb(t: &Token) -> bool {
    t.upos == "VERB"
}

const NEGATION_FORMS: [&str; 3] = ["not", "n't", "never"];

pub fn is_negation(t: &Token) -> bool {
    t.deprel == "neg" || NEGATION_FORMS.contains(&t.form.to_lowercase().as_str())
}

/// Counts negation words in a whitespace-tokenized string.
pub fn count_negations(text: &str) -> usize {
    text.split_whitespace()
        .map(|w| w.trim_matches(|c: char| c.is_ascii_punctuation() && c != '\''))
        .filter(|w| {
            let w = w.to_lowercase();
            NEGATION_FORMS.contains(&w.as_str()) || w.ends_with("n't")
        })
        .count()
}

pub fn is_plural(t: &Token) -> bool {
    match t.feat("Number") {
        Some(n) => n == "Plur",
        None => matches!(t.xpos.as_deref(), Some("NNS" | "NNPS")),
    }
}

pub fn subjects(s: &ParsedSentence) -> Vec<usize> {
    s.tokens.iter().filter(|t| is_subject(t)).map(|t| t.index).collect()
}

pub fn objects(s: &ParsedSentence) -> Vec<usize> {
    s.tokens.iter().filter(|t| is_object(t)).map(|t| t.index).collect()
}

/// The clause's main lexical verb.
///
/// The root if it is a verb other than "be"; otherwise the shallowest verb
/// in the tree, ties broken by surface order. This picks "skiing" in
/// "There is a girl skiing" and "throwing" in captions whose root is the
/// subject noun.
pub fn main_verb(s: &ParsedSentence) -> Option<usize> {
    let root = s.root()?;
    let usable = |t: &Token| is_verb(t) && t.lemma_key() != "be";
    if usable(s.token(root)) {
        return Some(root);
    }
    s.tokens
        .iter()
        .filter(|t| usable(t))
        .min_by_key(|t| (s.depth(t.index), t.index))
        .map(|t| t.index)
}

/// Direct dependents of `index` that are auxiliaries or copulas, in surface
/// order.
pub fn auxiliaries(s: &ParsedSentence, index: usize) -> Vec<usize> {
    s.children(index)
        .filter(|t| is_auxiliary(t))
        .map(|t| t.index)
        .collect()
}

/// True when `index` or one of its direct dependents is a negation word.
pub fn is_negated(s: &ParsedSentence, index: usize) -> bool {
    is_negation(s.token(index)) || s.children(index).any(is_negation)
}

/// Nouns in the sentence as lowercased lemmas, surface order, no repeats.
pub fn noun_lemmas(s: &ParsedSentence) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in s.tokens.iter().filter(|t| is_nominal(t)) {
        let l = t.lemma_key();
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

pub fn verb_lemmas(s: &ParsedSentence) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in s.tokens.iter().filter(|t| is_verb(t)) {
        let l = t.lemma_key();
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}
