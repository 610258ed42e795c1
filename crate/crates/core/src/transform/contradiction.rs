//! Contradiction-producing transforms, plus irrelevant-hypothesis
//! retrieval.

use rand::seq::SliceRandom;
use rand::Rng;

use super::entailment::{substitutable_nouns, substitute_noun};
use super::{dedup_outcomes, Transform, TransformError, TransformOutcome};
use crate::conllu::{ParsedSentence, Token};
use crate::edit::{Draft, NewToken};
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::morph::{self, VerbForm};
use crate::pool::{sample_ids, PremisePool};
use crate::rng::keyed_rng;
use crate::syntax;

/// A token with the words that contradict it.
struct Substitution<'a> {
    token: &'a Token,
    targets: Vec<&'a str>,
    noun: bool,
}

/// Substitutable tokens in surface order. Targets already present in the
/// sentence are left out: "a man and a woman" does not contradict "a
/// woman and a man".
fn substitutions<'a>(s: &'a ParsedSentence, lex: &'a Lexicon) -> Vec<Substitution<'a>> {
    let present: Vec<String> = s.tokens.iter().map(Token::lemma_key).collect();
    let fresh = |targets: &'a [String]| -> Vec<&'a str> {
        targets
            .iter()
            .filter(|t| !present.contains(&t.to_lowercase()))
            .map(String::as_str)
            .collect()
    };
    let mut out: Vec<Substitution<'a>> = substitutable_nouns(s)
        .filter_map(|t| {
            let targets = fresh(lex.contradictory_nouns(&t.lemma_key()));
            (!targets.is_empty()).then_some(Substitution { token: t, targets, noun: true })
        })
        .collect();
    out.extend(s.tokens.iter().filter(|t| syntax::is_adjective(t)).filter_map(|t| {
        let targets = fresh(lex.antonyms(&t.lemma_key()));
        (!targets.is_empty()).then_some(Substitution { token: t, targets, noun: false })
    }));
    out.sort_by_key(|sub| sub.token.index);
    out
}

fn apply_substitution(draft: &mut Draft<'_>, sub: &Substitution<'_>, target: &str) {
    if sub.noun {
        substitute_noun(draft, sub.token, target);
    } else {
        draft.replace(sub.token.index, target, target);
    }
}

/// Contradictory word substitution: every (token, target) single
/// substitution, then every pair of tokens with a sampled target each.
pub fn cw(s: &ParsedSentence, lex: &Lexicon, seed: u64) -> Vec<TransformOutcome> {
    let subs = substitutions(s, lex);
    let mut out = Vec::new();
    let finish = |draft: Draft<'_>, out: &mut Vec<TransformOutcome>| {
        let mut draft = draft;
        draft.repair_articles();
        let (text, parse) = draft.finish(Transform::ContraWord.surface());
        out.push(TransformOutcome::new(Transform::ContraWord, Label::Contradiction, text, Some(parse)));
    };
    for sub in &subs {
        for &target in &sub.targets {
            let mut draft = Draft::new(s);
            apply_substitution(&mut draft, sub, target);
            finish(draft, &mut out);
        }
    }
    let mut rng = keyed_rng(seed, "CW", &s.id);
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i + 1..] {
            let mut draft = Draft::new(s);
            for sub in [a, b] {
                let target = sub.targets.choose(&mut rng).expect("non-empty targets");
                apply_substitution(&mut draft, sub, target);
            }
            finish(draft, &mut out);
        }
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Main verb replaced by each contradictory verb, in the same form.
pub fn cv_substitute(s: &ParsedSentence, lex: &Lexicon) -> Vec<TransformOutcome> {
    let Some(v) = syntax::main_verb(s) else {
        return Vec::new();
    };
    let verb = s.token(v);
    let form = morph::verb_form_of(verb);
    let mut out = Vec::new();
    for target in lex.contradictory_verbs(&verb.lemma_key()) {
        let mut draft = Draft::new(s);
        draft.replace(v, &morph::inflect_verb(target, form), target);
        let (text, parse) = draft.finish(Transform::ContraVerb.surface());
        out.push(TransformOutcome::new(Transform::ContraVerb, Label::Contradiction, text, Some(parse)));
    }
    dedup_outcomes(&s.text, &mut out);
    out
}

fn retrieved(
    s: &ParsedSentence,
    pool: &PremisePool,
    ids: Vec<String>,
    transform: Transform,
    label: Label,
) -> Vec<TransformOutcome> {
    let mut out: Vec<TransformOutcome> = ids
        .iter()
        .filter_map(|id| pool.get(id))
        .map(|p| TransformOutcome::new(transform, label, p.text.clone(), Some(p.clone())))
        .collect();
    dedup_outcomes(&s.text, &mut out);
    out
}

/// Pool sentences with the same subject and a contradictory main verb.
pub fn cv_retrieve(
    s: &ParsedSentence,
    pool: &PremisePool,
    lex: &Lexicon,
    k: usize,
    seed: u64,
) -> Result<Vec<TransformOutcome>, TransformError> {
    let ids = pool.contradictory_verb_sentences(s, lex)?;
    let ids = sample_ids(ids, k, seed, "CVr", &s.id);
    Ok(retrieved(s, pool, ids, Transform::ContraVerbRetrieval, Label::Contradiction))
}

/// Pool sentences sharing neither subject nor object with the premise,
/// labelled as contradictions. A premise with neither has nothing to
/// differ from and gets none.
pub fn irh(s: &ParsedSentence, pool: &PremisePool, k: usize, seed: u64) -> Vec<TransformOutcome> {
    if syntax::subjects(s).is_empty() && syntax::objects(s).is_empty() {
        return Vec::new();
    }
    let ids = pool.irrelevant_sentences(s, k, seed);
    retrieved(s, pool, ids, Transform::Irrelevant, Label::Contradiction)
}

/// Swaps the subject head noun with the last object head noun; all
/// modifiers stay where they are.
pub fn sos(s: &ParsedSentence) -> Vec<TransformOutcome> {
    let subjects = syntax::subjects(s);
    let objects = syntax::objects(s);
    let (&[subj], Some(&obj)) = (subjects.as_slice(), objects.last()) else {
        return Vec::new();
    };
    let (st, ot) = (s.token(subj), s.token(obj));
    if !syntax::is_nominal(st) || !syntax::is_nominal(ot) || st.lemma_key() == ot.lemma_key() {
        return Vec::new();
    }
    let moved = |t: &Token| {
        if t.upos == "PROPN" || t.form == "I" {
            t.form.clone()
        } else {
            morph::lowercase_first(&t.form)
        }
    };
    let mut draft = Draft::new(s);
    draft.replace(subj, &moved(ot), &ot.lemma);
    draft.replace(obj, &moved(st), &st.lemma);
    let (text, parse) = draft.finish(Transform::SubjectObjectSwap.surface());
    let mut out = vec![TransformOutcome::new(
        Transform::SubjectObjectSwap,
        Label::Contradiction,
        text,
        Some(parse),
    )];
    dedup_outcomes(&s.text, &mut out);
    out
}

fn negation_token() -> NewToken {
    NewToken::new("not", "PART", "neg")
}

/// Negates the predicate headed by `p`, or returns `false` if it has no
/// verbal element to negate.
fn negate_predicate(s: &ParsedSentence, p: usize, draft: &mut Draft<'_>) -> bool {
    let t = s.token(p);
    if t.upos == "AUX" {
        draft.insert(p, true, p, vec![negation_token()]);
        return true;
    }
    if let Some(&aux) = syntax::auxiliaries(s, p).first() {
        draft.insert(aux, true, p, vec![negation_token()]);
        return true;
    }
    if !syntax::is_verb(t) {
        return false;
    }
    let form = morph::verb_form_of(t);
    let support = match form {
        VerbForm::Past => Some("did"),
        VerbForm::ThirdSingular => Some("does"),
        VerbForm::Base if t.head == 0 => Some("do"),
        _ => None,
    };
    match support {
        Some(aux) => {
            let lemma = t.lemma_key();
            draft.replace_span(
                &[p],
                vec![
                    NewToken::new(aux, "AUX", "aux").with_lemma("do"),
                    negation_token(),
                    NewToken::new(lemma.clone(), "VERB", &t.deprel).with_lemma(lemma),
                ],
                2,
            );
        }
        None => {
            draft.insert(p, false, p, vec![negation_token()]);
        }
    }
    true
}

/// Negation of the main predicate.
pub fn ni(s: &ParsedSentence) -> Result<Vec<TransformOutcome>, TransformError> {
    if s.tokens.iter().any(syntax::is_negation) || syntax::count_negations(&s.text) > 0 {
        return Err(TransformError::AlreadyNegated(s.id.clone()));
    }
    let Some(root) = s.root() else {
        return Ok(Vec::new());
    };
    let mut draft = Draft::new(s);
    let mut done = negate_predicate(s, root, &mut draft);
    if !done {
        if let Some(v) = syntax::main_verb(s) {
            done = negate_predicate(s, v, &mut draft);
        }
    }
    if !done {
        return Ok(Vec::new());
    }
    let (text, parse) = draft.finish(Transform::Negation.surface());
    let mut out = vec![TransformOutcome::new(Transform::Negation, Label::Contradiction, text, Some(parse))];
    dedup_outcomes(&s.text, &mut out);
    Ok(out)
}

/// Every numeric modifier above one replaced by a different sampled
/// number in the same style (word or digits). A count of one is left
/// alone: changing it would also need the noun re-inflected.
pub fn ns(s: &ParsedSentence, lex: &Lexicon, seed: u64) -> Vec<TransformOutcome> {
    let numbers: Vec<(&Token, u32)> = s
        .tokens
        .iter()
        .filter(|t| t.base_rel() == "nummod")
        .filter_map(|t| lex.number_value(&t.form).map(|v| (t, v)))
        .filter(|&(_, v)| v > 1)
        .collect();
    if numbers.is_empty() {
        return Vec::new();
    }
    let mut rng = keyed_rng(seed, "NS", &s.id);
    let mut draft = Draft::new(s);
    for (t, old) in numbers {
        let new = loop {
            let n = rng.gen_range(2..=20u32);
            if n != old {
                break n;
            }
        };
        let digits = t.form.chars().all(|c| c.is_ascii_digit());
        let form = if digits { new.to_string() } else { lex.number_word(new) };
        draft.replace(t.index, &form, &form);
    }
    let (text, parse) = draft.finish(Transform::NumberSwap.surface());
    let mut out = vec![TransformOutcome::new(Transform::NumberSwap, Label::Contradiction, text, Some(parse))];
    dedup_outcomes(&s.text, &mut out);
    out
}
