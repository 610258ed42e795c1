//! Brute-force oracles and independent rule tables, shared by the core
//! suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use phl_core::composer::PhlTriplet;
use phl_core::conllu::{ParsedSentence, Token};
use phl_core::label::Label;
use phl_core::lexicon::Lexicon;
use phl_core::pool::PremisePool;
use phl_core::pseudo::{maxprob_filter, Prediction};
use phl_core::syntax::count_negations;

use super::{sub_multiset, words};

const SUBJ: [&str; 3] = ["nsubj", "nsubjpass", "nsubj:pass"];
const OBJ: [&str; 3] = ["obj", "dobj", "pobj"];

fn lemmas_where(s: &ParsedSentence, keep: impl Fn(&Token) -> bool) -> BTreeSet<String> {
    s.tokens.iter().filter(|t| keep(t)).map(|t| t.lemma.to_lowercase()).collect()
}

pub fn subj(s: &ParsedSentence) -> BTreeSet<String> {
    lemmas_where(s, |t| SUBJ.contains(&t.deprel.as_str()))
}

fn obj(s: &ParsedSentence) -> BTreeSet<String> {
    lemmas_where(s, |t| OBJ.contains(&t.deprel.as_str()))
}

fn nouns(s: &ParsedSentence) -> BTreeSet<String> {
    lemmas_where(s, |t| t.upos == "NOUN" || t.upos == "PROPN")
}

fn verbs(s: &ParsedSentence) -> BTreeSet<String> {
    lemmas_where(s, |t| t.upos == "VERB")
}

/// Shallowest non-"be" verb, leftmost among equals; the root wins when it
/// qualifies since it is the only token at depth zero.
fn main_verb(s: &ParsedSentence) -> Option<String> {
    s.tokens
        .iter()
        .filter(|t| t.upos == "VERB" && t.lemma.to_lowercase() != "be")
        .min_by_key(|t| (s.ancestors(t.index).len(), t.index))
        .map(|t| t.lemma.to_lowercase())
}

fn same_subject<'a>(pool: &'a [ParsedSentence], s: &ParsedSentence) -> Vec<&'a ParsedSentence> {
    let mine = subj(s);
    let mut out: Vec<&ParsedSentence> = pool
        .iter()
        .filter(|c| c.id != s.id && !subj(c).is_disjoint(&mine))
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

fn ids(v: Vec<&ParsedSentence>) -> Vec<String> {
    v.into_iter().map(|s| s.id.clone()).collect()
}

pub fn same_subject_ids(pool: &[ParsedSentence], s: &ParsedSentence) -> Vec<String> {
    ids(same_subject(pool, s))
}

pub fn contradictory_verb_ids(pool: &[ParsedSentence], s: &ParsedSentence, lex: &Lexicon) -> Vec<String> {
    let Some(v) = main_verb(s) else { return Vec::new() };
    let contra: BTreeSet<String> = lex.contradictory_verbs(&v).iter().map(|x| x.to_lowercase()).collect();
    ids(same_subject(pool, s)
        .into_iter()
        .filter(|c| main_verb(c).is_some_and(|m| contra.contains(&m)))
        .collect())
}

pub fn neutral_same_subject_ids(pool: &[ParsedSentence], s: &ParsedSentence, lex: &Lexicon) -> Vec<String> {
    let own_nouns = nouns(s);
    let contra: BTreeSet<String> = verbs(s)
        .iter()
        .flat_map(|v| lex.contradictory_verbs(v).iter().map(|x| x.to_lowercase()))
        .collect();
    ids(same_subject(pool, s)
        .into_iter()
        .filter(|c| !nouns(c).is_subset(&own_nouns) && verbs(c).is_disjoint(&contra))
        .collect())
}

pub fn irrelevant_ids(pool: &[ParsedSentence], s: &ParsedSentence) -> Vec<String> {
    let (ms, mo) = (subj(s), obj(s));
    let mut out: Vec<String> = pool
        .iter()
        .filter(|c| c.id != s.id && subj(c).is_disjoint(&ms) && obj(c).is_disjoint(&mo))
        .map(|c| c.id.clone())
        .collect();
    out.sort();
    out
}

/// Compares every pool query against the scans for each query sentence.
/// Returns the number of non-empty answers per query, or the first
/// mismatch.
pub fn check_pool(
    sentences: &[ParsedSentence],
    pool: &PremisePool,
    queries: &[ParsedSentence],
    lex: &Lexicon,
) -> Result<[usize; 3], String> {
    let mut hits = [0; 3];
    let mismatch = |what: &str, id: &str| Err(format!("{what} differs for {id}"));
    for q in queries {
        match pool.same_subject_candidates(q) {
            Ok(got) if got != same_subject_ids(sentences, q) => return mismatch("same subject", &q.id),
            Err(_) if !subj(q).is_empty() => return mismatch("same subject", &q.id),
            _ => {}
        }
        if let Ok(got) = pool.contradictory_verb_sentences(q, lex) {
            if got != contradictory_verb_ids(sentences, q, lex) {
                return mismatch("contradictory verb", &q.id);
            }
            hits[0] += got.len();
        }
        if let Ok(got) = pool.neutral_same_subject_sentences(q, lex) {
            if got != neutral_same_subject_ids(sentences, q, lex) {
                return mismatch("neutral same subject", &q.id);
            }
            hits[1] += got.len();
        }
        let got = pool.irrelevant_candidates(q);
        if got != irrelevant_ids(sentences, q) {
            return mismatch("irrelevant", &q.id);
        }
        hits[2] += got.len();
    }
    Ok(hits)
}

/// (premise, hypothesis, label) of every record whose largest probability
/// reaches `tau`, labelled by the first maximal position in E, C, N order.
pub fn select(rows: &[Prediction<f64>], tau: f64) -> Vec<(String, String, Label)> {
    let mut out = Vec::new();
    for r in rows {
        let [e, c, n] = r.probs;
        let top = e.max(c).max(n);
        if top < tau {
            continue;
        }
        let label = if e == top {
            Label::Entailment
        } else if c == top {
            Label::Contradiction
        } else {
            Label::Neutral
        };
        out.push((r.premise.clone(), r.hypothesis.clone(), label));
    }
    out
}

pub const TAUS: [f64; 5] = [0.0, 0.5, 0.8, 0.9, 1.0];

/// maxprob_filter against the scan at every threshold, plus nesting of
/// the selections as the threshold rises.
pub fn check_maxprob(rows: &[Prediction<f64>]) -> Result<(), String> {
    let mut previous: Option<BTreeSet<(String, String)>> = None;
    for tau in TAUS {
        let (kept, _) = maxprob_filter(rows, tau).map_err(|(i, e)| format!("record {i}: {e}"))?;
        let got: Vec<_> = kept
            .iter()
            .map(|t| (t.premise.clone(), t.hypothesis.clone(), t.label))
            .collect();
        if got != select(rows, tau) {
            return Err(format!("selection differs at {tau}"));
        }
        let set: BTreeSet<_> = got.into_iter().map(|(p, h, _)| (p, h)).collect();
        if previous.as_ref().is_some_and(|p| !set.is_subset(p)) {
            return Err(format!("selection at {tau} is not nested"));
        }
        previous = Some(set);
    }
    Ok(())
}

use Label::{Contradiction as C, Entailment as E, Neutral as N};

/// Labels each single tag may carry.
pub fn table(tag: &str) -> Option<&'static [Label]> {
    Some(match tag {
        "PA" | "ES" | "HS" | "PS" => &[E],
        "CT" => &[E, C],
        "CW" | "CV" | "CVr" | "SOS" | "NI" | "NS" | "IrH" => &[C],
        "AM" | "Con" | "SSNCV" => &[N],
        _ => return None,
    })
}

/// Label of the reversed pair for tags whose outcomes are swapped.
pub fn swapped_table(tag: &str) -> Option<Label> {
    match tag {
        "ES" | "HS" => Some(N),
        "AM" | "Con" => Some(E),
        "CW" => Some(C),
        _ => None,
    }
}

/// Labels a triplet may carry: single tags by the table, swaps by the swap
/// table, composites E when every step entails and otherwise the final
/// step's labels. Composites are never swapped and only their last step may
/// be non-entailing.
pub fn allowed(tag: &str, swapped: bool) -> Vec<Label> {
    let steps: Vec<&str> = tag.split('+').collect();
    if swapped {
        return match steps[..] {
            [single] => swapped_table(single).into_iter().collect(),
            _ => Vec::new(),
        };
    }
    let Some(tables) = steps.iter().map(|s| table(s)).collect::<Option<Vec<_>>>() else {
        return Vec::new();
    };
    let (last, init) = tables.split_last().unwrap();
    if init.iter().any(|t| *t != [E]) {
        return Vec::new();
    }
    if !init.is_empty() && *last == [E] {
        return vec![E];
    }
    last.to_vec()
}

pub fn label_violations(rows: &[PhlTriplet]) -> Vec<&PhlTriplet> {
    rows.iter().filter(|t| !allowed(&t.transform, t.swapped).contains(&t.label)).collect()
}

/// The hypothesis equals the premise word for word except at nummod
/// positions, each of which carries a different number.
fn number_swap_ok(s: &ParsedSentence, hypothesis: &str, lex: &Lexicon) -> bool {
    let norm = |w: &str| w.trim_end_matches(['.', '!', '?']).to_lowercase();
    let p: Vec<String> = s.text.split_whitespace().map(norm).collect();
    let h: Vec<String> = hypothesis.split_whitespace().map(norm).collect();
    if p.len() != h.len() {
        return false;
    }
    let nummods: Vec<String> = s
        .tokens
        .iter()
        .filter(|t| t.deprel == "nummod")
        .map(|t| t.form.to_lowercase())
        .collect();
    let mut changed = 0;
    for (a, b) in p.iter().zip(&h) {
        if a == b {
            continue;
        }
        changed += 1;
        let (Some(old), Some(new)) = (lex.number_value(a), lex.number_value(b)) else {
            return false;
        };
        if old == new || !nummods.contains(a) {
            return false;
        }
    }
    changed > 0
}

/// Checks ES deletion-only, AM/Con insertion-only, NI one extra negation
/// and NS in-place number change on every unswapped row with those tags.
/// Returns rows checked per tag and the violating rows.
pub fn structural_violations<'a>(
    rows: &'a [PhlTriplet],
    premises: &BTreeMap<String, ParsedSentence>,
) -> (BTreeMap<String, usize>, Vec<&'a PhlTriplet>) {
    let lex = Lexicon::new();
    let mut checked: BTreeMap<String, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    for t in rows.iter().filter(|t| !t.swapped) {
        let (p, h) = (words(&t.premise), words(&t.hypothesis));
        let ok = match t.transform.as_str() {
            "ES" => sub_multiset(&h, &p) && h.len() < p.len(),
            "AM" | "Con" => sub_multiset(&p, &h) && h.len() > p.len(),
            "NI" => count_negations(&t.hypothesis) == count_negations(&t.premise) + 1,
            "NS" => premises
                .get(&t.source_id)
                .is_some_and(|s| number_swap_ok(s, &t.hypothesis, &lex)),
            _ => continue,
        };
        *checked.entry(t.transform.clone()).or_default() += 1;
        if !ok {
            violations.push(t);
        }
    }
    (checked, violations)
}
