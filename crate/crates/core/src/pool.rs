//! The premise pool and its retrieval queries.
//!
//! All matching is on lowercased lemmas. Subjects are `nsubj`/`nsubjpass`
//! tokens, objects are `obj`/`dobj`/`pobj` tokens.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::conllu::ParsedSentence;
use crate::lexicon::Lexicon;
use crate::rng::keyed_rng;
use crate::syntax;

#[derive(Debug, Error)]
pub enum PoolError {
    #[error("duplicate sentence id {0:?}")]
    DuplicateSentenceId(String),
    #[error("sentence {0:?} has no subject")]
    NoSubject(String),
    #[error("sentence {0:?} has no main verb")]
    NoVerb(String),
    #[error("snapshot {path}: {message}")]
    Snapshot { path: String, message: String },
}

/// Lemma sets extracted from one sentence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Content {
    pub subjects: BTreeSet<String>,
    pub objects: BTreeSet<String>,
    pub nouns: BTreeSet<String>,
    pub verbs: BTreeSet<String>,
    pub main_verb: Option<String>,
}

impl Content {
    pub fn of(s: &ParsedSentence) -> Content {
        let lemmas = |idx: Vec<usize>| -> BTreeSet<String> { idx.into_iter().map(|i| s.token(i).lemma_key()).collect() };
        Content {
            subjects: lemmas(syntax::subjects(s)),
            objects: lemmas(syntax::objects(s)),
            nouns: syntax::noun_lemmas(s).into_iter().collect(),
            verbs: syntax::verb_lemmas(s).into_iter().collect(),
            main_verb: syntax::main_verb(s).map(|i| s.token(i).lemma_key()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PremisePool {
    sentences: BTreeMap<String, ParsedSentence>,
    subject_index: BTreeMap<String, BTreeSet<String>>,
    verb_index: BTreeMap<String, BTreeSet<String>>,
    content: BTreeMap<String, Content>,
}

const SNAPSHOT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Snapshot {
    version: u32,
    input_hash: String,
    pool: PremisePool,
}

impl PremisePool {
    pub fn build<I>(sentences: I) -> Result<PremisePool, PoolError>
    where
        I: IntoIterator<Item = ParsedSentence>,
    {
        let mut pool = PremisePool::default();
        for s in sentences {
            if pool.sentences.contains_key(&s.id) {
                return Err(PoolError::DuplicateSentenceId(s.id));
            }
            let content = Content::of(&s);
            for subj in &content.subjects {
                pool.subject_index.entry(subj.clone()).or_default().insert(s.id.clone());
            }
            for verb in &content.verbs {
                pool.verb_index.entry(verb.clone()).or_default().insert(s.id.clone());
            }
            pool.content.insert(s.id.clone(), content);
            pool.sentences.insert(s.id.clone(), s);
        }
        Ok(pool)
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&ParsedSentence> {
        self.sentences.get(id)
    }

    pub fn sentences(&self) -> impl Iterator<Item = &ParsedSentence> {
        self.sentences.values()
    }

    pub fn content(&self, id: &str) -> Option<&Content> {
        self.content.get(id)
    }

    pub fn ids_with_subject(&self, lemma: &str) -> Vec<&str> {
        self.subject_index
            .get(&lemma.to_lowercase())
            .map(|ids| ids.iter().map(String::as_str).collect())
            .unwrap_or_default()
    }

    pub fn ids_with_verb(&self, lemma: &str) -> Vec<&str> {
        self.verb_index
            .get(&lemma.to_lowercase())
            .map(|ids| ids.iter().map(String::as_str).collect())
            .unwrap_or_default()
    }

    /// Ids other than `s.id` sharing at least one subject lemma with `s`, in
    /// ascending id order.
    pub fn same_subject_candidates(&self, s: &ParsedSentence) -> Result<Vec<String>, PoolError> {
        let content = Content::of(s);
        if content.subjects.is_empty() {
            return Err(PoolError::NoSubject(s.id.clone()));
        }
        let mut ids = BTreeSet::new();
        for subj in &content.subjects {
            if let Some(set) = self.subject_index.get(subj) {
                ids.extend(set.iter().filter(|id| **id != s.id).cloned());
            }
        }
        Ok(ids.into_iter().collect())
    }

    /// Same-subject sentences whose main verb contradicts the main verb of
    /// `s`.
    pub fn contradictory_verb_sentences(&self, s: &ParsedSentence, lex: &Lexicon) -> Result<Vec<String>, PoolError> {
        let candidates = self.same_subject_candidates(s)?;
        let verb = syntax::main_verb(s)
            .map(|i| s.token(i).lemma_key())
            .ok_or_else(|| PoolError::NoVerb(s.id.clone()))?;
        let contra: BTreeSet<String> = lex.contradictory_verbs(&verb).iter().map(|v| v.to_lowercase()).collect();
        Ok(candidates
            .into_iter()
            .filter(|id| {
                self.content[id]
                    .main_verb
                    .as_ref()
                    .is_some_and(|v| contra.contains(v))
            })
            .collect())
    }

    /// Same-subject sentences that add at least one noun and use no verb
    /// contradicting any verb of `s`.
    pub fn neutral_same_subject_sentences(&self, s: &ParsedSentence, lex: &Lexicon) -> Result<Vec<String>, PoolError> {
        let candidates = self.same_subject_candidates(s)?;
        let own = Content::of(s);
        let contra: BTreeSet<String> = own
            .verbs
            .iter()
            .flat_map(|v| lex.contradictory_verbs(v))
            .map(|v| v.to_lowercase())
            .collect();
        Ok(candidates
            .into_iter()
            .filter(|id| {
                let c = &self.content[id];
                c.nouns.iter().any(|n| !own.nouns.contains(n)) && c.verbs.is_disjoint(&contra)
            })
            .collect())
    }

    /// Ids eligible as irrelevant hypotheses: no shared subject lemma and no
    /// shared object lemma with `s`.
    pub fn irrelevant_candidates(&self, s: &ParsedSentence) -> Vec<String> {
        let own = Content::of(s);
        self.content
            .iter()
            .filter(|(id, c)| {
                **id != s.id && c.subjects.is_disjoint(&own.subjects) && c.objects.is_disjoint(&own.objects)
            })
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Up to `k` irrelevant sentences, sampled with a stream keyed by
    /// `(seed, s.id)`; returned in ascending id order.
    pub fn irrelevant_sentences(&self, s: &ParsedSentence, k: usize, seed: u64) -> Vec<String> {
        sample_ids(self.irrelevant_candidates(s), k, seed, "IrH", &s.id)
    }

    pub fn save_snapshot(&self, path: &Path, input_hash: &str) -> Result<(), PoolError> {
        let err = |message: String| PoolError::Snapshot {
            path: path.display().to_string(),
            message,
        };
        let file = File::create(path).map_err(|e| err(e.to_string()))?;
        let snap = Snapshot {
            version: SNAPSHOT_VERSION,
            input_hash: input_hash.to_owned(),
            pool: self.clone(),
        };
        ciborium::into_writer(&snap, BufWriter::new(file)).map_err(|e| err(e.to_string()))
    }

    /// Loads a snapshot; `Ok(None)` when its version does not match, or
    /// when `input_hash` is given and differs from the stored one.
    pub fn load_snapshot(path: &Path, input_hash: Option<&str>) -> Result<Option<PremisePool>, PoolError> {
        let err = |message: String| PoolError::Snapshot {
            path: path.display().to_string(),
            message,
        };
        let file = File::open(path).map_err(|e| err(e.to_string()))?;
        let snap: Snapshot = ciborium::from_reader(BufReader::new(file)).map_err(|e| err(e.to_string()))?;
        if snap.version != SNAPSHOT_VERSION || input_hash.is_some_and(|h| h != snap.input_hash) {
            return Ok(None);
        }
        Ok(Some(snap.pool))
    }
}

/// SHA-256 over the contents of `paths` in order, as lowercase hex.
pub fn input_hash<P: AsRef<Path>>(paths: &[P]) -> std::io::Result<String> {
    let mut h = Sha256::new();
    for p in paths {
        let bytes = std::fs::read(p)?;
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(&bytes);
    }
    Ok(h.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

/// Seeded sample of at most `k` ids, returned in input order.
pub(crate) fn sample_ids(ids: Vec<String>, k: usize, seed: u64, purpose: &str, key: &str) -> Vec<String> {
    if ids.len() <= k {
        return ids;
    }
    let mut rng = keyed_rng(seed, purpose, key);
    let mut picked = sample(&mut rng, ids.len(), k).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| ids[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conllu::parse_str;

    // Tiny fixture: "A girl is walking", "A young girl is driving fast",
    // "A man sits".
    const POOL: &str = "\
# sent_id = a
1\tA\ta\tDET\t_\t_\t2\tdet\t_\t_
2\tgirl\tgirl\tNOUN\t_\t_\t4\tnsubj\t_\t_
3\tis\tbe\tAUX\t_\t_\t4\taux\t_\t_
4\twalking\twalk\tVERB\tVBG\t_\t0\troot\t_\t_

# sent_id = b
1\tA\ta\tDET\t_\t_\t3\tdet\t_\t_
2\tyoung\tyoung\tADJ\t_\t_\t3\tamod\t_\t_
3\tgirl\tgirl\tNOUN\t_\t_\t5\tnsubj\t_\t_
4\tis\tbe\tAUX\t_\t_\t5\taux\t_\t_
5\tdriving\tdrive\tVERB\tVBG\t_\t0\troot\t_\t_
6\tfast\tfast\tADV\t_\t_\t5\tadvmod\t_\t_

# sent_id = c
1\tA\ta\tDET\t_\t_\t2\tdet\t_\t_
2\tman\tman\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tsits\tsit\tVERB\tVBZ\t_\t0\troot\t_\t_
";

    fn pool() -> (PremisePool, Vec<ParsedSentence>) {
        let sents = parse_str(POOL, "t").unwrap().sentences;
        (PremisePool::build(sents.clone()).unwrap(), sents)
    }

    #[test]
    fn empty_pool() {
        let p = PremisePool::build(Vec::new()).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let (_, sents) = pool();
        let err = PremisePool::build(vec![sents[0].clone(), sents[0].clone()]).unwrap_err();
        assert!(matches!(err, PoolError::DuplicateSentenceId(id) if id == "a"));
    }

    #[test]
    fn same_subject() {
        let (p, sents) = pool();
        assert_eq!(p.same_subject_candidates(&sents[0]).unwrap(), vec!["b"]);
        assert!(p.same_subject_candidates(&sents[2]).unwrap().is_empty());
        assert_eq!(p.ids_with_subject("Girl"), vec!["a", "b"]);
    }

    #[test]
    fn contradictory_verbs_need_lexicon() {
        let (p, sents) = pool();
        let lex = Lexicon::from_tsv("contra_verb\twalk\tdrive\ncontra_verb\twalk\tski\n").unwrap();
        assert_eq!(p.contradictory_verb_sentences(&sents[0], &lex).unwrap(), vec!["b"]);
        let empty = Lexicon::new();
        assert!(p.contradictory_verb_sentences(&sents[0], &empty).unwrap().is_empty());
    }

    #[test]
    fn irrelevant_excludes_shared_subjects() {
        let (p, sents) = pool();
        assert_eq!(p.irrelevant_sentences(&sents[0], 5, 13), vec!["c"]);
        assert!(p.irrelevant_sentences(&sents[0], 0, 13).is_empty());
    }

    #[test]
    fn snapshot_round_trip_and_staleness() {
        let (p, _) = pool();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pool.cbor");
        p.save_snapshot(&path, "h1").unwrap();
        assert_eq!(PremisePool::load_snapshot(&path, Some("h1")).unwrap(), Some(p.clone()));
        assert_eq!(PremisePool::load_snapshot(&path, Some("h2")).unwrap(), None);
        assert_eq!(PremisePool::load_snapshot(&path, None).unwrap(), Some(p));
    }
}
