//! Sentence transformations and their label registry.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::conllu::ParsedSentence;
use crate::edit::Surface;
use crate::label::Label;
use crate::lexicon::Lexicon;
use crate::pool::{PoolError, PremisePool};

pub mod contradiction;
pub mod entailment;
pub mod neutral;

pub use contradiction::{cv_retrieve, cv_substitute, cw, irh, ni, ns, sos};
pub use entailment::{ct, es, hs, pa, ps, EsTechnique};
pub use neutral::{am, con, ssncv};

/// Every transformation, in registry order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform {
    Paraphrase,
    Snippet,
    Hypernym,
    Pronoun,
    Count,
    ContraWord,
    ContraVerb,
    ContraVerbRetrieval,
    SubjectObjectSwap,
    Negation,
    NumberSwap,
    Irrelevant,
    Modifier,
    ConceptNet,
    SameSubject,
}

impl Transform {
    pub const ALL: [Transform; 15] = [
        Transform::Paraphrase,
        Transform::Snippet,
        Transform::Hypernym,
        Transform::Pronoun,
        Transform::Count,
        Transform::ContraWord,
        Transform::ContraVerb,
        Transform::ContraVerbRetrieval,
        Transform::SubjectObjectSwap,
        Transform::Negation,
        Transform::NumberSwap,
        Transform::Irrelevant,
        Transform::Modifier,
        Transform::ConceptNet,
        Transform::SameSubject,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Transform::Paraphrase => "PA",
            Transform::Snippet => "ES",
            Transform::Hypernym => "HS",
            Transform::Pronoun => "PS",
            Transform::Count => "CT",
            Transform::ContraWord => "CW",
            Transform::ContraVerb => "CV",
            Transform::ContraVerbRetrieval => "CVr",
            Transform::SubjectObjectSwap => "SOS",
            Transform::Negation => "NI",
            Transform::NumberSwap => "NS",
            Transform::Irrelevant => "IrH",
            Transform::Modifier => "AM",
            Transform::ConceptNet => "Con",
            Transform::SameSubject => "SSNCV",
        }
    }

    /// Labels a transform may emit. Only counting emits two.
    pub fn labels(self) -> &'static [Label] {
        match self {
            Transform::Paraphrase | Transform::Snippet | Transform::Hypernym | Transform::Pronoun => {
                &[Label::Entailment]
            }
            Transform::Count => &[Label::Entailment, Label::Contradiction],
            Transform::ContraWord
            | Transform::ContraVerb
            | Transform::ContraVerbRetrieval
            | Transform::SubjectObjectSwap
            | Transform::Negation
            | Transform::NumberSwap
            | Transform::Irrelevant => &[Label::Contradiction],
            Transform::Modifier | Transform::ConceptNet | Transform::SameSubject => &[Label::Neutral],
        }
    }

    /// Label of the premise/hypothesis-swapped pair, for swap-eligible
    /// transforms.
    pub fn swap_label(self) -> Option<Label> {
        match self {
            Transform::Snippet | Transform::Hypernym => Some(Label::Neutral),
            Transform::Modifier | Transform::ConceptNet => Some(Label::Entailment),
            Transform::ContraWord => Some(Label::Contradiction),
            _ => None,
        }
    }

    /// Whether the step keeps an entailed hypothesis entailed, which is what
    /// a non-final composite step must do.
    pub fn preserves_entailment(self) -> bool {
        matches!(
            self,
            Transform::Paraphrase | Transform::Snippet | Transform::Hypernym | Transform::Pronoun
        )
    }

    pub fn uses_pool(self) -> bool {
        matches!(
            self,
            Transform::ContraVerbRetrieval | Transform::Irrelevant | Transform::SameSubject
        )
    }

    pub fn surface(self) -> Surface {
        match self {
            Transform::Snippet => Surface::Verbatim,
            Transform::Pronoun | Transform::SubjectObjectSwap => Surface::Plain,
            _ => Surface::Sentence,
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Error)]
#[error("unknown transform {0:?}")]
pub struct UnknownTransform(pub String);

impl FromStr for Transform {
    type Err = UnknownTransform;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Transform::ALL
            .into_iter()
            .find(|t| t.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownTransform(s.to_owned()))
    }
}

/// Splits a `+`-joined tag chain such as `PA+ES+HS`.
pub fn parse_chain(tag: &str) -> Result<Vec<Transform>, UnknownTransform> {
    tag.split('+').map(str::parse).collect()
}

/// One generated hypothesis for a premise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOutcome {
    pub hypothesis: String,
    pub label: Label,
    /// `+`-joined chain of transform tags.
    pub tag: String,
    /// Label of the swapped pair; `Some` iff the outcome is swap-eligible.
    pub swap_label: Option<Label>,
    /// Parse of the hypothesis when the edit kept the tree intact.
    pub parse: Option<ParsedSentence>,
}

impl TransformOutcome {
    pub(crate) fn new(transform: Transform, label: Label, hypothesis: String, parse: Option<ParsedSentence>) -> Self {
        TransformOutcome {
            hypothesis,
            label,
            tag: transform.tag().to_owned(),
            swap_label: transform.swap_label(),
            parse,
        }
    }

    pub fn swap_eligible(&self) -> bool {
        self.swap_label.is_some()
    }
}

#[derive(Debug, Error)]
pub enum TransformError {
    #[error(transparent)]
    Pool(#[from] PoolError),
    #[error("sentence {0:?} is already negated")]
    AlreadyNegated(String),
    #[error("no template for ConceptNet relation {0:?}")]
    UnknownRelationTemplate(String),
    #[error("composite step {step} ({tag}) changes the label but is not last")]
    RecipeLabelViolation { step: usize, tag: &'static str },
    #[error("empty composite recipe")]
    EmptyRecipe,
}

impl TransformError {
    /// Short name used when counting failures.
    pub fn kind(&self) -> &'static str {
        match self {
            TransformError::Pool(PoolError::NoSubject(_)) => "no subject",
            TransformError::Pool(PoolError::NoVerb(_)) => "no verb",
            TransformError::Pool(_) => "pool",
            TransformError::AlreadyNegated(_) => "already negated",
            TransformError::UnknownRelationTemplate(_) => "unknown relation template",
            TransformError::RecipeLabelViolation { .. } => "recipe label violation",
            TransformError::EmptyRecipe => "empty recipe",
        }
    }
}

/// Paraphrases per sentence id, produced offline.
#[derive(Clone, Debug, Default)]
pub struct ParaphraseTable {
    by_id: BTreeMap<String, Vec<String>>,
}

impl ParaphraseTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: &str, paraphrase: &str) {
        self.by_id.entry(id.to_owned()).or_default().push(paraphrase.to_owned());
    }

    pub fn get(&self, id: &str) -> &[String] {
        self.by_id.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Reads `sentence_id \t paraphrase_text` rows; blank and `#` lines are
    /// skipped, rows without a tab are an error.
    pub fn from_reader<R: BufRead>(reader: R) -> std::io::Result<ParaphraseTable> {
        let mut table = ParaphraseTable::new();
        for (n, line) in reader.lines().enumerate() {
            let line = line?;
            let row = line.trim_end_matches('\r');
            if row.trim().is_empty() || row.starts_with('#') {
                continue;
            }
            let (id, text) = row.split_once('\t').ok_or_else(|| {
                std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    format!("line {}: expected `sentence_id<TAB>paraphrase`", n + 1),
                )
            })?;
            table.insert(id.trim(), text.trim());
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> std::io::Result<ParaphraseTable> {
        Self::from_reader(BufReader::new(File::open(path)?))
    }

    pub fn len(&self) -> usize {
        self.by_id.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_id.is_empty()
    }
}

/// Supplies a parse for a hypothesis produced by a structure-changing step.
pub trait Reparse: Send + Sync {
    fn reparse(&self, text: &str) -> Option<ParsedSentence>;
}

/// No parser available: structure-changing steps end a composite chain.
pub struct NoReparse;

impl Reparse for NoReparse {
    fn reparse(&self, _text: &str) -> Option<ParsedSentence> {
        None
    }
}

/// Parses looked up by exact surface text, typically loaded from CoNLL-U
/// produced offline for the paraphrase sidecar.
#[derive(Clone, Debug, Default)]
pub struct ParseCache {
    by_text: HashMap<String, ParsedSentence>,
}

impl ParseCache {
    pub fn new<I: IntoIterator<Item = ParsedSentence>>(sentences: I) -> Self {
        ParseCache {
            by_text: sentences.into_iter().map(|s| (s.text.clone(), s)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.by_text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_text.is_empty()
    }
}

impl Reparse for ParseCache {
    fn reparse(&self, text: &str) -> Option<ParsedSentence> {
        self.by_text.get(text).cloned()
    }
}

/// Everything the transforms read besides the premise itself.
pub struct Resources {
    pub lexicon: Lexicon,
    pub pool: PremisePool,
    pub paraphrases: ParaphraseTable,
    pub reparse: Box<dyn Reparse>,
}

impl Resources {
    pub fn new(lexicon: Lexicon) -> Self {
        Resources {
            lexicon,
            pool: PremisePool::default(),
            paraphrases: ParaphraseTable::new(),
            reparse: Box::new(NoReparse),
        }
    }

    pub fn with_pool(mut self, pool: PremisePool) -> Self {
        self.pool = pool;
        self
    }

    pub fn with_paraphrases(mut self, paraphrases: ParaphraseTable) -> Self {
        self.paraphrases = paraphrases;
        self
    }

    pub fn with_reparse(mut self, reparse: Box<dyn Reparse>) -> Self {
        self.reparse = reparse;
        self
    }
}

/// Per-call knobs shared by the sampling transforms.
#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub seed: u64,
    /// Number of pool sentences drawn by retrieval transforms.
    pub retrieve_k: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params { seed: 13, retrieve_k: 3 }
    }
}

/// Runs one transform on a sentence.
pub fn run(t: Transform, s: &ParsedSentence, res: &Resources, params: Params) -> Result<Vec<TransformOutcome>, TransformError> {
    let lex = &res.lexicon;
    let seed = params.seed;
    let k = params.retrieve_k;
    Ok(match t {
        Transform::Paraphrase => pa(s, &res.paraphrases),
        Transform::Snippet => es(s),
        Transform::Hypernym => hs(s, lex),
        Transform::Pronoun => ps(s, lex),
        Transform::Count => ct(s, lex, seed),
        Transform::ContraWord => cw(s, lex, seed),
        Transform::ContraVerb => cv_substitute(s, lex),
        Transform::ContraVerbRetrieval => cv_retrieve(s, &res.pool, lex, k, seed)?,
        Transform::SubjectObjectSwap => sos(s),
        Transform::Negation => ni(s)?,
        Transform::NumberSwap => ns(s, lex, seed),
        Transform::Irrelevant => irh(s, &res.pool, k, seed),
        Transform::Modifier => am(s, lex, seed),
        Transform::ConceptNet => con(s, lex)?,
        Transform::SameSubject => ssncv(s, &res.pool, lex, k, seed)?,
    })
}

/// Drops hypotheses equal to the premise and repeated hypotheses, keeping
/// the first occurrence.
pub(crate) fn dedup_outcomes(premise: &str, outcomes: &mut Vec<TransformOutcome>) {
    let mut seen = std::collections::HashSet::new();
    outcomes.retain(|o| o.hypothesis != premise && seen.insert(o.hypothesis.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in Transform::ALL {
            assert_eq!(t.tag().parse::<Transform>().unwrap(), t);
        }
        assert!("XX".parse::<Transform>().is_err());
        assert_eq!(
            parse_chain("PA+ES+HS").unwrap(),
            vec![Transform::Paraphrase, Transform::Snippet, Transform::Hypernym]
        );
    }

    #[test]
    fn swap_map() {
        assert_eq!(Transform::Hypernym.swap_label(), Some(Label::Neutral));
        assert_eq!(Transform::Snippet.swap_label(), Some(Label::Neutral));
        assert_eq!(Transform::Modifier.swap_label(), Some(Label::Entailment));
        assert_eq!(Transform::ConceptNet.swap_label(), Some(Label::Entailment));
        assert_eq!(Transform::ContraWord.swap_label(), Some(Label::Contradiction));
        for t in [
            Transform::Paraphrase,
            Transform::Pronoun,
            Transform::Count,
            Transform::ContraVerb,
            Transform::SubjectObjectSwap,
            Transform::Negation,
            Transform::NumberSwap,
            Transform::Irrelevant,
            Transform::SameSubject,
        ] {
            assert_eq!(t.swap_label(), None, "{t}");
        }
    }

    #[test]
    fn paraphrase_sidecar_parsing() {
        let t = ParaphraseTable::from_reader("# header\ns1\tOne\ns1\tTwo\n\ns2\tThree\n".as_bytes()).unwrap();
        assert_eq!(t.get("s1"), ["One", "Two"]);
        assert_eq!(t.len(), 3);
        assert!(ParaphraseTable::from_reader("no tab here\n".as_bytes()).is_err());
    }
}
