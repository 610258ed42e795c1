//! Word-relation store loaded from flat TSV files.
//!
//! Each row is `relation \t source \t target`. Sources are matched
//! case-insensitively; targets keep file order so enumeration is
//! deterministic.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{file}:{line}: unknown relation tag {tag:?}")]
    UnknownRelationTag { file: String, line: usize, tag: String },
    #[error("{file}:{line}: expected `relation<TAB>source<TAB>target`")]
    MalformedRow { file: String, line: usize },
    #[error("{file}: {source}")]
    Io {
        file: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Hypernym,
    Antonym,
    ContraNoun,
    ContraVerb,
    Modifier,
    Pronoun,
    NumberWord,
    ConceptNet(String),
}

impl Relation {
    pub fn parse(tag: &str) -> Option<Relation> {
        Some(match tag {
            "hypernym" => Relation::Hypernym,
            "antonym" => Relation::Antonym,
            "contra_noun" => Relation::ContraNoun,
            "contra_verb" => Relation::ContraVerb,
            "modifier" => Relation::Modifier,
            "pronoun" => Relation::Pronoun,
            "number_word" => Relation::NumberWord,
            _ => {
                let name = tag.strip_prefix("conceptnet:")?;
                if name.is_empty() {
                    return None;
                }
                Relation::ConceptNet(name.to_owned())
            }
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Hypernym => f.write_str("hypernym"),
            Relation::Antonym => f.write_str("antonym"),
            Relation::ContraNoun => f.write_str("contra_noun"),
            Relation::ContraVerb => f.write_str("contra_verb"),
            Relation::Modifier => f.write_str("modifier"),
            Relation::Pronoun => f.write_str("pronoun"),
            Relation::NumberWord => f.write_str("number_word"),
            Relation::ConceptNet(name) => write!(f, "conceptnet:{name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    pub relation: Relation,
    pub source: String,
    pub target: String,
}

/// Per-relation row counts after deduplication.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub per_relation: BTreeMap<String, usize>,
    pub duplicates: usize,
    /// Antonym rows whose target is a case variant of the source.
    pub self_antonyms: usize,
}

const NUMBER_WORDS: [&str; 20] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
    "twenty",
];

const MALE: &[&str] = &[
    "man", "boy", "guy", "lord", "husband", "father", "boyfriend", "son", "brother",
    "grandfather", "uncle", "gentleman", "king", "dad",
];
const FEMALE: &[&str] = &[
    "woman", "girl", "lady", "wife", "mother", "daughter", "sister", "girlfriend", "grandmother",
    "aunt", "queen", "mom",
];
const PERSON: &[&str] = &[
    "person", "child", "kid", "baby", "toddler", "player", "surfer", "skier", "skateboarder",
    "rider", "student", "worker", "chef", "teenager", "adult", "individual", "someone",
];

#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    relations: BTreeMap<Relation, HashMap<String, Vec<String>>>,
    number_values: HashMap<String, u32>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads and merges resource files in order.
    pub fn load<P: AsRef<Path>>(files: &[P]) -> Result<(Lexicon, LoadReport), LexiconError> {
        let mut lex = Lexicon::new();
        let mut report = LoadReport::default();
        for path in files {
            let path = path.as_ref();
            let name = path.display().to_string();
            let file = File::open(path).map_err(|source| LexiconError::Io {
                file: name.clone(),
                source,
            })?;
            lex.extend_from_reader(&name, BufReader::new(file), &mut report)?;
        }
        Ok((lex, report))
    }

    /// Parses TSV rows from `reader`, appending to this lexicon.
    pub fn extend_from_reader<R: BufRead>(
        &mut self,
        name: &str,
        reader: R,
        report: &mut LoadReport,
    ) -> Result<(), LexiconError> {
        for (n, line) in reader.lines().enumerate() {
            let line = line.map_err(|source| LexiconError::Io {
                file: name.to_owned(),
                source,
            })?;
            let line_no = n + 1;
            let row = line.trim_end_matches('\r');
            if row.trim().is_empty() || row.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = row.split('\t').collect();
            if cols.len() != 3 || cols[1].trim().is_empty() || cols[2].trim().is_empty() {
                return Err(LexiconError::MalformedRow {
                    file: name.to_owned(),
                    line: line_no,
                });
            }
            let relation = Relation::parse(cols[0].trim()).ok_or_else(|| LexiconError::UnknownRelationTag {
                file: name.to_owned(),
                line: line_no,
                tag: cols[0].to_owned(),
            })?;
            let entry = LexiconEntry {
                relation,
                source: cols[1].trim().to_lowercase(),
                target: cols[2].trim().to_owned(),
            };
            if entry.relation == Relation::Antonym && entry.target.to_lowercase() == entry.source {
                report.self_antonyms += 1;
                continue;
            }
            if self.insert(entry.clone()) {
                *report.per_relation.entry(entry.relation.to_string()).or_default() += 1;
            } else {
                report.duplicates += 1;
            }
        }
        Ok(())
    }

    pub fn from_tsv(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::new();
        lex.extend_from_reader("<memory>", text.as_bytes(), &mut LoadReport::default())?;
        Ok(lex)
    }

    /// Adds an entry; returns false when the triple was already present.
    pub fn insert(&mut self, entry: LexiconEntry) -> bool {
        if entry.relation == Relation::NumberWord {
            if let Ok(v) = entry.target.parse::<u32>() {
                self.number_values.insert(entry.source.clone(), v);
            }
        }
        let targets = self
            .relations
            .entry(entry.relation)
            .or_default()
            .entry(entry.source.to_lowercase())
            .or_default();
        if targets.contains(&entry.target) {
            return false;
        }
        targets.push(entry.target);
        true
    }

    pub fn targets(&self, relation: &Relation, source: &str) -> &[String] {
        self.relations
            .get(relation)
            .and_then(|m| m.get(&source.to_lowercase()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn hypernyms(&self, noun_lemma: &str) -> &[String] {
        self.targets(&Relation::Hypernym, noun_lemma)
    }

    pub fn antonyms(&self, adjective: &str) -> &[String] {
        self.targets(&Relation::Antonym, adjective)
    }

    pub fn contradictory_nouns(&self, noun_lemma: &str) -> &[String] {
        self.targets(&Relation::ContraNoun, noun_lemma)
    }

    pub fn contradictory_verbs(&self, verb_lemma: &str) -> &[String] {
        self.targets(&Relation::ContraVerb, verb_lemma)
    }

    pub fn modifiers(&self, noun_lemma: &str) -> &[String] {
        self.targets(&Relation::Modifier, noun_lemma)
    }

    /// ConceptNet facts for a word as `(relation name, target)` pairs, in
    /// relation-name order then file order.
    pub fn concept_facts(&self, lemma: &str) -> Vec<(&str, &str)> {
        let key = lemma.to_lowercase();
        self.relations
            .iter()
            .filter_map(|(rel, map)| match rel {
                Relation::ConceptNet(name) => Some((name.as_str(), map.get(&key)?)),
                _ => None,
            })
            .flat_map(|(name, targets)| targets.iter().map(move |t| (name, t.as_str())))
            .collect()
    }

    /// Pronoun for a noun. Plural nouns map to "they"; explicit pronoun rows
    /// win for singular nouns; then the built-in lists; "it" otherwise.
    pub fn pronoun_for(&self, noun_lemma: &str, plural: bool) -> Option<String> {
        let key = noun_lemma.trim().to_lowercase();
        if key.is_empty() {
            return None;
        }
        if plural {
            return Some("they".to_owned());
        }
        if let Some(p) = self.targets(&Relation::Pronoun, &key).first() {
            return Some(p.clone());
        }
        let k = key.as_str();
        Some(
            if MALE.contains(&k) {
                "he"
            } else if FEMALE.contains(&k) {
                "she"
            } else if PERSON.contains(&k) {
                "someone"
            } else {
                "it"
            }
            .to_owned(),
        )
    }

    /// Numeric value of a number word or digit string.
    pub fn number_value(&self, word: &str) -> Option<u32> {
        let w = word.to_lowercase();
        if let Some(v) = self.number_values.get(&w) {
            return Some(*v);
        }
        if let Some(pos) = NUMBER_WORDS.iter().position(|n| *n == w) {
            return Some(pos as u32 + 1);
        }
        if !w.is_empty() && w.chars().all(|c| c.is_ascii_digit()) {
            return w.parse().ok();
        }
        None
    }

    /// Renders a count as a word up to twenty, digits above.
    pub fn number_word(&self, value: u32) -> String {
        match value {
            1..=20 => NUMBER_WORDS[value as usize - 1].to_owned(),
            _ => value.to_string(),
        }
    }

    /// All loaded entries in relation, source, file order.
    pub fn entries(&self) -> Vec<LexiconEntry> {
        let mut out = Vec::new();
        for (rel, map) in &self.relations {
            let mut sources: Vec<&String> = map.keys().collect();
            sources.sort();
            for s in sources {
                for t in &map[s] {
                    out.push(LexiconEntry {
                        relation: rel.clone(),
                        source: s.clone(),
                        target: t.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.relations.values().all(HashMap::is_empty)
    }

    pub fn relation_names(&self) -> HashSet<String> {
        self.relations.keys().map(ToString::to_string).collect()
    }
}
